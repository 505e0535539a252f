//! Group arithmetic against monomial matrices.

mod common;

use std::collections::HashSet;

use common::{elements, group, order, small_groups, Monomial};
use gmpn::{enumerate_reflections, parse_element, reflection_count, Element, Reflection};

#[test]
fn multiplication_is_matrix_multiplication() {
    for params in [group(2, 1, 2), group(3, 3, 2), group(2, 2, 3)] {
        let all = elements(params);
        for g in &all {
            for h in &all {
                let gh = g.multiply(h).unwrap();
                assert_eq!(Monomial::of(&gh), Monomial::of(g).mul(&Monomial::of(h)), "{g} * {h}");
            }
            assert!(g.multiply(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().multiply(g).unwrap().is_identity());
        }
    }
}

#[test]
fn element_census() {
    for params in small_groups() {
        let all = elements(params);
        assert_eq!(all.len() as u128, order(params.m(), params.p(), params.n()));
        assert_eq!(all.len() as u128, params.order().unwrap());
        let distinct: HashSet<Monomial> = all.iter().map(Monomial::of).collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|g| Monomial::of(g).entry_exponent().is_multiple_of(params.p())));
    }
}

#[test]
fn reflections_are_elements_fixing_a_hyperplane() {
    for params in small_groups().into_iter().chain([group(4, 2, 2), group(6, 2, 3)]) {
        let n = params.n();
        let expected: HashSet<Element> = elements(params)
            .into_iter()
            .filter(|g| Monomial::of(g).fixed_dim() == n - 1)
            .collect();
        let found: HashSet<Element> = enumerate_reflections(params).iter().map(|r| r.to_element(params)).collect();
        assert_eq!(found, expected, "{params}");
        assert_eq!(reflection_count(params), expected.len());
        for g in &expected {
            assert!(g.is_reflection());
            let r = Reflection::from_element(g).unwrap();
            assert_eq!(r.to_element(params), *g);
        }
    }
}

#[test]
fn enumeration_order_is_sorted_and_stable() {
    let params = group(3, 1, 2);
    let rs = enumerate_reflections(params);
    let mut sorted = rs.clone();
    sorted.sort();
    assert_eq!(rs, sorted);
    assert_eq!(rs, enumerate_reflections(params));
}

#[test]
fn worked_element_parses_to_its_matrix() {
    let params = group(30, 5, 6);
    let g = parse_element("[(1 2)(3 4 5); (1,21,2,3,2,6)]", params).unwrap();
    let mx = Monomial::of(&g);
    // point 1 goes to 2 with ζ^1, point 5 goes to 3 with ζ^2, point 6 is fixed with ζ^6
    assert_eq!(mx.rows[1][0], Some(1));
    assert_eq!(mx.rows[2][4], Some(2));
    assert_eq!(mx.rows[5][5], Some(6));
    assert_eq!(g.weight(), 5);
}
