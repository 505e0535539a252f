//! Inputs shared by the benchmarks.

use gmpn::{parse_element, BraidWord, Element, Factorization, GroupParams};

pub fn group(m: u32, p: u32, n: usize) -> GroupParams {
    GroupParams::new(m, p, n).expect("valid parameters")
}

/// Elements with growing cycle counts, for the partition search behind the length formula.
pub fn length_inputs() -> Vec<(String, Element)> {
    [
        ((30, 5, 6), "[(1 2)(3 4 5); (1,21,2,3,2,6)]"),
        ((12, 4, 8), "[id; (1,2,3,4,5,6,7,4)]"),
        ((60, 6, 10), "[(1 2)(3 4); (1,2,3,4,5,6,7,8,9,9)]"),
        ((210, 7, 10), "[id; (1,2,3,5,7,11,13,17,19,6)]"),
    ]
    .into_iter()
    .map(|((m, p, n), text)| {
        let params = group(m, p, n);
        (params.to_string(), parse_element(text, params).expect("valid element"))
    })
    .collect()
}

/// Elements whose shortest factorizations are enumerated and split into orbits.
pub fn census_inputs() -> Vec<(String, Element)> {
    [
        ((4, 4, 4), "[id; (2,2,2,2)]"),
        ((3, 3, 4), "[(1 2); (1,2,0,0)]"),
        ((2, 1, 5), "[(1 2 3)(4 5); (1,0,0,1,0)]"),
    ]
    .into_iter()
    .map(|((m, p, n), text)| {
        let params = group(m, p, n);
        (format!("{params} {text}"), parse_element(text, params).expect("valid element"))
    })
    .collect()
}

/// A shortest factorization scrambled by a long braid word, for normalization.
pub fn scrambled(params: GroupParams, standard: &str, letters: usize) -> Factorization {
    let f = Factorization::parse(standard, params).expect("valid factorization");
    let len = f.len() as i32;
    let word: Vec<i32> = (0..letters as i32)
        .map(|k| {
            let i = 1 + (k * 7 + k / 3) % (len - 1);
            if k % 3 == 0 {
                -i
            } else {
                i
            }
        })
        .collect();
    f.apply_braid(&BraidWord::new(word).expect("nonzero letters")).expect("indices in range")
}
