#![allow(dead_code)]

use poset_koszul::exactlin::{Field, Matrix};
use poset_koszul::harness::{enumerate_cyclic, EnumerationSpec};
use poset_koszul::poset::RankedPoset;

/// Every cyclic poset with at most `max_elements` elements, isomorphs removed.
pub fn corpus(max_elements: usize) -> Vec<RankedPoset> {
    enumerate_cyclic(&EnumerationSpec::new(max_elements, max_elements))
        .unwrap()
        .collect::<Result<_, _>>()
        .unwrap()
}

fn all_words(letters: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// `dim R_d` straight from the presentation: all words in the free algebra modulo the
/// two-sided ideal spanned by `u q v` for every quadratic relation `q`.
pub fn brute_hilbert<F: Field>(poset: &RankedPoset, field: &F) -> Vec<usize> {
    let plus: Vec<usize> = poset.plus().collect();
    let n = plus.len();
    // Quadratic relations as (coefficient, letter pair) lists, letters indexed 0..n.
    let mut rels: Vec<Vec<(i64, [usize; 2])>> = Vec::new();
    for (i, &x) in plus.iter().enumerate() {
        let below: Vec<[usize; 2]> = plus
            .iter()
            .enumerate()
            .filter(|&(_, &y)| poset.covers(x, y))
            .map(|(j, _)| [i, j])
            .collect();
        if !below.is_empty() {
            rels.push(below.into_iter().map(|p| (1, p)).collect());
        }
        for (j, &w) in plus.iter().enumerate() {
            if !poset.covers(x, w) {
                rels.push(vec![(1, [i, j])]);
            }
        }
    }
    let mut out = vec![1];
    for d in 1..=poset.max_rank() + 1 {
        let words = all_words(n, d);
        let index = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * n + x);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        if d >= 2 {
            for left in 0..=d - 2 {
                for u in all_words(n, left) {
                    for v in all_words(n, d - 2 - left) {
                        for q in &rels {
                            let mut row = vec![0i64; words.len()];
                            for (c, [a, b]) in q {
                                let mut w = u.clone();
                                w.push(*a);
                                w.push(*b);
                                w.extend_from_slice(&v);
                                row[index(&w)] += c;
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let rank = if refs.is_empty() { 0 } else { Matrix::from_i64(field, &refs).rank() };
        out.push(words.len() - rank);
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Whether the free-algebra oracle stays near a thousand words per degree.
pub fn brute_feasible(poset: &RankedPoset) -> bool {
    let n = poset.len() - 1;
    (n as f64).powi(poset.max_rank() as i32 + 1) <= 1300.0
}
