//! Brute-force reference computations shared by the integration tests. They only use
//! monomial arithmetic and standard bases, not the library's growth tables or searches.

#![allow(dead_code)]

use hilbert_embed::monomial::{parse_monomial, Monomial};
use hilbert_embed::ring::QuotientRing;

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn ring(vars: &[&str], rels: &[&str], cap: u32) -> QuotientRing {
    let names = names(vars);
    let rels = rels.iter().map(|r| parse_monomial(r, &names).unwrap()).collect();
    QuotientRing::new(names, rels, None, cap).unwrap()
}

pub fn mons(ring: &QuotientRing, ms: &[&str]) -> Vec<Monomial> {
    ms.iter().map(|s| parse_monomial(s, ring.names()).unwrap()).collect()
}

/// Bitmask over the degree `d + 1` basis of the products of `m` with every variable.
fn growth_mask(ring: &QuotientRing, d: u32, m: &Monomial) -> u64 {
    let next = ring.standard_basis(d + 1).unwrap();
    let mut mask = 0u64;
    for v in 0..ring.nvars() {
        let p = m.mul_var(v);
        if let Some(k) = next.iter().position(|b| *b == p) {
            mask |= 1 << k;
        }
    }
    mask
}

/// `table[r]` = minimal size of `R_1 V` over all `r`-subsets `V` of the degree-`d` basis,
/// by visiting every subset. Needs `|R_d| <= 22` and `|R_{d+1}| <= 64`.
pub fn brute_min_growth(ring: &QuotientRing, d: u32) -> Vec<usize> {
    let basis = ring.standard_basis(d).unwrap();
    let n = basis.len();
    assert!(n <= 22 && ring.standard_basis(d + 1).unwrap().len() <= 64, "too large for brute force");
    let single: Vec<u64> = basis.iter().map(|m| growth_mask(ring, d, m)).collect();
    let mut grown = vec![0u64; 1 << n];
    let mut table = vec![usize::MAX; n + 1];
    table[0] = 0;
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        grown[mask] = grown[mask & (mask - 1)] | single[low];
        let r = mask.count_ones() as usize;
        table[r] = table[r].min(grown[mask].count_ones() as usize);
    }
    table
}

/// All tuples `(r_0, ..., r_k)` with `r_i <= dims[i]` summing to `s`.
pub fn rank_tuples(dims: &[usize], s: usize) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = dims.split_first() else {
        return if s == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = vec![];
    for r in 0..=first.min(s) {
        for mut t in rank_tuples(rest, s - r) {
            t.insert(0, r);
            out.push(t);
        }
    }
    out
}

pub fn partial_sums(v: &[usize]) -> Vec<usize> {
    v.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}
