//! Macaulay representations, lex segments, and the minimal growth bounds of Macaulay
//! (polynomial rings) and Clements–Lindström (`k[x]/(x_1^{e_1}, ..., x_n^{e_n})`).

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::HilbertSeries;
use crate::monomial::{binomial, Monomial};
use crate::oracle::hilbert_poset;
use crate::ring::QuotientRing;

/// `a = C(k_d, d) + C(k_{d-1}, d-1) + ...` with `k_d > k_{d-1} > ... >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MacaulayRep {
    pub a: u128,
    pub d: u32,
    /// Pairs `(k_i, i)` from `i = d` downwards.
    pub terms: Vec<(u64, u32)>,
}

impl MacaulayRep {
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(k, i)| binomial(k, i as u64)).sum()
    }

    /// `a^<d>`: every term `C(k, i)` replaced by `C(k + 1, i + 1)`.
    pub fn upper_shift(&self) -> u128 {
        self.terms.iter().map(|&(k, i)| binomial(k + 1, i as u64 + 1)).sum()
    }
}

/// The greedy `d`-th Macaulay representation of `a`.
pub fn macaulay_rep(a: u128, d: u32) -> Result<MacaulayRep> {
    if d == 0 {
        return Err(Error::Precondition("Macaulay representations need d >= 1".into()));
    }
    let mut terms = Vec::new();
    let mut rest = a;
    let mut i = d;
    while rest > 0 && i > 0 {
        // largest k with C(k, i) <= rest
        let mut k = i as u64;
        while binomial(k + 1, i as u64) <= rest {
            k += 1;
        }
        rest -= binomial(k, i as u64);
        terms.push((k, i));
        i -= 1;
    }
    Ok(MacaulayRep { a, d, terms })
}

/// The first `r` standard monomials of degree `d` in graded lexicographic order.
pub fn lex_segment(ring: &QuotientRing, d: u32, r: usize) -> Result<Vec<Monomial>> {
    let basis = ring.standard_basis(d)?;
    if r > basis.len() {
        return Err(Error::SizeOutOfRange { size: r, max: basis.len() });
    }
    Ok(basis[..r].to_vec())
}

/// `|R_1 L|` for the lex segment `L` of size `r` in degree `d`.
pub fn lex_growth(ring: &QuotientRing, d: u32, r: usize) -> Result<usize> {
    if d >= ring.cap() {
        return Err(Error::DegreeOverCap { degree: d + 1, cap: ring.cap() });
    }
    if r > ring.dim(d) {
        return Err(Error::SizeOutOfRange { size: r, max: ring.dim(d) });
    }
    let mut set = ring.empty_set(d);
    set.insert_range(..r);
    Ok(ring.growth_set(d, &set).count_ones(..))
}

/// Minimal growth of an `r`-dimensional subspace of degree `d` forms in `n` variables,
/// by Macaulay's bound on the complementary quotient.
pub fn macaulay_min_growth(n: usize, d: u32, r: u128) -> Result<u128> {
    let here = count(n, d);
    if r > here {
        return Err(Error::SizeOutOfRange { size: r as usize, max: here as usize });
    }
    let next = count(n, d + 1);
    if d == 0 {
        return Ok(if r == 0 { 0 } else { next });
    }
    let h = here - r;
    Ok(next - macaulay_rep(h, d)?.upper_shift())
}

fn count(n: usize, d: u32) -> u128 {
    crate::monomial::count_monomials(n, d)
}

/// Parses and validates exponent bounds `2 <= e_1 <= ... <= e_n`, `None` meaning unbounded.
pub fn check_bounds(e: &[Option<u32>]) -> Result<()> {
    let show = || {
        e.iter()
            .map(|b| b.map_or_else(|| "inf".to_string(), |v| v.to_string()))
            .collect::<Vec<_>>()
            .join(",")
    };
    if e.iter().flatten().any(|&b| b < 2) {
        return Err(Error::UnsortedBounds(show()));
    }
    let key = |b: &Option<u32>| b.unwrap_or(u32::MAX);
    if e.windows(2).any(|w| key(&w[0]) > key(&w[1])) {
        return Err(Error::UnsortedBounds(show()));
    }
    Ok(())
}

/// `k[x1..xn]/(x_i^{e_i})` truncated at `cap`.
pub fn clements_lindstrom_ring(e: &[Option<u32>], cap: u32) -> Result<QuotientRing> {
    check_bounds(e)?;
    let n = e.len();
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let gens = e
        .iter()
        .enumerate()
        .filter_map(|(i, b)| {
            b.map(|b| {
                let mut exps = vec![0; n];
                exps[i] = b;
                Monomial::new(exps)
            })
        })
        .collect();
    QuotientRing::new(names, gens, None, cap)
}

/// Minimal growth in `k[x]/(x_i^{e_i})`, attained by lex segments.
pub fn cl_min_growth(e: &[Option<u32>], d: u32, r: usize) -> Result<usize> {
    let ring = clements_lindstrom_ring(e, d + 1)?;
    lex_growth(&ring, d, r)
}

/// `None` when every attained Hilbert series of `ring` is the series of the image of a
/// lex-segment ideal of the ambient polynomial ring; otherwise the first series that is not.
pub fn is_macaulay_lex(ring: &QuotientRing, budget: usize) -> Result<Option<HilbertSeries>> {
    let poset = hilbert_poset(ring, budget)?;
    let images = lex_image_series(ring, budget)?;
    Ok(poset.into_iter().find(|h| !images.contains(h)))
}

/// Hilbert series of all images in `ring` of lex-segment ideals of the ambient polynomial ring.
pub fn lex_image_series(ring: &QuotientRing, budget: usize) -> Result<BTreeSet<HilbertSeries>> {
    let cap = ring.cap();
    let ambient = QuotientRing::polynomial(ring.names().to_vec(), cap)?;
    // standard[d][s]: standard monomials among the first s of A_d
    // growth[d][s]: |A_1 * (first s of A_d)|
    let mut standard = Vec::new();
    let mut growth = Vec::new();
    for d in 0..=cap {
        let mut st = vec![0usize];
        for m in ambient.basis(d) {
            st.push(st.last().unwrap() + usize::from(ring.index_of(m).is_some()));
        }
        standard.push(st);
        if d < cap {
            let mut g = vec![0usize];
            let mut acc = ambient.empty_set(d + 1);
            for i in 0..ambient.dim(d) {
                acc.union_with(ambient.growth_of(d, i));
                g.push(acc.count_ones(..));
            }
            growth.push(g);
        }
    }
    let mut memo = HashMap::new();
    let mut out = BTreeSet::new();
    for s in 0..=ambient.dim(0) {
        for tail in lex_tails(&ambient, &standard, &growth, 0, s, &mut memo, budget)?.iter() {
            let mut c = vec![standard[0][s]];
            c.extend_from_slice(tail);
            out.insert(HilbertSeries::new(c));
        }
    }
    Ok(out)
}

type Tails = Rc<BTreeSet<Vec<usize>>>;

fn lex_tails(
    ambient: &QuotientRing,
    standard: &[Vec<usize>],
    growth: &[Vec<usize>],
    d: u32,
    s: usize,
    memo: &mut HashMap<(u32, usize), Tails>,
    budget: usize,
) -> Result<Tails> {
    if d == ambient.cap() {
        return Ok(Rc::new(BTreeSet::from([Vec::new()])));
    }
    if let Some(t) = memo.get(&(d, s)) {
        return Ok(t.clone());
    }
    if memo.len() >= budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut out = BTreeSet::new();
    for s2 in growth[d as usize][s]..=ambient.dim(d + 1) {
        for tail in lex_tails(ambient, standard, growth, d + 1, s2, memo, budget)?.iter() {
            let mut v = vec![standard[d as usize + 1][s2]];
            v.extend_from_slice(tail);
            out.insert(v);
        }
    }
    let out = Rc::new(out);
    memo.insert((d, s), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_monomial;
    use crate::oracle::{min_growth_oracle, DEFAULT_POSET_BUDGET};

    #[test]
    fn macaulay_rep_examples() {
        assert!(macaulay_rep(0, 2).unwrap().terms.is_empty());
        assert_eq!(macaulay_rep(4, 2).unwrap().terms, vec![(3, 2), (1, 1)]);
        let full = macaulay_rep(binomial(3 + 2 - 1, 2), 2).unwrap();
        assert_eq!(full.terms.len(), 1);
        for a in 0..200 {
            for d in 1..6 {
                assert_eq!(macaulay_rep(a, d).unwrap().value(), a);
            }
        }
    }

    #[test]
    fn macaulay_growth_examples() {
        assert_eq!(macaulay_min_growth(2, 1, 1).unwrap(), 2);
        assert_eq!(macaulay_min_growth(3, 2, 3).unwrap(), 6);
        assert_eq!(macaulay_min_growth(3, 2, 6).unwrap(), 10);
        assert!(macaulay_min_growth(3, 2, 7).is_err());
    }

    #[test]
    fn lex_segment_prefers_first_variable() {
        let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let r = QuotientRing::polynomial(names.clone(), 3).unwrap();
        let seg: Vec<String> = lex_segment(&r, 2, 3).unwrap().iter().map(|m| r.show(m)).collect();
        assert_eq!(seg, ["x1^2", "x1*x2", "x1*x3"]);
        assert!(lex_segment(&r, 2, 7).is_err());
    }

    #[test]
    fn clements_lindstrom_examples() {
        assert_eq!(cl_min_growth(&[Some(2), Some(2)], 1, 1).unwrap(), 1);
        // any two variables of the squarefree ring in three variables reach all three edges
        let kk = clements_lindstrom_ring(&[Some(2), Some(2), Some(2)], 2).unwrap();
        assert_eq!(cl_min_growth(&[Some(2), Some(2), Some(2)], 1, 2).unwrap(), 3);
        assert_eq!(min_growth_oracle(&kk, 1, 2).unwrap(), 3);
        assert_eq!(cl_min_growth(&[Some(3), None], 2, 0).unwrap(), 0);
        assert!(matches!(cl_min_growth(&[Some(3), Some(2)], 1, 1), Err(Error::UnsortedBounds(_))));
        assert!(cl_min_growth(&[None, Some(2)], 1, 1).is_err());
        let ring = clements_lindstrom_ring(&[Some(2), Some(3)], 3).unwrap();
        for r in 0..=ring.dim(1) {
            assert_eq!(cl_min_growth(&[Some(2), Some(3)], 1, r).unwrap(), min_growth_oracle(&ring, 1, r).unwrap());
        }
    }

    #[test]
    fn macaulay_lex_rings() {
        let cl = clements_lindstrom_ring(&[Some(2), Some(3)], 4).unwrap();
        assert_eq!(is_macaulay_lex(&cl, DEFAULT_POSET_BUDGET).unwrap(), None);
        let line = clements_lindstrom_ring(&[None], 4).unwrap();
        assert_eq!(is_macaulay_lex(&line, DEFAULT_POSET_BUDGET).unwrap(), None);
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let rels = ["x^3", "x^2*y", "x*y^2", "y^3", "z^2"]
            .iter()
            .map(|r| parse_monomial(r, &names).unwrap())
            .collect();
        let tensor = QuotientRing::new(names, rels, None, 3).unwrap();
        assert!(is_macaulay_lex(&tensor, DEFAULT_POSET_BUDGET).unwrap().is_some());
    }
}
