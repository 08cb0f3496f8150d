//! Consequences and necessary conditions of embeddings: lattice closure of the Hilbert
//! series poset, quotients by prefix ideals, Veronese restriction, the Gotzmann
//! property, socle segments and first Betti numbers.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{HilbertSeries, MonomialIdeal};
use crate::oracle::{hilbert_poset, min_growth_table};
use crate::order::{embed_realized, EmbeddingViolation, GradedOrder, ViolationKind};
use crate::ring::QuotientRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    Max,
    Min,
}

/// Two attained series whose pointwise max or min is not attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeWitness {
    pub first: HilbertSeries,
    pub second: HilbertSeries,
    pub missing: Closure,
    pub series: HilbertSeries,
}

/// Every violating pair of the poset, meets before joins for each pair; pairs in
/// ascending order of the series.
pub fn lattice_witnesses(poset: &BTreeSet<HilbertSeries>) -> Vec<LatticeWitness> {
    let all: Vec<&HilbertSeries> = poset.iter().collect();
    let mut out = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let meet = a.pointwise_min(b);
            if !poset.contains(&meet) {
                out.push(LatticeWitness {
                    first: (*b).clone(),
                    second: (*a).clone(),
                    missing: Closure::Min,
                    series: meet,
                });
            }
            let join = a.pointwise_max(b);
            if !poset.contains(&join) {
                out.push(LatticeWitness {
                    first: (*b).clone(),
                    second: (*a).clone(),
                    missing: Closure::Max,
                    series: join,
                });
            }
        }
    }
    out
}

/// `None` when the poset of attained Hilbert series is closed under pointwise max and
/// min; otherwise the first violation in the order of [`lattice_witnesses`].
pub fn lattice_check(ring: &QuotientRing, budget: usize) -> Result<Option<LatticeWitness>> {
    let poset = hilbert_poset(ring, budget)?;
    Ok(lattice_witnesses(&poset).into_iter().next())
}

/// Passes to `R/I` for an ideal `I` whose pieces are prefixes of `order`, returning the
/// quotient and the order with `I` removed.
pub fn inherit_order(
    ring: &QuotientRing,
    order: &GradedOrder,
    ideal: &MonomialIdeal,
) -> Result<(QuotientRing, GradedOrder)> {
    for d in 0..=ring.cap() {
        if !order.is_prefix(d, ideal.piece(d)) {
            return Err(Error::InvalidIdeal(format!("degree {d} piece is not a prefix of the order")));
        }
    }
    let mut gens = ring.generators().to_vec();
    gens.extend(ideal.minimal_generators(ring));
    let quotient = QuotientRing::build(ring.names().to_vec(), gens, ring.truncate_above(), ring.cap())?;
    let per_degree = (0..=ring.cap())
        .map(|d| {
            order
                .list(d)
                .iter()
                .filter(|&&i| !ideal.piece(d).contains(i))
                .map(|&i| quotient.index_of(&ring.basis(d)[i]).expect("survives in the quotient"))
                .collect()
        })
        .collect();
    Ok((quotient, GradedOrder::from_indices(per_degree)))
}

/// The `m`-th Veronese restriction of an order: `S_i = R_{im}`, growth by `R_m`.
#[derive(Clone, Debug, Serialize)]
pub struct VeroneseData {
    pub dims: Vec<usize>,
    pub lists: Vec<Vec<String>>,
    pub violation: Option<EmbeddingViolation>,
}

pub fn veronese_restrict(ring: &QuotientRing, order: &GradedOrder, m: u32, cap_s: u32) -> Result<VeroneseData> {
    if m == 0 {
        return Err(Error::Precondition("Veronese degree must be at least 1".into()));
    }
    if m * cap_s > ring.cap() {
        return Err(Error::DegreeOverCap { degree: m * cap_s, cap: ring.cap() });
    }
    let dims = (0..=cap_s).map(|i| ring.dim(i * m)).collect();
    let lists = (0..=cap_s)
        .map(|i| order.monomials(ring, i * m).iter().map(|x| ring.show(x)).collect())
        .collect();
    let mut violation = None;
    'outer: for i in 0..cap_s {
        let d = i * m;
        let table = min_growth_table(ring, d, m)?;
        let mut prefix = ring.empty_set(d);
        for (r, &j) in order.list(d).iter().enumerate() {
            prefix.insert(j);
            let growth = ring.growth_power(d, &prefix, m);
            let kind = if growth.count_ones(..) != table[r + 1] {
                ViolationKind::NotMinimal
            } else if !order.is_prefix(d + m, &growth) {
                ViolationKind::NotPrefix
            } else {
                continue;
            };
            violation = Some(EmbeddingViolation { degree: i, prefix_size: r + 1, kind });
            break 'outer;
        }
    }
    Ok(VeroneseData { dims, lists, violation })
}

#[derive(Clone, Debug, Serialize)]
pub struct GotzmannOutcome {
    /// Minimal generators of the embedded ideal.
    pub embedded_generators: Vec<String>,
    /// `betti1` of the embedded ideal in degrees `0..=cap`.
    pub embedded_betti: Vec<usize>,
    pub holds: bool,
    /// First degree above `d + 1` where the embedded ideal needs a new generator.
    pub witness_degree: Option<u32>,
}

/// For `I` generated in degrees `<= d`: the embedded ideal must not need new generators
/// in any degree above `d`.
pub fn gotzmann_check(
    ring: &QuotientRing,
    order: &GradedOrder,
    ideal: &MonomialIdeal,
    d: u32,
) -> Result<GotzmannOutcome> {
    if d > ring.cap() {
        return Err(Error::DegreeOverCap { degree: d, cap: ring.cap() });
    }
    if let Some(j) = (d + 1..=ring.cap()).find(|&j| ideal.betti1(ring, j) > 0) {
        return Err(Error::Precondition(format!("the ideal has a minimal generator in degree {j} > {d}")));
    }
    let embedded = embed_realized(ring, order, &ideal.hilbert_series())?;
    let betti = embedded.betti_profile(ring);
    if d < ring.cap() && betti[d as usize + 1] > 0 {
        return Err(Error::Precondition(format!(
            "the embedded ideal has a minimal generator in degree {}",
            d + 1
        )));
    }
    let witness_degree = (d + 2..=ring.cap()).find(|&j| betti[j as usize] > 0);
    Ok(GotzmannOutcome {
        embedded_generators: embedded.minimal_generators(ring).iter().map(|m| ring.show(m)).collect(),
        embedded_betti: betti,
        holds: witness_degree.is_none(),
        witness_degree,
    })
}

/// Degree-`d` standard monomials annihilated by every variable.
pub fn socle(ring: &QuotientRing, d: u32) -> FixedBitSet {
    let mut s = ring.empty_set(d);
    for i in 0..ring.dim(d) {
        if ring.growth_of(d, i).is_clear() {
            s.insert(i);
        }
    }
    s
}

/// Checks that each socle piece is a prefix of the order; returns the first failing degree.
pub fn socle_segment_check(ring: &QuotientRing, order: &GradedOrder) -> Option<u32> {
    (0..=ring.cap()).find(|&d| !order.is_prefix(d, &socle(ring, d)))
}

/// First degree `j` where `betti1(I, j)` exceeds `betti1` of the embedded ideal.
pub fn betti1_dominance_check(ring: &QuotientRing, order: &GradedOrder, ideal: &MonomialIdeal) -> Result<Option<u32>> {
    let embedded = embed_realized(ring, order, &ideal.hilbert_series())?;
    Ok((0..=ring.cap()).find(|&j| ideal.betti1(ring, j) > embedded.betti1(ring, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{parse_monomial, Monomial};
    use crate::oracle::DEFAULT_POSET_BUDGET;

    fn setup(vars: &[&str], rels: &[&str], trunc: Option<u32>, cap: u32) -> QuotientRing {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_monomial(r, &names).unwrap()).collect();
        QuotientRing::new(names, rels, trunc, cap).unwrap()
    }

    fn ideal(ring: &QuotientRing, g: &[&str]) -> MonomialIdeal {
        let g: Vec<Monomial> = g.iter().map(|s| parse_monomial(s, ring.names()).unwrap()).collect();
        MonomialIdeal::generated_by(ring, &g).unwrap()
    }

    #[test]
    fn chain_and_polynomial_ring_are_lattices() {
        let r = setup(&["x"], &["x^2"], None, 2);
        assert_eq!(lattice_check(&r, DEFAULT_POSET_BUDGET).unwrap(), None);
        let r = setup(&["x", "y"], &[], None, 3);
        assert_eq!(lattice_check(&r, DEFAULT_POSET_BUDGET).unwrap(), None);
    }

    #[test]
    fn tensor_ring_fails_meet() {
        let r = setup(&["x", "y", "z"], &["x^3", "x^2*y", "x*y^2", "y^3", "z^2"], None, 3);
        let w = lattice_check(&r, DEFAULT_POSET_BUDGET).unwrap().unwrap();
        assert_eq!(w.first.to_string(), "(0,1,3,2)");
        assert_eq!(w.second.to_string(), "(0,1,2,3)");
        assert_eq!((w.missing, w.series.to_string()), (Closure::Min, "(0,1,2,2)".to_string()));
    }

    #[test]
    fn quotient_by_zero_and_unit() {
        let r = setup(&["x", "y"], &[], None, 3);
        let o = GradedOrder::grlex(&r);
        let (q, qo) = inherit_order(&r, &o, &MonomialIdeal::zero(&r)).unwrap();
        assert_eq!(q.hilbert_series(), r.hilbert_series());
        assert_eq!(qo, o);
        let (q, _) = inherit_order(&r, &o, &MonomialIdeal::unit(&r)).unwrap();
        assert_eq!(q.hilbert_series().coeffs(), [0, 0, 0, 0]);
        assert!(inherit_order(&r, &o, &ideal(&r, &["y"])).is_err());
    }

    #[test]
    fn gotzmann_fails_mod_x_cubed() {
        let r = setup(&["x", "y"], &["x^3"], None, 4);
        let o = GradedOrder::grlex(&r);
        let out = gotzmann_check(&r, &o, &ideal(&r, &["y"]), 1).unwrap();
        assert_eq!(out.embedded_generators, ["x", "y^3"]);
        assert_eq!((out.holds, out.witness_degree), (false, Some(3)));
        let poly = setup(&["x", "y"], &[], None, 4);
        let out = gotzmann_check(&poly, &GradedOrder::grlex(&poly), &ideal(&poly, &["x"]), 1).unwrap();
        assert!(out.holds);
    }

    #[test]
    fn socle_prefix_in_truncated_line() {
        let r = setup(&["x"], &["x^3"], None, 3);
        assert_eq!(socle_segment_check(&r, &GradedOrder::grlex(&r)), None);
        assert_eq!(socle(&r, 2).count_ones(..), 1);
    }

    #[test]
    fn veronese_of_truncated_line() {
        let r = setup(&["x"], &["x^5"], None, 5);
        let v = veronese_restrict(&r, &GradedOrder::grlex(&r), 2, 2).unwrap();
        assert_eq!(v.dims, [1, 1, 1]);
        assert!(v.violation.is_none());
    }
}
