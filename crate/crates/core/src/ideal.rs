//! Hilbert series and monomial ideals of a [`QuotientRing`], truncated at its cap.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::QuotientRing;

/// Coefficients `(H^0, ..., H^cap)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertSeries(Vec<usize>);

impl HilbertSeries {
    pub fn new(coeffs: Vec<usize>) -> Self {
        Self(coeffs)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &HilbertSeries) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn pointwise_max(&self, other: &HilbertSeries) -> HilbertSeries {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn pointwise_min(&self, other: &HilbertSeries) -> HilbertSeries {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Pads with zeros or drops trailing coefficients to reach `len`.
    pub fn resized(&self, len: usize) -> HilbertSeries {
        let mut c = self.0.clone();
        c.resize(len, 0);
        Self(c)
    }

    /// Checks the series against the ring's degree cap and basis sizes.
    pub fn validate(&self, ring: &QuotientRing) -> Result<()> {
        if self.0.len() != ring.cap() as usize + 1 {
            return Err(Error::InvalidIdeal(format!(
                "series {self} has {} coefficients but the ring's cap {} needs {}",
                self.0.len(),
                ring.cap(),
                ring.cap() + 1
            )));
        }
        for (d, &h) in self.0.iter().enumerate() {
            let max = ring.dim(d as u32);
            if h > max {
                return Err(Error::SizeOutOfRange { size: h, max });
            }
        }
        Ok(())
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HilbertSeries {
    type Err = Error;

    /// Accepts `0,1,3,2` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        body.split(',')
            .map(|c| {
                c.trim().parse::<usize>().map_err(|_| Error::Syntax {
                    input: s.to_string(),
                    reason: format!("`{}` is not a non-negative integer", c.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A monomial ideal of a quotient ring, stored as one subset of each standard basis
/// `B_0, ..., B_cap`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    pieces: Vec<FixedBitSet>,
}

impl MonomialIdeal {
    pub fn zero(ring: &QuotientRing) -> Self {
        Self { pieces: (0..=ring.cap()).map(|d| ring.empty_set(d)).collect() }
    }

    pub fn unit(ring: &QuotientRing) -> Self {
        Self { pieces: (0..=ring.cap()).map(|d| ring.full_set(d)).collect() }
    }

    /// The ideal generated by `gens`; generators that vanish in the ring or lie above
    /// the cap contribute nothing.
    pub fn generated_by(ring: &QuotientRing, gens: &[Monomial]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != ring.nvars()) {
            return Err(Error::VariableMismatch { left: ring.nvars(), right: g.nvars() });
        }
        let pieces = (0..=ring.cap())
            .map(|d| {
                let mut set = ring.empty_set(d);
                for (i, m) in ring.basis(d).iter().enumerate() {
                    if gens.iter().any(|g| g.divides(m)) {
                        set.insert(i);
                    }
                }
                set
            })
            .collect();
        Ok(Self { pieces })
    }

    /// Builds an ideal from explicit per-degree pieces, checking closure.
    pub fn from_pieces(ring: &QuotientRing, pieces: Vec<FixedBitSet>) -> Result<Self> {
        if pieces.len() != ring.cap() as usize + 1 {
            return Err(Error::InvalidIdeal(format!(
                "expected {} degree pieces, got {}",
                ring.cap() + 1,
                pieces.len()
            )));
        }
        let mut fixed = Vec::with_capacity(pieces.len());
        for (d, mut p) in pieces.into_iter().enumerate() {
            let dim = ring.dim(d as u32);
            if p.ones().any(|i| i >= dim) {
                return Err(Error::InvalidIdeal(format!("degree {d} piece indexes past the basis")));
            }
            p.grow(dim);
            fixed.push(p);
        }
        let ideal = Self { pieces: fixed };
        if let Some(d) = ideal.closure_failure(ring) {
            return Err(Error::InvalidIdeal(format!(
                "not closed under multiplication: products of degree {d} leave the degree {} piece",
                d + 1
            )));
        }
        Ok(ideal)
    }

    /// Like [`MonomialIdeal::from_pieces`] with monomial lists per degree.
    pub fn from_monomials(ring: &QuotientRing, pieces: &[Vec<Monomial>]) -> Result<Self> {
        let sets = (0..=ring.cap())
            .map(|d| match pieces.get(d as usize) {
                Some(v) => ring.set_of(d, v),
                None => Ok(ring.empty_set(d)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pieces(ring, sets)
    }

    pub(crate) fn from_pieces_unchecked(pieces: Vec<FixedBitSet>) -> Self {
        Self { pieces }
    }

    /// The smallest degree `d` whose growth is not contained in piece `d + 1`.
    pub fn closure_failure(&self, ring: &QuotientRing) -> Option<u32> {
        (0..ring.cap()).find(|&d| {
            let g = ring.growth_set(d, &self.pieces[d as usize]);
            !g.is_subset(&self.pieces[d as usize + 1])
        })
    }

    pub fn cap(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn piece(&self, d: u32) -> &FixedBitSet {
        &self.pieces[d as usize]
    }

    pub fn pieces(&self) -> &[FixedBitSet] {
        &self.pieces
    }

    pub fn monomials(&self, ring: &QuotientRing, d: u32) -> Vec<Monomial> {
        ring.monomials_in(d, &self.pieces[d as usize])
    }

    pub fn contains(&self, ring: &QuotientRing, m: &Monomial) -> bool {
        m.degree() <= self.cap()
            && ring.index_of(m).is_some_and(|i| self.pieces[m.degree() as usize].contains(i))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries(self.pieces.iter().map(|p| p.count_ones(..)).collect())
    }

    /// Degreewise inclusion.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.pieces.len() == other.pieces.len()
            && self.pieces.iter().zip(&other.pieces).all(|(a, b)| a.is_subset(b))
    }

    /// Number of minimal generators in degree `j`: `|I_j| - |R_1 I_{j-1}|`.
    pub fn betti1(&self, ring: &QuotientRing, j: u32) -> usize {
        self.generators_in(ring, j).count_ones(..)
    }

    fn generators_in(&self, ring: &QuotientRing, j: u32) -> FixedBitSet {
        let mut gens = self.pieces[j as usize].clone();
        if j > 0 {
            gens.difference_with(&ring.growth_set(j - 1, &self.pieces[j as usize - 1]));
        }
        gens
    }

    /// Minimal monomial generators up to the cap, in graded lexicographic order.
    pub fn minimal_generators(&self, ring: &QuotientRing) -> Vec<Monomial> {
        (0..=self.cap()).flat_map(|j| ring.monomials_in(j, &self.generators_in(ring, j))).collect()
    }

    /// `betti1` at every degree `0..=cap`.
    pub fn betti_profile(&self, ring: &QuotientRing) -> Vec<usize> {
        (0..=self.cap()).map(|j| self.betti1(ring, j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_monomial;

    fn setup(vars: &[&str], rels: &[&str], cap: u32) -> QuotientRing {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_monomial(r, &names).unwrap()).collect();
        QuotientRing::new(names, rels, None, cap).unwrap()
    }

    fn gens(ring: &QuotientRing, g: &[&str]) -> MonomialIdeal {
        let g: Vec<Monomial> = g.iter().map(|s| parse_monomial(s, ring.names()).unwrap()).collect();
        MonomialIdeal::generated_by(ring, &g).unwrap()
    }

    #[test]
    fn tensor_series_of_x() {
        let r = setup(&["x", "y", "z"], &["x^3", "x^2*y", "x*y^2", "y^3", "z^2"], 3);
        assert_eq!(gens(&r, &["x"]).hilbert_series().coeffs(), [0, 1, 3, 2]);
        assert_eq!(gens(&r, &["z"]).hilbert_series().coeffs(), [0, 1, 2, 3]);
        assert_eq!(MonomialIdeal::zero(&r).hilbert_series().coeffs(), [0, 0, 0, 0]);
    }

    #[test]
    fn betti_of_principal_ideal() {
        let r = setup(&["x", "y"], &[], 3);
        let i = gens(&r, &["x"]);
        assert_eq!(i.betti1(&r, 1), 1);
        assert_eq!(i.betti1(&r, 2), 0);
        assert_eq!(MonomialIdeal::zero(&r).betti_profile(&r), [0, 0, 0, 0]);
    }

    #[test]
    fn betti_in_truncated_ring() {
        let r = setup(&["x", "y"], &["x^3"], 4);
        let i = gens(&r, &["x", "y^3"]);
        assert_eq!(i.betti_profile(&r), [0, 1, 0, 1, 0]);
        let shown: Vec<String> = i.minimal_generators(&r).iter().map(|m| r.show(m)).collect();
        assert_eq!(shown, ["x", "y^3"]);
    }

    #[test]
    fn non_closed_pieces_rejected() {
        let r = setup(&["x", "y"], &[], 2);
        let x = parse_monomial("x", r.names()).unwrap();
        assert!(MonomialIdeal::from_monomials(&r, &[vec![], vec![x]]).is_err());
    }

    #[test]
    fn series_parsing() {
        let h: HilbertSeries = "(0, 1,3,2)".parse().unwrap();
        assert_eq!(h.coeffs(), [0, 1, 3, 2]);
        assert_eq!(h.to_string(), "(0,1,3,2)");
        assert!("0,a".parse::<HilbertSeries>().is_err());
        let g: HilbertSeries = "0,1,2,3".parse().unwrap();
        assert_eq!(h.pointwise_min(&g).coeffs(), [0, 1, 2, 2]);
    }
}
