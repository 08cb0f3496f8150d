//! Extension rings `S = R[z]/(z^t)` over a ring with an embedding order: coefficient
//! sequences, z-stability, segments, the extended embedding and the extended order.

use std::ops::RangeInclusive;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::order::{EmbeddingCertificate, GradedOrder};
use crate::ring::QuotientRing;

/// `S = R[z]/(z^t)` truncated at `cap`, with `t = None` for a free variable `z`.
pub struct ExtensionRing<'a> {
    base: &'a QuotientRing,
    sigma: &'a GradedOrder,
    t: Option<u32>,
    s: QuotientRing,
    // split[d][k] = (z-exponent, index in the base basis) of S_d[k]
    split: Vec<Vec<(usize, usize)>>,
    // join[d][i][j] = index in S_d of base monomial j of degree d - i times z^i
    join: Vec<Vec<Vec<usize>>>,
}

/// The levels `W_{d-i}` of a multigraded set `W = sum W_{d-i} z^i` in `S_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence {
    pub degree: u32,
    /// `levels[i]` is a subset of the base basis in degree `degree - i`.
    pub levels: Vec<FixedBitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongHypViolation {
    pub level: usize,
    pub degree: u32,
}

/// A name for the adjoined variable that does not clash with `names`.
pub fn fresh_name(names: &[String], preferred: &str) -> String {
    if !names.iter().any(|n| n == preferred) {
        return preferred.to_string();
    }
    (0..).map(|k| format!("{preferred}{k}")).find(|c| !names.contains(c)).expect("unbounded")
}

impl<'a> ExtensionRing<'a> {
    pub fn new(base: &'a QuotientRing, cert: &'a EmbeddingCertificate, t: Option<u32>, cap: u32) -> Result<Self> {
        Self::with_name(base, cert, t, cap, "z")
    }

    pub fn with_name(
        base: &'a QuotientRing,
        cert: &'a EmbeddingCertificate,
        t: Option<u32>,
        cap: u32,
        z: &str,
    ) -> Result<Self> {
        if cap > base.cap() || cert.verified_cap() < cap {
            return Err(Error::DegreeOverCap { degree: cap, cap: base.cap().min(cert.verified_cap()) });
        }
        let z = fresh_name(base.names(), z);
        let s = base.adjoin(&z, t, cap)?;
        let mut split = Vec::new();
        let mut join = Vec::new();
        for d in 0..=cap {
            let levels = level_range(t, d);
            let mut jd: Vec<Vec<usize>> = levels.clone().map(|i| vec![usize::MAX; base.dim(d - i as u32)]).collect();
            let mut sd = Vec::with_capacity(s.dim(d));
            for (k, m) in s.basis(d).iter().enumerate() {
                let (f, i) = m.split_last();
                let j = base.index_of(&f).expect("coefficient is standard in the base");
                jd[i as usize][j] = k;
                sd.push((i as usize, j));
            }
            split.push(sd);
            join.push(jd);
        }
        Ok(Self { base, sigma: cert.order(), t, s, split, join })
    }

    pub fn base(&self) -> &QuotientRing {
        self.base
    }

    pub fn base_order(&self) -> &GradedOrder {
        self.sigma
    }

    /// The extension ring as a monomial quotient with `z` as its last variable.
    pub fn ring(&self) -> &QuotientRing {
        &self.s
    }

    pub fn into_ring(self) -> QuotientRing {
        self.s
    }

    pub fn t(&self) -> Option<u32> {
        self.t
    }

    pub fn cap(&self) -> u32 {
        self.s.cap()
    }

    /// z-exponents occurring in degree `d`.
    pub fn levels(&self, d: u32) -> RangeInclusive<usize> {
        level_range(self.t, d)
    }

    /// `|R_{d-i}|`.
    pub fn level_dim(&self, d: u32, i: usize) -> usize {
        self.base.dim(d - i as u32)
    }

    /// Splits a subset of `S_d` by z-exponent.
    pub fn coefficient_sequence(&self, d: u32, w: &FixedBitSet) -> CoefficientSequence {
        let mut levels: Vec<FixedBitSet> = self.levels(d).map(|i| self.base.empty_set(d - i as u32)).collect();
        for k in w.ones() {
            let (i, j) = self.split[d as usize][k];
            levels[i].insert(j);
        }
        CoefficientSequence { degree: d, levels }
    }

    /// Like [`ExtensionRing::coefficient_sequence`] for monomials of `S` written out.
    pub fn coefficient_sequence_of(&self, d: u32, w: &[Monomial]) -> Result<CoefficientSequence> {
        if let Some(m) = w.iter().find(|m| {
            let e = m.exponent(m.nvars() - 1);
            self.t.is_some_and(|t| e >= t)
        }) {
            return Err(Error::Precondition(format!("`{}` has z-exponent at least t", self.s.show(m))));
        }
        Ok(self.coefficient_sequence(d, &self.s.set_of(d, w)?))
    }

    /// Reassembles the subset of `S_d`.
    pub fn assemble(&self, seq: &CoefficientSequence) -> FixedBitSet {
        let d = seq.degree;
        let mut out = self.s.empty_set(d);
        for (i, level) in seq.levels.iter().enumerate() {
            for j in level.ones() {
                out.insert(self.join[d as usize][i][j]);
            }
        }
        out
    }

    /// The smallest positive level `i` with `R_1 W_{d-i}` not inside `W_{d-i+1}`.
    pub fn z_stability_failure(&self, seq: &CoefficientSequence) -> Option<usize> {
        let d = seq.degree;
        (1..seq.levels.len()).find(|&i| {
            let grown = self.base.growth_set(d - i as u32, &seq.levels[i]);
            !grown.is_subset(&seq.levels[i - 1])
        })
    }

    /// `levels[i] = V_{d-i, ranks[i]}`, the prefixes of the base order.
    pub fn ranks_to_sequence(&self, d: u32, ranks: &[usize]) -> CoefficientSequence {
        let levels = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| self.sigma.prefix_set(self.base, d - i as u32, r))
            .collect();
        CoefficientSequence { degree: d, levels }
    }

    pub fn ranks_to_set(&self, d: u32, ranks: &[usize]) -> FixedBitSet {
        self.assemble(&self.ranks_to_sequence(d, ranks))
    }

    /// Whether `sum V_{d-i, ranks[i]} z^i` is z-stable.
    pub fn ranks_are_z_stable(&self, d: u32, ranks: &[usize]) -> bool {
        self.z_stability_failure(&self.ranks_to_sequence(d, ranks)).is_none()
    }

    /// Whether the z-stable rank tuple satisfies the segment inclusions
    /// `V_{d-i, r_{d-i}} ⊆ R_{j-i} V_{d-j, min(1 + r_{d-j}, |R_{d-j}|)}` for all `i < j`.
    pub fn is_segment(&self, d: u32, ranks: &[usize]) -> bool {
        self.ranks_are_z_stable(d, ranks) && self.exchange(d, ranks).is_none()
    }

    /// The unique segment of `S_d` of length `s`, as ranks indexed by z-exponent.
    pub fn segment(&self, d: u32, s: usize) -> Result<Vec<usize>> {
        if d > self.cap() {
            return Err(Error::DegreeOverCap { degree: d, cap: self.cap() });
        }
        let dims: Vec<usize> = self.levels(d).map(|i| self.level_dim(d, i)).collect();
        let total: usize = dims.iter().sum();
        if s > total {
            return Err(Error::SizeOutOfRange { size: s, max: total });
        }
        // low z-powers first: every level below the partial one is full, so z-stable
        let mut ranks = vec![0; dims.len()];
        let mut left = s;
        for (r, &n) in ranks.iter_mut().zip(&dims) {
            *r = left.min(n);
            left -= *r;
        }
        let max_moves = s * dims.len();
        let mut moves = 0;
        while let Some((i, j)) = self.exchange(d, &ranks) {
            ranks[i] -= 1;
            ranks[j] += 1;
            moves += 1;
            if moves > max_moves {
                return Err(Error::Verification { degree: d, reason: "segment exchange did not terminate".into() });
            }
        }
        if !self.ranks_are_z_stable(d, &ranks) {
            return Err(Error::Verification { degree: d, reason: format!("segment {ranks:?} is not z-stable") });
        }
        Ok(ranks)
    }

    /// The exchange `(i, j)` with `i < j` violating the segment inclusion, smallest `j - i`
    /// first, then smallest `i`.
    fn exchange(&self, d: u32, ranks: &[usize]) -> Option<(usize, usize)> {
        let n = ranks.len();
        for gap in 1..n {
            for i in 0..n - gap {
                let j = i + gap;
                if ranks[i] == 0 {
                    continue;
                }
                let dj = self.level_dim(d, j);
                let below = self.sigma.prefix_set(self.base, d - j as u32, (ranks[j] + 1).min(dj));
                let grown = self.base.growth_power(d - j as u32, &below, gap as u32);
                let here = self.sigma.prefix_set(self.base, d - i as u32, ranks[i]);
                if !here.is_subset(&grown) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Partial sums `(sum_{j <= i} r_{d-j})_i`.
    pub fn d_r(ranks: &[usize]) -> Vec<usize> {
        ranks
            .iter()
            .scan(0, |acc, &r| {
                *acc += r;
                Some(*acc)
            })
            .collect()
    }

    fn check_z_stable(&self, ideal: &MonomialIdeal) -> Result<()> {
        for d in 0..=self.cap() {
            let seq = self.coefficient_sequence(d, ideal.piece(d));
            if let Some(level) = self.z_stability_failure(&seq) {
                return Err(Error::NotZStable { degree: d, level });
            }
        }
        Ok(())
    }

    /// Replaces each degree of a z-stable ideal by the segment of the same length.
    pub fn extend_embedding(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        if ideal.cap() != self.cap() {
            return Err(Error::InvalidIdeal("ideal and extension ring have different caps".into()));
        }
        self.check_z_stable(ideal)?;
        let pieces = (0..=self.cap())
            .map(|d| Ok(self.ranks_to_set(d, &self.segment(d, ideal.piece(d).count_ones(..))?)))
            .collect::<Result<Vec<_>>>()?;
        let embedded = MonomialIdeal::from_pieces(&self.s, pieces)
            .map_err(|e| Error::Verification { degree: 0, reason: e.to_string() })?;
        debug_assert_eq!(embedded.hilbert_series(), ideal.hilbert_series());
        Ok(embedded)
    }

    /// The order on `S` whose prefixes are the segments, checked against the pairwise rule:
    /// for `a <= b`, `f z^a` precedes `g z^b` iff some `g'` of the degree of `g` with
    /// `g' <= g` divides `f`.
    pub fn extended_order(&self) -> Result<GradedOrder> {
        let mut per_degree = Vec::with_capacity(self.cap() as usize + 1);
        for d in 0..=self.cap() {
            let n = self.s.dim(d);
            let mut list = Vec::with_capacity(n);
            let mut prev = vec![0; self.levels(d).count()];
            for s in 1..=n {
                let cur = self.segment(d, s)?;
                let grown: Vec<usize> = (0..cur.len()).filter(|&i| cur[i] != prev[i]).collect();
                let [i] = grown[..] else {
                    return Err(Error::Verification {
                        degree: d,
                        reason: format!("segments of lengths {} and {s} are not nested", s - 1),
                    });
                };
                if cur[i] != prev[i] + 1 {
                    return Err(Error::Verification { degree: d, reason: "segments are not nested".into() });
                }
                let base_idx = self.sigma.list(d - i as u32)[prev[i]];
                list.push(self.join[d as usize][i][base_idx]);
                prev = cur;
            }
            self.check_pairwise(d, &list)?;
            per_degree.push(list);
        }
        Ok(GradedOrder::from_indices(per_degree))
    }

    fn check_pairwise(&self, d: u32, list: &[usize]) -> Result<()> {
        let ranks: Vec<Vec<usize>> = (0..=d).map(|e| self.sigma.ranks(e)).collect();
        for (p, &u) in list.iter().enumerate() {
            for &v in &list[p + 1..] {
                if self.precedes(d, v, u, &ranks) {
                    let (mu, mv) = (&self.s.basis(d)[u], &self.s.basis(d)[v]);
                    return Err(Error::Verification {
                        degree: d,
                        reason: format!(
                            "`{}` is listed before `{}` against the pairwise rule",
                            self.s.show(mu),
                            self.s.show(mv)
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The pairwise rule for two distinct elements of `S_d`.
    fn precedes(&self, d: u32, u: usize, v: usize, ranks: &[Vec<usize>]) -> bool {
        let (a, f) = self.split[d as usize][u];
        let (b, g) = self.split[d as usize][v];
        if a > b {
            return !self.precedes(d, v, u, ranks);
        }
        let (ef, eg) = (d - a as u32, d - b as u32);
        let fm = &self.base.basis(ef)[f];
        let pos_g = ranks[eg as usize][g];
        self.base
            .basis(eg)
            .iter()
            .enumerate()
            .any(|(k, gp)| ranks[eg as usize][k] <= pos_g && gp.divides(fm))
    }

    /// For each z-power `i` and degree `d`: the first `i` levels of the ideal hold at least as
    /// many monomials as those of its extended embedding.
    pub fn strong_hyp_check(&self, ideal: &MonomialIdeal) -> Result<Option<StrongHypViolation>> {
        let embedded = self.extend_embedding(ideal)?;
        let top = self.t.map_or(self.cap() as usize, |t| (t as usize - 1).min(self.cap() as usize));
        for i in 0..=top {
            for d in 0..=self.cap() {
                let a = self.coefficient_sequence(d, ideal.piece(d));
                let b = self.coefficient_sequence(d, embedded.piece(d));
                let below = |s: &CoefficientSequence| -> usize {
                    s.levels.iter().take(i).map(|l| l.count_ones(..)).sum()
                };
                if below(&a) < below(&b) {
                    return Ok(Some(StrongHypViolation { level: i, degree: d }));
                }
            }
        }
        Ok(None)
    }
}

fn level_range(t: Option<u32>, d: u32) -> RangeInclusive<usize> {
    let top = t.map_or(d, |t| d.min(t - 1));
    0..=top as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_monomial;
    use crate::order::is_embedding_order;

    fn line(cap: u32) -> (QuotientRing, EmbeddingCertificate) {
        let names = vec!["x".to_string()];
        let r = QuotientRing::new(names.clone(), vec![parse_monomial("x^3", &names).unwrap()], None, cap).unwrap();
        let cert = EmbeddingCertificate::new(&r, GradedOrder::grlex(&r)).unwrap();
        (r, cert)
    }

    fn mons(ring: &QuotientRing, ms: &[&str]) -> Vec<Monomial> {
        ms.iter().map(|s| parse_monomial(s, ring.names()).unwrap()).collect()
    }

    #[test]
    fn coefficient_levels() {
        let (r, cert) = line(3);
        let ext = ExtensionRing::new(&r, &cert, None, 3).unwrap();
        let seq = ext.coefficient_sequence_of(2, &mons(ext.ring(), &["x^2", "x*z"])).unwrap();
        assert_eq!(seq.levels.iter().map(|l| l.count_ones(..)).collect::<Vec<_>>(), [1, 1, 0]);
        assert_eq!(ext.z_stability_failure(&seq), None);
        let bad = ext.coefficient_sequence_of(2, &mons(ext.ring(), &["z^2"])).unwrap();
        assert_eq!(ext.z_stability_failure(&bad), Some(2));
        let w = ext.ring().set_of(2, &mons(ext.ring(), &["x^2", "x*z"])).unwrap();
        assert_eq!(ext.assemble(&ext.coefficient_sequence(2, &w)), w);
    }

    #[test]
    fn segments_of_truncated_line() {
        let (r, cert) = line(3);
        let ext = ExtensionRing::new(&r, &cert, None, 3).unwrap();
        assert_eq!(ext.segment(2, 1).unwrap(), [1, 0, 0]);
        assert_eq!(ext.segment(2, 2).unwrap(), [1, 1, 0]);
        assert_eq!(ext.segment(2, 3).unwrap(), [1, 1, 1]);
        assert!(ext.segment(2, 4).is_err());
    }

    #[test]
    fn extended_order_on_truncated_line() {
        let (r, cert) = line(3);
        let ext = ExtensionRing::new(&r, &cert, None, 3).unwrap();
        let tau = ext.extended_order().unwrap();
        let shown: Vec<String> = tau.monomials(ext.ring(), 2).iter().map(|m| ext.ring().show(m)).collect();
        assert_eq!(shown, ["x^2", "x*z", "z^2"]);
        let shown: Vec<String> = tau.monomials(ext.ring(), 1).iter().map(|m| ext.ring().show(m)).collect();
        assert_eq!(shown, ["x", "z"]);
        assert_eq!(is_embedding_order(ext.ring(), &tau), Ok(()));
    }

    #[test]
    fn extension_requires_z_stability() {
        let (r, cert) = line(3);
        let ext = ExtensionRing::new(&r, &cert, Some(2), 3).unwrap();
        let s = ext.ring();
        let bad = MonomialIdeal::generated_by(s, &mons(s, &["x*z"])).unwrap();
        assert!(matches!(ext.extend_embedding(&bad), Err(Error::NotZStable { .. })));
        let good = MonomialIdeal::generated_by(s, &mons(s, &["x^2", "x*z"])).unwrap();
        assert_eq!(ext.extend_embedding(&good).unwrap(), good);
        assert_eq!(ext.strong_hyp_check(&good).unwrap(), None);
        let zero = MonomialIdeal::zero(s);
        assert_eq!(ext.extend_embedding(&zero).unwrap(), zero);
    }

    #[test]
    fn clashing_variable_names() {
        assert_eq!(fresh_name(&["z".to_string()], "z"), "z0");
        assert_eq!(fresh_name(&["x".to_string()], "z"), "z");
    }
}
