//! Quotients `A/a` of a polynomial ring by a monomial ideal, truncated at a degree cap.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::HilbertSeries;
use crate::monomial::{count_monomials, is_ident, monomials_of_degree, Monomial};

/// Upper bound on the number of ambient monomials materialized for one ring.
const MAX_AMBIENT_MONOMIALS: u128 = 4_000_000;

/// A standard graded algebra `A/a` with `a` a monomial ideal.
///
/// Standard bases are precomputed for degrees `0..=cap + 1` (the extra degree
/// decides whether results are exact), together with the multiplication-by-variable
/// tables used by every growth computation.
pub struct QuotientRing {
    names: Vec<String>,
    generators: Vec<Monomial>,
    truncate_above: Option<u32>,
    cap: u32,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    // products[d][i][k]: index in B_{d+1} of x_k * B_d[i], if nonzero
    products: Vec<Vec<Vec<Option<usize>>>>,
    growth: Vec<Vec<FixedBitSet>>,
    warnings: Vec<String>,
}

impl QuotientRing {
    /// Builds `k[names]/(relations)`; relations of degree below two are rejected.
    pub fn new(
        names: Vec<String>,
        relations: Vec<Monomial>,
        truncate_above: Option<u32>,
        cap: u32,
    ) -> Result<Self> {
        if let Some(low) = relations.iter().find(|m| m.degree() < 2) {
            return Err(Error::InvalidRing(format!(
                "relation `{}` has degree {}; the defining ideal must live in degrees >= 2",
                low.display(&names),
                low.degree()
            )));
        }
        Self::build(names, relations, truncate_above, cap)
    }

    /// The polynomial ring on `names`, truncated at `cap`.
    pub fn polynomial(names: Vec<String>, cap: u32) -> Result<Self> {
        Self::new(names, Vec::new(), None, cap)
    }

    /// Like [`QuotientRing::new`] but accepting relations of degree 0 or 1, as
    /// arise when passing to a quotient by a prefix ideal.
    pub(crate) fn build(
        names: Vec<String>,
        relations: Vec<Monomial>,
        truncate_above: Option<u32>,
        cap: u32,
    ) -> Result<Self> {
        validate_names(&names)?;
        let nvars = names.len();
        if let Some(bad) = relations.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::VariableMismatch { left: nvars, right: bad.nvars() });
        }
        let total: u128 = (0..=cap + 1).map(|d| count_monomials(nvars, d)).sum();
        if total > MAX_AMBIENT_MONOMIALS {
            return Err(Error::InvalidRing(format!(
                "degree cap {cap} with {nvars} variables needs {total} monomials (limit {MAX_AMBIENT_MONOMIALS})"
            )));
        }

        let (generators, warnings) = minimalize(relations, &names);
        let mut bases = Vec::with_capacity(cap as usize + 2);
        for d in 0..=cap + 1 {
            let basis: Vec<Monomial> = if truncate_above.is_some_and(|t| d > t) {
                Vec::new()
            } else {
                monomials_of_degree(nvars, d)
                    .into_iter()
                    .filter(|m| !generators.iter().any(|g| g.divides(m)))
                    .collect()
            };
            bases.push(basis);
        }
        let index: Vec<HashMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();

        let mut products = Vec::with_capacity(cap as usize + 1);
        let mut growth = Vec::with_capacity(cap as usize + 1);
        for d in 0..=cap as usize {
            let next = &index[d + 1];
            let mut prod_d = Vec::with_capacity(bases[d].len());
            let mut growth_d = Vec::with_capacity(bases[d].len());
            for m in &bases[d] {
                let row: Vec<Option<usize>> =
                    (0..nvars).map(|k| next.get(&m.mul_var(k)).copied()).collect();
                let mut g = FixedBitSet::with_capacity(bases[d + 1].len());
                for j in row.iter().flatten() {
                    g.insert(*j);
                }
                prod_d.push(row);
                growth_d.push(g);
            }
            products.push(prod_d);
            growth.push(growth_d);
        }

        Ok(Self { names, generators, truncate_above, cap, bases, index, products, growth, warnings })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Minimal monomial generators of the defining ideal, in graded lexicographic order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn truncate_above(&self) -> Option<u32> {
        self.truncate_above
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Notes produced while reducing the relations to a minimal generating set.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Degree-`d` monomials outside the defining ideal, in graded lexicographic order.
    pub fn standard_basis(&self, d: u32) -> Result<&[Monomial]> {
        if d > self.cap {
            return Err(Error::DegreeOverCap { degree: d, cap: self.cap });
        }
        Ok(&self.bases[d as usize])
    }

    pub(crate) fn basis(&self, d: u32) -> &[Monomial] {
        &self.bases[d as usize]
    }

    /// `|B_d|`; zero beyond `cap + 1`.
    pub fn dim(&self, d: u32) -> usize {
        self.bases.get(d as usize).map_or(0, Vec::len)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree() as usize)?.get(m).copied()
    }

    /// Whether `m` maps to zero in the quotient.
    pub fn is_zero(&self, m: &Monomial) -> bool {
        self.truncate_above.is_some_and(|t| m.degree() > t)
            || self.generators.iter().any(|g| g.divides(m))
    }

    /// True when every result computed up to `cap` is exact: the ring vanishes above the cap.
    pub fn is_exact(&self) -> bool {
        self.bases[self.cap as usize + 1].is_empty()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::new((0..=self.cap).map(|d| self.dim(d)).collect())
    }

    /// `x_k * B_d[i]` as an index of `B_{d+1}`, or `None` when the product vanishes.
    pub fn var_product(&self, d: u32, i: usize, k: usize) -> Option<usize> {
        self.products[d as usize][i][k]
    }

    /// `R_1 * B_d[i]` as a subset of `B_{d+1}`; requires `d <= cap`.
    pub fn growth_of(&self, d: u32, i: usize) -> &FixedBitSet {
        &self.growth[d as usize][i]
    }

    /// `R_1 V` for `V` given by indices into `B_d`.
    pub fn growth_set(&self, d: u32, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.dim(d + 1));
        for i in set.ones() {
            out.union_with(&self.growth[d as usize][i]);
        }
        out
    }

    /// `R_1 V` for a set of degree-`d` standard monomials.
    pub fn growth(&self, d: u32, v: &[Monomial]) -> Result<Vec<Monomial>> {
        if d >= self.cap {
            return Err(Error::DegreeOverCap { degree: d + 1, cap: self.cap });
        }
        let set = self.set_of(d, v)?;
        Ok(self.monomials_in(d + 1, &self.growth_set(d, &set)))
    }

    /// `R_k V`, iterating the one-step growth `k` times.
    pub fn growth_power(&self, d: u32, set: &FixedBitSet, k: u32) -> FixedBitSet {
        let mut cur = set.clone();
        for step in 0..k {
            cur = self.growth_set(d + step, &cur);
        }
        cur
    }

    pub fn set_of(&self, d: u32, v: &[Monomial]) -> Result<FixedBitSet> {
        if d > self.cap + 1 {
            return Err(Error::DegreeOverCap { degree: d, cap: self.cap });
        }
        let mut set = FixedBitSet::with_capacity(self.dim(d));
        for m in v {
            if m.degree() != d {
                return Err(Error::InvalidIdeal(format!(
                    "`{}` does not have degree {d}",
                    self.show(m)
                )));
            }
            let i = self.index_of(m).ok_or_else(|| Error::NotStandard(self.show(m)))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn monomials_in(&self, d: u32, set: &FixedBitSet) -> Vec<Monomial> {
        set.ones().map(|i| self.bases[d as usize][i].clone()).collect()
    }

    pub fn full_set(&self, d: u32) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.dim(d));
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self, d: u32) -> FixedBitSet {
        FixedBitSet::with_capacity(self.dim(d))
    }

    pub fn show(&self, m: &Monomial) -> String {
        m.display(&self.names).to_string()
    }

    /// The relations including the truncation, made explicit as monomial generators.
    pub fn explicit_generators(&self) -> Vec<Monomial> {
        let mut gens = self.generators.clone();
        if let Some(t) = self.truncate_above {
            gens.extend(
                monomials_of_degree(self.nvars(), t + 1)
                    .into_iter()
                    .filter(|m| !self.generators.iter().any(|g| g.divides(m))),
            );
        }
        gens
    }

    /// `R[z]/(z^t)` as a monomial quotient in one more (last) variable; `t = None` adjoins
    /// a free variable.
    pub fn adjoin(&self, name: &str, t: Option<u32>, cap: u32) -> Result<QuotientRing> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut gens: Vec<Monomial> = self.explicit_generators().iter().map(|g| g.extend(0)).collect();
        if let Some(t) = t {
            if t == 0 {
                return Err(Error::InvalidRing("z-power bound t must be positive".into()));
            }
            gens.push(Monomial::one(self.nvars()).extend(t));
        }
        QuotientRing::build(names, gens, None, cap)
    }
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.show(g)).collect();
        f.debug_struct("QuotientRing")
            .field("vars", &self.names)
            .field("relations", &gens)
            .field("truncate_above", &self.truncate_above)
            .field("cap", &self.cap)
            .finish()
    }
}

fn validate_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if !is_ident(n) {
            return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
        }
        if names[..i].contains(n) {
            return Err(Error::InvalidRing(format!("variable `{n}` listed twice")));
        }
    }
    Ok(())
}

/// Reduces a list of monomials to its minimal elements under divisibility.
fn minimalize(mut relations: Vec<Monomial>, names: &[String]) -> (Vec<Monomial>, Vec<String>) {
    relations.sort();
    let mut kept: Vec<Monomial> = Vec::with_capacity(relations.len());
    let mut warnings = Vec::new();
    for r in relations {
        if let Some(g) = kept.iter().find(|g| g.divides(&r)) {
            if *g == r {
                warnings.push(format!("dropped duplicate relation `{}`", r.display(names)));
            } else {
                warnings.push(format!(
                    "dropped relation `{}`: divisible by `{}`",
                    r.display(names),
                    g.display(names)
                ));
            }
            continue;
        }
        kept.push(r);
    }
    (kept, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_monomial;

    fn ring(vars: &[&str], rels: &[&str], trunc: Option<u32>, cap: u32) -> QuotientRing {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_monomial(r, &names).unwrap()).collect();
        QuotientRing::new(names, rels, trunc, cap).unwrap()
    }

    #[test]
    fn basis_avoids_relations() {
        let r = ring(&["x", "y"], &["x^2"], None, 3);
        let b: Vec<String> = r.standard_basis(2).unwrap().iter().map(|m| r.show(m)).collect();
        assert_eq!(b, ["x*y", "y^2"]);
        assert!(r.standard_basis(4).is_err());
    }

    #[test]
    fn tensor_ring_degree_three() {
        let r = ring(&["x", "y", "z"], &["x^3", "x^2*y", "x*y^2", "y^3", "z^2"], None, 4);
        let b: Vec<String> = r.standard_basis(3).unwrap().iter().map(|m| r.show(m)).collect();
        assert_eq!(b, ["x^2*z", "x*y*z", "y^2*z"]);
        assert!(r.standard_basis(4).unwrap().is_empty());
        assert!(r.is_exact());
    }

    #[test]
    fn truncation_empties_high_degrees() {
        let r = ring(&["w", "x", "y", "z"], &["w*x*y", "w*x*z", "w*y*z", "x*y*z"], Some(3), 4);
        assert!(r.standard_basis(4).unwrap().is_empty());
        assert_eq!(r.dim(3), 16);
    }

    #[test]
    fn redundant_relations_are_reported() {
        let r = ring(&["x", "y"], &["x^2", "x^2*y", "x^2"], None, 3);
        assert_eq!(r.generators().len(), 1);
        assert_eq!(r.warnings().len(), 2);
    }

    #[test]
    fn linear_relations_rejected() {
        let names: Vec<String> = vec!["x".into()];
        assert!(QuotientRing::new(names, vec![Monomial::var(0, 1)], None, 2).is_err());
    }

    #[test]
    fn growth_of_full_basis_is_full() {
        let r = ring(&["x", "y", "z"], &["x^2", "y^2", "z^2"], None, 3);
        for d in 0..3 {
            let g = r.growth_set(d, &r.full_set(d));
            assert_eq!(g.count_ones(..), r.dim(d + 1));
        }
        assert!(r.growth(1, &[]).unwrap().is_empty());
    }
}
