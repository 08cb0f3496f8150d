//! Polarization `f y^i -> f y^{i-1} z` (for `i >= d`) of a monomial ideal, and the transfer
//! of embedding orders along polarization, distraction and truncated extension.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distraction::{distraction_ideal, distraction_space, DistractionMatrix};
use crate::error::{Error, Result};
use crate::extension::{fresh_name, ExtensionRing};
use crate::field::{Field, Rationals};
use crate::ideal::MonomialIdeal;
use crate::linalg::{initial_space, mul_linear, show_poly, PolySpace, TermOrder};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::oracle::min_growth_table;
use crate::order::{is_embedding_order, EmbeddingCertificate, EmbeddingViolation, GradedOrder, ViolationKind};
use crate::ring::QuotientRing;
use crate::stabilize::{stabilize, stabilize_truncated};

/// `B/b` with `B = A[z]` and `b` generated by the polarized generators.
#[derive(Debug)]
pub struct Polarization {
    pub ring: QuotientRing,
    pub generators: Vec<Monomial>,
    pub y: usize,
    pub d: u32,
}

/// The polarization of a single monomial of `A`, as a monomial of `A[z]`.
pub fn polarize_monomial(m: &Monomial, y: usize, d: u32) -> Monomial {
    let i = m.exponent(y);
    if i < d {
        return m.extend(0);
    }
    let mut e = m.exponents().to_vec();
    e[y] -= 1;
    e.push(1);
    Monomial::new(e)
}

/// Polarizes the relations of `ring` in the variable `y`, checking that every monomial of
/// the relation ideal up to the cap lands in `b` and that `H_{A/a} = (1 - t) H_{B/b}`.
pub fn polarize(ring: &QuotientRing, y: usize, d: u32) -> Result<Polarization> {
    if d == 0 {
        return Err(Error::Precondition("polarization degree must be at least 1".into()));
    }
    if y >= ring.nvars() {
        return Err(Error::Precondition(format!("variable index {y} out of range")));
    }
    let cap = ring.cap();
    let mut names = ring.names().to_vec();
    names.push(fresh_name(ring.names(), "z"));
    let generators: Vec<Monomial> = ring.explicit_generators().iter().map(|g| polarize_monomial(g, y, d)).collect();
    let b = QuotientRing::build(names, generators, None, cap)?;
    for e in 0..=cap {
        for m in monomials_of_degree(ring.nvars(), e) {
            if ring.is_zero(&m) && !b.is_zero(&polarize_monomial(&m, y, d)) {
                return Err(Error::Verification {
                    degree: e,
                    reason: format!("the polarization of `{}` escapes the polarized ideal", ring.show(&m)),
                });
            }
        }
        let below = if e == 0 { 0 } else { b.dim(e - 1) };
        if ring.dim(e) + below != b.dim(e) {
            return Err(Error::Verification { degree: e, reason: "Hilbert series identity fails".into() });
        }
    }
    Ok(Polarization { generators: b.generators().to_vec(), ring: b, y, d })
}

/// An embedding order on the polarized ring `B/b`, transported from `order` on `R = A/a`:
/// extend to `R[z]`, distract the `y`-row at column `d` to `y + z`, and read off initial
/// monomials for the weight `x = 1, y = z = 0` with `z` breaking ties before `y`.
pub fn polarization_embedding(ring: &QuotientRing, cert: &EmbeddingCertificate, y: usize, d: u32) -> Result<(Polarization, GradedOrder)> {
    let pol = polarize(ring, y, d)?;
    let cap = ring.cap().min(cert.verified_cap());
    let ext = ExtensionRing::new(ring, cert, None, cap)?;
    let tau = ext.extended_order()?;
    let s_prime = ext.ring();
    let s = &pol.ring;
    let nv = s.nvars();
    let z = nv - 1;
    let q = Rationals;

    let mut matrix = DistractionMatrix::new(nv, d + 1)?;
    let mut form = vec![q.zero(); nv];
    form[y] = q.one();
    form[z] = q.one();
    matrix.set(y, d, form)?;
    let mut weights = vec![1; nv];
    weights[y] = 0;
    weights[z] = 0;
    let mut priority = vec![z, y];
    priority.extend((0..nv).filter(|&v| v != y && v != z));
    let term_order = TermOrder::new(weights, priority)?;

    let mut per_degree = Vec::with_capacity(cap as usize + 1);
    for e in 0..=cap {
        let relations: Vec<Monomial> =
            monomials_of_degree(nv, e).into_iter().filter(|m| s_prime.is_zero(m)).collect();
        let mut space = distraction_space(&q, &matrix, &term_order, e, &relations)?;
        let lead = initial_space(&space);
        if lead.len() != relations.len() || lead.iter().any(|m| !s.is_zero(m)) {
            return Err(Error::Verification {
                degree: e,
                reason: "the initial ideal of the distracted extension is not the polarized ideal".into(),
            });
        }
        let mut list = Vec::with_capacity(s.dim(e));
        for m in tau.monomials(s_prime, e) {
            let pivot = space.insert(&matrix.apply(&q, &m))?.ok_or_else(|| Error::Verification {
                degree: e,
                reason: "distraction lost a dimension".into(),
            })?;
            let idx = s.index_of(&pivot).ok_or_else(|| Error::Verification {
                degree: e,
                reason: format!("initial monomial `{}` vanishes in the polarized ring", s.show(&pivot)),
            })?;
            list.push(idx);
        }
        per_degree.push(list);
    }
    let order = GradedOrder::from_indices(per_degree);
    is_embedding_order_up_to(s, &order, cap)?;
    Ok((pol, order))
}

fn is_embedding_order_up_to(ring: &QuotientRing, order: &GradedOrder, cap: u32) -> Result<()> {
    if cap == ring.cap() {
        is_embedding_order(ring, order).map_err(Error::NotEmbedding)
    } else {
        Err(Error::DegreeOverCap { degree: ring.cap(), cap })
    }
}

/// The flag of subspaces of `A/D_L(a)` obtained by distracting the prefixes of an order on
/// `R = A/a`. The quotient is not monomial, so the flag is kept as polynomials.
#[derive(Clone, Debug, Serialize)]
pub struct DistractedFlag {
    pub special_row: Option<String>,
    /// Generators of `D_L(a)` in each degree.
    pub relations: Vec<Vec<String>>,
    /// `D_L` of the order's monomials, in order, in each degree.
    pub flag: Vec<Vec<String>>,
    pub violation: Option<EmbeddingViolation>,
}

/// Distracts `R = A/a` by a matrix that changes a single row (with that variable present in
/// every overriding entry), verifies `in(D_L(a)) = a`, and checks the distracted order's
/// flag for the two embedding conditions with exact linear algebra.
pub fn distraction_embedding(
    ring: &QuotientRing,
    cert: &EmbeddingCertificate,
    matrix: &DistractionMatrix<Rationals>,
) -> Result<DistractedFlag> {
    let q = Rationals;
    let n = ring.nvars();
    let cap = ring.cap().min(cert.verified_cap());
    if matrix.nvars() != n {
        return Err(Error::VariableMismatch { left: n, right: matrix.nvars() });
    }
    let rows = matrix.special_rows();
    if rows.len() > 1 {
        return Err(Error::Precondition("the distraction matrix may change only one row".into()));
    }
    let row = rows.first().copied();
    if let Some(r) = row {
        if matrix.overrides().any(|(_, _, f)| q.is_zero(&f[r])) {
            return Err(Error::Precondition(format!(
                "every entry of row `{}` must involve `{}`",
                ring.names()[r],
                ring.names()[r]
            )));
        }
    }
    matrix.check_spanning(&q, cap)?;
    let special = row.unwrap_or(0);
    let weights = (0..n).map(|v| i64::from(v == special)).collect();
    let mut priority = vec![special];
    priority.extend((0..n).filter(|&v| v != special));
    let term_order = TermOrder::new(weights, priority)?;

    let relation_monomials: Vec<Vec<Monomial>> = (0..=cap)
        .map(|e| monomials_of_degree(n, e).into_iter().filter(|m| ring.is_zero(m)).collect())
        .collect();
    let relations = distraction_ideal(&q, matrix, &term_order, &relation_monomials)?;
    for (e, space) in relations.iter().enumerate() {
        let mut lead = initial_space(space);
        lead.sort();
        let mut want = relation_monomials[e].clone();
        want.sort();
        if lead != want {
            return Err(Error::Verification {
                degree: e as u32,
                reason: "the initial ideal of the distracted relations is not the original ideal".into(),
            });
        }
    }

    let order = cert.order();
    let images: Vec<Vec<_>> = (0..=cap)
        .map(|e| order.monomials(ring, e).iter().map(|m| matrix.apply(&q, m)).collect())
        .collect();
    let mut violation = None;
    'degrees: for e in 0..cap {
        let table = min_growth_table(ring, e, 1)?;
        let base = relations[e as usize + 1].dim();
        let mut grown = relations[e as usize + 1].clone();
        let mut prefix = relations[e as usize + 1].clone();
        let mut used = 0;
        for (k, p) in images[e as usize].iter().enumerate() {
            for v in 0..n {
                let var: Vec<_> = (0..n).map(|u| if u == v { q.one() } else { q.zero() }).collect();
                grown.insert(&mul_linear(&q, p, &var))?;
            }
            let s = grown.dim() - base;
            let kind = if s != table[k + 1] {
                Some(ViolationKind::NotMinimal)
            } else {
                while used < s {
                    prefix.insert(&images[e as usize + 1][used])?;
                    used += 1;
                }
                (!same_span(&grown, &prefix)?).then_some(ViolationKind::NotPrefix)
            };
            if let Some(kind) = kind {
                violation = Some(EmbeddingViolation { degree: e, prefix_size: k + 1, kind });
                break 'degrees;
            }
        }
    }
    let names = ring.names();
    Ok(DistractedFlag {
        special_row: row.map(|r| names[r].clone()),
        relations: relations
            .iter()
            .map(|s| s.basis().iter().map(|p| show_poly(&q, p, names, &term_order)).collect())
            .collect(),
        flag: images
            .iter()
            .map(|ps| ps.iter().map(|p| show_poly(&q, p, names, &term_order)).collect())
            .collect(),
        violation,
    })
}

fn same_span<F: Field>(a: &PolySpace<F>, b: &PolySpace<F>) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    for p in a.basis() {
        if !b.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The extended order on `R[z]/(z^t)` for `R` with `x_i^t = 0` for every variable, checked to
/// be an embedding order.
pub fn clements_lindstrom_extend(
    ring: &QuotientRing,
    cert: &EmbeddingCertificate,
    t: Option<u32>,
    cap: u32,
) -> Result<(QuotientRing, GradedOrder)> {
    if let Some(t) = t {
        let gens = ring.explicit_generators();
        for i in 0..ring.nvars() {
            let p = Monomial::var(i, ring.nvars());
            let p = Monomial::new(p.exponents().iter().map(|e| e * t).collect());
            if !gens.iter().any(|g| g.divides(&p)) {
                return Err(Error::Precondition(format!("`{}` does not vanish in the ring", ring.show(&p))));
            }
        }
    }
    let ext = ExtensionRing::new(ring, cert, t, cap)?;
    let order = ext.extended_order()?;
    let s = ext.into_ring();
    is_embedding_order(&s, &order).map_err(Error::NotEmbedding)?;
    Ok((s, order))
}

/// Stabilizes an ideal of the extension ring and replaces it by the segment ideal with the
/// same Hilbert function.
pub fn embed_in_extension(ext: &ExtensionRing<'_>, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let stable = match ext.t() {
        Some(_) => stabilize_truncated(ext.ring(), ideal)?,
        None => stabilize(ext.ring(), ideal)?,
    };
    ext.extend_embedding(&stable.ideal)
}

/// Minimal generators of the polarized ideal, by name.
pub fn show_generators(pol: &Polarization) -> Vec<String> {
    pol.generators.iter().map(|g| pol.ring.show(g)).collect()
}

/// Orders per degree, written out.
pub fn show_order(ring: &QuotientRing, order: &GradedOrder) -> BTreeMap<u32, Vec<String>> {
    (0..=order.cap()).map(|d| (d, order.monomials(ring, d).iter().map(|m| ring.show(m)).collect())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_monomial;

    fn ring(vars: &[&str], rels: &[&str], cap: u32) -> QuotientRing {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_monomial(r, &names).unwrap()).collect();
        QuotientRing::new(names, rels, None, cap).unwrap()
    }

    fn grlex_cert(r: &QuotientRing) -> EmbeddingCertificate {
        EmbeddingCertificate::new(r, GradedOrder::grlex(r)).unwrap()
    }

    #[test]
    fn polarize_examples() {
        let r = ring(&["y"], &["y^2"], 4);
        assert_eq!(show_generators(&polarize(&r, 0, 2).unwrap()), ["y*z"]);
        let r = ring(&["x", "y"], &["x*y^3"], 5);
        assert_eq!(show_generators(&polarize(&r, 1, 2).unwrap()), ["x*y^2*z"]);
        let r = ring(&["x", "y"], &["x^2", "x*y"], 4);
        assert_eq!(show_generators(&polarize(&r, 1, 2).unwrap()), ["x^2", "x*y"]);
        assert!(polarize(&r, 1, 0).is_err());
    }

    #[test]
    fn polarized_line_embeds() {
        let r = ring(&["y"], &["y^2"], 4);
        let (pol, order) = polarization_embedding(&r, &grlex_cert(&r), 0, 2).unwrap();
        assert_eq!(is_embedding_order(&pol.ring, &order), Ok(()));
        let shown = show_order(&pol.ring, &order);
        assert_eq!(shown[&2], ["y^2", "z^2"]);
    }

    #[test]
    fn polarized_plane_embeds() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"], 4);
        let (pol, order) = polarization_embedding(&r, &grlex_cert(&r), 1, 2).unwrap();
        assert_eq!(is_embedding_order(&pol.ring, &order), Ok(()));
    }

    #[test]
    fn distracted_square() {
        let r = ring(&["x1", "x2"], &["x1^2"], 4);
        let q = Rationals;
        let mut l = DistractionMatrix::new(2, 3).unwrap();
        l.set(0, 2, vec![q.one(), q.one()]).unwrap();
        let flag = distraction_embedding(&r, &grlex_cert(&r), &l).unwrap();
        assert_eq!(flag.relations[2], ["x1^2 + x1*x2"]);
        assert_eq!(flag.violation, None);
        let id = DistractionMatrix::<Rationals>::identity(2);
        let flag = distraction_embedding(&r, &grlex_cert(&r), &id).unwrap();
        assert_eq!(flag.flag[1], ["x1", "x2"]);
    }

    #[test]
    fn truncated_extensions() {
        let r = ring(&["x"], &["x^2"], 3);
        let (s, order) = clements_lindstrom_extend(&r, &grlex_cert(&r), Some(2), 3).unwrap();
        assert_eq!(show_order(&s, &order)[&1], ["x", "z"]);
        assert_eq!(show_order(&s, &order)[&2], ["x*z"]);
        let kk = ring(&["x", "y"], &["x^2", "y^2"], 4);
        clements_lindstrom_extend(&kk, &grlex_cert(&kk), Some(2), 4).unwrap();
        let bad = ring(&["x", "y"], &["x^2"], 3);
        assert!(matches!(
            clements_lindstrom_extend(&bad, &grlex_cert(&bad), Some(2), 3),
            Err(Error::Precondition(_))
        ));
    }
}
