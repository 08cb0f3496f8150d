//! Moving a monomial ideal of `S = R[z]/(z^t)` to a z-stable ideal with the same Hilbert
//! function: distract the z-row towards each `x_l` and take initial ideals for the weight
//! `x = 1, z = 0`, until nothing changes.

use rayon::prelude::*;
use serde::Serialize;

use crate::distraction::{distraction_space, DistractionMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::ideal::MonomialIdeal;
use crate::linalg::{initial_space, LinearForm, TermOrder};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ring::QuotientRing;

#[derive(Clone, Debug, Serialize)]
pub struct StabilizeOutcome {
    #[serde(skip)]
    pub ideal: MonomialIdeal,
    /// Distraction steps applied, including the final round that changed nothing.
    pub steps: usize,
    pub field: String,
}

/// The first `(degree, z-exponent)` with `f z^i` in the ideal but some `x_k f z^{i-1}`
/// nonzero and outside it; the last variable of `ring` is `z`.
pub fn z_stability_failure(ring: &QuotientRing, ideal: &MonomialIdeal) -> Option<(u32, u32)> {
    let z = ring.nvars() - 1;
    for d in 1..=ideal.cap() {
        for m in ideal.monomials(ring, d) {
            let i = m.exponent(z);
            if i == 0 {
                continue;
            }
            let f = m.div(&Monomial::var(z, ring.nvars())).expect("z divides m");
            let escapes = (0..z).any(|k| {
                let g = f.mul_var(k);
                !ring.is_zero(&g) && !ideal.contains(ring, &g)
            });
            if escapes {
                return Some((d, i));
            }
        }
    }
    None
}

/// The `t` of a relation `z^t` of `ring`, if any.
pub fn z_power_bound(ring: &QuotientRing) -> Option<u32> {
    let z = ring.nvars() - 1;
    ring.generators().iter().find(|g| g.degree() > 0 && g.exponent(z) == g.degree()).map(Monomial::degree)
}

/// Stabilization over the rationals for `S = R[z]` with `z` free.
pub fn stabilize(ring: &QuotientRing, ideal: &MonomialIdeal) -> Result<StabilizeOutcome> {
    if let Some(t) = z_power_bound(ring) {
        return Err(Error::Precondition(format!("z^{t} vanishes; use the truncated stabilization")));
    }
    let q = Rationals;
    let n = x_count(ring)?;
    let matrices = (0..n)
        .map(|l| {
            let mut m = DistractionMatrix::new(n + 1, 2)?;
            m.set(n, 1, unit_sum(&q, n + 1, l, n, q.one()))?;
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    run(&q, ring, ideal, &matrices)
}

/// Stabilization for `S = R[z]/(z^t)` with `x_i^t = 0` in `R`, over the smallest prime field
/// holding a primitive `t`-th root of unity.
pub fn stabilize_truncated(ring: &QuotientRing, ideal: &MonomialIdeal) -> Result<StabilizeOutcome> {
    let t = z_power_bound(ring).ok_or_else(|| Error::Precondition("no relation z^t in the ring".into()))?;
    if t == 1 {
        return stabilize_truncated_over(&Rationals, Rationals.one(), ring, ideal);
    }
    let (field, zeta) = PrimeField::with_root_of_unity(t)?;
    stabilize_truncated_over(&field, zeta, ring, ideal)
}

/// Truncated stabilization over any field containing the primitive `t`-th root `zeta`.
pub fn stabilize_truncated_over<F: Field>(
    field: &F,
    zeta: F::Elem,
    ring: &QuotientRing,
    ideal: &MonomialIdeal,
) -> Result<StabilizeOutcome> {
    let t = z_power_bound(ring).ok_or_else(|| Error::Precondition("no relation z^t in the ring".into()))?;
    let n = x_count(ring)?;
    let gens = ring.explicit_generators();
    for i in 0..n {
        let mut e = vec![0; n + 1];
        e[i] = t;
        let p = Monomial::new(e);
        if !gens.iter().any(|g| g.divides(&p)) {
            return Err(Error::Precondition(format!("`{}` does not vanish in the ring", ring.show(&p))));
        }
    }
    let mut power = field.one();
    for k in 1..=t {
        power = field.mul(&power, &zeta);
        if (k < t) == (power == field.one()) {
            return Err(Error::Field(format!("{} is not a primitive {t}-th root of unity", field.show(&zeta))));
        }
    }
    let matrices = (0..n)
        .map(|j| {
            let mut m = DistractionMatrix::new(n + 1, t + 1)?;
            let mut root = field.one();
            for k in 1..=t {
                m.set(n, k, unit_sum(field, n + 1, j, n, field.neg(&root)))?;
                root = field.mul(&root, &zeta);
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    run(field, ring, ideal, &matrices)
}

fn x_count(ring: &QuotientRing) -> Result<usize> {
    match ring.nvars() {
        0 => Err(Error::Precondition("the ring has no variable z".into())),
        n => Ok(n - 1),
    }
}

/// `x_a + c x_b`.
fn unit_sum<F: Field>(field: &F, n: usize, a: usize, b: usize, c: F::Elem) -> LinearForm<F> {
    let mut f = vec![field.zero(); n];
    f[a] = field.one();
    f[b] = field.add(&f[b], &c);
    f
}

fn run<F: Field>(
    field: &F,
    ring: &QuotientRing,
    ideal: &MonomialIdeal,
    matrices: &[DistractionMatrix<F>],
) -> Result<StabilizeOutcome> {
    if ideal.cap() != ring.cap() {
        return Err(Error::InvalidIdeal("ideal and ring have different caps".into()));
    }
    let nv = ring.nvars();
    let mut weights = vec![1; nv];
    weights[nv - 1] = 0;
    let order = TermOrder::new(weights, (0..nv - 1).collect())?;
    for m in matrices {
        m.check_spanning(field, ring.cap())?;
    }
    let size: usize = (0..=ring.cap()).map(|d| ring.dim(d)).sum();
    let budget = size.saturating_mul(size).max(matrices.len());
    let mut current = ideal.clone();
    let mut steps = 0;
    loop {
        let mut changed = false;
        for m in matrices {
            if steps >= budget {
                return Err(Error::NoFixpoint(budget));
            }
            let next = phi(field, ring, &current, m, &order)?;
            check_monovariant(ring, &current, &next)?;
            changed |= next != current;
            current = next;
            steps += 1;
        }
        if !changed {
            break;
        }
    }
    if let Some((degree, level)) = z_stability_failure(ring, &current) {
        return Err(Error::Verification { degree, reason: format!("fixed point is not z-stable at level {level}") });
    }
    Ok(StabilizeOutcome { ideal: current, steps, field: field.describe() })
}

/// One step `in_w(D_L(I + a B))` restricted to `S`.
fn phi<F: Field>(
    field: &F,
    ring: &QuotientRing,
    ideal: &MonomialIdeal,
    matrix: &DistractionMatrix<F>,
    order: &TermOrder,
) -> Result<MonomialIdeal> {
    let pieces = (0..=ring.cap())
        .into_par_iter()
        .map(|d| {
            let ambient = monomials_of_degree(ring.nvars(), d);
            let zeros = ambient.iter().filter(|m| ring.index_of(m).is_none()).count();
            let members: Vec<Monomial> = ambient
                .into_iter()
                .filter(|m| ring.index_of(m).is_none_or(|i| ideal.piece(d).contains(i)))
                .collect();
            let space = distraction_space(field, matrix, order, d, &members)?;
            let mut piece = ring.empty_set(d);
            let mut kept_zeros = 0;
            for m in initial_space(&space) {
                match ring.index_of(&m) {
                    Some(i) => piece.insert(i),
                    None => kept_zeros += 1,
                }
            }
            if kept_zeros != zeros {
                return Err(Error::Verification { degree: d, reason: "the defining ideal is not fixed".into() });
            }
            Ok(piece)
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::from_pieces(ring, pieces).map_err(|e| Error::Verification { degree: 0, reason: e.to_string() })
}

/// Partial sums over z-exponents `<= i` of each degree never decrease.
fn check_monovariant(ring: &QuotientRing, before: &MonomialIdeal, after: &MonomialIdeal) -> Result<()> {
    let z = ring.nvars() - 1;
    for d in 0..=ring.cap() {
        let sums = |ideal: &MonomialIdeal| -> Vec<usize> {
            let mut counts = vec![0usize; d as usize + 1];
            for m in ideal.monomials(ring, d) {
                counts[m.exponent(z) as usize] += 1;
            }
            counts
                .iter()
                .scan(0, |acc, c| {
                    *acc += c;
                    Some(*acc)
                })
                .collect()
        };
        let (a, b) = (sums(before), sums(after));
        if a.iter().zip(&b).any(|(x, y)| y < x) {
            return Err(Error::Verification { degree: d, reason: "level sums decreased".into() });
        }
    }
    Ok(())
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

    fn ideal(r: &QuotientRing, gens: &[&str]) -> MonomialIdeal {
        let g: Vec<Monomial> = gens.iter().map(|s| parse_monomial(s, r.names()).unwrap()).collect();
        MonomialIdeal::generated_by(r, &g).unwrap()
    }

    #[test]
    fn xz_moves_to_x_squared() {
        let s = ring(&["x", "z"], &[], 4);
        let out = stabilize(&s, &ideal(&s, &["x*z"])).unwrap();
        assert_eq!(out.ideal, ideal(&s, &["x^2"]));
        assert_eq!(out.ideal.hilbert_series(), ideal(&s, &["x*z"]).hilbert_series());
        assert_eq!(z_stability_failure(&s, &ideal(&s, &["x*z"])), Some((2, 1)));
    }

    #[test]
    fn z_stable_input_is_fixed() {
        let s = ring(&["x", "y", "z"], &[], 3);
        let i = ideal(&s, &["x^2", "x*y", "x*z"]);
        assert_eq!(z_stability_failure(&s, &i), None);
        let out = stabilize(&s, &i).unwrap();
        assert_eq!(out.ideal, i);
        assert_eq!(out.steps, 2);
    }

    #[test]
    fn truncated_line() {
        let s = ring(&["x", "z"], &["x^2", "z^2"], 3);
        let i = ideal(&s, &["x*z"]);
        let out = stabilize_truncated(&s, &i).unwrap();
        assert_eq!(out.field, "GF(3)");
        assert_eq!(out.ideal.hilbert_series(), i.hilbert_series());
        assert_eq!(z_stability_failure(&s, &out.ideal), None);
        // over the rationals with zeta = -1 the result agrees
        let q = stabilize_truncated_over(&Rationals, Rationals.from_i64(-1), &s, &i).unwrap();
        assert_eq!(q.ideal, out.ideal);
    }

    #[test]
    fn truncated_needs_pure_powers() {
        let s = ring(&["x", "y", "z"], &["x^2", "z^2"], 3);
        assert!(matches!(stabilize_truncated(&s, &MonomialIdeal::zero(&s)), Err(Error::Precondition(_))));
        let free = ring(&["x", "z"], &[], 3);
        assert!(stabilize_truncated(&free, &MonomialIdeal::zero(&free)).is_err());
        let t = ring(&["x", "z"], &["x^2", "z^2"], 3);
        assert!(stabilize(&t, &MonomialIdeal::zero(&t)).is_err());
        assert!(stabilize_truncated_over(&Rationals, Rationals.one(), &t, &MonomialIdeal::zero(&t)).is_err());
    }
}
