//! Distraction matrices: `x_i^{a_i}` is sent to the product of the first `a_i` linear forms
//! in row `i`, extended multiplicatively.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{mul_linear, rank, LinearForm, Poly, PolySpace, TermOrder};
use crate::monomial::Monomial;

/// An infinite matrix of linear forms stored by its overriding entries. Column indices
/// start at 1; entries at columns `>= stable` repeat column `stable`; entries that are not
/// overridden are the row variable.
#[derive(Clone, Debug)]
pub struct DistractionMatrix<F: Field> {
    nvars: usize,
    stable: u32,
    overrides: BTreeMap<(usize, u32), LinearForm<F>>,
}

impl<F: Field> DistractionMatrix<F> {
    pub fn identity(nvars: usize) -> Self {
        Self { nvars, stable: 1, overrides: BTreeMap::new() }
    }

    pub fn new(nvars: usize, stable: u32) -> Result<Self> {
        if stable == 0 {
            return Err(Error::Precondition("the stability column must be at least 1".into()));
        }
        Ok(Self { nvars, stable, overrides: BTreeMap::new() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn stable_column(&self) -> u32 {
        self.stable
    }

    pub fn set(&mut self, row: usize, col: u32, form: LinearForm<F>) -> Result<()> {
        if row >= self.nvars || form.len() != self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: form.len().max(row + 1) });
        }
        if col == 0 || col > self.stable {
            return Err(Error::Precondition(format!(
                "column {col} is outside 1..={} (entries past the stability column repeat it)",
                self.stable
            )));
        }
        self.overrides.insert((row, col), form);
        Ok(())
    }

    /// Rows with at least one override.
    pub fn special_rows(&self) -> Vec<usize> {
        self.overrides.keys().map(|&(r, _)| r).dedup().collect()
    }

    pub fn overrides(&self) -> impl Iterator<Item = (usize, u32, &LinearForm<F>)> {
        self.overrides.iter().map(|(&(r, c), f)| (r, c, f))
    }

    /// The entry in `row`, column `col >= 1`.
    pub fn entry(&self, field: &F, row: usize, col: u32) -> LinearForm<F> {
        let col = col.min(self.stable);
        match self.overrides.get(&(row, col)) {
            Some(f) => f.clone(),
            None => (0..self.nvars).map(|v| if v == row { field.one() } else { field.zero() }).collect(),
        }
    }

    /// `D_L(m)`.
    pub fn apply(&self, field: &F, m: &Monomial) -> Poly<F> {
        let mut p: Poly<F> = BTreeMap::from([(Monomial::one(self.nvars), field.one())]);
        for (row, &a) in m.exponents().iter().enumerate() {
            for col in 1..=a {
                p = mul_linear(field, &p, &self.entry(field, row, col));
            }
        }
        p
    }

    /// Every choice of one entry per row among columns `1..=min(cap, stable)` spans the
    /// linear forms.
    pub fn check_spanning(&self, field: &F, cap: u32) -> Result<()> {
        let width = cap.clamp(1, self.stable);
        let choices: Vec<Vec<LinearForm<F>>> = (0..self.nvars)
            .map(|row| {
                let mut forms: Vec<LinearForm<F>> = Vec::new();
                for col in 1..=width {
                    let f = self.entry(field, row, col);
                    if !forms.contains(&f) {
                        forms.push(f);
                    }
                }
                forms
            })
            .collect();
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let vectors: Vec<Vec<F::Elem>> = pick.into_iter().cloned().collect();
            if rank(field, &vectors) < self.nvars {
                return Err(Error::Precondition(
                    "a choice of one entry per row fails to span the linear forms".into(),
                ));
            }
        }
        Ok(())
    }

    /// All entries outside `row` are the row variables themselves.
    pub fn is_single_row(&self, row: usize) -> bool {
        self.overrides.keys().all(|&(r, _)| r == row)
    }
}

/// `D_L(V)` for a list of degree-`d` monomials, as a space of forms of degree `d`.
pub fn distraction_space<F: Field>(
    field: &F,
    matrix: &DistractionMatrix<F>,
    order: &TermOrder,
    degree: u32,
    monomials: &[Monomial],
) -> Result<PolySpace<F>> {
    let mut space = PolySpace::new(field.clone(), order.clone(), degree)?;
    for m in monomials {
        space.insert(&matrix.apply(field, m))?;
    }
    if space.dim() != monomials.len() {
        return Err(Error::Verification {
            degree,
            reason: format!("distraction collapsed {} monomials to dimension {}", monomials.len(), space.dim()),
        });
    }
    Ok(space)
}

/// `D_L(I)` degree by degree for a monomial ideal given by its ambient monomials in each
/// degree `0..=cap`. When `L` only changes one row, closure under every variable is verified.
pub fn distraction_ideal<F: Field>(
    field: &F,
    matrix: &DistractionMatrix<F>,
    order: &TermOrder,
    pieces: &[Vec<Monomial>],
) -> Result<Vec<PolySpace<F>>> {
    let spaces = pieces
        .iter()
        .enumerate()
        .map(|(d, ms)| distraction_space(field, matrix, order, d as u32, ms))
        .collect::<Result<Vec<_>>>()?;
    let rows = matrix.special_rows();
    if rows.len() <= 1 {
        for d in 1..spaces.len() {
            for p in spaces[d - 1].basis() {
                for v in 0..matrix.nvars() {
                    let var: LinearForm<F> =
                        (0..matrix.nvars()).map(|k| if k == v { field.one() } else { field.zero() }).collect();
                    if !spaces[d].contains(&mul_linear(field, &p, &var))? {
                        return Err(Error::Verification {
                            degree: d as u32,
                            reason: "the distracted spaces are not closed under multiplication".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(spaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::monomials_of_degree;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn x_plus_z(q: &Rationals) -> LinearForm<Rationals> {
        vec![q.one(), q.one()]
    }

    #[test]
    fn identity_fixes_monomials() {
        let q = Rationals;
        let l = DistractionMatrix::<Rationals>::identity(2);
        let p = l.apply(&q, &m(&[2, 1]));
        assert_eq!(p, BTreeMap::from([(m(&[2, 1]), q.one())]));
    }

    #[test]
    fn first_z_column_moves_towards_x() {
        let q = Rationals;
        let mut l = DistractionMatrix::new(2, 2).unwrap();
        l.set(1, 1, x_plus_z(&q)).unwrap();
        let p = l.apply(&q, &m(&[1, 1]));
        assert_eq!(p, BTreeMap::from([(m(&[2, 0]), q.one()), (m(&[1, 1]), q.one())]));
        // column 2 is the default entry z
        let p = l.apply(&q, &m(&[0, 2]));
        assert_eq!(p, BTreeMap::from([(m(&[1, 1]), q.one()), (m(&[0, 2]), q.one())]));
        l.check_spanning(&q, 4).unwrap();
    }

    #[test]
    fn spanning_failure_detected() {
        let q = Rationals;
        let mut l = DistractionMatrix::new(2, 1).unwrap();
        l.set(1, 1, vec![q.one(), q.zero()]).unwrap();
        assert!(l.check_spanning(&q, 3).is_err());
        assert!(l.set(1, 2, vec![q.one(), q.zero()]).is_err());
    }

    #[test]
    fn distraction_preserves_dimension_and_closure() {
        let f = PrimeField::new(3).unwrap();
        let mut l = DistractionMatrix::new(2, 3).unwrap();
        l.set(1, 1, vec![1, f.neg(&1)]).unwrap();
        l.set(1, 2, vec![1, f.neg(&2)]).unwrap();
        let order = TermOrder::new(vec![1, 0], vec![0]).unwrap();
        // the ideal (x z) in k[x, z] up to degree 4
        let pieces: Vec<Vec<Monomial>> = (0..=4)
            .map(|d| monomials_of_degree(2, d).into_iter().filter(|m| m.exponent(0) > 0 && m.exponent(1) > 0).collect())
            .collect();
        let spaces = distraction_ideal(&f, &l, &order, &pieces).unwrap();
        for (d, s) in spaces.iter().enumerate() {
            assert_eq!(s.dim(), pieces[d].len());
        }
    }
}
