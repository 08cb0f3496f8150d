//! Polynomials over a [`Field`], term orders refining a weight, and row-reduced spaces of
//! homogeneous forms of one degree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};

/// Upper bound on the columns of one dense coefficient matrix.
const MAX_COLUMNS: u128 = 20_000;

pub type Poly<F> = BTreeMap<Monomial, <F as Field>::Elem>;

/// Coefficients of a linear form, one per variable.
pub type LinearForm<F> = Vec<<F as Field>::Elem>;

/// A weight per variable, refined by comparing the exponents of the variables in
/// `priority` (largest exponent first) and then the remaining exponents lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<i64>,
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(weights: Vec<i64>, priority: Vec<usize>) -> Result<Self> {
        let n = weights.len();
        if priority.iter().any(|&v| v >= n) {
            return Err(Error::Precondition("tiebreak variable out of range".into()));
        }
        let mut seen = vec![false; n];
        for &v in &priority {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition("tiebreak variable listed twice".into()));
            }
        }
        Ok(Self { weights, priority })
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.exponents().iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// `Greater` when `a` is the larger term.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.weight(a)
            .cmp(&self.weight(b))
            .then_with(|| {
                self.priority
                    .iter()
                    .map(|&v| a.exponent(v).cmp(&b.exponent(v)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| a.exponents().cmp(b.exponents()))
    }
}

/// `p * l` for a linear form `l`.
pub fn mul_linear<F: Field>(field: &F, p: &Poly<F>, l: &[F::Elem]) -> Poly<F> {
    let mut out: Poly<F> = BTreeMap::new();
    for (m, c) in p {
        for (v, a) in l.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            let term = field.mul(c, a);
            let slot = out.entry(m.mul_var(v)).or_insert_with(|| field.zero());
            *slot = field.add(slot, &term);
        }
    }
    out.retain(|_, c| !field.is_zero(c));
    out
}

pub fn show_poly<F: Field>(field: &F, p: &Poly<F>, names: &[String], order: &TermOrder) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut terms: Vec<(&Monomial, &F::Elem)> = p.iter().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let s = field.show(c);
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let mon = m.display(names).to_string();
        match (mag.as_str(), m.is_one()) {
            ("1", false) => out.push_str(&mon),
            (_, true) => out.push_str(&mag),
            _ => out.push_str(&format!("{mag}*{mon}")),
        }
    }
    out
}

/// The rank of a list of vectors of equal length.
pub fn rank<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let mut rows: Vec<Vec<F::Elem>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if field.is_zero(&rows[i][c]) {
                continue;
            }
            let f = field.mul(&rows[i][c], &inv);
            for k in c..cols {
                let t = field.mul(&f, &rows[r][k]);
                rows[i][k] = field.sub(&rows[i][k], &t);
            }
        }
        r += 1;
    }
    r
}

/// A subspace of the degree-`d` forms in `nvars` variables, kept in echelon form with
/// respect to a [`TermOrder`]: every row is normalized at its leading term.
#[derive(Clone, Debug)]
pub struct PolySpace<F: Field> {
    field: F,
    order: TermOrder,
    degree: u32,
    /// Ambient monomials, largest first.
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: BTreeMap<usize, Vec<F::Elem>>,
}

impl<F: Field> PolySpace<F> {
    pub fn new(field: F, order: TermOrder, degree: u32) -> Result<Self> {
        let n = order.nvars();
        let size = count_monomials(n, degree);
        if size > MAX_COLUMNS {
            return Err(Error::Precondition(format!(
                "{size} monomials of degree {degree} exceed the linear algebra limit {MAX_COLUMNS}"
            )));
        }
        let mut columns = monomials_of_degree(n, degree);
        columns.sort_by(|a, b| order.cmp(b, a));
        let index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Self { field, order, degree, columns, index, rows: BTreeMap::new() })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    fn dense(&self, p: &Poly<F>) -> Result<Vec<F::Elem>> {
        let mut v = vec![self.field.zero(); self.columns.len()];
        for (m, c) in p {
            let &i = self.index.get(m).ok_or_else(|| Error::Verification {
                degree: self.degree,
                reason: format!("term of degree {} in a space of degree {}", m.degree(), self.degree),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        for (&p, row) in &self.rows {
            if self.field.is_zero(&v[p]) {
                continue;
            }
            let f = v[p].clone();
            for k in p..v.len() {
                if !self.field.is_zero(&row[k]) {
                    let t = self.field.mul(&f, &row[k]);
                    v[k] = self.field.sub(&v[k], &t);
                }
            }
        }
    }

    /// Adds `p` to the span; returns the new leading monomial when the dimension grows.
    pub fn insert(&mut self, p: &Poly<F>) -> Result<Option<Monomial>> {
        let mut v = self.dense(p)?;
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|c| !self.field.is_zero(c)) else {
            return Ok(None);
        };
        let inv = self.field.inv(&v[pivot]).expect("nonzero pivot");
        for c in v.iter_mut().skip(pivot) {
            *c = self.field.mul(c, &inv);
        }
        // keep earlier rows reduced at the new pivot
        for row in self.rows.values_mut() {
            if self.field.is_zero(&row[pivot]) {
                continue;
            }
            let f = row[pivot].clone();
            for k in pivot..row.len() {
                let t = self.field.mul(&f, &v[k]);
                row[k] = self.field.sub(&row[k], &t);
            }
        }
        self.rows.insert(pivot, v);
        Ok(Some(self.columns[pivot].clone()))
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        let mut v = self.dense(p)?;
        self.reduce(&mut v);
        Ok(v.iter().all(|c| self.field.is_zero(c)))
    }

    /// Leading monomials of the rows, largest first; these span the initial space.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.keys().map(|&p| self.columns[p].clone()).collect()
    }

    /// The reduced basis, one polynomial per leading monomial.
    pub fn basis(&self) -> Vec<Poly<F>> {
        self.rows
            .values()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !self.field.is_zero(c))
                    .map(|(k, c)| (self.columns[k].clone(), c.clone()))
                    .collect()
            })
            .collect()
    }
}

/// The monomials spanning the initial space of `V` for the weight of `V`'s term order:
/// leading forms of maximal weight, refined to monomials by the order's tiebreak.
pub fn initial_space<F: Field>(v: &PolySpace<F>) -> Vec<Monomial> {
    v.leading_monomials()
}
