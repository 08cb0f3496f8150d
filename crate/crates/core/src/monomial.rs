//! Dense exponent-vector monomials and the graded lexicographic order.
//!
//! Within one degree the order lists every multiple of `x_1` first, then the
//! multiples of `x_2` that avoid `x_1`, and so on: exponent vectors are
//! compared lexicographically and the *larger* vector comes first. Across
//! degrees, lower degree comes first.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self { exps, degree: 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    /// All monomials dividing `self`, in graded lexicographic order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.nvars())];
        for &e in &self.exps {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        let mut divs: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
        divs.sort();
        divs
    }

    /// Appends a new variable with the given exponent.
    pub fn extend(&self, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(exp);
        Monomial { exps, degree: self.degree + exp }
    }

    /// Drops the last variable, returning the remaining monomial and the dropped exponent.
    pub fn split_last(&self) -> (Monomial, u32) {
        let (last, rest) = self.exps.split_last().expect("monomial has no variables");
        (Monomial::new(rest.to_vec()), *last)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> Display<'a> {
        Display { mono: self, names }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Graded lexicographic comparison; `Less` means `a` comes first.
pub fn cmp_grlex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableMismatch { left: a.nvars(), right: b.nvars() });
    }
    Ok(a.cmp(b))
}

/// Every monomial of degree `d` in `nvars` variables, in graded lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: u32) -> u128 {
    if nvars == 0 {
        return u128::from(d == 0);
    }
    binomial(nvars as u64 + d as u64 - 1, d as u64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub struct Display<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, &e) in self.names.iter().zip(self.mono.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `ident("^"uint)? ("*" ident("^"uint)?)*`, or `1` for the unit monomial.
/// Repeated variables multiply (`x^1*x^2` is `x^3`).
pub fn parse_monomial(input: &str, names: &[String]) -> Result<Monomial> {
    let syntax = |reason: &str| Error::Syntax { input: input.to_string(), reason: reason.to_string() };
    let text = input.trim();
    if text.is_empty() {
        return Err(syntax("empty monomial"));
    }
    let mut exps = vec![0u32; names.len()];
    if text == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: u32 = p.trim().parse().map_err(|_| syntax("exponent is not an unsigned integer"))?;
                (n.trim(), p)
            }
            None => (factor, 1),
        };
        if name.is_empty() || !is_ident(name) {
            return Err(syntax("expected a variable name"));
        }
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        exps[idx] += power;
    }
    Ok(Monomial::new(exps))
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn variables_in_index_order() {
        assert_eq!(cmp_grlex(&m(&[1, 0, 0]), &m(&[0, 1, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn x1_multiples_form_a_prefix() {
        let deg2 = monomials_of_degree(3, 2);
        assert_eq!(deg2.len(), 6);
        // x1^2, x1x2, x1x3 first
        assert!(deg2[..3].iter().all(|m| m.exponent(0) > 0));
        assert!(deg2[3..].iter().all(|m| m.exponent(0) == 0));
        assert_eq!(cmp_grlex(&m(&[1, 0, 1]), &m(&[0, 2, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn degree_dominates() {
        for a in monomials_of_degree(3, 1) {
            for b in monomials_of_degree(3, 2) {
                assert_eq!(a.cmp(&b), Ordering::Less);
            }
        }
    }

    #[test]
    fn mismatched_lengths_error() {
        assert!(cmp_grlex(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn parse_normalizes_repeats() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(parse_monomial("x^1*x^2", &names).unwrap(), m(&[3, 0]));
        assert_eq!(parse_monomial("1", &names).unwrap(), m(&[0, 0]));
        assert!(matches!(parse_monomial("q", &names), Err(Error::UnknownVariable(_))));
        assert!(parse_monomial("x^", &names).is_err());
        let shown = m(&[2, 1]).display(&names).to_string();
        assert_eq!(shown, "x^2*y");
    }

    #[test]
    fn divisors_and_division() {
        let a = m(&[2, 1]);
        assert_eq!(a.divisors().len(), 6);
        assert_eq!(a.div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(a.div(&m(&[0, 2])), None);
        assert_eq!(count_monomials(3, 4), 15);
    }
}
