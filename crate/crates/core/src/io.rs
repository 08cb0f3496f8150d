//! JSON file formats for rings, ideals, orders and distraction matrices.
//!
//! Unknown fields are rejected. The `schema` field is optional on input and always
//! written on output.

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::distraction::DistractionMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::monomial::{parse_monomial, Monomial};
use crate::order::GradedOrder;
use crate::ring::QuotientRing;

pub const SCHEMA: &str = "hilbert-embed/1";

fn check_schema(schema: &Option<String>) -> Result<()> {
    match schema {
        Some(s) if s != SCHEMA => {
            Err(Error::Syntax { input: s.clone(), reason: format!("unsupported schema, expected `{SCHEMA}`") })
        }
        _ => Ok(()),
    }
}

fn field_context(field: String) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Syntax { input, reason } => Error::Syntax { input, reason: format!("{reason} (in {field})") },
        Error::UnknownVariable(v) => Error::Syntax { input: v, reason: format!("unknown variable (in {field})") },
        other => other,
    }
}

fn parse_list(items: &[String], names: &[String], what: &str) -> Result<Vec<Monomial>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_monomial(s, names).map_err(field_context(format!("{what}[{i}]"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate_above: Option<u32>,
    pub cap: u32,
}

impl RingFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        Ok(file)
    }

    pub fn build(&self) -> Result<QuotientRing> {
        self.build_with_cap(self.cap)
    }

    pub fn build_with_cap(&self, cap: u32) -> Result<QuotientRing> {
        let rels = parse_list(&self.relations, &self.vars, "relations")?;
        QuotientRing::new(self.vars.clone(), rels, self.truncate_above, cap)
    }

    pub fn from_ring(ring: &QuotientRing) -> Self {
        Self {
            schema: Some(SCHEMA.into()),
            vars: ring.names().to_vec(),
            relations: ring.generators().iter().map(|g| ring.show(g)).collect(),
            truncate_above: ring.truncate_above(),
            cap: ring.cap(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub gens: Vec<String>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        Ok(file)
    }

    pub fn build(&self, ring: &QuotientRing) -> Result<MonomialIdeal> {
        MonomialIdeal::generated_by(ring, &parse_list(&self.gens, ring.names(), "gens")?)
    }

    pub fn from_ideal(ring: &QuotientRing, ideal: &MonomialIdeal) -> Self {
        Self {
            schema: Some(SCHEMA.into()),
            gens: ideal.minimal_generators(ring).iter().map(|g| ring.show(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub degrees: BTreeMap<String, Vec<String>>,
}

impl OrderFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        Ok(file)
    }

    pub fn build(&self, ring: &QuotientRing) -> Result<GradedOrder> {
        let mut lists = BTreeMap::new();
        for (key, items) in &self.degrees {
            let d: u32 = key.trim().parse().map_err(|_| Error::Syntax {
                input: key.clone(),
                reason: "degree keys must be unsigned integers (in degrees)".into(),
            })?;
            lists.insert(d, parse_list(items, ring.names(), &format!("degrees.{key}"))?);
        }
        GradedOrder::from_monomials(ring, &lists)
    }

    pub fn from_order(ring: &QuotientRing, order: &GradedOrder) -> Self {
        Self {
            schema: Some(SCHEMA.into()),
            degrees: (0..=order.cap())
                .map(|d| (d.to_string(), order.monomials(ring, d).iter().map(|m| ring.show(m)).collect()))
                .collect(),
        }
    }
}

/// A rational coefficient: an integer or a string such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

/// A linear form as text (`"x - 1/2*z"`) or as a map from variables to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinearFormSpec {
    Text(String),
    Map(BTreeMap<String, Coefficient>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistractionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// Row variable -> column (from 1) -> linear form.
    pub rows: BTreeMap<String, BTreeMap<String, LinearFormSpec>>,
    #[serde(rename = "N")]
    pub stable: u32,
}

impl DistractionFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        Ok(file)
    }

    pub fn build<F: Field>(&self, field: &F, names: &[String]) -> Result<DistractionMatrix<F>> {
        let mut matrix = DistractionMatrix::new(names.len(), self.stable)?;
        for (row, cols) in &self.rows {
            let r = names.iter().position(|n| n == row).ok_or_else(|| Error::UnknownVariable(row.clone()))?;
            for (col, spec) in cols {
                let c: u32 = col.trim().parse().map_err(|_| Error::Syntax {
                    input: col.clone(),
                    reason: format!("column keys must be positive integers (in rows.{row})"),
                })?;
                let coeffs = match spec {
                    LinearFormSpec::Text(s) => parse_linear_form(s, names)?,
                    LinearFormSpec::Map(m) => {
                        let mut v = vec![(BigInt::zero(), BigInt::from(1)); names.len()];
                        for (var, coef) in m {
                            let i = names
                                .iter()
                                .position(|n| n == var)
                                .ok_or_else(|| Error::UnknownVariable(var.clone()))?;
                            v[i] = match coef {
                                Coefficient::Int(k) => (BigInt::from(*k), BigInt::from(1)),
                                Coefficient::Text(s) => parse_rational(s)?,
                            };
                        }
                        v
                    }
                };
                let form = coeffs.iter().map(|(n, d)| field.from_ratio(n, d)).collect::<Result<Vec<_>>>()?;
                matrix.set(r, c, form).map_err(field_context(format!("rows.{row}.{col}")))?;
            }
        }
        Ok(matrix)
    }
}

fn parse_rational(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Syntax { input: s.to_string(), reason: "expected an integer or a fraction a/b".into() };
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok((n, d))
}

/// Parses `x + z`, `x - 2*z`, `1/2*x - z`, as rational coefficients per variable.
pub fn parse_linear_form(s: &str, names: &[String]) -> Result<Vec<(BigInt, BigInt)>> {
    let syntax = |reason: &str| Error::Syntax { input: s.to_string(), reason: reason.to_string() };
    let mut out = vec![(BigInt::zero(), BigInt::from(1)); names.len()];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(syntax("empty linear form"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let (coef, var) = match body.rsplit_once('*') {
            Some((c, v)) => (parse_rational(c)?, v),
            None => ((BigInt::from(1), BigInt::from(1)), body),
        };
        let i = names.iter().position(|n| n == var).ok_or_else(|| {
            if var.is_empty() {
                syntax("expected a variable")
            } else {
                Error::UnknownVariable(var.to_string())
            }
        })?;
        let (mut n, d) = coef;
        if neg {
            n = -n;
        }
        let (n0, d0) = &out[i];
        out[i] = (n0 * &d + &n * d0, d0 * &d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn minimal_ring_file() {
        let f = RingFile::parse(r#"{"vars":["x"],"relations":["x^1*x^2"],"cap":3}"#).unwrap();
        let r = f.build().unwrap();
        assert_eq!(r.show(&r.generators()[0]), "x^3");
        assert_eq!(r.hilbert_series().coeffs(), [1, 1, 1, 0]);
        let back = RingFile::from_ring(&r);
        let again = RingFile::parse(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(again, back);
    }

    #[test]
    fn strict_fields() {
        assert!(RingFile::parse(r#"{"vars":["x"],"relation":["x^3"],"cap":3}"#).is_err());
        assert!(RingFile::parse(r#"{"schema":"other/2","vars":["x"],"cap":3}"#).is_err());
        let e = RingFile::parse(r#"{"vars":["x"],"relations":["x^3","y^2"],"cap":3}"#).unwrap().build();
        assert!(e.unwrap_err().to_string().contains("relations[1]"));
    }

    #[test]
    fn order_file_names_missing_monomial() {
        let r = RingFile::parse(r#"{"vars":["x","y"],"cap":2}"#).unwrap().build().unwrap();
        let o = OrderFile::parse(r#"{"degrees":{"1":["x","y"],"2":["x^2","y^2"]}}"#).unwrap();
        let msg = o.build(&r).unwrap_err().to_string();
        assert!(msg.contains("x*y"), "{msg}");
        let o = OrderFile::parse(r#"{"degrees":{"1":["y","x"],"2":["y^2","x*y","x^2"]}}"#).unwrap().build(&r).unwrap();
        let back = OrderFile::from_order(&r, &o);
        assert_eq!(back.build(&r).unwrap(), o);
    }

    #[test]
    fn linear_forms() {
        let names: Vec<String> = ["x", "z"].iter().map(|s| s.to_string()).collect();
        let f = parse_linear_form("x - 1/2*z", &names).unwrap();
        assert_eq!(f[1], (BigInt::from(-1), BigInt::from(2)));
        assert!(parse_linear_form("x + w", &names).is_err());
        let file = DistractionFile::parse(r#"{"rows":{"z":{"1":"x+z","2":{"x":1,"z":"-1"}}},"N":3}"#).unwrap();
        let m = file.build(&Rationals, &names).unwrap();
        assert_eq!(m.entry(&Rationals, 1, 1), vec![Rationals.one(), Rationals.one()]);
        let gf = file.build(&PrimeField::new(3).unwrap(), &names).unwrap();
        assert_eq!(gf.entry(&PrimeField::new(3).unwrap(), 1, 2), vec![1, 2]);
        assert_eq!(gf.entry(&PrimeField::new(3).unwrap(), 1, 7), vec![0, 1]);
    }
}
