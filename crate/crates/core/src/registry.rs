//! Built-in worked examples. Each claim is recomputed on every run.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classical::{cl_min_growth, clements_lindstrom_ring};
use crate::embedding::{gotzmann_check, lattice_check};
use crate::error::{Error, Result};
use crate::ideal::{HilbertSeries, MonomialIdeal};
use crate::io::RingFile;
use crate::monomial::{monomials_of_degree, parse_monomial, Monomial};
use crate::oracle::{min_growth_oracle, realize};
use crate::order::{embed_realized, find_embedding_order, is_embedding_order, ForcedPrefixes, GradedOrder};
use crate::ring::QuotientRing;

pub const EXAMPLE_IDS: &[&str] = &[
    "tensor-product",
    "strongly-stable",
    "grobner-flag",
    "wxyz-embedding",
    "gotzmann-counterexample",
    "cl-kk-grid",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Claim {
    pub fn new(statement: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Self { statement: statement.into(), pass: expected == observed, expected, observed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleRecord {
    pub id: String,
    pub ring: RingFile,
    pub claims: Vec<Claim>,
}

impl ExampleRecord {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

fn ring(vars: &[&str], rels: &[&str], truncate: Option<u32>, cap: u32) -> Result<QuotientRing> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let rels = rels.iter().map(|s| parse_monomial(s, &names)).collect::<Result<Vec<_>>>()?;
    QuotientRing::new(names, rels, truncate, cap)
}

fn ideal(r: &QuotientRing, gens: &[&str]) -> Result<MonomialIdeal> {
    let gens = gens.iter().map(|s| parse_monomial(s, r.names())).collect::<Result<Vec<_>>>()?;
    MonomialIdeal::generated_by(r, &gens)
}

fn realizable(r: &QuotientRing, coeffs: &[usize]) -> Result<&'static str> {
    Ok(if realize(r, &HilbertSeries::new(coeffs.to_vec()))?.is_some() { "realized" } else { "none" })
}

/// Runs every claim of example `id`. `budget` bounds the embedding-order searches.
pub fn run_example(id: &str, budget: usize) -> Result<ExampleRecord> {
    let (r, claims) = match id {
        "tensor-product" => tensor_product(budget)?,
        "strongly-stable" => strongly_stable()?,
        "grobner-flag" => grobner_flag()?,
        "wxyz-embedding" => wxyz(budget)?,
        "gotzmann-counterexample" => gotzmann()?,
        "cl-kk-grid" => cl_grid()?,
        _ => return Err(Error::UnknownExample(id.to_string())),
    };
    Ok(ExampleRecord { id: id.to_string(), ring: RingFile::from_ring(&r), claims })
}

fn tensor_product(budget: usize) -> Result<(QuotientRing, Vec<Claim>)> {
    let r = ring(&["x", "y", "z"], &["x^3", "x^2*y", "x*y^2", "y^3", "z^2"], None, 3)?;
    let hx = ideal(&r, &["x"])?.hilbert_series();
    let hz = ideal(&r, &["z"])?.hilbert_series();
    let witness = lattice_check(&r, budget)?
        .map(|w| format!("{} and {} have no {:?}", w.first, w.second, w.missing))
        .unwrap_or_else(|| "lattice".into());
    let claims = vec![
        Claim::new("series of (x)", "(0,1,3,2)", hx),
        Claim::new("series of (z)", "(0,1,2,3)", hz),
        Claim::new("monomial ideal with series (0,1,2,2)", "none", realizable(&r, &[0, 1, 2, 2])?),
        Claim::new("lattice check witness", "(0,1,3,2) and (0,1,2,3) have no Min", witness),
    ];
    Ok((r, claims))
}

fn strongly_stable() -> Result<(QuotientRing, Vec<Claim>)> {
    let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
    let right = monomials_of_degree(3, 2);
    let rels: Vec<Monomial> =
        monomials_of_degree(2, 2).iter().flat_map(|a| right.iter().map(move |b| a.extend(0).mul(b))).collect();
    let r5 = QuotientRing::new(names.clone(), rels.clone(), None, 5)?;
    let r4 = QuotientRing::new(names, rels, None, 4)?;
    let claims = vec![
        Claim::new("series of (x1^2, x1*x2, x2^2)", "(0,0,3,7,0,0)", ideal(&r5, &["x1^2", "x1*x2", "x2^2"])?.hilbert_series()),
        Claim::new("series of (x1^2, x1*x2, x1*x3)", "(0,0,3,6,1,1)", ideal(&r5, &["x1^2", "x1*x2", "x1*x3"])?.hilbert_series()),
        Claim::new("monomial ideal with series (0,0,3,6,0)", "none", realizable(&r4, &[0, 0, 3, 6, 0])?),
    ];
    Ok((r5, claims))
}

fn grobner_flag() -> Result<(QuotientRing, Vec<Claim>)> {
    let vars = ["x1", "x2", "x3", "x4", "x5", "x6"];
    let rels = ["x1^2", "x1*x2", "x1*x3", "x1*x4", "x2^2", "x2*x3", "x3^2", "x4^2", "x4*x5", "x5^2", "x5*x6"];
    let r = ring(&vars, &rels, None, 3)?;
    let claims = vec![
        Claim::new("series of (x1)", "(0,1,2,1)", ideal(&r, &["x1"])?.hilbert_series()),
        Claim::new("series of (x5)", "(0,1,3,0)", ideal(&r, &["x5"])?.hilbert_series()),
        Claim::new("monomial ideal with series (0,1,2,0)", "none", realizable(&r, &[0, 1, 2, 0])?),
    ];
    Ok((r, claims))
}

fn wxyz(budget: usize) -> Result<(QuotientRing, Vec<Claim>)> {
    let r = ring(&["w", "x", "y", "z"], &["w*x*y", "w*x*z", "w*y*z", "x*y*z"], Some(3), 3)?;
    let mons = |ms: &[&str]| ms.iter().map(|s| parse_monomial(s, r.names())).collect::<Result<Vec<_>>>();
    let growth = |m: &str| -> Result<usize> { Ok(r.growth(2, &mons(&[m])?)?.len()) };
    let lists: BTreeMap<u32, Vec<Monomial>> = [
        (1, mons(&["w", "x", "y", "z"])?),
        (2, mons(&["w*x", "w*y", "w^2", "w*z", "x*y", "x^2", "x*z", "y^2", "y*z", "z^2"])?),
        (
            3,
            mons(&[
                "w^2*x", "w*x^2", "w^2*y", "w*y^2", "w^3", "w^2*z", "w*z^2", "x^2*y", "x*y^2", "x^3", "x^2*z",
                "x*z^2", "y^3", "y^2*z", "y*z^2", "z^3",
            ])?,
        ),
    ]
    .into_iter()
    .collect();
    let listed = match is_embedding_order(&r, &GradedOrder::from_monomials(&r, &lists)?) {
        Ok(()) => "embedding".to_string(),
        Err(v) => v.to_string(),
    };
    let forced: ForcedPrefixes = [(2, mons(&["w^2"])?)].into_iter().collect();
    let search = match find_embedding_order(&r, &forced, budget)? {
        Some(_) => "found",
        None => "none",
    };
    let claims = vec![
        Claim::new("growth of w^2 into degree 3", 4, growth("w^2")?),
        Claim::new("growth of w*x into degree 3", 2, growth("w*x")?),
        Claim::new("listed degree 2 and 3 order", "embedding", listed),
        Claim::new("embedding order starting with w^2", "none", search),
    ];
    Ok((r, claims))
}

fn gotzmann() -> Result<(QuotientRing, Vec<Claim>)> {
    let r = ring(&["x", "y"], &["x^3"], None, 4)?;
    let order = GradedOrder::grlex(&r);
    let i = ideal(&r, &["y"])?;
    let e = embed_realized(&r, &order, &i.hilbert_series())?;
    let gens: Vec<String> = e.minimal_generators(&r).iter().map(|m| r.show(m)).collect();
    let check = gotzmann_check(&r, &order, &i, 1)?;
    let verdict = match (check.holds, check.witness_degree) {
        (true, _) => "holds".to_string(),
        (false, Some(d)) => format!("fails in degree {d}"),
        (false, None) => "fails".to_string(),
    };
    let claims = vec![
        Claim::new("embedded ideal of (y)", "x, y^3", gens.join(", ")),
        Claim::new("Gotzmann property of (y) in degree 1", "fails in degree 3", verdict),
    ];
    Ok((r, claims))
}

fn cl_grid() -> Result<(QuotientRing, Vec<Claim>)> {
    let cases: [&[Option<u32>]; 4] =
        [&[Some(2), Some(2), Some(2)], &[Some(2), Some(3)], &[Some(3), Some(3), None], &[None, None, None]];
    let mut claims = Vec::new();
    for e in cases {
        let mut bad = Vec::new();
        let mut points = 0;
        for d in 0..=3u32 {
            let r = clements_lindstrom_ring(e, d + 1)?;
            for k in 0..=r.dim(d) {
                let (cl, oracle) = (cl_min_growth(e, d, k)?, min_growth_oracle(&r, d, k)?);
                if cl != oracle {
                    bad.push(format!("d={d} r={k}: {cl} vs {oracle}"));
                }
                points += 1;
            }
        }
        let shown: Vec<String> = e.iter().map(|x| x.map_or("inf".into(), |t| t.to_string())).collect();
        let observed = if bad.is_empty() { format!("{points} points agree") } else { bad.join("; ") };
        claims.push(Claim::new(
            format!("closed form vs exhaustive minimal growth, e=({}), d<=3", shown.join(",")),
            format!("{points} points agree"),
            observed,
        ));
    }
    let kk = clements_lindstrom_ring(&[Some(2), Some(2), Some(2)], 3)?;
    claims.push(Claim::new("squarefree growth of two variables in three", 3, cl_min_growth(&[Some(2); 3], 1, 2)?));
    Ok((kk, claims))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for id in EXAMPLE_IDS {
            let rec = run_example(id, 50_000_000).unwrap();
            assert!(rec.passed(), "{id}: {:?}", rec.claims);
            assert!(!rec.claims.is_empty());
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(run_example("nope", 10), Err(Error::UnknownExample(_))));
    }
}
