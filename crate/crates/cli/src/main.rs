use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hilbert_embed::classical::{cl_min_growth, is_macaulay_lex, macaulay_min_growth};
use hilbert_embed::embedding::lattice_check;
use hilbert_embed::error::{Error, Result};
use hilbert_embed::extension::{fresh_name, ExtensionRing};
use hilbert_embed::field::Rationals;
use hilbert_embed::ideal::HilbertSeries;
use hilbert_embed::io::{DistractionFile, IdealFile, OrderFile, RingFile, SCHEMA};
use hilbert_embed::monomial::parse_monomial;
use hilbert_embed::order::{
    embed, find_embedding_order, find_embedding_orders, is_embedding_order, EmbeddingCertificate, ForcedPrefixes,
    GradedOrder,
};
use hilbert_embed::polarize::{
    clements_lindstrom_extend, distraction_embedding, polarization_embedding, polarize, show_generators,
};
use hilbert_embed::registry::{run_example, Claim};
use hilbert_embed::ring::QuotientRing;
use hilbert_embed::stabilize::{stabilize, stabilize_truncated, z_stability_failure};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "hilbert-embed", version, about = "Embeddings of Hilbert functions of monomial ideals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Node budget for exhaustive searches and enumerations.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    budget: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// `t` as an integer or `inf`.
#[derive(Clone, Copy, Debug)]
struct Truncation(Option<u32>);

fn parse_t(s: &str) -> std::result::Result<Truncation, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(Truncation(None));
    }
    match s.parse::<u32>() {
        Ok(0) => Err("t must be positive".into()),
        Ok(t) => Ok(Truncation(Some(t))),
        Err(_) => Err(format!("`{s}` is neither a positive integer nor `inf`")),
    }
}

/// Comma-separated exponent bounds, each an integer or `inf`.
#[derive(Clone, Debug)]
struct Bounds(Vec<Option<u32>>);

fn parse_bounds(s: &str) -> std::result::Result<Bounds, String> {
    s.split(',').map(|p| parse_t(p.trim()).map(|t| t.0)).collect::<std::result::Result<_, _>>().map(Bounds)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for an embedding order.
    FindOrder {
        #[arg(long)]
        ring: PathBuf,
        /// Forced prefix such as `2:w^2,w*x` (repeatable).
        #[arg(long = "force-prefix")]
        force_prefix: Vec<String>,
        /// Return up to this many orders instead of one.
        #[arg(long)]
        all: Option<usize>,
    },
    /// Verify an order file against the embedding conditions.
    CheckOrder {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
    },
    /// Test whether the Hilbert poset is a lattice.
    LatticeCheck {
        #[arg(long)]
        ring: PathBuf,
    },
    /// The prefix ideal of an order with a given Hilbert series.
    Embed {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        series: String,
    },
    /// Minimal growth of r degree-d monomials in n free variables.
    MacaulayGrowth { n: usize, d: u32, r: u128 },
    /// Minimal growth in k[x]/(x_1^e_1, ...).
    ClGrowth {
        #[arg(long, value_parser = parse_bounds)]
        e: Bounds,
        d: u32,
        r: usize,
    },
    /// Whether lex segments realize every Hilbert function of the ring.
    MacaulayLexCheck {
        #[arg(long)]
        ring: PathBuf,
    },
    /// The segment of length s in degree d of R[z]/(z^t).
    Segment {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long, value_parser = parse_t)]
        t: Truncation,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        length: usize,
    },
    /// The extended order on R[z]/(z^t).
    ExtendOrder {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long, value_parser = parse_t)]
        t: Truncation,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Partial-sum comparison of an ideal of R[z]/(z^t) with its extended embedding.
    StrongHyp {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long, value_parser = parse_t)]
        t: Truncation,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Make an ideal of R[z]/(z^t) z-stable by distractions.
    Stabilize {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_parser = parse_t, default_value = "inf")]
        t: Truncation,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Polarize the ring's relations in one variable.
    Polarize {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Embedding order of the polarized ring.
    PolarizeEmbed {
        #[arg(long)]
        ring: PathBuf,
        /// Base embedding order; searched for when omitted.
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Distract the ring and its order and check the embedding conditions.
    DistractionEmbed {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Extended embedding order on R[z]/(z^t) when every x_i^t vanishes.
    ClExtend {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long, value_parser = parse_t)]
        t: Truncation,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run a built-in worked example.
    #[command(name = "paper-example")]
    Example { id: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FindOrder { .. } => "find-order",
            Command::CheckOrder { .. } => "check-order",
            Command::LatticeCheck { .. } => "lattice-check",
            Command::Embed { .. } => "embed",
            Command::MacaulayGrowth { .. } => "macaulay-growth",
            Command::ClGrowth { .. } => "cl-growth",
            Command::MacaulayLexCheck { .. } => "macaulay-lex-check",
            Command::Segment { .. } => "segment",
            Command::ExtendOrder { .. } => "extend-order",
            Command::StrongHyp { .. } => "strong-hyp",
            Command::Stabilize { .. } => "stabilize",
            Command::Polarize { .. } => "polarize",
            Command::PolarizeEmbed { .. } => "polarize-embed",
            Command::DistractionEmbed { .. } => "distraction-embed",
            Command::ClExtend { .. } => "cl-extend",
            Command::Example { .. } => "paper-example",
        }
    }
}

/// Reads input files and feeds their bytes into the report digest.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Syntax { input: path.display().to_string(), reason: e.to_string() })?;
        self.hasher.update(path.display().to_string().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn ring(&mut self, path: &Path) -> Result<RingFile> {
        RingFile::parse(&self.read(path)?).map_err(|e| located(path, e))
    }

    fn order(&mut self, path: &Path, ring: &QuotientRing) -> Result<GradedOrder> {
        OrderFile::parse(&self.read(path)?).and_then(|f| f.build(ring)).map_err(|e| located(path, e))
    }

    fn ideal(&mut self, path: &Path) -> Result<IdealFile> {
        IdealFile::parse(&self.read(path)?).map_err(|e| located(path, e))
    }
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Syntax { input, reason } => Error::Syntax { input, reason: format!("{reason} [{}]", path.display()) },
        Error::Json(j) => Error::Syntax { input: path.display().to_string(), reason: j.to_string() },
        other => other,
    }
}

fn variable(ring: &QuotientRing, name: &str) -> Result<usize> {
    ring.names().iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

fn certificate(ring: &QuotientRing, order: GradedOrder) -> Result<EmbeddingCertificate> {
    EmbeddingCertificate::new(ring, order)
}

fn order_json(ring: &QuotientRing, order: &GradedOrder) -> Value {
    json!(OrderFile::from_order(ring, order))
}

struct Outcome {
    results: Value,
    claims: Vec<Claim>,
}

impl Outcome {
    fn plain(results: Value) -> Self {
        Self { results, claims: Vec::new() }
    }
}

fn run(cmd: &Command, budget: usize, inputs: &mut Inputs) -> Result<Outcome> {
    Ok(match cmd {
        Command::FindOrder { ring, force_prefix, all } => {
            let r = inputs.ring(ring)?.build()?;
            let mut forced = ForcedPrefixes::new();
            for spec in force_prefix {
                let (d, mons) = spec.split_once(':').ok_or_else(|| Error::Syntax {
                    input: spec.clone(),
                    reason: "expected `degree:monomial,monomial,...`".into(),
                })?;
                let d: u32 = d.trim().parse().map_err(|_| Error::Syntax {
                    input: spec.clone(),
                    reason: "degree must be an unsigned integer".into(),
                })?;
                let mons = mons.split(',').map(|m| parse_monomial(m, r.names())).collect::<Result<Vec<_>>>()?;
                forced.entry(d).or_default().extend(mons);
            }
            let orders = match all {
                Some(limit) => find_embedding_orders(&r, &forced, *limit, budget)?,
                None => find_embedding_order(&r, &forced, budget)?.into_iter().collect(),
            };
            let shown: Vec<Value> = orders.iter().map(|o| order_json(&r, o)).collect();
            Outcome::plain(json!({ "found": orders.len(), "orders": shown }))
        }
        Command::CheckOrder { ring, order } => {
            let r = inputs.ring(ring)?.build()?;
            let o = inputs.order(order, &r)?;
            let verdict = is_embedding_order(&r, &o);
            let observed = match &verdict {
                Ok(()) => "embedding".to_string(),
                Err(v) => v.to_string(),
            };
            Outcome {
                results: json!({ "embedding": verdict.is_ok(), "violation": verdict.err() }),
                claims: vec![Claim::new("order is an embedding order", "embedding", observed)],
            }
        }
        Command::LatticeCheck { ring } => {
            let r = inputs.ring(ring)?.build()?;
            let w = lattice_check(&r, budget)?;
            Outcome::plain(json!({ "lattice": w.is_none(), "witness": w }))
        }
        Command::Embed { ring, order, series } => {
            let r = inputs.ring(ring)?.build()?;
            let o = inputs.order(order, &r)?;
            let h: HilbertSeries = series.parse()?;
            let i = embed(&r, &o, &h)?;
            let gens = IdealFile::from_ideal(&r, &i);
            Outcome::plain(json!({ "series": i.hilbert_series().to_string(), "ideal": gens }))
        }
        Command::MacaulayGrowth { n, d, r } => {
            let g = macaulay_min_growth(*n, *d, *r)?;
            Outcome::plain(json!({ "n": n, "d": d, "r": r.to_string(), "growth": g.to_string() }))
        }
        Command::ClGrowth { e, d, r } => {
            let g = cl_min_growth(&e.0, *d, *r)?;
            let shown: Vec<String> = e.0.iter().map(|x| x.map_or("inf".into(), |t| t.to_string())).collect();
            Outcome::plain(json!({ "e": shown, "d": d, "r": r, "growth": g }))
        }
        Command::MacaulayLexCheck { ring } => {
            let r = inputs.ring(ring)?.build()?;
            let bad = is_macaulay_lex(&r, budget)?;
            Outcome::plain(json!({
                "macaulay_lex": bad.is_none(),
                "unrealized_series": bad.map(|h| h.to_string()),
            }))
        }
        Command::Segment { ring, order, t, degree, length } => {
            let r = inputs.ring(ring)?.build()?;
            let cert = certificate(&r, inputs.order(order, &r)?)?;
            let ext = ExtensionRing::new(&r, &cert, t.0, r.cap())?;
            let ranks = ext.segment(*degree, *length)?;
            let set = ext.ranks_to_set(*degree, &ranks);
            let s = ext.ring();
            let basis = s.standard_basis(*degree)?;
            let mons: Vec<String> = set.ones().map(|k| s.show(&basis[k])).collect();
            Outcome::plain(json!({ "degree": degree, "length": length, "ranks": ranks, "monomials": mons }))
        }
        Command::ExtendOrder { ring, order, t, cap } => {
            let r = inputs.ring(ring)?.build()?;
            let cert = certificate(&r, inputs.order(order, &r)?)?;
            let ext = ExtensionRing::new(&r, &cert, t.0, cap.unwrap_or(r.cap()))?;
            let tau = ext.extended_order()?;
            let verdict = is_embedding_order(ext.ring(), &tau);
            Outcome::plain(json!({
                "ring": RingFile::from_ring(ext.ring()),
                "order": order_json(ext.ring(), &tau),
                "embedding": verdict.is_ok(),
                "violation": verdict.err(),
            }))
        }
        Command::StrongHyp { ring, order, t, ideal } => {
            let r = inputs.ring(ring)?.build()?;
            let cert = certificate(&r, inputs.order(order, &r)?)?;
            let ext = ExtensionRing::new(&r, &cert, t.0, r.cap())?;
            let i = inputs.ideal(ideal)?.build(ext.ring())?;
            let v = ext.strong_hyp_check(&i)?;
            let observed = match &v {
                None => "holds".to_string(),
                Some(v) => format!("fails at level {} in degree {}", v.level, v.degree),
            };
            Outcome {
                results: json!({ "holds": v.is_none(), "violation": v }),
                claims: vec![Claim::new("partial sums dominate the extended embedding", "holds", observed)],
            }
        }
        Command::Stabilize { ring, ideal, t, cap } => {
            let base = inputs.ring(ring)?.build()?;
            let z = fresh_name(base.names(), "z");
            let s = base.adjoin(&z, t.0, cap.unwrap_or(base.cap()))?;
            let i = inputs.ideal(ideal)?.build(&s)?;
            let out = match t.0 {
                Some(_) => stabilize_truncated(&s, &i)?,
                None => stabilize(&s, &i)?,
            };
            let stable = z_stability_failure(&s, &out.ideal)
                .map_or("z-stable".to_string(), |(d, i)| format!("fails in degree {d} at z^{i}"));
            Outcome {
                results: json!({
                    "ring": RingFile::from_ring(&s),
                    "ideal": IdealFile::from_ideal(&s, &out.ideal),
                    "series": out.ideal.hilbert_series().to_string(),
                    "steps": out.steps,
                    "field": out.field,
                }),
                claims: vec![
                    Claim::new("output is z-stable", "z-stable", stable),
                    Claim::new("Hilbert series preserved", i.hilbert_series(), out.ideal.hilbert_series()),
                ],
            }
        }
        Command::Polarize { ring, y, d } => {
            let r = inputs.ring(ring)?.build()?;
            let pol = polarize(&r, variable(&r, y)?, *d)?;
            Outcome::plain(json!({
                "ring": RingFile::from_ring(&pol.ring),
                "generators": show_generators(&pol),
                "series": pol.ring.hilbert_series().to_string(),
            }))
        }
        Command::PolarizeEmbed { ring, order, y, d } => {
            let r = inputs.ring(ring)?.build()?;
            let o = match order {
                Some(p) => inputs.order(p, &r)?,
                None => find_embedding_order(&r, &ForcedPrefixes::new(), budget)?
                    .ok_or_else(|| Error::Precondition("the ring has no embedding order".into()))?,
            };
            let cert = certificate(&r, o)?;
            let (pol, tau) = polarization_embedding(&r, &cert, variable(&r, y)?, *d)?;
            let observed = match is_embedding_order(&pol.ring, &tau) {
                Ok(()) => "embedding".to_string(),
                Err(v) => v.to_string(),
            };
            Outcome {
                results: json!({
                    "ring": RingFile::from_ring(&pol.ring),
                    "generators": show_generators(&pol),
                    "order": order_json(&pol.ring, &tau),
                }),
                claims: vec![Claim::new("induced order is an embedding order", "embedding", observed)],
            }
        }
        Command::DistractionEmbed { ring, order, matrix } => {
            let r = inputs.ring(ring)?.build()?;
            let o = match order {
                Some(p) => inputs.order(p, &r)?,
                None => GradedOrder::grlex(&r),
            };
            let cert = certificate(&r, o)?;
            let m = DistractionFile::parse(&inputs.read(matrix)?)
                .and_then(|f| f.build(&Rationals, r.names()))
                .map_err(|e| located(matrix, e))?;
            let flag = distraction_embedding(&r, &cert, &m)?;
            let observed = flag.violation.as_ref().map_or("embedding".to_string(), |v| v.to_string());
            Outcome {
                results: json!(flag),
                claims: vec![Claim::new("distracted flag satisfies the embedding conditions", "embedding", observed)],
            }
        }
        Command::ClExtend { ring, order, t, cap } => {
            let r = inputs.ring(ring)?.build()?;
            let cert = certificate(&r, inputs.order(order, &r)?)?;
            match clements_lindstrom_extend(&r, &cert, t.0, cap.unwrap_or(r.cap())) {
                Ok((s, tau)) => Outcome {
                    results: json!({ "ring": RingFile::from_ring(&s), "order": order_json(&s, &tau) }),
                    claims: vec![Claim::new("extended order is an embedding order", "embedding", "embedding")],
                },
                Err(Error::NotEmbedding(v)) => Outcome {
                    results: json!({ "violation": v }),
                    claims: vec![Claim::new("extended order is an embedding order", "embedding", v)],
                },
                Err(e) => return Err(e),
            }
        }
        Command::Example { id } => {
            let rec = run_example(id, budget)?;
            Outcome { claims: rec.claims.clone(), results: json!({ "id": rec.id, "ring": rec.ring }) }
        }
    })
}

fn emit(report: &Value, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string(report),
        Format::Pretty => serde_json::to_string_pretty(report),
    };
    println!("{}", text.expect("reports are plain JSON values"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut inputs = Inputs { hasher: Sha256::new() };
    inputs.hasher.update(format!("{:?}|budget={}", cli.command, cli.budget).as_bytes());
    let start = Instant::now();
    let outcome = run(&cli.command, cli.budget, &mut inputs);
    let digest = hex::encode(inputs.hasher.finalize());
    let mut report = BTreeMap::new();
    report.insert("schema", json!(SCHEMA));
    report.insert("command", json!(cli.command.name()));
    report.insert("inputs_digest", json!(digest));
    let code = match outcome {
        Ok(out) => {
            let pass = out.claims.iter().all(|c| c.pass);
            report.insert("results", out.results);
            report.insert("claims", json!(out.claims));
            report.insert("status", json!(if pass { "pass" } else { "fail" }));
            u8::from(!pass)
        }
        Err(e) => {
            eprintln!("error: {e}");
            report.insert("error", json!(e.to_string()));
            report.insert("status", json!("error"));
            2
        }
    };
    if cli.timing {
        report.insert("timing_ms", json!(start.elapsed().as_millis() as u64));
    }
    emit(&json!(report), cli.out);
    ExitCode::from(code)
}
