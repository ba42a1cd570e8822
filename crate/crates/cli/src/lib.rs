//! Verification commands behind the `ihall` binary. Each command returns a
//! [`Report`]; the binary prints it as one JSON object.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use ihall_core::engine::{Engine, Parity, RelationKind};
use ihall_core::identities::{alt_binom_sum, alt_binom_vanishes, lemma_sum, t_tilde_sweep};
use ihall_core::oracle::Oracle;
use ihall_core::quiver::{Algebra, DimVector, IQuiver, QuiverConfig};
use ihall_core::rep::RepContext;
pub use ihall_core::rep::DEFAULT_SPACE_BUDGET;
use ihall_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    SkippedBudget,
}

impl Status {
    /// Worst of two verdicts; budget trouble outranks a plain pass.
    fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Failed, _) | (_, Status::Failed) => Status::Failed,
            (Status::SkippedBudget, _) | (_, Status::SkippedBudget) => Status::SkippedBudget,
            _ => Status::Verified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub status: Status,
    pub residual: Option<String>,
    pub stats: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Verified => 0,
            Status::Failed => 1,
            Status::SkippedBudget => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn finish(
    command: &str,
    inputs: Value,
    status: Status,
    residual: Option<String>,
    stats: Map<String, Value>,
    start: Instant,
) -> Report {
    Report {
        command: command.into(),
        inputs,
        status,
        residual,
        stats: Value::Object(stats),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn load_quiver(path: &Path) -> Result<IQuiver> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    IQuiver::from_config(&QuiverConfig::parse(&text)?)
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityBounds {
    pub max_a: i64,
    pub max_b: i64,
    pub max_sum: i64,
    pub max_d: i64,
    pub max_n: i64,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        Self {
            max_a: 4,
            max_b: 4,
            max_sum: 4,
            max_d: 8,
            max_n: 8,
        }
    }
}

/// The three symbolic sweeps, run on their own threads.
pub fn cmd_identities(bounds: IdentityBounds) -> Result<Report> {
    let start = Instant::now();
    let b = bounds;
    if [b.max_a, b.max_b, b.max_sum, b.max_d, b.max_n].iter().any(|&x| x < 0) {
        return Err(Error::Precondition("bounds must be nonnegative".into()));
    }
    let (tuples, lemma, binom) = std::thread::scope(|s| {
        let t = s.spawn(|| t_tilde_sweep(b.max_a, b.max_b, b.max_sum));
        let l = s.spawn(|| {
            (1..=b.max_d)
                .map(|d| (d, lemma_sum(d)))
                .collect::<Vec<_>>()
        });
        let a = s.spawn(|| {
            let mut out = Vec::new();
            for n in 1..=b.max_n {
                for c in -(n - 1)..=(n - 1) {
                    if alt_binom_vanishes(n, c) {
                        out.push((n, c, alt_binom_sum(n, c)));
                    }
                }
            }
            out
        });
        (
            t.join().expect("sweep thread"),
            l.join().expect("sweep thread"),
            a.join().expect("sweep thread"),
        )
    });

    let mut failures = Vec::new();
    for (rec, value) in &tuples {
        if !rec.result_is_zero {
            failures.push(format!(
                "t_tilde(a={}, b={}, d={}, u={}, w={}) = {value}",
                rec.a, rec.b, rec.d, rec.u, rec.w
            ));
        }
    }
    for (d, value) in &lemma {
        if !value.is_zero() {
            failures.push(format!("lemma_sum({d}) = {value}"));
        }
    }
    for (n, c, value) in &binom {
        if !value.is_zero() {
            failures.push(format!("alt_binom_sum({n}, {c}) = {value}"));
        }
    }

    let mut stats = Map::new();
    stats.insert("t_tilde_tuples".into(), json!(tuples.len()));
    stats.insert("lemma_sum_values".into(), json!(lemma.len()));
    stats.insert("alt_binom_values".into(), json!(binom.len()));
    stats.insert("nonzero".into(), json!(failures.len()));
    let status = if failures.is_empty() {
        Status::Verified
    } else {
        Status::Failed
    };
    let residual = (!failures.is_empty()).then(|| failures.join("\n"));
    Ok(finish(
        "identities",
        json!({
            "max_a": b.max_a,
            "max_b": b.max_b,
            "max_sum": b.max_sum,
            "max_d": b.max_d,
            "max_n": b.max_n,
        }),
        status,
        residual,
        stats,
        start,
    ))
}

/// One relation at one vertex pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub relation: String,
    pub i: String,
    pub j: String,
    pub backend: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn engine_backed(iq: &IQuiver, rel: RelationKind) -> bool {
    iq.is_split() && matches!(rel, RelationKind::TkB | RelationKind::Commute | RelationKind::ISerre)
}

pub fn cmd_verify(
    iq: &IQuiver,
    q: u64,
    relations: &[RelationKind],
    parity: Parity,
    budget: u128,
) -> Result<Report> {
    let start = Instant::now();
    let names = iq.quiver().vertices().to_vec();
    let n = iq.n_vertices();
    let mut engine = None;
    let mut oracle = None;
    let mut verdicts = Vec::new();
    let mut residuals = Vec::new();
    let mut status = Status::Verified;

    for &rel in relations {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| rel.applies(iq, i, j))
            .collect();
        if pairs.is_empty() {
            verdicts.push(PairVerdict {
                relation: rel.name().into(),
                i: String::new(),
                j: String::new(),
                backend: "none",
                status: Status::Verified,
                note: Some("no vertex pair meets the hypotheses".into()),
            });
            continue;
        }
        for (i, j) in pairs {
            let (backend, outcome) = if engine_backed(iq, rel) {
                if engine.is_none() {
                    engine = Some(Engine::with_budget(iq.clone(), q, budget)?);
                }
                let e = engine.as_ref().expect("just built");
                let r = e.verify_relation(rel, i, j, parity).map(|res| {
                    if res.is_zero() {
                        (Status::Verified, None)
                    } else {
                        (Status::Failed, Some(res.to_string()))
                    }
                });
                ("engine", r)
            } else {
                if oracle.is_none() {
                    oracle = Some(Oracle::with_budget(iq.clone(), q, budget)?);
                }
                let o = oracle.as_ref().expect("just built");
                let r = o.verify_relation(rel, i, j, parity).map(|chk| {
                    if chk.holds {
                        (Status::Verified, None)
                    } else if chk.checks.iter().any(|c| !c.equal && c.skipped > 0) {
                        (Status::SkippedBudget, None)
                    } else {
                        let bad: Vec<String> = chk
                            .checks
                            .iter()
                            .filter(|c| !c.equal)
                            .map(|c| {
                                format!(
                                    "nonzero in grade {} (classes {}, ideal rank {})",
                                    c.grade, c.census_size, c.ideal_rank
                                )
                            })
                            .collect();
                        (Status::Failed, Some(bad.join("; ")))
                    }
                });
                ("oracle", r)
            };
            let (st, note) = match outcome {
                Ok((st, res)) => {
                    if let Some(res) = res {
                        residuals.push(format!("{rel} ({}, {}): {res}", names[i], names[j]));
                    }
                    (st, None)
                }
                Err(e) if e.is_budget() => (Status::SkippedBudget, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            status = status.and(st);
            verdicts.push(PairVerdict {
                relation: rel.name().into(),
                i: names[i].clone(),
                j: names[j].clone(),
                backend,
                status: st,
                note,
            });
        }
    }

    let mut stats = Map::new();
    stats.insert("checks".into(), json!(verdicts));
    if let Some(e) = &engine {
        stats.insert("engine_budget".into(), json!(e.context().budget().to_string()));
    }
    let residual = (!residuals.is_empty()).then(|| residuals.join("\n"));
    Ok(finish(
        "verify",
        json!({
            "quiver": iq.to_config(),
            "q": q,
            "parity": parity.bit(),
            "relations": relations.iter().map(|r| r.name()).collect::<Vec<_>>(),
            "budget": budget.to_string(),
        }),
        status,
        residual,
        stats,
        start,
    ))
}

/// Census of the ıquiver algebra, or of the path algebra when `path` is set.
pub fn cmd_census(iq: &IQuiver, q: u64, dim: &DimVector, path: bool, budget: u128) -> Result<Report> {
    let start = Instant::now();
    if dim.len() != iq.n_vertices() || !dim.is_nonneg() {
        return Err(Error::Precondition(format!(
            "dimension vector {dim} does not fit {} vertices",
            iq.n_vertices()
        )));
    }
    let algebra = if path {
        Algebra::path(iq.quiver())
    } else {
        Algebra::bar(iq)
    };
    let ctx = RepContext::with_budget(algebra, q, budget)?;
    let inputs = json!({
        "quiver": iq.to_config(),
        "q": q,
        "dim": dim,
        "algebra": if path { "path" } else { "iquiver" },
        "budget": budget.to_string(),
    });
    let mut stats = Map::new();
    let census = match ctx.census(dim) {
        Ok(c) => c,
        Err(e) if e.is_budget() => {
            stats.insert("error".into(), json!(e.to_string()));
            return Ok(finish("census", inputs, Status::SkippedBudget, None, stats, start));
        }
        Err(e) => return Err(e),
    };
    stats.insert("classes".into(), json!(census.len()));
    stats.insert("space_size".into(), json!(census.space_size().to_string()));
    stats.insert("valid_count".into(), json!(census.valid_count().to_string()));
    stats.insert("group_order".into(), json!(census.group_order().to_string()));
    stats.insert("records".into(), json!(ctx.export(dim)?));
    Ok(finish("census", inputs, Status::Verified, None, stats, start))
}

/// All words of length `<= max_len` in the simples.
pub fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..n {
                let mut x: Vec<usize> = w.clone();
                x.push(i);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn cmd_cross_check(iq: &IQuiver, q: u64, max_len: usize, budget: u128) -> Result<Report> {
    let start = Instant::now();
    if !iq.is_split() {
        return Err(Error::Precondition("cross-check needs tau = Id".into()));
    }
    let names = iq.quiver().vertices();
    let oracle = Oracle::with_budget(iq.clone(), q, budget)?;
    let engine = Engine::with_budget(iq.clone(), q, budget)?;
    let mut status = Status::Verified;
    let mut failures = Vec::new();
    let (mut passed, mut skipped) = (0usize, 0usize);
    let all = words(iq.n_vertices(), max_len);
    for w in &all {
        let label: Vec<&str> = w.iter().map(|&i| names[i].as_str()).collect();
        match oracle.cross_check_with(&engine, w) {
            Ok(eq) if eq.equal => passed += 1,
            Ok(eq) if eq.skipped > 0 => {
                skipped += 1;
                status = status.and(Status::SkippedBudget);
            }
            Ok(eq) => {
                failures.push(format!("word [{}] differs in grade {}", label.join(" "), eq.grade));
                status = Status::Failed;
            }
            Err(e) if e.is_budget() => {
                skipped += 1;
                status = status.and(Status::SkippedBudget);
            }
            Err(e) => return Err(e),
        }
    }
    let mut stats = Map::new();
    stats.insert("words".into(), json!(all.len()));
    stats.insert("passed".into(), json!(passed));
    stats.insert("skipped".into(), json!(skipped));
    let residual = (!failures.is_empty()).then(|| failures.join("\n"));
    Ok(finish(
        "cross-check",
        json!({
            "quiver": iq.to_config(),
            "q": q,
            "max_len": max_len,
            "budget": budget.to_string(),
        }),
        status,
        residual,
        stats,
        start,
    ))
}
