//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the compute modules and renders a
//! deterministic text or JSON report. Exit codes: `0` success, `1` a check
//! failed, `2` usage or input error.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::abgrp::{format_element, smith_normal_form, verify_snf, IntMatrix};
use crate::adjunction::{verify_algebra_adjunction, verify_module_adjunction, AdjunctionReport};
use crate::error::Error;
use crate::gamma_cat::{parse_partition, DEFAULT_GUARD};
use crate::gamma_set::{
    collapse_quotient, eilenberg_maclane, f1, spherical, validate_functoriality, GammaSetJson,
    Subobject, TruncatedGammaSet, SCHEMA,
};
use crate::hyper::{
    binary_relations, binary_sum_table, check_generalized_associativity, f_one_hyperfield,
    iterated_binary, krasner, nary_sum, plasma_embedding, sign_hyperfield, sweep_associativity,
    AssocCheck, HyperOpJson, HyperOpTable, Shape, SWEEP_CAP,
};
use crate::monoid::{FiniteSemiring, MonoidJson, PointedMonoid, PointedSet, SemiringJson};
use crate::scalars::{
    em_algebra, extend_algebra, extend_module, quotient_algebra, spherical_algebra, F1Algebra,
    TensorResult,
};

#[derive(Parser, Debug)]
#[command(
    name = "gammaforge",
    version,
    about = "Finite truncated Γ-sets and their extension of scalars to ℤ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extension of scalars of a Γ-set or algebra
    Tensor(TensorArgs),
    /// Compare n-ary sums with sums over partitions
    AssocCheck(AssocArgs),
    /// Verify the hom-set bijection against a finite target
    Adjunction(AdjunctionArgs),
    /// Print a hyper-operation table
    Hyperops(HyperopsArgs),
    /// Embed a hyper-operation table as a Γ-set
    EmbedPlasma(PlasmaArgs),
    /// Smith normal form of an integer matrix
    Snf(SnfArgs),
    /// Check functoriality of a Γ-set
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Highest stored level
    #[arg(long, default_value_t = 3)]
    max_level: usize,
    /// Cap on enumerated candidates
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Em,
    Spherical,
    F1,
    Collapse,
    Plasma,
    File,
}

#[derive(Args, Debug, Clone)]
struct Construct {
    /// Construction to build
    #[arg(long, value_enum)]
    construct: Option<Kind>,
    /// Built-in monoid or semiring name, or a JSON file
    #[arg(long)]
    monoid: Option<String>,
    /// Non-basepoint labels of a pointed set, comma separated
    #[arg(long)]
    set: Option<String>,
    /// Level-1 labels generating the collapsed subobject
    #[arg(long)]
    sub: Option<String>,
    /// Hyper-operation table: krasner, sign, f-one, or a JSON file
    #[arg(long)]
    table: Option<String>,
    /// Γ-set JSON file
    #[arg(long)]
    input: Option<String>,
    /// Treat the construction as an algebra
    #[arg(long)]
    algebra: bool,
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[command(flatten)]
    construct: Construct,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct AssocArgs {
    #[command(flatten)]
    construct: Construct,
    #[command(flatten)]
    common: Common,
    /// Level-1 labels, comma separated; omit for a full sweep
    #[arg(long)]
    tuple: Option<String>,
    /// Partition of positions, e.g. "1,2|3"; without it the n-ary sum is
    /// compared with the left-iterated binary sum
    #[arg(long)]
    partition: Option<String>,
    /// Highest arity in a sweep
    #[arg(long, default_value_t = 3)]
    max_arity: usize,
}

#[derive(Args, Debug)]
struct AdjunctionArgs {
    #[command(flatten)]
    construct: Construct,
    #[command(flatten)]
    common: Common,
    /// Target group or ring: a built-in name such as z/4, or a JSON file
    #[arg(long)]
    target: String,
}

#[derive(Args, Debug)]
struct HyperopsArgs {
    #[arg(long)]
    table: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PlasmaArgs {
    #[arg(long)]
    table: String,
    /// Write the Γ-set JSON here
    #[arg(long)]
    output: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SnfArgs {
    /// Matrix JSON file
    #[arg(long)]
    input: Option<String>,
    /// Inline matrix JSON, e.g. "[[4,6]]"
    #[arg(long)]
    matrix: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    construct: Construct,
    #[command(flatten)]
    common: Common,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Report {
    command: &'static str,
    config: Map<String, Value>,
    result: Map<String, Value>,
    checks: Vec<(String, bool)>,
    lines: Vec<String>,
}

impl Report {
    fn new(command: &'static str, config: Map<String, Value>) -> Self {
        Self {
            command,
            config,
            result: Map::new(),
            checks: Vec::new(),
            lines: Vec::new(),
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        self.result.insert(key.to_string(), value);
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn check(&mut self, name: &str, passed: bool) {
        self.checks.push((name.to_string(), passed));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, p)| *p)
    }

    fn render(&self, format: Format, elapsed_ms: Option<u128>) -> String {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema".into(), json!(SCHEMA));
                doc.insert("command".into(), json!(self.command));
                doc.insert("config".into(), Value::Object(self.config.clone()));
                doc.insert("result".into(), Value::Object(self.result.clone()));
                doc.insert(
                    "checks".into(),
                    Value::Array(
                        self.checks
                            .iter()
                            .map(|(n, p)| json!({ "name": n, "passed": p }))
                            .collect(),
                    ),
                );
                doc.insert("passed".into(), json!(self.passed()));
                if let Some(ms) = elapsed_ms {
                    doc.insert("duration_ms".into(), json!(ms as u64));
                }
                let mut s =
                    serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "{}", self.command);
                for l in &self.lines {
                    let _ = writeln!(s, "  {l}");
                }
                for (n, p) in &self.checks {
                    let _ = writeln!(s, "  check {n}: {}", if *p { "pass" } else { "FAIL" });
                }
                if let Some(ms) = elapsed_ms {
                    let _ = writeln!(s, "  duration: {ms} ms");
                }
                s
            }
        }
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let common = match &cli.command {
        Command::Tensor(a) => a.common.clone(),
        Command::AssocCheck(a) => a.common.clone(),
        Command::Adjunction(a) => a.common.clone(),
        Command::Hyperops(a) => a.common.clone(),
        Command::EmbedPlasma(a) => a.common.clone(),
        Command::Snf(a) => a.common.clone(),
        Command::Validate(a) => a.common.clone(),
    };
    let start = Instant::now();
    let report = match cli.command {
        Command::Tensor(a) => tensor(&a),
        Command::AssocCheck(a) => assoc_check(&a),
        Command::Adjunction(a) => adjunction(&a),
        Command::Hyperops(a) => hyperops(&a),
        Command::EmbedPlasma(a) => embed_plasma(&a),
        Command::Snf(a) => snf(&a),
        Command::Validate(a) => validate(&a),
    };
    match report {
        Ok(r) => {
            let elapsed = common.timing.then(|| start.elapsed().as_millis());
            Outcome {
                code: if r.passed() { 0 } else { 1 },
                stdout: r.render(common.format, elapsed),
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    parse_json(&text, path)
}

/// serde_json reports `line L column C`.
fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON in {what}: {e}")))
}

fn is_file(name: &str) -> bool {
    name.ends_with(".json") || Path::new(name).is_file()
}

fn split_labels(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(String::from)
        .collect()
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix).and_then(|n| n.parse().ok())
}

/// Additive monoids: `z/n`, `bool`, `sat<k>`, `z2xz2`, or a JSON file.
fn additive_monoid(name: &str) -> CliResult<PointedMonoid> {
    if is_file(name) {
        let j: MonoidJson = read_json(name)?;
        return Ok(PointedMonoid::try_from(j)?);
    }
    match name {
        "bool" => Ok(PointedMonoid::boolean()),
        "z2xz2" => Ok(PointedMonoid::product(
            &PointedMonoid::cyclic(2),
            &PointedMonoid::cyclic(2),
        )),
        _ => {
            if let Some(n) = parse_suffix(name, "z/").filter(|&n| n > 0) {
                Ok(PointedMonoid::cyclic(n))
            } else if let Some(k) = parse_suffix(name, "sat").filter(|&k| k > 0) {
                Ok(PointedMonoid::saturating(k))
            } else {
                Err(usage(format!("unknown monoid {name:?}")))
            }
        }
    }
}

/// Pointed multiplicative monoids: `f1`, `mu2`, `c<n>`, `nil<k>`, `idem`, or a JSON file.
fn pointed_monoid(name: &str) -> CliResult<PointedMonoid> {
    if is_file(name) {
        let j: MonoidJson = read_json(name)?;
        return Ok(PointedMonoid::try_from(j)?);
    }
    match name {
        "f1" | "pointed2" => Ok(PointedMonoid::pointed_unit()),
        "mu2" => Ok(PointedMonoid::mu2()),
        "idem" => Ok(PointedMonoid::idempotent()),
        _ => {
            if let Some(n) = parse_suffix(name, "c").filter(|&n| n > 0) {
                Ok(PointedMonoid::pointed_cyclic(n))
            } else if let Some(k) = parse_suffix(name, "nil").filter(|&k| k > 0) {
                Ok(PointedMonoid::truncated_power(k))
            } else {
                Err(usage(format!("unknown pointed monoid {name:?}")))
            }
        }
    }
}

/// Semirings: `z/n`, `bool`, or a JSON file.
fn semiring(name: &str) -> CliResult<FiniteSemiring> {
    if is_file(name) {
        let j: SemiringJson = read_json(name)?;
        return Ok(FiniteSemiring::try_from(j)?);
    }
    match name {
        "bool" => Ok(FiniteSemiring::boolean()),
        _ => parse_suffix(name, "z/")
            .filter(|&n| n > 0)
            .map(FiniteSemiring::zmod)
            .ok_or_else(|| usage(format!("unknown semiring {name:?}"))),
    }
}

fn hyper_table(name: &str) -> CliResult<HyperOpTable> {
    match name {
        "krasner" => Ok(krasner()),
        "sign" => Ok(sign_hyperfield()),
        "f-one" | "f_one" => Ok(f_one_hyperfield()),
        _ if is_file(name) => {
            let j: HyperOpJson = read_json(name)?;
            Ok(HyperOpTable::try_from(j)?)
        }
        _ => Err(usage(format!("unknown table {name:?}"))),
    }
}

fn require<'a>(value: &'a Option<String>, flag: &str, kind: &str) -> CliResult<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| usage(format!("--construct {kind} needs --{flag}")))
}

fn build_module(c: &Construct, common: &Common) -> CliResult<TruncatedGammaSet> {
    let n = common.max_level;
    let kind = c.construct.ok_or_else(|| usage("missing --construct"))?;
    Ok(match kind {
        Kind::Em => eilenberg_maclane(&additive_monoid(require(&c.monoid, "monoid", "em")?)?, n)?,
        Kind::Spherical => {
            let set = match (&c.set, &c.monoid) {
                (Some(s), _) => {
                    let labels = split_labels(s);
                    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                    PointedSet::with_basepoint(&refs)
                }
                (None, Some(m)) => PointedSet::new(pointed_monoid(m)?.elements().to_vec())?,
                (None, None) => PointedSet::with_basepoint(&["a", "b"]),
            };
            spherical(&set, n)?
        }
        Kind::F1 => f1(n)?,
        Kind::Collapse => {
            let h = eilenberg_maclane(
                &additive_monoid(require(&c.monoid, "monoid", "collapse")?)?,
                n,
            )?;
            let labels = split_labels(require(&c.sub, "sub", "collapse")?);
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            collapse_quotient(&h, &Subobject::coordinatewise(&h, &refs)?)?
        }
        Kind::Plasma => plasma_embedding(
            &hyper_table(require(&c.table, "table", "plasma")?)?,
            n,
            common.guard,
        )?,
        Kind::File => {
            let doc: GammaSetJson = read_json(require(&c.input, "input", "file")?)?;
            TruncatedGammaSet::from_json(&doc)?
        }
    })
}

fn build_algebra(c: &Construct, common: &Common) -> CliResult<F1Algebra> {
    let n = common.max_level;
    let kind = c.construct.ok_or_else(|| usage("missing --construct"))?;
    Ok(match kind {
        Kind::F1 => spherical_algebra(&PointedMonoid::pointed_unit(), n)?,
        Kind::Spherical => spherical_algebra(
            &pointed_monoid(require(&c.monoid, "monoid", "spherical")?)?,
            n,
        )?,
        Kind::Em => em_algebra(&semiring(require(&c.monoid, "monoid", "em")?)?, n)?,
        Kind::Collapse => {
            let a = em_algebra(&semiring(require(&c.monoid, "monoid", "collapse")?)?, n)?;
            let labels = split_labels(require(&c.sub, "sub", "collapse")?);
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            quotient_algebra(&a, &refs)?
        }
        Kind::Plasma | Kind::File => {
            return Err(usage(
                "algebras can be built with em, spherical, f1 or collapse",
            ))
        }
    })
}

fn construct_config(c: &Construct, common: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    let kind = c.construct.map(|k| {
        k.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    });
    m.insert("construct".into(), json!(kind));
    for (key, v) in [
        ("monoid", &c.monoid),
        ("set", &c.set),
        ("sub", &c.sub),
        ("table", &c.table),
        ("input", &c.input),
    ] {
        if let Some(v) = v {
            m.insert(key.into(), json!(v));
        }
    }
    m.insert("algebra".into(), json!(c.algebra));
    m.insert("max_level".into(), json!(common.max_level));
    m.insert("guard".into(), json!(common.guard));
    m
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_json).collect())
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(m.row(i))).collect())
}

fn labels_of(x: &TruncatedGammaSet, s: &[usize]) -> Vec<String> {
    s.iter().map(|&i| x.label(1, i).to_string()).collect()
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn describe_tensor(report: &mut Report, x: &TruncatedGammaSet, t: &TensorResult) {
    let (rank, torsion) = t.group.canonical_invariants();
    report.put(
        "invariants",
        json!({ "rank": rank, "torsion": vec_json(&torsion) }),
    );
    report.put("group", json!(t.group.describe()));
    report.put("generators", json!(t.group.generators()));
    report.put("relations", json!(t.provenance.len()));
    let iota: Map<String, Value> = (0..x.level_size(1))
        .map(|a| (x.label(1, a).to_string(), vec_json(&t.iota[a])))
        .collect();
    report.put("iota", Value::Object(iota));
    report.line(format!("group: {}", t.group.describe()));
    report.line(format!(
        "rank {rank}, torsion [{}]",
        torsion
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    report.line(format!(
        "generators {}, relations {}",
        t.group.generators(),
        t.provenance.len()
    ));
    for a in 0..x.level_size(1) {
        report.line(format!(
            "iota {} = {}",
            x.label(1, a),
            format_element(&t.iota[a])
        ));
    }
    let respects = binary_relations(x)
        .into_iter()
        .all(|(a, b, c)| t.group.add(&t.iota[a], &t.iota[b]) == t.iota[c]);
    report.check(
        "iota_pointed",
        t.iota[0].iter().all(|v| v == &BigInt::from(0)),
    );
    report.check("iota_additive", respects);
}

fn tensor(a: &TensorArgs) -> CliResult<Report> {
    let mut report = Report::new("tensor", construct_config(&a.construct, &a.common));
    if a.construct.algebra {
        let alg = build_algebra(&a.construct, &a.common)?;
        let t = extend_algebra(&alg)?;
        describe_tensor(&mut report, alg.carrier(), &t);
        let ring = t.ring.as_ref().expect("algebra tensor carries a ring");
        let dim = ring.dimension();
        let table: Vec<Value> = (0..dim)
            .map(|i| {
                Value::Array(
                    (0..dim)
                        .map(|j| vec_json(ring.basis_product(i, j)))
                        .collect(),
                )
            })
            .collect();
        report.put("unit", vec_json(ring.unit()));
        report.put("multiplication", Value::Array(table));
        report.put("ideal_closure_grew", json!(t.ideal_closure_grew));
        report.line(format!("unit = {}", format_element(ring.unit())));
        for i in 0..dim {
            for j in i..dim {
                report.line(format!(
                    "e{} * e{} = {}",
                    i + 1,
                    j + 1,
                    format_element(ring.basis_product(i, j))
                ));
            }
        }
        report.line(format!("ideal closure grew: {}", t.ideal_closure_grew));
        report.check("ring_axioms", ring.check_axioms());
    } else {
        let x = build_module(&a.construct, &a.common)?;
        let t = extend_module(&x)?;
        describe_tensor(&mut report, &x, &t);
    }
    Ok(report)
}

fn assoc_check(a: &AssocArgs) -> CliResult<Report> {
    let mut config = construct_config(&a.construct, &a.common);
    let x = build_module(&a.construct, &a.common)?;
    let mut report;
    if let Some(tuple) = &a.tuple {
        let tuple = split_labels(tuple)
            .iter()
            .map(|l| x.index_of(1, l))
            .collect::<Result<Vec<_>, _>>()?;
        config.insert("tuple".into(), json!(labels_of(&x, &tuple)));
        let res = match &a.partition {
            Some(p) => {
                let partition = parse_partition(p)?;
                config.insert("partition".into(), json!(partition));
                check_generalized_associativity(&x, &tuple, &partition)?
            }
            None => {
                let shape = Shape::left_comb(tuple.len());
                config.insert("bracketing".into(), json!(shape.to_string()));
                let lhs = nary_sum(&x, &tuple)?.sum;
                let rhs = iterated_binary(&x, &tuple, &shape)?;
                let inclusion = lhs.iter().all(|c| rhs.contains(c));
                AssocCheck {
                    equality: inclusion && lhs.len() == rhs.len(),
                    inclusion,
                    lhs,
                    rhs,
                }
            }
        };
        report = Report::new("assoc-check", config);
        let lhs = labels_of(&x, &res.lhs);
        let rhs = labels_of(&x, &res.rhs);
        let exhibits = nary_sum(&x, &tuple)?.exhibits.len();
        report.put("lhs", json!(lhs));
        report.put("rhs", json!(rhs));
        report.put("inclusion", json!(res.inclusion));
        report.put("equality", json!(res.equality));
        report.put("exhibits", json!(exhibits));
        report.line(format!("lhs = {}", set_text(&lhs)));
        report.line(format!("rhs = {}", set_text(&rhs)));
        report.line(format!("inclusion: {}", res.inclusion));
        report.line(format!("equality: {}", res.equality));
        if !tuple.is_empty() && tuple.len() <= x.max_level() {
            let mut shapes = Map::new();
            for shape in Shape::all(tuple.len()) {
                let s = labels_of(&x, &iterated_binary(&x, &tuple, &shape)?);
                report.line(format!("shape {shape} = {}", set_text(&s)));
                shapes.insert(shape.to_string(), json!(s));
            }
            report.put("iterated", Value::Object(shapes));
        }
        report.check("inclusion", res.inclusion);
    } else {
        config.insert("max_arity".into(), json!(a.max_arity));
        config.insert("seed".into(), json!(a.common.seed));
        report = Report::new("assoc-check", config);
        let sweep = sweep_associativity(&x, a.max_arity, SWEEP_CAP, a.common.seed)?;
        report.put("tuples", json!(sweep.tuples));
        report.put("checks", json!(sweep.checks));
        report.put("strict", json!(sweep.strict));
        report.put("violations", json!(sweep.violations));
        report.line(format!(
            "{} tuples, {} partition checks, {} strict, {} violations",
            sweep.tuples, sweep.checks, sweep.strict, sweep.violations
        ));
        report.check("inclusion", sweep.violations == 0);
    }
    Ok(report)
}

fn adjunction_json(r: &AdjunctionReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn adjunction(a: &AdjunctionArgs) -> CliResult<Report> {
    let mut config = construct_config(&a.construct, &a.common);
    config.insert("target".into(), json!(a.target));
    let mut report = Report::new("adjunction", config);
    let r = if a.construct.algebra {
        let alg = build_algebra(&a.construct, &a.common)?;
        verify_algebra_adjunction(&alg, &semiring(&a.target)?, a.common.guard)?
    } else {
        let x = Arc::new(build_module(&a.construct, &a.common)?);
        verify_module_adjunction(&x, &additive_monoid(&a.target)?, a.common.guard)?
    };
    report.put("report", adjunction_json(&r));
    report.line(format!("left hom-set: {}", r.left_count));
    report.line(format!("right hom-set: {}", r.right_count));
    report.check("counts_equal", r.counts_equal);
    report.check("left_natural", r.left_natural);
    report.check("psi_phi_identity", r.psi_phi_identity);
    report.check("phi_psi_identity", r.phi_psi_identity);
    report.check("preserves_sums", r.preserves_sums);
    Ok(report)
}

fn table_lines(t: &HyperOpTable) -> Vec<String> {
    let cell = |c: &[usize]| match c {
        [] => "∅".to_string(),
        [v] => t.label(*v).to_string(),
        _ => set_text(
            &c.iter()
                .map(|&v| t.label(v).to_string())
                .collect::<Vec<_>>(),
        ),
    };
    let mut rows = vec![vec!["⊕".to_string()]];
    rows[0].extend(t.elements().iter().cloned());
    for a in 0..t.len() {
        let mut r = vec![t.label(a).to_string()];
        r.extend((0..t.len()).map(|b| cell(t.sum(a, b))));
        rows.push(r);
    }
    let widths: Vec<usize> = (0..=t.len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}

fn hyperops(a: &HyperopsArgs) -> CliResult<Report> {
    let t = hyper_table(&a.table)?;
    let mut config = Map::new();
    config.insert("table".into(), json!(a.table));
    let mut report = Report::new("hyperops", config);
    report.put(
        "table",
        serde_json::to_value(t.to_json()).expect("serializable"),
    );
    for l in table_lines(&t) {
        report.line(l);
    }
    Ok(report)
}

fn embed_plasma(a: &PlasmaArgs) -> CliResult<Report> {
    let t = hyper_table(&a.table)?;
    let x = plasma_embedding(&t, a.common.max_level, a.common.guard)?;
    let mut config = Map::new();
    config.insert("table".into(), json!(a.table));
    config.insert("max_level".into(), json!(a.common.max_level));
    config.insert("guard".into(), json!(a.common.guard));
    let mut report = Report::new("embed-plasma", config);
    let sizes: Vec<usize> = (0..=x.max_level()).map(|n| x.level_size(n)).collect();
    report.put("level_sizes", json!(sizes));
    report.line(format!(
        "level sizes: {}",
        sizes
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let roundtrip = binary_sum_table(&x) == t.table();
    report.put("binary_roundtrip", json!(roundtrip));
    report.check("binary_roundtrip", roundtrip);
    report.check("functorial", validate_functoriality(&x).is_empty());
    if let Some(path) = &a.output {
        let text = serde_json::to_string_pretty(&x.to_json()).expect("serializable");
        std::fs::write(path, text + "\n")
            .map_err(|e| usage(format!("cannot write {path}: {e}")))?;
        report.line(format!("written to {path}"));
    }
    Ok(report)
}

fn parse_entry(v: &Value) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| usage(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| usage(format!("matrix entry {s:?} is not an integer"))),
        other => Err(usage(format!("matrix entry {other} is not an integer"))),
    }
}

/// Accepts `[[...], ...]` or `{ "rows": [[...]], "cols": c }`.
fn parse_matrix(v: &Value) -> CliResult<IntMatrix> {
    let (rows, cols) = match v {
        Value::Array(rows) => (rows.clone(), None),
        Value::Object(o) => (
            o.get("rows")
                .and_then(Value::as_array)
                .cloned()
                .ok_or_else(|| usage("matrix object needs \"rows\""))?,
            o.get("cols").and_then(Value::as_u64).map(|c| c as usize),
        ),
        _ => return Err(usage("a matrix is an array of rows")),
    };
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| usage("each matrix row must be an array"))?
                .iter()
                .map(parse_entry)
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let cols = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
    Ok(IntMatrix::from_rows(rows, cols)?)
}

fn snf(a: &SnfArgs) -> CliResult<Report> {
    let value: Value = match (&a.input, &a.matrix) {
        (Some(path), None) => read_json(path)?,
        (None, Some(text)) => parse_json(text, "--matrix")?,
        _ => return Err(usage("snf needs exactly one of --input or --matrix")),
    };
    let m = parse_matrix(&value)?;
    let s = smith_normal_form(&m);
    let mut config = Map::new();
    config.insert("rows".into(), json!(m.rows()));
    config.insert("cols".into(), json!(m.cols()));
    let mut report = Report::new("snf", config);
    let diag = s.diagonal();
    let free = m.cols() - s.rank;
    let torsion: Vec<BigInt> = diag
        .iter()
        .filter(|d| *d != &BigInt::from(1))
        .cloned()
        .collect();
    report.put("d", matrix_json(&s.d));
    report.put("u", matrix_json(&s.u));
    report.put("v", matrix_json(&s.v));
    report.put(
        "invariants",
        json!({ "rank": free, "torsion": vec_json(&torsion) }),
    );
    report.line(format!("D = {}", s.d));
    report.line(format!("U = {}", s.u));
    report.line(format!("V = {}", s.v));
    report.line(format!(
        "cokernel rank {free}, torsion [{}]",
        torsion
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    report.check("uav_equals_d", verify_snf(&m, &s));
    Ok(report)
}

fn validate(a: &ValidateArgs) -> CliResult<Report> {
    let mut construct = a.construct.clone();
    if construct.construct.is_none() && construct.input.is_some() {
        construct.construct = Some(Kind::File);
    }
    let x = build_module(&construct, &a.common)?;
    let mut report = Report::new("validate", construct_config(&construct, &a.common));
    let v = validate_functoriality(&x);
    let sizes: Vec<usize> = (0..=x.max_level()).map(|n| x.level_size(n)).collect();
    report.put("level_sizes", json!(sizes));
    report.put("violation_count", json!(v.count));
    report.put(
        "violations",
        serde_json::to_value(&v.violations).expect("serializable"),
    );
    report.line(format!("{} violations", v.count));
    for viol in &v.violations {
        report.line(viol.to_string());
    }
    report.check("functorial", v.is_empty());
    Ok(report)
}
