//! Command-line front end for the root-system library.
//!
//! Subcommands: `info`, `canon`, `strata`, `char`, `classify`, `fiber`,
//! `oshima`, and the `oracle` family of brute-force cross-checks.  Results
//! go to stdout (JSON unless a command is inherently textual), diagnostics
//! to stderr.
//!
//! Exit codes:
//!   0  success
//!   1  a verification command found a failing instance
//!   2  input error (bad type string, malformed JSON, rank mismatch, …)
//!   3  the computation would enumerate a Weyl group past the configured
//!      limit (`--group-limit` flag or `ROOTFUND_GROUP_LIMIT` variable)

use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootfund::chamber::dominant_roots;
use rootfund::classify::{
    check_oshima, classify_subsystems, oracle_orbits_of_sets, oracle_simple_subsystems_of_type,
    standard_gram_genus, verify_simpcon,
};
use rootfund::diagfund::{canonicalize, lex_max_oracle, root_indices, tuple_cmp, TupleV};
use rootfund::error::Error;
use rootfund::exact::{MatRat, Rat, VecPi};
use rootfund::genus::{enumerate_fiber, standard_genus, Genus, GenusKind};
use rootfund::rootsys::{build, CartanType, Parabolic, RootSystem, DEFAULT_GROUP_LIMIT};
use rootfund::strata::{
    euler_characteristic, face_poset, poset_to_json, sphere_euler, to_dot, verify_solomon,
    verify_solomon_power, CharReport,
};

#[derive(Parser)]
#[command(
    name = "rootfund",
    version,
    about = "Exact computations with finite crystallographic root systems"
)]
struct Cli {
    /// Cap on Weyl-group enumeration (default 200000; also settable via
    /// the ROOTFUND_GROUP_LIMIT environment variable)
    #[arg(long, global = true, value_name = "N")]
    group_limit: Option<u128>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize a root system: rank, roots, group order, dominant roots,
    /// Cartan and Gram matrices
    Info {
        /// Cartan type, e.g. "B3" or "A2xA1"
        r#type: String,
    },
    /// Canonical form of a vector tuple under the diagonal Weyl action
    Canon {
        r#type: String,
        /// Tuple as JSON rows of rationals ('[["-1"],["1/2"]]'), or @FILE
        tuple: String,
    },
    /// The stratification of V^n: face poset as JSON or DOT, or the
    /// Euler-characteristic check
    Strata {
        r#type: String,
        n: usize,
        /// Emit the Hasse diagram in DOT format
        #[arg(long, conflicts_with_all = ["euler", "json"])]
        dot: bool,
        /// Print "alternating sum = expected sphere Euler characteristic"
        #[arg(long, conflicts_with = "json")]
        euler: bool,
        /// Emit the face poset as JSON (the default)
        #[arg(long)]
        json: bool,
    },
    /// Verify the alternating-sum character identities over all of W
    Char {
        r#type: String,
        /// Power of the reflection representation for the second identity
        n: usize,
    },
    /// Conjugacy classes of simple subsystems of a given type
    Classify {
        /// Ambient Cartan type
        ambient: String,
        /// Subsystem Cartan type
        sub: String,
        /// Which pairing matrix defines the genus
        #[arg(long, value_enum, default_value_t = KindArg::Cartan)]
        kind: KindArg,
        /// Cross-check the class count by full-orbit enumeration
        #[arg(long)]
        oracle: bool,
        /// Human-readable table instead of JSON
        #[arg(long)]
        table: bool,
    },
    /// Enumerate the fiber of a genus inside the fundamental domain
    Fiber {
        /// Ambient Cartan type
        ambient: String,
        /// Use the standard genus of this subsystem type
        #[arg(long, value_name = "TYPE", required_unless_present = "matrix", conflicts_with = "matrix")]
        of: Option<String>,
        /// Explicit genus matrix as JSON rows of rationals, or @FILE
        #[arg(long, value_name = "JSON")]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Cartan)]
        kind: KindArg,
    },
    /// Check the orbit-pinning property on an irreducible system: roots
    /// with fixed length and fixed coefficients on a simple subset meet the
    /// complementary chamber at most once
    Oshima { r#type: String },
    /// Brute-force cross-checks by full group enumeration
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare canonicalization against the lex-max orbit scan
    Canon {
        r#type: String,
        /// Tuple as JSON rows of rationals, or @FILE
        tuple: String,
    },
    /// Partition unordered root-index sets into diagonal W-orbits; orbit
    /// members are 0-based indices into the input list
    Orbits {
        r#type: String,
        /// Sets as JSON ('[[0,3],[1,2]]' with 0-based root indices), or @FILE
        sets: String,
    },
    /// Sample the component-splitting laws of the fundamental domain on a
    /// reducible system
    Simpcon {
        r#type: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Cartan,
    Gram,
}

impl KindArg {
    fn genus_kind(self) -> GenusKind {
        match self {
            KindArg::Cartan => GenusKind::Cartan,
            KindArg::Gram => GenusKind::Gram,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KindArg::Cartan => "cartan",
            KindArg::Gram => "gram",
        }
    }
}

/// Input mistakes exit with 2, exceeding the group limit with 3.
struct CliError {
    message: String,
    code: u8,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::GroupTooLarge { .. } => 3,
            _ => 2,
        };
        CliError { message: e.to_string(), code }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), code: 2 }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = match resolve_limit(cli.group_limit) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    match run(cli.command, limit) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn resolve_limit(flag: Option<u128>) -> Result<u128, CliError> {
    if let Some(l) = flag {
        return Ok(l);
    }
    match std::env::var("ROOTFUND_GROUP_LIMIT") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input_error(format!("invalid ROOTFUND_GROUP_LIMIT value: {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_GROUP_LIMIT),
        Err(e) => Err(input_error(format!("cannot read ROOTFUND_GROUP_LIMIT: {e}"))),
    }
}

fn run(cmd: Cmd, limit: u128) -> Result<u8, CliError> {
    match cmd {
        Cmd::Info { r#type } => cmd_info(&r#type),
        Cmd::Canon { r#type, tuple } => cmd_canon(&r#type, &tuple),
        Cmd::Strata { r#type, n, dot, euler, .. } => cmd_strata(&r#type, n, dot, euler, limit),
        Cmd::Char { r#type, n } => cmd_char(&r#type, n, limit),
        Cmd::Classify { ambient, sub, kind, oracle, table } => {
            cmd_classify(&ambient, &sub, kind, oracle, table, limit)
        }
        Cmd::Fiber { ambient, of, matrix, kind } => {
            cmd_fiber(&ambient, of.as_deref(), matrix.as_deref(), kind)
        }
        Cmd::Oshima { r#type } => cmd_oshima(&r#type),
        Cmd::Oracle { what } => match what {
            OracleCmd::Canon { r#type, tuple } => cmd_oracle_canon(&r#type, &tuple, limit),
            OracleCmd::Orbits { r#type, sets } => cmd_oracle_orbits(&r#type, &sets, limit),
            OracleCmd::Simpcon { r#type, samples, seed } => {
                cmd_oracle_simpcon(&r#type, samples, seed)
            }
        },
    }
}

fn build_system(type_string: &str) -> Result<RootSystem, CliError> {
    let ct = CartanType::parse(type_string)?;
    Ok(build(&ct)?)
}

fn cmd_info(type_string: &str) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let doms: Vec<String> =
        dominant_roots(&rs).iter().map(|&k| rs.roots[k].to_string()).collect();
    print_json(&json!({
        "type": rs.cartan_type.to_string(),
        "rank": rs.rank,
        "roots": rs.num_roots(),
        "group_order": rs.cartan_type.group_order().to_string(),
        "dominant_roots": doms,
        "cartan_matrix": mat_json(&rs.cartan),
        "gram_matrix": mat_json(&rs.gram),
    }));
    Ok(0)
}

fn cmd_canon(type_string: &str, tuple_arg: &str) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let t = tuple_from_value(rs.rank, &read_json_arg(tuple_arg)?)?;
    let res = canonicalize(&rs, &t);
    print_json(&json!({
        "word": word_name(&res.word),
        "canonical": tuple_json(&res.canonical),
        "stabilizer_chain": chain_json(&res.chain),
    }));
    Ok(0)
}

fn cmd_strata(
    type_string: &str,
    n: usize,
    dot: bool,
    euler: bool,
    limit: u128,
) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    if euler {
        let chi = euler_characteristic(&rs, n, limit)?;
        let expected = sphere_euler(&rs, n);
        emit(&format!("{chi} = {expected}"));
        if chi != expected {
            eprintln!("error: Euler characteristic differs from the sphere value");
            return Ok(1);
        }
        return Ok(0);
    }
    let poset = face_poset(&rs, n, limit)?;
    if dot {
        emit(&to_dot(&rs, &poset));
    } else {
        print_json(&poset_to_json(&rs, &poset));
    }
    Ok(0)
}

fn cmd_char(type_string: &str, n: usize, limit: u128) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let plain = verify_solomon(&rs, limit)?;
    let power = verify_solomon_power(&rs, n, limit)?;
    print_char_report("determinant identity", &plain);
    print_char_report(&format!("power identity (n = {n})"), &power);
    let ok = plain.pass && power.pass && power.collapse_pass.unwrap_or(true);
    if !ok {
        for (name, report) in [("determinant identity", &plain), ("power identity", &power)] {
            if let Some(f) = &report.first_failure {
                eprintln!("error: {name} first failure: {f}");
            }
        }
        return Ok(1);
    }
    Ok(0)
}

fn print_char_report(name: &str, report: &CharReport) {
    let verdict = if report.pass { "pass" } else { "FAIL" };
    match report.collapse_pass {
        Some(c) => emit(&format!(
            "{name}: group order {}, checked {} elements: {verdict}, coefficient collapse: {}",
            report.group_order,
            report.checked,
            if c { "pass" } else { "FAIL" },
        )),
        None => emit(&format!(
            "{name}: group order {}, checked {} elements: {verdict}",
            report.group_order, report.checked,
        )),
    }
}

fn cmd_classify(
    ambient: &str,
    sub: &str,
    kind: KindArg,
    oracle: bool,
    table: bool,
    limit: u128,
) -> Result<u8, CliError> {
    let rs = build_system(ambient)?;
    let x = CartanType::parse(sub)?;
    if oracle && !matches!(kind, KindArg::Cartan) {
        return Err(input_error(
            "--oracle counts subsystems by Cartan type; it requires --kind cartan",
        ));
    }
    let report = classify_subsystems(&rs, &x, kind.genus_kind())?;
    let certified = if oracle {
        let sets = oracle_simple_subsystems_of_type(&rs, &x);
        let parts = oracle_orbits_of_sets(&rs, &sets, limit)?;
        Some(parts.len() == report.class_count)
    } else {
        None
    };
    if table {
        emit(&report.to_string());
        if let Some(c) = certified {
            emit(&format!("oracle: {}", if c { "certified" } else { "MISMATCH" }));
        }
    } else {
        let mut v = report.to_json();
        if let Some(c) = certified {
            v.as_object_mut()
                .expect("report serializes to an object")
                .insert("certified".to_string(), json!(c));
        }
        print_json(&v);
    }
    if certified == Some(false) {
        eprintln!("error: oracle orbit count disagrees with the classification");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_fiber(
    ambient: &str,
    of: Option<&str>,
    matrix: Option<&str>,
    kind: KindArg,
) -> Result<u8, CliError> {
    let rs = build_system(ambient)?;
    let sigma = match (of, matrix) {
        (Some(name), None) => {
            let x = CartanType::parse(name)?;
            match kind {
                KindArg::Cartan => standard_genus(&x)?,
                KindArg::Gram => standard_gram_genus(&x)?,
            }
        }
        (None, Some(arg)) => genus_from_value(&read_json_arg(arg)?)?,
        _ => unreachable!("clap enforces exactly one of --of/--matrix"),
    };
    let fiber = enumerate_fiber(&rs, &sigma, kind.genus_kind())?;
    let members: Vec<Value> = fiber.iter().map(|b| tuple_json(b)).collect();
    let indices: Vec<Vec<usize>> = fiber
        .iter()
        .map(|b| root_indices(&rs, b))
        .collect::<Result<_, _>>()?;
    print_json(&json!({
        "ambient": rs.cartan_type.to_string(),
        "kind": kind.name(),
        "sigma": sigma.to_json(),
        "size": fiber.len(),
        "fiber": members,
        "root_indices": indices,
    }));
    Ok(0)
}

fn cmd_oshima(type_string: &str) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let report = check_oshima(&rs)?;
    print_json(&report.to_json());
    if !report.pass() {
        eprintln!("error: orbit-pinning violated; see the violations list");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_oracle_canon(type_string: &str, tuple_arg: &str, limit: u128) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let t = tuple_from_value(rs.rank, &read_json_arg(tuple_arg)?)?;
    let res = canonicalize(&rs, &t);
    let oracle = lex_max_oracle(&rs, &t, limit)?;
    let agree = tuple_cmp(&res.canonical, &oracle) == Ordering::Equal;
    print_json(&json!({
        "canonical": tuple_json(&res.canonical),
        "lex_max": tuple_json(&oracle),
        "agree": agree,
    }));
    if !agree {
        eprintln!("error: canonicalization disagrees with the lex-max orbit scan");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_oracle_orbits(type_string: &str, sets_arg: &str, limit: u128) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let sets = sets_from_value(&read_json_arg(sets_arg)?)?;
    let parts = oracle_orbits_of_sets(&rs, &sets, limit)?;
    print_json(&json!({
        "count": parts.len(),
        "orbits": parts,
    }));
    Ok(0)
}

fn cmd_oracle_simpcon(type_string: &str, samples: usize, seed: u64) -> Result<u8, CliError> {
    let rs = build_system(type_string)?;
    let report = verify_simpcon(&rs, samples, seed)?;
    print_json(&report.to_json());
    if !report.pass {
        eprintln!("error: a component-splitting law failed; see the disagreement field");
        return Ok(1);
    }
    Ok(0)
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("JSON output never fails"));
}

/// Writes a line to stdout, newline-terminated.  A closed pipe (e.g. the
/// output is fed to `head`) ends the process quietly instead of panicking.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let res = if text.ends_with('\n') {
        out.write_all(text.as_bytes())
    } else {
        writeln!(out, "{text}")
    };
    if let Err(e) = res {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

/// Arguments starting with '@' name a file; anything else is inline JSON.
fn read_json_arg(arg: &str) -> Result<Value, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| input_error(format!("malformed JSON: {e}")))
}

fn rat_from_value(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|_| input_error(format!("not a rational: {s:?}"))),
        Value::Number(m) => m
            .as_i64()
            .map(Rat::int)
            .ok_or_else(|| input_error(format!("not an exact integer: {m}"))),
        other => Err(input_error(format!(
            "expected a rational string or integer, got {other}"
        ))),
    }
}

fn tuple_from_value(rank: usize, v: &Value) -> Result<TupleV, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| input_error("expected a JSON array of vectors"))?;
    let mut t = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| input_error("each vector must be a JSON array"))?;
        if entries.len() != rank {
            return Err(Error::RankMismatch { expected: rank, got: entries.len() }.into());
        }
        let coords: Vec<Rat> = entries.iter().map(rat_from_value).collect::<Result<_, _>>()?;
        t.push(VecPi(coords));
    }
    Ok(t)
}

fn sets_from_value(v: &Value) -> Result<Vec<Vec<usize>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| input_error("expected a JSON array of root-index sets"))?;
    let mut sets = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| input_error("each set must be a JSON array of root indices"))?;
        let set: Vec<usize> = entries
            .iter()
            .map(|e| {
                e.as_u64()
                    .map(|k| k as usize)
                    .ok_or_else(|| input_error(format!("not a root index: {e}")))
            })
            .collect::<Result<_, _>>()?;
        sets.push(set);
    }
    Ok(sets)
}

fn genus_from_value(v: &Value) -> Result<Genus, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| input_error("expected a JSON array of matrix rows"))?;
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| input_error("each matrix row must be a JSON array"))?;
        if entries.len() != n {
            return Err(input_error("genus matrix must be square"));
        }
        let vals: Vec<Rat> = entries.iter().map(rat_from_value).collect::<Result<_, _>>()?;
        out.push(vals);
    }
    Ok(Genus::new(MatRat::from_rows(out)))
}

fn mat_json(m: &MatRat) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.at(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn tuple_json(t: &[VecPi]) -> Value {
    let rows: Vec<Vec<String>> =
        t.iter().map(|v| v.0.iter().map(|c| c.to_string()).collect()).collect();
    json!(rows)
}

/// Reduction word as a product of simple reflections, applied right to
/// left; the identity renders as the empty string.
fn word_name(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().rev().map(|i| format!("s{}", i + 1)).collect();
    parts.join(".")
}

fn chain_json(chain: &[Parabolic]) -> Value {
    let sets: Vec<Vec<usize>> =
        chain.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect();
    json!(sets)
}
