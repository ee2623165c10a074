//! Command-line front end. Structured results go to stdout as one JSON
//! document (instances as instance text), notes go to stderr.
//!
//! Exit codes: 0 success or "yes", 1 "no" for `edge`, 2 usage or input
//! errors, 3 internal verification failures.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::leveling::{assign_levels_traced, check_conditions, LevelMode};
use crate::model::{
    generate_random, normalize_critical_side, parse_instance, parse_matching, serialize_instance, GenSpec,
};
use crate::oracle::{self, DEFAULT_EDGE_CAP};
use crate::partition::run_partition;
use crate::popular_edge::PopularEdgeSolver;
use crate::reductions::{build, LevelAssignment, ReductionKind};
use crate::verify::differential_suite;
use crate::{Edge, Instance, Matching, Vertex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "popcrit", version, about = "Popular feasible matchings with critical vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a minimum-size popular feasible matching or a dominant one.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        objective: Objective,
    },
    /// Decide whether an edge is in some popular feasible matching.
    Edge {
        file: PathBuf,
        man: String,
        woman: String,
        /// Also print a popular feasible matching containing the edge.
        #[arg(long)]
        witness: bool,
        /// Cross-check the answer by exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the reduced instance.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Level a matching and check the certificate conditions.
    Levels {
        file: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Partition a popular feasible matching and transform both ways.
    Partition {
        file: PathBuf,
        #[arg(long)]
        matching: PathBuf,
    },
    /// Print a random feasible instance.
    Gen {
        #[arg(long, default_value_t = 4)]
        men: usize,
        #[arg(long, default_value_t = 4)]
        women: usize,
        #[arg(long, default_value_t = 0.8)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        critical: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the differential suite against the exhaustive oracle.
    Verify {
        #[arg(required_unless_present = "spec", conflicts_with = "spec")]
        file: Option<PathBuf>,
        /// Generator spec, e.g. `men=4,women=4,density=0.8,critical=1,seed=7`.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        max_edges: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Objective {
    Min,
    Dominant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Gprime,
    Gpp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Min,
    Dom,
    /// Leveling of an arbitrary popular feasible matching.
    Popular,
}

impl From<Mode> for LevelMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Min => LevelMode::Min,
            Mode::Dom => LevelMode::Dom,
            Mode::Popular => LevelMode::Popular,
        }
    }
}

/// What a subcommand hands back: stdout text, stderr notes, exit code.
struct Reply {
    out: String,
    notes: String,
    code: i32,
}

impl Reply {
    fn json(v: Value, code: i32) -> Self {
        Reply {
            out: format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
            notes: String::new(),
            code,
        }
    }

    fn text(s: String) -> Self {
        Reply {
            out: s,
            notes: String::new(),
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_)
        | Error::LevelingDiverged(_)
        | Error::ProposalBound(_)
        | Error::TwoActiveCopies(_)
        | Error::NotStable { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let reply = dispatch(cli.command).unwrap_or_else(|e| {
        let mut r = Reply::json(json!({ "error": e.to_string() }), exit_code(&e));
        r.notes = format!("error: {e}\n");
        r
    });
    let _ = stdout.write_all(reply.out.as_bytes());
    let _ = stderr.write_all(reply.notes.as_bytes());
    reply.code
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_instance(path: &PathBuf) -> Result<Instance, Error> {
    parse_instance(&read(path)?)
}

/// Canonical edge list: `[man, woman]` pairs sorted by name.
fn edges_json(inst: &Instance, m: &Matching) -> Value {
    let mut pairs: Vec<(&str, &str)> = m.edges().map(|e| (inst.man_name(e.man), inst.woman_name(e.woman))).collect();
    pairs.sort();
    Value::Array(pairs.into_iter().map(|(a, b)| json!([a, b])).collect())
}

fn levels_json(inst: &Instance, lv: &LevelAssignment) -> Value {
    let mut map = Map::new();
    for a in 0..inst.n_men() {
        map.insert(inst.man_name(a).to_string(), json!(lv.man(a)));
    }
    for b in 0..inst.n_women() {
        map.insert(inst.woman_name(b).to_string(), json!(lv.woman(b)));
    }
    Value::Object(map)
}

fn dispatch(command: Command) -> Result<Reply, Error> {
    match command {
        Command::Solve { file, objective } => {
            let inst = load_instance(&file)?;
            let solver = PopularEdgeSolver::new(&inst)?;
            let (name, m) = match objective {
                Objective::Min => ("min", solver.min_size_pfm()?),
                Objective::Dominant => ("dominant", solver.dominant_fm()?),
            };
            Ok(Reply::json(
                json!({ "objective": name, "size": m.len(), "matching": edges_json(&inst, &m) }),
                EXIT_OK,
            ))
        }
        Command::Edge {
            file,
            man,
            woman,
            witness,
            oracle: cross_check,
        } => edge(&load_instance(&file)?, &man, &woman, witness, cross_check),
        Command::Reduce { file, target } => {
            let inst = load_instance(&file)?;
            let (norm, swapped) = normalize_critical_side(&inst);
            let kind = match target {
                Target::Gprime => ReductionKind::GPrime,
                Target::Gpp => ReductionKind::GDoublePrime,
            };
            let red = build(&norm, kind)?;
            let mut r = Reply::text(serialize_instance(red.inst()));
            if swapped {
                r.notes = "note: critical vertices were women; sides were swapped before reducing\n".into();
            }
            Ok(r)
        }
        Command::Levels { file, matching, mode } => {
            let inst = load_instance(&file)?;
            let m = parse_matching(&inst, &read(&matching)?)?;
            levels(&inst, &m, mode.into())
        }
        Command::Partition { file, matching } => {
            let inst = load_instance(&file)?;
            let m = parse_matching(&inst, &read(&matching)?)?;
            partition(&inst, &m)
        }
        Command::Gen {
            men,
            women,
            density,
            critical,
            seed,
        } => Ok(Reply::text(serialize_instance(&generate_random(&GenSpec::new(
            men, women, density, critical, seed,
        ))?))),
        Command::Verify { file, spec, max_edges } => {
            let (inst, source) = match (file, spec) {
                (Some(f), _) => (load_instance(&f)?, f.display().to_string()),
                (None, Some(s)) => (generate_random(&s.parse::<GenSpec>()?)?, s),
                (None, None) => unreachable!("clap requires one of them"),
            };
            verify(&inst, &source, max_edges)
        }
    }
}

fn edge(inst: &Instance, man: &str, woman: &str, want_witness: bool, cross_check: bool) -> Result<Reply, Error> {
    let e = inst.edge_by_names(man, woman)?;
    let solver = PopularEdgeSolver::new(inst)?;
    let d = solver.decide(e)?;
    let mut doc = Map::new();
    doc.insert("decision".into(), json!(if d.popular { "yes" } else { "no" }));
    doc.insert("via".into(), json!(d.via.name()));
    if want_witness {
        let w = solver.witness(e)?;
        doc.insert("witness".into(), w.map_or(Value::Null, |w| edges_json(inst, &w.matching)));
    }
    let mut code = if d.popular { EXIT_OK } else { EXIT_NO };
    let mut notes = String::new();
    if cross_check {
        let truth = oracle::popular_edges(inst, DEFAULT_EDGE_CAP)?.contains(&e);
        doc.insert("oracle".into(), json!(if truth { "yes" } else { "no" }));
        if truth != d.popular {
            code = EXIT_INTERNAL;
            notes = "error: solver and oracle disagree\n".into();
        }
    }
    let mut r = Reply::json(Value::Object(doc), code);
    r.notes = notes;
    Ok(r)
}

fn levels(inst: &Instance, m: &Matching, mode: LevelMode) -> Result<Reply, Error> {
    let (norm, swapped) = normalize_critical_side(inst);
    let nm = if swapped { m.swap_sides() } else { m.clone() };
    let (lv, trace) = assign_levels_traced(&norm, &nm, mode)?;
    let report = check_conditions(&norm, &nm, &lv, mode);
    let mut conditions = Map::new();
    for (c, v) in &report.results {
        conditions.insert(c.key().into(), json!(if v.is_none() { "pass" } else { "fail" }));
    }
    let doc = json!({
        "mode": match mode { LevelMode::Min => "min", LevelMode::Dom => "dom", LevelMode::Popular => "popular" },
        "levels": levels_json(&norm, &lv),
        "promotions": trace.len(),
        "conditions": conditions,
    });
    let code = if report.passed() { EXIT_OK } else { EXIT_INTERNAL };
    let mut r = Reply::json(doc, code);
    r.notes = lv.to_lines(&norm);
    if let Some(v) = report.first_violation() {
        r.notes.push_str(&format!("error: condition {} fails: {}\n", v.condition.key(), v.detail));
    }
    Ok(r)
}

fn partition(inst: &Instance, m: &Matching) -> Result<Reply, Error> {
    let (norm, swapped) = normalize_critical_side(inst);
    let to_norm = |m: &Matching| if swapped { m.swap_sides() } else { m.clone() };
    let out = run_partition(&norm, &to_norm(m))?;
    let back = |m: &Matching| edges_json(inst, &to_norm(m));

    let mut parts = Map::new();
    let all = (0..norm.n_men()).map(Vertex::Man).chain((0..norm.n_women()).map(Vertex::Woman));
    for v in all {
        parts.insert(norm.vertex_name(v).to_string(), json!(out.partition.part(v).name()));
    }
    let path = |class: &str, c: &crate::voting::AltComponent| {
        json!({
            "class": class,
            "vertices": c.vertices.iter().map(|&v| norm.vertex_name(v)).collect::<Vec<_>>(),
            "plus_plus": c.plus_plus,
            "minus_minus": c.minus_minus,
        })
    };
    let mut paths: Vec<Value> = out.paths.sraps.iter().map(|c| path("srap", c)).collect();
    paths.extend(out.paths.siaps.iter().map(|c| path("siap", c)));
    let cross: Vec<Value> = out
        .cross_violations
        .iter()
        .map(|v| {
            let e = if swapped { Edge::new(v.edge.woman, v.edge.man) } else { v.edge };
            json!({ "edge": [inst.man_name(e.man), inst.woman_name(e.woman)], "clause": v.clause })
        })
        .collect();
    let doc = json!({
        "levels": levels_json(&norm, &out.levels),
        "parts": parts,
        "paths": paths,
        "m_d": back(&out.partition.m_d),
        "m_m": back(&out.partition.m_m),
        "m_r": back(&out.partition.m_r),
        "min_size": back(&out.min_size),
        "dominant": back(&out.dominant),
        "cross_violations": cross,
    });
    let code = if out.cross_violations.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Reply::json(doc, code))
}

fn verify(inst: &Instance, source: &str, cap: usize) -> Result<Reply, Error> {
    let report = differential_suite(inst, cap)?;
    let mut props = Map::new();
    let mut notes = String::new();
    for p in &report.properties {
        props.insert(
            p.name.into(),
            json!({ "pass": p.passed(), "checked": p.checked, "failures": p.failures }),
        );
        notes.push_str(&format!("{} {}\n", if p.passed() { "PASS" } else { "FAIL" }, p.name));
    }
    let doc = json!({
        "source": source,
        "men": inst.n_men(),
        "women": inst.n_women(),
        "edges": inst.n_edges(),
        "critical": inst.critical_count(),
        "pass": report.passed(),
        "properties": props,
    });
    let mut r = Reply::json(doc, if report.passed() { EXIT_OK } else { EXIT_INTERNAL });
    r.notes = notes;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("popcrit").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["solve"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let (code, out, err) = call(&["solve", "/nonexistent/x.txt", "--objective", "min"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.contains("\"error\""));
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn gen_is_deterministic_text() {
        let a = call(&["gen", "--men", "3", "--women", "3", "--critical", "1", "--seed", "9"]);
        let b = call(&["gen", "--men", "3", "--women", "3", "--critical", "1", "--seed", "9"]);
        assert_eq!(a, b);
        assert!(parse_instance(&a.1).is_ok());
    }
}
