//! The `latcut` command line.
//!
//! Exit codes: 0 when the command succeeded and the checked property holds,
//! 1 when the property fails, 2 on usage or input errors, 3 when an
//! enumeration budget ran out.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cutsets::{
    compare_unchecked, enumerate_antichain_cutsets_with, proof_witness_chain, verify_theorem,
    AnalysisReport, CutsetBudget, MismatchWitness, DEFAULT_ENUM_CHAIN_CAP, DEFAULT_NODE_BUDGET,
};
use crate::error::Error;
use crate::generators::{generate, GeneratorSpec};
use crate::io::{emit_dot, parse_document_with, PosetDocument};
use crate::lattice::{jordan_dedekind_violation, Lattice};
use crate::levels::level_classes;
use crate::poset::{normalize_set, BuildOptions, FinitePoset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "latcut",
    version,
    about = "Level classes and antichain cutsets of finite lattices"
)]
struct Cli {
    /// Reject input documents whose covers contain implied pairs.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a poset document, e.g. `gen boolean 3` or `gen product chain 3 chain 4`.
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Check lattice, semimodularity and Jordan-Dedekind properties (all by default).
    Check {
        file: String,
        #[arg(long)]
        lattice: bool,
        #[arg(long)]
        semimodular: bool,
        #[arg(long)]
        jd: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the level classes.
    Levels {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the antichain cutsets.
    Cutsets {
        file: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compare level classes with antichain cutsets.
    Verify {
        file: String,
        /// Skip the semimodularity gate.
        #[arg(long)]
        unchecked: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a maximal chain avoiding an antichain that is not a level class.
    Witness {
        file: String,
        #[arg(long, value_name = "IDS")]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Emit the Hasse diagram in Graphviz format.
    Dot {
        file: String,
        /// Color each level class.
        #[arg(long)]
        levels: bool,
        /// Highlight a comma-separated set; repeatable.
        #[arg(long, value_name = "IDS")]
        set: Vec<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Search-node budget for cutset enumeration.
    #[arg(long, env = "LATCUT_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Cap on the number of maximal chains.
    #[arg(long, default_value_t = DEFAULT_ENUM_CHAIN_CAP)]
    chain_cap: usize,
}

impl BudgetArgs {
    fn budget(&self) -> CutsetBudget {
        CutsetBudget {
            max_chains: self.chain_cap,
            max_nodes: self.budget,
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Runs the CLI with explicit streams.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Context {
        stdin,
        stdout,
        stderr,
        opts: BuildOptions {
            strict: cli.strict,
            ..Default::default()
        },
    };
    match ctx.dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(ctx.stderr, "latcut: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Limit { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type CliResult = std::result::Result<i32, Failure>;

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    opts: BuildOptions,
}

fn fmt_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn fmt_sets(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| fmt_set(s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_set(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    let ids = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>().map_err(|_| Failure {
                code: EXIT_USAGE,
                message: format!("bad element id {t:?} in set {text:?}"),
            })
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(normalize_set(ids))
}

impl Context<'_> {
    fn dispatch(&mut self, command: Command) -> CliResult {
        match command {
            Command::Gen {
                kind,
                params,
                seed,
                output,
            } => self.gen(kind, params, seed, &output),
            Command::Check {
                file,
                lattice,
                semimodular,
                jd,
                json,
            } => {
                let all = !(lattice || semimodular || jd);
                self.check(&file, lattice || all, semimodular || all, jd || all, json)
            }
            Command::Levels { file, json } => self.levels(&file, json),
            Command::Cutsets { file, budget, json } => self.cutsets(&file, budget.budget(), json),
            Command::Verify {
                file,
                unchecked,
                budget,
                json,
            } => self.verify(&file, unchecked, budget.budget(), json),
            Command::Witness { file, set, json } => self.witness(&file, &set, json),
            Command::Dot {
                file,
                levels,
                set,
                output,
            } => self.dot(&file, levels, &set, &output),
        }
    }

    fn load(&mut self, file: &str) -> std::result::Result<FinitePoset, Failure> {
        let text = if file == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(file).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{file}: {e}"),
            })?
        };
        let doc = parse_document_with(&text, &self.opts).map_err(|e| Failure {
            message: format!("{file}: {e}"),
            ..Failure::from(e)
        })?;
        for w in &doc.warnings {
            writeln!(self.stderr, "latcut: warning: {file}: {w}")?;
        }
        Ok(doc.poset)
    }

    fn emit(&mut self, output: &str, text: &str) -> std::result::Result<(), Failure> {
        if output == "-" {
            self.stdout.write_all(text.as_bytes())?;
        } else {
            fs::write(output, text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{output}: {e}"),
            })?;
        }
        Ok(())
    }

    fn json_out(&mut self, value: &serde_json::Value) -> std::result::Result<(), Failure> {
        writeln!(
            self.stdout,
            "{}",
            serde_json::to_string(value).expect("json")
        )?;
        Ok(())
    }

    fn gen(&mut self, kind: String, params: Vec<String>, seed: u64, output: &str) -> CliResult {
        let mut tokens = vec![kind];
        tokens.extend(params);
        let spec = GeneratorSpec::parse(&tokens, seed)?;
        let p = generate(&spec)?;
        let mut doc = PosetDocument::from_poset(&p);
        let mut meta = BTreeMap::from([("generator".to_string(), spec.to_string())]);
        if tokens.iter().any(|t| t == "random") {
            meta.insert("seed".to_string(), seed.to_string());
        }
        doc.meta = Some(meta);
        self.emit(output, &doc.to_text())?;
        Ok(EXIT_OK)
    }

    fn check(
        &mut self,
        file: &str,
        lattice: bool,
        semimodular: bool,
        jd: bool,
        json: bool,
    ) -> CliResult {
        let p = self.load(file)?;
        let mut all_hold = true;
        let mut report = serde_json::Map::new();
        let mut lines = Vec::new();

        let lat = Lattice::new(&p);
        if lattice {
            match &lat {
                Ok(_) => {
                    lines.push("lattice: yes".to_string());
                    report.insert("lattice".into(), json!({ "holds": true }));
                }
                Err(e) => {
                    all_hold = false;
                    lines.push(format!("lattice: no ({e})"));
                    report.insert("lattice".into(), not_lattice_json(e));
                }
            }
        }
        if semimodular {
            match &lat {
                Ok(l) => match l.semimodularity_violation() {
                    None => {
                        lines.push("semimodular: yes".to_string());
                        report.insert("semimodular".into(), json!({ "holds": true }));
                    }
                    Some((x, y)) => {
                        all_hold = false;
                        let (m, j) = (l.meet(x, y), l.join(x, y));
                        lines.push(format!(
                            "semimodular: no (x={x}, y={y}: {x} covers {x}∧{y}={m} but {x}∨{y}={j} does not cover {y})"
                        ));
                        report.insert(
                            "semimodular".into(),
                            json!({ "holds": false, "witness": { "x": x, "y": y, "meet": m, "join": j } }),
                        );
                    }
                },
                Err(e) => {
                    all_hold = false;
                    lines.push(format!("semimodular: no (not a lattice: {e})"));
                    report.insert(
                        "semimodular".into(),
                        json!({ "holds": false, "not_lattice": not_lattice_json(e) }),
                    );
                }
            }
        }
        if jd {
            match jordan_dedekind_violation(&p) {
                None => {
                    lines.push("jordan-dedekind: yes".to_string());
                    report.insert("jordan_dedekind".into(), json!({ "holds": true }));
                }
                Some(v) => {
                    all_hold = false;
                    lines.push(format!(
                        "jordan-dedekind: no (interval [{},{}]: chains {} and {})",
                        v.x, v.y, v.short, v.long
                    ));
                    report.insert(
                        "jordan_dedekind".into(),
                        json!({ "holds": false, "witness": { "x": v.x, "y": v.y, "chains": [v.short, v.long] } }),
                    );
                }
            }
        }

        if json {
            self.json_out(&serde_json::Value::Object(report))?;
        } else {
            for l in lines {
                writeln!(self.stdout, "{l}")?;
            }
        }
        Ok(if all_hold { EXIT_OK } else { EXIT_FALSE })
    }

    fn levels(&mut self, file: &str, json: bool) -> CliResult {
        let p = self.load(file)?;
        let levels = level_classes(&p);
        if json {
            self.json_out(&json!({ "classes": levels.classes() }))?;
        } else {
            for class in levels.classes() {
                writeln!(self.stdout, "{}", fmt_set(class))?;
            }
        }
        Ok(EXIT_OK)
    }

    fn cutsets(&mut self, file: &str, budget: CutsetBudget, json: bool) -> CliResult {
        let p = self.load(file)?;
        let cutsets = enumerate_antichain_cutsets_with(&p, &budget)?;
        if json {
            self.json_out(&json!({ "cutsets": cutsets }))?;
        } else {
            for set in &cutsets {
                writeln!(self.stdout, "{}", fmt_set(set))?;
            }
        }
        Ok(EXIT_OK)
    }

    fn verify(
        &mut self,
        file: &str,
        unchecked: bool,
        budget: CutsetBudget,
        json: bool,
    ) -> CliResult {
        let p = self.load(file)?;
        let report = if unchecked {
            compare_unchecked(&p, &budget)?
        } else {
            verify_theorem(&p, &budget)?
        };
        if json {
            self.json_out(&serde_json::to_value(&report).expect("json"))?;
        } else {
            write_report(self.stdout, &report)?;
        }
        Ok(if report.holds { EXIT_OK } else { EXIT_FALSE })
    }

    fn witness(&mut self, file: &str, set: &str, json: bool) -> CliResult {
        let p = self.load(file)?;
        let set = parse_set(set)?;
        let w = match proof_witness_chain(&p, &set) {
            Ok(w) => w,
            Err(Error::IsLevelClass(s)) => {
                writeln!(
                    self.stderr,
                    "latcut: {} is a level class; no avoiding chain exists",
                    fmt_set(&s)
                )?;
                return Ok(EXIT_FALSE);
            }
            Err(e) => return Err(e.into()),
        };
        if json {
            self.json_out(&serde_json::to_value(&w).expect("json"))?;
        } else {
            let chain: Vec<String> = w.chain.iter().map(usize::to_string).collect();
            writeln!(self.stdout, "chain: {}", chain.join(","))?;
            if let Some(c) = w.config {
                writeln!(
                    self.stdout,
                    "config: a={} b={} x={} y={} z={} w={}",
                    c.a, c.b, c.x, c.y, c.z, c.w
                )?;
            }
        }
        Ok(EXIT_OK)
    }

    fn dot(&mut self, file: &str, levels: bool, sets: &[String], output: &str) -> CliResult {
        let p = self.load(file)?;
        let mut highlight = sets
            .iter()
            .map(|s| parse_set(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        for set in &highlight {
            p.check_all(set)?;
        }
        if levels {
            highlight.extend(level_classes(&p).classes().iter().cloned());
        }
        self.emit(output, &emit_dot(&p, &highlight))?;
        Ok(EXIT_OK)
    }
}

fn not_lattice_json(e: &Error) -> serde_json::Value {
    match e {
        Error::NotLattice { kind, x, y, bounds } => json!({
            "holds": false,
            "witness": { "operation": kind.to_string(), "x": x, "y": y, "bounds": bounds }
        }),
        other => json!({ "holds": false, "error": other.to_string() }),
    }
}

fn write_report(out: &mut dyn Write, report: &AnalysisReport) -> std::io::Result<()> {
    writeln!(out, "holds: {}", report.holds)?;
    writeln!(
        out,
        "level classes ({}): {}",
        report.level_classes.len(),
        fmt_sets(&report.level_classes)
    )?;
    writeln!(
        out,
        "antichain cutsets ({}): {}",
        report.cutsets.len(),
        fmt_sets(&report.cutsets)
    )?;
    writeln!(out, "mismatches: {}", report.mismatches.len())?;
    for m in &report.mismatches {
        let detail = match &m.witness {
            MismatchWitness::OffendingChain(w) => {
                format!("chain {} meets it in {}", w.chain, fmt_set(&w.hits))
            }
            MismatchWitness::SplitClasses { a, b } => {
                format!("{a} and {b} lie in different level classes")
            }
            MismatchWitness::PartialClass { present, missing } => {
                format!("{missing} shares the level class of {present} but is missing")
            }
        };
        let kind = serde_json::to_value(m.kind).expect("json");
        writeln!(
            out,
            "  {} {}: {}",
            fmt_set(&m.set),
            kind.as_str().unwrap_or_default(),
            detail
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["latcut"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_and_verify_boolean() {
        let (code, doc, _) = run_capture(&["gen", "boolean", "3"], "");
        assert_eq!(code, 0);
        let (code, out, _) = run_capture(&["verify", "-"], &doc);
        assert_eq!(code, 0);
        assert!(out.contains("holds: true"));
        assert!(out.contains("level classes (4): {0} {1,2,4} {3,5,6} {7}"));
    }

    #[test]
    fn check_pentagon() {
        let (_, doc, _) = run_capture(&["gen", "pentagon"], "");
        let (code, out, _) = run_capture(&["check", "-", "--semimodular"], &doc);
        assert_eq!(code, 1);
        assert!(out.contains("x=1, y=2"), "{out}");
        let (code, out, _) = run_capture(&["check", "-", "--lattice"], &doc);
        assert_eq!((code, out.as_str()), (0, "lattice: yes\n"));
    }

    #[test]
    fn verify_gates_and_budget() {
        let (_, doc, _) = run_capture(&["gen", "pentagon"], "");
        let (code, _, err) = run_capture(&["verify", "-"], &doc);
        assert_eq!(code, 2);
        assert!(err.contains("not semimodular"));
        let (code, out, _) = run_capture(&["verify", "-", "--unchecked"], &doc);
        assert_eq!(code, 1);
        assert!(out.contains("{3} level_not_cutset: chain [0,1,4]"), "{out}");
        assert!(out.contains("{1,3} cutset_not_level: 1 and 3"), "{out}");
        let (_, doc, _) = run_capture(&["gen", "boolean", "4"], "");
        let (code, _, err) = run_capture(&["cutsets", "-", "--budget", "2"], &doc);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn witness_output() {
        let (_, doc, _) = run_capture(&["gen", "boolean", "3"], "");
        let (code, out, _) = run_capture(&["witness", "-", "--set", "1,6"], &doc);
        assert_eq!(code, 0);
        assert_eq!(out, "chain: 0,2,3,7\nconfig: a=1 b=2 x=1 y=2 z=0 w=3\n");
        let (code, _, _) = run_capture(&["witness", "-", "--set", "1,2,4"], &doc);
        assert_eq!(code, 1);
        let (code, _, _) = run_capture(&["witness", "-", "--set", "1,x"], &doc);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["frobnicate"], "").0, 2);
        assert_eq!(run_capture(&["gen", "hexagon"], "").0, 2);
        assert_eq!(run_capture(&["levels", "/nonexistent/file.json"], "").0, 2);
        assert_eq!(run_capture(&["levels", "-"], "{not json").0, 2);
        assert_eq!(run_capture(&["--help"], "").0, 0);
    }

    #[test]
    fn strict_flag() {
        let doc = r#"{"n":3,"covers":[[0,1],[1,2],[0,2]]}"#;
        let (code, out, err) = run_capture(&["levels", "-"], doc);
        assert_eq!(code, 0);
        assert_eq!(out, "{0}\n{1}\n{2}\n");
        assert!(err.contains("warning"));
        assert_eq!(run_capture(&["--strict", "levels", "-"], doc).0, 2);
    }
}
