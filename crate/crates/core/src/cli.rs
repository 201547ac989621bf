//! Command-line front end.
//!
//! Exit codes: 0 when the answer is "detected"/"true"/success, 1 when it is
//! "undetected"/"false", 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::detection::{self, witness_map};
use crate::error::Error;
use crate::fixture;
use crate::gatecost;
use crate::group::Modulus;
use crate::hypergraph::{ErrorConfiguration, Hypergraph};
use crate::statesim;

/// Amplitudes printed by `state` before the dump is truncated.
pub const STATE_DUMP_LIMIT: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "hyperdetect", version, about = "Error-detection checks for hypergraph-state codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Canonical graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Overrides the modulus stored in the graph file.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether one error configuration is detected.
    Check {
        #[command(flatten)]
        common: GraphArgs,
        /// Comma-separated output vertex ids.
        #[arg(long)]
        errors: String,
    },
    /// Check every error configuration of the given size.
    Enumerate {
        #[command(flatten)]
        common: GraphArgs,
        #[arg(long)]
        size: usize,
    },
    /// Largest k with every configuration of size <= k detected.
    Radius {
        #[command(flatten)]
        common: GraphArgs,
    },
    /// Controlled-Z counts against the clique-expanded graph state.
    Cost {
        #[command(flatten)]
        common: GraphArgs,
    },
    /// Dump the hypergraph state amplitudes.
    State {
        #[command(flatten)]
        common: GraphArgs,
    },
    /// Verify the stabilizer of every vertex (qubits only).
    Stabilizers {
        #[command(flatten)]
        common: GraphArgs,
    },
    /// Brute-force factorization check on the explicit isometry.
    Oracle {
        #[command(flatten)]
        common: GraphArgs,
        #[arg(long)]
        errors: String,
    },
    /// Print (or write) the built-in 15-output example graph.
    Fixture {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e)
    }
}

fn load(common: &GraphArgs) -> Result<(Hypergraph, Modulus), CliError> {
    let text = std::fs::read_to_string(&common.graph).map_err(|e| {
        CliError::Usage(format!("cannot read {}: {e}", common.graph.display()))
    })?;
    let graph = Hypergraph::from_json(&text)?;
    let modulus = match common.modulus {
        Some(d) => Modulus::new(d)?,
        None => graph.modulus(),
    };
    Ok((graph.with_modulus(modulus), modulus))
}

fn parse_errors(graph: &Hypergraph, csv: &str) -> Result<ErrorConfiguration, CliError> {
    let ids = csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid vertex id {s:?} in --errors")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ErrorConfiguration::new(graph, ids)?)
}

fn render(format: OutputFormat, value: serde_json::Value, text: String) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("json output");
            s.push('\n');
            s
        }
        OutputFormat::Text => text,
    }
}

fn braces(ids: &[u32]) -> String {
    let inner: Vec<String> = ids.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Check { common, errors } => {
            let (graph, modulus) = load(&common)?;
            let errors = parse_errors(&graph, &errors)?;
            let verdict = detection::is_detected(&graph, &errors, modulus)?;
            let witness = verdict.witness.as_ref().map(witness_map);
            let value = json!({
                "modulus": modulus.get(),
                "errors": errors.ids(),
                "detected": verdict.detected,
                "witness": witness,
                "forced_relations": verdict.forced_relations,
            });
            let mut text = format!(
                "E = {} over Z_{}: {}",
                braces(&errors.ids()),
                modulus,
                if verdict.detected { "detected" } else { "undetected" }
            );
            if let Some(w) = &witness {
                let parts: Vec<String> = w.iter().map(|(v, x)| format!("{v}={x}")).collect();
                write!(text, " (witness {})", parts.join(", ")).unwrap();
            }
            text.push('\n');
            let code = if verdict.detected { 0 } else { 1 };
            Ok(Outcome::ok(code, render(common.output, value, text)))
        }
        Command::Enumerate { common, size } => {
            let (graph, modulus) = load(&common)?;
            let report = detection::enumerate_detected(&graph, size, modulus)?;
            let mut text = format!(
                "size {size} over Z_{modulus}: {} of {} configurations detected\n",
                report.detected, report.total
            );
            for u in &report.undetected {
                let parts: Vec<String> =
                    u.witness.iter().map(|(v, x)| format!("{v}={x}")).collect();
                writeln!(text, "  undetected {} (witness {})", braces(&u.config), parts.join(", "))
                    .unwrap();
            }
            let code = if report.all_detected() { 0 } else { 1 };
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome::ok(code, render(common.output, value, text)))
        }
        Command::Radius { common } => {
            let (graph, modulus) = load(&common)?;
            let radius = detection::detection_radius(&graph, modulus)?;
            let value = json!({ "modulus": modulus.get(), "detection_radius": radius });
            let text = format!("detection radius over Z_{modulus}: {radius}\n");
            Ok(Outcome::ok(0, render(common.output, value, text)))
        }
        Command::Cost { common } => {
            let (graph, _) = load(&common)?;
            let report = gatecost::compare(&graph);
            let mut text = String::new();
            for e in &report.per_edge {
                writeln!(
                    text,
                    "edge of size {}: hypergraph {} CZ, clique {} CZ",
                    e.size, e.hyper_cost, e.clique_cost
                )
                .unwrap();
            }
            writeln!(
                text,
                "total: hypergraph {}, clique {}, advantage {}",
                report.total_hyper, report.total_clique, report.advantage
            )
            .unwrap();
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome::ok(0, render(common.output, value, text)))
        }
        Command::State { common } => {
            let (graph, modulus) = load(&common)?;
            let state = statesim::hypergraph_state(&graph, modulus)?;
            let shown = state.amplitudes().len().min(STATE_DUMP_LIMIT);
            let d = modulus.get();
            let label = |index: usize| -> String {
                (0..state.num_sites())
                    .map(|p| char::from_digit(state.digit(index, p), 36).unwrap_or('?'))
                    .collect()
            };
            let amplitudes: Vec<serde_json::Value> = (0..shown)
                .map(|i| {
                    let a = state.amplitudes()[i];
                    json!({ "basis": label(i), "re": a.re, "im": a.im })
                })
                .collect();
            let value = json!({
                "sites": state.sites(),
                "local_dim": d,
                "dimension": state.amplitudes().len(),
                "truncated": shown < state.amplitudes().len(),
                "amplitudes": amplitudes,
            });
            let mut text = String::new();
            for i in 0..shown {
                let a = state.amplitudes()[i];
                writeln!(text, "|{}>  {:+.6} {:+.6}i", label(i), a.re, a.im).unwrap();
            }
            if shown < state.amplitudes().len() {
                writeln!(text, "... {} more", state.amplitudes().len() - shown).unwrap();
            }
            Ok(Outcome::ok(0, render(common.output, value, text)))
        }
        Command::Stabilizers { common } => {
            let (graph, _) = load(&common)?;
            let mut entries = Vec::new();
            let mut text = String::new();
            for v in graph.vertices() {
                let holds = statesim::verify_stabilizer(&graph, v)?;
                writeln!(text, "K_{v}: {holds}").unwrap();
                entries.push(json!({ "vertex": v, "holds": holds }));
            }
            let all = entries.iter().all(|e| e["holds"] == true);
            let value = json!({ "stabilizers": entries });
            Ok(Outcome::ok(if all { 0 } else { 1 }, render(common.output, value, text)))
        }
        Command::Oracle { common, errors } => {
            let (graph, modulus) = load(&common)?;
            let errors = parse_errors(&graph, &errors)?;
            let report = statesim::kl_factorization_check(&graph, &errors, modulus)?;
            let value = json!({
                "modulus": modulus.get(),
                "errors": errors.ids(),
                "factorizes": report.factorizes,
                "max_deviation": report.max_deviation,
                "offending": report.offending,
            });
            let mut text = format!(
                "E = {} over Z_{}: {} (max deviation {:.3e})",
                braces(&errors.ids()),
                modulus,
                if report.factorizes { "factorizes" } else { "does not factorize" },
                report.max_deviation
            );
            if let Some((g, h)) = &report.offending {
                write!(text, ", first failing pair g^E={g:?} h^E={h:?}").unwrap();
            }
            text.push('\n');
            let code = if report.factorizes { 0 } else { 1 };
            Ok(Outcome::ok(code, render(common.output, value, text)))
        }
        Command::Fixture { out } => {
            let mut body = fixture::FIFTEEN_VERTEX_JSON.to_string();
            body.push('\n');
            match out {
                Some(path) => {
                    std::fs::write(&path, &body).map_err(|e| {
                        CliError::Usage(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(Outcome::ok(0, String::new()))
                }
                None => Ok(Outcome::ok(0, body)),
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(rendered)
            } else {
                Outcome::ok(0, rendered)
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(CliError::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(CliError::Input(e)) => Outcome::usage(format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_required_flag_is_usage_error() {
        let out = run(["hyperdetect", "check", "--graph", "x.json"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("--errors"));
    }

    #[test]
    fn fixture_prints_canonical_graph() {
        let out = run(["hyperdetect", "fixture"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.trim_end(), fixture::FIFTEEN_VERTEX_JSON);
    }

    #[test]
    fn missing_file_is_usage_error() {
        let out = run(["hyperdetect", "radius", "--graph", "/nonexistent/graph.json"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.starts_with("error: cannot read"));
    }
}
