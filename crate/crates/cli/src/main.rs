use bpe_cli::{dot, survey};
use bpe_core::cert::{builtin_certificates, check_certificate, CertVerdict, Certificate};
use bpe_core::fixpoint::{decide, Verdict};
use bpe_core::graph::Graph;
use bpe_core::minors;
use bpe_core::variety::VarietySpec;
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Breaking-path analysis for group varieties over finite multigraphs.
///
/// Exit codes: 0 = holds / verified / contained, 1 = breaking / not proven
/// / not contained, 2 = input or budget error.
#[derive(Parser)]
#[command(name = "bpe", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph holds for a locally finite variety
    /// (trivial or ab:N). Exit 0 = holds, 1 = a breaking path exists.
    Decide {
        /// Graph file (JSON)
        graph: PathBuf,
        /// Variety: `trivial` or `ab:N` (`ab` needs `cert check`)
        variety: String,
        /// Stream the refinement trace
        #[arg(long)]
        trace: bool,
        /// Print the witness path for breaking verdicts
        #[arg(long)]
        witness: bool,
    },
    /// Survey all connected multigraphs up to the budgets, with
    /// cross-validation against the structural predictions.
    Survey {
        #[arg(long, default_value_t = survey::DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, default_value_t = survey::DEFAULT_MAX_EDGES)]
        max_edges: usize,
        /// Variety to decide (repeatable)
        #[arg(long = "variety", required = true)]
        varieties: Vec<String>,
        /// Write the machine-readable report to this file (`-` = stdout)
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certificate operations for the free Abelian variety.
    Cert {
        #[command(subcommand)]
        command: CertCommand,
    },
    /// Minor containment, classification and the forbidden catalog.
    Minors {
        /// Check that the second graph contains the first as a minor:
        /// `--contains H.json G.json`
        #[arg(long, num_args = 2, value_names = ["H", "G"])]
        contains: Option<Vec<PathBuf>>,
        /// Classify a graph against the forbidden catalog
        #[arg(long)]
        forbidden: Option<PathBuf>,
        /// Print the catalog graphs, one JSON object per line
        #[arg(long)]
        catalog: bool,
    },
    /// Export a graph.
    Export {
        /// Emit DOT (the only supported format)
        #[arg(long)]
        dot: bool,
        /// Graph file (JSON)
        graph: PathBuf,
        /// Highlight spec `v1,v2;e1,e2`
        #[arg(long)]
        highlight: Option<String>,
    },
}

#[derive(Subcommand)]
enum CertCommand {
    /// Check a certificate file. Exit 0 = verified, 1 otherwise.
    Check { file: PathBuf },
    /// Print a built-in certificate (`theta3` or `digons2`).
    Builtin { name: String },
}

fn load_graph(path: &Path) -> bpe_core::Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bpe_core::Error::Format(format!("{}: {e}", path.display())))?;
    Graph::from_json(&text)
}

fn minor_budget() -> usize {
    survey::env_edge_budget().unwrap_or(minors::MINOR_EDGE_BUDGET)
}

fn run() -> bpe_core::Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Decide {
            graph,
            variety,
            trace,
            witness,
        } => {
            let g = load_graph(&graph)?;
            let u = VarietySpec::parse(&variety)?;
            if !u.is_locally_finite() {
                return Err(bpe_core::Error::UnsupportedVariety(
                    "the free Abelian variety has infinitely many arrows; \
                     use `bpe cert check` with a certificate file"
                        .into(),
                ));
            }
            let verdict = decide(&g, u)?;
            if trace {
                print!("{}", verdict.render_trace(&g));
            }
            match verdict {
                Verdict::Holds { .. } => {
                    println!("holds");
                    Ok(0)
                }
                Verdict::Breaking {
                    arrow,
                    witness: w,
                    level,
                    ..
                } => {
                    println!("breaking arrow={} level={level}", arrow.display(&g));
                    if witness {
                        println!("witness {}", w.display_syntax(&g));
                    }
                    Ok(1)
                }
            }
        }
        Command::Survey {
            max_vertices,
            max_edges,
            varieties,
            json,
        } => {
            let varieties = varieties
                .iter()
                .map(|v| VarietySpec::parse(v))
                .collect::<bpe_core::Result<Vec<_>>>()?;
            let report = survey::run_survey(max_vertices, max_edges, &varieties)?;
            print!("{}", report.render_text());
            if let Some(path) = json {
                if path.as_os_str() == "-" {
                    println!("{}", report.to_json());
                } else {
                    std::fs::write(&path, report.to_json()).map_err(|e| {
                        bpe_core::Error::Format(format!("{}: {e}", path.display()))
                    })?;
                }
            }
            Ok(0)
        }
        Command::Cert { command } => match command {
            CertCommand::Check { file } => {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| bpe_core::Error::Format(format!("{}: {e}", file.display())))?;
                let cert = Certificate::from_json(&text)?;
                let report = check_certificate(&cert);
                match report.verdict {
                    CertVerdict::Verified => {
                        let bound = report.final_upper_anchor.expect("verified has a bound");
                        println!("verified final_upper_anchor={}", bound.display(&cert.graph));
                        Ok(0)
                    }
                    CertVerdict::NotProven => {
                        println!("not-proven");
                        Ok(1)
                    }
                    CertVerdict::Malformed(reason) => {
                        println!("malformed: {reason}");
                        Ok(1)
                    }
                }
            }
            CertCommand::Builtin { name } => {
                let cert = builtin_certificates()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, c)| c)
                    .ok_or_else(|| {
                        bpe_core::Error::Domain(format!(
                            "no builtin certificate {name:?}; available: theta3, digons2"
                        ))
                    })?;
                println!("{}", cert.to_json());
                Ok(0)
            }
        },
        Command::Minors {
            contains,
            forbidden,
            catalog,
        } => {
            if catalog {
                for which in minors::CatalogIndex::all() {
                    println!(
                        "{}",
                        serde_json::to_string(&which.graph().to_file())
                            .expect("graph serialization cannot fail")
                    );
                }
                return Ok(0);
            }
            if let Some(paths) = contains {
                let h = load_graph(&paths[0])?;
                let g = load_graph(&paths[1])?;
                return match minors::minor_contains_with_budget(&g, &h, minor_budget())? {
                    Some(w) => {
                        let deleted: Vec<&str> =
                            w.deleted_edges.iter().map(|&e| g.edge_name(e)).collect();
                        let contracted: Vec<&str> =
                            w.contracted_edges.iter().map(|&e| g.edge_name(e)).collect();
                        println!(
                            "contained delete=[{}] contract=[{}]",
                            deleted.join(","),
                            contracted.join(",")
                        );
                        Ok(0)
                    }
                    None => {
                        println!("not-contained");
                        Ok(1)
                    }
                };
            }
            if let Some(path) = forbidden {
                let g = load_graph(&path)?;
                let class = minors::has_forbidden_minor_with_budget(&g, minor_budget())?;
                println!("{}", class.tag());
                return Ok(if class.is_forbidden() { 1 } else { 0 });
            }
            Err(bpe_core::Error::Format(
                "minors needs one of --contains, --forbidden, --catalog".into(),
            ))
        }
        Command::Export {
            dot: want_dot,
            graph,
            highlight,
        } => {
            if !want_dot {
                return Err(bpe_core::Error::Format(
                    "export currently requires --dot".into(),
                ));
            }
            let g = load_graph(&graph)?;
            let h = highlight
                .map(|spec| dot::parse_highlight(&g, &spec))
                .transpose()?;
            print!("{}", dot::export_dot(&g, h.as_ref()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
