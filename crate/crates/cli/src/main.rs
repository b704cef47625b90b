//! `imtk`: command-line front end over the interval-minor toolkit. The
//! first stdout line is always the machine-readable answer; exit code 0 on
//! success, 2 on input errors, 1 on internal invariant failures.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use imtk_core::decomposition::build_distinguishing;
use imtk_core::detection::{detect_kt, YesPath};
use imtk_core::graph::{verify_witness, Color, EdgeColoring, Graph, IntervalWitness};
use imtk_core::k3::detect_k3;
use imtk_core::labeling::{delayed_rank, g_layers, Rank};
use imtk_core::oracle::{exact_has_complete_kim, exact_max_kim};
use imtk_core::ramsey::{gen_substitution_coloring, mono_kim_search};
use imtk_core::reduction::build_hat;
use imtk_core::{bounds, OrderedGraph};

#[derive(Parser)]
#[command(name = "imtk", about = "interval minor toolkit", version)]
struct Cli {
    /// structured JSON report instead of plain lines
    #[arg(long, global = true)]
    json: bool,
    /// worker cap; accepted for compatibility, all operations are
    /// currently single-threaded
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// approximate K_t detection with a verified witness on YES
    Detect {
        #[arg(long)]
        t: usize,
        graph: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// build and print the distinguishing delayed decomposition
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// delayed rank, with an optional layer dump
    Rank {
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(short, long)]
        verbose: bool,
    },
    /// exact linear-time K_3 decision
    K3 {
        graph: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// exact (exponential) K_t decision
    Oracle {
        #[arg(long)]
        t: usize,
        graph: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// exact maximum complete interval minor size
    OracleMax { graph: PathBuf },
    /// clique -> complete interval minor reduction
    Reduce {
        #[arg(long)]
        k: usize,
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// monochromatic complete interval minor search on a coloring
    Ramsey {
        coloring: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// generate a named graph or coloring family
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// check a witness file against a graph file
    Verify { graph: PathBuf, witness: PathBuf },
    /// approximation-factor table g_t(r) and log2log2 f(t)
    Bounds {
        #[arg(long)]
        t: usize,
    },
}

/// Input problems: exit 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_graph(p: &PathBuf) -> Result<OrderedGraph, InputError> {
    Ok(OrderedGraph::from_text(&fs::read_to_string(p)?)?)
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), InputError> {
    match path {
        Some(p) => Ok(fs::write(p, content)?),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), InputError> {
    match cli.cmd {
        Cmd::Detect { t, graph, witness } => {
            if t < 1 {
                return Err(InputError("--t must be at least 1".into()));
            }
            let g = read_graph(&graph)?;
            let r = detect_kt(&g, t);
            let path = r.yes_path.map(|p| match p {
                YesPath::Rank => "rank",
                YesPath::HeavyLeaf => "heavy-leaf",
            });
            if let (Some(w), Some(p)) = (&r.witness, &witness) {
                fs::write(p, w.to_text())?;
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "answer": if r.answer { "YES" } else { "NO" },
                        "yes_path": path,
                        "loglog_f": r.factor_report,
                        "witness": r.witness.map(|w| w.to_text()),
                    })
                );
            } else {
                println!("{}", if r.answer { "YES" } else { "NO" });
                if let Some(p) = path {
                    println!("path {p}");
                }
                println!("loglog_f {}", r.factor_report);
            }
        }
        Cmd::Decompose { graph, dot } => {
            let g = read_graph(&graph)?;
            let t = build_distinguishing(&g);
            if let Some(p) = dot {
                fs::write(p, t.to_dot())?;
            }
            if cli.json {
                println!("{}", json!({ "nodes": t.nodes.len(), "tree": t.to_text() }));
            } else {
                println!("{}", t.nodes.len());
                print!("{}", t.to_text());
            }
        }
        Cmd::Rank { graph, cap, verbose } => {
            let g = read_graph(&graph)?;
            let rank = delayed_rank(&g, cap).map_err(|e| internal(e))?;
            let answer = match rank {
                Rank::Exact(r) => r.to_string(),
                Rank::AtLeast(c) => format!(">={c}"),
            };
            let dump = if verbose {
                let r = match rank {
                    Rank::Exact(r) => r,
                    Rank::AtLeast(c) => c,
                };
                Some(g_layers(&g, r).map_err(|e| internal(e))?.dump())
            } else {
                None
            };
            if cli.json {
                println!("{}", json!({ "rank": answer, "layers": dump }));
            } else {
                println!("{answer}");
                if let Some(d) = dump {
                    print!("{d}");
                }
            }
        }
        Cmd::K3 { graph, witness } => {
            let g = read_graph(&graph)?;
            let w = detect_k3(&g);
            if let (Some(w), Some(p)) = (&w, &witness) {
                fs::write(p, w.to_text())?;
            }
            answer_yes_no(cli.json, w.map(|w| w.to_text()))?;
        }
        Cmd::Oracle { t, graph, witness } => {
            let g = read_graph(&graph)?;
            let w = exact_has_complete_kim(&g, t)?;
            if let (Some(w), Some(p)) = (&w, &witness) {
                fs::write(p, w.to_text())?;
            }
            answer_yes_no(cli.json, w.map(|w| w.to_text()))?;
        }
        Cmd::OracleMax { graph } => {
            let g = read_graph(&graph)?;
            let t = exact_max_kim(&g)?;
            if cli.json {
                println!("{}", json!({ "max": t }));
            } else {
                println!("{t}");
            }
        }
        Cmd::Reduce { k, graph, out } => {
            let text = fs::read_to_string(&graph)?;
            let og = OrderedGraph::from_text(&text)?;
            let g = Graph::from_edge_list(og.n(), og.edges().iter().copied())?;
            let (hat, t) = build_hat(&g, k)?;
            if cli.json {
                println!("{}", json!({ "t": t, "hat": hat.to_text() }));
            } else {
                println!("{t}");
                write_out(&out, &hat.to_text())?;
            }
        }
        Cmd::Ramsey { coloring, witness } => {
            let c = EdgeColoring::from_text(&fs::read_to_string(&coloring)?)?;
            let (col, w) = mono_kim_search(&c).map_err(|e| internal(e))?;
            let name = match col {
                Color::Red => "RED",
                Color::Blue => "BLUE",
            };
            if let Some(p) = &witness {
                fs::write(p, w.to_text())?;
            }
            if cli.json {
                println!(
                    "{}",
                    json!({ "color": name, "parts": w.len(), "witness": w.to_text() })
                );
            } else {
                println!("{name}");
                println!("parts {}", w.len());
            }
        }
        Cmd::Gen { family, params, seed, out } => {
            let text = if family == "ramsey-lb" {
                if params.len() != 2 {
                    return Err(InputError("ramsey-lb expects params Q K".into()));
                }
                let (c, _) = gen_substitution_coloring(params[0], params[1], seed)?;
                c.to_text()
            } else {
                match imtk_core::graph::gen_family(&family, &params, seed)? {
                    imtk_core::graph::Generated::Graph(g) => g.to_text(),
                    imtk_core::graph::Generated::Coloring(c) => c.to_text(),
                }
            };
            write_out(&out, &text)?;
        }
        Cmd::Verify { graph, witness } => {
            let g = read_graph(&graph)?;
            let w = IntervalWitness::from_text(&fs::read_to_string(&witness)?)?;
            let ok = verify_witness(&g, &w).unwrap_or(false);
            if cli.json {
                println!("{}", json!({ "ok": ok }));
            } else {
                println!("{}", if ok { "OK" } else { "FAIL" });
            }
        }
        Cmd::Bounds { t } => {
            if t < 1 {
                return Err(InputError("--t must be at least 1".into()));
            }
            let ll = bounds::loglog_f(t);
            if cli.json {
                let table: Vec<_> = (0..=3 * t - 2)
                    .map(|r| {
                        let v = bounds::g(t, r).unwrap();
                        json!({ "r": r, "a": v.a.to_string(), "b": v.b.to_string(),
                                "value": v.eval(t) })
                    })
                    .collect();
                println!("{}", json!({ "loglog_f": ll, "table": table }));
            } else {
                println!("{ll}");
                for r in 0..=3 * t - 2 {
                    let v = bounds::g(t, r).unwrap();
                    println!("g({t},{r}) = {} + {}*log2(512*{t}) = {}", v.a, v.b, v.eval(t));
                }
            }
        }
    }
    Ok(())
}

fn answer_yes_no(json: bool, witness: Option<String>) -> Result<(), InputError> {
    if json {
        println!(
            "{}",
            json!({ "answer": if witness.is_some() { "YES" } else { "NO" },
                    "witness": witness })
        );
    } else {
        println!("{}", if witness.is_some() { "YES" } else { "NO" });
    }
    Ok(())
}

/// Internal invariant failures exit with code 1, distinct from input errors.
fn internal<E: std::fmt::Display>(e: E) -> InputError {
    eprintln!("internal error: {e}");
    std::process::exit(1);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
