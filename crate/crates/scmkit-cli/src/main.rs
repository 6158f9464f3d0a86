//! `scmkit`: dual-graph invariants of rational surface singularities
//! from the command line. Reads graph JSON, emits one line of compact
//! JSON per input (DOT is available for the quiver commands), and uses
//! exit codes 0 (success), 1 (bad input or failed validation) and
//! 2 (usage error).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scmkit::cycles::arithmetic_genus;
use scmkit::generators::{
    block_family, brute_force_fundamental_cycle, default_oracle_bound, random_tree,
    rationalize_tree,
};
use scmkit::modules::{min_generators, syzygy_decomposition, syzygy_rank, ModuleClass};
use scmkit::quiver::{ext_table, reconstruction_quiver, relations_report};
use scmkit::stable::{
    classify_projectives, cluster_tilting, dynkin_classify, gorenstein_partners,
    minus_two_subgraph, stable_endomorphism_quiver,
};
use scmkit::{DualGraph, ValidatedGraph, ValidationReport};

#[derive(Parser)]
#[command(
    name = "scmkit",
    version,
    about = "Invariants of rational surface singularities from the dual graph"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file, or a directory of them with --all
    input: PathBuf,
    /// Output format (dot is available for quiver and stable)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Process every .json file in the input directory
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the validation checks and print the report
    Validate(GraphArgs),
    /// Fundamental cycle
    Zf(GraphArgs),
    /// Canonical cycle
    Zk(GraphArgs),
    /// Arithmetic genus of the fundamental cycle
    Genus(GraphArgs),
    /// Quiver of the reconstruction algebra
    Quiver(GraphArgs),
    /// Ext dimension table of the simple modules
    Ext(GraphArgs),
    /// Relation counts and global dimension
    Relations(GraphArgs),
    /// Relatively projective vs non-projective specials
    Projectives(GraphArgs),
    /// Stable AR quiver with the endomorphism-algebra flags
    Stable(GraphArgs),
    /// Dynkin components of the (-2)-subconfiguration
    Dynkin(GraphArgs),
    /// Almost split sequences, one entry per vertex
    Ar(GraphArgs),
    /// ADE labels of the Gorenstein partners
    Partners(GraphArgs),
    /// Decide existence of an n-cluster tilting object
    Tilt {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cluster tilting level (n >= 1)
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Syzygy decomposition of a module class
    Syzygy {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        rank: u64,
        /// Comma-separated Chern numbers in vertex input order
        #[arg(long)]
        chern: Option<String>,
    },
    /// Minimal generator and syzygy-rank counts of a module class
    Gens {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        rank: u64,
        /// Comma-separated Chern numbers in vertex input order
        #[arg(long)]
        chern: Option<String>,
    },
    /// Emit a random rationalized tree as graph JSON
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the m-th block family graph as JSON
    Family {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Brute-force fundamental cycle (independent of the incremental search)
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        /// Coefficient bound; defaults to the incremental maximum plus one
        #[arg(long)]
        bound: Option<u64>,
    },
}

enum CliError {
    /// Unusable flags or flag values: exit 2.
    Usage(String),
    /// Unreadable, unparsable or invalid input: exit 1.
    Input(String),
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn input_err(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

/// What to run once a graph file is loaded.
enum Op {
    Validate,
    Zf,
    Zk,
    Genus,
    Quiver,
    Ext,
    Relations,
    Projectives,
    Stable,
    Dynkin,
    Ar,
    Partners,
    Tilt { n: u32 },
    Syzygy { rank: u64, chern: Option<String> },
    Gens { rank: u64, chern: Option<String> },
    Oracle { bound: Option<u64> },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> CliResult<i32> {
    let (args, op) = match cli.cmd {
        Cmd::Generate { n, seed } => {
            let tree = random_tree(n as usize, seed).map_err(input_err)?;
            println!("{}", rationalize_tree(&tree).to_json());
            return Ok(0);
        }
        Cmd::Family { m } => {
            println!("{}", block_family(m).map_err(input_err)?.to_json());
            return Ok(0);
        }
        Cmd::Validate(a) => (a, Op::Validate),
        Cmd::Zf(a) => (a, Op::Zf),
        Cmd::Zk(a) => (a, Op::Zk),
        Cmd::Genus(a) => (a, Op::Genus),
        Cmd::Quiver(a) => (a, Op::Quiver),
        Cmd::Ext(a) => (a, Op::Ext),
        Cmd::Relations(a) => (a, Op::Relations),
        Cmd::Projectives(a) => (a, Op::Projectives),
        Cmd::Stable(a) => (a, Op::Stable),
        Cmd::Dynkin(a) => (a, Op::Dynkin),
        Cmd::Ar(a) => (a, Op::Ar),
        Cmd::Partners(a) => (a, Op::Partners),
        Cmd::Tilt { graph, n } => (graph, Op::Tilt { n }),
        Cmd::Syzygy { graph, rank, chern } => (graph, Op::Syzygy { rank, chern }),
        Cmd::Gens { graph, rank, chern } => (graph, Op::Gens { rank, chern }),
        Cmd::Oracle { graph, bound } => (graph, Op::Oracle { bound }),
    };

    if args.format == Format::Dot && !matches!(op, Op::Quiver | Op::Stable) {
        return Err(usage("dot output is only available for `quiver` and `stable`"));
    }

    if args.all {
        run_batch(&args, &op)
    } else {
        let raw = read_file(&args.input)?;
        let (payload, ok) = render(&op, &raw, args.format)?;
        println!("{payload}");
        Ok(if ok { 0 } else { 1 })
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

/// Batch mode: one `<filename>\t<payload>` line per .json file, in name
/// order; the payload bytes match the individual invocation exactly.
fn run_batch(args: &GraphArgs, op: &Op) -> CliResult<i32> {
    if args.format != Format::Json {
        return Err(usage("--all only supports JSON output"));
    }
    let entries = fs::read_dir(&args.input)
        .map_err(|e| input_err(format!("cannot read {}: {e}", args.input.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut all_ok = true;
    for file in files {
        let name = file.file_name().unwrap_or_default().to_string_lossy().into_owned();
        match read_file(&file).and_then(|raw| render(op, &raw, Format::Json)) {
            Ok((payload, ok)) => {
                println!("{name}\t{payload}");
                all_ok &= ok;
            }
            Err(CliError::Input(msg)) | Err(CliError::Usage(msg)) => {
                eprintln!("{name}: {msg}");
                all_ok = false;
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

/// Parse, validate and render one graph. The boolean is false when the
/// payload is a failed validation report.
fn render(op: &Op, raw: &str, format: Format) -> CliResult<(String, bool)> {
    let graph = DualGraph::from_json(raw).map_err(input_err)?;

    if let Op::Validate = op {
        let report = graph.validate();
        let ok = report.passed();
        let payload = match format {
            Format::Json => serde_json::to_string(&report).map_err(input_err)?,
            Format::Text => report_text(&report),
            Format::Dot => unreachable!("rejected earlier"),
        };
        return Ok((payload, ok));
    }

    let vg = match graph.into_validated() {
        Ok(vg) => vg,
        Err(report) => {
            let payload = match format {
                Format::Json => serde_json::to_string(&report).map_err(input_err)?,
                Format::Text => report_text(&report),
                Format::Dot => unreachable!("rejected earlier"),
            };
            return Ok((payload, false));
        }
    };

    let payload = match format {
        Format::Json => serde_json::to_string(&json_value(op, &vg)?).map_err(input_err)?,
        Format::Dot => match op {
            Op::Quiver => reconstruction_quiver(&vg).to_dot(),
            Op::Stable => stable_endomorphism_quiver(&vg).quiver.to_dot(),
            _ => unreachable!("rejected earlier"),
        },
        Format::Text => text_value(op, &vg)?,
    };
    Ok((payload, true))
}

fn json_value(op: &Op, vg: &ValidatedGraph) -> CliResult<Value> {
    let value = match op {
        Op::Validate => unreachable!("handled by the caller"),
        Op::Zf => match vg.fundamental_cycle() {
            Ok(z) => z.to_json_map(vg.graph()),
            Err(_) => json!({}),
        },
        Op::Zk => vg.canonical_cycle().to_json_map(vg.graph()),
        Op::Genus => {
            let (map, genus) = match vg.fundamental_cycle() {
                Ok(z) => {
                    let genus = arithmetic_genus(vg.graph(), z).map_err(input_err)?;
                    (z.to_json_map(vg.graph()), genus.to_string())
                }
                Err(_) => (json!({}), "0".to_owned()),
            };
            json!({ "z_f": map, "genus": genus })
        }
        Op::Quiver => serde_json::to_value(reconstruction_quiver(vg)).map_err(input_err)?,
        Op::Ext => serde_json::to_value(ext_table(vg)).map_err(input_err)?,
        Op::Relations => serde_json::to_value(relations_report(vg)).map_err(input_err)?,
        Op::Projectives => serde_json::to_value(classify_projectives(vg)).map_err(input_err)?,
        Op::Stable => serde_json::to_value(stable_endomorphism_quiver(vg)).map_err(input_err)?,
        Op::Dynkin => {
            let comps = dynkin_classify(&minus_two_subgraph(vg)).map_err(input_err)?;
            serde_json::to_value(comps).map_err(input_err)?
        }
        Op::Ar => {
            let mut sequences = Vec::with_capacity(vg.len());
            for i in 0..vg.len() {
                let seq = scmkit::stable::ar_sequence(vg, vg.id(i)).map_err(input_err)?;
                let mut entry = serde_json::Map::new();
                entry.insert("vertex".into(), json!(vg.id(i)));
                if let Value::Object(fields) = serde_json::to_value(&seq).map_err(input_err)? {
                    entry.extend(fields);
                }
                sequences.push(Value::Object(entry));
            }
            json!({
                "vertices": vg.vertex_ids().collect::<Vec<_>>(),
                "sequences": sequences,
            })
        }
        Op::Partners => serde_json::to_value(gorenstein_partners(vg)).map_err(input_err)?,
        Op::Tilt { n } => {
            serde_json::to_value(cluster_tilting(vg, *n).map_err(input_err)?).map_err(input_err)?
        }
        Op::Syzygy { rank, chern } => {
            let class = module_class(vg, *rank, chern.as_deref())?;
            let summands = syzygy_decomposition(vg, &class).map_err(input_err)?.summands;
            serde_json::to_value(summands).map_err(input_err)?
        }
        Op::Gens { rank, chern } => {
            let class = module_class(vg, *rank, chern.as_deref())?;
            json!({
                "vertices": vg.vertex_ids().collect::<Vec<_>>(),
                "rank": class.rank(),
                "chern": class.chern(),
                "min_generators": min_generators(vg, &class).map_err(input_err)?,
                "syzygy_rank": syzygy_rank(vg, &class).map_err(input_err)?,
            })
        }
        Op::Oracle { bound } => {
            let bound = match bound {
                Some(b) => *b,
                None => default_oracle_bound(vg).map_err(input_err)?,
            };
            let z = brute_force_fundamental_cycle(vg, bound).map_err(input_err)?;
            z.to_json_map(vg.graph())
        }
    };
    Ok(value)
}

fn module_class(vg: &ValidatedGraph, rank: u64, chern: Option<&str>) -> CliResult<ModuleClass> {
    let chern = match chern {
        None => vec![0; vg.len()],
        Some(s) if s.trim().is_empty() => Vec::new(),
        Some(s) => s
            .split(',')
            .map(|part| part.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("bad --chern: {e}")))?,
    };
    if chern.len() != vg.len() {
        return Err(usage(format!(
            "--chern has {} entries but the graph has {} vertices",
            chern.len(),
            vg.len()
        )));
    }
    ModuleClass::new(rank, chern).map_err(|e| usage(e.to_string()))
}

fn report_text(report: &ValidationReport) -> String {
    let mut out = String::new();
    for check in &report.checks {
        let status = if check.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{status} {}: {}", check.name, check.detail);
    }
    let _ = write!(out, "verdict: {}", if report.passed() { "pass" } else { "fail" });
    out
}

fn cycle_text(vg: &ValidatedGraph, value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let _ = writeln!(out, "{k} = {}", v.as_str().unwrap_or_default());
        }
    }
    let _ = write!(out, "({} vertices)", vg.len());
    out
}

fn text_value(op: &Op, vg: &ValidatedGraph) -> CliResult<String> {
    let text = match op {
        Op::Zf | Op::Zk | Op::Oracle { .. } => cycle_text(vg, &json_value(op, vg)?),
        Op::Genus => {
            let v = json_value(op, vg)?;
            format!("genus = {}", v["genus"].as_str().unwrap_or_default())
        }
        Op::Quiver | Op::Stable => {
            let q = match op {
                Op::Quiver => reconstruction_quiver(vg),
                _ => stable_endomorphism_quiver(vg).quiver,
            };
            let mut out = format!("vertices: {}\n", q.vertices.join(" "));
            for a in &q.arrows {
                let tag = if a.extra { " [extra]" } else { "" };
                let _ = writeln!(out, "{} -> {} x{}{}", a.from, a.to, a.mult, tag);
            }
            out.pop();
            out
        }
        Op::Ext => {
            let t = ext_table(vg);
            let mut out = String::new();
            for (i, row) in t.rows.iter().enumerate() {
                let ext1: u64 = row.ext1.iter().sum::<u64>() + row.ext1_star;
                let _ = writeln!(
                    out,
                    "{}: ext1 total {}, ext2 self {}, ext2 * {}, ext3 * {}",
                    row.vertex, ext1, row.ext2[i], row.ext2_star, row.ext3_star
                );
            }
            out.pop();
            out
        }
        Op::Relations => {
            let r = relations_report(vg);
            let mut out = format!("global dimension: {}\n", r.global_dimension);
            for v in &r.relations {
                let kind = if v.cycle_at_vertex { " (cycle at vertex)" } else { "" };
                let _ = writeln!(
                    out,
                    "{}: {} self, {} against *{}",
                    v.vertex, v.self_relations, v.star_relations, kind
                );
            }
            out.pop();
            out
        }
        Op::Projectives => {
            let c = classify_projectives(vg);
            format!(
                "relatively projective: {}\nnon-projective: {}\n{}",
                c.relatively_projective.join(" "),
                c.non_projective.join(" "),
                c.note
            )
        }
        Op::Dynkin => {
            let comps = dynkin_classify(&minus_two_subgraph(vg)).map_err(input_err)?;
            comps
                .iter()
                .map(|c| format!("{}: {}", c.kind, c.vertices.join(" ")))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Op::Ar => {
            let mut lines = Vec::with_capacity(vg.len());
            for i in 0..vg.len() {
                let seq = scmkit::stable::ar_sequence(vg, vg.id(i)).map_err(input_err)?;
                lines.push(match seq {
                    scmkit::ArSequence::RelativelyProjective => {
                        format!("{}: relatively projective", vg.id(i))
                    }
                    scmkit::ArSequence::AlmostSplit(data) => {
                        let mut middle: Vec<String> = data
                            .middle
                            .iter()
                            .map(|m| format!("M_{}^{}", m.module, m.mult))
                            .collect();
                        if data.free_rank > 0 {
                            middle.push(format!("R^{}", data.free_rank));
                        }
                        format!(
                            "{}: 0 -> M -> {} -> M -> 0",
                            vg.id(i),
                            if middle.is_empty() { "0".to_owned() } else { middle.join(" + ") }
                        )
                    }
                });
            }
            lines.join("\n")
        }
        Op::Partners => gorenstein_partners(vg)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        Op::Tilt { n } => {
            let d = cluster_tilting(vg, *n).map_err(input_err)?;
            match d.witness {
                Some(w) => format!("n={}: {:?} (witness: {w})", d.n, d.answer),
                None => format!("n={}: {:?}", d.n, d.answer),
            }
        }
        Op::Syzygy { rank, chern } => {
            let class = module_class(vg, *rank, chern.as_deref())?;
            let d = syzygy_decomposition(vg, &class).map_err(input_err)?;
            if d.summands.is_empty() {
                "free class: empty syzygy".to_owned()
            } else {
                d.summands
                    .iter()
                    .map(|s| format!("Omega M_{} ^{}", s.omega_m, s.mult))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Op::Gens { rank, chern } => {
            let class = module_class(vg, *rank, chern.as_deref())?;
            format!(
                "min generators = {}\nsyzygy rank = {}",
                min_generators(vg, &class).map_err(input_err)?,
                syzygy_rank(vg, &class).map_err(input_err)?
            )
        }
        Op::Validate => unreachable!("handled by the caller"),
    };
    Ok(text)
}
