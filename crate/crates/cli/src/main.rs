mod io;
mod render;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pseudoline::graph::{build_from_arrangement, build_from_wiring, outer_face_vertices, ArrangementGraph};
use pseudoline::metrics::all_distances;
use pseudoline::oracle::{self, verify_all};
use pseudoline::realizer::{check_sequence, realize, DegreeSequence, ParityBranch};
use pseudoline::wiring::{enumerate_all, MAX_ENUMERATION_N};
use pseudoline::WiringDiagram;
use serde_json::{json, Value};

use crate::io::{parse_input, Input};
use crate::render::{RenderSpec, Target};

const EXIT_REJECTED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "pseudoline", version, about = "Pseudoline arrangement graphs: realization, distances and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a degree sequence belongs to an arrangement graph.
    CheckSeq {
        /// Degrees separated by commas or spaces, e.g. "4,3,3,2,2,2".
        sequence: String,
    },
    /// Build a line arrangement whose graph has the given degree sequence.
    Realize {
        sequence: String,
        /// Arrangement JSON destination (standard output if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the arrangement as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Report degrees, distances and the outer face of an arrangement.
    Analyze {
        /// Wiring diagram (JSON or "n: s1 s2 ...") or arrangement JSON.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        mark_outer: bool,
        #[arg(long)]
        mark_diametrical: bool,
        /// Include the full distance table in the JSON report.
        #[arg(long)]
        distances: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every wiring diagram on n wires, in lexicographic order.
    Enumerate {
        n: usize,
        /// Directory for one JSON file per diagram; JSON lines on standard
        /// output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit n = 6.
        #[arg(long)]
        allow_large: bool,
    },
    /// Check the structural claims over all diagrams up to n_max wires.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Comma-separated claim ids (all if absent).
        #[arg(long, alias = "claim", value_delimiter = ',')]
        claims: Vec<String>,
        /// List the claim ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write each failing diagram here, replayable through `analyze`.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Draw a wiring diagram, arrangement or graph.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "graph")]
        target: Target,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long, default_value_t = 600.0)]
        height: f64,
        #[arg(long)]
        label_lines: bool,
        #[arg(long)]
        mark_outer: bool,
        #[arg(long)]
        mark_diametrical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CheckSeq { sequence } => cmd_check_seq(&sequence),
        Command::Realize { sequence, out, svg } => cmd_realize(&sequence, out.as_deref(), svg.as_deref()),
        Command::Analyze {
            file,
            format,
            mark_outer,
            mark_diametrical,
            distances,
            out,
        } => cmd_analyze(&file, format, mark_outer, mark_diametrical, distances, out.as_deref()),
        Command::Enumerate { n, out, allow_large } => cmd_enumerate(n, out.as_deref(), allow_large),
        Command::Verify {
            n_max,
            claims,
            list,
            out,
            witness_dir,
        } => cmd_verify(n_max, &claims, list, out.as_deref(), witness_dir.as_deref()),
        Command::Render {
            file,
            target,
            format,
            width,
            height,
            label_lines,
            mark_outer,
            mark_diametrical,
            out,
        } => {
            let spec = RenderSpec {
                target,
                width,
                height,
                label_lines,
                mark_outer,
                mark_diametrical,
            };
            cmd_render(&file, &spec, format, out.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses a comma- or space-separated list of non-negative integers.
/// Errors carry the 1-based character position of the bad token.
fn parse_sequence(text: &str) -> Result<Vec<usize>, (usize, String)> {
    let mut out = Vec::new();
    let mut start = None;
    let bytes: Vec<char> = text.chars().collect();
    for i in 0..=bytes.len() {
        let sep = i == bytes.len() || bytes[i] == ',' || bytes[i].is_whitespace();
        match (sep, start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                let token: String = bytes[s..i].iter().collect();
                let value = token
                    .parse::<usize>()
                    .map_err(|_| (s + 1, format!("{token:?} is not a non-negative integer")))?;
                out.push(value);
                start = None;
            }
            _ => {}
        }
    }
    if out.is_empty() {
        return Err((1, "empty sequence".into()));
    }
    Ok(out)
}

/// Sequence to check, or the JSON body to print with status 1 or 2.
fn read_sequence(text: &str) -> Result<DegreeSequence, (u8, Value)> {
    let entries = parse_sequence(text).map_err(|(position, error)| {
        (EXIT_INPUT, json!({ "error": error, "position": position }))
    })?;
    DegreeSequence::from_unsorted(entries).map_err(|_| {
        (
            EXIT_REJECTED,
            json!({ "accepted": false, "code": "NOT_234_DEGREES", "detail": "degree 0 is not 2, 3 or 4" }),
        )
    })
}

fn plan_json(seq: &DegreeSequence) -> Result<Value, Value> {
    match check_sequence(seq) {
        Ok(plan) => Ok(json!({
            "accepted": true,
            "sequence": seq.entries(),
            "plan": {
                "n": plan.n,
                "d2": plan.d2,
                "d3": plan.d3,
                "d4": plan.d4,
                "parity_branch": match plan.parity_branch {
                    ParityBranch::OddD2 => "odd_d2",
                    ParityBranch::EvenD2 => "even_d2",
                },
                "star_size": plan.star_size(),
                "line_operations": plan.k,
                "pull": plan.parity_branch == ParityBranch::EvenD2,
            },
        })),
        Err(r) => Err(json!({
            "accepted": false,
            "sequence": seq.entries(),
            "code": r.code.as_str(),
            "detail": r.detail,
        })),
    }
}

fn cmd_check_seq(text: &str) -> CmdResult {
    let seq = match read_sequence(text) {
        Ok(s) => s,
        Err((code, body)) => {
            print!("{}", io::to_pretty(&body));
            return Ok(code);
        }
    };
    match plan_json(&seq) {
        Ok(body) => {
            print!("{}", io::to_pretty(&body));
            Ok(0)
        }
        Err(body) => {
            print!("{}", io::to_pretty(&body));
            Ok(EXIT_REJECTED)
        }
    }
}

fn cmd_realize(text: &str, out: Option<&Path>, svg: Option<&Path>) -> CmdResult {
    let seq = match read_sequence(text) {
        Ok(s) => s,
        Err((code, body)) => {
            print!("{}", io::to_pretty(&body));
            return Ok(code);
        }
    };
    let plan = match check_sequence(&seq) {
        Ok(p) => p,
        Err(_) => {
            print!("{}", io::to_pretty(&plan_json(&seq).unwrap_err()));
            return Ok(EXIT_REJECTED);
        }
    };
    let arrangement = realize(&plan).map_err(|e| Failure {
        code: EXIT_REJECTED,
        message: e.to_string(),
    })?;
    emit(&io::to_pretty(&io::arrangement_to_json(&arrangement)), out)?;
    if let Some(path) = svg {
        let g = build_from_arrangement(&arrangement).map_err(|e| input_error(e.to_string()))?;
        let outer = outer_face_vertices(&g).map_err(|e| input_error(e.to_string()))?;
        let spec = RenderSpec {
            target: Target::Arrangement,
            width: 800.0,
            height: 800.0,
            label_lines: true,
            mark_outer: true,
            mark_diametrical: false,
        };
        emit(&render::svg(&g, None, &spec, &outer, &BTreeSet::new()), Some(path))?;
    }
    Ok(0)
}

struct Loaded {
    graph: ArrangementGraph,
    wiring: Option<WiringDiagram>,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let input = parse_input(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let loaded = match input {
        Input::Wiring(d) => Loaded {
            graph: build_from_wiring(&d).map_err(|e| input_error(e.to_string()))?,
            wiring: Some(d),
        },
        Input::Lines(a) => Loaded {
            graph: build_from_arrangement(&a).map_err(|e| input_error(e.to_string()))?,
            wiring: None,
        },
    };
    Ok(loaded)
}

fn cmd_analyze(
    path: &Path,
    format: Format,
    mark_outer: bool,
    mark_diametrical: bool,
    distances: bool,
    out: Option<&Path>,
) -> CmdResult {
    let Loaded { graph: g, wiring } = load(path)?;
    let outer = outer_face_vertices(&g).map_err(|e| input_error(e.to_string()))?;
    let report = all_distances(&g);
    let text = match format {
        Format::Json => io::to_pretty(&io::report_to_json(&g, &report, &outer, distances)),
        Format::Dot => render::dot(&g, &outer, mark_diametrical.then_some(&report.diametrical)),
        Format::Svg => {
            let spec = RenderSpec {
                target: Target::Graph,
                width: 800.0,
                height: 600.0,
                label_lines: false,
                mark_outer,
                mark_diametrical,
            };
            render::svg(&g, wiring.as_ref(), &spec, &outer, &report.diametrical)
        }
    };
    emit(&text, out)?;
    Ok(0)
}

fn cmd_enumerate(n: usize, out: Option<&Path>, allow_large: bool) -> CmdResult {
    let diagrams = enumerate_all(n, allow_large).map_err(|e| input_error(e.to_string()))?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
            let mut count = 0;
            for (rank, d) in diagrams.enumerate() {
                let path = dir.join(format!("n{n}_{rank:06}.json"));
                emit(&io::to_pretty(&io::wiring_to_json(&d)), Some(&path))?;
                count += 1;
            }
            eprintln!("wrote {count} diagrams to {}", dir.display());
        }
        None => {
            for d in diagrams {
                println!("{}", io::wiring_to_json(&d));
            }
        }
    }
    Ok(0)
}

fn cmd_verify(
    n_max: usize,
    claims: &[String],
    list: bool,
    out: Option<&Path>,
    witness_dir: Option<&Path>,
) -> CmdResult {
    if list {
        for c in oracle::CLAIMS {
            println!("{:<24} (n <= {}) {}", c.id, c.max_n, c.description);
        }
        return Ok(0);
    }
    if n_max > MAX_ENUMERATION_N {
        return Err(input_error(format!("--n-max is at most {MAX_ENUMERATION_N}")));
    }
    let ids: Vec<&str> = claims.iter().map(String::as_str).collect();
    let run = verify_all(n_max, &ids).map_err(|e| input_error(e.to_string()))?;
    let body = serde_json::to_value(&run).expect("runs serialize");
    emit(&io::to_pretty(&body), out)?;
    if let Some(dir) = witness_dir {
        fs::create_dir_all(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
        for (i, f) in run.failures.iter().enumerate() {
            if let Some(d) = &f.diagram {
                let path = dir.join(format!("{:03}_{}_n{}.json", i, f.claim, f.n));
                emit(&io::to_pretty(&io::wiring_to_json(d)), Some(&path))?;
            }
        }
    }
    let total: usize = run.instances.values().sum();
    eprintln!(
        "{} instances, {} claims, {} failures",
        total,
        run.claims.len(),
        run.failures.len()
    );
    Ok(if run.passed() { 0 } else { EXIT_REJECTED })
}

fn cmd_render(path: &Path, spec: &RenderSpec, format: Format, out: Option<&Path>) -> CmdResult {
    spec.validate().map_err(input_error)?;
    let Loaded { mut graph, mut wiring } = load(path)?;
    if spec.target == Target::Wiring && wiring.is_none() {
        // draw the arrangement through one of its sweeps
        let text = fs::read_to_string(path).map_err(|e| input_error(e.to_string()))?;
        let Ok(Input::Lines(a)) = parse_input(&text) else {
            unreachable!("loaded above as an arrangement")
        };
        let swept = a.sweep().map_err(|e| input_error(e.to_string()))?;
        graph = build_from_wiring(&swept.diagram).map_err(|e| input_error(e.to_string()))?;
        wiring = Some(swept.diagram);
    }
    let outer = outer_face_vertices(&graph).map_err(|e| input_error(e.to_string()))?;
    let report = all_distances(&graph);
    let text = match format {
        Format::Svg => render::svg(&graph, wiring.as_ref(), spec, &outer, &report.diametrical),
        Format::Dot => render::dot(&graph, &outer, spec.mark_diametrical.then_some(&report.diametrical)),
        Format::Json => io::to_pretty(&io::graph_to_json(&graph, &outer)),
    };
    emit(&text, out)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_parsing() {
        assert_eq!(parse_sequence("2,2,2"), Ok(vec![2, 2, 2]));
        assert_eq!(parse_sequence(" 4 3, 3 ,2"), Ok(vec![4, 3, 3, 2]));
        assert_eq!(parse_sequence("2,x,2").unwrap_err().0, 3);
        assert_eq!(parse_sequence("2,-1").unwrap_err().0, 3);
        assert!(parse_sequence(" , ").is_err());
    }
}
