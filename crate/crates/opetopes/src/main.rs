use clap::{Parser, Subcommand};
use opetopes::crosscheck::{check_correspondence, check_frame};
use opetopes::error::Error;
use opetopes::face::{faces, relations_deep, relations_one_step};
use opetopes::json::{
    frame_from_json, graph_from_json, opetope_from_json, opetope_to_json, FrameJson, GraphJson,
    OpetopeJson,
};
use opetopes::opetope::{chain, enumerate_opetopes, hom, Bounds, Frame, Opetope};
use opetopes::samples::{sample_3opetope, sample_4opetope};
use std::path::PathBuf;

/// Construct, validate, enumerate and cross-check opetopes.
#[derive(Parser)]
#[command(name = "opetopes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an opetope file against the frame and composite conditions.
    Validate { file: PathBuf },
    /// List all opetopes with a given frame as JSON.
    Enumerate {
        #[arg(long)]
        dim: usize,
        /// Input count for dimension 2.
        #[arg(long)]
        arity: Option<usize>,
        /// Corolla frame for dimension 3, e.g. "(3,2)->4": inputs are
        /// identity chains of the given arities.
        #[arg(long)]
        frame: Option<String>,
        /// A frame as a JSON file {"inputs": [...], "output": {...}}.
        #[arg(long)]
        frame_file: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_leaves: usize,
    },
    /// List all morphisms between two opetope files.
    Homs { a: PathBuf, b: PathBuf },
    /// Print face generators and relation classes of an opetope file.
    Faces {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Compare the graph enumeration against the slice oracle per frame.
    Crosscheck {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
    },
    /// Emit the configuration graph of an opetope file (or a raw graph
    /// file) as DOT.
    ExportDot { file: PathBuf },
}

fn main() {
    std::process::exit(run());
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => 2,
        Error::BoundExceeded(_) => 3,
        _ => 1,
    }
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(CliError::Json(e)) => {
            eprintln!("parse error: {e}");
            2
        }
        Err(CliError::Kernel(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

enum CliError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Kernel(Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Kernel(e)
    }
}

fn load_opetope(path: &PathBuf) -> Result<Opetope, CliError> {
    let text = std::fs::read_to_string(path)?;
    let j: OpetopeJson = serde_json::from_str(&text)?;
    Ok(opetope_from_json(&j)?)
}

fn parse_corolla_frame(spec: &str, dim: usize) -> Result<Frame, Error> {
    let bad = |m: &str| Error::Syntax {
        position: 0,
        message: format!("frame spec {spec:?}: {m}"),
    };
    if dim != 3 {
        return Err(bad("corolla frame specs describe dimension 3"));
    }
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, rhs) = s
        .split_once("->")
        .ok_or_else(|| bad("expected \"(a,b,...)->n\""))?;
    let lhs = lhs
        .strip_prefix('(')
        .and_then(|l| l.strip_suffix(')'))
        .ok_or_else(|| bad("inputs must be parenthesized"))?;
    let arities: Vec<usize> = if lhs.is_empty() {
        Vec::new()
    } else {
        lhs.split(',')
            .map(|p| p.parse().map_err(|_| bad("input arities must be numbers")))
            .collect::<Result<_, _>>()?
    };
    let out: usize = rhs.parse().map_err(|_| bad("output arity must be a number"))?;
    Ok(Frame {
        inputs: arities.into_iter().map(chain).collect(),
        output: chain(out),
    })
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)?;
            let j: OpetopeJson = serde_json::from_str(&text)?;
            match opetope_from_json(&j) {
                Ok(op) => {
                    println!(
                        "valid: dimension {}, arity {}",
                        op.dim(),
                        op.arity()
                    );
                    Ok(0)
                }
                Err(e) => {
                    eprintln!("invalid: {e}");
                    Ok(exit_code(&e))
                }
            }
        }
        Command::Enumerate {
            dim,
            arity,
            frame,
            frame_file,
            max_leaves,
        } => {
            let frame = frame_for(dim, arity, frame, frame_file)?;
            let bounds = Bounds {
                max_dim: 4,
                max_leaves,
            };
            let ops = enumerate_opetopes(&frame, &bounds)?;
            let list: Vec<OpetopeJson> = ops.iter().map(opetope_to_json).collect();
            println!("{}", serde_json::to_string_pretty(&list)?);
            Ok(0)
        }
        Command::Homs { a, b } => {
            let (x, y) = (load_opetope(&a)?, load_opetope(&b)?);
            let ms = hom(&x, &y);
            let rendered: Vec<serde_json::Value> = ms
                .iter()
                .map(|m| serde_json::json!({ "morphism": morphism_json(m) }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&rendered)?);
            Ok(0)
        }
        Command::Faces {
            file,
            depth,
            format,
        } => {
            let op = load_opetope(&file)?;
            let gens = faces(&op)?;
            let relations = match depth {
                1 => relations_one_step(&op)?,
                2 => relations_deep(&op)?,
                _ => {
                    return Err(Error::BoundExceeded(
                        "relation depth is 1 or 2".to_string(),
                    )
                    .into())
                }
            };
            if format == "json" {
                let j = serde_json::json!({
                    "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "classes": relations
                        .classes
                        .iter()
                        .map(|c| c.iter().map(|w| w.rendered()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&j)?);
            } else {
                println!(
                    "generators: {}",
                    gens.iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                for class in &relations.classes {
                    let words: Vec<String> = class.iter().map(|w| w.rendered()).collect();
                    println!("{}", words.join(" = "));
                }
            }
            Ok(0)
        }
        Command::Crosscheck { dim, max_leaves } => {
            let bounds = Bounds {
                max_dim: 4,
                max_leaves,
            };
            let report = match dim {
                0..=3 => check_correspondence(dim, &bounds)?,
                4 => {
                    // The built-in dimension-4 witness frame.
                    let gamma = sample_4opetope()?;
                    let c = gamma.cell().expect("dimension 4 cell");
                    let fr = Frame {
                        inputs: c.inputs.clone(),
                        output: c.output.clone(),
                    };
                    let report = check_frame(
                        &fr,
                        &Bounds {
                            max_dim: 4,
                            max_leaves: max_leaves.max(9),
                        },
                    )?;
                    opetopes::crosscheck::CorrespondenceReport {
                        dim: 4,
                        status: if report.matched { "match" } else { "mismatch" }.to_string(),
                        frames: vec![report],
                    }
                }
                _ => {
                    return Err(
                        Error::BoundExceeded(format!("dimension {dim} out of range")).into()
                    )
                }
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.is_match() { 0 } else { 1 })
        }
        Command::ExportDot { file } => {
            let text = std::fs::read_to_string(&file)?;
            if let Ok(j) = serde_json::from_str::<OpetopeJson>(&text) {
                if j.dim >= 2 {
                    let op = opetope_from_json(&j)?;
                    let theta = op.theta().expect("cells carry configurations");
                    print!("{}", theta.underlying.to_dot());
                    return Ok(0);
                }
            }
            let gj: GraphJson = serde_json::from_str(&text)?;
            let g = graph_from_json(&gj)?;
            print!("{}", g.to_dot());
            Ok(0)
        }
    }
}

fn frame_for(
    dim: usize,
    arity: Option<usize>,
    frame: Option<String>,
    frame_file: Option<PathBuf>,
) -> Result<Frame, CliError> {
    if let Some(path) = frame_file {
        let text = std::fs::read_to_string(&path)?;
        let j: FrameJson = serde_json::from_str(&text)?;
        return Ok(frame_from_json(&j)?);
    }
    if let Some(spec) = frame {
        return Ok(parse_corolla_frame(&spec, dim)?);
    }
    if let Some(m) = arity {
        if dim != 2 {
            return Err(Error::Syntax {
                position: 0,
                message: "--arity describes dimension 2".to_string(),
            }
            .into());
        }
        return Ok(Frame {
            inputs: vec![Opetope::Arrow; m],
            output: Opetope::Arrow,
        });
    }
    let _ = sample_3opetope; // referenced by docs and tests
    Err(Error::Syntax {
        position: 0,
        message: "enumerate needs --arity, --frame or --frame-file".to_string(),
    }
    .into())
}

fn morphism_json(m: &opetopes::opetope::OpetopeMorphism) -> serde_json::Value {
    use opetopes::opetope::OpetopeMorphism;
    match m {
        OpetopeMorphism::Trivial(_) => serde_json::Value::String("id".to_string()),
        OpetopeMorphism::Frame(f) => serde_json::json!({
            "sigma": f.sigma,
            "inputs": f.inputs.iter().map(morphism_json).collect::<Vec<_>>(),
            "output": morphism_json(&f.output),
        }),
    }
}
