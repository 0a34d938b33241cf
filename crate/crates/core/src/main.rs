use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tamecx::decomp::{betti, decompose_with_summands, min_betti};
use tamecx::morinv::{morphism_betti, Method};
use tamecx::pipeline::{
    describe, emit_diagrams, ingest_filtration, parse_document, parse_tame_map, serialize_tame,
    DiagramFormat, Document,
};
use tamecx::tamecat::{minimal_cover, Param, TameComplex};
use tamecx::zigzag::zigzag_betti;
use tamecx::Field;

/// Betti diagrams and interval-sphere decompositions of tame parametrised chain complexes.
///
/// Inputs are filtrations (one simplex per line: entry value, then vertex ids) or the
/// `tame`, `tamemap` and `zigzag` text documents written by this tool.
#[derive(Parser, Debug)]
#[command(name = "tamecx", version, about, long_about = None)]
struct Cli {
    /// Prime modulus of the coefficient field (default 2)
    #[arg(long, global = true, env = "TAMECX_FIELD")]
    field: Option<u32>,

    /// Write the result here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Diagram output format: csv or structured
    #[arg(long, global = true, default_value = "csv")]
    format: DiagramFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti diagrams of the minimal cover
    Betti {
        input: PathBuf,
        /// drop diagonal points
        #[arg(long)]
        min: bool,
    },
    /// Interval spheres of a cofibrant input, one per line
    Decompose { input: PathBuf },
    /// The minimal cover, as a tame document
    Cover { input: PathBuf },
    /// Betti diagrams of a morphism given by a tamemap document between two inputs
    MorphismBetti {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long, default_value = "cover-cofiber")]
        method: Method,
    },
    /// Betti diagrams of the incarnation of a zigzag along a grid
    Zigzag {
        input: PathBuf,
        /// comma separated, one value per zigzag position
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<Param>,
    },
    /// Check an input against all invariants of its type
    Validate { input: PathBuf },
}

type CliResult<T> = std::result::Result<T, String>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path, field: Option<Field>) -> CliResult<Document> {
    parse_document(&read(path)?, field).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tame(path: &Path, field: Option<Field>) -> CliResult<TameComplex> {
    match load(path, field)? {
        Document::Filtration(f) => ingest_filtration(&f, field.unwrap_or(Field::F2))
            .map_err(|e| format!("{}: {e}", path.display())),
        Document::Tame(x) => Ok(x),
        other => Err(format!(
            "{}: expected a filtration or tame document, found {}",
            path.display(),
            other.kind()
        )),
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let field = cli
        .field
        .map(Field::new)
        .transpose()
        .map_err(|e| format!("--field: {e}"))?;
    let lib = |e: tamecx::Error| e.to_string();
    Ok(match &cli.command {
        Command::Betti { input, min } => {
            let x = load_tame(input, field)?;
            let d = if *min { min_betti(&x) } else { betti(&x) }.map_err(lib)?;
            emit_diagrams(&d, cli.format)
        }
        Command::Decompose { input } => {
            let x = load_tame(input, field)?;
            let mut spheres: Vec<_> = decompose_with_summands(&x)
                .map_err(lib)?
                .into_iter()
                .map(|s| s.sphere)
                .collect();
            spheres.sort();
            let mut out = String::new();
            match cli.format {
                DiagramFormat::Csv => {
                    out.push_str("degree,birth,death\n");
                    for s in spheres {
                        out.push_str(&format!("{},{},{}\n", s.n, s.s, s.e));
                    }
                }
                DiagramFormat::Structured => {
                    for s in spheres {
                        out.push_str(&format!("{s}\n"));
                    }
                }
            }
            out
        }
        Command::Cover { input } => {
            let x = load_tame(input, field)?;
            serialize_tame(&minimal_cover(&x).map_err(lib)?.cover)
        }
        Command::MorphismBetti {
            source,
            target,
            map,
            method,
        } => {
            let x = load_tame(source, field)?;
            let y = load_tame(target, field)?;
            let g = parse_tame_map(&read(map)?, &x, &y, field)
                .map_err(|e| format!("{}: {e}", map.display()))?;
            emit_diagrams(
                &morphism_betti(&g, *method).map_err(lib)?.diagrams,
                cli.format,
            )
        }
        Command::Zigzag { input, grid } => match load(input, field)? {
            Document::Zigzag(z) => emit_diagrams(&zigzag_betti(&z, grid).map_err(lib)?, cli.format),
            other => {
                return Err(format!(
                    "{}: expected a zigzag document, found {}",
                    input.display(),
                    other.kind()
                ))
            }
        },
        Command::Validate { input } => {
            let doc = load(input, field)?;
            let mut out = String::from("ok\n");
            for (k, v) in describe(&doc) {
                out.push_str(&format!("{k}: {v}\n"));
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &cli.output {
        Some(p) => fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
