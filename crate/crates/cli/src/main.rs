//! `facenum`: face enumeration, audits and constructions from the command line.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use facenum::constructions::{self as cons, Payload, RefitOptions, Space};
use facenum::enumeration::{audit, Assertions, Coloring};
use facenum::posets::{face_poset, parse_poset, GradedPoset};
use facenum::{Face, FieldSpec, Label, SimplicialComplex};

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "facenum",
    version,
    about = "Face enumeration for simplicial complexes and graded posets"
)]
struct Cli {
    /// Coefficient field for homology: q, gf2 or gfP for a prime P.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed recorded in reports; every search is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Keep intermediate complexes of multi-step constructions.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Face numbers, homology and manifold verdicts of a complex.
    Analyze {
        /// Complex file (JSON or one facet per line) or `catalog:NAME`.
        input: String,
        /// Coloring file: `{"type_vector": [...], "colors": [[label, color], ...]}`.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Check the known relations and inequalities.
    Audit {
        input: String,
        #[arg(long)]
        assert_beta1_positive: bool,
        #[arg(long, value_name = "T")]
        assert_subgroup_index: Option<i64>,
        #[arg(long)]
        assert_combinatorial_manifold: bool,
    },
    /// Build a complex.
    Generate {
        #[command(subcommand)]
        kind: Generate,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Apply one bistellar move `F * ∂G -> ∂F * G`.
    Move {
        input: String,
        /// Vertices of F, separated by commas or spaces.
        #[arg(long)]
        f: String,
        /// Vertices of G.
        #[arg(long)]
        g: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants of a graded poset (or of the face poset of a complex).
    Poset {
        input: String,
        #[arg(value_enum)]
        which: PosetQuery,
    },
    /// Re-run a move log on a starting complex.
    Replay {
        start: String,
        log: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetQuery {
    Toric,
    Cd,
    Flag,
    Classify,
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    /// Where to write the complex (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Where to write the move log.
    #[arg(long, global = true)]
    log: Option<PathBuf>,
    /// Where to write the starting complex of the move log.
    #[arg(long, global = true)]
    start: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Generate {
    /// Stacked (d-1)-sphere on n vertices.
    Stacked {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Vertex-transitive S^1 x S^(2m-1) on n vertices.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// A built-in complex.
    Catalog { name: String },
    /// A triangulation with prescribed g_1, g_2.
    Realize {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        g1: i64,
        #[arg(long)]
        g2: i64,
        /// 2-neighborly base complex to use instead of a built-in one.
        #[arg(long)]
        input: Option<String>,
    },
    /// Add edges to the vertex-transitive S^1 x S^(2m-1) by 1-moves.
    Fill {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Make a closed manifold 2-neighborly with a spanning tree through a codimension-three face.
    Refit {
        input: String,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let s = s.to_ascii_lowercase();
    match s.as_str() {
        "q" | "rationals" => Ok(FieldSpec::Rationals),
        _ => {
            let p: u64 = s
                .strip_prefix("gf")
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| format!("unknown field {s}; use q or gfP"))?;
            let f = FieldSpec::PrimeField(p);
            if f.is_valid() {
                Ok(f)
            } else {
                Err(format!("{p} is not a supported prime"))
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A complex file or `catalog:NAME`; catalog entries may carry a coloring.
fn load_complex(input: &str) -> Result<(SimplicialComplex, Option<Coloring>)> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let entry = cons::catalog(name)?;
        return match entry.payload {
            Payload::Balanced { complex, coloring } => Ok((complex, Some(coloring))),
            _ => match entry.complex() {
                Some(k) => Ok((k.clone(), None)),
                None => bail!("catalog entry {name} is not a complex"),
            },
        };
    }
    Ok((
        facenum::complex::parse_complex(&read(Path::new(input))?)?,
        None,
    ))
}

fn load_poset(input: &str) -> Result<GradedPoset> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let entry = cons::catalog(name)?;
        if let Payload::Poset(p) = entry.payload {
            return Ok(p);
        }
        let k = entry
            .complex()
            .context("entry has neither a poset nor a complex")?;
        return Ok(face_poset(k, true)?);
    }
    let text = read(Path::new(input))?;
    if text.contains("\"elements\"") {
        Ok(parse_poset(&text)?)
    } else {
        Ok(face_poset(&facenum::complex::parse_complex(&text)?, true)?)
    }
}

fn parse_face(s: &str) -> Face {
    Face::of(
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Label::parse)
            .collect::<std::collections::BTreeSet<_>>(),
    )
}

fn complex_text(k: &SimplicialComplex, format: Format) -> String {
    match format {
        Format::Json => k.to_json() + "\n",
        Format::Table => k.to_text(),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Generated {
    start: Option<SimplicialComplex>,
    complex: SimplicialComplex,
    log: cons::MoveLog,
    trace: Vec<cons::TraceStep>,
}

fn generate(kind: &Generate, cli: &Cli) -> Result<Generated> {
    let plain = |k: SimplicialComplex| Generated {
        start: None,
        complex: k,
        log: Vec::new(),
        trace: Vec::new(),
    };
    Ok(match kind {
        Generate::Stacked { n, d } => plain(cons::stacked_sphere(*n, *d)?),
        Generate::Kl { n, m } => plain(cons::kuhnel_lassmann(*n, *m)?),
        Generate::Catalog { name } => {
            let entry = cons::catalog(name)?;
            match (&entry.payload, entry.complex()) {
                (
                    Payload::Moves {
                        host,
                        result,
                        moves,
                    },
                    _,
                ) => {
                    let mut log = Vec::new();
                    let mut k = host.clone();
                    for mv in moves {
                        k = cons::Operation::Bistellar {
                            f: mv.f.clone(),
                            g: mv.g.clone(),
                        }
                        .record(&k, &mut log)?;
                    }
                    debug_assert_eq!(&k, result);
                    Generated {
                        start: Some(host.clone()),
                        complex: k,
                        log,
                        trace: Vec::new(),
                    }
                }
                (_, Some(k)) => plain(k.clone()),
                (_, None) => {
                    bail!("catalog entry {name} is a poset; use `poset catalog:{name} ...`")
                }
            }
        }
        Generate::Realize {
            space,
            g1,
            g2,
            input,
        } => {
            if let Some(input) = input {
                let (base, _) = load_complex(input)?;
                let (k, log) = cons::realize_on(&base, *g1, *g2, 20_000)?;
                Generated {
                    start: Some(base),
                    complex: k,
                    log,
                    trace: Vec::new(),
                }
            } else {
                let space: Space = space
                    .as_deref()
                    .context("--space or --input is required")?
                    .parse()?;
                let (start, k, log) = cons::realize_space(space, *g1, *g2)?;
                Generated {
                    start: Some(start),
                    complex: k,
                    log,
                    trace: Vec::new(),
                }
            }
        }
        Generate::Fill { n, edges, m } => {
            let (k, log) = cons::kl_fill(*n, *m, *edges)?;
            Generated {
                start: Some(cons::kuhnel_lassmann(*n, *m)?),
                complex: k,
                log,
                trace: Vec::new(),
            }
        }
        Generate::Refit { input, budget } => {
            let (base, _) = load_complex(input)?;
            let opts = RefitOptions {
                search_budget: *budget,
                trace: cli.trace,
            };
            let out = cons::two_neighborly_refit(&base, &opts)?;
            eprintln!("codimension-three face: {}", out.rho);
            eprintln!("spanning tree: {} facets", out.tree.len());
            Generated {
                start: Some(base),
                complex: out.complex,
                log: out.log,
                trace: out.trace,
            }
        }
    })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Analyze { input, coloring } => {
            let (k, builtin) = load_complex(input)?;
            let coloring = match coloring {
                Some(p) => {
                    Some(serde_json::from_str::<Coloring>(&read(p)?).context("parsing coloring")?)
                }
                None => builtin,
            };
            let r = report::analyze(&k, cli.field, coloring.as_ref())?;
            r.emit(cli.format, cli.seed);
        }
        Command::Audit {
            input,
            assert_beta1_positive,
            assert_subgroup_index,
            assert_combinatorial_manifold,
        } => {
            let (k, _) = load_complex(input)?;
            let a = Assertions {
                beta1_positive: *assert_beta1_positive,
                subgroup_index: *assert_subgroup_index,
                combinatorial_manifold: *assert_combinatorial_manifold,
            };
            let rep = audit(&k, cli.field, &a)?;
            let failed = !rep.proven_violations().is_empty();
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep)?),
                Format::Table => print!("{rep}"),
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Generate { kind, out } => {
            let g = generate(kind, cli)?;
            write_or_print(out.out.as_deref(), &complex_text(&g.complex, cli.format))?;
            if let Some(p) = &out.log {
                fs::write(p, serde_json::to_string_pretty(&g.log)?)?;
            }
            if let Some(p) = &out.start {
                let start = g
                    .start
                    .as_ref()
                    .context("this construction has no starting complex")?;
                fs::write(p, complex_text(start, Format::Json))?;
            }
            if cli.trace {
                for (i, step) in g.trace.iter().enumerate() {
                    eprintln!(
                        "trace {i}: {} ({} vertices)",
                        step.label,
                        step.complex.n_vertices()
                    );
                }
            }
        }
        Command::Move { input, f, g, out } => {
            let (k, _) = load_complex(input)?;
            let mv = cons::BistellarMove::new(parse_face(f), parse_face(g));
            let next = cons::apply_bistellar(&k, &mv)?;
            Report::moved(&k, &next, &mv).emit(cli.format, cli.seed);
            if let Some(p) = out {
                fs::write(p, complex_text(&next, Format::Json))?;
            }
        }
        Command::Poset { input, which } => {
            let p = load_poset(input)?;
            let r = match which {
                PosetQuery::Toric => report::toric(&p)?,
                PosetQuery::Cd => report::cd(&p),
                PosetQuery::Flag => report::flag(&p),
                PosetQuery::Classify => report::classify(&p),
            };
            r.emit(cli.format, cli.seed);
        }
        Command::Replay { start, log, out } => {
            let (k, _) = load_complex(start)?;
            let log = cons::parse_move_log(&read(log)?)?;
            let end = cons::replay(&k, &log)?;
            write_or_print(out.as_deref(), &complex_text(&end, cli.format))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
