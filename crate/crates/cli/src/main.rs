use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lochness_cli::report::{self, ReportOptions};
use lochness_cli::{parse_polygon_spec, CliError, PolygonBody, PolygonSpec};
use lochness_core::unfold::{self, Point, SvgStyle};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lochness", version, about = "Genus and end structure of billiard surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Polygon spec (JSON); `-` or omitted reads stdin.
    file: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest denominator accepted when measuring vertex angles.
    #[arg(long, default_value_t = 12)]
    q_max: i64,
    /// Tolerance (in units of π) for matching a measured angle to p/q.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline and verdict.
    Report {
        #[command(flatten)]
        common: Common,
        /// Outer ball radius for end diagnostics (inner radius is half of it).
        #[arg(long)]
        radius: Option<usize>,
        /// Extra free-part modulus for a finite lift.
        #[arg(long)]
        modulus: Option<i64>,
        /// Number of disjoint handles in the certificate.
        #[arg(long, default_value_t = 5)]
        tori: usize,
        /// Generator indices i1,i2,… (N−1 of them, 0-based).
        #[arg(long, value_delimiter = ',')]
        choice: Option<Vec<usize>>,
    },
    /// Genus of a rational polygon.
    Genus {
        #[command(flatten)]
        common: Common,
    },
    /// Resonance lattices and deck-group invariants.
    Resonances {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        choice: Option<Vec<usize>>,
    },
    /// End diagnostics on the Cayley graph of the deck group.
    Ends {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        choice: Option<Vec<usize>>,
        /// Write the ball of this radius (≤ 4) as Graphviz DOT.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Genus of the lift of the two-petal rose along a word such as `B1 B2^-1 [B1,B2]`.
    Lift {
        word: String,
        #[command(flatten)]
        common: Common,
        /// The two vertices i,j whose angles label B1 and B2.
        #[arg(long, value_delimiter = ',')]
        choice: Option<Vec<usize>>,
    },
    /// Pairwise disjoint handles.
    Tori {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long = "count", default_value_t = 5)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        choice: Option<Vec<usize>>,
    },
    /// Unfold a billiard trajectory in a vertex-coordinate polygon.
    Unfold {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Start point x,y; defaults to the vertex centroid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        start: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,0.6180339887498949")]
        dir: Vec<f64>,
        /// Depth for the derivative-holonomy closure.
        #[arg(long, default_value_t = 12)]
        orbit_depth: usize,
        /// SVG of the unfolded copies and trajectory.
        #[arg(long)]
        svg_out: Option<PathBuf>,
        /// SVG of the direction orbit.
        #[arg(long)]
        orbit_svg: Option<PathBuf>,
    },
}

fn read_spec(common: &Common) -> Result<PolygonSpec, CliError> {
    let text = match &common.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("reading {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
            s
        }
    };
    parse_polygon_spec(&text)
}

fn emit(common: &Common, text: String) -> Result<(), CliError> {
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn pair(choice: Option<&[usize]>) -> Result<Option<(usize, usize)>, CliError> {
    match choice {
        None => Ok(None),
        Some([i, j]) => Ok(Some((*i, *j))),
        Some(other) => Err(CliError::Validation(format!("--choice takes two vertices here, got {}", other.len()))),
    }
}

fn radius_pairs(radius: Option<usize>) -> Result<Option<Vec<(usize, usize)>>, CliError> {
    match radius {
        None => Ok(None),
        Some(r) if r < 2 => Err(CliError::Validation("--radius must be at least 2".into())),
        Some(r) => Ok(Some(vec![(r / 2, r)])),
    }
}

fn point(v: &[f64], flag: &str) -> Result<Point, CliError> {
    match v {
        [x, y] => Ok(Point::new(*x, *y)),
        _ => Err(CliError::Validation(format!("{flag} takes x,y"))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Report { common, radius, modulus, tori, choice } => {
            let spec = read_spec(&common)?;
            let mut opts = ReportOptions { radii: radius_pairs(radius)?, tori, choice, q_max: common.q_max, tol: common.tol, ..Default::default() };
            if let Some(m) = modulus {
                if m < 1 {
                    return Err(CliError::Validation("--modulus must be positive".into()));
                }
                if !opts.moduli.contains(&m) {
                    opts.moduli.push(m);
                }
            }
            let r = report::run_report(&spec, &opts)?;
            emit(&common, if common.json { r.to_json() } else { report::render_text(&r) })
        }
        Command::Genus { common } => {
            let spec = read_spec(&common)?;
            let (angles, _) = report::resolve_angles(&spec, common.q_max, common.tol)?;
            let g = report::genus(&angles)?;
            emit(&common, if common.json { json(&g) } else { format!("genus {}\n", g.genus) })
        }
        Command::Resonances { common, choice } => {
            let spec = read_spec(&common)?;
            let (angles, _) = report::resolve_angles(&spec, common.q_max, common.tol)?;
            let entries = match choice {
                Some(c) => vec![report::choice_entry(&report::choice_for(&angles, Some(&c))?)?],
                None => report::resonances(&angles)?.0,
            };
            let text = if common.json {
                json(&entries)
            } else {
                entries
                    .iter()
                    .map(|c| {
                        let basis: Vec<String> = c.resonance_basis.iter().map(|r| format!("({})", r.join(","))).collect();
                        format!("choice {:?}: basis [{}], rank {}, torsion [{}], order {}\n", c.indices, basis.join(" "), c.rank, c.torsion.join(","), c.order)
                    })
                    .collect()
            };
            emit(&common, text)
        }
        Command::Ends { common, radius, choice, dot_out } => {
            let spec = read_spec(&common)?;
            let (angles, _) = report::resolve_angles(&spec, common.q_max, common.tol)?;
            let ch = report::choice_for(&angles, choice.as_deref())?;
            let e = report::ends(&ch, radius_pairs(radius)?.as_deref())?;
            if let Some(path) = dot_out {
                let dot = report::ends_dot(&ch, radius.unwrap_or(3).min(4))?;
                std::fs::write(&path, dot).map_err(|err| CliError::Io(format!("writing {}: {err}", path.display())))?;
            }
            let text = if common.json {
                json(&e)
            } else {
                let mut s = format!("rank {} predicts {} end(s)\n", e.rank, e.end_count_from_rank);
                for c in &e.complements {
                    s += &format!("ball({}) minus ball({}): {} unbounded pieces\n", c.outer, c.inner, c.components);
                }
                s
            };
            emit(&common, text)
        }
        Command::Lift { word, common, choice } => {
            let spec = read_spec(&common)?;
            let (angles, _) = report::resolve_angles(&spec, common.q_max, common.tol)?;
            let l = report::lift(&angles, &word, pair(choice.as_deref())?)?;
            let text = if common.json {
                json(&l)
            } else {
                format!(
                    "U({}): V = {}, E = {}, χ = {}, boundary circles = {}, genus = {}, endpoint {}\n",
                    l.word, l.vertices, l.edges, l.surface.euler_characteristic, l.surface.boundary_count, l.surface.genus, l.endpoint
                )
            };
            emit(&common, text)
        }
        Command::Tori { common, n, choice } => {
            let spec = read_spec(&common)?;
            let (angles, _) = report::resolve_angles(&spec, common.q_max, common.tol)?;
            let c = report::tori(&angles, n, pair(choice.as_deref())?)?;
            let text = if common.json {
                json(&c)
            } else {
                let mut s = format!("subcase {} on vertices {:?}, word {}, M = {}\n", c.subcase, c.pair, c.word, c.modulus);
                for m in &c.members {
                    s += &format!("  shift {}: genus {}, {} deck elements\n", m.shift, m.surface.genus, m.elements.len());
                }
                s
            };
            emit(&common, text)
        }
        Command::Unfold { common, steps, start, dir, orbit_depth, svg_out, orbit_svg } => {
            let spec = read_spec(&common)?;
            let PolygonBody::Vertices(p) = &spec.body else {
                return Err(CliError::Validation("unfold needs a spec with `vertices`".into()));
            };
            let start = match start {
                Some(v) => point(&v, "--start")?,
                None => p.vertices().iter().sum::<Point>() / p.len() as f64,
            };
            let run = report::unfold_polygon(p, start, point(&dir, "--dir")?, steps, orbit_depth)?;
            if let Some(path) = svg_out {
                unfold::write_svg(&path, &unfold::render_unfolding_svg(p, &run.record, &SvgStyle::default()))?;
            }
            if let Some(path) = orbit_svg {
                unfold::write_svg(&path, &unfold::render_orbit_svg(&run.orbit, &SvgStyle::default()))?;
            }
            let e = &run.entry;
            let text = if common.json {
                json(e)
            } else {
                format!(
                    "{} crossings, halted by {}; collinearity defect {}; direction orbit: {}\n",
                    e.crossings, e.halt, e.collinearity_defect, e.orbit.verdict
                )
            };
            emit(&common, text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
