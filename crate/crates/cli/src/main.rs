//! Command-line surface: build realizations, query diagonals, run the
//! verification battery, export exact geometry.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use associahedra::dd::facet_cycles;
use associahedra::diagonal::{
    dg_formula, magical_pairs, normal_cone_pairs, pointwise_diagonal, sample_oracle, MatchingPair,
};
use associahedra::loday::{LodayRealization, ProductRealization, Weight};
use associahedra::operad::{compose, DEFAULT_DEPTH};
use associahedra::polytope::to_off;
use associahedra::rat::{format_q, QVector};
use associahedra::trees::{enumerate_binary_trees, enumerate_planar_trees};
use associahedra::verify::{self, CheckReport, VerifyConfig, MAX_ARITY};

#[derive(Parser)]
#[command(
    name = "associahedra",
    about = "Exact Loday realizations of the associahedra, their diagonal, and the operad structure",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// RNG seed for sampling commands
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Recursion depth for transition-map evaluation
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Largest arity the verification battery touches (hard cap 8)
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Sample count for randomized checks
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// key=value config file; precedence: flags > file > defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Off,
}

#[derive(Subcommand)]
enum Cmd {
    /// Planar tree enumeration
    Trees {
        #[command(subcommand)]
        cmd: TreesCmd,
    },
    /// Build weighted Loday realizations
    Loday {
        #[command(subcommand)]
        cmd: LodayCmd,
    },
    /// Diagonal queries and the cell oracles
    Diag {
        #[command(subcommand)]
        cmd: DiagCmd,
    },
    /// Operad compositions
    Operad {
        #[command(subcommand)]
        cmd: OperadCmd,
    },
    /// Simplex and cube diagonals
    Classics {
        #[command(subcommand)]
        cmd: ClassicsCmd,
    },
    /// Run the full invariant battery; exits 1 on any failure
    Verify,
}

#[derive(Subcommand)]
enum TreesCmd {
    /// List planar (binary) trees with the given number of leaves
    Enumerate {
        #[arg(long)]
        arity: usize,
        /// Binary trees only (the vertices)
        #[arg(long, conflicts_with = "all")]
        binary: bool,
        /// All planar trees (the faces)
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum LodayCmd {
    /// Construct K_ω and emit its labeled V- and H-representations
    Build {
        /// Comma-separated positive integer weights, e.g. 1,1,1,1
        #[arg(long)]
        weights: String,
        /// OFF export only: approximate coordinates as decimals for viewers
        /// that cannot read exact rationals
        #[arg(long)]
        decimal: bool,
    },
}

#[derive(Subcommand)]
enum DiagCmd {
    /// Enumerate the diagonal's cells by the chosen oracle
    Cells {
        #[arg(long)]
        arity: usize,
        /// Optional weights (cones/sample oracles only; defaults to all ones)
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value = "magical")]
        oracle: Oracle,
        /// Sample count for the sampling oracle
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Evaluate the diagonal at one rational point
    Point {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        weights: Option<String>,
        /// Comma-separated rational coordinates, e.g. "3/2,2,5/2"
        #[arg(long)]
        z: String,
    },
    /// Cross-check every cell oracle up to an arity
    Verify,
    /// The unsigned tensor expression of the cellular diagonal
    Dg {
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Magical,
    Cones,
    Sample,
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Pointwise partial composition K_m × K_n -> K_{m+n-1}
    Compose {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: usize,
        /// Point of K_m (comma-separated rationals; empty for K_1)
        #[arg(long, default_value = "")]
        x: String,
        /// Point of K_n
        #[arg(long, default_value = "")]
        y: String,
    },
    /// Operad-axiom checks up to a total arity
    Verify,
}

#[derive(Subcommand)]
enum ClassicsCmd {
    /// Simplex diagonal in closed form
    Aw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: String,
    },
    /// Cube diagonal in closed form
    Cube {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: String,
    },
}

/// Resolved configuration: flags > config file > defaults.
struct RunConfig {
    seed: u64,
    samples: usize,
    max_arity: usize,
    depth: u32,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve_config(g: &GlobalOpts) -> Result<RunConfig> {
    let mut seed: u64 = 2020;
    let mut samples: usize = 100;
    let mut max_arity: usize = 5;
    let mut depth: u32 = DEFAULT_DEPTH;
    let mut format = Format::Text;
    let mut out: Option<PathBuf> = None;

    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {} is not key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "seed" => seed = value.parse().context("config seed")?,
                "samples" => samples = value.parse().context("config samples")?,
                "max_arity" => max_arity = value.parse().context("config max_arity")?,
                "depth" => depth = value.parse().context("config depth")?,
                "format" => {
                    format = match value {
                        "json" => Format::Json,
                        "text" => Format::Text,
                        "off" => Format::Off,
                        other => bail!("config format {other:?} (expected json|text|off)"),
                    }
                }
                "out" => out = Some(PathBuf::from(value)),
                other => bail!("unknown config key {other:?}"),
            }
        }
    }
    if let Some(s) = g.seed {
        seed = s;
    }
    if let Some(s) = g.samples {
        samples = s;
    }
    if let Some(m) = g.max_arity {
        max_arity = m;
    }
    if let Some(d) = g.depth {
        depth = d;
    }
    if let Some(f) = g.format {
        format = f;
    }
    if let Some(o) = &g.out {
        out = Some(o.clone());
    }
    if max_arity > MAX_ARITY {
        bail!("max arity {max_arity} exceeds the guard {MAX_ARITY}");
    }
    if depth < 1 {
        bail!("depth must be at least 1");
    }
    Ok(RunConfig { seed, samples, max_arity, depth, format, out })
}

fn parse_weights(s: &str) -> Result<Weight> {
    let entries: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| anyhow!("weight {p:?}: {e}")))
        .collect::<Result<_>>()?;
    if entries.is_empty() || entries.contains(&0) {
        bail!("weights must be positive integers");
    }
    Ok(Weight(entries))
}

fn parse_point(s: &str) -> Result<QVector> {
    QVector::parse(s).map_err(|e| anyhow!("{e}"))
}

fn emit(cfg: &RunConfig, text: String) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            f.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                f.write_all(b"\n")?;
            }
        }
        None => {
            println!("{text}");
        }
    }
    Ok(())
}

fn pairs_output(cfg: &RunConfig, header: Value, pairs: &[MatchingPair]) -> String {
    match cfg.format {
        Format::Json | Format::Off => {
            let mut obj = header;
            obj["pairs"] = Value::Array(pairs.iter().map(|p| p.to_json()).collect());
            obj.to_string()
        }
        Format::Text => pairs
            .iter()
            .map(|p| format!("{} ⊗ {}", p.f, p.g))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn point_pair_output(cfg: &RunConfig, z: &QVector, lo: &QVector, hi: &QVector, extra: Option<(&str, &str)>) -> String {
    match cfg.format {
        Format::Json | Format::Off => {
            let mut obj = json!({
                "z": z.0.iter().map(format_q).collect::<Vec<_>>(),
                "lo": lo.0.iter().map(format_q).collect::<Vec<_>>(),
                "hi": hi.0.iter().map(format_q).collect::<Vec<_>>(),
            });
            if let Some((lf, hf)) = extra {
                obj["lo_face"] = json!(lf);
                obj["hi_face"] = json!(hf);
            }
            obj.to_string()
        }
        Format::Text => match extra {
            Some((lf, hf)) => format!("z = {z}\nlo = {lo} on face {lf}\nhi = {hi} on face {hf}"),
            None => format!("z = {z}\nlo = {lo}\nhi = {hi}"),
        },
    }
}

fn reports_output(cfg: &RunConfig, reports: &[CheckReport]) -> String {
    match cfg.format {
        Format::Json | Format::Off => {
            Value::Array(reports.iter().map(|r| r.to_json()).collect()).to_string()
        }
        Format::Text => reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"),
    }
}

fn guard_arity(n: usize) -> Result<()> {
    if n > MAX_ARITY {
        bail!("arity {n} exceeds the guard {MAX_ARITY}");
    }
    Ok(())
}

/// Ok(true) = success, Ok(false) = verification failure (exit 1).
fn run(cli: Cli) -> Result<bool> {
    let cfg = resolve_config(&cli.global)?;
    match cli.cmd {
        Cmd::Trees { cmd: TreesCmd::Enumerate { arity, binary, all } } => {
            guard_arity(arity)?;
            let (kind, trees) = if all {
                ("all", enumerate_planar_trees(arity)?)
            } else {
                // --binary is the default
                let _ = binary;
                ("binary", enumerate_binary_trees(arity)?)
            };
            let text = match cfg.format {
                Format::Json | Format::Off => json!({
                    "arity": arity,
                    "kind": kind,
                    "count": trees.len(),
                    "trees": trees.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
                })
                .to_string(),
                Format::Text => trees
                    .iter()
                    .map(|t| t.encode())
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&cfg, text)?;
        }
        Cmd::Loday { cmd: LodayCmd::Build { weights, decimal } } => {
            let w = parse_weights(&weights)?;
            guard_arity(w.len())?;
            let k = LodayRealization::build(w, None)?;
            let text = match cfg.format {
                Format::Off => {
                    let cycles = facet_cycles(&k.vertices, &k.halfspaces)?;
                    to_off(&k.vertices, &cycles, decimal)
                }
                Format::Json => k.to_json().to_string(),
                Format::Text => {
                    let mut lines = Vec::new();
                    for (t, p) in k.vertex_trees().iter().zip(k.vertices.vertices.iter()) {
                        lines.push(format!("vertex {t} at {p}"));
                    }
                    for (t, h) in k.facet_trees().iter().zip(k.halfspaces.inequalities.iter()) {
                        lines.push(format!("facet {t}: {} >= {}", h.normal, format_q(&h.rhs)));
                    }
                    lines.join("\n")
                }
            };
            emit(&cfg, text)?;
        }
        Cmd::Diag { cmd } => match cmd {
            DiagCmd::Cells { arity, weights, oracle, trials } => {
                guard_arity(arity)?;
                let realization = match &weights {
                    Some(w) => {
                        let w = parse_weights(w)?;
                        if w.len() != arity {
                            bail!("weights have length {} but arity is {arity}", w.len());
                        }
                        ProductRealization::single(LodayRealization::build(w, None)?)?
                    }
                    None => ProductRealization::standard(arity)?,
                };
                let (name, pairs) = match oracle {
                    Oracle::Magical => ("magical", magical_pairs(arity)?),
                    Oracle::Cones => ("cones", normal_cone_pairs(&realization)?),
                    Oracle::Sample => (
                        "sample",
                        sample_oracle(&realization, trials.unwrap_or(cfg.samples), cfg.seed)?,
                    ),
                };
                let header = json!({ "arity": arity, "oracle": name, "count": pairs.len() });
                emit(&cfg, pairs_output(&cfg, header, &pairs))?;
            }
            DiagCmd::Point { arity, weights, z } => {
                guard_arity(arity)?;
                let realization = match &weights {
                    Some(w) => {
                        let w = parse_weights(w)?;
                        if w.len() != arity {
                            bail!("weights have length {} but arity is {arity}", w.len());
                        }
                        ProductRealization::single(LodayRealization::build(w, None)?)?
                    }
                    None => ProductRealization::standard(arity)?,
                };
                let z = parse_point(&z)?;
                let res = pointwise_diagonal(&realization, &z)?;
                let lo_face = res.lo_face.encode();
                let hi_face = res.hi_face.encode();
                emit(
                    &cfg,
                    point_pair_output(&cfg, &res.z, &res.lo, &res.hi, Some((&lo_face, &hi_face))),
                )?;
            }
            DiagCmd::Verify => {
                let mut reports = Vec::new();
                for n in 2..=cfg.max_arity {
                    reports.push(verify::check_magical_vs_cones(n));
                }
                for n in 2..=cfg.max_arity.min(5) {
                    reports.push(verify::check_magical_vs_lower_faces(n));
                }
                reports.push(verify::check_sections(cfg.max_arity, cfg.samples, cfg.seed));
                let ok = reports.iter().all(|r| r.status);
                emit(&cfg, reports_output(&cfg, &reports))?;
                return Ok(ok);
            }
            DiagCmd::Dg { arity } => {
                guard_arity(arity)?;
                let (text, json_value) = dg_formula(arity)?;
                let rendered = match cfg.format {
                    Format::Json | Format::Off => {
                        json!({ "arity": arity, "terms": json_value }).to_string()
                    }
                    Format::Text => text,
                };
                emit(&cfg, rendered)?;
            }
        },
        Cmd::Operad { cmd } => match cmd {
            OperadCmd::Compose { m, i, n, x, y } => {
                guard_arity(m + n - 1)?;
                let x = parse_point(&x)?;
                let y = parse_point(&y)?;
                let z = compose(m, i, n, &x, &y, cfg.depth)?;
                let text = match cfg.format {
                    Format::Json | Format::Off => json!({
                        "m": m, "i": i, "n": n, "depth": cfg.depth,
                        "point": z.0.iter().map(format_q).collect::<Vec<_>>(),
                    })
                    .to_string(),
                    Format::Text => format!("{z}"),
                };
                emit(&cfg, text)?;
            }
            OperadCmd::Verify => {
                let total = cfg.max_arity.min(6);
                let reports = vec![
                    verify::check_operad_cellular(total),
                    verify::check_operad_vertices(total),
                    verify::check_operad_diagonal_compat(total.min(5)),
                    verify::check_transition_bound(cfg.depth, (cfg.samples / 10).max(3), cfg.seed),
                ];
                let ok = reports.iter().all(|r| r.status);
                emit(&cfg, reports_output(&cfg, &reports))?;
                return Ok(ok);
            }
        },
        Cmd::Classics { cmd } => match cmd {
            ClassicsCmd::Aw { n, z } => {
                let z = parse_point(&z)?;
                let (lo, hi) = associahedra::classics::aw_diagonal(n, &z)?;
                emit(&cfg, point_pair_output(&cfg, &z, &lo, &hi, None))?;
            }
            ClassicsCmd::Cube { n, z } => {
                let z = parse_point(&z)?;
                let (lo, hi) = associahedra::classics::cube_diagonal(n, &z)?;
                emit(&cfg, point_pair_output(&cfg, &z, &lo, &hi, None))?;
            }
        },
        Cmd::Verify => {
            let vcfg = VerifyConfig {
                max_arity: cfg.max_arity,
                samples: cfg.samples,
                seed: cfg.seed,
                depth: cfg.depth,
            };
            let reports = verify::run_all(&vcfg);
            let ok = reports.iter().all(|r| r.status);
            emit(&cfg, reports_output(&cfg, &reports))?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
