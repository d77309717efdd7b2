use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use gauss_triplets::arith::{gauss_sqrt, RadicalSum};
use gauss_triplets::correspondence::{
    to_zero_sum, triplet_to_pyth_int, triplet_to_triple, triplets_from_triple, ArithTriplet, LegTriple, ZeroSumTriple,
};
use gauss_triplets::fixtures::{self, Fixture, FixtureId};
use gauss_triplets::grid::{gap_recover, magic_report, GapBasis, MagicSquare};
use gauss_triplets::json::{
    candidate_to_value, family_to_value, grid_from_value, grid_to_value, legs_to_value, pseudo_to_value, record_from_value,
    triplet_to_value, zero_sum_to_value, Record,
};
use gauss_triplets::search::{gap_candidates_streaming, SearchConfig, SearchRing};
use gauss_triplets::siblings::{
    grid_siblings, grid_siblings_float, log_log_slope, origin_shift_study, pseudo_grid, pseudo_grid_float, Direction,
    PseudoOptions, NEAR_MISS_THRESHOLD,
};
use gauss_triplets::svg::{emit_svg, plot_grid, plot_triple, plot_triplet, PlotOptions};
use gauss_triplets::{Error, GaussInt};

/// Arithmetic triplets of Gaussian squares, slant grids and their siblings.
#[derive(Parser)]
#[command(name = "gtrip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Line sums, squares and slant-grid structure of a 3×3 grid.
    Check {
        /// Grid JSON file, or `-` for stdin.
        grid: String,
    },
    /// A Pythagorean triple, its zero-sum form and its three triplets.
    Unfold {
        /// Comma-separated `a,b,c` with a² + b² = c² (or a zero-sum triple).
        triple: String,
        /// Read the input as α, β, γ with α² + β² + γ² = 0.
        #[arg(long)]
        zero_sum: bool,
    },
    /// The Pythagorean triple behind an arithmetic triplet.
    Fold {
        /// Comma-separated squares `L²,C²,R²`, or roots with `--roots`.
        values: String,
        #[arg(long)]
        roots: bool,
    },
    /// The sixteen siblings of a grid's eight lines.
    Siblings {
        grid: String,
        /// Also list the younger siblings.
        #[arg(long)]
        younger: bool,
        #[command(flatten)]
        backend: Backend,
    },
    /// A pseudo-grid from siblings of three parallel lines, with its error term.
    Pseudo {
        grid: String,
        #[arg(long, value_enum, default_value_t = Dir::Rows)]
        direction: Dir,
        /// Assemble younger siblings instead of older ones.
        #[arg(long)]
        younger: bool,
        #[command(flatten)]
        backend: Backend,
        #[arg(long, default_value_t = NEAR_MISS_THRESHOLD)]
        threshold: f64,
    },
    /// Error term of a slant grid shifted along the real axis.
    StudyOrigin {
        grid: String,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1e2, 1e3, 1e4, 1e5, 1e6])]
        shifts: Vec<f64>,
        #[arg(long, default_value_t = NEAR_MISS_THRESHOLD)]
        threshold: f64,
    },
    /// Slant grids assembled from triplets sharing a center, ranked by squares.
    Search {
        #[arg(long, value_enum, default_value_t = Ring::Gaussians)]
        ring: Ring,
        /// Largest component norm of the enumerated triples.
        #[arg(long)]
        norm_bound: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Smallest square count reported (5..=9).
        #[arg(long, default_value_t = 5)]
        floor: u8,
        /// Where to write certificates of all-square grids.
        #[arg(long, default_value = "certificate.json")]
        certificate: PathBuf,
        /// Print candidates to stderr as they are found.
        #[arg(long)]
        progress: bool,
    },
    /// SVG diagram of a grid, triple or triplet.
    Plot {
        /// Grid or triple/triplet JSON file, or `-` for stdin.
        input: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Draw siblings (grids) or the generated triplets (triples).
        #[arg(long)]
        siblings: bool,
        /// Draw older siblings turned a quarter about their centers.
        #[arg(long)]
        rotate_older: bool,
    },
    /// Print a built-in fixture as JSON.
    Fixture {
        #[arg(value_parser = parse_fixture)]
        name: FixtureId,
        /// Include cell roots.
        #[arg(long)]
        roots: bool,
    },
    /// A random slant grid, reproducible from its seed.
    RandomGrid {
        #[arg(long)]
        seed: u64,
        /// Largest absolute value of each basis component.
        #[arg(long, default_value_t = 50)]
        bound: i64,
        /// Draw Gaussian rather than integer components.
        #[arg(long)]
        gaussian: bool,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct Backend {
    /// Exact arithmetic (default).
    #[arg(long)]
    exact: bool,
    /// Floating point.
    #[arg(long)]
    float: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Rows,
    Cols,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Integers,
    Gaussians,
}

fn parse_fixture(s: &str) -> Result<FixtureId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_json(path: &str) -> anyhow::Result<Value> {
    let text = read_input(path)?;
    Ok(serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?)
}

fn read_grid(path: &str) -> anyhow::Result<MagicSquare> {
    Ok(grid_from_value(read_json(path)?)?)
}

fn parse_list(s: &str) -> Result<Vec<GaussInt>, Error> {
    s.split(',').map(str::parse).collect()
}

fn parse_three(s: &str) -> Result<[GaussInt; 3], Error> {
    let parts = parse_list(s)?;
    let n = parts.len();
    parts.try_into().map_err(|_| Error::Parse(format!("expected 3 comma-separated values, got {n}")))
}

fn print(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn unfold(triple: &str, zero_sum: bool) -> anyhow::Result<Value> {
    let [a, b, c] = parse_three(triple)?;
    let (legs, z) = if zero_sum {
        (None, ZeroSumTriple::new(a, b, c)?)
    } else {
        let legs = LegTriple::new(a, b, c)?;
        let z = to_zero_sum(&legs)?;
        (Some(legs), z)
    };
    let triplets = triplets_from_triple(&z);
    Ok(json!({
        "legs": legs.as_ref().map(legs_to_value),
        "zero_sum": zero_sum_to_value(&z),
        "triplets": triplets.iter().map(triplet_to_value).collect::<Vec<_>>(),
        "all_arithmetic": triplets.iter().all(ArithTriplet::is_arithmetic),
    }))
}

fn fold(values: &str, roots: bool) -> anyhow::Result<Value> {
    let [l, c, r] = parse_three(values)?;
    if !roots && [&l, &c, &r].iter().all(|v| v.is_real()) {
        if let Ok(legs) = triplet_to_pyth_int(&l.re, &c.re, &r.re) {
            let g = legs.to_gaussian();
            let z = to_zero_sum(&g)?;
            return Ok(json!({"legs": legs_to_value(&g), "zero_sum": zero_sum_to_value(&z)}));
        }
    }
    let triplet = if roots {
        ArithTriplet::new(l, c, r)
    } else {
        let root = |v: &GaussInt| gauss_sqrt(v).ok_or_else(|| Error::NotSquare(v.to_string()));
        ArithTriplet::new(root(&l)?, root(&c)?, root(&r)?)
    };
    let z = triplet_to_triple(&triplet)?;
    let [alpha, beta, gamma] = z.components();
    let minus_i = GaussInt::from_i64(0, -1);
    let legs = LegTriple::new(beta.clone() * minus_i.clone(), gamma.clone() * minus_i, alpha.clone())?;
    Ok(json!({"triplet": triplet_to_value(&triplet), "legs": legs_to_value(&legs), "zero_sum": zero_sum_to_value(&z)}))
}

fn check(sq: &MagicSquare) -> Value {
    let report = magic_report(sq);
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["gap_basis"] = match gap_recover(sq) {
        Ok(rec) => serde_json::to_value(&rec.basis).expect("serializable"),
        Err(e) => json!({"error": e.to_string()}),
    };
    v
}

fn siblings(sq: &MagicSquare, younger: bool, float: bool) -> anyhow::Result<Value> {
    let (mut v, backend) = if float {
        (family_to_value(&grid_siblings_float(sq), younger), "float")
    } else {
        (family_to_value(&grid_siblings(sq)?, younger), "exact")
    };
    v["backend"] = json!(backend);
    Ok(v)
}

fn pseudo(sq: &MagicSquare, opts: PseudoOptions, float: bool) -> anyhow::Result<Value> {
    let exact = if float { None } else { Some(pseudo_grid(sq, opts)) };
    let (mut v, backend) = match exact {
        Some(Ok(pg)) => (pseudo_to_value::<RadicalSum>(&pg), "exact"),
        Some(Err(Error::NotSquare(_))) | None => (pseudo_to_value(&pseudo_grid_float(sq, opts)?), "float"),
        Some(Err(e)) => return Err(e.into()),
    };
    v["backend"] = json!(backend);
    Ok(v)
}

fn study(sq: &MagicSquare, shifts: &[f64], threshold: f64) -> anyhow::Result<Value> {
    let basis = gap_recover(sq)?.basis;
    let points = origin_shift_study(&basis, shifts, threshold);
    let fit: Vec<(f64, f64)> =
        points.iter().filter(|p| p.shift > 0.0).filter_map(|p| p.abs_error.filter(|e| *e > 0.0).map(|e| (p.shift, e))).collect();
    let slope = (fit.len() >= 2).then(|| log_log_slope(&fit));
    Ok(json!({"basis": basis, "points": points, "log_log_slope": slope}))
}

fn search(cfg: &SearchConfig, certificate: &Path, progress: bool) -> anyhow::Result<()> {
    let outcome = gap_candidates_streaming(cfg, |c| {
        if progress {
            eprintln!("found {} squares at {}", c.square_count, c.basis);
        }
    })?;
    let mut out = io::stdout().lock();
    for c in &outcome.candidates {
        serde_json::to_writer(&mut out, &candidate_to_value(c))?;
        writeln!(out)?;
    }
    eprintln!(
        "{} triple classes, {} shared centers, {} candidates",
        outcome.triple_count,
        outcome.bucket_count,
        outcome.candidates.len()
    );
    if !outcome.certificates.is_empty() {
        let text = serde_json::to_string_pretty(&outcome.certificates)?;
        fs::write(certificate, text).with_context(|| format!("writing {}", certificate.display()))?;
        eprintln!("{} all-square grid(s); certificate written to {}", outcome.certificates.len(), certificate.display());
    }
    Ok(())
}

fn plot(input: &str, opts: PlotOptions) -> anyhow::Result<String> {
    let doc = read_json(input)?;
    let spec = if doc.get("cells").is_some() {
        plot_grid(&grid_from_value(doc)?, opts)
    } else {
        match record_from_value(&doc)? {
            Record::ZeroSum(z) => plot_triple(&z, opts),
            Record::Legs(legs) => plot_triple(&to_zero_sum(&legs)?, opts),
            Record::Triplet(t) => plot_triplet(&t),
        }
    };
    Ok(emit_svg(&spec))
}

fn fixture(id: FixtureId, roots: bool) -> anyhow::Result<Value> {
    Ok(match fixtures::load(id)? {
        Fixture::Grid(sq) => grid_to_value(&sq, roots),
        Fixture::Triple(z) => zero_sum_to_value(&z),
    })
}

fn random_grid(seed: u64, bound: i64, gaussian: bool) -> anyhow::Result<Value> {
    if bound < 1 {
        bail!(Error::Invalid { path: "bound".into(), reason: "must be positive".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let re = rng.gen_range(-bound..=bound);
        let im = if gaussian { rng.gen_range(-bound..=bound) } else { 0 };
        GaussInt::from_i64(re, im)
    };
    loop {
        let basis = GapBasis::new(draw(&mut rng), draw(&mut rng), draw(&mut rng));
        if !basis.is_degenerate() {
            return Ok(grid_to_value(&MagicSquare::from_basis(&basis), false));
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Check { grid } => print(&check(&read_grid(&grid)?)),
        Command::Unfold { triple, zero_sum } => print(&unfold(&triple, zero_sum)?),
        Command::Fold { values, roots } => print(&fold(&values, roots)?),
        Command::Siblings { grid, younger, backend } => print(&siblings(&read_grid(&grid)?, younger, backend.float)?),
        Command::Pseudo { grid, direction, younger, backend, threshold } => {
            let direction = match direction {
                Dir::Rows => Direction::Rows,
                Dir::Cols => Direction::Cols,
            };
            let opts = PseudoOptions { direction, younger, threshold };
            print(&pseudo(&read_grid(&grid)?, opts, backend.float)?)
        }
        Command::StudyOrigin { grid, shifts, threshold } => print(&study(&read_grid(&grid)?, &shifts, threshold)?),
        Command::Search { ring, norm_bound, workers, floor, certificate, progress } => {
            let ring = match ring {
                Ring::Integers => SearchRing::Integers,
                Ring::Gaussians => SearchRing::Gaussians,
            };
            let cfg = SearchConfig { norm_bound, ring, worker_count: workers, score_floor: floor };
            search(&cfg, &certificate, progress)
        }
        Command::Plot { input, output, siblings, rotate_older } => {
            let svg = plot(&input, PlotOptions { siblings, rotate_older })?;
            fs::write(&output, svg).with_context(|| format!("writing {}", output.display()))
        }
        Command::Fixture { name, roots } => print(&fixture(name, roots)?),
        Command::RandomGrid { seed, bound, gaussian } => print(&random_grid(seed, bound, gaussian)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Error>()) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
