//! Command-line front end: file I/O, subcommands and SVG output.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 rejected input
//! (invalid or not normal), 3 an internal check failed.

pub mod format;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use stairpack::extremal::{certify_bound, lattice_clip, optimal_lattice};
use stairpack::geom::Point;
use stairpack::packing::{normalize, search, validate, window_density, PackingError};
use stairpack::rational::{parse_rational, to_f64};
use stairpack::shadow::{
    sample_multiplicity, sample_points, Comparison, ConvexPolygon, Direction,
};
use stairpack::stair::{audit_family, build_stairs, StairError};
use stairpack::PackingInstance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_BUG: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stairpack", version, about = "Exact k-fold packings of the triangle (0,0), (1,0), (0,1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that no point lies in k+1 triangle interiors
    Validate { file: PathBuf },
    /// Build the stair polygons and audit them
    Stairify {
        file: PathBuf,
        /// Write a picture of the triangles and stairs
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the exact density bound certificate
    Certify { file: PathBuf },
    /// Print a verified optimal k-fold lattice
    Lattice {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..=8))]
        k: u32,
        /// Clip the lattice to the window [0,L]^2
        #[arg(long)]
        window: Option<u32>,
        /// Where to write the clipped packing (default: stdout)
        #[arg(long, requires = "window")]
        out: Option<PathBuf>,
    },
    /// Seeded randomized search for a valid packing
    Search {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
    },
    /// Separate coincident translates after shrinking by 1 - epsilon
    Normalize {
        file: PathBuf,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
    /// Sample the multiplicity of the k-fold shadow cells
    Shadow {
        file: PathBuf,
        /// Ray direction as `vx,vy`
        #[arg(long, default_value = "1,0")]
        dir: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Count only strictly nearer competitors
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn rejected(message: impl Into<String>) -> Self {
        Failure { code: EXIT_REJECTED, message: message.into() }
    }

    fn bug(message: impl Into<String>) -> Self {
        Failure { code: EXIT_BUG, message: message.into() }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Stairify { file, svg } => cmd_stairify(&file, svg.as_deref(), out),
        Command::Certify { file } => cmd_certify(&file, out),
        Command::Lattice { k, window, out: path } => cmd_lattice(k, window, path.as_deref(), out),
        Command::Search { k, l, seed, iters } => {
            emit(out, &format::serialize(&search(k, l, seed, iters)))
        }
        Command::Normalize { file, epsilon } => cmd_normalize(&file, &epsilon, out),
        Command::Shadow { file, dir, samples, strict, seed } => {
            cmd_shadow(&file, &dir, samples, strict, seed, out)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn load(path: &Path) -> Result<PackingInstance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// Rejects non-normal or invalid instances the way every stair command does.
fn require_normal_valid(p: &PackingInstance) -> Outcome {
    match p.require_normal_valid() {
        Ok(()) => Ok(()),
        Err(PackingError::NotNormal(a, b)) => Err(Failure::rejected(format!(
            "translates {a} and {b} coincide: not normal; run normalize"
        ))),
        Err(e) => Err(Failure::rejected(e.to_string())),
    }
}

fn stair_failure(e: StairError) -> Failure {
    match e {
        StairError::SubsetCapExceeded { .. } => Failure::rejected(e.to_string()),
        other => Failure::bug(other.to_string()),
    }
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> Outcome {
    let p = load(path)?;
    match validate(&p) {
        Ok(()) => emit(out, "OK\n"),
        Err(v) => {
            let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
            emit(out, &format!("VIOLATION translates {} share interior point {}\n", idx.join(","), v.witness))?;
            Err(Failure::rejected("not a valid packing"))
        }
    }
}

fn cmd_stairify(path: &Path, svg_path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let p = load(path)?;
    require_normal_valid(&p)?;
    let fam = build_stairs(&p).map_err(stair_failure)?;
    let mut text = String::from("index offset r n n* area\n");
    for i in 0..p.len() {
        let area = fam.stairs[i].area();
        text += &format!(
            "{i} {} {} {} {} {} ({:.4})\n",
            p.offsets()[i],
            fam.r[i],
            fam.n[i],
            fam.n_star[i],
            area,
            to_f64(&area)
        );
    }
    let budget = (2 * p.k() as usize - 1) * p.len();
    text += &format!("sum r = {} <= (2k-1)N = {}\n", fam.r_sum(), budget);
    let report = audit_family(&p, &fam);
    text += &report.to_string();
    emit(out, &text)?;
    if let Some(svg_path) = svg_path {
        write_file(svg_path, &svg::render(&p, Some(&fam)))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::bug("stair audit failed"))
    }
}

fn cmd_certify(path: &Path, out: &mut dyn Write) -> Outcome {
    let p = load(path)?;
    require_normal_valid(&p)?;
    if p.is_empty() {
        return Err(Failure::rejected("packing is empty"));
    }
    let cert = certify_bound(&p).map_err(|e| Failure::bug(e.to_string()))?;
    emit(out, &cert.to_string())?;
    if !cert.verdict {
        return Err(Failure::bug("density chain does not hold"));
    }
    if !cert.audit.all_passed() {
        return Err(Failure::bug(format!("stair audit failed:\n{}", cert.audit)));
    }
    Ok(())
}

fn cmd_lattice(k: u32, window: Option<u32>, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let b = optimal_lattice(k).map_err(|e| Failure::bug(e.to_string()))?;
    let density = b.density();
    let summary = format!(
        "basis u={} w={}\ndet {}\ndensity {} ({:.6})\n",
        b.u,
        b.w,
        b.det,
        density,
        to_f64(&density)
    );
    let Some(l) = window else { return emit(out, &summary) };
    if l == 0 {
        return Err(Failure::usage("window side must be positive"));
    }
    let clip = lattice_clip(&b, k, l).map_err(|e| Failure::bug(e.to_string()))?;
    let file = format::serialize(&clip);
    match path {
        Some(path) => {
            emit(out, &summary)?;
            let d = window_density(&clip);
            emit(out, &format!("window {l}: N={} density {}\n", d.n, d.window_density))?;
            write_file(path, &file)
        }
        None => emit(out, &file),
    }
}

fn cmd_normalize(path: &Path, epsilon: &str, out: &mut dyn Write) -> Outcome {
    let p = load(path)?;
    let eps = parse_rational(epsilon).map_err(|e| Failure::usage(format!("--epsilon: {e}")))?;
    let scaled = normalize(&p, &eps).map_err(|e| match e {
        PackingError::EpsilonOutOfRange(_) => Failure::usage(e.to_string()),
        other => Failure::rejected(other.to_string()),
    })?;
    let unit = scaled.to_unit_scale().map_err(|e| Failure::bug(e.to_string()))?;
    if unit.require_normal_valid().is_err() {
        return Err(Failure::bug("normalized instance failed validation"));
    }
    let header = format!(
        "# shrunk by 1-eps = {}, then scaled by {} into the window [0,{}]^2\n",
        scaled.scale,
        stairpack::rational::one() / &scaled.scale,
        unit.l()
    );
    emit(out, &(header + &format::serialize(&unit)))
}

fn parse_direction(text: &str) -> Result<Direction, Failure> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Failure::usage(format!("--dir expects `vx,vy`, got `{text}`")))?;
    let vx = parse_rational(a).map_err(|e| Failure::usage(format!("--dir: {e}")))?;
    let vy = parse_rational(b).map_err(|e| Failure::usage(format!("--dir: {e}")))?;
    Direction::new(Point::new(vx, vy)).map_err(|e| Failure::usage(format!("--dir: {e}")))
}

fn cmd_shadow(
    path: &Path,
    dir: &str,
    samples: usize,
    strict: bool,
    seed: u64,
    out: &mut dyn Write,
) -> Outcome {
    let p = load(path)?;
    let v = parse_direction(dir)?;
    if let Err(v) = validate(&p) {
        return Err(Failure::rejected(format!("not a valid packing: {v}")));
    }
    let tri = ConvexPolygon::unit_triangle();
    let family: Vec<ConvexPolygon> = p.offsets().iter().map(|o| tri.translate(o)).collect();
    let points = sample_points(&family, samples, seed);
    let cmp = if strict { Comparison::Strict } else { Comparison::Weak };
    let m = sample_multiplicity(&family, p.k(), &v, &points, cmp);
    let variant = if strict { "strict" } else { "weak" };
    let relation = if m.max <= p.k() as usize { "<=" } else { ">" };
    let mut text = format!(
        "{variant} comparison, direction {v}, seed {seed}, {} points\nmax multiplicity {} {relation} k = {}\n",
        m.points,
        m.max,
        p.k()
    );
    if let Some(at) = &m.at {
        text += &format!("first attained at {at}\n");
    }
    emit(out, &text)?;
    if !strict && m.max > p.k() as usize {
        return Err(Failure::bug("weak shadow cells overlap more than k times"));
    }
    Ok(())
}
