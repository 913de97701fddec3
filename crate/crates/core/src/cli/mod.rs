//! Command-line front end.
//!
//! Every subcommand prints a JSON report (CSV for the butterfly sweep) to
//! stdout, or writes it to `--out`. With `--out`, a run manifest is written
//! next to it as `<out>.manifest.json`; `replay <manifest>` re-runs the same
//! computation and reproduces the output byte for byte.
//!
//! Exit codes: 0 when every internal check passes, 1 when a bound fails to
//! enclose its oracle, 2 on invalid input.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::continuum::{grid_extrema, zeeman_profile, zeeman_upper_bound, Axis, GridDomain};
use crate::discrete::{
    bloch_matrix, coprime_fractions, hofstadter_bottom, nonsym_bounds, nonsym_bounds_real,
    tighten_bounds, DiscreteTestVector, PeriodicPotential,
};
use crate::error::{Error, Result};
use crate::io;
use crate::linalg::{is_irreducible, perron_root};
use crate::manybody::{self, identical_coulomb_bounds, maximize_fn, AlphaSource};
use crate::optimize::OptimizerConfig;

/// Slack granted to containment checks against the dense oracle.
pub const CHECK_SLACK: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "eigenbounds",
    version,
    about = "Local-energy eigenvalue bounds"
)]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Globals {
    /// Seed for every random choice made by the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweeps and multi-start searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output file; a manifest is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Tightened bounds on the bottom of a Harper spectrum.
    Harper(HarperArgs),
    /// Bottom-edge sweep over rational fluxes, as CSV.
    Butterfly(ButterflyArgs),
    /// Multi-start maximization of the angular function F_N.
    Fnmax(FnmaxArgs),
    /// Ground-energy bounds for identical attractive Coulomb particles.
    NbodyBounds(NbodyArgs),
    /// Upper bound for hydrogen in a magnetic field.
    Zeeman(ZeemanArgs),
    /// Local-energy bounds for a (possibly non-symmetric) matrix.
    Perron(PerronArgs),
    /// Re-run the command recorded in a manifest.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HarperArgs {
    #[arg(long = "m")]
    pub m: usize,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "v0")]
    pub v0: f64,
    /// Target width of the enclosure.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0.0)]
    pub eta2: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ButterflyArgs {
    #[arg(long)]
    pub n_max: usize,
    #[arg(long = "v0", default_value_t = 1.0)]
    pub v0: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FnmaxArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "d", default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iterations: usize,
    /// Stop a start once the gradient norm falls below this.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Where to write the best configuration; defaults to `<out>.configuration.txt`.
    #[arg(long)]
    pub config_out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct NbodyArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "d", default_value_t = 3)]
    pub d: usize,
    /// lemma3, lemma4, c5, c6, c8, cinf or custom:<supFM>:<M>.
    #[arg(long, default_value = "lemma3")]
    pub alpha_source: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ZeemanArgs {
    #[arg(long = "b")]
    pub b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 101)]
    pub rho_count: usize,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub z_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub z_max: f64,
    #[arg(long, default_value_t = 101)]
    pub z_count: usize,
    /// Also export the sampled profile as CSV.
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PerronArgs {
    /// Matrix file: `rows cols`, then row-major entries.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Test vector file, one positive real per line; defaults to all ones.
    #[arg(long)]
    pub phi: Option<PathBuf>,
    /// Entries are `re im` pairs.
    #[arg(long)]
    pub complex: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Command,
    pub seed: u64,
    pub jobs: usize,
    pub version: String,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn read(path: &Path) -> Result<Self> {
        let file = File::open(path)?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| Error::InvalidArgument(format!("bad manifest {}: {e}", path.display())))
    }
}

/// Path of the manifest that accompanies an output file.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Harper(_) => "harper",
        Command::Butterfly(_) => "butterfly",
        Command::Fnmax(_) => "fnmax",
        Command::NbodyBounds(_) => "nbody-bounds",
        Command::Zeeman(_) => "zeeman",
        Command::Perron(_) => "perron",
        Command::Replay(_) => "replay",
    }
}

/// Output text plus whether every internal check passed.
struct Outcome {
    text: String,
    checks_passed: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct HarperReport {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "V0")]
    v0: f64,
    eta2: f64,
    lower: f64,
    upper: f64,
    exact: f64,
    width: f64,
    iterations: usize,
    power_steps: usize,
    converged: bool,
}

fn harper(a: &HarperArgs) -> Result<Outcome> {
    let potential = PeriodicPotential::harper(a.m, a.n, a.v0)?;
    let config = OptimizerConfig::new(a.max_iterations, a.tolerance, 1, 0)?;
    let t = tighten_bounds(&potential, &DiscreteTestVector::ones(a.n), a.eta2, &config)?;
    let exact = bloch_matrix(&potential, a.eta2)?.exact_ground_energy()?.e0;
    let report = HarperReport {
        m: a.m,
        n: a.n,
        v0: a.v0,
        eta2: a.eta2,
        lower: t.bounds.lower,
        upper: t.bounds.upper,
        exact,
        width: t.bounds.width(),
        iterations: t.iterations,
        power_steps: t.power_steps,
        converged: t.converged,
    };
    Ok(Outcome {
        text: json(&report),
        checks_passed: t.bounds.encloses(exact, CHECK_SLACK),
    })
}

fn butterfly(a: &ButterflyArgs) -> Result<Outcome> {
    if a.n_max < 3 {
        return Err(Error::PeriodTooSmall(a.n_max));
    }
    let config = OptimizerConfig::new(a.max_iterations, a.tolerance, 1, 0)?;
    let rows = hofstadter_bottom(&coprime_fractions(a.n_max), a.v0, &config)?;
    let mut buf = Vec::new();
    io::write_butterfly_csv(&mut buf, &rows)?;
    let checks_passed = rows
        .iter()
        .all(|r| r.lower - CHECK_SLACK <= r.exact && r.exact <= r.upper + CHECK_SLACK);
    Ok(Outcome {
        text: String::from_utf8(buf).expect("CSV is UTF-8"),
        checks_passed,
    })
}

/// Best known value of `sup F_N` in three dimensions; proven for `N ≤ 4`.
pub fn known_reference(n: usize, d: usize) -> Option<f64> {
    if d != 3 {
        return None;
    }
    match n {
        3 => Some(1.5),
        4 => Some(6.0),
        5 => Some(manybody::bipyramid_value(manybody::h0_root())),
        6 => Some(manybody::octahedron_value()),
        8 => Some(manybody::twisted_squares_value()),
        _ => None,
    }
}

#[derive(Serialize)]
struct FnmaxReport {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    best_value: f64,
    known_reference: Option<f64>,
    gap_to_reference: Option<f64>,
    restarts: usize,
    best_start: usize,
    configuration: Vec<Vec<f64>>,
}

fn fnmax(a: &FnmaxArgs, seed: u64, out: Option<&Path>) -> Result<Outcome> {
    if a.d < 2 {
        return Err(Error::InvalidDimension(a.d));
    }
    let config = OptimizerConfig::new(a.max_iterations, a.tolerance, a.restarts, seed)?;
    let best = maximize_fn(a.n, a.d, &config)?;
    let reference = known_reference(a.n, a.d);
    let config_path = a.config_out.clone().or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".configuration.txt");
            PathBuf::from(s)
        })
    });
    if let Some(path) = config_path {
        io::write_configuration(File::create(path)?, &best.best_config)?;
    }
    // only the triangle and tetrahedron maxima are proven, so only they can be violated
    let proven = match a.n {
        3 => Some(1.5),
        4 => Some(6.0),
        _ => None,
    };
    let checks_passed = proven.is_none_or(|sup| best.best_value <= sup + 1e-9);
    let report = FnmaxReport {
        n: a.n,
        d: a.d,
        best_value: best.best_value,
        known_reference: reference,
        gap_to_reference: reference.map(|r| r - best.best_value),
        restarts: a.restarts,
        best_start: best.best_start,
        configuration: best.best_config.points().to_vec(),
    };
    Ok(Outcome {
        text: json(&report),
        checks_passed,
    })
}

fn nbody(a: &NbodyArgs) -> Result<Outcome> {
    let source: AlphaSource = a.alpha_source.parse()?;
    let bounds = identical_coulomb_bounds(a.n, a.d, source)?;
    Ok(Outcome {
        checks_passed: bounds.lower <= bounds.upper,
        text: json(&bounds),
    })
}

#[derive(Serialize)]
struct ZeemanReport {
    #[serde(rename = "B")]
    b: f64,
    analytic: f64,
    sampled: f64,
    argmax: crate::profile::Site,
    rigorous: bool,
    grid_points: usize,
}

fn zeeman(a: &ZeemanArgs) -> Result<Outcome> {
    if !(a.b >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "B must be >= 0, got {}",
            a.b
        )));
    }
    let grid = GridDomain::new(vec![
        Axis::new(a.rho_min, a.rho_max, a.rho_count)?,
        Axis::new(a.z_min, a.z_max, a.z_count)?,
    ])?;
    let (analytic, sampled) = zeeman_upper_bound(a.b, &grid)?;
    let profile = zeeman_profile(a.b, &grid)?;
    let bounds = grid_extrema(&profile)?;
    if let Some(path) = &a.profile {
        io::write_profile_csv(File::create(path)?, &profile)?;
    }
    let report = ZeemanReport {
        b: a.b,
        analytic,
        sampled,
        argmax: bounds.argmax,
        rigorous: false,
        grid_points: grid.len(),
    };
    Ok(Outcome {
        text: json(&report),
        checks_passed: sampled <= analytic + 1e-12,
    })
}

#[derive(Serialize)]
struct PerronReport {
    rows: usize,
    re_lower: f64,
    re_upper: f64,
    im_lower: f64,
    im_upper: f64,
    /// Present for entrywise nonnegative irreducible real matrices.
    perron_root: Option<f64>,
    contained: Option<bool>,
}

fn perron(a: &PerronArgs) -> Result<Outcome> {
    let open = |p: &Path| -> Result<BufReader<File>> { Ok(BufReader::new(File::open(p)?)) };
    let phi_for = |n: usize| -> Result<Vec<f64>> {
        match &a.phi {
            Some(p) => io::read_vector(open(p)?),
            None => Ok(vec![1.0; n]),
        }
    };
    let (bounds, rows, root) = if a.complex {
        let m = io::read_complex_matrix(open(&a.matrix)?)?;
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        (nonsym_bounds(&m, &phi_for(m.rows())?)?, m.rows(), None)
    } else {
        let m = io::read_matrix(open(&a.matrix)?)?;
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let bounds = nonsym_bounds_real(&m, &phi_for(m.rows())?)?;
        let root = if m.data().iter().all(|&x| x >= 0.0) && is_irreducible(&m) {
            Some(perron_root(&m, a.tolerance, 1_000_000)?.0)
        } else {
            None
        };
        (bounds, m.rows(), root)
    };
    let contained = root.map(|r| bounds.encloses(num_complex::Complex64::new(r, 0.0), CHECK_SLACK));
    let report = PerronReport {
        rows,
        re_lower: bounds.re_lower,
        re_upper: bounds.re_upper,
        im_lower: bounds.im_lower,
        im_upper: bounds.im_upper,
        perron_root: root,
        contained,
    };
    Ok(Outcome {
        text: json(&report),
        checks_passed: contained.unwrap_or(true),
    })
}

fn execute(command: &Command, seed: u64, out: Option<&Path>) -> Result<Outcome> {
    match command {
        Command::Harper(a) => harper(a),
        Command::Butterfly(a) => butterfly(a),
        Command::Fnmax(a) => fnmax(a, seed, out),
        Command::NbodyBounds(a) => nbody(a),
        Command::Zeeman(a) => zeeman(a),
        Command::Perron(a) => perron(a),
        Command::Replay(_) => Err(Error::InvalidArgument("nested replay".into())),
    }
}

fn run_command(
    command: Command,
    seed: u64,
    jobs: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<bool> {
    if jobs == 0 {
        return Err(Error::InvalidArgument("--jobs must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| execute(&command, seed, out))?;
    match out {
        Some(path) => {
            File::create(path)?.write_all(outcome.text.as_bytes())?;
            let manifest = RunManifest {
                subcommand: subcommand_name(&command).to_string(),
                params: command,
                seed,
                jobs,
                version: env!("CARGO_PKG_VERSION").to_string(),
                duration_seconds: start.elapsed().as_secs_f64(),
            };
            File::create(manifest_path(path))?.write_all(json(&manifest).as_bytes())?;
        }
        None => stdout.write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome.checks_passed)
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let Globals { seed, jobs, out } = cli.globals;
    let result = match cli.command {
        Command::Replay(r) => RunManifest::read(&r.manifest)
            .and_then(|m| run_command(m.params, m.seed, jobs, out.as_deref(), stdout)),
        command => run_command(command, seed, jobs, out.as_deref(), stdout),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => {
            let _ = writeln!(
                stderr,
                "check failed: a bound does not enclose its reference value"
            );
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Runs with the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("eigenbounds").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn harper_reports() {
        let (code, out, _) = call(&["harper", "--m", "1", "--n", "4", "--v0", "0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["exact"].as_f64().unwrap(), -2.0);
        assert_eq!(v["lower"].as_f64().unwrap(), -2.0);
        assert_eq!(v["upper"].as_f64().unwrap(), -2.0);
        let (code, _, err) = call(&["harper", "--m", "2", "--n", "4", "--v0", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("coprime"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["nbody-bounds", "--n", "3", "--d", "1"]).0, 2);
        assert_eq!(call(&["zeeman", "--b", "-1"]).0, 2);
        assert_eq!(call(&["fnmax", "--n", "2"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn nbody_json_fields() {
        let (code, out, _) = call(&["nbody-bounds", "--n", "10", "--alpha-source", "c8"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["N"], 10);
        assert_eq!(v["d"], 3);
        assert_eq!(v["conjectural"], true);
        assert_eq!(v["alpha_source"], "c8");
        assert!(v["upper"].as_f64().unwrap() == -41.25);
    }

    #[test]
    fn butterfly_rows() {
        let (code, out, _) = call(&["butterfly", "--n-max", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 9);
    }
}
