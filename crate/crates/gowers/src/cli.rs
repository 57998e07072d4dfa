//! Command-line surface.
//!
//! Every command reads explicit input paths, writes to `--out` (or stdout)
//! and never mutates its inputs.  Exit codes: 0 on success, 1 when a checked
//! property fails (with a witness printed), 2 on input errors.  All floats
//! are printed with 12 significant digits and CSV uses `.` as the decimal
//! separator, so identical configurations produce byte-identical reports.

use crate::cubes::{check_cocycle, Cocycle, Cubespace};
use crate::decompose::{default_schedule, u2_decompose, u2_inverse_certificate};
use crate::group::{fourier_transform, GroupFunction};
use crate::heisenberg::{heis_sequence, heis_sequence_direct};
use crate::moments::{
    cayley_hypergraph_density, convergence_report, example1_limit, example1_sequence,
    example2_limit, example2_sequence, moment_exact, moment_sampled, sample_dn, EvalStrategy,
    MomentSpec,
};
use crate::norms::{gowers_norm_exact, gowers_norm_sampled, u2_via_fourier};
use crate::sampling::SeedStream;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Exit status of a command run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    PropertyFailure,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Formats a float with 12 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{} {}", fmt_f64(z.re), fmt_f64(z.im))
}

#[derive(Parser, Debug)]
#[command(
    name = "gowers",
    about = "Uniformity norms, cube structures and configuration moments on finite abelian groups",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Seed for every sampled path.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Absolute tolerance for the checks this command performs.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// U_1..U_k norms of a function, with the L^{2^{k-1}} bound check.
    Norm {
        function: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Exact evaluation (the default).
        #[arg(long, conflicts_with = "sampled")]
        exact: bool,
        /// Monte-Carlo sample count; exact evaluation when omitted.
        #[arg(long)]
        sampled: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Full Fourier coefficient table, with Parseval and inversion checks.
    Fourier {
        function: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// A configuration moment of a function.
    Moments {
        function: PathBuf,
        spec: PathBuf,
        /// Exact evaluation (the default).
        #[arg(long, conflicts_with = "sampled")]
        exact: bool,
        #[arg(long)]
        sampled: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Samples of the joint subset-sum distribution D_n(f), as CSV.
    DnSample {
        function: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Edge density of the Cayley hypergraph of a 0/1-valued function.
    Cayley {
        function: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Convergence table for the built-in example sequences (1 or 2).
    Converge {
        #[arg(long)]
        example: u32,
        /// Comma-separated list of group sizes m (may be empty).
        #[arg(long, default_value = "")]
        ms: String,
        /// Optional JSON file with a list of moment specs.
        #[arg(long)]
        specs: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// U_2 regularity decomposition f = f_s + f_e + f_r.
    Decompose {
        function: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// U_2 inverse certificate: a character with |(f,χ)| ≥ ε².
    Inverse {
        function: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Nilspace axioms and k-step uniqueness of an explicit cubespace.
    CheckNilspace {
        cubespace: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Both cocycle laws of an explicit cocycle file.
    CheckCocycle {
        cocycle: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The Heisenberg nilmanifold pipeline for parameters (m, t).
    Heisenberg {
        m: u64,
        t: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Enumerates the cube morphisms {0,1}^n → {0,1}^m.
    Morphisms {
        n: u32,
        m: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn read_function(path: &Path) -> Result<GroupFunction> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn read_spec(path: &Path) -> Result<MomentSpec> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn emit(common: &CommonOpts, body: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Runs a parsed command; errors map to exit code 2 in [`run`].
pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Norm {
            function,
            k,
            exact: _,
            sampled,
            common,
        } => cmd_norm(function, *k, *sampled, common),
        Command::Fourier { function, common } => cmd_fourier(function, common),
        Command::Moments {
            function,
            spec,
            exact: _,
            sampled,
            common,
        } => cmd_moments(function, spec, *sampled, common),
        Command::DnSample {
            function,
            n,
            samples,
            common,
        } => cmd_dn_sample(function, *n, *samples, common),
        Command::Cayley {
            function,
            k,
            common,
        } => cmd_cayley(function, *k, common),
        Command::Converge {
            example,
            ms,
            specs,
            samples,
            common,
        } => cmd_converge(*example, ms.as_str(), specs.as_deref(), *samples, common),
        Command::Decompose {
            function,
            eps,
            common,
        } => cmd_decompose(function, *eps, common),
        Command::Inverse {
            function,
            eps,
            common,
        } => cmd_inverse(function, *eps, common),
        Command::CheckNilspace {
            cubespace,
            k,
            n_max,
            common,
        } => cmd_check_nilspace(cubespace, *k, *n_max, common),
        Command::CheckCocycle { cocycle, common } => cmd_check_cocycle(cocycle, common),
        Command::Heisenberg { m, t, common } => cmd_heisenberg(*m, *t, common),
        Command::Morphisms { n, m, common } => cmd_morphisms(*n, *m, common),
    }
}

/// Top-level entry: parses errors into the exit-code contract.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(Outcome::Pass) => EXIT_PASS,
        Ok(Outcome::PropertyFailure) => EXIT_PROPERTY_FAILURE,
        Err(Error::NormBelowThreshold { measured, required }) => {
            eprintln!(
                "refused: U_2 norm {} is below the requested threshold {}",
                fmt_f64(measured),
                fmt_f64(required)
            );
            EXIT_PROPERTY_FAILURE
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT_ERROR
        }
    }
}

fn cmd_norm(path: &Path, k: u32, sampled: Option<usize>, common: &CommonOpts) -> Result<Outcome> {
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let f = read_function(path)?;
    let mut body = String::new();
    for j in 1..=k {
        match sampled {
            None => {
                let v = gowers_norm_exact(&f, j)?;
                writeln!(body, "U_{j} {}", fmt_f64(v)).unwrap();
            }
            Some(n) => {
                let (v, se) =
                    gowers_norm_sampled(&f, j, n, &SeedStream::new(common.seed).derive(j as u64))?;
                writeln!(body, "U_{j} {} stderr {}", fmt_f64(v), fmt_f64(se)).unwrap();
            }
        }
    }
    // L^{2^{k-1}} domination check for the top norm
    let uk = gowers_norm_exact(&f, k)?;
    let lp = f.lp_norm((1u64 << (k - 1)) as f64)?;
    writeln!(
        body,
        "L_{} {} bound_check {}",
        1u64 << (k - 1),
        fmt_f64(lp),
        if uk <= lp + common.tol { "pass" } else { "FAIL" }
    )
    .unwrap();
    emit(common, &body)?;
    Ok(if uk <= lp + common.tol {
        Outcome::Pass
    } else {
        Outcome::PropertyFailure
    })
}

fn cmd_fourier(path: &Path, common: &CommonOpts) -> Result<Outcome> {
    let f = read_function(path)?;
    let spec = fourier_transform(&f);
    let mut body = String::new();
    writeln!(body, "freq re im").unwrap();
    for (chi, coeff) in spec.iter() {
        let freq: Vec<String> = chi.freq().iter().map(|c| c.to_string()).collect();
        writeln!(body, "{} {}", freq.join(","), fmt_complex(coeff)).unwrap();
    }
    let parseval = (spec.energy() - f.lp_norm(2.0)?.powi(2)).abs();
    writeln!(body, "parseval_defect {}", fmt_f64(parseval)).unwrap();
    emit(common, &body)?;
    Ok(if parseval <= common.tol {
        Outcome::Pass
    } else {
        Outcome::PropertyFailure
    })
}

fn cmd_moments(
    path: &Path,
    spec_path: &Path,
    sampled: Option<usize>,
    common: &CommonOpts,
) -> Result<Outcome> {
    let f = read_function(path)?;
    let spec = read_spec(spec_path)?;
    let mut body = String::new();
    match sampled {
        None => match moment_exact(&f, &spec) {
            Ok(v) => writeln!(body, "moment {}", fmt_complex(v)).unwrap(),
            Err(Error::CapExceeded { .. }) => {
                // auto-switch with a warning, per the documented cap policy
                eprintln!("exact path over cap; switching to sampling (seed {})", common.seed);
                let (v, se) = moment_sampled(&f, &spec, 1_000_000, &SeedStream::new(common.seed))?;
                writeln!(body, "moment {} stderr {}", fmt_complex(v), fmt_f64(se)).unwrap();
            }
            Err(e) => return Err(e),
        },
        Some(n) => {
            let (v, se) = moment_sampled(&f, &spec, n, &SeedStream::new(common.seed))?;
            writeln!(body, "moment {} stderr {}", fmt_complex(v), fmt_f64(se)).unwrap();
        }
    }
    emit(common, &body)?;
    Ok(Outcome::Pass)
}

fn cmd_dn_sample(path: &Path, n: usize, samples: usize, common: &CommonOpts) -> Result<Outcome> {
    let f = read_function(path)?;
    let dist = sample_dn(&f, n, samples, &SeedStream::new(common.seed))?;
    let mut body = String::new();
    let header: Vec<String> = (1..=dist.dimension() as u32)
        .flat_map(|mask| {
            let digits: String = (0..n)
                .filter(|i| (mask >> i) & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect();
            [format!("re_{digits}"), format!("im_{digits}")]
        })
        .collect();
    writeln!(body, "{}", header.join(",")).unwrap();
    for sample in dist.samples() {
        let cells: Vec<String> = sample
            .iter()
            .flat_map(|z| [fmt_f64(z.re), fmt_f64(z.im)])
            .collect();
        writeln!(body, "{}", cells.join(",")).unwrap();
    }
    emit(common, &body)?;
    Ok(Outcome::Pass)
}

fn cmd_cayley(path: &Path, k: usize, common: &CommonOpts) -> Result<Outcome> {
    let f = read_function(path)?;
    // the function must be an indicator
    let mut set = Vec::new();
    for (i, v) in f.values().iter().enumerate() {
        if (v - Complex64::new(1.0, 0.0)).norm() <= common.tol {
            set.push(i);
        } else if v.norm() > common.tol {
            return Err(Error::BadParameter(format!(
                "cayley expects a 0/1-valued function, found {v} at index {i}"
            )));
        }
    }
    let density = cayley_hypergraph_density(f.group(), &set, k)?;
    emit(common, &format!("density {}\n", fmt_f64(density)))?;
    Ok(Outcome::Pass)
}

fn cmd_converge(
    example: u32,
    ms_arg: &str,
    specs_path: Option<&Path>,
    samples: usize,
    common: &CommonOpts,
) -> Result<Outcome> {
    let ms: Vec<u64> = ms_arg
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::BadParameter(format!("bad m value {s:?}")))
        })
        .collect::<Result<_>>()?;
    let ms = ms.as_slice();
    let specs: Vec<MomentSpec> = match specs_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)?
        }
        None => match example {
            1 => crate::moments::simple_specs_up_to(2),
            2 => vec![MomentSpec::gowers_cube(3)],
            _ => return Err(Error::BadParameter("example must be 1 or 2".into())),
        },
    };
    let seeds = SeedStream::new(common.seed);
    let rows = match example {
        1 => convergence_report(
            &example1_sequence,
            ms,
            &specs,
            &example1_limit(),
            EvalStrategy::Sampled(samples),
            samples,
            &seeds,
        )?,
        2 => convergence_report(
            &|m| example2_sequence(m, 2f64.sqrt() - 1.0),
            ms,
            &specs,
            &example2_limit(),
            EvalStrategy::Sampled(samples),
            samples,
            &seeds,
        )?,
        _ => return Err(Error::BadParameter("example must be 1 or 2".into())),
    };
    let mut body = String::new();
    writeln!(body, "m,spec_id,re,im,limit_re,limit_im,gap").unwrap();
    for row in &rows {
        writeln!(
            body,
            "{},{},{},{},{},{},{}",
            row.m,
            row.spec_id,
            fmt_f64(row.value.re),
            fmt_f64(row.value.im),
            fmt_f64(row.limit_value.re),
            fmt_f64(row.limit_value.im),
            fmt_f64(row.gap())
        )
        .unwrap();
    }
    emit(common, &body)?;
    Ok(Outcome::Pass)
}

fn cmd_decompose(path: &Path, eps: f64, common: &CommonOpts) -> Result<Outcome> {
    if !(eps > 0.0) {
        return Err(Error::BadParameter(format!("need ε > 0, got {eps}")));
    }
    let f = read_function(path)?;
    let result = u2_decompose(&f, eps, &default_schedule)?;
    let prefix = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("decomposition"));
    let write_json = |suffix: &str, value: serde_json::Value| -> Result<()> {
        let path = prefix.with_extension(suffix);
        std::fs::write(path, serde_json::to_string_pretty(&value)?)?;
        Ok(())
    };
    write_json("fs.json", serde_json::to_value(&result.structured)?)?;
    write_json("fe.json", serde_json::to_value(&result.error)?)?;
    write_json("fr.json", serde_json::to_value(&result.residual)?)?;
    write_json("cert.json", result.certificate.to_json())?;
    write_json("diag.json", serde_json::to_value(&result.diagnostics)?)?;
    println!(
        "decomposed: d={} complexity={} balance={} |f_r|_U2={} budget={}",
        result.certificate.dimension(),
        result.certificate.complexity(),
        fmt_f64(result.certificate.balance()),
        fmt_f64(result.diagnostics.u2_residual),
        fmt_f64(result.diagnostics.residual_budget),
    );
    Ok(Outcome::Pass)
}

fn cmd_inverse(path: &Path, eps: f64, common: &CommonOpts) -> Result<Outcome> {
    let f = read_function(path)?;
    let (chi, corr) = u2_inverse_certificate(&f, eps)?;
    let freq: Vec<String> = chi.freq().iter().map(|c| c.to_string()).collect();
    emit(
        common,
        &format!(
            "character {}\ncorrelation {}\nmodulus {}\n",
            freq.join(","),
            fmt_complex(corr),
            fmt_f64(corr.norm())
        ),
    )?;
    Ok(Outcome::Pass)
}

fn cmd_check_nilspace(path: &Path, k: u32, n_max: u32, common: &CommonOpts) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)?;
    let space: Cubespace = serde_json::from_str(&text)?;
    let report = space.check_nilspace_axioms(n_max)?;
    let k_step = space.check_k_step(k)?;
    let mut body = report.to_string();
    writeln!(body, "k_step({k}): {}", if k_step { "pass" } else { "FAIL" }).unwrap();
    if !k_step {
        if let Some(w) = space.k_step_witness(k)? {
            writeln!(body, "k_step witness: corner {:?} at dimension {}", w.corner, w.n).unwrap();
        }
    }
    emit(common, &body)?;
    Ok(if report.all_pass() && k_step {
        Outcome::Pass
    } else {
        Outcome::PropertyFailure
    })
}

/// JSON layout of a cocycle file: the base cubespace, the cube dimension,
/// and either circle values or element indices into a cyclic-product target.
#[derive(Deserialize)]
struct CocycleFile {
    cubespace: Cubespace,
    dim: u32,
    #[serde(default)]
    target: Option<crate::group::FiniteAbelianGroup>,
    values: serde_json::Value,
}

fn cmd_check_cocycle(path: &Path, common: &CommonOpts) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)?;
    let file: CocycleFile = serde_json::from_str(&text)?;
    let cocycle = match &file.target {
        Some(target) => {
            let values: Vec<usize> = serde_json::from_value(file.values.clone())?;
            Cocycle::additive(&file.cubespace, file.dim, target, values)?
        }
        None => {
            let pairs: Vec<[f64; 2]> = serde_json::from_value(file.values.clone())?;
            let values: Vec<Complex64> =
                pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            Cocycle::multiplicative(&file.cubespace, file.dim, values)?
        }
    };
    match check_cocycle(&cocycle)? {
        None => {
            emit(common, "cocycle: pass\n")?;
            Ok(Outcome::Pass)
        }
        Some(witness) => {
            emit(common, &format!("cocycle: FAIL\nwitness: {witness}\n"))?;
            Ok(Outcome::PropertyFailure)
        }
    }
}

fn cmd_heisenberg(m: u64, t: u64, common: &CommonOpts) -> Result<Outcome> {
    let pipeline = heis_sequence(m, t)?;
    let direct = heis_sequence_direct(m, t)?;
    let prefix = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("heisenberg_m{m}_t{t}")));

    std::fs::write(
        prefix.with_extension("function.json"),
        serde_json::to_string_pretty(&serde_json::to_value(&pipeline)?)?,
    )?;

    let mut csv = String::from("k,pipeline_re,pipeline_im,direct_re,direct_im,abs_diff\n");
    let mut max_diff = 0.0f64;
    for k in 0..m as usize {
        let p = pipeline.value_at(k);
        let d = direct.value_at(k);
        let diff = (p - d).norm();
        max_diff = max_diff.max(diff);
        writeln!(
            csv,
            "{k},{},{},{},{},{}",
            fmt_f64(p.re),
            fmt_f64(p.im),
            fmt_f64(d.re),
            fmt_f64(d.im),
            fmt_f64(diff)
        )
        .unwrap();
    }
    std::fs::write(prefix.with_extension("compare.csv"), &csv)?;

    let u3 = gowers_norm_exact(&pipeline, 3)?;
    println!(
        "m={m} t={t} U_3 {} U_2 {} max_pipeline_direct_diff {}",
        fmt_f64(u3),
        fmt_f64(u2_via_fourier(&pipeline)),
        fmt_f64(max_diff)
    );
    Ok(if max_diff <= 1e-12 {
        Outcome::Pass
    } else {
        Outcome::PropertyFailure
    })
}

fn cmd_morphisms(n: u32, m: u32, common: &CommonOpts) -> Result<Outcome> {
    let morphisms = crate::cubes::enumerate_cube_morphisms(n, m)?;
    let mut body = String::new();
    writeln!(body, "count {}", morphisms.len()).unwrap();
    for psi in &morphisms {
        writeln!(body, "{psi}").unwrap();
    }
    emit(common, &body)?;
    Ok(Outcome::Pass)
}
