//! The `projkernel` command line.
//!
//! Quadrature settings come from `--L --step --eps --rule`, then from the TOML
//! file named by `PROJKERNEL_CONFIG`, then from the defaults.
//!
//! Exit codes: 0 on success, 1 when the identity suite has a failing entry,
//! 2 on a usage or input error. Input errors also print their [`Error::code`].

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use crate::discrete::{incomplete_kronecker_sum, support_test, DiscreteProjection, DiscreteSignal};
use crate::dispersion::{
    causal_spectrum_check, dispersion_residual, dispersion_rhs, halfline_projection, hilbert_pv,
    hilbert_spectral,
};
use crate::error::{Error, Result};
use crate::io::{read_records, read_signal, write_rows, write_signal};
use crate::kernels::{
    difference_kernel, halfline_kernel, momentum_halfline_kernel, sinc_kernel, BandParams, Side,
};
use crate::quadrature::{bandlimit_project, QuadratureConfig, Rule};
use crate::report::{IdentityReport, ReportEntry};
use crate::signal::{DomainLabel, UniformGrid};
use crate::suite::{self, Level};

pub const CONFIG_ENV: &str = "PROJKERNEL_CONFIG";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "projkernel",
    version,
    about = "Projection kernels, their identities and band-support tests"
)]
pub struct Cli {
    #[command(flatten)]
    pub quadrature: QuadratureFlags,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct QuadratureFlags {
    /// Truncation half width L.
    #[arg(long = "L", global = true, value_name = "L")]
    pub half_width: Option<f64>,
    /// Grid step for quadrature and generated grids.
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Principal-value exclusion half width.
    #[arg(long = "eps", global = true, value_name = "EPS")]
    pub exclusion: Option<f64>,
    /// Quadrature rule: trapezoid or simpson.
    #[arg(long, global = true)]
    pub rule: Option<Rule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// Band kernel sin(a dx) / (pi dx).
    Sinc,
    /// Coordinate positive half-line kernel.
    Plus,
    /// Coordinate negative half-line kernel.
    Minus,
    /// Momentum positive half-line kernel.
    MomentumPlus,
    /// Momentum negative half-line kernel.
    MomentumMinus,
    /// Difference of the momentum half-line kernels.
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Coordinate,
    Momentum,
    Time,
    Frequency,
}

impl From<DomainArg> for DomainLabel {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Coordinate => DomainLabel::Coordinate,
            DomainArg::Momentum => DomainLabel::Momentum,
            DomainArg::Time => DomainLabel::Time,
            DomainArg::Frequency => DomainLabel::Frequency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Pv,
    Spectral,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a kernel's regular part on a symmetric grid of offsets.
    Kernel {
        #[arg(long, value_enum)]
        kind: KernelKind,
        /// Band half width, required for the sinc kernel.
        #[arg(long = "band-a")]
        band_a: Option<f64>,
        /// Largest offset tabulated.
        #[arg(long, default_value_t = 10.0)]
        range: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Project a signal onto a band or a half line.
    Project {
        /// Band half width a: keep momenta in [-a, a].
        #[arg(
            long = "band-a",
            conflicts_with = "side",
            required_unless_present = "side"
        )]
        band_a: Option<f64>,
        /// Half line to keep instead of a band.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "coordinate")]
        domain: DomainArg,
    },
    /// Test whether a discrete signal is supported in a frequency band.
    SupportTest {
        #[arg(long = "K")]
        dim: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Hilbert transform of a signal.
    Hilbert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "spectral")]
        method: MethodArg,
    },
    /// Check a half-line dispersion relation, or the causal-spectrum relation for a time signal.
    Dispersion {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "coordinate")]
        domain: DomainArg,
        /// Tolerance on the residual.
        #[arg(long, default_value_t = crate::dispersion::CAUSAL_TOLERANCE)]
        tol: f64,
        /// Write the dispersion integral (right-hand side) here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every identity check and report.
    IdentitySuite {
        #[arg(long, default_value = "desk")]
        level: Level,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the incomplete Kronecker delta of a contiguous band.
    Kronecker {
        #[arg(long = "K")]
        dim: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Write matrix entries as rows `k,n,re,im` (1-based).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Optional settings read from the `PROJKERNEL_CONFIG` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    pub step: Option<f64>,
    pub eps: Option<f64>,
    pub rule: Option<Rule>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::ConfigFile(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::ConfigFile(format!("{}: {e}", path.display())))
    }
}

/// Merges flags over the config file over the defaults.
pub fn resolve_config(
    flags: &QuadratureFlags,
    file: Option<&ConfigFile>,
) -> Result<QuadratureConfig> {
    let d = QuadratureConfig::default();
    let file = file.cloned().unwrap_or_default();
    QuadratureConfig::new(
        flags.half_width.or(file.half_width).unwrap_or(d.half_width),
        flags.step.or(file.step).unwrap_or(d.step),
        flags.exclusion.or(file.eps).unwrap_or(d.exclusion),
        flags.rule.or(file.rule).unwrap_or(d.rule),
    )
}

fn config_from_env(flags: &QuadratureFlags) -> Result<QuadratureConfig> {
    let file = match std::env::var_os(CONFIG_ENV) {
        Some(p) if !p.is_empty() => Some(ConfigFile::load(Path::new(&p))?),
        _ => None,
    };
    resolve_config(flags, file.as_ref())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> Result<u8> {
    let cfg = config_from_env(&cli.quadrature)?;
    match cli.command {
        Command::Kernel {
            kind,
            band_a,
            range,
            out,
        } => kernel(kind, band_a, range, &out, &cfg),
        Command::Project {
            band_a,
            side,
            input,
            out,
            domain,
        } => {
            let f = read_signal(&input, domain.into())?;
            let g = match (band_a, side) {
                (Some(a), _) => bandlimit_project(&f, BandParams::new(a)?, &cfg)?,
                (None, Some(s)) => halfline_projection(&f, s.into(), &cfg)?,
                (None, None) => {
                    return Err(Error::invalid(
                        "band-a",
                        "either --band-a or --side is required",
                    ))
                }
            };
            write_signal(&out, &g)?;
            Ok(EXIT_OK)
        }
        Command::SupportTest {
            dim,
            k1,
            k2,
            input,
            tol,
            report,
        } => {
            let records = read_records(&input)?;
            if records.is_empty() {
                return Err(Error::EmptyFile { path: input });
            }
            let u = DiscreteSignal::new(records.iter().map(|r| r.value).collect())?;
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: u.len(),
                });
            }
            let p = DiscreteProjection::contiguous(dim, k1, k2)?;
            let verdict = support_test(&u, &p, tol)?;
            let label = if verdict.supported {
                "supported"
            } else {
                "not supported"
            };
            println!("{label} residual={:.6e} tol={tol:.1e}", verdict.residual);
            let entry = ReportEntry::new("band support test", "Eq 4.12", verdict.residual, tol)
                .param("K", dim as u64)
                .param("k1", k1 as u64)
                .param("k2", k2 as u64)
                .param("input", input.display().to_string());
            write_report(report.as_deref(), &cfg, vec![entry])?;
            Ok(EXIT_OK)
        }
        Command::Hilbert { input, out, method } => {
            let f = read_signal(&input, DomainLabel::Momentum)?;
            let h = match method {
                MethodArg::Pv => hilbert_pv(&f, &cfg)?,
                MethodArg::Spectral => hilbert_spectral(&f)?,
            };
            write_signal(&out, &h)?;
            Ok(EXIT_OK)
        }
        Command::Dispersion {
            input,
            side,
            domain,
            tol,
            out,
            report,
        } => {
            let domain: DomainLabel = domain.into();
            let u = read_signal(&input, domain)?;
            let entry = if domain == DomainLabel::Time {
                causal_spectrum_check(&u, &cfg)?.with_tolerance(tol)
            } else {
                let side: Side = side.into();
                if let Some(out) = &out {
                    write_signal(out, &dispersion_rhs(&u, side, &cfg)?)?;
                }
                let r = dispersion_residual(&u, side, &cfg)?;
                ReportEntry::new("half-line dispersion relation", "Eq 3.16a", r, tol)
                    .param("side", format!("{side:?}").to_lowercase())
            };
            let entry = entry.param("input", input.display().to_string());
            println!("{entry}");
            write_report(report.as_deref(), &cfg, vec![entry])?;
            Ok(EXIT_OK)
        }
        Command::IdentitySuite { level, report } => {
            let r = suite::run(level, &cfg)?;
            for entry in &r.entries {
                println!("{entry}");
            }
            let failed = r.failures().count();
            println!("{} entries, {failed} failed", r.entries.len());
            let pass = r.all_pass();
            write_report(report.as_deref(), &cfg, r.entries)?;
            Ok(if pass { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Kronecker { dim, k1, k2, out } => {
            let p = DiscreteProjection::contiguous(dim, k1, k2)?;
            let m = incomplete_kronecker_sum(&p);
            let tr = m.trace();
            println!(
                "K={dim} band=[{k1}, {k2}] trace={:.12} idempotency={:.3e} hermiticity={:.3e}",
                tr.re,
                m.idempotency_defect(),
                m.hermiticity_defect()
            );
            if let Some(out) = out {
                write_matrix(&out, &m)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn kernel(
    kind: KernelKind,
    band_a: Option<f64>,
    range: f64,
    out: &Path,
    cfg: &QuadratureConfig,
) -> Result<u8> {
    if !(range > 0.0 && range.is_finite()) {
        return Err(Error::invalid("range", "must be positive and finite"));
    }
    let grid = UniformGrid::symmetric(range, cfg.step)?;
    let rows: Vec<(f64, Complex64)> = match kind {
        KernelKind::Sinc => {
            let a =
                band_a.ok_or_else(|| Error::invalid("band-a", "required for the sinc kernel"))?;
            let band = BandParams::new(a)?;
            grid.points()
                .map(|dx| sinc_kernel(dx, band).map(|v| (dx, Complex64::new(v, 0.0))))
                .collect::<Result<_>>()?
        }
        split => {
            let k = match split {
                KernelKind::Plus => halfline_kernel(Side::Plus),
                KernelKind::Minus => halfline_kernel(Side::Minus),
                KernelKind::MomentumPlus => momentum_halfline_kernel(Side::Plus),
                KernelKind::MomentumMinus => momentum_halfline_kernel(Side::Minus),
                _ => difference_kernel(),
            };
            println!("delta coefficient {}", k.delta_coeff());
            grid.points()
                .map(|dx| (dx, k.regular(dx).unwrap_or_default()))
                .collect()
        }
    };
    write_rows(out, rows)?;
    Ok(EXIT_OK)
}

fn write_matrix(path: &Path, m: &crate::discrete::IncompleteKronecker) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(["k", "n", "re", "im"]).map_err(io)?;
    for k in 1..=m.dim() {
        for n in 1..=m.dim() {
            let v = m.entry(k, n);
            w.write_record([
                k.to_string(),
                n.to_string(),
                format!("{:.16e}", v.re),
                format!("{:.16e}", v.im),
            ])
            .map_err(io)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_report(
    path: Option<&Path>,
    cfg: &QuadratureConfig,
    entries: Vec<ReportEntry>,
) -> Result<()> {
    if let Some(path) = path {
        let mut report = IdentityReport::new(*cfg);
        for e in entries {
            report.push(e);
        }
        fs::write(path, report.to_json() + "\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn precedence_is_flags_then_file_then_defaults() {
        let file = ConfigFile {
            half_width: Some(100.0),
            step: Some(0.025),
            eps: None,
            rule: Some(Rule::Simpson),
        };
        let flags = QuadratureFlags {
            half_width: Some(50.0),
            ..Default::default()
        };
        let cfg = resolve_config(&flags, Some(&file)).unwrap();
        assert_eq!(cfg.half_width, 50.0);
        assert_eq!(cfg.step, 0.025);
        assert_eq!(cfg.exclusion, 0.05);
        assert_eq!(cfg.rule, Rule::Simpson);
        assert_eq!(
            resolve_config(&QuadratureFlags::default(), None).unwrap(),
            QuadratureConfig::default()
        );
    }

    #[test]
    fn config_file_parses_toml() {
        let f: ConfigFile = toml::from_str("L = 200.0\nrule = \"simpson\"\n").unwrap();
        assert_eq!(f.half_width, Some(200.0));
        assert_eq!(f.rule, Some(Rule::Simpson));
        assert!(toml::from_str::<ConfigFile>("width = 3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["projkernel", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["projkernel", "project", "--band-a", "2"]), EXIT_USAGE);
        assert_eq!(
            run([
                "projkernel",
                "--L",
                "-1",
                "kronecker",
                "--K",
                "4",
                "--k1",
                "1",
                "--k2",
                "2"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            run([
                "projkernel",
                "kronecker",
                "--K",
                "4",
                "--k1",
                "1",
                "--k2",
                "2"
            ]),
            EXIT_OK
        );
    }
}
