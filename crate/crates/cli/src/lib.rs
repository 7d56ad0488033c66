//! Command-line front end: argument types, parameter resolution and CSV
//! emission. Every command returns a [`Table`] (or a validation report) so the
//! binary stays a thin shell.

pub mod commands;
pub mod validate;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dqw_core::params::config::ParamConfig;
use dqw_core::{RawParams, Transition, WellParams64};

#[derive(Debug, Parser)]
#[command(name = "dqw", version, about = "Symmetric double quantum well: levels, wavefunctions and dipoles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound levels: n, parity, E_eV, k_per_nm.
    Levels {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Report at most this many levels.
        #[arg(long = "levels", value_name = "N")]
        levels: Option<usize>,
    },
    /// Levels and dipole breakdowns over a parameter range.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Samples of one normalised wavefunction: x_nm, psi.
    Wavefunction {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// 1-based level index (1 = 1s, 2 = 2a, ...).
        #[arg(long, value_name = "N", default_value_t = 1)]
        level: usize,
        /// Number of uniform samples.
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        /// Cladding shown on each side (nm).
        #[arg(long = "pad-nm", default_value_t = 12.0)]
        pad_nm: f64,
    },
    /// Dipole matrix element by layer: b_nm, d1, d2, d3, total, approx.
    Dipole {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// `1s2a`, `2a3s` or a 1-based index pair `i,j`.
        #[arg(long, default_value = "1s2a")]
        transition: TransitionSpec,
    },
    /// Checks the solver against the finite-difference and quadrature oracles.
    Validate {
        #[command(flatten)]
        params: ParamArgs,
        /// Replace ħ²/2mₑ on the analytic side only (sensitivity check).
        #[arg(long, hide = true, value_name = "EV_NM2")]
        corrupt_constant: Option<f64>,
    },
}

/// Parameter sources: a `key = value` file, then per-key overrides.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Parameter file with keys a_nm, b_nm, vb_ev, vc_ev, m0, mb, mc.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long = "a-nm")]
    pub a_nm: Option<f64>,
    #[arg(long = "b-nm")]
    pub b_nm: Option<f64>,
    #[arg(long = "vb-ev")]
    pub vb_ev: Option<f64>,
    #[arg(long = "vc-ev")]
    pub vc_ev: Option<f64>,
    #[arg(long)]
    pub m0: Option<f64>,
    #[arg(long)]
    pub mb: Option<f64>,
    #[arg(long)]
    pub mc: Option<f64>,
}

impl ParamArgs {
    fn overrides(&self) -> ParamConfig {
        ParamConfig {
            a_nm: self.a_nm,
            b_nm: self.b_nm,
            vb_ev: self.vb_ev,
            vc_ev: self.vc_ev,
            m0: self.m0,
            mb: self.mb,
            mc: self.mc,
        }
    }

    /// Unvalidated parameters; flags beat the file.
    pub fn raw(&self) -> Result<RawParams<f64>> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read config {}", path.display()))?;
                ParamConfig::parse(&text).with_context(|| format!("in config {}", path.display()))?
            }
            None => ParamConfig::default(),
        };
        Ok(base.overridden_by(&self.overrides()).resolve()?)
    }

    pub fn resolve(&self) -> Result<WellParams64> {
        Ok(self.raw()?.validate()?)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output file (default stdout).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    /// Barrier width (nm).
    B,
    /// Well width (nm).
    A,
    /// Barrier height (eV).
    Vb,
}

impl SweepParam {
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::B => "b_nm",
            SweepParam::A => "a_nm",
            SweepParam::Vb => "vb_ev",
        }
    }

    pub fn apply(self, raw: RawParams<f64>, value: f64) -> RawParams<f64> {
        match self {
            SweepParam::B => RawParams { b: value, ..raw },
            SweepParam::A => RawParams { a: value, ..raw },
            SweepParam::Vb => RawParams { vb: value, ..raw },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of points, endpoints included.
    #[arg(long)]
    pub steps: usize,
    /// Energy columns for the lowest N levels.
    #[arg(long = "levels", value_name = "N", default_value_t = 2)]
    pub levels: usize,
    /// Dipole columns (repeatable).
    #[arg(long = "transition", default_values = ["1s2a"])]
    pub transitions: Vec<TransitionSpec>,
}

impl SweepArgs {
    /// Sweep points; `from < to`, `steps >= 2`, endpoints exact.
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.from < self.to) {
            bail!("sweep needs --from < --to (got {} and {})", self.from, self.to);
        }
        if self.steps < 2 {
            bail!("sweep needs --steps >= 2 (got {})", self.steps);
        }
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / last
                }
            })
            .collect())
    }
}

/// A named transition or a 1-based level pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionSpec {
    Named(Transition),
    Pair(usize, usize),
}

impl TransitionSpec {
    /// 1-based level indices.
    pub fn levels(self) -> (usize, usize) {
        match self {
            TransitionSpec::Named(t) => t.levels(),
            TransitionSpec::Pair(i, j) => (i, j),
        }
    }

    /// The transition covered by the infinite-well estimate, if any.
    pub fn named(self) -> Option<Transition> {
        match self {
            TransitionSpec::Named(t) => Some(t),
            TransitionSpec::Pair(i, j) => [Transition::S1A2, Transition::A2S3]
                .into_iter()
                .find(|t| t.levels() == (i.min(j), i.max(j))),
        }
    }

    /// Column suffix: `1s2a`, `2a3s` or `i_j`.
    pub fn tag(self) -> String {
        match self.named() {
            Some(t) => t.to_string(),
            None => {
                let (i, j) = self.levels();
                format!("{i}_{j}")
            }
        }
    }
}

impl FromStr for TransitionSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Ok(t) = s.parse::<Transition>() {
            return Ok(TransitionSpec::Named(t));
        }
        let err = || format!("invalid transition `{s}` (expected 1s2a, 2a3s or i,j with 1-based levels)");
        let (i, j) = s.split_once(',').ok_or_else(err)?;
        let i: usize = i.trim().parse().map_err(|_| err())?;
        let j: usize = j.trim().parse().map_err(|_| err())?;
        if i == 0 || j == 0 || i == j {
            return Err(err());
        }
        Ok(TransitionSpec::Pair(i, j))
    }
}

impl fmt::Display for TransitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionSpec::Named(t) => write!(f, "{t}"),
            TransitionSpec::Pair(i, j) => write!(f, "{i},{j}"),
        }
    }
}

/// Label of the 1-based level `n`: parity alternates from a symmetric ground state.
pub fn level_label(n: usize) -> String {
    format!("{n}{}", if n % 2 == 1 { 's' } else { 'a' })
}

/// Round-trip representation (17 significant digits).
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV table; empty cells mark values that do not exist.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn emit(&self, output: &OutputArgs) -> Result<()> {
        match &output.out {
            Some(path) => {
                let file = std::fs::File::create(path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                self.write_csv(std::io::BufWriter::new(file))
            }
            None => self.write_csv(std::io::stdout().lock()),
        }
    }
}

/// A command's table plus warnings for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub table: Table,
    pub warnings: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 5.325887152900001e-2, -1e-300, 6.0] {
            let s = fmt_num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_num(5.5), "5.5000000000000000e0");
    }

    #[test]
    fn transition_specs_parse() {
        assert_eq!("1s2a".parse(), Ok(TransitionSpec::Named(Transition::S1A2)));
        assert_eq!("2a3s".parse(), Ok(TransitionSpec::Named(Transition::A2S3)));
        assert_eq!("1,4".parse(), Ok(TransitionSpec::Pair(1, 4)));
        assert_eq!("3,2".parse::<TransitionSpec>().unwrap().named(), Some(Transition::A2S3));
        assert_eq!(TransitionSpec::Pair(1, 4).tag(), "1_4");
        for bad in ["", "1s3s", "0,1", "2,2", "a,b", "1,2,3"] {
            assert!(bad.parse::<TransitionSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sweep_points_include_endpoints() {
        let s = SweepArgs {
            param: SweepParam::B,
            from: 1.0,
            to: 15.0,
            steps: 141,
            levels: 2,
            transitions: vec![],
        };
        let p = s.points().unwrap();
        assert_eq!(p.len(), 141);
        assert_eq!((p[0], p[140]), (1.0, 15.0));
        assert!((p[10] - 2.0).abs() < 1e-14);
        assert!(SweepArgs { steps: 1, ..s.clone() }.points().is_err());
        assert!(SweepArgs { from: 15.0, to: 1.0, ..s }.points().is_err());
    }

    #[test]
    fn labels_alternate_parity() {
        let l: Vec<String> = (1..=4).map(level_label).collect();
        assert_eq!(l, ["1s", "2a", "3s", "4a"]);
    }

    #[test]
    fn overrides_beat_config() {
        let dir = std::env::temp_dir().join(format!("dqw-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p.conf");
        std::fs::write(&path, "a_nm = 6\nb_nm = 5\nvb_ev = 0.1671\nvc_ev = 0.1671\nm0 = 0.067\nmb = 0.0836\nmc = 0.0836\n").unwrap();
        let args = ParamArgs { config: Some(path), b_nm: Some(15.0), ..Default::default() };
        let p = args.resolve().unwrap();
        assert_eq!((p.a(), p.b()), (6.0, 15.0));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn missing_keys_are_named() {
        let err = ParamArgs { a_nm: Some(6.0), ..Default::default() }.resolve().unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("b_nm") && msg.contains("mc") && !msg.contains("a_nm"), "{msg}");
    }
}
