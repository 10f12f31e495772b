//! Command-line flags, the JSON config file, and the resolved run
//! configuration.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mirror_radiance::pitcher::ProjectileParams;
use mirror_radiance::TrajectoryKind;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "mirror-radiance",
    version,
    about = "Radiation from asymptotically static charges and the matching moving mirrors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Larmor and Feynman power against time
    Power,
    /// Total radiated energy by three routes against speed
    Energy,
    /// Particle spectrum N_p, or |β_pq|² on a (p, q) grid when --q-range is given
    Beta,
    /// Energy spectrum I(ω), the distribution integrated over solid angle
    Spectrum,
    /// Angular distribution dI/dΩ as a surface over (θ, φ)
    Distribution,
    /// Total particle count by the classical and mode routes against speed
    Particles,
    /// Energy-triple agreement and the mode/angle identity on a grid
    Verify,
    /// Integrated relativistic projectile against its closed form
    Pitcher,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Power => "power",
            Command::Energy => "energy",
            Command::Beta => "beta",
            Command::Spectrum => "spectrum",
            Command::Distribution => "distribution",
            Command::Particles => "particles",
            Command::Verify => "verify",
            Command::Pitcher => "pitcher",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every setting that can come from a flag or from the config file. Flags
/// win over the file; anything left unset gets the command's default.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// JSON file with any of these settings, keys in snake_case
    #[arg(long, global = true, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// self-dual or betak; both when omitted
    #[arg(long, global = true)]
    pub trajectory: Option<String>,

    /// Maximum speed (initial speed for pitcher)
    #[arg(long, global = true)]
    pub v: Option<f64>,

    #[arg(long, global = true)]
    pub kappa: Option<f64>,

    /// Point count of the command's main axis
    #[arg(long, global = true)]
    pub n: Option<usize>,

    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub t_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub t_n: Option<usize>,

    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub omega_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub omega_n: Option<usize>,

    /// Direction cosine T = cos θ
    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub cos_theta_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub cos_theta_n: Option<usize>,

    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub p_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub p_n: Option<usize>,

    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub q_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub q_n: Option<usize>,

    #[arg(long, global = true, num_args = 2, value_names = ["MIN", "MAX"], allow_negative_numbers = true)]
    pub v_range: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub v_n: Option<usize>,

    /// Fixed frequencies for the distribution surfaces
    #[arg(long, global = true, num_args = 1..)]
    pub omega: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub theta_n: Option<usize>,
    #[arg(long, global = true)]
    pub phi_n: Option<usize>,

    /// Vertical force on the projectile
    #[arg(long, global = true)]
    pub alpha_y: Option<f64>,
    /// Projectile run length, default 20/κ
    #[arg(long, global = true)]
    pub t_end: Option<f64>,

    /// Relative tolerance of integrals (step tolerance for pitcher)
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Output file; stdout when omitted
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads; 0 uses every core
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($field:ident),+) => {
        $( if $top.$field.is_none() { $top.$field = $base.$field; } )+
    };
}

impl Params {
    /// Fills every unset field from `file`.
    pub fn over(mut self, file: Params) -> Params {
        overlay!(
            self,
            file,
            trajectory,
            v,
            kappa,
            n,
            t_range,
            t_n,
            omega_range,
            omega_n,
            cos_theta_range,
            cos_theta_n,
            p_range,
            p_n,
            q_range,
            q_n,
            v_range,
            v_n,
            omega,
            theta_n,
            phi_n,
            alpha_y,
            t_end,
            tol,
            out,
            format,
            jobs
        );
        self
    }

    pub fn from_file(path: &Path) -> Result<Params, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
    }
}

/// An evenly spaced axis, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Grid {
    fn new(name: &str, range: Option<&[f64]>, n: Option<usize>, default: (f64, f64, usize)) -> Result<Grid, CliError> {
        let (min, max) = match range {
            Some(&[a, b]) => (a, b),
            Some(_) => return Err(CliError::Config(format!("{name} range needs two values"))),
            None => (default.0, default.1),
        };
        let n = n.unwrap_or(default.2);
        if n < 2 {
            return Err(CliError::Config(format!(
                "{name} grid needs at least 2 points, got {n}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(CliError::Config(format!(
                "{name} range must be finite and increasing, got [{min}, {max}]"
            )));
        }
        Ok(Grid { min, max, n })
    }

    fn within(self, name: &str, lo: f64, hi: f64, open_lo: bool, open_hi: bool) -> Result<Grid, CliError> {
        let lo_ok = if open_lo { self.min > lo } else { self.min >= lo };
        let hi_ok = if open_hi { self.max < hi } else { self.max <= hi };
        if lo_ok && hi_ok {
            Ok(self)
        } else {
            let (l, r) = (if open_lo { "(" } else { "[" }, if open_hi { ")" } else { "]" });
            Err(CliError::Config(format!("{name} range must lie in {l}{lo}, {hi}{r}")))
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

/// A speed axis: a single value or a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Speeds {
    Single(f64),
    Sweep(Grid),
}

impl Speeds {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Speeds::Single(v) => vec![*v],
            Speeds::Sweep(g) => g.points(),
        }
    }
}

/// The validated configuration of one run. Everything that shapes the
/// output is here and goes into the header; the output path and thread
/// count do not.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(serialize_with = "kind_names", skip_serializing_if = "Vec::is_empty")]
    pub trajectories: Vec<TrajectoryKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Speeds>,
    pub kappa: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_theta: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: usize,
}

fn kind_names<S: serde::Serializer>(kinds: &[TrajectoryKind], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(kinds.iter().map(|k| k.name()))
}

fn speed(v: f64, what: &str) -> Result<f64, CliError> {
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{what} must lie in [0, 1), got {v}")))
    }
}

fn speeds(p: &Params, default: (f64, f64, usize)) -> Result<Speeds, CliError> {
    match (p.v, &p.v_range) {
        (Some(_), Some(_)) => Err(CliError::Config("give either v or v_range, not both".into())),
        (Some(v), None) => Ok(Speeds::Single(speed(v, "v")?)),
        (None, range) => {
            let g = Grid::new("v", range.as_deref(), p.v_n.or(p.n), default)?;
            Ok(Speeds::Sweep(g.within("v", 0.0, 1.0, false, true)?))
        }
    }
}

impl RunConfig {
    pub fn resolve(command: Command, p: Params) -> Result<RunConfig, CliError> {
        let trajectories = match &p.trajectory {
            None => TrajectoryKind::ALL.to_vec(),
            Some(s) => vec![s
                .parse::<TrajectoryKind>()
                .map_err(|e| CliError::Config(e.to_string()))?],
        };
        let kappa = p.kappa.unwrap_or(1.0);
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(CliError::Config(format!(
                "kappa must be positive and finite, got {kappa}"
            )));
        }
        let default_tol = match command {
            Command::Power | Command::Distribution => 1e-10,
            Command::Energy | Command::Verify => 1e-10,
            Command::Beta | Command::Spectrum => 1e-8,
            Command::Particles => 1e-4,
            Command::Pitcher => 1e-12,
        };
        let tol = p.tol.unwrap_or(default_tol);
        if !(tol > 0.0 && tol < 1.0) {
            return Err(CliError::Config(format!("tol must lie in (0, 1), got {tol}")));
        }
        let single_v = |default: f64| -> Result<Option<Speeds>, CliError> {
            if p.v_range.is_some() {
                return Err(CliError::Config(format!(
                    "{} takes a single v, not v_range",
                    command.name()
                )));
            }
            Ok(Some(Speeds::Single(speed(p.v.unwrap_or(default), "v")?)))
        };

        let mut cfg = RunConfig {
            command,
            trajectories,
            v: None,
            kappa,
            tol,
            t: None,
            omega: None,
            cos_theta: None,
            p: None,
            q: None,
            omegas: None,
            theta: None,
            phi: None,
            alpha_y: None,
            t_end: None,
            format: p.format.unwrap_or(Format::Csv),
            out: p.out.clone(),
            jobs: p.jobs.unwrap_or(0),
        };
        match command {
            Command::Power => {
                cfg.v = single_v(0.9)?;
                cfg.t = Some(Grid::new("t", p.t_range.as_deref(), p.t_n.or(p.n), (-5.0, 5.0, 1001))?);
            }
            Command::Energy => cfg.v = Some(speeds(&p, (0.01, 0.99, 99))?),
            Command::Beta => {
                cfg.v = single_v(0.9)?;
                let p_grid = Grid::new("p", p.p_range.as_deref(), p.p_n.or(p.n), (0.01, 5.0, 100))?;
                cfg.p = Some(p_grid.within("p", 0.0, f64::INFINITY, true, true)?);
                if p.q_range.is_some() || p.q_n.is_some() {
                    let q_grid = Grid::new("q", p.q_range.as_deref(), p.q_n, (0.01, 5.0, 100))?;
                    cfg.q = Some(q_grid.within("q", 0.0, f64::INFINITY, true, true)?);
                }
            }
            Command::Spectrum => {
                cfg.v = single_v(0.9)?;
                let g = Grid::new("omega", p.omega_range.as_deref(), p.omega_n.or(p.n), (0.01, 10.0, 100))?;
                cfg.omega = Some(g.within("omega", 0.0, f64::INFINITY, true, true)?);
            }
            Command::Distribution => {
                cfg.v = single_v(0.95)?;
                let omegas = p.omega.clone().unwrap_or_else(|| vec![1.0, 4.0]);
                if omegas.is_empty() || omegas.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
                    return Err(CliError::Config("omega values must be positive and finite".into()));
                }
                cfg.omegas = Some(omegas);
                cfg.theta = Some(Grid::new("theta", None, p.theta_n.or(p.n), (0.0, PI, 91))?);
                cfg.phi = Some(Grid::new("phi", None, p.phi_n, (0.0, 2.0 * PI, 73))?);
            }
            Command::Particles => cfg.v = Some(speeds(&p, (0.05, 0.99, 20))?),
            Command::Verify => {
                cfg.v = single_v(0.9)?;
                let w = Grid::new("omega", p.omega_range.as_deref(), p.omega_n.or(p.n), (0.2, 10.0, 20))?;
                cfg.omega = Some(w.within("omega", 0.0, f64::INFINITY, true, true)?);
                let t = Grid::new(
                    "cos_theta",
                    p.cos_theta_range.as_deref(),
                    p.cos_theta_n,
                    (-0.95, 0.95, 20),
                )?;
                cfg.cos_theta = Some(t.within("cos_theta", -1.0, 1.0, false, false)?);
            }
            Command::Pitcher => {
                let v0 = p.v.unwrap_or(0.9);
                let alpha_y = p.alpha_y.unwrap_or(1.0);
                let params = ProjectileParams::new(v0, alpha_y).map_err(|e| CliError::Config(e.to_string()))?;
                let t_end = p.t_end.unwrap_or(20.0 / params.kappa());
                if !(t_end >= 0.0 && t_end.is_finite()) {
                    return Err(CliError::Config(format!(
                        "t_end must be finite and non-negative, got {t_end}"
                    )));
                }
                cfg.trajectories = Vec::new();
                cfg.v = Some(Speeds::Single(v0));
                cfg.kappa = params.kappa();
                cfg.alpha_y = Some(alpha_y);
                cfg.t_end = Some(t_end);
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ends_exact() {
        let g = Grid {
            min: -5.0,
            max: 5.0,
            n: 7,
        };
        let pts = g.points();
        assert_eq!(pts.len(), 7);
        assert_eq!((pts[0], pts[6]), (-5.0, 5.0));
    }

    #[test]
    fn flags_override_file() {
        let file = Params {
            v: Some(0.3),
            kappa: Some(2.0),
            ..Params::default()
        };
        let flags = Params {
            v: Some(0.5),
            ..Params::default()
        };
        let merged = flags.over(file);
        assert_eq!((merged.v, merged.kappa), (Some(0.5), Some(2.0)));
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = [
            Params {
                n: Some(1),
                ..Params::default()
            },
            Params {
                t_range: Some(vec![3.0, -3.0]),
                ..Params::default()
            },
            Params {
                tol: Some(0.0),
                ..Params::default()
            },
            Params {
                trajectory: Some("hyperbolic".into()),
                ..Params::default()
            },
            Params {
                v: Some(1.0),
                ..Params::default()
            },
        ];
        for p in bad {
            assert!(RunConfig::resolve(Command::Power, p).is_err());
        }
        let p = Params {
            p_range: Some(vec![0.0, 1.0]),
            ..Params::default()
        };
        assert!(RunConfig::resolve(Command::Beta, p).is_err());
    }

    #[test]
    fn defaults_follow_command() {
        let c = RunConfig::resolve(Command::Distribution, Params::default()).unwrap();
        assert_eq!(c.v, Some(Speeds::Single(0.95)));
        assert_eq!(c.omegas, Some(vec![1.0, 4.0]));
        let c = RunConfig::resolve(Command::Energy, Params::default()).unwrap();
        assert!(matches!(c.v, Some(Speeds::Sweep(_))));
        assert_eq!(c.trajectories.len(), 2);
    }
}
