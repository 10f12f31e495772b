//! One table per command. Grid points are evaluated in parallel and
//! collected in grid order.

use mirror_radiance::correspondence::check_identity;
use mirror_radiance::pitcher::{closed_form_state, integrate_eom, ProjectileParams};
use mirror_radiance::spectra::{beta_sq, energy_spectrum, particle_count, particle_spectrum, spectral_distribution};
use mirror_radiance::{AngularPoint, ModePair, TrajectoryKind, TrajectoryParams};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{Row, Table};

/// Largest pairwise relative spread allowed among the three energy routes.
pub const ENERGY_TRIPLE_LIMIT: f64 = 1e-6;
/// Largest residual allowed in the mode/angle identity.
pub const IDENTITY_LIMIT: f64 = 1e-12;

/// What a run produced. `failures` is non-empty only for a verification
/// that did not pass.
pub struct Outcome {
    pub table: Table,
    pub failures: Vec<String>,
}

fn par_rows<T, U, F>(items: Vec<T>, f: F) -> Result<Vec<U>, CliError>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Result<U, CliError> + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

fn params(kind: TrajectoryKind, v: f64, kappa: f64) -> Result<TrajectoryParams, CliError> {
    Ok(TrajectoryParams::new(kind, v, kappa)?)
}

fn single_v(cfg: &RunConfig) -> f64 {
    cfg.v
        .as_ref()
        .map(|s| s.points()[0])
        .expect("resolved config has a speed")
}

/// Cartesian product of the trajectories with the given points.
fn per_kind<T: Clone>(cfg: &RunConfig, points: &[T]) -> Vec<(TrajectoryKind, T)> {
    cfg.trajectories
        .iter()
        .flat_map(|&k| points.iter().cloned().map(move |p| (k, p)))
        .collect()
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let table = match cfg.command {
        Command::Power => power(cfg)?,
        Command::Energy => energy(cfg)?,
        Command::Beta => beta(cfg)?,
        Command::Spectrum => spectrum(cfg)?,
        Command::Distribution => distribution(cfg)?,
        Command::Particles => particles(cfg)?,
        Command::Pitcher => pitcher(cfg)?,
        Command::Verify => return verify(cfg),
    };
    Ok(Outcome {
        table,
        failures: Vec::new(),
    })
}

fn power(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = single_v(cfg);
    let ts = cfg.t.expect("power has a time grid").points();
    let rows = par_rows(per_kind(cfg, &ts), |(kind, t)| {
        let s = params(kind, v, cfg.kappa)?.power_sample(t);
        Ok(vec![kind.name().into(), t.into(), s.larmor.into(), s.feynman.into()])
    })?;
    Ok(Table {
        columns: vec!["trajectory", "t", "P_L", "P_F"],
        rows,
    })
}

fn energy(cfg: &RunConfig) -> Result<Table, CliError> {
    let vs = cfg.v.as_ref().expect("energy has speeds").points();
    let rows = par_rows(per_kind(cfg, &vs), |(kind, v)| {
        let b = params(kind, v, cfg.kappa)?.total_energy_numeric(cfg.tol)?;
        Ok(vec![
            kind.name().into(),
            v.into(),
            b.e_closed.into(),
            b.e_larmor.into(),
            b.e_feynman.into(),
            b.max_rel_spread().into(),
        ])
    })?;
    Ok(Table {
        columns: vec!["trajectory", "v", "E_closed", "E_larmor", "E_feynman", "max_rel_spread"],
        rows,
    })
}

fn beta(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = single_v(cfg);
    let ps = cfg.p.expect("beta has a p grid").points();
    match cfg.q {
        None => {
            let rows = par_rows(per_kind(cfg, &ps), |(kind, p)| {
                let n = particle_spectrum(&params(kind, v, cfg.kappa)?, p, f64::INFINITY, cfg.tol)?;
                Ok(vec![kind.name().into(), p.into(), n.value.into(), n.abs_err.into()])
            })?;
            Ok(Table {
                columns: vec!["trajectory", "p", "N_p", "N_p_err"],
                rows,
            })
        }
        Some(q) => {
            let qs = q.points();
            let pq: Vec<(f64, f64)> = ps.iter().flat_map(|&p| qs.iter().map(move |&q| (p, q))).collect();
            let rows = par_rows(per_kind(cfg, &pq), |(kind, (p, q))| {
                let b = beta_sq(&params(kind, v, cfg.kappa)?, ModePair::new(p, q)?)?;
                Ok(vec![kind.name().into(), p.into(), q.into(), b.into()])
            })?;
            Ok(Table {
                columns: vec!["trajectory", "p", "q", "beta_sq"],
                rows,
            })
        }
    }
}

fn spectrum(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = single_v(cfg);
    let ws = cfg.omega.expect("spectrum has an omega grid").points();
    let rows = par_rows(per_kind(cfg, &ws), |(kind, w)| {
        let r = energy_spectrum(&params(kind, v, cfg.kappa)?, w, cfg.tol)?;
        Ok(vec![kind.name().into(), w.into(), r.value.into(), r.abs_err.into()])
    })?;
    Ok(Table {
        columns: vec!["trajectory", "omega", "I_omega", "I_omega_err"],
        rows,
    })
}

/// Surface `r = dI/dΩ(θ)` around the line of motion, which is the `x`
/// axis. The distribution does not depend on `φ`.
fn distribution(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = single_v(cfg);
    let thetas = cfg.theta.expect("distribution has a theta grid").points();
    let phis = cfg.phi.expect("distribution has a phi grid").points();
    let omegas = cfg.omegas.clone().expect("distribution has frequencies");
    let points: Vec<(f64, f64)> = omegas
        .iter()
        .flat_map(|&w| thetas.iter().map(move |&th| (w, th)))
        .collect();
    let rings = par_rows(per_kind(cfg, &points), |(kind, (w, th))| {
        let t = th.cos().clamp(-1.0, 1.0);
        let r = spectral_distribution(&params(kind, v, cfg.kappa)?, AngularPoint::new(w, t)?)?.value;
        Ok((kind, w, th, r))
    })?;
    let mut rows: Vec<Row> = Vec::with_capacity(rings.len() * phis.len());
    for (kind, w, th, r) in rings {
        let (s, c) = th.sin_cos();
        for &phi in &phis {
            let (sp, cp) = phi.sin_cos();
            rows.push(vec![
                kind.name().into(),
                w.into(),
                th.into(),
                phi.into(),
                r.into(),
                (r * c).into(),
                (r * s * cp).into(),
                (r * s * sp).into(),
            ]);
        }
    }
    Ok(Table {
        columns: vec!["trajectory", "omega", "theta", "phi", "r", "x", "y", "z"],
        rows,
    })
}

fn particles(cfg: &RunConfig) -> Result<Table, CliError> {
    let vs = cfg.v.as_ref().expect("particles has speeds").points();
    let rows = par_rows(per_kind(cfg, &vs), |(kind, v)| {
        let n = particle_count(&params(kind, v, cfg.kappa)?, cfg.tol)?;
        Ok(vec![
            kind.name().into(),
            v.into(),
            n.classical.into(),
            n.modes_one_side.into(),
            n.rel_disagreement().into(),
        ])
    })?;
    Ok(Table {
        columns: vec!["trajectory", "v", "N_classical", "N_modes_one_side", "rel_disagreement"],
        rows,
    })
}

fn pitcher(cfg: &RunConfig) -> Result<Table, CliError> {
    let v0 = single_v(cfg);
    let p = ProjectileParams::new(v0, cfg.alpha_y.expect("pitcher has a force"))?;
    let trace = integrate_eom(&p, cfg.t_end.expect("pitcher has a run length"), cfg.tol)?;
    let k = p.kappa();
    let rows = trace
        .states
        .iter()
        .map(|s| {
            let c = closed_form_state(&p, s.t);
            vec![
                s.t.into(),
                s.x.into(),
                s.y.into(),
                s.v_x.into(),
                s.v_y.into(),
                s.gamma.into(),
                c.x.into(),
                c.y.into(),
                s.hyperbola_residual_rel(k).into(),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec![
            "t",
            "x",
            "y",
            "v_x",
            "v_y",
            "gamma",
            "x_exact",
            "y_exact",
            "hyperbola_residual_rel",
        ],
        rows,
    })
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let v = single_v(cfg);
    let ws = cfg.omega.expect("verify has an omega grid").points();
    let ts = cfg.cos_theta.expect("verify has a cos_theta grid").points();
    let grid: Vec<(f64, f64)> = ws.iter().flat_map(|&w| ts.iter().map(move |&t| (w, t))).collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut record = |kind: TrajectoryKind, check: &str, value: f64, limit: f64| {
        let pass = value <= limit;
        if !pass {
            failures.push(format!("{kind} {check}: {value:e} > {limit:e}"));
        }
        rows.push(vec![
            kind.name().into(),
            check.into(),
            value.into(),
            limit.into(),
            pass.into(),
        ]);
    };
    for &kind in &cfg.trajectories {
        let tp = params(kind, v, cfg.kappa)?;
        let spread = tp.total_energy_numeric(cfg.tol)?.max_rel_spread();
        record(kind, "energy_triple_spread", spread, ENERGY_TRIPLE_LIMIT);

        let checks = grid
            .par_iter()
            .map(|&(w, t)| check_identity(&tp, w, t))
            .collect::<Result<Vec<_>, _>>()?;
        let worst =
            |f: fn(&mirror_radiance::correspondence::IdentityCheck) -> f64| checks.iter().map(f).fold(0.0f64, f64::max);
        record(kind, "identity_max_residual", worst(|c| c.residual), IDENTITY_LIMIT);
        record(
            kind,
            "distribution_parity_defect",
            worst(|c| c.parity_defect),
            IDENTITY_LIMIT,
        );
    }
    Ok(Outcome {
        table: Table {
            columns: vec!["trajectory", "check", "value", "limit", "pass"],
            rows,
        },
        failures,
    })
}
