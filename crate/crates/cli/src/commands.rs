use std::path::PathBuf;

use coinwalk_core::classical::{self, marginal, symmetric_variance, ClassicalJointState};
use coinwalk_core::classify::classify;
use coinwalk_core::closed_form::{
    classical_closed, classical_fourier_oracle, fourier_oracle, quantum_amplitudes_closed,
};
use coinwalk_core::io::{csv, curve_csv, num, uniform_grid};
use coinwalk_core::limit::{classical_limit_density, density_curve, rescaled_density, LimitParams};
use coinwalk_core::quantum::{distribution, evolve, variance_series};
use coinwalk_core::{CoinSetup, CorrelationParams, SpatialDistribution};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    ClosedForm, Classify, Format, LimitDensity, Method, SetupArgs, SimulateClassical,
    SimulateQuantum, VarianceScan,
};
use crate::error::CliError;

pub type Result<T> = std::result::Result<T, CliError>;

/// A document to write, to `path` or standard output.
#[derive(Debug)]
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub body: String,
}

fn artifact(path: &Option<PathBuf>, body: String) -> Vec<Artifact> {
    vec![Artifact {
        path: path.clone(),
        body,
    }]
}

fn setup_from(a: &SetupArgs) -> Result<CoinSetup> {
    Ok(CoinSetup::new(a.theta, a.phi1, a.phi2, a.varphi, a.xi)?)
}

fn render(dist: &SpatialDistribution, format: Format) -> String {
    match format {
        Format::Csv => dist.to_csv(),
        Format::Json => dist.to_json() + "\n",
    }
}

fn joint_json(state: &ClassicalJointState) -> String {
    let sites: Vec<_> = state
        .iter()
        .filter(|&(_, u, d)| u > 0.0 || d > 0.0)
        .map(|(j, u, d)| json!({ "j": j, "up": u, "down": d }))
        .collect();
    json!({ "n": state.n(), "joint": sites }).to_string() + "\n"
}

pub fn simulate_quantum(cmd: &SimulateQuantum) -> Result<Vec<Artifact>> {
    let setup = setup_from(&cmd.setup)?;
    let dist = distribution(&evolve(&setup, cmd.n));
    Ok(artifact(&cmd.output.out, render(&dist, cmd.format)))
}

pub fn simulate_classical(cmd: &SimulateClassical) -> Result<Vec<Artifact>> {
    let params = CorrelationParams::with_up(cmd.delta, cmd.q0_up)?;
    let state = classical::evolve(&params, cmd.n);
    let body = match (cmd.joint, cmd.format) {
        (true, Format::Csv) => state.to_csv(),
        (true, Format::Json) => joint_json(&state),
        (false, format) => render(&marginal(&state), format),
    };
    Ok(artifact(&cmd.output.out, body))
}

pub fn closed_form(cmd: &ClosedForm) -> Result<Vec<Artifact>> {
    let body = match (cmd.delta, cmd.theta) {
        (Some(delta), _) => {
            let params = CorrelationParams::with_up(delta, cmd.q0_up)?;
            let state = match cmd.method {
                Method::Direct => classical::evolve(&params, cmd.n),
                Method::Lemma => classical_closed(&params, cmd.n),
                Method::Fourier => classical_fourier_oracle(&params, cmd.n),
            };
            state.to_csv()
        }
        (None, Some(theta)) => {
            let setup = CoinSetup::new(theta, cmd.phi1, cmd.phi2, cmd.varphi, cmd.xi)?;
            let table = match cmd.method {
                Method::Direct => evolve(&setup, cmd.n),
                Method::Lemma => quantum_amplitudes_closed(&setup, cmd.n),
                Method::Fourier => fourier_oracle(&setup, cmd.n),
            };
            table.to_csv()
        }
        (None, None) => return Err(CliError::Usage("either --theta or --delta is required".into())),
    };
    Ok(artifact(&cmd.output.out, body))
}

pub fn classify_setup(cmd: &Classify) -> Result<Vec<Artifact>> {
    let setup = setup_from(&cmd.setup)?;
    Ok(artifact(&cmd.output.out, classify(&setup).to_json() + "\n"))
}

pub fn variance_scan(cmd: &VarianceScan) -> Result<Vec<Artifact>> {
    let (lo, hi) = match cmd.n {
        Some(n) => (n, n),
        None => (0, cmd.n_max),
    };
    let blocks: Vec<Vec<[String; 3]>> = if let Some(thetas) = &cmd.thetas {
        thetas
            .par_iter()
            .map(|&theta| {
                let setup = CoinSetup::symmetric_representative(theta)?;
                let series = variance_series(&setup, hi);
                Ok((lo..=hi)
                    .map(|n| [n.to_string(), num(theta), num(series[n])])
                    .collect())
            })
            .collect::<Result<_>>()?
    } else {
        let deltas = cmd.deltas.as_deref().unwrap_or_default();
        deltas
            .par_iter()
            .map(|&delta| {
                (lo..=hi)
                    .map(|n| Ok([n.to_string(), num(delta), num(symmetric_variance(delta, n)?)]))
                    .collect()
            })
            .collect::<Result<_>>()?
    };
    let body = csv("n,param,variance", blocks.into_iter().flatten());
    Ok(artifact(&cmd.output.out, body))
}

fn long_csv(label: &str, curves: Vec<(f64, Vec<(f64, f64)>)>) -> String {
    csv(
        &format!("{label},x,f"),
        curves.into_iter().flat_map(|(param, pts)| {
            pts.into_iter().map(move |(x, f)| [num(param), num(x), num(f)])
        }),
    )
}

pub fn limit_density(cmd: &LimitDensity) -> Result<Vec<Artifact>> {
    if cmd.points < 2 || !(cmd.x_min < cmd.x_max) {
        return Err(CliError::Usage(
            "the x grid needs --points >= 2 and --x-min < --x-max".into(),
        ));
    }
    let grid = uniform_grid(cmd.x_min, cmd.x_max, cmd.points);
    let setup_at = |theta: f64| CoinSetup::new(theta, cmd.phi1, cmd.phi2, cmd.varphi, cmd.xi);
    let params_at = |theta: f64, lambda: Option<f64>| -> Result<LimitParams> {
        Ok(match lambda {
            Some(l) => LimitParams::from_theta(theta, l)?,
            None => LimitParams::of_walk(&setup_at(theta)?)?,
        })
    };

    let mut out = Vec::new();
    let mut companion = None;
    if let Some(deltas) = &cmd.deltas {
        let curves = deltas
            .par_iter()
            .map(|&d| {
                let pts = grid
                    .iter()
                    .map(|&x| Ok((x, classical_limit_density(d, x)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((d, pts))
            })
            .collect::<Result<Vec<_>>>()?;
        if let [single] = deltas.as_slice() {
            if let Some(n) = cmd.empirical_n {
                let params = CorrelationParams::symmetric(*single)?;
                let dist = marginal(&classical::evolve(&params, n));
                companion = Some(rescaled_density(&dist, (n as f64).sqrt()));
            }
        }
        out.push(if curves.len() == 1 {
            curve_csv(&curves[0].1)
        } else {
            long_csv("delta", curves)
        });
    } else if let Some(thetas) = &cmd.thetas {
        let curves = thetas
            .par_iter()
            .map(|&t| Ok((t, density_curve(&params_at(t, cmd.lambda)?, &grid))))
            .collect::<Result<Vec<_>>>()?;
        out.push(long_csv("theta", curves));
    } else if let (Some(theta), Some(lambdas)) = (cmd.theta, &cmd.lambdas) {
        let curves = lambdas
            .par_iter()
            .map(|&l| Ok((l, density_curve(&params_at(theta, Some(l))?, &grid))))
            .collect::<Result<Vec<_>>>()?;
        out.push(long_csv("lambda", curves));
    } else if let Some(theta) = cmd.theta {
        let params = params_at(theta, cmd.lambda)?;
        out.push(curve_csv(&density_curve(&params, &grid)));
        if let Some(n) = cmd.empirical_n {
            if cmd.lambda.is_some() {
                return Err(CliError::Usage(
                    "--empirical-n needs the tilt derived from the setup flags, not --lambda".into(),
                ));
            }
            let dist = distribution(&evolve(&setup_at(theta)?, n));
            companion = Some(rescaled_density(&dist, n.max(1) as f64));
        }
    }

    if cmd.empirical_n.is_some() && companion.is_none() {
        return Err(CliError::Usage(
            "--empirical-n applies to a single curve only".into(),
        ));
    }
    let mut artifacts = artifact(&cmd.output.out, out.concat());
    if let (Some(path), Some(points)) = (&cmd.empirical_out, companion) {
        artifacts.push(Artifact {
            path: Some(path.clone()),
            body: curve_csv(&points),
        });
    }
    Ok(artifacts)
}
