use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::potential::{to_complex, FramePotential};
use super::sic::{certify_sic, SicCertificate};
use super::{Fiducial, GroupKind};
use crate::Result;

pub const DEFAULT_RESTARTS: usize = 50;

const HISTORY: usize = 12;
const ARMIJO: f64 = 1e-4;
const GRAD_TOL: f64 = 1e-12;

/// Result of a local minimization on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let n = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= n);
}

/// Limited-memory BFGS for a scale-invariant objective, retracting every
/// iterate onto the unit sphere.
///
/// Stops when the gradient norm drops below `1e-12`, when no step can be
/// accepted, or after `max_iters` iterations. Near the minimum the objective
/// stops resolving progress before the gradient does, so a step that keeps
/// the value within rounding and shrinks the gradient is also accepted.
pub fn minimize_on_sphere<F>(objective: F, x0: &[f64], max_iters: usize) -> SphereMinimum
where
    F: Fn(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    normalize(&mut x);
    let mut g = vec![0.0; n];
    let mut f = objective(&x, &mut g);
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(HISTORY);
    let mut x_new = vec![0.0; n];
    let mut g_new = vec![0.0; n];
    let mut iterations = 0;

    while iterations < max_iters {
        let gnorm = dot(&g, &g).sqrt();
        if gnorm < GRAD_TOL {
            break;
        }
        iterations += 1;

        // two-loop recursion
        let mut p: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &p);
            p.iter_mut().zip(y).for_each(|(pi, yi)| *pi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dot(s, y) / dot(y, y);
            p.iter_mut().for_each(|v| *v *= gamma);
        } else {
            let scale = (0.1 / gnorm).min(1.0);
            p.iter_mut().for_each(|v| *v *= scale);
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &p);
            p.iter_mut().zip(s).for_each(|(pi, si)| *pi += (a - b) * si);
        }
        let radial = dot(&x, &p);
        p.iter_mut().zip(&x).for_each(|(pi, xi)| *pi -= radial * xi);
        let mut slope = dot(&g, &p);
        if slope >= 0.0 {
            history.clear();
            p = g.iter().map(|v| -v * (0.1 / gnorm).min(1.0)).collect();
            slope = dot(&g, &p);
        }

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            x_new
                .iter_mut()
                .zip(x.iter().zip(&p))
                .for_each(|(xn, (xi, pi))| *xn = xi + t * pi);
            normalize(&mut x_new);
            let f_new = objective(&x_new, &mut g_new);
            let sufficient = f_new <= f + ARMIJO * t * slope;
            let flat = f_new <= f + 8.0 * f64::EPSILON * f.abs().max(1.0)
                && dot(&g_new, &g_new) < gnorm * gnorm;
            if sufficient || flat {
                accepted = true;
                let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
                let sy = dot(&s, &y);
                if sy > 1e-300 {
                    if history.len() == HISTORY {
                        history.pop_front();
                    }
                    history.push_back((s, y, 1.0 / sy));
                }
                core::mem::swap(&mut x, &mut x_new);
                core::mem::swap(&mut g, &mut g_new);
                f = f_new;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let gradient_norm = dot(&g, &g).sqrt();
    SphereMinimum {
        x,
        value: f,
        gradient_norm,
        iterations,
    }
}

/// Parameters of a fiducial search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub group: GroupKind,
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl SearchOptions {
    pub fn weyl_heisenberg(d: usize, seed: u64) -> Self {
        Self {
            group: GroupKind::WeylHeisenberg(d),
            seed,
            restarts: DEFAULT_RESTARTS,
            max_iters: 5000,
            tol: 1e-8,
        }
    }
}

/// One local minimization from a seeded random start.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub restart: usize,
    pub fiducial: Fiducial,
    pub potential: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub certificate: SicCertificate,
}

/// Best fiducial found, its certificate, and one record per restart run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub fiducial: Fiducial,
    pub potential: f64,
    pub certificate: SicCertificate,
    pub log: Vec<RestartOutcome>,
}

impl SearchOutcome {
    /// Folds restart outcomes in index order, stopping after the first
    /// certified one. Returns `None` for an empty input.
    pub fn from_restarts<I: IntoIterator<Item = RestartOutcome>>(outcomes: I) -> Option<Self> {
        let mut log: Vec<RestartOutcome> = Vec::new();
        for o in outcomes {
            let pass = o.certificate.pass;
            log.push(o);
            if pass {
                break;
            }
        }
        let best = log
            .iter()
            .min_by(|a, b| {
                b.certificate
                    .pass
                    .cmp(&a.certificate.pass)
                    .then(a.potential.total_cmp(&b.potential))
            })?
            .clone();
        Some(Self {
            fiducial: best.fiducial,
            potential: best.potential,
            certificate: best.certificate,
            log,
        })
    }
}

/// Random start for restart `r`: ChaCha8 seeded with `seed`, stream `r`,
/// filled with standard normal real and imaginary parts.
fn random_start(d: usize, seed: u64, restart: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    (0..2 * d).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// Runs and certifies restart `restart`. Independent of every other restart.
pub fn evaluate_restart(
    potential: &FramePotential,
    opts: &SearchOptions,
    restart: usize,
) -> Result<RestartOutcome> {
    let d = potential.dimension();
    let x0 = random_start(d, opts.seed, restart);
    let min = minimize_on_sphere(|x, g| potential.value_and_gradient(x, g), &x0, opts.max_iters);
    let fiducial = Fiducial::normalized(to_complex(&min.x))?;
    let orbit = potential.group().orbit(&fiducial)?;
    let certificate = certify_sic(&orbit, opts.tol)?;
    Ok(RestartOutcome {
        restart,
        potential: potential.value_of(fiducial.amplitudes()),
        fiducial,
        iterations: min.iterations,
        gradient_norm: min.gradient_norm,
        certificate,
    })
}

/// Sequential restarts; stops at the first certified fiducial.
pub fn search(opts: &SearchOptions) -> Result<SearchOutcome> {
    let potential = FramePotential::new(opts.group)?;
    let mut outcomes = Vec::new();
    for r in 0..opts.restarts.max(1) {
        let o = evaluate_restart(&potential, opts, r)?;
        let pass = o.certificate.pass;
        outcomes.push(o);
        if pass {
            break;
        }
    }
    Ok(SearchOutcome::from_restarts(outcomes).expect("at least one restart"))
}

/// Weyl-Heisenberg fiducial search with [`DEFAULT_RESTARTS`] restarts.
/// Non-convergence is reported through the certificate, not as an error.
pub fn search_fiducial(
    d: usize,
    seed: u64,
    max_iters: usize,
    tol: f64,
) -> Result<(Fiducial, SicCertificate)> {
    let opts = SearchOptions {
        max_iters,
        tol,
        ..SearchOptions::weyl_heisenberg(d, seed)
    };
    let out = search(&opts)?;
    Ok((out.fiducial, out.certificate))
}

