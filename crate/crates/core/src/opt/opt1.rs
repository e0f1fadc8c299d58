use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::simplex::{project_to_simplex, random_simplex_point, solve_dense};
use super::{evaluate, Method, OptResult};
use crate::error::{Error, Result};
use crate::subset::SubsetVector;

const SEED: u64 = 0x0bad_5eed_0001;
const STARTS: usize = 64;
/// The numeric solver works on all `2^q - 1` coordinates; beyond this it is
/// too slow to be useful.
pub const MAX_OPT1_COLORS: usize = 6;
const DESCENT_ITERS: usize = 4000;
/// Barrier weights 1e-4, 1e-5, …, 1e-12. Larger weights pull every start
/// to the same symmetric center.
const BARRIER_START: f64 = 1e-4;
const BARRIER_STAGES: usize = 9;
const NEWTON_ITERS: usize = 50;
const FEAS_TOL: f64 = 1e-9;

/// Residual of the KKT system of Problem 1 at `alpha`, minimized over the
/// multipliers `ν` (for `v = 1`) and `λ >= 0` (for `e >= γ`).
///
/// Collects stationarity on the support, sign conditions off it, primal
/// feasibility and complementary slackness; the largest term is returned.
pub fn opt1_kkt_residual(alpha: &SubsetVector, gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("γ must be a finite nonnegative number, got {gamma}")));
    }
    let x = alpha.as_slice();
    let adj = disjoint_lists(alpha.q());
    let h = disjoint_weight(&adj, x);
    let g = sizes_log(alpha.q());
    Ok(kkt(x, &g, &h, gamma, e_from(x, &h)).0)
}

fn sizes_log(q: usize) -> Vec<f64> {
    (1u32..1 << q).map(|m| (m.count_ones() as f64).ln()).collect()
}

/// For each coordinate, the coordinates of disjoint subsets.
fn disjoint_lists(q: usize) -> Vec<Vec<usize>> {
    let n = (1usize << q) - 1;
    (0..n)
        .map(|i| (0..n).filter(|&j| (i + 1) & (j + 1) == 0).collect())
        .collect()
}

fn disjoint_weight(adj: &[Vec<usize>], x: &[f64]) -> Vec<f64> {
    adj.iter().map(|l| l.iter().map(|&j| x[j]).sum()).collect()
}

fn e_from(x: &[f64], h: &[f64]) -> f64 {
    0.5 * x.iter().zip(h).map(|(a, b)| a * b).sum::<f64>()
}

/// `(residual, ν, λ)`.
fn kkt(x: &[f64], g: &[f64], h: &[f64], gamma: f64, e: f64) -> (f64, f64, f64) {
    let v: f64 = x.iter().sum();
    let primal = (v - 1.0).abs().max(gamma - e).max(0.0);
    let gap = (e - gamma).abs();
    // Best ν for fixed λ is the midpoint between the smallest supported
    // value and the largest value anywhere.
    let at = |lam: f64| {
        let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..x.len() {
            let a = g[i] + lam * h[i];
            hi = hi.max(a);
            if x[i] > 0.0 {
                lo = lo.min(a);
            }
        }
        (((hi - lo) / 2.0).max(lam * gap), (hi + lo) / 2.0)
    };
    let mut upper = 1.0;
    while upper < 1e12 && at(2.0 * upper).0 < at(upper).0 {
        upper *= 2.0;
    }
    let (mut a, mut b) = (0.0, 2.0 * upper);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if at(c).0 <= at(d).0 {
            b = d;
        } else {
            a = c;
        }
    }
    let mut lam = (a + b) / 2.0;
    if at(0.0).0 <= at(lam).0 {
        lam = 0.0;
    }
    let (r, nu) = at(lam);
    (r.max(primal), nu, lam)
}

struct Problem {
    q: usize,
    gamma: f64,
    g: Vec<f64>,
    adj: Vec<Vec<usize>>,
}

impl Problem {
    fn e_of(&self, x: &[f64]) -> f64 {
        e_from(x, &disjoint_weight(&self.adj, x))
    }

    /// A strictly feasible point on the segment from `x0` to the uniform
    /// vector on singletons, where `e` is largest. `None` when `γ` is the cap
    /// and no such point exists.
    fn interior_start(&self, x0: &[f64]) -> Option<Vec<f64>> {
        let n = x0.len();
        let mut top = vec![0.0; n];
        for c in 0..self.q {
            top[(1 << c) - 1] = 1.0 / self.q as f64;
        }
        let e_top = self.e_of(&top);
        if e_top <= self.gamma {
            return None;
        }
        let target = self.gamma + (e_top - self.gamma) * 0.05;
        let mix = |s: f64| -> Vec<f64> { x0.iter().zip(&top).map(|(a, b)| (1.0 - s) * a + s * b).collect() };
        if self.e_of(x0) > target {
            return Some(x0.to_vec());
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = (lo + hi) / 2.0;
            if self.e_of(&mix(mid)) > target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(mix(hi))
    }

    /// `obj + t log(e − γ)` and its gradient; `None` outside the interior.
    fn barrier(&self, x: &[f64], t: f64) -> Option<(f64, Vec<f64>)> {
        let h = disjoint_weight(&self.adj, x);
        let slack = e_from(x, &h) - self.gamma;
        if !(slack > 0.0) {
            return None;
        }
        let obj: f64 = x.iter().zip(&self.g).map(|(a, b)| a * b).sum();
        let grad = self.g.iter().zip(&h).map(|(gi, hi)| gi + t * hi / slack).collect();
        Some((obj + t * slack.ln(), grad))
    }

    /// Projected gradient ascent on the barrier function for fixed `t`.
    fn ascend(&self, mut x: Vec<f64>, t: f64) -> Vec<f64> {
        let Some((mut f, mut grad)) = self.barrier(&x, t) else { return x };
        let mut step = 1.0;
        for _ in 0..DESCENT_ITERS {
            let next = loop {
                let y: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a + step * g).collect();
                let trial = project_to_simplex(&y);
                let gain: f64 = grad.iter().zip(trial.iter().zip(&x)).map(|(g, (b, a))| g * (b - a)).sum();
                if let Some((ft, gt)) = self.barrier(&trial, t) {
                    if ft >= f + 1e-4 * gain {
                        break Some((trial, ft, gt));
                    }
                }
                step *= 0.5;
                if step < 1e-20 {
                    break None;
                }
            };
            let Some((trial, ft, gt)) = next else { break };
            let moved = x.iter().zip(&trial).fold(0f64, |m, (a, b)| m.max((a - b).abs()));
            let rise = ft - f;
            x = trial;
            f = ft;
            grad = gt;
            step = (step * 2.0).min(1e6);
            if moved < 1e-15 || rise <= 1e-15 * f.abs().max(1.0) {
                break;
            }
        }
        x
    }

    /// Follows the barrier path from a strictly feasible point down to a
    /// tiny barrier weight.
    fn run(&self, x0: Vec<f64>) -> (Vec<f64>, f64) {
        let Some(mut x) = self.interior_start(&x0) else {
            return self.finish(x0);
        };
        let mut t = BARRIER_START;
        for _ in 0..BARRIER_STAGES {
            x = self.ascend(x, t);
            t *= 0.1;
        }
        self.finish(x)
    }

    fn residual(&self, x: &[f64]) -> (f64, f64, f64) {
        let h = disjoint_weight(&self.adj, x);
        kkt(x, &self.g, &h, self.gamma, e_from(x, &h))
    }

    /// Newton's method on the support for `∇obj − ν + λ∇e = 0`, `v = 1`,
    /// `e = γ`. A coordinate that a step would drive to zero or below leaves
    /// the support. Returns the iterate with the smallest residual.
    fn polish(&self, mut x: Vec<f64>) -> Vec<f64> {
        let (err, mut nu, mut lam) = self.residual(&x);
        if lam <= 1e-14 {
            return x;
        }
        let mut best = (x.clone(), err);
        let mut support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
        for _ in 0..NEWTON_ITERS {
            if best.1 == 0.0 || support.is_empty() {
                break;
            }
            let k = support.len();
            let dim = k + 2;
            let h = disjoint_weight(&self.adj, &x);
            let e = e_from(&x, &h);
            let mut a = vec![0.0; dim * dim];
            let mut b = vec![0.0; dim];
            for (r, &i) in support.iter().enumerate() {
                for (s, &j) in support.iter().enumerate() {
                    if (i + 1) & (j + 1) == 0 {
                        a[r * dim + s] = lam;
                    }
                }
                a[r * dim + k] = -1.0;
                a[r * dim + k + 1] = h[i];
                a[k * dim + r] = 1.0;
                a[(k + 1) * dim + r] = h[i];
                b[r] = -(self.g[i] - nu + lam * h[i]);
            }
            b[k] = -(support.iter().map(|&i| x[i]).sum::<f64>() - 1.0);
            b[k + 1] = -(e - self.gamma);
            let Some(step) = solve_dense(dim, a, b) else { break };
            let next_lam = lam + step[k + 1];
            if !(next_lam >= 0.0) {
                break;
            }
            let size = step[..k].iter().fold(0f64, |m, v| m.max(v.abs()));
            for (r, &i) in support.iter().enumerate() {
                x[i] += step[r];
            }
            nu += step[k];
            lam = next_lam;
            if support.iter().any(|&i| x[i] <= 0.0) {
                support.retain(|&i| x[i] > 0.0);
                x.iter_mut().for_each(|v| *v = v.max(0.0));
                let total: f64 = x.iter().sum();
                if total <= 0.0 {
                    break;
                }
                x.iter_mut().for_each(|v| *v /= total);
                continue;
            }
            let r = self.residual(&x).0;
            if r < best.1 {
                best = (x.clone(), r);
            }
            if size < 1e-16 {
                break;
            }
        }
        best.0
    }

    /// Polishes with several pruning thresholds and keeps the lowest residual.
    fn finish(&self, x: Vec<f64>) -> (Vec<f64>, f64) {
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut last_support = None;
        for tau in [0.0, 1e-14, 1e-12, 1e-10, 1e-8, 1e-6] {
            let support: Vec<bool> = x.iter().map(|&v| v > tau).collect();
            if last_support.as_ref() == Some(&support) {
                continue;
            }
            let mut y: Vec<f64> = x.iter().zip(&support).map(|(&v, &k)| if k { v } else { 0.0 }).collect();
            last_support = Some(support);
            let s: f64 = y.iter().sum();
            y.iter_mut().for_each(|v| *v /= s);
            let y = self.polish(y);
            let r = self.residual(&y).0;
            if best.as_ref().map_or(true, |(_, br)| r < *br) {
                best = Some((y, r));
            }
        }
        best.expect("nonempty threshold list")
    }

    fn starts(&self) -> Vec<Vec<f64>> {
        let n = self.g.len();
        let full = n;
        let mut out = vec![vec![1.0 / n as f64; n]];
        let mut corner = vec![0.0; n];
        corner[full - 1] = 1.0;
        out.push(corner);
        for m in 1..full {
            let comp = full ^ m;
            if m < comp && out.len() < STARTS / 2 {
                let mut x = vec![0.0; n];
                x[m - 1] = 0.5;
                x[comp - 1] = 0.5;
                out.push(x);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ self.q as u64);
        // Alternate dense points with points on a few random coordinates.
        while out.len() < STARTS {
            if out.len() % 2 == 0 {
                out.push(random_simplex_point(&mut rng, n));
            } else {
                let k = rng.gen_range(2..=(self.q + 1).min(n));
                let weights = random_simplex_point(&mut rng, k);
                let mut x = vec![0.0; n];
                for w in weights {
                    x[rng.gen_range(0..n)] += w;
                }
                out.push(x);
            }
        }
        out
    }
}

/// Numeric optimum of Problem 1 by multi-start log-barrier iterations over
/// the full subset vector, followed by a Newton polish on the active face.
///
/// Always returns the best feasible point found; `converged` tells whether
/// its KKT residual is within tolerance.
pub fn solve_opt1_numeric(q: usize, gamma: f64) -> Result<OptResult> {
    if !(2..=MAX_OPT1_COLORS).contains(&q) {
        return Err(Error::TooLarge(format!(
            "the numeric solver supports 2 <= q <= {MAX_OPT1_COLORS}, got {q}"
        )));
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("γ must be a finite nonnegative number, got {gamma}")));
    }
    let cap = (q - 1) as f64 / (2 * q) as f64;
    if gamma > cap + 1e-15 {
        return Err(Error::Infeasible(format!(
            "γ = {gamma} exceeds (q-1)/(2q) = {cap}, no vector is feasible"
        )));
    }
    let problem = Problem {
        q,
        gamma,
        g: sizes_log(q),
        adj: disjoint_lists(q),
    };
    let candidates: Vec<(Vec<f64>, f64)> = problem
        .starts()
        .into_par_iter()
        .map(|x0| problem.run(x0))
        .collect();
    let mut best: Option<(SubsetVector, f64, f64)> = None;
    for (x, residual) in candidates {
        let alpha = SubsetVector::from_slice(q, &x)?;
        let pv = evaluate(&alpha);
        if (pv.v - 1.0).abs() > FEAS_TOL || pv.e < gamma - FEAS_TOL {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, bv, br)) => pv.obj > bv + 1e-12 || (pv.obj >= bv - 1e-12 && residual < *br),
        };
        if better {
            best = Some((alpha, pv.obj, residual));
        }
    }
    let (alpha, value, residual) =
        best.ok_or_else(|| Error::NotConverged { value: f64::NAN, residual: f64::INFINITY })?;
    Ok(OptResult::new(value, alpha, residual, Method::Numeric))
}
