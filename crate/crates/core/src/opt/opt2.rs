use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::simplex::{project_to_simplex, random_simplex_point, solve_dense};
use super::{evaluate, Method, OptResult, SizePartition, Sum};
use crate::error::{Error, Result};
use crate::subset::SubsetVector;

const SEED: u64 = 0x0bad_5eed_0002;
const STARTS: usize = 64;
const DESCENT_ITERS: usize = 20_000;
const NEWTON_ITERS: usize = 60;
/// Values closer than this are treated as tied.
const TIE: f64 = 1e-12;
/// Above this q the sweep still runs but warns about the partition count.
pub const SWEEP_WARN_Q: usize = 8;

/// `max |I_A - 2 J_A|` over the support of `alpha`, with
/// `I_A = α_A Σ_{B≠A} α_B` and `J_A = α_A log(|A|/q) / obj*(α)`.
///
/// With `restrict_to_support == false` every other proper subset `A` also
/// contributes `max(0, D_A - 2 log(|A|/q) / obj*)`, `D_A` being the weight
/// disjoint from `A`; that term vanishes at a global KKT point.
pub fn stationarity_residual(alpha: &SubsetVector, restrict_to_support: bool) -> Result<f64> {
    let full = alpha.full_mask();
    let mut union = 0u32;
    for (m, _) in alpha.nonzero() {
        if union & m != 0 {
            return Err(Error::Precondition(
                "support is not a partition: two supported subsets intersect".into(),
            ));
        }
        union |= m;
    }
    if union != full {
        return Err(Error::Precondition(format!(
            "support is not a partition: colors outside the union of supported subsets (mask {:#b})",
            full & !union
        )));
    }
    let support = alpha.support(0.0);
    if restrict_to_support {
        residual_on(alpha, std::iter::empty())
    } else {
        residual_on(alpha, (1..full).filter(|m| support.binary_search(m).is_err()))
    }
}

/// Residual for pairwise-disjoint support, with the off-support test run over
/// `off`.
fn residual_on(alpha: &SubsetVector, off: impl Iterator<Item = u32>) -> Result<f64> {
    let q = alpha.q() as f64;
    let nz: Vec<(u32, f64)> = alpha.nonzero().collect();
    for (i, &(a, _)) in nz.iter().enumerate() {
        if nz[i + 1..].iter().any(|&(b, _)| a & b != 0) {
            return Err(Error::Precondition("supported subsets must be pairwise disjoint".into()));
        }
    }
    let obj = evaluate(alpha).obj_star;
    if obj == 0.0 {
        return Err(Error::Precondition("obj*(α) = 0, J_A is undefined".into()));
    }
    let ratio = |m: u32| ((m.count_ones() as f64) / q).ln();
    let mut total = Sum::default();
    nz.iter().for_each(|&(_, x)| total.add(x));
    let total = total.value();
    let mut worst = 0f64;
    for &(m, x) in &nz {
        let i = x * (total - x);
        let j = x * ratio(m) / obj;
        worst = worst.max((i - 2.0 * j).abs());
    }
    for m in off {
        let mut d = Sum::default();
        nz.iter().filter(|&&(b, _)| b & m == 0).for_each(|&(_, x)| d.add(x));
        worst = worst.max(d.value() - 2.0 * ratio(m) / obj);
    }
    Ok(worst)
}

/// Best value of Problem 2 over vectors supported on the parts of `partition`.
///
/// Returns [`Error::NotConverged`] when the best point found does not satisfy
/// the stationarity system to [`KKT_TOLERANCE`](super::KKT_TOLERANCE).
pub fn solve_opt2_partition(q: usize, partition: &SizePartition) -> Result<OptResult> {
    let r = solve_partition(q, partition)?;
    if r.converged {
        Ok(r)
    } else {
        Err(Error::NotConverged {
            value: r.value,
            residual: r.kkt_residual,
        })
    }
}

/// Per-part coefficients `log(q/|A|)` and their squared-norm objective.
struct Direction<'a> {
    c: &'a [f64],
}

impl Direction<'_> {
    fn lin(&self, d: &[f64]) -> f64 {
        self.c.iter().zip(d).map(|(c, x)| c * x).sum()
    }

    /// `e(d)` written homogeneously: `((Σd)² − Σd²)/2`.
    fn e(d: &[f64]) -> f64 {
        let s: f64 = d.iter().sum();
        let s2: f64 = d.iter().map(|x| x * x).sum();
        0.5 * (s * s - s2)
    }

    /// `g(d) = (c·d)² / e(d)`, equal to `obj*²` after rescaling to `e = 1`.
    fn value(&self, d: &[f64]) -> f64 {
        let e = Self::e(d);
        if e <= 0.0 {
            return f64::INFINITY;
        }
        let l = self.lin(d);
        l * l / e
    }

    fn gradient(&self, d: &[f64]) -> Vec<f64> {
        let s: f64 = d.iter().sum();
        let e = Self::e(d);
        let l = self.lin(d);
        self.c
            .iter()
            .zip(d)
            .map(|(c, x)| 2.0 * l * c / e - l * l * (s - x) / (e * e))
            .collect()
    }

    fn hessian(&self, d: &[f64]) -> Vec<f64> {
        let t = d.len();
        let s: f64 = d.iter().sum();
        let e = Self::e(d);
        let l = self.lin(d);
        let ge: Vec<f64> = d.iter().map(|x| s - x).collect();
        let mut h = vec![0.0; t * t];
        for i in 0..t {
            for j in 0..t {
                let c = self.c;
                let mut v = 2.0 * c[i] * c[j] / e
                    - 2.0 * l * (c[i] * ge[j] + ge[i] * c[j]) / (e * e)
                    + 2.0 * l * l * ge[i] * ge[j] / (e * e * e);
                if i != j {
                    v -= l * l / (e * e);
                }
                h[i * t + j] = v;
            }
        }
        h
    }

    /// Projected gradient with Armijo backtracking.
    fn descend(&self, mut d: Vec<f64>) -> Vec<f64> {
        let mut g = self.value(&d);
        let mut step = 1e-2;
        for _ in 0..DESCENT_ITERS {
            let grad = self.gradient(&d);
            let (trial, gt) = loop {
                let y: Vec<f64> = d.iter().zip(&grad).map(|(x, gr)| x - step * gr).collect();
                let trial = project_to_simplex(&y);
                let decrease: f64 = grad.iter().zip(d.iter().zip(&trial)).map(|(gr, (a, b))| gr * (a - b)).sum();
                let gt = self.value(&trial);
                if gt <= g - 1e-4 * decrease {
                    break (trial, gt);
                }
                step *= 0.5;
                if step < 1e-30 {
                    return d;
                }
            };
            let moved = d.iter().zip(&trial).fold(0f64, |m, (a, b)| m.max((a - b).abs()));
            d = trial;
            g = gt;
            step = (step * 2.0).min(1e6);
            if moved < 1e-16 {
                break;
            }
        }
        d
    }

    /// Newton iterations for stationarity on the face `{i : d_i > 0}`.
    fn polish(&self, mut d: Vec<f64>) -> Vec<f64> {
        let reduced = |d: &[f64], grad: &[f64]| {
            let face: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0.0).collect();
            let mean = face.iter().map(|&i| grad[i]).sum::<f64>() / face.len() as f64;
            face.iter().fold(0f64, |m, &i| m.max((grad[i] - mean).abs()))
        };
        let mut err = reduced(&d, &self.gradient(&d));
        for _ in 0..NEWTON_ITERS {
            let face: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0.0).collect();
            let k = face.len();
            if k < 2 || err == 0.0 {
                break;
            }
            let t = d.len();
            let grad = self.gradient(&d);
            let h = self.hessian(&d);
            let mut a = vec![0.0; (k + 1) * (k + 1)];
            let mut b = vec![0.0; k + 1];
            for (r, &i) in face.iter().enumerate() {
                for (s, &j) in face.iter().enumerate() {
                    a[r * (k + 1) + s] = h[i * t + j];
                }
                a[r * (k + 1) + k] = 1.0;
                a[k * (k + 1) + r] = 1.0;
                b[r] = -grad[i];
            }
            let Some(step) = solve_dense(k + 1, a, b) else { break };
            let mut next = d.clone();
            for (r, &i) in face.iter().enumerate() {
                next[i] += step[r];
            }
            if face.iter().any(|&i| next[i] <= 0.0) {
                break;
            }
            let s: f64 = next.iter().sum();
            next.iter_mut().for_each(|x| *x /= s);
            let next_err = reduced(&next, &self.gradient(&next));
            if !(next_err < err) {
                break;
            }
            d = next;
            err = next_err;
        }
        d
    }
}

fn starts(t: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0 / t as f64; t]];
    for i in 0..t {
        for j in i + 1..t {
            let mut d = vec![0.0; t];
            d[i] = 0.5;
            d[j] = 0.5;
            out.push(d);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while out.len() < STARTS {
        out.push(random_simplex_point(&mut rng, t));
    }
    out
}

/// Solver core; non-convergence is reported through `converged`.
fn solve_partition(q: usize, partition: &SizePartition) -> Result<OptResult> {
    if partition.q() != q {
        return Err(Error::invalid(format!("partition {partition} does not sum to q = {q}")));
    }
    if partition.parts() < 2 {
        return Err(Error::invalid(format!(
            "partition {partition} has a single part, so e ≡ 0 and no vector is feasible"
        )));
    }
    let masks = partition.masks();
    let lq = (q as f64).ln();
    let c: Vec<f64> = partition.sizes().iter().map(|&s| lq - (s as f64).ln()).collect();
    let dir = Direction { c: &c };

    let mut best: Option<OptResult> = None;
    for d0 in starts(c.len()) {
        let d = dir.polish(dir.descend(d0));
        let scale = Direction::e(&d).sqrt();
        let mut alpha = SubsetVector::zeros(q)?;
        for (&m, &x) in masks.iter().zip(&d) {
            alpha.set(m, x / scale)?;
        }
        let zero_parts: Vec<u32> = masks.iter().zip(&d).filter(|(_, &x)| x == 0.0).map(|(&m, _)| m).collect();
        let residual = residual_on(&alpha, zero_parts.into_iter())?;
        let value = evaluate(&alpha).obj_star;
        let better = match &best {
            None => true,
            Some(b) => value > b.value + TIE || (value >= b.value - TIE && residual < b.kkt_residual),
        };
        if better {
            best = Some(OptResult::new(value, alpha, residual, Method::Numeric));
        }
    }
    Ok(best.expect("at least one start"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub partition: SizePartition,
    pub value: f64,
    pub kkt_residual: f64,
    pub converged: bool,
    pub is_argmax: bool,
    pub alpha: SubsetVector,
}

/// One numeric solve per integer partition of `q` into two or more parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Opt2Sweep {
    pub q: usize,
    pub argmax: SizePartition,
    pub argmax_value: f64,
    /// Gap between the best and the second-best partition value.
    pub margin: f64,
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
}

pub fn solve_opt2_all_partitions(q: usize) -> Result<Opt2Sweep> {
    if q < 3 {
        return Err(Error::invalid(format!("the sweep needs q >= 3, got {q}")));
    }
    let parts = SizePartition::all_with_two_or_more_parts(q)?;
    let mut warnings = Vec::new();
    if q > SWEEP_WARN_Q {
        warnings.push(format!(
            "q = {q} exceeds {SWEEP_WARN_Q}: {} partitions, runtime grows quickly",
            parts.len()
        ));
    }
    let results = parts
        .par_iter()
        .map(|p| solve_partition(q, p))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&a, &b| results[b].value.total_cmp(&results[a].value));
    let top = order[0];
    let margin = order.get(1).map_or(f64::INFINITY, |&i| results[top].value - results[i].value);
    if margin <= TIE {
        warnings.push(format!("argmax is not unique: top two partitions differ by {margin:e}"));
    }
    let mut rows = Vec::with_capacity(results.len());
    for (i, (p, r)) in parts.iter().zip(results).enumerate() {
        if !r.converged {
            warnings.push(format!("partition {p} did not converge (residual {:e})", r.kkt_residual));
        }
        rows.push(SweepRow {
            partition: p.clone(),
            value: r.value,
            kkt_residual: r.kkt_residual,
            converged: r.converged,
            is_argmax: i == top,
            alpha: r.argmax,
        });
    }
    Ok(Opt2Sweep {
        q,
        argmax: rows[top].partition.clone(),
        argmax_value: rows[top].value,
        margin,
        rows,
        warnings,
    })
}
