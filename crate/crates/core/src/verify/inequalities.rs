use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, DEFAULT_SEED};
use crate::color::turan_coloring_count;
use crate::count::log2_big;
use crate::graph::turan_edge_count;

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn binom(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Grid for [`check_partition_colors`].
#[derive(Clone, Debug)]
pub struct PartitionColorsGrid {
    /// `b/a` is this multiple of `log t / log((t−1)/(t−2))`, rounded up.
    pub ratio_multipliers: Vec<f64>,
    pub a_values: RangeInclusive<u32>,
}

impl Default for PartitionColorsGrid {
    fn default() -> Self {
        PartitionColorsGrid {
            ratio_multipliers: vec![1.0, 1.25, 1.5, 2.0],
            a_values: 1..=40,
        }
    }
}

/// For `t >= 3` and `b/a >= log t / log((t−1)/(t−2))`:
/// (i) `i^a (t−i)^b` drops by a factor of at least `1.5^a` from `i` to
/// `i+1` (`1 <= i <= t−2`), at every grid point;
/// (ii) `Σ_{i=1}^{t−1} C(t,i) i^a (t−i)^b <= 1.1 t (t−1)^b` once `a` is
/// large enough; the scan reports, per `(t, ratio)`, the smallest grid `a`
/// from which (ii) holds for the rest of the grid. The check passes when (i)
/// holds everywhere and every scan finds such a threshold.
pub fn check_partition_colors(t_range: RangeInclusive<usize>, grid: &PartitionColorsGrid) -> CheckResult {
    let mut res = CheckResult::new(
        "partition colors",
        format!(
            "t in {:?}, b/a multipliers {:?}, a in {:?}",
            t_range, grid.ratio_multipliers, grid.a_values
        ),
    );
    let mut ok = true;
    for t in t_range {
        if t < 3 {
            res.notes.push(format!("t = {t} skipped: needs t >= 3"));
            ok = false;
            continue;
        }
        let base = (t as f64).ln() / ((t - 1) as f64 / (t - 2) as f64).ln();
        for &rho in &grid.ratio_multipliers {
            if rho < 1.0 {
                res.notes.push(format!("multiplier {rho} violates b/a >= log t / log((t-1)/(t-2))"));
                ok = false;
                continue;
            }
            let mut holds_from: Option<u32> = None;
            let mut last_a = 0;
            for a in grid.a_values.clone() {
                let b = (rho * a as f64 * base).ceil() as u32;
                last_a = a;
                // (i), exactly: 2^a i^a (t−i)^b >= 3^a (i+1)^a (t−i−1)^b.
                for i in 1..=t - 2 {
                    let lhs = Pow::pow(big(2), a) * Pow::pow(big(i), a) * Pow::pow(big(t - i), b);
                    let rhs = Pow::pow(big(3), a) * Pow::pow(big(i + 1), a) * Pow::pow(big(t - i - 1), b);
                    let margin = (log2_big(&lhs) - log2_big(&rhs)) / a as f64;
                    if lhs < rhs {
                        ok = false;
                    }
                    res.observe(|| format!("(i) t={t} a={a} b={b} i={i}"), margin);
                }
                // (ii), exactly: 10 Σ <= 11 t (t−1)^b.
                let sum = (1..t).fold(BigUint::default(), |acc, i| {
                    acc + binom(t, i) * Pow::pow(big(i), a) * Pow::pow(big(t - i), b)
                });
                let holds = big(10) * sum <= big(11) * big(t) * Pow::pow(big(t - 1), b);
                match (holds, holds_from) {
                    (true, None) => holds_from = Some(a),
                    (false, Some(_)) => holds_from = None,
                    _ => {}
                }
            }
            match holds_from {
                Some(a0) => res.notes.push(format!("(ii) t={t} ratio x{rho}: holds for a >= {a0}")),
                None => {
                    ok = false;
                    res.notes.push(format!("(ii) t={t} ratio x{rho}: fails at a = {last_a}"));
                }
            }
        }
    }
    res.passed = ok && res.worst_case.margin >= 0.0;
    res
}

/// Largest integer `s` with `s (n − s) >= m` (requires `4m <= n²`).
pub fn claim5_s(n: u64, m: u64) -> u64 {
    let disc = n * n - 4 * m;
    let mut s = (n + disc.isqrt()) / 2;
    while (s + 1) * n >= m + (s + 1) * (s + 1) && s < n {
        s += 1;
    }
    while s * n < m + s * s {
        s -= 1;
    }
    s
}

pub fn check_claim5_inequality(sample_count: usize) -> CheckResult {
    check_claim5_inequality_seeded(sample_count, DEFAULT_SEED)
}

/// Samples `(n, m, t, v1)` with `m <= n²/4` and `v1 (n − v1) >= m − t`, and
/// checks `s >= v1 − ⌈√t⌉`. The sharper `s >= v1 − √t` is tallied as a note.
pub fn check_claim5_inequality_seeded(sample_count: usize, seed: u64) -> CheckResult {
    let mut res = CheckResult::new(
        "claim5 inequality",
        format!("{sample_count} samples, seed {seed}, n in 2..=2000"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sharper_violations = 0usize;
    let mut ok = true;
    for _ in 0..sample_count {
        let n: u64 = rng.gen_range(2..=2000);
        let m: u64 = rng.gen_range(1..=n * n / 4);
        let t: u64 = if rng.gen_bool(0.5) { rng.gen_range(1..=n) } else { rng.gen_range(1..=m.max(1)) };
        let need = m.saturating_sub(t);
        // Feasible v1 form an interval around n/2.
        let v_hi = claim5_s(n, need).max(1);
        let v_lo = if need == 0 { 1 } else { n - v_hi };
        let v1 = rng.gen_range(v_lo.max(1)..=v_hi.max(v_lo.max(1)));
        if v1 * (n - v1.min(n)) < need {
            continue;
        }
        let s = claim5_s(n, m);
        let root = t.isqrt();
        let ceil_root = if root * root == t { root } else { root + 1 };
        let margin = s as f64 - (v1 as f64 - ceil_root as f64);
        if (s + ceil_root) < v1 {
            ok = false;
        }
        if (s as f64) < v1 as f64 - (t as f64).sqrt() {
            sharper_violations += 1;
        }
        res.observe(|| format!("n={n} m={m} t={t} v1={v1} s={s}"), margin);
    }
    res.notes.push(format!(
        "{sharper_violations} samples violate the sharper s >= v1 - sqrt(t)"
    ));
    res.passed = ok;
    res
}

/// Whether the Turán coloring count beats the comparison expression: with
/// `E = (q−1)(n−q) − q(δ + C(q−1,2))/(q−1) + 2C(q,2)`, whether the count
/// exceeds `q! 2^E`. Compared exactly after raising both sides to the power
/// `q − 1`. Returns `(holds, (q−1)·E)`.
pub fn turan_routine_holds(n: usize, q: usize) -> crate::Result<(bool, i128)> {
    if q < 3 || n + 1 < q {
        return Err(crate::Error::invalid(format!("need q >= 3 and n >= q - 1, got n = {n}, q = {q}")));
    }
    let count = turan_coloring_count(n, q)?.into_inner();
    // T_r(k) is K_k when k < r.
    let t = |k: usize| -> crate::Result<i128> {
        Ok(if k < q - 1 { (k * k.saturating_sub(1) / 2) as i128 } else { turan_edge_count(k, q - 1)? as i128 })
    };
    let delta = t(n)? - t(n + 1 - q)?;
    let (qi, ni) = (q as i128, n as i128);
    let c2 = |x: i128| x * (x - 1) / 2;
    let scaled_e = (qi - 1) * (qi - 1) * (ni - qi) - qi * (delta + c2(qi - 1)) + 2 * (qi - 1) * c2(qi);
    let fact = (1..=q).fold(BigUint::one(), |acc, k| acc * k);
    let e = (q - 1) as u32;
    let holds = if scaled_e < 0 {
        Pow::pow(count, e) << (-scaled_e) as usize > Pow::pow(fact, e)
    } else {
        Pow::pow(count, e) > Pow::pow(fact, e) << scaled_e as usize
    };
    Ok((holds, scaled_e))
}

/// Scans `n` from `q − 1` to `n_max` for each `q` and reports the smallest
/// `n` from which the Turán comparison holds for the rest of the range.
pub fn check_turan_routine(q_range: RangeInclusive<usize>, n_max: usize) -> CheckResult {
    let mut res = CheckResult::new(
        "turan routine",
        format!("q in {q_range:?}, n from q-1 to {n_max}"),
    );
    let mut ok = true;
    for q in q_range {
        if q < 4 {
            res.notes.push(format!("q = {q} skipped: needs q >= 4"));
            ok = false;
            continue;
        }
        let mut from: Option<usize> = None;
        for n in q - 1..=n_max {
            let (holds, scaled_e) = match turan_routine_holds(n, q) {
                Ok(x) => x,
                Err(e) => {
                    ok = false;
                    res.notes.push(format!("q={q} n={n}: {e}"));
                    continue;
                }
            };
            let (s, r) = (n / (q - 1), n % (q - 1));
            if scaled_e != ((q - 1) * s + r) as i128 {
                ok = false;
                res.notes.push(format!("q={q} n={n}: exponent {scaled_e}/(q-1) differs from s + r/(q-1)"));
            }
            match (holds, from) {
                (true, None) => from = Some(n),
                (false, Some(_)) => from = None,
                _ => {}
            }
            if from.is_some() {
                let count = turan_coloring_count(n, q).expect("checked").into_inner();
                let fact = (1..=q).fold(BigUint::one(), |acc, k| acc * k);
                let margin = log2_big(&count) - log2_big(&fact) - scaled_e as f64 / (q - 1) as f64;
                res.observe(|| format!("q={q} n={n}"), margin);
            }
        }
        match from {
            Some(n0) => res.notes.push(format!("q={q}: holds for all n >= {n0} up to {n_max}")),
            None => {
                ok = false;
                res.notes.push(format!("q={q}: fails at n = {n_max}"));
            }
        }
    }
    res.passed = ok && res.worst_case.margin > 0.0;
    res
}
