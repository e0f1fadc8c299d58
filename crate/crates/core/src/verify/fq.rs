use super::{CheckResult, GUARD};

/// `F_q(x) = log(q/(q−x)) · log(q/x)`.
pub fn fq(q: f64, x: f64) -> f64 {
    (q / (q - x)).ln() * (q / x).ln()
}

/// `F_x(3)`.
pub fn fq_g(x: f64) -> f64 {
    fq(x, 3.0)
}

/// `2 F_x(1) (x − 3)/(x − 2)`.
pub fn fq_h(x: f64) -> f64 {
    2.0 * fq(x, 1.0) * (x - 3.0) / (x - 2.0)
}

/// Shape of `F_q` on a grid: strictly increasing up to `q/2`, strictly
/// decreasing after, symmetric about `q/2` (for `q = 0.5, 1, …, q_max`);
/// and `F_q(3) > 2F_q(1)(q−3)/(q−2)` for integers `9 <= q <= q_max`.
pub fn check_fq(q_max: usize, points_per_unit: usize) -> CheckResult {
    let ppu = points_per_unit.max(100);
    let mut res = CheckResult::new(
        "F_q shape and F_q(3) bound",
        format!("q in 0.5..={q_max} step 0.5 with {ppu} points per unit of x; bound for integer q in 9..={q_max}"),
    );
    let mut shape_ok = true;
    for k in 1..=2 * q_max {
        let q = k as f64 / 2.0;
        let half = ((q / 2.0) * ppu as f64).ceil() as usize;
        let step = q / (2 * half) as f64;
        let f: Vec<f64> = (1..2 * half).map(|i| fq(q, i as f64 * step)).collect();
        let peak = half - 1;
        for i in 0..f.len() - 1 {
            let diff = if i < peak { f[i + 1] - f[i] } else { f[i] - f[i + 1] };
            if diff <= -GUARD {
                shape_ok = false;
            }
            res.observe(|| format!("monotonicity q={q} x={}", (i + 1) as f64 * step), diff);
        }
        for i in 0..peak {
            let asym = (f[i] - f[f.len() - 1 - i]).abs();
            if asym > GUARD {
                shape_ok = false;
                res.observe(|| format!("symmetry q={q} x={}", (i + 1) as f64 * step), -asym);
            }
        }
    }
    let mut bound_ok = true;
    for q in 9..=q_max {
        let x = q as f64;
        let margin = fq_g(x) - fq_h(x);
        if margin <= GUARD {
            bound_ok = false;
        }
        res.observe(|| format!("bound q={q}"), margin);
    }
    res.notes.push(format!("g(9) = {:.6}, h(9) = {:.6}", fq_g(9.0), fq_h(9.0)));
    res.passed = shape_ok && bound_ok;
    res
}
