use serde::{Deserialize, Serialize};

use super::{opt1_kkt_residual, stationarity_residual, Method, OptResult, SubsetVector};
use crate::error::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

/// Density threshold below which the sparse closed form solves Problem 1:
/// `(sqrt(log(q/(q-1))/log q) + sqrt(log q/log(q/(q-1))))^-2`.
pub fn kappa(q: usize) -> Result<f64> {
    if q < 2 {
        return Err(Error::invalid(format!("κ_q needs q >= 2, got {q}")));
    }
    let (l1, lq) = logs(q);
    let s = (l1 / lq).sqrt() + (lq / l1).sqrt();
    Ok(1.0 / (s * s))
}

/// `(log(q/(q-1)), log q)`.
fn logs(q: usize) -> (f64, f64) {
    let qf = q as f64;
    (qf.ln() - (qf - 1.0).ln(), qf.ln())
}

/// Problem 1 optimum for `0 <= γ <= κ_q`: a singleton, its complement and
/// the full set.
pub fn opt_closed_form_sparse(q: usize, gamma: f64) -> Result<OptResult> {
    if q < 3 {
        return Err(Error::invalid(format!("need q >= 3, got {q}")));
    }
    let k = kappa(q)?;
    if !(gamma >= 0.0 && gamma <= k + DOMAIN_SLACK) {
        return Err(Error::invalid(format!(
            "γ = {gamma} is outside [0, κ_{q}] = [0, {k}]"
        )));
    }
    let (l1, lq) = logs(q);
    let single = (gamma * l1 / lq).sqrt();
    let rest = if gamma == 0.0 { 0.0 } else { gamma / single };
    let full = (1u32 << q) - 1;
    let alpha = SubsetVector::from_entries(
        q,
        &[(1, single), (full ^ 1, rest), (full, (1.0 - single - rest).max(0.0))],
    )?;
    let value = lq - 2.0 * (gamma * l1 * lq).sqrt();
    let residual = opt1_kkt_residual(&alpha, gamma)?;
    Ok(OptResult::new(value, alpha, residual, Method::ClosedForm))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Q3Regime {
    /// `0 <= γ <= κ_3`
    I,
    /// `κ_3 < γ <= 1/4`
    II,
    /// `1/4 < γ <= 1/3`
    III,
}

impl Q3Regime {
    pub fn of(gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma <= 1.0 / 3.0 + DOMAIN_SLACK) {
            return Err(Error::invalid(format!(
                "γ = {gamma} is outside [0, 1/3] for three colors"
            )));
        }
        Ok(if gamma <= kappa(3)? {
            Q3Regime::I
        } else if gamma <= 0.25 {
            Q3Regime::II
        } else {
            Q3Regime::III
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            Q3Regime::I => "i",
            Q3Regime::II => "ii",
            Q3Regime::III => "iii",
        }
    }
}

/// Complete solution of Problem 1 for three colors, all densities.
pub fn opt_closed_form_q3(gamma: f64) -> Result<OptResult> {
    let regime = Q3Regime::of(gamma)?;
    opt_closed_form_q3_regime(gamma, regime)
}

/// The closed form of a given three-color branch, evaluated at `γ` even if the
/// branch is not the optimal one there (useful at the junctions).
pub fn opt_closed_form_q3_regime(gamma: f64, regime: Q3Regime) -> Result<OptResult> {
    let ln2 = 2f64.ln();
    let (l1, l3) = logs(3);
    let (alpha, value) = match regime {
        Q3Regime::I => {
            let a3 = (gamma * l1 / l3).sqrt();
            let a12 = if gamma == 0.0 { 0.0 } else { gamma / a3 };
            let alpha = SubsetVector::from_entries(
                3,
                &[(0b100, a3), (0b011, a12), (0b111, (1.0 - a3 - a12).max(0.0))],
            )?;
            (alpha, l3 - 2.0 * (gamma * l3 * l1).sqrt())
        }
        Q3Regime::II => {
            let a12 = (1.0 + (1.0 - 4.0 * gamma).max(0.0).sqrt()) / 2.0;
            let alpha = SubsetVector::from_entries(3, &[(0b100, 1.0 - a12), (0b011, a12)])?;
            (alpha, a12 * ln2)
        }
        Q3Regime::III => {
            let r = (1.0 - (12.0 * gamma - 3.0).max(0.0).sqrt()) / 2.0;
            let side = (1.0 - 2.0 * r) / 3.0;
            let alpha = SubsetVector::from_entries(
                3,
                &[(0b001, side), (0b010, side), (0b100, (1.0 + r) / 3.0), (0b011, r)],
            )?;
            (alpha, r * ln2)
        }
    };
    let residual = opt1_kkt_residual(&alpha, gamma)?;
    let mut out = OptResult::new(value, alpha, residual, Method::ClosedForm);
    out.regime = Some(regime.label().to_string());
    Ok(out)
}

/// Problem 2 optimum: a singleton with weight `sqrt(log(q/(q-1))/log q)` and
/// its complement with the reciprocal weight.
pub fn opt2_closed_form(q: usize) -> Result<OptResult> {
    if q < 3 {
        return Err(Error::invalid(format!("need q >= 3, got {q}")));
    }
    let (l1, lq) = logs(q);
    let single = (l1 / lq).sqrt();
    let full = (1u32 << q) - 1;
    let alpha = SubsetVector::from_entries(q, &[(1, single), (full ^ 1, 1.0 / single)])?;
    let value = -2.0 * (l1 * lq).sqrt();
    let residual = stationarity_residual(&alpha, true)?;
    Ok(OptResult::new(value, alpha, residual, Method::ClosedForm))
}
