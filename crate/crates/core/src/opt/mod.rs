//! The two continuous programs over subset-indexed vectors.
//!
//! Problem 1 maximizes `obj(α) = Σ α_A log|A|` subject to `α >= 0`,
//! `v(α) = Σ α_A = 1` and `e(α) >= γ`, where `e` sums `α_A α_B` over unordered
//! pairs of disjoint subsets. Problem 2 drops the vertex constraint and the
//! full set, maximizing `obj*(α) = Σ α_A log(|A|/q)` subject to `e(α) >= 1`.

mod closed;
mod opt1;
mod opt2;
mod partition;
mod simplex;

pub use closed::{
    kappa, opt2_closed_form, opt_closed_form_q3, opt_closed_form_q3_regime, opt_closed_form_sparse, Q3Regime,
};
pub use opt1::{opt1_kkt_residual, solve_opt1_numeric};
pub use opt2::{
    solve_opt2_all_partitions, solve_opt2_partition, stationarity_residual, Opt2Sweep, SweepRow,
};
pub use partition::SizePartition;
pub use simplex::project_to_simplex;

pub use crate::subset::{subset_label, subset_mask, SubsetVector};

use serde::{Deserialize, Serialize};

/// KKT residual below which a numeric result counts as converged.
pub const KKT_TOLERANCE: f64 = 1e-9;

/// Tolerance used when comparing closed-form and numeric optima.
pub const COMPARE_TOLERANCE: f64 = 1e-6;

/// `(obj, v, e, obj*)` at a vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProgramValues {
    pub obj: f64,
    pub v: f64,
    pub e: f64,
    pub obj_star: f64,
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
pub(crate) struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.s + self.c
    }
}

pub fn evaluate(alpha: &SubsetVector) -> ProgramValues {
    let q = alpha.q();
    let full = alpha.full_mask();
    let lq = (q as f64).ln();
    let nz: Vec<(u32, f64)> = alpha.nonzero().collect();
    let (mut obj, mut v, mut e, mut obj_star) = (Sum::default(), Sum::default(), Sum::default(), Sum::default());
    for (i, &(ma, a)) in nz.iter().enumerate() {
        let size = ma.count_ones() as f64;
        obj.add(a * size.ln());
        v.add(a);
        if ma != full {
            obj_star.add(a * (size.ln() - lq));
        }
        for &(mb, b) in &nz[i + 1..] {
            if ma & mb == 0 {
                e.add(a * b);
            }
        }
    }
    ProgramValues {
        obj: obj.value(),
        v: v.value(),
        e: e.value(),
        obj_star: obj_star.value(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// Optimum of one of the programs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub value: f64,
    pub argmax: SubsetVector,
    #[serde(with = "mask_labels")]
    pub support: Vec<u32>,
    pub kkt_residual: f64,
    pub method: Method,
    /// Which closed-form branch produced the result, when there are several.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    pub converged: bool,
}

impl OptResult {
    pub(crate) fn new(value: f64, argmax: SubsetVector, kkt_residual: f64, method: Method) -> Self {
        let support = argmax.support(0.0);
        OptResult {
            value,
            argmax,
            support,
            kkt_residual,
            method,
            regime: None,
            converged: kkt_residual <= KKT_TOLERANCE,
        }
    }
}

mod mask_labels {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::subset::subset_label;

    pub fn serialize<S: Serializer>(masks: &[u32], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(masks.iter().map(|&m| subset_label(m)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u32>, D::Error> {
        let labels = Vec::<String>::deserialize(d)?;
        labels
            .iter()
            .map(|l| {
                let inner = l
                    .trim()
                    .strip_prefix('{')
                    .and_then(|x| x.strip_suffix('}'))
                    .ok_or_else(|| serde::de::Error::custom(format!("bad subset {l:?}")))?;
                inner.split(',').try_fold(0u32, |m, t| {
                    let c: u32 = t.trim().parse().map_err(serde::de::Error::custom)?;
                    if c == 0 || c > 32 {
                        return Err(serde::de::Error::custom(format!("bad color {c}")));
                    }
                    Ok(m | 1 << (c - 1))
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let l3 = 3f64.ln();
        let a = SubsetVector::from_entries(3, &[(0b111, 1.0)]).unwrap();
        let pv = evaluate(&a);
        assert!((pv.obj - l3).abs() < 1e-15);
        assert_eq!((pv.v, pv.e), (1.0, 0.0));

        let a = SubsetVector::from_entries(3, &[(0b100, 0.5), (0b011, 0.5)]).unwrap();
        let pv = evaluate(&a);
        assert!((pv.obj - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((pv.obj - 0.3466).abs() < 1e-4);
        assert_eq!((pv.v, pv.e), (1.0, 0.25));

        let x = ((1.5f64).ln() / l3).sqrt();
        let a = SubsetVector::from_entries(3, &[(0b001, x), (0b110, 1.0 / x)]).unwrap();
        let pv = evaluate(&a);
        assert!((x - 0.6075).abs() < 1e-4 && (1.0 / x - 1.6460).abs() < 1e-4);
        assert!((pv.e - 1.0).abs() < 1e-15);
        assert!((pv.obj_star + 2.0 * (1.5f64.ln() * l3).sqrt()).abs() < 1e-14);
        assert!((pv.obj_star + 1.335).abs() < 1e-3);
    }

    #[test]
    fn e_counts_each_disjoint_pair_once() {
        let a = SubsetVector::from_entries(3, &[(1, 0.2), (2, 0.3), (4, 0.5)]).unwrap();
        let e = evaluate(&a).e;
        assert!((e - (0.06 + 0.1 + 0.15)).abs() < 1e-15);
    }

    #[test]
    fn opt_result_json_round_trip() {
        let r = opt2_closed_form(4).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"{2,3,4}\""));
        let back: OptResult = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
