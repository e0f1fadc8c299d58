use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{canonical_form, search_max_colorings, SearchReport};
use crate::color::{bipartite_star_count_q3, count_colorings};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{pendant_graph, semi_complete, BipartitionSpec, CenterSide};

/// Largest scale for which the exhaustive comparison is run (`n = 3r + 1 <= 8`).
const EXHAUSTIVE_MAX_R: usize = 2;

/// Three-colorings of `K_{r,2r}` plus a pendant edge against `K_{r,2r+1}`
/// minus an `(r-1)`-star, both on `n = 3r + 1` vertices and `m = 2r² + 1`
/// edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PendantCaseReport {
    pub r: usize,
    pub n: usize,
    pub m: usize,
    /// `2 (3·2^r + 3·2^(2r) − 6)`.
    pub pendant_formula: BigCount,
    /// The star formula at `(r, 2r+1, r−1)`.
    pub semi_complete_formula: BigCount,
    pub formulas_agree: bool,
    /// Direct counts of the two constructions, when they are small enough.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pendant_counted: Option<BigCount>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi_complete_counted: Option<BigCount>,
    /// Exhaustive maximum over all graphs with these `n, m`, when feasible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive_max: Option<BigCount>,
    /// Whether the constructions attain the exhaustive maximum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pendant_is_max: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi_complete_is_max: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
}

pub fn pendant_case_report(r: usize) -> Result<PendantCaseReport> {
    if r == 0 {
        return Err(Error::invalid("scale r must be at least 1"));
    }
    let (n, m) = (3 * r + 1, 2 * r * r + 1);
    let two = |k: usize| BigUint::one() << k;
    let pendant = BigUint::from(2u32) * (BigUint::from(3u32) * (two(r) + two(2 * r)) - 6u32);
    let semi = bipartite_star_count_q3(r, 2 * r + 1, r - 1)?;
    let mut report = PendantCaseReport {
        r,
        n,
        m,
        formulas_agree: semi.0 == pendant,
        pendant_formula: BigCount(pendant),
        semi_complete_formula: semi,
        pendant_counted: None,
        semi_complete_counted: None,
        exhaustive_max: None,
        pendant_is_max: None,
        semi_complete_is_max: None,
        search: None,
    };
    if n <= 16 {
        let p = pendant_graph(r, 2 * r)?;
        let s = semi_complete(BipartitionSpec::new(r, 2 * r + 1, r - 1, CenterSide::Larger)?)?;
        report.pendant_counted = Some(count_colorings(&p, 3));
        report.semi_complete_counted = Some(count_colorings(&s, 3));
        if r <= EXHAUSTIVE_MAX_R {
            let search = search_max_colorings(n, m, 3)?;
            let codes: Vec<u64> = search
                .witnesses
                .iter()
                .map(|w| canonical_form(w).map(|c| c.code))
                .collect::<Result<_>>()?;
            report.pendant_is_max = Some(codes.contains(&canonical_form(&p)?.code));
            report.semi_complete_is_max = Some(codes.contains(&canonical_form(&s)?.code));
            report.exhaustive_max = Some(search.extremal_value.clone());
            report.search = Some(search);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_tie() {
        for (r, v) in [(1usize, 24u64), (2, 108), (3, 420)] {
            let rep = pendant_case_report(r).unwrap();
            assert!(rep.formulas_agree);
            assert_eq!(rep.pendant_formula, v);
            assert_eq!(rep.semi_complete_formula, v);
            assert_eq!(rep.pendant_counted.clone().unwrap(), v);
            assert_eq!(rep.semi_complete_counted.clone().unwrap(), v);
        }
        assert!(pendant_case_report(0).is_err());
    }

    #[test]
    fn small_scales_compare_with_search() {
        let r1 = pendant_case_report(1).unwrap();
        assert_eq!(r1.exhaustive_max.unwrap(), 24);
        assert_eq!((r1.pendant_is_max, r1.semi_complete_is_max), (Some(true), Some(true)));
        // At r = 2 a K_{3,3} with an isolated vertex does better (3·42 = 126).
        let r2 = pendant_case_report(2).unwrap();
        assert_eq!(r2.exhaustive_max.unwrap(), 126);
        assert_eq!((r2.pendant_is_max, r2.semi_complete_is_max), (Some(false), Some(false)));
        assert!(pendant_case_report(3).unwrap().search.is_none());
    }
}
