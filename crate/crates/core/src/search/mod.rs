//! Exhaustive search over small graphs with a given number of vertices and
//! edges, canonical forms, and structural classification of the optimizers.

mod canon;
mod classify;
mod enumerate;
mod pendant;

pub use canon::{canonical_form, graph_from_code, CanonicalForm, CANON_VERTEX_CAP};
pub(crate) use canon::canonical_code_rows;
pub use classify::{classify_extremal, Tag};
pub use enumerate::{enumerate_graphs, GraphStream, MAX_LABELED_GRAPHS, MAX_SEARCH_VERTICES};
pub use pendant::{pendant_case_report, PendantCaseReport};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::{count_cliques, count_colorings_u128};
use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::Graph;
use enumerate::{check_size, graph_from_combination, isomorphism_classes, pairs, Combinations};

/// Largest colour count accepted by the searches (keeps `q^8` in 128 bits).
pub const MAX_SEARCH_COLORS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MaxColorings,
    MinColorings,
    MaxCliques,
}

impl Objective {
    fn better(self, a: u128, b: u128) -> bool {
        match self {
            Objective::MinColorings => a < b,
            _ => a > b,
        }
    }
}

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub m: usize,
    /// Colour count for coloring objectives.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Clique size for the clique objective.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub objective: Objective,
    pub extremal_value: BigCount,
    /// Canonical representatives of the optimizers, ordered by canonical code.
    #[serde(with = "graph6_list")]
    pub witnesses: Vec<Graph>,
    /// Classification of each witness, in the same order.
    pub tags: Vec<Vec<Tag>>,
    pub graphs_examined: u64,
    /// Whether the search ran over isomorphism classes instead of labelled graphs.
    pub dedup: bool,
}

mod graph6_list {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::{decode, to_graph6, Graph, GraphFormat};

    pub fn serialize<S: Serializer>(gs: &[Graph], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(gs.iter().map(to_graph6))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Graph>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| decode(s.as_bytes(), GraphFormat::Graph6).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub fn search_max_colorings(n: usize, m: usize, q: usize) -> Result<SearchReport> {
    search_extremal(n, m, Objective::MaxColorings, q, false)
}

pub fn search_min_colorings(n: usize, m: usize, q: usize) -> Result<SearchReport> {
    search_extremal(n, m, Objective::MinColorings, q, false)
}

pub fn search_max_cliques(n: usize, m: usize, t: usize) -> Result<SearchReport> {
    search_extremal(n, m, Objective::MaxCliques, t, false)
}

/// Best value seen in a slice of the search space and the canonical codes
/// attaining it.
#[derive(Default)]
struct Partial {
    best: Option<u128>,
    codes: BTreeSet<u64>,
    examined: u64,
}

impl Partial {
    fn merge(mut self, other: Partial, objective: Objective) -> Partial {
        self.examined += other.examined;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.codes = other.codes;
            }
            (Some(a), Some(b)) => {
                if objective.better(b, a) {
                    self.best = other.best;
                    self.codes = other.codes;
                } else if a == b {
                    self.codes.extend(other.codes);
                }
            }
        }
        self
    }
}

struct Evaluator {
    objective: Objective,
    param: usize,
}

impl Evaluator {
    /// Upper bound on the coloring count: a component on `s` vertices has at
    /// most `q (q-1)^(s-1)` colorings.
    fn coloring_bound(&self, g: &Graph) -> Option<u128> {
        let q = self.param as u128;
        g.components().iter().try_fold(1u128, |acc, c| {
            acc.checked_mul(q)?.checked_mul((q.saturating_sub(1)).checked_pow(c.len() as u32 - 1)?)
        })
    }

    fn value(&self, g: &Graph) -> Result<u128> {
        match self.objective {
            Objective::MaxColorings | Objective::MinColorings => count_colorings_u128(g, self.param)
                .ok_or_else(|| Error::TooLarge("coloring count exceeds 128 bits".into())),
            Objective::MaxCliques => Ok(count_cliques(g, self.param)?
                .to_u128()
                .expect("clique counts of small graphs fit")),
        }
    }

    fn visit(&self, g: &Graph, part: &mut Partial) -> Result<()> {
        part.examined += 1;
        if self.objective == Objective::MaxColorings {
            if let (Some(best), Some(bound)) = (part.best, self.coloring_bound(g)) {
                if bound < best {
                    return Ok(());
                }
            }
        }
        let v = self.value(g)?;
        let take = match part.best {
            None => true,
            Some(b) if self.objective.better(v, b) => true,
            Some(b) => {
                if v == b {
                    part.codes.insert(canonical_form(g)?.code);
                }
                false
            }
        };
        if take {
            part.best = Some(v);
            part.codes.clear();
            part.codes.insert(canonical_form(g)?.code);
        }
        Ok(())
    }
}

/// Exhaustive search for the graphs optimizing `objective` among all graphs
/// with `n` vertices and `m` edges. `param` is the colour count, or the
/// clique size for [`Objective::MaxCliques`].
pub fn search_extremal(n: usize, m: usize, objective: Objective, param: usize, dedup: bool) -> Result<SearchReport> {
    let total = check_size(n, m, dedup)?;
    match objective {
        Objective::MaxCliques if param == 0 => {
            return Err(Error::invalid("clique size must be at least 1"));
        }
        Objective::MaxColorings | Objective::MinColorings if param > MAX_SEARCH_COLORS => {
            return Err(Error::TooLarge(format!(
                "searches support q <= {MAX_SEARCH_COLORS}, got {param}"
            )));
        }
        _ => {}
    }
    let eval = Evaluator { objective, param };
    let merge = |a: Partial, b: Partial| a.merge(b, objective);
    let part = if dedup {
        let classes = isomorphism_classes(n, m)?;
        classes
            .par_iter()
            .map(|&c| {
                let mut p = Partial::default();
                eval.visit(&graph_from_code(n, c), &mut p).map(|_| p)
            })
            .try_reduce(Partial::default, |a, b| Ok(merge(a, b)))?
    } else {
        let pairs = pairs(n);
        let chunk = (total / 256).max(1024);
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        starts
            .par_iter()
            .map(|&start| {
                let count = chunk.min(total - start);
                let mut p = Partial::default();
                for combo in Combinations::from_rank(pairs.len(), m, start, count) {
                    eval.visit(&graph_from_combination(n, &pairs, &combo), &mut p)?;
                }
                Ok(p)
            })
            .try_reduce(Partial::default, |a, b| Ok(merge(a, b)))?
    };
    let best = part.best.ok_or_else(|| Error::invalid("empty search space"))?;
    let witnesses: Vec<Graph> = part.codes.iter().map(|&c| graph_from_code(n, c)).collect();
    let tags = witnesses.iter().map(|w| classify_extremal(w, param)).collect();
    let (q, t) = match objective {
        Objective::MaxCliques => (None, Some(param)),
        _ => (Some(param), None),
    };
    Ok(SearchReport {
        n,
        m,
        q,
        t,
        objective,
        extremal_value: BigCount::from(best),
        witnesses,
        tags,
        graphs_examined: part.examined,
        dedup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::linial_graph;

    #[test]
    fn max_examples() {
        let r = search_max_colorings(6, 9, 3).unwrap();
        assert_eq!(r.extremal_value, 42);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(canonical_form(&r.witnesses[0]).unwrap(), canonical_form(&Graph::complete_bipartite(3, 3)).unwrap());
        assert_eq!(r.graphs_examined, 5005);

        let r = search_max_colorings(3, 3, 3).unwrap();
        assert_eq!((r.extremal_value.to_u128(), r.witnesses.len()), (Some(6), 1));
        let r = search_max_colorings(4, 4, 3).unwrap();
        assert_eq!(r.extremal_value, 18);
        assert_eq!(r.witnesses, vec![canonical_form(&Graph::cycle(4).unwrap()).unwrap().graph()]);
    }

    #[test]
    fn min_examples() {
        let r = search_min_colorings(4, 4, 3).unwrap();
        assert_eq!(r.extremal_value, 12);
        assert_eq!(r.witnesses, vec![canonical_form(&linial_graph(4, 4).unwrap()).unwrap().graph()]);
        let r = search_min_colorings(5, 6, 4).unwrap();
        assert_eq!(r.extremal_value, 96);
        assert_eq!(r.witnesses, vec![canonical_form(&linial_graph(5, 6).unwrap()).unwrap().graph()]);
        let r = search_min_colorings(4, 0, 3).unwrap();
        assert_eq!(r.extremal_value, 81);
    }

    #[test]
    fn clique_examples() {
        let r = search_max_cliques(4, 4, 3).unwrap();
        assert_eq!(r.extremal_value, 1);
        assert_eq!(r.witnesses, vec![canonical_form(&linial_graph(4, 4).unwrap()).unwrap().graph()]);
        let r = search_max_cliques(5, 6, 4).unwrap();
        assert_eq!(r.extremal_value, 1);
        let r = search_max_cliques(3, 3, 2).unwrap();
        assert_eq!(r.extremal_value, 3);
        assert!(search_max_cliques(3, 3, 0).is_err());
    }

    #[test]
    fn dedup_and_labeled_agree() {
        for (n, m, q) in [(5, 5, 3), (6, 7, 3), (6, 9, 4)] {
            for obj in [Objective::MaxColorings, Objective::MinColorings] {
                let a = search_extremal(n, m, obj, q, false).unwrap();
                let b = search_extremal(n, m, obj, q, true).unwrap();
                assert_eq!(a.extremal_value, b.extremal_value);
                assert_eq!(a.witnesses, b.witnesses);
                assert_eq!(a.tags, b.tags);
            }
        }
    }

    #[test]
    fn report_json_round_trip() {
        let r = search_max_colorings(6, 9, 3).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"objective\":\"max-colorings\""));
        assert!(j.contains("\"extremal_value\":\"42\""));
        let back: SearchReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
    }
}
