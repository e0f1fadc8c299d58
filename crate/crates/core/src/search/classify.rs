use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{linial_parameters, Graph};

/// Structural family a graph belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// `K_{a,b}` minus an `r`-edge star (`r < a <= b`), plus isolated vertices.
    SemiComplete { a: usize, b: usize, r: usize },
    /// The missing star is centred on the strictly larger side; reported only
    /// for `q >= 4`, where orientation changes the count.
    CorrectlyOriented,
    /// `K_{a,b}` (`a <= b`) plus one pendant edge, plus isolated vertices.
    CompleteBipartitePendant { a: usize, b: usize },
    /// Isomorphic to the Turán graph `T_r(n)`.
    Turan(usize),
    /// Isomorphic to the clique-plus-partial-star graph with the same `n, m`.
    Linial,
    /// `K_k` plus one further edge anywhere, when `m = C(k,2) + 1`.
    CliquePlusEdge,
    None,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::SemiComplete { a, b, r } => write!(f, "semi-complete+isolated(a={a},b={b},r={r})"),
            Tag::CorrectlyOriented => f.write_str("correctly-oriented"),
            Tag::CompleteBipartitePendant { a, b } => write!(f, "complete-bipartite+pendant(a={a},b={b})"),
            Tag::Turan(r) => write!(f, "turan({r})"),
            Tag::Linial => f.write_str("linial"),
            Tag::CliquePlusEdge => f.write_str("clique-plus-edge"),
            Tag::None => f.write_str("none"),
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let args = |body: &str, names: &[&str]| -> Result<Vec<usize>, String> {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != names.len() {
                return Err(format!("bad tag {s:?}"));
            }
            parts
                .iter()
                .zip(names)
                .map(|(p, n)| {
                    p.strip_prefix(n)
                        .and_then(|x| x.strip_prefix('='))
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| format!("bad tag {s:?}"))
                })
                .collect()
        };
        let call = |prefix: &str| s.strip_prefix(prefix).and_then(|x| x.strip_prefix('(')).and_then(|x| x.strip_suffix(')'));
        Ok(match s {
            "correctly-oriented" => Tag::CorrectlyOriented,
            "linial" => Tag::Linial,
            "clique-plus-edge" => Tag::CliquePlusEdge,
            "none" => Tag::None,
            _ => {
                if let Some(body) = call("semi-complete+isolated") {
                    let v = args(body, &["a", "b", "r"])?;
                    Tag::SemiComplete { a: v[0], b: v[1], r: v[2] }
                } else if let Some(body) = call("complete-bipartite+pendant") {
                    let v = args(body, &["a", "b"])?;
                    Tag::CompleteBipartitePendant { a: v[0], b: v[1] }
                } else if let Some(body) = call("turan") {
                    Tag::Turan(body.parse().map_err(|_| format!("bad tag {s:?}"))?)
                } else {
                    return Err(format!("unknown tag {s:?}"));
                }
            }
        })
    }
}

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Matches `g` against the predicted extremal families. Isolated vertices are
/// ignored except for the Turán and clique-family tests, which compare the
/// whole graph.
pub fn classify_extremal(g: &Graph, q: usize) -> Vec<Tag> {
    let mut tags = Vec::new();
    let core = g.strip_isolated();
    if let Some((a, b, r, larger_center)) = semi_complete_shape(&core) {
        tags.push(Tag::SemiComplete { a, b, r });
        if q >= 4 && r >= 1 && larger_center {
            tags.push(Tag::CorrectlyOriented);
        }
    }
    if let Some((a, b)) = pendant_shape(&core) {
        tags.push(Tag::CompleteBipartitePendant { a, b });
    }
    if let Some(r) = turan_parts(g) {
        tags.push(Tag::Turan(r));
    }
    let m = g.edge_count();
    if is_linial(&core, m) {
        tags.push(Tag::Linial);
    }
    let (k, l) = linial_parameters(m);
    if m > 0 && l == 1 && clique_plus_edge(&core, k) {
        tags.push(Tag::CliquePlusEdge);
    }
    if tags.is_empty() {
        tags.push(Tag::None);
    }
    tags
}

/// Sides of a connected bipartite graph, smaller first (ties: the side of
/// the lowest vertex first).
fn sides(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    if g.n() == 0 || g.components().len() != 1 {
        return None;
    }
    let colour = g.bipartition()?;
    let (x, y): (Vec<usize>, Vec<usize>) = (0..g.n()).partition(|&v| !colour[v]);
    if x.is_empty() || y.is_empty() {
        return None;
    }
    Some(if y.len() < x.len() { (y, x) } else { (x, y) })
}

/// `(a, b, r, centre on strictly larger side possible)`.
fn semi_complete_shape(g: &Graph) -> Option<(usize, usize, usize, bool)> {
    let (xs, ys) = sides(g)?;
    let (a, b) = (xs.len(), ys.len());
    let missing: Vec<(usize, usize)> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| !g.has_edge(x, y))
        .collect();
    let r = missing.len();
    if r == 0 {
        return Some((a, b, 0, false));
    }
    if r >= a {
        return None;
    }
    let x_centre = missing.iter().all(|&(x, _)| x == missing[0].0);
    let y_centre = missing.iter().all(|&(_, y)| y == missing[0].1);
    if !(x_centre || y_centre) {
        return None;
    }
    Some((a, b, r, a < b && y_centre))
}

fn pendant_shape(g: &Graph) -> Option<(usize, usize)> {
    (0..g.n()).filter(|&p| g.degree(p) == 1).find_map(|p| {
        let keep: Vec<usize> = (0..g.n()).filter(|&v| v != p).collect();
        let rest = g.induced(&keep);
        let (xs, ys) = sides(&rest)?;
        (rest.edge_count() == xs.len() * ys.len()).then(|| (xs.len(), ys.len()))
    })
}

/// `r` such that `g` is the balanced complete `r`-partite graph on its
/// vertex set.
fn turan_parts(g: &Graph) -> Option<usize> {
    if g.n() == 0 {
        return None;
    }
    let comp = g.complement();
    let parts = comp.components();
    for p in &parts {
        let s = p.len();
        if p.iter().any(|&v| comp.degree(v) != s - 1) {
            return None;
        }
    }
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    let (lo, hi) = (sizes.iter().min()?, sizes.iter().max()?);
    (hi - lo <= 1).then_some(parts.len())
}

fn is_complete(g: &Graph) -> bool {
    let n = g.n();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

fn is_linial(core: &Graph, m: usize) -> bool {
    if m == 0 {
        return true;
    }
    let (k, l) = linial_parameters(m);
    if l == 0 {
        return core.n() == k && is_complete(core);
    }
    core.n() == k + 1
        && (0..core.n()).filter(|&x| core.degree(x) == l).any(|x| {
            let keep: Vec<usize> = (0..core.n()).filter(|&v| v != x).collect();
            is_complete(&core.induced(&keep))
        })
}

fn clique_plus_edge(core: &Graph, k: usize) -> bool {
    core.edges().into_iter().any(|(u, v)| {
        let mut h = core.clone();
        h.remove_edge(u, v).expect("edge exists");
        let rest = h.strip_isolated();
        rest.n() == k && is_complete(&rest)
    })
}
