use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest graph with a canonical form (the code must fit in 64 bits).
pub const CANON_VERTEX_CAP: usize = 11;

/// Canonical labelling of a small graph.
///
/// `code` is the smallest upper-triangle adjacency code over all vertex
/// orders that list vertices by a fixed isomorphism invariant; two graphs are
/// isomorphic exactly when their codes (and vertex counts) agree. Bits are
/// read pair by pair in the order (0,1), (0,2), (1,2), (0,3), ..., the first
/// pair being the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
    /// `order[i]` is the original vertex placed at position `i`.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        graph_from_code(self.n, self.code)
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Rebuilds the graph whose canonical code is `code`.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let total = pair_count(n);
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                g.add_edge(i, j).expect("valid pair");
            }
            k += 1;
        }
    }
    g
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.n() > CANON_VERTEX_CAP {
        return Err(Error::TooLarge(format!(
            "canonical form supports n <= {CANON_VERTEX_CAP}, got {}",
            g.n()
        )));
    }
    let rows: Vec<u64> = (0..g.n()).map(|v| g.neighbor_mask(v)).collect();
    let (code, order) = canonical_rows(&rows);
    Ok(CanonicalForm { n: g.n(), code, order })
}

/// Canonical code of an adjacency given as bit rows (`n <= 11`).
pub(crate) fn canonical_code_rows(rows: &[u64]) -> u64 {
    canonical_rows(rows).0
}

fn canonical_rows(rows: &[u64]) -> (u64, Vec<usize>) {
    let n = rows.len();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    // Vertex invariant: degree, then the sorted degrees of the neighbours.
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = BitIter(rows[v]).map(|u| deg[u]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    // Candidates for each position: the vertices whose key ranks there.
    let mut class_of_pos = vec![0u64; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        let mut mask = 0u64;
        while end < n && keys[sorted[end]] == keys[sorted[start]] {
            mask |= 1 << sorted[end];
            end += 1;
        }
        for slot in &mut class_of_pos[start..end] {
            *slot = mask;
        }
        start = end;
    }
    // Interchangeable vertices: same class and same neighbourhood apart from
    // each other. Only the lowest unused one of each group is tried.
    let twins: Vec<u64> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| {
                    keys[u] == keys[v] && rows[u] & !(1 << v) == rows[v] & !(1 << u)
                })
                .fold(0u64, |m, u| m | 1 << u)
        })
        .collect();

    let mut st = State {
        rows,
        total: pair_count(n),
        class_of_pos: &class_of_pos,
        twins: &twins,
        order: Vec::with_capacity(n),
        best: u64::MAX,
        best_order: Vec::new(),
    };
    st.search(0, 0, 0);
    (st.best, st.best_order)
}

struct State<'a> {
    rows: &'a [u64],
    total: usize,
    class_of_pos: &'a [u64],
    twins: &'a [u64],
    order: Vec<usize>,
    best: u64,
    best_order: Vec<usize>,
}

impl State<'_> {
    fn search(&mut self, p: usize, used: u64, code: u64) {
        let n = self.rows.len();
        if p == n {
            if code < self.best {
                self.best = code;
                self.best_order = self.order.clone();
            }
            return;
        }
        let prefix = (p + 1) * p / 2;
        let shift = self.total - prefix;
        let cands = self.class_of_pos[p] & !used;
        for v in BitIter(cands) {
            if self.twins[v] & cands & ((1u64 << v) - 1) != 0 {
                continue;
            }
            let mut next = code;
            for (i, &u) in self.order.iter().enumerate() {
                if self.rows[u] >> v & 1 == 1 {
                    next |= 1u64 << (self.total - 1 - (p * (p - 1) / 2 + i));
                }
            }
            if next >> shift > self.best >> shift {
                continue;
            }
            self.order.push(v);
            self.search(p + 1, used | 1 << v, next);
            self.order.pop();
        }
    }
}
