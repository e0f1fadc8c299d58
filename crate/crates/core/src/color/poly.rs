use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};
use crate::search::canonical_code_rows;

/// Largest graph accepted by [`chromatic_polynomial`].
pub const POLY_VERTEX_CAP: usize = 12;
/// Subproblems up to this size are memoized by canonical form.
const MEMO_CAP: usize = 10;

/// Chromatic polynomial with integer coefficients; index `i` holds the
/// coefficient of `q^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    coefficients: Vec<BigInt>,
}

impl ChromaticPolynomial {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Value at a nonnegative integer, which counts colorings and so is
    /// never negative.
    pub fn count_at(&self, q: u64) -> BigCount {
        let v = self.eval(q as i64);
        BigCount(v.to_biguint().expect("chromatic polynomial is nonnegative at q >= 0"))
    }
}

impl fmt::Display for ChromaticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for ChromaticPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coefficients.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for ChromaticPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coefficients = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coefficients.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        Ok(ChromaticPolynomial { coefficients })
    }
}

type Poly = Vec<BigInt>;

fn x_pow(n: usize) -> Poly {
    let mut p = vec![BigInt::zero(); n + 1];
    p[n] = BigInt::one();
    p
}

/// `p · (x − d)`.
fn times_linear(p: &Poly, d: usize) -> Poly {
    let d = BigInt::from(d);
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * &d;
    }
    out
}

fn times(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn minus(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    if b.len() > out.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Dense small graph used during deletion–contraction.
#[derive(Clone)]
struct Small {
    rows: Vec<u64>,
}

impl Small {
    fn n(&self) -> usize {
        self.rows.len()
    }

    fn edges(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    fn remove_vertex(&self, v: usize) -> Small {
        let lo = (1u64 << v) - 1;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &r)| (r & lo) | ((r >> 1) & !lo))
            .collect();
        Small { rows }
    }

    fn delete_edge(&self, u: usize, v: usize) -> Small {
        let mut g = self.clone();
        g.rows[u] &= !(1 << v);
        g.rows[v] &= !(1 << u);
        g
    }

    /// Merges `v` into `u`; parallel edges collapse.
    fn contract(&self, u: usize, v: usize) -> Small {
        let mut g = self.clone();
        let nv = g.rows[v] & !(1 << u);
        g.rows[u] |= nv;
        for w in BitIter(nv) {
            g.rows[w] |= 1 << u;
        }
        g.remove_vertex(v)
    }

    fn component_of(&self, s: usize) -> u64 {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    fn induced(&self, keep: u64) -> Small {
        let idx: Vec<usize> = BitIter(keep).collect();
        let rows = idx
            .iter()
            .map(|&v| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.rows[v] >> u & 1 == 1)
                    .fold(0u64, |r, (j, _)| r | 1 << j)
            })
            .collect();
        Small { rows }
    }
}

struct Solver {
    memo: HashMap<(usize, u64), Poly>,
}

impl Solver {
    fn poly(&mut self, g: &Small) -> Poly {
        let n = g.n();
        let m = g.edges();
        if m == 0 {
            return x_pow(n);
        }
        let all = (1u64 << n) - 1;
        let comp = g.component_of(0);
        if comp != all {
            let a = self.poly(&g.induced(comp));
            let b = self.poly(&g.induced(all & !comp));
            return times(&a, &b);
        }
        // A vertex whose neighbourhood is a clique contributes (x - deg).
        for v in 0..n {
            let nb = g.rows[v];
            if BitIter(nb).all(|u| nb & !(1 << u) & !g.rows[u] == 0) {
                let rest = self.poly(&g.remove_vertex(v));
                return times_linear(&rest, nb.count_ones() as usize);
            }
        }
        let key = (n <= MEMO_CAP).then(|| (n, canonical_code_rows(&g.rows)));
        if let Some(k) = key {
            if let Some(p) = self.memo.get(&k) {
                return p.clone();
            }
        }
        let u = (0..n).max_by_key(|&v| (g.rows[v].count_ones(), std::cmp::Reverse(v))).unwrap();
        let v = BitIter(g.rows[u]).next().unwrap();
        let del = self.poly(&g.delete_edge(u, v));
        let con = self.poly(&g.contract(u, v));
        let p = minus(&del, &con);
        if let Some(k) = key {
            self.memo.insert(k, p.clone());
        }
        p
    }
}

/// Chromatic polynomial by deletion–contraction, memoized on canonical forms.
pub fn chromatic_polynomial(g: &Graph) -> Result<ChromaticPolynomial> {
    if g.n() > POLY_VERTEX_CAP {
        return Err(Error::TooLarge(format!(
            "chromatic polynomial needs n <= {POLY_VERTEX_CAP}, got {}",
            g.n()
        )));
    }
    let rows = (0..g.n()).map(|v| g.neighbor_mask(v)).collect();
    let mut solver = Solver { memo: HashMap::new() };
    let coefficients = solver.poly(&Small { rows });
    Ok(ChromaticPolynomial { coefficients })
}

/// Number of acyclic orientations, `|P_G(-1)|`.
pub fn acyclic_orientations(g: &Graph) -> Result<BigCount> {
    let p = chromatic_polynomial(g)?;
    Ok(BigCount(p.eval(-1).abs().to_biguint().expect("absolute value")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::count_colorings;

    fn coeffs(p: &ChromaticPolynomial) -> Vec<i64> {
        p.coefficients().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn examples() {
        let k3 = chromatic_polynomial(&Graph::complete(3)).unwrap();
        assert_eq!(coeffs(&k3), [0, 2, -3, 1]);
        assert_eq!(k3.to_string(), "q^3 - 3q^2 + 2q");
        // (q-1)^4 + (q-1) = q^4 - 4q^3 + 6q^2 - 3q
        let c4 = chromatic_polynomial(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(coeffs(&c4), [0, -3, 6, -4, 1]);
        let empty = chromatic_polynomial(&Graph::empty(0)).unwrap();
        assert_eq!(coeffs(&empty), [1]);
        assert!(chromatic_polynomial(&Graph::empty(13)).is_err());
    }

    #[test]
    fn trees_give_q_times_q_minus_one_power() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let p = chromatic_polynomial(&g).unwrap();
        for q in -3..6i64 {
            assert_eq!(p.eval(q), BigInt::from(q * (q - 1).pow(5)));
        }
    }

    #[test]
    fn acyclic_orientation_examples() {
        assert_eq!(acyclic_orientations(&Graph::complete(3)).unwrap(), 6);
        assert_eq!(acyclic_orientations(&Graph::path(3)).unwrap(), 4);
        assert_eq!(acyclic_orientations(&Graph::cycle(4).unwrap()).unwrap(), 14);
    }

    #[test]
    fn agrees_with_counting_and_whitney() {
        let graphs = [
            Graph::complete_bipartite(3, 4),
            Graph::cycle(7).unwrap(),
            Graph::complete(6),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]).unwrap(),
        ];
        for g in &graphs {
            let p = chromatic_polynomial(g).unwrap();
            assert_eq!(p.degree(), g.n());
            assert!(p.coefficients()[g.n()].is_one());
            assert!(p.coefficients()[0].is_zero());
            for (i, c) in p.coefficients().iter().enumerate() {
                let expect_neg = (g.n() - i) % 2 == 1;
                assert!(c.is_zero() || (c.sign() == Sign::Minus) == expect_neg);
            }
            for q in 0..6 {
                assert_eq!(p.count_at(q), count_colorings(g, q as usize));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = chromatic_polynomial(&Graph::cycle(4).unwrap()).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["0","-3","6","-4","1"]"#);
        assert_eq!(serde_json::from_str::<ChromaticPolynomial>(&s).unwrap(), p);
    }
}
