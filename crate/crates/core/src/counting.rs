//! Lattice-point counters that serve as independent oracles for the closed
//! forms in [`crate::families`], plus fast counters for the two graph shapes
//! whose duals are not magic positive.
//!
//! Dual symmetric edge polytopes are counted in the root gauge: integer
//! vertex labels `y` with `y[root] = 0` and `|y[u] - y[w]| <= n` on every
//! edge.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{interpolate_at_naturals, Poly, Rational};

/// Default cap on enumerated points or search nodes.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub root: usize,
}

impl GraphSpec {
    /// Builds and validates: simple, connected, at least two vertices.
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>, root: usize) -> Result<Self> {
        let g = GraphSpec {
            vertices,
            edges,
            root,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.vertices;
        if v < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {v}"
            )));
        }
        if self.root >= v {
            return Err(Error::InvalidGraph(format!(
                "root {} out of range",
                self.root
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for &[a, b] in &self.edges {
            if a >= v || b >= v {
                return Err(Error::InvalidGraph(format!("edge [{a}, {b}] out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge [{a}, {b}]")));
            }
        }
        if self.bfs_order().len() != v {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(())
    }

    pub fn with_root(&self, root: usize) -> Result<Self> {
        GraphSpec::new(self.vertices, self.edges.clone(), root)
    }

    /// Dimension of the dual symmetric edge polytope.
    pub fn dimension(&self) -> usize {
        self.vertices - 1
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GraphSpec =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph file: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn bfs_order(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut order = vec![self.root];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }
}

/// Named graph families that expand to a [`GraphSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphShape {
    CompleteBipartite { m: usize, m2: usize },
    CompleteMinusEdge { v: usize },
    Cycle { v: usize },
    Path { v: usize },
    Complete { v: usize },
}

impl GraphShape {
    pub fn vertices(&self) -> usize {
        match *self {
            GraphShape::CompleteBipartite { m, m2 } => m + m2,
            GraphShape::CompleteMinusEdge { v }
            | GraphShape::Cycle { v }
            | GraphShape::Path { v }
            | GraphShape::Complete { v } => v,
        }
    }

    pub fn dimension(&self) -> usize {
        self.vertices() - 1
    }

    /// Vertex 0 is the root. For `K_{m,m2}` vertices `0..m` form the first
    /// side; for `K_v - e` the missing edge is `{v-2, v-1}`.
    pub fn to_spec(&self) -> GraphSpec {
        let mut edges = Vec::new();
        let v = self.vertices();
        match *self {
            GraphShape::CompleteBipartite { m, m2 } => {
                for a in 0..m {
                    for b in m..m + m2 {
                        edges.push([a, b]);
                    }
                }
            }
            GraphShape::CompleteMinusEdge { v } => {
                for a in 0..v {
                    for b in a + 1..v {
                        if (a, b) != (v - 2, v - 1) {
                            edges.push([a, b]);
                        }
                    }
                }
            }
            GraphShape::Cycle { v } => {
                for a in 0..v {
                    edges.push([a, (a + 1) % v]);
                }
            }
            GraphShape::Path { v } => {
                for a in 0..v - 1 {
                    edges.push([a, a + 1]);
                }
            }
            GraphShape::Complete { v } => {
                for a in 0..v {
                    for b in a + 1..v {
                        edges.push([a, b]);
                    }
                }
            }
        }
        GraphSpec::new(v, edges, 0).expect("named shapes are valid graphs")
    }

    /// Counts with the fastest applicable method.
    pub fn count(&self, n: u64, budget: u64) -> Result<CountReport> {
        let (count, method) = match *self {
            GraphShape::CompleteBipartite { m, m2 } => {
                (count_bipartite_dual(m, m2, n), CountMethod::BipartiteClosed)
            }
            GraphShape::CompleteMinusEdge { v } => (
                count_complete_minus_edge_dual(v, n),
                CountMethod::MinusEdgeClosed,
            ),
            _ => (
                count_graph_dual(&self.to_spec(), n, budget)?,
                CountMethod::GraphDfs,
            ),
        };
        Ok(CountReport { n, count, method })
    }
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphShape::CompleteBipartite { m, m2 } => write!(f, "k_bipartite:{m},{m2}"),
            GraphShape::CompleteMinusEdge { v } => write!(f, "complete_minus_edge:{v}"),
            GraphShape::Cycle { v } => write!(f, "cycle:{v}"),
            GraphShape::Path { v } => write!(f, "path:{v}"),
            GraphShape::Complete { v } => write!(f, "complete:{v}"),
        }
    }
}

impl FromStr for GraphShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("graph {s:?}: {why}"));
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| bad("expected <shape>:<args>"))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad("bad number")))
            .collect::<Result<_>>()?;
        let one = |min: usize| -> Result<usize> {
            match nums.as_slice() {
                [v] if *v >= min => Ok(*v),
                [_] => Err(bad(&format!("needs at least {min} vertices"))),
                _ => Err(bad("expected one argument")),
            }
        };
        match name.trim() {
            "k_bipartite" => match nums.as_slice() {
                [m, m2] if *m >= 1 && *m2 >= 1 => {
                    Ok(GraphShape::CompleteBipartite { m: *m, m2: *m2 })
                }
                _ => Err(bad("expected m,m2 with both >= 1")),
            },
            "complete_minus_edge" => Ok(GraphShape::CompleteMinusEdge { v: one(4)? }),
            "cycle" => Ok(GraphShape::Cycle { v: one(3)? }),
            "path" => Ok(GraphShape::Path { v: one(2)? }),
            "complete" => Ok(GraphShape::Complete { v: one(2)? }),
            other => Err(bad(&format!("unknown shape {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    GraphDfs,
    BipartiteClosed,
    MinusEdgeClosed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u64,
    #[serde(serialize_with = "big_as_string")]
    pub count: BigUint,
    pub method: CountMethod,
}

fn big_as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn box_size(d: usize, n: u64, budget: u64) -> Result<u64> {
    let side = 2 * n + 1;
    let refuse = || Error::BudgetExceeded {
        budget,
        expanded: u64::MAX,
    };
    let mut size: u64 = 1;
    for _ in 0..d {
        size = size.checked_mul(side).ok_or_else(refuse)?;
    }
    if size > budget {
        return Err(Error::BudgetExceeded {
            budget,
            expanded: size,
        });
    }
    Ok(size)
}

/// Visits every point of `[-n, n]^d` in lexicographic order.
fn for_each_box_point(d: usize, n: u64, mut f: impl FnMut(&[i64])) {
    let n = n as i64;
    let mut x = vec![-n; d];
    loop {
        f(&x);
        let mut k = d;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < n {
                x[k] += 1;
                break;
            }
            x[k] = -n;
        }
    }
}

/// Integer points of `[-n, n]^d` with every window sum
/// `x_j + ... + x_k <= n` (`j < k`). Plain enumeration over the box.
pub fn count_stasheff_dual(d: usize, n: u64, budget: u64) -> Result<BigUint> {
    box_size(d, n, budget)?;
    let limit = n as i64;
    let mut count: u64 = 0;
    for_each_box_point(d, n, |x| {
        let ok = (0..d).all(|j| {
            let mut s = x[j];
            (j + 1..d).all(|k| {
                s += x[k];
                s <= limit
            })
        });
        if ok {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Integer points of `[-n, n]^d` with `|x_1 + ... + x_d| <= n`.
pub fn count_cycle_dual(d: usize, n: u64, budget: u64) -> Result<BigUint> {
    box_size(d, n, budget)?;
    let limit = n as i64;
    let mut count: u64 = 0;
    for_each_box_point(d, n, |x| {
        if x.iter().sum::<i64>().abs() <= limit {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Root-gauge count for an arbitrary connected graph by depth-first label
/// assignment. Each unassigned vertex keeps the intersection of
/// `[y_u - n, y_u + n]` over its assigned neighbours; branches with an
/// empty window are pruned.
pub fn count_graph_dual(g: &GraphSpec, n: u64, budget: u64) -> Result<BigUint> {
    g.validate()?;
    let order = g.bfs_order();
    let mut position = vec![0usize; g.vertices];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    // earlier[p] = positions of neighbours assigned before position p
    let adj = g.adjacency();
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(p, &v)| {
            adj[v]
                .iter()
                .map(|&w| position[w])
                .filter(|&q| q < p)
                .collect()
        })
        .collect();

    struct Search<'a> {
        earlier: &'a [Vec<usize>],
        labels: Vec<i64>,
        n: i64,
        expanded: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn window(&self, p: usize) -> Option<(i64, i64)> {
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for &q in &self.earlier[p] {
                lo = lo.max(self.labels[q] - self.n);
                hi = hi.min(self.labels[q] + self.n);
            }
            (lo <= hi).then_some((lo, hi))
        }

        fn run(&mut self, p: usize) -> Result<u128> {
            let Some((lo, hi)) = self.window(p) else {
                return Ok(0);
            };
            let width = (hi - lo + 1) as u64;
            self.expanded = self.expanded.saturating_add(width);
            if self.expanded > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                    expanded: self.expanded,
                });
            }
            if p + 1 == self.labels.len() {
                return Ok(width as u128);
            }
            let mut total = 0u128;
            for y in lo..=hi {
                self.labels[p] = y;
                total += self.run(p + 1)?;
            }
            Ok(total)
        }
    }

    let mut search = Search {
        earlier: &earlier,
        labels: vec![0; g.vertices],
        n: n as i64,
        expanded: 1,
        budget,
    };
    // position 0 is the root, pinned at 0
    let total = search.run(1)?;
    Ok(BigUint::from(total))
}

/// Number of integer `k`-tuples whose values together with 0 have
/// max - min exactly `s`.
pub fn spread_count(k: usize, s: u64) -> BigUint {
    if s == 0 {
        return BigUint::one();
    }
    let k = k as u32;
    let p = |b: u64| -> BigInt { BigInt::from(b).pow(k) };
    let (s1, s0) = (p(s + 1), p(s));
    let sm = p(s - 1);
    let two = BigInt::from(2);
    let edge = &two * (&s1 - &s0);
    let interior = BigInt::from(s - 1) * (&s1 - &two * &s0 + sm);
    (edge + interior)
        .to_biguint()
        .expect("spread counts are nonnegative")
}

/// `K_{m,m2}`, root on the size-`m` side:
/// `sum_{s=0}^{2n} N_{m-1}(s) (2n+1-s)^{m2}`.
pub fn count_bipartite_dual(m: usize, m2: usize, n: u64) -> BigUint {
    assert!(m >= 1 && m2 >= 1, "both sides must be nonempty");
    (0..=2 * n).fold(BigUint::zero(), |acc, s| {
        acc + spread_count(m - 1, s) * BigUint::from(2 * n + 1 - s).pow(m2 as u32)
    })
}

/// `K_v` minus one edge: `sum_{s=0}^{n} N_{v-3}(s) (2n+1-s)^2`.
pub fn count_complete_minus_edge_dual(v: usize, n: u64) -> BigUint {
    assert!(v >= 4, "complete_minus_edge needs v >= 4");
    (0..=n).fold(BigUint::zero(), |acc, s| {
        acc + spread_count(v - 3, s) * BigUint::from(2 * n + 1 - s).pow(2u32)
    })
}

/// Interpolates through `n = 0..=degree` and then insists the counter and
/// the interpolant agree at `n = degree + 1`.
pub fn ehrhart_from_counts<F>(mut counter: F, degree: usize) -> Result<Poly>
where
    F: FnMut(u64) -> Result<BigUint>,
{
    let values: Vec<BigInt> = (0..=degree as u64)
        .map(|n| counter(n).map(BigInt::from))
        .collect::<Result<_>>()?;
    let poly = interpolate_at_naturals(&values)?;
    let check_n = degree as u64 + 1;
    let counted = Rational::from_integer(BigInt::from(counter(check_n)?));
    let interpolated = poly.eval_int(check_n as i64);
    if counted != interpolated {
        return Err(Error::OversampleMismatch {
            n: check_n,
            interpolated: Box::new(interpolated),
            counted: Box::new(counted),
        });
    }
    Ok(poly)
}
