//! Finite multigraphs: loops and parallel edges allowed.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::GraphError;

/// Undirected multigraph on vertices `0..n`. Edge multiplicities are stored
/// per unordered pair; a `(v, v)` entry counts loops at `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Path with `n` vertices (n-1 edges).
    pub fn path(n: usize) -> Self {
        let mut g = Multigraph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i, 1);
        }
        g
    }

    /// Cycle with `n` vertices: a loop for n = 1, a doubled edge for n = 2.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1);
        let mut g = Multigraph::new(n);
        match n {
            1 => g.add_edge(0, 0, 1),
            2 => g.add_edge(0, 1, 2),
            _ => {
                for i in 1..n {
                    g.add_edge(i - 1, i, 1);
                }
                g.add_edge(n - 1, 0, 1);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Total number of edges, loops and multiplicities included.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, mult: usize) {
        assert!(a < self.n && b < self.n, "edge endpoint out of range");
        if mult == 0 {
            return;
        }
        let key = (a.min(b), a.max(b));
        *self.edges.entry(key).or_insert(0) += mult;
    }

    pub fn edge_mult(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.get(&key).copied().unwrap_or(0)
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edge_mult(v, v)
    }

    /// Iterate `((a, b), multiplicity)` with `a <= b`; `a == b` are loops.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Degree with each loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        let mut d = 0;
        for (&(a, b), &m) in &self.edges {
            if a == v && b == v {
                d += 2 * m;
            } else if a == v || b == v {
                d += m;
            }
        }
        d
    }

    /// Neighbors of `v` (excluding `v` itself) with edge multiplicities.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&(a, b), &m) in &self.edges {
            if a == v && b != v {
                out.push((b, m));
            } else if b == v && a != v {
                out.push((a, m));
            }
        }
        out
    }

    /// Number of connected components; isolated vertices count.
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for (u, _) in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number: edges - vertices + components.
    pub fn loop_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.n
    }

    /// Degree profile: entry `d - 1` counts vertices of degree `d`.
    /// Degree-zero vertices are not representable and must be absent.
    pub fn profile(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for v in 0..self.n {
            let d = self.degree(v);
            assert!(d > 0, "profile of a graph with an isolated vertex");
            if d > out.len() {
                out.resize(d, 0);
            }
            out[d - 1] += 1;
        }
        out
    }

    /// The induced subgraph on `verts` (which need not be sorted); vertex
    /// `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Multigraph {
        let mut g = Multigraph::new(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if i < j {
                    g.add_edge(i, j, self.edge_mult(a, b));
                } else if i == j {
                    g.add_edge(i, i, self.loop_count(a));
                }
            }
        }
        g
    }

    /// Cartesian product: vertex `(u, i)` is `u + i * self.n`; edges join
    /// copies of `self` along the edges of `other` and vice versa. Loops in
    /// either factor become loops in the product.
    pub fn cartesian_product(&self, other: &Multigraph) -> Multigraph {
        let mut g = Multigraph::new(self.n * other.n);
        let idx = |u: usize, i: usize| u + i * self.n;
        for i in 0..other.n {
            for (&(a, b), &m) in &self.edges {
                g.add_edge(idx(a, i), idx(b, i), m);
            }
        }
        for u in 0..self.n {
            for (&(i, j), &m) in &other.edges {
                g.add_edge(idx(u, i), idx(u, j), m);
            }
        }
        g
    }

    /// Replace one copy of the edge `a-b` (or loop `a-a`) by a path through
    /// `k` new vertices. With `k = 0` this is the identity.
    pub fn subdivide_edge(&mut self, a: usize, b: usize, k: usize) {
        if k == 0 {
            return;
        }
        let key = (a.min(b), a.max(b));
        let m = self.edges.get_mut(&key).expect("edge to subdivide");
        *m -= 1;
        if *m == 0 {
            self.edges.remove(&key);
        }
        let mut prev = a;
        for _ in 0..k {
            let v = self.add_vertex();
            self.add_edge(prev, v, 1);
            prev = v;
        }
        self.add_edge(prev, b, 1);
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        let base = g.n;
        for _ in 0..other.n {
            g.add_vertex();
        }
        for (&(a, b), &m) in &other.edges {
            g.add_edge(a + base, b + base, m);
        }
        g
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(&(a, b), &m)| json!([a, b, m]))
            .collect();
        json!({ "vertices": self.n, "edges": edges })
    }

    pub fn from_json(value: &Value) -> Result<Multigraph, GraphError> {
        let bad = |msg: &str| GraphError::Parse(format!("json graph: {msg}"));
        let n = value
            .get("vertices")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing vertex count"))? as usize;
        let mut g = Multigraph::new(n);
        let edges = value
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing edges"))?;
        for e in edges {
            let triple = e
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| bad("edge must be [a, b, mult]"))?;
            let get = |i: usize| triple[i].as_u64().map(|v| v as usize);
            let (a, b, m) = (get(0), get(1), get(2));
            match (a, b, m) {
                (Some(a), Some(b), Some(m)) if a < n && b < n => g.add_edge(a, b, m),
                _ => return Err(bad("edge endpoint out of range")),
            }
        }
        Ok(g)
    }

    /// Text form: a `vertices n` line then one `a b mult` line per edge.
    pub fn from_text(input: &str) -> Result<Multigraph, GraphError> {
        let bad = |msg: String| GraphError::Parse(msg);
        let mut lines = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("empty graph text".into()))?;
        let n: usize = header
            .strip_prefix("vertices")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| bad(format!("expected 'vertices n', got '{header}'")))?;
        let mut g = Multigraph::new(n);
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 'a b mult', got '{line}'")));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| bad(format!("bad integer '{s}'")))
            };
            let (a, b, m) = (parse(fields[0])?, parse(fields[1])?, parse(fields[2])?);
            if a >= n || b >= n {
                return Err(bad(format!("edge endpoint out of range in '{line}'")));
            }
            g.add_edge(a, b, m);
        }
        Ok(g)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for (&(a, b), &m) in &self.edges {
            writeln!(f, "{a} {b} {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_count_loops_twice() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 1, 3);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn loop_number_of_cycles_and_paths() {
        assert_eq!(Multigraph::path(5).loop_number(), 0);
        assert_eq!(Multigraph::cycle(1).loop_number(), 1);
        assert_eq!(Multigraph::cycle(2).loop_number(), 1);
        assert_eq!(Multigraph::cycle(5).loop_number(), 1);
    }

    #[test]
    fn product_of_paths_is_grid() {
        let g = Multigraph::path(2).cartesian_product(&Multigraph::path(3));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 7);
        assert!(g.is_connected());
    }

    #[test]
    fn subdivision_preserves_loop_number() {
        let mut g = Multigraph::cycle(1);
        g.subdivide_edge(0, 0, 2);
        assert_eq!(g, Multigraph::cycle(3));
        let mut h = Multigraph::cycle(2);
        h.subdivide_edge(0, 1, 1);
        assert_eq!(h.loop_number(), 1);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_mult(0, 1), 1);
    }

    #[test]
    fn text_and_json_round_trip() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 2);
        g.add_edge(2, 2, 1);
        assert_eq!(Multigraph::from_text(&g.to_string()).unwrap(), g);
        assert_eq!(Multigraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn profile_counts_by_degree() {
        // one loop plus a triple edge: degrees 5 and 3
        let mut g = Multigraph::new(2);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 1, 3);
        assert_eq!(g.profile(), vec![0, 0, 1, 0, 1]);
    }
}
