//! Automorphism group orders of multigraphs.
//!
//! `aut_order` counts automorphisms acting on half-edges: vertex
//! permutations preserving the multiplicity structure, times the
//! interchanges of parallel edges, times the symmetries of loops (swap the
//! two ends, permute the loops). `aut_order_halfedge` recounts the same
//! number by brute-force enumeration of half-edge bijections and serves as
//! an independent cross-check.

use num::bigint::BigInt;
use num::One;

use super::graph::Multigraph;

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

/// Number of vertex permutations preserving all edge multiplicities
/// (including loop counts).
pub fn vertex_symmetry_count(g: &Multigraph) -> BigInt {
    let n = g.vertex_count();
    // class key: (degree, loop count) — a cheap invariant to prune on
    let class: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), g.loop_count(v))).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = BigInt::from(0);
    fn rec(
        g: &Multigraph,
        class: &[(usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        count: &mut BigInt,
    ) {
        let n = g.vertex_count();
        if v == n {
            *count += 1;
            return;
        }
        for w in 0..n {
            if used[w] || class[w] != class[v] {
                continue;
            }
            if (0..v).any(|u| g.edge_mult(u, v) != g.edge_mult(image[u], w)) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            rec(g, class, image, used, v + 1, count);
            used[w] = false;
            image[v] = usize::MAX;
        }
    }
    rec(g, &class, &mut image, &mut used, 0, &mut count);
    count
}

/// Order of the automorphism group acting on half-edges.
pub fn aut_order(g: &Multigraph) -> BigInt {
    let mut out = vertex_symmetry_count(g);
    for ((a, b), m) in g.edges() {
        if a == b {
            // each loop's two ends can swap, and loops at a vertex permute
            out *= BigInt::from(1u64 << m) * factorial(m);
        } else {
            out *= factorial(m);
        }
    }
    out
}

/// Brute-force recount of [`aut_order`]: enumerate bijections of half-edges
/// that respect vertex incidence up to a vertex permutation and commute with
/// the edge pairing. Exponential; intended for small graphs only.
pub fn aut_order_halfedge(g: &Multigraph) -> BigInt {
    // half-edge tables: vertex of each half-edge and its paired partner
    let mut vertex_of = Vec::new();
    let mut pair = Vec::new();
    for ((a, b), m) in g.edges() {
        for _ in 0..m {
            let h1 = vertex_of.len();
            vertex_of.push(a);
            vertex_of.push(b);
            pair.push(h1 + 1);
            pair.push(h1);
        }
    }
    let h = vertex_of.len();
    let n = g.vertex_count();
    let class: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), g.loop_count(v))).collect();

    struct State<'a> {
        vertex_of: &'a [usize],
        pair: &'a [usize],
        class: &'a [(usize, usize)],
        vmap: Vec<usize>, // vertex image or MAX
        vused: Vec<bool>,
        hmap: Vec<usize>, // half-edge image or MAX
        hused: Vec<bool>,
        count: BigInt,
    }

    fn assign_vertex(st: &mut State, v: usize, w: usize) -> bool {
        if st.vmap[v] == w {
            return true;
        }
        if st.vmap[v] != usize::MAX || st.vused[w] || st.class[v] != st.class[w] {
            return false;
        }
        st.vmap[v] = w;
        st.vused[w] = true;
        true
    }

    fn rec(st: &mut State, h: usize) {
        let total = st.vertex_of.len();
        if h == total {
            st.count += 1;
            return;
        }
        if st.hmap[h] != usize::MAX {
            rec(st, h + 1);
            return;
        }
        let v = st.vertex_of[h];
        for img in 0..total {
            if st.hused[img] {
                continue;
            }
            let w = st.vertex_of[img];
            // provisional vertex assignment may be new; remember to undo
            let fresh = st.vmap[v] == usize::MAX;
            if !assign_vertex(st, v, w) {
                continue;
            }
            // the paired half-edge is forced
            let p = st.pair[h];
            let pimg = st.pair[img];
            let mut ok = !st.hused[pimg] || st.hmap[p] == pimg;
            let p_fresh = st.hmap[p] == usize::MAX;
            let pv_fresh = st.vmap[st.vertex_of[p]] == usize::MAX;
            if ok && p_fresh {
                if assign_vertex(st, st.vertex_of[p], st.vertex_of[pimg]) {
                    st.hmap[p] = pimg;
                    st.hused[pimg] = true;
                } else {
                    ok = false;
                }
            } else if ok && st.hmap[p] != pimg {
                ok = false;
            }
            if ok {
                st.hmap[h] = img;
                st.hused[img] = true;
                rec(st, h + 1);
                st.hused[img] = false;
                st.hmap[h] = usize::MAX;
            }
            if ok && p_fresh {
                st.hused[pimg] = false;
                st.hmap[p] = usize::MAX;
                if pv_fresh {
                    let w2 = st.vmap[st.vertex_of[p]];
                    st.vused[w2] = false;
                    st.vmap[st.vertex_of[p]] = usize::MAX;
                }
            }
            if fresh {
                st.vused[w] = false;
                st.vmap[v] = usize::MAX;
            }
        }
    }

    let mut st = State {
        vertex_of: &vertex_of,
        pair: &pair,
        class: &class,
        vmap: vec![usize::MAX; n],
        vused: vec![false; n],
        hmap: vec![usize::MAX; h],
        hused: vec![false; h],
        count: BigInt::from(0),
    };
    // isolated vertices have no half-edges; count their permutations apart
    rec(&mut st, 0);
    let mut isolated = 0;
    for v in 0..n {
        if g.degree(v) == 0 {
            isolated += 1;
        }
    }
    st.count * factorial(isolated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Multigraph, expected: u64) {
        assert_eq!(aut_order(g), BigInt::from(expected), "formula");
        assert_eq!(aut_order_halfedge(g), BigInt::from(expected), "half-edge");
    }

    #[test]
    fn paths_and_cycles() {
        check(&Multigraph::path(2), 2);
        check(&Multigraph::path(4), 2);
        check(&Multigraph::cycle(1), 2); // loop: swap its two ends
        check(&Multigraph::cycle(2), 4); // swap vertices x swap edges
        check(&Multigraph::cycle(3), 6);
        check(&Multigraph::cycle(5), 10);
    }

    #[test]
    fn multi_edges_and_loops() {
        let mut theta = Multigraph::new(2);
        theta.add_edge(0, 1, 3);
        check(&theta, 12); // 3! edge swaps x vertex swap

        let mut two_loops = Multigraph::new(1);
        two_loops.add_edge(0, 0, 2);
        check(&two_loops, 8); // 2^2 end swaps x 2! loop swap

        let mut dumbbell = Multigraph::new(2);
        dumbbell.add_edge(0, 0, 1);
        dumbbell.add_edge(1, 1, 1);
        dumbbell.add_edge(0, 1, 1);
        check(&dumbbell, 8); // 2 x 2 end swaps x vertex swap
    }

    #[test]
    fn asymmetric_gluing_figure() {
        // degrees 3, 3, 2, 4; only the identity preserves the structure,
        // but a loop at each of two vertices contributes 2 x 2
        let mut g = Multigraph::new(4);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 1, 1);
        g.add_edge(1, 2, 1);
        g.add_edge(1, 3, 1);
        g.add_edge(2, 3, 1);
        g.add_edge(3, 3, 1);
        check(&g, 4);
    }

    #[test]
    fn disjoint_edges_commute() {
        let g = Multigraph::path(2).disjoint_union(&Multigraph::path(2));
        check(&g, 8); // swap the two edges x flip each
    }

    #[test]
    fn formula_matches_halfedge_enumeration() {
        // a small differential sweep over assorted graphs
        let mut samples = vec![
            Multigraph::path(5),
            Multigraph::cycle(4),
            Multigraph::path(2).cartesian_product(&Multigraph::path(2)),
        ];
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 2);
        g.add_edge(1, 2, 2);
        g.add_edge(2, 2, 1);
        samples.push(g);
        let mut h = Multigraph::new(4);
        h.add_edge(0, 1, 1);
        h.add_edge(0, 2, 1);
        h.add_edge(0, 3, 1);
        samples.push(h); // star: 3! leaf swaps
        for g in &samples {
            assert_eq!(aut_order(g), aut_order_halfedge(g), "graph:\n{g}");
        }
    }
}
