//! Isomorphism-canonical forms and exhaustive multigraph enumeration by
//! degree profile.

use std::collections::BTreeSet;

use super::graph::Multigraph;

/// A label-independent key: equal keys iff isomorphic graphs. Computed per
/// connected component by minimizing a row-by-row adjacency code over
/// relabelings that respect iterated degree refinement, then sorting the
/// component keys. Worst case exponential in component size, but the
/// refinement and code-prefix pruning keep small graphs fast.
pub fn canonical_form(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut comps: Vec<Vec<usize>> = g
        .components()
        .into_iter()
        .map(|comp| canonical_component(g, &comp))
        .collect();
    comps.sort();
    comps
}

/// Structural vertex classes: start from (degree, loop count) and refine by
/// the multiset of neighbor classes until stable. Class ranks are assigned
/// by sorting the signatures, so they agree across isomorphic graphs.
fn refine_classes(g: &Multigraph, comp: &[usize]) -> Vec<usize> {
    let k = comp.len();
    let pos: std::collections::BTreeMap<usize, usize> =
        comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sigs: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| vec![g.degree(v), g.loop_count(v)])
        .collect();
    let mut rank = rank_by_sort(&sigs);
    loop {
        let classes = rank.iter().max().map(|&m| m + 1).unwrap_or(0);
        for (i, &v) in comp.iter().enumerate() {
            let mut nbrs: Vec<usize> = Vec::new();
            for (u, m) in g.neighbors(v) {
                if u != v {
                    nbrs.push(rank[pos[&u]] * (k + 1) + m.min(k));
                }
            }
            nbrs.sort_unstable();
            sigs[i] = std::iter::once(rank[i]).chain(nbrs).collect();
        }
        let next = rank_by_sort(&sigs);
        if next.iter().max().map(|&m| m + 1).unwrap_or(0) == classes {
            return next;
        }
        rank = next;
    }
}

fn rank_by_sort(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).unwrap())
        .collect()
}

/// Component code: the size, then for each label i in turn its loop count
/// and edge multiplicities to labels j < i, minimized over all relabelings
/// consistent with the refined classes.
fn canonical_component(g: &Multigraph, comp: &[usize]) -> Vec<usize> {
    let k = comp.len();
    let rank = refine_classes(g, comp);
    // label position i must take a vertex of the i-th smallest class rank
    let mut required: Vec<usize> = rank.clone();
    required.sort_unstable();

    struct Ctx<'a> {
        g: &'a Multigraph,
        comp: &'a [usize],
        rank: Vec<usize>,
        required: Vec<usize>,
        assigned: Vec<usize>,
        used: Vec<bool>,
        code: Vec<usize>,
        best: Option<Vec<usize>>,
    }
    // invariant: any stored best agrees with the current code on the rows
    // already emitted, so each new row compares against the matching slice;
    // a strictly smaller row beats the best everywhere below, so the best is
    // dropped and rebuilt from the first leaf of this subtree onward
    fn rec(ctx: &mut Ctx, i: usize) {
        let k = ctx.comp.len();
        if i == k {
            if ctx.best.is_none() {
                ctx.best = Some(ctx.code.clone());
            }
            return;
        }
        for c in 0..k {
            if ctx.used[c] || ctx.rank[c] != ctx.required[i] {
                continue;
            }
            let v = ctx.comp[c];
            let row_start = ctx.code.len();
            ctx.code.push(ctx.g.loop_count(v));
            for j in 0..i {
                ctx.code.push(ctx.g.edge_mult(ctx.comp[ctx.assigned[j]], v));
            }
            let mut prune = false;
            if let Some(best) = &ctx.best {
                match ctx.code[row_start..].cmp(&best[row_start..ctx.code.len()]) {
                    std::cmp::Ordering::Greater => prune = true,
                    std::cmp::Ordering::Less => ctx.best = None,
                    std::cmp::Ordering::Equal => {}
                }
            }
            if !prune {
                ctx.used[c] = true;
                ctx.assigned.push(c);
                rec(ctx, i + 1);
                ctx.assigned.pop();
                ctx.used[c] = false;
            }
            ctx.code.truncate(row_start);
        }
    }
    let mut ctx = Ctx {
        g,
        comp,
        rank,
        required,
        assigned: Vec::with_capacity(k),
        used: vec![false; k],
        code: vec![k],
        best: None,
    };
    rec(&mut ctx, 0);
    ctx.best.unwrap()
}

/// All multigraphs, up to isomorphism, whose degree profile is `profile`
/// (entry `d - 1` counts vertices of degree `d`). Loops and parallel edges
/// are allowed; there are no isolated vertices.
pub fn enumerate_multigraphs(profile: &[usize]) -> Vec<Multigraph> {
    let mut degrees = Vec::new();
    for (i, &count) in profile.iter().enumerate() {
        for _ in 0..count {
            degrees.push(i + 1);
        }
    }
    let n = degrees.len();
    let mut rem = degrees.clone();
    let mut g = Multigraph::new(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    fill_vertex(&mut g, &mut rem, 0, &mut seen, &mut out);
    out
}

fn fill_vertex(
    g: &mut Multigraph,
    rem: &mut Vec<usize>,
    u: usize,
    seen: &mut BTreeSet<Vec<Vec<usize>>>,
    out: &mut Vec<Multigraph>,
) {
    let n = g.vertex_count();
    if u == n {
        let key = canonical_form(g);
        if seen.insert(key) {
            out.push(g.clone());
        }
        return;
    }
    // distribute rem[u] over loops at u and edges to later vertices
    let budget = rem[u];
    for loops in 0..=(budget / 2) {
        if loops > 0 {
            g.add_edge(u, u, loops);
        }
        distribute(g, rem, u, u + 1, budget - 2 * loops, seen, out);
        if loops > 0 {
            remove_edges(g, u, u, loops);
        }
    }
}

fn distribute(
    g: &mut Multigraph,
    rem: &mut Vec<usize>,
    u: usize,
    v: usize,
    left: usize,
    seen: &mut BTreeSet<Vec<Vec<usize>>>,
    out: &mut Vec<Multigraph>,
) {
    let n = g.vertex_count();
    if v == n {
        if left == 0 {
            let saved = rem[u];
            rem[u] = 0;
            fill_vertex(g, rem, u + 1, seen, out);
            rem[u] = saved;
        }
        return;
    }
    let max_here = left.min(rem[v]);
    for m in 0..=max_here {
        if m > 0 {
            g.add_edge(u, v, m);
            rem[v] -= m;
        }
        distribute(g, rem, u, v + 1, left - m, seen, out);
        if m > 0 {
            remove_edges(g, u, v, m);
            rem[v] += m;
        }
    }
}

fn remove_edges(g: &mut Multigraph, a: usize, b: usize, m: usize) {
    // rebuild without m copies of (a, b); Multigraph has no removal API
    let mut h = Multigraph::new(g.vertex_count());
    for ((x, y), mult) in g.edges() {
        let mult = if (x, y) == (a.min(b), a.max(b)) {
            mult - m
        } else {
            mult
        };
        h.add_edge(x, y, mult);
    }
    *g = h;
}

/// All degree profiles with exactly `k` half-edges (sum of degree times
/// count equals `k`), i.e. the partitions of `k` written as profiles.
pub fn profiles_with_halfedges(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(left: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let top = parts.iter().copied().max().unwrap_or(0);
            let mut profile = vec![0; top];
            for &d in parts.iter() {
                profile[d - 1] += 1;
            }
            out.push(profile);
            return;
        }
        for d in (1..=left.min(max)).rev() {
            parts.push(d);
            rec(left - d, d, parts, out);
            parts.pop();
        }
    }
    rec(k, k, &mut parts, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::aut::aut_order;
    use num::bigint::BigInt;

    #[test]
    fn canonical_form_is_label_independent() {
        let mut a = Multigraph::new(3);
        a.add_edge(0, 1, 2);
        a.add_edge(2, 2, 1);
        let mut b = Multigraph::new(3);
        b.add_edge(1, 2, 2);
        b.add_edge(0, 0, 1);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let mut c = Multigraph::new(3);
        c.add_edge(0, 1, 1);
        c.add_edge(1, 2, 1);
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn degree_two_regular_graphs() {
        // profile (0, n): every vertex degree 2 -> disjoint unions of cycles
        assert_eq!(enumerate_multigraphs(&[0, 1]).len(), 1); // C1
        assert_eq!(enumerate_multigraphs(&[0, 2]).len(), 2); // C2, C1+C1
        assert_eq!(enumerate_multigraphs(&[0, 3]).len(), 3); // C3, C2+C1, 3xC1
        // partitions of 4: C4, C3+C1, C2+C2, C2+C1+C1, 4xC1
        assert_eq!(enumerate_multigraphs(&[0, 4]).len(), 5);
    }

    #[test]
    fn single_degree_four_vertex() {
        // one vertex of degree 4: two loops
        let gs = enumerate_multigraphs(&[0, 0, 0, 1]);
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].loop_count(0), 2);
    }

    #[test]
    fn cubic_two_vertex_graphs() {
        // two degree-3 vertices: theta (triple edge), or loop-edge-loop
        // (dumbbell), or triple... with loops: edge + loop at each end
        let gs = enumerate_multigraphs(&[0, 0, 2]);
        assert_eq!(gs.len(), 2);
    }

    #[test]
    fn leaves_on_a_path() {
        // profile (2, 1): P3, or an edge plus a disjoint loop
        let gs = enumerate_multigraphs(&[2, 1]);
        assert_eq!(gs.len(), 2);
        let path_key = canonical_form(&Multigraph::path(3));
        assert!(gs.iter().any(|g| canonical_form(g) == path_key));
    }

    #[test]
    fn aut_orders_sum_check_for_pairings() {
        // the number of perfect matchings on 2m labeled half-edges at
        // distinct... instead: sum over graphs with profile of
        // k!/(aut * prod d_v!) weighted counts equals the pairing count;
        // spot-check the simplest case of two degree-1 vertices: one edge
        let gs = enumerate_multigraphs(&[2]);
        assert_eq!(gs.len(), 1);
        assert_eq!(aut_order(&gs[0]), BigInt::from(2));
    }

    #[test]
    fn profiles_partition_halfedges() {
        assert_eq!(profiles_with_halfedges(1), vec![vec![1]]);
        // partitions of 4: 4, 3+1, 2+2, 2+1+1, 1+1+1+1
        assert_eq!(profiles_with_halfedges(4).len(), 5);
        for p in profiles_with_halfedges(8) {
            let total: usize = p.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum();
            assert_eq!(total, 8);
        }
    }
}
