//! Generating functions of connected multigraphs with a fixed loop number,
//! weighted by inverse automorphism-group orders: the classical tree-series
//! machinery (counting only), its black-white refinement via a colored
//! rooted-tree fixed point, and the reduction of higher loop numbers to a
//! finite catalog of min-degree-3 graphs with subdivided edges.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::graphcore::{aut_order, canonical_form, enumerate_multigraphs, full_w, Multigraph};
use crate::poly::{LaurentPoly, Reg};
use crate::series::{graded_substitute, GradedMultiSeries, SeriesError, TruncatedSeries};

/// Largest loop number for which the min-degree-3 catalog is enumerated.
pub const MAX_LOOP_NUMBER: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum WrightError {
    #[error("loop number {0} exceeds the supported bound {MAX_LOOP_NUMBER}")]
    LoopNumberBound(usize),
    #[error("truncation order {order} is below the vertex count {vertices}")]
    OrderBelowVertexCount { order: usize, vertices: usize },
    #[error("colored tree fixed point did not stabilize at order {0}")]
    NoFixedPoint(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn x_series(reg: &Reg, order: usize) -> TruncatedSeries {
    TruncatedSeries::var_series(reg, reg.var("x"), order)
}

/// The rooted-tree series, the unique fixed point of `L = x exp(L)` with
/// `L = x + O(x^2)`; each coefficient counts rooted trees weighted by
/// 1/|Aut| as a rooted tree.
pub fn lambert_series(reg: &Reg, order: usize) -> TruncatedSeries {
    let x = x_series(reg, order);
    let mut l = x.clone();
    // each pass fixes at least one further order
    for _ in 0..order {
        l = x.mul(&l.exp().expect("zero constant term"));
    }
    l
}

/// Power-series inverse of a series with constant term one.
fn recip(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    Ok(s.log()?.neg().exp()?)
}

/// The classical loop-number-`g` series: connected multigraphs with `g`
/// independent cycles, each counted with weight 1/|Aut|, by vertex count.
pub fn classical_a(reg: &Reg, g: usize, order: usize) -> Result<TruncatedSeries, WrightError> {
    let l = lambert_series(reg, order);
    match g {
        0 => Ok(l.integrate_over_var()?),
        1 => {
            // 1/2 log(1/(1 - L))
            let one = TruncatedSeries::one(reg, reg.var("x"), order);
            Ok(one
                .sub(&l)
                .log()?
                .neg()
                .scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
        }
        _ => {
            // sum over the min-degree-3 catalog of L^v / (1-L)^e / |Aut|
            let one = TruncatedSeries::one(reg, reg.var("x"), order);
            let inv = recip(&one.sub(&l))?;
            let mut out = TruncatedSeries::zero(reg, reg.var("x"), order);
            for (graph, aut) in min_degree3_catalog(g)? {
                let v = graph.vertex_count() as u64;
                let e = graph.edge_count() as u64;
                let term = l.pow(v).mul(&inv.pow(e));
                out = out.add(&term.scale(&BigRational::new(BigInt::one(), aut)));
            }
            Ok(out)
        }
    }
}

/// The colored rooted-tree series split by root color and parity: `tplus`
/// has a white root with evenly many black children, `tminus` a white root
/// with oddly many, `tb` a black root. Their sum is the full rooted-tree
/// series of black-white polynomials weighted by 1/|Aut| as rooted trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeTriple {
    pub tplus: TruncatedSeries,
    pub tminus: TruncatedSeries,
    pub tb: TruncatedSeries,
}

impl TreeTriple {
    pub fn total(&self) -> TruncatedSeries {
        self.tplus.add(&self.tminus).add(&self.tb)
    }
}

/// One step of the colored-tree system: attach forests of the three kinds
/// to a fresh root of either color, tracking the parity flips the new edges
/// induce at the old roots.
fn tree_step(reg: &Reg, x: &TruncatedSeries, cur: &TreeTriple) -> Result<TreeTriple, SeriesError> {
    let t = LaurentPoly::var(reg, reg.var("t"));
    let t_inv = LaurentPoly::var_pow(reg, reg.var("t"), -1);
    let ew = cur.tplus.add(&cur.tminus).exp()?;
    let tplus = x.mul(&ew).mul(&cur.tb.cosh()?).scale_poly(&t);
    let tminus = x.mul(&ew).mul(&cur.tb.sinh()?);
    let tb = x.mul(
        &cur.tplus
            .scale_poly(&t_inv)
            .add(&cur.tminus.scale_poly(&t))
            .add(&cur.tb)
            .exp()?,
    );
    Ok(TreeTriple { tplus, tminus, tb })
}

/// Fixed point of the colored-tree system to the given order, iterated from
/// the one- and two-vertex seeds (t x, x^2, x).
pub fn colored_tree_triple(reg: &Reg, order: usize) -> Result<TreeTriple, WrightError> {
    let xv = reg.var("x");
    let x = x_series(reg, order);
    let t = LaurentPoly::var(reg, reg.var("t"));
    let mut cur = TreeTriple {
        tplus: x.scale_poly(&t),
        tminus: TruncatedSeries::var_series(reg, xv, order)
            .mul(&TruncatedSeries::var_series(reg, xv, order)),
        tb: x.clone(),
    };
    // each step fixes at least one further order; the extra steps confirm
    // stabilization
    for _ in 0..order {
        cur = tree_step(reg, &x, &cur)?;
    }
    if tree_step(reg, &x, &cur)? != cur {
        return Err(WrightError::NoFixedPoint(order));
    }
    Ok(cur)
}

/// The loop-number-0 series: connected trees, each weighted by its
/// black-white polynomial over |Aut|. Dividing the coefficient of x^n by n
/// converts rooted counts to unrooted ones.
pub fn w0_series(reg: &Reg, order: usize) -> Result<TruncatedSeries, WrightError> {
    Ok(colored_tree_triple(reg, order)?
        .total()
        .integrate_over_var()?)
}

/// Cycle contributions by length: the degree-d component is the full
/// (three-variable) polynomial of the d-cycle divided by |Aut C_d| = 2d,
/// with the 1- and 2-cycles (a loop, a doubled edge) included.
pub fn cycle_z_series(reg: &Reg, degree: usize) -> GradedMultiSeries {
    let mut z = GradedMultiSeries::zero(reg, degree);
    for d in 1..=degree {
        let w = full_w(&Multigraph::cycle(d), reg);
        z.add_part(d, &w.scale(&BigRational::new(BigInt::one(), BigInt::from(2 * d))));
    }
    z
}

/// The loop-number-1 series: trees grafted onto cycles of every length.
pub fn w1_series(reg: &Reg, order: usize) -> Result<TruncatedSeries, WrightError> {
    let trees = colored_tree_triple(reg, order)?;
    let z = cycle_z_series(reg, order);
    Ok(graded_substitute(&z, &trees.tb, &trees.tplus, &trees.tminus, order)?)
}

/// All connected multigraphs with loop number `g` and minimum degree 3, up
/// to isomorphism, paired with their automorphism-group orders (loops and
/// parallel edges contribute their flip and permutation symmetries). Each
/// member has v <= 2g - 2 vertices and e = v + g - 1 edges, so the catalog
/// is finite; ordered by (vertices, edges, canonical form).
pub fn min_degree3_catalog(g: usize) -> Result<Vec<(Multigraph, BigInt)>, WrightError> {
    if !(2..=MAX_LOOP_NUMBER).contains(&g) {
        return Err(WrightError::LoopNumberBound(g));
    }
    let mut out = Vec::new();
    for v in 1..=(2 * g - 2) {
        let e = v + g - 1;
        for profile in degree_profiles_min3(2 * e, v) {
            for graph in enumerate_multigraphs(&profile) {
                if graph.is_connected() {
                    debug_assert_eq!(graph.loop_number(), g);
                    out.push(graph);
                }
            }
        }
    }
    let mut keyed: Vec<_> = out
        .into_iter()
        .map(|graph| {
            let key = (
                graph.vertex_count(),
                graph.edge_count(),
                canonical_form(&graph),
            );
            (key, graph)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut seen = BTreeSet::new();
    Ok(keyed
        .into_iter()
        .filter(|(key, _)| seen.insert(key.clone()))
        .map(|(_, graph)| {
            let aut = aut_order(&graph);
            (graph, aut)
        })
        .collect())
}

/// Degree profiles of `v` vertices, all degrees >= 3, total degree `total`.
fn degree_profiles_min3(total: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(left: usize, slots: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                let top = *parts.iter().max().expect("nonempty partition");
                let mut profile = vec![0; top];
                for &d in parts.iter() {
                    profile[d - 1] += 1;
                }
                out.push(profile);
            }
            return;
        }
        for d in (3..=left.min(max)).rev() {
            if left - d < 3 * (slots - 1) {
                continue;
            }
            parts.push(d);
            rec(left - d, slots - 1, d, parts, out);
            parts.pop();
        }
    }
    if v > 0 {
        rec(total, v, total, &mut parts, &mut out);
    }
    out
}

/// Subdivision contributions of a single min-degree-3 graph `G`: the sum of
/// full polynomials over all ways to place extra vertices on the strands of
/// `G` (each loop and each parallel copy subdivides independently), graded
/// by the subdivided vertex count and divided by |Aut G|.
pub fn subdivision_z_series(
    reg: &Reg,
    g: &Multigraph,
    degree: usize,
) -> Result<GradedMultiSeries, WrightError> {
    let base = g.vertex_count();
    if degree < base {
        return Err(WrightError::OrderBelowVertexCount {
            order: degree,
            vertices: base,
        });
    }
    let mut strands = Vec::new();
    for ((a, b), m) in g.edges() {
        for _ in 0..m {
            strands.push((a, b));
        }
    }
    let mut z = GradedMultiSeries::zero(reg, degree);
    let mut counts = vec![0usize; strands.len()];
    accumulate_subdivisions(g, reg, &strands, &mut counts, 0, degree - base, &mut z);
    let aut = aut_order(g);
    Ok(z.scale(&BigRational::new(BigInt::one(), aut)))
}

fn accumulate_subdivisions(
    g: &Multigraph,
    reg: &Reg,
    strands: &[(usize, usize)],
    counts: &mut Vec<usize>,
    i: usize,
    budget: usize,
    z: &mut GradedMultiSeries,
) {
    if i == strands.len() {
        let mut h = g.clone();
        for (&(a, b), &k) in strands.iter().zip(counts.iter()) {
            h.subdivide_edge(a, b, k);
        }
        z.add_part(h.vertex_count(), &full_w(&h, reg));
        return;
    }
    for k in 0..=budget {
        counts[i] = k;
        accumulate_subdivisions(g, reg, strands, counts, i + 1, budget - k, z);
    }
    counts[i] = 0;
}

/// Per-catalog-member contributions to the loop-number-`g` series (g >= 2):
/// trees grafted onto every subdivision of each member.
pub fn wg_contributions(
    reg: &Reg,
    g: usize,
    order: usize,
) -> Result<Vec<(Multigraph, TruncatedSeries)>, WrightError> {
    let trees = colored_tree_triple(reg, order)?;
    let mut out = Vec::new();
    for (graph, _) in min_degree3_catalog(g)? {
        let z = subdivision_z_series(reg, &graph, order.max(graph.vertex_count()))?;
        let s = graded_substitute(&z, &trees.tb, &trees.tplus, &trees.tminus, order)?;
        out.push((graph, s));
    }
    Ok(out)
}

/// The loop-number-`g` series of black-white polynomials over |Aut|, by
/// vertex count: trees for g = 0, cycles for g = 1, and the subdivided
/// min-degree-3 catalog for g >= 2.
pub fn wg_series(reg: &Reg, g: usize, order: usize) -> Result<TruncatedSeries, WrightError> {
    match g {
        0 => w0_series(reg, order),
        1 => w1_series(reg, order),
        _ => {
            let mut out = TruncatedSeries::zero(reg, reg.var("x"), order);
            for (_, s) in wg_contributions(reg, g, order)? {
                out = out.add(&s);
            }
            Ok(out)
        }
    }
}
