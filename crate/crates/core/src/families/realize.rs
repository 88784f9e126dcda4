//! Explicit construction of family members.

use crate::graphcore::Multigraph;

use super::{FamilyError, FamilyKind, FamilySpec};

/// Compositions of `total` into `parts` ordered summands, each at least
/// `min`.
fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < min * parts {
            return;
        }
        for k in min..=(left - min * (parts - 1)) {
            cur.push(k);
            rec(left - k, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, min, &mut cur, &mut out);
    out
}

/// Glue a cylinder or torus over the subgraph H onto the base graph: H's
/// first cross-section is the copy of H inside the base. Within-section
/// H-edges for section 1 are not duplicated, so gluing along the whole
/// graph reproduces the plain product.
fn glued(spec: &FamilySpec, n: usize, cyclic: bool) -> Multigraph {
    // plain products ignore any supplied subgraph
    let hv: Vec<usize> = match spec.kind {
        FamilyKind::Cylinder | FamilyKind::Torus => (0..spec.base.vertex_count()).collect(),
        _ => spec.subgraph.clone(),
    };
    let h = hv.len();
    let hg = spec.base.induced(&hv);
    let mut g = spec.base.clone();
    // section s (1-based): s = 1 is hv itself, later sections are new
    let base_n = g.vertex_count();
    for _ in 0..(n - 1) * h {
        g.add_vertex();
    }
    let vid = |s: usize, j: usize| {
        if s == 1 {
            hv[j]
        } else {
            base_n + (s - 2) * h + j
        }
    };
    for s in 2..=n {
        for ((a, b), m) in hg.edges() {
            g.add_edge(vid(s, a), vid(s, b), m);
        }
    }
    for s in 1..n {
        for j in 0..h {
            g.add_edge(vid(s, j), vid(s + 1, j), 1);
        }
    }
    if cyclic {
        match n {
            1 => {
                for j in 0..h {
                    g.add_edge(vid(1, j), vid(1, j), 1);
                }
            }
            2 => {
                for j in 0..h {
                    g.add_edge(vid(1, j), vid(2, j), 1);
                }
            }
            _ => {
                for j in 0..h {
                    g.add_edge(vid(n, j), vid(1, j), 1);
                }
            }
        }
    }
    g
}

/// All members of the family at parameter `n`. Every kind but
/// subdivide-many yields a single graph; subdivide-many yields one graph
/// per composition of `n` into per-edge subdivision counts (each at least
/// 4, the reduced-family convention).
pub fn realize_members(spec: &FamilySpec, n: usize) -> Result<Vec<Multigraph>, FamilyError> {
    spec.validate()?;
    match spec.kind {
        FamilyKind::Cylinder | FamilyKind::Extrusion => {
            if n < 1 {
                return Err(FamilyError::OutOfRange(
                    "cylinder/extrusion length starts at 1".into(),
                ));
            }
            Ok(vec![glued(spec, n, false)])
        }
        FamilyKind::Torus | FamilyKind::Earring => {
            let min = if spec.simple { 3 } else { 1 };
            if n < min {
                return Err(FamilyError::OutOfRange(format!(
                    "torus/earring length starts at {min}"
                )));
            }
            Ok(vec![glued(spec, n, true)])
        }
        FamilyKind::SubdivideOne => {
            let e = spec.edges[0];
            let mut g = spec.base.clone();
            g.subdivide_edge(e.a, e.b, n);
            Ok(vec![g])
        }
        FamilyKind::SubdivideMany => {
            let m = spec.edges.len();
            let mut out = Vec::new();
            for counts in compositions(n, m, 4) {
                let mut g = spec.base.clone();
                for (e, &k) in spec.edges.iter().zip(&counts) {
                    g.subdivide_edge(e.a, e.b, k);
                }
                out.push(g);
            }
            Ok(out)
        }
    }
}

/// The single member at parameter `n`; errors for subdivide-many when the
/// member is not unique.
pub fn realize(spec: &FamilySpec, n: usize) -> Result<Multigraph, FamilyError> {
    let mut members = realize_members(spec, n)?;
    if members.len() == 1 {
        Ok(members.pop().unwrap())
    } else {
        Err(FamilyError::OutOfRange(format!(
            "parameter {n} yields {} members, not one",
            members.len()
        )))
    }
}
