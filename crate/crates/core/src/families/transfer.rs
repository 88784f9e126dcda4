//! Transfer systems: weighted digraphs whose walk sums generate the
//! black-white polynomial series of a family.

use num::One;

use crate::graphcore::{coloring_weight, full_w, w_poly, w_table, Mode, Multigraph};
use crate::poly::{LaurentPoly, Monomial, Reg, VarId, VarRegistry};
use crate::series::{reconstruct_rational, RationalGF};

use super::realize::realize_members;
use super::{FamilyError, FamilyKind, FamilySpec, STATE_BOUND};

/// A linear recurrence presentation of a family series: coefficients below
/// `offset` are stored explicitly, and the coefficient of `var^n` for
/// `n >= offset` is the sum over `sum_range` of
/// `A^(n - offset + initial_power) v0`.
#[derive(Debug, Clone)]
pub struct TransferSystem {
    reg: Reg,
    var: VarId,
    /// Sparse matrix rows grouped by source: `out_edges[src]` lists
    /// `(dest, weight)` with monomial weights.
    out_edges: Vec<Vec<(usize, Monomial)>>,
    v0: Vec<LaurentPoly>,
    sum_range: (usize, usize),
    offset: usize,
    initial_power: usize,
    leading: Vec<LaurentPoly>,
}

impl TransferSystem {
    pub fn state_count(&self) -> usize {
        self.out_edges.len()
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn initial_vector(&self) -> &[LaurentPoly] {
        &self.v0
    }

    /// Dense matrix entry (dest row, source column).
    pub fn matrix_entry(&self, dest: usize, src: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.reg);
        for (d, w) in &self.out_edges[src] {
            if *d == dest {
                out = &out + &LaurentPoly::term(&self.reg, w.clone(), num::BigRational::one());
            }
        }
        out
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let p = self.state_count();
        let mut out = vec![LaurentPoly::zero(&self.reg); p];
        for src in 0..p {
            if v[src].is_zero() {
                continue;
            }
            for (dest, w) in &self.out_edges[src] {
                let add = v[src].mul_monomial(w);
                let cur = std::mem::replace(&mut out[*dest], LaurentPoly::zero(&self.reg));
                out[*dest] = &cur + &add;
            }
        }
        out
    }

    fn output_sum(&self, v: &[LaurentPoly]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.reg);
        for p in &v[self.sum_range.0..self.sum_range.1] {
            out = &out + p;
        }
        out
    }
}

/// Coloring of a product slab from per-section codes: section `i`, base
/// vertex `u` maps to product vertex `u + i*h`; within a section code, base
/// vertex 0 occupies the most significant bit.
fn assemble(codes: &[usize], h: usize) -> u64 {
    let mut c = 0u64;
    for (i, &gamma) in codes.iter().enumerate() {
        for u in 0..h {
            if gamma >> (h - 1 - u) & 1 == 1 {
                c |= 1 << (u + i * h);
            }
        }
    }
    c
}

/// Transition weights for growing a cylinder over `hg` one section at a
/// time. States are colorings of two consecutive sections (earlier section
/// more significant); appending a section multiplies the running weight by
/// the ratio of the three-section weight to the two-section weight.
fn cylinder_matrix(hg: &Multigraph, reg: &Reg, mode: Mode) -> Vec<Vec<(usize, Monomial)>> {
    let h = hg.vertex_count();
    let k = 1usize << h;
    let p2 = hg.cartesian_product(&Multigraph::path(2));
    let p3 = hg.cartesian_product(&Multigraph::path(3));
    let mut out = vec![Vec::new(); k * k];
    for g1 in 0..k {
        for g2 in 0..k {
            let src = g1 << h | g2;
            let mu = coloring_weight(&p2, reg, mode, assemble(&[g1, g2], h));
            for d in 0..k {
                let mu3 = coloring_weight(&p3, reg, mode, assemble(&[g1, g2, d], h));
                out[src].push((g2 << h | d, mu3.mul(&mu.inv())));
            }
        }
    }
    out
}

/// Transition weights for growing a torus-like family: states track the
/// first two and last two cross-sections; a new section is inserted in the
/// middle gap, and the weight is the ratio of open-cylinder weights of the
/// four listed sections before and after insertion.
fn torus_matrix(hg: &Multigraph, reg: &Reg, mode: Mode) -> Vec<Vec<(usize, Monomial)>> {
    let h = hg.vertex_count();
    let k = 1usize << h;
    let p4 = hg.cartesian_product(&Multigraph::path(4));
    let p5 = hg.cartesian_product(&Multigraph::path(5));
    let p = k * k * k * k;
    let mut out = vec![Vec::new(); p];
    for src in 0..p {
        let g1 = src >> (3 * h);
        let g2 = src >> (2 * h) & (k - 1);
        let g3 = src >> h & (k - 1);
        let g4 = src & (k - 1);
        let mu = coloring_weight(&p4, reg, mode, assemble(&[g1, g2, g3, g4], h));
        for d in 0..k {
            let mu5 = coloring_weight(&p5, reg, mode, assemble(&[g1, g2, d, g3, g4], h));
            let dest = g2 << (3 * h) | d << (2 * h) | g3 << h | g4;
            out[src].push((dest, mu5.mul(&mu.inv())));
        }
    }
    out
}

fn as_poly(reg: &Reg, m: Monomial) -> LaurentPoly {
    LaurentPoly::term(reg, m, num::BigRational::one())
}

fn member_w(spec: &FamilySpec, reg: &Reg, n: usize) -> Result<LaurentPoly, FamilyError> {
    let mut out = LaurentPoly::zero(reg);
    for g in realize_members(spec, n)? {
        let w = match spec.mode {
            Mode::T => w_poly(&g, reg),
            Mode::Full => full_w(&g, reg),
        };
        out = &out + &w;
    }
    Ok(out)
}

pub fn build_transfer(spec: &FamilySpec) -> Result<TransferSystem, FamilyError> {
    spec.validate()?;
    let reg = VarRegistry::standard();
    let var = reg.var(spec.kind.series_var());
    let mode = spec.mode;
    let one = LaurentPoly::one(&reg);
    match spec.kind {
        FamilyKind::Cylinder | FamilyKind::Extrusion => {
            let hg = if spec.kind == FamilyKind::Cylinder {
                spec.base.clone()
            } else {
                spec.subgraph_graph()
            };
            let h = hg.vertex_count();
            let p = 1usize << (2 * h);
            if p > STATE_BOUND {
                return Err(FamilyError::StateBound(p));
            }
            let out_edges = cylinder_matrix(&hg, &reg, mode);
            let v0 = if spec.kind == FamilyKind::Cylinder {
                let p2 = hg.cartesian_product(&Multigraph::path(2));
                (0..p)
                    .map(|s| {
                        let (g1, g2) = (s >> h, s & ((1 << h) - 1));
                        as_poly(&reg, coloring_weight(&p2, &reg, mode, assemble(&[g1, g2], h)))
                    })
                    .collect()
            } else {
                // colorings of the length-2 glued graph, grouped by the
                // coloring of the two subgraph sections
                let x2 = realize_members(spec, 2)?.pop().unwrap();
                let hn = spec.subgraph.len();
                let base_n = spec.base.vertex_count();
                let mut block = spec.subgraph.clone();
                block.extend((0..hn).map(|j| base_n + j));
                w_table(&x2, &reg, mode, &block)
            };
            let leading = vec![one.clone(), member_w(spec, &reg, 1)?];
            Ok(TransferSystem {
                reg,
                var,
                out_edges,
                v0,
                sum_range: (0, p),
                offset: 2,
                initial_power: 0,
                leading,
            })
        }
        FamilyKind::Torus | FamilyKind::Earring => {
            let hg = if spec.kind == FamilyKind::Torus {
                spec.base.clone()
            } else {
                spec.subgraph_graph()
            };
            let h = hg.vertex_count();
            let p = 1usize << (4 * h);
            if p > STATE_BOUND {
                return Err(FamilyError::StateBound(p));
            }
            let out_edges = torus_matrix(&hg, &reg, mode);
            let v0 = if spec.kind == FamilyKind::Torus {
                let c4 = hg.cartesian_product(&Multigraph::cycle(4));
                let k = 1usize << h;
                (0..p)
                    .map(|s| {
                        let codes = [
                            s >> (3 * h),
                            s >> (2 * h) & (k - 1),
                            s >> h & (k - 1),
                            s & (k - 1),
                        ];
                        as_poly(&reg, coloring_weight(&c4, &reg, mode, assemble(&codes, h)))
                    })
                    .collect()
            } else {
                let mut four = spec.clone();
                four.simple = false;
                let e4 = realize_members(&four, 4)?.pop().unwrap();
                let hn = spec.subgraph.len();
                let base_n = spec.base.vertex_count();
                let mut block = spec.subgraph.clone();
                for s in 2..=4usize {
                    block.extend((0..hn).map(|j| base_n + (s - 2) * hn + j));
                }
                w_table(&e4, &reg, mode, &block)
            };
            let leading = if spec.simple {
                vec![
                    one.clone(),
                    LaurentPoly::zero(&reg),
                    LaurentPoly::zero(&reg),
                    member_w(spec, &reg, 3)?,
                ]
            } else {
                vec![
                    one.clone(),
                    member_w(spec, &reg, 1)?,
                    member_w(spec, &reg, 2)?,
                    member_w(spec, &reg, 3)?,
                ]
            };
            Ok(TransferSystem {
                reg,
                var,
                out_edges,
                v0,
                sum_range: (0, p),
                offset: 4,
                initial_power: 0,
                leading,
            })
        }
        FamilyKind::SubdivideOne => {
            let point = Multigraph::new(1);
            let out_edges = torus_matrix(&point, &reg, mode);
            let e = spec.edges[0];
            let mut s4 = spec.base.clone();
            let first_new = s4.vertex_count();
            s4.subdivide_edge(e.a, e.b, 4);
            let block: Vec<usize> = (first_new..first_new + 4).collect();
            let v0 = w_table(&s4, &reg, mode, &block);
            let mut leading = Vec::new();
            for n in 0..4 {
                leading.push(member_w(spec, &reg, n)?);
            }
            Ok(TransferSystem {
                reg,
                var,
                out_edges,
                v0,
                sum_range: (0, 16),
                offset: 4,
                initial_power: 0,
                leading,
            })
        }
        FamilyKind::SubdivideMany => {
            let m = spec.edges.len();
            let tuples = 16usize.checked_pow(m as u32).filter(|&t| t * m <= STATE_BOUND);
            let Some(tuples) = tuples else {
                return Err(FamilyError::StateBound(usize::MAX));
            };
            let p = tuples * m;
            let point = Multigraph::new(1);
            let d1 = torus_matrix(&point, &reg, mode);
            // state (S_1..S_m, level i): index (i-1)*tuples + tuple code,
            // where S_1 is the most significant base-16 digit
            let mut out_edges: Vec<Vec<(usize, Monomial)>> = vec![Vec::new(); p];
            for level in 0..m {
                for tuple in 0..tuples {
                    let src = level * tuples + tuple;
                    let shift = 4 * (m - 1 - level);
                    let si = tuple >> shift & 15;
                    for (dest_si, w) in &d1[si] {
                        let dest_tuple = tuple - (si << shift) + (dest_si << shift);
                        out_edges[src].push((level * tuples + dest_tuple, w.clone()));
                    }
                    if level + 1 < m {
                        out_edges[src].push(((level + 1) * tuples + tuple, Monomial::one()));
                    }
                }
            }
            // initial vector: level 1, each inner block colored per its
            // component of the tuple
            let mut s4f = spec.base.clone();
            let mut block = Vec::new();
            for e in &spec.edges {
                let first_new = s4f.vertex_count();
                s4f.subdivide_edge(e.a, e.b, 4);
                block.extend(first_new..first_new + 4);
            }
            let table = w_table(&s4f, &reg, mode, &block);
            let mut v0 = vec![LaurentPoly::zero(&reg); p];
            v0[..tuples].clone_from_slice(&table);
            let offset = 4 * m;
            let leading = vec![LaurentPoly::zero(&reg); offset];
            Ok(TransferSystem {
                reg,
                var,
                out_edges,
                v0,
                sum_range: ((m - 1) * tuples, m * tuples),
                offset,
                initial_power: m - 1,
                leading,
            })
        }
    }
}

/// Series coefficients through `var^n_max`.
pub fn expand_family(ts: &TransferSystem, n_max: usize) -> Vec<LaurentPoly> {
    let mut coeffs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max.min(ts.offset - 1) {
        coeffs.push(ts.leading[n].clone());
    }
    if n_max < ts.offset {
        return coeffs;
    }
    let mut v = ts.v0.clone();
    for _ in 0..ts.initial_power {
        v = ts.apply(&v);
    }
    for _ in ts.offset..=n_max {
        coeffs.push(ts.output_sum(&v));
        v = ts.apply(&v);
    }
    coeffs
}

/// Reduced rational form of the family series.
pub fn rational_family_gf(ts: &TransferSystem) -> Result<RationalGF, FamilyError> {
    let gf = reconstruct_rational(&ts.reg.clone(), ts.var, |n| Ok(expand_family(ts, n)))?;
    Ok(gf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::series::SeriesError;
    use super::super::Strand;

    fn path_family() -> FamilySpec {
        FamilySpec::cylinder(Multigraph::new(1), Mode::T)
    }

    #[test]
    fn path_family_matrix_and_initial_vector() {
        let ts = build_transfer(&path_family()).unwrap();
        let reg = ts.registry().clone();
        let q = |s: &str| parse_poly(&reg, s).unwrap();
        // states in order bb, bw, wb, ww; rows are destinations
        let expected = [
            ["1", "0", "1", "0"],
            ["1", "0", "1", "0"],
            ["0", "t", "0", "t^-1"],
            ["0", "t", "0", "t"],
        ];
        for (dest, row) in expected.iter().enumerate() {
            for (src, entry) in row.iter().enumerate() {
                assert_eq!(
                    ts.matrix_entry(dest, src),
                    q(entry),
                    "entry ({dest}, {src})"
                );
            }
        }
        let v0: Vec<_> = ts.initial_vector().to_vec();
        assert_eq!(v0, vec![q("1"), q("1"), q("1"), q("t^2")]);
        // one application of the matrix
        let av0 = ts.apply(&v0);
        assert_eq!(av0, vec![q("2"), q("2"), q("2*t"), q("t + t^3")]);
    }

    #[test]
    fn path_family_expansion() {
        let ts = build_transfer(&path_family()).unwrap();
        let reg = ts.registry().clone();
        let got = expand_family(&ts, 4);
        let expected = ["1", "t + 1", "t^2 + 3", "t^3 + 3*t + 4", "t^4 + 2*t^2 + 8*t + 5"];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(got[n], parse_poly(&reg, e).unwrap(), "coefficient {n}");
        }
    }

    #[test]
    fn path_family_rational_form() {
        let ts = build_transfer(&path_family()).unwrap();
        let gf = rational_family_gf(&ts).unwrap();
        let reg = ts.registry().clone();
        assert_eq!(gf.num(), &parse_poly(&reg, "-2*t*x^2 + 2*x^2 + 1").unwrap());
        assert_eq!(
            gf.den(),
            &parse_poly(&reg, "t^2*x^3 - x^3 - t*x - x + 1").unwrap()
        );
    }

    fn brute(spec: &FamilySpec, n: usize) -> LaurentPoly {
        let reg = VarRegistry::standard();
        member_w(spec, &reg, n).unwrap()
    }

    fn check_against_brute(spec: &FamilySpec, from: usize, to: usize) {
        let ts = build_transfer(spec).unwrap();
        let got = expand_family(&ts, to);
        for n in from..=to {
            assert_eq!(got[n], brute(spec, n), "kind {:?}, n = {n}", spec.kind);
        }
    }

    #[test]
    fn cylinder_matches_brute_force() {
        check_against_brute(&FamilySpec::cylinder(Multigraph::path(2), Mode::T), 1, 5);
        check_against_brute(&FamilySpec::cylinder(Multigraph::cycle(3), Mode::T), 1, 4);
        let mut with_loop = Multigraph::new(1);
        with_loop.add_edge(0, 0, 1);
        check_against_brute(&FamilySpec::cylinder(with_loop, Mode::T), 1, 5);
    }

    #[test]
    fn torus_matches_brute_force() {
        check_against_brute(&FamilySpec::torus(Multigraph::new(1), Mode::T), 1, 7);
        check_against_brute(&FamilySpec::torus(Multigraph::path(2), Mode::T), 1, 6);
    }

    #[test]
    fn torus_full_mode_matches_brute_force() {
        check_against_brute(&FamilySpec::torus(Multigraph::new(1), Mode::Full), 1, 7);
    }

    #[test]
    fn extrusion_matches_brute_force() {
        let mut spec = FamilySpec::cylinder(Multigraph::path(3), Mode::T);
        spec.kind = FamilyKind::Extrusion;
        spec.subgraph = vec![0];
        check_against_brute(&spec, 1, 6);
        spec.subgraph = vec![0, 1];
        check_against_brute(&spec, 1, 5);
    }

    #[test]
    fn earring_matches_brute_force() {
        let mut spec = FamilySpec::torus(Multigraph::path(3), Mode::T);
        spec.kind = FamilyKind::Earring;
        spec.subgraph = vec![1];
        check_against_brute(&spec, 1, 6);
        spec.subgraph = vec![1, 2];
        check_against_brute(&spec, 1, 5);
    }

    #[test]
    fn subdivide_one_matches_brute_force() {
        let mut spec = FamilySpec::cylinder(Multigraph::cycle(3), Mode::T);
        spec.kind = FamilyKind::SubdivideOne;
        spec.edges = vec![Strand { a: 0, b: 1, strand: 0 }];
        check_against_brute(&spec, 0, 6);
        // subdividing a loop
        let mut lollipop = Multigraph::path(2);
        lollipop.add_edge(1, 1, 1);
        let mut spec = FamilySpec::cylinder(lollipop, Mode::T);
        spec.kind = FamilyKind::SubdivideOne;
        spec.edges = vec![Strand { a: 1, b: 1, strand: 0 }];
        check_against_brute(&spec, 0, 6);
    }

    #[test]
    fn subdivide_many_matches_brute_force() {
        let mut spec = FamilySpec::cylinder(Multigraph::path(3), Mode::T);
        spec.kind = FamilyKind::SubdivideMany;
        spec.edges = vec![
            Strand { a: 0, b: 1, strand: 0 },
            Strand { a: 1, b: 2, strand: 0 },
        ];
        check_against_brute(&spec, 0, 10);
        // parallel strands of a doubled edge
        let mut spec2 = FamilySpec::cylinder(Multigraph::cycle(2), Mode::T);
        spec2.kind = FamilyKind::SubdivideMany;
        spec2.edges = vec![
            Strand { a: 0, b: 1, strand: 0 },
            Strand { a: 0, b: 1, strand: 1 },
        ];
        check_against_brute(&spec2, 0, 10);
    }

    #[test]
    fn full_mode_specializes_to_t_mode() {
        for kind in [FamilyKind::Cylinder, FamilyKind::Torus] {
            let mut full = FamilySpec::cylinder(Multigraph::path(2), Mode::Full);
            full.kind = kind;
            let mut tmode = full.clone();
            tmode.mode = Mode::T;
            let a = expand_family(&build_transfer(&full).unwrap(), 5);
            let b = expand_family(&build_transfer(&tmode).unwrap(), 5);
            for n in 0..=5 {
                assert_eq!(a[n].specialize_full().unwrap(), b[n], "n = {n}");
            }
        }
    }

    #[test]
    fn expansion_is_consistent_with_rational_form() {
        let spec = FamilySpec::torus(Multigraph::new(1), Mode::Full);
        let ts = build_transfer(&spec).unwrap();
        let gf = rational_family_gf(&ts).unwrap();
        let direct = expand_family(&ts, 12);
        let expanded = gf.expand(12);
        assert_eq!(expanded.coeffs(), &direct[..]);
    }

    #[test]
    fn reconstruction_errors_are_reported() {
        // not part of the public contract, but the error type must exist
        let err: FamilyError = SeriesError::ReconstructionFailed.into();
        assert!(err.to_string().contains("inconsistent"));
    }
}
