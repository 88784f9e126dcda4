//! Coloring weights and black-white polynomials.
//!
//! A coloring assigns black or white to each vertex. A white vertex is
//! "even" when the edge-multiplicity count of its black neighbors is even;
//! loops never contribute. The weight of a coloring is a monomial: in full
//! mode `b` per black vertex, `w_plus` per even white and `w_minus` per odd
//! white; in single-variable mode only even whites are marked, each
//! contributing `t`.

use num::One;

use crate::poly::{LaurentPoly, Monomial, Reg, VarId};

use super::graph::Multigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Single variable `t` marking even white vertices.
    T,
    /// Homogeneous three-variable form in `b`, `w_plus`, `w_minus`.
    Full,
}

/// The three per-vertex weight variables for a mode; `None` entries weigh 1.
#[derive(Debug, Clone, Copy)]
struct VertexVars {
    black: Option<VarId>,
    even_white: Option<VarId>,
    odd_white: Option<VarId>,
}

fn vertex_vars(reg: &Reg, mode: Mode) -> VertexVars {
    match mode {
        Mode::T => VertexVars {
            black: None,
            even_white: Some(reg.var("t")),
            odd_white: None,
        },
        Mode::Full => VertexVars {
            black: Some(reg.var("b")),
            even_white: Some(reg.var("w_plus")),
            odd_white: Some(reg.var("w_minus")),
        },
    }
}

fn is_white(coloring: u64, v: usize) -> bool {
    coloring >> v & 1 == 1
}

/// Weight of one coloring of `g` (bit `v` of `coloring` set = white).
pub fn coloring_weight(g: &Multigraph, reg: &Reg, mode: Mode, coloring: u64) -> Monomial {
    let vars = vertex_vars(reg, mode);
    let mut counts = [0i64; 3]; // black, even white, odd white
    for v in 0..g.vertex_count() {
        if !is_white(coloring, v) {
            counts[0] += 1;
            continue;
        }
        let black_degree: usize = g
            .neighbors(v)
            .into_iter()
            .filter(|&(u, _)| !is_white(coloring, u))
            .map(|(_, m)| m)
            .sum();
        if black_degree % 2 == 0 {
            counts[1] += 1;
        } else {
            counts[2] += 1;
        }
    }
    let pairs = [vars.black, vars.even_white, vars.odd_white]
        .into_iter()
        .zip(counts)
        .filter_map(|(var, c)| var.map(|v| (v, c)));
    Monomial::from_pairs(pairs)
}

/// Sum of coloring weights grouped by the coloring restricted to `block`.
/// Entry `code` sums over all colorings of `g` that agree with `code` on the
/// block, where bit conventions put `block[0]` in the most significant
/// position of `code`.
pub fn w_table(g: &Multigraph, reg: &Reg, mode: Mode, block: &[usize]) -> Vec<LaurentPoly> {
    let n = g.vertex_count();
    assert!(n < 64, "coloring enumeration limited to < 64 vertices");
    let mut out = vec![LaurentPoly::zero(reg); 1 << block.len()];
    for coloring in 0u64..(1 << n) {
        let mut code = 0usize;
        for &v in block {
            code = code << 1 | is_white(coloring, v) as usize;
        }
        let w = coloring_weight(g, reg, mode, coloring);
        let term = LaurentPoly::term(reg, w, num::BigRational::one());
        let cur = std::mem::replace(&mut out[code], LaurentPoly::zero(reg));
        out[code] = &cur + &term;
    }
    out
}

/// The homogeneous three-variable black-white polynomial of `g`.
pub fn full_w(g: &Multigraph, reg: &Reg) -> LaurentPoly {
    w_table(g, reg, Mode::Full, &[]).pop().unwrap()
}

/// The single-variable black-white polynomial of `g`.
pub fn w_poly(g: &Multigraph, reg: &Reg) -> LaurentPoly {
    w_table(g, reg, Mode::T, &[]).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarRegistry};
    use num::bigint::BigInt;
    use num::BigRational;
    use std::collections::BTreeMap;

    #[test]
    fn full_w_of_single_edge() {
        let reg = VarRegistry::standard();
        let g = Multigraph::path(2);
        assert_eq!(
            full_w(&g, &reg),
            parse_poly(&reg, "b^2 + 2*b*w_minus + w_plus^2").unwrap()
        );
    }

    #[test]
    fn w_of_single_edge() {
        let reg = VarRegistry::standard();
        assert_eq!(
            w_poly(&Multigraph::path(2), &reg),
            parse_poly(&reg, "t^2 + 3").unwrap()
        );
    }

    #[test]
    fn loops_do_not_affect_parity() {
        let reg = VarRegistry::standard();
        let mut g = Multigraph::path(2);
        g.add_edge(0, 0, 3);
        assert_eq!(full_w(&g, &reg), full_w(&Multigraph::path(2), &reg));
    }

    #[test]
    fn parallel_edges_flip_parity() {
        let reg = VarRegistry::standard();
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, 2);
        // doubled edge: a white vertex next to a black one is even
        assert_eq!(
            full_w(&g, &reg),
            parse_poly(&reg, "b^2 + 2*b*w_plus + w_plus^2").unwrap()
        );
    }

    #[test]
    fn full_w_is_homogeneous_and_specializes() {
        let reg = VarRegistry::standard();
        for g in [
            Multigraph::path(4),
            Multigraph::cycle(3),
            Multigraph::cycle(1),
            Multigraph::path(2).cartesian_product(&Multigraph::path(2)),
        ] {
            let f = full_w(&g, &reg);
            assert!(f.is_homogeneous_of_degree(g.vertex_count() as i64));
            assert_eq!(f.specialize_full().unwrap(), w_poly(&g, &reg));
        }
    }

    #[test]
    fn value_at_one_counts_colorings() {
        let reg = VarRegistry::standard();
        let t = reg.var("t");
        let g = Multigraph::cycle(4);
        let mut at_one = BTreeMap::new();
        at_one.insert(t, BigRational::one());
        assert_eq!(
            w_poly(&g, &reg).eval(&at_one).unwrap(),
            BigRational::from_integer(BigInt::from(16))
        );
    }

    #[test]
    fn table_entries_sum_to_full_polynomial() {
        let reg = VarRegistry::standard();
        let g = Multigraph::path(4);
        let table = w_table(&g, &reg, Mode::Full, &[1, 2]);
        let mut sum = LaurentPoly::zero(&reg);
        for p in &table {
            sum = &sum + p;
        }
        assert_eq!(sum, full_w(&g, &reg));
    }

    #[test]
    fn table_block_bit_order() {
        let reg = VarRegistry::standard();
        // one isolated-ish pair: block[0] is the most significant bit
        let g = Multigraph::path(2);
        let table = w_table(&g, &reg, Mode::Full, &[0, 1]);
        // code 0b10: vertex 0 white, vertex 1 black -> b*w_minus
        assert_eq!(table[2], parse_poly(&reg, "b*w_minus").unwrap());
        // code 0b01: vertex 0 black, vertex 1 white
        assert_eq!(table[1], parse_poly(&reg, "b*w_minus").unwrap());
        assert_eq!(table[3], parse_poly(&reg, "w_plus^2").unwrap());
    }
}
