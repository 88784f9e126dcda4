//! Multivariate power series in b, w_minus, w_plus graded by total degree,
//! and the substitution of rooted-tree series for those variables.

use std::collections::BTreeMap;
use std::fmt;

use super::truncated::{substitute_series, TruncatedSeries};
use super::SeriesError;
use crate::poly::{LaurentPoly, Reg};

/// A formal power series in the vertex-color variables, stored as one
/// homogeneous polynomial per total degree up to a truncation bound.
#[derive(Debug, Clone)]
pub struct GradedMultiSeries {
    reg: Reg,
    parts: Vec<LaurentPoly>,
}

impl PartialEq for GradedMultiSeries {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for GradedMultiSeries {}

impl GradedMultiSeries {
    pub fn zero(reg: &Reg, degree: usize) -> Self {
        GradedMultiSeries {
            reg: reg.clone(),
            parts: vec![LaurentPoly::zero(reg); degree + 1],
        }
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    /// Truncation bound (inclusive).
    pub fn degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn part(&self, d: usize) -> &LaurentPoly {
        &self.parts[d]
    }

    /// Add `p` into the degree-`d` component. `p` must be homogeneous of
    /// total degree `d`; `d` must be within the truncation bound.
    pub fn add_part(&mut self, d: usize, p: &LaurentPoly) {
        assert!(d <= self.degree(), "degree beyond truncation");
        assert!(
            p.is_homogeneous_of_degree(d as i64),
            "component must be homogeneous of its degree"
        );
        self.parts[d] = &self.parts[d] + p;
    }

    pub fn add(&self, other: &GradedMultiSeries) -> GradedMultiSeries {
        let degree = self.degree().min(other.degree());
        let mut out = GradedMultiSeries::zero(&self.reg, degree);
        for d in 0..=degree {
            out.parts[d] = &self.parts[d] + &other.parts[d];
        }
        out
    }

    pub fn scale(&self, c: &num::rational::BigRational) -> GradedMultiSeries {
        GradedMultiSeries {
            reg: self.reg.clone(),
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

impl fmt::Display for GradedMultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, p) in self.parts.iter().enumerate() {
            writeln!(f, "[{d}] {p}")?;
        }
        Ok(())
    }
}

/// Substitute rooted-tree series for the color variables of `z`:
/// `b <- tb`, `w_plus <- tplus + tminus`, `w_minus <- t^-1 tplus + t tminus`.
/// The tree series share a variable and have zero constant term, so the
/// degree-d component of `z` contributes from x^d on; `z` must therefore be
/// truncated at degree >= `order`.
pub fn graded_substitute(
    z: &GradedMultiSeries,
    tb: &TruncatedSeries,
    tplus: &TruncatedSeries,
    tminus: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries, SeriesError> {
    if z.degree() < order {
        return Err(SeriesError::InsufficientGradedTruncation {
            have: z.degree(),
            need: order,
        });
    }
    let reg = z.registry();
    let var = tb.var();
    for s in [tb, tplus, tminus] {
        if !s.coeff(0).is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("graded substitution"));
        }
    }
    let t = LaurentPoly::var(reg, reg.var("t"));
    let t_inv = LaurentPoly::var_pow(reg, reg.var("t"), -1);
    let bindings: BTreeMap<_, _> = [
        (reg.var("b"), tb.clone()),
        (reg.var("w_plus"), tplus.add(tminus)),
        (
            reg.var("w_minus"),
            tplus.scale_poly(&t_inv).add(&tminus.scale_poly(&t)),
        ),
    ]
    .into();
    let mut out = TruncatedSeries::zero(reg, var, order);
    for d in 0..=order {
        out = out.add(&substitute_series(z.part(d), var, order, &bindings)?);
    }
    Ok(out)
}
