//! Generating functions over all multigraphs, built from flowers (single
//! vertices with dangling half-edges) and a pairing measure.
//!
//! The classical construction pairs half-edges with Gaussian moments: the
//! expectation of `exp(S(ux))`, with `S` the flower series, enumerates all
//! multigraphs by degree profile, inversely weighted by automorphism-group
//! order, and its logarithm enumerates the connected ones. Replacing the
//! single pairing variable with four (black-black, white-white, and a
//! black-white pair) and weighting flowers by vertex color refines the count
//! to the black-white polynomial of each graph.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{BigInt, One, Zero};

use crate::poly::{LaurentPoly, Monomial, Reg, VarId};
use crate::series::TruncatedSeries;

/// Number of pairings of a k-element set: k!/(2^(k/2) (k/2)!) for even k,
/// zero for odd k.
pub fn wick(k: usize) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    // (k-1)!! = (k-1)(k-3)...1
    let mut out = BigInt::one();
    let mut m = k as i64 - 1;
    while m > 1 {
        out *= m;
        m -= 2;
    }
    out
}

/// Which flower degrees participate in the series.
#[derive(Debug, Clone)]
pub struct DegreeFilter {
    degrees: BTreeSet<usize>,
}

impl DegreeFilter {
    pub fn new(degrees: impl IntoIterator<Item = usize>) -> Result<Self, FeynmanError> {
        let degrees: BTreeSet<usize> = degrees.into_iter().collect();
        if degrees.is_empty() {
            return Err(FeynmanError::InvalidFilter("empty degree set".into()));
        }
        if degrees.contains(&0) {
            return Err(FeynmanError::InvalidFilter(
                "flower degrees start at 1".into(),
            ));
        }
        Ok(DegreeFilter { degrees })
    }

    pub fn all_up_to(d: usize) -> Result<Self, FeynmanError> {
        Self::new(1..=d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().copied()
    }
}

/// The pairing measure on monomials in b, w, y, z: b pairs only with b, w
/// only with w, y only with z. The value is the number of complete
/// pairings: wick(deg b) * wick(deg w) * (deg y)! when deg y = deg z, and
/// zero otherwise.
pub fn moment_bw(reg: &Reg, m: &Monomial) -> Result<BigInt, FeynmanError> {
    let b = reg.var("b");
    let w = reg.var("w");
    let y = reg.var("y");
    let z = reg.var("z");
    for (v, e) in m.iter() {
        if ![b, w, y, z].contains(&v) || e < 0 {
            return Err(FeynmanError::ForeignVariable(reg.name(v)));
        }
    }
    let (dy, dz) = (m.exponent(y), m.exponent(z));
    if dy != dz {
        return Ok(BigInt::zero());
    }
    let mut out = wick(m.exponent(b) as usize) * wick(m.exponent(w) as usize);
    for i in 1..=dy {
        out *= i;
    }
    Ok(out)
}

/// The weight-marked n-flower: a black vertex contributes (b + y)^n, a
/// white vertex contributes the w/z terms, carrying t exactly when the
/// number of z-marked half-edges is even (an even count of black
/// neighbors).
pub fn flower_poly(reg: &Reg, n: usize) -> LaurentPoly {
    let t = LaurentPoly::var(reg, reg.var("t"));
    let b = LaurentPoly::var(reg, reg.var("b"));
    let w = LaurentPoly::var(reg, reg.var("w"));
    let y = LaurentPoly::var(reg, reg.var("y"));
    let z = LaurentPoly::var(reg, reg.var("z"));
    let mut out = (&b + &y).pow(n as u64);
    let mut binom = BigRational::one();
    for i in 0..=n {
        let mut term = (&w.pow((n - i) as u64) * &z.pow(i as u64)).scale(&binom);
        if i % 2 == 0 {
            term = &term * &t;
        }
        out = &out + &term;
        // C(n, i+1) from C(n, i)
        binom *= BigRational::from_integer(BigInt::from((n - i) as i64));
        if i + 1 <= n {
            binom /= BigRational::from_integer(BigInt::from((i + 1) as i64));
        }
    }
    out
}

/// Replace the measured variables in every coefficient by the moment of
/// their monomial, leaving the marker variables.
fn expectation(
    s: &TruncatedSeries,
    measured: &[VarId],
    moment: impl Fn(&Monomial) -> Result<BigInt, FeynmanError>,
) -> Result<TruncatedSeries, FeynmanError> {
    let reg = s.registry().clone();
    let mut out = TruncatedSeries::zero(&reg, s.var(), s.order());
    for n in 0..=s.order() {
        let mut acc = LaurentPoly::zero(&reg);
        for (m, c) in s.coeff(n).terms() {
            let mut inner = Monomial::one();
            let mut rest = m.clone();
            for &v in measured {
                let e = m.exponent(v);
                if e != 0 {
                    inner = inner.mul(&Monomial::var_pow(v, e));
                    rest = rest.without(v);
                }
            }
            let val = moment(&inner)?;
            if !val.is_zero() {
                acc = &acc
                    + &LaurentPoly::term(&reg, rest, c * BigRational::from_integer(val));
            }
        }
        out.set_coeff(n, acc);
    }
    Ok(out)
}

/// The flower action: sum over allowed degrees k of `flower * xi_k u^k/k!`,
/// where `flower` is `x^k` for the plain series and the color-refined
/// flower polynomial for the black-white one.
fn action(
    reg: &Reg,
    filter: &DegreeFilter,
    u_max: usize,
    flower: impl Fn(usize) -> LaurentPoly,
) -> TruncatedSeries {
    let u = reg.var("u");
    let mut s = TruncatedSeries::zero(reg, u, u_max);
    for k in filter.degrees() {
        if k > u_max || k == 0 {
            continue;
        }
        let xi = LaurentPoly::var(reg, reg.xi(k));
        let mut factorial = BigRational::one();
        for i in 2..=k {
            factorial *= BigRational::from_integer(BigInt::from(i as i64));
        }
        let coeff = (&flower(k) * &xi).scale(&factorial.recip());
        s.set_coeff(k, s.coeff(k) + &coeff);
    }
    s
}

/// Exponential generating function of all multigraphs by degree profile,
/// weighted by 1/|Aut|, as a series in u (u counts half-edges) with the
/// profile recorded by xi-monomials.
pub fn gaussian_graph_series(
    reg: &Reg,
    filter: &DegreeFilter,
    u_max: usize,
) -> Result<TruncatedSeries, FeynmanError> {
    let x = reg.var("x");
    let s = action(reg, filter, u_max, |k| {
        LaurentPoly::var_pow(reg, x, k as i64)
    });
    let e = s.exp()?;
    expectation(&e, &[x], |m| Ok(wick(m.exponent(x) as usize)))
}

/// Connected multigraphs only: the logarithm of the full series.
pub fn connected_gaussian_series(
    reg: &Reg,
    filter: &DegreeFilter,
    u_max: usize,
) -> Result<TruncatedSeries, FeynmanError> {
    Ok(gaussian_graph_series(reg, filter, u_max)?.log()?)
}

/// Refinement of the all-graphs series carrying each graph's black-white
/// polynomial: the u^h coefficient is the sum over profiles with h
/// half-edges of `xi`-monomials times `W_G(t)/|Aut G|`.
pub fn bw_graph_series(
    reg: &Reg,
    filter: &DegreeFilter,
    u_max: usize,
) -> Result<TruncatedSeries, FeynmanError> {
    let measured = [reg.var("b"), reg.var("w"), reg.var("y"), reg.var("z")];
    let s = action(reg, filter, u_max, |k| flower_poly(reg, k));
    let e = s.exp()?;
    expectation(&e, &measured, |m| moment_bw(reg, m))
}

/// Connected multigraphs only, with black-white polynomial weights.
pub fn connected_bw_series(
    reg: &Reg,
    filter: &DegreeFilter,
    u_max: usize,
) -> Result<TruncatedSeries, FeynmanError> {
    Ok(bw_graph_series(reg, filter, u_max)?.log()?)
}

#[derive(Debug, thiserror::Error)]
pub enum FeynmanError {
    #[error("invalid degree filter: {0}")]
    InvalidFilter(String),
    #[error("variable {0} has no moment under the pairing measure")]
    ForeignVariable(String),
    #[error(transparent)]
    Series(#[from] crate::series::SeriesError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}
