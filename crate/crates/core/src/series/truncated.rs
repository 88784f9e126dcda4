//! Truncated power series in one designated variable with Laurent
//! polynomial coefficients in the remaining variables.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::poly::{LaurentPoly, Monomial, Reg, VarId};

use super::SeriesError;

/// Coefficients of `var^0 .. var^order`; the coefficients themselves never
/// involve `var`.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    reg: Reg,
    var: VarId,
    coeffs: Vec<LaurentPoly>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn zero(reg: &Reg, var: VarId, order: usize) -> Self {
        TruncatedSeries {
            reg: reg.clone(),
            var,
            coeffs: vec![LaurentPoly::zero(reg); order + 1],
        }
    }

    pub fn one(reg: &Reg, var: VarId, order: usize) -> Self {
        let mut s = Self::zero(reg, var, order);
        s.coeffs[0] = LaurentPoly::one(reg);
        s
    }

    /// The series of `var` itself.
    pub fn var_series(reg: &Reg, var: VarId, order: usize) -> Self {
        let mut s = Self::zero(reg, var, order);
        if order >= 1 {
            s.coeffs[1] = LaurentPoly::one(reg);
        }
        s
    }

    /// View a polynomial as a series in `var`, truncating above `order`.
    /// The polynomial must not contain negative powers of `var`.
    pub fn from_poly(p: &LaurentPoly, var: VarId, order: usize) -> Result<Self, SeriesError> {
        if p.has_negative_exp_of(var) {
            return Err(SeriesError::NegativeSeriesExponent(
                p.registry().name(var),
            ));
        }
        let mut s = Self::zero(p.registry(), var, order);
        for (e, c) in p.decompose_in(var) {
            let e = e as usize;
            if e <= order {
                s.coeffs[e] = c;
            }
        }
        Ok(s)
    }

    pub fn from_coeffs(reg: &Reg, var: VarId, coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries {
            reg: reg.clone(),
            var,
            coeffs,
        }
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, p: LaurentPoly) {
        self.coeffs[n] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, LaurentPoly::zero(&self.reg));
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs,
        }
    }

    fn joint_order(&self, other: &TruncatedSeries) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.var, other.var);
        let n = self.joint_order(other);
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs,
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.var, other.var);
        let n = self.joint_order(other);
        let mut coeffs = vec![LaurentPoly::zero(&self.reg); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs,
        }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> TruncatedSeries {
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|k| k.scale(c)).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> TruncatedSeries {
        let mut out = TruncatedSeries::one(&self.reg, self.var, self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        out
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("exp"));
        }
        let n = self.order();
        let mut g = TruncatedSeries::one(&self.reg, self.var, n);
        for m in 1..=n {
            // m * g_m = sum_{k=1..m} k * f_k * g_{m-k}
            let mut acc = LaurentPoly::zero(&self.reg);
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let kf = self.coeffs[k].scale(&BigRational::from_integer(BigInt::from(k)));
                acc = &acc + &(&kf * &g.coeffs[m - k]);
            }
            g.coeffs[m] = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(g)
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne("log"));
        }
        let n = self.order();
        let mut h = TruncatedSeries::zero(&self.reg, self.var, n);
        for m in 1..=n {
            // h_m = f_m - (1/m) sum_{k=1..m-1} k * h_k * f_{m-k}
            let mut acc = LaurentPoly::zero(&self.reg);
            for k in 1..m {
                if h.coeffs[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                let kh = h.coeffs[k].scale(&BigRational::from_integer(BigInt::from(k)));
                acc = &acc + &(&kh * &self.coeffs[m - k]);
            }
            h.coeffs[m] = &self.coeffs[m]
                - &acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(h)
    }

    pub fn cosh(&self) -> Result<TruncatedSeries, SeriesError> {
        let e = self.exp()?;
        let einv = self.neg().exp()?;
        Ok(e.add(&einv).scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
    }

    pub fn sinh(&self) -> Result<TruncatedSeries, SeriesError> {
        let e = self.exp()?;
        let einv = self.neg().exp()?;
        Ok(e.sub(&einv).scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
    }

    /// Termwise antiderivative of `self / var`: the coefficient of `var^n`
    /// is divided by `n`. Requires a zero constant term.
    pub fn integrate_over_var(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm("integrate"));
        }
        let mut out = self.clone();
        for n in 1..=self.order() {
            out.coeffs[n] = self.coeffs[n].scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        Ok(out)
    }

    /// Substitute `var <- c * var`.
    pub fn scale_var(&self, c: &BigRational) -> TruncatedSeries {
        let mut out = self.clone();
        let mut p = BigRational::one();
        for n in 0..=self.order() {
            out.coeffs[n] = self.coeffs[n].scale(&p);
            p *= c;
        }
        out
    }

    pub fn map_coeffs(
        &self,
        mut f: impl FnMut(&LaurentPoly) -> LaurentPoly,
    ) -> TruncatedSeries {
        TruncatedSeries {
            reg: self.reg.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }

    /// The polynomial sum of all retained terms.
    pub fn to_poly(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.reg);
        for (n, c) in self.coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var_pow(self.var, n as i64));
        }
        out
    }
}

/// Substitute truncated series for variables of a polynomial. Variables
/// without a binding stay symbolic in the coefficients. Bindings for
/// variables occurring with negative exponents are rejected (series are not
/// invertible here).
pub fn substitute_series(
    p: &LaurentPoly,
    var: VarId,
    order: usize,
    bindings: &BTreeMap<VarId, TruncatedSeries>,
) -> Result<TruncatedSeries, SeriesError> {
    let reg = p.registry();
    let mut out = TruncatedSeries::zero(reg, var, order);
    for (m, c) in p.terms() {
        let mut term = TruncatedSeries::one(reg, var, order);
        let mut kept = Monomial::one();
        for (v, e) in m.iter() {
            match bindings.get(&v) {
                None => kept = kept.mul(&Monomial::var_pow(v, e)),
                Some(s) => {
                    if e < 0 {
                        return Err(SeriesError::NegativeSeriesExponent(reg.name(v)));
                    }
                    term = term.mul(&s.truncate(order).pow(e as u64));
                }
            }
        }
        let scaled = term.scale_poly(&LaurentPoly::term(reg, kept, c.clone()));
        out = out.add(&scaled);
    }
    Ok(out)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "[{n}] {c}")?;
        }
        Ok(())
    }
}
