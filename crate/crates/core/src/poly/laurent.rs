//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::monomial::Monomial;
use super::registry::{compatible, Reg, VarId};
use super::PolyError;

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    reg: Reg,
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero(reg: &Reg) -> Self {
        LaurentPoly {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(reg: &Reg) -> Self {
        Self::constant(reg, BigRational::one())
    }

    pub fn constant(reg: &Reg, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentPoly {
            reg: reg.clone(),
            terms,
        }
    }

    pub fn from_int(reg: &Reg, n: i64) -> Self {
        Self::constant(reg, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(reg: &Reg, num: i64, den: i64) -> Self {
        Self::constant(
            reg,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn var(reg: &Reg, v: VarId) -> Self {
        Self::term(reg, Monomial::var(v), BigRational::one())
    }

    pub fn var_pow(reg: &Reg, v: VarId, e: i64) -> Self {
        Self::term(reg, Monomial::var_pow(v, e), BigRational::one())
    }

    pub fn term(reg: &Reg, m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            reg: reg.clone(),
            terms,
        }
    }

    pub fn registry(&self) -> &Reg {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single (monomial, coefficient) pair, when the polynomial is a
    /// monomial term. Invertible elements of the Laurent ring are exactly
    /// these.
    pub fn as_single_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn vars_used(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    pub fn has_negative_exp_of(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) < 0)
    }

    fn check_reg(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if compatible(&self.reg, &other.reg) {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_reg(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_reg(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_reg(other)?;
        let mut out = LaurentPoly::zero(&self.reg);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        LaurentPoly {
            reg: self.reg.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.reg);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        LaurentPoly {
            reg: self.reg.clone(),
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        LaurentPoly {
            reg: self.reg.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u64) -> LaurentPoly {
        let mut out = LaurentPoly::one(&self.reg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    /// Substitute polynomials for variables. A variable occurring with a
    /// negative exponent may only be bound to an invertible element, i.e.
    /// a single monomial term.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<VarId, LaurentPoly>,
    ) -> Result<LaurentPoly, PolyError> {
        for p in bindings.values() {
            self.check_reg(p)?;
        }
        // cache of binding powers
        let mut out = LaurentPoly::zero(&self.reg);
        for (m, c) in &self.terms {
            let mut factor = LaurentPoly::constant(&self.reg, c.clone());
            let mut kept = Monomial::one();
            for (v, e) in m.iter() {
                match bindings.get(&v) {
                    None => kept = kept.mul(&Monomial::var_pow(v, e)),
                    Some(p) => {
                        if e >= 0 {
                            factor = &factor * &p.pow(e as u64);
                        } else {
                            let (bm, bc) = p
                                .as_single_term()
                                .ok_or(PolyError::NonInvertibleBinding(self.reg.name(v)))?;
                            let inv = LaurentPoly::term(
                                &self.reg,
                                bm.pow(e),
                                bc.pow((-e) as i32).recip(),
                            );
                            factor = &factor * &inv;
                        }
                    }
                }
            }
            out = &out + &factor.mul_monomial(&kept);
        }
        Ok(out)
    }

    /// Specialize the full-polynomial variables: b <- 1, w_minus <- 1,
    /// w_plus <- t. Errors if any other variable occurs.
    pub fn specialize_full(&self) -> Result<LaurentPoly, PolyError> {
        let b = self.reg.var("b");
        let wp = self.reg.var("w_plus");
        let wm = self.reg.var("w_minus");
        let t = self.reg.var("t");
        for v in self.vars_used() {
            if v != b && v != wp && v != wm {
                return Err(PolyError::StrayVariable(self.reg.name(v)));
            }
        }
        let mut bindings = BTreeMap::new();
        bindings.insert(b, LaurentPoly::one(&self.reg));
        bindings.insert(wm, LaurentPoly::one(&self.reg));
        bindings.insert(wp, LaurentPoly::var(&self.reg, t));
        self.substitute(&bindings)
    }

    /// Evaluate by binding every used variable to a rational constant.
    pub fn eval(&self, values: &BTreeMap<VarId, BigRational>) -> Result<BigRational, PolyError> {
        let mut out = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                let val = values
                    .get(&v)
                    .ok_or(PolyError::StrayVariable(self.reg.name(v)))?;
                if e >= 0 {
                    term *= num::pow::pow(val.clone(), e as usize);
                } else {
                    if val.is_zero() {
                        return Err(PolyError::NonInvertibleBinding(self.reg.name(v)));
                    }
                    term *= num::pow::pow(val.clone().recip(), (-e) as usize);
                }
            }
            out += term;
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    pub fn degree_in(&self, v: VarId) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn min_exponent_in(&self, v: VarId) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Decompose as a univariate polynomial in `v` with coefficients free
    /// of `v`: exponent -> coefficient polynomial.
    pub fn decompose_in(&self, v: VarId) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = m.without(v);
            out.entry(e)
                .or_insert_with(|| LaurentPoly::zero(&self.reg))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Rational content: gcd of coefficient numerators over lcm of
    /// denominators, signed to match the leading coefficient.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num::integer::gcd(num, c.numer().clone());
            den = num::integer::lcm(den, c.denom().clone());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        let mut content = BigRational::new(num, den);
        if let Some((_, lc)) = self.leading_term() {
            if lc.is_negative() {
                content = -content;
            }
        }
        content
    }

    /// Divide out the rational content, leaving coprime integer
    /// coefficients with positive leading coefficient.
    pub fn primitive_part(&self) -> LaurentPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Minimal monomial `m` such that `self * m` has no negative exponents.
    pub fn clearing_monomial(&self) -> Monomial {
        let mut mins: BTreeMap<VarId, i64> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.iter() {
                let entry = mins.entry(v).or_insert(0);
                if e < *entry {
                    *entry = e;
                }
            }
        }
        Monomial::from_pairs(mins.into_iter().filter(|&(_, e)| e < 0).map(|(v, e)| (v, -e)))
    }

    /// Monomial content: the largest monomial dividing every term
    /// (exponentwise minimum over all terms).
    pub fn monomial_content(&self) -> Monomial {
        let mut mins: Option<BTreeMap<VarId, i64>> = None;
        for m in self.terms.keys() {
            let mut cur: BTreeMap<VarId, i64> = BTreeMap::new();
            for (v, e) in m.iter() {
                cur.insert(v, e);
            }
            mins = Some(match mins {
                None => cur,
                Some(prev) => {
                    let mut next = BTreeMap::new();
                    // min(prev[v], cur[v]) with missing = 0
                    let keys: Vec<VarId> =
                        prev.keys().chain(cur.keys()).copied().collect();
                    for v in keys {
                        let a = prev.get(&v).copied().unwrap_or(0);
                        let b = cur.get(&v).copied().unwrap_or(0);
                        let m = a.min(b);
                        if m != 0 {
                            next.insert(v, m);
                        }
                    }
                    next
                }
            });
        }
        Monomial::from_pairs(mins.unwrap_or_default())
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$inner(rhs).expect("registry mismatch")
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$inner(&rhs).expect("registry mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negated()
    }
}

fn format_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                if abs.denom().is_one() || m.is_one() {
                    factors.push(format_coeff(&abs));
                } else {
                    factors.push(format!("({})", format_coeff(&abs)));
                }
            }
            for (v, e) in m.iter() {
                let name = self.reg.name(v);
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
