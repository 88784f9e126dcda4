//! Fractions of Laurent polynomials and dense univariate polynomials over
//! them, enough field arithmetic to run the extended Euclidean algorithm.

use num::rational::BigRational;

use crate::poly::{LaurentPoly, Reg};

/// Reduced quotient of two Laurent polynomials. The denominator is kept
/// primitive with positive leading coefficient and no monomial content, so
/// equal fractions have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl PolyFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return PolyFraction {
                den: LaurentPoly::one(num.registry()),
                num,
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        // move the unit part of the denominator into the numerator
        let c = den.content();
        let m = den.monomial_content();
        let unit = LaurentPoly::term(num.registry(), m.inv(), c.recip());
        num = &num * &unit;
        den = &den * &unit;
        PolyFraction { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        PolyFraction {
            den: LaurentPoly::one(p.registry()),
            num: p,
        }
    }

    pub fn zero(reg: &Reg) -> Self {
        Self::from_poly(LaurentPoly::zero(reg))
    }

    pub fn one(reg: &Reg) -> Self {
        Self::from_poly(LaurentPoly::one(reg))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn registry(&self) -> &Reg {
        self.num.registry()
    }

    pub fn add(&self, other: &PolyFraction) -> PolyFraction {
        PolyFraction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &PolyFraction) -> PolyFraction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyFraction {
        PolyFraction {
            num: self.num.negated(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &PolyFraction) -> PolyFraction {
        PolyFraction::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn recip(&self) -> PolyFraction {
        assert!(!self.is_zero(), "reciprocal of zero");
        PolyFraction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &PolyFraction) -> PolyFraction {
        self.mul(&other.recip())
    }

    pub fn scale(&self, c: &BigRational) -> PolyFraction {
        PolyFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

/// Dense univariate polynomial over [`PolyFraction`] in an anonymous main
/// variable; used only as scratch space for Euclidean division.
#[derive(Debug, Clone)]
pub struct FracPoly {
    reg: Reg,
    coeffs: Vec<PolyFraction>, // coeffs[i] multiplies main^i, trailing nonzero
}

impl PartialEq for FracPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FracPoly {}

impl FracPoly {
    pub fn zero(reg: &Reg) -> Self {
        FracPoly {
            reg: reg.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(reg: &Reg, coeffs: Vec<PolyFraction>) -> Self {
        let mut p = FracPoly {
            reg: reg.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// The monomial `main^n`.
    pub fn power(reg: &Reg, n: usize) -> Self {
        let mut coeffs = vec![PolyFraction::zero(reg); n + 1];
        coeffs[n] = PolyFraction::one(reg);
        FracPoly {
            reg: reg.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> PolyFraction {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| PolyFraction::zero(&self.reg))
    }

    pub fn coeffs(&self) -> &[PolyFraction] {
        &self.coeffs
    }

    pub fn add(&self, other: &FracPoly) -> FracPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        FracPoly::from_coeffs(&self.reg, coeffs)
    }

    pub fn sub(&self, other: &FracPoly) -> FracPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        FracPoly::from_coeffs(&self.reg, coeffs)
    }

    pub fn mul(&self, other: &FracPoly) -> FracPoly {
        if self.is_zero() || other.is_zero() {
            return FracPoly::zero(&self.reg);
        }
        let mut coeffs =
            vec![PolyFraction::zero(&self.reg); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        FracPoly::from_coeffs(&self.reg, coeffs)
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg divisor.
    pub fn divmod(&self, divisor: &FracPoly) -> (FracPoly, FracPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.clone();
        let mut quot = FracPoly::zero(&self.reg);
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let qc = rem.coeffs[dr].div(&lead);
            let mut qcoeffs = vec![PolyFraction::zero(&self.reg); dr - dd + 1];
            qcoeffs[dr - dd] = qc;
            let qterm = FracPoly::from_coeffs(&self.reg, qcoeffs);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        (quot, rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarRegistry};

    #[test]
    fn fraction_reduction() {
        let reg = VarRegistry::standard();
        let num = parse_poly(&reg, "t^2 - 1").unwrap();
        let den = parse_poly(&reg, "2*t + 2").unwrap();
        let f = PolyFraction::new(num, den);
        assert_eq!(f.num(), &parse_poly(&reg, "(1/2)*t - 1/2").unwrap());
        assert_eq!(f.den(), &parse_poly(&reg, "1").unwrap());
    }

    #[test]
    fn fraction_field_identities() {
        let reg = VarRegistry::standard();
        let a = PolyFraction::new(
            parse_poly(&reg, "t + 1").unwrap(),
            parse_poly(&reg, "t - 1").unwrap(),
        );
        assert_eq!(a.mul(&a.recip()), PolyFraction::one(&reg));
        assert!(a.sub(&a).is_zero());
        let b = PolyFraction::new(
            parse_poly(&reg, "1").unwrap(),
            parse_poly(&reg, "t - 1").unwrap(),
        );
        // (t+1)/(t-1) - 1/(t-1) = (t)/(t-1) ... actually ((t+1)-1)/(t-1)
        let c = a.sub(&b);
        assert_eq!(c.num(), &parse_poly(&reg, "t").unwrap());
        assert_eq!(c.den(), &parse_poly(&reg, "t - 1").unwrap());
    }

    #[test]
    fn divmod_round_trip() {
        let reg = VarRegistry::standard();
        let p = |s: &str| PolyFraction::from_poly(parse_poly(&reg, s).unwrap());
        // f = (main^2 + t) * (main + 1) + t^2
        let a = FracPoly::from_coeffs(&reg, vec![p("t"), p("0"), p("1")]);
        let b = FracPoly::from_coeffs(&reg, vec![p("1"), p("1")]);
        let r0 = FracPoly::from_coeffs(&reg, vec![p("t^2")]);
        let f = a.mul(&b).add(&r0);
        let (q, r) = f.divmod(&b);
        assert_eq!(q, a);
        assert_eq!(r, r0);
    }
}
