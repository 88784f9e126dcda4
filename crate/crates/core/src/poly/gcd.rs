//! Exact division and multivariate gcd for Laurent polynomials.
//!
//! Gcds are computed over the rationals with the primitive polynomial
//! remainder sequence: recurse on the last occurring variable, splitting off
//! the content of the coefficients at each level. Laurent inputs are shifted
//! to ordinary polynomials first; a monomial factor is a unit here, so the
//! result is only defined up to one and we normalize to the primitive
//! polynomial part with no monomial content.

use num::rational::BigRational;
use num::{BigInt, One, Zero};

use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::registry::VarId;
use super::PolyError;

impl LaurentPoly {
    /// Exact division; errors unless `other` divides `self` in the Laurent
    /// ring.
    pub fn div_exact(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.registry()));
        }
        if let Some((m, c)) = other.as_single_term() {
            let inv = LaurentPoly::term(self.registry(), m.inv(), c.clone().recip());
            return self.try_mul(&inv);
        }
        let v = *other
            .vars_used()
            .last()
            .expect("multi-term polynomial uses a variable");
        let db = other.degree_in(v).unwrap();
        let bterms = other.decompose_in(v);
        let blead = &bterms[&db];
        // valuations in v are additive, bounding the quotient exponents below
        let lo = self.min_exponent_in(v).unwrap_or(0) - other.min_exponent_in(v).unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.registry());
        while !rem.is_zero() {
            let da = rem.degree_in(v).unwrap();
            if da - db < lo {
                return Err(PolyError::InexactDivision);
            }
            let alead = rem
                .decompose_in(v)
                .remove(&da)
                .expect("leading coefficient present");
            let qc = alead.div_exact(blead)?;
            let qterm = qc.mul_monomial(&Monomial::var_pow(v, da - db));
            quot = &quot + &qterm;
            rem = &rem - &(&qterm * other);
            if !rem.is_zero() && rem.degree_in(v).unwrap() >= da {
                return Err(PolyError::InexactDivision);
            }
        }
        Ok(quot)
    }

    /// Gcd up to units: primitive, no monomial content, positive leading
    /// coefficient. Nonzero constants have gcd one.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let a = self.shifted_to_poly();
        let b = other.shifted_to_poly();
        strip_units(&poly_gcd(&a, &b))
    }

    fn shifted_to_poly(&self) -> LaurentPoly {
        self.mul_monomial(&self.clearing_monomial())
    }
}

fn strip_units(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.mul_monomial(&p.monomial_content().inv()).primitive_part()
}

/// Gcd of polynomials with nonnegative exponents.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return strip_units(b);
    }
    if b.is_zero() {
        return strip_units(a);
    }
    let mut vars = a.vars_used();
    vars.extend(b.vars_used());
    vars.sort();
    vars.dedup();
    let Some(&v) = vars.last() else {
        return LaurentPoly::one(a.registry());
    };
    if !a.contains_var(v) || !b.contains_var(v) {
        // v occurs on one side only: gcd divides that side's content in v
        let (with, without) = if a.contains_var(v) { (a, b) } else { (b, a) };
        return poly_gcd(&content_in(with, v), without);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cont = poly_gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.vars_used() == [v] && g.vars_used() == [v] {
        return &cont * &univariate_gcd(&f, &g, v);
    }
    if certified_coprime(&f, &g, v) {
        return cont;
    }
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = primitive_in(&r, v);
    }
    &cont * &primitive_in(&f, v)
}

/// Gcd of two nonzero polynomials in the single variable `v`, by the dense
/// integer primitive remainder sequence; primitive with positive lead.
fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, v: VarId) -> LaurentPoly {
    use num::Integer;
    // clearing denominators and content changes the gcd only by a unit
    let to_dense = |p: &LaurentPoly| {
        let p = p.primitive_part();
        let d = p.degree_in(v).unwrap() as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (m, q) in p.terms() {
            c[m.exponent(v) as usize] = q.to_integer();
        }
        c
    };
    let make_primitive = |mut r: Vec<BigInt>| {
        while r.last().map(Zero::is_zero).unwrap_or(false) {
            r.pop();
        }
        let mut content = BigInt::zero();
        for c in &r {
            content = content.gcd(c);
            if content.is_one() {
                return r;
            }
        }
        for c in &mut r {
            *c /= &content;
        }
        r
    };
    let mut f = to_dense(a);
    let mut g = to_dense(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        // pseudo-remainder of f by g
        let dg = g.len() - 1;
        let lead = g[dg].clone();
        while f.len() > dg {
            let coef = f.last().unwrap().clone();
            let df = f.len() - 1;
            for c in &mut f {
                *c *= &lead;
            }
            for i in 0..g.len() {
                let sub = &coef * &g[i];
                f[df - dg + i] -= sub;
            }
            while f.last().map(Zero::is_zero).unwrap_or(false) {
                f.pop();
            }
        }
        f = make_primitive(f);
        std::mem::swap(&mut f, &mut g);
    }
    let reg = a.registry();
    let mut out = LaurentPoly::zero(reg);
    for (e, c) in f.into_iter().enumerate() {
        if !c.is_zero() {
            out = &out
                + &LaurentPoly::term(
                    reg,
                    Monomial::var_pow(v, e as i64),
                    BigRational::from_integer(c),
                );
        }
    }
    strip_units(&out)
}

/// Certify that two polynomials, both primitive in `v`, share no
/// nonconstant factor: substitute fixed values for the other variables and
/// check that the univariate images (of full degree in `v`) are coprime. A
/// common factor keeps positive degree in any image where the leading
/// coefficients survive, so a constant image gcd is a proof; a nonconstant
/// one is inconclusive and the caller falls back to the remainder sequence.
fn certified_coprime(f: &LaurentPoly, g: &LaurentPoly, v: VarId) -> bool {
    const PRIMES: [i64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
    let df = f.degree_in(v).unwrap();
    let dg = g.degree_in(v).unwrap();
    for salt in 0..3usize {
        let value = |w: VarId| PRIMES[(w.0 as usize + 2 * salt) % PRIMES.len()];
        let fe = eval_except(f, v, &value);
        let ge = eval_except(g, v, &value);
        if fe.degree_in(v) != Some(df) || ge.degree_in(v) != Some(dg) {
            continue;
        }
        if univariate_gcd(&fe, &ge, v).is_one() {
            return true;
        }
    }
    false
}

/// Evaluate every variable but `v` at `value`, leaving a polynomial in `v`.
fn eval_except(p: &LaurentPoly, v: VarId, value: &dyn Fn(VarId) -> i64) -> LaurentPoly {
    let reg = p.registry();
    let mut out = LaurentPoly::zero(reg);
    for (m, c) in p.terms() {
        let mut scale = BigRational::one();
        for (w, e) in m.without(v).iter() {
            scale *= BigRational::from_integer(BigInt::from(value(w)).pow(e as u32));
        }
        out = &out
            + &LaurentPoly::term(reg, Monomial::var_pow(v, m.exponent(v)), c.clone() * scale);
    }
    out
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &LaurentPoly, v: VarId) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.registry());
    for c in p.decompose_in(v).into_values() {
        acc = poly_gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in(p: &LaurentPoly, v: VarId) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    strip_units(&p.div_exact(&content_in(p, v)).expect("content divides"))
}

/// Remainder of `lc(g)^k * f` modulo `g` in the variable `v`, for the k
/// needed to keep all divisions exact.
fn pseudo_rem(f: &LaurentPoly, g: &LaurentPoly, v: VarId) -> LaurentPoly {
    let dg = g.degree_in(v).expect("nonzero divisor");
    let glead = g.decompose_in(v).remove(&dg).unwrap();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < dg {
            break;
        }
        let rlead = r.decompose_in(v).remove(&dr).unwrap();
        let shift = rlead.mul_monomial(&Monomial::var_pow(v, dr - dg));
        r = &(&r * &glead) - &(&shift * g);
    }
    r
}
