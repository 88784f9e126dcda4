//! Rational generating functions: expansion into truncated series and
//! reconstruction of a rational form from enough series coefficients.

use std::fmt;

use num::Zero;

use crate::poly::{LaurentPoly, Monomial, Reg, VarId};

use super::fraction::{FracPoly, PolyFraction};
use super::truncated::TruncatedSeries;
use super::SeriesError;

/// A quotient `num/den` of polynomials in the series variable with Laurent
/// coefficients. The denominator has an invertible constant term, so the
/// quotient is a well-defined power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    var: VarId,
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalGF {
    pub fn new(var: VarId, num: LaurentPoly, den: LaurentPoly) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::NonInvertibleDenominator);
        }
        if num.has_negative_exp_of(var) || den.has_negative_exp_of(var) {
            return Err(SeriesError::NegativeSeriesExponent(
                num.registry().name(var),
            ));
        }
        let d0 = den.decompose_in(var).remove(&0);
        match d0 {
            Some(p) if p.as_single_term().is_some() => Ok(RationalGF { var, num, den }),
            _ => Err(SeriesError::NonInvertibleDenominator),
        }
    }

    pub fn registry(&self) -> &Reg {
        self.num.registry()
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// Power series expansion through `var^order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let reg = self.registry();
        let dens = self.den.decompose_in(self.var);
        let nums = self.num.decompose_in(self.var);
        let (m0, c0) = dens[&0].as_single_term().expect("checked at construction");
        let inv = LaurentPoly::term(reg, m0.inv(), c0.clone().recip());
        let mut out = TruncatedSeries::zero(reg, self.var, order);
        for n in 0..=order {
            let mut acc = nums
                .get(&(n as i64))
                .cloned()
                .unwrap_or_else(|| LaurentPoly::zero(reg));
            for (&k, dk) in dens.range(1..) {
                if k > n as i64 {
                    break;
                }
                acc = &acc - &(dk * out.coeff(n - k as usize));
            }
            out.set_coeff(n, &inv * &acc);
        }
        out
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.registry().name(self.var);
        writeln!(f, "N({v}) = {}", self.num)?;
        write!(f, "D({v}) = {}", self.den)
    }
}

fn lcm_poly(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let g = a.gcd(b);
    &a.div_exact(&g).expect("gcd divides") * b
}

/// Reconstruct a rational form from a coefficient source. `coeffs(n)` must
/// return the series coefficients of `var^0 ..= var^n`; the source is
/// re-queried at growing orders until a candidate minimal linear recurrence
/// survives verification against independently produced extra coefficients.
///
/// When the coefficients are ordinary polynomials in a single variable, the
/// recurrence is found on scalar evaluations and the candidate assembled by
/// interpolation, which avoids the coefficient blowup of fraction-field
/// arithmetic; the exact fraction-field search remains as a fallback and
/// handles the general case.
pub fn reconstruct_rational(
    reg: &Reg,
    var: VarId,
    mut coeffs: impl FnMut(usize) -> Result<Vec<LaurentPoly>, SeriesError>,
) -> Result<RationalGF, SeriesError> {
    const EXTRA: usize = 8;
    const ORDERS: [usize; 4] = [16, 32, 64, 128];
    let mut single = false;
    for m in ORDERS {
        let cs = coeffs(m + EXTRA)?;
        assert_eq!(cs.len(), m + EXTRA + 1);
        match coefficient_variable(&cs) {
            CoeffKind::Single(tv) => {
                single = true;
                if let Some(gf) = try_interpolated(reg, var, tv, &cs, m)? {
                    return Ok(gf);
                }
            }
            CoeffKind::Constant | CoeffKind::General => {
                if let Some(gf) = try_reconstruct(reg, var, &cs, m)? {
                    return Ok(gf);
                }
            }
        }
    }
    if single {
        // interpolation found nothing certifiable; retry exactly
        for m in ORDERS {
            let cs = coeffs(m + EXTRA)?;
            if let Some(gf) = try_reconstruct(reg, var, &cs, m)? {
                return Ok(gf);
            }
        }
    }
    Err(SeriesError::ReconstructionFailed)
}

enum CoeffKind {
    Constant,
    Single(VarId),
    General,
}

/// Classify the coefficients: all rational constants, ordinary polynomials
/// in one shared variable, or anything else (several variables or negative
/// exponents).
fn coefficient_variable(cs: &[LaurentPoly]) -> CoeffKind {
    let mut var = None;
    for c in cs {
        for v in c.vars_used() {
            if c.min_exponent_in(v).unwrap_or(0) < 0 {
                return CoeffKind::General;
            }
            match var {
                None => var = Some(v),
                Some(w) if w == v => {}
                Some(_) => return CoeffKind::General,
            }
        }
    }
    match var {
        Some(v) => CoeffKind::Single(v),
        None => CoeffKind::Constant,
    }
}

fn frac_value(f: &PolyFraction) -> num::BigRational {
    f.num().constant_term() / f.den().constant_term()
}

/// Recurrence search on scalar evaluations at `tv = 2, 3, ...`, one run per
/// sample point, followed by interpolation of the candidate's coefficients.
/// Points are added until the interpolant through all but the last two
/// predicts those two (so the point count adapts to the true coefficient
/// degrees); sample points that see a degenerate recurrence (a vanishing
/// leading coefficient, say) are discarded. The final expansion check makes
/// acceptance exact regardless.
fn try_interpolated(
    reg: &Reg,
    var: VarId,
    tv: VarId,
    cs: &[LaurentPoly],
    m: usize,
) -> Result<Option<RationalGF>, SeriesError> {
    use num::rational::BigRational;
    use num::BigInt;

    struct Sample {
        x: BigRational,
        den: Vec<BigRational>,
        num: Vec<BigRational>,
    }

    let margin = 6.min(m / 2);
    let dmax = cs
        .iter()
        .filter_map(|c| c.degree_in(tv))
        .max()
        .unwrap_or(0)
        .max(0) as usize;

    // the recurrence found at one evaluation point
    let sample_at = |i: usize| -> Result<Option<((usize, usize), Sample)>, SeriesError> {
        let x = BigRational::from_integer(BigInt::from(i as i64 + 2));
        let at = [(tv, x.clone())].into();
        let mut seq = Vec::with_capacity(m + 1);
        for c in &cs[..=m] {
            seq.push(c.eval(&at)?);
        }
        let frac_seq: Vec<PolyFraction> = seq
            .iter()
            .map(|v| PolyFraction::from_poly(LaurentPoly::constant(reg, v.clone())))
            .collect();
        let (den, l) = berlekamp_massey(reg, &frac_seq);
        if l > m {
            return Ok(None);
        }
        let d = den.degree().unwrap_or(0);
        let den_vals: Vec<BigRational> = (0..=d).map(|j| frac_value(&den.coeff(j))).collect();
        let mut num_vals = vec![BigRational::zero(); l.max(1)];
        for (k, nk) in num_vals.iter_mut().enumerate() {
            for j in 0..=k.min(d) {
                *nk += &den_vals[j] * &seq[k - j];
            }
        }
        Ok(Some((
            (l, d),
            Sample {
                x,
                den: den_vals,
                num: num_vals,
            },
        )))
    };

    // settle the recurrence shape by majority over a handful of points
    let budget = dmax + 7;
    let mut first: std::collections::BTreeMap<(usize, usize), Vec<Sample>> = Default::default();
    let mut next = 0usize;
    while next < budget.min(5) {
        if let Some((key, s)) = sample_at(next)? {
            first.entry(key).or_default().push(s);
        }
        next += 1;
    }
    let Some(((l, d), mut samples)) = first.into_iter().max_by_key(|(_, v)| v.len()) else {
        return Ok(None);
    };

    let interpolate = |samples: &[Sample], pick: &dyn Fn(&Sample) -> BigRational| {
        let points: Vec<_> = samples.iter().map(|s| (s.x.clone(), pick(s))).collect();
        lagrange(reg, tv, &points)
    };
    loop {
        // fit all but the last two samples, test the fit on those two
        if samples.len() >= 4 {
            let (fit, test) = samples.split_at(samples.len() - 2);
            let mut coords: Vec<(bool, usize)> = (0..=d).map(|j| (true, j)).collect();
            coords.extend((0..l.max(1)).map(|k| (false, k)));
            let mut polys = Vec::with_capacity(coords.len());
            let mut consistent = true;
            'coords: for &(is_den, j) in &coords {
                let pick = move |s: &Sample| if is_den { s.den[j].clone() } else { s.num[j].clone() };
                let p = interpolate(fit, &pick);
                for s in test {
                    let at = [(tv, s.x.clone())].into();
                    if p.eval(&at)? != pick(s) {
                        consistent = false;
                        break 'coords;
                    }
                }
                polys.push(p);
            }
            if consistent {
                let den_coeffs: Vec<PolyFraction> = polys[..=d]
                    .iter()
                    .map(|p| PolyFraction::from_poly(p.clone()))
                    .collect();
                let num_coeffs: Vec<PolyFraction> = polys[d + 1..]
                    .iter()
                    .map(|p| PolyFraction::from_poly(p.clone()))
                    .collect();
                let num = FracPoly::from_coeffs(reg, num_coeffs);
                let den = FracPoly::from_coeffs(reg, den_coeffs);
                let dr = num.degree().map(|d| d as i64).unwrap_or(-1);
                if dr + l as i64 <= m as i64 - margin as i64 {
                    if let Some(gf) = normalize_candidate(reg, var, &num, &den)? {
                        let check = gf.expand(cs.len() - 1);
                        if check.coeffs() == cs {
                            return Ok(Some(gf));
                        }
                    }
                }
                return Ok(None);
            }
        }
        // grow the sample set, skipping points with a different shape
        let mut grew = false;
        while next < budget {
            let got = sample_at(next)?;
            next += 1;
            if let Some((key, s)) = got {
                if key == (l, d) {
                    samples.push(s);
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Ok(None);
        }
    }
}

/// The unique polynomial in `tv` of degree below the number of sample
/// points passing through all of them, by the Lagrange formula.
fn lagrange(
    reg: &Reg,
    tv: VarId,
    points: &[(num::BigRational, num::BigRational)],
) -> LaurentPoly {
    let tvar = LaurentPoly::var(reg, tv);
    let mut out = LaurentPoly::zero(reg);
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = LaurentPoly::constant(reg, yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor =
                (&tvar - &LaurentPoly::constant(reg, xj.clone())).scale(&(xi - xj).recip());
            basis = &basis * &factor;
        }
        out = &out + &basis;
    }
    out
}

fn try_reconstruct(
    reg: &Reg,
    var: VarId,
    cs: &[LaurentPoly],
    m: usize,
) -> Result<Option<RationalGF>, SeriesError> {
    let margin = 6.min(m / 2);
    let seq: Vec<PolyFraction> = cs[..=m]
        .iter()
        .map(|c| PolyFraction::from_poly(c.clone()))
        .collect();
    // the minimal linear recurrence gives the denominator; the numerator is
    // the part of den * series below the recurrence length
    let (den, l) = berlekamp_massey(reg, &seq);
    if l > m {
        return Ok(None);
    }
    let d = den.degree().unwrap_or(0);
    let mut num_coeffs = vec![PolyFraction::zero(reg); l.max(1)];
    for (k, nk) in num_coeffs.iter_mut().enumerate() {
        for j in 0..=k.min(d) {
            *nk = nk.add(&den.coeff(j).mul(&seq[k - j]));
        }
    }
    let num = FracPoly::from_coeffs(reg, num_coeffs);
    let dr = num.degree().map(|d| d as i64).unwrap_or(-1);
    if dr + l as i64 > m as i64 - margin as i64 {
        return Ok(None);
    }
    if let Some(gf) = normalize_candidate(reg, var, &num, &den)? {
        let check = gf.expand(cs.len() - 1);
        if check.coeffs() == cs {
            return Ok(Some(gf));
        }
    }
    Ok(None)
}

/// Minimal connection polynomial `C` with `C(0) = 1` and the recurrence
/// length `L >= deg C` such that `sum_j C_j s_{n-j} = 0` for every `n` from
/// `L` through the end of the sequence, over the field of coefficient
/// fractions.
fn berlekamp_massey(reg: &Reg, s: &[PolyFraction]) -> (FracPoly, usize) {
    let mut c = vec![PolyFraction::one(reg)];
    let mut b = vec![PolyFraction::one(reg)];
    let mut l = 0usize;
    let mut gap = 1usize;
    let mut last_delta = PolyFraction::one(reg);
    for n in 0..s.len() {
        let mut delta = s[n].clone();
        for j in 1..=l.min(c.len() - 1) {
            delta = delta.add(&c[j].mul(&s[n - j]));
        }
        if delta.is_zero() {
            gap += 1;
            continue;
        }
        let coef = delta.div(&last_delta);
        let prev = c.clone();
        if c.len() < b.len() + gap {
            c.resize(b.len() + gap, PolyFraction::zero(reg));
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + gap] = c[i + gap].sub(&coef.mul(bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_delta = delta;
            gap = 1;
        } else {
            gap += 1;
        }
    }
    (FracPoly::from_coeffs(reg, c), l)
}

/// Turn an EEA candidate pair into a normalized rational form: clear the
/// coefficient fractions, divide out the joint content, make the
/// denominator's constant term one, and clear any shared negative powers.
fn normalize_candidate(
    reg: &Reg,
    var: VarId,
    r: &FracPoly,
    v: &FracPoly,
) -> Result<Option<RationalGF>, SeriesError> {
    let mut l = LaurentPoly::one(reg);
    for c in r.coeffs().iter().chain(v.coeffs()) {
        l = lcm_poly(&l, c.den());
    }
    let assemble = |p: &FracPoly| -> LaurentPoly {
        let mut out = LaurentPoly::zero(reg);
        for (i, c) in p.coeffs().iter().enumerate() {
            let scaled = c.num() * &l.div_exact(c.den()).expect("lcm divides");
            out = &out + &scaled.mul_monomial(&Monomial::var_pow(var, i as i64));
        }
        out
    };
    let mut num = assemble(r);
    let mut den = assemble(v);
    if den.is_zero() {
        return Ok(None);
    }
    // joint content over the coefficients in the series variable
    let mut g = LaurentPoly::zero(reg);
    for c in num.decompose_in(var).values().chain(den.decompose_in(var).values()) {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        num = num.div_exact(&g).expect("content divides");
        den = den.div_exact(&g).expect("content divides");
    }
    let Some(d0) = den.decompose_in(var).remove(&0) else {
        return Ok(None);
    };
    if let Some((mono, c)) = d0.as_single_term() {
        let unit = LaurentPoly::term(reg, mono.inv(), c.clone().recip());
        num = &num * &unit;
        den = &den * &unit;
    } else {
        let c = d0.content();
        if !c.is_zero() {
            num = num.scale(&c.recip());
            den = den.scale(&c.recip());
        }
    }
    // clear negative powers shared across numerator and denominator
    let clear = num.clearing_monomial().mul(&den.clearing_monomial());
    if !clear.is_one() {
        num = num.mul_monomial(&clear);
        den = den.mul_monomial(&clear);
    }
    match RationalGF::new(var, num, den) {
        Ok(gf) => Ok(Some(gf)),
        Err(_) => Ok(None),
    }
}
