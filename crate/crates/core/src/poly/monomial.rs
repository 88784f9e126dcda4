//! Sparse Laurent monomials: variable index -> nonzero integer exponent.

use std::cmp::Ordering;

use super::registry::VarId;

/// A power product with integer (possibly negative) exponents. No stored
/// exponent is zero, and entries are sorted by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: VarId, e: i64) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i64)>) -> Self {
        let mut exps: Vec<(VarId, i64)> = pairs.into_iter().filter(|&(_, e)| e != 0).collect();
        exps.sort_by_key(|&(v, _)| v);
        exps.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        exps.retain(|&(_, e)| e != 0);
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.exps
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn has_negative_exp(&self) -> bool {
        self.exps.iter().any(|&(_, e)| e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => {
                        exps.push((v, e));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((w, f));
                        j += 1;
                    }
                    Ordering::Equal => {
                        if e + f != 0 {
                            exps.push((v, e + f));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&p), None) => {
                    exps.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    exps.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (v, e * k)))
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Remove a variable entirely (used when splitting off a designated
    /// series variable).
    pub fn without(&self, v: VarId) -> Monomial {
        Monomial {
            exps: self.exps.iter().copied().filter(|&(w, _)| w != v).collect(),
        }
    }
}

/// Graded lexicographic order: first by total degree, then lexicographically
/// by exponents in registry order. `BTreeMap` iteration ascending under this
/// order, reversed, yields the deterministic descending printing order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let (mut i, mut j) = (0, 0);
                loop {
                    let a = self.exps.get(i);
                    let b = other.exps.get(j);
                    match (a, b) {
                        (None, None) => return Ordering::Equal,
                        (Some(&(_, e)), None) => {
                            return if e > 0 { Ordering::Greater } else { Ordering::Less }
                        }
                        (None, Some(&(_, f))) => {
                            return if f > 0 { Ordering::Less } else { Ordering::Greater }
                        }
                        (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                            // earlier variable present only on one side:
                            // its exponent there is compared against zero
                            Ordering::Less => {
                                if e != 0 {
                                    return if e > 0 { Ordering::Greater } else { Ordering::Less };
                                }
                                i += 1;
                            }
                            Ordering::Greater => {
                                if f != 0 {
                                    return if f > 0 { Ordering::Less } else { Ordering::Greater };
                                }
                                j += 1;
                            }
                            Ordering::Equal => {
                                if e != f {
                                    return e.cmp(&f);
                                }
                                i += 1;
                                j += 1;
                            }
                        },
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VarId {
        VarId(i)
    }

    #[test]
    fn mul_cancels_to_one() {
        let t = Monomial::var(v(0));
        let tinv = t.inv();
        assert!(t.mul(&tinv).is_one());
    }

    #[test]
    fn graded_lex_order() {
        // with registry order t=0, b=1, w_plus=2, w_minus=3:
        // b^2 > b*w_minus > w_plus^2 (all degree 2)
        let b2 = Monomial::var_pow(v(1), 2);
        let bwm = Monomial::from_pairs([(v(1), 1), (v(3), 1)]);
        let wp2 = Monomial::var_pow(v(2), 2);
        assert!(b2 > bwm);
        assert!(bwm > wp2);
        // degree dominates
        let t3 = Monomial::var_pow(v(0), 3);
        assert!(t3 > b2);
    }
}
