//! The fraction field `Q(q, u)` in canonical reduced form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A reduced fraction `num / den` of integer polynomials.
///
/// Canonical form: `num` and `den` are coprime in `Z[q,u]` (so also over
/// `Q[q,u]` once integer content is shared out), and the leading coefficient
/// of `den` under the lexicographic `(qdeg, udeg)` order is positive. Zero is
/// always `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat {
    num: Poly,
    den: Poly,
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Rat::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Rat {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Rat::from_poly(Poly::constant(c))
    }

    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Rat::new(Poly::constant(n), Poly::constant(d)).expect("nonzero denominator")
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        Rat::from_ratio(r.numer().clone(), r.denom().clone())
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Rat {
        if num.is_zero() {
            return Rat::zero();
        }
        let (num, den) = if den.is_constant() {
            let d = den.constant_term();
            let g = num.content().gcd(&d);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_integer(&g), Poly::constant(d / g))
            }
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            Rat {
                num: -num,
                den: -den,
            }
        } else {
            Rat { num, den }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Rat) -> Result<Rat> {
        Ok(self * &other.inv()?)
    }

    /// Exact integer polynomial, or an error when a denominator survives.
    pub fn to_poly(&self) -> Result<Poly> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotAPolynomial)
        }
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> Rat {
        let c = c.into();
        Rat::reduce(self.num.scale(&c), self.den.clone())
    }

    /// Divides by a nonzero integer.
    pub fn div_int(&self, c: impl Into<BigInt>) -> Rat {
        let c = c.into();
        assert!(!c.is_zero(), "division by zero");
        Rat::reduce(self.num.clone(), self.den.scale(&c))
    }

    /// `q -> q^m`, `u -> u^m`.
    pub fn raise_vars(&self, m: u32) -> Rat {
        if m == 1 {
            return self.clone();
        }
        // x -> x^m preserves coprimality, only the sign may need fixing.
        Rat::reduce_sign(self.num.raise_vars(m), self.den.raise_vars(m))
    }

    /// `q -> -q`.
    pub fn negate_q(&self) -> Rat {
        Rat::reduce_sign(self.num.negate_q(), self.den.negate_q())
    }

    /// Applies a ring map to numerator and denominator and renormalizes.
    /// Panics if the map sends the denominator to zero.
    pub fn map_poly(&self, f: impl Fn(&Poly) -> Poly) -> Rat {
        Rat::new(f(&self.num), f(&self.den)).expect("denominator maps to a nonzero polynomial")
    }

    fn reduce_sign(num: Poly, den: Poly) -> Rat {
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            Rat {
                num: -num,
                den: -den,
            }
        } else {
            Rat { num, den }
        }
    }

    /// Sums many fractions, adding numerators over identical denominators
    /// before doing any gcd work.
    pub fn sum<'a, I: IntoIterator<Item = &'a Rat>>(items: I) -> Rat {
        let mut acc = RatAccumulator::default();
        for r in items {
            acc.add(r);
        }
        acc.finish()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

/// Running sum of fractions grouped by denominator.
#[derive(Clone, Debug, Default)]
pub struct RatAccumulator {
    groups: BTreeMap<Poly, Poly>,
}

impl RatAccumulator {
    pub fn add(&mut self, r: &Rat) {
        if r.is_zero() {
            return;
        }
        *self.groups.entry(r.den.clone()).or_default() += &r.num;
    }

    pub fn add_product(&mut self, a: &Rat, b: &Rat) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        // Unreduced: products sharing a denominator are summed first and
        // reduced once in `finish`.
        let den = if a.den.is_one() {
            b.den.clone()
        } else if b.den.is_one() {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        *self.groups.entry(den).or_default() += &(&a.num * &b.num);
    }

    pub fn is_empty(&self) -> bool {
        self.groups.values().all(|p| p.is_zero())
    }

    pub fn finish(self) -> Rat {
        let mut total = Rat::zero();
        let mut const_num = Poly::zero();
        let mut const_den = BigInt::one();
        for (den, num) in self.groups {
            if num.is_zero() {
                continue;
            }
            if den.is_constant() {
                // Integer denominators are combined by lcm without gcd work.
                let d = den.constant_term();
                let l = const_den.lcm(&d);
                const_num = const_num.scale(&(&l / &const_den)) + num.scale(&(&l / &d));
                const_den = l;
            } else {
                total = &total + &Rat::reduce(num, den);
            }
        }
        if !const_num.is_zero() {
            total = &total + &Rat::reduce(const_num, Poly::constant(const_den));
        }
        total
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<Poly> for Rat {
    fn from(p: Poly) -> Self {
        Rat::from_poly(p)
    }
}

impl From<i64> for Rat {
    fn from(c: i64) -> Self {
        Rat::integer(c)
    }
}

impl Add<&Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Rat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let (a, b) = (self.den.constant_term(), rhs.den.constant_term());
            let l = a.lcm(&b);
            let num = self.num.scale(&(&l / &a)) + rhs.num.scale(&(&l / &b));
            return Rat::reduce(num, Poly::constant(l));
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &b + &rhs.num * &a;
        Rat::reduce(num, &self.den * &b)
    }
}

impl Sub<&Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self + &(-rhs)
    }
}

impl Mul<&Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rat::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first; the two reduced halves stay coprime.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Rat::reduce_sign(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        &self + &rhs
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        &self - &rhs
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::q()
    }

    #[test]
    fn inverse_cancels() {
        let a = Rat::new(Poly::one(), &q() - &Poly::one()).unwrap();
        let b = Rat::from_poly(&q() - &Poly::one());
        assert!((&a * &b).is_one());
    }

    #[test]
    fn partial_fraction_sum() {
        let a = Rat::new(Poly::one(), &q() - &Poly::one()).unwrap();
        let b = Rat::new(Poly::one(), &q() + &Poly::one()).unwrap();
        let expected = Rat::new(q().scale(&2.into()), q().pow(2) - Poly::one()).unwrap();
        assert_eq!(&a + &b, expected);
        assert_eq!(expected.num(), &Poly::monomial(2, 1, 0));
        assert_eq!(Rat::sum([&a, &b]), expected);
    }

    #[test]
    fn zero_is_unique() {
        let z = Rat::new(Poly::zero(), q().pow(3) + Poly::one()).unwrap();
        assert_eq!(z, Rat::zero());
        assert_eq!(z.den(), &Poly::one());
    }

    #[test]
    fn inverting_zero_fails() {
        assert!(matches!(Rat::zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(Rat::new(Poly::one(), Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn polynomial_extraction() {
        let r = Rat::new(q().pow(2) - Poly::one(), &q() - &Poly::one()).unwrap();
        assert_eq!(r.to_poly().unwrap(), &q() + &Poly::one());
        let s = Rat::new(q(), &q() - &Poly::one()).unwrap();
        assert!(matches!(s.to_poly(), Err(Error::NotAPolynomial)));
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = Rat::new(Poly::from_terms([(2, 1, 0)]), Poly::from_terms([(-4, 2, 0), (4, 0, 0)])).unwrap();
        let b = Rat::new(Poly::from_terms([(-1, 1, 0)]), Poly::from_terms([(2, 2, 0), (-2, 0, 0)])).unwrap();
        assert_eq!(a, b);
        assert!(a.den().leading().unwrap().1.is_positive());
    }
}
