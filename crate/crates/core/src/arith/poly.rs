//! Sparse integer polynomials in the two variables `q` and `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(qdeg, udeg)`. Ordered lexicographically, which is the
/// canonical monomial order used for serialization and normalization.
pub type Monomial = (u32, u32);

/// An element of `Z[q, u]`, stored sparsely with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::monomial(c, 0, 0)
    }

    /// `c * q^qdeg * u^udeg`
    pub fn monomial(c: impl Into<BigInt>, qdeg: u32, udeg: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((qdeg, udeg), c);
        }
        Poly { terms }
    }

    pub fn q() -> Self {
        Poly::monomial(1, 1, 0)
    }

    pub fn u() -> Self {
        Poly::monomial(1, 0, 1)
    }

    /// `q^e`
    pub fn q_pow(e: u32) -> Self {
        Poly::monomial(1, e, 0)
    }

    /// Builds a polynomial from arbitrary `(coeff, qdeg, udeg)` triples,
    /// merging repeated monomials.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut p = Poly::zero();
        for (c, qd, ud) in terms {
            p.add_term((qd, ud), c.into());
        }
        p
    }

    /// Univariate polynomial in `q` from dense coefficients (index = degree).
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Poly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone().into(), i as u32, 0)),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// True when the polynomial has no `q` or `u` dependence (zero included).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&(0, 0)).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, qdeg: u32, udeg: u32) -> BigInt {
        self.terms.get(&(qdeg, udeg)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial under the canonical order.
    pub fn leading(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn u_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn min_u_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).min()
    }

    /// gcd of the integer coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Exact division of every coefficient by an integer.
    pub(crate) fn div_integer(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    debug_assert!((v % c).is_zero());
                    (*m, v / c)
                })
                .collect(),
        }
    }

    /// Multiplies by `q^qs * u^us`.
    pub fn shift(&self, qs: u32, us: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + qs, b + us), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous substitution `q -> s`, `u -> t`.
    pub fn subst(&self, s: &Poly, t: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut q_pows: Vec<Poly> = vec![Poly::one()];
        let mut u_pows: Vec<Poly> = vec![Poly::one()];
        for (&(qd, ud), c) in &self.terms {
            while q_pows.len() <= qd as usize {
                let next = q_pows.last().unwrap() * s;
                q_pows.push(next);
            }
            while u_pows.len() <= ud as usize {
                let next = u_pows.last().unwrap() * t;
                u_pows.push(next);
            }
            let term = (&q_pows[qd as usize] * &u_pows[ud as usize]).scale(c);
            out += &term;
        }
        out
    }

    /// Adams-style substitution `q -> q^m`, `u -> u^m`.
    pub fn raise_vars(&self, m: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a * m, b * m), c.clone()))
                .collect(),
        }
    }

    /// `q -> -q` (and `u` unchanged).
    pub fn negate_q(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), if a % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Specializes `u` to an integer value, giving a polynomial in `q` only.
    pub fn eval_u(&self, value: i64) -> Poly {
        let v = BigInt::from(value);
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term((a, 0), c * Pow::pow(&v, b));
        }
        out
    }

    /// Coefficient of `u^d` as a polynomial in `q`.
    pub fn u_coeff(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.1 == d)
                .map(|(&(a, _), c)| ((a, 0), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at integer points.
    pub fn eval(&self, q: i64, u: i64) -> BigInt {
        let qv = BigInt::from(q);
        let uv = BigInt::from(u);
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * Pow::pow(&qv, a) * Pow::pow(&uv, b))
            .sum()
    }

    /// Exact quotient `self / d` in `Z[q,u]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if rm.0 < dm.0 || rm.1 < dm.1 {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = (rm.0 - dm.0, rm.1 - dm.1);
            let t = d.shift(qm.0, qm.1).scale(&qc);
            rem -= &t;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Like [`Poly::div_exact`] but reports failure as an error.
    pub fn divide(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.div_exact(d).ok_or(Error::NotAPolynomial)
    }

    /// JSON form: array of `[coeff-as-decimal-string, qdeg, udeg]` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&(a, b), c)| serde_json::json!([c.to_string(), a, b]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let bad = || Error::Format("malformed polynomial JSON".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut p = Poly::zero();
        for item in arr {
            let t = item.as_array().ok_or_else(bad)?;
            if t.len() != 3 {
                return Err(bad());
            }
            let c: BigInt = t[0].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let a = t[1].as_u64().ok_or_else(bad)? as u32;
            let b = t[2].as_u64().ok_or_else(bad)? as u32;
            p.add_term((a, b), c);
        }
        Ok(p)
    }

    /// Renders in descending canonical order, using `mul` between coefficient and
    /// monomial and `pow` for exponents (`"*"`, `"^"` for the plain text form).
    fn render(&self, mul: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if b > 0 {
                factors.push(if b == 1 { "u".to_string() } else { format!("u^{b}") });
            }
            if a > 0 {
                factors.push(if a == 1 { "q".to_string() } else { format!("q^{a}") });
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push_str(mul);
                }
                out.push_str(&factors.join(mul));
            }
        }
        out
    }

    /// LaTeX-style rendering as in `q^5 - q^4 + 2q + 1`.
    pub fn to_tex(&self) -> String {
        self.render("")
    }
}

impl fmt::Display for Poly {
    /// Human form such as `q^3 + 2*q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*"))
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses the human and LaTeX forms, e.g. `q^3 + 2*q + 1`, `2q^3 - uq`.
    fn from_str(text: &str) -> Result<Poly> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        if chars.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut out = Poly::zero();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| chars[start..*i].iter().map(|c| c.1).collect::<String>().parse().unwrap())
        };
        while i < chars.len() {
            let mut sign = BigInt::one();
            match chars[i].1 {
                '+' if i > 0 => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if i > 0 => return Err(err(chars[i].0, "expected `+` or `-`")),
                _ => {}
            }
            let pos = chars.get(i).map_or(text.len(), |c| c.0);
            let coeff = number(&mut i);
            let (mut qd, mut ud) = (0u32, 0u32);
            let mut seen = coeff.is_some();
            loop {
                let mut j = i;
                if seen && j < chars.len() && chars[j].1 == '*' {
                    j += 1;
                }
                let var = match chars.get(j).map(|c| c.1) {
                    Some(v @ ('q' | 'u')) => v,
                    _ => break,
                };
                i = j + 1;
                let mut e = 1u32;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let at = chars.get(i).map_or(text.len(), |c| c.0);
                    e = number(&mut i)
                        .and_then(|n| u32::try_from(n).ok())
                        .ok_or_else(|| err(at, "expected exponent"))?;
                }
                if var == 'q' {
                    qd += e;
                } else {
                    ud += e;
                }
                seen = true;
            }
            if !seen {
                return Err(err(pos, "expected a term"));
            }
            out.add_term((qd, ud), sign * coeff.unwrap_or_else(BigInt::one));
        }
        Ok(out)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self += &rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
