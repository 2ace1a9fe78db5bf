use std::fmt;

use super::{powersum_product, Basis, SymFunc};
use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::partition::MultiPartition;

/// A series `Σ_{n ≤ N} f_n T^n` with `f_n` homogeneous of degree `n`,
/// truncated at a fixed order `N`. Coefficients are kept in the power-sum
/// basis; every operation drops degrees above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    k: usize,
    order: usize,
    terms: Vec<SymFunc>,
}

fn moebius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Möbius function.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    moebius(n)
}

impl GradedSeries {
    pub fn zero(k: usize, order: usize) -> Self {
        GradedSeries {
            k,
            order,
            terms: (0..=order).map(|n| SymFunc::zero(k, n, Basis::PowerSum)).collect(),
        }
    }

    pub fn one(k: usize, order: usize) -> Self {
        let mut s = GradedSeries::zero(k, order);
        s.terms[0] = SymFunc::scalar(k, Rat::one());
        s
    }

    /// Builds a series from homogeneous pieces; pieces above `order` are dropped.
    pub fn from_terms<I: IntoIterator<Item = SymFunc>>(k: usize, order: usize, pieces: I) -> Result<Self> {
        let mut s = GradedSeries::zero(k, order);
        for f in pieces {
            s.add_piece(f)?;
        }
        Ok(s)
    }

    /// A series in `T` alone (no alphabets): `Σ c_n T^n`.
    pub fn from_scalars(order: usize, coeffs: &[Rat]) -> Self {
        let mut s = GradedSeries::zero(0, order);
        for (n, c) in coeffs.iter().enumerate().take(order + 1) {
            let mut f = SymFunc::zero(0, n, Basis::PowerSum);
            f.add_term(MultiPartition::from_parts_unchecked(Vec::new()), c.clone());
            s.terms[n] = f;
        }
        s
    }

    /// Coefficient of `T^n` for a series without alphabets.
    pub fn scalar_coeff(&self, n: usize) -> Rat {
        self.terms[n]
            .terms()
            .next()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Adds a homogeneous piece at `T^{degree}`.
    pub fn add_piece(&mut self, f: SymFunc) -> Result<()> {
        if f.k() != self.k {
            return Err(Error::AlphabetMismatch(self.k, f.k()));
        }
        let n = f.degree();
        if n > self.order {
            return Ok(());
        }
        self.terms[n] = self.terms[n].add(&f.to_powersum())?;
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `T^n` (power-sum basis).
    pub fn coeff(&self, n: usize) -> &SymFunc {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[SymFunc] {
        &self.terms
    }

    pub fn constant(&self) -> Rat {
        self.terms[0].constant()
    }

    fn check(&self, other: &GradedSeries) -> Result<()> {
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        if self.order != other.order {
            return Err(Error::Truncation {
                degree: other.order,
                order: self.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check(other)?;
        let terms = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(GradedSeries {
            k: self.k,
            order: self.order,
            terms,
        })
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.add(&other.scale(&Rat::integer(-1)))
    }

    pub fn scale(&self, c: &Rat) -> GradedSeries {
        self.map_coeffs(|x| x * c)
    }

    /// Applies a coefficient map (a substitution in `q`, `u`) termwise.
    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> GradedSeries {
        GradedSeries {
            k: self.k,
            order: self.order,
            terms: self.terms.iter().map(|t| t.map_coeffs(&f)).collect(),
        }
    }

    /// `T -> -T`.
    pub fn negate_t(&self) -> GradedSeries {
        GradedSeries {
            k: self.k,
            order: self.order,
            terms: self
                .terms
                .iter()
                .enumerate()
                .map(|(n, t)| if n % 2 == 1 { t.scale(&Rat::integer(-1)) } else { t.clone() })
                .collect(),
        }
    }

    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check(other)?;
        let mut out = GradedSeries::zero(self.k, self.order);
        for n in 0..=self.order {
            let mut acc = SymFunc::zero(self.k, n, Basis::PowerSum);
            for j in 0..=n {
                let (a, b) = (&self.terms[j], &other.terms[n - j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&powersum_product(a, b))?;
            }
            out.terms[n] = acc;
        }
        Ok(out)
    }

    /// Adams operation `ψ_m`, including `T -> T^m`.
    pub fn adams(&self, m: usize) -> GradedSeries {
        assert!(m >= 1);
        let mut out = GradedSeries::zero(self.k, self.order);
        for (n, t) in self.terms.iter().enumerate() {
            if n * m > self.order {
                break;
            }
            out.terms[n * m] = t.adams(m);
        }
        out
    }

    /// Ordinary formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<GradedSeries> {
        if !self.constant().is_one() || self.terms[0].len() > 1 {
            return Err(Error::ConstantTerm(format!(
                "log needs constant term 1, found {}",
                self.constant()
            )));
        }
        let mut out = GradedSeries::zero(self.k, self.order);
        // n L_n = n f_n - Σ_{j<n} j L_j f_{n-j}
        for n in 1..=self.order {
            let mut acc = self.terms[n].scale(&Rat::integer(n as i64));
            for j in 1..n {
                if out.terms[j].is_zero() || self.terms[n - j].is_zero() {
                    continue;
                }
                let prod = powersum_product(&out.terms[j], &self.terms[n - j]);
                acc = acc.sub(&prod.scale(&Rat::integer(j as i64)))?;
            }
            out.terms[n] = acc.scale(&Rat::from_ratio(1, n as i64));
        }
        Ok(out)
    }

    /// Ordinary formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<GradedSeries> {
        if !self.constant().is_zero() {
            return Err(Error::ConstantTerm(format!(
                "exp needs constant term 0, found {}",
                self.constant()
            )));
        }
        let mut out = GradedSeries::one(self.k, self.order);
        // n E_n = Σ_{j=1}^{n} j g_j E_{n-j}
        for n in 1..=self.order {
            let mut acc = SymFunc::zero(self.k, n, Basis::PowerSum);
            for j in 1..=n {
                if self.terms[j].is_zero() || out.terms[n - j].is_zero() {
                    continue;
                }
                let prod = powersum_product(&self.terms[j], &out.terms[n - j]);
                acc = acc.add(&prod.scale(&Rat::integer(j as i64)))?;
            }
            out.terms[n] = acc.scale(&Rat::from_ratio(1, n as i64));
        }
        Ok(out)
    }

    /// `Ψ(f) = Σ_{m ≥ 1} ψ_m(f) / m`
    pub fn psi_sum(&self) -> GradedSeries {
        self.adams_sum(|m| Rat::from_ratio(1, m as i64))
    }

    /// `Ψ^{-1}(f) = Σ_{m ≥ 1} μ(m) ψ_m(f) / m`
    pub fn psi_sum_inverse(&self) -> GradedSeries {
        self.adams_sum(|m| Rat::from_ratio(mobius(m), m as i64))
    }

    fn adams_sum(&self, weight: impl Fn(usize) -> Rat) -> GradedSeries {
        let mut out = GradedSeries::zero(self.k, self.order);
        for m in 1..=self.order.max(1) {
            let w = weight(m);
            if w.is_zero() {
                continue;
            }
            let term = self.adams(m).scale(&w);
            out = out.add(&term).expect("same shape");
        }
        out
    }

    /// Plethystic exponential `Exp(f) = exp(Ψ(f))`; requires constant term 0.
    pub fn pleth_exp(&self) -> Result<GradedSeries> {
        if !self.constant().is_zero() {
            return Err(Error::ConstantTerm(format!(
                "Exp needs constant term 0, found {}",
                self.constant()
            )));
        }
        self.psi_sum().exp()
    }

    /// Plethystic logarithm `Log(f) = Ψ^{-1}(log f)`; requires constant term 1.
    pub fn pleth_log(&self) -> Result<GradedSeries> {
        Ok(self.log()?.psi_sum_inverse())
    }

    /// `f^e = exp(e · log f)` for a polynomial exponent `e` (ordinary, not
    /// plethystic, log and exp).
    pub fn pow_exp_of_log(&self, e: &Poly) -> Result<GradedSeries> {
        self.log()?.scale(&Rat::from_poly(e.clone())).exp()
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, t) in self.terms.iter().enumerate() {
            if !t.is_zero() {
                writeln!(f, "T^{n}: {t}")?;
            }
        }
        Ok(())
    }
}
