//! Unipotent multiplicities recomputed from the infinite products
//! `∏_d Ω(x^d, q^d; T^d)^{Φ_d}` through `R = log Ω`, independently of the
//! `Exp(uΨ)` route.

use rayon::prelude::*;

use super::{phi, phi_prime, phi_u, signed, MasterContext, SignData};
use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::partition::MultiPartition;
use crate::symfunc::{GradedSeries, SymFunc};

/// Schur-basis coefficients of the product series, per degree.
#[derive(Debug)]
pub struct ProductOracles {
    order: usize,
    /// `∏_d ψ_d(Ω)^{Φ_d(q)}`
    gl: Vec<SymFunc>,
    /// `∏_d ψ_d(Ω)^{Φ_d(u,q)}`
    deformed: Vec<SymFunc>,
    /// `∏_d Ω(x^d, (-q)^d; T^d)^{Φ'_d(q)}`
    unitary: Vec<SymFunc>,
    /// `exp` of the three-sum expansion of the unitary product in terms of
    /// `R_n(x^d, ±q^d)`.
    unitary_log_form: Vec<SymFunc>,
}

/// `Σ_{d ≤ N} w_d post(ψ_d(f))`.
fn weighted_adams(
    f: &GradedSeries,
    range: impl Iterator<Item = usize>,
    weight: impl Fn(usize) -> Rat,
    post: impl Fn(GradedSeries) -> GradedSeries,
) -> GradedSeries {
    let mut out = GradedSeries::zero(f.k(), f.order());
    for d in range {
        let term = post(f.adams(d)).scale(&weight(d));
        out = out.add(&term).expect("same shape");
    }
    out
}

fn negate_q(s: GradedSeries) -> GradedSeries {
    s.map_coeffs(Rat::negate_q)
}

fn schur_pieces(s: &GradedSeries) -> Vec<SymFunc> {
    s.terms().par_iter().map(SymFunc::to_schur).collect()
}

impl ProductOracles {
    pub fn build(ctx: &MasterContext) -> Self {
        let order = ctx.order();
        let r = ctx.log_omega();
        // Σ_n (-1)^n R_n(x, -q) T^n
        let r_alt = r.negate_t().map_coeffs(Rat::negate_q);
        let all = || 1..=order;
        let evens = || (1..=order / 2).map(|d| 2 * d);
        let exp = |s: GradedSeries| schur_pieces(&s.exp().expect("no constant term"));

        let ((gl, deformed), (unitary, unitary_log_form)) = rayon::join(
            || {
                rayon::join(
                    || exp(weighted_adams(r, all(), phi, |s| s)),
                    || exp(weighted_adams(r, all(), phi_u, |s| s)),
                )
            },
            || {
                rayon::join(
                    // Σ_d Φ'_d R(x^d, (-q)^d; T^d)
                    || exp(weighted_adams(r, all(), phi_prime, negate_q)),
                    || {
                        // Σ_{d|n} (-1)^{n/d} Φ'_d R_{n/d}(x^d, -q^d) T^n
                        let first = weighted_adams(&r_alt, all(), phi_prime, |s| s);
                        // + Σ_{d|n} Φ'_{2d} R_{n/d}(x^{2d}, q^{2d}) T^{2n}
                        let second = weighted_adams(r, evens(), phi_prime, |s| s);
                        // - Σ_{d|n} (-1)^{n/d} Φ'_{2d} R_{n/d}(x^{2d}, -q^{2d}) T^{2n}
                        let third = weighted_adams(&r_alt, evens(), phi_prime, |s| s);
                        let total = first.add(&second).and_then(|s| s.sub(&third)).expect("same shape");
                        exp(total)
                    },
                )
            },
        );
        ProductOracles {
            order,
            gl,
            deformed,
            unitary,
            unitary_log_form,
        }
    }

    fn coeff(&self, table: &[SymFunc], mu: &MultiPartition) -> Result<Poly> {
        let n = mu.size();
        if n == 0 || n > self.order {
            return Err(Error::Truncation {
                degree: n,
                order: self.order,
            });
        }
        table[n].coeff(mu).to_poly()
    }

    /// `U_μ(q)` as the `s_μ T^n` coefficient of `∏_d ψ_d(Ω)^{Φ_d(q)}`.
    pub fn u_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        self.coeff(&self.gl, mu)
    }

    /// `T_μ(u,q)` from `∏_d ψ_d(Ω)^{Φ_d(u,q)} = 1 + u Σ T_μ s_μ T^n`.
    pub fn t_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        self.coeff(&self.deformed, mu)?.divide(&Poly::u())
    }

    /// Raw `s_μ T^n` coefficient of the unitary product.
    pub fn unitary_coeff(&self, mu: &MultiPartition) -> Result<Poly> {
        self.coeff(&self.unitary, mu)
    }

    /// Raw `s_μ T^n` coefficient of `exp` of the three-sum log expansion.
    pub fn unitary_log_form_coeff(&self, mu: &MultiPartition) -> Result<Poly> {
        self.coeff(&self.unitary_log_form, mu)
    }

    /// `U'_μ(q)` from the unitary product: its coefficient is `-T_μ(-1,-q)`.
    pub fn uprime_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        let sign = SignData::new(mu)?.sign_uprime;
        Ok(signed(self.unitary_coeff(mu)?, -sign))
    }

    /// `U'_μ(q)` from the three-sum log expansion. That expansion is the
    /// logarithm of the unitary product at `-T`, hence the extra `(-1)^n`.
    pub fn uprime_log_form_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        let sign = SignData::new(mu)?.sign_uprime;
        let parity = if mu.size().is_multiple_of(2) { -1 } else { 1 };
        Ok(signed(self.unitary_log_form_coeff(mu)?, sign * parity))
    }
}
