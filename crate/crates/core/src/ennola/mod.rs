//! The master series `Ω`, `Ψ = (q-1) Log Ω`, `Exp(uΨ)`, and the
//! multiplicity polynomials extracted from them.

mod cache;
mod oracle;
mod registry;
mod table;
mod verify;

pub use cache::{CacheLoad, PsiCache, CACHE_VERSION};
pub use oracle::ProductOracles;
pub use registry::{Quantity, Registry};
pub use table::{parse_tex_label, render_table, table_rows, tex_label, Format, TableRow};
pub use verify::{verify_suite, AuditResult, CheckResult, VerifyOptions, VerifyReport};

use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::hall_littlewood::transformed_hl_powersum;
use crate::partition::{enumerate_partitions, MultiPartition};
use crate::symfunc::{mobius, Basis, GradedSeries, SymFunc};
use crate::types::MultiType;

fn divisors(d: usize) -> impl Iterator<Item = usize> {
    (1..=d).filter(move |r| d.is_multiple_of(*r))
}

/// `Φ_d(q) = (1/d) Σ_{r|d} μ(r) (q^{d/r} - 1)`, the number of Frobenius
/// orbits of size `d` on `F̄_q^*`.
pub fn phi(d: usize) -> Rat {
    phi_u(d).map_poly(|p| p.eval_u(1))
}

/// `Φ'_d(q) = (1/d) Σ_{r|d} μ(r) (q^{d/r} - (-1)^{d/r})`.
pub fn phi_prime(d: usize) -> Rat {
    let mut num = Poly::zero();
    for r in divisors(d) {
        let e = (d / r) as u32;
        let sign = if e.is_multiple_of(2) { 1 } else { -1 };
        let term = Poly::q_pow(e) - Poly::constant(sign);
        num += &term.scale(&BigInt::from(mobius(r)));
    }
    Rat::from_poly(num).div_int(d as i64)
}

/// `Φ_d(u,q) = (1/d) Σ_{r|d} μ(r) u^{d/r} (q^{d/r} - 1)`.
pub fn phi_u(d: usize) -> Rat {
    let mut num = Poly::zero();
    for r in divisors(d) {
        let e = (d / r) as u32;
        let term = Poly::monomial(1, e, e) - Poly::monomial(1, 0, e);
        num += &term.scale(&BigInt::from(mobius(r)));
    }
    Rat::from_poly(num).div_int(d as i64)
}

/// `d_μ` and the signs attached to a multipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignData {
    /// `d_μ = n²(k-2) - Σ_{i,j} (μ^i_j)² + 2`, always even.
    pub d_mu: i64,
    /// `(-1)^{d_μ/2}`: relates `U'_μ(q)` to `T_μ(-1,-q)` and `V'_μ(q)` to `T_μ(0,-q)`.
    pub sign_uprime: i64,
    /// `(-1)^{d_μ/2 + n}`, an alternative convention that differs from
    /// `sign_uprime` for odd `n`.
    pub shifted_sign_uprime: i64,
    /// `(-1)^{k(n+⌈n/2⌉) + n(μ*) + n + 1}`: relates `V'_μ(q)` to `V_μ(-q)`.
    pub sign_vprime: i64,
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl SignData {
    pub fn new(mu: &MultiPartition) -> Result<Self> {
        let n = mu.size() as i64;
        let k = mu.k() as i64;
        let squares: i64 = mu
            .components()
            .iter()
            .flat_map(|p| p.parts().iter())
            .map(|&x| (x * x) as i64)
            .sum();
        let d_mu = n * n * (k - 2) - squares + 2;
        if d_mu % 2 != 0 {
            return Err(Error::Internal(format!("d_μ = {d_mu} is odd for {mu}")));
        }
        let n_dual: i64 = mu.components().iter().map(|p| p.dual().n_stat() as i64).sum();
        let ceil_half = (n + 1) / 2;
        Ok(SignData {
            d_mu,
            sign_uprime: parity_sign(d_mu / 2),
            shifted_sign_uprime: parity_sign(d_mu / 2 + n),
            sign_vprime: parity_sign(k * (n + ceil_half) + n_dual + n + 1),
        })
    }
}

/// Multiplies a polynomial by `±1`.
pub(crate) fn signed(p: Poly, sign: i64) -> Poly {
    if sign < 0 {
        -p
    } else {
        p
    }
}

/// `Ω`, `Ψ`, `Exp(uΨ)` truncated at `T^N`, with Schur-basis extractions.
pub struct MasterContext {
    k: usize,
    order: usize,
    omega: OnceLock<GradedSeries>,
    log_omega: OnceLock<GradedSeries>,
    psi: GradedSeries,
    exp_u_psi: GradedSeries,
    psi_schur: Vec<SymFunc>,
    tau_schur: Vec<SymFunc>,
    oracles: OnceLock<ProductOracles>,
}

impl std::fmt::Debug for MasterContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MasterContext")
            .field("k", &self.k)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// `Ω = Σ_λ a_λ(q)^{-1} ∏_i H̃_λ(x_i; q) T^{|λ|}`.
pub fn cauchy_series(k: usize, order: usize) -> GradedSeries {
    let pieces: Vec<SymFunc> = (1..=order)
        .flat_map(enumerate_partitions)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|lam| {
            let h = transformed_hl_powersum(lam);
            let factors = vec![(*h).clone(); k];
            let inv_a = Rat::from_poly(lam.a_poly()).inv().expect("a_λ is nonzero");
            SymFunc::tensor(&factors).expect("single-alphabet factors").scale(&inv_a)
        })
        .collect();
    let mut omega = GradedSeries::one(k, order);
    for f in pieces {
        omega.add_piece(f).expect("alphabet count matches");
    }
    omega
}

fn check_polynomial_coeffs(f: &SymFunc, what: &str) -> Result<()> {
    for (key, c) in f.terms() {
        if !c.is_polynomial() || !c.den().is_one() {
            return Err(Error::Internal(format!("{what} coefficient at {key} is not an integer polynomial: {c}")));
        }
    }
    Ok(())
}

impl MasterContext {
    /// Builds everything from `Ω`.
    pub fn build(k: usize, order: usize) -> Result<Self> {
        if k == 0 || order == 0 {
            return Err(Error::InvalidArgument("k and N must be at least 1".into()));
        }
        let omega = cauchy_series(k, order);
        let log_omega = omega.log()?;
        let psi = log_omega
            .psi_sum_inverse()
            .scale(&Rat::from_poly(Poly::q() - Poly::one()));
        let ctx = MasterContext::from_psi(k, order, psi)?;
        ctx.omega.set(omega).expect("fresh context");
        ctx.log_omega.set(log_omega).expect("fresh context");
        Ok(ctx)
    }

    /// Builds the context from `Ψ` given in the Schur basis, one element per
    /// degree `1..=N` (as stored in the disk cache).
    pub fn from_psi_schur(k: usize, order: usize, pieces: Vec<SymFunc>) -> Result<Self> {
        let mut psi = GradedSeries::zero(k, order);
        for f in pieces {
            psi.add_piece(f.to_powersum())?;
        }
        MasterContext::from_psi(k, order, psi)
    }

    fn from_psi(k: usize, order: usize, psi: GradedSeries) -> Result<Self> {
        let u = Rat::from_poly(Poly::u());
        let exp_u_psi = psi.scale(&u).pleth_exp()?;
        let psi_schur: Vec<SymFunc> = psi.terms().par_iter().map(SymFunc::to_schur).collect();
        for f in &psi_schur {
            check_polynomial_coeffs(f, "Ψ")?;
        }
        let tau_schur = exp_u_psi
            .terms()
            .par_iter()
            .enumerate()
            .map(|(n, f)| {
                if n == 0 {
                    return Ok(SymFunc::zero(k, 0, Basis::Schur));
                }
                let s = f.to_schur();
                let mut terms = Vec::with_capacity(s.len());
                for (key, c) in s.terms() {
                    let p = c.to_poly().and_then(|p| p.divide(&Poly::u())).map_err(|_| {
                        Error::Internal(format!("T^{n} coefficient at {key} is not u times a polynomial"))
                    })?;
                    terms.push((key.clone(), Rat::from_poly(p)));
                }
                let out = SymFunc::from_terms(k, n, Basis::Schur, terms)?;
                check_polynomial_coeffs(&out, "T")?;
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(MasterContext {
            k,
            order,
            omega: OnceLock::new(),
            log_omega: OnceLock::new(),
            psi,
            exp_u_psi,
            psi_schur,
            tau_schur,
            oracles: OnceLock::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Ω`, rebuilt on demand when the context came from the cache.
    pub fn omega(&self) -> &GradedSeries {
        self.omega.get_or_init(|| cauchy_series(self.k, self.order))
    }

    /// The ordinary logarithm `log Ω = Σ R_n T^n`.
    pub fn log_omega(&self) -> &GradedSeries {
        self.log_omega
            .get_or_init(|| self.omega().log().expect("Ω has constant term 1"))
    }

    pub fn psi(&self) -> &GradedSeries {
        &self.psi
    }

    pub fn exp_u_psi(&self) -> &GradedSeries {
        &self.exp_u_psi
    }

    /// `Ψ_n` in the Schur basis, `n ≤ N`.
    pub fn psi_schur(&self, n: usize) -> &SymFunc {
        &self.psi_schur[n]
    }

    /// `T_n = u^{-1} [T^n] Exp(uΨ)` in the Schur basis.
    pub fn tau_schur(&self, n: usize) -> &SymFunc {
        &self.tau_schur[n]
    }

    /// Infinite-product oracles, computed on first use.
    pub fn oracles(&self) -> &ProductOracles {
        self.oracles.get_or_init(|| ProductOracles::build(self))
    }

    fn check_mu(&self, mu: &MultiPartition) -> Result<usize> {
        if mu.k() != self.k {
            return Err(Error::AlphabetMismatch(self.k, mu.k()));
        }
        let n = mu.size();
        if n == 0 || n > self.order {
            return Err(Error::Truncation {
                degree: n,
                order: self.order,
            });
        }
        Ok(n)
    }

    fn schur_coeff(&self, f: &SymFunc, mu: &MultiPartition) -> Poly {
        f.coeff(mu).to_poly().expect("checked at construction")
    }

    /// `ℍ_ω(q) = <Ψ_n, s_ω>`.
    pub fn h_omega(&self, omega: &MultiType) -> Result<Poly> {
        if omega.k() != self.k {
            return Err(Error::AlphabetMismatch(self.k, omega.k()));
        }
        let n = omega.size();
        if n == 0 || n > self.order {
            return Err(Error::Truncation {
                degree: n,
                order: self.order,
            });
        }
        if let Some(mu) = omega.as_multipartition() {
            return Ok(self.schur_coeff(&self.psi_schur[n], &mu));
        }
        let coeffs: Vec<std::collections::HashMap<_, _>> = omega
            .components()
            .iter()
            .map(|t| t.schur_coefficients().into_iter().collect())
            .collect();
        let mut total = Poly::zero();
        for (key, c) in self.psi_schur[n].terms() {
            let mut weight = BigInt::from(1);
            for (part, table) in key.components().iter().zip(&coeffs) {
                match table.get(part) {
                    Some(x) => weight *= x,
                    None => {
                        weight = BigInt::from(0);
                        break;
                    }
                }
            }
            if weight != BigInt::from(0) {
                total += &c.to_poly()?.scale(&weight);
            }
        }
        Ok(total)
    }

    /// `V_ω(q) = (-1)^{r(ω)} ℍ_ω(q)`.
    pub fn v_poly(&self, omega: &MultiType) -> Result<Poly> {
        let h = self.h_omega(omega)?;
        Ok(signed(h, parity_sign(omega.r_stat() as i64)))
    }

    /// `V'_ω(q) = (-1)^{r'(ω) + r(ω) + n(ω*) + n + 1} V_ω(-q)`.
    pub fn vprime_poly(&self, omega: &MultiType) -> Result<Poly> {
        let v = self.v_poly(omega)?;
        let e = omega.r_prime() + omega.r_stat() + omega.n_dual_stat() + omega.size() + 1;
        Ok(signed(v.negate_q(), parity_sign(e as i64)))
    }

    /// `V_μ(q)`, the Schur coefficient of `Ψ_n`.
    pub fn v_mu(&self, mu: &MultiPartition) -> Result<Poly> {
        let n = self.check_mu(mu)?;
        Ok(self.schur_coeff(&self.psi_schur[n], mu))
    }

    /// `T_μ(u,q)`.
    pub fn t_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        let n = self.check_mu(mu)?;
        Ok(self.schur_coeff(&self.tau_schur[n], mu))
    }

    /// `U_μ(q) = T_μ(1,q)`.
    pub fn u_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        Ok(self.t_poly(mu)?.eval_u(1))
    }

    /// `U'_μ(q) = (-1)^{d_μ/2} T_μ(-1,-q)`.
    pub fn uprime_poly(&self, mu: &MultiPartition) -> Result<Poly> {
        let sign = SignData::new(mu)?.sign_uprime;
        Ok(signed(self.t_poly(mu)?.eval_u(-1).negate_q(), sign))
    }
}
