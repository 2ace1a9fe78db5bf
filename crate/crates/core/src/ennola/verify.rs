//! Identity families checked over every multipartition up to the
//! truncation order.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{signed, MasterContext, SignData};
use crate::arith::Poly;
use crate::characters::kronecker;
use crate::error::Result;
use crate::partition::{enumerate_multipartitions, MultiPartition};
use crate::types::MultiType;

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Largest `n` for the product-formula comparisons, which need `log Ω`;
    /// defaults to the context order.
    pub oracle_max: Option<usize>,
    /// Negative control: flips the sign relating `U'` to `T(-1,-q)`.
    pub inject_sign_bug: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub description: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

/// An informational audit: cases where an expected property does not hold
/// are counted, not failed.
#[derive(Clone, Debug, Serialize)]
pub struct AuditResult {
    pub name: String,
    pub description: String,
    pub cases: usize,
    pub flagged: usize,
    pub first_flagged: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub k: usize,
    pub order: usize,
    pub checks: Vec<CheckResult>,
    pub audits: Vec<AuditResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}, n ≤ {}", self.k, self.order)?;
        for c in &self.checks {
            let status = if c.failures == 0 { "ok" } else { "FAILED" };
            writeln!(f, "({}) {}: {} cases, {} failures [{status}]", c.name, c.description, c.cases, c.failures)?;
            if let Some(ex) = &c.first_counterexample {
                writeln!(f, "    counterexample: {ex}")?;
            }
        }
        for a in &self.audits {
            writeln!(f, "audit: {}: {} of {} cases flagged", a.description, a.flagged, a.cases)?;
            if let Some(ex) = &a.first_flagged {
                writeln!(f, "    e.g. {ex}")?;
            }
        }
        write!(f, "{} identity families, {} failures", self.checks.len(), self.failures())
    }
}

/// A check returns `None` when it holds and a description otherwise.
type Outcome = Option<String>;

fn run_family<F>(name: &str, description: &str, keys: &[MultiPartition], check: F) -> Result<CheckResult>
where
    F: Fn(&MultiPartition) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = keys.par_iter().map(&check).collect::<Result<_>>()?;
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    Ok(CheckResult {
        name: name.into(),
        description: description.into(),
        cases: keys.len(),
        failures,
        first_counterexample: outcomes.into_iter().flatten().next(),
    })
}

fn run_audit<F>(name: &str, description: &str, keys: &[MultiPartition], flag: F) -> Result<AuditResult>
where
    F: Fn(&MultiPartition) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = keys.par_iter().map(&flag).collect::<Result<_>>()?;
    Ok(AuditResult {
        name: name.into(),
        description: description.into(),
        cases: keys.len(),
        flagged: outcomes.iter().filter(|o| o.is_some()).count(),
        first_flagged: outcomes.into_iter().flatten().next(),
    })
}

fn mismatch(mu: &MultiPartition, lhs: &Poly, rhs: &Poly) -> Outcome {
    (lhs != rhs).then(|| format!("{mu}: {lhs} ≠ {rhs}"))
}

/// Runs the seven identity families and the sign audits.
pub fn verify_suite(ctx: &MasterContext, opts: &VerifyOptions) -> Result<VerifyReport> {
    let k = ctx.k();
    let order = ctx.order();
    let oracle_max = opts.oracle_max.unwrap_or(order).min(order);
    let keys: Vec<MultiPartition> = (1..=order).flat_map(|n| enumerate_multipartitions(n, k)).collect();
    let oracle_keys: Vec<MultiPartition> = keys.iter().filter(|mu| mu.size() <= oracle_max).cloned().collect();
    let flip = if opts.inject_sign_bug { -1 } else { 1 };

    let mut checks = Vec::new();
    checks.push(run_family("a", "T(0,q) = V", &keys, |mu| {
        Ok(mismatch(mu, &ctx.t_poly(mu)?.eval_u(0), &ctx.v_mu(mu)?))
    })?);
    checks.push(run_family("b", "T(1,q) = U from the infinite product", &oracle_keys, |mu| {
        Ok(mismatch(mu, &ctx.u_poly(mu)?, &ctx.oracles().u_poly(mu)?))
    })?);
    checks.push(run_family(
        "c",
        "(-1)^{d/2} T(-1,-q) = U' from the log expansion",
        &oracle_keys,
        |mu| {
            let lhs = signed(ctx.uprime_poly(mu)?, flip);
            Ok(mismatch(mu, &lhs, &ctx.oracles().uprime_log_form_poly(mu)?))
        },
    )?);
    checks.push(run_family("d", "[u^{n-1}] T = Kronecker coefficient", &keys, |mu| {
        let top = ctx.t_poly(mu)?.u_coeff(mu.size() as u32 - 1);
        Ok(mismatch(mu, &top, &Poly::from(kronecker(mu)?)))
    })?);
    checks.push(run_family(
        "e",
        "T has nonnegative integer coefficients and u-degree ≤ n-1",
        &keys,
        |mu| {
            let t = ctx.t_poly(mu)?;
            let negative = t.terms().any(|(_, c)| c.sign() == num_bigint::Sign::Minus);
            let too_high = t.u_degree().is_some_and(|d| d as usize >= mu.size());
            Ok((negative || too_high).then(|| format!("{mu}: T = {t}")))
        },
    )?);
    checks.push(run_family("f", "V' = (-1)^{d/2} T(0,-q)", &keys, |mu| {
        let sign = SignData::new(mu)?.sign_uprime;
        let rhs = signed(ctx.t_poly(mu)?.eval_u(0).negate_q(), sign);
        Ok(mismatch(mu, &ctx.vprime_poly(&MultiType::from_multipartition(mu)?)?, &rhs))
    })?);
    checks.push(run_family(
        "g",
        "u-deformed product = T and unitary log expansion = unitary product",
        &oracle_keys,
        |mu| {
            let o = ctx.oracles();
            if let Some(bad) = mismatch(mu, &o.t_poly(mu)?, &ctx.t_poly(mu)?) {
                return Ok(Some(bad));
            }
            Ok(mismatch(mu, &o.uprime_log_form_poly(mu)?, &o.uprime_poly(mu)?))
        },
    )?);

    let audits = vec![
        run_audit(
            "uprime-leading",
            "U' is zero or has positive leading q-coefficient",
            &keys,
            |mu| {
                let p = ctx.uprime_poly(mu)?;
                let lead_negative = p
                    .leading()
                    .is_some_and(|(_, c)| c.sign() == num_bigint::Sign::Minus);
                Ok(lead_negative.then(|| format!("{mu}: U' = {p}")))
            },
        )?,
        run_audit(
            "shifted-sign",
            "(-1)^{d/2+n} T(-1,-q) disagrees with U' (nonzero cases)",
            &keys,
            |mu| {
                let s = SignData::new(mu)?;
                let u = ctx.uprime_poly(mu)?;
                let flagged = s.shifted_sign_uprime != s.sign_uprime && !u.is_zero();
                Ok(flagged.then(|| format!("{mu}: U' = {u}, (-1)^{{d/2+n}} gives {}", -u.clone())))
            },
        )?,
    ];

    Ok(VerifyReport {
        k,
        order,
        checks,
        audits,
    })
}
