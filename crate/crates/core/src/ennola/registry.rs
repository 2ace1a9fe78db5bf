//! Named quantities selectable at run time.

use super::MasterContext;
use crate::arith::Poly;
use crate::characters::kronecker;
use crate::error::{Error, Result};
use crate::partition::MultiPartition;
use crate::types::MultiType;

/// A polynomial-valued function of a multipartition, computed from a
/// [`MasterContext`].
pub trait Quantity: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Column header in TeX tables.
    fn tex_symbol(&self) -> &'static str;

    fn eval(&self, ctx: &MasterContext, mu: &MultiPartition) -> Result<Poly>;

    /// Multi-type input. Only generic multiplicities accept arbitrary types.
    fn eval_type(&self, ctx: &MasterContext, omega: &MultiType) -> Result<Poly> {
        match omega.as_multipartition() {
            Some(mu) => self.eval(ctx, &mu),
            None => Err(Error::InvalidArgument(format!(
                "{} is defined on multipartitions only; got {omega}",
                self.name()
            ))),
        }
    }

    /// Quantities that do not need the master series compute directly.
    fn eval_direct(&self, _mu: &MultiPartition) -> Option<Result<Poly>> {
        None
    }
}

struct GenericV;

impl Quantity for GenericV {
    fn name(&self) -> &'static str {
        "V"
    }
    fn summary(&self) -> &'static str {
        "generic multiplicity for GL_n(F_q)"
    }
    fn tex_symbol(&self) -> &'static str {
        r"V_{\bm \mu}"
    }
    fn eval(&self, ctx: &MasterContext, mu: &MultiPartition) -> Result<Poly> {
        ctx.v_mu(mu)
    }
    fn eval_type(&self, ctx: &MasterContext, omega: &MultiType) -> Result<Poly> {
        ctx.v_poly(omega)
    }
}

struct GenericVPrime;

impl Quantity for GenericVPrime {
    fn name(&self) -> &'static str {
        "Vprime"
    }
    fn summary(&self) -> &'static str {
        "generic multiplicity for GU_n(F_q)"
    }
    fn tex_symbol(&self) -> &'static str {
        r"V'_{\bm \mu}"
    }
    fn eval(&self, ctx: &MasterContext, mu: &MultiPartition) -> Result<Poly> {
        ctx.vprime_poly(&MultiType::from_multipartition(mu)?)
    }
    fn eval_type(&self, ctx: &MasterContext, omega: &MultiType) -> Result<Poly> {
        ctx.vprime_poly(omega)
    }
}

/// Quantities given by a plain function of the context.
struct Simple {
    name: &'static str,
    summary: &'static str,
    tex: &'static str,
    f: fn(&MasterContext, &MultiPartition) -> Result<Poly>,
}

impl Quantity for Simple {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn tex_symbol(&self) -> &'static str {
        self.tex
    }
    fn eval(&self, ctx: &MasterContext, mu: &MultiPartition) -> Result<Poly> {
        (self.f)(ctx, mu)
    }
}

struct Kron;

impl Quantity for Kron {
    fn name(&self) -> &'static str {
        "kron"
    }
    fn summary(&self) -> &'static str {
        "Kronecker coefficient of S_n"
    }
    fn tex_symbol(&self) -> &'static str {
        r"g_{\bm \mu}"
    }
    fn eval(&self, _ctx: &MasterContext, mu: &MultiPartition) -> Result<Poly> {
        kronecker(mu).map(Poly::from)
    }
    fn eval_direct(&self, mu: &MultiPartition) -> Option<Result<Poly>> {
        Some(kronecker(mu).map(Poly::from))
    }
}

/// Quantities by name.
pub struct Registry {
    entries: Vec<Box<dyn Quantity>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { entries: Vec::new() }
    }

    /// `V`, `Vprime`, `U`, `Uprime`, `T`, `kron` and the product-formula
    /// variants of `U`, `Uprime`, `T`.
    pub fn standard() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(GenericV));
        r.register(Box::new(GenericVPrime));
        let simple = [
            Simple {
                name: "U",
                summary: "unipotent multiplicity for GL_n(F_q)",
                tex: r"U_{\bm \mu}",
                f: MasterContext::u_poly,
            },
            Simple {
                name: "Uprime",
                summary: "unipotent multiplicity for GU_n(F_q)",
                tex: r"U'_{\bm \mu}",
                f: MasterContext::uprime_poly,
            },
            Simple {
                name: "T",
                summary: "two-variable polynomial interpolating V, U and U'",
                tex: r"\mathcal{T}_{\bm \mu}",
                f: MasterContext::t_poly,
            },
            Simple {
                name: "U-product",
                summary: "U from the infinite product over Frobenius orbits",
                tex: r"U_{\bm \mu}",
                f: |ctx, mu| ctx.oracles().u_poly(mu),
            },
            Simple {
                name: "Uprime-product",
                summary: "U' from the unitary infinite product",
                tex: r"U'_{\bm \mu}",
                f: |ctx, mu| ctx.oracles().uprime_poly(mu),
            },
            Simple {
                name: "Uprime-logform",
                summary: "U' from the expansion of the unitary product in R_n",
                tex: r"U'_{\bm \mu}",
                f: |ctx, mu| ctx.oracles().uprime_log_form_poly(mu),
            },
            Simple {
                name: "T-product",
                summary: "T from the u-deformed infinite product",
                tex: r"\mathcal{T}_{\bm \mu}",
                f: |ctx, mu| ctx.oracles().t_poly(mu),
            },
        ];
        for q in simple {
            r.register(Box::new(q));
        }
        r.register(Box::new(Kron));
        r
    }

    /// Adds a quantity, replacing any previous one with the same name.
    pub fn register(&mut self, q: Box<dyn Quantity>) {
        self.entries.retain(|e| e.name() != q.name());
        self.entries.push(q);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Quantity> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Quantity> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::standard()
    }
}
