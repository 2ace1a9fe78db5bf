//! Homogeneous symmetric functions in `k` independent alphabets with
//! coefficients in `Q(q,u)`, and truncated series of them.
//!
//! Power sums are the working basis: products concatenate cycle types,
//! Adams operations scale them, and alphabet substitutions act termwise.
//! Schur functions appear at the boundary for input, output and pairing.

mod series;

pub use series::{mobius, GradedSeries};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::arith::{Rat, RatAccumulator};
use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::partition::{MultiPartition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    PowerSum,
    Schur,
}

/// A homogeneous element of degree `degree` in `Λ(x_1) ⊗ … ⊗ Λ(x_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    k: usize,
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<MultiPartition, Rat>,
}

impl SymFunc {
    pub fn zero(k: usize, degree: usize, basis: Basis) -> Self {
        SymFunc {
            k,
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant `c` in degree zero.
    pub fn scalar(k: usize, c: Rat) -> Self {
        let mut f = SymFunc::zero(k, 0, Basis::PowerSum);
        f.add_term(MultiPartition::from_parts_unchecked(vec![Partition::empty(); k]), c);
        f
    }

    /// A single basis element with coefficient one.
    pub fn basis_element(basis: Basis, key: MultiPartition) -> Self {
        let mut f = SymFunc::zero(key.k(), key.size(), basis);
        f.add_term(key, Rat::one());
        f
    }

    /// Builds an element from `(key, coefficient)` pairs.
    pub fn from_terms<I>(k: usize, degree: usize, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiPartition, Rat)>,
    {
        let mut f = SymFunc::zero(k, degree, basis);
        for (key, c) in terms {
            if key.k() != k {
                return Err(Error::AlphabetMismatch(k, key.k()));
            }
            if key.size() != degree {
                return Err(Error::SizeMismatch(format!("{key} is not of degree {degree}")));
            }
            f.add_term(key, c);
        }
        Ok(f)
    }

    /// Single-alphabet element from a partition-indexed list.
    pub fn single<I>(basis: Basis, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, Rat)>,
    {
        let mut f = SymFunc::zero(1, degree, basis);
        for (p, c) in terms {
            f.add_term(MultiPartition::from_parts_unchecked(vec![p]), c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, key: MultiPartition, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn from_accumulators(k: usize, degree: usize, basis: Basis, acc: BTreeMap<MultiPartition, RatAccumulator>) -> Self {
        let mut f = SymFunc::zero(k, degree, basis);
        for (key, a) in acc {
            let c = a.finish();
            if !c.is_zero() {
                f.coeffs.insert(key, c);
            }
        }
        f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &MultiPartition) -> Rat {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiPartition, &Rat)> {
        self.coeffs.iter()
    }

    /// The degree-zero coefficient as a scalar.
    pub fn constant(&self) -> Rat {
        if self.degree != 0 {
            return Rat::zero();
        }
        self.coeffs.values().next().cloned().unwrap_or_default()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> SymFunc {
        let mut out = SymFunc::zero(self.k, self.degree, self.basis);
        for (key, c) in &self.coeffs {
            out.add_term(key.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.k, self.degree, self.basis);
        }
        self.map_coeffs(|x| x * c)
    }

    fn check_compatible(&self, other: &SymFunc) -> Result<()> {
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.in_basis(self.basis));
        }
        if self.degree != other.degree {
            return Err(Error::SizeMismatch(format!(
                "cannot add degree {} and degree {}",
                self.degree, other.degree
            )));
        }
        let other = other.in_basis(self.basis);
        let mut out = self.clone();
        for (key, c) in other.coeffs {
            out.add_term(key, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.scale(&Rat::integer(-1)))
    }

    /// Converts one alphabet at a time through the character table.
    pub fn change_basis(&self, target: Basis) -> SymFunc {
        if self.basis == target || self.degree == 0 {
            let mut out = self.clone();
            out.basis = target;
            return out;
        }
        let table = CharTable::get(self.degree);
        let m = table.partitions().len();
        // Entry [from][to] of the per-alphabet transition matrix.
        let transition: Vec<Vec<Rat>> = (0..m)
            .map(|from| {
                (0..m)
                    .map(|to| match target {
                        // p_ρ = Σ_λ χ^λ_ρ s_λ
                        Basis::Schur => Rat::integer(table.value_at(to, from)),
                        // s_λ = Σ_ρ χ^λ_ρ / z_ρ p_ρ
                        Basis::PowerSum => Rat::from_ratio(
                            BigInt::from(table.value_at(from, to)),
                            table.z_at(to).clone(),
                        ),
                    })
                    .collect()
            })
            .collect();
        let mut current = self.coeffs.clone();
        for alphabet in 0..self.k {
            let mut acc: BTreeMap<MultiPartition, RatAccumulator> = BTreeMap::new();
            for (key, c) in &current {
                let from = table
                    .index_of(&key.components()[alphabet])
                    .expect("components have the element's degree");
                for (to, t) in transition[from].iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let mut comps = key.components().to_vec();
                    comps[alphabet] = table.partitions()[to].clone();
                    acc.entry(MultiPartition::from_parts_unchecked(comps))
                        .or_default()
                        .add_product(c, t);
                }
            }
            current = SymFunc::from_accumulators(self.k, self.degree, target, acc).coeffs;
        }
        SymFunc {
            k: self.k,
            degree: self.degree,
            basis: target,
            coeffs: current,
        }
    }

    pub fn in_basis(&self, target: Basis) -> SymFunc {
        if self.basis == target {
            self.clone()
        } else {
            self.change_basis(target)
        }
    }

    pub fn to_powersum(&self) -> SymFunc {
        self.in_basis(Basis::PowerSum)
    }

    pub fn to_schur(&self) -> SymFunc {
        self.in_basis(Basis::Schur)
    }

    /// Product in `Λ`; the result is expressed in the basis of `self`.
    pub fn multiply(&self, other: &SymFunc) -> Result<SymFunc> {
        self.check_compatible(other)?;
        let a = self.to_powersum();
        let b = other.to_powersum();
        let product = powersum_product(&a, &b);
        Ok(product.in_basis(self.basis))
    }

    /// Hall pairing extended multiplicatively over the alphabets.
    pub fn hall_pairing(&self, other: &SymFunc) -> Result<Rat> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Rat::zero());
        }
        if self.degree != other.degree {
            return Err(Error::SizeMismatch(format!(
                "cannot pair degree {} with degree {}",
                self.degree, other.degree
            )));
        }
        let other = other.in_basis(self.basis);
        let mut acc = RatAccumulator::default();
        for (key, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(key) {
                match self.basis {
                    Basis::Schur => acc.add_product(c, d),
                    Basis::PowerSum => {
                        let z: BigInt = key.components().iter().map(Partition::z).product();
                        acc.add_product(&c.scale_int(z), d);
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// Adams operation `ψ_m`: `p_r -> p_{mr}` in every alphabet, `q -> q^m`,
    /// `u -> u^m`. The degree is multiplied by `m`.
    pub fn adams(&self, m: usize) -> SymFunc {
        let p = self.to_powersum();
        let mut out = SymFunc::zero(self.k, self.degree * m, Basis::PowerSum);
        for (key, c) in &p.coeffs {
            let scaled = key.components().iter().map(|lam| lam.scaled(m)).collect();
            out.add_term(MultiPartition::from_parts_unchecked(scaled), c.raise_vars(m as u32));
        }
        out.in_basis(self.basis)
    }

    /// `f(x_1) ⊗ … ⊗ f_k(x_k)` from single-alphabet factors of equal degree.
    pub fn tensor(factors: &[SymFunc]) -> Result<SymFunc> {
        let degree = factors.first().map_or(0, |f| f.degree);
        let mut current: BTreeMap<Vec<Partition>, Rat> = BTreeMap::new();
        current.insert(Vec::new(), Rat::one());
        for f in factors {
            if f.k != 1 {
                return Err(Error::AlphabetMismatch(1, f.k));
            }
            if f.degree != degree {
                return Err(Error::SizeMismatch("tensor factors must share a degree".into()));
            }
            let f = f.to_powersum();
            let mut next = BTreeMap::new();
            for (prefix, c) in &current {
                for (key, d) in &f.coeffs {
                    let mut v = prefix.clone();
                    v.push(key.components()[0].clone());
                    next.insert(v, c * d);
                }
            }
            current = next;
        }
        let mut out = SymFunc::zero(factors.len(), degree, Basis::PowerSum);
        for (key, c) in current {
            out.add_term(MultiPartition::from_parts_unchecked(key), c);
        }
        Ok(out)
    }
}

/// Product of two power-sum elements; keys concatenate per alphabet.
pub(crate) fn powersum_product(a: &SymFunc, b: &SymFunc) -> SymFunc {
    debug_assert!(a.basis == Basis::PowerSum && b.basis == Basis::PowerSum);
    let mut acc: BTreeMap<MultiPartition, RatAccumulator> = BTreeMap::new();
    for (ka, ca) in &a.coeffs {
        for (kb, cb) in &b.coeffs {
            let key = ka
                .components()
                .iter()
                .zip(kb.components())
                .map(|(x, y)| x.union(y))
                .collect();
            acc.entry(MultiPartition::from_parts_unchecked(key))
                .or_default()
                .add_product(ca, cb);
        }
    }
    SymFunc::from_accumulators(a.k, a.degree + b.degree, Basis::PowerSum, acc)
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let sym = match self.basis {
            Basis::PowerSum => "p",
            Basis::Schur => "s",
        };
        let pieces: Vec<String> = self
            .coeffs
            .iter()
            .map(|(key, c)| format!("({c})*{sym}[{key}]"))
            .collect();
        f.write_str(&pieces.join(" + "))
    }
}
