//! Types `ω = {(d_i, ω^i)^{m_i}}`, their statistics, the coefficients `c°_τ`
//! and the Schur expansion of `s_ω`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::hall_littlewood::{extend_to_type, schur_family};
use crate::partition::{enumerate_partitions, parse_partition_at, MultiPartition, Partition};
use crate::symfunc::{mobius, SymFunc};

/// One entry `(d, λ)^m` of a type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeEntry {
    pub d: usize,
    pub lambda: Partition,
    pub m: usize,
}

/// A finitely supported map `(d, λ) -> m` with `λ` nonempty. Entries are
/// kept sorted by `(d, λ)` with equal keys merged.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Type {
    entries: Vec<TypeEntry>,
}

impl Type {
    /// Builds a type from `(d, λ, m)` triples, merging repeated `(d, λ)`.
    pub fn new<I: IntoIterator<Item = (usize, Partition, usize)>>(items: I) -> Result<Self> {
        let mut map: BTreeMap<(usize, Partition), usize> = BTreeMap::new();
        for (d, lambda, m) in items {
            if d == 0 {
                return Err(Error::InvalidArgument("type degree d must be positive".into()));
            }
            if lambda.is_empty() {
                return Err(Error::InvalidArgument("type partitions must be nonempty".into()));
            }
            if m == 0 {
                continue;
            }
            *map.entry((d, lambda)).or_default() += m;
        }
        if map.is_empty() {
            return Err(Error::InvalidArgument("a type needs at least one entry".into()));
        }
        Ok(Type {
            entries: map
                .into_iter()
                .map(|((d, lambda), m)| TypeEntry { d, lambda, m })
                .collect(),
        })
    }

    /// The type `{(1, μ)^1}` of a partition.
    pub fn from_partition(mu: &Partition) -> Result<Self> {
        Type::new([(1, mu.clone(), 1)])
    }

    /// The regular semisimple type `[λ] = {(λ_i, (1))^{m_i}}`.
    pub fn regular_semisimple(lam: &Partition) -> Result<Self> {
        Type::new(lam.parts().iter().map(|&p| (p, Partition::row(1), 1)))
    }

    pub fn entries(&self) -> &[TypeEntry] {
        &self.entries
    }

    /// `|ω| = Σ m_i d_i |ω^i|`
    pub fn size(&self) -> usize {
        self.entries.iter().map(|e| e.m * e.d * e.lambda.size()).sum()
    }

    /// `n(ω) = Σ m_i d_i n(ω^i)`
    pub fn n_stat(&self) -> usize {
        self.entries.iter().map(|e| e.m * e.d * e.lambda.n_stat()).sum()
    }

    fn weight(&self) -> usize {
        self.entries.iter().map(|e| e.m * e.lambda.size()).sum()
    }

    /// `r(ω) = n + Σ m_i |ω^i|`
    pub fn r_stat(&self) -> usize {
        self.size() + self.weight()
    }

    /// `r'(ω) = ⌈n/2⌉ + Σ m_i |ω^i|`
    pub fn r_prime(&self) -> usize {
        self.size().div_ceil(2) + self.weight()
    }

    /// Number of entries counted with multiplicity, `Σ m_i`; the `r` of `c°_τ`.
    pub fn entry_count(&self) -> usize {
        self.entries.iter().map(|e| e.m).sum()
    }

    pub fn dual(&self) -> Type {
        Type::new(self.entries.iter().map(|e| (e.d, e.lambda.dual(), e.m))).expect("dual of a valid type")
    }

    /// Returns `Some(μ)` when the type is `{(1, μ)^1}`.
    pub fn as_partition(&self) -> Option<&Partition> {
        match self.entries.as_slice() {
            [TypeEntry { d: 1, lambda, m: 1 }] => Some(lambda),
            _ => None,
        }
    }

    /// `c°_τ = (-1)^{r-1} μ(d) (r-1)! / (d ∏ m_i!)` when every `d_i = d`,
    /// with `r = Σ m_i`; zero otherwise.
    pub fn c_tau(&self) -> BigRational {
        let d = self.entries[0].d;
        if self.entries.iter().any(|e| e.d != d) {
            return BigRational::zero();
        }
        let r = self.entry_count();
        let fact = |m: usize| -> BigInt { (1..=m).map(BigInt::from).product() };
        let sign = if (r - 1).is_multiple_of(2) { 1 } else { -1 };
        let num = fact(r - 1) * BigInt::from(sign * mobius(d));
        let den = BigInt::from(d) * self.entries.iter().map(|e| fact(e.m)).product::<BigInt>();
        BigRational::new(num, den)
    }

    /// `a_τ(q) = ∏ a_{τ^i}(q^{d_i})^{m_i}`
    pub fn a_poly(&self) -> Poly {
        let mut out = Poly::one();
        for e in &self.entries {
            let f = e.lambda.a_poly().raise_vars(e.d as u32);
            out = &out * &f.pow(e.m as u32);
        }
        out
    }

    /// `a'_τ(q) = (-1)^{|τ|} a_τ(-q)`
    pub fn a_prime_poly(&self) -> Poly {
        let p = self.a_poly().negate_q();
        if self.size().is_multiple_of(2) {
            p
        } else {
            -p
        }
    }

    /// `s_ω = ∏ s_{ω^i}(x^{d_i})^{m_i}` in the Schur basis.
    pub fn schur(&self) -> SymFunc {
        extend_to_type(schur_family, self).to_schur()
    }

    /// `c_ω(M_μ) = <s_ω, s_μ>`.
    pub fn c_omega(&self, mu: &Partition) -> Result<BigInt> {
        if mu.size() != self.size() {
            return Err(Error::SizeMismatch(format!(
                "type {self} has size {} but {mu} has size {}",
                self.size(),
                mu.size()
            )));
        }
        let c = self.schur().coeff(&MultiPartition::from_parts_unchecked(vec![mu.clone()]));
        schur_integer(&c.to_poly()?)
    }

    /// Integer Schur coefficients `(μ, c_ω(M_μ))`, zeros omitted.
    pub fn schur_coefficients(&self) -> Vec<(Partition, BigInt)> {
        self.schur()
            .terms()
            .map(|(key, c)| {
                let v = schur_integer(&c.to_poly().expect("integral")).expect("integral");
                (key.components()[0].clone(), v)
            })
            .collect()
    }
}

fn schur_integer(p: &Poly) -> Result<BigInt> {
    if !p.is_constant() {
        return Err(Error::Internal(format!("non-constant Schur coefficient {p}")));
    }
    Ok(p.constant_term())
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}:{}^{}", e.d, e.lambda, e.m))
            .collect();
        f.write_str(&pieces.join(";"))
    }
}

impl FromStr for Type {
    type Err = Error;

    /// Entries `d:parts^m` joined by `;`. The last `^m` of an entry is the
    /// multiplicity, so `1:1^2` is `(1,(1))^2` and `(1,(1^2))^1` is written
    /// `1:1^2^1`. Without any `^`, the multiplicity is 1.
    fn from_str(text: &str) -> Result<Self> {
        parse_type_at(text, 0)
    }
}

pub(crate) fn parse_type_at(text: &str, base: usize) -> Result<Type> {
    let mut items = Vec::new();
    let mut offset = base;
    for piece in text.split(';') {
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let colon = piece.find(':').ok_or_else(|| err(offset, "expected `d:parts^m`"))?;
        let d: usize = piece[..colon]
            .trim()
            .parse()
            .map_err(|_| err(offset, "invalid degree before `:`"))?;
        let body = &piece[colon + 1..];
        let body_offset = offset + colon + 1;
        let (parts, m) = match body.rfind('^') {
            Some(caret) => {
                let m: usize = body[caret + 1..]
                    .trim()
                    .parse()
                    .map_err(|_| err(body_offset + caret + 1, "invalid multiplicity"))?;
                (&body[..caret], m)
            }
            None => (body, 1),
        };
        let lambda = parse_partition_at(parts, body_offset, false)?;
        if m == 0 {
            return Err(err(body_offset, "multiplicity must be positive"));
        }
        items.push((d, lambda, m));
        offset += piece.len() + 1;
    }
    Type::new(items)
}

/// A `k`-tuple of types of a common size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiType(Vec<Type>);

impl MultiType {
    pub fn new(components: Vec<Type>) -> Result<Self> {
        if let Some(first) = components.first() {
            if let Some(bad) = components.iter().find(|t| t.size() != first.size()) {
                return Err(Error::SizeMismatch(format!(
                    "type {bad} has size {} but {first} has size {}",
                    bad.size(),
                    first.size()
                )));
            }
        }
        Ok(MultiType(components))
    }

    pub fn from_multipartition(mu: &MultiPartition) -> Result<Self> {
        MultiType::new(
            mu.components()
                .iter()
                .map(Type::from_partition)
                .collect::<Result<_>>()?,
        )
    }

    pub fn components(&self) -> &[Type] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.first().map_or(0, Type::size)
    }

    /// `r(ω) = Σ_i r(ω_i)`
    pub fn r_stat(&self) -> usize {
        self.0.iter().map(Type::r_stat).sum()
    }

    /// `r'(ω) = Σ_i r'(ω_i)`
    pub fn r_prime(&self) -> usize {
        self.0.iter().map(Type::r_prime).sum()
    }

    /// `n(ω*) = Σ_i n(ω_i*)`
    pub fn n_dual_stat(&self) -> usize {
        self.0.iter().map(|t| t.dual().n_stat()).sum()
    }

    pub fn as_multipartition(&self) -> Option<MultiPartition> {
        let parts: Option<Vec<Partition>> = self.0.iter().map(|t| t.as_partition().cloned()).collect();
        parts.map(MultiPartition::from_parts_unchecked)
    }

    /// Components joined by `,`, each in type syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let mut comps = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            comps.push(parse_type_at(piece, offset)?);
            offset += piece.len() + 1;
        }
        MultiType::new(comps)
    }
}

impl fmt::Display for MultiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        f.write_str(&pieces.join(","))
    }
}

/// All types of size `n`, sorted.
pub fn enumerate_types(n: usize) -> Vec<Type> {
    let mut atoms: Vec<(usize, Partition)> = Vec::new();
    for d in 1..=n {
        for s in 1..=n / d {
            for lam in enumerate_partitions(s) {
                atoms.push((d, lam));
            }
        }
    }
    atoms.sort();
    fn rec(
        atoms: &[(usize, Partition)],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, Partition, usize)>,
        out: &mut Vec<Type>,
    ) {
        if left == 0 {
            out.push(Type::new(cur.iter().cloned()).expect("nonempty"));
            return;
        }
        for i in start..atoms.len() {
            let (d, lam) = &atoms[i];
            let w = d * lam.size();
            for m in 1..=left / w {
                cur.push((*d, lam.clone(), m));
                rec(atoms, i + 1, left - m * w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(&atoms, 0, n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;
    use crate::characters::character_value;
    use num_traits::One;
    use crate::hall_littlewood::transformed_hl_powersum;
    use crate::symfunc::{Basis, GradedSeries};

    fn t(s: &str) -> Type {
        s.parse().unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn syntax_roundtrip() {
        assert_eq!(t("2:1^1;1:2.1^1").to_string(), "1:2.1^1;2:1^1");
        assert_eq!(t("1:1^2"), Type::new([(1, p(&[1]), 2)]).unwrap());
        assert_eq!(t("1:1^2^1"), Type::new([(1, p(&[1, 1]), 1)]).unwrap());
        assert_eq!(t("1:2.1"), Type::new([(1, p(&[2, 1]), 1)]).unwrap());
        assert_eq!(t("1:1^1;1:1^1"), t("1:1^2"));
        for n in 1..=4 {
            for ty in enumerate_types(n) {
                assert_eq!(t(&ty.to_string()), ty);
            }
        }
        assert!(matches!("x:1".parse::<Type>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("1:1;2:".parse::<Type>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn statistics() {
        let mu = t("1:2.1^1");
        assert_eq!((mu.r_stat(), mu.r_prime()), (6, 5));
        let w = t("2:1^1");
        assert_eq!((w.n_stat(), w.r_stat(), w.r_prime()), (0, 3, 2));
        let w = t("1:1^2");
        assert_eq!((w.r_stat(), w.r_prime(), w.entry_count()), (4, 3, 2));
        assert_eq!(t("1:1^3^1").n_stat(), 3);
        assert_eq!(t("2:1^2^1").n_stat(), 2);
    }

    #[test]
    fn dual_type() {
        assert_eq!(t("1:2").dual(), t("1:1^2^1"));
        assert_eq!(t("2:1").dual(), t("2:1"));
        for n in 1..=4 {
            for ty in enumerate_types(n) {
                assert_eq!(ty.dual().dual(), ty);
            }
        }
    }

    #[test]
    fn c_tau_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(t("1:2").c_tau(), r(1, 1));
        assert_eq!(t("2:1").c_tau(), r(-1, 2));
        assert_eq!(t("1:1;2:1").c_tau(), r(0, 1));
        assert_eq!(t("1:1^2").c_tau(), r(-1, 2));
        assert_eq!(t("1:1^1;1:2^1").c_tau(), r(-1, 1));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_types(1), vec![t("1:1")]);
        let two = enumerate_types(2);
        assert_eq!(two.len(), 4);
        for s in ["1:1^2", "2:1", "1:1^2^1", "1:2"] {
            assert!(two.contains(&t(s)), "{s}");
        }
        // Independent count: the generating function ∏_w (1 - T^w)^{-c_w}
        // with c_w = Σ_{d | w} p(w/d) atoms of weight w.
        let nmax = 7;
        let pcount: Vec<u64> = (0..=nmax).map(|s| enumerate_partitions(s).len() as u64).collect();
        let mut series = vec![0u64; nmax + 1];
        series[0] = 1;
        for w in 1..=nmax {
            let colours: u64 = (1..=w).filter(|d| w % d == 0).map(|d| pcount[w / d]).sum();
            for _ in 0..colours {
                for s in w..=nmax {
                    series[s] += series[s - w];
                }
            }
        }
        for (n, &count) in series.iter().enumerate().skip(1) {
            let ts = enumerate_types(n);
            assert_eq!(ts.len() as u64, count, "n = {n}");
            assert!(ts.iter().all(|x| x.size() == n));
            assert!(ts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn a_polys() {
        assert_eq!(t("1:1").a_prime_poly(), Poly::from_q_coeffs(&[1, 1]));
        let expected = &Poly::from_q_coeffs(&[-1, 0, 1]) * &Poly::from_q_coeffs(&[0, 1, 1]);
        assert_eq!(t("1:1^2^1").a_prime_poly(), expected);
        for n in 1..=5 {
            for ty in enumerate_types(n) {
                let a = ty.a_prime_poly();
                let (_, lead) = a.leading().unwrap();
                assert!(lead.sign() == num_bigint::Sign::Plus, "{ty}: {a}");
            }
        }
        assert_eq!(t("2:1").a_poly(), Poly::from_q_coeffs(&[-1, 0, 1]));
    }

    #[test]
    fn schur_of_type_examples() {
        assert_eq!(t("1:2.1").schur_coefficients(), vec![(p(&[2, 1]), BigInt::one())]);
        assert_eq!(t("2:1").c_omega(&p(&[2])).unwrap(), BigInt::one());
        assert_eq!(t("2:1").c_omega(&p(&[1, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(t("1:1^2").c_omega(&p(&[1, 1])).unwrap(), BigInt::one());
        assert!(matches!(t("2:1").c_omega(&p(&[1])), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn decomposition_duality() {
        // c_ω(M_{μ*}) = (-1)^{r(ω)} c_{ω*}(M_μ)
        for n in 1..=5 {
            for ty in enumerate_types(n) {
                let dual = ty.dual();
                for mu in enumerate_partitions(n) {
                    let lhs = ty.c_omega(&mu.dual()).unwrap();
                    let rhs = dual.c_omega(&mu).unwrap();
                    let rhs = if ty.r_stat() % 2 == 0 { rhs } else { -rhs };
                    assert_eq!(lhs, rhs, "{ty}, {mu}");
                }
            }
        }
    }

    #[test]
    fn regular_semisimple_types_give_characters() {
        for n in 1..=5 {
            for lam in enumerate_partitions(n) {
                let ty = Type::regular_semisimple(&lam).unwrap();
                let s = ty.schur();
                let mut norm = BigInt::zero();
                for mu in enumerate_partitions(n) {
                    let c = ty.c_omega(&mu).unwrap();
                    assert_eq!(c, BigInt::from(character_value(&mu, &lam).unwrap()));
                    norm += &c * &c;
                }
                assert_eq!(Rat::integer(norm), s.hall_pairing(&s).unwrap());
            }
        }
    }

    #[test]
    fn log_expansion_over_types() {
        // Log(Σ_λ u_λ T^{|λ|}) = Σ_τ c°_τ u_τ T^{|τ|} with u_λ = H̃_λ / a_λ
        let order = 4;
        let u = |lam: &Partition| -> SymFunc {
            transformed_hl_powersum(lam)
                .scale(&Rat::from_poly(lam.a_poly()).inv().unwrap())
        };
        let mut series = GradedSeries::one(1, order);
        for n in 1..=order {
            for lam in enumerate_partitions(n) {
                series.add_piece(u(&lam)).unwrap();
            }
        }
        let log = series.pleth_log().unwrap();
        for n in 1..=order {
            let mut expected = SymFunc::zero(1, n, Basis::PowerSum);
            for ty in enumerate_types(n) {
                let c = ty.c_tau();
                if c.is_zero() {
                    continue;
                }
                let term = extend_to_type(u, &ty).scale(&Rat::from_big_rational(&c));
                expected = expected.add(&term).unwrap();
            }
            assert_eq!(log.coeff(n), &expected, "degree {n}");
        }
    }
}
