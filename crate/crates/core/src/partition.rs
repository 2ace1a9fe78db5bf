//! Integer partitions, multipartitions and the polynomials attached to them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::Poly;
use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. The empty list is the
/// partition of zero.
///
/// The derived ordering is lexicographic on the part list, so
/// `(1,1,1) < (2,1) < (3)`. This is the row order used for tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(n)`
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// `(1^n)`
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Conjugate partition.
    pub fn dual(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// `n(λ) = Σ (i-1) λ_i`
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Centralizer order of a permutation of cycle type `λ`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (p, m) in self.multiplicities() {
            for j in 1..=m {
                z *= BigInt::from(p) * BigInt::from(j);
            }
        }
        z
    }

    /// Sign of a permutation of cycle type `λ`.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Each part multiplied by `d`.
    pub fn scaled(&self, d: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * d).collect())
    }

    /// Union of parts (multiset sum).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let dual = self.dual();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j - 1 + dual.0[j] - i - 1 + 1);
            }
        }
        out
    }

    /// Order of the centralizer in `GL_n(F_q)` of a unipotent element with
    /// Jordan type `λ`:
    /// `q^{|λ| + 2n(λ) - Σ m_i(m_i+1)/2} ∏_i ∏_{j ≤ m_i} (q^j - 1)`.
    pub fn a_poly(&self) -> Poly {
        let mut shift = self.size() + 2 * self.n_stat();
        let mut out = Poly::one();
        for (_, m) in self.multiplicities() {
            shift -= m * (m + 1) / 2;
            for j in 1..=m {
                out = &out * &(Poly::q_pow(j as u32) - Poly::one());
            }
        }
        out.shift(shift as u32, 0)
    }

    /// `H_λ(q) = ∏_{s ∈ λ} (q^{h(s)} - 1)`
    pub fn hook_poly(&self) -> Poly {
        self.hooks()
            .into_iter()
            .fold(Poly::one(), |acc, h| &acc * &(Poly::q_pow(h as u32) - Poly::one()))
    }

    /// Degree of the unipotent character of `GL_n(F_q)` labelled by `λ`:
    /// `q^{n(λ)} ∏_{i ≤ n} (q^i - 1) / H_λ(q)`.
    pub fn unipotent_degree(&self) -> Result<Poly> {
        let n = self.size();
        let top = (1..=n).fold(Poly::q_pow(self.n_stat() as u32), |acc, i| {
            &acc * &(Poly::q_pow(i as u32) - Poly::one())
        });
        top.divide(&self.hook_poly())
            .map_err(|_| Error::Internal(format!("hook polynomial of {self} does not divide")))
    }

    /// Parses a single partition in dot form (`2.1^2`), comma form (`2,1,1`)
    /// or `0` for the empty partition.
    pub fn parse(text: &str) -> Result<Partition> {
        parse_partition_at(text, 0, true)
    }
}

/// Parses `text` (located at byte `offset` of some larger input) as a
/// partition. When `allow_comma` is false only the dot form is accepted.
pub(crate) fn parse_partition_at(text: &str, offset: usize, allow_comma: bool) -> Result<Partition> {
    let err = |pos: usize, msg: &str| Error::Parse {
        pos: offset + pos,
        msg: msg.to_string(),
    };
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(err(0, "empty partition literal"));
    }
    if trimmed == "0" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    let mut pos = lead;
    for piece in trimmed.split(|c| c == '.' || (allow_comma && c == ',')) {
        let (base, exp) = match piece.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (piece, None),
        };
        let value: usize = base
            .trim()
            .parse()
            .map_err(|_| err(pos, &format!("expected a positive part, found {base:?}")))?;
        if value == 0 {
            return Err(err(pos, "parts must be positive"));
        }
        let count: usize = match exp {
            Some(e) => e
                .trim()
                .parse()
                .map_err(|_| err(pos + base.len() + 1, &format!("bad exponent {e:?}")))?,
            None => 1,
        };
        parts.extend(std::iter::repeat_n(value, count));
        pos += piece.len() + 1;
    }
    let p = Partition::new(parts.clone());
    if p.0 != parts {
        return Err(err(lead, "parts must be weakly decreasing"));
    }
    Ok(p)
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl fmt::Display for Partition {
    /// Dot form with exponents, e.g. `2.1^2`; `0` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let pieces: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(p, m)| if m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        f.write_str(&pieces.join("."))
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first and
/// `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A `k`-tuple of partitions of a common size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if let Some(first) = components.first() {
            let n = first.size();
            if let Some(bad) = components.iter().find(|p| p.size() != n) {
                return Err(Error::SizeMismatch(format!(
                    "component {bad} has size {} but {first} has size {n}",
                    bad.size()
                )));
            }
        }
        Ok(MultiPartition(components))
    }

    /// Internal constructor for callers that already guarantee equal sizes.
    pub(crate) fn from_parts_unchecked(components: Vec<Partition>) -> Self {
        MultiPartition(components)
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Common size `n` (zero for `k = 0`).
    pub fn size(&self) -> usize {
        self.0.first().map_or(0, Partition::size)
    }

    pub fn dual(&self) -> MultiPartition {
        MultiPartition(self.0.iter().map(Partition::dual).collect())
    }

    /// Components sorted ascending; the representative used in tables.
    pub fn sorted(&self) -> MultiPartition {
        let mut c = self.0.clone();
        c.sort();
        MultiPartition(c)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Parses components separated by `,` or `;`, each in dot form,
    /// e.g. `1^4,2.1^2,2^2`.
    pub fn parse(text: &str) -> Result<MultiPartition> {
        let mut comps = Vec::new();
        let mut offset = 0;
        for piece in text.split([',', ';']) {
            comps.push(parse_partition_at(piece, offset, false)?);
            offset += piece.len() + 1;
        }
        MultiPartition::new(comps)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&pieces.join(","))
    }
}

/// All `k`-tuples of partitions of `n`, in lexicographic order of the tuple
/// of indices into [`enumerate_partitions`].
pub fn enumerate_multipartitions(n: usize, k: usize) -> Vec<MultiPartition> {
    let parts = enumerate_partitions(n);
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for prefix in &out {
            for p in &parts {
                let mut v: Vec<Partition> = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(MultiPartition).collect()
}

/// Multipartitions with weakly increasing components (ascending partition
/// order), in lexicographic order. These are the rows of tables.
pub fn sorted_multipartitions(n: usize, k: usize) -> Vec<MultiPartition> {
    let mut parts = enumerate_partitions(n);
    parts.sort();
    fn rec(parts: &[Partition], start: usize, k: usize, cur: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
        if cur.len() == k {
            out.push(MultiPartition(cur.clone()));
            return;
        }
        for i in start..parts.len() {
            cur.push(parts[i].clone());
            rec(parts, i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&parts, 0, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p(&[2, 1]).dual(), p(&[2, 1]));
        assert_eq!(p(&[4]).dual(), Partition::column(4));
        assert_eq!(p(&[3, 1]).dual(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().dual(), Partition::empty());
    }

    #[test]
    fn dual_is_involutive() {
        for n in 0..=8 {
            for lam in enumerate_partitions(n) {
                assert_eq!(lam.dual().dual(), lam);
            }
        }
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(p(&[5]).n_stat(), 0);
        assert_eq!(Partition::column(5).n_stat(), 10);
        assert_eq!(p(&[2, 2]).n_stat(), 2);
    }

    #[test]
    fn n_stat_of_dual_counts_row_pairs() {
        // n(λ*) + |λ| = Σ λ_i(λ_i+1)/2
        for n in 0..=6 {
            for lam in enumerate_partitions(n) {
                let rows: usize = lam.parts().iter().map(|l| l * (l + 1) / 2).sum();
                assert_eq!(lam.dual().n_stat() + n, rows);
            }
        }
    }

    #[test]
    fn z_examples_and_class_equation() {
        assert_eq!(Partition::column(4).z(), BigInt::from(24));
        assert_eq!(p(&[4]).z(), BigInt::from(4));
        assert_eq!(p(&[2, 1]).z(), BigInt::from(2));
        for n in 1..=8usize {
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            let total: BigInt = enumerate_partitions(n).iter().map(|l| &fact / l.z()).sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn centralizer_orders() {
        let q = Poly::q();
        let one = Poly::one();
        assert_eq!(p(&[1]).a_poly(), &q - &one);
        assert_eq!(p(&[1, 1]).a_poly(), (q.pow(2) - one.clone()) * (q.pow(2) - q.clone()));
        assert_eq!(p(&[2]).a_poly(), &q * &(&q - &one));
        for n in 1..=6 {
            for lam in enumerate_partitions(n) {
                for v in [2, 3, 5] {
                    assert!(lam.a_poly().eval(v, 0) > BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn hook_polynomials() {
        let h = |e: u32| Poly::q_pow(e) - Poly::one();
        assert_eq!(Partition::column(3).hook_poly(), h(1) * h(2) * h(3));
        assert_eq!(p(&[2]).hook_poly(), h(2) * h(1));
        assert_eq!(p(&[2, 1]).hook_poly(), h(3) * h(1) * h(1));
    }

    #[test]
    fn unipotent_degrees() {
        assert_eq!(p(&[4]).unipotent_degree().unwrap(), Poly::one());
        assert_eq!(Partition::column(4).unipotent_degree().unwrap(), Poly::q_pow(6));
        assert_eq!(p(&[2, 1]).unipotent_degree().unwrap(), Poly::q_pow(2) + Poly::q());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(6).len(), 11);
        let four = enumerate_partitions(4);
        assert_eq!(four.first(), Some(&p(&[4])));
        assert_eq!(four.last(), Some(&Partition::column(4)));
        assert!(four.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn text_syntax() {
        assert_eq!(Partition::parse("2.1^2").unwrap(), p(&[2, 1, 1]));
        assert_eq!(Partition::parse("1^4").unwrap(), Partition::column(4));
        assert_eq!(Partition::parse("5").unwrap(), p(&[5]));
        assert_eq!(Partition::parse("0").unwrap(), Partition::empty());
        assert_eq!(Partition::parse("2,1,1").unwrap(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1, 1]).to_string(), "2.1^2");
        assert_eq!(p(&[3, 2]).to_string(), "3.2");
        assert!(matches!(Partition::parse("1.2"), Err(Error::Parse { .. })));
        assert!(matches!(Partition::parse("2.x"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn multipartition_syntax() {
        let mu = MultiPartition::parse("1^4,2.1^2,2^2").unwrap();
        assert_eq!(mu.components()[1], p(&[2, 1, 1]));
        assert_eq!(mu.to_string(), "1^4,2.1^2,2^2");
        assert!(matches!(MultiPartition::parse("1^4,2.1"), Err(Error::SizeMismatch(_))));
        match MultiPartition::parse("1^2,1^2,z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sorted_rows() {
        let rows = sorted_multipartitions(2, 3);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].to_string(), "1^2,1^2,1^2");
        assert_eq!(rows[3].to_string(), "2,2,2");
        assert_eq!(enumerate_multipartitions(3, 2).len(), 9);
    }
}
