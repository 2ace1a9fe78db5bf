//! Kostka–Foulkes polynomials via the charge statistic and the transformed
//! Hall–Littlewood functions `H̃_λ(x;q) = Σ_ν K̃_{νλ}(q) s_ν`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, MultiPartition, Partition};
use crate::symfunc::{Basis, SymFunc};
use crate::types::Type;

/// All `K_{νλ}(q)` for partitions of one `n`, keyed by `(ν, λ)`.
#[derive(Debug)]
struct KostkaTable {
    values: HashMap<(Partition, Partition), Poly>,
}

fn kostka_cache() -> &'static RwLock<HashMap<usize, Arc<KostkaTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<KostkaTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn kostka_table(n: usize) -> Arc<KostkaTable> {
    if let Some(t) = kostka_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let mut values = HashMap::new();
    for lam in enumerate_partitions(n) {
        let mut by_shape: HashMap<Partition, Poly> = HashMap::new();
        for tableau in tableaux_with_content(&lam) {
            let shape = Partition::new(tableau.iter().map(Vec::len).collect());
            let c = charge(&reading_word(&tableau));
            *by_shape.entry(shape).or_default() += Poly::q_pow(c as u32);
        }
        for (nu, k) in by_shape {
            values.insert((nu, lam.clone()), k);
        }
    }
    let table = Arc::new(KostkaTable { values });
    kostka_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(table)
        .clone()
}

/// Semistandard tableaux (as rows) with content `λ`, of every shape.
///
/// Built by adding a horizontal strip of `λ_i` copies of `i+1` at step `i`.
pub fn tableaux_with_content(content: &Partition) -> Vec<Vec<Vec<usize>>> {
    let mut current: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for (i, &count) in content.parts().iter().enumerate() {
        let letter = i + 1;
        let mut next = Vec::new();
        for t in &current {
            let shape: Vec<usize> = t.iter().map(Vec::len).collect();
            for strip in horizontal_strips(&shape, count) {
                let mut grown = t.clone();
                for (row, add) in strip.into_iter().enumerate() {
                    if add == 0 {
                        continue;
                    }
                    if row == grown.len() {
                        grown.push(Vec::new());
                    }
                    grown[row].extend(std::iter::repeat_n(letter, add));
                }
                next.push(grown);
            }
        }
        current = next;
    }
    current
}

/// Ways to add `count` boxes to `shape`, no two in one column; returns the
/// number of boxes added to each row (one extra row allowed at the bottom).
fn horizontal_strips(shape: &[usize], count: usize) -> Vec<Vec<usize>> {
    fn rec(shape: &[usize], row: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if row > shape.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let len = shape.get(row).copied().unwrap_or(0);
        let cap = if row == 0 { left } else { (shape[row - 1] - len).min(left) };
        for add in 0..=cap {
            cur.push(add);
            rec(shape, row + 1, left - add, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(shape, 0, count, &mut Vec::new(), &mut out);
    out
}

/// Rows read from the bottom row up, each left to right.
pub fn reading_word(tableau: &[Vec<usize>]) -> Vec<usize> {
    tableau.iter().rev().flatten().copied().collect()
}

/// Lascoux–Schützenberger charge of a word with partition content.
///
/// Standard subwords are extracted by scanning leftwards cyclically from the
/// rightmost unused `1`; each wrap-around raises the index by one.
pub fn charge(word: &[usize]) -> usize {
    let mut used = vec![false; word.len()];
    let mut total = 0;
    while let Some(start) = (0..word.len()).rev().find(|&i| !used[i] && word[i] == 1) {
        used[start] = true;
        let mut pos = start;
        let mut index = 0;
        let mut letter = 1;
        loop {
            letter += 1;
            let before = (0..pos).rev().find(|&i| !used[i] && word[i] == letter);
            let found = match before {
                Some(i) => Some(i),
                None => {
                    let after = (pos + 1..word.len()).rev().find(|&i| !used[i] && word[i] == letter);
                    if after.is_some() {
                        index += 1;
                    }
                    after
                }
            };
            let Some(i) = found else { break };
            used[i] = true;
            total += index;
            pos = i;
        }
    }
    total
}

fn check_sizes(nu: &Partition, lam: &Partition) -> Result<()> {
    if nu.size() != lam.size() {
        return Err(Error::SizeMismatch(format!(
            "{nu} has size {} but {lam} has size {}",
            nu.size(),
            lam.size()
        )));
    }
    Ok(())
}

/// `K_{νλ}(q) = Σ_{T ∈ SSYT(ν, λ)} q^{charge(T)}`.
pub fn kostka_foulkes(nu: &Partition, lam: &Partition) -> Result<Poly> {
    check_sizes(nu, lam)?;
    Ok(kostka_table(nu.size())
        .values
        .get(&(nu.clone(), lam.clone()))
        .cloned()
        .unwrap_or_default())
}

/// `K̃_{νλ}(q) = q^{n(λ)} K_{νλ}(q^{-1})`.
pub fn transformed_kostka(nu: &Partition, lam: &Partition) -> Result<Poly> {
    let k = kostka_foulkes(nu, lam)?;
    let top = lam.n_stat() as u32;
    let mut out = Poly::zero();
    for ((e, _), c) in k.terms() {
        if e > top {
            return Err(Error::Internal(format!(
                "K_{{{nu},{lam}}} has degree {e} above n(λ) = {top}"
            )));
        }
        out += Poly::monomial(c.clone(), top - e, 0);
    }
    Ok(out)
}

/// `H̃_λ` in the Schur and power-sum bases.
type HlCache = RwLock<HashMap<Partition, (Arc<SymFunc>, Arc<SymFunc>)>>;

fn hl_cache() -> &'static HlCache {
    static CACHE: OnceLock<HlCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn hl_entry(lam: &Partition) -> (Arc<SymFunc>, Arc<SymFunc>) {
    if let Some(e) = hl_cache().read().unwrap().get(lam) {
        return e.clone();
    }
    let n = lam.size();
    let terms = enumerate_partitions(n).into_iter().filter_map(|nu| {
        let c = transformed_kostka(&nu, lam).expect("sizes agree");
        (!c.is_zero()).then(|| (nu, Rat::from_poly(c)))
    });
    let schur = SymFunc::single(Basis::Schur, n, terms);
    let power = schur.to_powersum();
    let entry = (Arc::new(schur), Arc::new(power));
    hl_cache()
        .write()
        .unwrap()
        .entry(lam.clone())
        .or_insert(entry)
        .clone()
}

/// `H̃_λ(x;q)` in one alphabet, Schur basis.
pub fn transformed_hl(lam: &Partition) -> Arc<SymFunc> {
    hl_entry(lam).0
}

/// `H̃_λ(x;q)` in one alphabet, power-sum basis.
pub fn transformed_hl_powersum(lam: &Partition) -> Arc<SymFunc> {
    hl_entry(lam).1
}

/// Extends a one-alphabet family `u_λ(x;q)` to a type:
/// `u_ω = ∏_i u_{ω^i}(x^{d_i}; q^{d_i})^{m_i}`, returned in the power-sum basis.
pub fn extend_to_type(base: impl Fn(&Partition) -> SymFunc, omega: &Type) -> SymFunc {
    let mut out = SymFunc::scalar(1, Rat::one());
    for entry in omega.entries() {
        let factor = base(&entry.lambda).to_powersum().adams(entry.d);
        for _ in 0..entry.m {
            out = out.multiply(&factor).expect("single alphabet");
        }
    }
    out
}

/// Schur function family, for use with [`extend_to_type`].
pub fn schur_family(lam: &Partition) -> SymFunc {
    SymFunc::basis_element(Basis::Schur, MultiPartition::from_parts_unchecked(vec![lam.clone()]))
}

/// Kostka number `K_{νλ}(1)`.
pub fn kostka_number(nu: &Partition, lam: &Partition) -> Result<BigInt> {
    Ok(kostka_foulkes(nu, lam)?.eval(1, 0))
}
