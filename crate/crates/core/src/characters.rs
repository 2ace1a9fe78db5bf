//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, Kronecker coefficients, and the Schur/power-sum transition.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, MultiPartition, Partition};

/// Full character table of `S_n`.
///
/// Rows are shapes, columns cycle types, both in the order of
/// [`enumerate_partitions`].
#[derive(Debug)]
pub struct CharTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
    z: Vec<BigInt>,
}

fn table_cache() -> &'static RwLock<HashMap<usize, Arc<CharTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl CharTable {
    /// The cached table for `S_n`, built on first use.
    pub fn get(n: usize) -> Arc<CharTable> {
        if let Some(t) = table_cache().read().unwrap().get(&n) {
            return t.clone();
        }
        let table = Arc::new(CharTable::build(n));
        table_cache()
            .write()
            .unwrap()
            .entry(n)
            .or_insert(table)
            .clone()
    }

    fn build(n: usize) -> CharTable {
        let partitions = enumerate_partitions(n);
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lam| {
                partitions
                    .iter()
                    .map(|rho| mn_value(lam, rho.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let z = partitions.iter().map(Partition::z).collect();
        CharTable {
            n,
            partitions,
            index,
            values,
            z,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `χ^λ_ρ` by table indices.
    pub fn value_at(&self, shape: usize, class: usize) -> i64 {
        self.values[shape][class]
    }

    /// `z_ρ` by table index.
    pub fn z_at(&self, class: usize) -> &BigInt {
        &self.z[class]
    }

    pub fn value(&self, shape: &Partition, class: &Partition) -> Result<i64> {
        let s = self.lookup(shape)?;
        let c = self.lookup(class)?;
        Ok(self.values[s][c])
    }

    fn lookup(&self, p: &Partition) -> Result<usize> {
        self.index_of(p).ok_or_else(|| {
            Error::SizeMismatch(format!("{p} is not a partition of {}", self.n))
        })
    }
}

/// Murnaghan–Nakayama recursion on beta-sets: strip a rim hook of length
/// `classes[0]` from `shape` in every possible way.
fn mn_value(shape: &Partition, classes: &[usize], memo: &mut HashMap<(Partition, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = classes.split_first() else {
        return if shape.is_empty() { 1 } else { 0 };
    };
    let key = (shape.clone(), classes.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = shape.len();
    let beta: Vec<usize> = (0..len).map(|i| shape.parts()[i] + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, c| c.cmp(a));
        let reduced = Partition::new(
            next.iter()
                .enumerate()
                .map(|(j, &x)| x + j + 1 - len)
                .collect(),
        );
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(&reduced, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `χ^λ_ρ`.
pub fn character_value(shape: &Partition, class: &Partition) -> Result<i64> {
    if shape.size() != class.size() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} has size {} but class {class} has size {}",
            shape.size(),
            class.size()
        )));
    }
    CharTable::get(shape.size()).value(shape, class)
}

/// `<χ^{μ¹} ⊗ … ⊗ χ^{μᵏ}, 1>_{S_n} = Σ_ρ z_ρ⁻¹ ∏ χ^{μⁱ}_ρ`.
pub fn kronecker(mu: &MultiPartition) -> Result<BigInt> {
    let n = mu.size();
    let table = CharTable::get(n);
    let rows = mu
        .components()
        .iter()
        .map(|p| table.lookup(p))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigRational::zero();
    for c in 0..table.partitions.len() {
        let prod: BigInt = rows.iter().map(|&r| BigInt::from(table.values[r][c])).product();
        total += BigRational::new(prod, table.z[c].clone());
    }
    if !total.is_integer() {
        return Err(Error::Internal(format!("non-integral Kronecker coefficient for {mu}")));
    }
    Ok(total.to_integer())
}

/// Coefficients of `s_λ = Σ_ρ z_ρ⁻¹ χ^λ_ρ p_ρ`, zero coefficients omitted.
pub fn schur_to_powersum(shape: &Partition) -> Vec<(Partition, BigRational)> {
    let table = CharTable::get(shape.size());
    let row = table.index_of(shape).expect("shape is a partition of its size");
    table
        .partitions
        .iter()
        .enumerate()
        .filter(|(c, _)| table.values[row][*c] != 0)
        .map(|(c, rho)| {
            (
                rho.clone(),
                BigRational::new(BigInt::from(table.values[row][c]), table.z[c].clone()),
            )
        })
        .collect()
}

/// Coefficients of `p_ρ = Σ_λ χ^λ_ρ s_λ`, zero coefficients omitted.
pub fn powersum_to_schur(class: &Partition) -> Vec<(Partition, i64)> {
    let table = CharTable::get(class.size());
    let col = table.index_of(class).expect("class is a partition of its size");
    table
        .partitions
        .iter()
        .enumerate()
        .filter(|(r, _)| table.values[*r][col] != 0)
        .map(|(r, lam)| (lam.clone(), table.values[r][col]))
        .collect()
}

/// Degree `χ^λ(1)`.
pub fn dimension(shape: &Partition) -> u64 {
    character_value(shape, &Partition::column(shape.size()))
        .expect("sizes agree")
        .to_u64()
        .expect("dimensions are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=6 {
            for rho in enumerate_partitions(n) {
                assert_eq!(character_value(&p(&[n]), &rho).unwrap(), 1);
                assert_eq!(character_value(&Partition::column(n), &rho).unwrap(), rho.sign());
            }
        }
        assert_eq!(character_value(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(matches!(character_value(&p(&[2, 1]), &p(&[2])), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn orthogonality() {
        for n in 1..=8 {
            let t = CharTable::get(n);
            let m = t.partitions().len();
            for a in 0..m {
                for b in 0..m {
                    let row: BigRational = (0..m)
                        .map(|c| {
                            BigRational::new(
                                BigInt::from(t.value_at(a, c) * t.value_at(b, c)),
                                t.z_at(c).clone(),
                            )
                        })
                        .sum();
                    let col: i64 = (0..m).map(|s| t.value_at(s, a) * t.value_at(s, b)).sum();
                    if a == b {
                        assert!(row.is_one());
                        assert_eq!(BigInt::from(col), *t.z_at(a));
                    } else {
                        assert!(row.is_zero());
                        assert_eq!(col, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn dimensions_match_hook_length_formula() {
        for n in 1..=8 {
            let fact: u64 = (1..=n as u64).product();
            for lam in enumerate_partitions(n) {
                let hooks: u64 = lam.hooks().iter().map(|&h| h as u64).product();
                assert_eq!(dimension(&lam), fact / hooks);
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        let mp = |s: &str| MultiPartition::parse(s).unwrap();
        assert_eq!(kronecker(&mp("4,4,4")).unwrap(), BigInt::from(1));
        assert_eq!(kronecker(&mp("1^4,1^4,4")).unwrap(), BigInt::from(1));
        assert_eq!(kronecker(&mp("2.1,2.1,2.1")).unwrap(), BigInt::from(1));
    }

    #[test]
    fn kronecker_symmetries() {
        for n in 1..=6 {
            for mu in crate::partition::enumerate_multipartitions(n, 3) {
                let k = kronecker(&mu).unwrap();
                assert!(k >= BigInt::zero());
                let c = mu.components();
                let swapped = MultiPartition::new(vec![c[1].clone(), c[2].clone(), c[0].clone()]).unwrap();
                assert_eq!(kronecker(&swapped).unwrap(), k);
                let twisted = MultiPartition::new(vec![c[0].dual(), c[1].dual(), c[2].clone()]).unwrap();
                assert_eq!(kronecker(&twisted).unwrap(), k);
            }
        }
    }

    #[test]
    fn transition_examples() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(schur_to_powersum(&p(&[1])), vec![(p(&[1]), BigRational::one())]);
        assert_eq!(
            schur_to_powersum(&p(&[2])),
            vec![(p(&[2]), half.clone()), (p(&[1, 1]), half.clone())]
        );
        assert_eq!(
            schur_to_powersum(&p(&[1, 1])),
            vec![(p(&[2]), -half.clone()), (p(&[1, 1]), half)]
        );
        assert_eq!(powersum_to_schur(&p(&[2])), vec![(p(&[2]), 1), (p(&[1, 1]), -1)]);
    }
}
