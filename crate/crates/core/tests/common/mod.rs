//! Oracles shared by the integration tests.

use std::collections::HashMap;

use tensormult_core::arith::Poly;
use tensormult_core::partition::Partition;

/// Lusztig's q-analogue of Kostant's partition function,
/// `K_{λμ}(t) = Σ_w ε(w) P_t(w(λ+ρ) - (μ+ρ))`.
pub fn lusztig_kostka(lam: &Partition, mu: &Partition) -> Poly {
    let l = mu.len();
    if lam.len() > l {
        return Poly::zero();
    }
    let pad = |p: &Partition| -> Vec<i64> {
        (0..l).map(|i| p.parts().get(i).copied().unwrap_or(0) as i64).collect()
    };
    let rho: Vec<i64> = (0..l).map(|i| (l - i) as i64).collect();
    let lr: Vec<i64> = pad(lam).iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mr: Vec<i64> = pad(mu).iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut memo = HashMap::new();
    let mut total = Poly::zero();
    for (perm, sign) in permutations(l) {
        let gamma: Vec<i64> = (0..l).map(|i| lr[perm[i]] - mr[i]).collect();
        let v = kostant(&gamma, &mut memo);
        total += if sign > 0 { v } else { -v };
    }
    total
}

fn kostant(gamma: &[i64], memo: &mut HashMap<Vec<i64>, Poly>) -> Poly {
    if gamma.len() <= 1 {
        return if gamma.iter().all(|&g| g == 0) { Poly::one() } else { Poly::zero() };
    }
    if gamma[0] < 0 || gamma.iter().sum::<i64>() != 0 {
        return Poly::zero();
    }
    if let Some(v) = memo.get(gamma) {
        return v.clone();
    }
    let g = gamma[0] as usize;
    let rest = gamma.len() - 1;
    let mut total = Poly::zero();
    for split in compositions(g, rest) {
        let next: Vec<i64> = (0..rest).map(|j| gamma[j + 1] + split[j] as i64).collect();
        let k = kostant(&next, memo);
        if !k.is_zero() {
            total += &k * &Poly::q_pow(g as u32);
        }
    }
    memo.insert(gamma.to_vec(), total.clone());
    total
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(total - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn permutations(l: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, l: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == l {
            let mut inv = 0;
            for i in 0..l {
                for j in i + 1..l {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..l {
            if !cur.contains(&x) {
                cur.push(x);
                rec(cur, l, out);
                cur.pop();
            }
        }
    }
    rec(&mut Vec::new(), l, &mut out);
    out
}

