//! gcd in `Z[q, u]` by primitive pseudo-remainder sequences.
//!
//! Bivariate inputs are viewed as polynomials in `u` with coefficients in
//! `Z[q]`; the coefficient ring gcd is itself a univariate primitive PRS.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// Dense univariate polynomial over `Z`, index = degree, no trailing zeros.
type Dense = Vec<BigInt>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(a: Dense) -> Dense {
    let c = content(&a);
    if c.is_zero() || c.is_one() {
        return a;
    }
    a.into_iter().map(|x| x / &c).collect()
}

fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn dense_sub(a: &[BigInt], b: &[BigInt]) -> Dense {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trim(out)
}

/// Exact division in `Z[x]`; the caller guarantees divisibility.
fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lb;
        debug_assert!((&rem[dr] % lb).is_zero());
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    debug_assert!(rem.is_empty());
    trim(quot)
}

/// Pseudo-remainder of `a` by `b` in `Z[x]`.
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r = trim(r);
    }
    r
}

/// Normalized gcd in `Z[x]`: positive leading coefficient.
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() {
        return normalize_sign(b.to_vec());
    }
    if b.is_empty() {
        return normalize_sign(a.to_vec());
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = dense_prem(&x, &y);
        x = y;
        y = primitive(r);
        if y.is_empty() {
            break;
        }
    }
    let g = if y.is_empty() { x } else { vec![BigInt::one()] };
    normalize_sign(g.into_iter().map(|v| v * &c).collect())
}

fn normalize_sign(a: Dense) -> Dense {
    if a.last().is_some_and(|c| c.is_negative()) {
        a.into_iter().map(|c| -c).collect()
    } else {
        a
    }
}

/// Polynomial in `u` with coefficients in `Z[q]`, index = `u` degree.
type Bivar = Vec<Dense>;

fn to_bivar(p: &Poly) -> Bivar {
    let ud = p.u_degree().unwrap_or(0) as usize;
    let qd = p.q_degree().unwrap_or(0) as usize;
    let mut out = vec![vec![BigInt::zero(); qd + 1]; ud + 1];
    for ((a, b), c) in p.terms() {
        out[b as usize][a as usize] = c.clone();
    }
    out.into_iter().map(trim).collect::<Vec<_>>()
}

fn from_bivar(b: &Bivar) -> Poly {
    let mut terms = Vec::new();
    for (ud, coeffs) in b.iter().enumerate() {
        for (qd, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.push((c.clone(), qd as u32, ud as u32));
            }
        }
    }
    Poly::from_terms(terms)
}

fn bivar_trim(mut a: Bivar) -> Bivar {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

fn bivar_content(a: &Bivar) -> Dense {
    let mut g: Dense = Vec::new();
    for c in a {
        g = dense_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn bivar_primitive(a: Bivar) -> Bivar {
    let c = bivar_content(&a);
    if c.is_empty() || (c.len() == 1 && c[0].is_one()) {
        return a;
    }
    a.into_iter().map(|x| dense_div_exact(&x, &c)).collect()
}

fn bivar_prem(a: &Bivar, b: &Bivar) -> Bivar {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = dense_mul(c, lb);
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = dense_sub(&r[shift + j], &dense_mul(&lr, y));
        }
        r = bivar_trim(r);
    }
    r
}

/// gcd of two polynomials in `Z[q, u]`, normalized so that its content is
/// positive-primitive up to the integer gcd and its leading coefficient
/// (canonical order) is positive.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    let ua = a.u_degree().unwrap_or(0);
    let ub = b.u_degree().unwrap_or(0);
    if ua == 0 && ub == 0 {
        let g = dense_gcd(&to_bivar(a).swap_remove(0), &to_bivar(b).swap_remove(0));
        return Poly::from_q_coeffs(&g);
    }
    let (x, y) = (bivar_trim(to_bivar(a)), bivar_trim(to_bivar(b)));
    let c = dense_gcd(&bivar_content(&x), &bivar_content(&y));
    let (mut x, mut y) = (bivar_primitive(x), bivar_primitive(y));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = bivar_prem(&x, &y);
        x = y;
        y = bivar_primitive(r);
        if y.is_empty() {
            break;
        }
    }
    let g = if y.is_empty() { x } else { vec![vec![BigInt::one()]] };
    let g: Bivar = g.into_iter().map(|coef| dense_mul(&coef, &c)).collect();
    normalize(from_bivar(&g))
}

fn normalize(p: Poly) -> Poly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}
