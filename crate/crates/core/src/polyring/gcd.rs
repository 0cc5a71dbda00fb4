//! Greatest common divisors of bivariate polynomials.
//!
//! The polynomials are viewed in `K[v][u]`. Contents are gcds in `K[v]`
//! (plain Euclid); primitive parts go through a primitive pseudo-remainder
//! sequence in `u`. Results are normalized to graded-lex leading
//! coefficient 1.

use super::univariate::UPoly;
use super::{BiPoly, PolyError};
use crate::scalar::Coeff;

type Dense<K> = Vec<UPoly<K>>;

fn to_dense<K: Coeff>(p: &BiPoly<K>) -> Dense<K> {
    let d = p.bidegree();
    let mut rows: Vec<Vec<K>> = vec![vec![K::zero(); d.deg_v as usize + 1]; d.deg_u as usize + 1];
    for (a, b, c) in p.terms() {
        rows[a as usize][b as usize] = c.clone();
    }
    let mut out: Dense<K> = rows.into_iter().map(UPoly::new).collect();
    trim(&mut out);
    out
}

fn from_dense<K: Coeff>(d: &Dense<K>) -> BiPoly<K> {
    BiPoly::from_terms(d.iter().enumerate().flat_map(|(a, row)| {
        row.coeffs()
            .iter()
            .enumerate()
            .map(move |(b, c)| (a as u32, b as u32, c.clone()))
    }))
}

fn trim<K: Coeff>(d: &mut Dense<K>) {
    while d.last().is_some_and(|r| r.is_zero()) {
        d.pop();
    }
}

fn content<K: Coeff>(d: &Dense<K>) -> UPoly<K> {
    d.iter().fold(UPoly::zero(), |g, c| if c.is_zero() { g } else { g.gcd(c) })
}

fn primitive<K: Coeff>(d: &Dense<K>) -> Dense<K> {
    let c = content(d);
    if c.is_zero() {
        return Vec::new();
    }
    d.iter().map(|x| x.div_exact(&c)).collect()
}

/// Sparse pseudo-remainder of `a` by `b` in `K[v][u]`.
fn prem<K: Coeff>(a: &Dense<K>, b: &Dense<K>) -> Dense<K> {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !r.is_empty() && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Dense<K> = r.iter().map(|x| x.mul(&lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        trim(&mut next);
        debug_assert!(next.len() <= dr);
        r = next;
    }
    r
}

/// A greatest common divisor, monic in graded-lex order.
pub fn gcd<K: Coeff>(p: &BiPoly<K>, q: &BiPoly<K>) -> Result<BiPoly<K>, PolyError> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(PolyError::DegenerateInput),
        (true, false) => return Ok(q.monic()),
        (false, true) => return Ok(p.monic()),
        _ => {}
    }
    let (dp, dq) = (to_dense(p), to_dense(q));
    let g_content = content(&dp).gcd(&content(&dq));

    let (mut a, mut b) = (primitive(&dp), primitive(&dq));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let g_prim: Dense<K> = loop {
        if b.len() == 1 {
            // primitive of u-degree 0 is a unit
            break vec![UPoly::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive(&r);
    };
    let g = g_prim.iter().map(|c| c.mul(&g_content)).collect::<Dense<K>>();
    Ok(from_dense(&g).monic())
}

/// `gcd(gcd(f1, f2), f3)`, skipping zero inputs.
pub fn gcd3<K: Coeff>(f1: &BiPoly<K>, f2: &BiPoly<K>, f3: &BiPoly<K>) -> Result<BiPoly<K>, PolyError> {
    let mut acc: Option<BiPoly<K>> = None;
    for f in [f1, f2, f3] {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.monic(),
            Some(g) => gcd(&g, f)?,
        });
    }
    acc.ok_or(PolyError::DegenerateInput)
}
