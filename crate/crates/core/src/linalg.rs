//! Exact row reduction over a coefficient field.

use crate::scalar::Coeff;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Coeff>(m: &mut [Vec<K>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = K::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                for j in 0..cols {
                    let t = m[r][j].clone() * f.clone();
                    m[k][j] = m[k][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Coeff>(m: &[Vec<K>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn nullspace<K: Coeff>(m: &[Vec<K>], cols: usize) -> Vec<Vec<K>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![K::zero(); cols];
            x[f] = K::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -work[row][f].clone();
            }
            x
        })
        .collect()
}

/// Solves a square system exactly; `None` when singular.
pub fn solve<K: Coeff>(a: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    let n = a.len();
    let mut aug: Vec<Vec<K>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn cross<K: Coeff>(a: &[K; 3], b: &[K; 3]) -> [K; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<K: Coeff>(a: &[K], b: &[K]) -> K {
    a.iter().zip(b).fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
