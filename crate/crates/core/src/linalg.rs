//! Exact Gaussian elimination over [`SkeinValue`].

use crate::coefficients::SkeinValue;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<SkeinValue>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in m[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let d = &f * &m[r][j];
                m[i][j] = &m[i][j] - &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : m x = 0}`. Each vector has a 1 in its free
/// column.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<SkeinValue>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![SkeinValue::zero(); cols];
            v[f] = SkeinValue::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][f];
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { SkeinValue::one() } else { SkeinValue::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::DivisionByZero);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
