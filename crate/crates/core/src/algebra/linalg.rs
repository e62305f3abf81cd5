use num_traits::{One, Zero};

use super::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            let pivot_row = m[row].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row).take(ncols).skip(col) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for an `nrows x ncols` matrix. Empty iff the
/// kernel is trivial. Each basis vector has a 1 at one free column and 0 at
/// the other free columns.
pub fn nullspace(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for r in &a {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let pivots = rref(&mut a, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(m: &[Vec<Rational>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
