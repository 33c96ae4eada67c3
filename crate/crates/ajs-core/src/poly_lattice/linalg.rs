//! Dense linear algebra over `Q`.

use num_traits::{One, Zero};

use super::poly::Coef;

pub type Matrix = Vec<Vec<Coef>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Coef::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Coef::one();
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`, where `m` has `cols` columns.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Coef>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Coef::zero(); cols];
            x[f] = Coef::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[Coef]) -> Option<Vec<Coef>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Matrix = m.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Coef::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend(identity(n)[i].iter().cloned());
        r
    }).collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Coef::zero(), |s, k| s + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[Coef]) -> Vec<Coef> {
    a.iter().map(|row| row.iter().zip(x).fold(Coef::zero(), |s, (p, q)| s + p * q)).collect()
}

/// Characteristic polynomial coefficients `c_0..c_n` of `det(λI − m)`, via
/// Faddeev–LeVerrier (exact over `Q`).
pub fn char_poly(m: &Matrix) -> Vec<Coef> {
    let n = m.len();
    let mut c = vec![Coef::zero(); n + 1];
    c[n] = Coef::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(m, &mk);
        let tr = (0..n).fold(Coef::zero(), |s, i| s + &am[i][i]);
        c[n - k] = -tr / Coef::from_integer((k as i64).into());
    }
    c
}
