//! Submodules of `Q[x]^n` via Hermite normal form. `Q[x]` is a PID, so
//! every submodule is free and the echelon rows form a basis.


use super::poly::{Coef, Poly};

pub type Vector = Vec<Poly>;

fn lead_coef(p: &Poly) -> Coef {
    let d = p.degree().unwrap_or(0);
    p.coeff(&[d])
}

fn axpy(row: &mut Vector, q: &Poly, other: &Vector) {
    for (x, y) in row.iter_mut().zip(other) {
        *x = &*x - &(q * y);
    }
}

fn is_zero_vec(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Echelon basis: pivot columns strictly increase, pivots are monic, and
/// entries above a pivot are reduced modulo it.
pub fn hermite(gens: &[Vector], n: usize) -> Vec<Vector> {
    let mut rest: Vec<Vector> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
    let mut basis: Vec<Vector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..n {
        loop {
            let live: Vec<usize> = (0..rest.len()).filter(|&i| !rest[i][c].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let p = *live.iter().min_by_key(|&&i| rest[i][c].degree()).unwrap();
            let pr = rest[p].clone();
            for &i in &live {
                if i != p {
                    let (q, _) = rest[i][c].div_rem(&pr[c], 0);
                    axpy(&mut rest[i], &q, &pr);
                }
            }
        }
        if let Some(i) = (0..rest.len()).find(|&i| !rest[i][c].is_zero()) {
            let mut row = rest.swap_remove(i);
            let inv = lead_coef(&row[c]).recip();
            row.iter_mut().for_each(|x| *x = x.scale(&inv));
            for b in basis.iter_mut() {
                let (q, _) = b[c].div_rem(&row[c], 0);
                axpy(b, &q, &row);
            }
            basis.push(row);
            pivots.push(c);
        }
        rest.retain(|r| !is_zero_vec(r));
    }
    basis
}

fn pivot_col(row: &[Poly]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Membership of `w` in the module with echelon basis `basis`.
pub fn member(basis: &[Vector], w: &[Poly]) -> bool {
    let mut w = w.to_vec();
    for row in basis {
        let c = pivot_col(row).unwrap();
        let (q, r) = w[c].div_rem(&row[c], 0);
        if !r.is_zero() {
            return false;
        }
        axpy(&mut w, &q, row);
    }
    is_zero_vec(&w)
}

pub fn sum(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    let gens: Vec<Vector> = a.iter().chain(b).cloned().collect();
    hermite(&gens, n)
}

/// `A ∩ B` from the echelon form of `{(a, a)} ∪ {(b, 0)}` in `Q[x]^{2n}`:
/// rows with vanishing first half carry the intersection in their second half.
pub fn intersect(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    let zero = Poly::zero(1);
    let mut gens: Vec<Vector> = Vec::new();
    for g in a {
        gens.push(g.iter().chain(g).cloned().collect());
    }
    for g in b {
        gens.push(g.iter().cloned().chain(std::iter::repeat(zero.clone()).take(n)).collect());
    }
    let h = hermite(&gens, 2 * n);
    let second: Vec<Vector> = h
        .into_iter()
        .filter(|r| is_zero_vec(&r[..n]))
        .map(|r| r[n..].to_vec())
        .collect();
    hermite(&second, n)
}

/// Always free. Degrees are `2·max entry degree` of each basis row, which is
/// the graded degree when the generators are homogeneous.
pub fn freeness(basis: &[Vector]) -> (bool, usize, Vec<i64>) {
    let mut degrees: Vec<i64> = basis
        .iter()
        .map(|r| 2 * r.iter().filter_map(Poly::degree).max().unwrap_or(0) as i64)
        .collect();
    degrees.sort_unstable();
    (true, basis.len(), degrees)
}

/// Mutual containment of two echelon bases.
pub fn equal(a: &[Vector], b: &[Vector]) -> bool {
    a.iter().all(|g| member(b, g)) && b.iter().all(|g| member(a, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_lattice::poly::coef;

    fn t() -> Poly {
        Poly::var(1, 0)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(1, coef(n))
    }

    #[test]
    fn congruence_lattice() {
        let l = hermite(&[vec![t(), c(0)], vec![c(1), c(1)]], 2);
        assert!(member(&l, &[t(), c(0)]));
        assert!(!member(&l, &[c(1), c(0)]));
        assert!(member(&l, &[c(0), c(0)]));
        assert_eq!(freeness(&l), (true, 2, vec![0, 2]));
    }

    #[test]
    fn intersection_with_first_axis() {
        let l = hermite(&[vec![t(), c(0)], vec![c(1), c(1)]], 2);
        let axis = hermite(&[vec![c(1), c(0)]], 2);
        let i = intersect(&l, &axis, 2);
        assert!(equal(&i, &hermite(&[vec![t(), c(0)]], 2)));
        assert!(equal(&intersect(&l, &l, 2), &l));
        assert!(equal(&sum(&l, &[], 2), &l));
    }
}
