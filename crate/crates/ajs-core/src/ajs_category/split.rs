//! Splitting objects of `K` along idempotents of `End^0`.
//!
//! Idempotents come from Fitting decompositions: an endomorphism `E` with
//! two distinct rational eigenvalues (on the blocks `E_A`) yields the
//! projector onto one generalized eigenspace, which is a polynomial in `E`
//! and hence again an endomorphism.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::order_topology::{height, AlcoveWindow};
use crate::poly_lattice::linalg::{self, Matrix};
use crate::poly_lattice::Coef;

use super::hom::{hom_const, ConstMorphism};
use super::object::KObject;
use super::theta::theta_c;

/// Column-space basis of `m` as a list of columns.
fn column_space(m: &Matrix) -> Vec<Vec<Coef>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut t: Matrix = (0..cols).map(|c| (0..rows).map(|r| m[r][c].clone()).collect()).collect();
    let piv = linalg::rref(&mut t);
    t.truncate(piv.len());
    t
}

fn columns_to_matrix(cols: &[Vec<Coef>], rows: usize) -> Matrix {
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Image of an idempotent `e`, with `M1(A) = im e_A` in a fixed basis and
/// lattices `e(M(A,α))` written in that basis.
pub fn image_of_idempotent(geo: &Geometry, m: &KObject, e: &ConstMorphism) -> KObject {
    let mut basis: BTreeMap<Alcove, (usize, Matrix)> = BTreeMap::new();
    for (a, r) in m.ranks() {
        let ea = e.block(a).cloned().unwrap_or_else(|| linalg::zeros(*r, *r));
        let cols = column_space(&ea);
        let k = cols.len();
        if k == 0 {
            continue;
        }
        // left inverse L of P = [cols]: L = (PᵀP)⁻¹Pᵀ, then compose with e_A
        let p = columns_to_matrix(&cols, *r);
        let pt: Matrix = cols.clone();
        let gram = linalg::mul(&pt, &p);
        let left = linalg::mul(&linalg::inverse(&gram).expect("independent columns"), &pt);
        basis.insert(*a, (k, linalg::mul(&left, &ea)));
    }
    let new_rank = |a: &Alcove| basis.get(a).map_or(0, |(k, _)| *k);
    let ranks: BTreeMap<Alcove, usize> = basis.iter().map(|(a, (k, _))| (*a, *k)).collect();
    let mut lattices = BTreeMap::new();
    for (a, b) in m.lattice_keys(geo) {
        let up = geo.up(b, &a);
        let (na, nb) = (new_rank(&a), new_rank(&up));
        if na + nb == 0 {
            continue;
        }
        let (ra, rb) = (m.rank(&a), m.rank(&up));
        // block-diagonal (L_A e_A) ⊕ (L_B e_B)
        let mut f = linalg::zeros(na + nb, ra + rb);
        if let Some((_, pa)) = basis.get(&a) {
            for i in 0..na {
                for j in 0..ra {
                    f[i][j] = pa[i][j].clone();
                }
            }
        }
        if let Some((_, pb)) = basis.get(&up) {
            for i in 0..nb {
                for j in 0..rb {
                    f[na + i][ra + j] = pb[i][j].clone();
                }
            }
        }
        let l = m.lattice(geo, &a, b);
        lattices.insert((a, b), l.map(&f, na + nb));
    }
    KObject::from_parts(ranks, lattices)
}

/// Distinct rational eigenvalues of `E`, collected over its blocks.
fn block_eigenvalues(e: &ConstMorphism) -> Vec<Coef> {
    let mut out: Vec<Coef> = Vec::new();
    for f in e.blocks.values() {
        for x in rational_roots(&linalg::char_poly(f)) {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i64);
            if d * d != n {
                out.push((n / d) as i64);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of `Σ c_i x^i`, by the rational root test.
pub fn rational_roots(coeffs: &[Coef]) -> Vec<Coef> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Coef::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints.iter().all(Zero::is_zero) {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(Coef::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &Coef| ints.iter().rev().fold(Coef::zero(), |acc, c| acc * x + Coef::from_integer(c.clone()));
    for &p in &ps {
        for &q in &qs {
            for sign in [1i64, -1] {
                let x = Coef::new((sign * p).into(), q.into());
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Fitting projector onto the generalized `λ`-eigenspace, blockwise.
fn fitting_projector(e: &ConstMorphism, lambda: &Coef) -> ConstMorphism {
    let mut blocks = BTreeMap::new();
    for (a, ea) in &e.blocks {
        let r = ea.len();
        let mut shifted = ea.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= lambda;
        }
        let mut pw = linalg::identity(r);
        for _ in 0..r {
            pw = linalg::mul(&pw, &shifted);
        }
        let ker = linalg::nullspace(&pw, r);
        let img = column_space(&pw);
        let k = ker.len();
        let cols: Vec<Vec<Coef>> = ker.into_iter().chain(img).collect();
        let p = columns_to_matrix(&cols, r);
        let pinv = linalg::inverse(&p).expect("Fitting decomposition");
        let mut d = linalg::zeros(r, r);
        for (i, row) in d.iter_mut().enumerate().take(k) {
            row[i] = Coef::one();
        }
        blocks.insert(*a, linalg::mul(&linalg::mul(&p, &d), &pinv));
    }
    ConstMorphism { blocks }
}

/// Orthogonal idempotents summing to the identity, one per rational
/// eigenvalue of `c` plus the remainder, if that gives at least two pieces.
fn spectral_family(m: &KObject, c: &ConstMorphism) -> Option<Vec<ConstMorphism>> {
    let roots = block_eigenvalues(c);
    if roots.is_empty() {
        return None;
    }
    let id = ConstMorphism::identity(m);
    let mut family: Vec<ConstMorphism> = roots.iter().map(|x| fitting_projector(c, x)).filter(|e| !e.is_zero()).collect();
    let rest = family.iter().fold(id.clone(), |acc, e| acc.add_scaled(e, &Coef::from_integer((-1).into())));
    if !rest.is_zero() {
        family.push(rest);
    }
    (family.len() >= 2).then_some(family)
}

/// A splitting of the identity of `M` into orthogonal idempotents of
/// `End^0(M)` (constant entries), from the first basis element or sum of
/// two basis elements with at least two spectral pieces.
pub fn find_splitting(geo: &Geometry, m: &KObject) -> Option<Vec<ConstMorphism>> {
    let end = hom_const(geo, m, m);
    if end.len() <= 1 {
        return None;
    }
    if let Some(f) = end.iter().find_map(|c| spectral_family(m, c)) {
        return Some(f);
    }
    let two = Coef::from_integer(2.into());
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            for k in [Coef::one(), two.clone()] {
                if let Some(f) = spectral_family(m, &end[i].add_scaled(&end[j], &k)) {
                    return Some(f);
                }
            }
        }
    }
    None
}

/// A nontrivial idempotent in `End^0(M)`, if [`find_splitting`] finds one.
pub fn find_idempotent(geo: &Geometry, m: &KObject) -> Option<ConstMorphism> {
    find_splitting(geo, m).map(|mut f| f.swap_remove(0))
}

/// Lowest support alcove (by height, ties by the alcove order).
pub fn lowest_alcove(m: &KObject) -> Option<Alcove> {
    m.support().min_by(|x, y| height(x).cmp(&height(y)).then(x.cmp(y))).copied()
}

/// Full decomposition into summands with no nontrivial constant idempotent,
/// sorted by lowest support alcove.
pub fn decompose(geo: &Geometry, m: &KObject) -> Vec<KObject> {
    if m.is_zero() {
        return Vec::new();
    }
    let mut out = match find_splitting(geo, m) {
        None => vec![m.clone()],
        Some(family) => family.iter().flat_map(|e| decompose(geo, &image_of_idempotent(geo, m, e))).collect(),
    };
    out.sort_by(|x, y| {
        let (a, b) = (lowest_alcove(x).unwrap(), lowest_alcove(y).unwrap());
        height(&a).cmp(&height(&b)).then(a.cmp(&b)).then(x.total_rank().cmp(&y.total_rank()))
    });
    out
}

/// Summands of `ϑ_{s_n} ⋯ ϑ_{s_1} M`, splitting after every letter; `ϑ`
/// commutes with direct sums, so each letter acts on the pieces separately.
pub fn decompose_word(geo: &Geometry, word: &[usize], m: &KObject, window: Option<&AlcoveWindow>) -> Result<Vec<KObject>> {
    let mut parts = decompose(geo, m);
    for &s in word {
        let next: Vec<Result<Vec<KObject>>> =
            crate::par::map_collect(&parts, |p| theta_c(geo, s, p, window).map(|t| decompose(geo, &t)));
        parts = next.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    }
    Ok(parts)
}

/// The summand with rank one at `A` and the direct sum of the others.
pub fn split_summand(geo: &Geometry, m: &KObject, a: &Alcove) -> Result<(KObject, KObject)> {
    let parts = decompose(geo, m);
    let hits: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].rank(a) > 0).collect();
    match hits.as_slice() {
        [i] if parts[*i].rank(a) == 1 => {
            let rest = parts
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .fold(KObject::zero(), |acc, (_, p)| acc.direct_sum(geo, p));
            Ok((parts[*i].clone(), rest))
        }
        _ => Err(AjsError::DegreeCap(format!(
            "no summand of rank one at {} among constant idempotents",
            geo.label(a)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ajs_category::hom::find_isomorphism;
    use crate::ajs_category::object::make_q_mu;
    use crate::ajs_category::theta::theta_c;
    use crate::poly_lattice::coef;
    use crate::root_system::{zero_pt, TypeTag, Q};

    #[test]
    fn roots_of_small_polynomials() {
        // (x − 1)(x + 2)(2x − 1) = 2x³ + x² − 5x + 2
        let r = rational_roots(&[coef(2), coef(-5), coef(1), coef(2)]);
        assert_eq!(r, vec![coef(-2), Coef::new(1.into(), 2.into()), coef(1)]);
        assert_eq!(rational_roots(&[coef(0), coef(0), coef(1)]), vec![coef(0)]);
    }

    #[test]
    fn q_zero_is_indecomposable() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let (part, rest) = split_summand(&geo, &q, &geo.a1(-1)).unwrap();
        assert_eq!(part, q);
        assert!(rest.is_zero());
    }

    #[test]
    fn a1_theta_s1_splits_into_two_special_objects() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let t = theta_c(&geo, 1, &q, None).unwrap();
        let (part, rest) = split_summand(&geo, &t, &geo.a1(-2)).unwrap();
        assert_eq!(part.ranks().keys().copied().collect::<Vec<_>>(), vec![geo.a1(-2), geo.a1(-1)]);
        assert_eq!(rest.ranks().keys().copied().collect::<Vec<_>>(), vec![geo.a1(0), geo.a1(1)]);
        let mut minus = zero_pt();
        minus[0] = Q::new(-1, 2);
        let mut plus = zero_pt();
        plus[0] = Q::new(1, 2);
        assert!(find_isomorphism(&geo, &part, &make_q_mu(&geo, &minus)).is_some());
        assert!(find_isomorphism(&geo, &rest, &make_q_mu(&geo, &plus)).is_some());
    }

    #[test]
    fn a1_theta_s0_is_two_copies() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let t = theta_c(&geo, 0, &q, None).unwrap();
        let parts = decompose(&geo, &t);
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert!(find_isomorphism(&geo, p, &q).is_some());
        }
    }
}
