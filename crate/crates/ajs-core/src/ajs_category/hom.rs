//! Morphisms in `K`: per-alcove matrices `f_A : M(A) → N(A)` such that
//! `f_A ⊕ f_{α↑A}` maps `M(A,α)` into `N(A,α)`.
//!
//! Entries of degree zero are ratios `P / ∏(β∨)^cap` with `P` homogeneous of
//! degree `cap·|R^+|`; the lattice conditions are linear in the coefficients
//! of `P`. `cap = 0` gives constant matrices and has a fast path.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alcove_geom::{Alcove, Geometry};
use crate::poly_lattice::linalg::{self, Matrix};
use crate::poly_lattice::{Coef, CorootRing, Localization, LocalizedElem, Poly};

use super::object::KObject;
use super::tlattice::{annihilator, TLattice};

/// A morphism with constant entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstMorphism {
    /// `rows = rank of target at A`, `cols = rank of source at A`.
    pub blocks: BTreeMap<Alcove, Matrix>,
}

impl ConstMorphism {
    pub fn identity(m: &KObject) -> ConstMorphism {
        ConstMorphism { blocks: m.ranks().iter().map(|(a, r)| (*a, linalg::identity(*r))).collect() }
    }

    pub fn zero(src: &KObject, dst: &KObject) -> ConstMorphism {
        ConstMorphism {
            blocks: src.ranks().iter().filter(|(a, _)| dst.rank(a) > 0).map(|(a, r)| (*a, linalg::zeros(dst.rank(a), *r))).collect(),
        }
    }

    pub fn block(&self, a: &Alcove) -> Option<&Matrix> {
        self.blocks.get(a)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ConstMorphism) -> ConstMorphism {
        let blocks = other
            .blocks
            .iter()
            .filter_map(|(a, f)| self.blocks.get(a).map(|g| (*a, linalg::mul(g, f))))
            .collect();
        ConstMorphism { blocks }
    }

    pub fn add_scaled(&self, other: &ConstMorphism, c: &Coef) -> ConstMorphism {
        let mut out = self.clone();
        for (a, f) in &other.blocks {
            let g = out.blocks.entry(*a).or_insert_with(|| linalg::zeros(f.len(), f.first().map_or(0, Vec::len)));
            for (gr, fr) in g.iter_mut().zip(f) {
                for (x, y) in gr.iter_mut().zip(fr) {
                    *x += y * c;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Coef) -> ConstMorphism {
        ConstMorphism { blocks: self.blocks.iter().map(|(a, f)| (*a, f.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|f| f.iter().flatten().all(Zero::is_zero))
    }

    /// Entries flattened in alcove order.
    pub fn flatten(&self) -> Vec<Coef> {
        self.blocks.values().flat_map(|f| f.iter().flatten().cloned()).collect()
    }

    /// Blockwise inverse, when every block is square and invertible.
    pub fn inverse(&self) -> Option<ConstMorphism> {
        let mut blocks = BTreeMap::new();
        for (a, f) in &self.blocks {
            blocks.insert(*a, linalg::inverse(f)?);
        }
        Some(ConstMorphism { blocks })
    }
}

/// Unknown layout: one block of `rows × cols` unknowns per common alcove.
struct Layout {
    offsets: BTreeMap<Alcove, (usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(src: &KObject, dst: &KObject, per_entry: usize) -> Layout {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (a, &c) in src.ranks() {
            let r = dst.rank(a);
            if r > 0 {
                offsets.insert(*a, (total, r, c));
                total += r * c * per_entry;
            }
        }
        Layout { offsets, total }
    }
}

/// The lattice-compatibility conditions on constant matrices.
fn const_conditions(geo: &Geometry, src: &KObject, dst: &KObject, layout: &Layout) -> Matrix {
    let mut rows: Matrix = Vec::new();
    for (a, b) in src.lattice_keys(geo) {
        let l = src.lattice(geo, &a, b);
        if l.is_zero() {
            continue;
        }
        let up = geo.up(b, &a);
        let target = dst.lattice(geo, &a, b);
        let (sa, da) = (src.rank(&a), dst.rank(&a));
        for k in l.jumps() {
            let ann = annihilator(&target.level(k), target.ambient);
            for (_, v) in l.basis().iter().filter(|(j, _)| *j == k) {
                for row in &ann {
                    let mut cond = vec![Coef::zero(); layout.total];
                    for (alc, src_off, dst_off) in [(&a, 0usize, 0usize), (&up, sa, da)] {
                        let Some(&(off, r, c)) = layout.offsets.get(alc) else { continue };
                        for j in 0..r {
                            if row[dst_off + j].is_zero() {
                                continue;
                            }
                            for i in 0..c {
                                cond[off + j * c + i] += &row[dst_off + j] * &v[src_off + i];
                            }
                        }
                    }
                    if cond.iter().any(|x| !x.is_zero()) {
                        rows.push(cond);
                    }
                }
            }
        }
    }
    rows
}

fn unpack(layout: &Layout, x: &[Coef]) -> ConstMorphism {
    let blocks = layout
        .offsets
        .iter()
        .map(|(a, &(off, r, c))| (*a, (0..r).map(|j| x[off + j * c..off + (j + 1) * c].to_vec()).collect()))
        .collect();
    ConstMorphism { blocks }
}

/// Basis of the constant morphisms `src → dst`.
pub fn hom_const(geo: &Geometry, src: &KObject, dst: &KObject) -> Vec<ConstMorphism> {
    let layout = Layout::new(src, dst, 1);
    if layout.total == 0 {
        return Vec::new();
    }
    let rows = const_conditions(geo, src, dst, &layout);
    let ker = if rows.is_empty() { linalg::identity(layout.total) } else { linalg::nullspace(&rows, layout.total) };
    ker.iter().map(|x| unpack(&layout, x)).collect()
}

/// Whether a constant family of matrices is a morphism `src → dst`.
pub fn is_morphism(geo: &Geometry, src: &KObject, dst: &KObject, f: &ConstMorphism) -> bool {
    let layout = Layout::new(src, dst, 1);
    let x: Vec<Coef> = layout
        .offsets
        .iter()
        .flat_map(|(a, &(_, r, c))| match f.blocks.get(a) {
            Some(m) => m.iter().flatten().cloned().collect::<Vec<_>>(),
            None => vec![Coef::zero(); r * c],
        })
        .collect();
    let rows = const_conditions(geo, src, dst, &layout);
    rows.iter().all(|row| row.iter().zip(&x).fold(Coef::zero(), |s, (p, q)| s + p * q).is_zero())
}

/// A morphism with entries in `S^∅`.
#[derive(Clone, Debug)]
pub struct KMorphism {
    pub blocks: BTreeMap<Alcove, Vec<Vec<LocalizedElem>>>,
}

impl KMorphism {
    /// The constant matrices, when every entry is a constant.
    pub fn to_const(&self) -> Option<ConstMorphism> {
        let mut blocks = BTreeMap::new();
        for (a, f) in &self.blocks {
            let mut m = Vec::new();
            for row in f {
                let mut r = Vec::new();
                for e in row {
                    if e.den.iter().any(|&d| d > 0) || e.num.degree().unwrap_or(0) > 0 {
                        return None;
                    }
                    r.push(e.num.constant_term());
                }
                m.push(r);
            }
            blocks.insert(*a, m);
        }
        Some(ConstMorphism { blocks })
    }
}

/// Coefficient rows expressing "the remainder of `Σ x_u · q_u` modulo
/// `t^e` vanishes" for polynomial contributions `q_u` of unknowns `u`.
fn remainder_rows(contribs: &[(usize, Poly)], t_pow: &Poly, lead: usize, total: usize) -> Matrix {
    let mut by_mono: BTreeMap<Vec<u32>, Vec<Coef>> = BTreeMap::new();
    for (u, q) in contribs {
        let (_, r) = q.div_rem(t_pow, lead);
        for (m, c) in r.terms() {
            by_mono.entry(m.clone()).or_insert_with(|| vec![Coef::zero(); total])[*u] += c;
        }
    }
    by_mono.into_values().collect()
}

/// Spanning set of the degree-zero morphisms `src → dst` whose entries have
/// denominators dividing `∏(β∨)^cap`.
pub fn hom_space(geo: &Geometry, src: &KObject, dst: &KObject, cap: u32) -> Vec<KMorphism> {
    let ring = CorootRing::new(&geo.rs);
    let npos = ring.num_coroots();
    let monos = Poly::monomials_of_degree(ring.nvars, cap * npos as u32);
    let per = monos.len();
    let layout = Layout::new(src, dst, per);
    if layout.total == 0 {
        return Vec::new();
    }
    // Unknown index of coefficient `m` in entry (j, i) at alcove `a`.
    let unknown = |a: &Alcove, j: usize, i: usize, m: usize| -> Option<usize> {
        layout.offsets.get(a).map(|&(off, _, c)| off + (j * c + i) * per + m)
    };
    let mut rows: Matrix = Vec::new();
    for (a, b) in src.lattice_keys(geo) {
        let l = src.lattice(geo, &a, b);
        if l.is_zero() {
            continue;
        }
        let up = geo.up(b, &a);
        let target = dst.lattice(geo, &a, b);

        let (sa, da) = (src.rank(&a), dst.rank(&a));
        let (cols, inv) = completed_inverse(&target);
        let t = ring.coroot(b);
        let lead = (0..ring.nvars).find(|&v| t.terms().any(|(mm, _)| mm[v] > 0)).unwrap();
        for (k, v) in l.basis() {
            // coordinate i of the image: Σ_j inv[i][j] · (F v)_j
            for (i, inv_row) in inv.iter().enumerate() {
                let mut contribs: Vec<(usize, Poly)> = Vec::new();
                for (alc, src_off, dst_off) in [(&a, 0usize, 0usize), (&up, sa, da)] {
                    let Some(&(_, r, c)) = layout.offsets.get(alc) else { continue };
                    for j in 0..r {
                        let w = &inv_row[dst_off + j];
                        if w.is_zero() {
                            continue;
                        }
                        for ii in 0..c {
                            let s = w * &v[src_off + ii];
                            if s.is_zero() {
                                continue;
                            }
                            for (mi, mono) in monos.iter().enumerate() {
                                contribs.push((unknown(alc, j, ii, mi).unwrap(), Poly::monomial(mono.clone(), s.clone())));
                            }
                        }
                    }
                }
                if contribs.is_empty() {
                    continue;
                }
                if i >= cols {
                    // must vanish identically
                    let mut by_mono: BTreeMap<Vec<u32>, Vec<Coef>> = BTreeMap::new();
                    for (u, q) in &contribs {
                        for (m, c) in q.terms() {
                            by_mono.entry(m.clone()).or_insert_with(|| vec![Coef::zero(); layout.total])[*u] += c;
                        }
                    }
                    rows.extend(by_mono.into_values());
                } else {
                    let need = target.basis()[i].0 as i64 + cap as i64 - *k as i64;
                    if need > 0 {
                        rows.extend(remainder_rows(&contribs, &t.pow(need as u32), lead, layout.total));
                    }
                }
            }
        }
    }
    let rows: Matrix = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let ker = if rows.is_empty() { linalg::identity(layout.total) } else { linalg::nullspace(&rows, layout.total) };
    let den: Vec<u32> = vec![cap; npos];
    ker.iter()
        .map(|x| {
            let blocks = layout
                .offsets
                .iter()
                .map(|(a, &(off, r, c))| {
                    let m = (0..r)
                        .map(|j| {
                            (0..c)
                                .map(|i| {
                                    let p = monos.iter().enumerate().fold(Poly::zero(ring.nvars), |acc, (mi, mono)| {
                                        &acc + &Poly::monomial(mono.clone(), x[off + (j * c + i) * per + mi].clone())
                                    });
                                    LocalizedElem::new(&ring, p, den.clone(), Localization::Empty).expect("allowed denominator")
                                })
                                .collect()
                        })
                        .collect();
                    (*a, m)
                })
                .collect();
            KMorphism { blocks }
        })
        .collect()
}

/// Basis `b_1..b_r` of the lattice completed to `Q^n`, and the inverse of
/// the matrix with those columns.
fn completed_inverse(l: &TLattice) -> (usize, Matrix) {
    let n = l.ambient;
    let mut cols: Vec<Vec<Coef>> = l.basis().iter().map(|(_, v)| v.clone()).collect();
    let r = cols.len();
    for e in linalg::identity(n) {
        let mut m = cols.clone();
        m.push(e.clone());
        if linalg::rank(&m) > cols.len() {
            cols.push(e);
        }
    }
    let bm: Matrix = (0..n).map(|row| cols.iter().map(|c| c[row].clone()).collect()).collect();
    (r, linalg::inverse(&bm).expect("completed basis is invertible"))
}

/// Deterministic pseudo-random small integers for generic combinations.
pub(crate) fn generic_coefficients(n: usize, seed: u64) -> Vec<Coef> {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..n)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Coef::from_integer((((x >> 33) % 19) as i64 - 9).into())
        })
        .collect()
}

/// Mutually inverse constant morphisms between the normalized objects, if a
/// generic combination of `hom(X, Y)` is invertible with inverse in
/// `hom(Y, X)`. Composed with the normalizing coroot monomials this is an
/// isomorphism `X ≅ Y` in `K`.
pub fn find_isomorphism(geo: &Geometry, x: &KObject, y: &KObject) -> Option<(ConstMorphism, ConstMorphism)> {
    if x.ranks() != y.ranks() {
        return None;
    }
    let (x, y) = (&x.normalized(), &y.normalized());
    let basis = hom_const(geo, x, y);
    if basis.is_empty() {
        return if x.is_zero() { Some((ConstMorphism::identity(x), ConstMorphism::identity(y))) } else { None };
    }
    for seed in 0..8u64 {
        let cs = generic_coefficients(basis.len(), seed);
        let f = basis.iter().zip(&cs).fold(ConstMorphism::zero(x, y), |acc, (b, c)| acc.add_scaled(b, c));
        if f.blocks.len() != x.ranks().len() {
            continue;
        }
        if let Some(g) = f.inverse() {
            if is_morphism(geo, y, x, &g) {
                return Some((f, g));
            }
        }
    }
    None
}

/// `End^0` dimension with denominators up to `cap`.
pub fn endomorphism_dimension(geo: &Geometry, m: &KObject, cap: u32) -> usize {
    if cap == 0 {
        hom_const(geo, m, m).len()
    } else {
        hom_space(geo, m, m, cap).len()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ajs_category::object::make_q_mu;
    use crate::ajs_category::theta::theta_c;
    use crate::root_system::{zero_pt, TypeTag};

    #[test]
    fn a1_q_zero_endomorphisms() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let end = hom_const(&geo, &q, &q);
        assert_eq!(end.len(), 1);
        assert!(is_morphism(&geo, &q, &q, &ConstMorphism::identity(&q)));
        assert_eq!(hom_space(&geo, &q, &q, 0).len(), 1);
        assert_eq!(hom_space(&geo, &q, &q, 1).len(), 1);
    }

    #[test]
    fn disjoint_supports_have_no_morphisms() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q0 = make_q_mu(&geo, &zero_pt());
        let mut far = zero_pt();
        far[0] = crate::root_system::Q::from_integer(5);
        let q5 = make_q_mu(&geo, &far);
        assert!(hom_const(&geo, &q0, &q5).is_empty());
    }

    #[test]
    fn cap_zero_matches_fast_path_in_a2() {
        let geo = Geometry::of_type(TypeTag::A2);
        let q = make_q_mu(&geo, &zero_pt());
        let t = theta_c(&geo, 2, &q, None).unwrap();
        assert_eq!(hom_const(&geo, &t, &t).len(), hom_space(&geo, &t, &t, 0).len());
        assert_eq!(hom_const(&geo, &q, &q).len(), 1);
        assert!(find_isomorphism(&geo, &q, &q).is_some());
    }
}
