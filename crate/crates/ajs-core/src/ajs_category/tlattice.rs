//! `S^α`-lattices generated by vectors `(α∨)^k · v` with `v ∈ Q^n`.
//!
//! Every lattice produced from `Q_μ` by wall crossing and by splitting with
//! constant idempotents has this shape. Such a lattice is
//! `⊕_i (α∨)^{k_i} S^α b_i` for independent `b_i`, and is determined by the
//! increasing filtration `V_k = span{b_i : k_i ≤ k}` of `Q^n`.

use num_traits::Zero;

use crate::poly_lattice::linalg::{self, Matrix};
use crate::poly_lattice::{Coef, CorootRing, Lattice, Localization, LocalizedElem, Poly};

pub type QVec = Vec<Coef>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLattice {
    pub ambient: usize,
    /// `(k_i, b_i)` sorted by `k_i`, with the `b_i` linearly independent.
    basis: Vec<(u32, QVec)>,
}

fn in_span(span: &[QVec], v: &[Coef]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let mut m: Matrix = span.to_vec();
    let r = linalg::rank(&m);
    m.push(v.to_vec());
    linalg::rank(&m) == r
}

/// Basis of the intersection of two subspaces of `Q^n`.
pub fn intersect_spaces(u: &[QVec], w: &[QVec], n: usize) -> Vec<QVec> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let cols = u.len() + w.len();
    let m: Matrix = (0..n)
        .map(|r| u.iter().map(|x| x[r].clone()).chain(w.iter().map(|x| -x[r].clone())).collect())
        .collect();
    let ker = linalg::nullspace(&m, cols);
    let mut out: Vec<QVec> = ker
        .iter()
        .map(|a| (0..n).map(|r| (0..u.len()).fold(Coef::zero(), |s, i| s + &a[i] * &u[i][r])).collect())
        .collect();
    let mut rows = out.clone();
    let piv = linalg::rref(&mut rows);
    rows.truncate(piv.len());
    out = rows;
    out
}

/// Rows `a` with `a · v = 0` for every `v` in the span.
pub fn annihilator(span: &[QVec], n: usize) -> Vec<QVec> {
    if span.is_empty() {
        return linalg::identity(n);
    }
    linalg::nullspace(&span.to_vec(), n)
}

impl TLattice {
    pub fn zero(ambient: usize) -> TLattice {
        TLattice { ambient, basis: Vec::new() }
    }

    /// `S^α`-span of the standard basis.
    pub fn full(ambient: usize) -> TLattice {
        TLattice { ambient, basis: linalg::identity(ambient).into_iter().map(|v| (0, v)).collect() }
    }

    pub fn new(ambient: usize, mut gens: Vec<(u32, QVec)>) -> TLattice {
        gens.sort_by_key(|(k, _)| *k);
        let mut basis: Vec<(u32, QVec)> = Vec::new();
        for (k, v) in gens {
            assert_eq!(v.len(), ambient, "generator length must match the ambient rank");
            let span: Vec<QVec> = basis.iter().map(|(_, b)| b.clone()).collect();
            if !in_span(&span, &v) {
                basis.push((k, v));
            }
        }
        TLattice { ambient, basis }
    }

    pub fn basis(&self) -> &[(u32, QVec)] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// `V_k`.
    pub fn level(&self, k: u32) -> Vec<QVec> {
        self.basis.iter().filter(|(j, _)| *j <= k).map(|(_, v)| v.clone()).collect()
    }

    /// Distinct `k_i`.
    pub fn jumps(&self) -> Vec<u32> {
        let mut ks: Vec<u32> = self.basis.iter().map(|(k, _)| *k).collect();
        ks.dedup();
        ks
    }

    /// `(α∨)^k v ∈ L`.
    pub fn contains(&self, k: u32, v: &[Coef]) -> bool {
        in_span(&self.level(k), v)
    }

    pub fn contains_lattice(&self, other: &TLattice) -> bool {
        other.basis.iter().all(|(k, v)| self.contains(*k, v))
    }

    pub fn equals(&self, other: &TLattice) -> bool {
        self.ambient == other.ambient && self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn sum(&self, other: &TLattice) -> TLattice {
        TLattice::new(self.ambient, self.basis.iter().chain(&other.basis).cloned().collect())
    }

    /// Levelwise intersection of the filtrations.
    pub fn intersect(&self, other: &TLattice) -> TLattice {
        let mut ks: Vec<u32> = self.jumps().into_iter().chain(other.jumps()).collect();
        ks.sort_unstable();
        ks.dedup();
        let mut gens = Vec::new();
        for k in ks {
            for v in intersect_spaces(&self.level(k), &other.level(k), self.ambient) {
                gens.push((k, v));
            }
        }
        TLattice::new(self.ambient, gens)
    }

    /// Image under a constant `n' × n` matrix.
    pub fn map(&self, f: &Matrix, target: usize) -> TLattice {
        TLattice::new(target, self.basis.iter().map(|(k, v)| (*k, linalg::mat_vec(f, v))).collect())
    }

    /// Multiplies every generator by `(α∨)^e`.
    pub fn shifted(&self, e: u32) -> TLattice {
        TLattice { ambient: self.ambient, basis: self.basis.iter().map(|(k, v)| (k + e, v.clone())).collect() }
    }

    /// Divides every generator by `(α∨)^e`; `e` must not exceed the lowest jump.
    pub fn unshifted(&self, e: u32) -> TLattice {
        TLattice { ambient: self.ambient, basis: self.basis.iter().map(|(k, v)| (k - e, v.clone())).collect() }
    }

    /// Block embedding: coordinate `i` goes to `positions[i]` of a length-`target` vector.
    pub fn embed(&self, positions: &[usize], target: usize) -> Vec<(u32, QVec)> {
        self.basis
            .iter()
            .map(|(k, v)| {
                let mut w = vec![Coef::zero(); target];
                for (i, &p) in positions.iter().enumerate() {
                    w[p] = v[i].clone();
                }
                (*k, w)
            })
            .collect()
    }

    /// The same lattice as a general [`Lattice`] over `S^α` for root index `b`.
    pub fn to_lattice(&self, ring: &CorootRing, b: usize) -> Lattice {
        let tag = Localization::Alpha(b);
        let t = ring.coroot(b);
        let gens = self
            .basis
            .iter()
            .map(|(k, v)| {
                let tk = t.pow(*k);
                v.iter().map(|c| LocalizedElem::from_poly(ring, tk.scale(c), tag)).collect()
            })
            .collect();
        Lattice::new(self.ambient, tag, gens)
    }

    /// Membership of a vector over `S^∅`: coordinates in a completed basis
    /// must vanish off the lattice directions and be divisible by
    /// `(α∨)^{k_i}` in `S^α` along `b_i`.
    pub fn contains_localized(&self, ring: &CorootRing, b: usize, w: &[LocalizedElem]) -> bool {
        if w.iter().any(|e| !e.is_in(Localization::Alpha(b))) {
            return false;
        }
        let n = self.ambient;
        let mut cols: Vec<QVec> = self.basis.iter().map(|(_, v)| v.clone()).collect();
        for e in linalg::identity(n) {
            if !in_span(&cols, &e) {
                cols.push(e);
            }
        }
        let bm: Matrix = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = linalg::inverse(&bm).expect("completed basis");
        let t = ring.coroot(b);
        for (i, row) in inv.iter().enumerate() {
            let mut c = LocalizedElem::zero(ring, Localization::Alpha(b));
            for (x, e) in row.iter().zip(w) {
                if !x.is_zero() {
                    c = c.add(ring, &e.mul_poly(ring, &Poly::constant(ring.nvars, x.clone())));
                }
            }
            if c.is_zero() {
                continue;
            }
            if i >= self.basis.len() {
                return false;
            }
            let need = self.basis[i].0;
            if c.num.linear_valuation(t).unwrap_or(0) < need {
                return false;
            }
        }
        true
    }
}

/// Convenience constructor for rational vectors from integers.
pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| crate::poly_lattice::coef(x)).collect()
}
