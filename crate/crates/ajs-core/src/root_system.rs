//! Finite root systems of rank at most [`MAX_RANK`], their Weyl groups and
//! affine Weyl groups.
//!
//! Points of `V` are stored in the basis of simple roots. Covectors (coroots)
//! are stored through their pairings with the simple roots, i.e. in the
//! fundamental coweight basis.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AjsError, Result};

pub const MAX_RANK: usize = 4;

pub type Q = Rational64;

/// A point of `V` in simple-root coordinates. Entries past the rank are zero.
pub type Pt = [Q; MAX_RANK];

pub fn zero_pt() -> Pt {
    [Q::zero(); MAX_RANK]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeTag {
    A1,
    A2,
    B2,
    G2,
}

impl FromStr for TypeTag {
    type Err = AjsError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(TypeTag::A1),
            "A2" => Ok(TypeTag::A2),
            "B2" | "C2" => Ok(TypeTag::B2),
            "G2" => Ok(TypeTag::G2),
            _ => Err(AjsError::UnsupportedType(s.to_string())),
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::A1 => "A1",
            TypeTag::A2 => "A2",
            TypeTag::B2 => "B2",
            TypeTag::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// Element of the affine Weyl group, acting on `V` by `λ ↦ w(λ) + γ`.
///
/// `w` indexes the finite Weyl group table of the owning [`RootSystem`];
/// `gamma` is an element of `ZR` in simple-root coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub w: u16,
    pub gamma: [i64; MAX_RANK],
}

impl AffineWeylElement {
    pub const IDENTITY: AffineWeylElement = AffineWeylElement { w: 0, gamma: [0; MAX_RANK] };
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub tag: Option<TypeTag>,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub roots: Vec<Vec<i64>>,
    /// Positive coroots in simple-coroot coordinates, aligned with `roots`.
    pub coroots: Vec<Vec<i64>>,
    /// `coroot_pairing[b][i] = ⟨α_i, β∨⟩`: the coroot in the coweight basis.
    pub coroot_pairing: Vec<Vec<i64>>,
    pub coxeter_number: u32,
    /// Index of the positive root whose coroot is highest; its affine
    /// reflection `s_{α,1}` is the extra simple affine reflection.
    pub affine_root: usize,
    weyl: Vec<Vec<i64>>,
    weyl_index: HashMap<Vec<i64>, u16>,
    mul: Vec<Vec<u16>>,
    inv: Vec<u16>,
    reflection: Vec<u16>,
}

impl RootSystem {
    pub fn build(tag: TypeTag) -> RootSystem {
        let cartan = match tag {
            TypeTag::A1 => vec![vec![2]],
            TypeTag::A2 => vec![vec![2, -1], vec![-1, 2]],
            // α1 long, α2 short
            TypeTag::B2 => vec![vec![2, -2], vec![-1, 2]],
            TypeTag::G2 => vec![vec![2, -3], vec![-1, 2]],
        };
        let mut rs = RootSystem::from_cartan(cartan).expect("standard Cartan data");
        rs.tag = Some(tag);
        rs
    }

    /// Builds the root system of a finite-type Cartan matrix with
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let r = cartan.len();
        if r == 0 || r > MAX_RANK || cartan.iter().any(|row| row.len() != r) {
            return Err(AjsError::Invalid(format!("cartan matrix of rank {r}")));
        }
        // Orbit of (root, coroot) pairs under simple reflections.
        let unit = |i: usize| (0..r).map(|j| i64::from(i == j)).collect::<Vec<_>>();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            seen.insert(unit(i), unit(i));
            queue.push_back((unit(i), unit(i)));
        }
        while let Some((b, bc)) = queue.pop_front() {
            if seen.len() > 1000 {
                return Err(AjsError::Invalid("cartan matrix is not of finite type".into()));
            }
            for i in 0..r {
                let pair_b_ic: i64 = (0..r).map(|k| b[k] * cartan[k][i]).sum();
                let pair_i_bc: i64 = (0..r).map(|k| bc[k] * cartan[i][k]).sum();
                let mut nb = b.clone();
                nb[i] -= pair_b_ic;
                let mut nbc = bc.clone();
                nbc[i] -= pair_i_bc;
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), nbc.clone());
                    queue.push_back((nb, nbc));
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> =
            seen.into_iter().filter(|(b, _)| b.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let roots: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
        let coroots: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
        let coroot_pairing: Vec<Vec<i64>> = coroots
            .iter()
            .map(|c| (0..r).map(|i| (0..r).map(|j| c[j] * cartan[i][j]).sum()).collect())
            .collect();
        let affine_root = (0..coroots.len())
            .max_by_key(|&b| (coroots[b].iter().sum::<i64>(), std::cmp::Reverse(b)))
            .unwrap();
        let theta_height: i64 = roots.iter().map(|b| b.iter().sum::<i64>()).max().unwrap();
        let mut rs = RootSystem {
            tag: None,
            rank: r,
            cartan,
            roots,
            coroots,
            coroot_pairing,
            coxeter_number: (theta_height + 1) as u32,
            affine_root,
            weyl: Vec::new(),
            weyl_index: HashMap::new(),
            mul: Vec::new(),
            inv: Vec::new(),
            reflection: Vec::new(),
        };
        rs.build_weyl();
        Ok(rs)
    }

    fn reflection_matrix(&self, b: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for j in 0..r {
            // column j is s_β(α_j) = α_j − ⟨α_j, β∨⟩ β
            for i in 0..r {
                m[i * r + j] = i64::from(i == j) - self.coroot_pairing[b][j] * self.roots[b][i];
            }
        }
        m
    }

    fn build_weyl(&mut self) {
        let r = self.rank;
        let matmul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut c = vec![0; r * r];
            for i in 0..r {
                for k in 0..r {
                    if a[i * r + k] != 0 {
                        for j in 0..r {
                            c[i * r + j] += a[i * r + k] * b[k * r + j];
                        }
                    }
                }
            }
            c
        };
        let id: Vec<i64> = (0..r * r).map(|k| i64::from(k / r == k % r)).collect();
        let gens: Vec<Vec<i64>> = (0..r).map(|i| self.reflection_matrix(i)).collect();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u16)]);
        let mut k = 0;
        while k < elems.len() {
            for g in &gens {
                let m = matmul(&elems[k], g);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), elems.len() as u16);
                    elems.push(m);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mul: Vec<Vec<u16>> = (0..n)
            .map(|a| (0..n).map(|b| index[&matmul(&elems[a], &elems[b])]).collect())
            .collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap() as u16).collect();
        self.reflection = (0..self.roots.len()).map(|b| index[&self.reflection_matrix(b)]).collect();
        self.weyl = elems;
        self.weyl_index = index;
        self.mul = mul;
        self.inv = inv;
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn weyl_matrix(&self, w: u16) -> &[i64] {
        &self.weyl[w as usize]
    }

    pub fn weyl_mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize][b as usize]
    }

    pub fn weyl_inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// Index of the finite reflection `s_β` for the positive root `b`.
    pub fn reflection_index(&self, b: usize) -> u16 {
        self.reflection[b]
    }

    /// Index of a finite Weyl group element given by its matrix, if any.
    pub fn weyl_lookup(&self, m: &[i64]) -> Option<u16> {
        self.weyl_index.get(m).copied()
    }

    /// `⟨λ, β∨⟩` for the positive root with index `b`.
    pub fn pair(&self, lambda: &Pt, b: usize) -> Q {
        let c = &self.coroot_pairing[b];
        let mut s = Q::zero();
        for i in 0..self.rank {
            s += lambda[i] * c[i];
        }
        s
    }

    pub fn root_pt(&self, b: usize) -> Pt {
        let mut p = zero_pt();
        for i in 0..self.rank {
            p[i] = Q::from_integer(self.roots[b][i]);
        }
        p
    }

    /// Fundamental weight `ω_i` in simple-root coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Pt {
        // Solve Σ_k x_k cartan[k][j] = δ_ij.
        let r = self.rank;
        let mut a: Vec<Vec<Q>> = (0..r)
            .map(|j| {
                let mut row: Vec<Q> = (0..r).map(|k| Q::from_integer(self.cartan[k][j])).collect();
                row.push(if i == j { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        for c in 0..r {
            let p = (c..r).find(|&k| !a[k][c].is_zero()).unwrap();
            a.swap(c, p);
            let pv = a[c][c];
            for x in a[c].iter_mut() {
                *x /= pv;
            }
            for k in 0..r {
                if k != c && !a[k][c].is_zero() {
                    let f = a[k][c];
                    for j in 0..=r {
                        let t = a[c][j];
                        a[k][j] -= f * t;
                    }
                }
            }
        }
        let mut p = zero_pt();
        for k in 0..r {
            p[k] = a[k][r];
        }
        p
    }

    /// The weight `Σ c_i ω_i`.
    pub fn weight(&self, coords: &[i64]) -> Pt {
        let mut p = zero_pt();
        for (i, &c) in coords.iter().enumerate().take(self.rank) {
            let w = self.fundamental_weight(i);
            for k in 0..self.rank {
                p[k] += w[k] * c;
            }
        }
        p
    }

    pub fn rho(&self) -> Pt {
        let mut p = zero_pt();
        for b in &self.roots {
            for i in 0..self.rank {
                p[i] += Q::new(b[i], 2);
            }
        }
        p
    }

    pub fn weyl_act(&self, w: u16, lambda: &Pt) -> Pt {
        let m = &self.weyl[w as usize];
        let r = self.rank;
        let mut out = zero_pt();
        for i in 0..r {
            let mut s = Q::zero();
            for j in 0..r {
                s += lambda[j] * m[i * r + j];
            }
            out[i] = s;
        }
        out
    }

    fn weyl_act_int(&self, w: u16, g: &[i64; MAX_RANK]) -> [i64; MAX_RANK] {
        let m = &self.weyl[w as usize];
        let r = self.rank;
        let mut out = [0; MAX_RANK];
        for i in 0..r {
            out[i] = (0..r).map(|j| m[i * r + j] * g[j]).sum();
        }
        out
    }

    /// `a ∘ b` as affine maps.
    pub fn compose(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> AffineWeylElement {
        let mut gamma = self.weyl_act_int(a.w, &b.gamma);
        for i in 0..self.rank {
            gamma[i] += a.gamma[i];
        }
        AffineWeylElement { w: self.weyl_mul(a.w, b.w), gamma }
    }

    pub fn inverse(&self, a: &AffineWeylElement) -> AffineWeylElement {
        let wi = self.weyl_inv(a.w);
        let mut gamma = self.weyl_act_int(wi, &a.gamma);
        for g in gamma.iter_mut() {
            *g = -*g;
        }
        AffineWeylElement { w: wi, gamma }
    }

    pub fn affine_act(&self, g: &AffineWeylElement, lambda: &Pt) -> Pt {
        let mut out = self.weyl_act(g.w, lambda);
        for i in 0..self.rank {
            out[i] += Q::from_integer(g.gamma[i]);
        }
        out
    }

    /// `s_{β,n}: λ ↦ λ − (⟨λ,β∨⟩ − n)β`.
    pub fn affine_reflection(&self, b: usize, n: i64) -> AffineWeylElement {
        let mut gamma = [0; MAX_RANK];
        for i in 0..self.rank {
            gamma[i] = n * self.roots[b][i];
        }
        AffineWeylElement { w: self.reflection[b], gamma }
    }

    pub fn translation(&self, gamma: &[i64]) -> AffineWeylElement {
        let mut g = [0; MAX_RANK];
        g[..gamma.len()].copy_from_slice(gamma);
        AffineWeylElement { w: 0, gamma: g }
    }

    /// Number of simple affine reflections, `rank + 1`.
    pub fn num_simple_affine(&self) -> usize {
        self.rank + 1
    }

    /// Simple affine reflection `i`: `s_{α_i,0}` for `i < rank`, and
    /// `s_{α,1}` for the root with highest coroot when `i == rank`.
    pub fn simple_affine(&self, i: usize) -> Result<AffineWeylElement> {
        if i < self.rank {
            // simple roots come first among roots of height one
            let b = self.roots.iter().position(|r| r.iter().sum::<i64>() == 1 && r[i] == 1).unwrap();
            Ok(self.affine_reflection(b, 0))
        } else if i == self.rank {
            Ok(self.affine_reflection(self.affine_root, 1))
        } else {
            Err(AjsError::NotSimpleAffine(i))
        }
    }

    /// Index of the positive root `Σ c_i α_i`, if it is one.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == coords)
    }
}

/// The GKM condition over a field of characteristic `p` (`p = 0` for `Q`):
/// `p ≠ 2` and no two distinct positive coroots are proportional in `X∨ ⊗ k`.
pub fn gkm_check(rs: &RootSystem, p: u64) -> bool {
    if p == 2 {
        return false;
    }
    let n = rs.num_positive_roots();
    let reduce = |x: i64| -> i64 {
        if p == 0 {
            x
        } else {
            x.rem_euclid(p as i64)
        }
    };
    for a in 0..n {
        let u = &rs.coroot_pairing[a];
        if u.iter().all(|&x| reduce(x) == 0) {
            return false;
        }
        for b in (a + 1)..n {
            let v = &rs.coroot_pairing[b];
            let mut proportional = true;
            for i in 0..rs.rank {
                for j in (i + 1)..rs.rank {
                    if reduce(u[i] * v[j] - u[j] * v[i]) != 0 {
                        proportional = false;
                    }
                }
            }
            if proportional {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_data() {
        let cases = [(TypeTag::A1, 1, 2, 2), (TypeTag::A2, 3, 3, 6), (TypeTag::B2, 4, 4, 8), (TypeTag::G2, 6, 6, 12)];
        for (tag, npos, h, order) in cases {
            let rs = RootSystem::build(tag);
            assert_eq!(rs.num_positive_roots(), npos, "{tag}");
            assert_eq!(rs.coxeter_number, h, "{tag}");
            assert_eq!(rs.weyl_order(), order, "{tag}");
            for b in 0..npos {
                assert_eq!(rs.pair(&rs.root_pt(b), b), Q::from_integer(2));
                for c in 0..npos {
                    assert!(rs.pair(&rs.root_pt(c), b).is_integer());
                }
            }
        }
    }

    #[test]
    fn a2_roots() {
        let rs = RootSystem::build(TypeTag::A2);
        assert_eq!(rs.roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn affine_reflection_a1() {
        let rs = RootSystem::build(TypeTag::A1);
        let mut lam = zero_pt();
        lam[0] = Q::new(1, 4); // ⟨λ,α∨⟩ = 1/2
        let img = rs.affine_act(&rs.affine_reflection(0, 1), &lam);
        assert_eq!(rs.pair(&img, 0), Q::new(3, 2));
        let z = rs.affine_act(&rs.affine_reflection(0, 0), &zero_pt());
        assert_eq!(z, zero_pt());
        let t = rs.affine_act(&rs.translation(&[1]), &lam);
        assert_eq!(t[0], lam[0] + 1);
    }

    #[test]
    fn gkm_small() {
        let a1 = RootSystem::build(TypeTag::A1);
        assert!(gkm_check(&a1, 0));
        assert!(!gkm_check(&a1, 2));
        assert!(gkm_check(&a1, 3));
    }

    #[test]
    fn fundamental_weights_dual() {
        for tag in [TypeTag::A2, TypeTag::B2, TypeTag::G2] {
            let rs = RootSystem::build(tag);
            for i in 0..2 {
                let w = rs.fundamental_weight(i);
                for j in 0..2 {
                    let sj = rs.root_index(&[i64::from(j == 0), i64::from(j == 1)]).unwrap();
                    assert_eq!(rs.pair(&w, sj), Q::from_integer(i64::from(i == j)));
                }
            }
        }
    }
}
