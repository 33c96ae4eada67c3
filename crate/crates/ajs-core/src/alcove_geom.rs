//! Alcoves as a principal homogeneous set for the affine Weyl group.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use crate::error::{AjsError, Result};
use crate::root_system::{zero_pt, AffineWeylElement, Pt, RootSystem, TypeTag, Q};

/// The alcove `A_w = w(A_e)`, with its barycenter cached.
///
/// Equality, hashing and ordering only look at the group element; ordering is
/// by barycenter, which determines the element.
#[derive(Clone, Copy, Debug)]
pub struct Alcove {
    pub elem: AffineWeylElement,
    pub barycenter: Pt,
}

impl PartialEq for Alcove {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}
impl Eq for Alcove {}
impl Hash for Alcove {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elem.hash(state)
    }
}
impl PartialOrd for Alcove {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Alcove {
    fn cmp(&self, other: &Self) -> Ordering {
        self.barycenter.cmp(&other.barycenter).then_with(|| self.elem.cmp(&other.elem))
    }
}

/// A root system together with the fundamental alcove data.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub rs: RootSystem,
    base_barycenter: Pt,
    simple: Vec<AffineWeylElement>,
    simple_index: Vec<usize>,
}

impl Geometry {
    pub fn new(rs: RootSystem) -> Geometry {
        let r = rs.rank;
        let mut b = zero_pt();
        for i in 0..r {
            let m = rs.coroots[rs.affine_root][i];
            let w = rs.fundamental_weight(i);
            for k in 0..r {
                b[k] += w[k] / Q::from_integer(m * (r as i64 + 1));
            }
        }
        let simple: Vec<AffineWeylElement> =
            (0..rs.num_simple_affine()).map(|i| rs.simple_affine(i).unwrap()).collect();
        let simple_index = (0..r)
            .map(|i| rs.roots.iter().position(|x| x.iter().sum::<i64>() == 1 && x[i] == 1).unwrap())
            .collect();
        Geometry { rs, base_barycenter: b, simple, simple_index }
    }

    pub fn of_type(tag: TypeTag) -> Geometry {
        Geometry::new(RootSystem::build(tag))
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn alcove(&self, elem: AffineWeylElement) -> Alcove {
        Alcove { elem, barycenter: self.rs.affine_act(&elem, &self.base_barycenter) }
    }

    pub fn fundamental(&self) -> Alcove {
        self.alcove(AffineWeylElement::IDENTITY)
    }

    /// `A_x · s = A_{xs}` for a simple affine reflection `s` (by index).
    pub fn right_act(&self, a: &Alcove, s: usize) -> Result<Alcove> {
        let g = self.simple.get(s).ok_or(AjsError::NotSimpleAffine(s))?;
        Ok(self.alcove(self.rs.compose(&a.elem, g)))
    }

    /// Right action by a word of simple affine reflections, applied left to right.
    pub fn right_act_word(&self, a: &Alcove, word: &[usize]) -> Result<Alcove> {
        let mut cur = *a;
        for &s in word {
            cur = self.right_act(&cur, s)?;
        }
        Ok(cur)
    }

    pub fn left_act(&self, g: &AffineWeylElement, a: &Alcove) -> Alcove {
        self.alcove(self.rs.compose(g, &a.elem))
    }

    /// `⟨λ_A, β∨⟩`.
    pub fn pairing(&self, a: &Alcove, b: usize) -> Q {
        self.rs.pair(&a.barycenter, b)
    }

    /// `⌊⟨λ_A, β∨⟩⌋` for every positive root: the strip coordinates of `A`.
    pub fn strips(&self, a: &Alcove) -> Vec<i64> {
        (0..self.rs.num_positive_roots()).map(|b| self.pairing(a, b).floor().to_integer()).collect()
    }

    /// `β↑A = s_{β,n}A` with `n` minimal such that `A ⊂ H^-_{β,n}`.
    pub fn up(&self, b: usize, a: &Alcove) -> Alcove {
        let n = self.pairing(a, b).floor().to_integer() + 1;
        self.left_act(&self.rs.affine_reflection(b, n), a)
    }

    /// Inverse of [`Geometry::up`].
    pub fn down(&self, b: usize, a: &Alcove) -> Alcove {
        let n = self.pairing(a, b).floor().to_integer();
        self.left_act(&self.rs.affine_reflection(b, n), a)
    }

    /// Translate by `γ ∈ ZR` (simple-root coordinates).
    pub fn translate(&self, a: &Alcove, gamma: &[i64]) -> Alcove {
        self.left_act(&self.rs.translation(gamma), a)
    }

    pub fn is_regular(&self, lambda: &Pt) -> bool {
        (0..self.rs.num_positive_roots()).all(|b| !self.rs.pair(lambda, b).is_integer())
    }

    /// The unique alcove containing the regular point `λ`.
    pub fn alcove_of_weight(&self, lambda: &Pt) -> Result<Alcove> {
        if !self.is_regular(lambda) {
            return Err(AjsError::Singular);
        }
        let rs = &self.rs;
        let r = rs.rank;
        let mut g = AffineWeylElement::IDENTITY;
        let mut mu = *lambda;
        loop {
            let step = (0..r)
                .find(|&i| rs.pair(&mu, self.simple_index[i]) < Q::zero())
                .or_else(|| (rs.pair(&mu, rs.affine_root) > Q::one()).then_some(r));
            match step {
                Some(i) => {
                    let s = self.simple[i];
                    mu = rs.affine_act(&s, &mu);
                    g = rs.compose(&s, &g);
                }
                None => break,
            }
        }
        Ok(self.alcove(rs.inverse(&g)))
    }

    /// Whether the point `μ` lies in the closure of `A`.
    pub fn closure_contains(&self, a: &Alcove, mu: &Pt) -> bool {
        (0..self.rs.num_positive_roots()).all(|b| {
            let n = Q::from_integer(self.pairing(a, b).floor().to_integer());
            let c = self.rs.pair(mu, b);
            n <= c && c <= n + Q::one()
        })
    }

    /// All alcoves whose closure contains the weight `μ`; `|W|` of them.
    pub fn alcoves_around(&self, mu: &Pt) -> Vec<Alcove> {
        let mut out: Vec<Alcove> = (0..self.rs.weyl_order() as u16)
            .map(|w| {
                let mut p = self.rs.weyl_act(w, &self.base_barycenter);
                for i in 0..self.rank() {
                    p[i] += mu[i];
                }
                self.alcove_of_weight(&p).expect("interior point")
            })
            .collect();
        out.sort();
        out
    }

    /// Number of hyperplanes separating two alcoves.
    pub fn distance(&self, a: &Alcove, b: &Alcove) -> u64 {
        let sa = self.strips(a);
        let sb = self.strips(b);
        sa.iter().zip(&sb).map(|(x, y)| (x - y).unsigned_abs()).sum()
    }

    /// A word `s_1 … s_n` with `to = from · s_1 ⋯ s_n`, read off from the walls
    /// crossed by a straight segment between interior points. Both barycenters
    /// are pushed the same way, so the segment stays parallel to `λ_to − λ_from`;
    /// a second direction is tried if the first meets a codimension-2 face.
    pub fn gallery_word(&self, from: &Alcove, to: &Alcove) -> Vec<usize> {
        if from == to {
            return Vec::new();
        }
        let r = self.rank();
        let d1: Vec<Q> = (0..r).map(|i| Q::new(1, 2 * i as i64 + 3)).collect();
        let d2: Vec<Q> = (0..r).map(|i| Q::new(1, 5 - i as i64)).collect();
        let npos = self.rs.num_positive_roots();
        let mut eps = Q::new(1, 64);
        let mut tries = 0;
        loop {
            tries += 1;
            let dq = if tries > 12 { &d2 } else { &d1 };
            let mut p = from.barycenter;
            let mut q = to.barycenter;
            for i in 0..r {
                p[i] += eps * d1[i];
                q[i] += eps * dq[i];
            }
            let inside = self.alcove_of_weight(&p).map(|x| x == *from).unwrap_or(false)
                && self.alcove_of_weight(&q).map(|x| x == *to).unwrap_or(false);
            if !inside {
                eps /= 2;
                continue;
            }
            let mut crossings: Vec<(Q, usize, i64)> = Vec::new();
            for b in 0..npos {
                let c0 = self.rs.pair(&p, b);
                let c1 = self.rs.pair(&q, b);
                let (lo, hi) = if c0 < c1 { (c0, c1) } else { (c1, c0) };
                let mut n = lo.floor().to_integer() + 1;
                while Q::from_integer(n) < hi {
                    crossings.push(((Q::from_integer(n) - c0) / (c1 - c0), b, n));
                    n += 1;
                }
            }
            crossings.sort();
            if crossings.windows(2).any(|w| w[0].0 == w[1].0) {
                eps /= 2;
                continue;
            }
            let mut cur = *from;
            let mut word = Vec::with_capacity(crossings.len());
            for (_, b, n) in crossings {
                let next = self.left_act(&self.rs.affine_reflection(b, n), &cur);
                let s = (0..self.num_simple())
                    .find(|&s| self.right_act(&cur, s).unwrap() == next)
                    .expect("crossed hyperplane is a wall");
                word.push(s);
                cur = next;
            }
            return word;
        }
    }

    /// The alcove attached to `w` in the modular dictionary: the alcove of
    /// `w(ρ/p)`, i.e. `(w·_p ρ) − ρ` rescaled by `1/p` and shifted by `ρ/p`.
    pub fn dot_p_alcove(&self, w: &AffineWeylElement, p: u64) -> Result<Alcove> {
        if p == 0 {
            return Err(AjsError::Invalid("p must be positive".into()));
        }
        let mut rho = self.rs.rho();
        for x in rho.iter_mut() {
            *x /= Q::from_integer(p as i64);
        }
        self.alcove_of_weight(&self.rs.affine_act(w, &rho))
    }

    /// The element `w` with `A_w = A`.
    pub fn element_of(&self, a: &Alcove) -> AffineWeylElement {
        a.elem
    }

    /// Ã1 convenience: the alcove `(n, n+1)` in the coordinate `c = ⟨·,α∨⟩`.
    pub fn a1(&self, n: i64) -> Alcove {
        let mut p = zero_pt();
        p[0] = Q::new(2 * n + 1, 4);
        self.alcove_of_weight(&p).expect("interior point")
    }

    /// A short human-readable label: the strip coordinates.
    pub fn label(&self, a: &Alcove) -> String {
        let s = self.strips(a);
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Inverse of [`Geometry::label`].
    pub fn parse_label(&self, s: &str) -> Result<Alcove> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| AjsError::Invalid(format!("bad alcove label `{s}`"))))
            .collect::<Result<_>>()?;
        if v.len() != self.rs.num_positive_roots() {
            return Err(AjsError::Invalid(format!("bad alcove label `{s}`")));
        }
        // Solve for the point with pairings n + 1/2 on simple roots, then
        // check the full strip vector.
        let r = self.rank();
        let mut target = zero_pt();
        for i in 0..r {
            let fw = self.rs.fundamental_weight(i);
            for k in 0..r {
                target[k] += fw[k] * (Q::from_integer(v[self.simple_index[i]]) + Q::new(1, 2));
            }
        }
        for a in self.alcoves_near(&target) {
            if self.strips(&a) == v {
                return Ok(a);
            }
        }
        Err(AjsError::Invalid(format!("no alcove with strips `{s}`")))
    }

    fn alcoves_near(&self, p: &Pt) -> Vec<Alcove> {
        let mut base = *p;
        // nudge to a regular point
        for i in 0..self.rank() {
            base[i] += Q::new(1, 97 + 10 * i as i64);
        }
        let a = self.alcove_of_weight(&base).expect("regular");
        let mut out = vec![a];
        let mut frontier = vec![a];
        for _ in 0..3 {
            let mut next = Vec::new();
            for x in &frontier {
                for s in 0..self.num_simple() {
                    let y = self.right_act(x, s).unwrap();
                    if !out.contains(&y) {
                        out.push(y);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(w={}, γ={:?})", self.elem.w, self.elem.gamma)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Geometry {
        Geometry::of_type(TypeTag::A1)
    }

    fn c(geo: &Geometry, a: &Alcove) -> Q {
        geo.pairing(a, 0)
    }

    #[test]
    fn a1_right_action() {
        let geo = g1();
        let e = geo.fundamental();
        assert_eq!(c(&geo, &e), Q::new(1, 2));
        let s0 = geo.right_act(&e, 0).unwrap();
        assert_eq!(s0, geo.a1(-1));
        let s1 = geo.right_act(&e, 1).unwrap();
        assert_eq!(s1, geo.a1(1));
        assert_eq!(geo.right_act(&s1, 1).unwrap(), e);
        assert!(geo.right_act(&e, 2).is_err());
    }

    #[test]
    fn a1_up_down() {
        let geo = g1();
        assert_eq!(geo.up(0, &geo.a1(0)), geo.a1(1));
        assert_eq!(geo.up(0, &geo.a1(-1)), geo.a1(0));
        for n in -5..5 {
            assert_eq!(geo.down(0, &geo.up(0, &geo.a1(n))), geo.a1(n));
        }
    }

    #[test]
    fn a1_weight_map() {
        let geo = g1();
        let mut p = zero_pt();
        p[0] = Q::new(1, 4);
        assert_eq!(geo.alcove_of_weight(&p).unwrap(), geo.fundamental());
        p[0] = Q::new(3, 4);
        assert_eq!(geo.alcove_of_weight(&p).unwrap(), geo.a1(1));
        p[0] = Q::new(1, 2);
        assert_eq!(geo.alcove_of_weight(&p), Err(AjsError::Singular));
    }

    #[test]
    fn a1_galleries() {
        let geo = g1();
        assert_eq!(geo.gallery_word(&geo.a1(2), &geo.a1(0)), vec![0, 1]);
        assert_eq!(geo.gallery_word(&geo.a1(0), &geo.a1(1)), vec![1]);
        assert!(geo.gallery_word(&geo.a1(3), &geo.a1(3)).is_empty());
    }

    #[test]
    fn a2_up_distinct() {
        let geo = Geometry::of_type(TypeTag::A2);
        let e = geo.fundamental();
        assert_ne!(geo.up(0, &e), geo.up(1, &e));
    }

    #[test]
    fn galleries_land_on_target() {
        for tag in [TypeTag::A2, TypeTag::B2, TypeTag::G2] {
            let geo = Geometry::of_type(tag);
            let e = geo.fundamental();
            let far = geo.right_act_word(&e, &[0, 1, 2, 0, 1, 2, 1]).unwrap();
            let w = geo.gallery_word(&far, &e);
            assert_eq!(geo.right_act_word(&far, &w).unwrap(), e);
            assert_eq!(w.len() as u64, geo.distance(&far, &e));
        }
    }

    #[test]
    fn labels_round_trip() {
        let geo = Geometry::of_type(TypeTag::A2);
        let a = geo.right_act_word(&geo.fundamental(), &[2, 0, 1]).unwrap();
        assert_eq!(geo.parse_label(&geo.label(&a)).unwrap(), a);
    }

    #[test]
    fn dot_p_is_a_w() {
        let geo = g1();
        let w = geo.rs.compose(&geo.rs.translation(&[1]), &geo.rs.affine_reflection(0, 0));
        assert_eq!(geo.dot_p_alcove(&w, 5).unwrap(), geo.alcove(w));
    }
}
