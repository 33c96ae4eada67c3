//! Elements of the localizations `S^∅` and `S^α`: a polynomial over a
//! monomial in the positive coroots.

use std::fmt;

use crate::root_system::RootSystem;

use super::poly::{Coef, Poly};

/// Which coroots may appear in denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Localization {
    /// `S^∅`: every positive coroot is inverted.
    Empty,
    /// `S^α`: every positive coroot except the one of root `α` (by index).
    Alpha(usize),
}

impl Localization {
    pub fn allows(&self, b: usize) -> bool {
        match *self {
            Localization::Empty => true,
            Localization::Alpha(a) => a != b,
        }
    }
}

/// `S` together with its positive coroots as linear forms in the coweight basis.
#[derive(Clone, Debug)]
pub struct CorootRing {
    pub nvars: usize,
    pub coroots: Vec<Poly>,
}

impl CorootRing {
    pub fn new(rs: &RootSystem) -> CorootRing {
        let r = rs.rank;
        let coroots = (0..rs.num_positive_roots())
            .map(|b| Poly::linear(&rs.coroot_pairing[b][..r]))
            .collect();
        CorootRing { nvars: r, coroots }
    }

    pub fn num_coroots(&self) -> usize {
        self.coroots.len()
    }

    pub fn coroot(&self, b: usize) -> &Poly {
        &self.coroots[b]
    }

    /// `∏ (β∨)^{e_β}`.
    pub fn monomial(&self, exps: &[u32]) -> Poly {
        let mut p = Poly::one(self.nvars);
        for (b, &e) in exps.iter().enumerate() {
            if e > 0 {
                p = &p * &self.coroots[b].pow(e);
            }
        }
        p
    }

    /// Product of all allowed coroots for a localization.
    pub fn unit_product(&self, tag: Localization) -> Poly {
        let exps: Vec<u32> = (0..self.num_coroots()).map(|b| tag.allows(b) as u32).collect();
        self.monomial(&exps)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalizedElem {
    pub num: Poly,
    pub den: Vec<u32>,
    pub tag: Localization,
}

impl LocalizedElem {
    pub fn from_poly(ring: &CorootRing, num: Poly, tag: Localization) -> LocalizedElem {
        LocalizedElem { num, den: vec![0; ring.num_coroots()], tag }
    }

    pub fn zero(ring: &CorootRing, tag: Localization) -> LocalizedElem {
        LocalizedElem::from_poly(ring, Poly::zero(ring.nvars), tag)
    }

    pub fn constant(ring: &CorootRing, c: Coef, tag: Localization) -> LocalizedElem {
        LocalizedElem::from_poly(ring, Poly::constant(ring.nvars, c), tag)
    }

    /// `num / ∏ (β∨)^{den_β}`, reduced. Fails if a disallowed coroot divides.
    pub fn new(ring: &CorootRing, num: Poly, den: Vec<u32>, tag: Localization) -> Option<LocalizedElem> {
        if den.iter().enumerate().any(|(b, &e)| e > 0 && !tag.allows(b)) {
            return None;
        }
        Some(LocalizedElem { num, den, tag }.reduced(ring))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels coroot factors shared by numerator and denominator.
    pub fn reduced(mut self, ring: &CorootRing) -> LocalizedElem {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return self;
        }
        for b in 0..self.den.len() {
            while self.den[b] > 0 {
                match self.num.exact_div(ring.coroot(b)) {
                    Some(q) => {
                        self.num = q;
                        self.den[b] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Rewrites over the denominator `den` (which must dominate `self.den`).
    pub fn numerator_over(&self, ring: &CorootRing, den: &[u32]) -> Poly {
        let extra: Vec<u32> = den.iter().zip(&self.den).map(|(a, b)| a - b).collect();
        &self.num * &ring.monomial(&extra)
    }

    pub fn add(&self, ring: &CorootRing, other: &LocalizedElem) -> LocalizedElem {
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let num = &self.numerator_over(ring, &den) + &other.numerator_over(ring, &den);
        LocalizedElem { num, den, tag: self.tag }.reduced(ring)
    }

    pub fn neg(&self) -> LocalizedElem {
        LocalizedElem { num: -&self.num, den: self.den.clone(), tag: self.tag }
    }

    pub fn sub(&self, ring: &CorootRing, other: &LocalizedElem) -> LocalizedElem {
        self.add(ring, &other.neg())
    }

    pub fn mul(&self, ring: &CorootRing, other: &LocalizedElem) -> LocalizedElem {
        let den = self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect();
        LocalizedElem { num: &self.num * &other.num, den, tag: self.tag }.reduced(ring)
    }

    pub fn mul_poly(&self, ring: &CorootRing, p: &Poly) -> LocalizedElem {
        LocalizedElem { num: &self.num * p, den: self.den.clone(), tag: self.tag }.reduced(ring)
    }

    /// Grading degree (generators of `S` in degree 2); `None` for zero or
    /// inhomogeneous numerators.
    pub fn degree(&self) -> Option<i64> {
        if !self.num.is_homogeneous() {
            return None;
        }
        let d = self.num.degree()? as i64;
        Some(2 * (d - self.den.iter().map(|&e| e as i64).sum::<i64>()))
    }

    /// Whether the element lies in `S^tag` (always true by construction,
    /// rechecked after arithmetic with mixed tags).
    pub fn is_in(&self, tag: Localization) -> bool {
        self.den.iter().enumerate().all(|(b, &e)| e == 0 || tag.allows(b))
    }
}

impl fmt::Debug for LocalizedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.iter().all(|&e| e == 0) {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / c{:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeTag;

    #[test]
    fn cancellation() {
        let rs = RootSystem::build(TypeTag::A2);
        let ring = CorootRing::new(&rs);
        let c0 = ring.coroot(0).clone();
        let mut den = vec![0; ring.num_coroots()];
        den[0] = 2;
        let x = LocalizedElem::new(&ring, &c0 * &c0, den.clone(), Localization::Empty).unwrap();
        assert_eq!(x.num, Poly::one(2));
        assert!(x.den.iter().all(|&e| e == 0));
        assert!(LocalizedElem::new(&ring, c0.clone(), den, Localization::Alpha(0)).is_none());
        let y = LocalizedElem::from_poly(&ring, c0, Localization::Empty);
        assert_eq!(y.degree(), Some(2));
    }
}
