//! Finitely generated `S^α`-submodules of `(S^∅)^n`.
//!
//! Every operation clears coroot denominators to a common monomial `D`,
//! works with the polynomial module `D·L ∩ S^n` saturated at the invertible
//! coroots, and hands that to the PID backend (one variable) or the module
//! Gröbner backend.

use super::groebner;
use super::localized::{CorootRing, Localization, LocalizedElem};
use super::pid;
use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeBackend {
    Pid,
    Groebner,
}

impl LatticeBackend {
    pub fn for_ring(ring: &CorootRing) -> LatticeBackend {
        if ring.nvars == 1 {
            LatticeBackend::Pid
        } else {
            LatticeBackend::Groebner
        }
    }

    fn normalize(self, gens: &[Vec<Poly>], n: usize) -> Vec<Vec<Poly>> {
        match self {
            LatticeBackend::Pid => pid::hermite(gens, n),
            LatticeBackend::Groebner => groebner::groebner(gens),
        }
    }

    fn member(self, basis: &[Vec<Poly>], w: &[Poly]) -> bool {
        match self {
            LatticeBackend::Pid => pid::member(basis, w),
            LatticeBackend::Groebner => groebner::member(basis, w),
        }
    }

    fn intersect(self, a: &[Vec<Poly>], b: &[Vec<Poly>], n: usize, nvars: usize) -> Vec<Vec<Poly>> {
        match self {
            LatticeBackend::Pid => pid::intersect(a, b, n),
            LatticeBackend::Groebner => groebner::intersect(a, b, n, nvars),
        }
    }

    fn equal(self, a: &[Vec<Poly>], b: &[Vec<Poly>]) -> bool {
        a.iter().all(|g| self.member(b, g)) && b.iter().all(|g| self.member(a, g))
    }
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub ambient: usize,
    pub tag: Localization,
    pub gens: Vec<Vec<LocalizedElem>>,
}

/// Result of the freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    pub is_free: bool,
    pub rank: usize,
    pub degrees: Vec<i64>,
}

impl Lattice {
    pub fn zero(ambient: usize, tag: Localization) -> Lattice {
        Lattice { ambient, tag, gens: Vec::new() }
    }

    pub fn new(ambient: usize, tag: Localization, gens: Vec<Vec<LocalizedElem>>) -> Lattice {
        assert!(gens.iter().all(|g| g.len() == ambient), "generator length must match the ambient rank");
        Lattice { ambient, tag, gens }
    }

    /// Generators given by polynomial vectors.
    pub fn from_polys(ring: &CorootRing, tag: Localization, gens: &[Vec<Poly>], ambient: usize) -> Lattice {
        let gens = gens
            .iter()
            .map(|g| g.iter().map(|p| LocalizedElem::from_poly(ring, p.clone(), tag)).collect())
            .collect();
        Lattice::new(ambient, tag, gens)
    }

    fn common_den(&self, extra: &[&[LocalizedElem]], ncor: usize) -> Vec<u32> {
        let mut den = vec![0u32; ncor];
        for e in self.gens.iter().flatten().chain(extra.iter().flat_map(|v| v.iter())) {
            for (d, x) in den.iter_mut().zip(&e.den) {
                *d = (*d).max(*x);
            }
        }
        den
    }

    fn cleared(v: &[LocalizedElem], ring: &CorootRing, den: &[u32]) -> Vec<Poly> {
        v.iter().map(|e| e.numerator_over(ring, den)).collect()
    }

    /// Saturated polynomial module `D·L ∩ S^n` in backend normal form.
    fn poly_module(&self, ring: &CorootRing, den: &[u32], be: LatticeBackend) -> Vec<Vec<Poly>> {
        let gens: Vec<Vec<Poly>> = self.gens.iter().map(|g| Lattice::cleared(g, ring, den)).collect();
        let basis = be.normalize(&gens, self.ambient);
        saturate(basis, &ring.unit_product(self.tag), self.ambient, ring.nvars, be)
    }

    fn from_module(ring: &CorootRing, tag: Localization, module: &[Vec<Poly>], den: &[u32], ambient: usize) -> Lattice {
        let gens = module
            .iter()
            .map(|g| {
                g.iter()
                    .map(|p| LocalizedElem { num: p.clone(), den: den.to_vec(), tag }.reduced(ring))
                    .collect()
            })
            .collect();
        Lattice::new(ambient, tag, gens)
    }

    pub fn membership(&self, ring: &CorootRing, w: &[LocalizedElem]) -> bool {
        assert_eq!(w.len(), self.ambient);
        if w.iter().any(|e| !e.is_in(self.tag)) {
            return false;
        }
        let be = LatticeBackend::for_ring(ring);
        let den = self.common_den(&[w], ring.num_coroots());
        let module = self.poly_module(ring, &den, be);
        be.member(&module, &Lattice::cleared(w, ring, &den))
    }

    pub fn sum(&self, ring: &CorootRing, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.clone();
        all.gens.extend(other.gens.iter().cloned());
        all.normalized(ring)
    }

    pub fn intersect(&self, ring: &CorootRing, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let be = LatticeBackend::for_ring(ring);
        let gens2: Vec<&[LocalizedElem]> = other.gens.iter().map(|g| g.as_slice()).collect();
        let den = self.common_den(&gens2, ring.num_coroots());
        let a = self.poly_module(ring, &den, be);
        let b = other.poly_module(ring, &den, be);
        let i = be.intersect(&a, &b, self.ambient, ring.nvars);
        Lattice::from_module(ring, self.tag, &i, &den, self.ambient)
    }

    /// Same lattice with backend-normalized generators.
    pub fn normalized(&self, ring: &CorootRing) -> Lattice {
        let be = LatticeBackend::for_ring(ring);
        let den = self.common_den(&[], ring.num_coroots());
        let m = self.poly_module(ring, &den, be);
        Lattice::from_module(ring, self.tag, &m, &den, self.ambient)
    }

    pub fn equals(&self, ring: &CorootRing, other: &Lattice) -> bool {
        let be = LatticeBackend::for_ring(ring);
        let gens2: Vec<&[LocalizedElem]> = other.gens.iter().map(|g| g.as_slice()).collect();
        let den = self.common_den(&gens2, ring.num_coroots());
        be.equal(&self.poly_module(ring, &den, be), &other.poly_module(ring, &den, be))
    }

    /// Freeness of the saturated polynomial module, with graded basis
    /// degrees shifted back by the cleared denominator. `None` when the
    /// generators are not homogeneous (rank-two path only).
    pub fn freeness_rank(&self, ring: &CorootRing) -> Option<Freeness> {
        let be = LatticeBackend::for_ring(ring);
        let den = self.common_den(&[], ring.num_coroots());
        let m = self.poly_module(ring, &den, be);
        let (is_free, rank, degrees) = match be {
            LatticeBackend::Pid => pid::freeness(&m),
            LatticeBackend::Groebner => groebner::freeness(&m)?,
        };
        let shift = 2 * den.iter().map(|&e| e as i64).sum::<i64>();
        Some(Freeness { is_free, rank, degrees: degrees.into_iter().map(|d| d - shift).collect() })
    }
}

/// `N : E^∞`, iterating `N ← N : E` until stable.
fn saturate(mut n: Vec<Vec<Poly>>, e: &Poly, ambient: usize, nvars: usize, be: LatticeBackend) -> Vec<Vec<Poly>> {
    if e.degree() == Some(0) || n.is_empty() {
        return n;
    }
    let e_free: Vec<Vec<Poly>> = (0..ambient)
        .map(|i| (0..ambient).map(|j| if i == j { e.clone() } else { Poly::zero(nvars) }).collect())
        .collect();
    loop {
        let inter = be.intersect(&n, &e_free, ambient, nvars);
        let colon: Vec<Vec<Poly>> = inter
            .iter()
            .map(|g| g.iter().map(|p| p.exact_div(e).expect("multiple of E")).collect())
            .collect();
        let next = be.normalize(&colon.iter().chain(&n).cloned().collect::<Vec<_>>(), ambient);
        if be.equal(&next, &n) {
            return n;
        }
        n = next;
    }
}
