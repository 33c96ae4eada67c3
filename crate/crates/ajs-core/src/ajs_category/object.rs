//! Objects of the combinatorial category `K`: a free `S^∅`-module `M(A)` of
//! rank `r_A` per alcove and an `S^α`-lattice `M(A,α) ⊆ M(A) ⊕ M(α↑A)` per
//! alcove and positive root.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::alcove_geom::{Alcove, Geometry};
use crate::root_system::Pt;

use super::tlattice::{qvec, TLattice};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KObject {
    ranks: BTreeMap<Alcove, usize>,
    lattices: BTreeMap<(Alcove, usize), TLattice>,
}

impl KObject {
    pub fn zero() -> KObject {
        KObject::default()
    }

    pub fn from_parts(ranks: BTreeMap<Alcove, usize>, lattices: BTreeMap<(Alcove, usize), TLattice>) -> KObject {
        let ranks = ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        let lattices = lattices.into_iter().filter(|(_, l)| !l.is_zero()).collect();
        KObject { ranks, lattices }
    }

    pub fn rank(&self, a: &Alcove) -> usize {
        self.ranks.get(a).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<Alcove, usize> {
        &self.ranks
    }

    pub fn support(&self) -> impl Iterator<Item = &Alcove> {
        self.ranks.keys()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `r_A + r_{α↑A}`.
    pub fn ambient(&self, geo: &Geometry, a: &Alcove, b: usize) -> usize {
        self.rank(a) + self.rank(&geo.up(b, a))
    }

    /// `M(A,α)`; the zero lattice when absent.
    pub fn lattice(&self, geo: &Geometry, a: &Alcove, b: usize) -> TLattice {
        match self.lattices.get(&(*a, b)) {
            Some(l) => l.clone(),
            None => TLattice::zero(self.ambient(geo, a, b)),
        }
    }

    pub fn stored_lattices(&self) -> impl Iterator<Item = (&(Alcove, usize), &TLattice)> {
        self.lattices.iter()
    }

    /// Every `(A, α)` whose ambient `M(A) ⊕ M(α↑A)` is nonzero.
    pub fn lattice_keys(&self, geo: &Geometry) -> Vec<(Alcove, usize)> {
        let mut keys = BTreeSet::new();
        for a in self.ranks.keys() {
            for b in 0..geo.rs.num_positive_roots() {
                keys.insert((*a, b));
                keys.insert((geo.down(b, a), b));
            }
        }
        keys.into_iter().collect()
    }

    /// Structural invariants: ambient ranks match and, for full-rank
    /// objects, each lattice spans its ambient after inverting `α∨`.
    pub fn check(&self, geo: &Geometry, full_rank: bool) -> Result<(), String> {
        for ((a, b), l) in &self.lattices {
            let n = self.ambient(geo, a, *b);
            if l.ambient != n {
                return Err(format!("lattice at ({}, {b}) has ambient {} but ranks give {n}", geo.label(a), l.ambient));
            }
        }
        if full_rank {
            for (a, b) in self.lattice_keys(geo) {
                let l = self.lattice(geo, &a, b);
                if l.rank() != l.ambient {
                    return Err(format!("lattice at ({}, {b}) has rank {} < {}", geo.label(&a), l.rank(), l.ambient));
                }
            }
        }
        Ok(())
    }

    /// Rescales by the unit `∏ (β∨)^{-k_β}` with `k_β` the smallest
    /// `β∨`-power occurring in any `β`-lattice, so that objects differing by a
    /// global coroot monomial become equal.
    pub fn normalized(&self) -> KObject {
        let mut low: BTreeMap<usize, u32> = BTreeMap::new();
        for ((_, b), l) in &self.lattices {
            if let Some(k) = l.basis().iter().map(|(k, _)| *k).min() {
                let e = low.entry(*b).or_insert(k);
                *e = (*e).min(k);
            }
        }
        let lattices = self.lattices.iter().map(|((a, b), l)| ((*a, *b), l.unshifted(low[b]))).collect();
        KObject { ranks: self.ranks.clone(), lattices }
    }

    /// `M ⊕ N` with block order `[M(A), N(A)]`.
    pub fn direct_sum(&self, geo: &Geometry, other: &KObject) -> KObject {
        let mut ranks = self.ranks.clone();
        for (a, r) in &other.ranks {
            *ranks.entry(*a).or_insert(0) += r;
        }
        let mut keys: BTreeSet<(Alcove, usize)> = self.lattice_keys(geo).into_iter().collect();
        keys.extend(other.lattice_keys(geo));
        let mut lattices = BTreeMap::new();
        for (a, b) in keys {
            let up = geo.up(b, &a);
            let (ma, mb) = (self.rank(&a), self.rank(&up));
            let (na, nb) = (other.rank(&a), other.rank(&up));
            let n = ma + na + mb + nb;
            let pos_m: Vec<usize> = (0..ma).chain(ma + na..ma + na + mb).collect();
            let pos_n: Vec<usize> = (ma..ma + na).chain(ma + na + mb..n).collect();
            let mut gens = self.lattice(geo, &a, b).embed(&pos_m, n);
            gens.extend(other.lattice(geo, &a, b).embed(&pos_n, n));
            lattices.insert((a, b), TLattice::new(n, gens));
        }
        KObject::from_parts(ranks, lattices)
    }

    /// Canonical JSON: ranks by alcove label, then the nonzero lattices with
    /// generators as `(α∨)` powers and rational coefficient arrays.
    pub fn to_json(&self, geo: &Geometry) -> Value {
        let ranks: Vec<Value> = self.ranks.iter().map(|(a, r)| json!({"alcove": geo.label(a), "rank": r})).collect();
        let lattices: Vec<Value> = self
            .lattices
            .iter()
            .map(|((a, b), l)| {
                let gens: Vec<Value> = l
                    .basis()
                    .iter()
                    .map(|(k, v)| json!({"coroot_power": k, "vector": v.iter().map(|c| c.to_string()).collect::<Vec<_>>()}))
                    .collect();
                json!({"alcove": geo.label(a), "root": b, "ambient": l.ambient, "generators": gens})
            })
            .collect();
        json!({"ranks": ranks, "lattices": lattices})
    }
}

/// `Q_μ`: rank one exactly on the alcoves around `μ`; lattices are `S^α`,
/// the congruence lattice `{(x, y) : x ≡ y mod α∨}`, or `α∨S^α` according
/// to which of `A`, `α↑A` lie around `μ`.
pub fn make_q_mu(geo: &Geometry, mu: &Pt) -> KObject {
    let around: BTreeSet<Alcove> = geo.alcoves_around(mu).into_iter().collect();
    let ranks: BTreeMap<Alcove, usize> = around.iter().map(|a| (*a, 1)).collect();
    let mut lattices = BTreeMap::new();
    for b in 0..geo.rs.num_positive_roots() {
        for a in &around {
            let up = geo.up(b, a);
            let l = if around.contains(&up) {
                TLattice::new(2, vec![(1, qvec(&[1, 0])), (0, qvec(&[1, 1]))])
            } else {
                TLattice::full(1)
            };
            lattices.insert((*a, b), l);
            let down = geo.down(b, a);
            if !around.contains(&down) {
                lattices.insert((down, b), TLattice::new(1, vec![(1, qvec(&[1]))]));
            }
        }
    }
    KObject::from_parts(ranks, lattices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{zero_pt, TypeTag};

    #[test]
    fn a1_q_zero() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        assert_eq!(q.rank(&geo.a1(-1)), 1);
        assert_eq!(q.rank(&geo.a1(0)), 1);
        assert_eq!(q.total_rank(), 2);
        let cong = TLattice::new(2, vec![(1, qvec(&[1, 0])), (0, qvec(&[1, 1]))]);
        assert!(q.lattice(&geo, &geo.a1(-1), 0).equals(&cong));
        assert!(q.lattice(&geo, &geo.a1(0), 0).equals(&TLattice::full(1)));
        assert!(q.lattice(&geo, &geo.a1(-2), 0).equals(&TLattice::new(1, vec![(1, qvec(&[1]))])));
        assert!(q.check(&geo, true).is_ok());
    }

    #[test]
    fn a2_q_zero_has_six_alcoves() {
        let geo = Geometry::of_type(TypeTag::A2);
        let q = make_q_mu(&geo, &zero_pt());
        assert_eq!(q.ranks().len(), 6);
        assert!(q.ranks().values().all(|&r| r == 1));
        assert!(q.check(&geo, true).is_ok());
    }

    #[test]
    fn direct_sum_adds_ranks() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let qq = q.direct_sum(&geo, &q);
        assert_eq!(qq.rank(&geo.a1(0)), 2);
        assert_eq!(qq.lattice(&geo, &geo.a1(-1), 0).rank(), 4);
    }
}
