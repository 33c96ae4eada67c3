//! The wall-crossing functor `ϑ_s^c` on `K`.

use std::collections::{BTreeMap, BTreeSet};

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::order_topology::AlcoveWindow;

use super::object::KObject;
use super::tlattice::TLattice;

/// `ϑ_s^c M(A) = M(A) ⊕ M(As)` with block order `[M(A), M(As)]`; lattices by
/// the three cases `As = α↑A`, `As = α↓A`, and otherwise.
pub fn theta_c(geo: &Geometry, s: usize, m: &KObject, window: Option<&AlcoveWindow>) -> Result<KObject> {
    let mut support: BTreeSet<Alcove> = BTreeSet::new();
    for a in m.support() {
        let b = geo.right_act(a, s)?;
        if let Some(w) = window {
            if !w.contains(a) || !w.contains(&b) {
                return Err(AjsError::Window(format!("s-partner of {} leaves the window", geo.label(a))));
            }
        }
        support.insert(*a);
        support.insert(b);
    }
    let mut ranks = BTreeMap::new();
    for a in &support {
        ranks.insert(*a, m.rank(a) + m.rank(&geo.right_act(a, s)?));
    }
    let out_ranks = |x: &Alcove| ranks.get(x).copied().unwrap_or(0);
    let mut keys: BTreeSet<(Alcove, usize)> = BTreeSet::new();
    for a in &support {
        for b in 0..geo.rs.num_positive_roots() {
            keys.insert((*a, b));
            keys.insert((geo.down(b, a), b));
        }
    }
    let mut lattices = BTreeMap::new();
    for (a, b) in keys {
        let up = geo.up(b, &a);
        let n_a = out_ranks(&a);
        let n = n_a + out_ranks(&up);
        if n == 0 {
            continue;
        }
        let as_ = geo.right_act(&a, s)?;
        let ups = geo.right_act(&up, s)?;
        let (ra, ras) = (m.rank(&a), m.rank(&as_));
        let (rb, rbs) = (m.rank(&up), m.rank(&ups));
        // ambient: [M(A), M(As)] ⊕ [M(α↑A), M((α↑A)s)]
        let pa: Vec<usize> = (0..ra).collect();
        let pas: Vec<usize> = (ra..ra + ras).collect();
        let pb: Vec<usize> = (n_a..n_a + rb).collect();
        let pbs: Vec<usize> = (n_a + rb..n_a + rb + rbs).collect();
        let cat = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().chain(y).copied().collect() };
        let mut gens = Vec::new();
        if as_ == up {
            // {(α∨x + y, y)}: here (α↑A)s = A, so the second block is [M(α↑A), M(A)].
            let l = m.lattice(geo, &a, b);
            gens.extend(l.shifted(1).embed(&cat(&pa, &pas), n));
            gens.extend(l.embed(&cat(&pa, &pas), n).into_iter().zip(l.embed(&cat(&pbs, &pb), n)).map(
                |((k, x), (_, y))| (k, x.iter().zip(&y).map(|(p, q)| p + q).collect()),
            ));
        } else if as_ == geo.down(b, &a) {
            // α∨·M(α↑A, α) on the [α↑A] block and M(α↓A, α) on the [A]
            // block, whose coordinates are [M(As), M(A)].
            if ups != geo.up(b, &up) {
                return Err(AjsError::Invalid("(α↑A)s ≠ α↑²A in the α↓ case".into()));
            }
            gens.extend(m.lattice(geo, &up, b).shifted(1).embed(&cat(&pb, &pbs), n));
            gens.extend(m.lattice(geo, &as_, b).embed(&cat(&pas, &pa), n));
        } else {
            if ups != geo.up(b, &as_) {
                return Err(AjsError::Invalid("(α↑A)s ≠ α↑(As) in the generic case".into()));
            }
            gens.extend(m.lattice(geo, &a, b).embed(&cat(&pa, &pb), n));
            gens.extend(m.lattice(geo, &as_, b).embed(&cat(&pas, &pbs), n));
        }
        lattices.insert((a, b), TLattice::new(n, gens));
    }
    Ok(KObject::from_parts(ranks, lattices))
}

/// Folds `theta_c` over a word.
pub fn theta_word(geo: &Geometry, word: &[usize], m: &KObject, window: Option<&AlcoveWindow>) -> Result<KObject> {
    let mut x = m.clone();
    for &s in word {
        x = theta_c(geo, s, &x, window)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ajs_category::object::make_q_mu;
    use crate::root_system::{zero_pt, TypeTag};

    #[test]
    fn a1_ranks() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &zero_pt());
        let t0 = theta_c(&geo, 0, &q, None).unwrap();
        assert_eq!(t0.rank(&geo.a1(-1)), 2);
        assert_eq!(t0.rank(&geo.a1(0)), 2);
        assert_eq!(t0.ranks().len(), 2);
        let t1 = theta_c(&geo, 1, &q, None).unwrap();
        for n in -2..=1 {
            assert_eq!(t1.rank(&geo.a1(n)), 1);
        }
        assert_eq!(t1.total_rank(), 2 * q.total_rank());
        assert!(t0.check(&geo, true).is_ok());
        assert!(t1.check(&geo, true).is_ok());
    }

    #[test]
    fn theta_commutes_with_direct_sums() {
        let geo = Geometry::of_type(TypeTag::A2);
        let q = make_q_mu(&geo, &zero_pt());
        let sum = q.direct_sum(&geo, &q);
        for s in 0..3 {
            let lhs = theta_c(&geo, s, &sum, None).unwrap();
            let one = theta_c(&geo, s, &q, None).unwrap();
            let rhs = one.direct_sum(&geo, &one);
            assert_eq!(lhs.ranks(), rhs.ranks());
            for (a, b) in lhs.lattice_keys(&geo) {
                assert_eq!(lhs.lattice(&geo, &a, b).rank(), rhs.lattice(&geo, &a, b).rank());
            }
        }
    }
}
