//! `Q(A)`: the indecomposable summand of `ϑ_{s_n} ⋯ ϑ_{s_1} Q_μ` with rank one
//! at `A`, for a special alcove `A_μ^-` strictly dominant of `A`.

use std::collections::BTreeMap;

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::order_topology::{special_minimum, AlcoveWindow};
use crate::root_system::Pt;

use super::object::{make_q_mu, KObject};
use super::split::decompose;
use super::theta::theta_c;

/// Where the construction of `Q(A)` starts.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub mu: Pt,
    pub start: Alcove,
    pub word: Vec<usize>,
}

fn candidate_weights(geo: &Geometry, a: &Alcove, reach: i64) -> Vec<Pt> {
    let r = geo.rank();
    let base: Vec<i64> = (0..r).map(|i| geo.rs.pair(&a.barycenter, i).floor().to_integer()).collect();
    let mut out = Vec::new();
    let mut off = vec![-1i64; r];
    loop {
        let coords: Vec<i64> = base.iter().zip(&off).map(|(b, o)| b + o).collect();
        out.push(geo.rs.weight(&coords));
        let mut i = 0;
        while i < r {
            off[i] += 1;
            if off[i] <= reach {
                break;
            }
            off[i] = -1;
            i += 1;
        }
        if i == r {
            return out;
        }
    }
}

fn strictly_dominant(geo: &Geometry, hi: &Alcove, lo: &Alcove) -> bool {
    (0..geo.rs.num_positive_roots()).all(|b| geo.pairing(hi, b) > geo.pairing(lo, b))
}

/// `A` itself when it is some `A_μ^-`; otherwise the nearest `A_μ^-` with
/// `⟨λ_{A′} − λ_A, α∨⟩ > 0` for all `α ∈ R^+` and the gallery word down to `A`.
pub fn recipe(geo: &Geometry, a: &Alcove) -> Result<Recipe> {
    let candidates = candidate_weights(geo, a, 3);
    for mu in &candidates {
        if special_minimum(geo, mu) == *a {
            return Ok(Recipe { mu: *mu, start: *a, word: Vec::new() });
        }
    }
    let best = candidates
        .iter()
        .map(|mu| (special_minimum(geo, mu), *mu))
        .filter(|(s, _)| strictly_dominant(geo, s, a))
        .min_by_key(|(s, _)| (geo.distance(s, a), *s))
        .ok_or_else(|| AjsError::Invalid(format!("no special alcove found above {}", geo.label(a))))?;
    Ok(Recipe { mu: best.1, start: best.0, word: geo.gallery_word(&best.0, a) })
}

/// Rank table after `ϑ_{s_n} ⋯ ϑ_{s_1}`: `r'_B = r_B + r_{Bs}` per letter.
pub fn propagate_ranks(geo: &Geometry, ranks: &BTreeMap<Alcove, usize>, word: &[usize]) -> Result<BTreeMap<Alcove, usize>> {
    let mut cur = ranks.clone();
    for &s in word {
        let mut next = BTreeMap::new();
        for (b, r) in &cur {
            *next.entry(*b).or_insert(0) += r;
            *next.entry(geo.right_act(b, s)?).or_insert(0) += r;
        }
        cur = next;
    }
    Ok(cur)
}

/// Folds the recipe word, splitting after every letter and keeping the one
/// summand whose image under the rest of the word still reaches `A`.
pub fn build_qa(geo: &Geometry, a: &Alcove, window: Option<&AlcoveWindow>) -> Result<KObject> {
    let rec = recipe(geo, a)?;
    let mut x = make_q_mu(geo, &rec.mu);
    for (i, &s) in rec.word.iter().enumerate() {
        let t = theta_c(geo, s, &x, window)?;
        let rest = &rec.word[i + 1..];
        let mut keep = Vec::new();
        for part in decompose(geo, &t) {
            if propagate_ranks(geo, part.ranks(), rest)?.get(a).copied().unwrap_or(0) > 0 {
                keep.push(part);
            }
        }
        x = match keep.len() {
            1 => keep.pop().unwrap(),
            n => {
                return Err(AjsError::DegreeCap(format!(
                    "{n} summands reach {} after letter {i}; constant idempotents do not separate them",
                    geo.label(a)
                )))
            }
        };
    }
    if x.rank(a) != 1 {
        return Err(AjsError::DegreeCap(format!("final summand has rank {} at {}", x.rank(a), geo.label(a))));
    }
    Ok(x)
}

/// `Q(A)` for every alcove in `alcoves`, in parallel when enabled.
pub fn build_many(geo: &Geometry, alcoves: &[Alcove], window: Option<&AlcoveWindow>) -> Vec<Result<KObject>> {
    crate::par::map_collect(alcoves, |a| build_qa(geo, a, window))
}

/// `rk Q(A)(B)` with `A`, `B` the alcoves of `x`, `w` in the modular dictionary.
pub fn modular_multiplicity(
    geo: &Geometry,
    w: &crate::root_system::AffineWeylElement,
    x: &crate::root_system::AffineWeylElement,
    p: u64,
) -> Result<usize> {
    if !crate::root_system::gkm_check(&geo.rs, p) {
        return Err(AjsError::Invalid(format!("p = {p} violates the GKM condition")));
    }
    let a = geo.dot_p_alcove(x, p)?;
    let b = geo.dot_p_alcove(w, p)?;
    Ok(build_qa(geo, &a, None)?.rank(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ajs_category::hom::find_isomorphism;
    use crate::root_system::TypeTag;

    #[test]
    fn a1_alcoves_are_special() {
        let geo = Geometry::of_type(TypeTag::A1);
        for n in -3..=3 {
            let a = geo.a1(n);
            let rec = recipe(&geo, &a).unwrap();
            assert!(rec.word.is_empty());
            let q = build_qa(&geo, &a, None).unwrap();
            assert_eq!(q.ranks().keys().copied().collect::<Vec<_>>(), vec![a, geo.a1(n + 1)]);
        }
    }

    #[test]
    fn rank_propagation_doubles() {
        let geo = Geometry::of_type(TypeTag::A1);
        let q = make_q_mu(&geo, &crate::root_system::zero_pt());
        let r = propagate_ranks(&geo, q.ranks(), &[0, 1]).unwrap();
        assert_eq!(r.values().sum::<usize>(), 8);
    }

    #[test]
    fn a2_around_fundamental() {
        let geo = Geometry::of_type(TypeTag::A2);
        let e = geo.fundamental();
        let mut alcoves = vec![e];
        for s in 0..3 {
            alcoves.push(geo.right_act(&e, s).unwrap());
        }
        for a in alcoves {
            let rec = recipe(&geo, &a).unwrap();
            let q = build_qa(&geo, &a, None).unwrap();
            assert_eq!(q.rank(&a), 1, "word {:?}", rec.word);
            if rec.word.is_empty() {
                assert!(find_isomorphism(&geo, &q, &make_q_mu(&geo, &rec.mu)).is_some());
            }
        }
    }
}
