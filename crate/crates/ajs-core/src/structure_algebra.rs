//! The structure algebra `Z(L)`: tuples `(z_x)_{x∈L}` of polynomials with
//! `z_x ≡ z_{s_α x} mod α∨`, solved degree by degree, and the closed-form
//! graded rank `Σ_x v^{2 n_{T,x}}` it is checked against.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::order_topology::{component_of, descent_count, leq_unbounded, BaseRingMode, OrbitId};
use crate::par;
use crate::poly_lattice::linalg::{self, Matrix};
use crate::poly_lattice::{Coef, CorootRing, LaurentV, Poly};
use crate::root_system::Pt;

/// Moment graph on a set of ZR-orbits: an edge `(x, s_α x)` labelled `α∨`
/// for each `α ∈ R_T^+` with both ends present.
#[derive(Clone, Debug)]
pub struct MomentSpec {
    pub vertices: Vec<OrbitId>,
    /// `(i, j, root)` with `i < j` indexing `vertices`.
    pub edges: Vec<(usize, usize, usize)>,
    pub mode: BaseRingMode,
}

impl MomentSpec {
    pub fn new(geo: &Geometry, orbits: &BTreeSet<OrbitId>, mode: &BaseRingMode) -> MomentSpec {
        let vertices: Vec<OrbitId> = orbits.iter().copied().collect();
        let mut edges = Vec::new();
        for (i, &x) in vertices.iter().enumerate() {
            for &b in mode.roots() {
                let y = geo.rs.weyl_mul(geo.rs.reflection_index(b), x);
                if let Some(j) = vertices.iter().position(|&v| v == y) {
                    if i < j {
                        edges.push((i, j, b));
                    }
                }
            }
        }
        MomentSpec { vertices, edges, mode: mode.clone() }
    }
}

/// One basis vector of `Z(L)` in a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub degree: u32,
    pub values: Vec<Poly>,
}

/// Basis of the degree-`2k` part of `Z(L)`.
fn solve_degree(ring: &CorootRing, spec: &MomentSpec, k: u32) -> Vec<Section> {
    let monos = Poly::monomials_of_degree(ring.nvars, k);
    let m = monos.len();
    let n = spec.vertices.len() * m;
    if n == 0 {
        return Vec::new();
    }
    let mut rows: Matrix = Vec::new();
    for &(i, j, b) in &spec.edges {
        let l = ring.coroot(b);
        let lead = (0..ring.nvars).find(|&v| l.terms().any(|(mm, _)| mm[v] > 0)).unwrap();
        // Remainder mod α∨ is linear: collect its coefficients per monomial.
        let mut by_mono: BTreeMap<Vec<u32>, Vec<Coef>> = BTreeMap::new();
        for (idx, mono) in monos.iter().enumerate() {
            let (_, r) = Poly::monomial(mono.clone(), Coef::from_integer(1.into())).div_rem(l, lead);
            for (rm, c) in r.terms() {
                let row = by_mono.entry(rm.clone()).or_insert_with(|| vec![Coef::zero(); n]);
                row[i * m + idx] += c;
                row[j * m + idx] -= c;
            }
        }
        rows.extend(by_mono.into_values());
    }
    let kernel = if rows.is_empty() {
        linalg::identity(n)
    } else {
        linalg::nullspace(&rows, n)
    };
    kernel
        .into_iter()
        .map(|x| {
            let values = (0..spec.vertices.len())
                .map(|v| {
                    monos.iter().enumerate().fold(Poly::zero(ring.nvars), |acc, (idx, mono)| {
                        &acc + &Poly::monomial(mono.clone(), x[v * m + idx].clone())
                    })
                })
                .collect();
            Section { degree: 2 * k, values }
        })
        .collect()
}

/// Graded basis of `Z(L)` in all even degrees `≤ max_degree`. Degree slices
/// are solved independently (in parallel when enabled).
pub fn z_sections_bruteforce(geo: &Geometry, spec: &MomentSpec, max_degree: u32) -> Vec<Section> {
    let ring = CorootRing::new(&geo.rs);
    par::map_range((max_degree / 2 + 1) as usize, |k| solve_degree(&ring, spec, k as u32))
        .into_iter()
        .flatten()
        .collect()
}

/// `dim Z(L)_{2k}` for `k = 0..=max_degree/2`.
pub fn graded_dims(geo: &Geometry, spec: &MomentSpec, max_degree: u32) -> Vec<usize> {
    let ring = CorootRing::new(&geo.rs);
    par::map_range((max_degree / 2 + 1) as usize, |k| solve_degree(&ring, spec, k as u32).len())
}

/// The alcove of `Λ_μ` lying in ZR-orbit `x`.
fn section_alcove(geo: &Geometry, mu: &Pt, x: OrbitId) -> Result<Alcove> {
    geo.alcoves_around(mu)
        .into_iter()
        .find(|a| a.elem.w == x)
        .ok_or_else(|| AjsError::Invalid(format!("orbit {x} does not meet the alcoves around μ")))
}

/// Whether `Y` is `(T,μ)`-open: its pullback to each section `Λ_μ` is
/// closed under going down in `≼_T`.
pub fn is_open_orbit_set(geo: &Geometry, y: &BTreeSet<OrbitId>, mu: &Pt, mode: &BaseRingMode) -> Result<bool> {
    let around = geo.alcoves_around(mu);
    for &x in y {
        let a = section_alcove(geo, mu, x)?;
        let c = component_of(geo, &a, mode);
        for b in around.iter().filter(|b| component_of(geo, b, mode) == c) {
            if leq_unbounded(geo, b, &a, mode) && !y.contains(&b.elem.w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{x∈Y} v^{2 n_{T,x}}`.
pub fn graded_rank_formula(geo: &Geometry, y: &BTreeSet<OrbitId>, mu: &Pt, mode: &BaseRingMode) -> Result<LaurentV> {
    if !is_open_orbit_set(geo, y, mu, mode)? {
        return Err(AjsError::NotOpen(format!("{y:?} is not (T,μ)-open")));
    }
    let around = geo.alcoves_around(mu);
    let mut out = LaurentV::zero();
    for &x in y {
        let a = section_alcove(geo, mu, x)?;
        let c = component_of(geo, &a, mode);
        let section: Vec<Alcove> = around.iter().filter(|b| component_of(geo, b, mode) == c).copied().collect();
        out.add_term(2 * descent_count(geo, &section, &a, mode) as i32, 1);
    }
    Ok(out)
}

/// `dim S_{2k}` in `r` variables.
pub fn hilbert_dim(r: usize, k: u32) -> usize {
    Poly::monomials_of_degree(r, k).len()
}

/// Graded dimensions predicted by `rank(v) · Hilb(S)(v)` up to `max_degree`.
pub fn predicted_dims(rank: &LaurentV, r: usize, max_degree: u32) -> Vec<i64> {
    (0..=max_degree / 2)
        .map(|k| {
            rank.terms()
                .filter(|&(e, _)| e >= 0 && e % 2 == 0 && (e as u32) <= 2 * k)
                .map(|(e, c)| c * hilbert_dim(r, k - e as u32 / 2) as i64)
                .sum()
        })
        .collect()
}

/// Brute force against the formula in every degree up to `max_degree`.
pub fn verify_rank(geo: &Geometry, y: &BTreeSet<OrbitId>, mu: &Pt, mode: &BaseRingMode, max_degree: u32) -> Result<bool> {
    let rank = graded_rank_formula(geo, y, mu, mode)?;
    let spec = MomentSpec::new(geo, y, mode);
    let brute: Vec<i64> = graded_dims(geo, &spec, max_degree).into_iter().map(|d| d as i64).collect();
    Ok(brute == predicted_dims(&rank, geo.rank(), max_degree))
}

/// All `(T,μ)`-open subsets of the orbits met by the alcoves around `μ`,
/// including the empty set and the whole set.
pub fn open_orbit_sets(geo: &Geometry, mu: &Pt, mode: &BaseRingMode) -> Result<Vec<BTreeSet<OrbitId>>> {
    let orbits: Vec<OrbitId> = geo.alcoves_around(mu).iter().map(|a| a.elem.w).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << orbits.len()) {
        let y: BTreeSet<OrbitId> = (0..orbits.len()).filter(|i| mask >> i & 1 == 1).map(|i| orbits[i]).collect();
        if is_open_orbit_set(geo, &y, mu, mode)? {
            out.push(y);
        }
    }
    Ok(out)
}
