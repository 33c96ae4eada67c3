//! The partial orders `≼_T`, open sets on finite windows, sections `Λ_μ`
//! and connected components.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::Zero;

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::root_system::{Pt, Q};

/// The set `R_T^+` of positive roots whose coroots are not invertible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRingMode {
    roots: Vec<usize>,
}

impl BaseRingMode {
    pub fn generic() -> BaseRingMode {
        BaseRingMode { roots: Vec::new() }
    }

    pub fn subgeneric(b: usize) -> BaseRingMode {
        BaseRingMode { roots: vec![b] }
    }

    pub fn full(geo: &Geometry) -> BaseRingMode {
        BaseRingMode { roots: (0..geo.rs.num_positive_roots()).collect() }
    }

    /// Saturates `roots` under the reflection subgroup they generate.
    pub fn saturated(geo: &Geometry, roots: &[usize]) -> BaseRingMode {
        let group = reflection_subgroup(geo, roots);
        let roots = (0..geo.rs.num_positive_roots())
            .filter(|&b| group.contains(&geo.rs.reflection_index(b)))
            .collect();
        BaseRingMode { roots }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn contains(&self, b: usize) -> bool {
        self.roots.contains(&b)
    }

    pub fn is_full(&self, geo: &Geometry) -> bool {
        self.roots.len() == geo.rs.num_positive_roots()
    }
}

fn reflection_subgroup(geo: &Geometry, roots: &[usize]) -> BTreeSet<u16> {
    let mut group = BTreeSet::from([0u16]);
    let mut queue = vec![0u16];
    while let Some(x) = queue.pop() {
        for &b in roots {
            let y = geo.rs.weyl_mul(geo.rs.reflection_index(b), x);
            if group.insert(y) {
                queue.push(y);
            }
        }
    }
    group
}

/// All alcoves whose barycenter lies in a closed box (simple-root coordinates).
#[derive(Clone, Debug)]
pub struct AlcoveWindow {
    pub lo: Pt,
    pub hi: Pt,
    alcoves: Vec<Alcove>,
    members: HashSet<Alcove>,
}

impl AlcoveWindow {
    pub fn new(geo: &Geometry, lo: Pt, hi: Pt) -> AlcoveWindow {
        let r = geo.rank();
        let mut alcoves = Vec::new();
        let base = geo.fundamental().barycenter;
        for w in 0..geo.rs.weyl_order() as u16 {
            let bw = geo.rs.weyl_act(w, &base);
            let ranges: Vec<(i64, i64)> = (0..r)
                .map(|i| ((lo[i] - bw[i]).ceil().to_integer(), (hi[i] - bw[i]).floor().to_integer()))
                .collect();
            if ranges.iter().any(|(a, b)| a > b) {
                continue;
            }
            let mut gamma = vec![0i64; r];
            for (i, g) in gamma.iter_mut().enumerate() {
                *g = ranges[i].0;
            }
            loop {
                let elem = crate::root_system::AffineWeylElement { w, gamma: pad(&gamma) };
                alcoves.push(geo.alcove(elem));
                let mut i = 0;
                loop {
                    if i == r {
                        break;
                    }
                    gamma[i] += 1;
                    if gamma[i] > ranges[i].1 {
                        gamma[i] = ranges[i].0;
                        i += 1;
                    } else {
                        break;
                    }
                }
                if i == r {
                    break;
                }
            }
        }
        alcoves.sort();
        let members = alcoves.iter().copied().collect();
        AlcoveWindow { lo, hi, alcoves, members }
    }

    /// The box `λ_center ± radius` in every simple-root coordinate.
    pub fn around(geo: &Geometry, center: &Alcove, radius: Q) -> AlcoveWindow {
        let mut lo = center.barycenter;
        let mut hi = center.barycenter;
        for i in 0..geo.rank() {
            lo[i] -= radius;
            hi[i] += radius;
        }
        AlcoveWindow::new(geo, lo, hi)
    }

    /// Ã1: the alcoves `(n, n+1)` for `from ≤ n ≤ to`.
    pub fn a1(geo: &Geometry, from: i64, to: i64) -> AlcoveWindow {
        let mut lo = crate::root_system::zero_pt();
        let mut hi = lo;
        lo[0] = Q::new(2 * from + 1, 4);
        hi[0] = Q::new(2 * to + 1, 4);
        AlcoveWindow::new(geo, lo, hi)
    }

    pub fn alcoves(&self) -> &[Alcove] {
        &self.alcoves
    }

    pub fn len(&self) -> usize {
        self.alcoves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcoves.is_empty()
    }

    pub fn contains(&self, a: &Alcove) -> bool {
        self.members.contains(a)
    }

    /// Whether `a` lies outside the window only because it is below it.
    pub fn is_below(&self, a: &Alcove) -> bool {
        (0..MAXR).all(|i| a.barycenter[i] <= self.hi[i])
    }
}

const MAXR: usize = crate::root_system::MAX_RANK;

fn pad(g: &[i64]) -> [i64; MAXR] {
    let mut out = [0; MAXR];
    out[..g.len()].copy_from_slice(g);
    out
}

fn le_pt(a: &Pt, b: &Pt) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}


fn simple_roots(geo: &Geometry) -> Vec<Vec<i64>> {
    (0..geo.rank()).map(|i| (0..geo.rank()).map(|j| i64::from(i == j)).collect()).collect()
}

/// Generators of `≼_T` leaving `a`: translations by simple roots and `α↑`.
pub fn successors(geo: &Geometry, a: &Alcove, mode: &BaseRingMode) -> Vec<Alcove> {
    let mut out: Vec<Alcove> = simple_roots(geo).iter().map(|g| geo.translate(a, g)).collect();
    out.extend(mode.roots().iter().map(|&b| geo.up(b, a)));
    out
}

/// Inverse generators: translations by negative simple roots and `α↓`.
pub fn predecessors(geo: &Geometry, a: &Alcove, mode: &BaseRingMode) -> Vec<Alcove> {
    let mut out: Vec<Alcove> = simple_roots(geo)
        .iter()
        .map(|g| geo.translate(a, &g.iter().map(|x| -x).collect::<Vec<_>>()))
        .collect();
    out.extend(mode.roots().iter().map(|&b| geo.down(b, a)));
    out
}

/// `A ≼_T B`, by breadth-first search inside the barycenter box of `A`, `B`.
pub fn leq_unbounded(geo: &Geometry, a: &Alcove, b: &Alcove, mode: &BaseRingMode) -> bool {
    if a == b {
        return true;
    }
    if !le_pt(&a.barycenter, &b.barycenter) {
        return false;
    }
    let mut seen = HashSet::from([*a]);
    let mut queue = VecDeque::from([*a]);
    while let Some(x) = queue.pop_front() {
        for y in successors(geo, &x, mode) {
            if y == *b {
                return true;
            }
            if le_pt(&y.barycenter, &b.barycenter) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    false
}

pub fn leq(geo: &Geometry, a: &Alcove, b: &Alcove, mode: &BaseRingMode, window: &AlcoveWindow) -> Result<bool> {
    if !window.contains(a) || !window.contains(b) {
        return Err(AjsError::Window("both alcoves must lie in the window".into()));
    }
    Ok(leq_unbounded(geo, a, b, mode))
}

/// `{≼_T seed} ∩ window`.
pub fn open_ideal(geo: &Geometry, seed: &[Alcove], mode: &BaseRingMode, window: &AlcoveWindow) -> Result<BTreeSet<Alcove>> {
    let mut out = BTreeSet::new();
    let mut queue = VecDeque::new();
    for a in seed {
        if !window.contains(a) {
            return Err(AjsError::Window("seed outside window".into()));
        }
        if out.insert(*a) {
            queue.push_back(*a);
        }
    }
    while let Some(x) = queue.pop_front() {
        for y in predecessors(geo, &x, mode) {
            if window.contains(&y) && out.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// `{≽_T seed} ∩ window`.
pub fn closed_upset(geo: &Geometry, seed: &[Alcove], mode: &BaseRingMode, window: &AlcoveWindow) -> BTreeSet<Alcove> {
    let mut out: BTreeSet<Alcove> = seed.iter().copied().filter(|a| window.contains(a)).collect();
    let mut queue: VecDeque<Alcove> = out.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for y in successors(geo, &x, mode) {
            if window.contains(&y) && out.insert(y) {
                queue.push_back(y);
            }
        }
    }
    out
}

pub fn is_open(geo: &Geometry, set: &BTreeSet<Alcove>, mode: &BaseRingMode, window: &AlcoveWindow) -> bool {
    set.iter().all(|a| predecessors(geo, a, mode).iter().all(|p| !window.contains(p) || set.contains(p)))
}

/// Order-convexity: `A ≼ B ≼ C` with `A, C ∈ K` forces `B ∈ K`.
pub fn is_locally_closed(geo: &Geometry, set: &BTreeSet<Alcove>, mode: &BaseRingMode, window: &AlcoveWindow) -> bool {
    let elems: Vec<Alcove> = set.iter().copied().collect();
    let up = closed_upset(geo, &elems, mode, window);
    let down = match open_ideal(geo, &elems, mode, window) {
        Ok(d) => d,
        Err(_) => return false,
    };
    up.intersection(&down).all(|b| set.contains(b))
}

/// The ZR-orbit of an alcove, labelled by the finite part of its element.
pub type OrbitId = u16;

pub fn orbit(a: &Alcove) -> OrbitId {
    a.elem.w
}

/// Label of the `Ŵ_T`-orbit containing `a`.
pub fn component_of(geo: &Geometry, a: &Alcove, mode: &BaseRingMode) -> u16 {
    reflection_subgroup(geo, mode.roots()).iter().map(|&u| geo.rs.weyl_mul(u, a.elem.w)).min().unwrap()
}

/// Partition of the window into connected components of `𝒜_T`.
pub fn components(geo: &Geometry, mode: &BaseRingMode, window: &AlcoveWindow) -> Vec<Vec<Alcove>> {
    let group = reflection_subgroup(geo, mode.roots());
    let mut parts: HashMap<u16, Vec<Alcove>> = HashMap::new();
    for a in window.alcoves() {
        let c = group.iter().map(|&u| geo.rs.weyl_mul(u, a.elem.w)).min().unwrap();
        parts.entry(c).or_default().push(*a);
    }
    let mut out: Vec<Vec<Alcove>> = parts.into_values().collect();
    for p in out.iter_mut() {
        p.sort();
    }
    out.sort();
    out
}

/// The section `Λ_μ`: alcoves of the component of `rep` whose closure contains `μ`.
pub fn section_lambda_mu(geo: &Geometry, mu: &Pt, rep: &Alcove, mode: &BaseRingMode) -> Vec<Alcove> {
    let c = component_of(geo, rep, mode);
    geo.alcoves_around(mu).into_iter().filter(|a| component_of(geo, a, mode) == c).collect()
}

/// The unique `≼_T`-minimal element of a section.
pub fn section_minimum(geo: &Geometry, section: &[Alcove], mode: &BaseRingMode) -> Option<Alcove> {
    section
        .iter()
        .find(|a| section.iter().all(|b| leq_unbounded(geo, a, b, mode)))
        .copied()
}

/// `A_μ^-`, the minimal alcove around `μ` in the full order.
pub fn special_minimum(geo: &Geometry, mu: &Pt) -> Alcove {
    let around = geo.alcoves_around(mu);
    section_minimum(geo, &around, &BaseRingMode::full(geo)).expect("Λ_μ has a minimum")
}

/// `(J♯, J♭) = (J ∪ Js, J ∩ Js)`, with `Js` truncated at the bottom of the window.
pub fn sharp_flat(
    geo: &Geometry,
    j: &BTreeSet<Alcove>,
    s: usize,
    window: &AlcoveWindow,
) -> Result<(BTreeSet<Alcove>, BTreeSet<Alcove>)> {
    let mut js = BTreeSet::new();
    for a in j {
        let b = geo.right_act(a, s)?;
        if window.contains(&b) {
            js.insert(b);
        } else if !window.is_below(&b) {
            return Err(AjsError::Window("J·s leaves the top of the window".into()));
        }
    }
    let sharp = j.union(&js).copied().collect();
    let flat = j.intersection(&js).copied().collect();
    Ok((sharp, flat))
}

/// `n_{T,x}` for the orbit of `a ∈ Λ_μ`: the number of `α ∈ R_T^+` with
/// `s_α x <_{T,μ} x`, computed through the section.
pub fn descent_count(geo: &Geometry, section: &[Alcove], a: &Alcove, mode: &BaseRingMode) -> usize {
    mode.roots()
        .iter()
        .filter(|&&b| {
            let w = geo.rs.weyl_mul(geo.rs.reflection_index(b), a.elem.w);
            match section.iter().find(|c| c.elem.w == w) {
                Some(c) => c != a && leq_unbounded(geo, c, a, mode),
                None => false,
            }
        })
        .count()
}

/// Sum of simple-root coordinates of the barycenter, a linear extension of `≼_T`.
pub fn height(a: &Alcove) -> Q {
    a.barycenter.iter().fold(Q::zero(), |s, x| s + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{zero_pt, TypeTag};

    fn g1() -> Geometry {
        Geometry::of_type(TypeTag::A1)
    }

    #[test]
    fn a1_window_and_leq() {
        let geo = g1();
        let win = AlcoveWindow::a1(&geo, -5, 5);
        assert_eq!(win.len(), 11);
        let full = BaseRingMode::full(&geo);
        let gen = BaseRingMode::generic();
        let (a0, a1) = (geo.a1(0), geo.a1(1));
        assert!(leq(&geo, &a0, &a0, &full, &win).unwrap());
        assert!(leq(&geo, &a0, &a1, &full, &win).unwrap());
        assert!(!leq(&geo, &a0, &a1, &gen, &win).unwrap());
        assert!(leq(&geo, &a0, &geo.a1(2), &gen, &win).unwrap());
        assert!(leq(&geo, &a0, &geo.a1(9), &full, &win).is_err());
    }

    #[test]
    fn a1_ideals() {
        let geo = g1();
        let win = AlcoveWindow::a1(&geo, -6, 6);
        let full = BaseRingMode::full(&geo);
        let id = open_ideal(&geo, &[geo.a1(1)], &full, &win).unwrap();
        assert_eq!(id, (-6..=1).map(|n| geo.a1(n)).collect());
        let gen = open_ideal(&geo, &[geo.a1(0)], &BaseRingMode::generic(), &win).unwrap();
        assert_eq!(gen, [-6, -4, -2, 0].iter().map(|&n| geo.a1(n)).collect());
        assert!(open_ideal(&geo, &[], &full, &win).unwrap().is_empty());
    }

    #[test]
    fn a1_locally_closed() {
        let geo = g1();
        let win = AlcoveWindow::a1(&geo, -6, 6);
        let full = BaseRingMode::full(&geo);
        let pair: BTreeSet<Alcove> = [geo.a1(0), geo.a1(2)].into_iter().collect();
        assert!(!is_locally_closed(&geo, &pair, &full, &win));
        let single: BTreeSet<Alcove> = [geo.a1(0)].into_iter().collect();
        assert!(is_locally_closed(&geo, &single, &full, &win));
        let sub = BaseRingMode::subgeneric(0);
        let up: BTreeSet<Alcove> = [geo.a1(0), geo.up(0, &geo.a1(0))].into_iter().collect();
        assert!(is_locally_closed(&geo, &up, &sub, &win));
    }

    #[test]
    fn a1_sections() {
        let geo = g1();
        let full = BaseRingMode::full(&geo);
        let s = section_lambda_mu(&geo, &zero_pt(), &geo.fundamental(), &full);
        assert_eq!(s, vec![geo.a1(-1), geo.a1(0)]);
        assert_eq!(section_minimum(&geo, &s, &full), Some(geo.a1(-1)));
        let omega = geo.rs.weight(&[1]);
        let s = section_lambda_mu(&geo, &omega, &geo.fundamental(), &full);
        assert_eq!(s, vec![geo.a1(0), geo.a1(1)]);
        assert_eq!(section_minimum(&geo, &s, &full), Some(geo.a1(0)));
    }

    #[test]
    fn a1_components() {
        let geo = g1();
        let win = AlcoveWindow::a1(&geo, -4, 4);
        assert_eq!(components(&geo, &BaseRingMode::generic(), &win).len(), 2);
        assert_eq!(components(&geo, &BaseRingMode::subgeneric(0), &win).len(), 1);
        assert_eq!(components(&geo, &BaseRingMode::full(&geo), &win).len(), 1);
    }

    #[test]
    fn a1_sharp_flat() {
        let geo = g1();
        let win = AlcoveWindow::a1(&geo, -8, 8);
        let full = BaseRingMode::full(&geo);
        let j = open_ideal(&geo, &[geo.a1(0)], &full, &win).unwrap();
        let (sharp, flat) = sharp_flat(&geo, &j, 1, &win).unwrap();
        assert_eq!(sharp, open_ideal(&geo, &[geo.a1(1)], &full, &win).unwrap());
        assert_eq!(flat, open_ideal(&geo, &[geo.a1(-1)], &full, &win).unwrap());
        let inv = open_ideal(&geo, &[geo.a1(1)], &full, &win).unwrap();
        assert_eq!(sharp_flat(&geo, &inv, 1, &win).unwrap(), (inv.clone(), inv));
    }

    #[test]
    fn a2_section_is_bruhat_hexagon() {
        let geo = Geometry::of_type(TypeTag::A2);
        let full = BaseRingMode::full(&geo);
        let s = section_lambda_mu(&geo, &zero_pt(), &geo.fundamental(), &full);
        assert_eq!(s.len(), 6);
        let min = section_minimum(&geo, &s, &full).unwrap();
        let mut counts: Vec<usize> = s.iter().map(|a| descent_count(&geo, &s, a, &full)).collect();
        counts.sort();
        assert_eq!(counts, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(descent_count(&geo, &s, &min, &full), 0);
        // covering relations of the Bruhat order of S_3
        let lt = |a: &Alcove, b: &Alcove| a != b && leq_unbounded(&geo, a, b, &full);
        let covers = s
            .iter()
            .flat_map(|a| s.iter().map(move |b| (a, b)))
            .filter(|(a, b)| lt(a, b) && !s.iter().any(|c| lt(a, c) && lt(c, b)))
            .count();
        assert_eq!(covers, 8);
    }
}
