//! Gröbner bases of submodules of `Q[x_1..x_k]^n` with a position-over-term
//! order (lower component index is more significant; degree-lex within a
//! component). The order eliminates leading components, which gives
//! intersections and syzygy-style kernels.

use std::cmp::Ordering;


use super::linalg;
use super::poly::{Coef, Mono, Poly};

pub type Vector = Vec<Poly>;

fn deglex(a: &Mono, b: &Mono) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn lead_mono(p: &Poly) -> Option<(Mono, Coef)> {
    p.terms().max_by(|x, y| deglex(x.0, y.0)).map(|(m, c)| (m.clone(), c.clone()))
}

/// Leading position, monomial and coefficient.
pub fn leading(v: &[Poly]) -> Option<(usize, Mono, Coef)> {
    let i = v.iter().position(|p| !p.is_zero())?;
    let (m, c) = lead_mono(&v[i])?;
    Some((i, m, c))
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn shift(v: &[Poly], m: &Mono, c: &Coef) -> Vector {
    v.iter().map(|p| p.mul_mono(m, c)).collect()
}

fn sub(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_zero_vec(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Full reduction of `v` modulo `g`.
pub fn reduce(v: &[Poly], g: &[Vector]) -> Vector {
    let leads: Vec<(usize, Mono, Coef)> = g.iter().map(|x| leading(x).unwrap()).collect();
    let mut v = v.to_vec();
    let nvars = v.first().map_or(0, Poly::nvars);
    let mut rem: Vector = vec![Poly::zero(nvars); v.len()];
    while let Some((i, m, c)) = leading(&v) {
        let hit = leads.iter().position(|(j, lm, _)| *j == i && divides(lm, &m));
        match hit {
            Some(k) => {
                let q = mono_sub(&m, &leads[k].1);
                v = sub(&v, &shift(&g[k], &q, &(&c / &leads[k].2)));
            }
            None => {
                let t = Poly::monomial(m, c);
                v[i] = &v[i] - &t;
                rem[i] = &rem[i] + &t;
            }
        }
    }
    rem
}

/// Reduced Gröbner basis (Buchberger).
pub fn groebner(gens: &[Vector]) -> Vec<Vector> {
    let mut g: Vec<Vector> = Vec::new();
    for x in gens {
        let r = if g.is_empty() { x.clone() } else { reduce(x, &g) };
        if !is_zero_vec(&r) {
            g.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> =
        (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (pi, mi, ci) = leading(&g[i]).unwrap();
        let (pj, mj, cj) = leading(&g[j]).unwrap();
        if pi != pj {
            continue;
        }
        let l = mono_lcm(&mi, &mj);
        let s = sub(
            &shift(&g[i], &mono_sub(&l, &mi), &ci.recip()),
            &shift(&g[j], &mono_sub(&l, &mj), &cj.recip()),
        );
        let r = reduce(&s, &g);
        if !is_zero_vec(&r) {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    minimize(g)
}

fn minimize(g: Vec<Vector>) -> Vec<Vector> {
    let leads: Vec<(usize, Mono, Coef)> = g.iter().map(|x| leading(x).unwrap()).collect();
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..g.len() {
        let redundant = (0..g.len()).any(|o| {
            o != k
                && leads[o].0 == leads[k].0
                && divides(&leads[o].1, &leads[k].1)
                && (leads[o].1 != leads[k].1 || o < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    let kept: Vec<Vector> = keep.iter().map(|&k| g[k].clone()).collect();
    let mut out: Vec<Vector> = Vec::new();
    for (k, x) in kept.iter().enumerate() {
        let others: Vec<Vector> = kept.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, y)| y.clone()).collect();
        let (pos, m, c) = leading(x).unwrap();
        let tail: Vector = x
            .iter()
            .enumerate()
            .map(|(i, p)| if i == pos { p - &Poly::monomial(m.clone(), c.clone()) } else { p.clone() })
            .collect();
        let mut r = if others.is_empty() { tail } else { reduce(&tail, &others) };
        r[pos] = &r[pos] + &Poly::monomial(m, c.clone());
        out.push(r.iter().map(|p| p.scale(&c.recip())).collect());
    }
    out.sort_by(|a, b| {
        let (pa, ma, _) = leading(a).unwrap();
        let (pb, mb, _) = leading(b).unwrap();
        pa.cmp(&pb).then_with(|| deglex(&ma, &mb))
    });
    out
}

pub fn member(gb: &[Vector], w: &[Poly]) -> bool {
    is_zero_vec(&reduce(w, gb))
}

pub fn sum(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let gens: Vec<Vector> = a.iter().chain(b).cloned().collect();
    groebner(&gens)
}

/// `A ∩ B` by eliminating the first half of `{(a, a)} ∪ {(b, 0)}`.
pub fn intersect(a: &[Vector], b: &[Vector], n: usize, nvars: usize) -> Vec<Vector> {
    let zero = Poly::zero(nvars);
    let mut gens: Vec<Vector> = Vec::new();
    for g in a {
        gens.push(g.iter().chain(g).cloned().collect());
    }
    for g in b {
        gens.push(g.iter().cloned().chain(std::iter::repeat(zero.clone()).take(n)).collect());
    }
    let second: Vec<Vector> = groebner(&gens)
        .into_iter()
        .filter(|r| is_zero_vec(&r[..n]))
        .map(|r| r[n..].to_vec())
        .collect();
    groebner(&second)
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
pub fn rank(gens: &[Vector]) -> usize {
    let mut m: Vec<Vector> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
    let Some(first) = m.first() else { return 0 };
    let cols = first.len();
    let nvars = first[0].nvars();
    let mut prev = Poly::one(nvars);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..m.len() {
            let f = m[i][c].clone();
            for j in c..cols {
                let num = &(&piv * &m[i][j]) - &(&f * &m[r][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Graded degree of a homogeneous vector (ambient generators in degree 0).
pub fn vector_degree(v: &[Poly]) -> Option<i64> {
    let mut deg = None;
    for p in v.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return None;
        }
        let d = 2 * p.degree().unwrap() as i64;
        if deg.is_some_and(|e| e != d) {
            return None;
        }
        deg = Some(d);
    }
    deg
}

/// Minimal homogeneous generators of a graded module (graded Nakayama):
/// scan by ascending degree, keep what the kept ones do not generate.
pub fn minimal_generators(gens: &[Vector]) -> Option<Vec<Vector>> {
    let mut sorted: Vec<(i64, Vector)> = Vec::new();
    for g in gens.iter().filter(|g| !is_zero_vec(g)) {
        sorted.push((vector_degree(g)?, g.clone()));
    }
    sorted.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<Vector> = Vec::new();
    for (_, g) in sorted {
        if kept.is_empty() || !member(&groebner(&kept), &g) {
            kept.push(g);
        }
    }
    Some(kept)
}

/// `(is_free, rank, degrees)` for a module with homogeneous generators; a
/// graded module is free iff its minimal generator count equals its rank.
pub fn freeness(gens: &[Vector]) -> Option<(bool, usize, Vec<i64>)> {
    let mins = minimal_generators(gens)?;
    let rk = rank(&mins);
    let free = mins.len() == rk;
    let mut degrees: Vec<i64> = if free { mins.iter().filter_map(|g| vector_degree(g)).collect() } else { vec![] };
    degrees.sort_unstable();
    Some((free, rk, degrees))
}

/// Linear-algebra cross-check of `rank` at a rational point.
pub fn rank_at(gens: &[Vector], point: &[Coef]) -> usize {
    let m: linalg::Matrix = gens.iter().map(|g| g.iter().map(|p| p.eval(point)).collect()).collect();
    linalg::rank(&m)
}

pub fn equal(a: &[Vector], b: &[Vector]) -> bool {
    let ga = groebner(a);
    let gb = groebner(b);
    a.iter().all(|g| member(&gb, g)) && b.iter().all(|g| member(&ga, g))
}
