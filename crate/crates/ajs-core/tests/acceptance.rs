//! Acceptance criteria 1–9. Each prints one PASS/FAIL line with its runtime
//! against the limit; the process exits nonzero if any criterion fails.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use ajs_core::ajs_category::hom::{endomorphism_dimension, is_morphism};
use ajs_core::ajs_category::{
    build_qa, decompose_word, find_isomorphism, make_q_mu, modular_multiplicity, theta_word, ConstMorphism, KObject,
};
use ajs_core::alcove_geom::{Alcove, Geometry};
use ajs_core::char_calculus::{ch_theta, ch_word, Character};
use ajs_core::order_topology::{leq, leq_unbounded, special_minimum, AlcoveWindow, BaseRingMode};
use ajs_core::poly_lattice::{coef, CorootRing, Lattice, LaurentV, Localization, LocalizedElem, Poly};
use ajs_core::root_system::{gkm_check, zero_pt, RootSystem, TypeTag, Q};
use ajs_core::structure_algebra::{graded_dims, graded_rank_formula, open_orbit_sets, MomentSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// 1. structure algebra rank law

fn structure_rank() -> Outcome {
    let mut checked = 0;
    for (tag, max_degree) in [(TypeTag::A1, 10), (TypeTag::A2, 8)] {
        let geo = Geometry::of_type(tag);
        let full = BaseRingMode::full(&geo);
        let r = geo.rank() as u32;
        for y in open_orbit_sets(&geo, &zero_pt(), &full).map_err(|e| e.to_string())? {
            let rank = graded_rank_formula(&geo, &y, &zero_pt(), &full).map_err(|e| e.to_string())?;
            let spec = MomentSpec::new(&geo, &y, &full);
            let brute = graded_dims(&geo, &spec, max_degree);
            // Oracle: dim S_{2k} = C(k + r − 1, r − 1), convolved with the rank polynomial.
            for (k, &d) in brute.iter().enumerate() {
                let expect: i64 = rank
                    .terms()
                    .filter(|&(e, _)| e >= 0 && (e as usize) <= 2 * k)
                    .map(|(e, c)| c * binom(k as u32 - e as u32 / 2 + r - 1, r - 1))
                    .sum();
                ensure(d as i64 == expect, || format!("{tag:?} {y:?} degree {}: {d} vs {expect}", 2 * k))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} open orbit sets"))
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

// ---------------------------------------------------------------------------
// 2. θθ identity on random characters

fn random_character(rng: &mut ChaCha8Rng, pool: &[Alcove]) -> Character {
    let n = rng.gen_range(1..=8);
    (0..n)
        .map(|_| {
            let a = pool[rng.gen_range(0..pool.len())];
            let c = (0..rng.gen_range(1..=3)).fold(LaurentV::zero(), |acc, _| {
                &acc + &LaurentV::monomial(rng.gen_range(-4..=4), rng.gen_range(-3..=5))
            });
            (a, c)
        })
        .collect()
}

fn theta_theta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let one_plus_v2 = &LaurentV::one() + &LaurentV::v_pow(2);
    let mut done = 0;
    for tag in [TypeTag::A1, TypeTag::A2] {
        let geo = Geometry::of_type(tag);
        let window = match tag {
            TypeTag::A1 => AlcoveWindow::a1(&geo, -30, 29),
            _ => AlcoveWindow::around(&geo, &geo.fundamental(), Q::new(3, 2)),
        };
        ensure((50..=80).contains(&window.len()), || format!("{tag:?} window has {} alcoves", window.len()))?;
        for _ in 0..50 {
            let c = random_character(&mut rng, window.alcoves());
            let s = rng.gen_range(0..geo.num_simple());
            let once = ch_theta(&geo, s, &c, None).map_err(|e| e.to_string())?;
            let twice = ch_theta(&geo, s, &once, None).map_err(|e| e.to_string())?;
            ensure(twice == once.scale(&one_plus_v2), || format!("{tag:?} s={s}: θθc ≠ (1+v²)θc"))?;
            done += 1;
        }
    }
    Ok(format!("{done} random characters"))
}

// ---------------------------------------------------------------------------
// 7. order engine

fn order_engine() -> Outcome {
    let geo = Geometry::of_type(TypeTag::A1);
    let full = BaseRingMode::full(&geo);
    // Oracle: BFS on strip indices with n → n+1 (α↑) and n → n+2 (translation by α),
    // confined to the doubled window.
    let (lo, hi) = (-20i64, 19i64);
    let reach = |from: i64| -> HashSet<i64> {
        let mut seen = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for y in [x + 1, x + 2] {
                if y <= 2 * hi + 1 && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    };
    let window = AlcoveWindow::a1(&geo, lo, hi);
    ensure(window.len() == 40, || format!("window has {} alcoves", window.len()))?;
    let mut pairs = 0;
    for i in lo..=hi {
        let above = reach(i);
        for j in lo..=hi {
            let got = leq(&geo, &geo.a1(i), &geo.a1(j), &full, &window).map_err(|e| e.to_string())?;
            ensure(got == above.contains(&j) && got == (i <= j), || format!("({i}, {j})"))?;
            pairs += 1;
        }
    }

    let geo = Geometry::of_type(TypeTag::A2);
    let big = AlcoveWindow::around(&geo, &geo.fundamental(), Q::from_integer(3));
    let sample: Vec<Alcove> = big.alcoves().iter().copied().take(200).collect();
    ensure(sample.len() == 200, || format!("only {} alcoves", sample.len()))?;
    for b in 0..geo.rs.num_positive_roots() {
        let mut images = HashSet::new();
        for a in &sample {
            let u = geo.up(b, a);
            ensure(geo.down(b, &u) == *a && geo.up(b, &geo.down(b, a)) == *a, || format!("root {b}"))?;
            // α↑A lies in the next α-strip.
            let (pa, pu) = (geo.pairing(a, b).floor(), geo.pairing(&u, b).floor());
            ensure(pu == pa + Q::from_integer(1), || format!("root {b}: strip {pa} → {pu}"))?;
            images.insert(u);
        }
        ensure(images.len() == sample.len(), || format!("root {b}: up is not injective"))?;
    }
    Ok(format!("{pairs} pairs, 200 alcoves × 3 roots"))
}

// ---------------------------------------------------------------------------
// 8. lattice engine: PID path versus Gröbner path on embedded instances

struct Rings {
    one: CorootRing,
    two: CorootRing,
}

const TAG: Localization = Localization::Alpha(0);

/// Abstract generators: entries `c·t^d` with `t` the coroot of the first root.
type Gens = Vec<Vec<(u32, i64)>>;

fn random_gens(rng: &mut ChaCha8Rng, n: usize) -> Gens {
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let d = rng.gen_range(0..=3u32);
            (0..n).map(|_| (d, rng.gen_range(-3..=3))).collect()
        })
        .collect()
}

fn t_poly(ring: &CorootRing, terms: &[(u32, i64)]) -> Poly {
    terms.iter().fold(Poly::zero(ring.nvars), |acc, &(d, c)| &acc + &ring.coroot(0).pow(d).scale(&coef(c)))
}

fn lat(ring: &CorootRing, gens: &Gens, n: usize) -> Lattice {
    let g: Vec<Vec<Poly>> = gens.iter().map(|v| v.iter().map(|&e| t_poly(ring, &[e])).collect()).collect();
    Lattice::from_polys(ring, TAG, &g, n)
}

/// Rewrites a one-variable polynomial as a polynomial in `t`, then in the
/// second ring's `t`.
fn lift_poly(rings: &Rings, p: &Poly) -> Poly {
    let c = rings.one.coroot(0).coeff(&[1]);
    let t2 = rings.two.coroot(0).scale(&(coef(1) / c));
    p.terms().fold(Poly::zero(2), |acc, (m, x)| &acc + &t2.pow(m[0]).scale(x))
}

fn lift(rings: &Rings, l: &Lattice) -> Lattice {
    let gens = l
        .gens
        .iter()
        .map(|v| {
            v.iter()
                .map(|e| {
                    assert!(e.den.iter().all(|&d| d == 0));
                    LocalizedElem::from_poly(&rings.two, lift_poly(rings, &e.num), TAG)
                })
                .collect()
        })
        .collect();
    Lattice::new(l.ambient, TAG, gens)
}

fn vector(ring: &CorootRing, entries: &[Vec<(u32, i64)>]) -> Vec<LocalizedElem> {
    entries.iter().map(|t| LocalizedElem::from_poly(ring, t_poly(ring, t), TAG)).collect()
}

fn lattice_engine() -> Outcome {
    let rings = Rings {
        one: CorootRing::new(&RootSystem::build(TypeTag::A1)),
        two: CorootRing::new(&RootSystem::build(TypeTag::A2)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let n = rng.gen_range(1..=2);
        let (g, h) = (random_gens(&mut rng, n), random_gens(&mut rng, n));
        let (a1, b1) = (lat(&rings.one, &g, n), lat(&rings.one, &h, n));
        let (a2, b2) = (lat(&rings.two, &g, n), lat(&rings.two, &h, n));
        let w: Vec<Vec<(u32, i64)>> = (0..n)
            .map(|_| vec![(0, rng.gen_range(-2..=2)), (rng.gen_range(0..=3), rng.gen_range(-2..=2))])
            .collect();
        let m1 = a1.membership(&rings.one, &vector(&rings.one, &w));
        let m2 = a2.membership(&rings.two, &vector(&rings.two, &w));
        ensure(m1 == m2, || format!("case {case}: membership {m1} vs {m2}"))?;
        ensure(lift(&rings, &a1.sum(&rings.one, &b1)).equals(&rings.two, &a2.sum(&rings.two, &b2)), || {
            format!("case {case}: sums differ")
        })?;
        ensure(
            lift(&rings, &a1.intersect(&rings.one, &b1)).equals(&rings.two, &a2.intersect(&rings.two, &b2)),
            || format!("case {case}: intersections differ"),
        )?;
        let f1 = a1.freeness_rank(&rings.one);
        let f2 = a2.freeness_rank(&rings.two);
        ensure(f1 == f2, || format!("case {case}: freeness {f1:?} vs {f2:?}"))?;
    }
    Ok("100 instances".into())
}

// ---------------------------------------------------------------------------
// 9. GKM predicate

fn gkm() -> Outcome {
    // Hand classification: which small primes break the condition.
    let bad: [(TypeTag, &[u64], u64); 4] =
        [(TypeTag::A1, &[2], 2), (TypeTag::A2, &[2, 3], 3), (TypeTag::B2, &[2], 4), (TypeTag::G2, &[2, 3], 6)];
    for (tag, fails, h) in bad {
        let rs = RootSystem::build(tag);
        for p in [0u64, 2, 3, 5, 7, 11, 13] {
            let expect = !fails.contains(&p);
            ensure(gkm_check(&rs, p) == expect, || format!("{tag:?} p={p}"))?;
        }
        for p in (h + 1..200).filter(|&p| (2..p).all(|d| p % d != 0)) {
            ensure(gkm_check(&rs, p), || format!("{tag:?} p={p} > h"))?;
        }
    }
    Ok("A1 A2 B2 G2".into())
}

// ---------------------------------------------------------------------------
// 3. special objects are reproduced

fn check_isomorphic(geo: &Geometry, x: &KObject, y: &KObject) -> Result<(), String> {
    let (f, g) = find_isomorphism(geo, x, y).ok_or("no isomorphism found")?;
    let (xn, yn) = (x.normalized(), y.normalized());
    ensure(is_morphism(geo, &xn, &yn, &f) && is_morphism(geo, &yn, &xn, &g), || "maps are not morphisms".into())?;
    ensure(f.compose(&g) == ConstMorphism::identity(&yn), || "f∘g ≠ id".into())?;
    ensure(g.compose(&f) == ConstMorphism::identity(&xn), || "g∘f ≠ id".into())
}

fn special_reproduction() -> Outcome {
    let mut cases: Vec<(TypeTag, Vec<i64>)> = (-2..=2).map(|k| (TypeTag::A1, vec![k])).collect();
    cases.extend([vec![0, 0], vec![1, 0], vec![0, 1]].into_iter().map(|c| (TypeTag::A2, c)));
    for (tag, coords) in &cases {
        let geo = Geometry::of_type(*tag);
        let mu = geo.rs.weight(coords);
        let a = special_minimum(&geo, &mu);
        let q = build_qa(&geo, &a, None).map_err(|e| format!("{tag:?} {coords:?}: {e}"))?;
        check_isomorphic(&geo, &q, &make_q_mu(&geo, &mu)).map_err(|e| format!("{tag:?} {coords:?}: {e}"))?;
    }
    Ok(format!("{} weights", cases.len()))
}

// ---------------------------------------------------------------------------
// 4. module ranks against characters at v = 1

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn as_i64(r: &BTreeMap<Alcove, usize>) -> BTreeMap<Alcove, i64> {
    r.iter().map(|(a, n)| (*a, *n as i64)).collect()
}

fn rank_bridge() -> Outcome {
    let mut count = 0;
    for (tag, max_len) in [(TypeTag::A1, 5), (TypeTag::A2, 3)] {
        let geo = Geometry::of_type(tag);
        let q = make_q_mu(&geo, &zero_pt());
        for w in words(geo.num_simple(), max_len) {
            let m = theta_word(&geo, &w, &q, None).map_err(|e| e.to_string())?;
            let ch = ch_word(&geo, &w, &zero_pt(), None).map_err(|e| e.to_string())?.at_one();
            ensure(as_i64(m.ranks()) == ch, || format!("{tag:?} {w:?}: ranks differ from the character"))?;
            let mut summed: BTreeMap<Alcove, usize> = BTreeMap::new();
            for part in decompose_word(&geo, &w, &q, None).map_err(|e| e.to_string())? {
                for (a, r) in part.ranks() {
                    *summed.entry(*a).or_insert(0) += r;
                }
            }
            ensure(as_i64(&summed) == ch, || format!("{tag:?} {w:?}: summands lose rank"))?;
            count += 1;
        }
    }
    Ok(format!("{count} words"))
}

// ---------------------------------------------------------------------------
// 5. Q(A) axioms

fn qa_axioms() -> Outcome {
    let mut count = 0;
    for tag in [TypeTag::A1, TypeTag::A2] {
        let geo = Geometry::of_type(tag);
        let full = BaseRingMode::full(&geo);
        let alcoves: Vec<Alcove> = match tag {
            TypeTag::A1 => (-5..5).map(|n| geo.a1(n)).collect(),
            _ => {
                let e = geo.fundamental();
                let w = AlcoveWindow::around(&geo, &e, Q::from_integer(2));
                let mut v: Vec<Alcove> = w.alcoves().to_vec();
                v.sort_by_key(|a| (geo.distance(a, &e), *a));
                v.truncate(8);
                v
            }
        };
        for a in &alcoves {
            let q = build_qa(&geo, a, None).map_err(|e| format!("{}: {e}", geo.label(a)))?;
            ensure(q.rank(a) == 1, || format!("{}: rank {} at A", geo.label(a), q.rank(a)))?;
            for b in q.support() {
                ensure(leq_unbounded(&geo, a, b, &full), || format!("{}: support meets {}", geo.label(a), geo.label(b)))?;
            }
            let end = endomorphism_dimension(&geo, &q, 1);
            ensure(end == 1, || format!("{}: degree-0 End has dimension {end}", geo.label(a)))?;
            count += 1;
        }
    }
    Ok(format!("{count} alcoves"))
}

// ---------------------------------------------------------------------------
// 6. modular multiplicities in Ã1, p = 5

fn modular_table() -> Outcome {
    let geo = Geometry::of_type(TypeTag::A1);
    let p = 5;
    let window: Vec<Alcove> = (-3..3).map(|n| geo.a1(n)).collect();
    let mut entries = 0;
    let mut ones = 0;
    for x in &window {
        // Oracle: in Ã1 every alcove is A_μ^- for its upper vertex μ, so
        // rk Q(A)(B) is the character of the special object at v = 1.
        let mut rho = geo.rs.rho();
        rho[0] /= p as i64;
        let a = geo.alcove_of_weight(&geo.rs.affine_act(&x.elem, &rho)).map_err(|e| e.to_string())?;
        let upper = geo.pairing(&a, 0).floor().to_integer() + 1;
        let ch = ch_word(&geo, &[], &geo.rs.weight(&[upper]), None).map_err(|e| e.to_string())?.at_one();
        for w in &window {
            let got = modular_multiplicity(&geo, &w.elem, &x.elem, p).map_err(|e| e.to_string())?;
            let b = geo.alcove_of_weight(&geo.rs.affine_act(&w.elem, &rho)).map_err(|e| e.to_string())?;
            let expect = ch.get(&b).copied().unwrap_or(0);
            ensure(got <= 1, || format!("entry {got} is not 0/1"))?;
            ensure(got as i64 == expect, || format!("({}, {}): {got} vs {expect}", geo.label(w), geo.label(x)))?;
            entries += 1;
            ones += got;
        }
    }
    Ok(format!("{entries} entries, {ones} nonzero"))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 9] = [
        (1, "structure algebra rank law", structure_rank, 10),
        (2, "character θθ identity", theta_theta, 5),
        (3, "special objects reproduced", special_reproduction, 30),
        (4, "module ranks equal characters", rank_bridge, 120),
        (5, "Q(A) axioms", qa_axioms, 120),
        (6, "modular multiplicity table", modular_table, 30),
        (7, "order engine", order_engine, 5),
        (8, "lattice engine backends agree", lattice_engine, 20),
        (9, "GKM predicate", gkm, 1),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(limit);
        let verdict = if out.is_ok() && in_time { "PASS" } else { "FAIL" };
        let detail = match &out {
            Ok(s) => s.clone(),
            Err(e) => format!("error: {e}"),
        };
        let late = if in_time { "" } else { " (over time limit)" };
        println!("{verdict} {n}. {name}: {detail} [{:.2}s / {limit}s]{late}", dt.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
