//! Graded Verma-flag characters `A ↦ (𝓜 : 𝒱(A)) ∈ Z[v, v⁻¹]` and the
//! wall-crossing recursion on them.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::alcove_geom::{Alcove, Geometry};
use crate::error::{AjsError, Result};
use crate::order_topology::{height, section_lambda_mu, AlcoveWindow, BaseRingMode};
use crate::poly_lattice::LaurentV;
use crate::root_system::Pt;

/// A finitely supported map `Alcove → Z[v, v⁻¹]`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    entries: BTreeMap<Alcove, LaurentV>,
}

impl Character {
    pub fn zero() -> Character {
        Character::default()
    }

    pub fn get(&self, a: &Alcove) -> LaurentV {
        self.entries.get(a).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, a: Alcove, c: &LaurentV) {
        let e = self.entries.entry(a).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.entries.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Alcove> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Alcove, &LaurentV)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (a, c) in &other.entries {
            out.add_at(*a, c);
        }
        out
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add(&other.scale(&LaurentV::monomial(0, -1)))
    }

    pub fn scale(&self, f: &LaurentV) -> Character {
        let mut out = Character::zero();
        for (a, c) in &self.entries {
            out.add_at(*a, &(c * f));
        }
        out
    }

    /// Specialization at `v = 1`.
    pub fn at_one(&self) -> BTreeMap<Alcove, i64> {
        self.entries.iter().map(|(a, c)| (*a, c.at_one())).filter(|(_, n)| *n != 0).collect()
    }

    pub fn total_mass(&self) -> i64 {
        self.entries.values().map(LaurentV::at_one).sum()
    }

    /// Nonnegative coefficients in even powers of `v` only.
    pub fn is_even_positive(&self) -> bool {
        self.entries.values().all(|c| c.is_nonnegative() && c.only_even_powers())
    }

    /// `{"label": {"exp": coeff}}` with alcove labels from the geometry.
    pub fn to_json(&self, geo: &Geometry) -> Value {
        let mut m = Map::new();
        for (a, c) in &self.entries {
            m.insert(geo.label(a), serde_json::to_value(c).expect("serializable"));
        }
        Value::Object(m)
    }
}

impl FromIterator<(Alcove, LaurentV)> for Character {
    fn from_iter<I: IntoIterator<Item = (Alcove, LaurentV)>>(iter: I) -> Character {
        let mut out = Character::zero();
        for (a, c) in iter {
            out.add_at(a, &c);
        }
        out
    }
}

/// `δ_A · v^{-shift}`.
pub fn ch_standard(a: &Alcove, shift: i32) -> Character {
    Character::from_iter([(*a, LaurentV::v_pow(-shift))])
}

/// `v^{2 n_A}` on `Λ_μ`, with `n_A = #{α ∈ R^+ : α↓A ∈ Λ_μ}`.
pub fn ch_special(geo: &Geometry, mu: &Pt, rep: &Alcove, mode: &BaseRingMode) -> Character {
    let section = section_lambda_mu(geo, mu, rep, mode);
    section
        .iter()
        .map(|a| {
            let n = (0..geo.rs.num_positive_roots()).filter(|&b| section.contains(&geo.down(b, a))).count();
            (*a, LaurentV::v_pow(2 * n as i32))
        })
        .collect()
}

/// `ch_special` on the component of `A_μ^-` in the full order.
pub fn ch_special_full(geo: &Geometry, mu: &Pt) -> Character {
    ch_special(geo, mu, &crate::order_topology::special_minimum(geo, mu), &BaseRingMode::full(geo))
}

/// Whether `As ≼_S A` in the full order. `A` and `As` are always comparable
/// (`As = α↑A` or `α↓A`), so the height comparison decides.
pub fn partner_below(geo: &Geometry, a: &Alcove, s: usize) -> Result<bool> {
    let b = geo.right_act(a, s)?;
    Ok(height(&b) < height(a))
}

/// The two-case wall-crossing formula applied alcove by alcove.
pub fn ch_theta(geo: &Geometry, s: usize, ch: &Character, window: Option<&AlcoveWindow>) -> Result<Character> {
    let mut targets: Vec<Alcove> = Vec::new();
    for a in ch.support() {
        let b = geo.right_act(a, s)?;
        if let Some(w) = window {
            if !w.contains(a) || !w.contains(&b) {
                return Err(AjsError::Window(format!("s-partner of {} leaves the window", geo.label(a))));
            }
        }
        targets.push(*a);
        targets.push(b);
    }
    targets.sort();
    targets.dedup();
    let v2 = LaurentV::v_pow(2);
    let mut out = Character::zero();
    for a in targets {
        let b = geo.right_act(&a, s)?;
        let sum = &ch.get(&a) + &ch.get(&b);
        let c = if partner_below(geo, &a, s)? { &sum * &v2 } else { sum };
        out.add_at(a, &c);
    }
    Ok(out)
}

/// Folds `ch_theta` over `word`, starting from `start`.
pub fn ch_word_from(geo: &Geometry, start: &Character, word: &[usize], window: Option<&AlcoveWindow>) -> Result<Character> {
    let mut ch = start.clone();
    for &s in word {
        ch = ch_theta(geo, s, &ch, window)?;
    }
    Ok(ch)
}

/// `ϑ_{s_n} ⋯ ϑ_{s_1}` applied to `ch_special(μ)`.
pub fn ch_word(geo: &Geometry, word: &[usize], mu: &Pt, window: Option<&AlcoveWindow>) -> Result<Character> {
    ch_word_from(geo, &ch_special_full(geo, mu), word, window)
}

/// Heuristic decomposition: repeatedly subtract `c · chQ(A)` at the lowest
/// support alcove `A`, where `chQ` is supplied by the caller and is
/// normalized to `1` at `A`. Returns the multiplicities found.
pub fn peel<F>(ch: &Character, mut ch_q: F, max_steps: usize) -> Result<Vec<(Alcove, LaurentV)>>
where
    F: FnMut(&Alcove) -> Result<Character>,
{
    let mut rest = ch.clone();
    let mut out = Vec::new();
    for _ in 0..max_steps {
        let Some(a) = rest.support().min_by(|x, y| height(x).cmp(&height(y)).then(x.cmp(y))).copied() else {
            return Ok(out);
        };
        let c = rest.get(&a);
        let q = ch_q(&a)?;
        if q.get(&a) != LaurentV::one() {
            return Err(AjsError::Invalid("peeling character is not normalized at its base alcove".into()));
        }
        rest = rest.sub(&q.scale(&c));
        out.push((a, c));
    }
    Err(AjsError::DegreeCap("character peeling did not terminate".into()))
}
