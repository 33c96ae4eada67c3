//! Laurent polynomials in `v` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeMap, Serializer};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentV {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentV {
    pub fn zero() -> LaurentV {
        LaurentV::default()
    }

    pub fn one() -> LaurentV {
        LaurentV::monomial(0, 1)
    }

    pub fn monomial(exp: i32, c: i64) -> LaurentV {
        let mut l = LaurentV::zero();
        l.add_term(exp, c);
        l
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> LaurentV {
        LaurentV::monomial(exp, 1)
    }

    pub fn add_term(&mut self, exp: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn shift(&self, by: i32) -> LaurentV {
        LaurentV { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    pub fn scale(&self, c: i64) -> LaurentV {
        let mut out = LaurentV::zero();
        for (&e, &x) in &self.coeffs {
            out.add_term(e, x * c);
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn only_even_powers(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Parses the `{"exp": coeff}` map form.
    pub fn from_map(map: &BTreeMap<String, i64>) -> Option<LaurentV> {
        let mut out = LaurentV::zero();
        for (k, &c) in map {
            out.add_term(k.parse().ok()?, c);
        }
        Some(out)
    }
}

impl Add for &LaurentV {
    type Output = LaurentV;
    fn add(self, rhs: &LaurentV) -> LaurentV {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentV {
    type Output = LaurentV;
    fn sub(self, rhs: &LaurentV) -> LaurentV {
        self + &(-rhs)
    }
}

impl Neg for &LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        self.scale(-1)
    }
}

impl Mul for &LaurentV {
    type Output = LaurentV;
    fn mul(self, rhs: &LaurentV) -> LaurentV {
        let mut out = LaurentV::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentV {
    /// Ascending powers, e.g. `1 + 2v^2 + v^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            let a = c.abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match e {
                0 => {}
                1 => f.write_str("v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentV {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), c)?;
        }
        m.end()
    }
}
