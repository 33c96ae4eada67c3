//! Dense-exponent sparse polynomials over `Q` in a fixed number of variables.
//!
//! Variables have degree 2 in the grading of `S`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Coef = BigRational;
pub type Mono = Vec<u32>;

pub fn coef(n: i64) -> Coef {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Coef>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coef) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Coef::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Coef::one())
    }

    pub fn monomial(m: Mono, c: Coef) -> Poly {
        let mut p = Poly::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The linear form `Σ l_i x_i`.
    pub fn linear(l: &[i64]) -> Poly {
        let n = l.len();
        let mut p = Poly::zero(n);
        for (i, &c) in l.iter().enumerate() {
            if c != 0 {
                let mut m = vec![0; n];
                m[i] = 1;
                p.terms.insert(m, coef(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn constant_term(&self) -> Coef {
        self.coeff(&vec![0; self.nvars])
    }

    fn add_term(&mut self, m: Mono, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Polynomial degree (not the doubled grading degree); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &[u32], c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Embeds into a ring with more variables (new variables unused).
    pub fn embed(&self, nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut k = m.clone();
                    k.resize(nvars, 0);
                    (k, c.clone())
                })
                .collect(),
        }
    }

    /// Remainder and quotient of division by `d` in the lexicographic order
    /// that makes `lead` the most significant variable.
    pub fn div_rem(&self, d: &Poly, lead: usize) -> (Poly, Poly) {
        let key = |m: &Mono| -> Vec<u32> {
            let mut k = vec![m[lead]];
            k.extend(m.iter().enumerate().filter(|(i, _)| *i != lead).map(|(_, e)| *e));
            k
        };
        let (dm, dc) = d.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0))).expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = Poly::zero(self.nvars);
        let mut quo = Poly::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0))).map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(&dm).all(|(a, b)| a >= b) {
                let qm: Mono = m.iter().zip(&dm).map(|(a, b)| a - b).collect();
                let qc = &c / &dc;
                p = &p - &d.mul_mono(&qm, &qc);
                quo.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        (quo, rem)
    }

    /// Largest `k` with `l^k | self` for a nonzero linear form `l`; `None` for zero.
    pub fn linear_valuation(&self, l: &Poly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lead = (0..self.nvars).find(|&i| {
            let mut m = vec![0; self.nvars];
            m[i] = 1;
            !l.coeff(&m).is_zero()
        })?;
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(l, lead);
            if !r.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    /// Exact quotient by `d`, if it divides.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let lead = (0..self.nvars).find(|&i| d.terms.keys().any(|m| m[i] > 0)).unwrap_or(0);
        let (q, r) = self.div_rem(d, lead);
        r.is_zero().then_some(q)
    }

    /// All monomials of polynomial degree `d`.
    pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
        if nvars == 0 {
            return if d == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for e in (0..=d).rev() {
            for mut rest in Poly::monomials_of_degree(nvars - 1, d - e) {
                let mut m = vec![e];
                m.append(&mut rest);
                out.push(m);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Coef]) -> Coef {
        let mut s = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.iter().zip(m2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&[1, 1]), coef(2));
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn linear_valuation() {
        let l = Poly::linear(&[2, -1]);
        let x = Poly::var(2, 0);
        let p = &l.pow(3) * &x;
        assert_eq!(p.linear_valuation(&l), Some(3));
        assert_eq!(x.linear_valuation(&l), Some(0));
        assert_eq!(Poly::zero(2).linear_valuation(&l), None);
        assert_eq!(p.exact_div(&l.pow(2)).unwrap(), &l * &x);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(Poly::monomials_of_degree(2, 3).len(), 4);
        assert_eq!(Poly::monomials_of_degree(1, 5).len(), 1);
    }
}
