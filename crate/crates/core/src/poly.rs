//! Sparse multivariate polynomials over a finite field.
//!
//! A [`PolyRing`] has `d` coordinate variables (the `t_i`, or `t'_i` on the
//! Frobenius twist) followed by `extra` auxiliary variables used for formal
//! symbols such as `omega_i`, `partial_i` or a characteristic variable `T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};

/// Exponent vector, one entry per ring variable.
pub type Mono = Vec<u32>;

/// Which copy of the coordinate ring: `R = k[t]` or its Frobenius twist `R' = k[t']`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    R,
    Rprime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    d: usize,
    extra: usize,
    twist: Twist,
}

impl PolyRing {
    pub fn new(field: &Field, d: usize, twist: Twist) -> PolyRing {
        assert!(d >= 1, "coordinate rings need at least one variable");
        PolyRing { field: field.clone(), d, extra: 0, twist }
    }

    /// Same coordinate ring with `extra` auxiliary variables appended.
    pub fn with_extra(&self, extra: usize) -> PolyRing {
        PolyRing { extra, ..self.clone() }
    }

    pub fn with_twist(&self, twist: Twist) -> PolyRing {
        PolyRing { twist, ..self.clone() }
    }

    pub fn with_field(&self, field: &Field) -> PolyRing {
        PolyRing { field: field.clone(), ..self.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn extra(&self) -> usize {
        self.extra
    }

    pub fn nvars(&self) -> usize {
        self.d + self.extra
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Elem) -> Poly {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(self.field.from_int(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        self.monomial(m, self.field.one())
    }

    pub fn monomial(&self, exp: Mono, c: Elem) -> Poly {
        assert_eq!(exp.len(), self.nvars(), "exponent length must match the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Elem)>>(&self, it: I) -> Poly {
        let mut out = self.zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    fn check(&self, other: &PolyRing) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Mono, Elem>,
}

impl Poly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Elem> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// Constant term.
    pub fn constant_term(&self) -> Elem {
        self.terms.get(&vec![0; self.ring.nvars()]).copied().unwrap_or(Elem::ZERO)
    }

    pub fn coeff(&self, m: &[u32]) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add_term(&mut self, m: Mono, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = self.ring.field.clone();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Total degree in the coordinate variables only.
    pub fn coord_degree(&self) -> Option<u32> {
        let d = self.ring.d;
        self.terms.keys().map(|m| m[..d].iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        let f = &self.ring.field;
        let mut acc: BTreeMap<Mono, Elem> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let c = f.mul(ca, cb);
                let slot = acc.entry(m).or_insert(Elem::ZERO);
                *slot = f.add(*slot, c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly { ring: self.ring.clone(), terms: acc })
    }

    fn neg_ref(&self) -> Poly {
        let f = &self.ring.field;
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.ring.field;
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect() }
    }

    /// Multiplies by a monomial `x^m`.
    pub fn shift(&self, m: &[u32]) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluation at a point given for every ring variable.
    pub fn eval(&self, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let f = &self.ring.field;
        f.sum(self.terms.iter().map(|(m, &c)| {
            m.iter().zip(point).fold(c, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)))
        }))
    }

    /// Substitutes values for some variables, leaving the others symbolic.
    pub fn eval_partial(&self, assignments: &[(usize, Elem)]) -> Poly {
        let f = &self.ring.field;
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c;
            for &(i, x) in assignments {
                c2 = f.mul(c2, f.pow(x, m[i] as u64));
                m2[i] = 0;
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let f = &self.ring.field;
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, f.mul_int(c, m[i] as i64));
        }
        out
    }

    pub fn map_coeffs(&self, g: impl Fn(Elem) -> Elem) -> Poly {
        let mut out = self.ring.zero();
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), g(c));
        }
        out
    }

    /// Image under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Poly {
        let ring = self.ring.with_field(emb.target());
        Poly { ring, terms: self.terms.iter().map(|(m, &c)| (m.clone(), emb.apply(c))).collect() }
    }

    /// Inverse of [`Poly::embed`] when all coefficients lie in the subfield.
    pub fn restrict(&self, emb: &Embedding) -> Option<Poly> {
        let ring = self.ring.with_field(emb.source());
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            terms.insert(m.clone(), emb.restrict(c)?);
        }
        Some(Poly { ring, terms })
    }

    /// Re-tags the twist without touching terms.
    pub fn with_twist(&self, twist: Twist) -> Poly {
        Poly { ring: self.ring.with_twist(twist), terms: self.terms.clone() }
    }

    /// Moves the polynomial into `target`, which must share field, `d` and twist;
    /// variable `i` goes to position `positions[i]`.
    pub fn remap(&self, target: &PolyRing, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.ring.nvars());
        assert_eq!(target.field, self.ring.field);
        let mut out = target.zero();
        for (m, &c) in &self.terms {
            let mut m2 = vec![0; target.nvars()];
            for (i, &e) in m.iter().enumerate() {
                m2[positions[i]] += e;
            }
            out.add_term(m2, c);
        }
        out
    }

    /// Embeds into a ring with more auxiliary variables (appended at the end).
    pub fn extend_vars(&self, target: &PolyRing) -> Poly {
        let positions: Vec<usize> = (0..self.ring.nvars()).collect();
        self.remap(target, &positions)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let f = self.ring.field.clone();
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let lc_inv = f.inv(*lc)?;
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, &c)) = rem.terms.iter().next_back() {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Mono = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = f.mul(c, lc_inv);
            let t = self.ring.monomial(qm, qc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = &self.ring.field;
        let prime = if self.ring.twist == Twist::Rprime { "'" } else { "" };
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = field.coeffs(c);
            let coeff = if field.e() == 1 {
                format!("{}", cs[0])
            } else {
                format!("[{}]", cs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            };
            let mut vars = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i < self.ring.d {
                    format!("t{}{}", i + 1, prime)
                } else {
                    format!("x{}", i - self.ring.d + 1)
                };
                vars.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if vars.is_empty() {
                write!(out, "{coeff}")?;
            } else if c == field.one() {
                write!(out, "{}", vars.join("*"))?;
            } else {
                write!(out, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R)
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        for p in [2, 3, 5] {
            let r = ring(p, 1);
            assert!(r.var(0).pow(p as u64).partial(0).is_zero());
        }
    }

    #[test]
    fn freshman_dream_over_f2() {
        let r = ring(2, 2);
        let s = &r.var(0) + &r.var(1);
        assert_eq!(s.pow(2), &r.var(0).pow(2) + &r.var(1).pow(2));
    }

    #[test]
    fn evaluation() {
        let r = ring(3, 1);
        let f = &r.var(0).pow(2) + &r.one();
        assert_eq!(f.eval(&[r.field().from_int(2)]), r.field().from_int(2));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring(3, 1).var(0);
        let b = ring(3, 2).var(0);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
        let c = a.with_twist(Twist::Rprime);
        assert!(matches!(a.try_mul(&c), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn exact_division() {
        let r = ring(3, 2);
        let a = &(&r.var(0) + &r.var(1).pow(2)) + &r.one();
        let b = &(&r.var(0) * &r.var(1)) + &r.int(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&r.var(1)), None);
    }
}
