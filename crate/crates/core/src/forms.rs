//! One-forms `sum f_i dt_i` on `R` and `R'`, closedness, and the Cartier operator.
//!
//! Conventions: `w*` renames `t_i -> t'_i` keeping coefficients, and the
//! Cartier operator is `p^{-1}`-linear on coefficients. With these, the
//! rank-one p-curvature of `d + omega` is `F*` of `(w* - C)(omega)` after
//! raising its coefficients to the `p`-th power (a no-op over `F_p`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::frobenius::{coefficient_frobenius, frobenius_pullback};
use crate::linalg::FieldMatrix;
use crate::poly::{Mono, Poly, PolyRing, Twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    ring: PolyRing,
    comps: Vec<Poly>,
}

impl OneForm {
    pub fn new(ring: &PolyRing, comps: Vec<Poly>) -> Result<OneForm> {
        if comps.len() != ring.d() {
            return Err(Error::InvalidInput(format!("one-form needs {} components, got {}", ring.d(), comps.len())));
        }
        if let Some(bad) = comps.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(format!("component over {:?}, expected {ring:?}", bad.ring())));
        }
        Ok(OneForm { ring: ring.clone(), comps })
    }

    pub fn zero(ring: &PolyRing) -> OneForm {
        OneForm { ring: ring.clone(), comps: vec![ring.zero(); ring.d()] }
    }

    /// `df = sum (d f / d t_i) dt_i`.
    pub fn exact(f: &Poly) -> OneForm {
        let ring = f.ring().clone();
        let comps = (0..ring.d()).map(|i| f.partial(i)).collect();
        OneForm { ring, comps }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        OneForm::new(&self.ring, comps)
    }

    pub fn sub(&self, other: &OneForm) -> Result<OneForm> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        OneForm::new(&self.ring, comps)
    }

    pub fn scale(&self, g: &Poly) -> Result<OneForm> {
        let comps = self.comps.iter().map(|a| a.try_mul(g)).collect::<Result<_>>()?;
        OneForm::new(&self.ring, comps)
    }

    pub fn map(&self, g: impl Fn(&Poly) -> Poly) -> OneForm {
        let comps: Vec<Poly> = self.comps.iter().map(g).collect();
        let ring = comps[0].ring().clone();
        OneForm { ring, comps }
    }

    /// `d f_i / d t_j = d f_j / d t_i` for all `i < j`.
    pub fn is_closed(&self) -> bool {
        let d = self.ring.d();
        (0..d).all(|i| (i + 1..d).all(|j| self.comps[i].partial(j) == self.comps[j].partial(i)))
    }

    /// Renames `t_i -> t'_i`, keeping coefficients.
    pub fn w_star(&self) -> Result<OneForm> {
        if self.ring.twist() != Twist::R {
            return Err(Error::RingMismatch("w* expects a form over R".into()));
        }
        Ok(self.map(|c| c.with_twist(Twist::Rprime)))
    }

    /// Frobenius pullback of a form over `R'`, as a tuple of functions on `R`.
    pub fn pullback(&self) -> Result<OneForm> {
        let comps = self.comps.iter().map(frobenius_pullback).collect::<Result<Vec<_>>>()?;
        let ring = self.ring.with_twist(Twist::R);
        OneForm::new(&ring, comps)
    }
}

/// Monomial rule for the Cartier operator, applied termwise without a
/// closedness check.
fn cartier_monomial_rule(omega: &OneForm) -> OneForm {
    let ring = omega.ring();
    let field = ring.field().clone();
    let p = ring.p();
    let d = ring.d();
    let target = ring.with_twist(Twist::Rprime);
    let mut comps = vec![target.zero(); d];
    for (i, f) in omega.comps.iter().enumerate() {
        for (m, &c) in f.terms() {
            let hit = (0..d).all(|k| if k == i { m[k] % p == p - 1 } else { m[k] % p == 0 });
            if !hit {
                continue;
            }
            let reduced: Mono = (0..d).map(|k| if k == i { (m[k] + 1) / p - 1 } else { m[k] / p }).collect();
            comps[i].add_term(reduced, field.frobenius_root(c));
        }
    }
    OneForm { ring: target, comps }
}

/// Cartier operator on closed one-forms over `R`, landing in forms over `R'`.
pub fn cartier_operator(omega: &OneForm) -> Result<OneForm> {
    if omega.ring().twist() != Twist::R {
        return Err(Error::RingMismatch("Cartier operator expects a form over R".into()));
    }
    if !omega.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(cartier_monomial_rule(omega))
}

/// `(w* - C)(omega)`.
pub fn w_minus_c(omega: &OneForm) -> Result<OneForm> {
    omega.w_star()?.sub(&cartier_operator(omega)?)
}

/// p-curvature components of `(O, d + omega)` read off the Cartier side:
/// `F*` of `(w* - C)(omega)` with coefficients raised to the `p`-th power.
pub fn cartier_pcurvature(omega: &OneForm) -> Result<OneForm> {
    let eta = w_minus_c(omega)?;
    eta.map(coefficient_frobenius).pullback()
}

fn all_monomials(nvars: usize, max_deg: u32) -> Vec<Mono> {
    fn rec(prefix: &mut Mono, left: usize, budget: u32, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_deg, &mut out);
    out
}

/// Monomials in `nvars` variables of total degree at most `max_deg`.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Mono> {
    all_monomials(nvars, max_deg)
}

struct RowIndex {
    rows: BTreeMap<(u8, usize, Mono, u32), usize>,
}

impl RowIndex {
    fn get(&mut self, key: (u8, usize, Mono, u32)) -> usize {
        let n = self.rows.len();
        *self.rows.entry(key).or_insert(n)
    }
}

/// Finds a closed `omega` over `R` of degree at most `degree_bound` with
/// `w* omega - C(omega) = eta`. The map is only `F_p`-linear, so the system
/// is solved over the prime field on power-basis coordinates.
pub fn solve_w_minus_c(eta: &OneForm, degree_bound: u32) -> Result<OneForm> {
    let ring_p = eta.ring().clone();
    if ring_p.twist() != Twist::Rprime {
        return Err(Error::RingMismatch("solve_w_minus_c expects a form over R'".into()));
    }
    if !eta.is_closed() {
        return Err(Error::NotClosed);
    }
    let field = ring_p.field().clone();
    let prime = Field::prime(field.p())?;
    let p = field.p();
    let e = field.e();
    let d = ring_p.d();
    let ring = ring_p.with_twist(Twist::R);
    let monos = all_monomials(d, degree_bound);
    let basis: Vec<Elem> = (0..e).map(|k| field.from_code(p.pow(k)).expect("basis element")).collect();

    // unknown columns: (component, monomial, power-basis digit)
    let mut unknowns = Vec::new();
    for i in 0..d {
        for m in &monos {
            for (k, &b) in basis.iter().enumerate() {
                unknowns.push((i, m.clone(), k, b));
            }
        }
    }
    let mut index = RowIndex { rows: BTreeMap::new() };
    let mut entries: Vec<Vec<(usize, u32)>> = Vec::with_capacity(unknowns.len());
    for (i, m, _, b) in &unknowns {
        let mut comps = vec![ring.zero(); d];
        comps[*i] = ring.monomial(m.clone(), *b);
        let omega = OneForm { ring: ring.clone(), comps };
        let image = omega.w_star()?.sub(&cartier_monomial_rule(&omega))?;
        let mut col = Vec::new();
        for (j, c) in image.comps.iter().enumerate() {
            for (mm, &v) in c.terms() {
                for (k, digit) in field.coeffs(v).into_iter().enumerate() {
                    if digit != 0 {
                        col.push((index.get((0, j, mm.clone(), k as u32)), digit));
                    }
                }
            }
        }
        // closedness: d f_a / d t_b - d f_b / d t_a
        for a in 0..d {
            for bb in a + 1..d {
                let diff = omega.comps[a].partial(bb).try_sub(&omega.comps[bb].partial(a))?;
                for (mm, &v) in diff.terms() {
                    for (k, digit) in field.coeffs(v).into_iter().enumerate() {
                        if digit != 0 {
                            col.push((index.get((1, a * d + bb, mm.clone(), k as u32)), digit));
                        }
                    }
                }
            }
        }
        entries.push(col);
    }
    let mut rhs_entries = Vec::new();
    for (j, c) in eta.comps.iter().enumerate() {
        for (mm, &v) in c.terms() {
            for (k, digit) in field.coeffs(v).into_iter().enumerate() {
                if digit != 0 {
                    rhs_entries.push((index.get((0, j, mm.clone(), k as u32)), digit));
                }
            }
        }
    }
    let nrows = index.rows.len();
    let mut a = FieldMatrix::zeros(&prime, nrows, unknowns.len());
    for (col, list) in entries.iter().enumerate() {
        for &(row, digit) in list {
            a.set(row, col, prime.from_int(digit as i64));
        }
    }
    let mut b = vec![Elem::ZERO; nrows];
    for (row, digit) in rhs_entries {
        b[row] = prime.from_int(digit as i64);
    }
    let x = a.solve(&b).ok_or(Error::NoSolution(degree_bound as usize))?;

    let mut comps = vec![ring.zero(); d];
    for ((i, m, _, bvec), y) in unknowns.iter().zip(x) {
        if y.is_zero() {
            continue;
        }
        let c = field.mul(*bvec, field.from_int(y.code() as i64));
        comps[*i].add_term(m.clone(), c);
    }
    let omega = OneForm::new(&ring, comps)?;
    let check = w_minus_c(&omega)?;
    if &check != eta {
        return Err(Error::VerificationFailure("w* - C does not reproduce the target form".into()));
    }
    Ok(omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, e: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::new(p, e).unwrap(), d, Twist::R)
    }

    #[test]
    fn closedness_examples() {
        let r1 = ring(3, 1, 1);
        assert!(OneForm::new(&r1, vec![r1.var(0).pow(4)]).unwrap().is_closed());
        let r = ring(3, 1, 2);
        let w = OneForm::new(&r, vec![r.var(1), r.zero()]).unwrap();
        assert!(!w.is_closed());
        assert!(OneForm::exact(&(&r.var(0) * &r.var(1))).is_closed());
        assert_eq!(cartier_operator(&w), Err(Error::NotClosed));
    }

    #[test]
    fn cartier_examples() {
        for p in [2, 3, 5] {
            let r = ring(p, 1, 1);
            let rp = r.with_twist(Twist::Rprime);
            let w = OneForm::new(&r, vec![r.var(0).pow(p as u64 - 1)]).unwrap();
            assert_eq!(cartier_operator(&w).unwrap(), OneForm::new(&rp, vec![rp.one()]).unwrap());
        }
        let r = ring(2, 1, 1);
        let rp = r.with_twist(Twist::Rprime);
        let w = OneForm::new(&r, vec![r.var(0).pow(3)]).unwrap();
        assert_eq!(cartier_operator(&w).unwrap(), OneForm::new(&rp, vec![rp.var(0)]).unwrap());
    }

    #[test]
    fn cartier_kills_exact_forms() {
        let r = ring(3, 2, 2);
        let f = r.field().clone();
        let g = &(&r.var(0).pow(5) * &r.var(1).pow(2)).scale(f.generator_x()) + &r.var(1).pow(8);
        assert!(cartier_operator(&OneForm::exact(&g)).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let r = ring(2, 1, 1);
        let rp = r.with_twist(Twist::Rprime);
        let eta = OneForm::new(&rp, vec![rp.var(0)]).unwrap();
        let omega = solve_w_minus_c(&eta, 3).unwrap();
        assert_eq!(w_minus_c(&omega).unwrap(), eta);

        let zero = OneForm::zero(&rp);
        assert!(solve_w_minus_c(&zero, 2).unwrap().is_zero());

        let r4 = ring(2, 2, 1);
        let rp4 = r4.with_twist(Twist::Rprime);
        let c = r4.field().generator_x();
        let eta = OneForm::new(&rp4, vec![rp4.constant(c)]).unwrap();
        let omega = solve_w_minus_c(&eta, 2).unwrap();
        assert_eq!(omega, OneForm::new(&r4, vec![r4.constant(c)]).unwrap());

        let big = OneForm::new(&rp, vec![rp.var(0).pow(4)]).unwrap();
        assert_eq!(solve_w_minus_c(&big, 1), Err(Error::NoSolution(1)));
    }
}
