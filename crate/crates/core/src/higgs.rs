//! Twisted characteristic polynomials of Higgs fields, the Hitchin map, and
//! the equations of the spectral cover.
//!
//! For `theta = (theta_1, .., theta_d)` put `phi = sum theta_i omega_i` with
//! formal symbols `omega_i`. Then
//! `chi(T) = det(T - phi) = T^r - a_1 T^(r-1) + .. + (-1)^r a_r`
//! with `a_m` homogeneous of degree `m` in the `omega`s.

use std::collections::HashMap;

use crate::connection::HiggsField;
use crate::error::{Error, Result};
use crate::field::Embedding;
use crate::forms::monomials_up_to;
use crate::linalg::PolyMatrix;
use crate::poly::{Mono, Poly, PolyRing};

/// `S(r, d) = C(d + r - 1, r)`, the number of degree-`r` monomials in `d` symbols.
pub fn symmetric_count(r: usize, d: usize) -> usize {
    let (n, k) = ((d + r - 1) as u64, r as u64);
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as usize
}

/// Degree-`deg` exponent vectors in `d` symbols, in lexicographically decreasing order.
pub fn homogeneous_monomials(d: usize, deg: u32) -> Vec<Mono> {
    let mut out: Vec<Mono> = monomials_up_to(d, deg).into_iter().filter(|m| m.iter().sum::<u32>() == deg).collect();
    out.sort();
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCharPoly {
    /// Base ring (`R` or `R'`, no auxiliary variables).
    ring: PolyRing,
    rank: usize,
    /// `a_1, .., a_r` over `ring.with_extra(d)`; variable `d + i` is `omega_{i+1}`.
    coeffs: Vec<Poly>,
}

impl TwistedCharPoly {
    pub fn new(ring: &PolyRing, coeffs: Vec<Poly>) -> Result<TwistedCharPoly> {
        let base = ring.with_extra(0);
        let wring = base.with_extra(base.d());
        for (m, a) in coeffs.iter().enumerate() {
            if a.ring() != &wring {
                return Err(Error::RingMismatch(format!("coefficient a_{} over {:?}", m + 1, a.ring())));
            }
            let d = base.d();
            if a.terms().keys().any(|k| k[d..].iter().sum::<u32>() != m as u32 + 1) {
                return Err(Error::InvalidInput(format!("a_{} is not homogeneous of degree {} in omega", m + 1, m + 1)));
            }
        }
        Ok(TwistedCharPoly { rank: coeffs.len(), ring: base, coeffs })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Ring of the coefficients: base variables then `omega_1..omega_d`.
    pub fn omega_ring(&self) -> PolyRing {
        self.ring.with_extra(self.ring.d())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn d(&self) -> usize {
        self.ring.d()
    }

    /// `a_m` for `1 <= m <= r`.
    pub fn coeff(&self, m: usize) -> &Poly {
        &self.coeffs[m - 1]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Ring of [`TwistedCharPoly::to_poly`]: base, `omega`s, then `T`.
    pub fn full_ring(&self) -> PolyRing {
        self.ring.with_extra(self.ring.d() + 1)
    }

    /// `chi(T)` as a single polynomial.
    pub fn to_poly(&self) -> Poly {
        let full = self.full_ring();
        let tvar = full.var(full.nvars() - 1);
        let r = self.rank as u64;
        let mut out = tvar.pow(r);
        for (k, a) in self.coeffs.iter().enumerate() {
            let m = k as u64 + 1;
            let term = &a.extend_vars(&full) * &tvar.pow(r - m);
            out = if m.is_multiple_of(2) { &out + &term } else { &out - &term };
        }
        out
    }

    /// Are all `a_m` free of the coordinate variables?
    pub fn has_constant_coefficients(&self) -> bool {
        let d = self.ring.d();
        self.coeffs.iter().all(|a| a.terms().keys().all(|k| k[..d].iter().all(|&e| e == 0)))
    }

    /// Coefficient of `omega_i^m` in `a_m`, the pure-power part used by the enlarged cover.
    pub fn pure_coeff(&self, m: usize, i: usize) -> Poly {
        let d = self.ring.d();
        let mut out = self.ring.zero();
        for (k, &c) in self.coeffs[m - 1].terms() {
            if k[d + i] as usize == m {
                out.add_term(k[..d].to_vec(), c);
            }
        }
        out
    }

    pub fn embed(&self, emb: &Embedding) -> TwistedCharPoly {
        TwistedCharPoly {
            ring: self.ring.with_field(emb.target()),
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|a| a.embed(emb)).collect(),
        }
    }

    pub fn map_coeffs(&self, ring: &PolyRing, g: impl Fn(&Poly) -> Result<Poly>) -> Result<TwistedCharPoly> {
        let coeffs = self.coeffs.iter().map(g).collect::<Result<Vec<_>>>()?;
        TwistedCharPoly::new(ring, coeffs)
    }
}

/// `phi = sum theta_i omega_i` over the base ring extended by the `omega`s.
pub fn tautological_matrix(theta: &HiggsField) -> PolyMatrix {
    let base = theta.ring();
    let d = base.d();
    let wring = base.with_extra(d);
    let r = theta.rank();
    let mut phi = PolyMatrix::zeros(&wring, r, r);
    for (i, m) in theta.matrices().iter().enumerate() {
        let omega = wring.var(d + i);
        let lifted = m.map_into(&wring, |f| &f.extend_vars(&wring) * &omega);
        phi = phi.add(&lifted);
    }
    phi
}

pub fn twisted_char_poly(theta: &HiggsField) -> TwistedCharPoly {
    let phi = tautological_matrix(theta);
    let cp = phi.charpoly();
    let coeffs = cp
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(m, c)| if m % 2 == 0 { c } else { -&c })
        .collect();
    TwistedCharPoly { ring: theta.ring().with_extra(0), rank: theta.rank(), coeffs }
}

/// Checks `sum_m (-1)^m a_m phi^(r-m) = 0` with `phi = sum theta_i omega_i`.
pub fn cayley_hamilton_check(theta: &HiggsField) -> bool {
    let chi = twisted_char_poly(theta);
    let phi = tautological_matrix(theta);
    let wring = phi.ring().clone();
    let r = theta.rank();
    let mut acc = PolyMatrix::zeros(&wring, r, r);
    // Horner in phi: (((phi - a_1) phi + a_2) phi - ...)
    let id = PolyMatrix::identity(&wring, r);
    acc = acc.add(&id);
    for m in 1..=r {
        let a = chi.coeff(m);
        let signed = if m % 2 == 0 { a.clone() } else { -a };
        acc = acc.mul(&phi).add(&id.scale(&signed));
    }
    acc.is_zero()
}

/// A point of the Hitchin base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinPoint {
    pub charpoly: TwistedCharPoly,
    /// All `a_m` have coefficients in the base field.
    pub constant_coefficients: bool,
}

pub fn hitchin_point(theta: &HiggsField) -> HitchinPoint {
    let charpoly = twisted_char_poly(theta);
    let constant_coefficients = charpoly.has_constant_coefficients();
    HitchinPoint { charpoly, constant_coefficients }
}

/// Generators `g_I` of the spectral-cover ideal in `R[d_1, .., d_d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralIdeal {
    ring: PolyRing,
    rank: usize,
    /// `(omega exponent I with |I| = r, g_I)`, `g_I` over base ring with `d`
    /// extra variables `d_1..d_d`.
    generators: Vec<(Mono, Poly)>,
}

impl SpectralIdeal {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[(Mono, Poly)] {
        &self.generators
    }

    pub fn generator(&self, omega_exp: &[u32]) -> Option<&Poly> {
        self.generators.iter().find(|(k, _)| k.as_slice() == omega_exp).map(|(_, g)| g)
    }

    /// The pure-power generators `g_1, .., g_d` cutting out the enlarged cover.
    pub fn enlarged_generators(&self) -> Vec<&Poly> {
        let d = self.ring.d();
        (0..d)
            .map(|i| {
                let mut key = vec![0u32; d];
                key[i] = self.rank as u32;
                self.generator(&key).expect("pure-power generator is always listed")
            })
            .collect()
    }
}

/// Expands `chi(sum d_j omega_j)` and collects the coefficient of every
/// degree-`r` monomial in the `omega`s.
pub fn spectral_ideal(chi: &TwistedCharPoly) -> SpectralIdeal {
    let base = chi.ring().clone();
    let d = base.d();
    let r = chi.rank();
    // variables: t (d), partial (d), omega (d)
    let sring = base.with_extra(2 * d);
    let lam = (0..d).fold(sring.zero(), |acc, j| &acc + &(&sring.var(d + j) * &sring.var(2 * d + j)));
    let omega_positions: Vec<usize> = (0..d).chain(2 * d..3 * d).collect();
    let mut total = lam.pow(r as u64);
    for m in 1..=r {
        let a = chi.coeff(m).remap(&sring, &omega_positions);
        let term = &a * &lam.pow((r - m) as u64);
        total = if m % 2 == 0 { &total + &term } else { &total - &term };
    }
    let gring = base.with_extra(d);
    let mut buckets: HashMap<Mono, Poly> = HashMap::new();
    for (k, &c) in total.terms() {
        let key: Mono = k[2 * d..].to_vec();
        let entry = buckets.entry(key).or_insert_with(|| gring.zero());
        entry.add_term(k[..2 * d].to_vec(), c);
    }
    let generators = homogeneous_monomials(d, r as u32)
        .into_iter()
        .map(|key| {
            let g = buckets.remove(&key).unwrap_or_else(|| gring.zero());
            (key, g)
        })
        .collect();
    SpectralIdeal { ring: base, rank: r, generators }
}

/// `g(theta)`: substitutes `d_j -> theta_j` in a polynomial of `R[d]`.
pub fn substitute_matrices(g: &Poly, theta: &HiggsField) -> PolyMatrix {
    let base = theta.ring();
    let d = base.d();
    let r = theta.rank();
    let mut powers: HashMap<(usize, u32), PolyMatrix> = HashMap::new();
    let mut acc = PolyMatrix::zeros(base, r, r);
    for (k, &c) in g.terms() {
        let mut coeff_mono = vec![0u32; d];
        coeff_mono.copy_from_slice(&k[..d]);
        let mut m = PolyMatrix::identity(base, r);
        for j in 0..d {
            let e = k[d + j];
            if e == 0 {
                continue;
            }
            let pw = powers.entry((j, e)).or_insert_with(|| theta.matrix(j).pow(e as u64)).clone();
            m = m.mul(&pw);
        }
        acc = acc.add(&m.scale(&base.monomial(coeff_mono, c)));
    }
    acc
}

/// Every generator of the ideal annihilates `theta`.
pub fn annihilation_check(theta: &HiggsField, ideal: &SpectralIdeal) -> bool {
    ideal.generators().iter().all(|(_, g)| substitute_matrices(g, theta).is_zero())
}

/// Degree of the minimal annihilating polynomial of each `theta_i` over the
/// fraction field; it can be smaller than the rank.
pub fn minimal_annihilator_degrees(theta: &HiggsField) -> Vec<usize> {
    let r = theta.rank();
    let base = theta.ring();
    theta
        .matrices()
        .iter()
        .map(|m| {
            let mut rows: Vec<Vec<Poly>> = Vec::new();
            let mut pw = PolyMatrix::identity(base, r);
            for k in 0..=r {
                rows.push(pw.entries().to_vec());
                let mat = PolyMatrix::from_rows(base, rows.clone()).expect("uniform rows");
                if mat.rank() < rows.len() {
                    return k;
                }
                pw = pw.mul(m);
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::BasisTag;
    use crate::field::Field;
    use crate::poly::Twist;

    fn base(p: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R)
    }

    #[test]
    fn counts() {
        assert_eq!(symmetric_count(2, 2), 3);
        assert_eq!(symmetric_count(1, 4), 4);
        assert_eq!(symmetric_count(3, 1), 1);
        assert_eq!(symmetric_count(3, 2), 4);
        assert_eq!(homogeneous_monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn char_poly_examples() {
        let r = base(5, 1);
        let zero = HiggsField::new(&r, vec![PolyMatrix::zeros(&r, 3, 3)], BasisTag::K).unwrap();
        let chi = twisted_char_poly(&zero);
        assert!(chi.coeffs().iter().all(Poly::is_zero));
        assert!(cayley_hamilton_check(&zero));

        let a = &r.var(0) + &r.int(2);
        let theta = PolyMatrix::from_rows(&r, vec![vec![r.zero(), r.one()], vec![a.clone(), r.zero()]]).unwrap();
        let h = HiggsField::new(&r, vec![theta], BasisTag::K).unwrap();
        let chi = twisted_char_poly(&h);
        let w = chi.omega_ring();
        assert!(chi.coeff(1).is_zero());
        // chi = T^2 - a omega^2, so a_2 = -a omega^2
        assert_eq!(chi.coeff(2), &-&(&a.extend_vars(&w) * &w.var(1).pow(2)));
        assert!(cayley_hamilton_check(&h));

        let r2 = base(3, 2);
        let f1 = &r2.var(0) + &r2.one();
        let f2 = r2.var(1).pow(2);
        let h = HiggsField::new(
            &r2,
            vec![
                PolyMatrix::from_rows(&r2, vec![vec![f1.clone()]]).unwrap(),
                PolyMatrix::from_rows(&r2, vec![vec![f2.clone()]]).unwrap(),
            ],
            BasisTag::K,
        )
        .unwrap();
        let chi = twisted_char_poly(&h);
        let w = chi.omega_ring();
        let expected = &(&f1.extend_vars(&w) * &w.var(2)) + &(&f2.extend_vars(&w) * &w.var(3));
        assert_eq!(chi.coeff(1), &expected);
        let hp = hitchin_point(&h);
        assert!(!hp.constant_coefficients);
    }

    #[test]
    fn spectral_ideal_rank2_dim2() {
        // chi = T^2 - a with a = a21 w1^2 + a11 w1 w2 + a22 w2^2
        let r = base(5, 2);
        let w = r.with_extra(2);
        let (a21, a11, a22) = (&r.var(0) + &r.one(), r.var(1), r.int(3));
        let a = &(&(&a21.extend_vars(&w) * &w.var(2).pow(2)) + &(&a11.extend_vars(&w) * &(&w.var(2) * &w.var(3))))
            + &(&a22.extend_vars(&w) * &w.var(3).pow(2));
        let chi = TwistedCharPoly::new(&r, vec![w.zero(), -&a]).unwrap();
        let ideal = spectral_ideal(&chi);
        assert_eq!(ideal.generators().len(), 3);
        let g = r.with_extra(2);
        let d1 = g.var(2);
        let d2 = g.var(3);
        assert_eq!(ideal.generator(&[2, 0]).unwrap(), &(&d1.pow(2) - &a21.extend_vars(&g)));
        assert_eq!(ideal.generator(&[1, 1]).unwrap(), &(&(&d1 * &d2).scale(r.field().from_int(2)) - &a11.extend_vars(&g)));
        assert_eq!(ideal.generator(&[0, 2]).unwrap(), &(&d2.pow(2) - &a22.extend_vars(&g)));
        assert_eq!(ideal.enlarged_generators().len(), 2);
    }

    #[test]
    fn spectral_ideal_rank1_and_curve() {
        let r = base(3, 3);
        let fs: Vec<Poly> = (0..3).map(|i| &r.var(i) + &r.int(i as i64)).collect();
        let h = HiggsField::new(
            &r,
            fs.iter().map(|f| PolyMatrix::from_rows(&r, vec![vec![f.clone()]]).unwrap()).collect(),
            BasisTag::K,
        )
        .unwrap();
        let ideal = spectral_ideal(&twisted_char_poly(&h));
        assert_eq!(ideal.generators().len(), 3);
        let g = r.with_extra(3);
        for (i, gi) in ideal.enlarged_generators().into_iter().enumerate() {
            assert_eq!(gi, &(&g.var(3 + i) - &fs[i].extend_vars(&g)));
        }
        assert!(annihilation_check(&h, &ideal));

        let r1 = base(2, 1);
        let theta = PolyMatrix::from_rows(&r1, vec![vec![r1.var(0), r1.one()], vec![r1.zero(), r1.var(0)]]).unwrap();
        let h = HiggsField::new(&r1, vec![theta], BasisTag::K).unwrap();
        let ideal = spectral_ideal(&twisted_char_poly(&h));
        assert_eq!(ideal.generators().len(), 1);
        assert!(annihilation_check(&h, &ideal));
        assert_eq!(minimal_annihilator_degrees(&h), vec![2]);
    }

    #[test]
    fn minimal_polynomial_can_be_thinner() {
        let r = base(3, 1);
        let theta = PolyMatrix::scalar(&r, 3, &r.var(0));
        let h = HiggsField::new(&r, vec![theta], BasisTag::K).unwrap();
        assert_eq!(minimal_annihilator_degrees(&h), vec![1]);
        assert!(annihilation_check(&h, &spectral_ideal(&twisted_char_poly(&h))));
    }
}
