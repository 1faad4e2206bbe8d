//! The relative Frobenius `R' -> R`, `t'_i -> t_i^p`, and the free
//! `R'`-module structure of `R` with basis `t^I`, `I in {0..p-1}^d`.
//!
//! Basis index of `t^I` is `sum_k I_k p^k`, so `t_1` varies fastest:
//! for `p = 2, d = 2` the basis reads `1, t1, t2, t1 t2`.

use crate::error::{Error, Result};
use crate::linalg::PolyMatrix;
use crate::poly::{Poly, PolyRing, Twist};

/// `f'(t') -> f'(t^p)`; coefficients and auxiliary variables unchanged.
pub fn frobenius_pullback(f: &Poly) -> Result<Poly> {
    let ring = f.ring();
    if ring.twist() != Twist::Rprime {
        return Err(Error::RingMismatch("Frobenius pullback expects a polynomial over R'".into()));
    }
    let p = ring.p();
    let d = ring.d();
    let target = ring.with_twist(Twist::R);
    Ok(target.from_terms(f.terms().iter().map(|(m, &c)| {
        let mut m2 = m.clone();
        for e in m2.iter_mut().take(d) {
            *e *= p;
        }
        (m2, c)
    })))
}

/// Inverse of [`frobenius_pullback`] on its image.
pub fn frobenius_preimage(f: &Poly) -> Result<Poly> {
    let ring = f.ring();
    if ring.twist() != Twist::R {
        return Err(Error::RingMismatch("Frobenius preimage expects a polynomial over R".into()));
    }
    let p = ring.p();
    let d = ring.d();
    let target = ring.with_twist(Twist::Rprime);
    let mut out = target.zero();
    for (m, &c) in f.terms() {
        if m[..d].iter().any(|&e| e % p != 0) {
            return Err(Error::NotInImage);
        }
        let mut m2 = m.clone();
        for e in m2.iter_mut().take(d) {
            *e /= p;
        }
        out.add_term(m2, c);
    }
    Ok(out)
}

pub fn frobenius_pullback_matrix(m: &PolyMatrix) -> Result<PolyMatrix> {
    let ring = m.ring().with_twist(Twist::R);
    let rows = m.to_rows().iter().map(|row| row.iter().map(frobenius_pullback).collect()).collect::<Result<Vec<Vec<Poly>>>>()?;
    PolyMatrix::from_rows(&ring, rows)
}

pub fn frobenius_preimage_matrix(m: &PolyMatrix) -> Result<PolyMatrix> {
    let ring = m.ring().with_twist(Twist::Rprime);
    let rows = m.to_rows().iter().map(|row| row.iter().map(frobenius_preimage).collect()).collect::<Result<Vec<Vec<Poly>>>>()?;
    PolyMatrix::from_rows(&ring, rows)
}

/// Applies `c -> c^p` to every coefficient.
pub fn coefficient_frobenius(f: &Poly) -> Poly {
    let field = f.field().clone();
    f.map_coeffs(|c| field.frobenius(c))
}

/// Applies `c -> c^(1/p)` to every coefficient.
pub fn coefficient_frobenius_root(f: &Poly) -> Poly {
    let field = f.field().clone();
    f.map_coeffs(|c| field.frobenius_root(c))
}

/// Number of basis monomials `p^d`.
pub fn frobenius_rank(p: u32, d: usize) -> usize {
    (p as usize).pow(d as u32)
}

/// Exponent vector of the basis monomial with the given index.
pub fn basis_exponent(index: usize, p: u32, d: usize) -> Vec<u32> {
    let mut rest = index;
    (0..d)
        .map(|_| {
            let e = (rest % p as usize) as u32;
            rest /= p as usize;
            e
        })
        .collect()
}

pub fn basis_index(exp: &[u32], p: u32) -> usize {
    exp.iter().rev().fold(0usize, |acc, &e| acc * p as usize + e as usize)
}

/// Coordinates of `f` in the basis `t^I` over `R'`: `f = sum_I F*(c_I) t^I`.
pub fn decompose(f: &Poly) -> Result<Vec<Poly>> {
    let ring = f.ring();
    if ring.twist() != Twist::R {
        return Err(Error::RingMismatch("decompose expects a polynomial over R".into()));
    }
    let p = ring.p();
    let d = ring.d();
    let target = ring.with_twist(Twist::Rprime);
    let mut out = vec![target.zero(); frobenius_rank(p, d)];
    for (m, &c) in f.terms() {
        let low: Vec<u32> = m[..d].iter().map(|&e| e % p).collect();
        let mut high = m.clone();
        for e in high.iter_mut().take(d) {
            *e /= p;
        }
        out[basis_index(&low, p)].add_term(high, c);
    }
    Ok(out)
}

/// Matrix over `R'` of an `R`-linear endomorphism of `R^r`, in the basis
/// `e_a t^I` ordered by `(a, I)` with `a` outermost.
pub fn pushforward_matrix(m: &PolyMatrix) -> Result<PolyMatrix> {
    let ring = m.ring();
    if ring.twist() != Twist::R {
        return Err(Error::RingMismatch("pushforward expects a matrix over R".into()));
    }
    let p = ring.p();
    let d = ring.d();
    let n = frobenius_rank(p, d);
    let r = m.rows();
    let target = ring.with_twist(Twist::Rprime);
    let mut out = PolyMatrix::zeros(&target, n * r, n * m.cols());
    for b in 0..m.cols() {
        for j in 0..n {
            let mut shift = vec![0u32; ring.nvars()];
            shift[..d].copy_from_slice(&basis_exponent(j, p, d));
            for a in 0..r {
                let entry = m.get(a, b);
                if entry.is_zero() {
                    continue;
                }
                let coords = decompose(&entry.shift(&shift))?;
                for (i, c) in coords.into_iter().enumerate() {
                    out.set(a * n + i, b * n + j, c);
                }
            }
        }
    }
    Ok(out)
}

/// Norm of `R` over `R'`: determinant of multiplication by `g` on the rank-`p^d` module `R`.
pub fn norm_map(g: &Poly) -> Result<Poly> {
    let ring = g.ring().clone();
    let one_by_one = PolyMatrix::from_rows(&ring, vec![vec![g.clone()]])?;
    Ok(pushforward_matrix(&one_by_one)?.det())
}

/// The coordinate ring pair `(R, R')` sharing a field and dimension.
pub fn twisted_pair(ring: &PolyRing) -> (PolyRing, PolyRing) {
    (ring.with_twist(Twist::R), ring.with_twist(Twist::Rprime))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn rings(p: u32, d: usize) -> (PolyRing, PolyRing) {
        twisted_pair(&PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R))
    }

    #[test]
    fn pullback_examples() {
        let (r, rp) = rings(3, 2);
        assert_eq!(frobenius_pullback(&rp.var(0)).unwrap(), r.var(0).pow(3));
        assert_eq!(frobenius_pullback(&rp.int(2)).unwrap(), r.int(2));
        let f = &(&rp.var(0) * &rp.var(1)) + &rp.one();
        assert_eq!(frobenius_pullback(&f).unwrap(), &(&r.var(0).pow(3) * &r.var(1).pow(3)) + &r.one());
        assert!(matches!(frobenius_pullback(&r.var(0)), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn preimage_examples() {
        let (r, rp) = rings(2, 1);
        assert_eq!(frobenius_preimage(&r.var(0).pow(2)).unwrap(), rp.var(0));
        assert_eq!(frobenius_preimage(&r.one()).unwrap(), rp.one());
        assert_eq!(frobenius_preimage(&r.var(0)), Err(Error::NotInImage));
    }

    #[test]
    fn norm_examples() {
        let (r, rp) = rings(2, 1);
        let t = r.var(0);
        let mult_t = PolyMatrix::from_rows(&r, vec![vec![t.clone()]]).unwrap();
        let pf = pushforward_matrix(&mult_t).unwrap();
        let expected = PolyMatrix::from_rows(&rp, vec![vec![rp.zero(), rp.var(0)], vec![rp.one(), rp.zero()]]).unwrap();
        assert_eq!(pf, expected);
        assert_eq!(norm_map(&t).unwrap(), rp.var(0));
        assert_eq!(norm_map(&(&t + &r.one())).unwrap(), &rp.var(0) + &rp.one());

        let (r3, rp3) = rings(3, 2);
        assert_eq!(norm_map(&r3.int(2)).unwrap(), rp3.constant(r3.field().pow(r3.field().from_int(2), 9)));
    }

    #[test]
    fn basis_order_puts_first_variable_fastest() {
        let exps: Vec<Vec<u32>> = (0..4).map(|i| basis_exponent(i, 2, 2)).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        for i in 0..27 {
            assert_eq!(basis_index(&basis_exponent(i, 3, 3), 3), i);
        }
    }
}
