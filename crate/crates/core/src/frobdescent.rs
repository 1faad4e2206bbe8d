//! Frobenius pushforward of a flat connection and the descent of its
//! characteristic polynomial to `R'`.
//!
//! `F_* E` is free over `R'` with basis `e_a t^I`, ordered by `(a, I)` with
//! `a` outermost and `t_1` varying fastest inside each block.

use crate::connection::{p_curvature, BasisTag, Connection, HiggsField};
use crate::error::{Error, Result};
use crate::frobenius::{basis_exponent, frobenius_pullback, frobenius_preimage, frobenius_rank, pushforward_matrix};
use crate::higgs::{twisted_char_poly, TwistedCharPoly};
use crate::linalg::PolyMatrix;
use crate::poly::{Mono, PolyRing, Twist};

/// `F_* R^r` as a free `R'`-module of rank `p^d r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobModule {
    ring: PolyRing,
    source_rank: usize,
}

impl FrobModule {
    /// Ring `R'` over which the module is free.
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn rank(&self) -> usize {
        frobenius_rank(self.ring.p(), self.ring.d()) * self.source_rank
    }

    /// `(a, I)` labels in basis order.
    pub fn basis(&self) -> Vec<(usize, Mono)> {
        let n = frobenius_rank(self.ring.p(), self.ring.d());
        (0..self.source_rank)
            .flat_map(|a| (0..n).map(move |j| (a, j)))
            .map(|(a, j)| (a, basis_exponent(j, self.ring.p(), self.ring.d())))
            .collect()
    }

    /// Matrix of `t'_i`, computed through the source as multiplication by `t_i^p`.
    pub fn coordinate_action(&self, i: usize) -> Result<PolyMatrix> {
        let r = self.ring.with_twist(Twist::R);
        let m = PolyMatrix::scalar(&r, self.source_rank, &r.var(i).pow(r.p() as u64));
        pushforward_matrix(&m)
    }
}

pub fn pushforward_module(ring: &PolyRing, rank: usize) -> FrobModule {
    FrobModule { ring: ring.with_extra(0).with_twist(Twist::Rprime), source_rank: rank }
}

/// Matrix over `R'` of an `R`-linear endomorphism, on the basis of [`FrobModule`].
pub fn pushforward_operator(t: &PolyMatrix) -> Result<PolyMatrix> {
    pushforward_matrix(t)
}

/// `psi'_i = F_* psi_i`, a Higgs field over `R'` of rank `p^d r`.
pub fn induced_psi_prime(conn: &Connection) -> Result<HiggsField> {
    let psi = p_curvature(conn)?;
    let mats = psi.matrices().iter().map(pushforward_operator).collect::<Result<Vec<_>>>()?;
    let ring = conn.ring().with_twist(Twist::Rprime);
    HiggsField::new(&ring, mats, BasisTag::WK)
}

/// Descends a twisted characteristic polynomial over `R` whose coefficients
/// lie in the image of Frobenius.
pub fn descend_char_poly(chi: &TwistedCharPoly) -> Result<TwistedCharPoly> {
    let target = chi.ring().with_twist(Twist::Rprime);
    chi.map_coeffs(&target, |a| {
        frobenius_preimage(a).map_err(|_| Error::DescentFailure(format!("coefficient {a} is not a p-th power in t")))
    })
}

/// `chi''`: the characteristic polynomial of the p-curvature, descended to `R'`.
pub fn c_dr(conn: &Connection) -> Result<TwistedCharPoly> {
    let psi = p_curvature(conn)?;
    descend_char_poly(&twisted_char_poly(&psi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    /// Characteristic polynomial of the p-curvature, over `R`.
    pub chi: TwistedCharPoly,
    /// Characteristic polynomial of `psi'`, over `R'`.
    pub chi_prime: TwistedCharPoly,
    pub chi_2prime: TwistedCharPoly,
    /// `F* chi' = chi^(p^d)` over `R`.
    pub identity_i: bool,
    /// `chi' = (chi'')^(p^d)` over `R'`.
    pub identity_ii: bool,
}

impl DescentReport {
    pub fn holds(&self) -> bool {
        self.identity_i && self.identity_ii
    }
}

pub fn verify_descent(conn: &Connection) -> Result<DescentReport> {
    let psi = p_curvature(conn)?;
    let chi = twisted_char_poly(&psi);
    let chi_2prime = descend_char_poly(&chi)?;
    let mats = psi.matrices().iter().map(pushforward_operator).collect::<Result<Vec<_>>>()?;
    let psi_prime = HiggsField::new(&conn.ring().with_twist(Twist::Rprime), mats, BasisTag::WK)?;
    let chi_prime = twisted_char_poly(&psi_prime);

    let pd = frobenius_rank(conn.ring().p(), conn.d()) as u64;
    let identity_i = frobenius_pullback(&chi_prime.to_poly())? == chi.to_poly().pow(pd);
    let identity_ii = chi_prime.to_poly() == chi_2prime.to_poly().pow(pd);
    Ok(DescentReport { chi, chi_prime, chi_2prime, identity_i, identity_ii })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::forms::OneForm;
    use crate::frobenius::norm_map;
    use crate::poly::Poly;

    fn ring(p: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R)
    }

    #[test]
    fn module_shapes() {
        let m = pushforward_module(&ring(2, 1), 1);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.basis(), vec![(0, vec![0]), (0, vec![1])]);
        assert_eq!(pushforward_module(&ring(3, 1), 2).rank(), 6);
        let m = pushforward_module(&ring(2, 2), 1);
        assert_eq!(m.basis().into_iter().map(|(_, i)| i).collect::<Vec<_>>(), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let rp = m.ring().clone();
        assert_eq!(m.coordinate_action(1).unwrap(), PolyMatrix::scalar(&rp, 4, &rp.var(1)));
    }

    #[test]
    fn operator_examples() {
        let r = ring(3, 2);
        let rp = r.with_twist(Twist::Rprime);
        assert_eq!(pushforward_operator(&PolyMatrix::identity(&r, 2)).unwrap(), PolyMatrix::identity(&rp, 18));
        let g = &(&r.var(0) * &r.var(1)) + &r.int(2);
        let m = PolyMatrix::from_rows(&r, vec![vec![g.clone()]]).unwrap();
        assert_eq!(pushforward_operator(&m).unwrap().det(), norm_map(&g).unwrap());
    }

    #[test]
    fn rank_one_descent_example() {
        let r = ring(2, 1);
        let rp = r.with_twist(Twist::Rprime);
        let conn = Connection::from_form(&OneForm::new(&r, vec![r.var(0)]).unwrap(), r.field().one()).unwrap();
        let psi_prime = induced_psi_prime(&conn).unwrap();
        assert_eq!(psi_prime.matrix(0), &PolyMatrix::scalar(&rp, 2, &(&rp.var(0) + &rp.one())));

        let chi2 = c_dr(&conn).unwrap();
        let w = chi2.omega_ring();
        assert_eq!(chi2.coeff(1), &(&(&w.var(0) + &w.one()) * &w.var(1)));

        let rep = verify_descent(&conn).unwrap();
        assert!(rep.holds());
        let full = rep.chi_prime.full_ring();
        let lin = &full.var(2) - &(&(&full.var(0) + &full.one()) * &full.var(1));
        assert_eq!(rep.chi_prime.to_poly(), lin.pow(2));
    }

    #[test]
    fn witness_descends() {
        let r = ring(2, 1);
        let conn = Connection::from_form(&OneForm::new(&r, vec![r.var(0)]).unwrap(), r.field().one()).unwrap();
        assert!(c_dr(&conn).is_ok());
        let r3 = ring(3, 1);
        let conn = Connection::from_form(&OneForm::new(&r3, vec![r3.var(0).pow(2)]).unwrap(), r3.field().one()).unwrap();
        let chi2 = c_dr(&conn).unwrap();
        let w = chi2.omega_ring();
        // psi = t^6 - 1 = t'^2 - 1
        assert_eq!(chi2.coeff(1), &(&(&w.var(0).pow(2) - &w.one()) * &w.var(1)));
    }

    #[test]
    fn trivial_connection_descends_to_power_of_t() {
        let r = ring(3, 1);
        let rep = verify_descent(&Connection::trivial(&r, r.field().one(), 2)).unwrap();
        assert!(rep.holds());
        assert!(rep.chi_2prime.coeffs().iter().all(Poly::is_zero));
        let full = rep.chi_prime.full_ring();
        assert_eq!(rep.chi_prime.to_poly(), full.var(2).pow(6));
    }

    #[test]
    fn rank_two_nonabelian_example() {
        let r = ring(3, 1);
        let t = r.var(0);
        let a = PolyMatrix::from_rows(&r, vec![vec![t.clone(), r.one()], vec![r.zero(), t.pow(2)]]).unwrap();
        let conn = Connection::new(&r, r.field().one(), vec![a]).unwrap();
        let rep = verify_descent(&conn).unwrap();
        assert!(rep.identity_i, "F* chi' != chi^p");
        assert!(rep.identity_ii, "chi' != chi''^p");
    }

    #[test]
    fn basis_permutation_preserves_char_poly() {
        let r = ring(2, 1);
        let conn = Connection::from_form(&OneForm::new(&r, vec![&r.var(0) + &r.one()]).unwrap(), r.field().one()).unwrap();
        let psi_prime = induced_psi_prime(&conn).unwrap();
        let permuted: Vec<PolyMatrix> = psi_prime.matrices().iter().map(|m| m.permute(&[1, 0])).collect();
        let other = HiggsField::new(psi_prime.ring(), permuted, BasisTag::WK).unwrap();
        assert_eq!(twisted_char_poly(&psi_prime), twisted_char_poly(&other));
    }

    #[test]
    fn non_flat_is_rejected() {
        let r = ring(2, 2);
        let nil = PolyMatrix::from_rows(&r, vec![vec![r.zero(), r.var(1)], vec![r.zero(), r.zero()]]).unwrap();
        let conn = Connection::new(&r, r.field().one(), vec![nil, PolyMatrix::zeros(&r, 2, 2)]).unwrap();
        assert_eq!(verify_descent(&conn), Err(Error::NotFlat));
    }
}
