//! Flat `lambda`-connections on free modules `R^r` and their p-curvature.
//!
//! `nabla_i = lambda d/dt_i + A_i`; the p-curvature along `d/dt_i` is the
//! matrix of `nabla_i^p`, since `(d/dt_i)^[p] = 0`.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::forms::OneForm;
use crate::linalg::PolyMatrix;
use crate::poly::{Poly, PolyRing, Twist};

/// Which twisted cotangent bundle a Higgs field's index refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BasisTag {
    K,
    FrK,
    WK,
}

/// Commuting tuple `theta_1, .., theta_d` of `r x r` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsField {
    ring: PolyRing,
    rank: usize,
    theta: Vec<PolyMatrix>,
    tag: BasisTag,
}

impl HiggsField {
    pub fn new(ring: &PolyRing, theta: Vec<PolyMatrix>, tag: BasisTag) -> Result<HiggsField> {
        if theta.len() != ring.d() {
            return Err(Error::InvalidInput(format!("Higgs field needs {} matrices, got {}", ring.d(), theta.len())));
        }
        let rank = theta[0].rows();
        for m in &theta {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidInput("Higgs matrices must be square of equal size".into()));
            }
            if m.ring() != ring {
                return Err(Error::RingMismatch(format!("Higgs matrix over {:?}, expected {ring:?}", m.ring())));
            }
        }
        for i in 0..theta.len() {
            for j in i + 1..theta.len() {
                if !theta[i].commutator(&theta[j]).is_zero() {
                    return Err(Error::NotCommuting);
                }
            }
        }
        Ok(HiggsField { ring: ring.clone(), rank, theta, tag })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn d(&self) -> usize {
        self.theta.len()
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.theta
    }

    pub fn matrix(&self, i: usize) -> &PolyMatrix {
        &self.theta[i]
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn with_tag(&self, tag: BasisTag) -> HiggsField {
        HiggsField { tag, ..self.clone() }
    }

    /// Conjugates every `theta_i` by an invertible `u`: `u^{-1} theta_i u`.
    pub fn conjugate(&self, u: &PolyMatrix, u_inv: &PolyMatrix) -> HiggsField {
        let theta = self.theta.iter().map(|m| u_inv.mul(m).mul(u)).collect();
        HiggsField { theta, ..self.clone() }
    }
}

/// p-curvature of a flat connection: a Higgs field twisted by `Fr* K`, over `R`.
pub type PCurvature = HiggsField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    ring: PolyRing,
    lambda: Elem,
    rank: usize,
    a: Vec<PolyMatrix>,
}

impl Connection {
    pub fn new(ring: &PolyRing, lambda: Elem, a: Vec<PolyMatrix>) -> Result<Connection> {
        if ring.twist() != Twist::R || ring.extra() != 0 {
            return Err(Error::RingMismatch("connections live on the coordinate ring R".into()));
        }
        if a.len() != ring.d() {
            return Err(Error::InvalidInput(format!("connection needs {} matrices, got {}", ring.d(), a.len())));
        }
        let rank = a[0].rows();
        for m in &a {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidInput("connection matrices must be square of equal size".into()));
            }
            if m.ring() != ring {
                return Err(Error::RingMismatch(format!("connection matrix over {:?}", m.ring())));
            }
        }
        Ok(Connection { ring: ring.clone(), lambda, rank, a })
    }

    /// Trivial connection `lambda d` of rank `r`.
    pub fn trivial(ring: &PolyRing, lambda: Elem, rank: usize) -> Connection {
        Connection { ring: ring.clone(), lambda, rank, a: vec![PolyMatrix::zeros(ring, rank, rank); ring.d()] }
    }

    /// Rank-one connection `lambda d + omega`.
    pub fn from_form(omega: &OneForm, lambda: Elem) -> Result<Connection> {
        let ring = omega.ring().clone();
        let a = omega
            .components()
            .iter()
            .map(|f| PolyMatrix::from_rows(&ring, vec![vec![f.clone()]]))
            .collect::<Result<Vec<_>>>()?;
        Connection::new(&ring, lambda, a)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.a
    }

    /// `nabla_i` applied to a matrix of column vectors.
    pub fn apply(&self, i: usize, v: &PolyMatrix) -> PolyMatrix {
        let lam = self.ring.constant(self.lambda);
        v.map(|f| &f.partial(i) * &lam).add(&self.a[i].mul(v))
    }

    /// `lambda (d_i A_j - d_j A_i) + [A_i, A_j] = 0` for all `i < j`.
    pub fn is_flat(&self) -> bool {
        let lam = self.ring.constant(self.lambda);
        let d = self.d();
        (0..d).all(|i| {
            (i + 1..d).all(|j| {
                let di_aj = self.a[j].map(|f| f.partial(i));
                let dj_ai = self.a[i].map(|f| f.partial(j));
                di_aj.sub(&dj_ai).scale(&lam).add(&self.a[i].commutator(&self.a[j])).is_zero()
            })
        })
    }

    /// Gauge transform by an invertible `g`: `g^{-1} nabla g`.
    pub fn gauge(&self, g: &PolyMatrix, g_inv: &PolyMatrix) -> Connection {
        let lam = self.ring.constant(self.lambda);
        let a = (0..self.d())
            .map(|i| {
                let dg = g.map(|f| &f.partial(i) * &lam);
                g_inv.mul(&self.a[i]).mul(g).add(&g_inv.mul(&dg))
            })
            .collect();
        Connection { a, ..self.clone() }
    }

    /// `nabla_j(psi) = lambda d_j psi + [A_j, psi]` as an endomorphism.
    pub fn covariant_derivative_endo(&self, j: usize, m: &PolyMatrix) -> PolyMatrix {
        let lam = self.ring.constant(self.lambda);
        m.map(|f| &f.partial(j) * &lam).add(&self.a[j].commutator(m))
    }
}

/// p-curvature by iterating each `nabla_i` `p` times on the standard basis.
pub fn p_curvature(conn: &Connection) -> Result<PCurvature> {
    if !conn.is_flat() {
        return Err(Error::NotFlat);
    }
    let ring = conn.ring();
    let p = ring.p();
    let r = conn.rank();
    let id = PolyMatrix::identity(ring, r);
    let iterate = |i: usize, v: &PolyMatrix| {
        let mut cur = v.clone();
        for _ in 0..p {
            cur = conn.apply(i, &cur);
        }
        cur
    };
    let mut psi = Vec::with_capacity(conn.d());
    for i in 0..conn.d() {
        let m = iterate(i, &id);
        // R-linearity on generators: nabla_i^p (t_k e_j) = t_k psi_i e_j
        for k in 0..ring.d() {
            let tk = ring.var(k);
            if iterate(i, &id.scale(&tk)) != m.scale(&tk) {
                return Err(Error::LinearityFailure(format!("direction {} against t{}", i + 1, k + 1)));
            }
        }
        psi.push(m);
    }
    for i in 0..psi.len() {
        for j in 0..psi.len() {
            if i < j && !psi[i].commutator(&psi[j]).is_zero() {
                return Err(Error::VerificationFailure(format!("p-curvatures {} and {} do not commute", i + 1, j + 1)));
            }
            if !conn.covariant_derivative_endo(j, &psi[i]).is_zero() {
                return Err(Error::VerificationFailure(format!(
                    "p-curvature {} is not horizontal along {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    HiggsField::new(ring, psi, BasisTag::FrK)
}

/// Closed-form rank-one p-curvature: component `f_i^p + lambda^(p-1) d_i^(p-1) f_i`.
pub fn p_curvature_rank1_formula(omega: &OneForm, lambda: Elem) -> Result<OneForm> {
    if !omega.is_closed() {
        return Err(Error::NotClosed);
    }
    let ring = omega.ring();
    let field = ring.field();
    let p = ring.p();
    let scale = ring.constant(field.pow(lambda, p as u64 - 1));
    let comps: Vec<Poly> = omega
        .components()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut der = f.clone();
            for _ in 0..p - 1 {
                der = der.partial(i);
            }
            &f.pow(p as u64) + &(&der * &scale)
        })
        .collect();
    OneForm::new(ring, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::forms::cartier_pcurvature;

    fn ring(p: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R)
    }

    #[test]
    fn flatness_examples() {
        let r = ring(3, 1);
        let m = PolyMatrix::from_rows(&r, vec![vec![r.var(0), r.one()], vec![r.zero(), r.var(0).pow(2)]]).unwrap();
        assert!(Connection::new(&r, r.field().one(), vec![m]).unwrap().is_flat());

        let r2 = ring(3, 2);
        let c = PolyMatrix::from_rows(&r2, vec![vec![r2.int(2), r2.zero()], vec![r2.zero(), r2.int(1)]]).unwrap();
        assert!(Connection::new(&r2, r2.field().one(), vec![c.clone(), c.clone()]).unwrap().is_flat());

        let nil = PolyMatrix::from_rows(&r2, vec![vec![r2.zero(), r2.var(1)], vec![r2.zero(), r2.zero()]]).unwrap();
        let z = PolyMatrix::zeros(&r2, 2, 2);
        let conn = Connection::new(&r2, r2.field().one(), vec![nil, z]).unwrap();
        assert!(!conn.is_flat());
        assert_eq!(p_curvature(&conn), Err(Error::NotFlat));
    }

    #[test]
    fn trivial_connection_has_zero_p_curvature() {
        let r = ring(3, 2);
        let psi = p_curvature(&Connection::trivial(&r, r.field().one(), 2)).unwrap();
        assert!(psi.matrices().iter().all(PolyMatrix::is_zero));
    }

    #[test]
    fn witness_t_to_the_p_minus_one() {
        for p in [2, 3, 5] {
            let r = ring(p, 1);
            let omega = OneForm::new(&r, vec![r.var(0).pow(p as u64 - 1)]).unwrap();
            let conn = Connection::from_form(&omega, r.field().one()).unwrap();
            let psi = p_curvature(&conn).unwrap();
            let expected = &r.var(0).pow((p * (p - 1)) as u64) - &r.one();
            assert_eq!(psi.matrix(0).get(0, 0), &expected);
            assert_eq!(p_curvature_rank1_formula(&omega, r.field().one()).unwrap().component(0), &expected);
            assert_eq!(cartier_pcurvature(&omega).unwrap().component(0), &expected);
        }
    }

    #[test]
    fn rank1_formula_examples() {
        let r = ring(2, 1);
        let omega = OneForm::new(&r, vec![r.var(0)]).unwrap();
        let psi = p_curvature_rank1_formula(&omega, r.field().one()).unwrap();
        assert_eq!(psi.component(0), &(&r.var(0).pow(2) + &r.one()));
        assert!(p_curvature_rank1_formula(&OneForm::zero(&r), r.field().one()).unwrap().is_zero());
    }

    #[test]
    fn zero_twist_gives_matrix_powers() {
        let r = ring(3, 1);
        let a = PolyMatrix::from_rows(&r, vec![vec![r.var(0), r.one()], vec![r.int(2), r.var(0).pow(2)]]).unwrap();
        let conn = Connection::new(&r, r.field().zero(), vec![a.clone()]).unwrap();
        assert_eq!(p_curvature(&conn).unwrap().matrix(0), &a.pow(3));
        let nil = PolyMatrix::from_rows(&r, vec![vec![r.zero(), r.var(0)], vec![r.zero(), r.zero()]]).unwrap();
        let conn = Connection::new(&r, r.field().zero(), vec![nil]).unwrap();
        assert!(p_curvature(&conn).unwrap().matrix(0).is_zero());
    }

    #[test]
    fn higgs_field_rejects_noncommuting() {
        let r = ring(2, 2);
        let a = PolyMatrix::from_rows(&r, vec![vec![r.zero(), r.one()], vec![r.zero(), r.zero()]]).unwrap();
        let b = a.transpose();
        assert_eq!(HiggsField::new(&r, vec![a, b], BasisTag::K), Err(Error::NotCommuting));
    }
}
