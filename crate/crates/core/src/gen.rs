//! Random test objects: polynomials, closed forms, flat connections,
//! commuting Higgs fields and unimodular matrices.
//!
//! All generators draw from a caller-supplied [`Rng`], so a seeded generator
//! reproduces the same objects.

use rand::Rng;

use crate::azcorr::pure_char_polys;
use crate::connection::{BasisTag, Connection, HiggsField};
use crate::error::Result;
use crate::field::{Elem, Field, UniPoly};
use crate::forms::{monomials_up_to, OneForm};
use crate::higgs::hitchin_point;
use crate::linalg::PolyMatrix;
use crate::poly::{Poly, PolyRing};
use crate::weyl::WeylElement;

pub fn elem<R: Rng>(field: &Field, rng: &mut R) -> Elem {
    field.from_code(rng.gen_range(0..field.q())).expect("code below q")
}

pub fn nonzero_elem<R: Rng>(field: &Field, rng: &mut R) -> Elem {
    field.from_code(rng.gen_range(1..field.q())).expect("code below q")
}

/// Polynomial in the coordinate variables with at most `max_terms` random
/// monomials of degree at most `max_deg`.
pub fn poly<R: Rng>(ring: &PolyRing, max_deg: u32, max_terms: usize, rng: &mut R) -> Poly {
    let monos = monomials_up_to(ring.d(), max_deg);
    let mut out = ring.zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut m = monos[rng.gen_range(0..monos.len())].clone();
        m.resize(ring.nvars(), 0);
        out.add_term(m, elem(ring.field(), rng));
    }
    out
}

/// Random element of the `lambda`-Weyl algebra of degree at most `max_deg`.
pub fn weyl<R: Rng>(field: &Field, d: usize, lambda: Elem, max_deg: u32, rng: &mut R) -> WeylElement {
    let monos = monomials_up_to(2 * d, max_deg);
    let mut out = WeylElement::zero(field, d, lambda);
    for _ in 0..rng.gen_range(1..=4) {
        let m = &monos[rng.gen_range(0..monos.len())];
        let term = WeylElement::monomial(field, d, lambda, &m[..d], &m[d..], elem(field, rng));
        out = out.try_add(&term).expect("same algebra");
    }
    out
}

/// Closed form `dF + sum_i g_i(t_i) dt_i`; the second part is usually not exact.
pub fn closed_form<R: Rng>(ring: &PolyRing, max_deg: u32, rng: &mut R) -> OneForm {
    let f = poly(ring, max_deg + 1, 3, rng);
    let mut comps: Vec<Poly> = (0..ring.d()).map(|i| f.partial(i)).collect();
    for (i, c) in comps.iter_mut().enumerate() {
        for e in 0..=max_deg {
            if rng.gen_bool(0.5) {
                let mut m = vec![0u32; ring.nvars()];
                m[i] = e;
                c.add_term(m, elem(ring.field(), rng));
            }
        }
    }
    OneForm::new(ring, comps).expect("d components")
}

/// Product of elementary matrices with low-degree entries and a constant diagonal.
pub fn unimodular<R: Rng>(ring: &PolyRing, n: usize, steps: usize, max_deg: u32, rng: &mut R) -> PolyMatrix {
    let mut m = PolyMatrix::from_fn(ring, n, n, |i, j| if i == j { ring.constant(nonzero_elem(ring.field(), rng)) } else { ring.zero() });
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f = poly(ring, max_deg, 2, rng);
        let mut e = PolyMatrix::identity(ring, n);
        e.set(i, j, f);
        m = m.mul(&e);
    }
    m
}

/// Flat connection of rank `r`: a gauge transform of a triangular block of
/// rank-one connections with closed forms.
pub fn flat_connection<R: Rng>(ring: &PolyRing, r: usize, max_deg: u32, rng: &mut R) -> Connection {
    let lambda = ring.field().one();
    let d = ring.d();
    let mut a = vec![PolyMatrix::zeros(ring, r, r); d];
    let diag: Vec<OneForm> = (0..r).map(|_| closed_form(ring, max_deg, rng)).collect();
    for (k, w) in diag.iter().enumerate() {
        for (i, m) in a.iter_mut().enumerate() {
            m.set(k, k, w.component(i).clone());
        }
    }
    if r >= 2 && rng.gen_bool(0.5) {
        // equal diagonal forms allow any closed off-diagonal form
        let eta = closed_form(ring, max_deg, rng);
        for (i, m) in a.iter_mut().enumerate() {
            m.set(1, 1, diag[0].component(i).clone());
            m.set(0, 1, eta.component(i).clone());
        }
    }
    let conn = Connection::new(ring, lambda, a).expect("well-formed matrices");
    if d == 1 && rng.gen_bool(0.5) {
        // in dimension one every matrix is flat
        let m = PolyMatrix::from_fn(ring, r, r, |_, _| poly(ring, max_deg, 2, rng));
        return Connection::new(ring, lambda, vec![m]).expect("well-formed matrix");
    }
    let g = unimodular(ring, r, 2, 1, rng);
    let g_inv = g.unimodular_inverse().expect("unimodular");
    conn.gauge(&g, &g_inv)
}

/// Commuting tuple: polynomials in one random matrix, with polynomial coefficients.
pub fn commuting_higgs<R: Rng>(ring: &PolyRing, r: usize, max_deg: u32, rng: &mut R) -> HiggsField {
    let m = PolyMatrix::from_fn(ring, r, r, |_, _| poly(ring, max_deg, 2, rng));
    let mats = (0..ring.d())
        .map(|_| {
            let mut acc = PolyMatrix::zeros(ring, r, r);
            let mut pw = PolyMatrix::identity(ring, r);
            for _ in 0..r {
                acc = acc.add(&pw.scale(&poly(ring, 1, 2, rng)));
                pw = pw.mul(&m);
            }
            acc
        })
        .collect();
    HiggsField::new(ring, mats, BasisTag::K).expect("polynomials in one matrix commute")
}

/// Higgs field with constant, squarefree `g_i`: polynomials in one constant
/// matrix with squarefree characteristic polynomial, conjugated by a unimodular matrix.
pub fn multiplicity_free_higgs<R: Rng>(ring: &PolyRing, r: usize, rng: &mut R) -> Result<HiggsField> {
    let field = ring.field().clone();
    loop {
        let m = PolyMatrix::from_fn(ring, r, r, |_, _| ring.constant(elem(&field, rng)));
        let mats: Vec<PolyMatrix> = (0..ring.d())
            .map(|_| {
                let cs: Vec<Elem> = (0..r).map(|_| elem(&field, rng)).collect();
                let mut acc = PolyMatrix::zeros(ring, r, r);
                let mut pw = PolyMatrix::identity(ring, r);
                for c in cs {
                    acc = acc.add(&pw.scale(&ring.constant(c)));
                    pw = pw.mul(&m);
                }
                acc
            })
            .collect();
        let h = HiggsField::new(ring, mats, BasisTag::K)?;
        let gs = pure_char_polys(&hitchin_point(&h).charpoly);
        if !gs.iter().all(UniPoly::is_squarefree) {
            continue;
        }
        let v = unimodular(ring, r, 2, 1, rng);
        let v_inv = v.unimodular_inverse().expect("unimodular");
        return Ok(h.conjugate(&v_inv, &v));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Twist;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_satisfy_their_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, d) in [(2, 1), (3, 2), (5, 2)] {
            let ring = PolyRing::new(&Field::prime(p).unwrap(), d, Twist::R);
            assert!(closed_form(&ring, 3, &mut rng).is_closed());
            assert!(flat_connection(&ring, 2, 2, &mut rng).is_flat());
            let u = unimodular(&ring, 3, 4, 1, &mut rng);
            let det = u.det();
            assert!(det.is_constant() && !det.is_zero());
            commuting_higgs(&ring, 3, 1, &mut rng);
            let h = multiplicity_free_higgs(&ring.with_twist(Twist::Rprime), 2, &mut rng).unwrap();
            assert!(hitchin_point(&h).constant_coefficients);
        }
    }
}
