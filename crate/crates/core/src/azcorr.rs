//! Splittings of the ring of differential operators over sections of the
//! cotangent space, and the Cartier transform between Higgs fields with a
//! reduced constant spectral cover and flat connections.
//!
//! Every splitting module here is the Frobenius pushforward of an explicit
//! rank-one connection `(O, d + omega)`.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connection::{p_curvature, BasisTag, Connection, HiggsField};
use crate::error::{Error, Result};
use crate::field::{find_roots, roots_in_field, Elem, Embedding, Field, UniPoly};
use crate::forms::{monomials_up_to, solve_w_minus_c, OneForm};
use crate::frobdescent::{c_dr, pushforward_module, FrobModule};
use crate::frobenius::{
    basis_exponent, coefficient_frobenius_root, decompose, frobenius_pullback_matrix, frobenius_preimage_matrix,
    frobenius_rank, pushforward_matrix,
};
use crate::higgs::{hitchin_point, TwistedCharPoly};
use crate::linalg::{FieldMatrix, PolyMatrix};
use crate::poly::{Mono, Poly, PolyRing, Twist};

/// Values `s_1, .., s_d` over `R'` prescribed for the central elements `psi(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    ring: PolyRing,
    values: Vec<Poly>,
}

impl SectionData {
    pub fn new(ring: &PolyRing, values: Vec<Poly>) -> Result<SectionData> {
        let ring = ring.with_extra(0).with_twist(Twist::Rprime);
        if values.len() != ring.d() {
            return Err(Error::InvalidInput(format!("section needs {} components, got {}", ring.d(), values.len())));
        }
        if values.iter().any(|v| v.ring() != &ring) {
            return Err(Error::RingMismatch("section components must lie in R'".into()));
        }
        Ok(SectionData { ring, values })
    }

    pub fn zero(ring: &PolyRing) -> SectionData {
        let ring = ring.with_extra(0).with_twist(Twist::Rprime);
        SectionData { values: vec![ring.zero(); ring.d()], ring }
    }

    pub fn constant(ring: &PolyRing, cs: &[Elem]) -> Result<SectionData> {
        let rp = ring.with_extra(0).with_twist(Twist::Rprime);
        SectionData::new(&rp, cs.iter().map(|&c| rp.constant(c)).collect())
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn values(&self) -> &[Poly] {
        &self.values
    }
}

/// A rank-one form over `R` whose connection has p-curvature `F* s`.
pub fn lift_section(s: &SectionData, degree_bound: u32) -> Result<OneForm> {
    let eta = OneForm::new(&s.ring, s.values.iter().map(coefficient_frobenius_root).collect())?;
    match solve_w_minus_c(&eta, degree_bound) {
        Ok(omega) => Ok(omega),
        Err(Error::NoSolution(_)) | Err(Error::NotClosed) => Err(Error::NoLift(degree_bound as usize)),
        Err(e) => Err(e),
    }
}

/// `P = F_*(O, d + omega)` together with its action of `t_i` and `d_i`.
#[derive(Clone, Debug)]
pub struct SplittingModule {
    pub section: SectionData,
    pub omega: OneForm,
    pub carrier: FrobModule,
    pub t_action: Vec<PolyMatrix>,
    pub d_action: Vec<PolyMatrix>,
    /// Rank over `R'` of the span of `t^I d^J`, `I, J < p`.
    pub end_rank: usize,
    /// Determinant of the coefficient matrix of the products `t^I d^J`.
    pub action_det: Poly,
}

/// Matrix over `R'` of an `R'`-linear operator on `F_* R` given on functions.
fn operator_on_pushforward(ring: &PolyRing, op: impl Fn(&Poly) -> Poly) -> Result<PolyMatrix> {
    let p = ring.p();
    let d = ring.d();
    let n = frobenius_rank(p, d);
    let target = ring.with_twist(Twist::Rprime);
    let mut out = PolyMatrix::zeros(&target, n, n);
    for j in 0..n {
        let image = op(&ring.monomial(basis_exponent(j, p, d), ring.field().one()));
        for (i, c) in decompose(&image)?.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

fn check_weyl_relations(t: &[PolyMatrix], dd: &[PolyMatrix]) -> Result<()> {
    let ring = t[0].ring().clone();
    let n = t[0].rows();
    let id = PolyMatrix::identity(&ring, n);
    for i in 0..t.len() {
        for j in 0..t.len() {
            if !t[i].commutator(&t[j]).is_zero() || !dd[i].commutator(&dd[j]).is_zero() {
                return Err(Error::VerificationFailure(format!("balanced-module: generators {} and {} do not commute", i + 1, j + 1)));
            }
            let expected = if i == j { id.clone() } else { PolyMatrix::zeros(&ring, n, n) };
            if dd[i].commutator(&t[j]) != expected {
                return Err(Error::VerificationFailure(format!("balanced-module: [d{}, t{}] is wrong", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

pub fn splitting_over_section(s: &SectionData, degree_bound: u32) -> Result<SplittingModule> {
    let omega = lift_section(s, degree_bound)?;
    let ring = omega.ring().clone();
    let rp = s.ring.clone();
    let d = ring.d();
    let p = ring.p();
    let n = frobenius_rank(p, d);

    let t_action = (0..d)
        .map(|i| pushforward_matrix(&PolyMatrix::scalar(&ring, 1, &ring.var(i))))
        .collect::<Result<Vec<_>>>()?;
    let d_action = (0..d)
        .map(|i| operator_on_pushforward(&ring, |f| &f.partial(i) + &(omega.component(i) * f)))
        .collect::<Result<Vec<_>>>()?;
    check_weyl_relations(&t_action, &d_action)?;
    for (i, m) in d_action.iter().enumerate() {
        if m.pow(p as u64) != PolyMatrix::scalar(&rp, n, &s.values[i]) {
            return Err(Error::VerificationFailure(format!("balanced-module: psi(d{}) does not act as s{}", i + 1, i + 1)));
        }
    }

    // columns: flattened t^I d^J
    let mut cols = Vec::with_capacity(n * n);
    for a in 0..n {
        let ea = basis_exponent(a, p, d);
        let tm = (0..d).fold(PolyMatrix::identity(&rp, n), |acc, k| acc.mul(&t_action[k].pow(ea[k] as u64)));
        for b in 0..n {
            let eb = basis_exponent(b, p, d);
            let dm = (0..d).fold(PolyMatrix::identity(&rp, n), |acc, k| acc.mul(&d_action[k].pow(eb[k] as u64)));
            cols.push(tm.mul(&dm).entries().to_vec());
        }
    }
    let coeff = PolyMatrix::from_fn(&rp, n * n, n * n, |i, j| cols[j][i].clone());
    let end_rank = coeff.rank();
    let action_det = coeff.det();
    if end_rank != n * n {
        return Err(Error::VerificationFailure(format!("balanced-module: End rank {end_rank}, expected {}", n * n)));
    }
    if !action_det.is_constant() || action_det.is_zero() {
        return Err(Error::VerificationFailure("balanced-module: action map is not onto End(P)".into()));
    }
    Ok(SplittingModule {
        section: s.clone(),
        omega,
        carrier: pushforward_module(&ring, 1),
        t_action,
        d_action,
        end_rank,
        action_det,
    })
}

/// One eigen-component of a Higgs field with reduced constant spectral cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralComponent {
    /// Root tuple `(c_1, .., c_d)` in the splitting field.
    pub roots: Vec<Elem>,
    pub projector: PolyMatrix,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    /// Field over which all `g_i` split.
    pub field: Field,
    pub embedding: Embedding,
    /// Roots of each `g_i` in increasing code order.
    pub roots: Vec<Vec<Elem>>,
    pub components: Vec<SpectralComponent>,
}

impl SpectralDecomposition {
    /// `sum_c phi(c_i) pi_c` for a function `phi` on root values.
    pub fn combine(&self, i: usize, phi: impl Fn(Elem) -> Elem) -> PolyMatrix {
        let ring = self.components[0].projector.ring().clone();
        let r = self.components[0].projector.rows();
        self.components.iter().fold(PolyMatrix::zeros(&ring, r, r), |acc, c| {
            acc.add(&c.projector.scale(&ring.constant(phi(c.roots[i]))))
        })
    }
}

/// `g_i(x) = det(x - theta_i)` for a characteristic polynomial with constant coefficients.
pub fn pure_char_polys(chi: &TwistedCharPoly) -> Vec<UniPoly> {
    let field = chi.ring().field().clone();
    let r = chi.rank();
    (0..chi.d())
        .map(|i| {
            let mut cs = vec![field.zero(); r + 1];
            cs[r] = field.one();
            for m in 1..=r {
                let a = chi.pure_coeff(m, i).constant_term();
                cs[r - m] = if m % 2 == 0 { a } else { field.neg(a) };
            }
            UniPoly::new(&field, cs)
        })
        .collect()
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

pub fn spectral_decompose(theta: &HiggsField) -> Result<SpectralDecomposition> {
    let hp = hitchin_point(theta);
    if !hp.constant_coefficients {
        return Err(Error::NotConstantCoefficients);
    }
    let base = theta.ring().field().clone();
    let gs = pure_char_polys(&hp.charpoly);
    let mut degree = 1;
    for (i, g) in gs.iter().enumerate() {
        let split = find_roots(g)?;
        if split.roots.iter().any(|&(_, m)| m > 1) {
            return Err(Error::NotMultiplicityFree(format!("g{} has a repeated root", i + 1)));
        }
        degree = lcm(degree, split.field.e() / base.e());
    }
    let (field, embedding) = if degree == 1 { (base.clone(), Embedding::identity(&base)) } else { base.extension(degree)? };
    let roots: Vec<Vec<Elem>> = gs
        .iter()
        .map(|g| {
            let mut rs: Vec<Elem> = roots_in_field(&g.map_field(&embedding)).0.into_iter().map(|(c, _)| c).collect();
            rs.sort();
            rs
        })
        .collect();

    let mats: Vec<PolyMatrix> = theta.matrices().iter().map(|m| m.embed(&embedding)).collect();
    let ring = mats[0].ring().clone();
    let r = theta.rank();
    let id = PolyMatrix::identity(&ring, r);
    // single-variable Lagrange factors, cached per (i, root)
    let mut factors: BTreeMap<(usize, usize), PolyMatrix> = BTreeMap::new();
    for (i, rs) in roots.iter().enumerate() {
        for (a, &c) in rs.iter().enumerate() {
            let mut acc = id.clone();
            for &c2 in rs.iter().filter(|&&c2| c2 != c) {
                let inv = field.inv(field.sub(c, c2)).expect("distinct roots");
                let lin = mats[i].sub(&id.scale(&ring.constant(c2))).scale(&ring.constant(inv));
                acc = acc.mul(&lin);
            }
            factors.insert((i, a), acc);
        }
    }
    let mut components = Vec::new();
    let mut choice = vec![0usize; roots.len()];
    'tuples: loop {
        let projector = (0..roots.len()).fold(id.clone(), |acc, i| acc.mul(&factors[&(i, choice[i])]));
        if !projector.is_zero() {
            let origin = vec![field.zero(); ring.nvars()];
            let rank = projector.eval(&origin).rank();
            components.push(SpectralComponent { roots: (0..roots.len()).map(|i| roots[i][choice[i]]).collect(), projector, rank });
        }
        // odometer with the last index fastest gives lexicographic tuple order
        for i in (0..roots.len()).rev() {
            choice[i] += 1;
            if choice[i] < roots[i].len() {
                continue 'tuples;
            }
            choice[i] = 0;
        }
        break;
    }

    let total = components.iter().fold(PolyMatrix::zeros(&ring, r, r), |acc, c| acc.add(&c.projector));
    if total != id {
        return Err(Error::VerificationFailure("projectors do not sum to the identity".into()));
    }
    for (a, ca) in components.iter().enumerate() {
        for (b, cb) in components.iter().enumerate() {
            let prod = ca.projector.mul(&cb.projector);
            let ok = if a == b { prod == ca.projector } else { prod.is_zero() };
            if !ok {
                return Err(Error::VerificationFailure("projectors are not orthogonal idempotents".into()));
            }
        }
        for (i, m) in mats.iter().enumerate() {
            if m.mul(&ca.projector) != ca.projector.scale(&ring.constant(ca.roots[i])) {
                return Err(Error::VerificationFailure(format!("theta{} does not act by its root on a component", i + 1)));
            }
        }
    }
    Ok(SpectralDecomposition { field, embedding, roots, components })
}

fn restrict_matrix(m: &PolyMatrix, emb: &Embedding, what: &str) -> Result<PolyMatrix> {
    let ring = m.ring().with_field(emb.source());
    let rows = m
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|f| f.restrict(emb)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::VerificationFailure(format!("{what} is not defined over the base field")))?;
    PolyMatrix::from_rows(&ring, rows)
}

/// `C^{-1}(theta)`: the connection `d + F*(sum_c b_c pi_c)` on `F* E` with `b_c^p = c`.
pub fn cartier_inverse(theta: &HiggsField) -> Result<Connection> {
    let rp = theta.ring().with_extra(0);
    if rp.twist() != Twist::Rprime {
        return Err(Error::RingMismatch("cartier_inverse expects a Higgs field over R'".into()));
    }
    let dec = spectral_decompose(theta)?;
    let ring = rp.with_twist(Twist::R);
    let field = dec.field.clone();
    let a = (0..rp.d())
        .map(|i| {
            let b = dec.combine(i, |c| field.frobenius_root(c));
            restrict_matrix(&frobenius_pullback_matrix(&b)?, &dec.embedding, "connection matrix")
        })
        .collect::<Result<Vec<_>>>()?;
    let conn = Connection::new(&ring, ring.field().one(), a)?;
    if !conn.is_flat() {
        return Err(Error::VerificationFailure("C^-1 output is not flat".into()));
    }
    let psi = p_curvature(&conn)?;
    for (i, m) in theta.matrices().iter().enumerate() {
        if psi.matrix(i) != &frobenius_pullback_matrix(m)? {
            return Err(Error::VerificationFailure(format!("p-curvature of C^-1 differs from F* theta in direction {}", i + 1)));
        }
    }
    Ok(conn)
}

/// Output of [`cartier_direct`]: the Higgs field and the horizontal frame
/// `u` with `u^{-1} nabla u = C^{-1}(theta)`.
#[derive(Clone, Debug)]
pub struct CartierDirect {
    pub theta: HiggsField,
    pub frame: PolyMatrix,
    pub frame_inv: PolyMatrix,
}

/// Basis of the polynomial vectors of degree at most `deg` killed by every
/// `nabla_i`, as an `F`-linear system on coefficients.
fn horizontal_sections(conn: &Connection, deg: u32) -> Vec<Vec<Poly>> {
    let ring = conn.ring();
    let field = ring.field().clone();
    let r = conn.rank();
    let monos = monomials_up_to(ring.d(), deg);
    let mut rows: BTreeMap<(usize, usize, Mono), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, Elem)>> = Vec::new();
    for a in 0..r {
        for m in &monos {
            let mut v = PolyMatrix::zeros(ring, r, 1);
            v.set(a, 0, ring.monomial(m.clone(), field.one()));
            let mut col = Vec::new();
            for i in 0..conn.d() {
                let image = conn.apply(i, &v);
                for b in 0..r {
                    for (mm, &c) in image.get(b, 0).terms() {
                        let n = rows.len();
                        let row = *rows.entry((i, b, mm.clone())).or_insert(n);
                        col.push((row, c));
                    }
                }
            }
            cols.push(col);
        }
    }
    let mut sys = FieldMatrix::zeros(&field, rows.len().max(1), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, c) in col {
            sys.set(i, j, c);
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|x| {
            let mut v = vec![ring.zero(); r];
            for (k, c) in x.into_iter().enumerate() {
                if !c.is_zero() {
                    v[k / monos.len()].add_term(monos[k % monos.len()].clone(), c);
                }
            }
            v
        })
        .collect()
}

fn frame_matrix(ring: &PolyRing, vecs: &[Vec<Poly>]) -> PolyMatrix {
    let r = vecs.first().map_or(0, Vec::len);
    PolyMatrix::from_fn(ring, r, vecs.len(), |i, j| vecs[j][i].clone())
}

/// `C(nabla)`: subtracts the semisimple part of the p-curvature, takes
/// horizontal sections of the remaining connection and reads off `theta` in that frame.
pub fn cartier_direct(conn: &Connection, degree_bound: u32) -> Result<CartierDirect> {
    let chi2 = c_dr(conn)?;
    if !chi2.has_constant_coefficients() {
        return Err(Error::NotConstantCoefficients);
    }
    let psi = p_curvature(conn)?;
    let dec = spectral_decompose(&psi)?;
    let ring = conn.ring().clone();
    let field = dec.field.clone();
    let r = conn.rank();
    let shifted = (0..conn.d())
        .map(|i| {
            let b = restrict_matrix(&dec.combine(i, |c| field.frobenius_root(c)), &dec.embedding, "semisimple part")?;
            Ok(conn.matrices()[i].sub(&b))
        })
        .collect::<Result<Vec<_>>>()?;
    let nilp = Connection::new(&ring, conn.lambda(), shifted)?;

    let mut chosen: Vec<Vec<Poly>> = Vec::new();
    for deg in 0..=degree_bound {
        for v in horizontal_sections(&nilp, deg) {
            let mut trial = chosen.clone();
            trial.push(v);
            if frame_matrix(&ring, &trial).rank() == trial.len() {
                chosen = trial;
            }
            if chosen.len() == r {
                break;
            }
        }
        if chosen.len() == r {
            let u = frame_matrix(&ring, &chosen);
            if let Some(u_inv) = u.unimodular_inverse() {
                let mats = psi
                    .matrices()
                    .iter()
                    .map(|m| frobenius_preimage_matrix(&u_inv.mul(m).mul(&u)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| Error::VerificationFailure("p-curvature in a horizontal frame does not descend".into()))?;
                let theta = HiggsField::new(&ring.with_twist(Twist::Rprime), mats, BasisTag::K)?;
                let back = cartier_inverse(&theta)?;
                if conn.gauge(&u, &u_inv) != back {
                    return Err(Error::VerificationFailure("horizontal frame does not intertwine nabla with C^-1(C(nabla))".into()));
                }
                return Ok(CartierDirect { theta, frame: u, frame_inv: u_inv });
            }
            // a non-unimodular frame at this degree: retry from scratch with more room
            chosen.clear();
        }
    }
    Err(Error::KernelRankMismatch(chosen.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// `u` invertible with `u X_i = Y_i u` for every `i`.
    Found(PolyMatrix),
    /// Nothing found up to the degree bound; inconclusive.
    NotFound,
}

fn is_unit(m: &PolyMatrix) -> bool {
    let det = m.det();
    det.is_constant() && !det.is_zero()
}

/// Searches for an invertible intertwiner `u` of degree at most `degree_bound`.
pub fn module_isomorphic(xs: &[PolyMatrix], ys: &[PolyMatrix], degree_bound: u32) -> Result<IsoVerdict> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::InvalidInput("operator lists must be non-empty and of equal length".into()));
    }
    let ring = xs[0].ring().clone();
    let r = xs[0].rows();
    if xs.iter().chain(ys).any(|m| m.ring() != &ring || m.rows() != r || m.cols() != r) {
        return Err(Error::RingMismatch("intertwiner search needs square matrices of one size over one ring".into()));
    }
    let field = ring.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for deg in 0..=degree_bound {
        let monos = monomials_up_to(ring.d(), deg);
        let mut rows: BTreeMap<(usize, usize, usize, Mono), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<(usize, Elem)>> = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for m in &monos {
                    let mut e = PolyMatrix::zeros(&ring, r, r);
                    e.set(a, b, ring.monomial(m.clone(), field.one()));
                    let mut col = Vec::new();
                    for (k, (x, y)) in xs.iter().zip(ys).enumerate() {
                        let diff = e.mul(x).sub(&y.mul(&e));
                        for i in 0..r {
                            for j in 0..r {
                                for (mm, &c) in diff.get(i, j).terms() {
                                    let n = rows.len();
                                    let row = *rows.entry((k, i, j, mm.clone())).or_insert(n);
                                    col.push((row, c));
                                }
                            }
                        }
                    }
                    cols.push(col);
                }
            }
        }
        let mut sys = FieldMatrix::zeros(&field, rows.len().max(1), cols.len());
        for (j, col) in cols.iter().enumerate() {
            for &(i, c) in col {
                sys.set(i, j, c);
            }
        }
        let null = sys.nullspace();
        if null.is_empty() {
            continue;
        }
        let build = |x: &[Elem]| {
            let mut u = PolyMatrix::zeros(&ring, r, r);
            for (k, &c) in x.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cell = k / monos.len();
                let mut entry = u.get(cell / r, cell % r).clone();
                entry.add_term(monos[k % monos.len()].clone(), c);
                u.set(cell / r, cell % r, entry);
            }
            u
        };
        for v in &null {
            let u = build(v);
            if is_unit(&u) {
                return Ok(IsoVerdict::Found(u));
            }
        }
        for _ in 0..64 {
            let mut x = vec![field.zero(); cols.len()];
            for v in &null {
                let c = field.from_code(rng.gen_range(0..field.q())).expect("code in range");
                for (xi, &vi) in x.iter_mut().zip(v) {
                    *xi = field.add(*xi, field.mul(c, vi));
                }
            }
            let u = build(&x);
            if is_unit(&u) {
                return Ok(IsoVerdict::Found(u));
            }
        }
    }
    Ok(IsoVerdict::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rprime(p: u32, e: u32, d: usize) -> PolyRing {
        PolyRing::new(&Field::new(p, e).unwrap(), d, Twist::Rprime)
    }

    fn higgs(ring: &PolyRing, rows: Vec<Vec<Vec<i64>>>) -> HiggsField {
        let mats = rows
            .into_iter()
            .map(|m| PolyMatrix::from_rows(ring, m.into_iter().map(|row| row.into_iter().map(|c| ring.int(c)).collect()).collect()).unwrap())
            .collect();
        HiggsField::new(ring, mats, BasisTag::K).unwrap()
    }

    #[test]
    fn zero_section_is_the_natural_action() {
        for (p, d) in [(2, 1), (3, 1), (2, 2)] {
            let rp = rprime(p, 1, d);
            let sm = splitting_over_section(&SectionData::zero(&rp), 2).unwrap();
            assert!(sm.omega.is_zero());
            assert_eq!(sm.end_rank, (p as usize).pow(2 * d as u32));
        }
    }

    #[test]
    fn constant_and_linear_sections() {
        let rp = rprime(3, 2, 1);
        let f = rp.field().clone();
        let c = f.generator_x();
        let sm = splitting_over_section(&SectionData::constant(&rp, &[c]).unwrap(), 1).unwrap();
        assert_eq!(sm.omega.component(0), &sm.omega.ring().constant(f.frobenius_root(c)));

        let rp2 = rprime(2, 1, 1);
        let s = SectionData::new(&rp2, vec![rp2.var(0)]).unwrap();
        let sm = splitting_over_section(&s, 2).unwrap();
        let r = sm.omega.ring().clone();
        assert_eq!(sm.omega.component(0), &(&r.var(0) + &r.one()));
        assert!(matches!(splitting_over_section(&s, 0), Err(Error::NoLift(0))));
    }

    #[test]
    fn spectral_examples() {
        let rp = rprime(3, 1, 1);
        let h = higgs(&rp, vec![vec![vec![0, 1], vec![1, 0]]]);
        let dec = spectral_decompose(&h).unwrap();
        assert_eq!(dec.components.len(), 2);
        let id = PolyMatrix::identity(&rp, 2);
        let two = rp.int(2);
        for comp in &dec.components {
            let sign = if comp.roots[0] == rp.field().one() { h.matrix(0).clone() } else { h.matrix(0).neg() };
            assert_eq!(comp.projector, id.add(&sign).scale(&two));
            assert_eq!(comp.rank, 1);
        }

        let diag = higgs(&rp, vec![vec![vec![1, 0], vec![0, 2]]]);
        let dec = spectral_decompose(&diag).unwrap();
        assert_eq!(dec.components[0].projector, higgs(&rp, vec![vec![vec![1, 0], vec![0, 0]]]).matrix(0).clone());

        let jordan = higgs(&rp, vec![vec![vec![1, 1], vec![0, 1]]]);
        assert!(matches!(spectral_decompose(&jordan), Err(Error::NotMultiplicityFree(_))));

        let t = rp.var(0);
        let moving = HiggsField::new(&rp, vec![PolyMatrix::scalar(&rp, 1, &t)], BasisTag::K).unwrap();
        assert!(matches!(spectral_decompose(&moving), Err(Error::NotConstantCoefficients)));
    }

    #[test]
    fn irreducible_char_poly_needs_extension() {
        // x^2 + 1 is irreducible over F_3
        let rp = rprime(3, 1, 1);
        let h = higgs(&rp, vec![vec![vec![0, 2], vec![1, 0]]]);
        let dec = spectral_decompose(&h).unwrap();
        assert_eq!(dec.field.q(), 9);
        assert_eq!(dec.components.len(), 2);
        let conn = cartier_inverse(&h).unwrap();
        let back = cartier_direct(&conn, 2).unwrap();
        assert!(matches!(module_isomorphic(h.matrices(), back.theta.matrices(), 1).unwrap(), IsoVerdict::Found(_)));
    }

    #[test]
    fn cartier_inverse_examples() {
        let rp = rprime(2, 1, 1);
        let one = higgs(&rp, vec![vec![vec![1]]]);
        let conn = cartier_inverse(&one).unwrap();
        let r = conn.ring().clone();
        assert_eq!(conn.matrices()[0], PolyMatrix::scalar(&r, 1, &r.one()));
        let back = cartier_direct(&conn, 1).unwrap();
        assert_eq!(back.theta, one);

        let zero = higgs(&rp, vec![vec![vec![0]]]);
        assert!(cartier_inverse(&zero).unwrap().matrices()[0].is_zero());

        let rp5 = rprime(5, 1, 1);
        let diag = higgs(&rp5, vec![vec![vec![2, 0], vec![0, 3]]]);
        let conn = cartier_inverse(&diag).unwrap();
        let f = rp5.field();
        let r5 = conn.ring().clone();
        let expected = PolyMatrix::from_rows(
            &r5,
            vec![vec![r5.constant(f.frobenius_root(f.from_int(2))), r5.zero()], vec![r5.zero(), r5.constant(f.frobenius_root(f.from_int(3)))]],
        )
        .unwrap();
        assert_eq!(conn.matrices()[0], expected);
    }

    #[test]
    fn gauged_connection_roundtrip() {
        let rp = rprime(3, 1, 1);
        let h = higgs(&rp, vec![vec![vec![1, 0], vec![0, 2]]]);
        let conn = cartier_inverse(&h).unwrap();
        let r = conn.ring().clone();
        let g = PolyMatrix::from_rows(&r, vec![vec![r.one(), r.var(0)], vec![r.zero(), r.one()]]).unwrap();
        let g_inv = g.unimodular_inverse().unwrap();
        let moved = conn.gauge(&g, &g_inv);
        let back = cartier_direct(&moved, 2).unwrap();
        assert!(matches!(module_isomorphic(h.matrices(), back.theta.matrices(), 0).unwrap(), IsoVerdict::Found(_)));
    }

    #[test]
    fn intertwiner_search() {
        let rp = rprime(3, 1, 1);
        let x = higgs(&rp, vec![vec![vec![1, 0], vec![0, 2]]]);
        match module_isomorphic(x.matrices(), x.matrices(), 0).unwrap() {
            IsoVerdict::Found(u) => assert_eq!(u.mul(x.matrix(0)), x.matrix(0).mul(&u)),
            IsoVerdict::NotFound => panic!("identity should intertwine"),
        }
        let v = PolyMatrix::from_rows(&rp, vec![vec![rp.one(), rp.var(0)], vec![rp.zero(), rp.one()]]).unwrap();
        let v_inv = v.unimodular_inverse().unwrap();
        let y = v.mul(x.matrix(0)).mul(&v_inv);
        match module_isomorphic(x.matrices(), std::slice::from_ref(&y), 2).unwrap() {
            IsoVerdict::Found(u) => assert_eq!(u.mul(x.matrix(0)), y.mul(&u)),
            IsoVerdict::NotFound => panic!("conjugate should be found"),
        }
        let zero = higgs(&rp, vec![vec![vec![0]]]);
        let one = higgs(&rp, vec![vec![vec![1]]]);
        assert_eq!(module_isomorphic(zero.matrices(), one.matrices(), 3).unwrap(), IsoVerdict::NotFound);
    }
}
