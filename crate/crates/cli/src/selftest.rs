//! Seeded property sweeps over every identity the library implements.
//!
//! Each job owns a `ChaCha8Rng` seeded from `(seed, criterion, job index)`,
//! so jobs can run on any number of worker threads and the assembled report
//! is identical byte for byte.

use std::collections::BTreeSet;

use charp_core::azcorr::{cartier_direct, cartier_inverse, module_isomorphic, splitting_over_section, IsoVerdict, SectionData};
use charp_core::connection::{p_curvature, p_curvature_rank1_formula, Connection};
use charp_core::forms::{cartier_pcurvature, OneForm};
use charp_core::frobdescent::{c_dr, verify_descent};
use charp_core::frobenius::{frobenius_preimage, frobenius_pullback, frobenius_pullback_matrix, norm_map};
use charp_core::gen;
use charp_core::higgs::{annihilation_check, cayley_hamilton_check, spectral_ideal, symmetric_count, twisted_char_poly};
use charp_core::linalg::FieldMatrix;
use charp_core::weyl::{center_basis_upto, check_identity, fiber_matrix_rep, IdentityKind, WeylElement};
use charp_core::{Elem, Field, PolyRing, Twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::CliError;

/// Outcome of one identity on one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u8,
    pub identity: String,
    pub config: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(criterion: u8, identity: &str, config: &str) -> Check {
        Check { criterion, identity: identity.into(), config: config.into(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: Result<bool, String>, case: usize) {
        self.cases += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(format!("{}: case {case} violates {}", self.config, self.identity)),
            Err(e) => self.failures.push(format!("{}: case {case} errored in {}: {e}", self.config, self.identity)),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion,
            "identity": self.identity,
            "config": self.config,
            "cases": self.cases,
            "passed": self.cases - self.failures.len(),
            "failures": self.failures,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({"seed": self.seed, "ok": self.ok(), "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>()})
    }
}

#[derive(Clone, Copy, Debug)]
enum Job {
    Weyl { p: u32, d: usize },
    Center { p: u32 },
    Fiber { p: u32, d: usize },
    PCurv { p: u32, d: usize },
    Descent { p: u32, d: usize, r: usize },
    Higgs { p: u32, d: usize, r: usize },
    Norm { p: u32, d: usize },
    Split { p: u32, d: usize },
    Roundtrip { p: u32, d: usize, r: usize },
}

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

fn criterion_jobs(criterion: u8) -> Vec<Job> {
    let mut out = Vec::new();
    match criterion {
        1 => {
            for p in [2, 3, 5] {
                for d in [1, 2] {
                    out.push(Job::Weyl { p, d });
                }
            }
        }
        2 => out.extend([2, 3].map(|p| Job::Center { p })),
        3 => out.extend([(2, 1), (2, 2), (3, 1)].map(|(p, d)| Job::Fiber { p, d })),
        4 => {
            for p in [2, 3] {
                for d in [1, 2] {
                    out.push(Job::PCurv { p, d });
                }
            }
        }
        5 => out.extend([(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1)].map(|(p, d, r)| Job::Descent { p, d, r })),
        6 => {
            for p in [2, 3, 5] {
                for d in [1, 2] {
                    for r in 1..=3 {
                        out.push(Job::Higgs { p, d, r });
                    }
                }
            }
        }
        7 => {
            for p in [2, 3] {
                for d in [1, 2] {
                    out.push(Job::Norm { p, d });
                }
            }
        }
        8 => out.extend([(2, 1), (3, 1), (2, 2)].map(|(p, d)| Job::Split { p, d })),
        9 => {
            for p in [2, 3] {
                for d in [1, 2] {
                    for r in [1, 2] {
                        out.push(Job::Roundtrip { p, d, r });
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn job_rng(seed: u64, criterion: u8, index: usize) -> ChaCha8Rng {
    let mix = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((criterion as u64) << 32)
        .wrapping_add(index as u64);
    ChaCha8Rng::seed_from_u64(mix)
}

fn ring(p: u32, e: u32, d: usize, twist: Twist) -> PolyRing {
    PolyRing::new(&Field::new(p, e).expect("small prime field"), d, twist)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn weyl_checks(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cfg = format!("p={p} d={d}");
    let field = Field::prime(p).expect("prime");
    let (mut assoc, mut unit, mut jac) = (Check::new(1, "associativity", &cfg), Check::new(1, "unitality", &cfg), Check::new(1, "Jacobson", &cfg));
    for case in 0..100 {
        let lam = gen::nonzero_elem(&field, rng);
        let a = gen::weyl(&field, d, lam, 3, rng);
        let b = gen::weyl(&field, d, lam, 3, rng);
        let c = gen::weyl(&field, d, lam, 3, rng);
        let ok = (|| -> charp_core::Result<bool> { Ok(a.try_mul(&b)?.try_mul(&c)? == a.try_mul(&b.try_mul(&c)?)?) })();
        assoc.record(ok.map_err(err), case);
        let one = WeylElement::one(&field, d, lam);
        let ok = (|| -> charp_core::Result<bool> { Ok(one.try_mul(&a)? == a && a.try_mul(&one)? == a) })();
        unit.record(ok.map_err(err), case);
    }
    for case in 0..100 {
        let lam = gen::nonzero_elem(&field, rng);
        let x = gen::weyl(&field, d, lam, 3, rng);
        let y = gen::weyl(&field, d, lam, 3, rng);
        jac.record(check_identity(IdentityKind::Jacobson, &x, &y).map_err(err), case);
    }
    vec![assoc, unit, jac]
}

fn center_checks(p: u32) -> Vec<Check> {
    let field = Field::prime(p).expect("prime");
    let max_deg = 2 * p;
    let mut check = Check::new(2, "center", &format!("p={p} d=1 degree<={max_deg}"));
    let expected: BTreeSet<(u32, u32)> =
        (0..=2).flat_map(|i| (0..=2).map(move |j| (p * i, p * j))).filter(|&(a, b)| a + b <= max_deg).collect();
    let ok = center_basis_upto(&field, 1, max_deg).map_err(err).map(|basis| {
        let mut support = BTreeSet::new();
        let mut rows = Vec::new();
        let index: Vec<(u32, u32)> = expected.iter().copied().collect();
        for z in &basis {
            let mut row = vec![field.zero(); index.len()];
            for (te, de, c) in z.terms() {
                support.insert((te[0], de[0]));
                if let Some(k) = index.iter().position(|&m| m == (te[0], de[0])) {
                    row[k] = c;
                }
            }
            rows.push(row);
        }
        let rank = if rows.is_empty() { 0 } else { FieldMatrix::from_rows(&field, rows).rank() };
        basis.len() == expected.len() && support.is_subset(&expected) && rank == expected.len()
    });
    check.record(ok, 0);
    vec![check]
}

fn fiber_points(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = field.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| elems.iter().map(move |&a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

fn fiber_checks(p: u32, d: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for e in [1, 2] {
        let field = Field::new(p, e).expect("small field");
        let mut check = Check::new(3, "Azumaya-fiber", &format!("p={p} d={d} q={}", field.q()));
        for (case, pt) in fiber_points(&field, 2 * d).into_iter().enumerate() {
            let (a, b) = pt.split_at(d);
            let ok = fiber_matrix_rep(&field, d, a, b).map_err(err).map(|rep| {
                let n = rep.t[0].rows();
                let id = FieldMatrix::identity(&field, n);
                let zero = FieldMatrix::zeros(&field, n, n);
                let relations = (0..d).all(|i| {
                    rep.t[i].pow(p as u64) == id.scale(a[i])
                        && rep.del[i].pow(p as u64) == id.scale(b[i])
                        && (0..d).all(|j| {
                            let bracket = rep.del[i].mul(&rep.t[j]).sub(&rep.t[j].mul(&rep.del[i]));
                            let comm_t = rep.t[i].mul(&rep.t[j]).sub(&rep.t[j].mul(&rep.t[i]));
                            let comm_d = rep.del[i].mul(&rep.del[j]).sub(&rep.del[j].mul(&rep.del[i]));
                            bracket == if i == j { id.clone() } else { zero.clone() } && comm_t.is_zero() && comm_d.is_zero()
                        })
                });
                relations && rep.is_iso && rep.image_rank == n * n
            });
            check.record(ok, case);
        }
        out.push(check);
    }
    out
}

fn pcurv_checks(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cfg = format!("p={p} d={d}");
    let r = ring(p, 1, d, Twist::R);
    let one = r.field().one();
    let mut triple = Check::new(4, "p-curvature-triple", &cfg);
    let run = |omega: &OneForm| -> charp_core::Result<(Vec<charp_core::Poly>, bool)> {
        let direct = p_curvature(&Connection::from_form(omega, one)?)?;
        let formula = p_curvature_rank1_formula(omega, one)?;
        let cartier = cartier_pcurvature(omega)?;
        let agree = (0..d).all(|i| direct.matrix(i).get(0, 0) == formula.component(i)) && cartier == formula;
        Ok((formula.components().to_vec(), agree))
    };
    for case in 0..50 {
        let omega = gen::closed_form(&r, 3, rng);
        triple.record(run(&omega).map(|(_, ok)| ok).map_err(err), case);
    }
    let mut witness = Check::new(4, "p-curvature-witness", &cfg);
    let mut comps = vec![r.zero(); d];
    comps[0] = r.var(0).pow(p as u64 - 1);
    let omega = OneForm::new(&r, comps).expect("d components");
    let expected = &r.var(0).pow((p * (p - 1)) as u64) - &r.one();
    witness.record(run(&omega).map(|(psi, ok)| ok && psi[0] == expected).map_err(err), 0);
    vec![triple, witness]
}

fn descent_checks(p: u32, d: usize, r: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cfg = format!("p={p} d={d} r={r}");
    let ring = ring(p, 1, d, Twist::R);
    let mut desc = Check::new(5, "chi-descent", &cfg);
    let mut pull = Check::new(5, "chi-pullback-power", &cfg);
    let mut power = Check::new(5, "chi-prime-power", &cfg);
    for case in 0..25 {
        let conn = gen::flat_connection(&ring, r, 2, rng);
        desc.record(c_dr(&conn).map(|_| true).map_err(err), case);
        match verify_descent(&conn) {
            Ok(rep) => {
                pull.record(Ok(rep.identity_i), case);
                power.record(Ok(rep.identity_ii), case);
            }
            Err(e) => {
                pull.record(Err(err(&e)), case);
                power.record(Err(err(e)), case);
            }
        }
    }
    vec![desc, pull, power]
}

fn higgs_checks(p: u32, d: usize, r: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cfg = format!("p={p} d={d} r={r}");
    let ring = ring(p, 1, d, Twist::R);
    let mut ch = Check::new(6, "Cayley-Hamilton", &cfg);
    let mut ann = Check::new(6, "annihilation", &cfg);
    let mut count = Check::new(6, "spectral-generator-count", &cfg);
    for case in 0..100 {
        let h = gen::commuting_higgs(&ring, r, 1, rng);
        ch.record(Ok(cayley_hamilton_check(&h)), case);
        let ideal = spectral_ideal(&twisted_char_poly(&h));
        count.record(Ok(ideal.generators().len() == symmetric_count(r, d)), case);
        ann.record(Ok(annihilation_check(&h, &ideal)), case);
    }
    vec![ch, ann, count]
}

fn norm_checks(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let ring = ring(p, 1, d, Twist::R);
    let mut check = Check::new(7, "norm-power", &format!("p={p} d={d}"));
    let pd = (p as u64).pow(d as u32);
    for case in 0..100 {
        let g = gen::poly(&ring, 2, 3, rng);
        let ok = norm_map(&g).and_then(|n| frobenius_pullback(&n)).map(|n| n == g.pow(pd));
        check.record(ok.map_err(err), case);
    }
    vec![check]
}

fn split_checks(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut check = Check::new(8, "balanced-module", &format!("p={p} d={d}"));
    let expected = (p as usize).pow(2 * d as u32);
    let verdict = |s: &SectionData, bound: u32| splitting_over_section(s, bound).map(|sm| sm.end_rank == expected).map_err(err);
    let base = ring(p, 1, d, Twist::R);
    check.record(verdict(&SectionData::zero(&base), 1), 0);
    let big = ring(p, 2, d, Twist::Rprime);
    for case in 1..=10 {
        let cs: Vec<Elem> = (0..d).map(|_| gen::elem(big.field(), rng)).collect();
        let s = SectionData::constant(&big, &cs).expect("d constants");
        check.record(verdict(&s, 1), case);
    }
    for case in 11..=15 {
        let omega = gen::closed_form(&base, 2, rng);
        let s = (|| -> charp_core::Result<SectionData> {
            let psi = p_curvature(&Connection::from_form(&omega, base.field().one())?)?;
            let vals = psi.matrices().iter().map(|m| frobenius_preimage(m.get(0, 0))).collect::<charp_core::Result<Vec<_>>>()?;
            SectionData::new(&base.with_twist(Twist::Rprime), vals)
        })();
        let bound = omega.components().iter().filter_map(|f| f.degree()).max().unwrap_or(0).max(1);
        check.record(s.map_err(err).and_then(|s| verdict(&s, bound)), case);
    }
    vec![check]
}

fn roundtrip_checks(p: u32, d: usize, r: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let cfg = format!("p={p} d={d} r={r}");
    let rp = ring(p, 1, d, Twist::Rprime);
    let mut flat = Check::new(9, "C-inverse-flat", &cfg);
    let mut curv = Check::new(9, "C-inverse-p-curvature", &cfg);
    let mut principle = Check::new(9, "splitting-principle", &cfg);
    for case in 0..25 {
        let run = (|| -> charp_core::Result<(bool, bool, bool)> {
            let theta = gen::multiplicity_free_higgs(&rp, r, rng)?;
            let conn = cartier_inverse(&theta)?;
            let is_flat = conn.is_flat();
            let psi = p_curvature(&conn)?;
            let mut same = true;
            for (i, m) in theta.matrices().iter().enumerate() {
                same &= psi.matrix(i) == &frobenius_pullback_matrix(m)?;
            }
            let g = gen::unimodular(conn.ring(), r, 2, 1, rng);
            let g_inv = g.unimodular_inverse().expect("unimodular by construction");
            let back = cartier_direct(&conn.gauge(&g, &g_inv), 4)?;
            let found = matches!(module_isomorphic(theta.matrices(), back.theta.matrices(), 4)?, IsoVerdict::Found(_));
            Ok((is_flat, same, found))
        })();
        match run {
            Ok((a, b, c)) => {
                flat.record(Ok(a), case);
                curv.record(Ok(b), case);
                principle.record(Ok(c), case);
            }
            Err(e) => {
                for ch in [&mut flat, &mut curv, &mut principle] {
                    ch.record(Err(err(&e)), case);
                }
            }
        }
    }
    vec![flat, curv, principle]
}

fn run_job(job: Job, rng: &mut ChaCha8Rng) -> Vec<Check> {
    match job {
        Job::Weyl { p, d } => weyl_checks(p, d, rng),
        Job::Center { p } => center_checks(p),
        Job::Fiber { p, d } => fiber_checks(p, d),
        Job::PCurv { p, d } => pcurv_checks(p, d, rng),
        Job::Descent { p, d, r } => descent_checks(p, d, r, rng),
        Job::Higgs { p, d, r } => higgs_checks(p, d, r, rng),
        Job::Norm { p, d } => norm_checks(p, d, rng),
        Job::Split { p, d } => split_checks(p, d, rng),
        Job::Roundtrip { p, d, r } => roundtrip_checks(p, d, r, rng),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))
}

/// Runs the sweeps of the given criteria.
pub fn run_criteria(criteria: &[u8], seed: u64, jobs: Option<usize>) -> Result<SelftestReport, CliError> {
    let tasks: Vec<(u8, usize, Job)> =
        criteria.iter().flat_map(|&c| criterion_jobs(c).into_iter().enumerate().map(move |(i, j)| (c, i, j))).collect();
    let results: Vec<Vec<Check>> =
        pool(jobs)?.install(|| tasks.par_iter().map(|&(c, i, job)| run_job(job, &mut job_rng(seed, c, i))).collect());
    Ok(SelftestReport { seed, checks: results.into_iter().flatten().collect() })
}

pub fn run_selftest(seed: u64, jobs: Option<usize>) -> Result<SelftestReport, CliError> {
    run_criteria(&CRITERIA, seed, jobs)
}
