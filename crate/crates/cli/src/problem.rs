use charp_core::azcorr::{cartier_direct, cartier_inverse, module_isomorphic, splitting_over_section, IsoVerdict, SectionData};
use charp_core::connection::{p_curvature, p_curvature_rank1_formula};
use charp_core::forms::{cartier_pcurvature, OneForm};
use charp_core::frobdescent::verify_descent;
use charp_core::higgs::{
    annihilation_check, cayley_hamilton_check, hitchin_point, minimal_annihilator_degrees, spectral_ideal,
    symmetric_count, twisted_char_poly,
};
use charp_core::{Field, PolyRing, Twist};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::json::*;
use crate::selftest;
use crate::CliError;

pub const DEFAULT_DEGREE_BOUND: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pcurv,
    Charpoly,
    Spectral,
    Descent,
    Azumaya,
    Cartier,
    Correspond,
    Selftest,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pcurv => "pcurv",
            Mode::Charpoly => "charpoly",
            Mode::Spectral => "spectral",
            Mode::Descent => "descent",
            Mode::Azumaya => "azumaya",
            Mode::Cartier => "cartier",
            Mode::Correspond => "correspond",
            Mode::Selftest => "selftest",
        }
    }
}

fn default_degree() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "default_degree")]
    pub e: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub e: Option<u32>,
    #[serde(default)]
    pub d: Option<usize>,
    pub mode: Mode,
    #[serde(default)]
    pub payload: Value,
    #[serde(default)]
    pub degree_bound: Option<u32>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    fn field(&self) -> Result<Field, CliError> {
        let (p, e) = match (&self.field, self.p) {
            (Some(fs), None) => (fs.p, fs.e),
            (None, Some(p)) => (p, self.e.unwrap_or(1)),
            (Some(_), Some(_)) => return Err(CliError::Input("give the field either as \"field\" or as top-level \"p\", not both".into())),
            (None, None) => return Err(CliError::Input("missing field: set \"field\": {\"p\": .., \"e\": ..}".into())),
        };
        Ok(Field::new(p, e)?)
    }

    fn ring(&self) -> Result<PolyRing, CliError> {
        let d = self.d.ok_or_else(|| CliError::Input("missing dimension \"d\"".into()))?;
        if d == 0 {
            return Err(CliError::Input("dimension must be positive".into()));
        }
        Ok(PolyRing::new(&self.field()?, d, Twist::R))
    }
}

/// Command-line overrides of the problem file.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub degree_bound: Option<u32>,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    /// All checked identities held.
    pub verified: bool,
}

fn payload_key<'a>(payload: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    payload.get(key).ok_or_else(|| CliError::Input(format!("payload needs \"{key}\"")))
}

pub fn run(problem: &ProblemFile, opts: &Options) -> Result<Outcome, CliError> {
    let bound = opts.degree_bound.or(problem.degree_bound).unwrap_or(DEFAULT_DEGREE_BOUND);
    let payload = &problem.payload;
    if problem.mode == Mode::Selftest {
        let seed = opts.seed.or(problem.seed).ok_or_else(|| CliError::Input("selftest needs a seed".into()))?;
        let report = selftest::run_selftest(seed, opts.jobs)?;
        let verified = report.ok();
        return Ok(Outcome { report: json!({"mode": "selftest", "result": report.to_json(), "verified": verified}), verified });
    }
    let ring = problem.ring()?;
    let (result, verified) = match problem.mode {
        Mode::Pcurv => {
            let conn = connection_from_json(&ring, payload_key(payload, "connection")?)?;
            let psi = p_curvature(&conn)?;
            let mut out = json!({"psi": matrices_json(psi.matrices())});
            let mut agree = true;
            if conn.rank() == 1 {
                let comps = conn.matrices().iter().map(|m| m.get(0, 0).clone()).collect();
                let omega = OneForm::new(&ring, comps)?;
                let formula = p_curvature_rank1_formula(&omega, conn.lambda())?;
                agree = (0..ring.d()).all(|i| psi.matrix(i).get(0, 0) == formula.component(i));
                out["rank1_formula"] = form_json(&formula);
                if conn.lambda() == ring.field().one() {
                    let cartier = cartier_pcurvature(&omega)?;
                    agree &= cartier == formula;
                    out["cartier"] = form_json(&cartier);
                }
                out["paths_agree"] = json!(agree);
            }
            (out, agree)
        }
        Mode::Charpoly => {
            let h = higgs_from_json(&ring, payload_key(payload, "higgs")?, Twist::R)?;
            let hp = hitchin_point(&h);
            let ch = cayley_hamilton_check(&h);
            let out = json!({
                "chi": charpoly_json(&hp.charpoly),
                "constant_coefficients": hp.constant_coefficients,
                "cayley_hamilton": ch,
                "minimal_annihilator_degrees": minimal_annihilator_degrees(&h),
            });
            (out, ch)
        }
        Mode::Spectral => {
            let (chi, higgs) = if let Some(h) = payload.get("higgs") {
                let h = higgs_from_json(&ring, h, Twist::R)?;
                (twisted_char_poly(&h), Some(h))
            } else {
                (charpoly_from_json(&ring, payload_key(payload, "charpoly")?)?, None)
            };
            let ideal = spectral_ideal(&chi);
            let expected = symmetric_count(chi.rank(), chi.d());
            let annihilates = higgs.as_ref().map(|h| annihilation_check(h, &ideal));
            let ok = ideal.generators().len() == expected && annihilates != Some(false);
            let out = json!({"ideal": ideal_json(&ideal), "expected_count": expected, "annihilation": annihilates});
            (out, ok)
        }
        Mode::Descent => {
            let conn = connection_from_json(&ring, payload_key(payload, "connection")?)?;
            let rep = verify_descent(&conn)?;
            (descent_json(&rep), rep.holds())
        }
        Mode::Azumaya => {
            let rp = ring.with_twist(Twist::Rprime);
            let section = match payload.get("section") {
                None => SectionData::zero(&rp),
                Some(v) => {
                    let vals = v
                        .as_array()
                        .ok_or_else(|| CliError::Input("section must be an array of polynomials over R'".into()))?
                        .iter()
                        .map(|x| poly_from_json(&rp, x))
                        .collect::<Result<Vec<_>, _>>()?;
                    SectionData::new(&rp, vals)?
                }
            };
            (splitting_json(&splitting_over_section(&section, bound)?), true)
        }
        Mode::Cartier => {
            if let Some(h) = payload.get("higgs") {
                let h = higgs_from_json(&ring, h, Twist::Rprime)?;
                (json!({"connection": connection_json(&cartier_inverse(&h)?)}), true)
            } else {
                let conn = connection_from_json(&ring, payload_key(payload, "connection")?)?;
                let cd = cartier_direct(&conn, bound)?;
                (json!({"theta": higgs_json(&cd.theta), "frame": matrix_json(&cd.frame)}), true)
            }
        }
        Mode::Correspond => {
            let h = higgs_from_json(&ring, payload_key(payload, "higgs")?, Twist::Rprime)?;
            let conn = cartier_inverse(&h)?;
            let back = cartier_direct(&conn, bound)?;
            let (verdict, u) = match module_isomorphic(h.matrices(), back.theta.matrices(), bound)? {
                IsoVerdict::Found(u) => ("found", matrix_json(&u)),
                IsoVerdict::NotFound => ("not-found", Value::Null),
            };
            let out = json!({
                "connection": connection_json(&conn),
                "theta_back": higgs_json(&back.theta),
                "intertwiner": u,
                "verdict": verdict,
            });
            (out, true)
        }
        Mode::Selftest => unreachable!("handled above"),
    };
    let report = json!({
        "mode": problem.mode.name(),
        "field": field_json(ring.field()),
        "d": ring.d(),
        "result": result,
        "verified": verified,
    });
    Ok(Outcome { report, verified })
}
