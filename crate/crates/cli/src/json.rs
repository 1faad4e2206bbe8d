//! JSON encodings of fields, polynomials, matrices and reports.
//!
//! Elements are little-endian digit arrays of length `e`. On input a bare
//! integer is also accepted and read in the prime field.

use charp_core::azcorr::SplittingModule;
use charp_core::connection::{Connection, HiggsField};
use charp_core::forms::OneForm;
use charp_core::frobdescent::DescentReport;
use charp_core::higgs::{SpectralIdeal, TwistedCharPoly};
use charp_core::linalg::PolyMatrix;
use charp_core::{Elem, Field, Poly, PolyRing, Twist};
use serde_json::{json, Value};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn field_json(f: &Field) -> Value {
    json!({"p": f.p(), "e": f.e()})
}

pub fn elem_json(f: &Field, a: Elem) -> Value {
    json!(f.coeffs(a))
}

pub fn elem_from_json(f: &Field, v: &Value) -> Result<Elem, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(|k| f.from_int(k)).ok_or_else(|| bad(format!("element {n} is not an integer"))),
        Value::Array(ds) => {
            let digits = ds.iter().map(|d| d.as_i64().ok_or_else(|| bad("element digits must be integers"))).collect::<Result<Vec<_>, _>>()?;
            if digits.len() > f.e() as usize {
                return Err(bad(format!("element has {} digits, field degree is {}", digits.len(), f.e())));
            }
            f.from_coeffs(&digits).map_err(|e| bad(e.to_string()))
        }
        _ => Err(bad(format!("cannot read a field element from {v}"))),
    }
}

fn twist_name(t: Twist) -> &'static str {
    match t {
        Twist::R => "R",
        Twist::Rprime => "Rprime",
    }
}

fn exps_json(m: &[u32]) -> Value {
    json!(m)
}

pub fn poly_json(f: &Poly) -> Value {
    let field = f.field();
    let terms: Vec<Value> = f.terms().iter().map(|(m, &c)| json!({"exp": exps_json(m), "coeff": elem_json(field, c)})).collect();
    json!({"ring": twist_name(f.ring().twist()), "terms": terms})
}

fn read_exp(v: Option<&Value>, len: usize, what: &str) -> Result<Vec<u32>, CliError> {
    let arr = match v {
        None => return Ok(vec![0; len]),
        Some(Value::Array(a)) => a,
        Some(other) => return Err(bad(format!("{what} must be an array, got {other}"))),
    };
    if arr.len() != len {
        return Err(bad(format!("{what} has length {}, expected {len}", arr.len())));
    }
    arr.iter()
        .map(|x| x.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad(format!("{what} entries must be small non-negative integers"))))
        .collect()
}

/// Reads a polynomial over `ring`; `extra_keys` name the blocks of auxiliary
/// exponents, each of length `d`, stored after the coordinate exponents.
fn poly_from_json_with(ring: &PolyRing, v: &Value, extra_keys: &[&str]) -> Result<Poly, CliError> {
    let field = ring.field();
    let terms = match v {
        Value::Number(_) => return Ok(ring.constant(elem_from_json(field, v)?)),
        // a non-empty array of digits is a constant
        Value::Array(ts) if !ts.is_empty() && ts.iter().all(Value::is_number) => {
            return Ok(ring.constant(elem_from_json(field, v)?));
        }
        Value::Array(ts) => ts,
        Value::Object(o) => {
            if let Some(r) = o.get("ring") {
                let want = twist_name(ring.twist());
                if r.as_str() != Some(want) {
                    return Err(bad(format!("polynomial tagged {r}, expected {want}")));
                }
            }
            o.get("terms").and_then(Value::as_array).ok_or_else(|| bad("polynomial object needs a \"terms\" array"))?
        }
        _ => return Err(bad(format!("cannot read a polynomial from {v}"))),
    };
    let d = ring.d();
    let mut out = ring.zero();
    for t in terms {
        let mut m = read_exp(t.get("exp"), d, "exp")?;
        for key in extra_keys {
            m.extend(read_exp(t.get(*key), d, key)?);
        }
        let c = elem_from_json(field, t.get("coeff").ok_or_else(|| bad("term without \"coeff\""))?)?;
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn poly_from_json(ring: &PolyRing, v: &Value) -> Result<Poly, CliError> {
    poly_from_json_with(ring, v, &[])
}

pub fn matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(poly_json).collect())).collect())
}

pub fn matrix_from_json(ring: &PolyRing, v: &Value) -> Result<PolyMatrix, CliError> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|row| row.as_array().ok_or_else(|| bad("matrix row must be an array"))?.iter().map(|e| poly_from_json(ring, e)).collect())
        .collect::<Result<Vec<Vec<Poly>>, CliError>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(bad("matrices must be square and non-empty"));
    }
    PolyMatrix::from_rows(ring, rows).map_err(CliError::from)
}

pub fn matrices_json(ms: &[PolyMatrix]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

fn matrices_from_json(ring: &PolyRing, v: Option<&Value>, key: &str) -> Result<Vec<PolyMatrix>, CliError> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| bad(format!("missing \"{key}\" array of matrices")))?;
    arr.iter().map(|m| matrix_from_json(ring, m)).collect()
}

pub fn form_json(w: &OneForm) -> Value {
    Value::Array(w.components().iter().map(poly_json).collect())
}

pub fn connection_json(c: &Connection) -> Value {
    let f = c.ring().field();
    json!({"lambda": elem_json(f, c.lambda()), "rank": c.rank(), "A": matrices_json(c.matrices())})
}

pub fn connection_from_json(ring: &PolyRing, v: &Value) -> Result<Connection, CliError> {
    let ring = ring.with_twist(Twist::R);
    let lambda = match v.get("lambda") {
        Some(l) => elem_from_json(ring.field(), l)?,
        None => ring.field().one(),
    };
    let a = matrices_from_json(&ring, v.get("A"), "A")?;
    Connection::new(&ring, lambda, a).map_err(CliError::from)
}

pub fn higgs_json(h: &HiggsField) -> Value {
    json!({"ring": twist_name(h.ring().twist()), "rank": h.rank(), "theta": matrices_json(h.matrices())})
}

/// Reads a Higgs field; `default` is used when the object carries no `"ring"` tag.
pub fn higgs_from_json(ring: &PolyRing, v: &Value, default: Twist) -> Result<HiggsField, CliError> {
    let twist = match v.get("ring").and_then(Value::as_str) {
        None => default,
        Some("R") => Twist::R,
        Some("Rprime") => Twist::Rprime,
        Some(other) => return Err(bad(format!("unknown ring tag {other:?}"))),
    };
    let ring = ring.with_twist(twist);
    let mats = matrices_from_json(&ring, v.get("theta"), "theta")?;
    HiggsField::new(&ring, mats, charp_core::connection::BasisTag::K).map_err(CliError::from)
}

/// `chi` as its full list of terms in the coordinates, the `omega`s and `T`.
pub fn charpoly_json(chi: &TwistedCharPoly) -> Value {
    let d = chi.d();
    let f = chi.ring().field().clone();
    let full = chi.to_poly();
    let terms: Vec<Value> = full
        .terms()
        .iter()
        .map(|(m, &c)| json!({"exp": exps_json(&m[..d]), "omega_exp": exps_json(&m[d..2 * d]), "T": m[2 * d], "coeff": elem_json(&f, c)}))
        .collect();
    json!({"ring": twist_name(chi.ring().twist()), "rank": chi.rank(), "terms": terms})
}

/// Reads `{"a": [a_1, .., a_r]}` with terms carrying `exp` and `omega_exp`.
pub fn charpoly_from_json(ring: &PolyRing, v: &Value) -> Result<TwistedCharPoly, CliError> {
    let twist = match v.get("ring").and_then(Value::as_str) {
        Some("Rprime") => Twist::Rprime,
        _ => Twist::R,
    };
    let base = ring.with_twist(twist).with_extra(0);
    let wring = base.with_extra(base.d());
    let arr = v.get("a").and_then(Value::as_array).ok_or_else(|| bad("charpoly needs an \"a\" array of coefficients"))?;
    let coeffs = arr.iter().map(|a| poly_from_json_with(&wring, a, &["omega_exp"])).collect::<Result<Vec<_>, _>>()?;
    TwistedCharPoly::new(&base, coeffs).map_err(CliError::from)
}

pub fn ideal_json(ideal: &SpectralIdeal) -> Value {
    let d = ideal.ring().d();
    let f = ideal.ring().field().clone();
    let gens: Vec<Value> = ideal
        .generators()
        .iter()
        .map(|(key, g)| {
            let terms: Vec<Value> = g
                .terms()
                .iter()
                .map(|(m, &c)| json!({"exp": exps_json(&m[..d]), "d_exp": exps_json(&m[d..]), "coeff": elem_json(&f, c)}))
                .collect();
            json!({"omega_exp": exps_json(key), "terms": terms})
        })
        .collect();
    json!({"rank": ideal.rank(), "count": gens.len(), "generators": gens})
}

pub fn descent_json(rep: &DescentReport) -> Value {
    json!({
        "chi": charpoly_json(&rep.chi),
        "chi2prime": charpoly_json(&rep.chi_2prime),
        "chiprime": charpoly_json(&rep.chi_prime),
        "identity_i": rep.identity_i,
        "identity_ii": rep.identity_ii,
    })
}

pub fn splitting_json(sm: &SplittingModule) -> Value {
    let f = sm.omega.ring().field().clone();
    json!({
        "section": Value::Array(sm.section.values().iter().map(poly_json).collect()),
        "omega": form_json(&sm.omega),
        "module_rank": sm.carrier.rank(),
        "end_rank": sm.end_rank,
        "action_det": elem_json(&f, sm.action_det.constant_term()),
        "t_action": matrices_json(&sm.t_action),
        "d_action": matrices_json(&sm.d_action),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_roundtrip() {
        let f = Field::new(3, 2).unwrap();
        let r = PolyRing::new(&f, 2, Twist::R);
        let p = &(&r.var(0).pow(2) * &r.var(1)).scale(f.generator_x()) + &r.int(2);
        let v = poly_json(&p);
        assert_eq!(poly_from_json(&r, &v).unwrap(), p);
        assert_eq!(poly_from_json(&r, &json!(2)).unwrap(), r.int(2));
        assert!(poly_from_json(&r.with_twist(Twist::Rprime), &v).is_err());
    }

    #[test]
    fn charpoly_input_matches_output_shape() {
        let r = PolyRing::new(&Field::prime(5).unwrap(), 1, Twist::R);
        let v = json!({"a": [[], [{"exp": [1], "omega_exp": [2], "coeff": 4}]]});
        let chi = charpoly_from_json(&r, &v).unwrap();
        assert_eq!(chi.rank(), 2);
        let out = charpoly_json(&chi);
        assert_eq!(out["terms"].as_array().unwrap().len(), 2);
    }
}
