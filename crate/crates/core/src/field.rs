//! Finite fields `F_q = F_p[x]/(m(x))` with table-driven arithmetic.
//!
//! An element is stored as a `u32` code whose base-`p` digits are the
//! coefficients of its representative in the power basis `1, x, .., x^(e-1)`
//! (little-endian). The modulus is the lexicographically least monic
//! irreducible polynomial of degree `e`, so two fields built from the same
//! `(p, e)` have identical tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size accepted by [`Field::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Element of a finite field, meaningful only together with its [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, little-endian, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field of size `p^e`. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.e)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense F_p polynomial helpers used only while building the tables.

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
        let shift = top - dm;
        for (k, &mk) in m.iter().enumerate() {
            let sub = (c as u64 * mk as u64 % p as u64) as u32;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    fp_rem(&prod, m, p)
}

fn fp_pow(mut b: u32, mut k: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        k >>= 1;
    }
    b = acc as u32;
    b
}

fn fp_inv(a: u32, p: u32) -> u32 {
    fp_pow(a, p - 2, p)
}

fn digits(mut code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(code % p);
        code /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Irreducibility over `F_p` by trial division with every monic polynomial
/// of degree at most `deg / 2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut g = digits(code as u32, p, k as u32);
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut f = digits(code as u32, p, e);
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds `F_{p^e}` with the lex-least monic irreducible modulus.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE {
            return Err(Error::TooLarge(format!("field of size {p}^{e} exceeds {MAX_FIELD_SIZE}")));
        }
        let q = q as u32;
        let modulus = least_irreducible(p, e);

        // search for a generator of the multiplicative group, x first
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let pow_poly = |g: &[u32], mut k: u64| -> Vec<u32> {
            let mut acc = vec![1u32];
            let mut base = g.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    acc = fp_mulmod(&acc, &base, &modulus, p);
                }
                base = fp_mulmod(&base, &base, &modulus, p);
                k >>= 1;
            }
            acc
        };
        let candidates = std::iter::once(if e > 1 { p } else { 1 }).chain(1..q);
        let mut generator = None;
        for cand in candidates {
            if cand == 0 {
                continue;
            }
            let mut g = digits(cand, p, e);
            fp_trim(&mut g);
            let primitive = factors.iter().all(|&l| pow_poly(&g, order / l) != vec![1u32]);
            if primitive {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("finite fields have cyclic unit groups");

        let mut exp = vec![0u32; (q - 1).max(1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for k in 0..(q - 1) {
            let mut padded = cur.clone();
            padded.resize(e as usize, 0);
            let code = undigits(&padded, p);
            exp[k as usize] = code;
            log[code as usize] = k;
            cur = fp_mulmod(&cur, &g, &modulus, p);
        }
        Ok(Field(Arc::new(FieldData { p, e, q, modulus, exp, log })))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus coefficients, little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The class of `x` in `F_p[x]/(m)`; equals `1`'s neighbour code `p` when `e > 1`.
    pub fn generator_x(&self) -> Elem {
        if self.0.e == 1 {
            // F_p[x]/(x) identifies x with 0
            Elem(0)
        } else {
            Elem(self.0.p)
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from little-endian power-basis coefficients (reduced mod `p`).
    pub fn from_coeffs(&self, cs: &[i64]) -> Result<Elem> {
        if cs.len() > self.0.e as usize {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients but the field has degree {}",
                cs.len(),
                self.0.e
            )));
        }
        let ds: Vec<u32> = cs.iter().map(|&c| c.rem_euclid(self.0.p as i64) as u32).collect();
        Ok(Elem(undigits(&ds, self.0.p)))
    }

    pub fn from_code(&self, code: u32) -> Result<Elem> {
        if code >= self.0.q {
            return Err(Error::InvalidInput(format!("element code {code} out of range")));
        }
        Ok(Elem(code))
    }

    /// Little-endian power-basis coefficients, always of length `e`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.e)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn in_prime_field(&self, a: Elem) -> bool {
        a.0 < self.0.p
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.e == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.e == 1 {
            return Elem((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let d = &self.0;
        if d.e == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % d.p as u64) as u32);
        }
        let s = d.log[a.0 as usize] as u64 + d.log[b.0 as usize] as u64;
        Elem(d.exp[(s % (d.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let d = &self.0;
        let l = d.log[a.0 as usize];
        Some(Elem(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem(1);
        }
        if a.0 == 0 {
            return Elem(0);
        }
        let d = &self.0;
        let l = d.log[a.0 as usize] as u64;
        Elem(d.exp[((l * (k % (d.q as u64 - 1))) % (d.q as u64 - 1)) as usize])
    }

    /// Scalar multiple by an integer.
    pub fn mul_int(&self, a: Elem, n: i64) -> Elem {
        self.mul(a, self.from_int(n))
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^(q/p)`.
    pub fn frobenius_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem(0), |acc, x| self.add(acc, x))
    }

    /// `F_{p^(e m)}` together with the canonical embedding of `self` into it.
    pub fn extension(&self, m: u32) -> Result<(Field, Embedding)> {
        let big = Field::new(self.0.p, self.0.e * m)?;
        let emb = Embedding::new(self, &big)?;
        Ok((big, emb))
    }
}

/// Field embedding `F_{p^e} -> F_{p^(e m)}` sending `x` to the least root of
/// the small field's modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Field,
    big: Field,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
}

impl Embedding {
    pub fn new(small: &Field, big: &Field) -> Result<Embedding> {
        if small.p() != big.p() || !big.e().is_multiple_of(small.e()) {
            return Err(Error::FieldMismatch(format!("{small:?} does not embed in {big:?}")));
        }
        let modulus: Vec<Elem> = small.modulus().iter().map(|&c| big.from_int(c as i64)).collect();
        let alpha = if small.e() == 1 {
            Elem(0)
        } else {
            big.elements()
                .find(|&z| {
                    let v = modulus.iter().rev().fold(Elem(0), |acc, &c| big.add(big.mul(acc, z), c));
                    v.is_zero()
                })
                .ok_or_else(|| Error::FieldMismatch("modulus has no root in the extension".into()))?
        };
        let mut image = Vec::with_capacity(small.q() as usize);
        let mut preimage = HashMap::new();
        for a in small.elements() {
            let cs = small.coeffs(a);
            let v = cs
                .iter()
                .rev()
                .fold(Elem(0), |acc, &c| big.add(big.mul(acc, alpha), big.from_int(c as i64)));
            image.push(v);
            preimage.insert(v, a);
        }
        Ok(Embedding { small: small.clone(), big: big.clone(), image, preimage })
    }

    pub fn identity(field: &Field) -> Embedding {
        let image: Vec<Elem> = field.elements().collect();
        let preimage = image.iter().map(|&a| (a, a)).collect();
        Embedding { small: field.clone(), big: field.clone(), image, preimage }
    }

    pub fn source(&self) -> &Field {
        &self.small
    }

    pub fn target(&self) -> &Field {
        &self.big
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.0 as usize]
    }

    /// Inverse image, if `b` lies in the subfield.
    pub fn restrict(&self, b: Elem) -> Option<Elem> {
        self.preimage.get(&b).copied()
    }

    /// Composite `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if self.big != next.small {
            return Err(Error::FieldMismatch("embeddings do not compose".into()));
        }
        let image: Vec<Elem> = self.image.iter().map(|&b| next.apply(b)).collect();
        let preimage = image.iter().enumerate().map(|(i, &b)| (b, Elem(i as u32))).collect();
        Ok(Embedding { small: self.small.clone(), big: next.big.clone(), image, preimage })
    }
}

/// Dense univariate polynomial over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem(0))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem(0), |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(&self.field, Vec::new());
        }
        let f = &self.field;
        let mut out = vec![Elem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem(0); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], inv);
            quot[top - dd] = c;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                rem[top - dd + k] = f.sub(rem[top - dd + k], f.mul(c, dk));
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn map_field(&self, emb: &Embedding) -> UniPoly {
        UniPoly::new(emb.target(), self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        // over a finite field: squarefree iff no root of multiplicity > 1 in a splitting field
        match find_roots(self) {
            Ok(split) => split.roots.iter().all(|&(_, m)| m == 1),
            Err(_) => false,
        }
    }
}

/// Roots of a univariate polynomial in the field it is defined over, plus the
/// cofactor with no roots there.
pub fn roots_in_field(f: &UniPoly) -> (Vec<(Elem, usize)>, UniPoly) {
    let field = f.field().clone();
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for a in field.elements() {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let lin = UniPoly::new(&field, vec![field.neg(a), field.one()]);
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((a, mult));
        }
    }
    (roots, rest)
}

/// Result of [`find_roots`]: `f = lead * prod (x - root)^mult` over `field`.
#[derive(Clone, Debug)]
pub struct RootSplit {
    pub field: Field,
    /// Embedding of the input's field into `field` (identity if no extension was needed).
    pub embedding: Embedding,
    pub roots: Vec<(Elem, usize)>,
    pub lead: Elem,
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Exhaustive root search, extending the field to the smallest `F_{q^m}`
/// over which `f` splits when it does not split over its own field.
pub fn find_roots(f: &UniPoly) -> Result<RootSplit> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = f.field().clone();
    let (roots, rest) = roots_in_field(f);
    let rest_deg = rest.degree().unwrap_or(0) as u32;
    if rest_deg == 0 {
        return Ok(RootSplit { field: base.clone(), embedding: Embedding::identity(&base), roots, lead: f.leading() });
    }
    // the splitting degree is the lcm of irreducible factor degrees, each <= rest_deg
    let bound = (1..=rest_deg).fold(1, lcm);
    for m in 2..=bound {
        if !bound.is_multiple_of(m) {
            continue;
        }
        let big_size = (base.q() as u64).checked_pow(m).unwrap_or(u64::MAX);
        if big_size > MAX_FIELD_SIZE {
            break;
        }
        let (big, emb) = base.extension(m)?;
        let lifted = f.map_field(&emb);
        let (big_roots, big_rest) = roots_in_field(&lifted);
        if big_rest.degree().unwrap_or(0) == 0 {
            return Ok(RootSplit { field: big, embedding: emb, roots: big_roots, lead: lifted.leading() });
        }
    }
    Err(Error::TooLarge(format!(
        "splitting field of a degree-{} polynomial over {:?} exceeds the size guard",
        f.degree().unwrap_or(0),
        base
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(f: &UniPoly) -> Vec<Elem> {
        f.field().elements().filter(|&a| f.eval(a).is_zero()).collect()
    }

    #[test]
    fn make_field_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 21), Err(Error::TooLarge(_))));
    }

    #[test]
    fn lex_least_modulus_matches_exhaustive_scan() {
        // independent scan: first monic quadratic over F_3 without a root
        let mut expected = None;
        'outer: for a1 in 0..3u32 {
            for a0 in 0..3u32 {
                if (0..3u32).all(|x| (x * x + a1 * x + a0) % 3 != 0) {
                    expected = Some(vec![a0, a1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(Field::new(3, 2).unwrap().modulus(), expected.unwrap().as_slice());
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn deterministic_tables() {
        let a = Field::new(3, 3).unwrap();
        let b = Field::new(3, 3).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
                assert_eq!(a.add(x, y), b.add(x, y));
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 1), (2, 3), (3, 2), (5, 1), (5, 2)] {
            let f = Field::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_root_is_inverse_of_frobenius() {
        for (p, e) in [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            let f = Field::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.frobenius(f.frobenius_root(a)), a);
            }
        }
    }

    #[test]
    fn frobenius_root_examples() {
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.generator_x();
        let x_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.frobenius_root(x), x_plus_1);
        assert_eq!(f4.frobenius_root(f4.one()), f4.one());
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.frobenius_root(f3.from_int(2)), f3.from_int(2));
    }

    #[test]
    fn find_roots_examples() {
        let f3 = Field::prime(3).unwrap();
        let split = find_roots(&UniPoly::from_ints(&f3, &[-1, 0, 1])).unwrap();
        assert_eq!(split.roots, vec![(f3.from_int(1), 1), (f3.from_int(2), 1)]);

        let f2 = Field::prime(2).unwrap();
        let split = find_roots(&UniPoly::from_ints(&f2, &[0, 0, 1])).unwrap();
        assert_eq!(split.roots, vec![(f2.zero(), 2)]);

        let split = find_roots(&UniPoly::from_ints(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(split.field.q(), 4);
        let f4 = split.field.clone();
        let x = f4.generator_x();
        let x1 = f4.add(x, f4.one());
        assert_eq!(split.roots, vec![(x, 1), (x1, 1)]);
        let lifted = UniPoly::from_ints(&f2, &[1, 1, 1]).map_field(&split.embedding);
        assert_eq!(brute_roots(&lifted), vec![x, x1]);

        assert!(matches!(find_roots(&UniPoly::new(&f2, vec![])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn find_roots_reassembles_polynomial() {
        let f3 = Field::prime(3).unwrap();
        // (x^2+1)(x-1)^2 x over F_3, splits over F_9
        let f = UniPoly::from_ints(&f3, &[1, 0, 1])
            .mul(&UniPoly::from_ints(&f3, &[-1, 1]))
            .mul(&UniPoly::from_ints(&f3, &[-1, 1]))
            .mul(&UniPoly::from_ints(&f3, &[0, 1]));
        let (base_roots, cof) = roots_in_field(&f);
        assert_eq!(base_roots.iter().map(|r| r.1).sum::<usize>() + cof.degree().unwrap(), 5);
        let mut rebuilt = cof.clone();
        for &(a, m) in &base_roots {
            for _ in 0..m {
                rebuilt = rebuilt.mul(&UniPoly::new(&f3, vec![f3.neg(a), f3.one()]));
            }
        }
        assert_eq!(rebuilt, f);

        let split = find_roots(&f).unwrap();
        let big = split.field.clone();
        assert_eq!(big.q(), 9);
        assert_eq!(split.roots.iter().map(|r| r.1).sum::<usize>(), 5);
        let mut rebuilt = UniPoly::new(&big, vec![split.lead]);
        for &(a, m) in &split.roots {
            for _ in 0..m {
                rebuilt = rebuilt.mul(&UniPoly::new(&big, vec![big.neg(a), big.one()]));
            }
        }
        assert_eq!(rebuilt, f.map_field(&split.embedding));
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = Field::new(2, 2).unwrap();
        let (big, emb) = small.extension(2).unwrap();
        assert_eq!(big.q(), 16);
        for a in small.elements() {
            assert_eq!(emb.restrict(emb.apply(a)), Some(a));
            for b in small.elements() {
                assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
            }
        }
    }
}
