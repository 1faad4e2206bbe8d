//! Dense matrices over a finite field and over a polynomial ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<u32> = (0..self.cols).map(|j| self.get(i, j).code()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> FieldMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        FieldMatrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: Elem) -> FieldMatrix {
        let f = &self.field;
        FieldMatrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn pow(&self, mut k: u64) -> FieldMatrix {
        let mut acc = FieldMatrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if piv != row {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, row * self.cols + j);
                }
            }
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `A x = b` with all free variables set to zero.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FieldMatrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn det(&self) -> Elem {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..m.cols {
            let Some(piv) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Elem::ZERO;
            };
            if piv != col {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, col * m.cols + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(col, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..m.rows {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

/// Dense matrix with entries in a [`PolyRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zeros(ring: &PolyRing, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &PolyRing, n: usize) -> PolyMatrix {
        PolyMatrix::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: &PolyRing, n: usize, s: &Poly) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(ring: &PolyRing, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let data: Vec<Poly> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|p| p.ring() != ring) {
            return Err(Error::RingMismatch(format!("matrix entry over {:?}, expected {ring:?}", bad.ring())));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, data })
    }

    pub fn from_fn(ring: &PolyRing, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn from_field_matrix(ring: &PolyRing, m: &FieldMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(ring, m.rows(), m.cols(), |i, j| ring.constant(m.get(i, j)))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Poly::is_constant)
    }

    pub fn map(&self, g: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let data: Vec<Poly> = self.data.iter().map(g).collect();
        let ring = data.first().map_or_else(|| self.ring.clone(), |p| p.ring().clone());
        PolyMatrix { ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn try_map(&self, g: impl Fn(&Poly) -> Result<Poly>) -> Result<PolyMatrix> {
        let data = self.data.iter().map(g).collect::<Result<Vec<Poly>>>()?;
        let ring = data.first().map_or_else(|| self.ring.clone(), |p| p.ring().clone());
        Ok(PolyMatrix { ring, rows: self.rows, cols: self.cols, data })
    }

    /// Same entries moved into `ring` (used when the map changes the ring of empty matrices too).
    pub fn map_into(&self, ring: &PolyRing, g: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(g).collect() }
    }

    pub fn embed(&self, emb: &Embedding) -> PolyMatrix {
        self.map_into(&self.ring.with_field(emb.target()), |p| p.embed(emb))
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map_into(&self.ring.clone(), |p| -p)
    }

    pub fn scale(&self, s: &Poly) -> PolyMatrix {
        self.map_into(&self.ring.clone(), |p| p * s)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(&self.ring, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutator(&self, other: &PolyMatrix) -> PolyMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Poly {
        (0..self.rows).fold(self.ring.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Conjugates by a permutation: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Elem]) -> FieldMatrix {
        let f = self.ring.field();
        let rows = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect()).collect();
        FieldMatrix::from_rows(f, rows)
    }

    /// Coefficients of `det(x Id - self)`, highest degree first, by
    /// Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<Poly> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let one = self.ring.one();
        let mut v = vec![one.clone()];
        for k in 0..n {
            let akk = self.get(k, k);
            let mut toeplitz = vec![one.clone(), -akk];
            let mut s: Vec<Poly> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rs = (0..k).fold(self.ring.zero(), |acc, j| &acc + &(self.get(k, j) * &s[j]));
                toeplitz.push(-&rs);
                s = (0..k)
                    .map(|i| (0..k).fold(self.ring.zero(), |acc, j| &acc + &(self.get(i, j) * &s[j])))
                    .collect();
            }
            let mut next = Vec::with_capacity(k + 2);
            for i in 0..k + 2 {
                let mut acc = self.ring.zero();
                for j in 0..=k.min(i) {
                    if i - j < toeplitz.len() && !v[j].is_zero() {
                        acc = &acc + &(&toeplitz[i - j] * &v[j]);
                    }
                }
                next.push(acc);
            }
            v = next;
        }
        v
    }

    pub fn det(&self) -> Poly {
        let cp = self.charpoly();
        let c = cp.last().cloned().unwrap_or_else(|| self.ring.one());
        if self.rows % 2 == 1 {
            -&c
        } else {
            c
        }
    }

    /// Rank over the fraction field, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = self.ring.one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if piv != row {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, row * m.cols + j);
                }
            }
            let pv = m.get(row, col).clone();
            for r in row + 1..m.rows {
                let factor = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = &(&pv * m.get(r, j)) - &(&factor * m.get(row, j));
                    let v = v.div_exact(&prev).expect("Bareiss division is exact");
                    m.set(r, j, v);
                }
            }
            prev = pv;
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Inverse when the determinant is a nonzero constant.
    pub fn unimodular_inverse(&self) -> Option<PolyMatrix> {
        let n = self.rows;
        let det = self.det();
        if det.is_zero() || !det.is_constant() {
            return None;
        }
        // adjugate via Cayley-Hamilton: A^{-1} = -(A^{n-1} + c1 A^{n-2} + ... + c_{n-1}) / c_n
        let cp = self.charpoly();
        let mut acc = PolyMatrix::zeros(&self.ring, n, n);
        let id = PolyMatrix::identity(&self.ring, n);
        for c in cp.iter().take(n) {
            acc = acc.mul(self).add(&id.scale(c));
        }
        let cn = &cp[n];
        let cn_inv = self.ring.field().inv(cn.constant_term())?;
        Some(acc.scale(&self.ring.constant(self.ring.field().neg(cn_inv))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Twist;

    fn cofactor_det(m: &PolyMatrix) -> Poly {
        let n = m.rows();
        if n == 0 {
            return m.ring().one();
        }
        let mut acc = m.ring().zero();
        for j in 0..n {
            let minor = PolyMatrix::from_fn(m.ring(), n - 1, n - 1, |a, b| {
                m.get(a + 1, if b < j { b } else { b + 1 }).clone()
            });
            let term = m.get(0, j) * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let f = Field::prime(5).unwrap();
        let r = PolyRing::new(&f, 2, Twist::R);
        let x = r.var(0);
        let y = r.var(1);
        let m = PolyMatrix::from_rows(
            &r,
            vec![
                vec![&x + &r.int(1), y.clone(), r.int(3)],
                vec![r.int(2), &x * &y, &y - &r.one()],
                vec![x.pow(2), r.zero(), &y + &x],
            ],
        )
        .unwrap();
        assert_eq!(m.det(), cofactor_det(&m));
        // char poly evaluated at a symbolic shift: det(s I - M) with s = 0 is (-1)^n det
        let cp = m.charpoly();
        assert_eq!(cp.len(), 4);
        assert_eq!(cp[1], -&m.trace());
    }

    #[test]
    fn field_nullspace_and_solve() {
        let f = Field::prime(3).unwrap();
        let e = |n| f.from_int(n);
        let a = FieldMatrix::from_rows(&f, vec![vec![e(1), e(2), e(0)], vec![e(2), e(1), e(0)]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let col = FieldMatrix::from_rows(&f, v.iter().map(|&x| vec![x]).collect());
            assert!(a.mul(&col).is_zero());
        }
        assert_eq!(a.rank(), 1);
        assert!(a.solve(&[e(1), e(1)]).is_none());
        let x = a.solve(&[e(1), e(2)]).unwrap();
        let col = FieldMatrix::from_rows(&f, x.iter().map(|&v| vec![v]).collect());
        assert_eq!(a.mul(&col), FieldMatrix::from_rows(&f, vec![vec![e(1)], vec![e(2)]]));
    }

    #[test]
    fn fraction_free_rank_and_inverse() {
        let f = Field::prime(2).unwrap();
        let r = PolyRing::new(&f, 1, Twist::R);
        let t = r.var(0);
        let m = PolyMatrix::from_rows(&r, vec![vec![t.clone(), r.one()], vec![&t.pow(2) + &r.one(), t.clone()]]).unwrap();
        assert_eq!(m.rank(), 2);
        let inv = m.unimodular_inverse().unwrap();
        assert_eq!(inv.mul(&m), PolyMatrix::identity(&r, 2));
        let sing = PolyMatrix::from_rows(&r, vec![vec![t.clone(), r.one()], vec![t.pow(2), t.clone()]]).unwrap();
        assert_eq!(sing.rank(), 1);
        assert!(sing.unimodular_inverse().is_none());
    }
}
