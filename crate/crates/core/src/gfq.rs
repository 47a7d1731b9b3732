//! Exact linear algebra over prime fields F_q, q an odd prime.
//!
//! Matrices store raw residues in row-major order together with the modulus.
//! Vectors are plain `Vec<u32>` of residues; they act as column vectors, so
//! an isometry of a Gram matrix `J` is a matrix `g` with `g^T J g = J`.
//! Subspaces are canonicalized by reduced row echelon form: two subspaces
//! are equal iff their echelon matrices are identical.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Returns true for an odd prime (desk-scale trial division).
pub fn is_odd_prime(q: u32) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular inverse for 0 < a < q, q prime.
pub fn inv_mod(a: u32, q: u32) -> u32 {
    pow_mod(a, q - 2, q)
}

pub fn pow_mod(base: u32, mut exp: u32, q: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = u64::from(base % q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % u64::from(q);
        }
        b = b * b % u64::from(q);
        exp >>= 1;
    }
    acc as u32
}

/// Legendre symbol of `a` mod q: 0, 1 or -1.
pub fn legendre(a: u32, q: u32) -> i32 {
    let a = a % q;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest quadratic non-residue mod q.
pub fn least_non_residue(q: u32) -> u32 {
    (2..q).find(|&a| legendre(a, q) == -1).expect("odd prime has a non-residue")
}

/// An element of F_q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    pub value: u32,
    pub q: u32,
}

impl FieldElement {
    pub fn new(value: u32, q: u32) -> Self {
        FieldElement { value: value % q, q }
    }

    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(FieldElement::new(inv_mod(self.value, self.q), self.q))
        }
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.q, rhs.q, "modulus mismatch");
        FieldElement::new(self.value + rhs.value, self.q)
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.q, rhs.q, "modulus mismatch");
        FieldElement::new(self.value + self.q - rhs.value, self.q)
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.q, rhs.q, "modulus mismatch");
        FieldElement::new(((self.value as u64 * rhs.value as u64) % self.q as u64) as u32, self.q)
    }
}

/// Dense matrix over F_q.  Zero-dimensional matrices are allowed; they
/// represent maps of the zero space and make the trivial isometry groups
/// (rank-0 members of a Witt tower) first-class values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    pub rows: usize,
    pub cols: usize,
    pub q: u32,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} mod {}", self.rows, self.cols, self.q)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Serialize for MatrixFq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MatrixFq", 2)?;
        st.serialize_field("q", &self.q)?;
        let rows: Vec<&[u32]> = (0..self.rows)
            .map(|r| &self.data[r * self.cols..(r + 1) * self.cols])
            .collect();
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MatrixFq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            q: u32,
            entries: Vec<Vec<u32>>,
        }
        let raw = Raw::deserialize(d)?;
        let rows = raw.entries.len();
        let cols = raw.entries.first().map_or(0, |r| r.len());
        if raw.entries.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        let data = raw.entries.into_iter().flatten().map(|v| v % raw.q).collect();
        Ok(MatrixFq { rows, cols, q: raw.q, data })
    }
}

impl MatrixFq {
    pub fn zero(rows: usize, cols: usize, q: u32) -> Self {
        MatrixFq { rows, cols, q, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, q: u32) -> Self {
        let mut m = MatrixFq::zero(n, n, q);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, q: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        let data = rows.into_iter().flatten().map(|v| v % q).collect();
        MatrixFq { rows: r, cols: c, q, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.q;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    /// Canonical byte key; entries fit in a byte at desk scale.
    pub fn key(&self) -> Vec<u8> {
        self.data.iter().map(|&v| v as u8).collect()
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zero(self.cols, self.rows, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &MatrixFq) -> Result<MatrixFq> {
        if self.q != rhs.q {
            return Err(Error::ModulusMismatch { left: self.q, right: rhs.q });
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul(rhs))
    }

    /// Panicking product for internal hot paths.
    pub fn mul(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!(self.q, rhs.q);
        assert_eq!(self.cols, rhs.rows);
        let q = u64::from(self.q);
        let mut out = MatrixFq::zero(self.rows, rhs.cols, self.q);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = u64::from(self.get(r, k));
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = u64::from(out.get(r, c));
                    out.data[r * rhs.cols + c] = ((cur + a * u64::from(rhs.get(k, c))) % q) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!((self.rows, self.cols, self.q), (rhs.rows, rhs.cols, rhs.q));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&rhs.data) {
            *a = (*a + b) % self.q;
        }
        out
    }

    pub fn neg(&self) -> MatrixFq {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (self.q - *a) % self.q;
        }
        out
    }

    pub fn scale(&self, s: u32) -> MatrixFq {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ((u64::from(*a) * u64::from(s)) % u64::from(self.q)) as u32;
        }
        out
    }

    /// Matrix-vector product (vector as column).
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let q = u64::from(self.q);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = (acc + u64::from(self.get(r, c)) * u64::from(v[c])) % q;
                }
                acc as u32
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &MatrixFq) -> MatrixFq {
        assert_eq!(self.q, rhs.q);
        let mut out = MatrixFq::zero(self.rows * rhs.rows, self.cols * rhs.cols, self.q);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let v = (u64::from(a) * u64::from(rhs.get(r2, c2))) % u64::from(self.q);
                        out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, v as u32);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form with first-nonzero pivot choice.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let q = m.q;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = inv_mod(m.get(row, col), q);
            for c in 0..m.cols {
                let v = (u64::from(m.get(row, c)) * u64::from(inv)) % u64::from(q);
                m.set(row, c, v as u32);
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for c in 0..m.cols {
                        let v = (u64::from(m.get(r, c)) + u64::from(q - f) * u64::from(m.get(row, c)))
                            % u64::from(q);
                        m.set(r, c, v as u32);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, rank: row, pivots }
    }

    /// Kernel {v : M v = 0} as a canonical subspace of F_q^cols.
    pub fn kernel(&self) -> SubspaceBasis {
        let r = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &r.pivots {
                s[p] = true;
            }
            s
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = (self.q - r.matrix.get(i, free)) % self.q;
            }
            basis.push(v);
        }
        SubspaceBasis::from_spanning(basis, self.cols, self.q)
    }

    /// Solves M x = b; `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(self.rows, b.len());
        let mut aug = MatrixFq::zero(self.rows, self.cols + 1, self.q);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r] % self.q);
        }
        let r = aug.rref();
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<MatrixFq> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = MatrixFq::zero(n, 2 * n, self.q);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let r = aug.rref();
        if r.rank < n || r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = MatrixFq::zero(n, n, self.q);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.matrix.get(i, n + j));
            }
        }
        Some(out)
    }

    pub fn det(&self) -> u32 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let q = self.q;
        let mut m = self.clone();
        let mut det: u64 = 1;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if pr != col {
                for c in 0..n {
                    let (a, b) = (m.get(col, c), m.get(pr, c));
                    m.set(col, c, b);
                    m.set(pr, c, a);
                }
                det = det * u64::from(q - 1) % u64::from(q);
            }
            det = det * u64::from(m.get(col, col)) % u64::from(q);
            let inv = inv_mod(m.get(col, col), q);
            for r in col + 1..n {
                if m.get(r, col) != 0 {
                    let f = (u64::from(m.get(r, col)) * u64::from(inv) % u64::from(q)) as u32;
                    for c in col..n {
                        let v = (u64::from(m.get(r, c))
                            + u64::from(q - f) * u64::from(m.get(col, c)))
                            % u64::from(q);
                        m.set(r, c, v as u32);
                    }
                }
            }
        }
        det as u32
    }
}

/// Result of reduced row echelonization.
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A subspace of F_q^n in canonical (reduced row echelon) form; the rows of
/// `basis` are the basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceBasis {
    pub ambient: usize,
    pub q: u32,
    basis: MatrixFq,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize, q: u32) -> Self {
        SubspaceBasis { ambient, q, basis: MatrixFq::zero(0, ambient, q) }
    }

    pub fn full(ambient: usize, q: u32) -> Self {
        SubspaceBasis { ambient, q, basis: MatrixFq::identity(ambient, q) }
    }

    /// Canonicalizes a spanning set (rows may be dependent).
    pub fn from_spanning(rows: Vec<Vec<u32>>, ambient: usize, q: u32) -> Self {
        let m = MatrixFq::from_rows(rows, q);
        assert!(m.cols == ambient || m.rows == 0);
        let r = m.rref();
        let mut basis = MatrixFq::zero(r.rank, ambient, q);
        for i in 0..r.rank {
            for c in 0..ambient {
                basis.set(i, c, r.matrix.get(i, c));
            }
        }
        SubspaceBasis { ambient, q, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn key(&self) -> Vec<u8> {
        let mut k = vec![self.dim() as u8];
        k.extend(self.basis.key());
        k
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        // Reduce v against the echelon rows.
        let q = u64::from(self.q);
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let pivot = (0..self.ambient).find(|&c| self.basis.get(i, c) != 0).unwrap();
            let f = v[pivot];
            if f != 0 {
                for c in 0..self.ambient {
                    let sub = u64::from(f) * u64::from(self.basis.get(i, c)) % q;
                    v[c] = ((u64::from(v[c]) + q - sub) % q) as u32;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Image under an invertible matrix (columns convention): rows r map to
    /// (g r^T)^T, then re-canonicalized.
    pub fn apply(&self, g: &MatrixFq) -> SubspaceBasis {
        assert_eq!(g.cols, self.ambient);
        let rows = (0..self.dim()).map(|r| g.apply(self.basis.row(r))).collect();
        SubspaceBasis::from_spanning(rows, g.rows, self.q)
    }

    /// Intersection of two subspaces of the same ambient space.
    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient);
        // v in both spans: solve [B1^T | -B2^T] (x,y)^T = 0.
        let d1 = self.dim();
        let d2 = other.dim();
        let mut m = MatrixFq::zero(self.ambient, d1 + d2, self.q);
        for r in 0..self.ambient {
            for c in 0..d1 {
                m.set(r, c, self.basis.get(c, r));
            }
            for c in 0..d2 {
                m.set(r, d1 + c, (self.q - other.basis.get(c, r)) % self.q);
            }
        }
        let ker = m.kernel();
        let rows = (0..ker.dim())
            .map(|i| {
                let coeffs = ker.basis.row(i);
                let mut v = vec![0u32; self.ambient];
                for (c, &x) in coeffs[..d1].iter().enumerate() {
                    for a in 0..self.ambient {
                        v[a] = ((u64::from(v[a])
                            + u64::from(x) * u64::from(self.basis.get(c, a)))
                            % u64::from(self.q)) as u32;
                    }
                }
                v
            })
            .collect();
        SubspaceBasis::from_spanning(rows, self.ambient, self.q)
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        SubspaceBasis::from_spanning(rows, self.ambient, self.q)
    }
}

/// Bilinear pairing u^T J v.
pub fn pair(u: &[u32], j: &MatrixFq, v: &[u32]) -> u32 {
    let jv = j.apply(v);
    let q = u64::from(j.q);
    let mut acc = 0u64;
    for (a, b) in u.iter().zip(&jv) {
        acc = (acc + u64::from(*a) * u64::from(*b)) % q;
    }
    acc as u32
}

/// Form-perpendicular {w : u J w^T = 0 for all u in U}; requires J invertible.
pub fn perp(u: &SubspaceBasis, j: &MatrixFq) -> Result<SubspaceBasis> {
    if j.q != u.q {
        return Err(Error::ModulusMismatch { left: u.q, right: j.q });
    }
    if j.rows != u.ambient || j.inverse().is_none() {
        return Err(Error::SingularGram);
    }
    Ok(u.basis().mul(j).kernel())
}

/// True iff the form vanishes on all basis pairs of U (including diagonal;
/// in odd characteristic this settles the quadratic form too).
pub fn is_isotropic(u: &SubspaceBasis, j: &MatrixFq) -> bool {
    let rows = u.basis_rows();
    rows.iter()
        .all(|a| rows.iter().all(|b| pair(a, j, b) == 0))
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= u128::pow(q as u128, n - i) - 1;
        den *= u128::pow(q as u128, i + 1) - 1;
    }
    num / den
}

/// All vectors of F_q^n in lexicographic order.
pub fn all_vectors(n: usize, q: u32) -> Vec<Vec<u32>> {
    let total = (q as u64).pow(n as u32) as usize;
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % q as usize) as u32;
            idx /= q as usize;
        }
        out.push(v);
    }
    out
}
