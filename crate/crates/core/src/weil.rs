//! Schroedinger-model Weil operators for Sp_2n(q), dual-pair embeddings,
//! and representation rank via the Siegel radical.
//!
//! This module works in the standard symplectic convention
//! `J = [[0, I], [-I, 0]]` (blocks of size n).  Operators act on functions
//! F_q^n -> C.  Generators:
//!
//! * `u(B) = [[I, B], [0, I]]`, B symmetric:   f(x) -> psi(x^T B x) f(x)
//! * `m(a) = diag(a, a^-T)`:                   f(x) -> leg(det a) f(a^T x)
//! * `w = [[0, I], [-I, 0]]`:                  normalized Fourier transform
//!   with kernel psi(2 x^T y) and constant (sum_t psi(-t^2))^-n.
//!
//! With these constants the assignment extends multiplicatively to the whole
//! group; every element is reached through at most six generator factors via
//! the big-cell factorization g = u(S1) m(a) w u(S2), padded by one Fourier
//! conjugation when the lower-left block is singular.  The multiplicativity
//! and unitarity tests pin the normalization.

use crate::classfn::{ClassFunction, PairClassFunction, C64};
use crate::error::{Error, Result};
use crate::geometry::{isometry_group, FormKind, FormSpec, GROUP_SCALE_GUARD};
use crate::gfq::{all_vectors, legendre, pair, MatrixFq};
use crate::group::Group;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Largest Schroedinger-model dimension q^n we are willing to build.
pub const OPERATOR_DIM_GUARD: u64 = 128;

/// The fixed nontrivial additive character psi(x) = exp(2 pi i x / q).
#[derive(Clone, Copy, Debug)]
pub struct AdditiveChar {
    pub q: u32,
}

impl AdditiveChar {
    pub fn new(q: u32) -> Self {
        AdditiveChar { q }
    }

    pub fn eval(&self, x: u32) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * f64::from(x % self.q) / f64::from(self.q))
    }

    /// Quadratic Gauss sum sum_t psi(c t^2).
    pub fn gauss_sum(&self, c: u32) -> C64 {
        (0..self.q).map(|t| self.eval(c * t * t)).sum()
    }
}

/// Dense complex matrix, just big enough for q^n <= 128.
#[derive(Clone, Debug)]
pub struct CMat {
    pub n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.n + c] = v;
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// max |self - rhs| entrywise.
    pub fn distance(&self, rhs: &CMat) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Gram matrix [[0, I], [-I, 0]].
pub fn standard_symplectic_gram(n: usize, q: u32) -> MatrixFq {
    let mut j = MatrixFq::zero(2 * n, 2 * n, q);
    for i in 0..n {
        j.set(i, n + i, 1);
        j.set(n + i, i, q - 1);
    }
    j
}

/// Isometry group of the standard symplectic Gram matrix, enumerated.
pub fn standard_symplectic_group(n: u32, q: u32) -> Result<Group> {
    let order = FormSpec::symplectic(n, q)?.group_order();
    if order > GROUP_SCALE_GUARD {
        return Err(Error::ScaleGuard { estimate: order, limit: GROUP_SCALE_GUARD });
    }
    let elements = isometry_group(&standard_symplectic_gram(n as usize, q))?;
    if elements.len() as u128 != order {
        return Err(Error::Internal("symplectic enumeration is incomplete".into()));
    }
    Group::from_elements(elements)
}

pub fn is_standard_symplectic(g: &MatrixFq) -> bool {
    if g.rows != g.cols || g.rows % 2 != 0 {
        return false;
    }
    let j = standard_symplectic_gram(g.rows / 2, g.q);
    g.transpose().mul(&j).mul(g) == j
}

/// The Siegel unipotent u(B) = [[I, B], [0, I]].
pub fn siegel_unipotent(b: &MatrixFq) -> MatrixFq {
    let n = b.rows;
    let mut m = MatrixFq::identity(2 * n, b.q);
    for r in 0..n {
        for c in 0..n {
            m.set(r, n + c, b.get(r, c));
        }
    }
    m
}

/// All symmetric n x n matrices over F_q in a fixed order.
pub fn symmetric_matrices(n: usize, q: u32) -> Vec<MatrixFq> {
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
    let total = (q as u64).pow(slots.len() as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut b = MatrixFq::zero(n, n, q);
        for &(r, c) in &slots {
            let v = (idx % q as u64) as u32;
            idx /= q as u64;
            b.set(r, c, v);
            b.set(c, r, v);
        }
        out.push(b);
    }
    out
}

/// Elementary factors of the Weil-operator factorization.
#[derive(Clone, Debug)]
enum SpFactor {
    Upper(MatrixFq),
    Levi(MatrixFq),
    Fourier,
    FourierInv,
}

fn block(g: &MatrixFq, br: usize, bc: usize) -> MatrixFq {
    let n = g.rows / 2;
    let mut out = MatrixFq::zero(n, n, g.q);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, g.get(br * n + r, bc * n + c));
        }
    }
    out
}

fn fourier_matrix(n: usize, q: u32) -> MatrixFq {
    let mut w = MatrixFq::zero(2 * n, 2 * n, q);
    for i in 0..n {
        w.set(i, n + i, 1);
        w.set(n + i, i, q - 1);
    }
    w
}

fn levi_matrix(a: &MatrixFq) -> MatrixFq {
    let n = a.rows;
    let inv_t = a.inverse().expect("Levi block invertible").transpose();
    let mut m = MatrixFq::zero(2 * n, 2 * n, a.q);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, a.get(r, c));
            m.set(n + r, n + c, inv_t.get(r, c));
        }
    }
    m
}

/// Factors g into Siegel generators.  The product of the returned factors
/// (in order) equals g; this is re-checked before returning.
fn factor_symplectic(g: &MatrixFq) -> Result<Vec<SpFactor>> {
    if !is_standard_symplectic(g) {
        return Err(Error::NotAnIsometry);
    }
    let n = g.rows / 2;
    let q = g.q;
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = block(g, 1, 0);
    let factors = if c.rref().rank == n {
        big_cell_factors(g)?
    } else if c == MatrixFq::zero(n, n, q) {
        parabolic_factors(g)?
    } else {
        // Push into the big cell: find symmetric S with C S + D invertible,
        // then g = [big cell of g u(S) w] w^-1 u(-S).
        let d = block(g, 1, 1);
        let s = find_regularizing_shift(&c, &d)
            .ok_or_else(|| Error::Internal("no regularizing shift found".into()))?;
        let h = g.mul(&siegel_unipotent(&s)).mul(&fourier_matrix(n, q));
        let mut fs = big_cell_factors(&h)?;
        fs.push(SpFactor::FourierInv);
        fs.push(SpFactor::Upper(s.neg()));
        fs
    };
    // Defensive recomposition check.
    let mut acc = MatrixFq::identity(2 * n, q);
    for f in &factors {
        let m = match f {
            SpFactor::Upper(s) => siegel_unipotent(s),
            SpFactor::Levi(a) => levi_matrix(a),
            SpFactor::Fourier => fourier_matrix(n, q),
            SpFactor::FourierInv => fourier_matrix(n, q)
                .inverse()
                .expect("Fourier matrix invertible"),
        };
        acc = acc.mul(&m);
    }
    if acc != *g {
        return Err(Error::Internal("factorization does not recompose".into()));
    }
    Ok(factors)
}

/// g = u(A C^-1) m(-C^-T) w u(C^-1 D) when the lower-left block C is
/// invertible.
fn big_cell_factors(g: &MatrixFq) -> Result<Vec<SpFactor>> {
    let q = g.q;
    let a = block(g, 0, 0);
    let c = block(g, 1, 0);
    let d = block(g, 1, 1);
    let c_inv = c.inverse().ok_or_else(|| Error::Internal("big cell needs invertible C".into()))?;
    let s1 = a.mul(&c_inv);
    let s2 = c_inv.mul(&d);
    let levi = c.transpose().inverse().unwrap().neg();
    if !s1.is_symmetric() || !s2.is_symmetric() {
        return Err(Error::Internal("cell blocks are not symmetric".into()));
    }
    let _ = q;
    Ok(vec![
        SpFactor::Upper(s1),
        SpFactor::Levi(levi),
        SpFactor::Fourier,
        SpFactor::Upper(s2),
    ])
}

/// g = u(B A^T) m(A) for Siegel-parabolic elements (C = 0).
fn parabolic_factors(g: &MatrixFq) -> Result<Vec<SpFactor>> {
    let a = block(g, 0, 0);
    let b = block(g, 0, 1);
    if a.inverse().is_none() {
        return Err(Error::Internal("parabolic element with singular A block".into()));
    }
    let s = b.mul(&a.transpose());
    if !s.is_symmetric() {
        return Err(Error::Internal("parabolic cell block is not symmetric".into()));
    }
    Ok(vec![SpFactor::Upper(s), SpFactor::Levi(a)])
}

/// Deterministic search for symmetric S with C S + D invertible: zero, then
/// diagonal matrices, then all symmetric matrices.
fn find_regularizing_shift(c: &MatrixFq, d: &MatrixFq) -> Option<MatrixFq> {
    let n = c.rows;
    let q = c.q;
    let works = |s: &MatrixFq| c.mul(s).add(d).inverse().is_some();
    let zero = MatrixFq::zero(n, n, q);
    if works(&zero) {
        return Some(zero);
    }
    let total = (q as u64).pow(n as u32);
    for mut idx in 0..total {
        let mut s = MatrixFq::zero(n, n, q);
        for i in 0..n {
            s.set(i, i, (idx % q as u64) as u32);
            idx /= q as u64;
        }
        if works(&s) {
            return Some(s);
        }
    }
    symmetric_matrices(n, q).into_iter().find(works)
}

/// Point indexing of F_q^n, lexicographic.
fn point_index(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

/// Context for building Weil operators on Sp_2n(q).
pub struct WeilModel {
    pub n: usize,
    pub q: u32,
    psi: AdditiveChar,
    points: Vec<Vec<u32>>,
    /// Normalizing constant per Fourier coordinate: sum_t psi(-t^2).
    gamma_bar: C64,
}

impl WeilModel {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let dim = (q as u64).checked_pow(n as u32).filter(|&d| d <= OPERATOR_DIM_GUARD);
        if dim.is_none() {
            return Err(Error::ScaleGuard {
                estimate: (q as u128).pow(n as u32),
                limit: OPERATOR_DIM_GUARD as u128,
            });
        }
        let psi = AdditiveChar::new(q);
        Ok(WeilModel {
            n,
            q,
            psi,
            points: all_vectors(n, q),
            gamma_bar: AdditiveChar::new(q).gauss_sum(q - 1),
        })
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    fn op_upper(&self, s: &MatrixFq) -> CMat {
        let mut m = CMat::zeros(self.dim());
        for (i, x) in self.points.iter().enumerate() {
            let phase = pair(x, s, x);
            m.set(i, i, self.psi.eval(phase));
        }
        m
    }

    fn op_levi(&self, a: &MatrixFq) -> CMat {
        let sign = f64::from(legendre(a.det(), self.q));
        let at = a.transpose();
        let mut m = CMat::zeros(self.dim());
        for (i, x) in self.points.iter().enumerate() {
            let y = at.apply(x);
            m.set(i, point_index(&y, self.q), C64::new(sign, 0.0));
        }
        m
    }

    fn op_fourier(&self) -> CMat {
        let norm = (C64::new(1.0, 0.0) / self.gamma_bar).powu(self.n as u32);
        let mut m = CMat::zeros(self.dim());
        for (i, x) in self.points.iter().enumerate() {
            for (j, y) in self.points.iter().enumerate() {
                let mut dot = 0u64;
                for (a, b) in x.iter().zip(y) {
                    dot += u64::from(*a) * u64::from(*b);
                }
                let phase = ((2 * dot) % u64::from(self.q)) as u32;
                m.set(i, j, norm * self.psi.eval(phase));
            }
        }
        m
    }

    /// The Weil operator of a standard-symplectic g.
    pub fn operator(&self, g: &MatrixFq) -> Result<CMat> {
        if g.rows != 2 * self.n {
            return Err(Error::Shape(format!("expected size {}", 2 * self.n)));
        }
        let factors = factor_symplectic(g)?;
        let mut acc = CMat::identity(self.dim());
        let fourier = self.op_fourier();
        for f in &factors {
            let op = match f {
                SpFactor::Upper(s) => self.op_upper(s),
                SpFactor::Levi(a) => self.op_levi(a),
                SpFactor::Fourier => fourier.clone(),
                SpFactor::FourierInv => fourier.adjoint(),
            };
            acc = acc.mul(&op);
        }
        Ok(acc)
    }

    /// Trace of the Weil operator.
    pub fn character_value(&self, g: &MatrixFq) -> Result<C64> {
        Ok(self.operator(g)?.trace())
    }
}

/// Optional linear-character twist on the orthogonal member of a pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub enum Twist {
    #[default]
    Trivial,
    /// Multiply by the determinant character of the orthogonal member.
    DetOrthogonal,
}

/// The flat (Gerardin-normalized) twist on the orthogonal member of the
/// pair (Sp_2m, O): the determinant character to the power m.  With this
/// normalization the coinvariant decompositions hold in their plain form.
pub fn flat_twist(m: u32) -> Twist {
    if m % 2 == 1 {
        Twist::DetOrthogonal
    } else {
        Twist::Trivial
    }
}

impl Twist {
    fn value(&self, orth_element: &MatrixFq) -> f64 {
        match self {
            Twist::Trivial => 1.0,
            Twist::DetOrthogonal => {
                if orth_element.rows == 0 || orth_element.det() == 1 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// A symplectic-orthogonal dual pair (Sp_2m, O^eps_2n') embedded in
/// Sp_{2m 2n'}(q), with a change of basis into standard symplectic
/// coordinates so that Weil operators can be evaluated on embedded elements.
/// The symplectic member lives in standard coordinates (the same
/// realization used for Siegel-radical ranks); the orthogonal member uses
/// the antidiagonal convention of the geometry module.
pub struct DualPair {
    /// Rank of the symplectic member (dimension 2m).
    pub m: u32,
    pub orth: FormSpec,
    pub q: u32,
    /// Half-dimension of the big symplectic space.
    pub big_n: usize,
    sp_dim: usize,
    basis: MatrixFq,
    basis_inv: MatrixFq,
    pub model: WeilModel,
}

impl DualPair {
    pub fn new(m: u32, orth_kind: FormKind, n_prime: u32, q: u32) -> Result<Self> {
        if orth_kind == FormKind::Symplectic {
            return Err(Error::Shape("second member must be orthogonal".into()));
        }
        let orth = FormSpec::new(orth_kind, n_prime, q)?;
        let big_n = (m as usize) * orth.dim();
        let model = WeilModel::new(big_n, q)?;
        let j_big = standard_symplectic_gram(m as usize, q).kron(&orth.gram());
        let basis = symplectic_basis(&j_big)?;
        let basis_inv = basis
            .inverse()
            .ok_or_else(|| Error::Internal("symplectic basis is singular".into()))?;
        Ok(DualPair { m, orth, q, big_n, sp_dim: 2 * m as usize, basis, basis_inv, model })
    }

    /// Image of (g, g') in standard symplectic coordinates.
    pub fn embed(&self, g: &MatrixFq, g_prime: &MatrixFq) -> MatrixFq {
        let big = g.kron(&MatrixFq::identity(self.orth.dim(), self.q)).mul(
            &MatrixFq::identity(self.sp_dim, self.q).kron(g_prime),
        );
        self.basis_inv.mul(&big).mul(&self.basis)
    }

    pub fn embed_left(&self, g: &MatrixFq) -> MatrixFq {
        self.embed(g, &MatrixFq::identity(self.orth.dim(), self.q))
    }

    pub fn embed_right(&self, g_prime: &MatrixFq) -> MatrixFq {
        self.embed(&MatrixFq::identity(self.sp_dim, self.q), g_prime)
    }

    /// Character of the (possibly twisted) Weil representation restricted to
    /// the pair, as a class function on G x G'.
    pub fn character(&self, gl: &Group, gr: &Group, twist: Twist) -> Result<PairClassFunction> {
        let pairs: Vec<(usize, usize)> = (0..gl.num_classes())
            .flat_map(|a| (0..gr.num_classes()).map(move |b| (a, b)))
            .collect();
        let values: Result<Vec<C64>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let g = gl.element(gl.classes[a].rep);
                let gp = gr.element(gr.classes[b].rep);
                let tr = self.model.character_value(&self.embed(g, gp))?;
                Ok(tr * twist.value(gp))
            })
            .collect();
        let values = values?;
        let mut out = PairClassFunction::zero(gl, gr);
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            out.values[a][b] = values[idx];
        }
        Ok(out)
    }
}

/// A symplectic basis for an arbitrary nondegenerate antisymmetric Gram
/// matrix: returns C with C^T J C = [[0, I], [-I, 0]].
pub fn symplectic_basis(j: &MatrixFq) -> Result<MatrixFq> {
    let d = j.rows;
    let q = j.q;
    if d % 2 != 0 || !is_antisym(j) {
        return Err(Error::Shape("Gram matrix is not antisymmetric".into()));
    }
    if d == 0 {
        return Ok(MatrixFq::identity(0, q));
    }
    if j.inverse().is_none() {
        return Err(Error::SingularGram);
    }
    let mut remaining = crate::gfq::SubspaceBasis::full(d, q);
    let mut es: Vec<Vec<u32>> = Vec::new();
    let mut fs: Vec<Vec<u32>> = Vec::new();
    while remaining.dim() > 0 {
        let rows = remaining.basis_rows();
        let u = rows[0].clone();
        let vrow = rows
            .iter()
            .find(|v| pair(&u, j, v) != 0)
            .ok_or(Error::SingularGram)?;
        let c = pair(&u, j, vrow);
        let cinv = crate::gfq::inv_mod(c, q);
        let v: Vec<u32> = vrow
            .iter()
            .map(|&x| ((u64::from(x) * u64::from(cinv)) % u64::from(q)) as u32)
            .collect();
        // Cut down to the orthogonal complement of <u, v> inside remaining.
        let mut m = MatrixFq::zero(2, d, q);
        for (cix, val) in jrow(&u, j).into_iter().enumerate() {
            m.set(0, cix, val);
        }
        for (cix, val) in jrow(&v, j).into_iter().enumerate() {
            m.set(1, cix, val);
        }
        let ker = m.kernel();
        remaining = remaining.intersect(&ker);
        es.push(u);
        fs.push(v);
    }
    let n = es.len();
    let mut cmat = MatrixFq::zero(d, d, q);
    for (i, e) in es.iter().enumerate() {
        for r in 0..d {
            cmat.set(r, i, e[r]);
        }
    }
    for (i, f) in fs.iter().enumerate() {
        for r in 0..d {
            cmat.set(r, n + i, f[r]);
        }
    }
    let target = standard_symplectic_gram(n, q);
    if cmat.transpose().mul(j).mul(&cmat) != target {
        return Err(Error::Internal("symplectic basis reduction failed".into()));
    }
    Ok(cmat)
}

fn is_antisym(j: &MatrixFq) -> bool {
    (0..j.rows).all(|r| (0..j.cols).all(|c| (j.get(r, c) + j.get(c, r)) % j.q == 0))
}

fn jrow(v: &[u32], j: &MatrixFq) -> Vec<u32> {
    // v^T J as a row vector.
    let q = u64::from(j.q);
    (0..j.cols)
        .map(|c| {
            let mut acc = 0u64;
            for r in 0..j.rows {
                acc = (acc + u64::from(v[r]) * u64::from(j.get(r, c))) % q;
            }
            acc as u32
        })
        .collect()
}

/// Congruence class of a symmetric matrix: rank and discriminant sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SymClass {
    pub rank: u32,
    /// +1 or -1; rank 0 is (0, +1) by convention.
    pub sign: i8,
}

pub fn sym_class(a: &MatrixFq) -> Result<SymClass> {
    if !a.is_symmetric() {
        return Err(Error::Shape("matrix is not symmetric".into()));
    }
    let q = a.q;
    let n = a.rows;
    let mut m = a.clone();
    let mut diag: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&_first) = active.first() {
        // Find a nonzero diagonal entry among active indices.
        let pivot = active.iter().copied().find(|&i| m.get(i, i) != 0);
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // All diagonal entries vanish; find an off-diagonal entry and
                // fold it onto the diagonal (characteristic is odd).
                let mut found = None;
                'outer: for &i in &active {
                    for &j in &active {
                        if i != j && m.get(i, j) != 0 {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                for c in 0..n {
                    let v = (m.get(i, c) + m.get(j, c)) % q;
                    m.set(i, c, v);
                }
                for r in 0..n {
                    let v = (m.get(r, i) + m.get(r, j)) % q;
                    m.set(r, i, v);
                }
                i
            }
        };
        let d = m.get(pivot, pivot);
        diag.push(d);
        active.retain(|&i| i != pivot);
        let dinv = u64::from(crate::gfq::inv_mod(d, q));
        let others: Vec<usize> = active.clone();
        for &r in &others {
            if m.get(r, pivot) == 0 {
                continue;
            }
            let f = u64::from(m.get(r, pivot)) * dinv % u64::from(q);
            for c in 0..n {
                let v = (u64::from(m.get(r, c))
                    + (u64::from(q) - f) * u64::from(m.get(pivot, c)))
                    % u64::from(q);
                m.set(r, c, v as u32);
            }
            for rr in 0..n {
                let v = (u64::from(m.get(rr, r))
                    + (u64::from(q) - f) * u64::from(m.get(rr, pivot)))
                    % u64::from(q);
                m.set(rr, r, v as u32);
            }
        }
    }
    let rank = diag.len() as u32;
    if rank == 0 {
        return Ok(SymClass { rank: 0, sign: 1 });
    }
    let disc = diag.iter().fold(1u64, |acc, &d| acc * u64::from(d) % u64::from(q));
    Ok(SymClass { rank, sign: legendre(disc as u32, q) as i8 })
}

/// Multiplicities of the rank classes in the restriction of a character of
/// Sp_2n(q) (standard coordinates) to the Siegel radical.  The returned map
/// sends (r, sign) to the common multiplicity of psi_A over the class;
/// non-constancy beyond the tolerance is an error.
pub fn siegel_multiplicities(
    chi: &ClassFunction,
    g: &Group,
    n: usize,
    tol: f64,
) -> Result<BTreeMap<SymClass, f64>> {
    let q = g.q;
    let psi = AdditiveChar::new(q);
    let sym = symmetric_matrices(n, q);
    let group_size = sym.len() as f64;
    // chi on the radical, indexed like `sym`.
    let chi_on_n: Vec<C64> = sym
        .iter()
        .map(|b| {
            let u = siegel_unipotent(b);
            let idx = g
                .lookup(&u)
                .ok_or_else(|| Error::Internal("radical element missing from group".into()))?;
            Ok(chi.eval(g, idx))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut per_class: BTreeMap<SymClass, Vec<f64>> = BTreeMap::new();
    for a in &sym {
        let class = sym_class(a)?;
        // m_A = (1/|N|) sum_B chi(u(B)) conj(psi(tr(AB))).
        let mut acc = C64::new(0.0, 0.0);
        for (b, chi_b) in sym.iter().zip(&chi_on_n) {
            let tr_ab = trace_product(a, b);
            acc += chi_b * psi.eval(tr_ab).conj();
        }
        let m = acc / group_size;
        if m.im.abs() > tol {
            return Err(Error::NonIntegerMultiplicity { value: m.im, deviation: m.im.abs() });
        }
        per_class.entry(class).or_default().push(m.re);
    }
    let mut out = BTreeMap::new();
    for (class, vals) in per_class {
        let first = vals[0];
        for &v in &vals {
            if (v - first).abs() > tol {
                return Err(Error::NonConstantMultiplicity(format!(
                    "class (r={}, sign={}): {v} vs {first}",
                    class.rank, class.sign
                )));
            }
        }
        out.insert(class, first);
    }
    Ok(out)
}

fn trace_product(a: &MatrixFq, b: &MatrixFq) -> u32 {
    let q = u64::from(a.q);
    let n = a.rows;
    let mut acc = 0u64;
    for r in 0..n {
        for c in 0..n {
            acc = (acc + u64::from(a.get(r, c)) * u64::from(b.get(c, r))) % q;
        }
    }
    acc as u32
}

/// Rank of a character: the largest r with a nonvanishing multiplicity in
/// the Siegel restriction.
pub fn character_rank(chi: &ClassFunction, g: &Group, n: usize, tol: f64) -> Result<u32> {
    let mults = siegel_multiplicities(chi, g, n, tol)?;
    Ok(mults
        .iter()
        .filter(|(_, &m)| m.abs() > tol)
        .map(|(c, _)| c.rank)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn additive_character_basics() {
        let psi = AdditiveChar::new(3);
        assert!((psi.eval(0) - C64::new(1.0, 0.0)).norm() < 1e-12);
        for a in 0..3 {
            for b in 0..3 {
                assert!((psi.eval(a) * psi.eval(b) - psi.eval(a + b)).norm() < 1e-12);
            }
        }
        let total: C64 = (0..3).map(|x| psi.eval(x)).sum();
        assert!(total.norm() < 1e-12);
        // |gauss sum|^2 = q.
        assert!((psi.gauss_sum(1).norm_sqr() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn identity_operator_and_diagonal_unipotents() {
        let model = WeilModel::new(2, 3).unwrap();
        let id = MatrixFq::identity(4, 3);
        let op = model.operator(&id).unwrap();
        assert!(op.distance(&CMat::identity(9)) < 1e-12);
        assert!((model.character_value(&id).unwrap() - C64::new(9.0, 0.0)).norm() < 1e-9);
        for b in symmetric_matrices(2, 3) {
            let op = model.operator(&siegel_unipotent(&b)).unwrap();
            let psi = AdditiveChar::new(3);
            for (i, x) in all_vectors(2, 3).iter().enumerate() {
                for (j, _) in all_vectors(2, 3).iter().enumerate() {
                    let expect = if i == j {
                        psi.eval(pair(x, &b, x))
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    assert!((op.get(i, j) - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn multiplicativity_exhaustive_sp2() {
        let g = standard_symplectic_group(1, 3).unwrap();
        let model = WeilModel::new(1, 3).unwrap();
        let ops: Vec<CMat> =
            g.elements().iter().map(|e| model.operator(e).unwrap()).collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let prod = ops[a].mul(&ops[b]);
                let direct = &ops[g.mul(a, b)];
                assert!(
                    prod.distance(direct) < 1e-9,
                    "multiplicativity fails at ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn unitarity_exhaustive_sp2() {
        let g = standard_symplectic_group(1, 3).unwrap();
        let model = WeilModel::new(1, 3).unwrap();
        let id = CMat::identity(3);
        for e in g.elements() {
            let op = model.operator(e).unwrap();
            assert!(op.mul(&op.adjoint()).distance(&id) < 1e-9);
        }
    }

    #[test]
    fn multiplicativity_random_sp4() {
        let g = standard_symplectic_group(2, 3).unwrap();
        let model = WeilModel::new(2, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let indices: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            let &a = indices.choose(&mut rng).unwrap();
            let &b = indices.choose(&mut rng).unwrap();
            let oa = model.operator(g.element(a)).unwrap();
            let ob = model.operator(g.element(b)).unwrap();
            let direct = model.operator(g.element(g.mul(a, b))).unwrap();
            assert!(oa.mul(&ob).distance(&direct) < 1e-9);
        }
    }

    #[test]
    fn multiplicativity_exhaustive_sp2_q5() {
        let g = standard_symplectic_group(1, 5).unwrap();
        assert_eq!(g.order(), 120);
        let model = WeilModel::new(1, 5).unwrap();
        let ops: Vec<CMat> =
            g.elements().iter().map(|e| model.operator(e).unwrap()).collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert!(ops[a].mul(&ops[b]).distance(&ops[g.mul(a, b)]) < 1e-9);
            }
        }
    }

    #[test]
    fn small_theta_decomposition_at_q5() {
        use crate::chartab::dixon_schneider;
        let gl = standard_symplectic_group(1, 5).unwrap();
        let gr = FormSpec::new(FormKind::OrthogonalPlus, 1, 5)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let tab_l = dixon_schneider(&gl).unwrap();
        let tab_r = dixon_schneider(&gr).unwrap();
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 5).unwrap();
        let d = crate::duality::theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, Twist::Trivial, 1e-6)
            .unwrap();
        assert_eq!(crate::duality::dimension_bookkeeping(&d, &tab_l, &tab_r), 25);
        assert!(crate::duality::parseval_defect(&d, &gl, &gr) < 1e-6);
    }

    #[test]
    fn trace_magnitude_counts_fixed_space() {
        // |tr w(g)|^2 = q^{dim ker(g - 1)}.
        let g = standard_symplectic_group(1, 3).unwrap();
        let model = WeilModel::new(1, 3).unwrap();
        for e in g.elements() {
            let tr = model.character_value(e).unwrap();
            let mut shifted = e.clone();
            for i in 0..2 {
                let v = (shifted.get(i, i) + 3 - 1) % 3;
                shifted.set(i, i, v);
            }
            let fix_dim = 2 - shifted.rref().rank;
            assert!((tr.norm_sqr() - 3f64.powi(fix_dim as i32)).abs() < 1e-6);
        }
    }

    #[test]
    fn dual_pair_images_commute_and_are_symplectic() {
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 3).unwrap();
        let sp = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let orth = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        for &a in &sp.generators {
            for &b in &orth.generators {
                let left = dp.embed_left(sp.element(a));
                let right = dp.embed_right(orth.element(b));
                assert!(is_standard_symplectic(&left));
                assert!(is_standard_symplectic(&right));
                assert_eq!(left.mul(&right), right.mul(&left));
            }
        }
    }

    #[test]
    fn embedded_centralizer_contains_the_partner() {
        // Brute force over Sp_4(3): everything commuting with the embedded
        // O_2^+(3) includes the embedded Sp_2(3).
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 3).unwrap();
        let sp4 = standard_symplectic_group(2, 3).unwrap();
        let orth = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let orth_images: Vec<MatrixFq> =
            orth.generators.iter().map(|&b| dp.embed_right(orth.element(b))).collect();
        let mut centralizer = Vec::new();
        for e in sp4.elements() {
            if orth_images.iter().all(|m| e.mul(m) == m.mul(e)) {
                centralizer.push(e.key());
            }
        }
        let sp2 = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        for e in sp2.elements() {
            let img = dp.embed_left(e);
            assert!(centralizer.contains(&img.key()));
        }
    }

    #[test]
    fn weil_character_dimension_and_class_constancy() {
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 3).unwrap();
        let sp = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let orth = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let chi = dp.character(&sp, &orth, Twist::Trivial).unwrap();
        let id_pair = chi.eval(&sp, &orth, sp.identity_index(), orth.identity_index());
        assert!((id_pair - C64::new(9.0, 0.0)).norm() < 1e-9);
        // Class-function property: direct trace at non-representative
        // elements agrees with the stored class value.
        for a in 0..sp.order() {
            for &b in orth.generators.iter() {
                let tr = dp
                    .model
                    .character_value(&dp.embed(sp.element(a), orth.element(b)))
                    .unwrap();
                assert!((tr - chi.eval(&sp, &orth, a, b)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn sym_class_examples() {
        let zero = MatrixFq::zero(2, 2, 3);
        assert_eq!(sym_class(&zero).unwrap(), SymClass { rank: 0, sign: 1 });
        let one = MatrixFq::from_rows(vec![vec![1]], 3);
        assert_eq!(sym_class(&one).unwrap(), SymClass { rank: 1, sign: 1 });
        let two = MatrixFq::from_rows(vec![vec![2]], 3);
        assert_eq!(sym_class(&two).unwrap(), SymClass { rank: 1, sign: -1 });
        // Congruence invariance over random changes of basis.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let gl = crate::geometry::general_linear(2, 3);
        let sym = symmetric_matrices(2, 3);
        for _ in 0..200 {
            let a = sym.choose(&mut rng).unwrap();
            let p = gl.choose(&mut rng).unwrap();
            let congruent = p.transpose().mul(a).mul(p);
            assert_eq!(sym_class(a).unwrap(), sym_class(&congruent).unwrap());
        }
    }

    #[test]
    fn siegel_restriction_of_simple_characters() {
        let g = standard_symplectic_group(2, 3).unwrap();
        let trivial = ClassFunction::trivial(&g);
        let mults = siegel_multiplicities(&trivial, &g, 2, 1e-9).unwrap();
        for (class, m) in &mults {
            let expect = if class.rank == 0 { 1.0 } else { 0.0 };
            assert!((m - expect).abs() < 1e-9);
        }
        assert_eq!(character_rank(&trivial, &g, 2, 1e-6).unwrap(), 0);
        // The regular representation restricted to the radical weights every
        // character of N equally.
        let reg = ClassFunction::from_element_values(&g, |e| {
            if e == g.identity_index() {
                C64::new(g.order() as f64, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let mults = siegel_multiplicities(&reg, &g, 2, 1e-6).unwrap();
        let expect = g.order() as f64 / 27.0;
        for (_, m) in &mults {
            assert!((m - expect).abs() < 1e-6);
        }
    }

    #[test]
    fn weil_character_of_sp4_has_rank_one() {
        let g = standard_symplectic_group(2, 3).unwrap();
        let model = WeilModel::new(2, 3).unwrap();
        let chi = ClassFunction {
            values: g
                .classes
                .iter()
                .map(|c| model.character_value(g.element(c.rep)).unwrap())
                .collect(),
        };
        assert_eq!(character_rank(&chi, &g, 2, 1e-6).unwrap(), 1);
    }
}
