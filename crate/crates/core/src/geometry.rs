//! Finite symplectic and even-orthogonal groups at desk scale.
//!
//! Conventions, fixed once for the whole crate:
//! * vectors are columns, an isometry satisfies `g^T J g = J`;
//! * the space of `G_n` has ordered basis `(x_1..x_n, x'_n..x'_1)`, so the
//!   Gram matrix is built from antidiagonal blocks `K` and the parabolic
//!   `P_k`, the Levi embedding `m(a, A) = diag(a, A, K a^-T K)` and the
//!   orbit representatives `V_i` are usable literally;
//! * in a split space `W = W_1 + W_2` (bases `e_*` and `f_*`) the combined
//!   basis is `(e_1..e_{n1}, f_1..f_{n2}, f'_{n2}..f'_1, e'_{n1}..e'_1)`,
//!   which keeps the combined Gram in the same antidiagonal shape and makes
//!   the split maximal isotropic `X_n` the span of the first `n` vectors.

use crate::error::{Error, Result};
use crate::gfq::{
    is_isotropic, least_non_residue, pair, perp, MatrixFq, SubspaceBasis,
};
use crate::group::Group;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Isometry-group enumeration guard.
pub const GROUP_SCALE_GUARD: u128 = 200_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    OrthogonalPlus,
    OrthogonalMinus,
}

/// A nondegenerate form on F_q^{2n} in the fixed basis convention.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FormSpec {
    pub kind: FormKind,
    /// Witt-tower parameter; the space has dimension 2n.
    pub n: u32,
    pub q: u32,
}

impl FormSpec {
    pub fn new(kind: FormKind, n: u32, q: u32) -> Result<Self> {
        if !crate::gfq::is_odd_prime(q) {
            return Err(Error::Shape(format!("q = {q} is not an odd prime")));
        }
        Ok(FormSpec { kind, n, q })
    }

    pub fn symplectic(n: u32, q: u32) -> Result<Self> {
        FormSpec::new(FormKind::Symplectic, n, q)
    }

    pub fn dim(&self) -> usize {
        2 * self.n as usize
    }

    pub fn witt_index(&self) -> u32 {
        match self.kind {
            FormKind::Symplectic | FormKind::OrthogonalPlus => self.n,
            FormKind::OrthogonalMinus => self.n.saturating_sub(1),
        }
    }

    /// Gram matrix in the fixed basis.
    pub fn gram(&self) -> MatrixFq {
        let d = self.dim();
        let q = self.q;
        let mut j = MatrixFq::zero(d, d, q);
        match self.kind {
            FormKind::Symplectic => {
                for i in 0..self.n as usize {
                    j.set(i, d - 1 - i, 1);
                    j.set(d - 1 - i, i, q - 1);
                }
            }
            FormKind::OrthogonalPlus => {
                for i in 0..self.n as usize {
                    j.set(i, d - 1 - i, 1);
                    j.set(d - 1 - i, i, 1);
                }
            }
            FormKind::OrthogonalMinus => {
                let w = self.witt_index() as usize;
                for i in 0..w {
                    j.set(i, d - 1 - i, 1);
                    j.set(d - 1 - i, i, 1);
                }
                // Anisotropic plane diag(1, -delta) in the middle.
                let delta = least_non_residue(q);
                j.set(w, w, 1);
                j.set(w + 1, w + 1, q - delta);
            }
        }
        j
    }

    /// Classical order formula for the isometry group.
    pub fn group_order(&self) -> u128 {
        let q = self.q as u128;
        let n = self.n;
        if n == 0 {
            return 1;
        }
        match self.kind {
            FormKind::Symplectic => {
                let mut o = q.pow(n * n);
                for i in 1..=n {
                    o *= q.pow(2 * i) - 1;
                }
                o
            }
            FormKind::OrthogonalPlus | FormKind::OrthogonalMinus => {
                let eps: i128 = if self.kind == FormKind::OrthogonalPlus { 1 } else { -1 };
                let mut o = 2 * q.pow(n * (n - 1));
                o = (o as i128 * (q.pow(n) as i128 - eps)) as u128;
                for i in 1..n {
                    o *= q.pow(2 * i) - 1;
                }
                o
            }
        }
    }

    /// Full isometry group {g : g^T J g = J}, enumerated by column-by-column
    /// extension with pruning.
    pub fn enumerate_group(&self) -> Result<Group> {
        let estimate = self.group_order();
        if estimate > GROUP_SCALE_GUARD {
            return Err(Error::ScaleGuard { estimate, limit: GROUP_SCALE_GUARD });
        }
        let elements = isometry_group(&self.gram())?;
        if elements.len() as u128 != estimate {
            return Err(Error::Internal(format!(
                "enumerated {} isometries, order formula gives {estimate}",
                elements.len()
            )));
        }
        Group::from_elements(elements)
    }
}

/// All matrices preserving a nondegenerate Gram matrix, by backtracking over
/// columns.  Desk scale only; apply a guard before calling.
pub fn isometry_group(gram: &MatrixFq) -> Result<Vec<MatrixFq>> {
    let d = gram.rows;
    let q = gram.q;
    if d == 0 {
        return Ok(vec![MatrixFq::identity(0, q)]);
    }
    if gram.inverse().is_none() {
        return Err(Error::SingularGram);
    }
    let mut out = Vec::new();
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(d);
    extend_isometry(gram, &mut columns, &mut out);
    Ok(out)
}

fn extend_isometry(gram: &MatrixFq, columns: &mut Vec<Vec<u32>>, out: &mut Vec<MatrixFq>) {
    let d = gram.rows;
    let q = gram.q;
    let j = columns.len();
    if j == d {
        let mut m = MatrixFq::zero(d, d, q);
        for (c, col) in columns.iter().enumerate() {
            for r in 0..d {
                m.set(r, c, col[r]);
            }
        }
        out.push(m);
        return;
    }
    // Linear constraints  c_i^T J c_j = J_ij  for i < j.
    let mut a = MatrixFq::zero(j, d, q);
    let mut b = Vec::with_capacity(j);
    for i in 0..j {
        let row = row_times(&columns[i], gram);
        for c in 0..d {
            a.set(i, c, row[c]);
        }
        b.push(gram.get(i, j));
    }
    let particular = if j == 0 { Some(vec![0u32; d]) } else { a.solve(&b) };
    let Some(x0) = particular else { return };
    let ker = a.kernel();
    let kdim = ker.dim();
    let total = (q as u64).pow(kdim as u32);
    let need_quadratic = gram.get(j, j) != 0 || !is_antisymmetric(gram);
    for mut idx in 0..total {
        let mut cand = x0.clone();
        for kb in 0..kdim {
            let coeff = (idx % q as u64) as u32;
            idx /= q as u64;
            if coeff != 0 {
                let row = ker.basis().row(kb);
                for r in 0..d {
                    cand[r] = ((u64::from(cand[r]) + u64::from(coeff) * u64::from(row[r]))
                        % u64::from(q)) as u32;
                }
            }
        }
        if need_quadratic && pair(&cand, gram, &cand) != gram.get(j, j) {
            continue;
        }
        if !is_independent(columns, &cand, q) {
            continue;
        }
        columns.push(cand);
        extend_isometry(gram, columns, out);
        columns.pop();
    }
}

fn is_antisymmetric(j: &MatrixFq) -> bool {
    (0..j.rows).all(|r| {
        (0..j.cols).all(|c| (j.get(r, c) + j.get(c, r)) % j.q == 0)
    })
}

fn row_times(v: &[u32], m: &MatrixFq) -> Vec<u32> {
    let q = u64::from(m.q);
    (0..m.cols)
        .map(|c| {
            let mut acc = 0u64;
            for r in 0..m.rows {
                acc = (acc + u64::from(v[r]) * u64::from(m.get(r, c))) % q;
            }
            acc as u32
        })
        .collect()
}

fn is_independent(columns: &[Vec<u32>], cand: &[u32], q: u32) -> bool {
    if columns.is_empty() {
        return cand.iter().any(|&x| x != 0);
    }
    let mut rows: Vec<Vec<u32>> = columns.to_vec();
    rows.push(cand.to_vec());
    let m = MatrixFq::from_rows(rows, q);
    m.rref().rank == columns.len() + 1
}

/// All totally isotropic k-dimensional subspaces, enumerated directly as
/// reduced row echelon bases and filtered by isotropy.
pub fn isotropic_subspaces(spec: &FormSpec, k: usize) -> Result<Vec<SubspaceBasis>> {
    if k > spec.witt_index() as usize {
        return Err(Error::Shape(format!(
            "k = {k} exceeds the Witt index {}",
            spec.witt_index()
        )));
    }
    let gram = spec.gram();
    let d = spec.dim();
    let q = spec.q;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    enumerate_rref(d, q, k, 0, &mut pivots, &mut |rows| {
        let s = SubspaceBasis::from_spanning(rows.to_vec(), d, q);
        if is_isotropic(&s, &gram) {
            out.push(s);
        }
    });
    out.sort_by_key(|s| s.key());
    Ok(out)
}

/// Maximal isotropic subspaces.
pub fn lagrangians(spec: &FormSpec) -> Result<Vec<SubspaceBasis>> {
    isotropic_subspaces(spec, spec.witt_index() as usize)
}

/// Number of maximal isotropic subspaces where a product formula is known
/// (used as a completeness cross-check in tests).
pub fn maximal_isotropic_count(spec: &FormSpec) -> Option<u128> {
    let q = spec.q as u128;
    match spec.kind {
        FormKind::Symplectic => Some((1..=spec.n).map(|i| q.pow(i) + 1).product()),
        FormKind::OrthogonalPlus => Some((0..spec.n).map(|i| q.pow(i) + 1).product()),
        FormKind::OrthogonalMinus => None,
    }
}

fn enumerate_rref(
    d: usize,
    q: u32,
    k: usize,
    first_col: usize,
    pivots: &mut Vec<usize>,
    emit: &mut impl FnMut(&[Vec<u32>]),
) {
    if pivots.len() == k {
        // Fill the free entries of the echelon pattern.
        let mut free_positions = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..d {
                if !pivots.contains(&c) {
                    free_positions.push((r, c));
                }
            }
        }
        let total = (q as u64).pow(free_positions.len() as u32);
        let mut rows = vec![vec![0u32; d]; k];
        for (r, &p) in pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        for mut idx in 0..total {
            for row in rows.iter_mut() {
                for c in 0..d {
                    if !pivots.contains(&c) {
                        row[c] = 0;
                    }
                }
            }
            for &(r, c) in &free_positions {
                rows[r][c] = (idx % q as u64) as u32;
                idx /= q as u64;
            }
            emit(&rows);
        }
        return;
    }
    let remaining = k - pivots.len();
    for c in first_col..=d.saturating_sub(remaining) {
        pivots.push(c);
        enumerate_rref(d, q, k, c + 1, pivots, emit);
        pivots.pop();
    }
}

/// Index maps of the two factors of a split space into the combined basis.
pub struct SplitEmbedding {
    pub n1: u32,
    pub n2: u32,
    map1: Vec<usize>,
    map2: Vec<usize>,
}

impl SplitEmbedding {
    pub fn new(n1: u32, n2: u32) -> Self {
        let (n1u, n2u) = (n1 as usize, n2 as usize);
        let n = n1u + n2u;
        let map1 = (0..n1u).chain((0..n1u).map(|j| n + n2u + j)).collect();
        let map2 = (0..n2u).map(|i| n1u + i).chain((0..n2u).map(|j| n + j)).collect();
        SplitEmbedding { n1, n2, map1, map2 }
    }

    pub fn dim(&self) -> usize {
        2 * (self.n1 + self.n2) as usize
    }

    fn map(&self, factor: usize) -> &[usize] {
        if factor == 0 {
            &self.map1
        } else {
            &self.map2
        }
    }

    /// (x1, x2) acting diagonally on W_1 + W_2, as one big matrix.  The two
    /// index maps partition the big coordinate set, so writing both blocks
    /// covers every entry that can be nonzero.
    pub fn embed_pair(&self, x1: &MatrixFq, x2: &MatrixFq) -> MatrixFq {
        let d = self.dim();
        let mut m = MatrixFq::zero(d, d, x1.q);
        for (small, big) in [(x1, &self.map1), (x2, &self.map2)] {
            for r in 0..small.rows {
                for c in 0..small.cols {
                    m.set(big[r], big[c], small.get(r, c));
                }
            }
        }
        m
    }

    /// Restriction of a big vector to factor coordinates.
    pub fn project(&self, factor: usize, v: &[u32]) -> Vec<u32> {
        self.map(factor).iter().map(|&i| v[i]).collect()
    }

    /// Inclusion of a factor vector into the big space.
    pub fn include(&self, factor: usize, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (small, &big) in self.map(factor).iter().enumerate() {
            out[big] = v[small];
        }
        out
    }

    /// The factor W_i as a subspace of the big space.
    pub fn factor_subspace(&self, factor: usize, q: u32) -> SubspaceBasis {
        let rows = self
            .map(factor)
            .iter()
            .map(|&i| {
                let mut v = vec![0u32; self.dim()];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceBasis::from_spanning(rows, self.dim(), q)
    }
}

/// The split maximal isotropic X_n = span of the first n basis vectors.
pub fn split_lagrangian(spec: &FormSpec) -> SubspaceBasis {
    let n = spec.witt_index() as usize;
    let rows = (0..n)
        .map(|i| {
            let mut v = vec![0u32; spec.dim()];
            v[i] = 1;
            v
        })
        .collect();
    SubspaceBasis::from_spanning(rows, spec.dim(), spec.q)
}

/// The orbit representative `V_i = [[1,0],[T_i,1]]` in the combined basis of
/// a split space; `kind` selects the symplectic or orthogonal sign pattern.
pub fn v_i_matrix(n1: u32, n2: u32, i: u32, kind: FormKind, q: u32) -> Result<MatrixFq> {
    if i == 0 || i > n1.min(n2) {
        return Err(Error::Shape(format!("i = {i} out of range 1..={}", n1.min(n2))));
    }
    if kind == FormKind::OrthogonalMinus {
        return Err(Error::Shape("orbit representatives need a split form".into()));
    }
    let n = (n1 + n2) as usize;
    let (n1u, n2u, iu) = (n1 as usize, n2 as usize, i as usize);
    let mut t = MatrixFq::zero(n, n, q);
    for j in 1..=iu {
        // Graph rows pairing e_{n1-i+j} with f'_{n2-i+j} ...
        t.set(iu - j, n1u - iu + j - 1, 1);
        // ... and f_{n2-i+j} with e'_{n1-i+j}; the second K block carries
        // the minus sign in the orthogonal case.
        let sign_second = if kind == FormKind::Symplectic { 1 } else { q - 1 };
        t.set(n2u + iu - j, n - iu + j - 1, sign_second);
    }
    let mut v = MatrixFq::identity(2 * n, q);
    for r in 0..n {
        for c in 0..n {
            if t.get(r, c) != 0 {
                v.set(n + r, c, t.get(r, c));
            }
        }
    }
    Ok(v)
}

/// Orbit partition of the maximal isotropics of `W_{n1} + W_{n2}` under
/// `G_{n1} x G_{n2}`, with each orbit tagged by the matching representative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub kind: FormKind,
    pub n1: u32,
    pub n2: u32,
    pub q: u32,
    pub total_points: usize,
    pub orbits: Vec<OrbitInfo>,
    /// True when every orbit is tagged by some V_i or by the split
    /// maximal isotropic.
    pub covered: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub size: usize,
    pub tag: Option<OrbitTag>,
    /// Canonical key of the smallest member, for reproducibility.
    pub rep_key: Vec<u8>,
    /// Echelon basis rows of that representative subspace.
    pub rep_basis: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OrbitTag {
    /// Orbit of V_i X_n.
    Vi(u32),
    /// Orbit of the split maximal isotropic X_n itself.
    Split,
}

pub fn orbits_on_lagrangians(
    kind: FormKind,
    n1: u32,
    n2: u32,
    q: u32,
    g1: &Group,
    g2: &Group,
) -> Result<OrbitReport> {
    let ambient = FormSpec::new(kind, n1 + n2, q)?;
    let points = lagrangians(&ambient)?;
    let index: HashMap<Vec<u8>, usize> =
        points.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
    let emb = SplitEmbedding::new(n1, n2);
    let id1 = MatrixFq::identity(2 * n1 as usize, q);
    let id2 = MatrixFq::identity(2 * n2 as usize, q);
    let mut gens: Vec<MatrixFq> = Vec::new();
    for &g in &g1.generators {
        gens.push(emb.embed_pair(g1.element(g), &id2));
    }
    for &g in &g2.generators {
        gens.push(emb.embed_pair(&id1, g2.element(g)));
    }

    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut frontier = vec![start];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let img = points[p].apply(g);
                let j = *index
                    .get(&img.key())
                    .ok_or_else(|| Error::Internal("orbit left the point set".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }

    let mut tags: Vec<Option<OrbitTag>> = vec![None; orbits.len()];
    let xn = split_lagrangian(&ambient);
    let xn_idx = *index
        .get(&xn.key())
        .ok_or_else(|| Error::Internal("X_n is not in the point set".into()))?;
    tags[orbit_of[xn_idx]] = Some(OrbitTag::Split);
    for i in 1..=n1.min(n2) {
        let vi = v_i_matrix(n1, n2, i, kind, q)?;
        let point = xn.apply(&vi);
        let idx = *index
            .get(&point.key())
            .ok_or_else(|| Error::Internal("V_i X_n is not maximal isotropic".into()))?;
        let orbit = orbit_of[idx];
        if tags[orbit].is_some() {
            return Err(Error::Internal(format!(
                "representative V_{i} landed in an already tagged orbit"
            )));
        }
        tags[orbit] = Some(OrbitTag::Vi(i));
    }

    let infos = orbits
        .iter()
        .zip(&tags)
        .map(|(members, tag)| OrbitInfo {
            size: members.len(),
            tag: *tag,
            rep_key: points[members[0]].key(),
            rep_basis: points[members[0]].basis_rows(),
        })
        .collect::<Vec<_>>();
    let covered = tags.iter().all(|t| t.is_some());
    Ok(OrbitReport {
        kind,
        n1,
        n2,
        q,
        total_points: points.len(),
        orbits: infos,
        covered,
    })
}

/// Brute-force stabilizer of a point under the product action: all pairs
/// (x1, x2) with (x1 + x2) point = point.
pub fn stabilizer(
    point: &SubspaceBasis,
    g1: &Group,
    g2: &Group,
    n1: u32,
    n2: u32,
) -> Vec<(usize, usize)> {
    let emb = SplitEmbedding::new(n1, n2);
    let mut pairs: Vec<(usize, usize)> = (0..g1.order())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in 0..g2.order() {
                let m = emb.embed_pair(g1.element(a), g2.element(b));
                if point.apply(&m) == *point {
                    local.push((a, b));
                }
            }
            local
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// The Levi embedding m(a, A) = diag(a, A, K a^-T K) of GL_k x G_{m-k}
/// into G_m.
pub fn m_embed(a: &MatrixFq, big_a: &MatrixFq, spec: &FormSpec) -> Result<MatrixFq> {
    let k = a.rows;
    let d = spec.dim();
    if a.rows != a.cols || big_a.rows != big_a.cols || 2 * k + big_a.rows != d {
        return Err(Error::Shape("block sizes do not fit".into()));
    }
    let q = spec.q;
    let inv_t = a
        .inverse()
        .ok_or(Error::Shape("GL block is singular".into()))?
        .transpose();
    // K a^-T K reverses both indices.
    let mut m = MatrixFq::zero(d, d, q);
    for r in 0..k {
        for c in 0..k {
            m.set(r, c, a.get(r, c));
            m.set(d - 1 - r, d - 1 - c, inv_t.get(r, c));
        }
    }
    for r in 0..big_a.rows {
        for c in 0..big_a.cols {
            m.set(k + r, k + c, big_a.get(r, c));
        }
    }
    Ok(m)
}

/// Unique factorization x = m(a, A) u of an element of the parabolic P_k
/// (the stabilizer of the span of the first k basis vectors).
pub fn levi_factorization(
    x: &MatrixFq,
    k: usize,
    spec: &FormSpec,
) -> Result<(MatrixFq, MatrixFq, MatrixFq)> {
    let d = spec.dim();
    if x.rows != d || x.cols != d {
        return Err(Error::Shape("wrong ambient dimension".into()));
    }
    let blocks = [k, d - 2 * k, k];
    if !is_block_upper(x, &blocks) {
        return Err(Error::NotInParabolic);
    }
    let q = spec.q;
    let mut a = MatrixFq::zero(k, k, q);
    for r in 0..k {
        for c in 0..k {
            a.set(r, c, x.get(r, c));
        }
    }
    let mid = d - 2 * k;
    let mut big_a = MatrixFq::zero(mid, mid, q);
    for r in 0..mid {
        for c in 0..mid {
            big_a.set(r, c, x.get(k + r, k + c));
        }
    }
    let m = m_embed(&a, &big_a, spec)?;
    let u = m
        .inverse()
        .ok_or(Error::NotInParabolic)?
        .mul(x);
    if !is_block_unipotent(&u, &blocks) {
        return Err(Error::NotInParabolic);
    }
    Ok((a, big_a, u))
}

/// Block-upper-triangular test for a symmetric block splitting.
pub fn is_block_upper(x: &MatrixFq, blocks: &[usize]) -> bool {
    let starts: Vec<usize> = blocks
        .iter()
        .scan(0usize, |acc, b| {
            let s = *acc;
            *acc += b;
            Some(s)
        })
        .collect();
    let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).unwrap();
    for r in 0..x.rows {
        for c in 0..x.cols {
            if block_of(r) > block_of(c) && x.get(r, c) != 0 {
                return false;
            }
        }
    }
    true
}

/// Block-diagonal test.
pub fn is_block_diagonal(x: &MatrixFq, blocks: &[usize]) -> bool {
    let starts: Vec<usize> = blocks
        .iter()
        .scan(0usize, |acc, b| {
            let s = *acc;
            *acc += b;
            Some(s)
        })
        .collect();
    let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).unwrap();
    for r in 0..x.rows {
        for c in 0..x.cols {
            if block_of(r) != block_of(c) && x.get(r, c) != 0 {
                return false;
            }
        }
    }
    true
}

/// Block-upper with identity diagonal blocks.
pub fn is_block_unipotent(x: &MatrixFq, blocks: &[usize]) -> bool {
    if !is_block_upper(x, blocks) {
        return false;
    }
    let starts: Vec<usize> = blocks
        .iter()
        .scan(0usize, |acc, b| {
            let s = *acc;
            *acc += b;
            Some(s)
        })
        .collect();
    let block_of = |i: usize| starts.iter().rposition(|&s| s <= i).unwrap();
    for r in 0..x.rows {
        for c in 0..x.cols {
            if block_of(r) == block_of(c) {
                let expect = u32::from(r == c);
                if x.get(r, c) != expect {
                    return false;
                }
            }
        }
    }
    true
}

/// Element index lists of a standard parabolic, its Levi and its unipotent
/// radical inside an enumerated group, for a symmetric block splitting.
pub struct ParabolicElements {
    pub blocks: Vec<usize>,
    pub parabolic: Vec<usize>,
    pub levi: Vec<usize>,
    pub radical: Vec<usize>,
}

pub fn parabolic_elements(g: &Group, blocks: &[usize]) -> ParabolicElements {
    let mut parabolic = Vec::new();
    let mut levi = Vec::new();
    let mut radical = Vec::new();
    for (i, e) in g.elements().iter().enumerate() {
        if is_block_upper(e, blocks) {
            parabolic.push(i);
            if is_block_diagonal(e, blocks) {
                levi.push(i);
            }
            if is_block_unipotent(e, blocks) {
                radical.push(i);
            }
        }
    }
    ParabolicElements { blocks: blocks.to_vec(), parabolic, levi, radical }
}

/// Block splitting of the maximal parabolic P_k: (k, 2(n-k), k).
pub fn maximal_parabolic_blocks(spec: &FormSpec, k: usize) -> Vec<usize> {
    vec![k, spec.dim() - 2 * k, k]
}

/// Block splitting of the pure parabolic with Levi GL_1^r x G_{n-r}.
pub fn pure_levi_blocks(spec: &FormSpec, r: usize) -> Vec<usize> {
    let mut blocks = vec![1usize; r];
    blocks.push(spec.dim() - 2 * r);
    blocks.extend(std::iter::repeat(1).take(r));
    blocks
}

/// Descriptors of the pure Levi subgroups M_{r, n-r} = G_{n-r} x GL_1^r,
/// r = 0..=witt index.
pub struct PureLevi {
    pub r: usize,
    pub elements: ParabolicElements,
}

pub fn pure_levi_subgroups(g: &Group, spec: &FormSpec) -> Vec<PureLevi> {
    (0..=spec.witt_index() as usize)
        .map(|r| PureLevi { r, elements: parabolic_elements(g, &pure_levi_blocks(spec, r)) })
        .collect()
}

/// The triplet coordinates of a maximal isotropic of a split space:
/// `U_1 = L n W_1`, `U_2 = L n W_2`, and the graph isomorphism
/// `phi : U_1-perp/U_1 -> U_2-perp/U_2` written in canonical quotient bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triplet {
    pub u1: SubspaceBasis,
    pub u2: SubspaceBasis,
    pub phi: MatrixFq,
}

/// Canonical complement of U inside U-perp: the echelon rows of U-perp whose
/// pivots are not pivots of U.
fn quotient_basis(u: &SubspaceBasis, uperp: &SubspaceBasis) -> Vec<Vec<u32>> {
    let pivot_of = |s: &SubspaceBasis, r: usize| {
        (0..s.ambient).find(|&c| s.basis().get(r, c) != 0).unwrap()
    };
    let u_pivots: Vec<usize> = (0..u.dim()).map(|r| pivot_of(u, r)).collect();
    (0..uperp.dim())
        .filter(|&r| !u_pivots.contains(&pivot_of(uperp, r)))
        .map(|r| uperp.basis().row(r).to_vec())
        .collect()
}

/// Coordinates of v in the affine frame (quotient basis Z, modulo U).
fn quotient_coords(v: &[u32], z: &[Vec<u32>], u: &SubspaceBasis, q: u32) -> Option<Vec<u32>> {
    let n = v.len();
    let cols = z.len() + u.dim();
    let mut m = MatrixFq::zero(n, cols, q);
    for (c, zv) in z.iter().enumerate() {
        for r in 0..n {
            m.set(r, c, zv[r]);
        }
    }
    for c in 0..u.dim() {
        for r in 0..n {
            m.set(r, z.len() + c, u.basis().get(c, r));
        }
    }
    m.solve(v).map(|x| x[..z.len()].to_vec())
}

struct SplitGeometry {
    emb: SplitEmbedding,
    gram1: MatrixFq,
    gram2: MatrixFq,
    ambient: FormSpec,
}

impl SplitGeometry {
    fn new(kind: FormKind, n1: u32, n2: u32, q: u32) -> Result<Self> {
        if kind == FormKind::OrthogonalMinus {
            return Err(Error::Shape("triplet model needs a split form".into()));
        }
        let spec1 = FormSpec::new(kind, n1, q)?;
        let spec2 = FormSpec::new(kind, n2, q)?;
        let ambient = FormSpec::new(kind, n1 + n2, q)?;
        Ok(SplitGeometry {
            emb: SplitEmbedding::new(n1, n2),
            gram1: spec1.gram(),
            gram2: spec2.gram(),
            ambient,
        })
    }
}

/// Triplet coordinates of a maximal isotropic subspace.
pub fn triplet_of(
    l: &SubspaceBasis,
    kind: FormKind,
    n1: u32,
    n2: u32,
) -> Result<Triplet> {
    let geo = SplitGeometry::new(kind, n1, n2, l.q)?;
    let gram = geo.ambient.gram();
    if l.dim() != geo.ambient.witt_index() as usize || !is_isotropic(l, &gram) {
        return Err(Error::NotLagrangian);
    }
    let w1 = geo.emb.factor_subspace(0, l.q);
    let w2 = geo.emb.factor_subspace(1, l.q);
    let u1_big = l.intersect(&w1);
    let u2_big = l.intersect(&w2);
    let to_small = |s: &SubspaceBasis, factor: usize, dim: usize| {
        let rows = s
            .basis_rows()
            .iter()
            .map(|r| geo.emb.project(factor, r))
            .collect();
        SubspaceBasis::from_spanning(rows, dim, l.q)
    };
    let u1 = to_small(&u1_big, 0, 2 * n1 as usize);
    let u2 = to_small(&u2_big, 1, 2 * n2 as usize);
    if u1.dim() as i64 - u2.dim() as i64 != n1 as i64 - n2 as i64 {
        return Err(Error::Internal("triplet dimension identity failed".into()));
    }
    let u1perp = perp(&u1, &geo.gram1)?;
    let u2perp = perp(&u2, &geo.gram2)?;
    let z1 = quotient_basis(&u1, &u1perp);
    let z2 = quotient_basis(&u2, &u2perp);
    // For each class representative z in Z1, find l in L whose W1-part is
    // z modulo U1; its W2-part represents phi(z).
    let q = l.q;
    let dim_big = geo.emb.dim();
    let unknowns = l.dim() + u1.dim();
    let mut phi = MatrixFq::zero(z2.len(), z1.len(), q);
    for (col, z) in z1.iter().enumerate() {
        let mut m = MatrixFq::zero(2 * n1 as usize, unknowns, q);
        for (c, row) in l.basis_rows().iter().enumerate() {
            let proj = geo.emb.project(0, row);
            for r in 0..2 * n1 as usize {
                m.set(r, c, proj[r]);
            }
        }
        for c in 0..u1.dim() {
            for r in 0..2 * n1 as usize {
                m.set(r, l.dim() + c, (q - u1.basis().get(c, r)) % q);
            }
        }
        let sol = m
            .solve(z)
            .ok_or_else(|| Error::Internal("no lift for a quotient vector".into()))?;
        let mut big = vec![0u32; dim_big];
        for (c, row) in l.basis_rows().iter().enumerate() {
            for r in 0..dim_big {
                big[r] = ((u64::from(big[r]) + u64::from(sol[c]) * u64::from(row[r]))
                    % u64::from(q)) as u32;
            }
        }
        let w2part = geo.emb.project(1, &big);
        let coords = quotient_coords(&w2part, &z2, &u2, q)
            .ok_or_else(|| Error::Internal("phi image misses the quotient frame".into()))?;
        for (r, &v) in coords.iter().enumerate() {
            phi.set(r, col, v);
        }
    }
    if phi.rows != phi.cols || phi.inverse().is_none() {
        return Err(Error::Internal("phi is not invertible".into()));
    }
    Ok(Triplet { u1, u2, phi })
}

/// The maximal isotropic subspace with the given triplet coordinates.
pub fn lagrangian_of(
    t: &Triplet,
    kind: FormKind,
    n1: u32,
    n2: u32,
) -> Result<SubspaceBasis> {
    let q = t.u1.q;
    let geo = SplitGeometry::new(kind, n1, n2, q)?;
    let u1perp = perp(&t.u1, &geo.gram1)?;
    let u2perp = perp(&t.u2, &geo.gram2)?;
    let z1 = quotient_basis(&t.u1, &u1perp);
    let z2 = quotient_basis(&t.u2, &u2perp);
    if t.phi.rows != z2.len() || t.phi.cols != z1.len() {
        return Err(Error::Shape("phi has the wrong shape for the quotients".into()));
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in t.u1.basis_rows() {
        rows.push(geo.emb.include(0, &r));
    }
    for r in t.u2.basis_rows() {
        rows.push(geo.emb.include(1, &r));
    }
    for (col, z) in z1.iter().enumerate() {
        let mut w = vec![0u32; 2 * n2 as usize];
        for (c, zv) in z2.iter().enumerate() {
            let coeff = t.phi.get(c, col);
            for r in 0..w.len() {
                w[r] = ((u64::from(w[r]) + u64::from(coeff) * u64::from(zv[r]))
                    % u64::from(q)) as u32;
            }
        }
        let mut big = geo.emb.include(0, z);
        let w_big = geo.emb.include(1, &w);
        for r in 0..big.len() {
            big[r] = (big[r] + w_big[r]) % q;
        }
        rows.push(big);
    }
    let l = SubspaceBasis::from_spanning(rows, geo.emb.dim(), q);
    let gram = geo.ambient.gram();
    if l.dim() != geo.ambient.witt_index() as usize || !is_isotropic(&l, &gram) {
        return Err(Error::NotLagrangian);
    }
    Ok(l)
}

/// Action of (x1, x2) on a triplet: (x1 U1, x2 U2, x2 o phi o x1^-1),
/// rewritten in the canonical quotient bases of the image.
pub fn triplet_action(
    x1: &MatrixFq,
    x2: &MatrixFq,
    t: &Triplet,
    kind: FormKind,
    n1: u32,
    n2: u32,
) -> Result<Triplet> {
    let q = t.u1.q;
    let geo = SplitGeometry::new(kind, n1, n2, q)?;
    let new_u1 = t.u1.apply(x1);
    let new_u2 = t.u2.apply(x2);
    let old_z1 = quotient_basis(&t.u1, &perp(&t.u1, &geo.gram1)?);
    let old_z2 = quotient_basis(&t.u2, &perp(&t.u2, &geo.gram2)?);
    let new_z1 = quotient_basis(&new_u1, &perp(&new_u1, &geo.gram1)?);
    let new_z2 = quotient_basis(&new_u2, &perp(&new_u2, &geo.gram2)?);
    let x1_inv = x1.inverse().ok_or(Error::NotAnIsometry)?;
    let mut phi = MatrixFq::zero(new_z2.len(), new_z1.len(), q);
    for (col, zp) in new_z1.iter().enumerate() {
        let z = x1_inv.apply(zp);
        let a = quotient_coords(&z, &old_z1, &t.u1, q)
            .ok_or_else(|| Error::Internal("x1^-1 z misses the old quotient".into()))?;
        // phi a in old Z2 coordinates, then push through x2.
        let mut w = vec![0u32; 2 * n2 as usize];
        for (rowz, zv) in old_z2.iter().enumerate() {
            let mut coeff = 0u64;
            for (c, &ac) in a.iter().enumerate() {
                coeff = (coeff + u64::from(t.phi.get(rowz, c)) * u64::from(ac)) % u64::from(q);
            }
            for r in 0..w.len() {
                w[r] = ((u64::from(w[r]) + coeff * u64::from(zv[r])) % u64::from(q)) as u32;
            }
        }
        let wp = x2.apply(&w);
        let coords = quotient_coords(&wp, &new_z2, &new_u2, q)
            .ok_or_else(|| Error::Internal("x2 w misses the new quotient".into()))?;
        for (r, &v) in coords.iter().enumerate() {
            phi.set(r, col, v);
        }
    }
    Ok(Triplet { u1: new_u1, u2: new_u2, phi })
}

/// The gluing map of the triplet of V_i X_n, written in the two canonical
/// quotient bases: the antidiagonal K_{2i} in the symplectic case (where it
/// is an anti-isometry), and [[0, -K_i], [K_i, 0]] in the orthogonal case
/// (a scalar multiple of K is never an anti-isometry of a split symmetric
/// form when -1 is not a square).
pub fn gluing_map(kind: FormKind, i: u32, q: u32) -> MatrixFq {
    let iu = i as usize;
    match kind {
        FormKind::Symplectic => antidiag(2 * iu, q),
        _ => {
            let mut m = MatrixFq::zero(2 * iu, 2 * iu, q);
            for j in 0..iu {
                m.set(j, 2 * iu - 1 - j, q - 1);
                m.set(2 * iu - 1 - j, j, 1);
            }
            m
        }
    }
}

/// The displayed stabilizer set of V_i X_n: pairs (m(a1,A1)u1, m(a2,A2)u2)
/// with a_k in GL_{n_k - i}, u_k in the radical N_{n_k - i}, and the middle
/// blocks linked through the gluing map: A_2 = phi A_1 phi^-1, which for
/// the symplectic case is the literal A_2 = K A_1 K.
pub fn displayed_stabilizer_set(
    kind: FormKind,
    n1: u32,
    n2: u32,
    i: u32,
    q: u32,
    g1: &Group,
    g2: &Group,
) -> Result<Vec<(usize, usize)>> {
    let spec1 = FormSpec::new(kind, n1, q)?;
    let spec2 = FormSpec::new(kind, n2, q)?;
    let gi = FormSpec::new(kind, i, q)?.enumerate_group()?;
    let k1 = (n1 - i) as usize;
    let k2 = (n2 - i) as usize;
    let gl1 = general_linear(k1, q);
    let gl2 = general_linear(k2, q);
    let rad1 = parabolic_elements(g1, &maximal_parabolic_blocks(&spec1, k1)).radical;
    let rad2 = parabolic_elements(g2, &maximal_parabolic_blocks(&spec2, k2)).radical;
    let phi = gluing_map(kind, i, q);
    let phi_inv = phi.inverse().expect("gluing map invertible");

    let mut out = Vec::new();
    for a1 in &gl1 {
        for ai in 0..gi.order() {
            let big1 = gi.element(ai);
            let m1 = m_embed(a1, big1, &spec1)?;
            let m1_idx = g1
                .lookup(&m1)
                .ok_or_else(|| Error::Internal("m(a,A) is not an isometry".into()))?;
            let big2 = phi.mul(big1).mul(&phi_inv);
            for a2 in &gl2 {
                let m2 = m_embed(a2, &big2, &spec2)?;
                let m2_idx = g2
                    .lookup(&m2)
                    .ok_or_else(|| Error::Internal("m(a,A) is not an isometry".into()))?;
                for &u1 in &rad1 {
                    let x1 = g1.mul(m1_idx, u1);
                    for &u2 in &rad2 {
                        let x2 = g2.mul(m2_idx, u2);
                        out.push((x1, x2));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All invertible k x k matrices (desk scale).
pub fn general_linear(k: usize, q: u32) -> Vec<MatrixFq> {
    let mut out = Vec::new();
    let total = (q as u64).pow((k * k) as u32);
    for mut idx in 0..total {
        let mut m = MatrixFq::zero(k, k, q);
        for r in 0..k {
            for c in 0..k {
                m.set(r, c, (idx % q as u64) as u32);
                idx /= q as u64;
            }
        }
        if k == 0 || m.det() != 0 {
            out.push(m);
        }
    }
    out
}

/// The antidiagonal permutation matrix K_n.
pub fn antidiag(n: usize, q: u32) -> MatrixFq {
    let mut m = MatrixFq::zero(n, n, q);
    for i in 0..n {
        m.set(i, n - 1 - i, 1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        let cases = [
            (FormKind::Symplectic, 1, 24u128),
            (FormKind::Symplectic, 2, 51840),
            (FormKind::OrthogonalPlus, 1, 4),
            (FormKind::OrthogonalMinus, 1, 8),
            (FormKind::OrthogonalPlus, 2, 1152),
            (FormKind::OrthogonalMinus, 2, 1440),
        ];
        for (kind, n, expected) in cases {
            let spec = FormSpec::new(kind, n, 3).unwrap();
            assert_eq!(spec.group_order(), expected, "{kind:?} n={n}");
            let g = spec.enumerate_group().unwrap();
            assert_eq!(g.order() as u128, expected);
            // Every element preserves the Gram matrix, in both orientations.
            let j = spec.gram();
            for e in g.elements() {
                assert_eq!(e.transpose().mul(&j).mul(e), j);
                assert_eq!(e.mul(&j).mul(&e.transpose()), j);
            }
        }
    }

    #[test]
    fn scale_guard_triggers() {
        let spec = FormSpec::symplectic(3, 3).unwrap();
        assert!(matches!(spec.enumerate_group(), Err(Error::ScaleGuard { .. })));
    }

    #[test]
    fn trivial_group() {
        let spec = FormSpec::new(FormKind::OrthogonalPlus, 0, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn lagrangian_counts() {
        for (kind, n, expected) in [
            (FormKind::Symplectic, 1u32, 4usize),
            (FormKind::Symplectic, 2, 40),
            (FormKind::Symplectic, 3, 1120),
            (FormKind::OrthogonalPlus, 2, 8),
            (FormKind::OrthogonalPlus, 3, 80),
        ] {
            let spec = FormSpec::new(kind, n, 3).unwrap();
            let ls = lagrangians(&spec).unwrap();
            assert_eq!(ls.len(), expected, "{kind:?} n={n}");
            assert_eq!(maximal_isotropic_count(&spec), Some(expected as u128));
            let j = spec.gram();
            for l in &ls {
                assert!(is_isotropic(l, &j));
                assert_eq!(l.dim(), spec.witt_index() as usize);
            }
        }
    }

    #[test]
    fn isotropic_subspace_counts_against_frame_formula() {
        // Symplectic frame-counting formula for isotropic k-subspaces.
        fn sp_isotropic_count(n: u32, k: u32, q: u128) -> u128 {
            let two_n = 2 * n;
            let mut num = 1u128;
            let mut den = 1u128;
            for i in 0..k {
                num *= q.pow(two_n - i) - q.pow(i);
                den *= q.pow(k) - q.pow(i);
            }
            num / den
        }
        for n in 1..=3u32 {
            let spec = FormSpec::symplectic(n, 3).unwrap();
            for k in 0..=n {
                let subs = isotropic_subspaces(&spec, k as usize).unwrap();
                assert_eq!(subs.len() as u128, sp_isotropic_count(n, k, 3));
            }
        }
    }

    #[test]
    fn lagrangians_match_group_orbit_for_sp4() {
        // Independent cross-check of the echelon enumeration: the orbit of
        // X_n under the full enumerated group.
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        let xn = split_lagrangian(&spec);
        let mut keys: Vec<Vec<u8>> = g.elements().iter().map(|e| xn.apply(e).key()).collect();
        keys.sort();
        keys.dedup();
        let ls = lagrangians(&spec).unwrap();
        let mut expect: Vec<Vec<u8>> = ls.iter().map(|l| l.key()).collect();
        expect.sort();
        assert_eq!(keys, expect);
    }

    #[test]
    fn v_i_matrices_are_isometries() {
        for kind in [FormKind::Symplectic, FormKind::OrthogonalPlus] {
            for n1 in 1..=2u32 {
                for n2 in 1..=n1 {
                    let ambient = FormSpec::new(kind, n1 + n2, 3).unwrap();
                    let j = ambient.gram();
                    for i in 1..=n1.min(n2) {
                        let v = v_i_matrix(n1, n2, i, kind, 3).unwrap();
                        assert_eq!(v.transpose().mul(&j).mul(&v), j, "{kind:?} {n1},{n2},{i}");
                        assert_eq!(v.mul(&j).mul(&v.transpose()), j);
                    }
                }
            }
        }
        assert!(v_i_matrix(1, 1, 2, FormKind::Symplectic, 3).is_err());
        assert!(v_i_matrix(2, 1, 0, FormKind::Symplectic, 3).is_err());
    }

    #[test]
    fn split_embedding_preserves_forms() {
        for kind in [FormKind::Symplectic, FormKind::OrthogonalPlus] {
            let (n1, n2) = (2u32, 1u32);
            let emb = SplitEmbedding::new(n1, n2);
            let ambient = FormSpec::new(kind, n1 + n2, 3).unwrap();
            let j = ambient.gram();
            let g1 = FormSpec::new(kind, n1, 3).unwrap().enumerate_group().unwrap();
            let g2 = FormSpec::new(kind, n2, 3).unwrap().enumerate_group().unwrap();
            let id2 = MatrixFq::identity(2 * n2 as usize, 3);
            let id1 = MatrixFq::identity(2 * n1 as usize, 3);
            for &a in g1.generators.iter() {
                let m = emb.embed_pair(g1.element(a), &id2);
                assert_eq!(m.transpose().mul(&j).mul(&m), j);
            }
            for &b in g2.generators.iter() {
                let m = emb.embed_pair(&id1, g2.element(b));
                assert_eq!(m.transpose().mul(&j).mul(&m), j);
            }
        }
    }

    #[test]
    fn orbits_cover_and_tags_are_distinct_small() {
        let g1 = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let g2 = g1.clone();
        let rep = orbits_on_lagrangians(FormKind::Symplectic, 1, 1, 3, &g1, &g2).unwrap();
        assert_eq!(rep.total_points, 40);
        assert!(rep.covered);
        let sizes: usize = rep.orbits.iter().map(|o| o.size).sum();
        assert_eq!(sizes, 40);
        assert_eq!(rep.orbits.len(), 2);
    }

    #[test]
    fn stabilizer_satisfies_orbit_stabilizer() {
        let g1 = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let g2 = g1.clone();
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let xn = split_lagrangian(&spec);
        let v1 = v_i_matrix(1, 1, 1, FormKind::Symplectic, 3).unwrap();
        let point = xn.apply(&v1);
        let stab = stabilizer(&point, &g1, &g2, 1, 1);
        let rep = orbits_on_lagrangians(FormKind::Symplectic, 1, 1, 3, &g1, &g2).unwrap();
        let orbit_size = rep
            .orbits
            .iter()
            .find(|o| o.tag == Some(OrbitTag::Vi(1)))
            .unwrap()
            .size;
        assert_eq!(stab.len() * orbit_size, g1.order() * g2.order());
    }

    #[test]
    fn displayed_set_matches_brute_force_small() {
        let g1 = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let g2 = g1.clone();
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let xn = split_lagrangian(&spec);
        let v1 = v_i_matrix(1, 1, 1, FormKind::Symplectic, 3).unwrap();
        let point = xn.apply(&v1);
        let brute = stabilizer(&point, &g1, &g2, 1, 1);
        let displayed =
            displayed_stabilizer_set(FormKind::Symplectic, 1, 1, 1, 3, &g1, &g2).unwrap();
        assert_eq!(brute, displayed);
    }

    #[test]
    fn levi_factorization_roundtrip_over_p1() {
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        let blocks = maximal_parabolic_blocks(&spec, 1);
        let p1 = parabolic_elements(&g, &blocks);
        assert_eq!(p1.radical.len(), 27);
        for &x in &p1.parabolic {
            let (a, big, u) = levi_factorization(g.element(x), 1, &spec).unwrap();
            let m = m_embed(&a, &big, &spec).unwrap();
            assert_eq!(m.mul(&u), *g.element(x));
            if p1.levi.contains(&x) {
                assert_eq!(u, MatrixFq::identity(4, 3));
            }
        }
        // Non-members are rejected.
        let outside = g
            .elements()
            .iter()
            .find(|e| !is_block_upper(e, &blocks))
            .unwrap();
        assert!(matches!(
            levi_factorization(outside, 1, &spec),
            Err(Error::NotInParabolic)
        ));
    }

    #[test]
    fn pure_levi_counts_for_sp4() {
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        let levis = pure_levi_subgroups(&g, &spec);
        assert_eq!(levis.len(), 3);
        assert_eq!(levis[0].elements.levi.len(), g.order());
        // r = 1: GL_1 x Sp_2, radical of order q^3.
        assert_eq!(levis[1].elements.radical.len(), 27);
        assert_eq!(levis[1].elements.levi.len(), 2 * 24);
        // |P| = |M| |N|.
        for pl in &levis {
            assert_eq!(
                pl.elements.parabolic.len(),
                pl.elements.levi.len() * pl.elements.radical.len()
            );
        }
    }

    #[test]
    fn triplet_roundtrip_small() {
        for kind in [FormKind::Symplectic, FormKind::OrthogonalPlus] {
            let ambient = FormSpec::new(kind, 2, 3).unwrap();
            for l in lagrangians(&ambient).unwrap() {
                let t = triplet_of(&l, kind, 1, 1).unwrap();
                let back = lagrangian_of(&t, kind, 1, 1).unwrap();
                assert_eq!(back, l);
            }
        }
    }

    #[test]
    fn triplet_of_x_n_has_maximal_pieces() {
        let spec = FormSpec::symplectic(3, 3).unwrap();
        let xn = split_lagrangian(&spec);
        let t = triplet_of(&xn, FormKind::Symplectic, 2, 1).unwrap();
        assert_eq!(t.u1.dim(), 2);
        assert_eq!(t.u2.dim(), 1);
        assert_eq!(t.phi.rows, 0);
        let back = lagrangian_of(&t, FormKind::Symplectic, 2, 1).unwrap();
        assert_eq!(back, xn);
    }

    #[test]
    fn triplet_rejects_non_lagrangians() {
        let bad = SubspaceBasis::from_spanning(
            vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]],
            4,
            3,
        );
        assert!(matches!(
            triplet_of(&bad, FormKind::Symplectic, 1, 1),
            Err(Error::NotLagrangian)
        ));
    }

    #[test]
    fn triplet_equivariance_on_generators() {
        let kind = FormKind::Symplectic;
        let (n1, n2) = (1u32, 1u32);
        let g1 = FormSpec::new(kind, n1, 3).unwrap().enumerate_group().unwrap();
        let g2 = FormSpec::new(kind, n2, 3).unwrap().enumerate_group().unwrap();
        let ambient = FormSpec::new(kind, n1 + n2, 3).unwrap();
        let emb = SplitEmbedding::new(n1, n2);
        for l in lagrangians(&ambient).unwrap() {
            let t = triplet_of(&l, kind, n1, n2).unwrap();
            for &a in &g1.generators {
                for &b in &g2.generators {
                    let x1 = g1.element(a);
                    let x2 = g2.element(b);
                    let moved = l.apply(&emb.embed_pair(x1, x2));
                    let lhs = triplet_of(&moved, kind, n1, n2).unwrap();
                    let rhs = triplet_action(x1, x2, &t, kind, n1, n2).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
