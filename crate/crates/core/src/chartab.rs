//! Irreducible character tables by the Dixon-Schneider method.
//!
//! The class-multiplication matrices of the group algebra are simultaneously
//! diagonalized over a prime field F_p with p = 1 (mod exponent), p > 2|G|.
//! Each joint eigenvector carries the values omega_k = |C_k| chi(g_k)/chi(1)
//! of one irreducible character; degrees and character values are recovered
//! mod p and then lifted to complex numbers through the multiplicities of
//! the e-th roots of unity.

use crate::classfn::{ClassFunction, C64};
use crate::error::{Error, Result};
use crate::gfq::{inv_mod, MatrixFq};
use crate::group::Group;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub degrees: Vec<u64>,
    /// values[irr][class]
    pub values: Vec<Vec<C64>>,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub centralizer_orders: Vec<usize>,
}

impl CharacterTable {
    pub fn num_irreducibles(&self) -> usize {
        self.degrees.len()
    }

    pub fn row(&self, i: usize) -> ClassFunction {
        ClassFunction { values: self.values[i].clone() }
    }

    /// Largest deviation from row orthonormality.
    pub fn orthogonality_defect(&self, g: &Group) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.num_irreducibles() {
            let ri = self.row(i);
            for j in 0..self.num_irreducibles() {
                let rj = self.row(j);
                let ip = ri.inner(&rj, g);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest deviation from column orthogonality:
    /// sum_chi chi(g) conj(chi(h)) = |C(g)| [g ~ h].
    pub fn column_orthogonality_defect(&self) -> f64 {
        let c = self.class_sizes.len();
        let mut worst: f64 = 0.0;
        for a in 0..c {
            for b in 0..c {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..self.num_irreducibles() {
                    acc += self.values[i][a] * self.values[i][b].conj();
                }
                let target = if a == b { self.centralizer_orders[a] as f64 } else { 0.0 };
                worst = worst.max((acc - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Classes cap; beyond this the dense class-algebra approach is the wrong
/// tool.
pub const CLASS_GUARD: usize = 60;

pub fn dixon_schneider(g: &Group) -> Result<CharacterTable> {
    let c = g.num_classes();
    if c > CLASS_GUARD {
        return Err(Error::ScaleGuard { estimate: c as u128, limit: CLASS_GUARD as u128 });
    }
    let order = g.order() as u64;
    let class_reps: Vec<usize> = g.classes.iter().map(|cl| cl.rep).collect();
    let class_sizes: Vec<usize> = g.classes.iter().map(|cl| cl.members.len()).collect();
    let centralizer_orders: Vec<usize> = (0..c).map(|k| g.centralizer_order(k)).collect();
    if c == 1 {
        return Ok(CharacterTable {
            degrees: vec![1],
            values: vec![vec![C64::new(1.0, 0.0)]],
            class_reps,
            class_sizes,
            centralizer_orders,
        });
    }

    let e = g.exponent() as u64;
    let p = find_prime(e, 2 * order + 1);
    let p32 = u32::try_from(p).map_err(|_| Error::Internal("prime exceeds u32".into()))?;

    // Structure constants a[i][j][k] = #{(x,y) in C_i x C_j : xy = z_k},
    // collected by running x over C_i and classifying y = x^-1 z_k.
    let mut a = vec![vec![vec![0u64; c]; c]; c];
    for (k, &zk) in class_reps.iter().enumerate() {
        for i in 0..c {
            for &x in &g.classes[i].members {
                let y = g.mul(g.inv(x), zk);
                let j = g.class_of(y);
                a[i][j][k] += 1;
            }
        }
    }

    // Simultaneous eigenspaces of the matrices (M_i)_{jk} = a[i][j][k]:
    // each common eigenvector is (omega_k(chi))_k with M_i v = omega_i v.
    let id_class = g.class_of(g.identity_index());
    let mut spaces: Vec<MatrixFq> = vec![MatrixFq::identity(c, p32)];
    for i in 0..c {
        if i == id_class {
            continue;
        }
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let mut mi = MatrixFq::zero(c, c, p32);
        for j in 0..c {
            for k in 0..c {
                mi.set(j, k, (a[i][j][k] % p) as u32);
            }
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.cols == 1 {
                next.push(s);
                continue;
            }
            let r = restrict(&mi, &s)?;
            let roots = eigenvalues(&r)?;
            for lambda in roots {
                let mut shifted = r.clone();
                for d in 0..shifted.rows {
                    let v = (shifted.get(d, d) + p32 - lambda) % p32;
                    shifted.set(d, d, v);
                }
                let ker = shifted.kernel();
                if ker.dim() == 0 {
                    continue;
                }
                next.push(s.mul(&ker.basis().transpose()));
            }
        }
        spaces = next;
    }
    if spaces.len() != c || spaces.iter().any(|s| s.cols != 1) {
        return Err(Error::Internal(format!(
            "class algebra split into {} spaces instead of {c}",
            spaces.len()
        )));
    }

    // Normalize each eigenvector so that the identity-class entry is 1.
    let inv_class: Vec<usize> = class_reps.iter().map(|&r| g.class_of(g.inv(r))).collect();
    let mut char_mod_p: Vec<Vec<u64>> = Vec::with_capacity(c);
    let mut degrees: Vec<u64> = Vec::with_capacity(c);
    for s in &spaces {
        let mut v: Vec<u64> = (0..c).map(|k| u64::from(s.get(k, 0))).collect();
        if v[id_class] == 0 {
            return Err(Error::Internal("eigenvector vanishes at the identity class".into()));
        }
        let norm = u64::from(inv_mod(v[id_class] as u32, p32));
        for x in v.iter_mut() {
            *x = *x * norm % p;
        }
        // 1/d^2 = (1/|G|) sum_k omega_k omega_{k*} / n_k.
        let mut srm = 0u64;
        for k in 0..c {
            let term = v[k] * v[inv_class[k]] % p;
            srm = (srm + term * u64::from(inv_mod((class_sizes[k] as u64 % p) as u32, p32))) % p;
        }
        let d2 = order % p * u64::from(inv_mod(srm as u32, p32)) % p;
        let d = (d2 as f64).sqrt().round() as u64;
        if d == 0 || d * d != d2 || d * d > order {
            return Err(Error::Internal(format!("degree lift failed: d^2 = {d2}")));
        }
        degrees.push(d);
        // chi(g_k) = d omega_k / n_k mod p.
        let vals = (0..c)
            .map(|k| {
                d % p * v[k] % p * u64::from(inv_mod((class_sizes[k] as u64 % p) as u32, p32)) % p
            })
            .collect();
        char_mod_p.push(vals);
    }
    let degree_sum: u64 = degrees.iter().map(|d| d * d).sum();
    if degree_sum != order {
        return Err(Error::Internal(format!(
            "sum of squared degrees {degree_sum} != |G| = {order}"
        )));
    }

    // Power map on classes: pow_class[k][t] = class of rep_k^t.
    let e_us = e as usize;
    let mut pow_class = vec![vec![0usize; e_us]; c];
    for (k, &rep) in class_reps.iter().enumerate() {
        let mut cur = g.identity_index();
        for t in 0..e_us {
            pow_class[k][t] = g.class_of(cur);
            cur = g.mul(cur, rep);
        }
    }

    // Lift through root-of-unity multiplicities:
    // chi(g) = sum_j m_j zeta^j with m_j = (1/e) sum_t chi(g^t) theta^{-jt}.
    let theta = primitive_root_of_unity(p, e);
    let mut theta_pow = vec![1u64; e_us];
    for s in 1..e_us {
        theta_pow[s] = theta_pow[s - 1] * theta % p;
    }
    let inv_e = u64::from(inv_mod((e % p) as u32, p32));
    let zeta: Vec<C64> = (0..e_us)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / e as f64))
        .collect();

    let mut rows: Vec<(u64, Vec<u64>, Vec<C64>)> = Vec::with_capacity(c);
    for (chi_idx, vals) in char_mod_p.iter().enumerate() {
        let mut complex_row = vec![C64::new(0.0, 0.0); c];
        for (k, slot) in complex_row.iter_mut().enumerate() {
            let mut value = C64::new(0.0, 0.0);
            for j in 0..e_us {
                let mut m = 0u64;
                for t in 0..e_us {
                    let idx = (e_us - (j * t) % e_us) % e_us;
                    m = (m + vals[pow_class[k][t]] * theta_pow[idx]) % p;
                }
                m = m * inv_e % p;
                if m > order {
                    return Err(Error::Internal(format!(
                        "root-of-unity multiplicity {m} out of range"
                    )));
                }
                if m != 0 {
                    value += zeta[j] * m as f64;
                }
            }
            *slot = value;
        }
        let d = degrees[chi_idx];
        if (complex_row[id_class] - C64::new(d as f64, 0.0)).norm() > 1e-6 {
            return Err(Error::Internal("lifted degree disagrees with mod-p degree".into()));
        }
        rows.push((d, vals.clone(), complex_row));
    }
    rows.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));

    Ok(CharacterTable {
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.into_iter().map(|r| r.2).collect(),
        class_reps,
        class_sizes,
        centralizer_orders,
    })
}

/// Matrix of M restricted to the column span of B, i.e. R with M B = B R.
fn restrict(m: &MatrixFq, b: &MatrixFq) -> Result<MatrixFq> {
    let mb = m.mul(b);
    let k = b.cols;
    let p = b.q;
    let mut aug = MatrixFq::zero(b.rows, 2 * k, p);
    for r in 0..b.rows {
        for c in 0..k {
            aug.set(r, c, b.get(r, c));
            aug.set(r, k + c, mb.get(r, c));
        }
    }
    let rr = aug.rref();
    if rr.rank != k || rr.pivots.iter().enumerate().any(|(i, &pv)| pv != i) {
        return Err(Error::Internal("subspace is degenerate or not invariant".into()));
    }
    let mut out = MatrixFq::zero(k, k, p);
    for r in 0..k {
        for c in 0..k {
            out.set(r, c, rr.matrix.get(r, k + c));
        }
    }
    Ok(out)
}

/// All eigenvalues (in F_p) of a matrix whose characteristic polynomial
/// splits over F_p.
fn eigenvalues(m: &MatrixFq) -> Result<Vec<u32>> {
    let poly = charpoly(m);
    let sf = squarefree_part(&poly, m.q);
    let mut roots = poly_roots(&sf, m.q)?;
    roots.sort_unstable();
    Ok(roots)
}

/// Characteristic polynomial (monic, coefficients low to high) via
/// Hessenberg reduction and the minor recurrence.
fn charpoly(m: &MatrixFq) -> Vec<u64> {
    let n = m.rows;
    let p = u64::from(m.q);
    let q32 = m.q;
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let pivot = (col + 1..n).find(|&r| h.get(r, col) != 0);
        let Some(pr) = pivot else { continue };
        if pr != col + 1 {
            swap_rows(&mut h, pr, col + 1);
            swap_cols(&mut h, pr, col + 1);
        }
        let inv = u64::from(inv_mod(h.get(col + 1, col), q32));
        for r in col + 2..n {
            if h.get(r, col) == 0 {
                continue;
            }
            let f = u64::from(h.get(r, col)) * inv % p;
            for cc in 0..n {
                let v = (u64::from(h.get(r, cc)) + (p - f) * u64::from(h.get(col + 1, cc))) % p;
                h.set(r, cc, v as u32);
            }
            for rr in 0..n {
                let v = (u64::from(h.get(rr, col + 1)) + f * u64::from(h.get(rr, r))) % p;
                h.set(rr, col + 1, v as u32);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for msz in 1..=n {
        let mut pm = poly_mul_linear(&polys[msz - 1], h.get(msz - 1, msz - 1), p);
        let mut beta = 1u64;
        for k in 1..msz {
            beta = beta * u64::from(h.get(msz - k, msz - k - 1)) % p;
            if beta == 0 {
                break;
            }
            let coef = u64::from(h.get(msz - 1 - k, msz - 1)) * beta % p;
            if coef == 0 {
                continue;
            }
            for (idx, &cc) in polys[msz - 1 - k].iter().enumerate() {
                pm[idx] = (pm[idx] + (p - coef) * cc) % p;
            }
        }
        polys.push(pm);
    }
    polys[n].clone()
}

fn swap_rows(m: &mut MatrixFq, a: usize, b: usize) {
    for c in 0..m.cols {
        let (x, y) = (m.get(a, c), m.get(b, c));
        m.set(a, c, y);
        m.set(b, c, x);
    }
}

fn swap_cols(m: &mut MatrixFq, a: usize, b: usize) {
    for r in 0..m.rows {
        let (x, y) = (m.get(r, a), m.get(r, b));
        m.set(r, a, y);
        m.set(r, b, x);
    }
}

/// (t - a) * poly.
fn poly_mul_linear(poly: &[u64], a: u32, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; poly.len() + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i + 1] = (out[i + 1] + c) % p;
        out[i] = (out[i] + (p - u64::from(a) % p) % p * c % p) % p;
    }
    out
}

// Dense polynomial arithmetic over F_p, coefficients low to high.

fn poly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn poly_deg(f: &[u64]) -> usize {
    f.len() - 1
}

fn poly_is_zero(f: &[u64]) -> bool {
    f.len() == 1 && f[0] == 0
}

fn poly_derivative(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() == 1 {
        return vec![0];
    }
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as u64 % p) % p)
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = poly_deg(b);
    let lead_inv = u64::from(inv_mod(b[db] as u32, p as u32));
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let f = r[dr] * lead_inv % p;
        for i in 0..=db {
            r[dr - db + i] = (r[dr - db + i] + p - f * b[i] % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    let d = poly_deg(&x);
    if x[d] != 0 {
        let inv = u64::from(inv_mod(x[d] as u32, p as u32));
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = poly_deg(b);
    let lead_inv = u64::from(inv_mod(b[db] as u32, p as u32));
    let mut quot = vec![0u64; r.len().saturating_sub(db).max(1)];
    while !poly_is_zero(&r) && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let f = r[dr] * lead_inv % p;
        quot[dr - db] = f;
        for i in 0..=db {
            r[dr - db + i] = (r[dr - db + i] + p - f * b[i] % p) % p;
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut quot);
    quot
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ca * cb) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn squarefree_part(f: &[u64], q: u32) -> Vec<u64> {
    let p = u64::from(q);
    let deriv = poly_derivative(f, p);
    if poly_is_zero(&deriv) {
        return f.to_vec();
    }
    let g = poly_gcd(f, &deriv, p);
    if poly_deg(&g) == 0 {
        return f.to_vec();
    }
    poly_div_exact(f, &g, p)
}

/// Roots in F_p of a squarefree polynomial, by equal-degree splitting with
/// a deterministic shift sequence.
fn poly_roots(f: &[u64], q: u32) -> Result<Vec<u32>> {
    let p = u64::from(q);
    let mut f = f.to_vec();
    poly_trim(&mut f);
    if poly_deg(&f) == 0 {
        return Ok(Vec::new());
    }
    // Keep the part splitting into linear factors: gcd(x^p - x, f).
    let xp = poly_powmod(&[0, 1], p, &f, p);
    let mut xpmx = xp;
    if xpmx.len() < 2 {
        xpmx.resize(2, 0);
    }
    xpmx[1] = (xpmx[1] + p - 1) % p;
    poly_trim(&mut xpmx);
    let linear_part = if poly_is_zero(&xpmx) { f.clone() } else { poly_gcd(&f, &xpmx, p) };
    let mut roots = Vec::new();
    let mut stack = vec![linear_part];
    let mut shift = 0u64;
    while let Some(cur) = stack.pop() {
        let d = poly_deg(&cur);
        if d == 0 {
            continue;
        }
        if d == 1 {
            let c1_inv = u64::from(inv_mod(cur[1] as u32, q));
            roots.push(((p - cur[0] % p) % p * c1_inv % p) as u32);
            continue;
        }
        let mut split = None;
        for _ in 0..500 {
            let a = shift % p;
            shift += 1;
            let mut h = poly_powmod(&[a, 1], (p - 1) / 2, &cur, p);
            h[0] = (h[0] + p - 1) % p;
            poly_trim(&mut h);
            if poly_is_zero(&h) {
                continue;
            }
            let g = poly_gcd(&cur, &h, p);
            let dg = poly_deg(&g);
            if dg > 0 && dg < d {
                let other = poly_div_exact(&cur, &g, p);
                split = Some((g, other));
                break;
            }
        }
        match split {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => return Err(Error::Internal("root splitting did not converge".into())),
        }
    }
    Ok(roots)
}

/// Smallest prime p = 1 (mod e) with p >= lo.
fn find_prime(e: u64, lo: u64) -> u64 {
    let mut k = lo.div_ceil(e).max(1);
    loop {
        let p = k * e + 1;
        if p % 2 == 1 && is_prime_u64(p) {
            return p;
        }
        k += 1;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primitive e-th root of unity mod p (requires e | p-1).
fn primitive_root_of_unity(p: u64, e: u64) -> u64 {
    let factors = prime_factors(p - 1);
    let gen = (2..p)
        .find(|&z| factors.iter().all(|&f| pow_mod_u64(z, (p - 1) / f, p) != 1))
        .expect("F_p^* is cyclic");
    pow_mod_u64(gen, (p - 1) / e, p)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % u128::from(m);
        }
        b = b * b % u128::from(m);
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{FormKind, FormSpec};

    #[test]
    fn sl2_3_table() {
        let g = FormSpec::symplectic(1, 3).unwrap().enumerate_group().unwrap();
        let t = dixon_schneider(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(t.orthogonality_defect(&g) < 1e-8);
        assert!(t.column_orthogonality_defect() < 1e-8);
        let sum: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum, 24);
        for i in 0..t.num_irreducibles() {
            let r = t.row(i);
            assert!((r.inner(&r, &g) - C64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn dihedral_o2_minus_table() {
        let g = FormSpec::new(FormKind::OrthogonalMinus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        assert_eq!(g.order(), 8);
        let t = dixon_schneider(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        assert!(t.orthogonality_defect(&g) < 1e-10);
    }

    #[test]
    fn klein_o2_plus_table() {
        let g = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let t = dixon_schneider(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1]);
        assert!(t.orthogonality_defect(&g) < 1e-10);
    }

    #[test]
    fn sl2_5_table() {
        let g = FormSpec::symplectic(1, 5).unwrap().enumerate_group().unwrap();
        let t = dixon_schneider(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert!(t.orthogonality_defect(&g) < 1e-8);
        let sum: u64 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum, 120);
    }

    #[test]
    fn trivial_group_table() {
        let g = FormSpec::new(FormKind::OrthogonalPlus, 0, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let t = dixon_schneider(&g).unwrap();
        assert_eq!(t.degrees, vec![1]);
    }

    #[test]
    fn poly_helpers() {
        let p = 13u64;
        // (x-2)(x-3)(x-3) = x^3 + 5x^2 + 8x + 8 over F_13.
        let f = vec![(p - 18 % p) % p, 21 % p, p - 8, 1];
        let sf = squarefree_part(&f, 13);
        let mut roots = poly_roots(&sf, 13).unwrap();
        roots.sort_unstable();
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn charpoly_small() {
        // [[2, 1], [0, 5]] over F_13: (t-2)(t-5) = t^2 + 6t + 10 mod 13.
        let m = MatrixFq::from_rows(vec![vec![2, 1], vec![0, 5]], 13);
        let cp = charpoly(&m);
        assert_eq!(cp, vec![10, 6, 1]);
        let ev = eigenvalues(&m).unwrap();
        assert_eq!(ev, vec![2, 5]);
    }
}
