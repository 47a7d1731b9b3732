//! Decomposition of the Weil character over a dual pair, the eta
//! correspondence, coinvariant identities for parabolic restriction, and
//! first-occurrence scans for weakly cuspidal representations.
//!
//! The symplectic member of every pair is realized in standard symplectic
//! coordinates (so that ranks can be read off the Siegel radical); the
//! orthogonal member uses the antidiagonal-block convention of the geometry
//! module.

use crate::chartab::CharacterTable;
use crate::classfn::{round_to_integer, ClassFunction, PairClassFunction, C64};
use crate::error::{Error, Result};
use crate::functors::{parabolic_induce, ParabolicData};
use crate::geometry::{parabolic_elements, FormKind, FormSpec};
use crate::group::Group;
use crate::weil::{character_rank, standard_symplectic_group, DualPair, Twist};
use serde::{Deserialize, Serialize};

/// Multiplicity matrix of the Weil character over Irr(Sp) x Irr(O).
pub struct ThetaDecomposition {
    pub mult: Vec<Vec<i64>>,
    pub weil: PairClassFunction,
    /// Largest deviation of a raw multiplicity from its integer value.
    pub integrality_defect: f64,
}

impl ThetaDecomposition {
    /// Constituents of Theta(rho) for an orthogonal-side irreducible.
    pub fn theta_of_orth(&self, j: usize) -> Vec<(usize, i64)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, row)| row[j] > 0)
            .map(|(i, row)| (i, row[j]))
            .collect()
    }

    /// Constituents of Theta(pi) for a symplectic-side irreducible.
    pub fn theta_of_sp(&self, i: usize) -> Vec<(usize, i64)> {
        self.mult[i]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| (j, m))
            .collect()
    }
}

/// Decomposes the (possibly twisted) Weil character of a dual pair into
/// irreducible multiplicities.  Entries must be nonnegative integers within
/// the tolerance.
pub fn theta_decompose(
    dp: &DualPair,
    gl: &Group,
    gr: &Group,
    tab_l: &CharacterTable,
    tab_r: &CharacterTable,
    twist: Twist,
    tol: f64,
) -> Result<ThetaDecomposition> {
    let weil = dp.character(gl, gr, twist)?;
    let mut mult = vec![vec![0i64; tab_r.num_irreducibles()]; tab_l.num_irreducibles()];
    let mut defect: f64 = 0.0;
    for (i, row) in mult.iter_mut().enumerate() {
        let chi = tab_l.row(i);
        for (j, slot) in row.iter_mut().enumerate() {
            let psi = tab_r.row(j);
            let raw = weil.inner_with_product(&chi, &psi, gl, gr);
            let (int, dev) = round_to_integer(raw);
            defect = defect.max(dev);
            if dev > tol {
                return Err(Error::NonIntegerMultiplicity { value: raw.re, deviation: dev });
            }
            if int < 0 {
                return Err(Error::NonIntegerMultiplicity {
                    value: raw.re,
                    deviation: raw.re.abs(),
                });
            }
            *slot = int;
        }
    }
    Ok(ThetaDecomposition { mult, weil, integrality_defect: defect })
}

/// sum of mult * deg * deg' (the dimension of the underlying space).
pub fn dimension_bookkeeping(
    decomp: &ThetaDecomposition,
    tab_l: &CharacterTable,
    tab_r: &CharacterTable,
) -> u128 {
    let mut acc: u128 = 0;
    for (i, row) in decomp.mult.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            acc += m as u128 * tab_l.degrees[i] as u128 * tab_r.degrees[j] as u128;
        }
    }
    acc
}

/// |<weil, weil> - sum mult^2|, the Parseval consistency defect.
pub fn parseval_defect(
    decomp: &ThetaDecomposition,
    gl: &Group,
    gr: &Group,
) -> f64 {
    let lhs = decomp.weil.norm_sq(gl, gr);
    let rhs: i64 = decomp.mult.iter().flatten().map(|&m| m * m).sum();
    (lhs - rhs as f64).abs()
}

/// The eta correspondence on a stable-range pair (O_2k, Sp_2n'): for each
/// orthogonal irreducible, the unique constituent of Theta of maximal rank.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaReport {
    /// orth irreducible -> (sp irreducible, its rank).
    pub assignments: Vec<(usize, usize, u32)>,
    pub expected_rank: u32,
    pub injective: bool,
}

pub fn eta_correspondence(
    decomp: &ThetaDecomposition,
    gl: &Group,
    tab_l: &CharacterTable,
    sp_half_dim: usize,
    expected_rank: u32,
    tol: f64,
) -> Result<EtaReport> {
    // Rank of every symplectic irreducible that occurs.
    let mut rank_cache: Vec<Option<u32>> = vec![None; tab_l.num_irreducibles()];
    let mut assignments = Vec::new();
    let num_orth = decomp.mult.first().map_or(0, |r| r.len());
    for j in 0..num_orth {
        let constituents = decomp.theta_of_orth(j);
        if constituents.is_empty() {
            return Err(Error::NonUniqueEta(format!(
                "orthogonal irreducible {j} has empty theta lift"
            )));
        }
        let mut max_rank = 0;
        let mut argmax = Vec::new();
        for &(i, _m) in &constituents {
            let r = match rank_cache[i] {
                Some(r) => r,
                None => {
                    let r = character_rank(&tab_l.row(i), gl, sp_half_dim, tol)?;
                    rank_cache[i] = Some(r);
                    r
                }
            };
            match r.cmp(&max_rank) {
                std::cmp::Ordering::Greater => {
                    max_rank = r;
                    argmax = vec![i];
                }
                std::cmp::Ordering::Equal => argmax.push(i),
                std::cmp::Ordering::Less => {}
            }
        }
        if argmax.len() != 1 {
            return Err(Error::NonUniqueEta(format!(
                "orthogonal irreducible {j}: {} constituents of rank {max_rank}",
                argmax.len()
            )));
        }
        if max_rank != expected_rank {
            return Err(Error::NonUniqueEta(format!(
                "orthogonal irreducible {j}: maximal rank {max_rank}, expected {expected_rank}"
            )));
        }
        assignments.push((j, argmax[0], max_rank));
    }
    let mut images: Vec<usize> = assignments.iter().map(|a| a.1).collect();
    images.sort_unstable();
    let before = images.len();
    images.dedup();
    Ok(EtaReport { assignments, expected_rank, injective: images.len() == before })
}

/// Rank spectrum of a theta decomposition, sorted by rank descending.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankScanRow {
    pub rank: u32,
    pub sp_irr: usize,
    pub sp_degree: u64,
    pub orth_irr: usize,
    pub orth_degree: u64,
    pub multiplicity: i64,
}

pub fn rank_support_scan(
    decomp: &ThetaDecomposition,
    gl: &Group,
    tab_l: &CharacterTable,
    tab_r: &CharacterTable,
    sp_half_dim: usize,
    tol: f64,
) -> Result<Vec<RankScanRow>> {
    let mut rows = Vec::new();
    let mut rank_cache: Vec<Option<u32>> = vec![None; tab_l.num_irreducibles()];
    for (i, mrow) in decomp.mult.iter().enumerate() {
        for (j, &m) in mrow.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let rank = match rank_cache[i] {
                Some(r) => r,
                None => {
                    let r = character_rank(&tab_l.row(i), gl, sp_half_dim, tol)?;
                    rank_cache[i] = Some(r);
                    r
                }
            };
            rows.push(RankScanRow {
                rank,
                sp_irr: i,
                sp_degree: tab_l.degrees[i],
                orth_irr: j,
                orth_degree: tab_r.degrees[j],
                multiplicity: m,
            });
        }
    }
    rows.sort_by(|a, b| {
        b.rank
            .cmp(&a.rank)
            .then(a.sp_irr.cmp(&b.sp_irr))
            .then(a.orth_irr.cmp(&b.orth_irr))
    });
    Ok(rows)
}

/// Which side of the pair the parabolic restriction acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoinvSide {
    /// (*R_k x 1): restriction on the symplectic member.
    Symplectic,
    /// (1 x *R'_k'): restriction on the orthogonal member.
    Orthogonal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoinvReport {
    pub side: CoinvSide,
    pub m: u32,
    pub m_prime: u32,
    pub k: u32,
    pub orth_kind: FormKind,
    pub q: u32,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub lhs_at_identity: f64,
    pub rhs_at_identity: f64,
}

/// Verifies the coinvariant decomposition of the Weil character under
/// one-step parabolic restriction, comparing both sides pointwise as class
/// functions.  Desk-scale instance: m = 1, k = 1, arbitrary tower position
/// m' within the operator guard.
///
/// Every Weil character in the identity carries its flat normalization
/// det(g')^m (see [`crate::weil::flat_twist`]); with plain characters the
/// two sides differ by a sign pattern on the negative-determinant classes.
/// The induction term exists only when the Witt index of the orthogonal
/// member is positive.
pub fn verify_coinvariants(
    m: u32,
    m_prime: u32,
    k: u32,
    side: CoinvSide,
    orth_kind: FormKind,
    q: u32,
    tol: f64,
) -> Result<CoinvReport> {
    if m != 1 || k != 1 {
        return Err(Error::ScaleGuard {
            estimate: u128::from(m) * u128::from(k),
            limit: 1,
        });
    }
    if orth_kind == FormKind::Symplectic {
        return Err(Error::Shape("pair must be symplectic-orthogonal".into()));
    }
    match side {
        CoinvSide::Symplectic => coinv_symplectic_side(m_prime, orth_kind, q, tol),
        CoinvSide::Orthogonal => coinv_orthogonal_side(m_prime, orth_kind, q, tol),
    }
}

/// Side a) with m = k = 1: restriction to the torus Levi of Sp_2.
/// The decomposition reads, pointwise on (t, g'),
///   (1/|N_1|) sum_u weil-flat(t u, g') = 1 + Ind_{P'_1}^{G'}((q-1)[t' = t])(g'),
/// the induction term present only when the orthogonal member has a
/// parabolic to induce from.
fn coinv_symplectic_side(
    m_prime: u32,
    orth_kind: FormKind,
    q: u32,
    tol: f64,
) -> Result<CoinvReport> {
    let gl = standard_symplectic_group(1, q)?;
    let orth_spec = FormSpec::new(orth_kind, m_prime, q)?;
    let gr = orth_spec.enumerate_group()?;
    let dp = DualPair::new(1, orth_kind, m_prime, q)?;
    let weil = dp.character(&gl, &gr, crate::weil::flat_twist(1))?;

    let sp_blocks = vec![1usize, 0, 1];
    let pe = parabolic_elements(&gl, &sp_blocks);
    let radical = &pe.radical;
    let torus = &pe.levi;

    let ind_term: Option<(ParabolicData, Vec<ClassFunction>)> = if orth_spec.witt_index() >= 1 {
        let blocks = vec![1usize, orth_spec.dim() - 2, 1];
        let pd = ParabolicData::new(&gr, &blocks)?;
        let mut per_torus = Vec::new();
        for &t in torus {
            let t_val = gl.element(t).get(0, 0);
            let f = ClassFunction {
                values: pd
                    .levi
                    .group
                    .classes
                    .iter()
                    .map(|cl| {
                        let t_prime = pd.levi.group.element(cl.rep).get(0, 0);
                        if t_prime == t_val {
                            C64::new(f64::from(q) - 1.0, 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    })
                    .collect(),
            };
            per_torus.push(parabolic_induce(&f, &gr, &pd));
        }
        Some((pd, per_torus))
    } else {
        None
    };

    let mut max_dev: f64 = 0.0;
    let mut lhs_id = 0.0;
    let mut rhs_id = 0.0;
    for (ti, &t) in torus.iter().enumerate() {
        for (cj, cl) in gr.classes.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &u in radical {
                acc += weil.eval(&gl, &gr, gl.mul(t, u), cl.rep);
            }
            let lhs = acc / radical.len() as f64;
            let mut rhs = C64::new(1.0, 0.0);
            if let Some((_, per_torus)) = &ind_term {
                rhs += per_torus[ti].values[cj];
            }
            max_dev = max_dev.max((lhs - rhs).norm());
            if t == gl.identity_index() && cl.rep == gr.identity_index() {
                lhs_id = lhs.re;
                rhs_id = rhs.re;
            }
        }
    }
    Ok(CoinvReport {
        side: CoinvSide::Symplectic,
        m: 1,
        m_prime,
        k: 1,
        orth_kind,
        q,
        max_deviation: max_dev,
        tolerance: tol,
        pass: max_dev < tol,
        lhs_at_identity: lhs_id,
        rhs_at_identity: rhs_id,
    })
}

/// Side b) with m = k' = 1: restriction to the Levi GL_1 x O_{2(m'-1)} of
/// the orthogonal member.  Pointwise on (g, l' = (t', h')),
///   (1/|N'_1|) sum_u weil-flat_{1,m'}(g, l' u)
///     = weil-flat_{1,m'-1}(g, h') + Ind_{P_1}^{Sp_2}((q-1)[t = t'])(g).
fn coinv_orthogonal_side(
    m_prime: u32,
    orth_kind: FormKind,
    q: u32,
    tol: f64,
) -> Result<CoinvReport> {
    let orth_spec = FormSpec::new(orth_kind, m_prime, q)?;
    if orth_spec.witt_index() == 0 {
        return Err(Error::Shape("orthogonal member has no proper parabolic".into()));
    }
    let gl = standard_symplectic_group(1, q)?;
    let gr = orth_spec.enumerate_group()?;
    let dp = DualPair::new(1, orth_kind, m_prime, q)?;
    let weil = dp.character(&gl, &gr, crate::weil::flat_twist(1))?;

    let small_spec = FormSpec::new(orth_kind, m_prime - 1, q)?;
    let gr_small = small_spec.enumerate_group()?;
    let dp_small = DualPair::new(1, orth_kind, m_prime - 1, q)?;
    let weil_small = dp_small.character(&gl, &gr_small, crate::weil::flat_twist(1))?;

    let blocks = vec![1usize, orth_spec.dim() - 2, 1];
    let pe = parabolic_elements(&gr, &blocks);

    // Induction on the symplectic side, one induced function per torus value.
    let sp_pd = ParabolicData::new(&gl, &[1usize, 0, 1])?;
    let mut induced: std::collections::HashMap<u32, ClassFunction> = Default::default();
    for t_prime in 1..q {
        let f = ClassFunction {
            values: sp_pd
                .levi
                .group
                .classes
                .iter()
                .map(|cl| {
                    let t = sp_pd.levi.group.element(cl.rep).get(0, 0);
                    if t == t_prime {
                        C64::new(f64::from(q) - 1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect(),
        };
        induced.insert(t_prime, parabolic_induce(&f, &gl, &sp_pd));
    }

    let mid = orth_spec.dim() - 2;
    let mut max_dev: f64 = 0.0;
    let mut lhs_id = 0.0;
    let mut rhs_id = 0.0;
    for &l in &pe.levi {
        let lm = gr.element(l);
        let t_prime = lm.get(0, 0);
        let mut middle = crate::gfq::MatrixFq::zero(mid, mid, q);
        for r in 0..mid {
            for c in 0..mid {
                middle.set(r, c, lm.get(1 + r, 1 + c));
            }
        }
        let h_small = gr_small
            .lookup(&middle)
            .ok_or_else(|| Error::Internal("Levi block is not in the smaller group".into()))?;
        for (ci, cl) in gl.classes.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &u in &pe.radical {
                acc += weil.eval(&gl, &gr, cl.rep, gr.mul(l, u));
            }
            let lhs = acc / pe.radical.len() as f64;
            let rhs = weil_small.eval(&gl, &gr_small, cl.rep, h_small)
                + induced[&t_prime].values[ci];
            max_dev = max_dev.max((lhs - rhs).norm());
            if cl.rep == gl.identity_index() && l == gr.identity_index() {
                lhs_id = lhs.re;
                rhs_id = rhs.re;
            }
        }
    }
    Ok(CoinvReport {
        side: CoinvSide::Orthogonal,
        m: 1,
        m_prime,
        k: 1,
        orth_kind,
        q,
        max_deviation: max_dev,
        tolerance: tol,
        pass: max_dev < tol,
        lhs_at_identity: lhs_id,
        rhs_at_identity: rhs_id,
    })
}

/// One member of a Witt tower in a first-occurrence scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerMemberReport {
    pub orth_kind: FormKind,
    pub tower_param: u32,
    pub total_multiplicity: i64,
    /// (orth irreducible, multiplicity, weakly cuspidal).
    pub constituents: Vec<(usize, i64, bool)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FirstOccurrenceReport {
    pub pi: usize,
    pub members: Vec<TowerMemberReport>,
    /// Index into `members` of the first nonempty lift, if any.
    pub first_occurrence: Option<usize>,
    /// Item 2: at first occurrence the lift is a single irreducible and it
    /// is weakly cuspidal.  None when the first occurrence is out of range.
    pub irreducible_and_weakly_cuspidal_at_first: Option<bool>,
    /// Item 3: above the first occurrence no constituent is weakly
    /// cuspidal.  None when nothing lies above within the scanned range.
    pub no_weakly_cuspidal_above: Option<bool>,
}

/// Scans Theta(pi) along a tower of orthogonal groups for a fixed
/// irreducible pi of Sp_2m(q).
pub fn first_occurrence_scan(
    m: u32,
    q: u32,
    gl: &Group,
    tab_l: &CharacterTable,
    pi: usize,
    tower: &[(FormKind, u32)],
    twist: Twist,
    tol: f64,
) -> Result<FirstOccurrenceReport> {
    let chi = tab_l.row(pi);
    let mut members = Vec::new();
    for &(kind, j) in tower {
        let spec = FormSpec::new(kind, j, q)?;
        let gr = spec.enumerate_group()?;
        let tab_r = crate::chartab::dixon_schneider(&gr)?;
        let dp = DualPair::new(m, kind, j, q)?;
        let weil = dp.character(gl, &gr, twist)?;
        let mut constituents = Vec::new();
        let mut total = 0i64;
        for jr in 0..tab_r.num_irreducibles() {
            let raw = weil.inner_with_product(&chi, &tab_r.row(jr), gl, &gr);
            let (mult, dev) = round_to_integer(raw);
            if dev > tol {
                return Err(Error::NonIntegerMultiplicity { value: raw.re, deviation: dev });
            }
            if mult > 0 {
                let wc = crate::functors::is_weakly_cuspidal(&tab_r.row(jr), &gr, &spec, tol.min(1e-8));
                constituents.push((jr, mult, wc));
                total += mult;
            }
        }
        members.push(TowerMemberReport {
            orth_kind: kind,
            tower_param: j,
            total_multiplicity: total,
            constituents,
        });
    }
    let first_occurrence = members.iter().position(|m| m.total_multiplicity > 0);
    let irreducible_and_weakly_cuspidal_at_first = first_occurrence.map(|idx| {
        let mem = &members[idx];
        mem.total_multiplicity == 1 && mem.constituents.iter().all(|&(_, _, wc)| wc)
    });
    let no_weakly_cuspidal_above = match first_occurrence {
        Some(idx) if idx + 1 < members.len() => Some(
            members[idx + 1..]
                .iter()
                .all(|m| m.constituents.iter().all(|&(_, _, wc)| !wc)),
        ),
        _ => None,
    };
    Ok(FirstOccurrenceReport {
        pi,
        members,
        first_occurrence,
        irreducible_and_weakly_cuspidal_at_first,
        no_weakly_cuspidal_above,
    })
}

/// Index of the trivial character in a table.
pub fn trivial_character_index(tab: &CharacterTable) -> Option<usize> {
    (0..tab.num_irreducibles()).find(|&i| {
        tab.values[i]
            .iter()
            .all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-9)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_schneider;

    #[test]
    fn theta_decompose_small_pair() {
        // (Sp_2(3), O_2^+(3)).
        let gl = standard_symplectic_group(1, 3).unwrap();
        let gr = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let tab_l = dixon_schneider(&gl).unwrap();
        let tab_r = dixon_schneider(&gr).unwrap();
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 3).unwrap();
        let d = theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, Twist::Trivial, 1e-6).unwrap();
        assert_eq!(dimension_bookkeeping(&d, &tab_l, &tab_r), 9);
        assert!(parseval_defect(&d, &gl, &gr) < 1e-6);
        assert!(d.mult.iter().flatten().all(|&m| m >= 0));
    }

    #[test]
    fn theta_through_the_zero_tower_member_is_trivial_pairing() {
        let gl = standard_symplectic_group(1, 3).unwrap();
        let gr = FormSpec::new(FormKind::OrthogonalPlus, 0, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let tab_l = dixon_schneider(&gl).unwrap();
        let tab_r = dixon_schneider(&gr).unwrap();
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 0, 3).unwrap();
        let d = theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, Twist::Trivial, 1e-6).unwrap();
        // Only the trivial character of Sp_2 pairs with the trivial group.
        let triv = trivial_character_index(&tab_l).unwrap();
        for (i, row) in d.mult.iter().enumerate() {
            assert_eq!(row[0], i64::from(i == triv));
        }
    }

    #[test]
    fn rank_scan_is_sorted_and_bounded() {
        let gl = standard_symplectic_group(1, 3).unwrap();
        let gr = FormSpec::new(FormKind::OrthogonalPlus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        let tab_l = dixon_schneider(&gl).unwrap();
        let tab_r = dixon_schneider(&gr).unwrap();
        let dp = DualPair::new(1, FormKind::OrthogonalPlus, 1, 3).unwrap();
        let d = theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, Twist::Trivial, 1e-6).unwrap();
        let rows = rank_support_scan(&d, &gl, &tab_l, &tab_r, 1, 1e-6).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.windows(2).all(|w| w[0].rank >= w[1].rank));
        assert_eq!(rows[0].rank, 1);
        // Multiplicities in the table agree with the decomposition.
        for row in &rows {
            assert_eq!(row.multiplicity, d.mult[row.sp_irr][row.orth_irr]);
        }
    }

    #[test]
    fn rank_two_dual_pair_embeds_symplectically() {
        // The m = 2 path: embedded images commute and are standard
        // symplectic in Sp_8(3).
        let dp = DualPair::new(2, FormKind::OrthogonalMinus, 1, 3).unwrap();
        let gl = standard_symplectic_group(2, 3).unwrap();
        let gr = FormSpec::new(FormKind::OrthogonalMinus, 1, 3)
            .unwrap()
            .enumerate_group()
            .unwrap();
        for &a in gl.generators.iter() {
            let left = dp.embed_left(gl.element(a));
            assert!(crate::weil::is_standard_symplectic(&left));
            for &b in gr.generators.iter() {
                let right = dp.embed_right(gr.element(b));
                assert!(crate::weil::is_standard_symplectic(&right));
                assert_eq!(left.mul(&right), right.mul(&left));
            }
        }
    }

    #[test]
    fn coinvariants_boundary_m_prime_zero() {
        // Degenerate i-range: single term, both sides equal 1.
        let rep = verify_coinvariants(
            1,
            0,
            1,
            CoinvSide::Symplectic,
            FormKind::OrthogonalPlus,
            3,
            1e-8,
        )
        .unwrap();
        assert!(rep.pass, "deviation {}", rep.max_deviation);
        assert!((rep.lhs_at_identity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn coinvariants_1_1_both_sides() {
        // Side a) for both orthogonal types; side b) needs Witt index >= 1,
        // which rules out O_2^-.
        for kind in [FormKind::OrthogonalPlus, FormKind::OrthogonalMinus] {
            let rep =
                verify_coinvariants(1, 1, 1, CoinvSide::Symplectic, kind, 3, 1e-8).unwrap();
            assert!(rep.pass, "side a kind {kind:?}: deviation {}", rep.max_deviation);
        }
        let rep = verify_coinvariants(
            1,
            1,
            1,
            CoinvSide::Orthogonal,
            FormKind::OrthogonalPlus,
            3,
            1e-8,
        )
        .unwrap();
        assert!(rep.pass, "side b: deviation {}", rep.max_deviation);
        assert!(matches!(
            verify_coinvariants(
                1,
                1,
                1,
                CoinvSide::Orthogonal,
                FormKind::OrthogonalMinus,
                3,
                1e-8,
            ),
            Err(Error::Shape(_))
        ));
    }
}
