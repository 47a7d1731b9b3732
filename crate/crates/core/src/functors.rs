//! Parabolic restriction and induction on class functions, the biregular
//! character, and weak cuspidality.

use crate::classfn::{ClassFunction, PairClassFunction, C64};
use crate::error::{Error, Result};
use crate::geometry::{parabolic_elements, pure_levi_blocks, FormSpec};
use crate::gfq::MatrixFq;
use crate::group::{Group, Subgroup};

/// A standard parabolic P = M N of an enumerated group, with M and P
/// rebuilt as groups of their own for class-function work.
pub struct ParabolicData {
    pub blocks: Vec<usize>,
    pub parabolic: Subgroup,
    pub levi: Subgroup,
    /// Indices (in the parent group) of the unipotent radical.
    pub radical: Vec<usize>,
    /// For each element of P (in subgroup indexing), the index in the Levi
    /// subgroup of its block-diagonal part.
    levi_part: Vec<usize>,
}

impl ParabolicData {
    pub fn new(g: &Group, blocks: &[usize]) -> Result<Self> {
        let pe = parabolic_elements(g, blocks);
        if pe.parabolic.is_empty() {
            return Err(Error::Internal("empty parabolic".into()));
        }
        let parabolic = Subgroup::new(g, &pe.parabolic)?;
        let levi = Subgroup::new(g, &pe.levi)?;
        if parabolic.group.order() != levi.group.order() * pe.radical.len() {
            return Err(Error::Internal("parabolic does not factor as M N".into()));
        }
        let mut levi_part = Vec::with_capacity(parabolic.group.order());
        for i in 0..parabolic.group.order() {
            let e = parabolic.group.element(i);
            let m = diagonal_part(e, blocks);
            let sub_idx = levi
                .group
                .lookup(&m)
                .ok_or_else(|| Error::Internal("diagonal part is not in the Levi".into()))?;
            levi_part.push(sub_idx);
        }
        Ok(ParabolicData { blocks: blocks.to_vec(), parabolic, levi, radical: pe.radical, levi_part })
    }

    pub fn radical_order(&self) -> usize {
        self.radical.len()
    }
}

/// Block-diagonal part of a block-upper-triangular matrix.
pub fn diagonal_part(x: &MatrixFq, blocks: &[usize]) -> MatrixFq {
    let mut out = MatrixFq::zero(x.rows, x.cols, x.q);
    let mut start = 0;
    for &b in blocks {
        for r in start..start + b {
            for c in start..start + b {
                out.set(r, c, x.get(r, c));
            }
        }
        start += b;
    }
    out
}

/// Parabolic restriction: (*R chi)(l) = (1/|N|) sum_{u in N} chi(l u),
/// returned as a class function on the Levi subgroup.
pub fn parabolic_restrict(chi: &ClassFunction, g: &Group, pd: &ParabolicData) -> ClassFunction {
    let n = pd.radical_order() as f64;
    let values = pd
        .levi
        .group
        .classes
        .iter()
        .map(|cl| {
            let l_parent = pd.levi.to_parent[cl.rep];
            let mut acc = C64::new(0.0, 0.0);
            for &u in &pd.radical {
                acc += chi.eval(g, g.mul(l_parent, u));
            }
            acc / n
        })
        .collect();
    ClassFunction { values }
}

/// Parabolic induction of a class function on the Levi: inflate through
/// P -> M and induce from P to G by the class-fusion formula.
pub fn parabolic_induce(sigma: &ClassFunction, g: &Group, pd: &ParabolicData) -> ClassFunction {
    let p_order = pd.parabolic.group.order() as f64;
    // Inflated values on P-classes.
    let inflated: Vec<C64> = pd
        .parabolic
        .group
        .classes
        .iter()
        .map(|cl| {
            let m_idx = pd.levi_part[cl.rep];
            sigma.values[pd.levi.group.class_of(m_idx)]
        })
        .collect();
    let mut values = vec![C64::new(0.0, 0.0); g.num_classes()];
    for (j, cl) in pd.parabolic.group.classes.iter().enumerate() {
        let target = pd.parabolic.fusion[j];
        values[target] += inflated[j] * cl.members.len() as f64;
    }
    for (k, v) in values.iter_mut().enumerate() {
        *v = *v * g.centralizer_order(k) as f64 / p_order;
    }
    ClassFunction { values }
}

/// The biregular character of G x G: (g, h) -> |C_G(g)| when g and h are
/// conjugate, 0 otherwise.
pub fn rg_character(g: &Group) -> PairClassFunction {
    let mut out = PairClassFunction::zero(g, g);
    for c in 0..g.num_classes() {
        out.values[c][c] = C64::new(g.centralizer_order(c) as f64, 0.0);
    }
    out
}

/// Largest absolute value of the restriction of chi to the pure Levi
/// M_{r, n-r}, evaluated on all Levi elements.
pub fn pure_restriction_max(chi: &ClassFunction, g: &Group, spec: &FormSpec, r: usize) -> f64 {
    let blocks = pure_levi_blocks(spec, r);
    let pe = parabolic_elements(g, &blocks);
    let n = pe.radical.len() as f64;
    let mut worst: f64 = 0.0;
    for &l in &pe.levi {
        let mut acc = C64::new(0.0, 0.0);
        for &u in &pe.radical {
            acc += chi.eval(g, g.mul(l, u));
        }
        worst = worst.max((acc / n).norm());
    }
    worst
}

/// True when the parabolic restriction of chi vanishes for every proper
/// pure Levi subgroup.
pub fn is_weakly_cuspidal(chi: &ClassFunction, g: &Group, spec: &FormSpec, tol: f64) -> bool {
    (1..=spec.witt_index() as usize)
        .all(|r| pure_restriction_max(chi, g, spec, r) < tol)
}

/// True when every proper parabolic restriction vanishes (all standard
/// block splittings, not only the pure ones).
pub fn is_cuspidal(chi: &ClassFunction, g: &Group, spec: &FormSpec, tol: f64) -> bool {
    for k in 1..=spec.witt_index() as usize {
        let blocks = crate::geometry::maximal_parabolic_blocks(spec, k);
        let pe = parabolic_elements(g, &blocks);
        let n = pe.radical.len() as f64;
        for &l in &pe.levi {
            let mut acc = C64::new(0.0, 0.0);
            for &u in &pe.radical {
                acc += chi.eval(g, g.mul(l, u));
            }
            if (acc / n).norm() >= tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_schneider;
    use crate::geometry::maximal_parabolic_blocks;
    use rand::Rng;
    use rand::SeedableRng;

    fn sp2() -> (Group, FormSpec) {
        let spec = FormSpec::symplectic(1, 3).unwrap();
        (spec.enumerate_group().unwrap(), spec)
    }

    #[test]
    fn restriction_of_trivial_is_trivial() {
        let (g, spec) = sp2();
        let pd = ParabolicData::new(&g, &maximal_parabolic_blocks(&spec, 1)).unwrap();
        let res = parabolic_restrict(&ClassFunction::trivial(&g), &g, &pd);
        for v in &res.values {
            assert!((v - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn frobenius_reciprocity_for_trivial() {
        let (g, spec) = sp2();
        let pd = ParabolicData::new(&g, &maximal_parabolic_blocks(&spec, 1)).unwrap();
        let ind = parabolic_induce(&ClassFunction::trivial(&pd.levi.group), &g, &pd);
        let ip = ind.inner(&ClassFunction::trivial(&g), &g);
        assert!(ip.re >= 1.0 - 1e-9);
        assert!(ip.im.abs() < 1e-9);
    }

    #[test]
    fn adjointness_on_random_virtual_characters() {
        let spec = FormSpec::symplectic(2, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        let tab = dixon_schneider(&g).unwrap();
        let pd = ParabolicData::new(&g, &maximal_parabolic_blocks(&spec, 1)).unwrap();
        let levi_tab = dixon_schneider(&pd.levi.group).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            // Random virtual characters of G and of M.
            let mut chi = ClassFunction::zero(&g);
            for i in 0..tab.num_irreducibles() {
                let c = rng.gen_range(-3i32..=3) as f64;
                chi = chi.add(&tab.row(i).scale(C64::new(c, 0.0)));
            }
            let mut sigma = ClassFunction::zero(&pd.levi.group);
            for i in 0..levi_tab.num_irreducibles() {
                let c = rng.gen_range(-3i32..=3) as f64;
                sigma = sigma.add(&levi_tab.row(i).scale(C64::new(c, 0.0)));
            }
            let lhs = parabolic_restrict(&chi, &g, &pd).inner(&sigma, &pd.levi.group);
            let rhs = chi.inner(&parabolic_induce(&sigma, &g, &pd), &g);
            assert!((lhs - rhs).norm() < 1e-7, "adjointness: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn induction_matches_brute_force_on_sp2() {
        // Direct formula: Ind(sigma)(g) = (1/|P|) sum over x with
        // x g x^-1 in P of sigma(levi part of x g x^-1).
        let (g, spec) = sp2();
        let blocks = maximal_parabolic_blocks(&spec, 1);
        let pd = ParabolicData::new(&g, &blocks).unwrap();
        let levi_tab = dixon_schneider(&pd.levi.group).unwrap();
        for i in 0..levi_tab.num_irreducibles() {
            let sigma = levi_tab.row(i);
            let ind = parabolic_induce(&sigma, &g, &pd);
            for (k, cl) in g.classes.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for x in 0..g.order() {
                    let conj = g.mul(g.mul(x, cl.rep), g.inv(x));
                    if let Some(sub) = pd.parabolic.from_parent.get(&conj) {
                        let m = pd.levi_part[*sub];
                        acc += sigma.values[pd.levi.group.class_of(m)];
                    }
                }
                acc /= pd.parabolic.group.order() as f64;
                assert!((acc - ind.values[k]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn rg_character_matches_column_orthogonality() {
        let (g, _) = sp2();
        let tab = dixon_schneider(&g).unwrap();
        let rg = rg_character(&g);
        for a in 0..g.num_classes() {
            for b in 0..g.num_classes() {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..tab.num_irreducibles() {
                    acc += tab.values[i][a] * tab.values[i][b].conj();
                }
                assert!((acc - rg.values[a][b]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn weak_cuspidality_on_sl2_3() {
        let (g, spec) = sp2();
        let tab = dixon_schneider(&g).unwrap();
        // The trivial character restricts to the trivial character of the
        // torus, so it is not weakly cuspidal.
        let trivial_idx = (0..tab.num_irreducibles())
            .find(|&i| tab.row(i).values.iter().all(|v| (v - C64::new(1.0, 0.0)).norm() < 1e-9))
            .unwrap();
        assert!(!is_weakly_cuspidal(&tab.row(trivial_idx), &g, &spec, 1e-8));
        // For Sp_2 the only proper pure Levi is the torus, so weak
        // cuspidality and cuspidality agree.  SL2(3) has three cuspidal
        // characters: one of degree 2 and the two nontrivial linear ones
        // (the other two degree-2 characters sit in the principal series
        // of the sign character of the torus).
        let mut wc = 0;
        for i in 0..tab.num_irreducibles() {
            let chi = tab.row(i);
            let weak = is_weakly_cuspidal(&chi, &g, &spec, 1e-8);
            let full = is_cuspidal(&chi, &g, &spec, 1e-8);
            assert_eq!(weak, full);
            if weak {
                wc += 1;
            }
        }
        assert_eq!(wc, 3);
    }

    #[test]
    fn vacuous_weak_cuspidality_for_rank_zero() {
        let spec = FormSpec::new(crate::geometry::FormKind::OrthogonalPlus, 0, 3).unwrap();
        let g = spec.enumerate_group().unwrap();
        assert!(is_weakly_cuspidal(&ClassFunction::trivial(&g), &g, &spec, 1e-8));
    }
}
