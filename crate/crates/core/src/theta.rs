//! The theta bijection on (bi)partitions, the Harish-Chandra series-label
//! map, and centralizer-shape bookkeeping.
//!
//! Everything here is label-level combinatorics: cuspidal representations of
//! GL factors are opaque tags, and the first-occurrence index of a cuspidal
//! descriptor is an input datum rather than something we derive.

use crate::error::{Error, Result};
use crate::partition::{union_ones, BiPartition, Partition};
use serde::{Deserialize, Serialize};

/// Kind of a type I dual pair.  `epsilon` is the type of the even orthogonal
/// member and is only meaningful for symplectic-orthogonal pairs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DualPairKind {
    Unitary,
    SymplecticOrthogonal { epsilon: i8 },
}

/// Group kind for cuspidal-unipotent size tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupKind {
    Unitary,
    Symplectic,
    EvenOrthogonal,
}

/// Whether `l` is the rank of a group carrying a cuspidal unipotent
/// representation, together with the witness parameter `k`:
/// triangular `k(k+1)/2` for unitary, `k(k+1)` for symplectic,
/// a square `k^2` for even orthogonal.
pub fn is_cuspidal_unipotent_size(kind: GroupKind, l: u32) -> (bool, Option<u32>) {
    for k in 0.. {
        let val = match kind {
            GroupKind::Unitary => k * (k + 1) / 2,
            GroupKind::Symplectic => k * (k + 1),
            GroupKind::EvenOrthogonal => k * k,
        };
        if val == l {
            return (true, Some(k));
        }
        if val > l {
            return (false, None);
        }
    }
    unreachable!()
}

/// Theta on bipartitions for a unitary pair.  `bp = (lambda, mu)` of size
/// `r`; the image is a bipartition of `r_prime`.  The branch is selected by
/// the cuspidal core parameter `k`: `((r'-r) u mu, lambda)` when `k` is odd
/// or zero, `(mu, (r'-r) u lambda)` otherwise.
pub fn theta_bipartition_unitary(
    bp: &BiPartition,
    r: u32,
    r_prime: u32,
    k: u32,
) -> Result<BiPartition> {
    check_sizes(bp, r, r_prime)?;
    let d = r_prime - r;
    let (lambda, mu) = (&bp.first, &bp.second);
    if k % 2 == 1 || k == 0 {
        Ok(BiPartition::new(mu.union_with_part(d), lambda.clone()))
    } else {
        Ok(BiPartition::new(mu.clone(), lambda.union_with_part(d)))
    }
}

/// Theta on bipartitions for a symplectic-orthogonal pair.  The branch is
/// `(lambda, (r'-r) u mu)` when `k = (epsilon-1)/2 mod 2`, and
/// `((r'-r) u lambda, mu)` otherwise.
pub fn theta_bipartition_symporth(
    bp: &BiPartition,
    r: u32,
    r_prime: u32,
    k: u32,
    epsilon: i8,
) -> Result<BiPartition> {
    check_sizes(bp, r, r_prime)?;
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::InconsistentLabel(format!("epsilon = {epsilon}")));
    }
    let d = r_prime - r;
    let (lambda, mu) = (&bp.first, &bp.second);
    // (epsilon - 1)/2 mod 2 is 0 for epsilon = +1 and 1 for epsilon = -1.
    let branch = if epsilon == 1 { 0 } else { 1 };
    if k % 2 == branch {
        Ok(BiPartition::new(lambda.clone(), mu.union_with_part(d)))
    } else {
        Ok(BiPartition::new(lambda.union_with_part(d), mu.clone()))
    }
}

fn check_sizes(bp: &BiPartition, r: u32, r_prime: u32) -> Result<()> {
    if bp.size() != r {
        return Err(Error::IncomparableSizes { left: bp.size(), right: r });
    }
    if r_prime < r {
        return Err(Error::OutsideRange { r, r_prime });
    }
    Ok(())
}

/// Theta on unipotent labels of unitary groups: the image is the partition
/// whose 2-core is the staircase for `target_core_k` and whose 2-quotient is
/// the theta image of the 2-quotient of `mu`.
pub fn theta_unipotent_unitary(
    mu: &Partition,
    source_core_k: u32,
    target_core_k: u32,
    r_prime: u32,
) -> Result<Partition> {
    let core = mu.two_core();
    if core != Partition::staircase(source_core_k) {
        return Err(Error::NotATwoCore(format!(
            "2-core of {mu} is {core}, not the staircase for k = {source_core_k}"
        )));
    }
    let quot = mu.two_quotient();
    let image = theta_bipartition_unitary(&quot, quot.size(), r_prime, source_core_k)?;
    crate::partition::from_core_quotient(&Partition::staircase(target_core_k), &image)
}

/// Grouping key for weak Harish-Chandra series of unipotent labels: the
/// 2-core.  Two labels can lie in the same weak series only if keys agree.
pub fn weak_series_key(mu: &Partition) -> Partition {
    mu.two_core()
}

/// Opaque cuspidal label on a GL block of a series.  `Trivial` marks the
/// blocks that the series map may create or absorb.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum SigmaTag {
    Trivial,
    Tag(String),
}

/// Cuspidal descriptor: the witt-tower rank `l` of the group carrying the
/// cuspidal representation, its first-occurrence index in the opposite
/// tower, and the kind of its group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CuspidalDescriptor {
    pub group_rank: u32,
    pub first_occurrence: u32,
    pub kind: GroupKind,
}

/// A Harish-Chandra series label: GL block sizes `t` (a multiset, stored
/// decreasing), one cuspidal tag per block, and the cuspidal descriptor of
/// the non-GL factor.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeriesLabel {
    t: Vec<u32>,
    sigma: Vec<SigmaTag>,
    pub phi: CuspidalDescriptor,
}

impl SeriesLabel {
    pub fn new(t: Vec<u32>, sigma: Vec<SigmaTag>, phi: CuspidalDescriptor) -> Result<Self> {
        if t.len() != sigma.len() {
            return Err(Error::InconsistentLabel(format!(
                "{} block sizes but {} tags",
                t.len(),
                sigma.len()
            )));
        }
        if t.iter().any(|&x| x == 0) {
            return Err(Error::InconsistentLabel("zero GL block".into()));
        }
        let mut pairs: Vec<(u32, SigmaTag)> = t.into_iter().zip(sigma).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| format!("{:?}", a.1).cmp(&format!("{:?}", b.1))));
        let (t, sigma) = pairs.into_iter().unzip();
        Ok(SeriesLabel { t, sigma, phi })
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn sigma(&self) -> &[SigmaTag] {
        &self.sigma
    }

    /// Sum of the GL block sizes.
    pub fn t_weight(&self) -> u32 {
        self.t.iter().sum()
    }

    /// Rank of the ambient group this label belongs to.
    pub fn ambient_rank(&self) -> u32 {
        self.t_weight() + self.phi.group_rank
    }
}

/// Image of a series label under the correspondence towards rank `m_prime`.
///
/// Returns `None` below the first occurrence of the cuspidal descriptor.
/// Otherwise the image has cuspidal rank `l' = m'(phi)`, GL weight
/// `|t'| = m' - l'`, and `t' = t u 1^d` (tags extended by trivial ones) when
/// growing, or `t = t' u 1^d` (trivial-tagged 1-blocks stripped) when
/// shrinking; stripping more 1-blocks than the label has is an error.
pub fn series_image(s: &SeriesLabel, m: u32, m_prime: u32) -> Result<Option<SeriesLabel>> {
    if s.ambient_rank() != m {
        return Err(Error::InconsistentLabel(format!(
            "label has ambient rank {}, not {m}",
            s.ambient_rank()
        )));
    }
    if m_prime < s.phi.first_occurrence {
        return Ok(None);
    }
    let l_prime = s.phi.first_occurrence;
    let phi_prime = CuspidalDescriptor {
        group_rank: l_prime,
        first_occurrence: s.phi.group_rank,
        kind: opposite_kind(s.phi.kind),
    };
    let target_weight = m_prime - l_prime;
    let weight = s.t_weight();
    if target_weight >= weight {
        let d = target_weight - weight;
        let t = union_ones(&s.t, d);
        let mut sigma = s.sigma.clone();
        sigma.extend(std::iter::repeat(SigmaTag::Trivial).take(d as usize));
        Ok(Some(SeriesLabel::new(t, sigma, phi_prime)?))
    } else {
        let mut d = weight - target_weight;
        let mut t = Vec::new();
        let mut sigma = Vec::new();
        for (size, tag) in s.t.iter().zip(&s.sigma) {
            if d > 0 && *size == 1 && *tag == SigmaTag::Trivial {
                d -= 1;
            } else {
                t.push(*size);
                sigma.push(tag.clone());
            }
        }
        if d > 0 {
            return Err(Error::InconsistentLabel(format!(
                "cannot strip {d} more trivial GL_1 blocks from t = {:?}",
                s.t
            )));
        }
        Ok(Some(SeriesLabel::new(t, sigma, phi_prime)?))
    }
}

fn opposite_kind(kind: GroupKind) -> GroupKind {
    match kind {
        GroupKind::Unitary => GroupKind::Unitary,
        GroupKind::Symplectic => GroupKind::EvenOrthogonal,
        GroupKind::EvenOrthogonal => GroupKind::Symplectic,
    }
}

/// Ambient dual-group family for centralizer shapes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AmbientFamily {
    Unitary,
    SpecialOrthogonalOdd,
    OrthogonalEven,
}

/// Group family of a centralizer factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FactorFamily {
    GeneralLinear,
    Unitary,
    Symplectic,
    SpecialOrthogonalOdd,
    OrthogonalEven,
}

/// One Frobenius orbit of eigenvalues different from +-1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub label: String,
    pub multiplicity: u32,
    /// Size of the Frobenius orbit = field-extension degree of the factor.
    pub orbit_size: u32,
    /// True when the orbit is stable under duality, making the factor
    /// unitary rather than general linear.
    pub self_dual: bool,
}

/// Eigenvalue data of a rational semisimple element: multiplicities of the
/// eigenvalues 1 and -1 plus the remaining orbits.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct EigenData {
    pub nu_one: u32,
    pub nu_minus_one: u32,
    pub others: Vec<OrbitEntry>,
}

impl EigenData {
    pub fn weight(&self) -> u32 {
        self.nu_one
            + self.nu_minus_one
            + self.others.iter().map(|o| o.multiplicity * o.orbit_size).sum::<u32>()
    }
}

/// One factor of a centralizer shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ShapeFactor {
    pub label: String,
    pub family: FactorFamily,
    pub rank: u32,
    pub extension_degree: u32,
}

/// Centralizer of a rational semisimple element, as a list of factors.
/// Order is deterministic: non-(+-1) orbits sorted by label, then the -1
/// factor, then the 1 factor.  Rank-0 factors are kept so that shape
/// identities can be compared positionally.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CentralizerShape {
    pub ambient: AmbientFamily,
    pub factors: Vec<ShapeFactor>,
}

impl CentralizerShape {
    /// Factors attached to eigenvalue orbits away from 1 (for odd
    /// special-orthogonal and even orthogonal ambients this includes the -1
    /// factor; for unitary ambients only the non-(+-1) orbits).
    pub fn away_from_one(&self) -> Vec<&ShapeFactor> {
        self.factors.iter().filter(|f| f.label != "1").collect()
    }

    pub fn one_factor(&self) -> &ShapeFactor {
        self.factors.iter().find(|f| f.label == "1").expect("shape has a 1 factor")
    }
}

/// Shape of the centralizer of a semisimple element with the given
/// eigenvalue data inside a dual group of the given family and rank.
pub fn centralizer_shape(
    ambient: AmbientFamily,
    rank: u32,
    ed: &EigenData,
) -> Result<CentralizerShape> {
    if ed.weight() != rank {
        return Err(Error::InconsistentLabel(format!(
            "eigenvalue multiplicities sum to {}, ambient rank is {rank}",
            ed.weight()
        )));
    }
    if ed.others.iter().any(|o| o.multiplicity == 0 || o.orbit_size == 0) {
        return Err(Error::InconsistentLabel("orbit with zero multiplicity".into()));
    }
    let mut factors = Vec::new();
    let mut others = ed.others.clone();
    others.sort_by(|a, b| a.label.cmp(&b.label));
    for o in &others {
        factors.push(ShapeFactor {
            label: o.label.clone(),
            family: if o.self_dual { FactorFamily::Unitary } else { FactorFamily::GeneralLinear },
            rank: o.multiplicity,
            extension_degree: o.orbit_size,
        });
    }
    let (minus_family, one_family) = match ambient {
        AmbientFamily::Unitary => (FactorFamily::Unitary, FactorFamily::Unitary),
        AmbientFamily::SpecialOrthogonalOdd => {
            (FactorFamily::OrthogonalEven, FactorFamily::SpecialOrthogonalOdd)
        }
        AmbientFamily::OrthogonalEven => {
            (FactorFamily::OrthogonalEven, FactorFamily::OrthogonalEven)
        }
    };
    factors.push(ShapeFactor {
        label: "-1".into(),
        family: minus_family,
        rank: ed.nu_minus_one,
        extension_degree: 1,
    });
    factors.push(ShapeFactor {
        label: "1".into(),
        family: one_family,
        rank: ed.nu_one,
        extension_degree: 1,
    });
    Ok(CentralizerShape { ambient, factors })
}

/// Unipotent label of a centralizer factor: a partition for general linear
/// and unitary factors, a bipartition for symplectic and even orthogonal
/// ones.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum UnipotentLabel {
    Partition(Partition),
    BiPartition(BiPartition),
}

/// Label of an irreducible under the modified Lusztig correspondence:
/// an opaque tag for the product of factors away from +-1, an optional
/// unipotent label at -1 (symplectic-orthogonal pairs only), and the
/// unipotent label at 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LusztigFactors {
    pub hash_part: String,
    pub minus_one: Option<BiPartition>,
    pub one: UnipotentLabel,
}

/// Parameters of the unipotent theta applied to the 1-factor.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct XiThetaParams {
    pub r_prime: u32,
    /// Cuspidal core parameter of the source.
    pub k: u32,
    /// Cuspidal core parameter of the target (unitary unipotent case).
    pub target_core_k: u32,
}

/// Label-level involution sending a representation label to the label of
/// its dual.  The default is the identity: unipotent labels of general
/// linear and unitary factors are fixed under duality, and the opaque parts
/// are only compared for equality.  Swap in a different convention here if
/// one is ever needed.
pub fn identity_involution(label: &LusztigFactors) -> LusztigFactors {
    label.clone()
}

/// The theta map read through the modified Lusztig correspondence: dualize
/// the factors away from 1 and apply the unipotent theta to the 1-factor.
pub fn xi_theta_label(
    kind: DualPairKind,
    label: &LusztigFactors,
    params: &XiThetaParams,
) -> Result<LusztigFactors> {
    xi_theta_label_with(identity_involution, kind, label, params)
}

/// As [`xi_theta_label`] with an explicit dualization hook.
pub fn xi_theta_label_with(
    iota: fn(&LusztigFactors) -> LusztigFactors,
    kind: DualPairKind,
    label: &LusztigFactors,
    params: &XiThetaParams,
) -> Result<LusztigFactors> {
    let dualized = iota(label);
    let one = match (kind, &label.one) {
        (DualPairKind::Unitary, UnipotentLabel::Partition(mu)) => UnipotentLabel::Partition(
            theta_unipotent_unitary(mu, params.k, params.target_core_k, params.r_prime)?,
        ),
        (DualPairKind::SymplecticOrthogonal { epsilon }, UnipotentLabel::BiPartition(bp)) => {
            UnipotentLabel::BiPartition(theta_bipartition_symporth(
                bp,
                bp.size(),
                params.r_prime,
                params.k,
                epsilon,
            )?)
        }
        _ => {
            return Err(Error::InconsistentLabel(
                "unipotent label kind does not match the pair kind".into(),
            ))
        }
    };
    Ok(LusztigFactors { hash_part: dualized.hash_part, minus_one: dualized.minus_one, one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_bipartitions, enumerate_partitions, from_core_quotient};
    use std::collections::{BTreeMap, HashSet};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn bp(a: &[u32], b: &[u32]) -> BiPartition {
        BiPartition::new(p(a), p(b))
    }

    #[test]
    fn unitary_rule_examples() {
        assert_eq!(
            theta_bipartition_unitary(&bp(&[1], &[]), 1, 3, 1).unwrap(),
            bp(&[2], &[1])
        );
        assert_eq!(
            theta_bipartition_unitary(&bp(&[1], &[]), 1, 3, 2).unwrap(),
            bp(&[], &[2, 1])
        );
        assert_eq!(
            theta_bipartition_unitary(&BiPartition::empty(), 0, 0, 0).unwrap(),
            BiPartition::empty()
        );
        assert!(matches!(
            theta_bipartition_unitary(&bp(&[1], &[]), 1, 0, 1),
            Err(Error::OutsideRange { .. })
        ));
    }

    #[test]
    fn symporth_rule_examples() {
        assert_eq!(
            theta_bipartition_symporth(&bp(&[1], &[1]), 2, 4, 0, 1).unwrap(),
            bp(&[1], &[2, 1])
        );
        assert_eq!(
            theta_bipartition_symporth(&bp(&[1], &[1]), 2, 4, 0, -1).unwrap(),
            bp(&[2, 1], &[1])
        );
        for k in 0..4 {
            for eps in [1, -1] {
                assert_eq!(
                    theta_bipartition_symporth(&BiPartition::empty(), 0, 0, k, eps).unwrap(),
                    BiPartition::empty()
                );
            }
        }
    }

    #[test]
    fn theta_maps_are_injective_and_size_correct() {
        for r in 0..=6u32 {
            let bps = enumerate_bipartitions(r);
            for r_prime in r..=r + 4 {
                for k in 0..=3u32 {
                    let mut seen = HashSet::new();
                    for b in &bps {
                        let img = theta_bipartition_unitary(b, r, r_prime, k).unwrap();
                        assert_eq!(img.size(), r_prime);
                        assert!(seen.insert(img));
                    }
                    for eps in [1i8, -1] {
                        let mut seen = HashSet::new();
                        for b in &bps {
                            let img =
                                theta_bipartition_symporth(b, r, r_prime, k, eps).unwrap();
                            assert_eq!(img.size(), r_prime);
                            assert!(seen.insert(img));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_at_equal_rank_is_an_involution() {
        for r in 0..=6u32 {
            for b in enumerate_bipartitions(r) {
                for k in 0..=3u32 {
                    let once = theta_bipartition_unitary(&b, r, r, k).unwrap();
                    let twice = theta_bipartition_unitary(&once, r, r, k).unwrap();
                    assert_eq!(twice, b);
                    for eps in [1i8, -1] {
                        let once = theta_bipartition_symporth(&b, r, r, k, eps).unwrap();
                        let twice = theta_bipartition_symporth(&once, r, r, k, eps).unwrap();
                        assert_eq!(twice, b);
                    }
                }
            }
        }
    }

    #[test]
    fn unipotent_unitary_examples() {
        assert_eq!(theta_unipotent_unitary(&p(&[1]), 1, 1, 0).unwrap(), p(&[1]));
        let img = theta_unipotent_unitary(&Partition::empty(), 0, 0, 1).unwrap();
        assert_eq!(img.size(), 2);
        let quot =
            theta_bipartition_unitary(&BiPartition::empty(), 0, 1, 0).unwrap();
        assert_eq!(img, from_core_quotient(&Partition::empty(), &quot).unwrap());
        // Size law across a grid of parameters.
        for source_k in 0..=2u32 {
            let core = Partition::staircase(source_k);
            for r in 0..=3u32 {
                for quot in enumerate_bipartitions(r) {
                    let mu = from_core_quotient(&core, &quot).unwrap();
                    for target_k in 0..=2u32 {
                        for r_prime in r..=r + 2 {
                            let img =
                                theta_unipotent_unitary(&mu, source_k, target_k, r_prime).unwrap();
                            assert_eq!(
                                img.size(),
                                Partition::staircase(target_k).size() + 2 * r_prime
                            );
                        }
                    }
                }
            }
        }
        assert!(theta_unipotent_unitary(&p(&[1]), 2, 1, 3).is_err());
    }

    fn phi(l: u32, first: u32) -> CuspidalDescriptor {
        CuspidalDescriptor { group_rank: l, first_occurrence: first, kind: GroupKind::Symplectic }
    }

    #[test]
    fn series_image_vanishes_below_first_occurrence() {
        let s = SeriesLabel::new(vec![], vec![], phi(2, 2)).unwrap();
        assert!(series_image(&s, 2, 1).unwrap().is_none());
        let img = series_image(&s, 2, 2).unwrap().unwrap();
        assert!(img.t().is_empty());
        assert_eq!(img.phi.group_rank, 2);
        assert_eq!(img.phi.first_occurrence, 2);
        assert_eq!(img.phi.kind, GroupKind::EvenOrthogonal);
    }

    #[test]
    fn series_image_adjoins_and_strips_trivial_blocks() {
        let s = SeriesLabel::new(
            vec![2],
            vec![SigmaTag::Tag("a".into())],
            phi(0, 1),
        )
        .unwrap();
        // Growing: blocks of size one with trivial tags are adjoined.
        let img = series_image(&s, 2, 5).unwrap().unwrap();
        assert_eq!(img.t(), &[2, 1, 1]);
        assert_eq!(
            img.sigma().iter().filter(|t| **t == SigmaTag::Trivial).count(),
            2
        );
        // Shrinking: the image of the image strips them again.
        let back = series_image(&img, 5, 2).unwrap().unwrap();
        assert_eq!(back.t(), s.t());
        assert_eq!(back.sigma(), s.sigma());
        // Stripping more than available is inconsistent.
        assert!(series_image(&s, 2, 1).is_err() || series_image(&s, 2, 1).unwrap().is_some());
        let tight = SeriesLabel::new(vec![2], vec![SigmaTag::Tag("a".into())], phi(0, 0)).unwrap();
        assert!(matches!(series_image(&tight, 2, 1), Err(Error::InconsistentLabel(_))));
    }

    #[test]
    fn series_image_respects_vanishing_clause_exactly() {
        for first in 0..=3u32 {
            let s = SeriesLabel::new(
                vec![1, 1],
                vec![SigmaTag::Trivial, SigmaTag::Trivial],
                phi(1, first),
            )
            .unwrap();
            for m_prime in 0..=6u32 {
                let out = series_image(&s, 3, m_prime).unwrap();
                assert_eq!(out.is_none(), m_prime < first);
            }
        }
    }

    #[test]
    fn centralizer_shape_rules() {
        // Odd special orthogonal ambient.
        let ed = EigenData { nu_one: 2, nu_minus_one: 3, others: vec![] };
        let shape = centralizer_shape(AmbientFamily::SpecialOrthogonalOdd, 5, &ed).unwrap();
        assert_eq!(shape.factors.len(), 2);
        assert_eq!(shape.factors[0].family, FactorFamily::OrthogonalEven);
        assert_eq!(shape.factors[0].rank, 3);
        assert_eq!(shape.factors[1].family, FactorFamily::SpecialOrthogonalOdd);
        assert_eq!(shape.factors[1].rank, 2);
        // Even orthogonal ambient.
        let shape = centralizer_shape(AmbientFamily::OrthogonalEven, 5, &ed).unwrap();
        assert!(shape.factors.iter().all(|f| f.family == FactorFamily::OrthogonalEven));
        // Unitary ambient, all eigenvalues equal to 1.
        let ed = EigenData { nu_one: 4, nu_minus_one: 0, others: vec![] };
        let shape = centralizer_shape(AmbientFamily::Unitary, 4, &ed).unwrap();
        assert_eq!(shape.one_factor().family, FactorFamily::Unitary);
        assert_eq!(shape.one_factor().rank, 4);
        // Rank bookkeeping is enforced.
        assert!(centralizer_shape(AmbientFamily::Unitary, 3, &ed).is_err());
    }

    #[test]
    fn paired_elements_share_factors_away_from_one() {
        // s' = (s, 1): same eigenvalue data except for the multiplicity of 1.
        let orbits = vec![OrbitEntry {
            label: "z".into(),
            multiplicity: 1,
            orbit_size: 2,
            self_dual: false,
        }];
        for nu_minus in 0..3u32 {
            for nu_one in 0..3u32 {
                for extra in 0..3u32 {
                    let ed = EigenData {
                        nu_one,
                        nu_minus_one: nu_minus,
                        others: orbits.clone(),
                    };
                    let ed2 = EigenData { nu_one: nu_one + extra, ..ed.clone() };
                    let a = centralizer_shape(AmbientFamily::SpecialOrthogonalOdd, ed.weight(), &ed)
                        .unwrap();
                    let b =
                        centralizer_shape(AmbientFamily::OrthogonalEven, ed2.weight(), &ed2)
                            .unwrap();
                    let away_a: Vec<_> =
                        a.away_from_one().into_iter().map(|f| (f.label.clone(), f.rank)).collect();
                    let away_b: Vec<_> =
                        b.away_from_one().into_iter().map(|f| (f.label.clone(), f.rank)).collect();
                    assert_eq!(away_a, away_b);
                    // The 1-factors form a symplectic-orthogonal pair:
                    // dual of SO_{2a+1} is Sp_{2a}, the other is even orthogonal.
                    assert_eq!(a.one_factor().family, FactorFamily::SpecialOrthogonalOdd);
                    assert_eq!(b.one_factor().family, FactorFamily::OrthogonalEven);
                }
            }
        }
    }

    #[test]
    fn cuspidal_unipotent_sizes() {
        assert_eq!(is_cuspidal_unipotent_size(GroupKind::Unitary, 3), (true, Some(2)));
        assert_eq!(is_cuspidal_unipotent_size(GroupKind::Symplectic, 2), (true, Some(1)));
        assert_eq!(is_cuspidal_unipotent_size(GroupKind::Unitary, 4), (false, None));
        assert_eq!(is_cuspidal_unipotent_size(GroupKind::EvenOrthogonal, 4), (true, Some(2)));
        assert_eq!(is_cuspidal_unipotent_size(GroupKind::Unitary, 0), (true, Some(0)));
    }

    #[test]
    fn weak_keys_bucket_by_core() {
        assert_eq!(weak_series_key(&p(&[3, 1])), Partition::empty());
        assert_eq!(weak_series_key(&p(&[2, 1])), p(&[2, 1]));
        // Buckets of partitions of 4: cores empty and (2,1) do not appear;
        // partitions of 4 have cores of size 0 or ... enumerate and check
        // against the staircase-parity count for n <= 10.
        for n in 0..=10u32 {
            let mut buckets: BTreeMap<Partition, usize> = BTreeMap::new();
            for mu in enumerate_partitions(n) {
                *buckets.entry(weak_series_key(&mu)).or_default() += 1;
            }
            let expected = (0u32..)
                .map(|k| k * (k + 1) / 2)
                .take_while(|&s| s <= n)
                .filter(|&s| s % 2 == n % 2)
                .count();
            assert_eq!(buckets.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn xi_theta_reduces_to_unipotent_theta() {
        let params = XiThetaParams { r_prime: 4, k: 0, target_core_k: 0 };
        let label = LusztigFactors {
            hash_part: "sigma".into(),
            minus_one: Some(bp(&[1], &[])),
            one: UnipotentLabel::BiPartition(bp(&[1], &[1])),
        };
        let img = xi_theta_label(
            DualPairKind::SymplecticOrthogonal { epsilon: 1 },
            &label,
            &params,
        )
        .unwrap();
        assert_eq!(img.hash_part, "sigma");
        assert_eq!(img.minus_one, Some(bp(&[1], &[])));
        assert_eq!(
            img.one,
            UnipotentLabel::BiPartition(
                theta_bipartition_symporth(&bp(&[1], &[1]), 2, 4, 0, 1).unwrap()
            )
        );
        // Unitary case with empty quotient: identity on the hash part.
        let label = LusztigFactors {
            hash_part: "self-dual".into(),
            minus_one: None,
            one: UnipotentLabel::Partition(p(&[1])),
        };
        let img = xi_theta_label(
            DualPairKind::Unitary,
            &label,
            &XiThetaParams { r_prime: 0, k: 1, target_core_k: 1 },
        )
        .unwrap();
        assert_eq!(img.hash_part, "self-dual");
        assert_eq!(img.one, UnipotentLabel::Partition(p(&[1])));
    }

    #[test]
    fn xi_theta_is_injective_on_small_label_sets() {
        for total in 0..=6u32 {
            for eps in [1i8, -1] {
                let mut seen = HashSet::new();
                for hash in ["a", "b"] {
                    for r_minus in 0..=1u32 {
                        for minus in enumerate_bipartitions(r_minus) {
                            let r_one = total.saturating_sub(r_minus);
                            for one in enumerate_bipartitions(r_one) {
                                let label = LusztigFactors {
                                    hash_part: hash.into(),
                                    minus_one: Some(minus.clone()),
                                    one: UnipotentLabel::BiPartition(one),
                                };
                                let img = xi_theta_label(
                                    DualPairKind::SymplecticOrthogonal { epsilon: eps },
                                    &label,
                                    &XiThetaParams {
                                        r_prime: r_one + 2,
                                        k: 1,
                                        target_core_k: 0,
                                    },
                                )
                                .unwrap();
                                assert!(seen.insert(format!("{img:?}")));
                            }
                        }
                    }
                }
            }
        }
    }
}
