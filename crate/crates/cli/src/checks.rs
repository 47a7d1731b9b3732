//! The acceptance checks, callable from the command line.  Each check
//! mirrors one criterion of the integration suite and reports PASS/FAIL
//! instead of panicking.

use crate::report::CheckResult;
use anyhow::{bail, Context};
use howe_core::chartab::{dixon_schneider, CharacterTable};
use howe_core::classfn::ClassFunction;
use howe_core::duality::{
    eta_correspondence, first_occurrence_scan, theta_decompose, trivial_character_index,
    verify_coinvariants, CoinvSide,
};
use howe_core::functors::is_weakly_cuspidal;
use howe_core::geometry::{
    displayed_stabilizer_set, lagrangians, orbits_on_lagrangians, split_lagrangian, stabilizer,
    triplet_action, triplet_of, v_i_matrix, FormKind, FormSpec, OrbitTag, SplitEmbedding,
};
use howe_core::group::Group;
use howe_core::partition::{
    add_pointwise, dominance_leq, enumerate_bipartitions, enumerate_partitions,
    from_core_quotient, Partition,
};
use howe_core::theta::{theta_bipartition_symporth, theta_bipartition_unitary, weak_series_key};
use howe_core::weil::{
    character_rank, siegel_multiplicities, standard_symplectic_group, CMat, DualPair, Twist,
    WeilModel,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::json;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub q: u32,
    pub seed: u64,
    pub tol: f64,
}

pub type CheckOutput = (Vec<CheckResult>, serde_json::Value);

fn require_q3(cfg: &Config, what: &str) -> anyhow::Result<()> {
    if cfg.q != 3 {
        bail!("{what} is pinned to q = 3 at desk scale");
    }
    Ok(())
}

pub fn partitions(_cfg: &Config) -> anyhow::Result<CheckOutput> {
    let mut count = 0usize;
    for n in 0..=12u32 {
        for mu in enumerate_partitions(n) {
            let core = mu.two_core();
            let quot = mu.two_quotient();
            if core.staircase_parameter().is_none()
                || mu.size() != core.size() + 2 * quot.size()
                || from_core_quotient(&core, &quot)? != mu
            {
                return Ok((
                    vec![CheckResult::new("partition-roundtrip", false, format!("fails at {mu}"))],
                    json!({}),
                ));
            }
            count += 1;
        }
    }
    Ok((
        vec![CheckResult::new("partition-roundtrip", true, format!("{count} partitions, n <= 12"))],
        json!({ "partitions": count }),
    ))
}

pub fn theta_maps(_cfg: &Config) -> anyhow::Result<CheckOutput> {
    let mut images = 0usize;
    for r in 0..=6u32 {
        let bps = enumerate_bipartitions(r);
        for r_prime in r..=r + 4 {
            for k in 0..=3u32 {
                let mut seen = std::collections::HashSet::new();
                for bp in &bps {
                    let img = theta_bipartition_unitary(bp, r, r_prime, k)?;
                    if img.size() != r_prime || !seen.insert(img) {
                        bail!("unitary theta failed at r={r} r'={r_prime} k={k}");
                    }
                    images += 1;
                }
                for eps in [1i8, -1] {
                    let mut seen = std::collections::HashSet::new();
                    for bp in &bps {
                        let img = theta_bipartition_symporth(bp, r, r_prime, k, eps)?;
                        if img.size() != r_prime || !seen.insert(img) {
                            bail!("symporth theta failed at r={r} r'={r_prime} k={k} eps={eps}");
                        }
                        images += 1;
                    }
                }
            }
        }
    }
    Ok((
        vec![CheckResult::new("theta-maps", true, format!("{images} images, injective"))],
        json!({ "images": images }),
    ))
}

pub fn monotonicity(_cfg: &Config) -> anyhow::Result<CheckOutput> {
    let mut checked = 0usize;
    for n1 in 0..=6u32 {
        let left = enumerate_partitions(n1);
        for n2 in 0..=6u32 {
            let right = enumerate_partitions(n2);
            for mu_small in &left {
                for mu in &left {
                    if !dominance_leq(mu_small, mu)? {
                        continue;
                    }
                    for nu_small in &right {
                        for nu in &right {
                            if !dominance_leq(nu_small, nu)? {
                                continue;
                            }
                            let s = add_pointwise(&[mu_small.clone(), nu_small.clone()]);
                            let t = add_pointwise(&[mu.clone(), nu.clone()]);
                            if !dominance_leq(&s, &t)? {
                                bail!("monotonicity fails at {mu_small},{mu},{nu_small},{nu}");
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((
        vec![CheckResult::new("induction-monotonicity", true, format!("{checked} quadruples"))],
        json!({ "quadruples": checked }),
    ))
}

pub fn orbits_check(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the orbit criterion")?;
    let mut checks = Vec::new();
    let mut results = Vec::new();
    for kind in [FormKind::Symplectic, FormKind::OrthogonalPlus] {
        for (n1, n2) in [(1u32, 1u32), (2, 1)] {
            let g1 = FormSpec::new(kind, n1, 3)?.enumerate_group()?;
            let g2 = FormSpec::new(kind, n2, 3)?.enumerate_group()?;
            let rep = orbits_on_lagrangians(kind, n1, n2, 3, &g1, &g2)?;
            let total: usize = rep.orbits.iter().map(|o| o.size).sum();
            let ok = rep.covered && total == rep.total_points;
            checks.push(CheckResult::new(
                &format!("orbits-{kind:?}-{n1}-{n2}"),
                ok,
                format!("{} orbits over {} points", rep.orbits.len(), rep.total_points),
            ));
            results.push(json!({
                "kind": format!("{kind:?}"), "n1": n1, "n2": n2,
                "points": rep.total_points,
                "orbit_sizes": rep.orbits.iter().map(|o| o.size).collect::<Vec<_>>(),
                "tags": rep.orbits.iter().map(|o| format!("{:?}", o.tag)).collect::<Vec<_>>(),
            }));
        }
    }
    let csv_rows: Vec<serde_json::Value> = results
        .iter()
        .map(|r| {
            json!([
                r["kind"],
                r["n1"],
                r["n2"],
                r["points"],
                r["orbit_sizes"].to_string(),
            ])
        })
        .collect();
    Ok((checks, json!({ "reports": results, "csv_rows": csv_rows })))
}

pub fn orbit_stabilizer(cfg: &Config, kind: FormKind, n1: u32, n2: u32) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the stabilizer criterion")?;
    let g1 = FormSpec::new(kind, n1, 3)?.enumerate_group()?;
    let g2 = FormSpec::new(kind, n2, 3)?.enumerate_group()?;
    let ambient = FormSpec::new(kind, n1 + n2, 3)?;
    let xn = split_lagrangian(&ambient);
    let point = xn.apply(&v_i_matrix(n1, n2, 1, kind, 3)?);
    let brute = stabilizer(&point, &g1, &g2, n1, n2);
    let displayed = displayed_stabilizer_set(kind, n1, n2, 1, 3, &g1, &g2)?;
    let equal = brute == displayed;
    let rep = orbits_on_lagrangians(kind, n1, n2, 3, &g1, &g2)?;
    let orbit = rep
        .orbits
        .iter()
        .find(|o| o.tag == Some(OrbitTag::Vi(1)))
        .context("V_1 orbit missing")?;
    let os_ok = brute.len() * orbit.size == g1.order() * g2.order();
    Ok((
        vec![
            CheckResult::new(
                "stabilizer-displayed-set",
                equal,
                format!("{} pairs, both inclusions", brute.len()),
            ),
            CheckResult::new(
                "orbit-stabilizer-identity",
                os_ok,
                format!("|orbit| {} x |stab| {}", orbit.size, brute.len()),
            ),
        ],
        json!({ "stabilizer_order": brute.len(), "orbit_size": orbit.size }),
    ))
}

pub fn stabilizers_all(cfg: &Config) -> anyhow::Result<CheckOutput> {
    let mut checks = Vec::new();
    for kind in [FormKind::Symplectic, FormKind::OrthogonalPlus] {
        for (n1, n2) in [(1u32, 1u32), (2, 1)] {
            let (mut sub, _) = orbit_stabilizer(cfg, kind, n1, n2)?;
            for c in sub.iter_mut() {
                c.name = format!("{}-{kind:?}-{n1}-{n2}", c.name);
            }
            checks.extend(sub);
        }
    }
    Ok((checks, json!({})))
}

pub fn triplet_check(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the triplet criterion")?;
    let kind = FormKind::Symplectic;
    let (n1, n2) = (2u32, 1u32);
    let ambient = FormSpec::new(kind, n1 + n2, 3)?;
    let all = lagrangians(&ambient)?;
    for l in &all {
        let t = triplet_of(l, kind, n1, n2)?;
        if &howe_core::geometry::lagrangian_of(&t, kind, n1, n2)? != l {
            bail!("triplet roundtrip failed");
        }
    }
    let g1 = FormSpec::new(kind, n1, 3)?.enumerate_group()?;
    let g2 = FormSpec::new(kind, n2, 3)?.enumerate_group()?;
    let emb = SplitEmbedding::new(n1, n2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..100 {
        let x1 = g1.element(*(0..g1.order()).collect::<Vec<_>>().choose(&mut rng).unwrap());
        let x2 = g2.element(*(0..g2.order()).collect::<Vec<_>>().choose(&mut rng).unwrap());
        let l = all.choose(&mut rng).unwrap();
        let t = triplet_of(l, kind, n1, n2)?;
        let moved = l.apply(&emb.embed_pair(x1, x2));
        if triplet_of(&moved, kind, n1, n2)? != triplet_action(x1, x2, &t, kind, n1, n2)? {
            bail!("triplet equivariance failed");
        }
    }
    Ok((
        vec![CheckResult::new(
            "triplet-model",
            true,
            format!("{} roundtrips, 100 random equivariance samples", all.len()),
        )],
        json!({ "lagrangians": all.len() }),
    ))
}

pub fn weil_soundness(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the weil soundness criterion")?;
    let g2 = standard_symplectic_group(1, 3)?;
    let model2 = WeilModel::new(1, 3)?;
    let ops: Vec<CMat> = g2
        .elements()
        .iter()
        .map(|e| model2.operator(e))
        .collect::<howe_core::Result<_>>()?;
    let id = CMat::identity(3);
    let mut worst: f64 = 0.0;
    for a in 0..g2.order() {
        worst = worst.max(ops[a].mul(&ops[a].adjoint()).distance(&id));
        for b in 0..g2.order() {
            worst = worst.max(ops[a].mul(&ops[b]).distance(&ops[g2.mul(a, b)]));
        }
    }
    let g4 = standard_symplectic_group(2, 3)?;
    let model4 = WeilModel::new(2, 3)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let indices: Vec<usize> = (0..g4.order()).collect();
    let id9 = CMat::identity(9);
    for _ in 0..1000 {
        let &a = indices.choose(&mut rng).unwrap();
        let &b = indices.choose(&mut rng).unwrap();
        let oa = model4.operator(g4.element(a))?;
        let ob = model4.operator(g4.element(b))?;
        worst = worst.max(oa.mul(&ob).distance(&model4.operator(g4.element(g4.mul(a, b)))?));
        worst = worst.max(oa.mul(&oa.adjoint()).distance(&id9));
    }
    Ok((
        vec![CheckResult::new(
            "weil-multiplicativity-unitarity",
            worst < 1e-9,
            format!("max deviation {worst:.3e}"),
        )],
        json!({ "max_deviation": worst }),
    ))
}

pub fn rank_check(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the rank criterion")?;
    let g = standard_symplectic_group(2, 3)?;
    let tab = dixon_schneider(&g)?;
    let mut checks = Vec::new();
    let triv = trivial_character_index(&tab).context("trivial character")?;
    let r0 = character_rank(&tab.row(triv), &g, 2, 1e-6)?;
    checks.push(CheckResult::new("rank-trivial", r0 == 0, format!("rank {r0}")));
    let model = WeilModel::new(2, 3)?;
    let weil = ClassFunction {
        values: g
            .classes
            .iter()
            .map(|c| model.character_value(g.element(c.rep)))
            .collect::<howe_core::Result<_>>()?,
    };
    let rw = character_rank(&weil, &g, 2, 1e-6)?;
    checks.push(CheckResult::new("rank-weil-sp4", rw == 1, format!("rank {rw}")));
    let mut max_rank = 0;
    for i in 0..tab.num_irreducibles() {
        let chi = tab.row(i);
        siegel_multiplicities(&chi, &g, 2, 1e-6)?;
        max_rank = max_rank.max(character_rank(&chi, &g, 2, 1e-6)?);
    }
    checks.push(CheckResult::new(
        "rank-bounded-and-constant-on-classes",
        max_rank <= 2,
        format!("max rank {max_rank} over 34 irreducibles"),
    ));
    Ok((checks, json!({ "max_rank": max_rank })))
}

pub fn char_tables(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the character-table criterion")?;
    let mut checks = Vec::new();
    let mut degrees_json = serde_json::Map::new();
    let cases: Vec<(String, Group)> = vec![
        ("Sp2(3)".into(), standard_symplectic_group(1, 3)?),
        ("O2+(3)".into(), FormSpec::new(FormKind::OrthogonalPlus, 1, 3)?.enumerate_group()?),
        ("O2-(3)".into(), FormSpec::new(FormKind::OrthogonalMinus, 1, 3)?.enumerate_group()?),
        ("O4+(3)".into(), FormSpec::new(FormKind::OrthogonalPlus, 2, 3)?.enumerate_group()?),
        ("O4-(3)".into(), FormSpec::new(FormKind::OrthogonalMinus, 2, 3)?.enumerate_group()?),
        ("Sp4(3)".into(), standard_symplectic_group(2, 3)?),
    ];
    for (name, g) in &cases {
        let tab = dixon_schneider(g)?;
        if name == "Sp2(3)" && tab.degrees != vec![1, 1, 1, 2, 2, 2, 3] {
            bail!("SL2(3) degree multiset wrong: {:?}", tab.degrees);
        }
        let rows = tab.orthogonality_defect(g);
        let cols = tab.column_orthogonality_defect();
        let sum: u64 = tab.degrees.iter().map(|d| d * d).sum();
        checks.push(CheckResult::new(
            &format!("table-{name}"),
            rows < 1e-8 && cols < 1e-8 && sum == g.order() as u64,
            format!("{} irreducibles, defect {:.1e}", tab.num_irreducibles(), rows.max(cols)),
        ));
        degrees_json.insert(name.clone(), json!(tab.degrees));
    }
    Ok((checks, json!({ "degrees": degrees_json })))
}

pub fn coinvariants(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the coinvariant criterion")?;
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for m_prime in [1u32, 2] {
        for kind in [FormKind::OrthogonalPlus, FormKind::OrthogonalMinus] {
            let rep = verify_coinvariants(1, m_prime, 1, CoinvSide::Symplectic, kind, 3, cfg.tol)?;
            checks.push(CheckResult::new(
                &format!("coinv-a-{kind:?}-mprime{m_prime}"),
                rep.pass,
                format!("deviation {:.2e}", rep.max_deviation),
            ));
            reports.push(serde_json::to_value(&rep)?);
            if FormSpec::new(kind, m_prime, 3)?.witt_index() >= 1 {
                let rep =
                    verify_coinvariants(1, m_prime, 1, CoinvSide::Orthogonal, kind, 3, cfg.tol)?;
                checks.push(CheckResult::new(
                    &format!("coinv-b-{kind:?}-mprime{m_prime}"),
                    rep.pass,
                    format!("deviation {:.2e}", rep.max_deviation),
                ));
                reports.push(serde_json::to_value(&rep)?);
            }
        }
    }
    Ok((checks, json!({ "reports": reports })))
}

pub fn eta_check(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the eta criterion")?;
    let g4 = standard_symplectic_group(2, 3)?;
    let tab4 = dixon_schneider(&g4)?;
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for kind in [FormKind::OrthogonalPlus, FormKind::OrthogonalMinus] {
        let gr = FormSpec::new(kind, 1, 3)?.enumerate_group()?;
        let tab_r = dixon_schneider(&gr)?;
        let dp = DualPair::new(2, kind, 1, 3)?;
        let decomp = theta_decompose(&dp, &g4, &gr, &tab4, &tab_r, Twist::Trivial, 1e-6)?;
        let eta = eta_correspondence(&decomp, &g4, &tab4, 2, 2, 1e-6)?;
        checks.push(CheckResult::new(
            &format!("eta-{kind:?}"),
            eta.injective && eta.assignments.len() == tab_r.num_irreducibles(),
            format!("{} assignments of rank 2, injective", eta.assignments.len()),
        ));
        reports.push(serde_json::to_value(&eta)?);
    }
    Ok((checks, json!({ "reports": reports })))
}

pub fn first_occurrence_check(cfg: &Config) -> anyhow::Result<CheckOutput> {
    require_q3(cfg, "the first-occurrence criterion")?;
    let g2 = standard_symplectic_group(1, 3)?;
    let tab2 = dixon_schneider(&g2)?;
    let spec2 = FormSpec::symplectic(1, 3)?;
    let wc: Vec<usize> = (0..tab2.num_irreducibles())
        .filter(|&i| is_weakly_cuspidal(&tab2.row(i), &g2, &spec2, 1e-8))
        .collect();
    let towers: Vec<Vec<(FormKind, u32)>> = vec![
        vec![
            (FormKind::OrthogonalPlus, 0),
            (FormKind::OrthogonalPlus, 1),
            (FormKind::OrthogonalPlus, 2),
        ],
        vec![
            (FormKind::OrthogonalPlus, 0),
            (FormKind::OrthogonalMinus, 1),
            (FormKind::OrthogonalMinus, 2),
        ],
    ];
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for &pi in &wc {
        let mut found = false;
        let mut ok = true;
        for tower in &towers {
            let rep = first_occurrence_scan(1, 3, &g2, &tab2, pi, tower, Twist::Trivial, 1e-6)?;
            if let Some(item2) = rep.irreducible_and_weakly_cuspidal_at_first {
                ok &= item2;
                found = true;
            }
            if let Some(item3) = rep.no_weakly_cuspidal_above {
                ok &= item3;
            }
            reports.push(serde_json::to_value(&rep)?);
        }
        checks.push(CheckResult::new(
            &format!("first-occurrence-pi{pi}"),
            ok && found,
            "items 1-3 verified over both towers".to_string(),
        ));
    }
    Ok((checks, json!({ "weakly_cuspidal": wc, "reports": reports })))
}

pub fn weak_keys(_cfg: &Config) -> anyhow::Result<CheckOutput> {
    fn domino_core(mu: &Partition) -> Partition {
        let mut cur = mu.clone();
        'outer: loop {
            let rows = cur.len();
            for i in 1..=rows {
                if cur.part(i) >= 2 && cur.part(i) - 2 >= cur.part(i + 1) {
                    let mut parts = cur.parts().to_vec();
                    parts[i - 1] -= 2;
                    cur = Partition::from_unsorted(parts);
                    continue 'outer;
                }
                if i + 1 <= rows
                    && cur.part(i) == cur.part(i + 1)
                    && cur.part(i + 1) >= 1 + cur.part(i + 2)
                {
                    let mut parts = cur.parts().to_vec();
                    parts[i - 1] -= 1;
                    parts[i] -= 1;
                    cur = Partition::from_unsorted(parts);
                    continue 'outer;
                }
            }
            return cur;
        }
    }
    let mut buckets = 0usize;
    for n in 0..=10u32 {
        use std::collections::BTreeMap;
        let mut by_key: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
        let mut by_oracle: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
        for mu in enumerate_partitions(n) {
            by_key.entry(weak_series_key(&mu)).or_default().push(mu.clone());
            by_oracle.entry(domino_core(&mu)).or_default().push(mu);
        }
        if by_key != by_oracle {
            bail!("weak-key bucketing disagrees with the domino oracle at n = {n}");
        }
        buckets += by_key.len();
    }
    Ok((
        vec![CheckResult::new("weak-series-keys", true, format!("{buckets} buckets, n <= 10"))],
        json!({ "buckets": buckets }),
    ))
}

/// The full acceptance battery in criterion order.
pub fn acceptance(cfg: &Config, only: Option<usize>) -> anyhow::Result<CheckOutput> {
    let entries: Vec<(usize, &str, fn(&Config) -> anyhow::Result<CheckOutput>)> = vec![
        (1, "partition calculus", partitions),
        (2, "theta maps", theta_maps),
        (3, "induction monotonicity", monotonicity),
        (4, "orbit representatives", orbits_check),
        (5, "stabilizer structure", stabilizers_all),
        (6, "triplet model", triplet_check),
        (7, "weil model soundness", weil_soundness),
        (8, "representation rank", rank_check),
        (9, "character tables", char_tables),
        (10, "coinvariant identity", coinvariants),
        (11, "eta uniqueness", eta_check),
        (12, "weak first occurrence", first_occurrence_check),
        (13, "weak series keys", weak_keys),
    ];
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    for (num, name, f) in entries {
        if only.is_some_and(|o| o != num) {
            continue;
        }
        let start = std::time::Instant::now();
        let (sub, _) = f(cfg)?;
        let pass = sub.iter().all(|c| c.pass);
        lines.push(format!(
            "criterion {num:02} ({name}): {} in {:.2?}",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed()
        ));
        checks.push(CheckResult::new(
            &format!("criterion-{num:02}"),
            pass,
            format!("{name}: {} sub-checks", sub.len()),
        ));
        checks.extend(sub);
    }
    let text = lines.join("\n");
    Ok((checks, json!({ "text": text })))
}

/// Dispatch for `verify <name>`.
pub fn named_check(
    name: &str,
    cfg: &Config,
    kind: FormKind,
    n1: u32,
    n2: u32,
) -> anyhow::Result<CheckOutput> {
    match name {
        "partition-roundtrip" | "partitions" => partitions(cfg),
        "theta-maps" => theta_maps(cfg),
        "monotonicity" => monotonicity(cfg),
        "orbits" => orbits_check(cfg),
        "orbit-stabilizer" => orbit_stabilizer(cfg, kind, n1, n2),
        "triplet" => triplet_check(cfg),
        "weil" | "weil-multiplicativity" => weil_soundness(cfg),
        "rank" => rank_check(cfg),
        "char-tables" => char_tables(cfg),
        "coinvariants" => coinvariants(cfg),
        "eta" => eta_check(cfg),
        "first-occurrence" => first_occurrence_check(cfg),
        "weak-keys" => weak_keys(cfg),
        other => bail!("unknown check '{other}'"),
    }
}

pub fn table_to_json(tab: &CharacterTable) -> serde_json::Value {
    json!({
        "degrees": tab.degrees,
        "class_sizes": tab.class_sizes,
        "centralizer_orders": tab.centralizer_orders,
        "values": tab
            .values
            .iter()
            .map(|row| row.iter().map(|v| json!([round12(v.re), round12(v.im)])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}
