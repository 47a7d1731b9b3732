//! Command-line front end: one subcommand per verification target, JSON and
//! CSV reports with embedded run manifests, exit code 0 iff every requested
//! check passes.

mod checks;
mod report;

use anyhow::{bail, Context};
use checks::Config;
use clap::{Parser, Subcommand, ValueEnum};
use howe_core::chartab::dixon_schneider;
use howe_core::duality::{
    rank_support_scan, theta_decompose, verify_coinvariants, CoinvSide,
};
use howe_core::geometry::{FormKind, FormSpec};
use howe_core::partition::{BiPartition, Partition};
use howe_core::theta::{
    centralizer_shape, is_cuspidal_unipotent_size, series_image, theta_bipartition_symporth,
    theta_bipartition_unitary, theta_unipotent_unitary, weak_series_key, AmbientFamily,
    EigenData, GroupKind, OrbitEntry, SeriesLabel,
};
use howe_core::weil::{character_rank, standard_symplectic_group, DualPair, Twist};
use report::{emit, CheckResult, Format, Report, RunManifest};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum KindArg {
    #[value(name = "sp", alias = "symplectic")]
    Symplectic,
    #[value(name = "o+", alias = "orthogonal-plus", alias = "oplus")]
    OrthogonalPlus,
    #[value(name = "o-", alias = "orthogonal-minus", alias = "ominus")]
    OrthogonalMinus,
}

impl From<KindArg> for FormKind {
    fn from(k: KindArg) -> FormKind {
        match k {
            KindArg::Symplectic => FormKind::Symplectic,
            KindArg::OrthogonalPlus => FormKind::OrthogonalPlus,
            KindArg::OrthogonalMinus => FormKind::OrthogonalMinus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum PairKindArg {
    Unitary,
    #[value(name = "sp-o", alias = "symplectic-orthogonal")]
    SymplecticOrthogonal,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum TwistArg {
    Trivial,
    Det,
}

impl From<TwistArg> for Twist {
    fn from(t: TwistArg) -> Twist {
        match t {
            TwistArg::Trivial => Twist::Trivial,
            TwistArg::Det => Twist::DetOrthogonal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Parser)]
#[command(
    name = "howe",
    version,
    about = "Exact desk-scale computations for Howe duality over small finite fields"
)]
struct Cli {
    /// Field size (odd prime; most verification targets are pinned to 3).
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,
    /// Numerical tolerance for exact identities.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Seed for the randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Directory for JSON/CSV report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the theta rule to a bipartition.
    ThetaBipartition {
        #[arg(long, value_enum)]
        kind: PairKindArg,
        /// Bipartition as a JSON pair of part arrays, e.g. "[[1],[]]".
        #[arg(long)]
        bp: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        r_prime: u32,
        /// Cuspidal core parameter selecting the rule branch.
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        epsilon: i8,
    },
    /// Theta on unipotent labels of unitary groups (2-core preserved in
    /// shape, 2-quotient mapped).
    ThetaUnipotent {
        /// Partition as a JSON array, e.g. "[3,1]".
        #[arg(long)]
        mu: String,
        #[arg(long)]
        source_k: u32,
        #[arg(long)]
        target_k: u32,
        #[arg(long)]
        r_prime: u32,
    },
    /// Image of a Harish-Chandra series label.
    SeriesImage {
        /// Label as JSON (fields t, sigma, phi).
        #[arg(long)]
        label: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        m_prime: u32,
    },
    /// Centralizer shape of a semisimple element from its eigenvalue data.
    CentralizerShape {
        /// Ambient dual-group family.
        #[arg(long, value_parser = ["unitary", "so-odd", "o-even"])]
        family: String,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 0)]
        nu_one: u32,
        #[arg(long, default_value_t = 0)]
        nu_minus_one: u32,
        /// Remaining orbits as JSON, e.g. '[{"label":"z","multiplicity":1,"orbit_size":2,"self_dual":false}]'.
        #[arg(long, default_value = "[]")]
        orbits: String,
    },
    /// Weak Harish-Chandra series key (the 2-core).
    WeakKey {
        #[arg(long)]
        mu: String,
    },
    /// Whether l carries a cuspidal unipotent representation, with witness.
    CuspidalSize {
        #[arg(long, value_parser = ["unitary", "sp", "o-even"])]
        kind: String,
        #[arg(long)]
        l: u32,
    },
    /// Orbit partition of maximal isotropics under G_{n1} x G_{n2}.
    Orbits {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
    },
    /// Brute-force stabilizer of V_i X_n compared with the displayed set.
    Stabilizer {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
    },
    /// Triplet coordinates of a maximal isotropic subspace.
    Triplet {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// Basis rows as a JSON array of vectors; defaults to X_n.
        #[arg(long)]
        lagrangian: Option<String>,
    },
    /// Enumerate an isometry group.
    EnumerateGroup {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
    },
    /// Weil character of a dual pair on class pairs.
    WeilChar {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum)]
        orth_kind: KindArg,
        #[arg(long)]
        n_prime: u32,
        #[arg(long, value_enum, default_value_t = TwistArg::Trivial)]
        twist: TwistArg,
    },
    /// Ranks of the irreducible characters of Sp_2n(q).
    Rank {
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Irreducible character table of an isometry group.
    CharTable {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
    },
    /// Multiplicity matrix of the Weil character over Irr(Sp) x Irr(O).
    ThetaDecompose {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum)]
        orth_kind: KindArg,
        #[arg(long)]
        n_prime: u32,
        #[arg(long, value_enum, default_value_t = TwistArg::Trivial)]
        twist: TwistArg,
    },
    /// Eta correspondence on a stable-range pair (O_2n', Sp_2m).
    Eta {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, value_enum)]
        orth_kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n_prime: u32,
    },
    /// Coinvariant identity for one-step parabolic restriction.
    VerifyCoinv {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        m_prime: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum)]
        orth_kind: KindArg,
    },
    /// First-occurrence scan of weakly cuspidal characters of Sp_2(q).
    FirstOccurrence {
        /// Restrict to one character index; default scans all weakly
        /// cuspidal ones.
        #[arg(long)]
        pi: Option<usize>,
    },
    /// Rank spectrum of a theta decomposition.
    RankScan {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, value_enum)]
        orth_kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n_prime: u32,
        #[arg(long, value_enum, default_value_t = TwistArg::Trivial)]
        twist: TwistArg,
    },
    /// Run one named verification (see `verify --help` for names).
    Verify {
        /// One of: partitions, theta-maps, monotonicity, orbits,
        /// orbit-stabilizer, triplet, weil, rank, char-tables,
        /// coinvariants, eta, first-occurrence, weak-keys.
        name: String,
        #[arg(long, value_enum, default_value_t = KindArg::Symplectic)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n1: u32,
        #[arg(long, default_value_t = 1)]
        n2: u32,
    },
    /// Run the acceptance battery.
    Acceptance {
        #[arg(long)]
        all: bool,
        /// Run a single criterion (1..=13).
        #[arg(long)]
        only: Option<usize>,
    },
    /// Print the fixed conventions of the toolkit.
    Conventions,
}

fn main() {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let started = Instant::now();
    match run(&cli) {
        Ok((command, parameters, checks, result)) => {
            let manifest = RunManifest {
                command,
                parameters,
                q: cli.q,
                tolerance: cli.tolerance,
                seed: cli.seed,
                version: env!("CARGO_PKG_VERSION").to_string(),
                checks,
            };
            let report = Report::new(manifest, result, started.elapsed().as_millis());
            let ok = report.all_pass();
            if let Err(e) = emit(&report, format, cli.out.as_ref()) {
                eprintln!("error: {e}");
                std::process::exit(1);
            }
            std::process::exit(if ok { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

type RunOutput = (String, BTreeMap<String, String>, Vec<CheckResult>, serde_json::Value);

fn run(cli: &Cli) -> anyhow::Result<RunOutput> {
    let cfg = Config { q: cli.q, seed: cli.seed, tol: cli.tolerance };
    let mut params = BTreeMap::new();
    match &cli.command {
        Command::ThetaBipartition { kind, bp, r, r_prime, k, epsilon } => {
            let bp: BiPartition = serde_json::from_str(bp).context("parsing --bp")?;
            let r = r.unwrap_or_else(|| bp.size());
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("r".into(), r.to_string());
            params.insert("r_prime".into(), r_prime.to_string());
            params.insert("k".into(), k.to_string());
            let image = match kind {
                PairKindArg::Unitary => theta_bipartition_unitary(&bp, r, *r_prime, *k)?,
                PairKindArg::SymplecticOrthogonal => {
                    params.insert("epsilon".into(), epsilon.to_string());
                    theta_bipartition_symporth(&bp, r, *r_prime, *k, *epsilon)?
                }
            };
            let rendered = serde_json::to_string(&image)?;
            Ok((
                "theta-bipartition".into(),
                params,
                vec![],
                json!({ "image": image, "text": rendered }),
            ))
        }
        Command::ThetaUnipotent { mu, source_k, target_k, r_prime } => {
            let mu: Partition = serde_json::from_str(mu).context("parsing --mu")?;
            params.insert("source_k".into(), source_k.to_string());
            params.insert("target_k".into(), target_k.to_string());
            params.insert("r_prime".into(), r_prime.to_string());
            let image = theta_unipotent_unitary(&mu, *source_k, *target_k, *r_prime)?;
            let rendered = serde_json::to_string(&image)?;
            Ok((
                "theta-unipotent".into(),
                params,
                vec![],
                json!({ "image": image, "text": rendered }),
            ))
        }
        Command::SeriesImage { label, m, m_prime } => {
            let label: SeriesLabel = serde_json::from_str(label).context("parsing --label")?;
            params.insert("m".into(), m.to_string());
            params.insert("m_prime".into(), m_prime.to_string());
            let image = series_image(&label, *m, *m_prime)?;
            let text = match &image {
                None => "zero (below first occurrence)".to_string(),
                Some(l) => serde_json::to_string(l)?,
            };
            Ok(("series-image".into(), params, vec![], json!({ "image": image, "text": text })))
        }
        Command::CentralizerShape { family, rank, nu_one, nu_minus_one, orbits } => {
            let family = match family.as_str() {
                "unitary" => AmbientFamily::Unitary,
                "so-odd" => AmbientFamily::SpecialOrthogonalOdd,
                "o-even" => AmbientFamily::OrthogonalEven,
                other => bail!("unknown family '{other}'"),
            };
            let others: Vec<OrbitEntry> = serde_json::from_str(orbits).context("parsing --orbits")?;
            let ed = EigenData { nu_one: *nu_one, nu_minus_one: *nu_minus_one, others };
            params.insert("family".into(), format!("{family:?}"));
            params.insert("rank".into(), rank.to_string());
            let shape = centralizer_shape(family, *rank, &ed)?;
            let text = shape
                .factors
                .iter()
                .map(|f| format!("[{}] {:?} rank {} / ext {}", f.label, f.family, f.rank, f.extension_degree))
                .collect::<Vec<_>>()
                .join("; ");
            Ok(("centralizer-shape".into(), params, vec![], json!({ "shape": shape, "text": text })))
        }
        Command::WeakKey { mu } => {
            let mu: Partition = serde_json::from_str(mu).context("parsing --mu")?;
            let key = weak_series_key(&mu);
            let rendered = serde_json::to_string(&key)?;
            Ok(("weak-key".into(), params, vec![], json!({ "key": key, "text": rendered })))
        }
        Command::CuspidalSize { kind, l } => {
            let kind = match kind.as_str() {
                "unitary" => GroupKind::Unitary,
                "sp" => GroupKind::Symplectic,
                "o-even" => GroupKind::EvenOrthogonal,
                other => bail!("unknown kind '{other}'"),
            };
            let (ok, k) = is_cuspidal_unipotent_size(kind, *l);
            params.insert("l".into(), l.to_string());
            Ok((
                "cuspidal-size".into(),
                params,
                vec![],
                json!({ "is_cuspidal_size": ok, "k": k, "text": format!("{ok} (k = {k:?})") }),
            ))
        }
        Command::Orbits { kind, n1, n2 } => {
            let kind: FormKind = (*kind).into();
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("n1".into(), n1.to_string());
            params.insert("n2".into(), n2.to_string());
            let g1 = FormSpec::new(kind, *n1, cli.q)?.enumerate_group()?;
            let g2 = FormSpec::new(kind, *n2, cli.q)?.enumerate_group()?;
            let rep = howe_core::geometry::orbits_on_lagrangians(kind, *n1, *n2, cli.q, &g1, &g2)?;
            let checks = vec![CheckResult::new(
                "orbits-covered",
                rep.covered,
                format!("{} orbits over {} points", rep.orbits.len(), rep.total_points),
            )];
            let csv_rows: Vec<serde_json::Value> = rep
                .orbits
                .iter()
                .map(|o| json!([format!("{:?}", o.tag), o.size]))
                .collect();
            Ok((
                "orbits".into(),
                params,
                checks,
                json!({ "report": rep, "csv_rows": csv_rows }),
            ))
        }
        Command::Stabilizer { kind, n1, n2, i } => {
            let kind: FormKind = (*kind).into();
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("n1".into(), n1.to_string());
            params.insert("n2".into(), n2.to_string());
            params.insert("i".into(), i.to_string());
            if *i != 1 {
                bail!("only i = 1 is verified at desk scale");
            }
            checks_to_output("stabilizer", params, checks::orbit_stabilizer(&cfg, kind, *n1, *n2)?)
        }
        Command::Triplet { kind, n1, n2, lagrangian } => {
            let kind: FormKind = (*kind).into();
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("n1".into(), n1.to_string());
            params.insert("n2".into(), n2.to_string());
            let ambient = FormSpec::new(kind, n1 + n2, cli.q)?;
            let l = match lagrangian {
                None => howe_core::geometry::split_lagrangian(&ambient),
                Some(text) => {
                    let rows: Vec<Vec<u32>> = serde_json::from_str(text)?;
                    howe_core::gfq::SubspaceBasis::from_spanning(rows, ambient.dim(), cli.q)
                }
            };
            let t = howe_core::geometry::triplet_of(&l, kind, *n1, *n2)?;
            let back = howe_core::geometry::lagrangian_of(&t, kind, *n1, *n2)?;
            let checks = vec![CheckResult::new("triplet-roundtrip", back == l, "lagrangian_of(triplet_of(L)) = L")];
            Ok((
                "triplet".into(),
                params,
                checks,
                json!({
                    "u1": t.u1.basis_rows(),
                    "u2": t.u2.basis_rows(),
                    "phi": t.phi,
                }),
            ))
        }
        Command::EnumerateGroup { kind, n } => {
            let kind: FormKind = (*kind).into();
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("n".into(), n.to_string());
            let spec = FormSpec::new(kind, *n, cli.q)?;
            let g = spec.enumerate_group()?;
            let checks = vec![CheckResult::new(
                "order-formula",
                g.order() as u128 == spec.group_order(),
                format!("order {}", g.order()),
            )];
            let csv_rows: Vec<serde_json::Value> = g
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| json!([i, c.members.len(), g.element_order(c.rep)]))
                .collect();
            Ok((
                "enumerate-group".into(),
                params,
                checks,
                json!({
                    "order": g.order(),
                    "classes": g.num_classes(),
                    "exponent": g.exponent(),
                    "csv_rows": csv_rows,
                }),
            ))
        }
        Command::WeilChar { m, orth_kind, n_prime, twist } => {
            let kind: FormKind = (*orth_kind).into();
            params.insert("m".into(), m.to_string());
            params.insert("orth_kind".into(), format!("{kind:?}"));
            params.insert("n_prime".into(), n_prime.to_string());
            params.insert("twist".into(), format!("{twist:?}"));
            let gl = standard_symplectic_group(*m, cli.q)?;
            let gr = FormSpec::new(kind, *n_prime, cli.q)?.enumerate_group()?;
            let dp = DualPair::new(*m, kind, *n_prime, cli.q)?;
            let chi = dp.character(&gl, &gr, (*twist).into())?;
            let dim = chi.eval(&gl, &gr, gl.identity_index(), gr.identity_index());
            let expected = (cli.q as f64).powi(dp.big_n as i32);
            let checks = vec![CheckResult::new(
                "dimension",
                (dim.re - expected).abs() < 1e-6,
                format!("value at identity {}", dim.re),
            )];
            let values: Vec<Vec<[f64; 2]>> = chi
                .values
                .iter()
                .map(|row| row.iter().map(|v| [checks::round12(v.re), checks::round12(v.im)]).collect())
                .collect();
            Ok((
                "weil-char".into(),
                params,
                checks,
                json!({ "dimension": dim.re, "values": values }),
            ))
        }
        Command::Rank { n } => {
            params.insert("n".into(), n.to_string());
            let g = standard_symplectic_group(*n, cli.q)?;
            let tab = dixon_schneider(&g)?;
            let mut rows = Vec::new();
            for i in 0..tab.num_irreducibles() {
                let r = character_rank(&tab.row(i), &g, *n as usize, 1e-6)?;
                rows.push(json!([i, tab.degrees[i], r]));
            }
            let max_rank = rows.iter().map(|r| r[2].as_u64().unwrap()).max().unwrap_or(0);
            let checks = vec![CheckResult::new(
                "rank-bound",
                max_rank <= u64::from(*n),
                format!("max rank {max_rank}"),
            )];
            Ok((
                "rank".into(),
                params,
                checks,
                json!({ "rows": rows, "csv_rows": rows }),
            ))
        }
        Command::CharTable { kind, n } => {
            let kind: FormKind = (*kind).into();
            params.insert("kind".into(), format!("{kind:?}"));
            params.insert("n".into(), n.to_string());
            let g = match kind {
                FormKind::Symplectic => standard_symplectic_group(*n, cli.q)?,
                _ => FormSpec::new(kind, *n, cli.q)?.enumerate_group()?,
            };
            let tab = dixon_schneider(&g)?;
            let defect = tab.orthogonality_defect(&g).max(tab.column_orthogonality_defect());
            let degree_sum: u64 = tab.degrees.iter().map(|d| d * d).sum();
            let checks = vec![
                CheckResult::new("orthogonality", defect < 1e-8, format!("defect {defect:.2e}")),
                CheckResult::new(
                    "degree-sum",
                    degree_sum == g.order() as u64,
                    format!("sum of squares {degree_sum}"),
                ),
            ];
            let csv_rows: Vec<serde_json::Value> = tab
                .degrees
                .iter()
                .enumerate()
                .map(|(i, d)| json!([i, d]))
                .collect();
            Ok((
                "char-table".into(),
                params,
                checks,
                json!({ "table": checks::table_to_json(&tab), "csv_rows": csv_rows }),
            ))
        }
        Command::ThetaDecompose { m, orth_kind, n_prime, twist } => {
            let kind: FormKind = (*orth_kind).into();
            params.insert("m".into(), m.to_string());
            params.insert("orth_kind".into(), format!("{kind:?}"));
            params.insert("n_prime".into(), n_prime.to_string());
            params.insert("twist".into(), format!("{twist:?}"));
            let gl = standard_symplectic_group(*m, cli.q)?;
            let gr = FormSpec::new(kind, *n_prime, cli.q)?.enumerate_group()?;
            let tab_l = dixon_schneider(&gl)?;
            let tab_r = dixon_schneider(&gr)?;
            let dp = DualPair::new(*m, kind, *n_prime, cli.q)?;
            let decomp =
                theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, (*twist).into(), cli.tolerance.max(1e-6))?;
            let dim = dimension_check(&decomp, &tab_l, &tab_r, cli.q, dp.big_n);
            let parseval = howe_core::duality::parseval_defect(&decomp, &gl, &gr);
            let checks = vec![
                CheckResult::new("dimension-bookkeeping", dim.0, dim.1),
                CheckResult::new("parseval", parseval < 1e-6, format!("defect {parseval:.2e}")),
            ];
            let csv_rows: Vec<serde_json::Value> = decomp
                .mult
                .iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(move |(j, &v)| json!([i, j, v]))
                        .collect::<Vec<_>>()
                })
                .collect();
            Ok((
                "theta-decompose".into(),
                params,
                checks,
                json!({ "multiplicities": decomp.mult, "csv_rows": csv_rows }),
            ))
        }
        Command::Eta { m, orth_kind, n_prime } => {
            let kind: FormKind = (*orth_kind).into();
            params.insert("m".into(), m.to_string());
            params.insert("orth_kind".into(), format!("{kind:?}"));
            params.insert("n_prime".into(), n_prime.to_string());
            if 2 * *n_prime > *m {
                bail!("pair is not in the stable range: need 2 n' <= m");
            }
            let gl = standard_symplectic_group(*m, cli.q)?;
            let gr = FormSpec::new(kind, *n_prime, cli.q)?.enumerate_group()?;
            let tab_l = dixon_schneider(&gl)?;
            let tab_r = dixon_schneider(&gr)?;
            let dp = DualPair::new(*m, kind, *n_prime, cli.q)?;
            let decomp = theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, Twist::Trivial, 1e-6)?;
            let eta = howe_core::duality::eta_correspondence(
                &decomp,
                &gl,
                &tab_l,
                *m as usize,
                2 * *n_prime,
                1e-6,
            )?;
            let checks = vec![CheckResult::new(
                "eta-unique-max-rank",
                eta.injective,
                format!("{} assignments of rank {}", eta.assignments.len(), eta.expected_rank),
            )];
            Ok(("eta".into(), params, checks, serde_json::to_value(&eta)?))
        }
        Command::VerifyCoinv { m, m_prime, k, side, orth_kind } => {
            let kind: FormKind = (*orth_kind).into();
            let side = match side {
                SideArg::A => CoinvSide::Symplectic,
                SideArg::B => CoinvSide::Orthogonal,
            };
            params.insert("m".into(), m.to_string());
            params.insert("m_prime".into(), m_prime.to_string());
            params.insert("k".into(), k.to_string());
            params.insert("side".into(), format!("{side:?}"));
            params.insert("orth_kind".into(), format!("{kind:?}"));
            let rep = verify_coinvariants(*m, *m_prime, *k, side, kind, cli.q, cli.tolerance)?;
            let checks = vec![CheckResult::new(
                "coinvariants",
                rep.pass,
                format!("max deviation {:.2e}", rep.max_deviation),
            )];
            Ok(("verify-coinv".into(), params, checks, serde_json::to_value(&rep)?))
        }
        Command::FirstOccurrence { pi } => {
            let (mut checks, result) = checks::first_occurrence_check(&cfg)?;
            if let Some(pi) = pi {
                checks.retain(|c| c.name.ends_with(&format!("pi{pi}")));
                if checks.is_empty() {
                    bail!("character {pi} is not weakly cuspidal");
                }
            }
            Ok(("first-occurrence".into(), params, checks, result))
        }
        Command::RankScan { m, orth_kind, n_prime, twist } => {
            let kind: FormKind = (*orth_kind).into();
            params.insert("m".into(), m.to_string());
            params.insert("orth_kind".into(), format!("{kind:?}"));
            params.insert("n_prime".into(), n_prime.to_string());
            let gl = standard_symplectic_group(*m, cli.q)?;
            let gr = FormSpec::new(kind, *n_prime, cli.q)?.enumerate_group()?;
            let tab_l = dixon_schneider(&gl)?;
            let tab_r = dixon_schneider(&gr)?;
            let dp = DualPair::new(*m, kind, *n_prime, cli.q)?;
            let decomp = theta_decompose(&dp, &gl, &gr, &tab_l, &tab_r, (*twist).into(), 1e-6)?;
            let rows = rank_support_scan(&decomp, &gl, &tab_l, &tab_r, *m as usize, 1e-6)?;
            let sorted = rows.windows(2).all(|w| w[0].rank >= w[1].rank);
            let checks = vec![CheckResult::new("rows-sorted-by-rank", sorted, "descending")];
            let csv_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| json!([r.rank, r.sp_irr, r.sp_degree, r.orth_irr, r.orth_degree, r.multiplicity]))
                .collect();
            Ok((
                "rank-scan".into(),
                params,
                checks,
                json!({ "rows": rows, "csv_rows": csv_rows }),
            ))
        }
        Command::Verify { name, kind, n1, n2 } => {
            params.insert("name".into(), name.clone());
            let (checks, result) =
                checks::named_check(name, &cfg, (*kind).into(), *n1, *n2)?;
            Ok((format!("verify {name}"), params, checks, result))
        }
        Command::Acceptance { all, only } => {
            if !all && only.is_none() {
                bail!("pass --all or --only N");
            }
            let (checks, result) = checks::acceptance(&cfg, *only)?;
            Ok(("acceptance".into(), params, checks, result))
        }
        Command::Conventions => {
            let text = CONVENTIONS.trim();
            Ok(("conventions".into(), params, vec![], json!({ "text": text })))
        }
    }
}

fn checks_to_output(
    command: &str,
    params: BTreeMap<String, String>,
    output: checks::CheckOutput,
) -> anyhow::Result<RunOutput> {
    Ok((command.to_string(), params, output.0, output.1))
}

fn dimension_check(
    decomp: &howe_core::duality::ThetaDecomposition,
    tab_l: &howe_core::chartab::CharacterTable,
    tab_r: &howe_core::chartab::CharacterTable,
    q: u32,
    big_n: usize,
) -> (bool, String) {
    let total = dimension_bookkeeping(decomp, tab_l, tab_r);
    let expected = (q as u128).pow(big_n as u32);
    (total == expected, format!("sum deg x deg' = {total}, q^N = {expected}"))
}

use howe_core::duality::dimension_bookkeeping;

const CONVENTIONS: &str = r#"
Fixed conventions of the toolkit
--------------------------------
* Vectors are columns; an isometry g of a Gram matrix J satisfies g^T J g = J.
* The space of G_n has ordered basis (x_1..x_n, x'_n..x'_1); Gram matrices are
  built from antidiagonal blocks K, so P_k, m(a,A) = diag(a, A, K a^-T K) and
  the orbit representatives V_i are literal block matrices.
* In a split space W_1 + W_2 the combined basis is
  (e_1..e_{n1}, f_1..f_{n2}, f'_{n2}..f'_1, e'_{n1}..e'_1) and X_n is the span
  of the first n vectors.
* 2-quotient: beta-set of even length 2t (smallest 2t >= number of parts);
  bead b contributes floor(b/2) to quotient component (b mod 2).  Component 0
  collects the even beads.  Reassembly inverts this encoding exactly.
* Weil model (standard symplectic coordinates [[0,I],[-I,0]]):
  psi(x) = exp(2 pi i x / q);  u(B) acts by psi(x^T B x);  the Levi
  diag(a, a^-T) acts by leg(det a) f(a^T x); the Fourier generator acts with
  kernel psi(2 x^T y) normalized by (sum_t psi(-t^2))^-n.  These constants
  make the operator assignment multiplicative on the nose.
* Flat (Gerardin) normalization: the Weil character of (Sp_2m, O) twisted by
  det(g')^m.  The coinvariant identities hold exactly in this normalization
  and fail by a sign pattern on negative-determinant classes without it.
* The zero symmetric matrix has rank class (0, +).
"#;
