//! bds: exact Lie-theory case atlas, layer invariants, and K-type spectra
//! on the command line. All arithmetic is arbitrary-precision rational;
//! every emission is deterministic and byte-stable across runs and across
//! cache states.

pub mod atlas;
pub mod cache;
pub mod descriptor;
pub mod emit;

use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use bds_core::bdscore::find_case;
use bds_core::charkernel::{freudenthal, sym_powers, tensor, weyl_dim};
use bds_core::charkernel::alt_powers;
use bds_core::lattice::product_name;
use bds_core::spectrum::{
    admissibility_check, ktype_spectrum_with, negativity, symbolic_mu_bounds, SpectrumContext,
};
use bds_core::{CaseData, Int, KType, Rat, RootDatum, SimpleType, System, Weight};

use atlas::{compute_atlas, invariants_model, ATLAS_SCHEMA, COLUMNS, CORPUS_RANK};
use cache::Cache;
use descriptor::CaseDescriptor;
use emit::{degree_cell, join_rats, join_strs, print_json, Format};

const AFTER_HELP: &str = "\
Environment:
  BDS_CACHE_DIR   cache directory (default: $XDG_CACHE_HOME/bds or ~/.cache/bds)
  BDS_NO_CACHE    set to 1 to disable the result cache
  BDS_THREADS     worker threads for multi-case commands (default: all cores)

Exit codes:
  0  success
  2  verification mismatch
  3  level not sufficiently negative (spectrum without --force)
  4  bad input
";

#[derive(Parser)]
#[command(
    name = "bds",
    version,
    about = "Exact case atlas, relative invariants, and K-type spectra for \
             two-step root gradings",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the case atlas, or verify it against the embedded corpus
    Cases {
        /// largest classical rank to enumerate
        #[arg(long, default_value_t = CORPUS_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// recompute every row (ignoring the cache) and diff against the
        /// embedded corpus; ignores --format
        #[arg(long)]
        verify: bool,
    },
    /// Emit the full descriptor of one case
    Case {
        id: String,
        #[arg(long, default_value_t = CORPUS_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Self-duality, bilinear type, and leading invariant degree of layer 1
    Invariants {
        id: String,
        /// largest symmetric-power degree to scan
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// permit full-depth scans of layer-1 modules above dimension 32
        #[arg(long)]
        allow_slow: bool,
        #[arg(long, default_value_t = CORPUS_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// K-type rows of the induced family at (gamma0, k) through level m_max
    Spectrum {
        id: String,
        /// comma-separated integer labels of gamma0 on all nodes (the marked
        /// node must carry 0); plain "0" means the zero weight
        #[arg(long, default_value = "0")]
        gamma0: String,
        /// level steps along the center; the spectrum needs it sufficiently
        /// negative
        #[arg(short, long)]
        k: i64,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        /// compute past the negativity gate; the emission then carries a
        /// prominent warning field
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = CORPUS_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Negativity thresholds at a weight, or the symbolic level bounds
    CheckNegativity {
        id: String,
        /// comma-separated rational labels on all nodes (the marked node may
        /// be any rational); omit for the symbolic bounds
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, default_value_t = CORPUS_RANK)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Decompose the tensor product of two irreducibles
    Tensor {
        /// simple or product type, e.g. G2 or A1+C3
        r#type: String,
        /// dominant integer labels of the first factor
        #[arg(long)]
        hw: String,
        /// dominant integer labels of the second factor
        #[arg(long)]
        with: String,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Decompose symmetric (or alternating) powers of an irreducible
    Sym {
        /// simple or product type, e.g. G2 or A1+C3
        r#type: String,
        /// dominant integer labels of the base irreducible
        #[arg(long)]
        hw: String,
        /// highest power to decompose
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        /// alternating powers instead of symmetric ones
        #[arg(long)]
        alt: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: 4,
        message: message.into(),
    }
}

pub fn run_main() -> i32 {
    // die quietly on a closed pipe, like every other line-oriented tool
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("bds: {}", f.message);
            f.code
        }
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("BDS_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Cases {
            max_rank,
            format,
            verify,
        } => cmd_cases(max_rank, format, verify),
        Cmd::Case {
            id,
            max_rank,
            format,
        } => cmd_case(&id, max_rank, format),
        Cmd::Invariants {
            id,
            bound,
            allow_slow,
            max_rank,
            format,
        } => cmd_invariants(&id, bound, allow_slow, max_rank, format),
        Cmd::Spectrum {
            id,
            gamma0,
            k,
            m_max,
            force,
            max_rank,
            format,
        } => cmd_spectrum(&id, &gamma0, k, m_max, force, max_rank, format),
        Cmd::CheckNegativity {
            id,
            gamma,
            max_rank,
            format,
        } => cmd_check_negativity(&id, gamma.as_deref(), max_rank, format),
        Cmd::Tensor {
            r#type,
            hw,
            with,
            format,
        } => cmd_tensor(&r#type, &hw, &with, format),
        Cmd::Sym {
            r#type,
            hw,
            m_max,
            alt,
            format,
        } => cmd_sym(&r#type, &hw, m_max, alt, format),
    }
}

// ---- shared input handling ----

fn check_rank(max_rank: usize) -> Result<(), Failure> {
    if (2..=12).contains(&max_rank) {
        Ok(())
    } else {
        Err(bad_input(format!(
            "--max-rank must be between 2 and 12, got {max_rank}"
        )))
    }
}

fn lookup(id: &str, max_rank: usize) -> Result<CaseData, Failure> {
    check_rank(max_rank)?;
    find_case(id, max_rank).ok_or_else(|| {
        bad_input(format!(
            "unknown case id {id} (classical ranks searched up to {max_rank}; \
             run `bds cases` for the list)"
        ))
    })
}

fn parse_rats(s: &str, rank: usize, what: &str) -> Result<Vec<Rat>, Failure> {
    if s.trim() == "0" {
        return Ok(vec![Rat::zero(); rank]);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != rank {
        return Err(bad_input(format!(
            "{what}: expected {rank} comma-separated labels, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            Rat::from_str(p.trim())
                .map_err(|_| bad_input(format!("{what}: bad rational label {p}")))
        })
        .collect()
}

fn parse_datum(spec: &str) -> Result<Arc<RootDatum>, Failure> {
    let types = spec
        .split('+')
        .map(|part| {
            SimpleType::parse(part.trim())
                .map_err(|e| bad_input(format!("bad type {spec}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    RootDatum::new_semisimple(&types).map_err(|e| bad_input(format!("bad type {spec}: {e}")))
}

fn parse_dominant(datum: &Arc<RootDatum>, s: &str, what: &str) -> Result<Weight, Failure> {
    let labels = parse_rats(s, datum.rank, what)?;
    let w = Weight::from_labels(datum, labels);
    if !w.is_integral() || !w.is_dominant() {
        return Err(bad_input(format!(
            "{what}: labels must be nonnegative integers"
        )));
    }
    Ok(w)
}

fn print_tsv(header: &[&str], rows: &[Vec<String>]) {
    println!("{}", header.join("\t"));
    for r in rows {
        println!("{}", r.join("\t"));
    }
}

// ---- cases / case ----

#[derive(Serialize)]
struct AtlasDoc {
    schema: String,
    max_rank: usize,
    rows: Vec<atlas::AtlasRow>,
}

fn cmd_cases(max_rank: usize, format: Format, verify: bool) -> Result<(), Failure> {
    if verify {
        if max_rank != CORPUS_RANK {
            return Err(bad_input(format!(
                "--verify compares against the corpus built at classical rank \
                 {CORPUS_RANK}; drop --max-rank"
            )));
        }
        let out = atlas::verify().map_err(|e| Failure {
            code: 2,
            message: format!("embedded corpus is unreadable: {e}"),
        })?;
        if out.diffs.is_empty() {
            println!("atlas verified: {} rows match the embedded corpus", out.checked);
            return Ok(());
        }
        for d in &out.diffs {
            eprintln!("{d}");
        }
        return Err(Failure {
            code: 2,
            message: format!("atlas verification failed: {} difference(s)", out.diffs.len()),
        });
    }
    check_rank(max_rank)?;
    let rows = compute_atlas(max_rank, &Cache::from_env());
    match format {
        Format::Tsv => {
            println!("{}", COLUMNS.join("\t"));
            for r in &rows {
                println!("{}", r.tsv());
            }
        }
        Format::Json => print_json(&AtlasDoc {
            schema: ATLAS_SCHEMA.to_string(),
            max_rank,
            rows,
        }),
    }
    Ok(())
}

fn cmd_case(id: &str, max_rank: usize, format: Format) -> Result<(), Failure> {
    let cd = lookup(id, max_rank)?;
    let desc = CaseDescriptor::new(&cd);
    match format {
        Format::Tsv => print!("{}", desc.tsv()),
        Format::Json => print_json(&desc),
    }
    Ok(())
}

// ---- invariants ----

#[derive(Serialize)]
struct InvariantsDoc {
    schema: String,
    #[serde(flatten)]
    model: atlas::InvariantsModel,
}

fn cmd_invariants(
    id: &str,
    bound: usize,
    allow_slow: bool,
    max_rank: usize,
    format: Format,
) -> Result<(), Failure> {
    if !(2..=12).contains(&bound) {
        return Err(bad_input(format!(
            "--bound must be between 2 and 12, got {bound}"
        )));
    }
    let cd = lookup(id, max_rank)?;
    if cd.case.deg_tau1 > Int::from(32) && bound > 2 && !allow_slow {
        return Err(bad_input(format!(
            "layer 1 of {id} has dimension {}; scanning it to degree {bound} \
             can take a while, rerun with --allow-slow (or --bound 2 for just \
             the bilinear check)",
            cd.case.deg_tau1
        )));
    }
    let model = invariants_model(&cd, bound, &Cache::from_env());
    match format {
        Format::Tsv => print_tsv(
            &[
                "case_id",
                "deg_tau1",
                "self_dual",
                "bilinear",
                "inv_degree",
                "search_bound",
            ],
            &[vec![
                model.case_id.clone(),
                model.deg_tau1.clone(),
                model.self_dual.to_string(),
                model.bilinear.clone(),
                degree_cell(model.inv_degree),
                model.search_bound.to_string(),
            ]],
        ),
        Format::Json => print_json(&InvariantsDoc {
            schema: "bds.invariants/1".to_string(),
            model,
        }),
    }
    Ok(())
}

// ---- spectrum ----

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpectrumRowModel {
    m: usize,
    k1_labels: Vec<String>,
    k2_labels: Vec<String>,
    central: String,
    multiplicity: String,
    dim: String,
    degree: usize,
    hw: Vec<String>,
}

impl SpectrumRowModel {
    fn new(r: &KType) -> SpectrumRowModel {
        SpectrumRowModel {
            m: r.m,
            k1_labels: r.k1_labels.iter().map(|x| x.to_string()).collect(),
            k2_labels: r.k2_labels.iter().map(|x| x.to_string()).collect(),
            central: r.central.to_string(),
            multiplicity: r.multiplicity.to_string(),
            dim: r.dim.to_string(),
            degree: r.cohomology_degree,
            hw: r.hw.labels.iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AdmissibilityModel {
    central_start: String,
    central_slope: String,
    monotone: bool,
    cross_level_disjoint: bool,
    k1_totals: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpectrumModel {
    schema: String,
    case_id: String,
    gamma0: Vec<String>,
    k: i64,
    m_max: usize,
    sufficient: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    warning: Option<String>,
    rows: Vec<SpectrumRowModel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lowest: Option<SpectrumRowModel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    admissibility: Option<AdmissibilityModel>,
}

const SPECTRUM_COLS: [&str; 6] = [
    "m",
    "k1_labels",
    "k2_labels",
    "central_label",
    "multiplicity",
    "dim",
];

fn emit_spectrum(model: &SpectrumModel, format: Format) {
    match format {
        Format::Tsv => {
            if let Some(w) = &model.warning {
                println!("# warning: {w}");
            }
            let rows: Vec<Vec<String>> = model
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        join_strs(&r.k1_labels),
                        join_strs(&r.k2_labels),
                        r.central.clone(),
                        r.multiplicity.clone(),
                        r.dim.clone(),
                    ]
                })
                .collect();
            print_tsv(&SPECTRUM_COLS, &rows);
        }
        Format::Json => print_json(model),
    }
}

fn cmd_spectrum(
    id: &str,
    gamma0_arg: &str,
    k: i64,
    m_max: usize,
    force: bool,
    max_rank: usize,
    format: Format,
) -> Result<(), Failure> {
    if m_max > 12 {
        return Err(bad_input(format!("--m-max tops out at 12, got {m_max}")));
    }
    let cd = lookup(id, max_rank)?;
    let g = &cd.grading;
    let labels = parse_rats(gamma0_arg, g.datum.rank, "--gamma0")?;
    let gamma0 = Weight::from_labels(&g.datum, labels);
    if !gamma0.is_integral() {
        return Err(bad_input("--gamma0: labels must be integers"));
    }
    if !gamma0.labels[g.nu_index].is_zero() {
        return Err(bad_input(format!(
            "--gamma0: the marked node (node {}) must carry 0",
            g.nu_index + 1
        )));
    }
    if !cd.levi.l_system.is_dominant(&gamma0) {
        return Err(bad_input(
            "--gamma0: labels must be nonnegative away from the marked node",
        ));
    }

    let cache = Cache::from_env();
    let fp = format!(
        "{}|{}",
        System::ambient(&g.datum).fingerprint(),
        cd.case.id
    );
    let args = format!(
        "gamma0={};k={k};m_max={m_max}",
        join_rats(&gamma0.labels)
    );
    if let Some(model) = cache.load::<SpectrumModel>("spectrum", &fp, &args) {
        if model.sufficient {
            emit_spectrum(&model, format);
            return Ok(());
        }
    }

    let gamma_k = gamma0.sub(&g.nu_star.scale_i(k));
    let rep = negativity(g, &cd.levi, &gamma_k);
    let mut warning = None;
    if !rep.sufficient {
        let msg = format!(
            "level t = {} is not sufficiently negative: needs t < {} \
             (highest-root threshold) and t < {} (layer-1 threshold)",
            rep.t, rep.t_bound_mu, rep.t_bound_nu
        );
        if !force {
            return Err(Failure {
                code: 3,
                message: msg,
            });
        }
        warning = Some(format!(
            "forced past the negativity gate: {msg}; rows are cohomology \
             contributions of possibly mixed degrees, not the spectrum of a \
             single representation"
        ));
    }

    let ctx = SpectrumContext::new(&cd, m_max);
    let table = ktype_spectrum_with(&ctx, &cd, &gamma0, k, m_max, force).map_err(|e| Failure {
        code: 3,
        message: e.to_string(),
    })?;
    let admissibility = table.sufficient.then(|| {
        let a = admissibility_check(&cd, &ctx, &table);
        AdmissibilityModel {
            central_start: a.central_start.to_string(),
            central_slope: a.central_slope.to_string(),
            monotone: a.monotone,
            cross_level_disjoint: a.cross_level_disjoint,
            k1_totals: a
                .k1_totals
                .iter()
                .map(|(labels, total)| {
                    (
                        labels.iter().map(|x| x.to_string()).collect(),
                        total.to_string(),
                    )
                })
                .collect(),
        }
    });
    let model = SpectrumModel {
        schema: "bds.spectrum/1".to_string(),
        case_id: table.case_id.clone(),
        gamma0: gamma0.labels.iter().map(|x| x.to_string()).collect(),
        k,
        m_max,
        sufficient: table.sufficient,
        warning,
        rows: table.rows.iter().map(SpectrumRowModel::new).collect(),
        lowest: table.lowest.as_ref().map(SpectrumRowModel::new),
        admissibility,
    };
    if model.sufficient {
        cache.store("spectrum", &fp, &args, &model);
    }
    emit_spectrum(&model, format);
    Ok(())
}

// ---- check-negativity ----

#[derive(Serialize)]
struct NumericNegativityDoc {
    schema: String,
    case_id: String,
    gamma: Vec<String>,
    t: String,
    t_bound_mu: String,
    t_bound_nu: String,
    k_bound_mu: String,
    sufficient: bool,
}

#[derive(Serialize)]
struct SymbolicNegativityDoc {
    schema: String,
    case_id: String,
    /// per-node coefficients of the bound in the labels of gamma0
    coeffs: Vec<String>,
    constant_g: String,
    constant_k: String,
    ambient_bound: String,
    compact_bound: String,
}

fn cmd_check_negativity(
    id: &str,
    gamma: Option<&str>,
    max_rank: usize,
    format: Format,
) -> Result<(), Failure> {
    let cd = lookup(id, max_rank)?;
    let g = &cd.grading;
    match gamma {
        Some(s) => {
            let labels = parse_rats(s, g.datum.rank, "--gamma")?;
            for (j, l) in labels.iter().enumerate() {
                if j != g.nu_index && !l.is_integer() {
                    return Err(bad_input(format!(
                        "--gamma: label {} must be an integer (only the marked \
                         node {} may be fractional)",
                        j + 1,
                        g.nu_index + 1
                    )));
                }
            }
            let w = Weight::from_labels(&g.datum, labels);
            let rep = negativity(g, &cd.levi, &w);
            match format {
                Format::Tsv => print_tsv(
                    &["t", "t_bound_mu", "t_bound_nu", "k_bound_mu", "sufficient"],
                    &[vec![
                        rep.t.to_string(),
                        rep.t_bound_mu.to_string(),
                        rep.t_bound_nu.to_string(),
                        rep.k_bound_mu.to_string(),
                        rep.sufficient.to_string(),
                    ]],
                ),
                Format::Json => print_json(&NumericNegativityDoc {
                    schema: "bds.negativity/1".to_string(),
                    case_id: cd.case.id.clone(),
                    gamma: w.labels.iter().map(|x| x.to_string()).collect(),
                    t: rep.t.to_string(),
                    t_bound_mu: rep.t_bound_mu.to_string(),
                    t_bound_nu: rep.t_bound_nu.to_string(),
                    k_bound_mu: rep.k_bound_mu.to_string(),
                    sufficient: rep.sufficient,
                }),
            }
        }
        None => {
            let sb = symbolic_mu_bounds(g, &cd.levi);
            match format {
                Format::Tsv => print_tsv(
                    &["level", "bound"],
                    &[
                        vec!["ambient".to_string(), sb.render(false)],
                        vec!["compact".to_string(), sb.render(true)],
                    ],
                ),
                Format::Json => print_json(&SymbolicNegativityDoc {
                    schema: "bds.negativity/1".to_string(),
                    case_id: cd.case.id.clone(),
                    coeffs: sb.coeffs.iter().map(|c| c.to_string()).collect(),
                    constant_g: sb.constant_g.to_string(),
                    constant_k: sb.constant_k.to_string(),
                    ambient_bound: sb.render(false),
                    compact_bound: sb.render(true),
                }),
            }
        }
    }
    Ok(())
}

// ---- tensor / sym ----

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ConstituentModel {
    labels: Vec<String>,
    multiplicity: String,
    dim: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TensorModel {
    schema: String,
    r#type: String,
    hw: Vec<String>,
    with: Vec<String>,
    dim_product: String,
    constituents: Vec<ConstituentModel>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PowerModel {
    m: usize,
    dim: String,
    constituents: Vec<ConstituentModel>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SymModel {
    schema: String,
    r#type: String,
    hw: Vec<String>,
    alt: bool,
    m_max: usize,
    powers: Vec<PowerModel>,
}

fn canonical_type(datum: &Arc<RootDatum>) -> String {
    product_name(&System::ambient(datum).component_types())
}

fn cmd_tensor(type_spec: &str, hw: &str, with: &str, format: Format) -> Result<(), Failure> {
    let datum = parse_datum(type_spec)?;
    let sys = System::ambient(&datum);
    let a = parse_dominant(&datum, hw, "--hw")?;
    let b = parse_dominant(&datum, with, "--with")?;

    let cache = Cache::from_env();
    let args = format!("hw={};with={}", join_rats(&a.labels), join_rats(&b.labels));
    let model = match cache.load::<TensorModel>("tensor", sys.fingerprint(), &args) {
        Some(m) => m,
        None => {
            let product = tensor(&sys, &a, &b);
            let mut total = Int::from(0);
            let constituents: Vec<ConstituentModel> = product
                .coeffs
                .iter()
                .map(|(w, n)| {
                    let d = weyl_dim(&sys, w);
                    total += n * &d;
                    ConstituentModel {
                        labels: w.labels.iter().map(|x| x.to_string()).collect(),
                        multiplicity: n.to_string(),
                        dim: d.to_string(),
                    }
                })
                .collect();
            let expected = weyl_dim(&sys, &a) * weyl_dim(&sys, &b);
            assert_eq!(total, expected, "tensor decomposition conserves dimension");
            let m = TensorModel {
                schema: "bds.tensor/1".to_string(),
                r#type: canonical_type(&datum),
                hw: a.labels.iter().map(|x| x.to_string()).collect(),
                with: b.labels.iter().map(|x| x.to_string()).collect(),
                dim_product: expected.to_string(),
                constituents,
            };
            cache.store("tensor", sys.fingerprint(), &args, &m);
            m
        }
    };
    match format {
        Format::Tsv => {
            let rows: Vec<Vec<String>> = model
                .constituents
                .iter()
                .map(|c| {
                    vec![
                        join_strs(&c.labels),
                        c.multiplicity.clone(),
                        c.dim.clone(),
                    ]
                })
                .collect();
            print_tsv(&["labels", "multiplicity", "dim"], &rows);
        }
        Format::Json => print_json(&model),
    }
    Ok(())
}

fn cmd_sym(
    type_spec: &str,
    hw: &str,
    m_max: usize,
    alt: bool,
    format: Format,
) -> Result<(), Failure> {
    if m_max > 12 {
        return Err(bad_input(format!("--m-max tops out at 12, got {m_max}")));
    }
    let datum = parse_datum(type_spec)?;
    let sys = System::ambient(&datum);
    let base = parse_dominant(&datum, hw, "--hw")?;

    let cache = Cache::from_env();
    let args = format!("hw={};m_max={m_max};alt={alt}", join_rats(&base.labels));
    let model = match cache.load::<SymModel>("sym", sys.fingerprint(), &args) {
        Some(m) => m,
        None => {
            let wts = freudenthal(&sys, &base);
            let ladder = if alt {
                alt_powers(&sys, &wts, m_max)
            } else {
                sym_powers(&sys, &wts, m_max)
            };
            let powers: Vec<PowerModel> = ladder
                .iter()
                .enumerate()
                .map(|(m, ch)| PowerModel {
                    m,
                    dim: ch.dim(&sys).to_string(),
                    constituents: ch
                        .coeffs
                        .iter()
                        .map(|(w, n)| ConstituentModel {
                            labels: w.labels.iter().map(|x| x.to_string()).collect(),
                            multiplicity: n.to_string(),
                            dim: weyl_dim(&sys, w).to_string(),
                        })
                        .collect(),
                })
                .collect();
            let m = SymModel {
                schema: "bds.sym/1".to_string(),
                r#type: canonical_type(&datum),
                hw: base.labels.iter().map(|x| x.to_string()).collect(),
                alt,
                m_max,
                powers,
            };
            cache.store("sym", sys.fingerprint(), &args, &m);
            m
        }
    };
    match format {
        Format::Tsv => {
            let mut rows = Vec::new();
            for p in &model.powers {
                for c in &p.constituents {
                    rows.push(vec![
                        p.m.to_string(),
                        join_strs(&c.labels),
                        c.multiplicity.clone(),
                        c.dim.clone(),
                    ]);
                }
            }
            print_tsv(&["m", "labels", "multiplicity", "dim"], &rows);
        }
        Format::Json => print_json(&model),
    }
    Ok(())
}
