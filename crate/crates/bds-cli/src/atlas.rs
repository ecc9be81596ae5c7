//! The case atlas as emitted rows, the embedded golden corpus, and the
//! verification that recomputes every row and diffs it against the corpus.

use bds_core::bdscore::enumerate_case_data;
use bds_core::invariants::{
    bilinear_type, classical_invariant_degree, is_self_dual, relative_invariant_report,
    BilinearType, DEFAULT_SEARCH_BOUND,
};
use bds_core::lattice::product_name;
use bds_core::{CaseData, SimpleType};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::emit::{degree_cell, join_rats};

/// Frozen reference table; `cases --verify` diffs a full recomputation
/// against it. Regenerate with `bds cases --max-rank 9 > data/golden.tsv`
/// only after an intentional, reviewed change.
pub const CORPUS: &str = include_str!("../data/golden.tsv");

/// Classical rank the corpus was built at.
pub const CORPUS_RANK: usize = 9;

pub const ATLAS_SCHEMA: &str = "bds.atlas/1";

pub const COLUMNS: [&str; 14] = [
    "case_id",
    "g_type",
    "nu",
    "k1_type",
    "k2_type",
    "l_type",
    "dim_u1",
    "dim_u2",
    "s",
    "deg_tau1",
    "self_dual",
    "bilinear",
    "inv_degree",
    "note",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub case_id: String,
    pub g_type: String,
    /// 1-based marked node
    pub nu: usize,
    pub k1_type: String,
    pub k2_type: String,
    pub l_type: String,
    pub dim_u1: usize,
    pub dim_u2: usize,
    pub s: usize,
    pub deg_tau1: String,
    pub self_dual: bool,
    pub bilinear: String,
    pub inv_degree: Option<usize>,
    pub note: String,
}

impl AtlasRow {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.case_id.clone(),
            self.g_type.clone(),
            self.nu.to_string(),
            self.k1_type.clone(),
            self.k2_type.clone(),
            self.l_type.clone(),
            self.dim_u1.to_string(),
            self.dim_u2.to_string(),
            self.s.to_string(),
            self.deg_tau1.clone(),
            self.self_dual.to_string(),
            self.bilinear.clone(),
            degree_cell(self.inv_degree),
            self.note.clone(),
        ]
    }

    pub fn tsv(&self) -> String {
        self.cells().join("\t")
    }

    pub fn parse(line: &str) -> Result<AtlasRow, String> {
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != COLUMNS.len() {
            return Err(format!(
                "expected {} tab-separated fields, got {}",
                COLUMNS.len(),
                cells.len()
            ));
        }
        let num = |i: usize| -> Result<usize, String> {
            cells[i]
                .parse::<usize>()
                .map_err(|_| format!("bad integer in column {}: {}", COLUMNS[i], cells[i]))
        };
        let inv_degree = match cells[12] {
            "none" => None,
            d => Some(
                d.parse::<usize>()
                    .map_err(|_| format!("bad inv_degree: {d}"))?,
            ),
        };
        Ok(AtlasRow {
            case_id: cells[0].to_string(),
            g_type: cells[1].to_string(),
            nu: num(2)?,
            k1_type: cells[3].to_string(),
            k2_type: cells[4].to_string(),
            l_type: cells[5].to_string(),
            dim_u1: num(6)?,
            dim_u2: num(7)?,
            s: num(8)?,
            deg_tau1: cells[9].to_string(),
            self_dual: cells[10] == "true",
            bilinear: cells[11].to_string(),
            inv_degree,
            note: cells[13].to_string(),
        })
    }
}

/// Cached/emitted form of one invariant-theory report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsModel {
    pub case_id: String,
    pub deg_tau1: String,
    pub self_dual: bool,
    pub bilinear: String,
    pub inv_degree: Option<usize>,
    pub search_bound: usize,
}

/// Run (or recall) the scan-based invariant report for one case.
pub fn invariants_model(cd: &CaseData, bound: usize, cache: &Cache) -> InvariantsModel {
    let fp = format!(
        "{}|tau1={}",
        cd.levi.l_system.fingerprint(),
        join_rats(&cd.case.tau1_hw.labels)
    );
    let args = format!("bound={bound}");
    if let Some(m) = cache.load::<InvariantsModel>("invariants", &fp, &args) {
        if m.case_id == cd.case.id {
            return m;
        }
    }
    let rep = relative_invariant_report(cd, bound);
    let model = InvariantsModel {
        case_id: rep.case_id,
        deg_tau1: rep.deg_tau1.to_string(),
        self_dual: rep.self_dual,
        bilinear: rep.bilinear.to_string(),
        inv_degree: rep.invariant_degree,
        search_bound: rep.search_bound,
    };
    cache.store("invariants", &fp, &args, &model);
    model
}

/// Matrix-model dimensions (rows p, columns r) for a classical case.
fn matrix_shape(cd: &CaseData) -> (usize, usize) {
    let p = cd.case.nu_index + 1;
    match cd.case.g_type {
        SimpleType::B(l) => (p, 2 * (l - p) + 1),
        SimpleType::D(l) => (p, 2 * (l - p)),
        SimpleType::C(l) => (p, 2 * (l - p)),
        _ => unreachable!("matrix_shape is classical only"),
    }
}

/// Invariant degree and note for one atlas row. Classical rows use the
/// matrix-model closed form; exceptional rows run the plethysm scan at the
/// default bound (cached).
fn invariant_cell(cd: &CaseData, cache: &Cache) -> (Option<usize>, String) {
    match cd.case.g_type {
        SimpleType::B(_) | SimpleType::D(_) => {
            let d = classical_invariant_degree(&cd.case);
            let (p, r) = matrix_shape(cd);
            let note = match p.cmp(&r) {
                std::cmp::Ordering::Less => "Gram determinant",
                std::cmp::Ordering::Equal => "determinant on the square boundary",
                std::cmp::Ordering::Greater => "matrix model has no invariant",
            };
            (d, note.to_string())
        }
        SimpleType::C(_) => {
            let d = classical_invariant_degree(&cd.case);
            let note = if d.is_some() {
                "Pfaffian"
            } else {
                "matrix model has no invariant"
            };
            (d, note.to_string())
        }
        _ => {
            let m = invariants_model(cd, DEFAULT_SEARCH_BOUND, cache);
            let note = match m.inv_degree {
                Some(2) => "symmetric bilinear generator".to_string(),
                Some(d) if m.bilinear == BilinearType::Antisymmetric.to_string() => {
                    format!("antisymmetric pairing, degree-{d} generator")
                }
                Some(d) => format!("degree-{d} generator, no bilinear"),
                None => format!("no invariant up to degree {}", m.search_bound),
            };
            (m.inv_degree, note)
        }
    }
}

pub fn build_row(cd: &CaseData, cache: &Cache) -> AtlasRow {
    let c = &cd.case;
    let (inv_degree, note) = invariant_cell(cd, cache);
    AtlasRow {
        case_id: c.id.clone(),
        g_type: c.g_type.name(),
        nu: c.nu_index + 1,
        k1_type: product_name(&c.k1_types),
        k2_type: product_name(&c.k2_types),
        l_type: product_name(&c.l_types),
        dim_u1: c.dim_u1,
        dim_u2: c.dim_u2,
        s: c.s,
        deg_tau1: c.deg_tau1.to_string(),
        self_dual: is_self_dual(&cd.levi, &c.tau1_hw),
        bilinear: bilinear_type(&cd.levi, &c.tau1_hw).to_string(),
        inv_degree,
        note,
    }
}

/// All rows at the given classical rank, in enumeration order. Rows are
/// computed in parallel and assembled in order.
pub fn compute_atlas(max_rank: usize, cache: &Cache) -> Vec<AtlasRow> {
    enumerate_case_data(max_rank)
        .par_iter()
        .map(|cd| build_row(cd, cache))
        .collect()
}

pub fn parse_corpus() -> Result<Vec<AtlasRow>, String> {
    let mut rows = Vec::new();
    for (i, line) in CORPUS.lines().enumerate() {
        if i == 0 {
            let want = COLUMNS.join("\t");
            if line != want {
                return Err(format!("corpus header mismatch: {line}"));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        rows.push(AtlasRow::parse(line).map_err(|e| format!("corpus line {}: {e}", i + 1))?);
    }
    Ok(rows)
}

pub struct VerifyOutcome {
    pub checked: usize,
    pub diffs: Vec<String>,
}

/// Recompute the full atlas (no cache reads) and diff it field by field
/// against the embedded corpus.
pub fn verify() -> Result<VerifyOutcome, String> {
    let corpus = parse_corpus()?;
    let computed = compute_atlas(CORPUS_RANK, &Cache::disabled());
    let mut diffs = Vec::new();
    if corpus.len() != computed.len() {
        diffs.push(format!(
            "row count: corpus {}, computed {}",
            corpus.len(),
            computed.len()
        ));
    }
    for (a, b) in corpus.iter().zip(computed.iter()) {
        if a.case_id != b.case_id {
            diffs.push(format!(
                "row order: corpus {}, computed {}",
                a.case_id, b.case_id
            ));
            continue;
        }
        let (ca, cb) = (a.cells(), b.cells());
        for (j, (x, y)) in ca.iter().zip(cb.iter()).enumerate() {
            if x != y {
                diffs.push(format!(
                    "{}: {}: corpus {}, computed {}",
                    a.case_id, COLUMNS[j], x, y
                ));
            }
        }
    }
    Ok(VerifyOutcome {
        checked: corpus.len(),
        diffs,
    })
}
