//! Flat, schema-versioned wire form of one atlas case. The descriptor
//! carries everything a consumer needs without rebuilding the root system:
//! diagram data, layer dimensions, both layer highest weights, and the
//! center direction. Serialization round-trips losslessly because every
//! rational is carried as an exact decimal-free string.

use bds_core::lattice::product_name;
use bds_core::{CaseData, SimpleType};
use serde::{Deserialize, Serialize};

pub const CASE_SCHEMA: &str = "bds.case/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub schema: String,
    pub id: String,
    pub family: String,
    pub rank: usize,
    /// 1-based marked node in the classification order
    pub nu: usize,
    /// matrix-model row count; classical families only
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    pub l_type: String,
    pub k1_type: String,
    pub k2_type: String,
    pub dim_g: usize,
    pub dim_l: usize,
    pub dim_k: usize,
    pub dim_u1: usize,
    pub dim_u2: usize,
    pub s: usize,
    pub quaternionic: bool,
    pub deg_tau1: String,
    /// ambient fundamental-weight labels, exact rationals as strings
    pub tau1_hw: Vec<String>,
    pub tau2_hw: Vec<String>,
    /// simple-root coordinates of the highest root
    pub mu_coords: Vec<i64>,
    pub nu_star_labels: Vec<String>,
}

fn labels(w: &bds_core::Weight) -> Vec<String> {
    w.labels.iter().map(|r| r.to_string()).collect()
}

impl CaseDescriptor {
    pub fn new(cd: &CaseData) -> CaseDescriptor {
        let c = &cd.case;
        let classical = matches!(
            c.g_type,
            SimpleType::B(_) | SimpleType::C(_) | SimpleType::D(_)
        );
        CaseDescriptor {
            schema: CASE_SCHEMA.to_string(),
            id: c.id.clone(),
            family: c.g_type.name(),
            rank: c.g_type.rank(),
            nu: c.nu_index + 1,
            p: classical.then_some(c.nu_index + 1),
            l_type: product_name(&c.l_types),
            k1_type: product_name(&c.k1_types),
            k2_type: product_name(&c.k2_types),
            dim_g: c.g_type.dim_g(),
            dim_l: cd.levi.dim_l(),
            dim_k: cd.levi.dim_k(),
            dim_u1: c.dim_u1,
            dim_u2: c.dim_u2,
            s: c.s,
            quaternionic: c.quaternionic,
            deg_tau1: c.deg_tau1.to_string(),
            tau1_hw: labels(&c.tau1_hw),
            tau2_hw: labels(&c.tau2_hw),
            mu_coords: cd.grading.mu.coords.clone(),
            nu_star_labels: labels(&cd.grading.nu_star),
        }
    }

    /// Two-column key/value listing for the TSV format.
    pub fn tsv(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push('\t');
            out.push_str(&v);
            out.push('\n');
        };
        push("schema", self.schema.clone());
        push("id", self.id.clone());
        push("family", self.family.clone());
        push("rank", self.rank.to_string());
        push("nu", self.nu.to_string());
        if let Some(p) = self.p {
            push("p", p.to_string());
        }
        push("l_type", self.l_type.clone());
        push("k1_type", self.k1_type.clone());
        push("k2_type", self.k2_type.clone());
        push("dim_g", self.dim_g.to_string());
        push("dim_l", self.dim_l.to_string());
        push("dim_k", self.dim_k.to_string());
        push("dim_u1", self.dim_u1.to_string());
        push("dim_u2", self.dim_u2.to_string());
        push("s", self.s.to_string());
        push("quaternionic", self.quaternionic.to_string());
        push("deg_tau1", self.deg_tau1.clone());
        push("tau1_hw", crate::emit::join_strs(&self.tau1_hw));
        push("tau2_hw", crate::emit::join_strs(&self.tau2_hw));
        push(
            "mu_coords",
            self.mu_coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        push("nu_star_labels", crate::emit::join_strs(&self.nu_star_labels));
        out
    }
}
