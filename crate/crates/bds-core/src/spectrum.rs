//! Negativity thresholds, cohomology of the compact subvariety, and the
//! resulting K-type spectra for a marked grading.
//!
//! Conventions: a bundle parameter splits as gamma = gamma0 + t nu*, with
//! gamma0 vanishing on the marked coroot. Sufficient negativity means
//! <gamma + rho_g, alpha^vee> < 0 for every root alpha of layers 1 and 2;
//! it is equivalent to two scalar thresholds on t, and the equivalence is
//! asserted against the exhaustive scan whenever gamma0 is Levi-dominant.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bdscore::{
    decompose_gamma, layer_extreme_root, u_character, CaseData, Grading, LeviStructure,
};
use crate::charkernel::{
    freudenthal, sym_powers, tensor_multiset, weyl_dim, OrbitCharacter,
};
use crate::lattice::{rat, rho, Int, Rat, Root, Weight};

/// Threshold report for the center coordinate t of gamma = gamma0 + t nu*.
/// `sufficient` is the exhaustive verdict over layers 1 and 2; the two
/// t-bounds reproduce it as t < min(t_bound_mu, t_bound_nu), which is
/// asserted whenever gamma0 is Levi-dominant. `k_bound_mu` is the same
/// highest-root threshold taken at the compact half-sum adapted to the
/// negative chamber, 2 rho_l - rho_k, where layer-2 roots count with a
/// minus sign; it marks where the compact-picture cohomology changes,
/// is never smaller than t_bound_mu, and sufficiency implies it. Both
/// facts are asserted unconditionally.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport {
    pub t: Rat,
    pub t_bound_mu: Rat,
    pub t_bound_nu: Rat,
    pub k_bound_mu: Rat,
    pub sufficient: bool,
}

/// The highest-root threshold as an affine function of the labels of
/// gamma0: bound = sum_j coeffs[j] n_j + constant. The entry at the marked
/// node is formal (gamma0 carries no label there). `constant_g` is the
/// ambient-level constant, `constant_k` the compact-level one.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicBounds {
    pub nu_index: usize,
    pub coeffs: Vec<Rat>,
    pub constant_g: Rat,
    pub constant_k: Rat,
}

/// One K-type row of a spectrum table: the level m it came from, the
/// k-dominant ambient representative, its labels split between the beta0
/// component and the spectators, the center coordinate of the generating
/// level, multiplicity, cohomology degree, and total compact dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KType {
    pub m: usize,
    pub hw: Weight,
    pub k1_labels: Vec<Rat>,
    pub k2_labels: Vec<Rat>,
    pub central: Rat,
    pub multiplicity: Int,
    pub cohomology_degree: usize,
    pub dim: Int,
}

/// K-type spectrum of the cohomologically induced family at gamma0 and
/// integer level k, through symmetric powers of order m_max. Rows are
/// sorted by (m, highest weight, degree); `lowest` is the level-0 row.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub case_id: String,
    pub gamma0: Weight,
    pub k: i64,
    pub m_max: usize,
    pub sufficient: bool,
    pub rows: Vec<KType>,
    pub lowest: Option<KType>,
}

/// Admissibility diagnostics for a spectrum table: the center coordinate
/// is an affine function of the level with strictly negative slope, rows
/// at distinct levels are disjoint as (labels, center) triples, and the
/// per-k1-type totals (multiplicity weighted by spectator dimension) are
/// finite and listed.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub case_id: String,
    pub m_max: usize,
    pub central_start: Rat,
    pub central_slope: Rat,
    pub monotone: bool,
    pub cross_level_disjoint: bool,
    pub k1_totals: Vec<(Vec<Rat>, Int)>,
}

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error(
        "level t = {t} is not sufficiently negative: needs t < {t_bound_mu} \
         (highest-root threshold) and t < {t_bound_nu} (layer-1 threshold)"
    )]
    NotSufficientlyNegative {
        t: Rat,
        t_bound_mu: Rat,
        t_bound_nu: Rat,
    },
}

/// Half-sums of positive roots for the ambient system, the compact
/// subsystem (layers 0 and 2), and the Levi (layer 0). Their difference
/// rho_g - rho_k equals half the layer-1 sum, which is asserted.
pub fn rho_parts(g: &Grading, lv: &LeviStructure) -> (Weight, Weight, Weight) {
    let rho_g = rho(&g.datum);
    let rho_k = lv.k_system.rho.clone();
    let rho_l = lv.l_system.rho.clone();
    let mut acc = Weight::zero(&g.datum);
    for r in g.delta(1) {
        acc = acc.add(&Weight::of_root(&g.datum, r));
    }
    let half = acc.scale(&(rat(1) / rat(2)));
    assert_eq!(
        rho_g.sub(&rho_k),
        half,
        "ambient and compact half-sums differ by half the layer-1 sum"
    );
    (rho_g, rho_k, rho_l)
}

/// Negativity thresholds at gamma. Requires gamma integral away from the
/// marked node; the marked label t itself may be any rational.
pub fn negativity(g: &Grading, lv: &LeviStructure, gamma: &Weight) -> NegativityReport {
    for (j, l) in gamma.labels.iter().enumerate() {
        if j != g.nu_index {
            assert!(l.is_integer(), "gamma must be integral away from the marked node");
        }
    }
    let (gamma0, t) = decompose_gamma(g, gamma);
    let (rho_g, rho_k, rho_l) = rho_parts(g, lv);
    let beta = layer_extreme_root(g, 1, true);
    let bound_at = |base: &Weight, alpha: &Root| -> Rat {
        let den = g.nu_star.pair_coroot(alpha);
        assert!(den.is_positive(), "the marked coordinate grows along upper layers");
        -(gamma0.add(base).pair_coroot(alpha)) / den
    };
    let t_bound_mu = bound_at(&rho_g, &g.mu);
    let t_bound_nu = bound_at(&rho_g, &beta);
    // 2 rho_l - rho_k = rho_l - (half sum of layer 2): the compact
    // half-sum with layer 2 counted negative.
    let k_bound_mu = bound_at(&rho_l.scale(&rat(2)).sub(&rho_k), &g.mu);
    assert!(
        k_bound_mu >= t_bound_mu,
        "the compact-level bound is never tighter than the ambient one"
    );
    let shifted = gamma.add(&rho_g);
    let sufficient = g
        .delta(1)
        .iter()
        .chain(g.delta(2).iter())
        .all(|a| shifted.pair_coroot(a).is_negative());
    let cutoff = t_bound_mu.clone().min(t_bound_nu.clone());
    if lv.l_system.is_dominant(&gamma0) {
        assert_eq!(
            t < cutoff,
            sufficient,
            "the two thresholds decide sufficiency for Levi-dominant gamma0"
        );
    }
    if sufficient {
        assert!(t < k_bound_mu, "sufficiency implies the compact-level bound");
        assert!(
            gamma.add(&rho_k).pair_coroot(&g.mu).is_negative(),
            "sufficiency implies compact negativity at the highest root"
        );
    }
    NegativityReport {
        t,
        t_bound_mu,
        t_bound_nu,
        k_bound_mu,
        sufficient,
    }
}

/// The highest-root threshold with the labels of gamma0 left symbolic.
pub fn symbolic_mu_bounds(g: &Grading, lv: &LeviStructure) -> SymbolicBounds {
    let (rho_g, rho_k, rho_l) = rho_parts(g, lv);
    let den = g.nu_star.pair_coroot(&g.mu);
    assert!(den.is_positive());
    let coeffs = (0..g.datum.rank)
        .map(|j| -rat(g.mu.cocoords[j]) / &den)
        .collect();
    SymbolicBounds {
        nu_index: g.nu_index,
        coeffs,
        constant_g: -rho_g.pair_coroot(&g.mu) / &den,
        constant_k: -rho_l.scale(&rat(2)).sub(&rho_k).pair_coroot(&g.mu) / &den,
    }
}

impl SymbolicBounds {
    /// Evaluate the threshold at a concrete gamma0.
    pub fn evaluate(&self, gamma0: &Weight, compact_level: bool) -> Rat {
        let mut acc = if compact_level {
            self.constant_k.clone()
        } else {
            self.constant_g.clone()
        };
        for (j, c) in self.coeffs.iter().enumerate() {
            if j != self.nu_index {
                acc += c * &gamma0.labels[j];
            }
        }
        acc
    }

    /// Text form "-(1/L)(c2 n2 + ...) + C" with nodes numbered from 1 and
    /// the marked node omitted.
    pub fn render(&self, compact_level: bool) -> String {
        let mut l = Int::from(1);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j != self.nu_index && !c.is_zero() {
                l = l.lcm(c.denom());
            }
        }
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j == self.nu_index || c.is_zero() {
                continue;
            }
            let scaled = -(c * Rat::from_integer(l.clone()));
            assert!(scaled.is_integer() && scaled.is_positive());
            if scaled.is_one() {
                terms.push(format!("n{}", j + 1));
            } else {
                terms.push(format!("{}n{}", scaled.numer(), j + 1));
            }
        }
        let body = terms.join(" + ");
        let head = if l.is_one() {
            format!("-({body})")
        } else {
            format!("-(1/{l})({body})")
        };
        let c = if compact_level {
            &self.constant_k
        } else {
            &self.constant_g
        };
        if c.is_zero() {
            head
        } else if c.is_negative() {
            format!("{} - {}", head, -c.clone())
        } else {
            format!("{head} + {c}")
        }
    }
}

/// The shifted parameter gamma0 - k nu* + rho_g and whether it avoids
/// every coroot hyperplane.
pub fn hc_parameter(g: &Grading, gamma0: &Weight, k: i64) -> (Weight, bool) {
    let lam = gamma0.sub(&g.nu_star.scale_i(k)).add(&rho(&g.datum));
    let nonsingular = g
        .datum
        .positives
        .iter()
        .all(|a| !lam.pair_coroot(a).is_zero());
    (lam, nonsingular)
}

/// Cohomology of the irreducible bundle on the compact subvariety for an
/// l-dominant integral weight phi: None when phi + rho_k is singular,
/// otherwise the degree and the k-dominant highest weight. Components
/// away from beta0 pass through unchanged, and the signed dimension
/// equals the compact Weyl-polynomial value at the shift; both asserted.
pub fn bbw_on_y(lv: &LeviStructure, phi: &Weight) -> Option<(usize, Weight)> {
    assert!(phi.is_integral(), "bundle weight must be integral");
    assert!(
        lv.l_system.is_dominant(phi),
        "bundle weight must be Levi-dominant"
    );
    let k_sys = &lv.k_system;
    let shifted = phi.add(&k_sys.rho);
    let mut chi = Rat::one();
    for a in &k_sys.positives {
        chi *= shifted.pair_coroot(a) / k_sys.rho.pair_coroot(a);
    }
    let (dom, len, singular) = k_sys.dominant_conjugate(&shifted);
    if singular {
        assert!(chi.is_zero(), "singular shifts have vanishing Euler value");
        return None;
    }
    let hw = dom.sub(&k_sys.rho);
    let phi_labels = k_sys.component_labels(phi);
    let hw_labels = k_sys.component_labels(&hw);
    for ci in 0..k_sys.components.len() {
        if ci != lv.k1_component {
            assert_eq!(
                phi_labels[ci], hw_labels[ci],
                "spectator components pass through"
            );
        }
    }
    let dim = weyl_dim(k_sys, &hw);
    let signed = if len % 2 == 0 { dim.clone() } else { -dim.clone() };
    assert_eq!(
        chi,
        Rat::from_integer(signed),
        "signed dimension equals the Euler value"
    );
    Some((len, hw))
}

/// Per-case data reused across spectrum evaluations: the symmetric-power
/// ladder of the layer -1 character and the component partition of the
/// compact positive roots.
pub struct SpectrumContext {
    case_id: String,
    pub m_max: usize,
    pub ladder: Vec<OrbitCharacter>,
    comp_positives: Vec<Vec<usize>>,
    pub central_slope: Rat,
}

impl SpectrumContext {
    pub fn new(cd: &CaseData, m_max: usize) -> SpectrumContext {
        let g = &cd.grading;
        let lv = &cd.levi;
        let (_, um) = u_character(g, lv, -1);
        let ladder = sym_powers(&lv.l_system, &um, m_max);
        let mut comp_positives = vec![Vec::new(); lv.k_system.components.len()];
        for (pi, a) in lv.k_system.positives.iter().enumerate() {
            let aw = Weight::of_root(&g.datum, a);
            let owners: Vec<usize> = (0..lv.k_system.components.len())
                .filter(|&ci| {
                    lv.k_system.components[ci]
                        .nodes
                        .iter()
                        .any(|&j| !aw.pair_coroot(&lv.k_system.simples[j]).is_zero())
                })
                .collect();
            assert_eq!(owners.len(), 1, "each compact root lies in one component");
            comp_positives[owners[0]].push(pi);
        }
        let nu_w = Weight::of_root(&g.datum, &g.datum.simple_root(g.nu_index));
        let central_slope = g.central_coordinate(&nu_w.neg());
        assert!(
            central_slope.is_negative(),
            "the center drifts down one unit of the marked root per level"
        );
        SpectrumContext {
            case_id: cd.case.id.clone(),
            m_max,
            ladder,
            comp_positives,
            central_slope,
        }
    }

    /// Dimensions of the beta0 component and of the spectator product at
    /// a k-dominant highest weight.
    pub fn component_dims(&self, lv: &LeviStructure, hw: &Weight) -> (Int, Int) {
        let shifted = hw.add(&lv.k_system.rho);
        let dim_over = |idxs: &[usize]| -> Int {
            let mut p = Rat::one();
            for &i in idxs {
                let a = &lv.k_system.positives[i];
                p *= shifted.pair_coroot(a) / lv.k_system.rho.pair_coroot(a);
            }
            assert!(p.is_integer(), "component dimension is an integer");
            p.to_integer()
        };
        let k1 = dim_over(&self.comp_positives[lv.k1_component]);
        let mut k2 = Int::from(1);
        for (ci, idxs) in self.comp_positives.iter().enumerate() {
            if ci != lv.k1_component {
                k2 *= dim_over(idxs);
            }
        }
        (k1, k2)
    }
}

/// K-type spectrum with a prepared context (must come from the same case,
/// with capacity for m_max). See `ktype_spectrum`.
pub fn ktype_spectrum_with(
    ctx: &SpectrumContext,
    cd: &CaseData,
    gamma0: &Weight,
    k: i64,
    m_max: usize,
    allow_insufficient: bool,
) -> Result<SpectrumTable, SpectrumError> {
    assert_eq!(ctx.case_id, cd.case.id, "context belongs to the case");
    assert!(m_max <= ctx.m_max, "context was prepared for a shorter ladder");
    let g = &cd.grading;
    let lv = &cd.levi;
    let l_sys = &lv.l_system;
    assert!(gamma0.is_integral(), "gamma0 must be integral");
    assert!(
        gamma0.labels[g.nu_index].is_zero(),
        "gamma0 must vanish on the marked node"
    );
    assert!(l_sys.is_dominant(gamma0), "gamma0 must be Levi-dominant");
    let gamma_k = gamma0.sub(&g.nu_star.scale_i(k));
    let rep = negativity(g, lv, &gamma_k);
    if !rep.sufficient && !allow_insufficient {
        return Err(SpectrumError::NotSufficientlyNegative {
            t: rep.t,
            t_bound_mu: rep.t_bound_mu,
            t_bound_nu: rep.t_bound_nu,
        });
    }
    let ek = freudenthal(l_sys, &gamma_k);
    let c0 = g.central_coordinate(&gamma_k);
    let mut rows = Vec::new();
    for m in 0..=m_max {
        let mut level = OrbitCharacter::new();
        for (hw_i, n_i) in &ctx.ladder[m].coeffs {
            let part = tensor_multiset(l_sys, &ek, hw_i);
            for (w, c) in part.coeffs {
                level.add(w, c * n_i);
            }
        }
        level.assert_genuine("spectrum level");
        assert_eq!(
            level.dim(l_sys),
            ek.dim() * ctx.ladder[m].dim(l_sys),
            "level dimension is conserved through the tensor decomposition"
        );
        let central = &c0 + rat(m as i64) * &ctx.central_slope;
        let mut level_rows: BTreeMap<(Weight, usize), Int> = BTreeMap::new();
        for (phi, mult) in &level.coeffs {
            debug_assert_eq!(g.central_coordinate(phi), central);
            match bbw_on_y(lv, phi) {
                Some((deg, hw)) => {
                    if rep.sufficient {
                        assert_eq!(
                            deg,
                            g.s(),
                            "cohomology concentrates in the middle degree"
                        );
                    }
                    *level_rows.entry((hw, deg)).or_insert_with(|| Int::from(0)) += mult;
                }
                None => assert!(!rep.sufficient, "no singular shifts under sufficiency"),
            }
        }
        for ((hw, deg), mult) in level_rows {
            let labels = lv.k_system.component_labels(&hw);
            let k1_labels = labels[lv.k1_component].clone();
            let mut k2_labels = Vec::new();
            for (ci, ls) in labels.into_iter().enumerate() {
                if ci != lv.k1_component {
                    k2_labels.extend(ls);
                }
            }
            let dim = weyl_dim(&lv.k_system, &hw);
            rows.push(KType {
                m,
                hw,
                k1_labels,
                k2_labels,
                central: central.clone(),
                multiplicity: mult,
                cohomology_degree: deg,
                dim,
            });
        }
    }
    if rep.sufficient {
        let m0: Vec<&KType> = rows.iter().filter(|r| r.m == 0).collect();
        assert_eq!(m0.len(), 1, "level 0 carries a single type");
        assert!(m0[0].multiplicity.is_one(), "level 0 has multiplicity one");
    }
    let lowest = rows.iter().find(|r| r.m == 0).cloned();
    Ok(SpectrumTable {
        case_id: cd.case.id.clone(),
        gamma0: gamma0.clone(),
        k,
        m_max,
        sufficient: rep.sufficient,
        rows,
        lowest,
    })
}

/// K-type spectrum of the induced family at (gamma0, k) through level
/// m_max. Errors when k is not sufficiently negative unless overridden;
/// under sufficiency every row sits in the middle degree and level 0 is a
/// single type of multiplicity one (both asserted).
pub fn ktype_spectrum(
    cd: &CaseData,
    gamma0: &Weight,
    k: i64,
    m_max: usize,
    allow_insufficient: bool,
) -> Result<SpectrumTable, SpectrumError> {
    let ctx = SpectrumContext::new(cd, m_max);
    ktype_spectrum_with(&ctx, cd, gamma0, k, m_max, allow_insufficient)
}

/// Smallest positive integer k whose level t = -k clears both thresholds.
pub fn minimal_sufficient_k(g: &Grading, lv: &LeviStructure, gamma0: &Weight) -> i64 {
    let rep = negativity(g, lv, gamma0);
    let cutoff = rep.t_bound_mu.min(rep.t_bound_nu);
    let k = ((-cutoff).floor().to_integer() + Int::from(1)).max(Int::from(1));
    let k = k.to_i64().expect("threshold fits in a machine integer");
    debug_assert!(negativity(g, lv, &gamma0.sub(&g.nu_star.scale_i(k))).sufficient);
    k
}

/// The level-0 K-type at (gamma0, k), cross-checked against the closed
/// form lambda + rho'_g - 2 rho'_k taken in the chamber order adapted to
/// lambda and translated back to the fixed compact chamber. For
/// quaternionic cases at gamma0 = 0 the type is additionally checked to
/// be the expected two-row module of the beta0 factor, trivial on the
/// spectators.
pub fn lowest_ktype(cd: &CaseData, gamma0: &Weight, k: i64) -> Result<KType, SpectrumError> {
    let g = &cd.grading;
    let lv = &cd.levi;
    let ctx = SpectrumContext::new(cd, 0);
    let table = ktype_spectrum_with(&ctx, cd, gamma0, k, 0, false)?;
    let row = table.lowest.expect("sufficient tables have a level-0 row");
    let (lam, nonsingular) = hc_parameter(g, gamma0, k);
    assert!(nonsingular, "sufficiently negative parameters avoid all walls");
    let signed_half_sum = |roots: &[Root]| -> Weight {
        let mut acc = Weight::zero(&g.datum);
        for a in roots {
            let p = lam.pair_coroot(a);
            assert!(!p.is_zero());
            let w = Weight::of_root(&g.datum, a);
            acc = if p.is_positive() { acc.add(&w) } else { acc.sub(&w) };
        }
        acc.scale(&(rat(1) / rat(2)))
    };
    let rho_g_adapted = signed_half_sum(&g.datum.positives);
    let rho_k_adapted = signed_half_sum(&lv.k_system.positives);
    let capital = lam.add(&rho_g_adapted).sub(&rho_k_adapted.scale_i(2));
    let translated = lv.k_system.dominantize(&capital);
    assert_eq!(
        translated, row.hw,
        "closed-form lowest type agrees after chamber translation"
    );
    if cd.case.quaternionic && gamma0.is_zero() {
        let scaled = rat(k) * g.nu_star.pair_coroot(&g.mu);
        assert!(scaled.is_integer());
        let kq = scaled.to_integer();
        assert_eq!(row.k1_labels, vec![Rat::from_integer(kq.clone() - 2)]);
        assert!(
            row.k2_labels.iter().all(|x| x.is_zero()),
            "trivial on the spectator factor"
        );
        assert_eq!(row.dim, kq - 1);
        assert!(row.multiplicity.is_one());
    }
    Ok(row)
}

/// Admissibility diagnostics for a computed spectrum table.
pub fn admissibility_check(
    cd: &CaseData,
    ctx: &SpectrumContext,
    table: &SpectrumTable,
) -> AdmissibilityReport {
    assert_eq!(ctx.case_id, cd.case.id);
    assert_eq!(table.case_id, cd.case.id);
    let lv = &cd.levi;
    let c0 = table
        .rows
        .first()
        .map(|r| &r.central - rat(r.m as i64) * &ctx.central_slope)
        .unwrap_or_else(Rat::zero);
    for r in &table.rows {
        assert_eq!(
            r.central,
            &c0 + rat(r.m as i64) * &ctx.central_slope,
            "center coordinate is affine in the level"
        );
    }
    let monotone = ctx.central_slope.is_negative();
    assert!(monotone);
    let mut seen: BTreeMap<(Vec<Rat>, Vec<Rat>, Rat), usize> = BTreeMap::new();
    let mut disjoint = true;
    for r in &table.rows {
        let key = (r.k1_labels.clone(), r.k2_labels.clone(), r.central.clone());
        if let Some(&m) = seen.get(&key) {
            if m != r.m {
                disjoint = false;
            }
        } else {
            seen.insert(key, r.m);
        }
    }
    assert!(disjoint, "types at distinct levels are disjoint");
    let mut totals: BTreeMap<Vec<Rat>, Int> = BTreeMap::new();
    for r in &table.rows {
        let (_, dim_k2) = ctx.component_dims(lv, &r.hw);
        *totals.entry(r.k1_labels.clone()).or_insert_with(|| Int::from(0)) +=
            &r.multiplicity * dim_k2;
    }
    AdmissibilityReport {
        case_id: table.case_id.clone(),
        m_max: table.m_max,
        central_start: c0,
        central_slope: ctx.central_slope.clone(),
        monotone,
        cross_level_disjoint: disjoint,
        k1_totals: totals.into_iter().collect(),
    }
}

/// Largest constituent multiplicity in the order-m symmetric power of the
/// layer -1 character over the Levi.
pub fn max_sym_constituent_multiplicity(cd: &CaseData, m: usize) -> Int {
    let (_, um) = u_character(&cd.grading, &cd.levi, -1);
    let ladder = sym_powers(&cd.levi.l_system, &um, m);
    ladder[m]
        .coeffs
        .values()
        .max()
        .cloned()
        .unwrap_or_else(|| Int::from(0))
}
