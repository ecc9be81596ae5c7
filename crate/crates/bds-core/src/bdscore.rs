//! The two-step grading attached to a simple root with highest-root
//! coefficient 2, and the case atlas built on it.
//!
//! Fixing such a root nu splits the root set by its nu-coefficient into
//! layers Delta_i, i in {-2,...,2}. Layer 0 generates the Levi subsystem l,
//! layers 0 and 2 together generate the compact subsystem k, and the
//! outer layers form irreducible l-modules u_i whose highest weights and
//! degrees this module computes and cross-checks.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::charkernel::{freudenthal, weyl_dim, WeightMultiset};
use crate::lattice::{
    product_name, sub_root_datum, Embedding, Int, LatticeError, Rat, Root, RootDatum, SimpleType,
    System, Weight,
};

#[derive(Debug, thiserror::Error)]
pub enum GradingError {
    #[error("{g}: marked root {nu} has highest-root coefficient 1 (Hermitian case, excluded)")]
    HermitianCaseExcluded { g: String, nu: usize },
    #[error("{g}: marked root {nu} has highest-root coefficient {coefficient}, not 2")]
    NotBorelDeSiebenthal {
        g: String,
        nu: usize,
        coefficient: i64,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The five-layer split of the root set of a simple algebra by the
/// coefficient of the marked simple root nu.
#[derive(Debug, Clone)]
pub struct Grading {
    pub datum: Arc<RootDatum>,
    pub nu_index: usize,
    /// highest root
    pub mu: Root,
    /// fundamental weight at nu (spans the center of the Levi)
    pub nu_star: Weight,
    /// layers indexed by coefficient + 2; layer 0 carries both signs
    deltas: [Vec<Root>; 5],
}

impl Grading {
    /// All roots with nu-coefficient i.
    pub fn delta(&self, i: i64) -> &[Root] {
        &self.deltas[(i + 2) as usize]
    }

    pub fn s(&self) -> usize {
        self.delta(2).len()
    }

    pub fn dim_u1(&self) -> usize {
        self.delta(1).len()
    }

    pub fn dim_u2(&self) -> usize {
        self.delta(2).len()
    }

    /// The nu-coordinate of nu_star; dividing nu-coordinates by this value
    /// normalizes nu_star to central coordinate 1.
    pub fn central_unit(&self) -> Rat {
        self.nu_star.coords()[self.nu_index].clone()
    }

    /// Coordinate of w along the center, normalized so nu_star has value 1.
    pub fn central_coordinate(&self, w: &Weight) -> Rat {
        w.coords()[self.nu_index].clone() / self.central_unit()
    }
}

/// Grade a simple algebra by the coefficient of the marked simple root in
/// the highest root; only coefficient 2 yields the two-step structure.
pub fn grade(datum: &Arc<RootDatum>, nu_index: usize) -> Result<Grading, GradingError> {
    let mu = datum.highest_root()?;
    assert!(nu_index < datum.rank, "marked root index out of range");
    let coeff = mu.coords[nu_index];
    if coeff == 1 {
        return Err(GradingError::HermitianCaseExcluded {
            g: datum.name.clone(),
            nu: nu_index + 1,
        });
    }
    if coeff != 2 {
        return Err(GradingError::NotBorelDeSiebenthal {
            g: datum.name.clone(),
            nu: nu_index + 1,
            coefficient: coeff,
        });
    }
    let mut deltas: [Vec<Root>; 5] = Default::default();
    for r in &datum.positives {
        let c = r.coords[nu_index];
        assert!((0..=2).contains(&c), "positive-root coefficient out of range");
        deltas[(c + 2) as usize].push(r.clone());
        deltas[(2 - c) as usize].push(r.negate());
    }
    let nu_star = Weight::fundamental(datum, nu_index);
    let g = Grading {
        datum: datum.clone(),
        nu_index,
        mu,
        nu_star,
        deltas,
    };
    // the layers tile the root set
    let dim_g = datum.rank + 2 * datum.positives.len();
    assert_eq!(
        datum.rank + g.delta(0).len() + 2 * g.dim_u1() + 2 * g.dim_u2(),
        dim_g,
        "grading layer count"
    );
    Ok(g)
}

/// The subsystem scaffolding above a grading: the Levi (layer 0), the
/// compact subsystem (layers 0 and 2), and the simple-system split of the
/// compact part into the ideal touching layer 2 and its complement.
#[derive(Debug, Clone)]
pub struct LeviStructure {
    /// layer-0 positive subsystem, in ambient coordinates
    pub l_system: System,
    /// its semisimple part as an abstract datum
    pub l_datum: Arc<RootDatum>,
    pub l_embedding: Embedding,
    /// nu_star, spanning the center of the full Levi
    pub center: Weight,
    /// positive subsystem on layers 0 and 2
    pub k_system: System,
    /// lowest root of layer 2; the extra simple root of k_system
    pub beta0: Root,
    /// index of the k_system component containing beta0
    pub k1_component: usize,
    /// simple set (Psi minus nu) plus (-mu): the component containing -mu
    pub psi_k1: Vec<Root>,
    /// and the remaining components
    pub psi_k2: Vec<Root>,
    pub k1_types: Vec<SimpleType>,
    pub k2_types: Vec<SimpleType>,
}

impl LeviStructure {
    pub fn l_types(&self) -> Vec<SimpleType> {
        self.l_system.component_types()
    }

    pub fn dim_l(&self) -> usize {
        self.l_system.datum.rank + 2 * self.l_system.positives.len()
    }

    pub fn dim_k(&self) -> usize {
        self.k_system.datum.rank + 2 * self.k_system.positives.len()
    }

    /// Indices (within k_system.simples) of the simple roots lying in the
    /// beta0 component, and of the rest.
    pub fn k_simple_split(&self) -> (Vec<usize>, Vec<usize>) {
        let comp = &self.k_system.components[self.k1_component];
        let ours: BTreeSet<usize> = comp.nodes.iter().cloned().collect();
        let mut k1 = comp.nodes.clone();
        k1.sort();
        let k2 = (0..self.k_system.simples.len())
            .filter(|i| !ours.contains(i))
            .collect();
        (k1, k2)
    }
}

/// Build the Levi and compact scaffolding for a grading.
pub fn levi(g: &Grading) -> LeviStructure {
    let datum = &g.datum;
    let l_positives: Vec<Root> = g
        .delta(0)
        .iter()
        .filter(|r| r.is_positive())
        .cloned()
        .collect();
    let l_system = System::from_positive_set(datum, l_positives).expect("layer 0 is a subsystem");
    // the Levi simple roots are exactly the unmarked simple roots
    {
        let expect: BTreeSet<Vec<i64>> = (0..datum.rank)
            .filter(|&i| i != g.nu_index)
            .map(|i| datum.simple_root(i).coords)
            .collect();
        let got: BTreeSet<Vec<i64>> = l_system.simples.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(got, expect, "Levi simple roots");
    }
    let (l_datum, l_embedding) = sub_root_datum(datum, &l_system.simples).expect("Levi datum");

    let mut k_positives: Vec<Root> = l_system.positives.clone();
    k_positives.extend(g.delta(2).iter().cloned());
    let k_system =
        System::from_positive_set(datum, k_positives).expect("layers 0 and 2 are a subsystem");
    // lowest root of layer 2: unique of minimal height
    let beta0 = g
        .delta(2)
        .iter()
        .min_by_key(|r| (r.height, r.coords.clone()))
        .expect("layer 2 nonempty")
        .clone();
    assert_eq!(
        g.delta(2).iter().filter(|r| r.height == beta0.height).count(),
        1,
        "lowest root of layer 2 is unique"
    );
    // computed simple roots of k: the unmarked simples plus beta0
    {
        let mut expect: BTreeSet<Vec<i64>> = (0..datum.rank)
            .filter(|&i| i != g.nu_index)
            .map(|i| datum.simple_root(i).coords)
            .collect();
        expect.insert(beta0.coords.clone());
        let got: BTreeSet<Vec<i64>> = k_system.simples.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(got, expect, "compact simple roots");
    }
    let beta0_node = k_system
        .simples
        .iter()
        .position(|r| r.coords == beta0.coords)
        .expect("beta0 is simple in k");
    let k1_component = k_system
        .components
        .iter()
        .position(|c| c.nodes.contains(&beta0_node))
        .expect("beta0 lies in some component");
    let k1_types = vec![k_system.components[k1_component].ty];
    let mut k2_types: Vec<SimpleType> = k_system
        .components
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k1_component)
        .map(|(_, c)| c.ty)
        .collect();
    k2_types.sort();

    // cross-check against the extended simple set (Psi minus nu) plus (-mu)
    let mut psi_k: Vec<Root> = (0..datum.rank)
        .filter(|&i| i != g.nu_index)
        .map(|i| datum.simple_root(i))
        .collect();
    psi_k.push(g.mu.negate());
    let psi_k_system = System::from_simple_set(datum, &psi_k).expect("extended simple set");
    let minus_mu_node = psi_k_system
        .simples
        .iter()
        .position(|r| r.coords == g.mu.negate().coords)
        .expect("-mu is simple");
    let mut psi_k1 = Vec::new();
    let mut psi_k2 = Vec::new();
    let mut psi_k1_types = Vec::new();
    let mut psi_k2_types = Vec::new();
    for c in &psi_k_system.components {
        let roots: Vec<Root> = c
            .nodes
            .iter()
            .map(|&i| psi_k_system.simples[i].clone())
            .collect();
        if c.nodes.contains(&minus_mu_node) {
            psi_k1_types.push(c.ty);
            psi_k1 = roots;
        } else {
            psi_k2_types.push(c.ty);
            psi_k2.extend(roots);
        }
    }
    psi_k2_types.sort();
    assert_eq!(psi_k1_types, k1_types, "both presentations of the layer-2 ideal agree");
    assert_eq!(psi_k2_types, k2_types, "both presentations of the complement agree");

    LeviStructure {
        l_system,
        l_datum,
        l_embedding,
        center: g.nu_star.clone(),
        k_system,
        beta0,
        k1_component,
        psi_k1,
        psi_k2,
        k1_types,
        k2_types,
    }
}

/// One row of the case atlas.
#[derive(Debug, Clone)]
pub struct BdsCase {
    pub id: String,
    pub g_type: SimpleType,
    /// 0-based index of the marked simple root
    pub nu_index: usize,
    pub k1_types: Vec<SimpleType>,
    pub k2_types: Vec<SimpleType>,
    pub l_types: Vec<SimpleType>,
    pub dim_u1: usize,
    pub dim_u2: usize,
    /// = dim_u2; the vanishing degree of the associated cohomology
    pub s: usize,
    /// exactly the s = 1 rows
    pub quaternionic: bool,
    pub tau1_hw: Weight,
    pub tau2_hw: Weight,
    pub deg_tau1: Int,
}

/// A case with its full computational scaffolding.
#[derive(Debug, Clone)]
pub struct CaseData {
    pub case: BdsCase,
    pub grading: Grading,
    pub levi: LeviStructure,
}

/// The unique Levi-extreme root of layer i (i in {1,2}): no simple root
/// other than the marked one can be added (highest) or subtracted
/// (lowest) without leaving the root system. Uniqueness is asserted; it
/// is what makes the layer a single irreducible.
pub fn layer_extreme_root(g: &Grading, i: i64, highest: bool) -> Root {
    let datum = &g.datum;
    let candidates: Vec<&Root> = g
        .delta(i)
        .iter()
        .filter(|r| {
            (0..datum.rank).filter(|&j| j != g.nu_index).all(|j| {
                let mut c = r.coords.clone();
                for (x, y) in c.iter_mut().zip(&datum.simple_root(j).coords) {
                    if highest {
                        *x += y;
                    } else {
                        *x -= y;
                    }
                }
                !datum.is_root(&c)
            })
        })
        .collect();
    assert_eq!(
        candidates.len(),
        1,
        "extreme root of layer {i} is unique (got {})",
        candidates.len()
    );
    candidates[0].clone()
}

/// Highest weight of the Levi action on layer i (i in {-2,-1,1,2}), as an
/// ambient weight. Computed directly from the layer and cross-checked.
pub fn tau_weight(g: &Grading, lv: &LeviStructure, i: i64) -> Weight {
    let datum = &g.datum;
    let hw = match i {
        2 => {
            let top = layer_extreme_root(g, 2, true);
            assert_eq!(top.coords, g.mu.coords, "layer 2 peaks at the highest root");
            Weight::of_root(datum, &g.mu)
        }
        1 => {
            let top = layer_extreme_root(g, 1, true);
            let w = Weight::of_root(datum, &top);
            // the same weight via the longest Levi element applied to nu
            let nu_w = Weight::of_root(datum, &datum.simple_root(g.nu_index));
            assert_eq!(
                lv.l_system.longest_image(&nu_w),
                w,
                "layer-1 highest weight matches the reflected marked root"
            );
            w
        }
        -1 => {
            let bottom = layer_extreme_root(g, 1, false);
            assert_eq!(
                bottom.coords,
                datum.simple_root(g.nu_index).coords,
                "layer 1 bottoms out at the marked root"
            );
            Weight::of_root(datum, &bottom.negate())
        }
        -2 => {
            let bottom = layer_extreme_root(g, 2, false);
            assert_eq!(bottom.coords, lv.beta0.coords, "layer 2 bottoms out at beta0");
            Weight::of_root(datum, &bottom.negate())
        }
        _ => panic!("tau_weight: layer must be one of -2, -1, 1, 2"),
    };
    assert!(lv.l_system.is_dominant(&hw), "tau highest weight is Levi-dominant");
    hw
}

/// The Levi character of layer i: its highest weight and its weight
/// multiset, which must be exactly the layer's roots, each once. The
/// equality is asserted, which proves the layer irreducible over the Levi.
pub fn u_character(g: &Grading, lv: &LeviStructure, i: i64) -> (Weight, WeightMultiset) {
    let hw = tau_weight(g, lv, i);
    let mut expect = WeightMultiset::new();
    let negate = i < 0;
    for r in g.delta(i.abs()) {
        let root = if negate { r.negate() } else { r.clone() };
        expect.add(Weight::of_root(&g.datum, &root), Int::from(1));
    }
    let got = freudenthal(&lv.l_system, &hw);
    assert_eq!(
        *got, expect,
        "layer {i} is a single irreducible with the layer as weight set"
    );
    (hw, expect)
}

/// Highest weight of the dual of the Levi irreducible with highest weight
/// hw (center included: the central part is negated).
pub fn dual_hw(lv: &LeviStructure, hw: &Weight) -> Weight {
    lv.l_system.dual_hw(hw)
}

/// Split gamma = gamma0 + t nu_star with gamma0 vanishing on the marked
/// coroot; t is the marked Dynkin label.
pub fn decompose_gamma(g: &Grading, gamma: &Weight) -> (Weight, Rat) {
    let t = gamma.labels[g.nu_index].clone();
    let gamma0 = gamma.sub(&g.nu_star.scale(&t));
    debug_assert!(gamma0.labels[g.nu_index].is_zero());
    (gamma0, t)
}

/// Marked-root choices with highest-root coefficient 2, one per diagram
/// automorphism orbit, in presentation order (exceptional types by case
/// family, classical types ascending).
pub fn admissible_nus(datum: &Arc<RootDatum>) -> Vec<usize> {
    assert!(datum.is_simple(), "admissible_nus expects a simple datum");
    let ty = datum.types[0];
    let mu = datum.highest_root().expect("simple datum");
    let coeff2: Vec<usize> = (0..datum.rank)
        .filter(|&i| mu.coords[i] == 2)
        .collect();
    let picked: Vec<usize> = match ty {
        SimpleType::G2 => vec![1],
        SimpleType::F4 => vec![0, 3],
        // psi5 is the automorphism image of psi3; keep one representative
        SimpleType::E(6) => vec![2, 1],
        SimpleType::E(7) => vec![0, 5, 1],
        SimpleType::E(8) => vec![0, 7],
        _ => coeff2.clone(),
    };
    for &i in &picked {
        assert!(coeff2.contains(&i), "selected root must have coefficient 2");
    }
    picked
}

fn case_id(ty: SimpleType, nu_index: usize) -> String {
    match ty {
        SimpleType::G2 => "G2_A1A1".to_string(),
        SimpleType::F4 => match nu_index {
            0 => "F4_A1C3".to_string(),
            _ => "F4_B4".to_string(),
        },
        SimpleType::E(6) => match nu_index {
            2 => "E6_A1A5_1".to_string(),
            _ => "E6_A1A5_2".to_string(),
        },
        SimpleType::E(7) => match nu_index {
            0 => "E7_A1D6_1".to_string(),
            5 => "E7_A1D6_2".to_string(),
            _ => "E7_A7".to_string(),
        },
        SimpleType::E(8) => match nu_index {
            0 => "E8_D8".to_string(),
            _ => "E8_A1E7".to_string(),
        },
        SimpleType::B(l) => {
            let p = nu_index + 1;
            format!("Spin({},{})", 2 * p, 2 * (l - p) + 1)
        }
        SimpleType::C(l) => {
            let p = nu_index + 1;
            format!("Sp({},{})", p, l - p)
        }
        SimpleType::D(l) => {
            let p = nu_index + 1;
            if l == 4 && p == 2 {
                "SO(4,4)".to_string()
            } else {
                format!("Spin({},{})", 2 * p, 2 * (l - p))
            }
        }
        SimpleType::A(_) => unreachable!("type A has no coefficient-2 root"),
        SimpleType::E(_) => unreachable!("validated rank"),
    }
}

/// Assemble the full scaffolding for one case.
pub fn case_data(datum: &Arc<RootDatum>, nu_index: usize) -> Result<CaseData, GradingError> {
    let grading = grade(datum, nu_index)?;
    let lv = levi(&grading);
    let tau1_hw = tau_weight(&grading, &lv, 1);
    let tau2_hw = tau_weight(&grading, &lv, 2);
    let deg_tau1 = weyl_dim(&lv.l_system, &tau1_hw);
    assert_eq!(
        deg_tau1,
        Int::from(grading.dim_u1()),
        "layer-1 degree equals the layer size"
    );
    assert_eq!(
        weyl_dim(&lv.l_system, &tau2_hw),
        Int::from(grading.dim_u2()),
        "layer-2 degree equals the layer size"
    );
    assert_eq!(lv.dim_k(), lv.dim_l() + 2 * grading.dim_u2(), "compact dimension");
    let ty = datum.types[0];
    let s = grading.s();
    let mut l_types = lv.l_types();
    l_types.sort();
    let case = BdsCase {
        id: case_id(ty, nu_index),
        g_type: ty,
        nu_index,
        k1_types: lv.k1_types.clone(),
        k2_types: lv.k2_types.clone(),
        l_types,
        dim_u1: grading.dim_u1(),
        dim_u2: grading.dim_u2(),
        s,
        quaternionic: s == 1,
        tau1_hw,
        tau2_hw,
        deg_tau1,
    };
    Ok(CaseData {
        case,
        grading,
        levi: lv,
    })
}

/// The simple types carrying cases, up to the given classical rank:
/// exceptional types first, then families B, C, D ascending.
pub fn case_bearing_types(max_classical_rank: usize) -> Vec<SimpleType> {
    assert!(max_classical_rank >= 4, "classical rank bound must be at least 4");
    let mut types = vec![
        SimpleType::G2,
        SimpleType::F4,
        SimpleType::E(6),
        SimpleType::E(7),
        SimpleType::E(8),
    ];
    for l in 2..=max_classical_rank {
        types.push(SimpleType::B(l));
    }
    for l in 2..=max_classical_rank {
        types.push(SimpleType::C(l));
    }
    for l in 4..=max_classical_rank {
        types.push(SimpleType::D(l));
    }
    types
}

/// Every case up to the given classical rank, fully assembled.
pub fn enumerate_case_data(max_classical_rank: usize) -> Vec<CaseData> {
    let mut out = Vec::new();
    for ty in case_bearing_types(max_classical_rank) {
        let datum = RootDatum::new(ty).expect("valid type");
        for nu in admissible_nus(&datum) {
            out.push(case_data(&datum, nu).expect("coefficient-2 root"));
        }
    }
    out
}

/// Every case row up to the given classical rank.
pub fn enumerate_cases(max_classical_rank: usize) -> Vec<BdsCase> {
    enumerate_case_data(max_classical_rank)
        .into_iter()
        .map(|cd| cd.case)
        .collect()
}

/// Find one case by id, searching up to the given classical rank.
pub fn find_case(id: &str, max_classical_rank: usize) -> Option<CaseData> {
    for ty in case_bearing_types(max_classical_rank) {
        let datum = RootDatum::new(ty).expect("valid type");
        for nu in admissible_nus(&datum) {
            if case_id(ty, nu) == id {
                return Some(case_data(&datum, nu).expect("coefficient-2 root"));
            }
        }
    }
    None
}

/// Human-readable product name of the compact part, k1 then k2.
pub fn k_name(case: &BdsCase) -> String {
    if case.k2_types.is_empty() {
        product_name(&case.k1_types)
    } else {
        format!(
            "{} + {}",
            product_name(&case.k1_types),
            product_name(&case.k2_types)
        )
    }
}
