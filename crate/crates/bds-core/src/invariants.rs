//! Duality and invariant theory of the layer-1 module over the semisimple
//! part of the Levi: self-duality, the bilinear pairing type, and the
//! degree of the leading invariant polynomial.
//!
//! Invariance is always tested against the semisimple part only. Since the
//! center acts on layer 1 by a single scalar, any such invariant is
//! automatically a semiinvariant of the full Levi.

use std::fmt;

use num_traits::Zero;

use crate::bdscore::{dual_hw, BdsCase, CaseData, LeviStructure};
use crate::charkernel::{
    alt_power, freudenthal, sym_power, sym_powers_until, trivial_multiplicity, weyl_dim,
};
use crate::lattice::{Int, SimpleType, Weight};

/// Degrees are searched up to this bound unless the caller overrides it.
pub const DEFAULT_SEARCH_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearType {
    Symmetric,
    Antisymmetric,
    None,
}

impl fmt::Display for BilinearType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BilinearType::Symmetric => "symmetric",
            BilinearType::Antisymmetric => "antisymmetric",
            BilinearType::None => "none",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub case_id: String,
    pub deg_tau1: Int,
    pub self_dual: bool,
    pub bilinear: BilinearType,
    /// smallest positive degree carrying an invariant, up to search_bound;
    /// None means none found up to the bound, not a nonexistence theorem
    pub invariant_degree: Option<usize>,
    pub search_bound: usize,
}

/// Does hw and its dual agree on the semisimple part? The center is
/// ignored: duality always negates it.
pub fn is_self_dual(lv: &LeviStructure, hw: &Weight) -> bool {
    let dual = dual_hw(lv, hw);
    lv.l_system.sub_labels(hw) == lv.l_system.sub_labels(&dual)
}

/// Which invariant bilinear pairing does the irreducible with highest
/// weight hw carry over the semisimple Levi? An irreducible admits at most
/// one, so both multiplicities positive is a hard internal failure.
pub fn bilinear_type(lv: &LeviStructure, hw: &Weight) -> BilinearType {
    let sys = &lv.l_system;
    let wts = freudenthal(sys, hw);
    let sym = trivial_multiplicity(sys, &sym_power(sys, &wts, 2));
    let alt = trivial_multiplicity(sys, &alt_power(sys, &wts, 2));
    assert!(
        sym.is_zero() || alt.is_zero(),
        "an irreducible admits at most one invariant bilinear form"
    );
    if !sym.is_zero() {
        BilinearType::Symmetric
    } else if !alt.is_zero() {
        BilinearType::Antisymmetric
    } else {
        BilinearType::None
    }
}

/// Smallest degree d with 1 <= d <= bound whose symmetric power contains an
/// invariant of the semisimple Levi, or None if the whole ladder up to the
/// bound is invariant-free.
pub fn first_invariant_degree(lv: &LeviStructure, hw: &Weight, bound: usize) -> Option<usize> {
    assert!(bound >= 2, "search bound must be at least 2");
    let sys = &lv.l_system;
    let wts = freudenthal(sys, hw);
    let ladder = sym_powers_until(sys, &wts, bound, |ch| {
        !trivial_multiplicity(sys, ch).is_zero()
    });
    let d = ladder.len() - 1;
    if d >= 1 && !trivial_multiplicity(sys, &ladder[d]).is_zero() {
        Some(d)
    } else {
        None
    }
}

/// Closed form for the classical families, from the matrix model: layer 1
/// is the space of p x r matrices (r the vector dimension of the orthogonal
/// or symplectic factor) and the invariant ring is generated by
///   - the Gram determinant det(M G M^t), degree 2p, when p < r;
///   - det(M) itself, degree p, on the square boundary p = r;
///   - the Pfaffian Pf(M J M^t), degree p, when p is even and p <= r;
/// and is trivial otherwise.
pub fn classical_invariant_degree(case: &BdsCase) -> Option<usize> {
    let p = case.nu_index + 1;
    match case.g_type {
        SimpleType::B(l) => {
            let r = 2 * (l - p) + 1;
            gram_degree(p, r)
        }
        SimpleType::D(l) => {
            let r = 2 * (l - p);
            gram_degree(p, r)
        }
        SimpleType::C(l) => {
            let r = 2 * (l - p);
            if p % 2 == 0 && p <= r {
                Some(p)
            } else {
                None
            }
        }
        _ => panic!("classical_invariant_degree: {} is not classical", case.id),
    }
}

fn gram_degree(p: usize, r: usize) -> Option<usize> {
    match p.cmp(&r) {
        std::cmp::Ordering::Less => Some(2 * p),
        std::cmp::Ordering::Equal => Some(p),
        std::cmp::Ordering::Greater => None,
    }
}

/// Full invariant-theory row for one case. For classical cases the scan is
/// checked against the closed form whenever the closed form lies inside the
/// search bound; disagreement is a hard failure.
pub fn relative_invariant_report(cd: &CaseData, search_bound: usize) -> InvariantReport {
    let lv = &cd.levi;
    let hw = &cd.case.tau1_hw;
    let self_dual = is_self_dual(lv, hw);
    let bilinear = bilinear_type(lv, hw);
    assert!(
        bilinear == BilinearType::None || self_dual,
        "{}: a bilinear invariant forces self-duality",
        cd.case.id
    );
    let invariant_degree = first_invariant_degree(lv, hw, search_bound);
    assert_eq!(
        invariant_degree == Some(2),
        bilinear == BilinearType::Symmetric,
        "{}: degree-2 invariants are exactly the symmetric bilinears",
        cd.case.id
    );
    if matches!(
        cd.case.g_type,
        SimpleType::B(_) | SimpleType::C(_) | SimpleType::D(_)
    ) {
        let closed = classical_invariant_degree(&cd.case);
        match closed {
            Some(d) if d <= search_bound => assert_eq!(
                invariant_degree,
                Some(d),
                "{}: scan disagrees with the matrix-model degree",
                cd.case.id
            ),
            _ => assert_eq!(
                invariant_degree, None,
                "{}: scan found an invariant the matrix model excludes below the bound",
                cd.case.id
            ),
        }
    }
    InvariantReport {
        case_id: cd.case.id.clone(),
        deg_tau1: weyl_dim(&lv.l_system, hw),
        self_dual,
        bilinear,
        invariant_degree,
        search_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdscore::{case_data, find_case};
    use crate::charkernel::sym_powers;
    use crate::lattice::{rat, RootDatum, Weight};
    use std::sync::Arc;

    fn case(id: &str) -> CaseData {
        find_case(id, 9).unwrap_or_else(|| panic!("case {id}"))
    }

    #[test]
    fn self_duality_of_layer_one() {
        for (id, expect) in [
            ("G2_A1A1", true),
            ("F4_A1C3", true),
            ("F4_B4", true),
            ("E6_A1A5_1", false),
            ("E6_A1A5_2", true),
            ("E7_A1D6_1", true),
            ("E7_A1D6_2", false),
            ("E7_A7", false),
            ("E8_D8", false),
            ("E8_A1E7", true),
        ] {
            let cd = case(id);
            assert_eq!(is_self_dual(&cd.levi, &cd.case.tau1_hw), expect, "{id}");
        }
    }

    #[test]
    fn bilinear_types_of_fast_rows() {
        for (id, expect) in [
            ("G2_A1A1", BilinearType::Antisymmetric),
            ("F4_A1C3", BilinearType::Antisymmetric),
            ("F4_B4", BilinearType::Symmetric),
            ("E6_A1A5_1", BilinearType::None),
            ("E6_A1A5_2", BilinearType::Antisymmetric),
            ("E7_A1D6_1", BilinearType::Antisymmetric),
            ("E7_A1D6_2", BilinearType::None),
            ("E8_A1E7", BilinearType::Antisymmetric),
        ] {
            let cd = case(id);
            assert_eq!(bilinear_type(&cd.levi, &cd.case.tau1_hw), expect, "{id}");
        }
    }

    #[test]
    fn rank_one_adjoint_is_orthogonal() {
        // the 3-dimensional module with label 2 over an A1 Levi factor
        let g2 = RootDatum::new(SimpleType::G2).unwrap();
        let cd = case_data(&g2, 1).unwrap();
        let hw = Weight::from_labels(&g2, vec![rat(2), rat(0)]);
        assert_eq!(bilinear_type(&cd.levi, &hw), BilinearType::Symmetric);
        assert!(is_self_dual(&cd.levi, &hw));
    }

    #[test]
    fn first_degrees_of_fast_exceptional_rows() {
        for (id, expect) in [
            ("G2_A1A1", Some(4)),
            ("F4_A1C3", Some(4)),
            ("F4_B4", Some(2)),
            ("E6_A1A5_1", None),
            ("E6_A1A5_2", Some(4)),
            ("E7_A1D6_1", Some(4)),
            ("E8_A1E7", Some(4)),
        ] {
            let cd = case(id);
            assert_eq!(
                first_invariant_degree(&cd.levi, &cd.case.tau1_hw, 8),
                expect,
                "{id}"
            );
        }
    }

    #[test]
    fn e7_half_spin_pair_row() {
        // not self-dual, no bilinear, yet a quartic invariant: the wedge
        // square of the 32 is self-dual even though the 32 itself is not
        let cd = case("E7_A1D6_2");
        let report = relative_invariant_report(&cd, 8);
        assert!(!report.self_dual);
        assert_eq!(report.bilinear, BilinearType::None);
        assert_eq!(report.invariant_degree, Some(4));
    }

    #[test]
    fn slow_rows_degrees() {
        let cd = case("E7_A7");
        assert_eq!(first_invariant_degree(&cd.levi, &cd.case.tau1_hw, 8), Some(7));
        let cd = case("E8_D8");
        assert_eq!(first_invariant_degree(&cd.levi, &cd.case.tau1_hw, 8), Some(8));
    }

    #[test]
    fn classical_scan_agreement_samples() {
        // p < r: Gram determinant at 2p
        let cd = case("Spin(4,5)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, Some(4));
        // square boundary p = r: the plain determinant halves the degree
        let cd = case("Spin(6,3)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, Some(3));
        let cd = case("Spin(8,4)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, Some(4));
        // p > r: no invariant
        let cd = case("Spin(8,1)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, None);
        // symplectic: Pfaffian at p for even p
        let cd = case("Sp(2,3)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, Some(2));
        assert_eq!(r.bilinear, BilinearType::Symmetric);
        // odd p: nothing
        let cd = case("Sp(3,2)");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.invariant_degree, None);
    }

    #[test]
    fn generator_is_unique_and_powers_persist() {
        for (id, d) in [("G2_A1A1", 4usize), ("F4_B4", 2)] {
            let cd = case(id);
            let sys = &cd.levi.l_system;
            let wts = freudenthal(sys, &cd.case.tau1_hw);
            let ladder = sym_powers(sys, &wts, 2 * d);
            assert_eq!(trivial_multiplicity(sys, &ladder[d]), Int::from(1), "{id}");
            assert_eq!(
                trivial_multiplicity(sys, &ladder[2 * d]),
                Int::from(1),
                "{id}: square of the generator"
            );
            for e in 1..d {
                assert!(
                    trivial_multiplicity(sys, &ladder[e]).is_zero(),
                    "{id}: no invariant below the generator"
                );
            }
        }
    }

    #[test]
    fn quaternionic_rows_are_antisymmetric_quartic() {
        for c in crate::bdscore::enumerate_cases(4) {
            if !c.quaternionic || !matches!(c.g_type, SimpleType::E(_) | SimpleType::F4 | SimpleType::G2) {
                continue;
            }
            let cd = case(&c.id);
            let report = relative_invariant_report(&cd, 8);
            assert!(report.self_dual, "{}", c.id);
            assert_eq!(report.bilinear, BilinearType::Antisymmetric, "{}", c.id);
            assert_eq!(report.invariant_degree, Some(4), "{}", c.id);
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let cd = case("F4_B4");
        let r = relative_invariant_report(&cd, 8);
        assert_eq!(r.case_id, "F4_B4");
        assert_eq!(r.deg_tau1, Int::from(8));
        assert!(r.self_dual);
        assert_eq!(r.bilinear, BilinearType::Symmetric);
        assert_eq!(r.invariant_degree, Some(2));
        assert_eq!(r.search_bound, 8);
        let _ = Arc::clone(&cd.grading.datum);
    }
}
