//! Character kernels over positive subsystems: dimensions, weight
//! multiplicities, tensor products, Adams operations, and symmetric and
//! alternating powers.
//!
//! Every operation takes a [`System`] (a chosen positive subsystem of an
//! ambient datum) and works with ambient weights throughout, so the same
//! kernels serve the full algebra, Levi subalgebras, and compact subalgebras
//! without coordinate changes. Highest weights may carry components central
//! to the subsystem; those ride along untouched.
//!
//! Signed (virtual) characters are allowed as intermediates. Operations that
//! return the decomposition of a genuine module validate nonnegativity and
//! panic on violation: a negative coefficient there is an internal
//! inconsistency, never a recoverable condition.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::lattice::{Int, Rat, System, Weight};

/// A formal sum of weights with integer (possibly negative) multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightMultiset {
    pub entries: BTreeMap<Weight, Int>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: Weight, n: Int) {
        if n.is_zero() {
            return;
        }
        match self.entries.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += n;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(n);
            }
        }
    }

    /// Total multiplicity (the dimension, for a genuine character).
    pub fn dim(&self) -> Int {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// The Adams transform of the underlying weight list: every weight
    /// scaled by r, multiplicities kept.
    pub fn scale_weights(&self, r: i64) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (w, n) in &self.entries {
            out.add(w.scale_i(r), n.clone());
        }
        out
    }

    pub fn multiplicity(&self, w: &Weight) -> Int {
        self.entries.get(w).cloned().unwrap_or_else(Int::zero)
    }
}

/// A virtual character written in the irreducible basis of a subsystem:
/// dominant highest weights with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitCharacter {
    pub coeffs: BTreeMap<Weight, Int>,
}

impl OrbitCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(hw: Weight) -> Self {
        let mut c = Self::new();
        c.coeffs.insert(hw, Int::one());
        c
    }

    pub fn add(&mut self, hw: Weight, n: Int) {
        if n.is_zero() {
            return;
        }
        match self.coeffs.entry(hw) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += n;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(n);
            }
        }
    }

    pub fn coeff(&self, hw: &Weight) -> Int {
        self.coeffs.get(hw).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_genuine(&self) -> bool {
        self.coeffs.values().all(|n| !n.is_negative())
    }

    /// Panic unless every coefficient is nonnegative; decomposing a genuine
    /// module must never produce a virtual answer.
    pub fn assert_genuine(&self, context: &str) {
        for (hw, n) in &self.coeffs {
            assert!(
                !n.is_negative(),
                "{context}: negative multiplicity {n} at {hw}"
            );
        }
    }

    pub fn dim(&self, sys: &System) -> Int {
        let mut total = Int::zero();
        for (hw, n) in &self.coeffs {
            total += n * weyl_dim(sys, hw);
        }
        total
    }

    /// Expand into the full weight multiset.
    pub fn to_multiset(&self, sys: &System) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (hw, n) in &self.coeffs {
            for (w, m) in &freudenthal(sys, hw).entries {
                out.add(w.clone(), n * m);
            }
        }
        out
    }
}

fn validate_dominant_integral(sys: &System, hw: &Weight, context: &str) {
    for s in &sys.simples {
        let p = hw.pair_coroot(s);
        assert!(
            p.is_integer() && !p.is_negative(),
            "{context}: weight {hw} pairs to {p} against a simple coroot"
        );
    }
}

/// Weyl dimension of the irreducible with the given subsystem-dominant
/// highest weight: prod (hw + rho, alpha) / (rho, alpha) over the
/// subsystem's positive roots.
pub fn weyl_dim(sys: &System, hw: &Weight) -> Int {
    validate_dominant_integral(sys, hw, "weyl_dim");
    let shifted = hw.add(&sys.rho);
    let mut num = Rat::one();
    let mut den = Rat::one();
    for alpha in &sys.positives {
        num *= shifted.pair_coroot(alpha);
        den *= sys.rho.pair_coroot(alpha);
    }
    let q = num / den;
    assert!(q.is_integer(), "weyl_dim: non-integer dimension {q}");
    q.numer().clone()
}

type MultisetCache = Mutex<HashMap<(String, Vec<Rat>), Arc<WeightMultiset>>>;

fn multiset_cache() -> &'static MultisetCache {
    static CACHE: OnceLock<MultisetCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Full weight multiset of the irreducible with highest weight hw, by the
/// Freudenthal recursion on dominant weights followed by orbit expansion.
/// Results are memoized per (subsystem, highest weight).
pub fn freudenthal(sys: &System, hw: &Weight) -> Arc<WeightMultiset> {
    let key = (sys.fingerprint().to_string(), hw.labels.clone());
    if let Some(hit) = multiset_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let result = Arc::new(freudenthal_uncached(sys, hw));
    multiset_cache()
        .lock()
        .unwrap()
        .insert(key, result.clone());
    result
}

fn freudenthal_uncached(sys: &System, hw: &Weight) -> WeightMultiset {
    validate_dominant_integral(sys, hw, "freudenthal");
    // (alpha, rho) > 0 for every positive alpha: the height functional
    let f_root: Vec<Rat> = sys
        .positives
        .iter()
        .map(|r| sys.rho.inner_root(r))
        .collect();
    let f_top = hw.inner(&sys.rho);

    // dominant candidates reachable from hw by positive-root steps; every
    // dominant weight of the module is among them (each is covered by a
    // higher dominant weight through a single positive root)
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut order: Vec<(Rat, Weight)> = vec![(f_top.clone(), hw.clone())];
    let mut stack: Vec<(Rat, Weight)> = vec![(f_top.clone(), hw.clone())];
    seen.insert(hw.clone());
    while let Some((f, w)) = stack.pop() {
        for (i, r) in sys.positives.iter().enumerate() {
            let child = w.sub_root(r);
            if sys.is_dominant(&child) && seen.insert(child.clone()) {
                let fc = &f - &f_root[i];
                stack.push((fc.clone(), child.clone()));
                order.push((fc, child));
            }
        }
    }
    order.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let top_shifted = hw.add(&sys.rho);
    let c_top = top_shifted.inner(&top_shifted);
    let two = Rat::from_integer(Int::from(2));
    let mut mult: HashMap<Weight, Int> = HashMap::new();
    mult.insert(hw.clone(), Int::one());
    for (f_mu, mu) in order.iter().skip(1) {
        let mu_shifted = mu.add(&sys.rho);
        let denom = &c_top - mu_shifted.inner(&mu_shifted);
        assert!(denom.is_positive(), "freudenthal: zero Casimir gap at {mu}");
        let mut rhs = Rat::zero();
        for (i, alpha) in sys.positives.iter().enumerate() {
            let mu_dot_a = mu.inner_root(alpha);
            let a_norm = &alpha.d_alpha * &two; // (alpha, alpha)
            let mut k: i64 = 1;
            let mut up = mu.add_root(alpha);
            let mut f_up = f_mu + &f_root[i];
            while f_up <= f_top {
                let dom = sys.dominantize(&up);
                if let Some(m) = mult.get(&dom) {
                    let pair = &mu_dot_a + Rat::from_integer(Int::from(k)) * &a_norm;
                    rhs += Rat::from_integer(m.clone()) * pair;
                }
                k += 1;
                up = up.add_root(alpha);
                f_up += &f_root[i];
            }
        }
        let m = rhs * &two / denom;
        assert!(m.is_integer(), "freudenthal: non-integer multiplicity at {mu}");
        let m = m.numer().clone();
        assert!(!m.is_negative(), "freudenthal: negative multiplicity at {mu}");
        if !m.is_zero() {
            mult.insert(mu.clone(), m);
        }
    }

    let mut out = WeightMultiset::new();
    for (mu, m) in mult {
        for w in weyl_orbit(sys, &mu) {
            out.add(w, m.clone());
        }
    }
    assert_eq!(out.dim(), weyl_dim(sys, hw), "freudenthal: dimension check");
    out
}

/// Orbit of a weight under the subsystem's Weyl group.
pub fn weyl_orbit(sys: &System, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut stack = vec![w.clone()];
    seen.insert(w.clone());
    while let Some(v) = stack.pop() {
        for s in &sys.simples {
            let img = v.reflect(s);
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// Decompose (weight multiset) x (irreducible with highest weight hw):
/// sum over multiset weights w of the normalized term xi(w + hw + rho).
/// Valid for any Weyl-invariant multiset, including virtual ones.
pub fn tensor_multiset(sys: &System, wts: &WeightMultiset, hw: &Weight) -> OrbitCharacter {
    validate_dominant_integral(sys, hw, "tensor");
    let base = hw.add(&sys.rho);
    let mut out = OrbitCharacter::new();
    for (w, n) in &wts.entries {
        let v = base.add(w);
        if let Some((dom, sign)) = sys.normalize_shifted(&v) {
            let constituent = dom.sub(&sys.rho);
            let signed = if sign < 0 { -n.clone() } else { n.clone() };
            out.add(constituent, signed);
        }
    }
    out
}

/// Decompose the tensor product of two irreducibles, expanding the smaller
/// factor into its weight multiset.
pub fn tensor(sys: &System, a: &Weight, b: &Weight) -> OrbitCharacter {
    validate_dominant_integral(sys, a, "tensor");
    validate_dominant_integral(sys, b, "tensor");
    let (small, large) = if weyl_dim(sys, a) <= weyl_dim(sys, b) {
        (a, b)
    } else {
        (b, a)
    };
    let wts = freudenthal(sys, small);
    let out = tensor_multiset(sys, &wts, large);
    out.assert_genuine("tensor");
    out
}

/// Decompose a Weyl-invariant (possibly virtual) multiset into irreducible
/// characters by peeling maximal weights.
pub fn peel(sys: &System, wts: &WeightMultiset) -> OrbitCharacter {
    let mut rest = wts.clone();
    let mut out = OrbitCharacter::new();
    while !rest.is_empty() {
        // a weight of maximal height is dominance-maximal, hence dominant
        // whenever the multiset is Weyl-invariant
        let (w, n) = rest
            .entries
            .iter()
            .map(|(w, n)| (w.inner(&sys.rho), w, n))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, w, n)| (w.clone(), n.clone()))
            .expect("nonempty");
        assert!(
            sys.is_dominant(&w),
            "peel: maximal weight {w} is not dominant; multiset is not Weyl-invariant"
        );
        out.add(w.clone(), n.clone());
        for (v, m) in &freudenthal(sys, &w).entries {
            rest.add(v.clone(), -(&n * m));
        }
    }
    out
}

/// The r-th Adams operation applied to a genuine character given by its
/// weight multiset, returned as a (generally virtual) decomposition.
pub fn adams(sys: &System, c: &WeightMultiset, r: i64) -> OrbitCharacter {
    assert!(r >= 1, "adams: power must be at least 1");
    peel(sys, &c.scale_weights(r))
}

fn power_sequence(
    sys: &System,
    c: &WeightMultiset,
    m_max: usize,
    alternating: bool,
) -> Vec<OrbitCharacter> {
    power_sequence_until(sys, c, m_max, alternating, |_| false)
}

fn power_sequence_until(
    sys: &System,
    c: &WeightMultiset,
    m_max: usize,
    alternating: bool,
    mut stop: impl FnMut(&OrbitCharacter) -> bool,
) -> Vec<OrbitCharacter> {
    let datum = &sys.rho.datum;
    let mut out = vec![OrbitCharacter::irreducible(Weight::zero(datum))];
    let psi: Vec<WeightMultiset> = (1..=m_max as i64).map(|r| c.scale_weights(r)).collect();
    for m in 1..=m_max {
        let mut acc: BTreeMap<Weight, Int> = BTreeMap::new();
        for r in 1..=m {
            let flip = alternating && r % 2 == 0;
            for (hw, n) in &out[m - r].coeffs {
                let base = hw.add(&sys.rho);
                for (w, k) in &psi[r - 1].entries {
                    let v = base.add(w);
                    if let Some((dom, sign)) = sys.normalize_shifted(&v) {
                        let mut term = n * k;
                        if (sign < 0) != flip {
                            term = -term;
                        }
                        let slot = acc.entry(dom).or_insert_with(Int::zero);
                        *slot += term;
                    }
                }
            }
        }
        let mut ch = OrbitCharacter::new();
        let divisor = Int::from(m);
        for (dom, tot) in acc {
            if tot.is_zero() {
                continue;
            }
            let (q, rem) = num_integer::Integer::div_rem(&tot, &divisor);
            assert!(
                rem.is_zero(),
                "power recursion: inexact division by {m} at {dom}"
            );
            ch.add(dom.sub(&sys.rho), q);
        }
        ch.assert_genuine(if alternating {
            "alternating power"
        } else {
            "symmetric power"
        });
        let done = stop(&ch);
        out.push(ch);
        if done {
            break;
        }
    }
    out
}

/// Symmetric powers computed level by level, cut short after the first
/// level where `stop` answers true; the result always starts at S^0 and
/// ends either at that level or at m_max.
pub fn sym_powers_until(
    sys: &System,
    c: &WeightMultiset,
    m_max: usize,
    stop: impl FnMut(&OrbitCharacter) -> bool,
) -> Vec<OrbitCharacter> {
    power_sequence_until(sys, c, m_max, false, stop)
}

/// All symmetric powers S^0(c) .. S^m(c) of a genuine character, by the
/// Newton recursion m S^m = sum_r psi^r S^(m-r).
pub fn sym_powers(sys: &System, c: &WeightMultiset, m_max: usize) -> Vec<OrbitCharacter> {
    power_sequence(sys, c, m_max, false)
}

/// All alternating powers L^0(c) .. L^m(c) of a genuine character, by the
/// signed Newton recursion m L^m = sum_r (-1)^(r-1) psi^r L^(m-r).
pub fn alt_powers(sys: &System, c: &WeightMultiset, m_max: usize) -> Vec<OrbitCharacter> {
    power_sequence(sys, c, m_max, true)
}

/// The m-th symmetric power of a genuine character.
pub fn sym_power(sys: &System, c: &WeightMultiset, m: usize) -> OrbitCharacter {
    sym_powers(sys, c, m).pop().expect("nonempty sequence")
}

/// The m-th alternating power of a genuine character.
pub fn alt_power(sys: &System, c: &WeightMultiset, m: usize) -> OrbitCharacter {
    alt_powers(sys, c, m).pop().expect("nonempty sequence")
}

/// Multiplicity of constituents on which the subsystem's semisimple part
/// acts trivially (all simple pairings zero); components central to the
/// subsystem are unconstrained.
pub fn trivial_multiplicity(sys: &System, ch: &OrbitCharacter) -> Int {
    let mut total = Int::zero();
    for (hw, n) in &ch.coeffs {
        if sys.sub_labels(hw).iter().all(|p| p.is_zero()) {
            total += n;
        }
    }
    total
}
