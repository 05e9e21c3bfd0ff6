//! Executable properties over random instances.
//!
//! Each law takes a [`RandomInstance`] plus a private RNG and either passes or
//! returns a description of the violation. The oracles here are deliberately
//! independent of the code paths they check: the per-atom positive and
//! negative parts against the sup formula, brute-force subset enumeration
//! against structural decisions, explicit extension attempts against the
//! maximality criterion.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::density::{ess_sup, is_abs_continuous, positive_split, rn_derivative, RandomVariable};
use crate::example3::{self, mu3, Half, HalfSet, SymbolicMeasureValue, SymbolicSet};
use crate::extreal::ExtReal;
use crate::finite_space::{FiniteSpace, MeasurableSet};
use crate::measure::{Measure, PositiveMeasure};
use crate::partial::{MaximalPartialMeasure, PartialMeasure, Side};
use crate::random::{
    generate_random_instance, make_abs_continuous, random_positive_measure, random_restriction, trial_rng, FuzzConfig,
    RandomInstance,
};

pub type LawResult = std::result::Result<(), String>;
pub type LawFn = fn(&RandomInstance, &mut ChaCha8Rng) -> LawResult;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every law, by name.
pub const LAWS: &[(&str, LawFn)] = &[
    ("extreal_sum_permutation_invariant", extreal_sum_permutation_invariant),
    ("algebra_closure", algebra_closure),
    ("de_morgan", de_morgan),
    ("trace_algebra_atoms", trace_algebra_atoms),
    ("measure_finite_additivity", measure_finite_additivity),
    ("measure_hahn_decomposition", measure_hahn_decomposition),
    ("f_plus_disjoint_family_sums", f_plus_disjoint_family_sums),
    ("f_plus_union_closure", f_plus_union_closure),
    ("f_plus_downward_closed", f_plus_downward_closed),
    ("jordan_identity", jordan_identity),
    ("jordan_sup_matches_atom_oracle", jordan_sup_matches_atom_oracle),
    ("jordan_minimality", jordan_minimality),
    ("corollary1_witnesses", corollary1_witnesses),
    ("maximality_characterization", maximality_characterization),
    ("diff_measures_maximality", diff_measures_maximality),
    ("rn_round_trip", rn_round_trip),
    ("rn_uniqueness", rn_uniqueness),
    ("abs_continuous_hahn_split", abs_continuous_hahn_split),
    ("ess_sup_defining_property", ess_sup_defining_property),
    ("abs_continuity_criterion", abs_continuity_criterion),
    ("quasi_integrable_domain", quasi_integrable_domain),
    (
        "example3_decision_matches_enumeration",
        example3_decision_matches_enumeration,
    ),
    ("example3_no_hahn_split", example3_no_hahn_split),
];

fn all_sets(space: &FiniteSpace) -> Vec<MeasurableSet> {
    space
        .enumerate_sets()
        .expect("instances stay under the enumeration cap")
        .collect()
}

// ---- extreal / finite_space ----

pub fn extreal_sum_permutation_invariant(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let mut xs: Vec<ExtReal> = inst.mu.atom_values().to_vec();
    xs.extend(inst.mu.atom_values().iter().map(|x| -x));
    let total = ExtReal::sum(&xs);
    let mixed = xs.contains(&ExtReal::PlusInf) && xs.contains(&ExtReal::MinusInf);
    ensure!(total.is_err() == mixed, "sum well-posedness wrong for {xs:?}");
    xs.shuffle(rng);
    let folded = xs.iter().try_fold(ExtReal::zero(), |acc, x| acc.add(x));
    ensure!(folded == total, "sequential fold {folded:?} differs from sum {total:?}");
    Ok(())
}

fn random_generated_space(rng: &mut ChaCha8Rng) -> FiniteSpace {
    let n = rng.gen_range(1..=7);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let gens: Vec<Vec<String>> = (0..rng.gen_range(0..4))
        .map(|_| labels.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect())
        .collect();
    FiniteSpace::generate_algebra(&labels, &gens).expect("labels are known")
}

pub fn algebra_closure(_: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = random_generated_space(rng);
    let sets = all_sets(&space);
    let masks: std::collections::BTreeSet<u64> = sets.iter().map(MeasurableSet::mask).collect();
    for a in &sets {
        ensure!(masks.contains(&a.complement().mask()), "complement of {a:?} missing");
        for b in &sets {
            ensure!(masks.contains(&a.union(b).map_err(fail)?.mask()), "union missing");
        }
    }
    Ok(())
}

pub fn de_morgan(_: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = random_generated_space(rng);
    let full = space.full_mask();
    let a = space.set_from_mask(rng.gen::<u64>() & full).map_err(fail)?;
    let b = space.set_from_mask(rng.gen::<u64>() & full).map_err(fail)?;
    let lhs = a.union(&b).map_err(fail)?.complement();
    let rhs = a.complement().intersect(&b.complement()).map_err(fail)?;
    ensure!(lhs == rhs, "(A∪B)ᶜ ≠ Aᶜ∩Bᶜ for {a:?}, {b:?}");
    let lhs = a.intersect(&b).map_err(fail)?.complement();
    let rhs = a.complement().union(&b.complement()).map_err(fail)?;
    ensure!(lhs == rhs, "(A∩B)ᶜ ≠ Aᶜ∪Bᶜ for {a:?}, {b:?}");
    Ok(())
}

pub fn trace_algebra_atoms(_: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = random_generated_space(rng);
    let b = space
        .set_from_mask(rng.gen::<u64>() & space.full_mask())
        .map_err(fail)?;
    let trace = space.trace_algebra(&b).map_err(fail)?;
    ensure!(trace.atom_count() == b.atom_count(), "trace atom count mismatch");
    // trace members are exactly the sets A ∩ B
    let mut direct: Vec<Vec<String>> = all_sets(&space)
        .iter()
        .map(|a| {
            let inter = a.intersect(&b).expect("same space");
            inter.points().into_iter().map(String::from).collect()
        })
        .collect();
    direct.sort();
    direct.dedup();
    let mut traced: Vec<Vec<String>> = all_sets(&trace)
        .iter()
        .map(|s| s.points().into_iter().map(String::from).collect())
        .collect();
    traced.sort();
    ensure!(direct == traced, "trace algebra differs from {{A ∩ B}}");
    if b == space.full_set() {
        ensure!(trace == space, "trace over Ω is not the original space");
    }
    Ok(())
}

// ---- measure ----

fn some_total_measure(mu: &MaximalPartialMeasure) -> Measure {
    mu.as_measure().unwrap_or_else(|| {
        let values = mu.atom_values().iter().map(ExtReal::positive_part).collect();
        Measure::new(mu.space().clone(), values).expect("nonnegative values")
    })
}

pub fn measure_finite_additivity(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let m = some_total_measure(&inst.mu);
    let sets = all_sets(m.space());
    let values: Vec<ExtReal> = sets.iter().map(|s| m.evaluate(s).expect("same space")).collect();
    ensure!(
        !(values.contains(&ExtReal::PlusInf) && values.contains(&ExtReal::MinusInf)),
        "measure attains both infinities"
    );
    for a in &sets {
        for b in &sets {
            if a.mask() & b.mask() != 0 {
                continue;
            }
            let lhs = &values[(a.mask() | b.mask()) as usize];
            let rhs = values[a.mask() as usize]
                .add(&values[b.mask() as usize])
                .map_err(|_| "ill-posed sum of disjoint measure values".to_string())?;
            ensure!(*lhs == rhs, "additivity fails on {a:?} ∪ {b:?}");
        }
    }
    if m.is_positive() {
        for b in &sets {
            for a in b.subsets() {
                ensure!(values[a.mask() as usize] <= values[b.mask() as usize], "not monotone");
            }
        }
    }
    Ok(())
}

pub fn measure_hahn_decomposition(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let m = some_total_measure(&inst.mu);
    let (p, n) = m.hahn_decomposition();
    ensure!(p.is_disjoint(&n).map_err(fail)?, "P and N overlap");
    ensure!(p.union(&n).map_err(fail)? == m.space().full_set(), "P ∪ N ≠ Ω");
    for sub in p.subsets() {
        ensure!(
            m.evaluate(&sub).map_err(fail)?.is_nonnegative(),
            "negative subset {sub:?} of P"
        );
    }
    for sub in n.subsets() {
        ensure!(
            m.evaluate(&sub).map_err(fail)?.is_nonpositive(),
            "positive subset {sub:?} of N"
        );
    }
    Ok(())
}

// ---- partial ----

/// Random partition of `set` into up to `blocks` (possibly empty) pieces.
fn random_partition(rng: &mut ChaCha8Rng, set: &MeasurableSet, blocks: usize) -> Vec<MeasurableSet> {
    let mut masks = vec![0u64; blocks.max(1)];
    for a in set.atoms() {
        let i = rng.gen_range(0..masks.len());
        masks[i] |= 1 << a;
    }
    masks
        .into_iter()
        .map(|m| set.space().set_from_mask(m).expect("submask"))
        .collect()
}

pub fn f_plus_disjoint_family_sums(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    let fplus = mu.f_plus().map_err(fail)?;
    // greedily pick disjoint F⁺ members in random order
    let mut order = fplus.clone();
    order.shuffle(rng);
    let mut first: Vec<MeasurableSet> = Vec::new();
    let mut covered = 0u64;
    for f in order.into_iter().take(rng.gen_range(1..=4)) {
        if f.mask() & covered == 0 {
            covered |= f.mask();
            first.push(f);
        }
    }
    let union = mu.space().set_from_mask(covered).map_err(fail)?;
    let blocks = rng.gen_range(1..=4);
    let second = random_partition(rng, &union, blocks);
    for f in first.iter().chain(&second) {
        ensure!(mu.is_in_f_class(f, Side::Plus).map_err(fail)?, "{f:?} not in F⁺");
    }
    let eval = |fam: &[MeasurableSet]| -> std::result::Result<Vec<ExtReal>, String> {
        fam.iter().map(|f| mu.evaluate(f).map_err(fail)).collect()
    };
    let s1 = ExtReal::sum(&eval(&first)?).map_err(fail)?;
    let s2 = ExtReal::sum(&eval(&second)?).map_err(fail)?;
    ensure!(s1 == s2, "family sums differ: {first:?} -> {s1}, {second:?} -> {s2}");
    Ok(())
}

pub fn f_plus_union_closure(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    let fplus = mu.f_plus().map_err(fail)?;
    let picks: Vec<&MeasurableSet> = (0..rng.gen_range(1..=4))
        .map(|_| fplus.choose(rng).expect("∅ is always in F⁺"))
        .collect();
    let mut union = mu.space().empty_set();
    for f in &picks {
        union = union.union(f).map_err(fail)?;
    }
    ensure!(
        mu.is_in_f_class(&union, Side::Plus).map_err(fail)?,
        "union {union:?} of {picks:?} is not in F⁺"
    );
    Ok(())
}

pub fn f_plus_downward_closed(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    for (side, family) in [(Side::Plus, mu.f_plus()), (Side::Minus, mu.f_minus())] {
        let family = family.map_err(fail)?;
        let members: std::collections::BTreeSet<u64> = family.iter().map(MeasurableSet::mask).collect();
        for f in &family {
            ensure!(mu.in_domain(f), "{f:?} in F class but outside the domain");
            for a in f.subsets() {
                ensure!(members.contains(&a.mask()), "{side:?}: subset {a:?} of {f:?} missing");
            }
        }
    }
    Ok(())
}

pub fn jordan_identity(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    let j = mu.jordan_decompose().map_err(fail)?;
    for a in all_sets(mu.space()) {
        let plus = j.mu_plus.evaluate(&a).map_err(fail)?;
        let minus = j.mu_minus.evaluate(&a).map_err(fail)?;
        match mu.evaluate(&a) {
            Ok(v) => {
                let diff = plus
                    .sub(&minus)
                    .map_err(|_| format!("μ⁺ − μ⁻ ill-posed on domain set {a:?}"))?;
                ensure!(v == diff, "μ({a:?}) = {v} but μ⁺ − μ⁻ = {diff}");
            }
            Err(_) => ensure!(
                plus == ExtReal::PlusInf && minus == ExtReal::PlusInf,
                "off-domain {a:?}: μ⁺ = {plus}, μ⁻ = {minus}"
            ),
        }
    }
    Ok(())
}

/// `max(μ(a), 0)` and `max(−μ(a), 0)` per atom.
pub fn atom_oracle(mu: &MaximalPartialMeasure) -> (PositiveMeasure, PositiveMeasure) {
    let plus = mu.atom_values().iter().map(ExtReal::positive_part).collect();
    let minus = mu.atom_values().iter().map(ExtReal::negative_part).collect();
    (
        PositiveMeasure::new(mu.space().clone(), plus).expect("nonnegative"),
        PositiveMeasure::new(mu.space().clone(), minus).expect("nonnegative"),
    )
}

/// Compares `jordan_decompose` with the per-atom oracle.
pub fn jordan_atoms_match_oracle(mu: &MaximalPartialMeasure) -> LawResult {
    let j = mu.jordan_decompose().map_err(fail)?;
    let (plus, minus) = atom_oracle(mu);
    ensure!(
        j.mu_plus == plus,
        "μ⁺ {:?} ≠ oracle {:?}",
        j.mu_plus.atom_values(),
        plus.atom_values()
    );
    ensure!(
        j.mu_minus == minus,
        "μ⁻ {:?} ≠ oracle {:?}",
        j.mu_minus.atom_values(),
        minus.atom_values()
    );
    Ok(())
}

pub fn jordan_sup_matches_atom_oracle(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    jordan_atoms_match_oracle(mu)?;
    // the sup formula at every set, not just atoms
    let (plus, minus) = atom_oracle(mu);
    let fplus = mu.f_plus().map_err(fail)?;
    let fminus = mu.f_minus().map_err(fail)?;
    for a in all_sets(mu.space()) {
        let (sp, _) = mu.sup_over(&fplus, &a, Side::Plus).map_err(fail)?;
        let (sm, _) = mu.sup_over(&fminus, &a, Side::Minus).map_err(fail)?;
        ensure!(sp == plus.evaluate(&a).map_err(fail)?, "sup formula μ⁺({a:?}) = {sp}");
        ensure!(sm == minus.evaluate(&a).map_err(fail)?, "sup formula μ⁻({a:?}) = {sm}");
    }
    Ok(())
}

/// For `candidates` random positive measures of the form `μ± + ρ`, plus the
/// same number of unrelated random positive measures, domination on `𝒟(μ)`
/// must imply `μ± ≤ ν` on every set.
pub fn minimality_with(inst: &RandomInstance, rng: &mut ChaCha8Rng, candidates: usize) -> LawResult {
    let mu = &inst.mu;
    let j = mu.jordan_decompose().map_err(fail)?;
    let sets = all_sets(mu.space());
    for (side, part) in [(Side::Plus, &j.mu_plus), (Side::Minus, &j.mu_minus)] {
        for i in 0..2 * candidates {
            let bump = random_positive_measure(rng, mu.space());
            let built = i < candidates;
            let nu = if built { part.add(&bump).map_err(fail)? } else { bump };
            let dominates = mu.check_minimality(&nu, side).map_err(fail)?;
            ensure!(
                !built || dominates,
                "{side:?}: μ± + ρ does not dominate μ on the domain"
            );
            if dominates {
                for a in &sets {
                    let lo = part.evaluate(a).map_err(fail)?;
                    let hi = nu.evaluate(a).map_err(fail)?;
                    ensure!(lo <= hi, "{side:?}: part({a:?}) = {lo} > ν = {hi}");
                }
            }
        }
    }
    Ok(())
}

pub fn jordan_minimality(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    minimality_with(inst, rng, 3)
}

pub fn corollary1_witnesses(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = &inst.mu;
    for a in all_sets(mu.space()) {
        if mu.in_domain(&a) {
            ensure!(
                mu.corollary1_witness(&a).is_err(),
                "witness produced for domain set {a:?}"
            );
            continue;
        }
        let (p, m) = mu.corollary1_witness(&a).map_err(fail)?;
        ensure!(
            p.is_subset(&a).map_err(fail)? && m.is_subset(&a).map_err(fail)?,
            "witness not inside {a:?}"
        );
        ensure!(mu.is_in_f_class(&p, Side::Plus).map_err(fail)?, "A′ = {p:?} not in F⁺");
        ensure!(mu.is_in_f_class(&m, Side::Minus).map_err(fail)?, "A″ = {m:?} not in F⁻");
        ensure!(mu.evaluate(&p).map_err(fail)? == ExtReal::PlusInf, "μ(A′) ≠ +inf");
        ensure!(mu.evaluate(&m).map_err(fail)? == ExtReal::MinusInf, "μ(A″) ≠ −inf");
    }
    Ok(())
}

/// Values worth trying when extending `pm` to `set`.
fn extension_candidates(pm: &PartialMeasure, set: &MeasurableSet) -> Vec<ExtReal> {
    let mut out = vec![
        ExtReal::zero(),
        ExtReal::from_int(1),
        ExtReal::from_int(-1),
        ExtReal::PlusInf,
        ExtReal::MinusInf,
    ];
    let known: Option<Vec<&ExtReal>> = set.atoms().map(|a| pm.atom_values()[a].as_ref()).collect();
    if let Some(sum) = known.and_then(|k| ExtReal::sum(k).ok()) {
        out.push(sum);
    }
    out
}

/// Brute force: does any single set outside the domain extend `pm`?
pub fn has_single_set_extension(pm: &PartialMeasure) -> std::result::Result<bool, String> {
    for set in all_sets(pm.space()) {
        if pm.contains(&set) {
            continue;
        }
        for v in extension_candidates(pm, &set) {
            if pm.extend(&set, v).is_ok() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Restricts `mu` at random, maximalizes with a random fill, and checks the
/// result extends the restriction and cannot be extended further.
pub fn check_maximalization(mu: &MaximalPartialMeasure, rng: &mut ChaCha8Rng) -> LawResult {
    let pm = random_restriction(rng, mu);
    ensure!(
        pm.is_maximal() == !has_single_set_extension(&pm)?,
        "is_maximal = {} disagrees with extension search",
        pm.is_maximal()
    );
    let mut fill = BTreeMap::new();
    for a in (0..mu.space().atom_count()).filter(|&a| pm.atom_values()[a].is_none()) {
        if rng.gen_bool(0.5) {
            fill.insert(a, crate::random::ValuePool::default().draw(rng));
        }
    }
    let mx = pm.maximalize(&fill).map_err(fail)?;
    for set in pm.domain().map_err(fail)? {
        ensure!(mx.in_domain(&set), "maximalization dropped {set:?}");
        ensure!(
            mx.evaluate(&set).ok() == pm.value(&set),
            "maximalization changed μ({set:?})"
        );
    }
    let explicit = mx.to_partial();
    ensure!(explicit.is_maximal(), "maximalized measure reports non-maximal");
    ensure!(
        !has_single_set_extension(&explicit)?,
        "maximalized measure still extends"
    );
    Ok(())
}

pub fn maximality_characterization(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    check_maximalization(&inst.mu, rng)
}

/// `μ₁ − μ₂` is maximal iff no atom is `+inf` under both.
pub fn diff_measures_maximality(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = inst.mu.space();
    let m1 = random_positive_measure(rng, space);
    let m2 = random_positive_measure(rng, space);
    let d = PartialMeasure::diff_measures(&m1, &m2).map_err(fail)?;
    for a in all_sets(space) {
        let direct = m1.evaluate(&a).map_err(fail)?.sub(&m2.evaluate(&a).map_err(fail)?).ok();
        ensure!(d.value(&a) == direct, "diff value on {a:?}");
    }
    let shared_inf = m1
        .atom_values()
        .iter()
        .zip(m2.atom_values())
        .any(|(x, y)| *x == ExtReal::PlusInf && *y == ExtReal::PlusInf);
    ensure!(
        d.is_maximal() == !shared_inf,
        "diff maximality {} with shared inf {shared_inf}",
        d.is_maximal()
    );
    ensure!(
        d.is_maximal() == !has_single_set_extension(&d)?,
        "diff maximality vs extension search"
    );
    Ok(())
}

// ---- density ----

pub fn rn_round_trip(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = make_abs_continuous(&inst.mu, &inst.prob);
    let xi = rn_derivative(&mu, &inst.prob).map_err(fail)?;
    let back = xi.mu_xi(&inst.prob).map_err(fail)?;
    ensure!(back == mu, "μ_ξ {:?} ≠ μ {:?}", back.atom_values(), mu.atom_values());
    Ok(())
}

fn different_value(rng: &mut ChaCha8Rng, old: &ExtReal) -> ExtReal {
    loop {
        let v = crate::random::ValuePool::default().draw(rng);
        if v != *old {
            return v;
        }
    }
}

pub fn rn_uniqueness(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let prob = &inst.prob;
    let mu = make_abs_continuous(&inst.mu, prob);
    let xi = rn_derivative(&mu, prob).map_err(fail)?;
    let null: Vec<usize> = (0..prob.atom_probs().len())
        .filter(|&a| prob.atom_probs()[a] == num_traits::Zero::zero())
        .collect();
    let support: Vec<usize> = (0..prob.atom_probs().len()).filter(|a| !null.contains(a)).collect();

    let mut eta = xi.atom_values().to_vec();
    for &a in &null {
        eta[a] = different_value(rng, &eta[a]);
    }
    let eta = RandomVariable::new(mu.space().clone(), eta).map_err(fail)?;
    ensure!(
        eta.mu_xi(prob).map_err(fail)? == mu,
        "null-atom perturbation changed μ_η"
    );
    ensure!(
        eta.eq_as(&xi, prob).map_err(fail)?,
        "null-atom perturbation not a.s. equal"
    );

    let &a = support.choose(rng).expect("probability has support");
    let mut eta = xi.atom_values().to_vec();
    eta[a] = different_value(rng, &eta[a]);
    let eta = RandomVariable::new(mu.space().clone(), eta).map_err(fail)?;
    ensure!(
        eta.mu_xi(prob).map_err(fail)? != mu,
        "perturbation on non-null atom {a} kept μ_η = μ"
    );

    // any density of μ agrees with ξ off null atoms: use μ = μ_ζ for random ζ
    let zeta: Vec<ExtReal> = (0..mu.space().atom_count())
        .map(|_| crate::random::ValuePool::default().draw(rng))
        .collect();
    let zeta = RandomVariable::new(mu.space().clone(), zeta).map_err(fail)?;
    let nu = zeta.mu_xi(prob).map_err(fail)?;
    let recovered = rn_derivative(&nu, prob).map_err(fail)?;
    ensure!(
        recovered.eq_as(&zeta, prob).map_err(fail)?,
        "density of μ_ζ differs from ζ on the support"
    );
    Ok(())
}

pub fn abs_continuous_hahn_split(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    let mu = make_abs_continuous(&inst.mu, &inst.prob);
    let (plus, minus) = positive_split(&mu, &inst.prob).map_err(fail)?;
    ensure!(
        mu.is_in_f_class(&plus, Side::Plus).map_err(fail)?,
        "Ω⁺ = {plus:?} not in F⁺"
    );
    ensure!(
        mu.is_in_f_class(&minus, Side::Minus).map_err(fail)?,
        "Ω⁻ = {minus:?} not in F⁻"
    );
    Ok(())
}

fn check_ess_sup(family: &[MeasurableSet], inst: &RandomInstance) -> LawResult {
    let prob = &inst.prob;
    let sup = ess_sup(family, prob).map_err(fail)?;
    for a in all_sets(prob.space()) {
        let all_in = family
            .iter()
            .map(|f| prob.subset_as(f, &a))
            .collect::<crate::Result<Vec<bool>>>()
            .map_err(fail)?
            .into_iter()
            .all(|x| x);
        let sup_in = prob.subset_as(&sup, &a).map_err(fail)?;
        ensure!(all_in == sup_in, "ess sup property fails at {a:?}");
    }
    Ok(())
}

pub fn ess_sup_defining_property(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = inst.prob.space();
    let full = space.full_mask();
    let family: Vec<MeasurableSet> = (0..rng.gen_range(1..=4))
        .map(|_| space.set_from_mask(rng.gen::<u64>() & full).expect("submask"))
        .collect();
    check_ess_sup(&family, inst)?;
    check_ess_sup(&inst.mu.f_plus().map_err(fail)?, inst)
}

pub fn abs_continuity_criterion(inst: &RandomInstance, _: &mut ChaCha8Rng) -> LawResult {
    for mu in [inst.mu.clone(), make_abs_continuous(&inst.mu, &inst.prob)] {
        let quantified = all_sets(mu.space()).iter().all(|a| {
            let null = inst.prob.prob(a).expect("same space") == num_traits::Zero::zero();
            !null || mu.evaluate(a).map(|v| v.is_zero()).unwrap_or(false)
        });
        let atomwise = is_abs_continuous(&mu, &inst.prob).map_err(fail)?;
        ensure!(
            atomwise == quantified,
            "atom criterion {atomwise} vs set criterion {quantified}"
        );
    }
    Ok(())
}

pub fn quasi_integrable_domain(inst: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let space = inst.mu.space();
    let xi: Vec<ExtReal> = (0..space.atom_count())
        .map(|_| crate::random::ValuePool::default().draw(rng))
        .collect();
    let xi = RandomVariable::new(space.clone(), xi).map_err(fail)?;
    let mu = xi.mu_xi(&inst.prob).map_err(fail)?;
    for a in all_sets(space) {
        // ∫_A ξ⁺ dP and ∫_A ξ⁻ dP, each a sum of nonnegative terms
        let pos: Vec<ExtReal> = a
            .atoms()
            .map(|i| xi.atom_values()[i].positive_part().scale(&inst.prob.atom_probs()[i]))
            .collect();
        let neg: Vec<ExtReal> = a
            .atoms()
            .map(|i| xi.atom_values()[i].negative_part().scale(&inst.prob.atom_probs()[i]))
            .collect();
        let pos = ExtReal::sum(&pos).map_err(fail)?;
        let neg = ExtReal::sum(&neg).map_err(fail)?;
        let quasi = pos.is_finite() || neg.is_finite();
        ensure!(
            mu.in_domain(&a) == quasi,
            "domain of μ_ξ at {a:?} vs quasi-integrability {quasi}"
        );
    }
    Ok(())
}

// ---- example3 ----

fn oracle_window(part: &HalfSet) -> Vec<u64> {
    let fresh = part.indices().iter().max().map_or(0, |m| m + 1);
    let mut w: Vec<u64> = part.indices().to_vec();
    w.push(fresh);
    w.into_iter().filter(|&i| part.contains(i)).collect()
}

/// Membership in `F⁺(μ₃)` (`Side::Plus`) or `F⁻(μ₃)` by enumerating the
/// subsets of `C` built from its listed indices plus one fresh index per
/// half: every finite subset of those points, and, for cofinite `C`, `C`
/// minus any of them.
pub fn example3_enumeration_oracle(c: &SymbolicSet, side: Side) -> bool {
    if !c.in_algebra() {
        return false;
    }
    let wb = oracle_window(&c.b_part);
    let wc = oracle_window(&c.bc_part);
    let ok = |s: &SymbolicSet| {
        matches!(
            (mu3(s), side),
            (Ok(SymbolicMeasureValue::Zero), _)
                | (Ok(SymbolicMeasureValue::PlusInfinity), Side::Plus)
                | (Ok(SymbolicMeasureValue::MinusInfinity), Side::Minus)
        )
    };
    let n = wb.len() + wc.len();
    for bitsel in 0u64..(1 << n) {
        let pick = |w: &[u64], offset: usize| -> Vec<u64> {
            w.iter()
                .enumerate()
                .filter(|(i, _)| bitsel & (1 << (i + offset)) != 0)
                .map(|(_, &x)| x)
                .collect()
        };
        let sub_b = pick(&wb, 0);
        let sub_c = pick(&wc, wb.len());
        let finite = SymbolicSet::new(HalfSet::finite(sub_b.clone()), HalfSet::finite(sub_c.clone()));
        if !ok(&finite) {
            return false;
        }
        if !c.b_part.is_finite() {
            let removed = c.intersect(&finite.complement());
            if !ok(&removed) {
                return false;
            }
        }
    }
    ok(c)
}

/// Decision procedure vs enumeration oracle on one random member of `𝒜₃`.
pub fn example3_agreement(rng: &mut ChaCha8Rng) -> LawResult {
    let c = example3::random_algebra_set(rng, 10, 3);
    let plus = example3::sym_in_f_plus(&c).map_err(fail)?;
    let minus = example3::sym_in_f_minus(&c).map_err(fail)?;
    ensure!(
        plus.is_member() == example3_enumeration_oracle(&c, Side::Plus),
        "F⁺ decision disagrees at {c}"
    );
    ensure!(
        minus.is_member() == example3_enumeration_oracle(&c, Side::Minus),
        "F⁻ decision disagrees at {c}"
    );
    for (m, half) in [(&plus, Half::Complement), (&minus, Half::B)] {
        if let example3::Membership::NotMember { witness } = m {
            ensure!(witness.is_subset(&c), "witness {witness} outside {c}");
            ensure!(
                witness.part(half).first_member().is_some(),
                "witness {witness} in wrong half"
            );
        }
    }
    Ok(())
}

pub fn example3_decision_matches_enumeration(_: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    example3_agreement(rng)
}

pub fn example3_no_hahn_split(_: &RandomInstance, rng: &mut ChaCha8Rng) -> LawResult {
    let c = example3::random_algebra_set(rng, 10, 3);
    match example3::split_failure(&c).map_err(fail)? {
        Some(f) if example3::verify_split_failure(&c, &f) => Ok(()),
        Some(f) => Err(format!("bogus failure witness {f:?} for {c}")),
        None => Err(format!("{c} gives a Hahn split")),
    }
}

// ---- suite driver ----

/// One failed law on one trial.
#[derive(Clone, Debug)]
pub struct Failure {
    pub trial: u64,
    pub law: &'static str,
    pub detail: String,
    pub instance: RandomInstance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawStats {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub trials: u64,
    pub laws: Vec<LawStats>,
    pub failures: Vec<Failure>,
}

/// RNG for law `law` on trial `trial`, independent of every other pair.
pub fn law_rng(seed: u64, trial: u64, law: usize) -> ChaCha8Rng {
    let salt = 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(law as u64 + 1);
    trial_rng(seed ^ salt, trial)
}

type TrialOutcome = Vec<(usize, Option<Failure>)>;

fn run_trial(cfg: &FuzzConfig, trial: u64) -> TrialOutcome {
    let instance = generate_random_instance(cfg, &mut trial_rng(cfg.seed, trial));
    LAWS.iter()
        .enumerate()
        .map(|(i, (name, law))| {
            let outcome = law(&instance, &mut law_rng(cfg.seed, trial, i));
            let failure = outcome.err().map(|detail| Failure {
                trial,
                law: name,
                detail,
                instance: instance.clone(),
            });
            (i, failure)
        })
        .collect()
}

/// Runs every law on `cfg.trials` random instances, spreading trials over
/// `threads` workers. Output is identical for any thread count.
pub fn run_suite(cfg: &FuzzConfig, threads: usize) -> crate::Result<SuiteReport> {
    cfg.validate()?;
    let threads = threads.clamp(1, 64) as u64;
    let mut per_trial: Vec<(u64, TrialOutcome)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                scope.spawn(move || {
                    (w..cfg.trials)
                        .step_by(threads as usize)
                        .map(|t| (t, run_trial(cfg, t)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect()
    });
    per_trial.sort_by_key(|(t, _)| *t);

    let mut laws: Vec<LawStats> = LAWS
        .iter()
        .map(|(name, _)| LawStats {
            name,
            checked: 0,
            failed: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (_, outcomes) in per_trial {
        for (i, failure) in outcomes {
            laws[i].checked += 1;
            if let Some(f) = failure {
                laws[i].failed += 1;
                failures.push(f);
            }
        }
    }
    Ok(SuiteReport {
        trials: cfg.trials,
        laws,
        failures,
    })
}
