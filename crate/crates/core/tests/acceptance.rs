//! Acceptance criteria. Every check is exact; each test prints one
//! `[PASS]`/`[FAIL]` line. Run with `cargo test -p pmeasure-core --test acceptance`.

use std::time::{Duration, Instant};

use rand::Rng;

use pmeasure::example3::hahn_failure_check;
use pmeasure::laws::{self, LawResult};
use pmeasure::random::{
    generate_random_instance, labeled_space, make_abs_continuous, random_probability, trial_rng, FuzzConfig,
    RandomInstance,
};
use pmeasure::{ExtReal, MaximalPartialMeasure, Side};

const GRID: [&str; 7] = ["-inf", "-2", "-1/2", "0", "1/3", "3/2", "+inf"];

/// Every atom-value assignment from `GRID` on 1..=5 atoms (19,607 instances).
fn exhaustive_grid() -> Vec<MaximalPartialMeasure> {
    let grid: Vec<ExtReal> = GRID.iter().map(|s| s.parse().unwrap()).collect();
    let mut out = Vec::new();
    for k in 1..=5u32 {
        let space = labeled_space(k as usize);
        for code in 0..7usize.pow(k) {
            let values = (0..k).map(|i| grid[(code / 7usize.pow(i)) % 7].clone()).collect();
            out.push(MaximalPartialMeasure::new(space.clone(), values).unwrap());
        }
    }
    out
}

fn report(criterion: u32, what: &str, checked: usize, failures: &[String], elapsed: Duration) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {criterion}: {what} ({checked} checked, {} failures, {:.2?})",
        failures.len(),
        elapsed
    );
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
}

fn collect(results: impl IntoIterator<Item = (String, LawResult)>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut failures = Vec::new();
    for (label, r) in results {
        n += 1;
        if let Err(e) = r {
            failures.push(format!("{label}: {e}"));
        }
    }
    (n, failures)
}

fn instance(mu: MaximalPartialMeasure) -> RandomInstance {
    let prob = pmeasure::Probability::uniform(mu.space().clone()).unwrap();
    RandomInstance { mu, prob }
}

fn seeded(seed: u64, trial: u64) -> RandomInstance {
    let cfg = FuzzConfig {
        seed,
        max_atoms: 6,
        ..FuzzConfig::default()
    };
    generate_random_instance(&cfg, &mut trial_rng(seed, trial))
}

fn criterion_1_jordan_identity() -> bool {
    let start = Instant::now();
    let grid = exhaustive_grid();
    assert_eq!(grid.len(), 7 + 49 + 343 + 2401 + 16807);
    let (n, mut failures) = collect(grid.into_iter().map(|mu| {
        let label = format!("{:?}", mu.atom_values());
        let inst = instance(mu);
        (label, laws::jordan_identity(&inst, &mut trial_rng(0, 0)))
    }));
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:.2?}, limit 60s"));
    }
    report(
        1,
        "μ = μ⁺ − μ⁻ on 𝒟(μ), μ⁺ = μ⁻ = +inf off it (exhaustive grid)",
        n,
        &failures,
        elapsed,
    );
    failures.is_empty()
}

fn criterion_2_sup_formula_matches_atom_oracle() -> bool {
    let start = Instant::now();
    let (n, mut failures) = collect(
        exhaustive_grid()
            .into_iter()
            .map(|mu| (format!("{:?}", mu.atom_values()), laws::jordan_atoms_match_oracle(&mu))),
    );
    if let Err(e) = worked_example_sup_attainment() {
        failures.push(format!("worked example: {e}"));
    }
    report(
        2,
        "sup-formula μ± equals per-atom positive/negative parts",
        n,
        &failures,
        start.elapsed(),
    );
    failures.is_empty()
}

fn criterion_3_minimality() -> bool {
    let start = Instant::now();
    let (n, failures) = collect((0..1000).map(|t| {
        let inst = seeded(3, t);
        let mut rng = trial_rng(3_003, t);
        (format!("trial {t}"), laws::minimality_with(&inst, &mut rng, 10))
    }));
    report(
        3,
        "dominating ν ⇒ μ± ≤ ν on 𝒜 (1000 instances × 10 ν per side)",
        n,
        &failures,
        start.elapsed(),
    );
    failures.is_empty()
}

fn criterion_4_corollary1_witnesses() -> bool {
    let start = Instant::now();
    let mut off_domain = 0usize;
    let (n, mut failures) = collect(exhaustive_grid().into_iter().map(|mu| {
        off_domain += mu
            .space()
            .enumerate_sets()
            .unwrap()
            .filter(|a| !mu.in_domain(a))
            .count();
        let label = format!("{:?}", mu.atom_values());
        (label, laws::corollary1_witnesses(&instance(mu), &mut trial_rng(0, 0)))
    }));
    report(
        4,
        &format!("A′ ∈ F⁺ with μ = +inf, A″ ∈ F⁻ with μ = −inf for all {off_domain} off-domain sets"),
        n,
        &failures,
        start.elapsed(),
    );
    if off_domain == 0 {
        failures.push("grid produced no off-domain sets".into());
    }
    failures.is_empty()
}

fn criterion_5_f_plus_families() -> bool {
    let start = Instant::now();
    let (n, failures) = collect((0..1000).flat_map(|t| {
        let inst = seeded(5, t);
        let l1 = laws::f_plus_disjoint_family_sums(&inst, &mut trial_rng(5_001, t));
        let l2 = laws::f_plus_union_closure(&inst, &mut trial_rng(5_002, t));
        [
            (format!("trial {t} disjoint families"), l1),
            (format!("trial {t} unions"), l2),
        ]
    }));
    report(
        5,
        "equal sums over disjoint F⁺ families; F⁺ closed under finite unions",
        n,
        &failures,
        start.elapsed(),
    );
    failures.is_empty()
}

fn abs_continuous_pairs() -> Vec<RandomInstance> {
    (0..1000)
        .map(|t| {
            let mut inst = seeded(6, t);
            // force some null atoms into a third of the pairs
            if t % 3 == 0 {
                let mut rng = trial_rng(6_006, t);
                inst.prob = random_probability(&mut rng, inst.mu.space(), 0.5);
            }
            inst.mu = make_abs_continuous(&inst.mu, &inst.prob);
            inst
        })
        .collect()
}

fn criterion_6_radon_nikodym_round_trip() -> bool {
    let start = Instant::now();
    let pairs = abs_continuous_pairs();
    let with_null = pairs
        .iter()
        .filter(|p| p.prob.support_mask() != p.mu.space().full_mask())
        .count();
    let (n, mut failures) = collect(pairs.iter().enumerate().flat_map(|(t, inst)| {
        let rt = laws::rn_round_trip(inst, &mut trial_rng(6, t as u64));
        let un = laws::rn_uniqueness(inst, &mut trial_rng(6_001, t as u64));
        [
            (format!("pair {t} round trip"), rt),
            (format!("pair {t} uniqueness"), un),
        ]
    }));
    report(
        6,
        &format!("μ_ξ(rn(μ)) = μ exactly, a.s. uniqueness ({with_null} pairs with null atoms)"),
        n,
        &failures,
        start.elapsed(),
    );
    if with_null < 100 {
        failures.push(format!("only {with_null} pairs with null atoms"));
    }
    failures.is_empty()
}

fn criterion_7_abs_continuous_hahn_split() -> bool {
    let start = Instant::now();
    let (n, failures) = collect(abs_continuous_pairs().iter().enumerate().map(|(t, inst)| {
        (
            format!("pair {t}"),
            laws::abs_continuous_hahn_split(inst, &mut trial_rng(7, t as u64)),
        )
    }));
    report(
        7,
        "Ω⁺ = ess sup F⁺(μ) ∈ F⁺, Ω∖Ω⁺ ∈ F⁻ under absolute continuity",
        n,
        &failures,
        start.elapsed(),
    );
    failures.is_empty()
}

fn criterion_8_example3() -> bool {
    let start = Instant::now();
    let report8 = hahn_failure_check(8, 10_000);
    let (n, mut failures) =
        collect((0..10_000).map(|t| (format!("set {t}"), laws::example3_agreement(&mut trial_rng(8_008, t)))));
    if report8.hahn_split_exists || report8.counterexamples != 0 {
        failures.push(format!("hahn_failure_check found a split: {report8:?}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("took {elapsed:.2?}, limit 10s"));
    }
    report(
        8,
        "no Hahn split in the symbolic model; decision procedure = enumeration oracle",
        n + report8.trials as usize,
        &failures,
        elapsed,
    );
    failures.is_empty()
}

fn criterion_9_maximality() -> bool {
    let start = Instant::now();
    let mut non_maximal = 0usize;
    let mut failures = Vec::new();
    let mut t = 0u64;
    while non_maximal < 1000 {
        let inst = seeded(9, t);
        let mut rng = trial_rng(9_009, t);
        // retry the restriction until it is a proper (non-maximal) one
        let pm = (0..20)
            .map(|_| pmeasure::random::random_restriction(&mut rng, &inst.mu))
            .find(|pm| !pm.is_maximal());
        t += 1;
        let Some(pm) = pm else { continue };
        non_maximal += 1;
        let fill = (0..inst.mu.space().atom_count())
            .filter(|&a| pm.atom_values()[a].is_none() && rng.gen_bool(0.5))
            .map(|a| (a, inst.mu.atom_values()[a].clone()))
            .collect();
        let outcome = (|| -> LawResult {
            let mx = pm.maximalize(&fill).map_err(|e| e.to_string())?;
            for set in pm.domain().map_err(|e| e.to_string())? {
                if mx.evaluate(&set).ok() != pm.value(&set) {
                    return Err(format!("extension changes {set:?}"));
                }
            }
            let explicit = mx.to_partial();
            if !explicit.is_maximal() || laws::has_single_set_extension(&explicit)? {
                return Err("maximalized measure admits a further extension".into());
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            failures.push(format!("trial {t}: {e}"));
        }
        // the randomized law also cross-checks is_maximal against extension search
        if let Err(e) = laws::check_maximalization(&inst.mu, &mut trial_rng(9_010, t)) {
            failures.push(format!("trial {t} (law): {e}"));
        }
    }
    report(
        9,
        "maximalize extends and leaves no single-set extension",
        non_maximal,
        &failures,
        start.elapsed(),
    );
    failures.is_empty()
}

fn worked_example_sup_attainment() -> LawResult {
    let space = labeled_space(4);
    let mu = MaximalPartialMeasure::new(
        space.clone(),
        ["3/2", "-2", "+inf", "-inf"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
    )
    .unwrap();
    let fplus = mu.f_plus().map_err(|e| e.to_string())?;
    let ab = space.parse_set_key("p0,p1").unwrap();
    let (v, f) = mu.sup_over(&fplus, &ab, Side::Plus).map_err(|e| e.to_string())?;
    if v != ExtReal::ratio(3, 2) || f.key() != "p0" {
        return Err(format!("sup at {{p0,p1}} = {v} attained at {{{}}}", f.key()));
    }
    Ok(())
}

fn main() {
    let criteria: [fn() -> bool; 9] = [
        criterion_1_jordan_identity,
        criterion_2_sup_formula_matches_atom_oracle,
        criterion_3_minimality,
        criterion_4_corollary1_witnesses,
        criterion_5_f_plus_families,
        criterion_6_radon_nikodym_round_trip,
        criterion_7_abs_continuous_hahn_split,
        criterion_8_example3,
        criterion_9_maximality,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
