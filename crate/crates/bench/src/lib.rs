//! Fixtures shared by the benchmarks.

use pmeasure::random::{generate_random_instance, trial_rng, FuzzConfig, RandomInstance};
use pmeasure::MaximalPartialMeasure;

/// A seeded instance on exactly `atoms` atoms, with both infinities present
/// when `atoms >= 2`.
pub fn instance(atoms: usize) -> RandomInstance {
    let cfg = FuzzConfig {
        max_atoms: atoms,
        ..FuzzConfig::default()
    };
    let mut inst = (0..)
        .map(|t| generate_random_instance(&cfg, &mut trial_rng(7, t)))
        .find(|i| i.mu.space().atom_count() == atoms)
        .expect("some trial hits the atom count");
    if atoms >= 2 {
        let mut values = inst.mu.atom_values().to_vec();
        values[0] = pmeasure::ExtReal::PlusInf;
        values[1] = pmeasure::ExtReal::MinusInf;
        inst.mu = MaximalPartialMeasure::new(inst.mu.space().clone(), values).expect("same length");
    }
    inst
}

/// `n` points and `g` generators, each point in a generator with
/// probability about one half.
pub fn generator_fixture(n: usize, g: usize) -> (Vec<String>, Vec<Vec<String>>) {
    let points: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let generators = (0..g)
        .map(|j| {
            points
                .iter()
                .enumerate()
                .filter(|(i, _)| (i * 31 + j * 17) % 7 < 3 + j % 2)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect();
    (points, generators)
}
