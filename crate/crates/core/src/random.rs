//! Seeded random instances for property checks and fuzzing.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! results never depend on the order or concurrency of trials.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::density::Probability;
use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::finite_space::{FiniteSpace, DEFAULT_ENUMERATION_CAP};
use crate::measure::PositiveMeasure;
use crate::partial::{MaximalPartialMeasure, PartialMeasure};

/// RNG for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Relative weights for drawing an atom value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuePool {
    pub finite: u32,
    pub plus_inf: u32,
    pub minus_inf: u32,
}

impl Default for ValuePool {
    fn default() -> Self {
        ValuePool {
            finite: 6,
            plus_inf: 1,
            minus_inf: 1,
        }
    }
}

impl ValuePool {
    pub fn finite_only() -> Self {
        ValuePool {
            finite: 1,
            plus_inf: 0,
            minus_inf: 0,
        }
    }

    /// Draws from the pool. Finite values are `n/d` with `|n| ≤ 8`,
    /// `1 ≤ d ≤ 8`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtReal {
        let total = self.finite + self.plus_inf + self.minus_inf;
        let pick = rng.gen_range(0..total.max(1));
        if pick < self.finite || total == 0 {
            small_rational(rng)
        } else if pick < self.finite + self.plus_inf {
            ExtReal::PlusInf
        } else {
            ExtReal::MinusInf
        }
    }
}

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> ExtReal {
    ExtReal::ratio(rng.gen_range(-8..=8), rng.gen_range(1..=8))
}

/// Parameters for random instance generation.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_atoms: usize,
    pub value_pool: ValuePool,
    /// Probability that any given atom is P-null.
    pub null_atom_chance: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 1000,
            max_atoms: 6,
            value_pool: ValuePool::default(),
            null_atom_chance: 0.25,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.max_atoms == 0 || self.max_atoms > DEFAULT_ENUMERATION_CAP {
            return Err(Error::InvalidArgument(format!(
                "max_atoms must be in 1..={DEFAULT_ENUMERATION_CAP}"
            )));
        }
        if !(0.0..=1.0).contains(&self.null_atom_chance) {
            return Err(Error::InvalidArgument("null_atom_chance must be in [0, 1]".into()));
        }
        Ok(())
    }
}

/// A random maximal partial measure together with a probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomInstance {
    pub mu: MaximalPartialMeasure,
    pub prob: Probability,
}

/// Discrete space on `p0, p1, …`.
pub fn labeled_space(atoms: usize) -> FiniteSpace {
    let labels: Vec<String> = (0..atoms).map(|i| format!("p{i}")).collect();
    FiniteSpace::discrete(&labels).expect("distinct labels")
}

/// Probability with positive rational weights (`1..=8` before normalizing),
/// each atom independently null with `null_chance`; at least one atom keeps
/// positive weight.
pub fn random_probability<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, null_chance: f64) -> Probability {
    let k = space.atom_count();
    let mut weights: Vec<i64> = (0..k)
        .map(|_| {
            if rng.gen_bool(null_chance) {
                0
            } else {
                rng.gen_range(1..=8)
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        weights[rng.gen_range(0..k)] = rng.gen_range(1..=8);
    }
    let total: i64 = weights.iter().sum();
    let probs = weights
        .into_iter()
        .map(|w| BigRational::new(w.into(), total.into()))
        .collect();
    Probability::new(space.clone(), probs).expect("normalized weights")
}

pub fn generate_random_instance<R: Rng + ?Sized>(cfg: &FuzzConfig, rng: &mut R) -> RandomInstance {
    let k = rng.gen_range(1..=cfg.max_atoms.max(1));
    let space = labeled_space(k);
    let values = (0..k).map(|_| cfg.value_pool.draw(rng)).collect();
    let mu = MaximalPartialMeasure::new(space.clone(), values).expect("length matches");
    let prob = random_probability(rng, &space, cfg.null_atom_chance);
    RandomInstance { mu, prob }
}

/// Zeroes `mu` on the null atoms of `prob`, giving an absolutely continuous
/// measure.
pub fn make_abs_continuous(mu: &MaximalPartialMeasure, prob: &Probability) -> MaximalPartialMeasure {
    let values = mu
        .atom_values()
        .iter()
        .zip(prob.atom_probs())
        .map(|(v, p)| if p.is_zero() { ExtReal::zero() } else { v.clone() })
        .collect();
    MaximalPartialMeasure::new(mu.space().clone(), values).expect("same length")
}

/// Positive measure with atom values drawn from `{0, small positive, +inf}`.
pub fn random_positive_measure<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace) -> PositiveMeasure {
    let values = (0..space.atom_count())
        .map(|_| match rng.gen_range(0..8) {
            0 => ExtReal::zero(),
            1 => ExtReal::PlusInf,
            _ => ExtReal::ratio(rng.gen_range(1..=8), rng.gen_range(1..=8)),
        })
        .collect();
    PositiveMeasure::new(space.clone(), values).expect("nonnegative values")
}

/// A random trace-closed restriction of `mu`: the domain is generated by up
/// to three random members of `𝒟(mu)`. Usually not maximal.
pub fn random_restriction<R: Rng + ?Sized>(rng: &mut R, mu: &MaximalPartialMeasure) -> PartialMeasure {
    let space = mu.space();
    let full = space.full_mask();
    let mut generators = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=3) {
        // rejection-sample a domain member; ∅ always qualifies
        for _ in 0..8 {
            let mask = rng.gen::<u64>() & full;
            let set = space.set_from_mask(mask).expect("mask within space");
            if mu.in_domain(&set) {
                generators.insert(mask);
                break;
            }
        }
    }
    let mut sets: Vec<_> = generators
        .into_iter()
        .map(|m| space.set_from_mask(m).expect("mask within space"))
        .collect();
    sets.shuffle(rng);
    let mut values: Vec<_> = sets
        .iter()
        .map(|s| (s.clone(), mu.evaluate(s).expect("domain member")))
        .collect();
    for s in &sets {
        for a in s.atoms() {
            let atom = space.atom_set(a);
            let v = mu.evaluate(&atom).expect("atoms are in the domain");
            values.push((atom, v));
        }
    }
    values.push((space.empty_set(), ExtReal::zero()));
    PartialMeasure::validate(space, &[], &values).expect("restriction of a partial measure")
}
