//! Integrals against a probability, essential suprema of set families, and the
//! density of an absolutely continuous maximal partial measure.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::finite_space::{FiniteSpace, MeasurableSet};
use crate::measure::check_len;
use crate::partial::{MaximalPartialMeasure, Side};

/// Exact probability weights on the atoms of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probability {
    space: FiniteSpace,
    atom_probs: Vec<BigRational>,
}

impl Probability {
    pub fn new(space: FiniteSpace, atom_probs: Vec<BigRational>) -> Result<Self> {
        check_len("atom probabilities", &space, atom_probs.len())?;
        if let Some(a) = atom_probs.iter().position(Signed::is_negative) {
            return Err(Error::InvalidProbability(format!(
                "atom {} has negative weight",
                space.atom_label(a)
            )));
        }
        let total: BigRational = atom_probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidProbability(format!("weights sum to {total}, not 1")));
        }
        Ok(Probability { space, atom_probs })
    }

    pub fn uniform(space: FiniteSpace) -> Result<Self> {
        let k = space.atom_count();
        if k == 0 {
            return Err(Error::InvalidProbability("space has no atoms".into()));
        }
        let w = BigRational::new(1.into(), k.into());
        Probability::new(space, vec![w; k])
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn atom_probs(&self) -> &[BigRational] {
        &self.atom_probs
    }

    pub fn prob(&self, set: &MeasurableSet) -> Result<BigRational> {
        if set.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(set.atoms().map(|a| &self.atom_probs[a]).sum())
    }

    /// Atoms of positive probability, as a mask.
    pub fn support_mask(&self) -> u64 {
        self.atom_probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .fold(0, |acc, (a, _)| acc | 1 << a)
    }

    /// `A ⊆ B` up to a null set.
    pub fn subset_as(&self, a: &MeasurableSet, b: &MeasurableSet) -> Result<bool> {
        Ok(self.prob(&a.difference(b)?)?.is_zero())
    }
}

/// An extended-real valued function on the atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomVariable {
    space: FiniteSpace,
    atom_values: Vec<ExtReal>,
}

impl RandomVariable {
    pub fn new(space: FiniteSpace, atom_values: Vec<ExtReal>) -> Result<Self> {
        check_len("random variable values", &space, atom_values.len())?;
        Ok(RandomVariable { space, atom_values })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn atom_values(&self) -> &[ExtReal] {
        &self.atom_values
    }

    /// `μ_ξ(A) = ∫_A ξ dP` as a maximal partial measure, with
    /// `(±inf)·0 = 0`.
    pub fn mu_xi(&self, prob: &Probability) -> Result<MaximalPartialMeasure> {
        if self.space != prob.space {
            return Err(Error::SpaceMismatch);
        }
        let values = self
            .atom_values
            .iter()
            .zip(&prob.atom_probs)
            .map(|(x, p)| x.scale(p))
            .collect();
        MaximalPartialMeasure::new(self.space.clone(), values)
    }

    /// Equal except possibly on null atoms.
    pub fn eq_as(&self, other: &RandomVariable, prob: &Probability) -> Result<bool> {
        if self.space != other.space || self.space != prob.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .atom_values
            .iter()
            .zip(&other.atom_values)
            .zip(&prob.atom_probs)
            .all(|((x, y), p)| p.is_zero() || x == y))
    }
}

/// Essential supremum of a family: the union of the family's atoms of
/// positive probability. Each member is a.s. contained in it, and it is a.s.
/// contained in any set that a.s. contains every member.
pub fn ess_sup(family: &[MeasurableSet], prob: &Probability) -> Result<MeasurableSet> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let mut union = first.space().empty_set();
    for f in family {
        if f.space() != &prob.space {
            return Err(Error::SpaceMismatch);
        }
        union = union.union(f)?;
    }
    prob.space.set_from_mask(union.mask() & prob.support_mask())
}

/// `P(A) = 0 ⟹ A ∈ 𝒟(μ), μ(A) = 0`, checked on null atoms.
pub fn is_abs_continuous(mu: &MaximalPartialMeasure, prob: &Probability) -> Result<bool> {
    Ok(first_bad_null_atom(mu, prob)?.is_none())
}

fn first_bad_null_atom(mu: &MaximalPartialMeasure, prob: &Probability) -> Result<Option<usize>> {
    if mu.space() != &prob.space {
        return Err(Error::SpaceMismatch);
    }
    Ok(prob
        .atom_probs
        .iter()
        .zip(mu.atom_values())
        .position(|(p, v)| p.is_zero() && !v.is_zero()))
}

/// The split `Ω⁺ = ess sup F⁺(μ)`, `Ω⁻ = Ω ∖ Ω⁺` for an absolutely
/// continuous `μ`.
pub fn positive_split(mu: &MaximalPartialMeasure, prob: &Probability) -> Result<(MeasurableSet, MeasurableSet)> {
    if let Some(a) = first_bad_null_atom(mu, prob)? {
        return Err(Error::NotAbsContinuous(mu.space().atom_label(a).to_owned()));
    }
    let plus = ess_sup(&mu.f_plus()?, prob)?;
    let minus = plus.complement();
    Ok((plus, minus))
}

/// Density `ξ` with `μ_ξ = μ`: `ξ = ξ⁺ − ξ⁻` where `ξ⁺` is the density of `μ`
/// restricted to `Ω⁺` and `ξ⁻` that of `−μ` on `Ω⁻`. Null atoms get 0.
pub fn rn_derivative(mu: &MaximalPartialMeasure, prob: &Probability) -> Result<RandomVariable> {
    let (plus, _minus) = positive_split(mu, prob)?;
    let side_of = |a: usize| {
        if plus.contains_atom(a) {
            Side::Plus
        } else {
            Side::Minus
        }
    };
    let mut xi = Vec::with_capacity(mu.space().atom_count());
    for (a, (v, p)) in mu.atom_values().iter().zip(&prob.atom_probs).enumerate() {
        if p.is_zero() {
            xi.push(ExtReal::zero());
            continue;
        }
        let density = match side_of(a) {
            Side::Plus => v.div_positive(p)?,
            Side::Minus => -(-v).div_positive(p)?,
        };
        xi.push(density);
    }
    RandomVariable::new(mu.space().clone(), xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::parse_rational;

    fn abcd() -> FiniteSpace {
        FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap()
    }

    fn vals(xs: &[&str]) -> Vec<ExtReal> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn prob(xs: &[&str]) -> Probability {
        Probability::new(abcd(), xs.iter().map(|s| parse_rational(s).unwrap()).collect()).unwrap()
    }

    fn set(key: &str) -> MeasurableSet {
        abcd().parse_set_key(key).unwrap()
    }

    #[test]
    fn probability_validation() {
        let s = abcd();
        let half = parse_rational("1/2").unwrap();
        assert!(matches!(
            Probability::new(s.clone(), vec![half.clone(); 4]),
            Err(Error::InvalidProbability(_))
        ));
        let neg = vec![half.clone(), half.clone(), parse_rational("1/2").unwrap(), -half];
        assert!(matches!(Probability::new(s, neg), Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn mu_xi_examples() {
        let p = Probability::uniform(abcd()).unwrap();
        let zero = RandomVariable::new(abcd(), vals(&["0", "0", "0", "0"])).unwrap();
        assert_eq!(zero.mu_xi(&p).unwrap(), MaximalPartialMeasure::zero(abcd()));

        let xi = RandomVariable::new(abcd(), vals(&["2", "-1", "0", "0"])).unwrap();
        assert_eq!(
            xi.mu_xi(&p).unwrap().atom_values(),
            &vals(&["1/2", "-1/4", "0", "0"])[..]
        );

        let p = prob(&["1/2", "1/2", "0", "0"]);
        let xi = RandomVariable::new(abcd(), vals(&["1", "-6", "+inf", "-inf"])).unwrap();
        let mu = xi.mu_xi(&p).unwrap();
        assert_eq!(mu.atom_values(), &vals(&["1/2", "-3", "0", "0"])[..]);
        assert!(mu.in_domain(&abcd().full_set()));
    }

    #[test]
    fn ess_sup_examples() {
        let p = prob(&["1/2", "1/2", "0", "0"]);
        assert_eq!(ess_sup(&[abcd().full_set()], &p).unwrap().key(), "a,b");
        assert_eq!(ess_sup(&[abcd().empty_set()], &p).unwrap(), abcd().empty_set());
        assert_eq!(ess_sup(&[], &p), Err(Error::EmptyFamily));

        let fam = [set("a"), set("b")];
        let sup = ess_sup(&fam, &p).unwrap();
        assert_eq!(sup.key(), "a,b");
        for a in abcd().enumerate_sets().unwrap() {
            let all_in = fam.iter().all(|f| p.subset_as(f, &a).unwrap());
            assert_eq!(all_in, p.subset_as(&sup, &a).unwrap());
        }
        let other = FiniteSpace::discrete(&["x"]).unwrap();
        assert_eq!(ess_sup(&[other.full_set()], &p), Err(Error::SpaceMismatch));
    }

    #[test]
    fn abs_continuity_examples() {
        let strictly_positive = Probability::uniform(abcd()).unwrap();
        let wild = MaximalPartialMeasure::new(abcd(), vals(&["+inf", "-inf", "3", "-1"])).unwrap();
        assert!(is_abs_continuous(&wild, &strictly_positive).unwrap());

        let p = prob(&["1/2", "1/4", "0", "1/4"]);
        let bad = MaximalPartialMeasure::new(abcd(), vals(&["1", "1", "+inf", "1"])).unwrap();
        assert!(!is_abs_continuous(&bad, &p).unwrap());
        let good = MaximalPartialMeasure::new(abcd(), vals(&["1", "1", "0", "1"])).unwrap();
        assert!(is_abs_continuous(&good, &p).unwrap());
    }

    #[test]
    fn rn_derivative_examples() {
        let p = Probability::uniform(abcd()).unwrap();
        let mu = MaximalPartialMeasure::new(abcd(), vals(&["1/2", "-1/4", "0", "0"])).unwrap();
        let xi = rn_derivative(&mu, &p).unwrap();
        assert_eq!(xi.atom_values(), &vals(&["2", "-1", "0", "0"])[..]);
        assert_eq!(xi.mu_xi(&p).unwrap(), mu);

        let zero = MaximalPartialMeasure::zero(abcd());
        assert_eq!(rn_derivative(&zero, &p).unwrap().atom_values(), &vals(&["0"; 4])[..]);

        let p = prob(&["1/2", "1/2", "0", "0"]);
        let mu = MaximalPartialMeasure::new(abcd(), vals(&["1/2", "-3", "0", "0"])).unwrap();
        let xi = rn_derivative(&mu, &p).unwrap();
        assert_eq!(xi.atom_values(), &vals(&["1", "-6", "0", "0"])[..]);
        let eta = RandomVariable::new(abcd(), vals(&["1", "-6", "+inf", "17"])).unwrap();
        assert_eq!(eta.mu_xi(&p).unwrap(), mu);
        assert!(eta.eq_as(&xi, &p).unwrap());
    }

    #[test]
    fn rn_derivative_keeps_infinite_densities() {
        let p = prob(&["1/2", "1/4", "1/4", "0"]);
        let mu = MaximalPartialMeasure::new(abcd(), vals(&["+inf", "-inf", "1", "0"])).unwrap();
        let xi = rn_derivative(&mu, &p).unwrap();
        assert_eq!(xi.atom_values(), &vals(&["+inf", "-inf", "4", "0"])[..]);
        assert_eq!(xi.mu_xi(&p).unwrap(), mu);
    }

    #[test]
    fn rn_derivative_requires_abs_continuity() {
        let p = prob(&["1/2", "1/2", "0", "0"]);
        let mu = MaximalPartialMeasure::new(abcd(), vals(&["1", "1", "-2", "0"])).unwrap();
        assert_eq!(rn_derivative(&mu, &p), Err(Error::NotAbsContinuous("c".into())));
    }

    #[test]
    fn positive_split_is_a_hahn_split() {
        let p = prob(&["1/2", "1/4", "0", "1/4"]);
        let mu = MaximalPartialMeasure::new(abcd(), vals(&["+inf", "-1", "0", "-inf"])).unwrap();
        let (plus, minus) = positive_split(&mu, &p).unwrap();
        assert_eq!(plus.key(), "a");
        assert!(mu.is_in_f_class(&plus, Side::Plus).unwrap());
        assert!(mu.is_in_f_class(&minus, Side::Minus).unwrap());
    }
}
