//! Total extended-real measures on a finite algebra.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::finite_space::{bits, FiniteSpace, MeasurableSet};

/// Sum of `values` over the atoms in `mask`.
pub(crate) fn atom_sum(values: &[ExtReal], mask: u64) -> Result<ExtReal> {
    ExtReal::sum(bits(mask).map(|a| &values[a]))
}

pub(crate) fn check_len(what: &'static str, space: &FiniteSpace, got: usize) -> Result<()> {
    if got != space.atom_count() {
        return Err(Error::LengthMismatch {
            what,
            expected: space.atom_count(),
            got,
        });
    }
    Ok(())
}

/// A finitely additive set function given by its atom values.
///
/// The values never contain both `+inf` and `-inf`, so every set has a
/// well-defined value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    space: FiniteSpace,
    atom_values: Vec<ExtReal>,
}

impl Measure {
    pub fn new(space: FiniteSpace, atom_values: Vec<ExtReal>) -> Result<Self> {
        check_len("atom values", &space, atom_values.len())?;
        let plus = atom_values.contains(&ExtReal::PlusInf);
        let minus = atom_values.contains(&ExtReal::MinusInf);
        if plus && minus {
            return Err(Error::MixedInfinities);
        }
        Ok(Measure { space, atom_values })
    }

    pub fn zero(space: FiniteSpace) -> Self {
        let atom_values = vec![ExtReal::zero(); space.atom_count()];
        Measure { space, atom_values }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn atom_values(&self) -> &[ExtReal] {
        &self.atom_values
    }

    pub fn evaluate(&self, set: &MeasurableSet) -> Result<ExtReal> {
        if *set.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(atom_sum(&self.atom_values, set.mask()).expect("measure atom values never mix infinities"))
    }

    /// Canonical Hahn decomposition: `P` is the union of atoms with value
    /// `>= 0`, `N` its complement.
    pub fn hahn_decomposition(&self) -> (MeasurableSet, MeasurableSet) {
        let mask = self
            .atom_values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_nonnegative())
            .fold(0u64, |m, (a, _)| m | 1 << a);
        let p = self.space.set_from_mask(mask).expect("mask within space");
        let n = p.complement();
        (p, n)
    }

    pub fn is_positive(&self) -> bool {
        self.atom_values.iter().all(ExtReal::is_nonnegative)
    }
}

/// A measure with values in `[0, +inf]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveMeasure(Measure);

impl PositiveMeasure {
    pub fn new(space: FiniteSpace, atom_values: Vec<ExtReal>) -> Result<Self> {
        Self::try_from(Measure::new(space, atom_values)?)
    }

    pub fn zero(space: FiniteSpace) -> Self {
        PositiveMeasure(Measure::zero(space))
    }

    pub fn as_measure(&self) -> &Measure {
        &self.0
    }

    pub fn into_measure(self) -> Measure {
        self.0
    }

    /// Atomwise sum; always defined for positive measures.
    pub fn add(&self, other: &PositiveMeasure) -> Result<PositiveMeasure> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let values = self
            .atom_values
            .iter()
            .zip(&other.atom_values)
            .map(|(x, y)| x.add(y).expect("nonnegative values never mix infinities"))
            .collect();
        Ok(PositiveMeasure(Measure {
            space: self.space.clone(),
            atom_values: values,
        }))
    }

    /// `self(A) <= other(A)` for every atom, hence for every set.
    pub fn le(&self, other: &PositiveMeasure) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.atom_values.iter().zip(&other.atom_values).all(|(x, y)| x <= y))
    }
}

impl TryFrom<Measure> for PositiveMeasure {
    type Error = Error;

    fn try_from(m: Measure) -> Result<Self> {
        if let Some(a) = m.atom_values.iter().position(|v| !v.is_nonnegative()) {
            return Err(Error::NotPositive(m.space.atom_label(a).to_owned()));
        }
        Ok(PositiveMeasure(m))
    }
}

impl Deref for PositiveMeasure {
    type Target = Measure;

    fn deref(&self) -> &Measure {
        &self.0
    }
}
