//! Partial measures: set functions defined on a trace-closed subclass of the
//! algebra whose restriction to every `𝒜 ∩ B`, `B` in the domain, is a measure.
//!
//! On a finite algebra a partial measure is pinned down by the values of the
//! atoms it covers, and its domain is a down-closed family of sets that never
//! mixes a `+inf` atom with a `-inf` atom. [`PartialMeasure`] stores exactly
//! that (atom values plus the maximal domain sets), and
//! [`MaximalPartialMeasure`] is the special case where every atom is valued
//! and the domain is everything that does not mix infinities.
//!
//! The classes `F⁺(μ)` / `F⁻(μ)`, the sup-formula Jordan decomposition and its
//! extremal property, and the witnesses for sets outside the domain live on
//! [`MaximalPartialMeasure`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::finite_space::{bits, submasks, FiniteSpace, MeasurableSet, DEFAULT_ENUMERATION_CAP};
use crate::measure::{atom_sum, check_len, Measure, PositiveMeasure};

/// Which half of the decomposition a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn orient(self, x: &ExtReal) -> ExtReal {
        match self {
            Side::Plus => x.clone(),
            Side::Minus => -x,
        }
    }
}

fn key_of(space: &FiniteSpace, mask: u64) -> String {
    space.set_from_mask(mask).expect("mask within space").key()
}

fn check_space(space: &FiniteSpace, set: &MeasurableSet) -> Result<()> {
    if set.space() == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Keeps only the inclusion-maximal masks.
fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable();
    masks.dedup();
    let kept: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&n| n != m && m & !n == 0))
        .collect();
    if kept.is_empty() {
        vec![0]
    } else {
        kept
    }
}

/// A partial measure with an explicit trace-closed domain.
///
/// The domain is the family of all measurable subsets of the stored maximal
/// domain sets, which is exactly the closure of the supplied sets under
/// `A ↦ A ∩ B`. Values are atom sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMeasure {
    space: FiniteSpace,
    atom_values: Vec<Option<ExtReal>>,
    maximal_sets: Vec<u64>,
}

impl PartialMeasure {
    /// The minimal partial measure: domain `{∅}`, value 0.
    pub fn minimal(space: FiniteSpace) -> Self {
        let atom_values = vec![None; space.atom_count()];
        PartialMeasure {
            space,
            atom_values,
            maximal_sets: vec![0],
        }
    }

    /// Validates a set function given on `domain` (with values for some or
    /// all of its members) and closes the domain under traces.
    ///
    /// Atom values are read from atom-sized members, then propagated: a
    /// valued set with exactly one atom of unknown value determines that atom
    /// whenever the subtraction is unambiguous. Every domain member must end up
    /// with all of its atoms valued (`NotTraceClosed`), must not mix
    /// infinities (`MixedInfinitiesInDomainSet`), and any supplied value must
    /// equal its atom sum (`AdditivityViolation`). Sets listed only in
    /// `values` count as domain members.
    pub fn validate(
        space: &FiniteSpace,
        domain: &[MeasurableSet],
        values: &[(MeasurableSet, ExtReal)],
    ) -> Result<Self> {
        let mut entries: BTreeMap<u64, Option<ExtReal>> = BTreeMap::new();
        for set in domain {
            check_space(space, set)?;
            entries.entry(set.mask()).or_insert(None);
        }
        for (set, v) in values {
            check_space(space, set)?;
            let slot = entries.entry(set.mask()).or_insert(None);
            match slot {
                Some(prev) if prev != v => {
                    return Err(Error::AdditivityViolation(set.key()));
                }
                _ => *slot = Some(v.clone()),
            }
        }
        if entries.is_empty() {
            return Err(Error::EmptyDomain);
        }

        let mut atoms: Vec<Option<ExtReal>> = vec![None; space.atom_count()];
        for (&mask, v) in &entries {
            if let (Some(v), 1) = (v, mask.count_ones()) {
                atoms[mask.trailing_zeros() as usize] = Some(v.clone());
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (&mask, v) in &entries {
                let Some(total) = v else { continue };
                let mut unknown = bits(mask).filter(|&a| atoms[a].is_none());
                let (Some(u), None) = (unknown.next(), unknown.next()) else {
                    continue;
                };
                let Ok(known) = ExtReal::sum(bits(mask).filter_map(|a| atoms[a].as_ref())) else {
                    continue;
                };
                if let Some(derived) = solve_for_atom(total, &known) {
                    atoms[u] = Some(derived);
                    changed = true;
                }
            }
        }

        for (&mask, v) in &entries {
            if let Some(a) = bits(mask).find(|&a| atoms[a].is_none()) {
                return Err(Error::NotTraceClosed(space.atom_set(a).key()));
            }
            let sum = ExtReal::sum(bits(mask).filter_map(|a| atoms[a].as_ref()))
                .map_err(|_| Error::MixedInfinitiesInDomainSet(key_of(space, mask)))?;
            if let Some(v) = v {
                if *v != sum {
                    return Err(Error::AdditivityViolation(key_of(space, mask)));
                }
            }
        }

        let maximal_sets = maximal_masks(entries.keys().copied().collect());
        let covered = maximal_sets.iter().fold(0, |acc, m| acc | m);
        for (a, v) in atoms.iter_mut().enumerate() {
            if covered & (1 << a) == 0 {
                *v = None;
            }
        }
        Ok(PartialMeasure {
            space: space.clone(),
            atom_values: atoms,
            maximal_sets,
        })
    }

    /// `μ₁ − μ₂` on the sets where the difference is well-posed.
    pub fn diff_measures(m1: &PositiveMeasure, m2: &PositiveMeasure) -> Result<Self> {
        let space = m1.space();
        if space != m2.space() {
            return Err(Error::SpaceMismatch);
        }
        let infinite = |m: &PositiveMeasure| {
            m.atom_values()
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == ExtReal::PlusInf)
                .fold(0u64, |acc, (a, _)| acc | 1 << a)
        };
        let (inf1, inf2) = (infinite(m1), infinite(m2));
        let atom_values = m1
            .atom_values()
            .iter()
            .zip(m2.atom_values())
            .map(|(x, y)| x.sub(y).ok())
            .collect();
        let full = space.full_mask();
        Ok(PartialMeasure {
            space: space.clone(),
            atom_values,
            maximal_sets: maximal_masks(vec![full & !inf1, full & !inf2]),
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// Atom values; `None` for atoms outside every domain set.
    pub fn atom_values(&self) -> &[Option<ExtReal>] {
        &self.atom_values
    }

    /// The inclusion-maximal members of the domain.
    pub fn maximal_sets(&self) -> Vec<MeasurableSet> {
        self.maximal_sets
            .iter()
            .map(|&m| self.space.set_from_mask(m).expect("mask within space"))
            .collect()
    }

    /// Union of the domain: the atoms whose value is determined.
    pub fn determined_mask(&self) -> u64 {
        self.maximal_sets.iter().fold(0, |acc, m| acc | m)
    }

    pub(crate) fn contains_mask(&self, mask: u64) -> bool {
        self.maximal_sets.iter().any(|&m| mask & !m == 0)
    }

    pub fn contains(&self, set: &MeasurableSet) -> bool {
        set.space() == &self.space && self.contains_mask(set.mask())
    }

    /// `μ(A)` for `A` in the domain.
    pub fn value(&self, set: &MeasurableSet) -> Option<ExtReal> {
        if !self.contains(set) {
            return None;
        }
        let sum = ExtReal::sum(
            set.atoms()
                .map(|a| self.atom_values[a].as_ref().expect("domain atoms are valued")),
        );
        Some(sum.expect("domain sets never mix infinities"))
    }

    /// Every member of the domain, in mask order.
    pub fn domain(&self) -> Result<Vec<MeasurableSet>> {
        self.space.check_enumerable(DEFAULT_ENUMERATION_CAP)?;
        Ok((0..=self.space.full_mask())
            .filter(|&m| self.contains_mask(m))
            .map(|m| self.space.set_from_mask(m).expect("mask within space"))
            .collect())
    }

    /// No proper extension exists iff every atom is valued and every set that
    /// does not mix infinities is already in the domain.
    pub fn is_maximal(&self) -> bool {
        if self.determined_mask() != self.space.full_mask() {
            return false;
        }
        let values: Vec<ExtReal> = self.atom_values.iter().flatten().cloned().collect();
        MaximalPartialMeasure {
            space: self.space.clone(),
            atom_values: values,
        }
        .maximal_domain_masks()
        .into_iter()
        .all(|m| self.contains_mask(m))
    }

    /// Adds one set with a value and re-validates. Fails with `InDomain` when
    /// the set is already covered, otherwise with whatever makes the enlarged
    /// set function not a partial measure.
    pub fn extend(&self, set: &MeasurableSet, value: ExtReal) -> Result<PartialMeasure> {
        check_space(&self.space, set)?;
        if self.contains(set) {
            return Err(Error::InDomain(set.key()));
        }
        let mut values: Vec<(MeasurableSet, ExtReal)> = self
            .maximal_sets()
            .into_iter()
            .map(|s| {
                let v = self.value(&s).expect("maximal sets are in the domain");
                (s, v)
            })
            .collect();
        for (a, v) in self.atom_values.iter().enumerate() {
            if let Some(v) = v {
                values.push((self.space.atom_set(a), v.clone()));
            }
        }
        values.push((set.clone(), value));
        PartialMeasure::validate(&self.space, &[], &values)
    }

    /// A maximal extension. Atoms covered by the domain keep their values;
    /// `fill` assigns the remaining (free) atoms, defaulting to zero.
    pub fn maximalize(&self, fill: &BTreeMap<usize, ExtReal>) -> Result<MaximalPartialMeasure> {
        for &a in fill.keys() {
            if a >= self.space.atom_count() {
                return Err(Error::InvalidArgument(format!("atom index {a} out of range")));
            }
            if self.atom_values[a].is_some() {
                return Err(Error::FillConflict(self.space.atom_label(a).to_owned()));
            }
        }
        let atom_values = self
            .atom_values
            .iter()
            .enumerate()
            .map(|(a, v)| {
                v.clone()
                    .or_else(|| fill.get(&a).cloned())
                    .unwrap_or_else(ExtReal::zero)
            })
            .collect();
        Ok(MaximalPartialMeasure {
            space: self.space.clone(),
            atom_values,
        })
    }

    /// Converts to the atom-vector form if no proper extension exists.
    pub fn to_maximal(&self) -> Option<MaximalPartialMeasure> {
        self.is_maximal().then(|| {
            self.maximalize(&BTreeMap::new())
                .expect("maximal measures have no free atoms")
        })
    }
}

/// Value of the single unknown atom in a set whose total is `total` and
/// whose other atoms sum to `known`, when that value is forced.
fn solve_for_atom(total: &ExtReal, known: &ExtReal) -> Option<ExtReal> {
    use ExtReal::*;
    match (total, known) {
        (Finite(t), Finite(k)) => Some(Finite(t - k)),
        (PlusInf, Finite(_)) | (PlusInf, MinusInf) => Some(PlusInf),
        (MinusInf, Finite(_)) | (MinusInf, PlusInf) => Some(MinusInf),
        // same-signed infinity already present, or finite total with an
        // infinite part: nothing is forced
        _ => None,
    }
}

/// The Jordan-type decomposition `μ = μ⁺ − μ⁻` of a maximal partial measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub mu_plus: PositiveMeasure,
    pub mu_minus: PositiveMeasure,
    /// For each atom `a`, the first `F ∈ F⁺(μ)` (mask order) attaining
    /// `sup μ(a ∩ F)`.
    pub attaining_plus: Vec<MeasurableSet>,
    /// As `attaining_plus`, for `sup −μ(a ∩ F)` over `F⁻(μ)`.
    pub attaining_minus: Vec<MeasurableSet>,
}

/// A partial measure with no proper extension, stored as its atom values.
///
/// The domain is derived: a set belongs to it iff its atoms do not carry both
/// `+inf` and `-inf`, and its value is the atom sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalPartialMeasure {
    space: FiniteSpace,
    atom_values: Vec<ExtReal>,
}

impl MaximalPartialMeasure {
    pub fn new(space: FiniteSpace, atom_values: Vec<ExtReal>) -> Result<Self> {
        check_len("atom values", &space, atom_values.len())?;
        Ok(MaximalPartialMeasure { space, atom_values })
    }

    pub fn zero(space: FiniteSpace) -> Self {
        let atom_values = vec![ExtReal::zero(); space.atom_count()];
        MaximalPartialMeasure { space, atom_values }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn atom_values(&self) -> &[ExtReal] {
        &self.atom_values
    }

    fn mask_where(&self, pred: impl Fn(&ExtReal) -> bool) -> u64 {
        self.atom_values
            .iter()
            .enumerate()
            .filter(|(_, v)| pred(v))
            .fold(0, |acc, (a, _)| acc | 1 << a)
    }

    fn set(&self, mask: u64) -> MeasurableSet {
        self.space.set_from_mask(mask).expect("mask within space")
    }

    /// The maximal sets of the derived domain: drop all `+inf` atoms or drop
    /// all `-inf` atoms.
    pub(crate) fn maximal_domain_masks(&self) -> Vec<u64> {
        let full = self.space.full_mask();
        let plus = self.mask_where(|v| *v == ExtReal::PlusInf);
        let minus = self.mask_where(|v| *v == ExtReal::MinusInf);
        maximal_masks(vec![full & !plus, full & !minus])
    }

    pub fn in_domain(&self, set: &MeasurableSet) -> bool {
        set.space() == &self.space && atom_sum(&self.atom_values, set.mask()).is_ok()
    }

    /// `μ(A)`; `IllPosed` when `A` is outside the domain.
    pub fn evaluate(&self, set: &MeasurableSet) -> Result<ExtReal> {
        check_space(&self.space, set)?;
        atom_sum(&self.atom_values, set.mask())
    }

    /// The same set function in explicit-domain form.
    pub fn to_partial(&self) -> PartialMeasure {
        PartialMeasure {
            space: self.space.clone(),
            atom_values: self.atom_values.iter().cloned().map(Some).collect(),
            maximal_sets: self.maximal_domain_masks(),
        }
    }

    /// The total measure with the same atom values, when no infinities mix.
    pub fn as_measure(&self) -> Option<Measure> {
        Measure::new(self.space.clone(), self.atom_values.clone()).ok()
    }

    /// `μ` on every mask (`None` off the domain), built incrementally.
    pub(crate) fn value_table(&self) -> Result<Vec<Option<ExtReal>>> {
        self.space.check_enumerable(DEFAULT_ENUMERATION_CAP)?;
        let size = 1usize << self.space.atom_count();
        let mut table: Vec<Option<ExtReal>> = Vec::with_capacity(size);
        table.push(Some(ExtReal::zero()));
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = &table[mask & (mask - 1)];
            let v = rest.as_ref().and_then(|r| r.add(&self.atom_values[low]).ok());
            table.push(v);
        }
        Ok(table)
    }

    fn f_class_masks(table: &[Option<ExtReal>], side: Side) -> Vec<u64> {
        let ok = |v: &Option<ExtReal>| match (v, side) {
            (Some(v), Side::Plus) => v.is_nonnegative(),
            (Some(v), Side::Minus) => v.is_nonpositive(),
            (None, _) => false,
        };
        (0..table.len() as u64)
            .filter(|&f| submasks(f).all(|a| ok(&table[a as usize])))
            .collect()
    }

    /// `F⁺(μ)`: domain sets all of whose measurable subsets have `μ ≥ 0`,
    /// found by checking every subset of every set (`3^k` evaluations).
    pub fn f_plus(&self) -> Result<Vec<MeasurableSet>> {
        let table = self.value_table()?;
        Ok(Self::f_class_masks(&table, Side::Plus)
            .into_iter()
            .map(|m| self.set(m))
            .collect())
    }

    /// `F⁻(μ)`: domain sets all of whose measurable subsets have `μ ≤ 0`.
    pub fn f_minus(&self) -> Result<Vec<MeasurableSet>> {
        let table = self.value_table()?;
        Ok(Self::f_class_masks(&table, Side::Minus)
            .into_iter()
            .map(|m| self.set(m))
            .collect())
    }

    /// Brute-force membership in `F⁺(μ)` (`Side::Plus`) or `F⁻(μ)`.
    pub fn is_in_f_class(&self, set: &MeasurableSet, side: Side) -> Result<bool> {
        check_space(&self.space, set)?;
        for sub in set.subsets() {
            match self.evaluate(&sub) {
                Ok(v) if side == Side::Plus && v.is_nonnegative() => {}
                Ok(v) if side == Side::Minus && v.is_nonpositive() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// `sup_{F ∈ family} ±μ(A ∩ F)` with the first maximizing `F`.
    ///
    /// Every `A ∩ F` must be in the domain, which holds when `family` is
    /// `F⁺(μ)` or `F⁻(μ)`.
    pub fn sup_over(
        &self,
        family: &[MeasurableSet],
        set: &MeasurableSet,
        side: Side,
    ) -> Result<(ExtReal, MeasurableSet)> {
        let mut best: Option<(ExtReal, MeasurableSet)> = None;
        for f in family {
            let v = side.orient(&self.evaluate(&set.intersect(f)?)?);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, f.clone()));
            }
        }
        best.ok_or(Error::EmptyFamily)
    }

    /// `μ⁺(A) = sup_{F ∈ F⁺(μ)} μ(A ∩ F)` and
    /// `μ⁻(A) = sup_{F ∈ F⁻(μ)} −μ(A ∩ F)`, evaluated over the enumerated
    /// classes at each atom. Both are positive measures with `μ = μ⁺ − μ⁻`
    /// on the domain.
    pub fn jordan_decompose(&self) -> Result<JordanDecomposition> {
        let table = self.value_table()?;
        let plus_family = Self::f_class_masks(&table, Side::Plus);
        let minus_family = Self::f_class_masks(&table, Side::Minus);
        let sup_at = |family: &[u64], atom: u64, side: Side| -> (ExtReal, u64) {
            let mut best: Option<(ExtReal, u64)> = None;
            for &f in family {
                let v = table[(atom & f) as usize]
                    .as_ref()
                    .expect("subsets of F± sets are in the domain");
                let v = side.orient(v);
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, f));
                }
            }
            // ∅ is always in both classes
            best.expect("F± classes are nonempty")
        };
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        let (mut at_plus, mut at_minus) = (Vec::new(), Vec::new());
        for a in 0..self.space.atom_count() {
            let (v, f) = sup_at(&plus_family, 1 << a, Side::Plus);
            plus.push(v);
            at_plus.push(self.set(f));
            let (v, f) = sup_at(&minus_family, 1 << a, Side::Minus);
            minus.push(v);
            at_minus.push(self.set(f));
        }
        Ok(JordanDecomposition {
            mu_plus: PositiveMeasure::new(self.space.clone(), plus)?,
            mu_minus: PositiveMeasure::new(self.space.clone(), minus)?,
            attaining_plus: at_plus,
            attaining_minus: at_minus,
        })
    }

    /// Whether `candidate` dominates `μ` (`Side::Plus`) or `−μ`
    /// (`Side::Minus`) on every domain set.
    pub fn check_minimality(&self, candidate: &PositiveMeasure, side: Side) -> Result<bool> {
        if candidate.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let table = self.value_table()?;
        for (mask, v) in table.iter().enumerate() {
            let Some(v) = v else { continue };
            let bound = candidate.evaluate(&self.set(mask as u64))?;
            if side.orient(v) > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For `A` outside the domain: `A′ ⊆ A` in `F⁺(μ)` with `μ(A′) = +inf`
    /// and `A″ ⊆ A` in `F⁻(μ)` with `μ(A″) = -inf`. `A′` collects the atoms of
    /// `A` with value `≥ 0`, `A″` those with value `≤ 0`.
    pub fn corollary1_witness(&self, set: &MeasurableSet) -> Result<(MeasurableSet, MeasurableSet)> {
        check_space(&self.space, set)?;
        if self.in_domain(set) {
            return Err(Error::InDomain(set.key()));
        }
        let plus = set.mask() & self.mask_where(ExtReal::is_nonnegative);
        let minus = set.mask() & self.mask_where(ExtReal::is_nonpositive);
        Ok((self.set(plus), self.set(minus)))
    }

    /// `C` = atoms with value `≥ 0`, so `C ∈ F⁺(μ)` and `Ω∖C ∈ F⁻(μ)`.
    ///
    /// This split always exists on a finite algebra. On infinite algebras a
    /// maximal partial measure need not admit one (see [`crate::example3`]).
    pub fn hahn_partial(&self) -> (MeasurableSet, MeasurableSet) {
        let c = self.set(self.mask_where(ExtReal::is_nonnegative));
        let rest = c.complement();
        (c, rest)
    }
}
