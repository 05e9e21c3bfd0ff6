//! A finitary model of a maximal partial measure with no Hahn-type split.
//!
//! `Ω` is two disjoint countable halves, `B` and `Bᶜ`, with points indexed by
//! `u64` in each. A [`SymbolicSet`] records its intersection with each half
//! as a finite or cofinite index set. The modeled algebra `𝒜₃` is the family
//! of sets whose two parts have the same kind (both finite or both cofinite).
//! It contains every singleton but not `B` itself, which is
//! `(Cofinite(∅), Finite(∅))`.
//!
//! `μ₃` is `0` on `∅`, `+inf` on nonempty subsets of `B`, `-inf` on nonempty
//! subsets of `Bᶜ`, and undefined on sets meeting both halves. No `C ∈ F⁺(μ₃)`
//! has `Ω∖C ∈ F⁻(μ₃)`: membership in `F⁺` forces `C ⊆ B`, membership in `𝒜₃`
//! then forces `C` finite, and the cofinite complement contains a point of
//! `B` whose singleton has value `+inf`.
//!
//! `𝒜₃` is a Boolean algebra rather than a σ-algebra. The argument only uses
//! singletons and complements, so nothing is lost.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::trial_rng;

/// Intersection of a symbolic set with one half of `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "indices", rename_all = "lowercase")]
pub enum HalfSet {
    /// Exactly these indices.
    Finite(Vec<u64>),
    /// Every index except these.
    Cofinite(Vec<u64>),
}

fn canonical(mut xs: Vec<u64>) -> Vec<u64> {
    xs.sort_unstable();
    xs.dedup();
    xs
}

fn list_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    canonical(a.iter().chain(b).copied().collect())
}

fn list_intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn list_minus(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

impl HalfSet {
    pub fn finite(xs: Vec<u64>) -> Self {
        HalfSet::Finite(canonical(xs))
    }

    pub fn cofinite(excluded: Vec<u64>) -> Self {
        HalfSet::Cofinite(canonical(excluded))
    }

    pub fn empty() -> Self {
        HalfSet::Finite(Vec::new())
    }

    pub fn all() -> Self {
        HalfSet::Cofinite(Vec::new())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, HalfSet::Finite(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, HalfSet::Finite(xs) if xs.is_empty())
    }

    pub fn contains(&self, i: u64) -> bool {
        match self {
            HalfSet::Finite(xs) => xs.binary_search(&i).is_ok(),
            HalfSet::Cofinite(xs) => xs.binary_search(&i).is_err(),
        }
    }

    /// The explicitly listed indices (members or exclusions).
    pub fn indices(&self) -> &[u64] {
        match self {
            HalfSet::Finite(xs) | HalfSet::Cofinite(xs) => xs,
        }
    }

    /// Smallest member, if any.
    pub fn first_member(&self) -> Option<u64> {
        match self {
            HalfSet::Finite(xs) => xs.first().copied(),
            HalfSet::Cofinite(xs) => (0..).find(|i| xs.binary_search(i).is_err()),
        }
    }

    pub fn complement(&self) -> HalfSet {
        match self {
            HalfSet::Finite(xs) => HalfSet::Cofinite(xs.clone()),
            HalfSet::Cofinite(xs) => HalfSet::Finite(xs.clone()),
        }
    }

    pub fn union(&self, other: &HalfSet) -> HalfSet {
        use HalfSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(list_union(a, b)),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(list_minus(b, a)),
            (Cofinite(a), Cofinite(b)) => Cofinite(list_intersect(a, b)),
        }
    }

    pub fn intersect(&self, other: &HalfSet) -> HalfSet {
        self.complement().union(&other.complement()).complement()
    }
}

impl fmt::Display for HalfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, xs) = match self {
            HalfSet::Finite(xs) => ("fin", xs),
            HalfSet::Cofinite(xs) => ("cofin", xs),
        };
        write!(f, "{tag}{xs:?}")
    }
}

/// Which half of `Ω` a point lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    B,
    Complement,
}

/// A subset of `Ω` described half by half.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymbolicSet {
    pub b_part: HalfSet,
    pub bc_part: HalfSet,
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b_part, self.bc_part)
    }
}

impl SymbolicSet {
    pub fn new(b_part: HalfSet, bc_part: HalfSet) -> Self {
        let canon = |h: HalfSet| match h {
            HalfSet::Finite(xs) => HalfSet::finite(xs),
            HalfSet::Cofinite(xs) => HalfSet::cofinite(xs),
        };
        SymbolicSet {
            b_part: canon(b_part),
            bc_part: canon(bc_part),
        }
    }

    pub fn empty() -> Self {
        SymbolicSet::new(HalfSet::empty(), HalfSet::empty())
    }

    pub fn omega() -> Self {
        SymbolicSet::new(HalfSet::all(), HalfSet::all())
    }

    /// The half `B` itself (not a member of `𝒜₃`).
    pub fn b() -> Self {
        SymbolicSet::new(HalfSet::all(), HalfSet::empty())
    }

    pub fn singleton(half: Half, index: u64) -> Self {
        match half {
            Half::B => SymbolicSet::new(HalfSet::Finite(vec![index]), HalfSet::empty()),
            Half::Complement => SymbolicSet::new(HalfSet::empty(), HalfSet::Finite(vec![index])),
        }
    }

    pub fn part(&self, half: Half) -> &HalfSet {
        match half {
            Half::B => &self.b_part,
            Half::Complement => &self.bc_part,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.b_part.is_empty() && self.bc_part.is_empty()
    }

    pub fn in_algebra(&self) -> bool {
        self.b_part.is_finite() == self.bc_part.is_finite()
    }

    pub fn complement(&self) -> SymbolicSet {
        SymbolicSet {
            b_part: self.b_part.complement(),
            bc_part: self.bc_part.complement(),
        }
    }

    pub fn union(&self, other: &SymbolicSet) -> SymbolicSet {
        SymbolicSet {
            b_part: self.b_part.union(&other.b_part),
            bc_part: self.bc_part.union(&other.bc_part),
        }
    }

    pub fn intersect(&self, other: &SymbolicSet) -> SymbolicSet {
        SymbolicSet {
            b_part: self.b_part.intersect(&other.b_part),
            bc_part: self.bc_part.intersect(&other.bc_part),
        }
    }

    pub fn is_subset(&self, other: &SymbolicSet) -> bool {
        self.intersect(&other.complement()).is_empty()
    }

    /// A singleton inside the given half of this set, if it meets that half.
    pub fn singleton_in(&self, half: Half) -> Option<SymbolicSet> {
        self.part(half).first_member().map(|i| SymbolicSet::singleton(half, i))
    }
}

/// Values of `μ₃`, including "outside the domain".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymbolicMeasureValue {
    Zero,
    PlusInfinity,
    MinusInfinity,
    Undefined,
}

impl SymbolicMeasureValue {
    pub fn is_defined(self) -> bool {
        self != SymbolicMeasureValue::Undefined
    }

    /// Extended-real addition restricted to these values; `None` if ill-posed
    /// or undefined.
    pub fn checked_add(self, other: SymbolicMeasureValue) -> Option<SymbolicMeasureValue> {
        use SymbolicMeasureValue::*;
        match (self, other) {
            (Undefined, _) | (_, Undefined) => None,
            (PlusInfinity, MinusInfinity) | (MinusInfinity, PlusInfinity) => None,
            (Zero, x) | (x, Zero) => Some(x),
            (x, _) => Some(x),
        }
    }
}

/// `μ₃(S)` for `S ∈ 𝒜₃`.
pub fn mu3(s: &SymbolicSet) -> Result<SymbolicMeasureValue> {
    if !s.in_algebra() {
        return Err(Error::NotInAlgebra);
    }
    Ok(match (s.b_part.is_empty(), s.bc_part.is_empty()) {
        (true, true) => SymbolicMeasureValue::Zero,
        (false, true) => SymbolicMeasureValue::PlusInfinity,
        (true, false) => SymbolicMeasureValue::MinusInfinity,
        (false, false) => SymbolicMeasureValue::Undefined,
    })
}

/// Outcome of an `F⁺`/`F⁻` membership decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member,
    /// A singleton subset whose value has the wrong sign.
    NotMember {
        witness: SymbolicSet,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// `C ∈ F⁺(μ₃)` iff `C` has no point in `Bᶜ`; otherwise that point's
/// singleton has value `-inf`.
pub fn sym_in_f_plus(c: &SymbolicSet) -> Result<Membership> {
    if !c.in_algebra() {
        return Err(Error::NotInAlgebra);
    }
    Ok(match c.singleton_in(Half::Complement) {
        None => Membership::Member,
        Some(witness) => Membership::NotMember { witness },
    })
}

/// `C ∈ F⁻(μ₃)` iff `C` has no point in `B`.
pub fn sym_in_f_minus(c: &SymbolicSet) -> Result<Membership> {
    if !c.in_algebra() {
        return Err(Error::NotInAlgebra);
    }
    Ok(match c.singleton_in(Half::B) {
        None => Membership::Member,
        Some(witness) => Membership::NotMember { witness },
    })
}

/// Why a particular `C` fails to give a split `(C, Ω∖C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SplitFailure {
    /// `C ∉ F⁺`: the witness is a `Bᶜ` singleton inside `C`.
    NotInFPlus { witness: SymbolicSet },
    /// `C ∈ F⁺` but `Ω∖C ∉ F⁻`: the witness is a `B` singleton in `Ω∖C`.
    ComplementNotInFMinus { witness: SymbolicSet },
}

impl SplitFailure {
    pub fn witness(&self) -> &SymbolicSet {
        match self {
            SplitFailure::NotInFPlus { witness } | SplitFailure::ComplementNotInFMinus { witness } => witness,
        }
    }
}

/// Shows that `(C, Ω∖C)` is not a Hahn split. Returns `None` only if the
/// split works, which never happens for `C ∈ 𝒜₃`.
pub fn split_failure(c: &SymbolicSet) -> Result<Option<SplitFailure>> {
    if let Membership::NotMember { witness } = sym_in_f_plus(c)? {
        return Ok(Some(SplitFailure::NotInFPlus { witness }));
    }
    // C ⊆ B and C ∈ 𝒜₃, so C is finite and Ω∖C is cofinite in B
    Ok(match sym_in_f_minus(&c.complement())? {
        Membership::Member => None,
        Membership::NotMember { witness } => Some(SplitFailure::ComplementNotInFMinus { witness }),
    })
}

/// Checks that a reported failure is genuine: the witness is a singleton in
/// `𝒜₃`, lies where it should, and has the offending value.
pub fn verify_split_failure(c: &SymbolicSet, failure: &SplitFailure) -> bool {
    let (w, host, bad) = match failure {
        SplitFailure::NotInFPlus { witness } => (witness, c.clone(), SymbolicMeasureValue::MinusInfinity),
        SplitFailure::ComplementNotInFMinus { witness } => {
            (witness, c.complement(), SymbolicMeasureValue::PlusInfinity)
        }
    };
    let is_singleton = matches!(
        (&w.b_part, &w.bc_part),
        (HalfSet::Finite(a), HalfSet::Finite(b)) if a.len() + b.len() == 1
    );
    is_singleton && w.is_subset(&host) && mu3(w).ok() == Some(bad)
}

/// For `S` outside the domain of `μ₃`: a `+inf` singleton and a `-inf`
/// singleton inside `S`, which rule out any value for `S`.
pub fn undefined_witnesses(s: &SymbolicSet) -> Result<Option<(SymbolicSet, SymbolicSet)>> {
    if mu3(s)? != SymbolicMeasureValue::Undefined {
        return Ok(None);
    }
    let plus = s.singleton_in(Half::B).expect("undefined sets meet B");
    let minus = s.singleton_in(Half::Complement).expect("undefined sets meet Bᶜ");
    Ok(Some((plus, minus)))
}

/// Random member of `𝒜₃` with indices below `max_index` and at most
/// `max_len` listed indices per part.
pub fn random_algebra_set<R: Rng + ?Sized>(rng: &mut R, max_index: u64, max_len: usize) -> SymbolicSet {
    let cofinite = rng.gen_bool(0.5);
    let part = |rng: &mut R| {
        let n = rng.gen_range(0..=max_len);
        let xs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..max_index)).collect();
        if cofinite {
            HalfSet::cofinite(xs)
        } else {
            HalfSet::finite(xs)
        }
    };
    let b = part(rng);
    let bc = part(rng);
    SymbolicSet::new(b, bc)
}

/// Summary emitted by the `example3` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HahnFailureReport {
    pub hahn_split_exists: bool,
    pub trials: u64,
    pub seed: u64,
    pub witness_rule: String,
    pub counterexamples: u64,
    pub c_not_in_f_plus: u64,
    pub complement_not_in_f_minus: u64,
    /// Structural cases checked symbolically: both-finite and
    /// both-cofinite `C`, each with and without points in `Bᶜ`.
    pub cases_checked: Vec<String>,
}

pub const WITNESS_RULE: &str = "if C meets B-complement, its singleton there has value -inf so C is not in F+; \
otherwise C is a finite subset of B and its complement contains a singleton of B with value +inf, so it is not in F-";

/// Runs the symbolic argument on its four structural cases plus `∅` and `Ω`,
/// then checks `trials` random members of `𝒜₃` drawn from `seed`.
pub fn hahn_failure_check(seed: u64, trials: u64) -> HahnFailureReport {
    let mut report = HahnFailureReport {
        hahn_split_exists: false,
        trials,
        seed,
        witness_rule: WITNESS_RULE.to_owned(),
        counterexamples: 0,
        c_not_in_f_plus: 0,
        complement_not_in_f_minus: 0,
        cases_checked: Vec::new(),
    };
    let cases = [
        ("empty", SymbolicSet::empty()),
        ("omega", SymbolicSet::omega()),
        (
            "finite subset of B",
            SymbolicSet::new(HalfSet::finite(vec![1, 4]), HalfSet::empty()),
        ),
        (
            "finite, meets B-complement",
            SymbolicSet::new(HalfSet::finite(vec![2]), HalfSet::finite(vec![3])),
        ),
        (
            "cofinite, excludes nothing of B",
            SymbolicSet::new(HalfSet::all(), HalfSet::cofinite(vec![0, 5])),
        ),
        (
            "cofinite, excludes points of both",
            SymbolicSet::new(HalfSet::cofinite(vec![1]), HalfSet::cofinite(vec![2])),
        ),
    ];
    let tally = |c: &SymbolicSet, report: &mut HahnFailureReport| match split_failure(c) {
        Ok(Some(f)) if verify_split_failure(c, &f) => match f {
            SplitFailure::NotInFPlus { .. } => report.c_not_in_f_plus += 1,
            SplitFailure::ComplementNotInFMinus { .. } => report.complement_not_in_f_minus += 1,
        },
        _ => {
            report.counterexamples += 1;
            report.hahn_split_exists = true;
        }
    };
    for (name, c) in &cases {
        tally(c, &mut report);
        report.cases_checked.push((*name).to_owned());
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let c = random_algebra_set(&mut rng, 16, 4);
        tally(&c, &mut report);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SymbolicMeasureValue::*;

    fn fin(xs: &[u64]) -> HalfSet {
        HalfSet::finite(xs.to_vec())
    }

    fn cofin(xs: &[u64]) -> HalfSet {
        HalfSet::cofinite(xs.to_vec())
    }

    #[test]
    fn b_and_its_complement_are_outside_the_algebra() {
        let b = SymbolicSet::b();
        assert!(!b.in_algebra());
        assert_eq!(b.complement(), SymbolicSet::new(fin(&[]), cofin(&[])));
        assert!(!b.complement().in_algebra());
        assert_eq!(mu3(&b), Err(Error::NotInAlgebra));
    }

    #[test]
    fn singletons_are_in_the_algebra() {
        let x = SymbolicSet::singleton(Half::B, 7);
        assert_eq!(x, SymbolicSet::new(fin(&[7]), fin(&[])));
        assert!(x.in_algebra());
    }

    #[test]
    fn mu3_examples() {
        assert_eq!(mu3(&SymbolicSet::empty()).unwrap(), Zero);
        assert_eq!(mu3(&SymbolicSet::new(fin(&[1, 2]), fin(&[]))).unwrap(), PlusInfinity);
        assert_eq!(mu3(&SymbolicSet::new(fin(&[]), cofin(&[3]))), Err(Error::NotInAlgebra));
        assert_eq!(mu3(&SymbolicSet::new(fin(&[]), fin(&[3]))).unwrap(), MinusInfinity);
        assert_eq!(mu3(&SymbolicSet::new(fin(&[1]), fin(&[7]))).unwrap(), Undefined);
        assert_eq!(mu3(&SymbolicSet::omega()).unwrap(), Undefined);
    }

    #[test]
    fn f_plus_examples() {
        assert!(sym_in_f_plus(&SymbolicSet::empty()).unwrap().is_member());
        assert!(sym_in_f_plus(&SymbolicSet::new(fin(&[1, 2]), fin(&[])))
            .unwrap()
            .is_member());
        assert_eq!(
            sym_in_f_plus(&SymbolicSet::omega()).unwrap(),
            Membership::NotMember {
                witness: SymbolicSet::singleton(Half::Complement, 0)
            }
        );
        assert_eq!(sym_in_f_plus(&SymbolicSet::b()), Err(Error::NotInAlgebra));
    }

    #[test]
    fn split_failure_examples() {
        let c = SymbolicSet::new(fin(&[1]), fin(&[]));
        let f = split_failure(&c).unwrap().unwrap();
        assert_eq!(
            f,
            SplitFailure::ComplementNotInFMinus {
                witness: SymbolicSet::singleton(Half::B, 0)
            }
        );
        assert!(verify_split_failure(&c, &f));

        let f = split_failure(&SymbolicSet::empty()).unwrap().unwrap();
        assert!(matches!(f, SplitFailure::ComplementNotInFMinus { .. }));

        let c = SymbolicSet::new(cofin(&[]), cofin(&[0, 1]));
        let f = split_failure(&c).unwrap().unwrap();
        assert_eq!(
            f,
            SplitFailure::NotInFPlus {
                witness: SymbolicSet::singleton(Half::Complement, 2)
            }
        );
        assert!(verify_split_failure(&c, &f));
        // a wrong witness is rejected
        let bogus = SplitFailure::NotInFPlus {
            witness: SymbolicSet::singleton(Half::B, 2),
        };
        assert!(!verify_split_failure(&c, &bogus));
    }

    #[test]
    fn report_finds_no_split() {
        let r = hahn_failure_check(7, 2_000);
        assert!(!r.hahn_split_exists);
        assert_eq!(r.counterexamples, 0);
        assert_eq!(r.c_not_in_f_plus + r.complement_not_in_f_minus, 2_000 + 6);
        assert_eq!(r, hahn_failure_check(7, 2_000));
    }

    #[test]
    fn undefined_sets_contain_both_infinities() {
        let s = SymbolicSet::new(cofin(&[0]), cofin(&[]));
        let (p, m) = undefined_witnesses(&s).unwrap().unwrap();
        assert_eq!(p, SymbolicSet::singleton(Half::B, 1));
        assert_eq!(m, SymbolicSet::singleton(Half::Complement, 0));
        assert!(undefined_witnesses(&SymbolicSet::empty()).unwrap().is_none());
    }

    fn arb_half() -> impl Strategy<Value = HalfSet> {
        (any::<bool>(), prop::collection::vec(0u64..10, 0..4)).prop_map(|(co, xs)| {
            if co {
                HalfSet::cofinite(xs)
            } else {
                HalfSet::finite(xs)
            }
        })
    }

    fn arb_set() -> impl Strategy<Value = SymbolicSet> {
        (arb_half(), arb_half()).prop_map(|(b, bc)| SymbolicSet::new(b, bc))
    }

    fn arb_member() -> impl Strategy<Value = SymbolicSet> {
        arb_set().prop_filter("in algebra", SymbolicSet::in_algebra)
    }

    proptest! {
        #[test]
        fn half_set_ops_agree_pointwise(a in arb_half(), b in arb_half()) {
            for i in 0..12 {
                prop_assert_eq!(a.union(&b).contains(i), a.contains(i) || b.contains(i));
                prop_assert_eq!(a.intersect(&b).contains(i), a.contains(i) && b.contains(i));
                prop_assert_eq!(a.complement().contains(i), !a.contains(i));
            }
        }

        #[test]
        fn algebra_is_closed(s in arb_member(), t in arb_member()) {
            prop_assert!(s.complement().in_algebra());
            prop_assert!(s.union(&t).in_algebra());
            prop_assert!(s.intersect(&t).in_algebra());
        }

        #[test]
        fn mu3_is_additive_where_defined(s in arb_member(), t in arb_member()) {
            let t = t.intersect(&s.complement());
            let (vs, vt, vu) = (mu3(&s).unwrap(), mu3(&t).unwrap(), mu3(&s.union(&t)).unwrap());
            if vs.is_defined() && vt.is_defined() && vu.is_defined() {
                prop_assert_eq!(vs.checked_add(vt), Some(vu));
            }
        }

        #[test]
        fn no_set_splits(c in arb_member()) {
            let f = split_failure(&c).unwrap();
            prop_assert!(f.is_some());
            prop_assert!(verify_split_failure(&c, &f.unwrap()));
        }

        #[test]
        fn undefined_sets_admit_no_value(s in arb_member()) {
            if let Some((p, m)) = undefined_witnesses(&s).unwrap() {
                prop_assert!(p.is_subset(&s) && m.is_subset(&s));
                prop_assert_eq!(mu3(&p).unwrap(), PlusInfinity);
                prop_assert_eq!(mu3(&m).unwrap(), MinusInfinity);
                // any value v for S would need v = μ(p) + μ(S∖p) with μ(m) = -inf inside
                prop_assert_eq!(PlusInfinity.checked_add(MinusInfinity), None);
            }
        }
    }
}
