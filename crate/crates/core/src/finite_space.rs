//! Finite sample spaces and their σ-algebras.
//!
//! A σ-algebra on a finite set is determined by its atoms, so a
//! [`FiniteSpace`] stores the point labels together with the atom partition,
//! and a [`MeasurableSet`] is a bitmask over atom indices. Membership in the
//! algebra is therefore structural: every `MeasurableSet` is a union of atoms.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard limit on the number of atoms (one bit per atom in a `u64` mask).
pub const MAX_ATOMS: usize = 64;

/// Default bound on the atom count for exhaustive `2^k` enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

pub(crate) fn full_mask(atoms: usize) -> u64 {
    if atoms >= 64 {
        u64::MAX
    } else {
        (1u64 << atoms) - 1
    }
}

/// Iterates the bits set in `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// Iterates every submask of `mask`, in increasing numeric order.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(cur.wrapping_sub(mask) & mask)
        };
        Some(cur)
    })
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpaceInner {
    points: Vec<String>,
    atoms: Vec<Vec<usize>>,
    atom_of: Vec<usize>,
}

/// A finite set of labeled points with a σ-algebra given by its atoms.
///
/// Cloning is cheap; equality is structural, and atoms are kept sorted by
/// their smallest point index so equal algebras compare equal.
#[derive(Clone)]
pub struct FiniteSpace(Arc<SpaceInner>);

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FiniteSpace {}

impl Hash for FiniteSpace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<Vec<&str>> = self
            .0
            .atoms
            .iter()
            .map(|a| a.iter().map(|&p| self.0.points[p].as_str()).collect())
            .collect();
        f.debug_struct("FiniteSpace").field("atoms", &atoms).finish()
    }
}

fn index_points(points: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.as_str(), i).is_some() {
            return Err(Error::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

impl FiniteSpace {
    /// Builds a space from an explicit atom partition given by point indices.
    pub fn from_partition(points: Vec<String>, mut atoms: Vec<Vec<usize>>) -> Result<Self> {
        index_points(&points)?;
        let mut atom_of = vec![usize::MAX; points.len()];
        for atom in atoms.iter_mut() {
            if atom.is_empty() {
                return Err(Error::InvalidArgument("empty atom".into()));
            }
            atom.sort_unstable();
            atom.dedup();
        }
        atoms.sort_by_key(|a| a[0]);
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooLarge {
                count: atoms.len(),
                cap: MAX_ATOMS,
            });
        }
        for (ai, atom) in atoms.iter().enumerate() {
            for &p in atom {
                if p >= points.len() {
                    return Err(Error::InvalidArgument(format!("point index {p} out of range")));
                }
                if atom_of[p] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "point {:?} lies in two atoms",
                        points[p]
                    )));
                }
                atom_of[p] = ai;
            }
        }
        if let Some(p) = atom_of.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidArgument(format!(
                "point {:?} is not covered by any atom",
                points[p]
            )));
        }
        Ok(FiniteSpace(Arc::new(SpaceInner { points, atoms, atom_of })))
    }

    /// The smallest algebra on `points` containing every generator: two
    /// points share an atom iff no generator separates them.
    pub fn generate_algebra<S, G>(points: &[S], generators: &[G]) -> Result<Self>
    where
        S: AsRef<str>,
        G: AsRef<[S]>,
    {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        let index = index_points(&points)?;
        let mut signature = vec![Vec::with_capacity(generators.len()); points.len()];
        for g in generators {
            let mut member = vec![false; points.len()];
            for label in g.as_ref() {
                let label = label.as_ref();
                let &i = index.get(label).ok_or_else(|| Error::UnknownPoint(label.to_owned()))?;
                member[i] = true;
            }
            for (sig, m) in signature.iter_mut().zip(member) {
                sig.push(m);
            }
        }
        let mut groups: HashMap<&[bool], usize> = HashMap::new();
        let mut atoms: Vec<Vec<usize>> = Vec::new();
        for (p, sig) in signature.iter().enumerate() {
            let slot = *groups.entry(sig.as_slice()).or_insert_with(|| {
                atoms.push(Vec::new());
                atoms.len() - 1
            });
            atoms[slot].push(p);
        }
        Self::from_partition(points, atoms)
    }

    /// The power-set algebra on `points`.
    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        let atoms = (0..points.len()).map(|i| vec![i]).collect();
        Self::from_partition(points, atoms)
    }

    pub fn points(&self) -> &[String] {
        &self.0.points
    }

    /// Atoms as sorted point-index lists, in canonical order.
    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.0.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.0.atoms.len()
    }

    /// An atom is labeled by its smallest point.
    pub fn atom_label(&self, atom: usize) -> &str {
        &self.0.points[self.0.atoms[atom][0]]
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.0.points.iter().position(|p| p == label)
    }

    /// Atom index for an atom label (the atom's smallest point).
    pub fn atom_by_label(&self, label: &str) -> Result<usize> {
        (0..self.atom_count())
            .find(|&a| self.atom_label(a) == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_owned()))
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.atom_count())
    }

    pub fn empty_set(&self) -> MeasurableSet {
        MeasurableSet {
            space: self.clone(),
            mask: 0,
        }
    }

    pub fn full_set(&self) -> MeasurableSet {
        MeasurableSet {
            space: self.clone(),
            mask: self.full_mask(),
        }
    }

    pub fn atom_set(&self, atom: usize) -> MeasurableSet {
        assert!(atom < self.atom_count(), "atom index out of range");
        MeasurableSet {
            space: self.clone(),
            mask: 1 << atom,
        }
    }

    pub fn set_from_mask(&self, mask: u64) -> Result<MeasurableSet> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has bits beyond {} atoms",
                self.atom_count()
            )));
        }
        Ok(MeasurableSet {
            space: self.clone(),
            mask,
        })
    }

    /// The set consisting of exactly these points; errors unless they form a
    /// union of atoms.
    pub fn set_from_points<S: AsRef<str>>(&self, labels: &[S]) -> Result<MeasurableSet> {
        let mut chosen = vec![false; self.0.points.len()];
        for label in labels {
            let label = label.as_ref();
            let i = self
                .point_index(label)
                .ok_or_else(|| Error::UnknownPoint(label.to_owned()))?;
            chosen[i] = true;
        }
        let mut mask = 0u64;
        for (ai, atom) in self.0.atoms.iter().enumerate() {
            let inside = atom.iter().filter(|&&p| chosen[p]).count();
            if inside == atom.len() {
                mask |= 1 << ai;
            } else if inside > 0 {
                let shown: Vec<&str> = labels.iter().map(|l| l.as_ref()).collect();
                return Err(Error::NotMeasurable(shown.join(",")));
            }
        }
        Ok(MeasurableSet {
            space: self.clone(),
            mask,
        })
    }

    /// Parses a set key: comma-joined point labels (order irrelevant, empty
    /// string for ∅).
    pub fn parse_set_key(&self, key: &str) -> Result<MeasurableSet> {
        let labels: Vec<&str> = key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        self.set_from_points(&labels)
    }

    /// All `2^k` measurable sets in mask order, with the default cap.
    pub fn enumerate_sets(&self) -> Result<impl Iterator<Item = MeasurableSet> + '_> {
        self.enumerate_sets_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_sets_capped(&self, cap: usize) -> Result<impl Iterator<Item = MeasurableSet> + '_> {
        self.check_enumerable(cap)?;
        Ok((0..=self.full_mask()).map(move |mask| MeasurableSet {
            space: self.clone(),
            mask,
        }))
    }

    pub(crate) fn check_enumerable(&self, cap: usize) -> Result<()> {
        let count = self.atom_count();
        if count > cap.min(63) {
            return Err(Error::TooLarge { count, cap });
        }
        Ok(())
    }

    /// The trace algebra `𝒜 ∩ B`: points of `B`, atoms of the space inside `B`.
    pub fn trace_algebra(&self, b: &MeasurableSet) -> Result<FiniteSpace> {
        if b.space != *self {
            return Err(Error::SpaceMismatch);
        }
        let mut kept: Vec<usize> = b.atoms().flat_map(|a| self.0.atoms[a].iter().copied()).collect();
        kept.sort_unstable();
        let mut renumber = vec![usize::MAX; self.0.points.len()];
        for (new, &old) in kept.iter().enumerate() {
            renumber[old] = new;
        }
        let points = kept.iter().map(|&p| self.0.points[p].clone()).collect();
        let atoms = b
            .atoms()
            .map(|a| self.0.atoms[a].iter().map(|&p| renumber[p]).collect())
            .collect();
        FiniteSpace::from_partition(points, atoms)
    }
}

/// A member of the algebra of a [`FiniteSpace`]: a union of atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MeasurableSet {
    space: FiniteSpace,
    mask: u64,
}

impl fmt::Debug for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl MeasurableSet {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Number of atoms in the set.
    pub fn atom_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains_atom(&self, atom: usize) -> bool {
        atom < 64 && self.mask & (1 << atom) != 0
    }

    /// Indices of the atoms inside the set, ascending.
    pub fn atoms(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    /// Point labels in space order.
    pub fn points(&self) -> Vec<&str> {
        let mut idx: Vec<usize> = self
            .atoms()
            .flat_map(|a| self.space.0.atoms[a].iter().copied())
            .collect();
        idx.sort_unstable();
        idx.into_iter().map(|p| self.space.0.points[p].as_str()).collect()
    }

    /// Comma-joined point labels in space order; `""` for ∅.
    pub fn key(&self) -> String {
        self.points().join(",")
    }

    fn check_same(&self, other: &MeasurableSet) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn with_mask(&self, mask: u64) -> MeasurableSet {
        MeasurableSet {
            space: self.space.clone(),
            mask,
        }
    }

    pub fn complement(&self) -> MeasurableSet {
        self.with_mask(!self.mask & self.space.full_mask())
    }

    pub fn union(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.check_same(other)?;
        Ok(self.with_mask(self.mask | other.mask))
    }

    pub fn intersect(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.check_same(other)?;
        Ok(self.with_mask(self.mask & other.mask))
    }

    pub fn difference(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        self.check_same(other)?;
        Ok(self.with_mask(self.mask & !other.mask))
    }

    pub fn is_subset(&self, other: &MeasurableSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn is_disjoint(&self, other: &MeasurableSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask & other.mask == 0)
    }

    /// Every measurable subset, in mask order (`2^|atoms|` items).
    pub fn subsets(&self) -> impl Iterator<Item = MeasurableSet> + '_ {
        submasks(self.mask).map(move |m| self.with_mask(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn atom_points(space: &FiniteSpace) -> Vec<Vec<&str>> {
        space
            .atoms()
            .iter()
            .map(|a| a.iter().map(|&p| space.points()[p].as_str()).collect())
            .collect()
    }

    /// Closure of a family of point sets under complement and pairwise union,
    /// computed by fixpoint iteration over explicit sets.
    fn closure(n: usize, generators: &[BTreeSet<usize>]) -> BTreeSet<BTreeSet<usize>> {
        let all: BTreeSet<usize> = (0..n).collect();
        let mut family: BTreeSet<BTreeSet<usize>> = generators.iter().cloned().collect();
        family.insert(BTreeSet::new());
        loop {
            let mut next = family.clone();
            for a in &family {
                next.insert(all.difference(a).copied().collect());
                for b in &family {
                    next.insert(a.union(b).copied().collect());
                }
            }
            if next.len() == family.len() {
                return family;
            }
            family = next;
        }
    }

    #[test]
    fn generate_algebra_examples() {
        let s = FiniteSpace::generate_algebra(&["a", "b", "c"], &[vec!["a", "b"]]).unwrap();
        assert_eq!(atom_points(&s), vec![vec!["a", "b"], vec!["c"]]);
        let members: BTreeSet<BTreeSet<usize>> = s
            .enumerate_sets()
            .unwrap()
            .map(|m| m.points().iter().map(|p| s.point_index(p).unwrap()).collect())
            .collect();
        let gen: BTreeSet<usize> = [0, 1].into();
        assert_eq!(members, closure(3, &[gen]));

        let empty: [Vec<&str>; 0] = [];
        let s = FiniteSpace::generate_algebra(&["a", "b"], &empty).unwrap();
        assert_eq!(atom_points(&s), vec![vec!["a", "b"]]);

        let s = FiniteSpace::generate_algebra(&["a", "b", "c", "d"], &[vec!["a"], vec!["b"], vec!["c"], vec!["d"]])
            .unwrap();
        assert_eq!(s.atom_count(), 4);
        assert_eq!(s, FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap());
    }

    #[test]
    fn generate_algebra_errors() {
        assert_eq!(
            FiniteSpace::generate_algebra(&["a", "b"], &[vec!["z"]]).unwrap_err(),
            Error::UnknownPoint("z".into())
        );
        let none: [Vec<&str>; 0] = [];
        assert_eq!(
            FiniteSpace::generate_algebra(&["a", "a"], &none).unwrap_err(),
            Error::DuplicatePoint("a".into())
        );
    }

    #[test]
    fn atoms_are_sorted_by_smallest_point() {
        let s = FiniteSpace::generate_algebra(&["a", "b", "c", "d"], &[vec!["b", "d"]]).unwrap();
        assert_eq!(atom_points(&s), vec![vec!["a", "c"], vec!["b", "d"]]);
        assert_eq!(s.atom_label(1), "b");
    }

    #[test]
    fn set_algebra_examples() {
        let s = FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(s.empty_set().complement(), s.full_set());
        let ab = s.set_from_points(&["a", "b"]).unwrap();
        let bc = s.set_from_points(&["b", "c"]).unwrap();
        assert_eq!(ab.intersect(&bc).unwrap().key(), "b");
        for a in s.enumerate_sets().unwrap() {
            assert!(s.empty_set().is_subset(&a).unwrap());
        }
    }

    #[test]
    fn cross_space_operations_fail() {
        let s = FiniteSpace::discrete(&["a", "b"]).unwrap();
        let t = FiniteSpace::discrete(&["a", "c"]).unwrap();
        assert_eq!(s.full_set().union(&t.full_set()), Err(Error::SpaceMismatch));
        assert_eq!(s.full_set().is_subset(&t.full_set()), Err(Error::SpaceMismatch));
        assert_eq!(s.trace_algebra(&t.full_set()), Err(Error::SpaceMismatch));
    }

    #[test]
    fn non_measurable_point_sets_are_rejected() {
        let s = FiniteSpace::generate_algebra(&["a", "b", "c"], &[vec!["a", "b"]]).unwrap();
        assert!(matches!(s.set_from_points(&["a"]), Err(Error::NotMeasurable(_))));
        assert_eq!(s.parse_set_key("c,b,a").unwrap(), s.full_set());
        assert_eq!(s.parse_set_key("").unwrap(), s.empty_set());
    }

    #[test]
    fn trace_algebra_examples() {
        let s = FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(s.trace_algebra(&s.full_set()).unwrap(), s);
        let empty = s.trace_algebra(&s.empty_set()).unwrap();
        assert_eq!(empty.atom_count(), 0);
        assert!(empty.points().is_empty());

        // {A ∩ B : A ∈ 𝒜} for B = {a,c}, enumerated directly.
        let b = s.set_from_points(&["a", "c"]).unwrap();
        let traces: BTreeSet<String> = s
            .enumerate_sets()
            .unwrap()
            .map(|a| a.intersect(&b).unwrap().key())
            .collect();
        assert_eq!(traces, ["", "a", "c", "a,c"].map(String::from).into());
        let t = s.trace_algebra(&b).unwrap();
        assert_eq!(atom_points(&t), vec![vec!["a"], vec!["c"]]);
    }

    #[test]
    fn enumerate_sets_counts_and_cap() {
        for (k, n) in [(1, 2), (2, 4), (6, 64)] {
            let labels: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
            let s = FiniteSpace::discrete(&labels).unwrap();
            assert_eq!(s.enumerate_sets().unwrap().count(), n);
        }
        let s = FiniteSpace::discrete(&["a"]).unwrap();
        let sets: Vec<MeasurableSet> = s.enumerate_sets().unwrap().collect();
        assert_eq!(sets, vec![s.empty_set(), s.full_set()]);

        let labels: Vec<String> = (0..21).map(|i| format!("p{i}")).collect();
        let big = FiniteSpace::discrete(&labels).unwrap();
        assert!(matches!(
            big.enumerate_sets(),
            Err(Error::TooLarge { count: 21, cap: 20 })
        ));
        assert!(big.enumerate_sets_capped(21).is_ok());
    }

    #[test]
    fn submasks_enumerates_all() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    fn arb_generated() -> impl Strategy<Value = FiniteSpace> {
        (1usize..=7).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..4).prop_map(move |gens| {
                let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
                let gens: Vec<Vec<String>> = gens
                    .iter()
                    .map(|g| {
                        g.iter()
                            .enumerate()
                            .filter(|(_, &m)| m)
                            .map(|(i, _)| labels[i].clone())
                            .collect()
                    })
                    .collect();
                FiniteSpace::generate_algebra(&labels, &gens).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn generated_algebra_is_closed(space in arb_generated()) {
            prop_assume!(space.atom_count() <= 6);
            let sets: Vec<MeasurableSet> = space.enumerate_sets().unwrap().collect();
            let all: BTreeSet<u64> = sets.iter().map(|s| s.mask()).collect();
            for a in &sets {
                prop_assert!(all.contains(&a.complement().mask()));
                for b in &sets {
                    prop_assert!(all.contains(&a.union(b).unwrap().mask()));
                }
            }
            let covered: usize = space.atoms().iter().map(Vec::len).sum();
            prop_assert_eq!(covered, space.points().len());
        }

        #[test]
        fn de_morgan(space in arb_generated(), x in any::<u64>(), y in any::<u64>()) {
            let a = space.set_from_mask(x & space.full_mask()).unwrap();
            let b = space.set_from_mask(y & space.full_mask()).unwrap();
            prop_assert_eq!(
                a.union(&b).unwrap().complement(),
                a.complement().intersect(&b.complement()).unwrap()
            );
            prop_assert_eq!(
                a.intersect(&b).unwrap().complement(),
                a.complement().union(&b.complement()).unwrap()
            );
        }

        #[test]
        fn trace_atoms_are_atoms_inside(space in arb_generated(), x in any::<u64>()) {
            let b = space.set_from_mask(x & space.full_mask()).unwrap();
            let t = space.trace_algebra(&b).unwrap();
            prop_assert_eq!(t.atom_count(), b.atom_count());
            let inside: BTreeSet<Vec<&str>> = b
                .atoms()
                .map(|a| space.atoms()[a].iter().map(|&p| space.points()[p].as_str()).collect())
                .collect();
            let traced: BTreeSet<Vec<&str>> = atom_points(&t).into_iter().collect();
            prop_assert_eq!(inside, traced);
        }
    }
}
