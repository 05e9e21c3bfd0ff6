//! JSON descriptions of spaces, measures, partial measures and
//! probabilities.
//!
//! Extended reals are strings (`"3/2"`, `"-4"`, `"+inf"`, `"-inf"`). Atoms are
//! keyed by their smallest point; arbitrary sets by the comma-joined list of
//! their points.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::density::{Probability, RandomVariable};
use crate::error::{Error, Result};
use crate::extreal::{format_rational, parse_rational, ExtReal};
use crate::finite_space::{FiniteSpace, MeasurableSet};
use crate::measure::{Measure, PositiveMeasure};
use crate::partial::{MaximalPartialMeasure, PartialMeasure};
use crate::random::RandomInstance;

/// `{"points": [...], "generators": [[...], ...]}`; no generators means the
/// discrete algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDesc {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
}

impl SpaceDesc {
    pub fn build(&self) -> Result<FiniteSpace> {
        match &self.generators {
            None => FiniteSpace::discrete(&self.points),
            Some(g) => FiniteSpace::generate_algebra(&self.points, g),
        }
    }
}

impl From<&FiniteSpace> for SpaceDesc {
    fn from(space: &FiniteSpace) -> Self {
        let discrete = space.atoms().iter().all(|a| a.len() == 1);
        let generators = (!discrete).then(|| {
            space
                .atoms()
                .iter()
                .map(|a| a.iter().map(|&p| space.points()[p].clone()).collect())
                .collect()
        });
        SpaceDesc {
            points: space.points().to_vec(),
            generators,
        }
    }
}

fn atom_map<T: Clone>(space: &FiniteSpace, values: &[T]) -> BTreeMap<String, T> {
    (0..space.atom_count())
        .map(|a| (space.atom_label(a).to_owned(), values[a].clone()))
        .collect()
}

/// Reads an atom-keyed map into a vector; every atom must appear once.
fn atom_vector<T: Clone>(space: &FiniteSpace, map: &BTreeMap<String, T>) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; space.atom_count()];
    for (label, v) in map {
        let a = space.atom_by_label(label)?;
        out[a] = Some(v.clone());
    }
    out.into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| Error::Parse(format!("missing value for atom {:?}", space.atom_label(a)))))
        .collect()
}

/// `{"space": ..., "values": {"<atom>": "<ExtReal>"}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDesc {
    pub space: SpaceDesc,
    pub values: BTreeMap<String, ExtReal>,
}

impl MeasureDesc {
    pub fn build(&self) -> Result<Measure> {
        let space = self.space.build()?;
        let values = atom_vector(&space, &self.values)?;
        Measure::new(space, values)
    }

    pub fn build_positive(&self) -> Result<PositiveMeasure> {
        PositiveMeasure::try_from(self.build()?)
    }
}

impl From<&Measure> for MeasureDesc {
    fn from(m: &Measure) -> Self {
        MeasureDesc {
            space: m.space().into(),
            values: atom_map(m.space(), m.atom_values()),
        }
    }
}

/// `{"space": ..., "domain": [[points], ...], "values": {"<set key>": ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialDesc {
    pub space: SpaceDesc,
    #[serde(default)]
    pub domain: Vec<Vec<String>>,
    #[serde(default)]
    pub values: BTreeMap<String, ExtReal>,
}

impl PartialDesc {
    pub fn build(&self) -> Result<PartialMeasure> {
        let space = self.space.build()?;
        let domain = self
            .domain
            .iter()
            .map(|pts| space.set_from_points(pts))
            .collect::<Result<Vec<_>>>()?;
        let values = self
            .values
            .iter()
            .map(|(k, v)| Ok((space.parse_set_key(k)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        PartialMeasure::validate(&space, &domain, &values)
    }
}

fn point_list(set: &MeasurableSet) -> Vec<String> {
    set.points().into_iter().map(String::from).collect()
}

impl From<&PartialMeasure> for PartialDesc {
    /// Lists the maximal domain sets and values for them and for every
    /// covered atom, which is enough to rebuild the same partial measure.
    fn from(pm: &PartialMeasure) -> Self {
        let space = pm.space();
        let maximal = pm.maximal_sets();
        let mut values = BTreeMap::new();
        for set in &maximal {
            values.insert(set.key(), pm.value(set).expect("maximal sets are in the domain"));
        }
        for (a, v) in pm.atom_values().iter().enumerate() {
            if let Some(v) = v {
                values.insert(space.atom_set(a).key(), v.clone());
            }
        }
        PartialDesc {
            space: space.into(),
            domain: maximal.iter().map(point_list).collect(),
            values,
        }
    }
}

/// `{"space": ..., "atom_values": {"<atom>": "<ExtReal>"}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalDesc {
    pub space: SpaceDesc,
    pub atom_values: BTreeMap<String, ExtReal>,
}

impl MaximalDesc {
    pub fn build(&self) -> Result<MaximalPartialMeasure> {
        let space = self.space.build()?;
        let values = atom_vector(&space, &self.atom_values)?;
        MaximalPartialMeasure::new(space, values)
    }
}

impl From<&MaximalPartialMeasure> for MaximalDesc {
    fn from(mu: &MaximalPartialMeasure) -> Self {
        MaximalDesc {
            space: mu.space().into(),
            atom_values: atom_map(mu.space(), mu.atom_values()),
        }
    }
}

/// `{"space": ..., "probs": {"<atom>": "p/q"}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilityDesc {
    pub space: SpaceDesc,
    pub probs: BTreeMap<String, String>,
}

impl ProbabilityDesc {
    pub fn build(&self) -> Result<Probability> {
        let space = self.space.build()?;
        let parsed: BTreeMap<String, BigRational> = self
            .probs
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
            .collect::<Result<_>>()?;
        let probs = atom_vector(&space, &parsed)?;
        Probability::new(space, probs)
    }
}

impl From<&Probability> for ProbabilityDesc {
    fn from(p: &Probability) -> Self {
        let text: Vec<String> = p.atom_probs().iter().map(format_rational).collect();
        ProbabilityDesc {
            space: p.space().into(),
            probs: atom_map(p.space(), &text),
        }
    }
}

/// `{"space": ..., "values": {"<atom>": "<ExtReal>"}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomVariableDesc {
    pub space: SpaceDesc,
    pub values: BTreeMap<String, ExtReal>,
}

impl RandomVariableDesc {
    pub fn build(&self) -> Result<RandomVariable> {
        let space = self.space.build()?;
        let values = atom_vector(&space, &self.values)?;
        RandomVariable::new(space, values)
    }
}

impl From<&RandomVariable> for RandomVariableDesc {
    fn from(x: &RandomVariable) -> Self {
        RandomVariableDesc {
            space: x.space().into(),
            values: atom_map(x.space(), x.atom_values()),
        }
    }
}

/// A file holding one object, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Space(SpaceDesc),
    Measure(MeasureDesc),
    Partial(PartialDesc),
    Maximal(MaximalDesc),
    Probability(ProbabilityDesc),
    #[serde(rename = "randomvariable")]
    RandomVariable(RandomVariableDesc),
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Space(_) => "space",
            InstanceFile::Measure(_) => "measure",
            InstanceFile::Partial(_) => "partial",
            InstanceFile::Maximal(_) => "maximal",
            InstanceFile::Probability(_) => "probability",
            InstanceFile::RandomVariable(_) => "randomvariable",
        }
    }
}

/// A fuzz counterexample: the maximal partial measure and the probability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDesc {
    pub maximal: MaximalDesc,
    pub probability: ProbabilityDesc,
}

impl From<&RandomInstance> for InstanceDesc {
    fn from(inst: &RandomInstance) -> Self {
        InstanceDesc {
            maximal: (&inst.mu).into(),
            probability: (&inst.prob).into(),
        }
    }
}

impl InstanceDesc {
    pub fn build(&self) -> Result<RandomInstance> {
        let mu = self.maximal.build()?;
        let prob = self.probability.build()?;
        if mu.space() != prob.space() {
            return Err(Error::SpaceMismatch);
        }
        Ok(RandomInstance { mu, prob })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{generate_random_instance, random_restriction, trial_rng, FuzzConfig};
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn space_description() {
        let d: SpaceDesc =
            serde_json::from_value(json!({"points": ["a", "b", "c"], "generators": [["a", "b"]]})).unwrap();
        let s = d.build().unwrap();
        assert_eq!(s.atom_count(), 2);
        let back = SpaceDesc::from(&s);
        assert_eq!(back.build().unwrap(), s);

        let d: SpaceDesc = serde_json::from_value(json!({"points": ["a", "b"]})).unwrap();
        assert_eq!(d.build().unwrap().atom_count(), 2);
        assert_eq!(
            serde_json::to_value(SpaceDesc::from(&d.build().unwrap())).unwrap(),
            json!({"points": ["a", "b"]})
        );
    }

    #[test]
    fn measure_description() {
        let d: MeasureDesc = serde_json::from_value(json!({
            "space": {"points": ["a", "b", "c"], "generators": [["a", "b"]]},
            "values": {"a": "3/2", "c": "+inf"}
        }))
        .unwrap();
        let m = d.build().unwrap();
        assert_eq!(m.atom_values(), &[ExtReal::ratio(3, 2), ExtReal::PlusInf]);
        let back = MeasureDesc::from(&m);
        assert_eq!(back.values, d.values);
        assert_eq!(back.build().unwrap(), m);

        let missing: MeasureDesc = serde_json::from_value(json!({
            "space": {"points": ["a", "b"]}, "values": {"a": "1"}
        }))
        .unwrap();
        assert!(matches!(missing.build(), Err(Error::Parse(_))));
        let unknown: MeasureDesc = serde_json::from_value(json!({
            "space": {"points": ["a"]}, "values": {"z": "1"}
        }))
        .unwrap();
        assert_eq!(unknown.build(), Err(Error::UnknownPoint("z".into())));
    }

    #[test]
    fn partial_description() {
        let d: PartialDesc = serde_json::from_value(json!({
            "space": {"points": ["a", "b", "c"]},
            "domain": [["a", "b"]],
            "values": {"a": "1", "a,b": "-2"}
        }))
        .unwrap();
        let pm = d.build().unwrap();
        let s = pm.space().clone();
        assert_eq!(pm.value(&s.parse_set_key("b").unwrap()), Some(ExtReal::from_int(-3)));
        assert_eq!(PartialDesc::from(&pm).build().unwrap(), pm);
    }

    #[test]
    fn instance_file_kinds() {
        let f: InstanceFile = serde_json::from_value(json!({
            "kind": "randomvariable",
            "space": {"points": ["a"]},
            "values": {"a": "-inf"}
        }))
        .unwrap();
        assert_eq!(f.kind(), "randomvariable");
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<InstanceFile>(&text).unwrap(), f);
    }

    proptest! {
        #[test]
        fn descriptions_round_trip(seed in any::<u64>()) {
            let mut rng = trial_rng(seed, 0);
            let inst = generate_random_instance(&FuzzConfig::default(), &mut rng);
            let desc = InstanceDesc::from(&inst);
            let text = serde_json::to_string(&desc).unwrap();
            let back: InstanceDesc = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.build().unwrap(), inst.clone());

            let pm = random_restriction(&mut rng, &inst.mu);
            let pd = PartialDesc::from(&pm);
            prop_assert_eq!(pd.build().unwrap(), pm);
        }
    }
}
