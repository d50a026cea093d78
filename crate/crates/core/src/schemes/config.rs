use serde::{Deserialize, Serialize};

use super::component::{Component, ComponentKind};
use super::SchemeError;

pub const CONFIGURATION_SCHEMA: &str = "horace.configuration/1";

/// Multiset of components in `P^N` constrained by a divisor of degree `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct Configuration {
    n: usize,
    a: u32,
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    schema: String,
    #[serde(rename = "N")]
    n: usize,
    a: u32,
    components: Vec<Component>,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = SchemeError;

    fn try_from(raw: RawConfiguration) -> Result<Self, SchemeError> {
        if raw.schema != CONFIGURATION_SCHEMA {
            return Err(SchemeError::Schema(raw.schema));
        }
        Self::new(raw.n, raw.a, raw.components)
    }
}

impl From<Configuration> for RawConfiguration {
    fn from(c: Configuration) -> Self {
        Self {
            schema: CONFIGURATION_SCHEMA.to_string(),
            n: c.n,
            a: c.a,
            components: c.components,
        }
    }
}

impl Configuration {
    pub fn new(n: usize, a: u32, components: Vec<Component>) -> Result<Self, SchemeError> {
        if n == 0 {
            return Err(SchemeError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if a == 0 {
            return Err(SchemeError::InvalidDivisorDegree(a));
        }
        for c in &components {
            c.validate(n)?;
            if a != 1 && matches!(c.kind, ComponentKind::DivisorModel { .. }) {
                return Err(SchemeError::ModelOnCurvedDivisor);
            }
        }
        Ok(Self { n, a, components })
    }

    /// Free points of the given multiplicities with a hyperplane divisor.
    pub fn free_points(n: usize, mults: &[u32]) -> Result<Self, SchemeError> {
        Self::new(n, 1, mults.iter().map(|&m| Component::free(m)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [Component] {
        &mut self.components
    }

    pub fn into_components(self) -> Vec<Component> {
        self.components
    }

    pub fn degree(&self) -> u64 {
        self.components.iter().map(|c| c.degree(self.n)).sum()
    }

    pub fn free_part(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.is_free())
    }

    pub fn constrained_part(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.is_free())
    }

    pub fn free_multiplicities(&self) -> Vec<u32> {
        self.free_part()
            .filter_map(Component::multiplicity)
            .collect()
    }

    /// Degree of the trace of the constrained part on the divisor.
    pub fn trace_degree(&self) -> u64 {
        self.constrained_part()
            .map(|c| c.trace_degree(self.n).expect("constrained component"))
            .sum()
    }

    pub fn with_divisor_degree(&self, a: u32) -> Result<Self, SchemeError> {
        Self::new(self.n, a, self.components.clone())
    }

    /// Drops all support assignments.
    pub fn unassigned(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.components {
            c.support = None;
        }
        out
    }

    /// Components sorted into a canonical order (for comparisons).
    pub fn canonical(&self) -> Self {
        let mut out = self.unassigned();
        out.components
            .sort_by_key(|c| serde_json::to_string(c).expect("serializable component"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::VgModel;

    #[test]
    fn degrees_and_parts() {
        let c = Configuration::new(
            2,
            1,
            vec![
                Component::free(2),
                Component::divisor_point(3),
                Component::simple_residue(2),
            ],
        )
        .unwrap();
        assert_eq!(c.degree(), 3 + 6 + 2);
        assert_eq!(c.free_multiplicities(), vec![2]);
        assert_eq!(c.trace_degree(), 3 + 2);
    }

    #[test]
    fn rejects_models_on_curved_divisors() {
        let comps = vec![Component::model(VgModel::fat_point(1, 2))];
        assert_eq!(
            Configuration::new(2, 2, comps.clone()),
            Err(SchemeError::ModelOnCurvedDivisor)
        );
        assert!(Configuration::new(2, 1, comps).is_ok());
        assert!(Configuration::new(2, 0, vec![]).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let c = Configuration::new(
            2,
            1,
            vec![
                Component::free(2),
                Component::simple_residue(3),
                Component::model(VgModel::fat_point(1, 2)),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"schema":"horace.configuration/1","N":2,"a":1,"#));
        let back: Configuration = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let bad = s.replace("configuration/1", "configuration/0");
        assert!(serde_json::from_str::<Configuration>(&bad).is_err());
    }
}
