use serde::{Deserialize, Serialize};

use super::ideal::MonomialIdeal;
use super::model::VgModel;
use super::SchemeError;
use crate::binomial;
use crate::geom::{taylor_indices, MultiIndex, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// Fat point of multiplicity `m` at a generic point of the ambient space.
    FreePoint { m: u32 },
    /// Fat point of multiplicity `m` at a generic point of the divisor.
    DivisorPoint { m: u32 },
    /// `D_m`: the fat point with its top layer removed, on the divisor.
    SimpleResidue { m: u32 },
    /// A vertically graded model supported on a hyperplane divisor.
    DivisorModel { model: VgModel },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    #[serde(flatten)]
    pub kind: ComponentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<ProjPoint>,
}

/// The trace of a constrained component on the divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceScheme {
    Empty,
    /// Fat point of the given multiplicity inside the divisor.
    FatPoint(u32),
    /// A monomial ideal in the tangential variables that is not a power of
    /// the maximal ideal.
    Monomial(MonomialIdeal),
}

impl TraceScheme {
    /// Degree inside a divisor of dimension `n_div`.
    pub fn degree(&self, n_div: usize) -> u64 {
        match self {
            Self::Empty => 0,
            Self::FatPoint(m) => point_degree(*m, n_div),
            Self::Monomial(i) => i.colength().expect("finite colength"),
        }
    }
}

/// `C(m - 1 + n, n)`, the degree of an `m`-fold point in dimension `n`.
pub fn point_degree(m: u32, n: usize) -> u64 {
    if m == 0 {
        0
    } else {
        binomial(m as u64 - 1 + n as u64, n as u64)
    }
}

impl Component {
    pub fn free(m: u32) -> Self {
        Self::unassigned(ComponentKind::FreePoint { m })
    }

    pub fn divisor_point(m: u32) -> Self {
        Self::unassigned(ComponentKind::DivisorPoint { m })
    }

    pub fn simple_residue(m: u32) -> Self {
        Self::unassigned(ComponentKind::SimpleResidue { m })
    }

    pub fn model(model: VgModel) -> Self {
        Self::unassigned(ComponentKind::DivisorModel { model })
    }

    fn unassigned(kind: ComponentKind) -> Self {
        Self {
            kind,
            support: None,
        }
    }

    pub fn with_support(mut self, p: ProjPoint) -> Self {
        self.support = Some(p);
        self
    }

    pub fn validate(&self, n: usize) -> Result<(), SchemeError> {
        match &self.kind {
            ComponentKind::FreePoint { m } | ComponentKind::DivisorPoint { m } if *m == 0 => {
                Err(SchemeError::InvalidMultiplicity(format!(
                    "point multiplicity must be at least 1, got {m}"
                )))
            }
            ComponentKind::SimpleResidue { m } if *m < 2 => Err(SchemeError::InvalidMultiplicity(
                format!("simple residue multiplicity must be at least 2, got {m}"),
            )),
            ComponentKind::DivisorModel { model } if model.n_vars() + 1 != n => {
                Err(SchemeError::DimensionMismatch {
                    expected: n,
                    found: model.n_vars() + 1,
                })
            }
            _ => match &self.support {
                Some(p) if p.dim() != n => Err(SchemeError::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                }),
                _ => Ok(()),
            },
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, ComponentKind::FreePoint { .. })
    }

    /// Multiplicity of point-like components.
    pub fn multiplicity(&self) -> Option<u32> {
        match self.kind {
            ComponentKind::FreePoint { m }
            | ComponentKind::DivisorPoint { m }
            | ComponentKind::SimpleResidue { m } => Some(m),
            ComponentKind::DivisorModel { .. } => None,
        }
    }

    /// Length of the component in `P^n`.
    pub fn degree(&self, n: usize) -> u64 {
        match &self.kind {
            ComponentKind::FreePoint { m } | ComponentKind::DivisorPoint { m } => {
                point_degree(*m, n)
            }
            ComponentKind::SimpleResidue { m } => point_degree(*m, n) - 1,
            ComponentKind::DivisorModel { model } => model.degree(),
        }
    }

    pub fn trace(&self) -> Result<TraceScheme, SchemeError> {
        match &self.kind {
            ComponentKind::FreePoint { .. } => Err(SchemeError::FreeComponent),
            ComponentKind::DivisorPoint { m } | ComponentKind::SimpleResidue { m } => {
                Ok(TraceScheme::FatPoint(*m))
            }
            ComponentKind::DivisorModel { model } => {
                let i0 = model.trace();
                Ok(match i0.max_power_exponent() {
                    Some(0) => TraceScheme::Empty,
                    Some(k) => TraceScheme::FatPoint(k),
                    None => TraceScheme::Monomial(i0),
                })
            }
        }
    }

    /// Degree of the trace in the divisor of `P^n`.
    pub fn trace_degree(&self, n: usize) -> Result<u64, SchemeError> {
        Ok(self.trace()?.degree(n - 1))
    }

    /// Residual with respect to the divisor; `None` when it is empty.
    pub fn residual(&self) -> Option<Self> {
        let kind = match &self.kind {
            ComponentKind::FreePoint { .. } => return Some(self.clone()),
            ComponentKind::DivisorPoint { m } if *m >= 2 => {
                ComponentKind::DivisorPoint { m: m - 1 }
            }
            ComponentKind::SimpleResidue { m } if *m >= 3 => {
                ComponentKind::SimpleResidue { m: m - 1 }
            }
            ComponentKind::DivisorModel { model } => {
                let res = model.residual();
                if res.is_empty() {
                    return None;
                }
                ComponentKind::DivisorModel { model: res }
            }
            _ => return None,
        };
        Some(Self {
            kind,
            support: self.support.clone(),
        })
    }

    /// Local conditions as exponents in `n` local coordinates, the last one
    /// normal to the divisor: one exponent per imposed Taylor coefficient.
    pub fn local_standard_monomials(&self, n: usize) -> Vec<MultiIndex> {
        match &self.kind {
            ComponentKind::FreePoint { m } | ComponentKind::DivisorPoint { m } => {
                taylor_indices(n, *m)
            }
            ComponentKind::SimpleResidue { m } => {
                let mut dropped = vec![0; n];
                dropped[n - 1] = m - 1;
                taylor_indices(n, *m)
                    .into_iter()
                    .filter(|b| b.0 != dropped)
                    .collect()
            }
            ComponentKind::DivisorModel { model } => model.standard_monomials(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Component::free(2).degree(2), 3);
        assert_eq!(Component::simple_residue(3).degree(2), 5);
        assert_eq!(Component::free(1).degree(4), 1);
        assert_eq!(Component::divisor_point(2).trace_degree(2).unwrap(), 2);
        assert_eq!(Component::simple_residue(3).trace_degree(2).unwrap(), 3);
        assert_eq!(Component::free(3).trace(), Err(SchemeError::FreeComponent));
    }

    #[test]
    fn residuals() {
        assert_eq!(
            Component::divisor_point(3).residual(),
            Some(Component::divisor_point(2))
        );
        assert_eq!(Component::divisor_point(1).residual(), None);
        assert_eq!(Component::simple_residue(2).residual(), None);
        assert_eq!(
            Component::simple_residue(4).residual(),
            Some(Component::simple_residue(3))
        );
        assert_eq!(Component::free(2).residual(), Some(Component::free(2)));
    }

    #[test]
    fn model_trace_and_residual() {
        let unit_bottom = VgModel::new(1, vec![MonomialIdeal::unit(1)]).unwrap();
        assert_eq!(
            Component::model(unit_bottom).trace().unwrap(),
            TraceScheme::Empty
        );
        let c = Component::model(VgModel::fat_point(1, 3));
        assert_eq!(c.trace().unwrap(), TraceScheme::FatPoint(3));
        assert_eq!(
            c.residual(),
            Some(Component::model(VgModel::fat_point(1, 2)))
        );
    }

    #[test]
    fn local_monomials_count_matches_degree() {
        for n in 1..=3 {
            for m in 2..=4 {
                for c in [
                    Component::free(m),
                    Component::divisor_point(m),
                    Component::simple_residue(m),
                ] {
                    assert_eq!(c.local_standard_monomials(n).len() as u64, c.degree(n));
                }
                let model = Component::model(VgModel::simple_residue(n - 1, m));
                assert_eq!(
                    model.local_standard_monomials(n).len() as u64,
                    model.degree(n)
                );
            }
        }
    }

    #[test]
    fn validation() {
        assert!(Component::free(0).validate(2).is_err());
        assert!(Component::simple_residue(1).validate(2).is_err());
        assert!(Component::model(VgModel::fat_point(2, 2))
            .validate(2)
            .is_err());
        assert!(Component::simple_residue(2).validate(2).is_ok());
    }

    #[test]
    fn json_shape() {
        let c = Component::divisor_point(2);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"divisor_point","m":2}"#
        );
        let p = Component::free(3).with_support(ProjPoint::new(vec![1, 2, 3]).unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"kind":"free_point","m":3,"support":[1,2,3]}"#);
        assert_eq!(serde_json::from_str::<Component>(&s).unwrap(), p);
    }
}
