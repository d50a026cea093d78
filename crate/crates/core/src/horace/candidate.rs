use serde::{Deserialize, Serialize};

use super::HoraceError;
use crate::schemes::{Component, Configuration};
use crate::{h0_hypersurface, h0_projective};

/// A configuration together with a target degree `d` such that
/// `deg Z >= h^0(O(d))` and `deg Tr(Z) <= h^0(G_a, O(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCandidate", into = "RawCandidate")]
pub struct Candidate {
    config: Configuration,
    d: u32,
}

#[derive(Serialize, Deserialize)]
struct RawCandidate {
    config: Configuration,
    d: u32,
}

impl TryFrom<RawCandidate> for Candidate {
    type Error = HoraceError;

    fn try_from(raw: RawCandidate) -> Result<Self, HoraceError> {
        Self::new(raw.config, raw.d)
    }
}

impl From<Candidate> for RawCandidate {
    fn from(c: Candidate) -> Self {
        Self {
            config: c.config,
            d: c.d,
        }
    }
}

impl Candidate {
    pub fn new(config: Configuration, d: u32) -> Result<Self, HoraceError> {
        let need = h0_projective(config.n(), d as i64);
        if config.degree() < need {
            return Err(HoraceError::CandidateViolation(format!(
                "degree {} is below h0(O({d})) = {need}",
                config.degree()
            )));
        }
        let bound = h0_hypersurface(config.n(), config.a(), d as i64);
        let trace = config.trace_degree();
        if trace > bound {
            return Err(HoraceError::TraceOverflow { trace, bound });
        }
        Ok(Self { config, d })
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }

    pub fn a(&self) -> u32 {
        self.config.a()
    }

    pub fn degree(&self) -> u64 {
        self.config.degree()
    }

    /// `h^0(G_a, O(d))`, the number of conditions the divisor can absorb.
    pub fn divisor_h0(&self) -> u64 {
        h0_hypersurface(self.n(), self.a(), self.d as i64)
    }

    /// Largest multiplicity among point-like components.
    pub fn max_multiplicity(&self) -> u32 {
        self.config
            .components()
            .iter()
            .filter_map(Component::multiplicity)
            .max()
            .unwrap_or(0)
    }
}

/// Pads `config` with simple free points until it reaches `h^0(O(d))`.
pub fn make_candidate(config: Configuration, d: u32) -> Result<Candidate, HoraceError> {
    let bound = h0_hypersurface(config.n(), config.a(), d as i64);
    let trace = config.trace_degree();
    if trace > bound {
        return Err(HoraceError::TraceOverflow { trace, bound });
    }
    let need = h0_projective(config.n(), d as i64);
    let missing = need.saturating_sub(config.degree());
    let (n, a) = (config.n(), config.a());
    let mut comps = config.into_components();
    comps.extend((0..missing).map(|_| Component::free(1)));
    Candidate::new(Configuration::new(n, a, comps)?, d)
}
