use serde::{Deserialize, Serialize};

use super::candidate::Candidate;
use super::HoraceError;
use crate::schemes::{point_degree, Component, ComponentKind, Configuration};
use crate::{h0_hypersurface, h0_projective};

/// Order in which free points are specialized onto the divisor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Smallest multiplicities first.
    #[default]
    Ascending,
    /// Largest multiplicities first.
    Descending,
}

impl Strategy {
    pub fn other(self) -> Self {
        match self {
            Self::Ascending => Self::Descending,
            Self::Descending => Self::Ascending,
        }
    }
}

/// The bookkeeping of one derivative step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub s: usize,
    pub r: u64,
    pub t: usize,
    /// `h^0(G_a, O(d))`.
    pub divisor_h0: u64,
    /// Component indices of the `s` points moved onto the divisor.
    pub specialized: Vec<usize>,
    /// Component indices of the `r` points cut down to one trace condition.
    pub consumed: Vec<usize>,
    pub strategy: Strategy,
    /// The derivative, at divisor degree `a` (not yet checked as a candidate).
    pub config: Configuration,
}

/// Free component indices ordered for specialization; ties keep their
/// position in the configuration.
pub fn free_order(config: &Configuration, strategy: Strategy) -> Vec<usize> {
    let mut idx: Vec<usize> = config
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_free())
        .map(|(i, _)| i)
        .collect();
    let mult = |i: &usize| config.components()[*i].multiplicity().expect("free point");
    match strategy {
        Strategy::Ascending => idx.sort_by_key(mult),
        Strategy::Descending => idx.sort_by_key(|i| std::cmp::Reverse(mult(i))),
    }
    idx
}

/// Computes `s`, `r` and the derivative configuration of `cand`.
pub fn derivation(cand: &Candidate, strategy: Strategy) -> Result<Derivation, HoraceError> {
    let config = cand.config();
    let n = config.n();
    let a = config.a();
    if cand.d() < a {
        return Err(HoraceError::Precondition(format!(
            "degree {} is below the divisor degree {a}",
            cand.d()
        )));
    }
    let divisor_h0 = cand.divisor_h0();
    let order = free_order(config, strategy);
    let t = order.len();
    let mult = |i: usize| config.components()[i].multiplicity().expect("free point");

    let mut used = config.trace_degree();
    let mut s = 0;
    while s < t {
        let next = used + point_degree(mult(order[s]), n - 1);
        if next > divisor_h0 {
            break;
        }
        used = next;
        s += 1;
    }
    let r = divisor_h0 - used;
    if s as u64 + r > t as u64 {
        return Err(HoraceError::NotDerivable { r, s, t });
    }
    let specialized: Vec<usize> = order[..s].to_vec();
    let consumed: Vec<usize> = order[s..s + r as usize].to_vec();

    let mut comps: Vec<Component> = Vec::new();
    let touched = |i: &usize| specialized.contains(i) || consumed.contains(i);
    comps.extend(
        config
            .components()
            .iter()
            .enumerate()
            .filter(|(i, c)| c.is_free() && !touched(i))
            .map(|(_, c)| c.clone()),
    );
    comps.extend(config.constrained_part().filter_map(Component::residual));
    for &i in &specialized {
        let m = mult(i);
        if m >= 2 {
            comps.push(Component::divisor_point(m - 1));
        }
    }
    for &i in &consumed {
        let m = mult(i);
        if m >= 2 {
            comps.push(Component::simple_residue(m));
        }
    }
    let derived = Configuration::new(n, a, comps)?;
    if derived.degree() + divisor_h0 != config.degree() {
        return Err(HoraceError::CandidateViolation(format!(
            "derivative has degree {} instead of {} - {divisor_h0}",
            derived.degree(),
            config.degree()
        )));
    }
    Ok(Derivation {
        s,
        r,
        t,
        divisor_h0,
        specialized,
        consumed,
        strategy,
        config: derived,
    })
}

/// A derivative that is again a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub candidate: Candidate,
    pub step: Derivation,
}

/// The derivative of `cand` at degree `d - a`.
pub fn derive(cand: &Candidate, strategy: Strategy) -> Result<Derived, HoraceError> {
    let step = derivation(cand, strategy)?;
    let candidate = Candidate::new(step.config.clone(), cand.d() - cand.a()).map_err(|e| {
        HoraceError::CandidateViolation(format!("derivative is not a candidate: {e}"))
    })?;
    Ok(Derived { candidate, step })
}

/// The derivative with its residues moved onto a divisor of degree `a - 1`.
pub fn derive_concentrated(cand: &Candidate, strategy: Strategy) -> Result<Derived, HoraceError> {
    let a = cand.a();
    if a < 2 {
        return Err(HoraceError::Precondition(
            "a concentrated derivative needs divisor degree at least 2".into(),
        ));
    }
    let step = derivation(cand, strategy)?;
    let d = cand.d() - a;
    let lowered = step.config.with_divisor_degree(a - 1)?;
    let trace = lowered.trace_degree();
    let bound = h0_hypersurface(cand.n(), a - 1, d as i64);
    if trace > bound {
        return Err(HoraceError::TraceOverflow { trace, bound });
    }
    let candidate = Candidate::new(lowered, d)
        .map_err(|e| HoraceError::CandidateViolation(format!("concentrated derivative: {e}")))?;
    Ok(Derived { candidate, step })
}

/// Result of the special second derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondSpecial {
    pub candidate: Candidate,
    pub first: Derivation,
    pub second: Derivation,
    /// Point residues of the plain second derivative.
    pub r2: u64,
    /// How many of them became free points.
    pub freed: u64,
}

/// Derives twice, then frees `min(h^0(O(alpha)) - 1, r2)` of the point
/// residues (largest multiplicity first) and keeps the rest on a divisor of
/// degree `a - alpha`.
pub fn derive_second_special(
    cand: &Candidate,
    alpha: u32,
    strategy: Strategy,
) -> Result<SecondSpecial, HoraceError> {
    let a = cand.a();
    if alpha == 0 || alpha >= a {
        return Err(HoraceError::Precondition(format!(
            "split degree {alpha} must satisfy 0 < alpha < a = {a}"
        )));
    }
    let first = derive(cand, strategy)?;
    let second = derivation(&first.candidate, strategy)?;
    let comps = second.config.components();
    let mut residues: Vec<usize> = comps
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c.kind, ComponentKind::DivisorPoint { .. }))
        .map(|(i, _)| i)
        .collect();
    let r2 = residues.len() as u64;
    let freed = r2.min(h0_projective(cand.n(), alpha as i64) - 1);
    residues.sort_by_key(|&i| std::cmp::Reverse(comps[i].multiplicity().expect("point")));
    let to_free = &residues[..freed as usize];
    let out: Vec<Component> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if to_free.contains(&i) {
                Component::free(c.multiplicity().expect("point"))
            } else {
                c.clone()
            }
        })
        .collect();
    let config = Configuration::new(cand.n(), a - alpha, out)?;
    let d = cand.d() - 2 * a;
    let candidate = Candidate::new(config, d)
        .map_err(|e| HoraceError::CandidateViolation(format!("second derivative: {e}")))?;
    Ok(SecondSpecial {
        candidate,
        first: first.step,
        second,
        r2,
        freed,
    })
}
