use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::candidate::Candidate;
use super::curves::{wronskian_check, Characteristic};
use super::derive::{derive, Derived, Strategy};
use super::HoraceError;
use crate::exactlin::PrimeField;
use crate::h0_projective;
use crate::mix_seed;
use crate::oracle::{generic_h0, OracleOptions, Verdict};
use crate::schemes::{Component, ComponentKind, Configuration, TraceScheme};

pub const CERTIFICATE_SCHEMA: &str = "horace.certificate/1";

/// Largest number of columns handled by brute force by default.
pub const BASE_COLUMNS: u64 = 512;

/// Largest `d` with `C(d + N, N) <= 512`.
pub fn default_base_degree(n: usize) -> u32 {
    let mut d = 0;
    while h0_projective(n, d as i64 + 1) <= BASE_COLUMNS {
        d += 1;
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// Degrees up to this bound go straight to brute force; `None` uses
    /// [`default_base_degree`] of the current dimension.
    pub base_degree: Option<u32>,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            base_degree: None,
            trials: 3,
            prime: PrimeField::DEFAULT_PRIME,
            seed: 0,
            strategy: Strategy::Ascending,
        }
    }
}

impl CertifyOptions {
    fn base_for(&self, n: usize) -> u32 {
        self.base_degree.unwrap_or_else(|| default_base_degree(n))
    }

    fn oracle(&self, seed: u64) -> OracleOptions {
        OracleOptions {
            trials: self.trials,
            prime: self.prime,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepData {
    pub strategy: Strategy,
    pub s: usize,
    pub r: u64,
    pub t: usize,
    pub divisor_h0: u64,
    pub specialized: Vec<usize>,
    pub consumed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    HoraceStep {
        step: StepData,
        dime: Box<CertNode>,
        degue: Box<CertNode>,
    },
    BruteForceLeaf {
        verdict: Verdict,
    },
    WronskianLeaf {
        multiplicities: Vec<u32>,
        characteristic: Characteristic,
    },
    TrivialLeaf {
        component: usize,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub candidate: Candidate,
    pub seed: u64,
    #[serde(flatten)]
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub options: CertifyOptions,
    pub root: CertNode,
}

impl CertNode {
    pub fn depth(&self) -> usize {
        match &self.kind {
            NodeKind::HoraceStep { dime, degue, .. } => 1 + dime.depth().max(degue.depth()),
            _ => 0,
        }
    }

    pub fn leaves(&self) -> usize {
        match &self.kind {
            NodeKind::HoraceStep { dime, degue, .. } => dime.leaves() + degue.leaves(),
            _ => 1,
        }
    }

    fn label(&self) -> String {
        let c = &self.candidate;
        let head = format!("N={} d={} deg={}", c.n(), c.d(), c.degree());
        match &self.kind {
            NodeKind::HoraceStep { step, .. } => {
                format!("horace step {head} s={} r={} t={}", step.s, step.r, step.t)
            }
            NodeKind::BruteForceLeaf { verdict } => {
                format!("brute force {head} h0={}", verdict.computed_h0)
            }
            NodeKind::WronskianLeaf { multiplicities, .. } => {
                format!("wronskian {head} mults={multiplicities:?}")
            }
            NodeKind::TrivialLeaf { reason, .. } => format!("trivial {head} ({reason})"),
        }
    }

    fn render(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{prefix}{}", self.label());
        if let NodeKind::HoraceStep { dime, degue, .. } = &self.kind {
            let inner = format!("{prefix}  ");
            let _ = writeln!(out, "{inner}dime:");
            dime.render(&format!("{inner}  "), out);
            let _ = writeln!(out, "{inner}degue:");
            degue.render(&format!("{inner}  "), out);
        }
    }
}

impl Certificate {
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn leaves(&self) -> usize {
        self.root.leaves()
    }

    /// Indented text rendering of the tree.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.root.render("", &mut out);
        out
    }

    /// Recomputes every step and leaf and checks the stored data.
    pub fn replay(&self) -> Result<(), HoraceError> {
        if self.schema != CERTIFICATE_SCHEMA {
            return Err(HoraceError::Replay(format!(
                "unknown schema {}",
                self.schema
            )));
        }
        replay_node(&self.root, &self.options)
    }
}

fn replay_node(node: &CertNode, opts: &CertifyOptions) -> Result<(), HoraceError> {
    let cand = &node.candidate;
    match &node.kind {
        NodeKind::BruteForceLeaf { verdict } => {
            let again = generic_h0(
                cand.config(),
                cand.d(),
                &OracleOptions {
                    trials: verdict.trials,
                    prime: verdict.prime,
                    seed: verdict.seed,
                },
            )?;
            if verdict.prime != opts.prime
                || verdict.trials != opts.trials
                || &again != verdict
                || again.computed_h0 != 0
            {
                return Err(HoraceError::Replay(format!(
                    "brute-force leaf at d={} differs",
                    cand.d()
                )));
            }
        }
        NodeKind::WronskianLeaf {
            multiplicities,
            characteristic,
        } => {
            if multiplicities != &cand.config().free_multiplicities()
                || !wronskian_check(multiplicities, cand.d(), *characteristic, node.seed)?
            {
                return Err(HoraceError::Replay("wronskian leaf differs".into()));
            }
        }
        NodeKind::TrivialLeaf { component, .. } => {
            if trivial_component(cand) != Some(*component) {
                return Err(HoraceError::Replay("trivial leaf differs".into()));
            }
        }
        NodeKind::HoraceStep { step, dime, degue } => {
            let (expected_dime, derived) = horace_children(cand, step.strategy)?;
            if step_data(&derived) != *step
                || dime.candidate != expected_dime
                || degue.candidate != derived.candidate
            {
                return Err(HoraceError::Replay(format!(
                    "horace step at d={} differs",
                    cand.d()
                )));
            }
            replay_node(dime, opts)?;
            replay_node(degue, opts)?;
        }
    }
    Ok(())
}

fn step_data(derived: &Derived) -> StepData {
    let s = &derived.step;
    StepData {
        strategy: s.strategy,
        s: s.s,
        r: s.r,
        t: s.t,
        divisor_h0: s.divisor_h0,
        specialized: s.specialized.clone(),
        consumed: s.consumed.clone(),
    }
}

/// Index of a component forcing every degree-`d` form to vanish: a fat
/// point of multiplicity above `d`.
fn trivial_component(cand: &Candidate) -> Option<usize> {
    let d = cand.d();
    cand.config()
        .components()
        .iter()
        .position(|c| match c.kind {
            ComponentKind::FreePoint { m } | ComponentKind::DivisorPoint { m } => m > d,
            ComponentKind::SimpleResidue { m } => m - 1 > d,
            ComponentKind::DivisorModel { .. } => false,
        })
}

/// Dime candidate on the hyperplane and the derivative (degue candidate).
fn horace_children(
    cand: &Candidate,
    strategy: Strategy,
) -> Result<(Candidate, Derived), HoraceError> {
    let derived = derive(cand, strategy)?;
    let config = cand.config();
    let mut comps = Vec::new();
    for c in config.constrained_part() {
        match c.trace()? {
            TraceScheme::Empty => {}
            TraceScheme::FatPoint(k) => comps.push(Component::free(k)),
            TraceScheme::Monomial(_) => {
                return Err(HoraceError::Unsupported(
                    "trace of a model that is not a fat point".into(),
                ))
            }
        }
    }
    for &i in &derived.step.specialized {
        comps.push(Component::free(
            config.components()[i].multiplicity().expect("free point"),
        ));
    }
    comps.extend((0..derived.step.r).map(|_| Component::free(1)));
    let dime = Candidate::new(Configuration::new(cand.n() - 1, 1, comps)?, cand.d())?;
    // simplified differential lemma: r >= 0 and deg Z >= h0(O(d))
    if cand.degree() < h0_projective(cand.n(), cand.d() as i64)
        || dime.degree() != derived.step.divisor_h0
    {
        return Err(HoraceError::CandidateViolation(
            "lemma hypotheses fail".into(),
        ));
    }
    Ok((dime, derived))
}

fn brute_force(
    cand: &Candidate,
    opts: &CertifyOptions,
    seed: u64,
) -> Result<CertNode, HoraceError> {
    let verdict = generic_h0(cand.config(), cand.d(), &opts.oracle(seed))?;
    if verdict.computed_h0 != 0 {
        return Err(HoraceError::CertificationFailed {
            candidate: Box::new(cand.clone()),
            reason: format!(
                "h0 = {} after {} trials",
                verdict.computed_h0, verdict.trials
            ),
        });
    }
    Ok(CertNode {
        candidate: cand.clone(),
        seed,
        kind: NodeKind::BruteForceLeaf { verdict },
    })
}

fn certify_node(
    cand: &Candidate,
    opts: &CertifyOptions,
    seed: u64,
) -> Result<CertNode, HoraceError> {
    if cand.a() != 1 {
        return Err(HoraceError::Precondition(
            "certification works with hyperplane divisors (a = 1)".into(),
        ));
    }
    if let Some(component) = trivial_component(cand) {
        return Ok(CertNode {
            candidate: cand.clone(),
            seed,
            kind: NodeKind::TrivialLeaf {
                component,
                reason: "a point of multiplicity above d".into(),
            },
        });
    }
    let config = cand.config();
    if cand.n() == 1 && config.constrained_part().next().is_none() {
        let multiplicities = config.free_multiplicities();
        let characteristic = Characteristic::Prime(opts.prime);
        if wronskian_check(&multiplicities, cand.d(), characteristic, seed)? {
            return Ok(CertNode {
                candidate: cand.clone(),
                seed,
                kind: NodeKind::WronskianLeaf {
                    multiplicities,
                    characteristic,
                },
            });
        }
        return brute_force(cand, opts, seed);
    }
    if cand.d() <= opts.base_for(cand.n()) {
        return brute_force(cand, opts, seed);
    }
    for strategy in [opts.strategy, opts.strategy.other()] {
        let Ok((dime, derived)) = horace_children(cand, strategy) else {
            continue;
        };
        let (dime_node, degue_node) = rayon::join(
            || certify_node(&dime, opts, mix_seed(seed, 1)),
            || certify_node(&derived.candidate, opts, mix_seed(seed, 2)),
        );
        if let (Ok(dime_node), Ok(degue_node)) = (dime_node, degue_node) {
            return Ok(CertNode {
                candidate: cand.clone(),
                seed,
                kind: NodeKind::HoraceStep {
                    step: step_data(&derived),
                    dime: Box::new(dime_node),
                    degue: Box::new(degue_node),
                },
            });
        }
    }
    brute_force(cand, opts, seed)
}

/// Builds a certificate that `cand` is winning.
pub fn certify(cand: &Candidate, opts: &CertifyOptions) -> Result<Certificate, HoraceError> {
    if let Some(model) = cand
        .config()
        .components()
        .iter()
        .find_map(|c| match &c.kind {
            ComponentKind::DivisorModel { model } => Some(model),
            _ => None,
        })
    {
        if model
            .layers()
            .iter()
            .any(|l| l.max_power_exponent().is_none())
        {
            return Err(HoraceError::Unsupported(
                "models whose layers are not powers of the maximal ideal".into(),
            ));
        }
    }
    let root = certify_node(cand, opts, opts.seed)?;
    Ok(Certificate {
        schema: CERTIFICATE_SCHEMA.to_string(),
        options: *opts,
        root,
    })
}
