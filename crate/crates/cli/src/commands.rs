use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use horace_core::formal::{
    build_member, inject_violation, membership_violation, random_deformation, run_corpus,
    CorpusParams, CorpusReport,
};
use horace_core::horace::{
    certify, make_candidate, plan_schedule, Candidate, Certificate, CertifyOptions, HoraceError,
    ScheduleReport,
};
use horace_core::oracle::{
    cuspidal_counterexample, generic_h0, CounterexampleReport, OracleOptions, Verdict,
};
use horace_core::schemes::{Component, Configuration};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cli::{
    CertifyArgs, Command, CounterexampleArgs, DimArgs, FormalArgs, OracleArgs, PlanArgs, SystemArgs,
};

/// Result of a command, as stored in run records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Verdict(Verdict),
    Certificate(Certificate),
    CertificationFailed {
        candidate: Candidate,
        reason: String,
    },
    Counterexample(CounterexampleReport),
    FormalCheck(FormalSummary),
    Schedule(ScheduleReport),
}

/// Where a mutated member left its layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutantHit {
    pub seed: u64,
    pub alpha: u32,
    pub beta: u32,
    pub layer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSummary {
    pub params: CorpusParams,
    pub seeds: u64,
    pub inject_mutant: bool,
    /// Members mutated in mutant mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mutants: Option<u64>,
    pub passed: bool,
    /// Corpus counts; absent in mutant mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<CorpusReport>,
    /// Violations found on mutated members.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub violations: Vec<MutantHit>,
}

/// Whether a command reached a positive or a definitive negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Positive,
    Negative,
}

pub struct Outcome {
    pub payload: Payload,
    pub status: Status,
    pub seed: Option<u64>,
    pub prime: Option<u64>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dim(_) => "dim",
            Command::Certify(_) => "certify",
            Command::Counterexample(_) => "counterexample",
            Command::FormalCheck(_) => "formal-check",
            Command::Plan(_) => "plan",
            Command::Replay(_) => "replay",
        }
    }

    /// Replaces the field prime, for commands that have one.
    pub fn set_prime(&mut self, prime: u64) {
        match self {
            Command::Dim(a) => a.oracle.prime = prime,
            Command::Certify(a) => a.oracle.prime = prime,
            Command::FormalCheck(a) => a.prime = prime,
            _ => {}
        }
    }
}

fn configuration(s: &SystemArgs) -> Result<Configuration> {
    let mut comps: Vec<Component> = s.mults.0.iter().map(|&m| Component::free(m)).collect();
    comps.extend(
        s.divisor_mults
            .0
            .iter()
            .map(|&m| Component::divisor_point(m)),
    );
    Configuration::new(s.n, s.a, comps).context("invalid configuration")
}

fn oracle_options(o: &OracleArgs) -> OracleOptions {
    OracleOptions {
        trials: o.trials,
        prime: o.prime,
        seed: o.seed,
    }
}

pub fn compute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Dim(a) => dim(a),
        Command::Certify(a) => certify_cmd(a),
        Command::Counterexample(a) => counterexample(a),
        Command::FormalCheck(a) => formal(a),
        Command::Plan(a) => Ok(plan(a)),
        Command::Replay(_) => bail!("replay is not a recordable command"),
    }
}

fn dim(a: &DimArgs) -> Result<Outcome> {
    let config = configuration(&a.system)?;
    let verdict = generic_h0(&config, a.system.d, &oracle_options(&a.oracle))?;
    let status = if verdict.is_maximal_rank() {
        Status::Positive
    } else {
        Status::Negative
    };
    Ok(Outcome {
        payload: Payload::Verdict(verdict),
        status,
        seed: Some(a.oracle.seed),
        prime: Some(a.oracle.prime),
    })
}

fn certify_cmd(a: &CertifyArgs) -> Result<Outcome> {
    let config = configuration(&a.system)?;
    let cand = make_candidate(config, a.system.d)?;
    let opts = CertifyOptions {
        base_degree: a.base_degree,
        trials: a.oracle.trials,
        prime: a.oracle.prime,
        seed: a.oracle.seed,
        strategy: a.strategy.into(),
    };
    let (payload, status) = match certify(&cand, &opts) {
        Ok(cert) => (Payload::Certificate(cert), Status::Positive),
        Err(HoraceError::CertificationFailed { candidate, reason }) => (
            Payload::CertificationFailed {
                candidate: *candidate,
                reason,
            },
            Status::Negative,
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome {
        payload,
        status,
        seed: Some(a.oracle.seed),
        prime: Some(a.oracle.prime),
    })
}

fn counterexample(a: &CounterexampleArgs) -> Result<Outcome> {
    let report = cuspidal_counterexample(a.p, a.d, a.seed)?;
    let status = if report.exhibits_failure() {
        Status::Positive
    } else {
        Status::Negative
    };
    Ok(Outcome {
        payload: Payload::Counterexample(report),
        status,
        seed: Some(a.seed),
        prime: Some(a.p),
    })
}

fn formal(a: &FormalArgs) -> Result<Outcome> {
    let params = CorpusParams {
        trunc: a.trunc,
        max_height: a.height,
        max_rate: a.rate,
        n_vars: a.n_vars,
        prime: a.prime,
    };
    if a.height == 0 || a.rate == 0 || a.n_vars == 0 {
        bail!("height, rate and n-vars must be positive");
    }
    let summary = if a.inject_mutant {
        let mut violations = Vec::new();
        let mut mutants = 0;
        for seed in 0..a.seeds {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (def, _) = random_deformation(&mut rng, &params, None)?;
            let f = build_member(&def)?;
            let Some(bad) = inject_violation(&mut rng, &def.field(), &f, def.model(), def.rate())
            else {
                continue;
            };
            mutants += 1;
            if let Some(v) = membership_violation(&bad, def.model(), def.rate()) {
                violations.push(MutantHit {
                    seed,
                    alpha: v.alpha,
                    beta: v.beta,
                    layer: v.layer,
                });
            }
        }
        FormalSummary {
            params,
            seeds: a.seeds,
            inject_mutant: true,
            mutants: Some(mutants),
            passed: mutants == 0,
            report: None,
            violations,
        }
    } else {
        let report = run_corpus(a.seeds, &params)?;
        FormalSummary {
            params,
            seeds: a.seeds,
            inject_mutant: false,
            mutants: None,
            passed: report.passed(),
            report: Some(report),
            violations: Vec::new(),
        }
    };
    let status = if summary.passed {
        Status::Positive
    } else {
        Status::Negative
    };
    Ok(Outcome {
        payload: Payload::FormalCheck(summary),
        status,
        seed: None,
        prime: Some(a.prime),
    })
}

fn plan(a: &PlanArgs) -> Outcome {
    Outcome {
        payload: Payload::Schedule(plan_schedule(a.m, a.n + 1, a.delta)),
        status: Status::Positive,
        seed: None,
        prime: None,
    }
}

/// Human-readable rendering of a payload.
pub fn render(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Verdict(v) => {
            let _ = writeln!(
                out,
                "N = {}, d = {}, deg Z = {}",
                v.config.n(),
                v.d,
                v.degree
            );
            let _ = writeln!(out, "expected h0 = {}", v.expected_h0);
            let _ = writeln!(
                out,
                "computed h0 = {} (best of {} trials, p = {}, seed {})",
                v.computed_h0, v.trials, v.prime, v.seed
            );
            let _ = writeln!(
                out,
                "{}",
                if v.is_maximal_rank() {
                    "maximal rank"
                } else {
                    "special (not refuted)"
                }
            );
        }
        Payload::Certificate(c) => {
            let _ = writeln!(out, "winning: depth {}, {} leaves", c.depth(), c.leaves());
            out.push_str(&c.summary());
        }
        Payload::CertificationFailed { candidate, reason } => {
            let _ = writeln!(
                out,
                "certification failed for N = {}, d = {}, deg Z = {}: {reason}",
                candidate.n(),
                candidate.d(),
                candidate.degree()
            );
        }
        Payload::Counterexample(r) => {
            let _ = writeln!(out, "p = {}, d = {}", r.p, r.d);
            let _ = writeln!(out, "h0 formula = {}, dim V_d = {}", r.h0_formula, r.dim_vd);
            let _ = writeln!(
                out,
                "deg Z = {}, kernel dimension = {}",
                r.degree_z, r.kernel_dim
            );
            let _ = writeln!(
                out,
                "{}",
                if r.exhibits_failure() {
                    "maximal rank fails"
                } else {
                    "no failure exhibited"
                }
            );
        }
        Payload::FormalCheck(s) => {
            if let Some(r) = &s.report {
                let _ = writeln!(
                    out,
                    "{} cases: membership {}/{}, explicit formula {}/{}, slicing {}/{}, mutants caught {}/{}",
                    r.cases,
                    r.membership_ok,
                    r.cases,
                    r.formula_ok,
                    r.cases,
                    r.slicing_ok,
                    r.slicing_applicable + r.slicing_forced,
                    r.mutants_detected,
                    r.mutants
                );
                for f in &r.failures {
                    let _ = writeln!(out, "  seed {}: {}", f.seed, f.what);
                }
            } else {
                let _ = writeln!(
                    out,
                    "{} of {} mutated members flagged",
                    s.violations.len(),
                    s.mutants.unwrap_or(0)
                );
                for v in s.violations.iter().take(5) {
                    let _ = writeln!(
                        out,
                        "  seed {}: F_({},{}) leaves layer {}",
                        v.seed, v.alpha, v.beta, v.layer
                    );
                }
            }
            let _ = writeln!(out, "{}", if s.passed { "PASS" } else { "FAIL" });
        }
        Payload::Schedule(s) => {
            let _ = writeln!(out, "m = {}, N = {}", s.m, s.big_n);
            if s.trivial {
                let _ = writeln!(out, "trivial schedule: simple points");
            }
            if let Some(a) = s.a_of_m {
                let _ = writeln!(out, "A({}) = {a}", s.m);
            }
            if let (Some(nf), Some(alpha)) = (s.n_free, s.alpha) {
                let _ = writeln!(out, "N_free = {nf}, alpha = {alpha}");
            }
            for step in &s.steps {
                let _ = writeln!(out, "{}: {}", step.name, step.description);
                for c in &step.checks {
                    let _ = writeln!(out, "  check {c}");
                }
            }
            if !s.existential_constants.is_empty() {
                let _ = writeln!(out, "constants only known to exist:");
                for c in &s.existential_constants {
                    let _ = writeln!(out, "  {}: {}", c.name, c.meaning);
                }
            }
        }
    }
    out
}
