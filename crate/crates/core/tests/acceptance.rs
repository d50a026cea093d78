//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use horace_core::exactlin::is_prime;
use horace_core::formal::{run_corpus, CorpusParams};
use horace_core::horace::{
    a_of_m, certify, collocation_rank, derive, make_candidate, wronskian_check,
    wronskian_check_basis, Candidate, CertifyOptions, Characteristic, HoraceError, Strategy,
};
use horace_core::oracle::{
    cuspidal_counterexample, generic_h0, is_winning, verify_rational, Classification, OracleOptions,
};
use horace_core::schemes::{Component, ComponentKind, Configuration, VgModel};
use horace_core::{binomial, h0_hypersurface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn double_points() -> Outcome {
    let primes = [1_000_003u64, 1_000_033, 1_000_037];
    for p in primes {
        ensure(is_prime(p), || format!("{p} is not prime"))?;
    }
    let mut special = Vec::new();
    for d in 1..=10u32 {
        for r in 1..=12u32 {
            let config =
                Configuration::free_points(2, &vec![2; r as usize]).map_err(|e| e.to_string())?;
            let mut seen = None;
            for prime in primes {
                for seed in 1..=3 {
                    let opts = OracleOptions {
                        trials: 3,
                        prime,
                        seed,
                    };
                    let v = generic_h0(&config, d, &opts).map_err(|e| e.to_string())?;
                    let key = (v.classification, v.computed_h0);
                    match seen {
                        None => seen = Some(key),
                        Some(k) => ensure(k == key, || {
                            format!("d={d} r={r}: {key:?} at p={prime} seed={seed} vs {k:?}")
                        })?,
                    }
                }
            }
            if seen.expect("ran").0 == Classification::Special {
                special.push((d, r));
            }
        }
    }
    ensure(special == vec![(2, 2), (4, 5)], || {
        format!("special systems {special:?}")
    })?;

    for (d, r) in [(2u32, 2usize), (4, 5), (3, 3), (5, 7), (6, 9)] {
        let config = Configuration::free_points(2, &vec![2; r]).map_err(|e| e.to_string())?;
        let v = generic_h0(
            &config,
            d,
            &OracleOptions {
                trials: 3,
                prime: primes[0],
                seed: 1,
            },
        )
        .map_err(|e| e.to_string())?;
        let check = verify_rational(&config, d, primes[0], 7, 1000).map_err(|e| e.to_string())?;
        ensure(
            check.kernel_rational == v.computed_h0 && check.rank_rational == check.rank_mod_p,
            || {
                format!(
                    "d={d} r={r}: rational kernel {} vs {}",
                    check.kernel_rational, v.computed_h0
                )
            },
        )?;
    }
    Ok("120 systems x 3 primes x 3 seeds; special exactly (2,2), (4,5); 5 exact re-checks".into())
}

fn counterexample() -> Outcome {
    let mut lines = Vec::new();
    for p in [3u64, 5, 7] {
        let lo = (p - 2).max(1) as u32;
        for d in lo..lo + 3 {
            let rep = cuspidal_counterexample(p, d, 11).map_err(|e| e.to_string())?;
            let formula = d as u64 * p + 1 - (p - 1) * (p - 2) / 2;
            ensure(rep.dim_vd == formula && rep.h0_formula == formula, || {
                format!("p={p} d={d}: dim {} vs {formula}", rep.dim_vd)
            })?;
            ensure(rep.kernel_dim >= 1 && rep.exhibits_failure(), || {
                format!("p={p} d={d}: kernel {}", rep.kernel_dim)
            })?;
            lines.push(format!("({p},{d})"));
        }
    }
    Ok(format!(
        "dim V_d matches and kernel nonzero at {}",
        lines.join(" ")
    ))
}

fn random_free_candidate(rng: &mut ChaCha8Rng, n: usize, d: u32, max_m: u32) -> Option<Candidate> {
    let h0 = binomial(d as u64 + n as u64, n as u64);
    let mut mults = Vec::new();
    let mut deg = 0;
    let target = h0 + rng.random_range(0..=2);
    while deg < target {
        let m = rng.random_range(1..=max_m);
        deg += binomial(m as u64 - 1 + n as u64, n as u64);
        mults.push(m);
    }
    let config = Configuration::free_points(n, &mults).ok()?;
    make_candidate(config, d).ok()
}

fn soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut certified, mut failed, mut stepped) = (0, 0, 0);
    let mut made = 0;
    while made < 200 {
        let n = rng.random_range(2..=3);
        let d = rng.random_range(1..=8);
        let Some(cand) = random_free_candidate(&mut rng, n, d, 3) else {
            continue;
        };
        made += 1;
        let opts = CertifyOptions {
            base_degree: Some(rng.random_range(0..=2)),
            trials: 2,
            seed: made,
            ..CertifyOptions::default()
        };
        match certify(&cand, &opts) {
            Ok(cert) => {
                certified += 1;
                if cert.depth() >= 1 {
                    stepped += 1;
                }
                let check = OracleOptions {
                    trials: 3,
                    prime: 1_000_033,
                    seed: 99 + made,
                };
                let winning =
                    is_winning(&cert.root.candidate, &check).map_err(|e| e.to_string())?;
                ensure(winning, || {
                    format!("candidate {made} certified but not winning")
                })?;
                cert.replay()
                    .map_err(|e| format!("candidate {made}: {e}"))?;
            }
            Err(HoraceError::CertificationFailed { .. }) => failed += 1,
            Err(e) => return Err(format!("candidate {made}: {e}")),
        }
    }
    ensure(stepped > 0, || {
        "no certificate used a reduction step".into()
    })?;
    Ok(format!(
        "200 candidates: {certified} certified ({stepped} with reduction steps), {failed} refused, 0 discrepancies"
    ))
}

fn random_component(rng: &mut ChaCha8Rng, n: usize) -> Component {
    let m = rng.random_range(1..=8);
    match rng.random_range(0..4) {
        0 => Component::divisor_point(m),
        1 => Component::simple_residue(m.max(2)),
        2 => Component::model(VgModel::fat_point(n - 1, m)),
        _ => {
            let height = rng.random_range(1..=4);
            Component::model(horace_core::formal::random_model(rng, n - 1, height))
        }
    }
}

fn free_count(config: &Configuration, pred: impl Fn(u32) -> bool) -> usize {
    config
        .components()
        .iter()
        .filter(|c| matches!(c.kind, ComponentKind::FreePoint { m } if pred(m)))
        .count()
}

fn bookkeeping() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for i in 0..1000 {
        let n = rng.random_range(2..=4);
        let c = random_component(&mut rng, n);
        let total = c.degree(n);
        let trace = c.trace_degree(n).map_err(|e| e.to_string())?;
        let residual = c.residual().map_or(0, |r| r.degree(n));
        ensure(total == trace + residual, || {
            format!(
                "component {i} {:?}: {total} != {trace} + {residual}",
                c.kind
            )
        })?;
    }

    let mut derived = 0;
    let mut attempts = 0;
    while derived < 500 {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {derived} derivable candidates found"));
        }
        let n = rng.random_range(1..=3);
        let a = if n >= 2 { rng.random_range(1..=2) } else { 1 };
        let d = rng.random_range(a..=8);
        let mut comps: Vec<Component> = (0..rng.random_range(0..=8))
            .map(|_| Component::free(rng.random_range(1..=4)))
            .collect();
        for _ in 0..rng.random_range(0..=2) {
            let m = rng.random_range(2..=4);
            comps.push(if rng.random_bool(0.5) {
                Component::divisor_point(m)
            } else {
                Component::simple_residue(m)
            });
        }
        let Ok(config) = Configuration::new(n, a, comps) else {
            continue;
        };
        let Ok(cand) = make_candidate(config, d) else {
            continue;
        };
        let strategy = if rng.random_bool(0.5) {
            Strategy::Ascending
        } else {
            Strategy::Descending
        };
        let Ok(out) = derive(&cand, strategy) else {
            continue;
        };
        derived += 1;
        let h0 = h0_hypersurface(n, a, d as i64);
        ensure(out.candidate.degree() + h0 == cand.degree(), || {
            format!(
                "derivative degree {} != {} - {h0}",
                out.candidate.degree(),
                cand.degree()
            )
        })?;

        let (before, after) = (cand.config(), out.candidate.config());
        for m in 1..=4 {
            ensure(
                free_count(before, |x| x == m) > 0 || free_count(after, |x| x == m) == 0,
                || format!("a free {m}-fold point appeared"),
            )?;
        }
        // disjunctive form, with m the top multiplicity, for the descending order
        if let Ok(desc) = derive(&cand, Strategy::Descending) {
            let m = before.free_multiplicities().into_iter().max().unwrap_or(1);
            let small = free_count(before, |x| x < m);
            for k in 0..=small {
                let ok = free_count(desc.candidate.config(), |x| x == m) == 0
                    || free_count(desc.candidate.config(), |x| x < m) >= k;
                ensure(ok, || format!("monotonicity fails for m={m}, K={k}"))?;
            }
        }
    }
    Ok(format!("1000 additivity checks; 500 derivations ({attempts} drawn) with exact degrees and monotonicity"))
}

fn formal_suite() -> Outcome {
    let report = run_corpus(100, &CorpusParams::default()).map_err(|e| e.to_string())?;
    ensure(report.passed() && report.cases == 100, || {
        format!("{report:?}")
    })?;
    Ok(format!(
        "100 deformations; {} slicing checks ({} forced); {} mutants detected",
        report.slicing_ok, report.slicing_forced, report.mutants_detected
    ))
}

fn dimension_one() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes = [13u64, 17, 101, 1_000_003];
    let mut singular = 0;
    for i in 0..100 {
        let d = rng.random_range(0..=12u32);
        let mults: Vec<u32> = (0..rng.random_range(1..=5))
            .map(|_| rng.random_range(1..=6))
            .collect();
        let p = primes[rng.random_range(0..primes.len())];
        let chr = Characteristic::Prime(p);
        let w = wronskian_check(&mults, d, chr, i).map_err(|e| e.to_string())?;
        let exps: Vec<u64> = (0..=d as u64).collect();
        let rank = collocation_rank(&exps, &mults, chr, i).map_err(|e| e.to_string())?;
        let full = mults
            .iter()
            .map(|&m| m as usize)
            .sum::<usize>()
            .min(exps.len());
        ensure(w == (rank == full), || {
            format!("mults {mults:?} d={d} p={p}: wronskian {w}, rank {rank} of {full}")
        })?;
        if !w {
            singular += 1;
        }
    }
    let chr = Characteristic::Prime(2);
    let w = wronskian_check_basis(&[0, 2], &[2], chr, 0).map_err(|e| e.to_string())?;
    let rank = collocation_rank(&[0, 2], &[2], chr, 0).map_err(|e| e.to_string())?;
    ensure(!w && rank == 1, || {
        format!("degeneracy missed: wronskian {w}, rank {rank}")
    })?;
    Ok(format!(
        "100 vectors agree ({singular} singular); 1, t^2 over F_2 detected"
    ))
}

fn planner() -> Outcome {
    for (m, want) in [(2u32, 3u32), (3, 4)] {
        // least a with (m-1) a < (a-1)(m+n-1), n = 1, in exact integers
        let direct = (1u32..)
            .find(|&a| (m - 1) * a < (a - 1) * m)
            .expect("exists");
        let got = a_of_m(m, 1);
        ensure(got == want && direct == want, || {
            format!("A({m}) = {got}, direct {direct}")
        })?;
    }
    Ok("A(2) = 3, A(3) = 4".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "plane double-point corpus",
            limit: Some(Duration::from_secs(30)),
            run: double_points,
        },
        Criterion {
            name: "counterexample reproduction",
            limit: Some(Duration::from_secs(5)),
            run: counterexample,
        },
        Criterion {
            name: "certificate soundness",
            limit: Some(Duration::from_secs(60)),
            run: soundness,
        },
        Criterion {
            name: "bookkeeping identities",
            limit: None,
            run: bookkeeping,
        },
        Criterion {
            name: "formal-lemma suite",
            limit: None,
            run: formal_suite,
        },
        Criterion {
            name: "dimension-one base",
            limit: None,
            run: dimension_one,
        },
        Criterion {
            name: "planner values",
            limit: None,
            run: planner,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!(
                "took {:.2}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS {}: {msg} [{:.2}s]", c.name, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {msg} [{:.2}s]", c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
