use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    expected_h0, Classification, OracleError, OracleOptions, Verdict, Witness, VERDICT_SCHEMA,
};
use crate::exactlin::PrimeField;
use crate::geom::{sample_point_on, GeomError, Hypersurface, ProjPoint};
use crate::horace::Candidate;
use crate::schemes::{conditions_matrix, Configuration};

/// Rng of one trial: stream `trial` of the ChaCha generator seeded by `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// A configuration with every support assigned, plus its divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub config: Configuration,
    pub divisor: Hypersurface,
}

/// Divisors drawn before giving up on finding smooth points on one.
const DIVISOR_DRAWS: usize = 16;

/// Draws a divisor of degree `a`, points of it for the constrained
/// components and points with nonzero coordinates for the free ones.
///
/// A divisor without enough smooth rational points (say an irreducible
/// quadric on `P^1`) is replaced by a fresh one.
pub fn sample_instance(
    field: &PrimeField,
    config: &Configuration,
    rng: &mut ChaCha8Rng,
) -> Result<Instance, OracleError> {
    let n = config.n();
    let mut last = None;
    for _ in 0..DIVISOR_DRAWS {
        let divisor = Hypersurface::random(field, n, config.a(), rng);
        let mut out = config.clone();
        let mut ok = true;
        for c in out.components_mut() {
            let p = if c.is_free() {
                ProjPoint::random_general(field, n, rng)
            } else {
                match sample_point_on(field, &divisor, rng) {
                    Ok(p) => p,
                    Err(e @ GeomError::SamplingExhausted { .. }) => {
                        last = Some(e);
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            c.support = Some(p);
        }
        if ok {
            return Ok(Instance {
                config: out,
                divisor,
            });
        }
    }
    Err(last.expect("at least one failed draw").into())
}

fn check_preconditions(opts: &OracleOptions, d: u32) -> Result<PrimeField, OracleError> {
    if opts.trials == 0 {
        return Err(OracleError::Precondition(
            "at least one trial is required".into(),
        ));
    }
    if opts.prime <= d as u64 {
        return Err(OracleError::Precondition(format!(
            "prime {} must exceed the degree {d}",
            opts.prime
        )));
    }
    Ok(PrimeField::new(opts.prime)?)
}

fn run_trial(
    field: &PrimeField,
    config: &Configuration,
    d: u32,
    seed: u64,
    trial: usize,
) -> Result<(u64, Instance), OracleError> {
    let mut rng = trial_rng(seed, trial);
    let inst = sample_instance(field, config, &mut rng)?;
    let m = conditions_matrix(field, &inst.config, d, &inst.divisor)?;
    Ok(((m.cols() - m.rank()) as u64, inst))
}

/// Kernel dimension of a single trial, rebuilt from scratch.
pub fn replay_trial(
    config: &Configuration,
    d: u32,
    prime: u64,
    seed: u64,
    trial: usize,
) -> Result<u64, OracleError> {
    let field = check_preconditions(
        &OracleOptions {
            trials: 1,
            prime,
            seed,
        },
        d,
    )?;
    Ok(run_trial(&field, config, d, seed, trial)?.0)
}

/// Minimum over `opts.trials` random instances of `h^0(I_Z(d))`.
pub fn generic_h0(
    config: &Configuration,
    d: u32,
    opts: &OracleOptions,
) -> Result<Verdict, OracleError> {
    let field = check_preconditions(opts, d)?;
    let config = config.unassigned();
    let results: Vec<(u64, Instance)> = (0..opts.trials)
        .into_par_iter()
        .map(|t| run_trial(&field, &config, d, opts.seed, t))
        .collect::<Result<_, _>>()?;
    let (trial, (kernel, inst)) = results
        .into_iter()
        .enumerate()
        .min_by_key(|(t, (k, _))| (*k, *t))
        .expect("at least one trial");
    let expected = expected_h0(&config, d);
    debug_assert!(kernel >= expected);
    Ok(Verdict {
        schema: VERDICT_SCHEMA.to_string(),
        degree: config.degree(),
        config,
        d,
        expected_h0: expected,
        computed_h0: kernel,
        classification: if kernel == expected {
            Classification::MaximalRank
        } else {
            Classification::Special
        },
        trials: opts.trials,
        prime: opts.prime,
        seed: opts.seed,
        witness: Witness {
            trial,
            divisor: inst.divisor.coeffs().to_vec(),
            supports: inst
                .config
                .components()
                .iter()
                .map(|c| c.support.clone().expect("assigned"))
                .collect(),
        },
    })
}

/// Whether some trial shows `h^0(I_Z(d)) = 0`.
pub fn is_winning(cand: &Candidate, opts: &OracleOptions) -> Result<bool, OracleError> {
    Ok(generic_h0(cand.config(), cand.d(), opts)?.computed_h0 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::Component;

    fn opts() -> OracleOptions {
        OracleOptions {
            trials: 2,
            prime: 1_000_003,
            seed: 1,
        }
    }

    #[test]
    fn plane_double_points() {
        let two = Configuration::free_points(2, &[2, 2]).unwrap();
        let v = generic_h0(&two, 2, &opts()).unwrap();
        assert_eq!(
            (v.expected_h0, v.computed_h0, v.classification),
            (0, 1, Classification::Special)
        );
        let v = generic_h0(&two, 3, &opts()).unwrap();
        assert_eq!(
            (v.expected_h0, v.computed_h0, v.classification),
            (4, 4, Classification::MaximalRank)
        );
        let five = Configuration::free_points(2, &[2; 5]).unwrap();
        let v = generic_h0(&five, 4, &opts()).unwrap();
        assert_eq!(
            (v.computed_h0, v.classification),
            (1, Classification::Special)
        );
    }

    #[test]
    fn deterministic_and_replayable() {
        let c = Configuration::new(
            2,
            2,
            vec![
                Component::free(2),
                Component::divisor_point(2),
                Component::simple_residue(3),
            ],
        )
        .unwrap();
        let a = generic_h0(&c, 4, &opts()).unwrap();
        let b = generic_h0(&c, 4, &opts()).unwrap();
        assert_eq!(a, b);
        let k = replay_trial(&c, 4, a.prime, a.seed, a.witness.trial).unwrap();
        assert_eq!(k, a.computed_h0);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), a);
    }

    #[test]
    fn preconditions() {
        let c = Configuration::free_points(2, &[1]).unwrap();
        let small = OracleOptions { prime: 3, ..opts() };
        assert!(matches!(
            generic_h0(&c, 3, &small),
            Err(OracleError::Precondition(_))
        ));
        let none = OracleOptions {
            trials: 0,
            ..opts()
        };
        assert!(generic_h0(&c, 1, &none).is_err());
    }

    #[test]
    fn winning_simple_points() {
        let cand = Candidate::new(Configuration::free_points(2, &[1, 1, 1]).unwrap(), 1).unwrap();
        assert!(is_winning(&cand, &opts()).unwrap());
    }
}
