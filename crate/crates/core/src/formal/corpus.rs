use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::deform::{
    build_member, check_slicing, formula_mismatch, membership_violation, Deformation,
    DEFAULT_X_DEGREE,
};
use super::series::{TruncSeries, XPoly};
use super::FormalError;
use crate::exactlin::{Field, PrimeField};
use crate::geom::{exponents_up_to, MultiIndex};
use crate::schemes::{MonomialIdeal, VgModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub trunc: u32,
    pub max_height: usize,
    pub max_rate: u32,
    /// Number of `x` variables.
    pub n_vars: usize,
    pub prime: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            trunc: 6,
            max_height: 4,
            max_rate: 3,
            n_vars: 1,
            prime: PrimeField::DEFAULT_PRIME,
        }
    }
}

fn random_factor(rng: &mut ChaCha8Rng, n_vars: usize) -> MonomialIdeal {
    let mut gens: Vec<MultiIndex> = (0..n_vars)
        .map(|i| {
            let mut e = vec![0; n_vars];
            e[i] = rng.random_range(0..=2);
            MultiIndex(e)
        })
        .collect();
    if n_vars > 1 && rng.random_bool(0.5) {
        gens.push(MultiIndex(
            (0..n_vars).map(|_| rng.random_range(0..=1)).collect(),
        ));
    }
    MonomialIdeal::new(n_vars, gens).expect("valid generators")
}

/// Chain `I_0 ⊂ ... ⊂ I_{h-1}` built by multiplying random ideals.
pub fn random_model(rng: &mut ChaCha8Rng, n_vars: usize, height: usize) -> VgModel {
    let mut layers = vec![random_factor(rng, n_vars)];
    for _ in 1..height {
        let next = layers
            .last()
            .expect("nonempty")
            .product(&random_factor(rng, n_vars));
        layers.push(next);
    }
    layers.reverse();
    VgModel::new(n_vars, layers).expect("chain of finite colength")
}

fn random_element(rng: &mut ChaCha8Rng, field: &PrimeField, ideal: &MonomialIdeal) -> XPoly {
    let n = ideal.n_vars();
    let mut out = XPoly::new();
    if rng.random_bool(0.3) {
        return out;
    }
    for _ in 0..rng.random_range(1..=2) {
        let g = ideal.gens().choose(rng).expect("finite colength").clone();
        let room = DEFAULT_X_DEGREE.saturating_sub(g.degree()).min(1);
        let shift = exponents_up_to(n, room)
            .choose(rng)
            .expect("nonempty")
            .clone();
        let e = out.entry(g.add(&shift)).or_insert(0);
        *e = field.add(*e, field.random_nonzero(rng));
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Random deformation; with `slicing = Some(p)` the `a_{lambda,0}` are
/// chosen so that `y` divides `F_{lambda r}` for `lambda <= p`, where `p` is
/// first lowered to at most `min(height - 1, T / r)`. Returns the `p` used.
pub fn random_deformation(
    rng: &mut ChaCha8Rng,
    params: &CorpusParams,
    slicing: Option<u32>,
) -> Result<(Deformation, Option<u32>), FormalError> {
    let field = PrimeField::new(params.prime).map_err(|e| FormalError::Invalid(e.to_string()))?;
    let rate = rng.random_range(1..=params.max_rate.max(1));
    let max_h = params.max_height.min((params.trunc / rate) as usize).max(1);
    let height = rng.random_range(1..=max_h);
    let model = random_model(rng, params.n_vars, height);
    let mut gens: Vec<Vec<XPoly>> = (0..=height)
        .map(|i| {
            let layer = model.layer(i);
            (0..=params.trunc)
                .map(|_| random_element(rng, &field, &layer))
                .collect()
        })
        .collect();
    let slicing = slicing.map(|p| p.min((height as u32 - 1).min(params.trunc / rate)));
    if let Some(p) = slicing {
        for lambda in 0..=p as usize {
            // (-1)^lambda a_{lambda,0} = -sum_{nu<lambda} (-1)^nu a_{nu,(lambda-nu) r}
            let mut acc = XPoly::new();
            for nu in 0..lambda {
                let j = (lambda - nu) * rate as usize;
                let Some(a) = gens[nu].get(j) else { continue };
                let sign = (nu + lambda + 1) % 2 == 1;
                for (g, &c) in a {
                    let e = acc.entry(g.clone()).or_insert(0);
                    *e = field.add(*e, if sign { field.neg(c) } else { c });
                }
            }
            acc.retain(|_, c| *c != 0);
            gens[lambda][0] = acc;
        }
    }
    Ok((
        Deformation::new(model, rate, params.trunc, params.prime, gens)?,
        slicing,
    ))
}

/// Adds a monomial outside the layer required at some `(alpha, beta)`.
pub fn inject_violation(
    rng: &mut ChaCha8Rng,
    field: &PrimeField,
    f: &TruncSeries,
    model: &VgModel,
    r: u32,
) -> Option<TruncSeries> {
    let h = model.height() as u32;
    let slots: Vec<(u32, u32)> = (0..=f.trunc())
        .flat_map(|alpha| (0..h).map(move |beta| (alpha, beta)))
        .filter(|&(alpha, beta)| beta + alpha / r < h)
        .collect();
    let &(alpha, beta) = slots.choose(rng)?;
    let layer = model.layer((beta + alpha / r) as usize);
    let outside = layer.standard_monomials().ok()?;
    let g = outside.choose(rng)?;
    let mut out = f.clone();
    let existing = f.coeff(alpha, beta).get(g).copied().unwrap_or(0);
    // resulting coefficient is 1 (or 2 if it already was 1)
    let c = if existing == 1 {
        1
    } else {
        field.sub(1, existing)
    };
    out.add_term(field, alpha, beta, g, c);
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub seed: u64,
    pub what: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub cases: u64,
    pub membership_ok: u64,
    pub formula_ok: u64,
    /// Plain cases where the divisibility precondition happened to hold.
    pub slicing_applicable: u64,
    /// Cases built to satisfy the precondition.
    pub slicing_forced: u64,
    pub slicing_ok: u64,
    pub mutants: u64,
    pub mutants_detected: u64,
    pub failures: Vec<CaseFailure>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.membership_ok == self.cases
            && self.formula_ok == self.cases
            && self.slicing_ok == self.slicing_applicable + self.slicing_forced
            && self.mutants_detected == self.mutants
    }
}

/// Runs one seed: a plain deformation and a slicing one, plus a mutant.
pub fn run_case(
    seed: u64,
    params: &CorpusParams,
    report: &mut CorpusReport,
) -> Result<(), FormalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail =
        |report: &mut CorpusReport, what: String| report.failures.push(CaseFailure { seed, what });
    report.cases += 1;

    let (def, _) = random_deformation(&mut rng, params, None)?;
    let field = def.field();
    let f = build_member(&def)?;
    let (model, r) = (def.model(), def.rate());
    match membership_violation(&f, model, r) {
        None => report.membership_ok += 1,
        Some(v) => fail(report, format!("membership at ({}, {})", v.alpha, v.beta)),
    }
    match formula_mismatch(&def, &f) {
        None => report.formula_ok += 1,
        Some((a, b)) => fail(report, format!("explicit formula at ({a}, {b})")),
    }
    let max_p = (model.height() as u32 - 1).min(params.trunc / r);
    for p in 0..=max_p {
        match check_slicing(&f, model, r, p) {
            Ok(ok) => {
                report.slicing_applicable += 1;
                if ok {
                    report.slicing_ok += 1;
                } else {
                    fail(report, format!("slicing p = {p}"));
                }
            }
            Err(FormalError::PreconditionUnmet { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if let Some(mutant) = inject_violation(&mut rng, &field, &f, model, r) {
        report.mutants += 1;
        if membership_violation(&mutant, model, r).is_some() {
            report.mutants_detected += 1;
        } else {
            fail(report, "mutant not detected".into());
        }
    }

    let wanted = rng.random_range(0..params.max_height as u32);
    let (def, p) = random_deformation(&mut rng, params, Some(wanted))?;
    let p = p.expect("slicing requested");
    let f = build_member(&def)?;
    let (model, r) = (def.model(), def.rate());
    match check_slicing(&f, model, r, p) {
        Ok(ok) => {
            report.slicing_forced += 1;
            if ok {
                report.slicing_ok += 1;
            } else {
                fail(report, format!("forced slicing p = {p}"));
            }
        }
        Err(e) => fail(report, format!("forced slicing p = {p}: {e}")),
    }
    Ok(())
}

/// Runs seeds `0..seeds`.
pub fn run_corpus(seeds: u64, params: &CorpusParams) -> Result<CorpusReport, FormalError> {
    let mut report = CorpusReport::default();
    for seed in 0..seeds {
        run_case(seed, params, &mut report)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let report = run_corpus(30, &CorpusParams::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.slicing_forced == 30);
        assert!(report.mutants > 0);
    }

    #[test]
    fn two_chart_variables() {
        let params = CorpusParams {
            n_vars: 2,
            ..CorpusParams::default()
        };
        assert!(run_corpus(10, &params).unwrap().passed());
    }

    #[test]
    fn models_are_chains() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for h in 1..=4 {
            let m = random_model(&mut rng, 2, h);
            assert_eq!(m.height(), h);
        }
    }
}
