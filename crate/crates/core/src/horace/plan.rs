//! The three-step induction schedule, with every constant that is only
//! known to exist replaced by an explicit per-instance check.

use serde::{Deserialize, Serialize};

use crate::{binomial, h0_projective};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub name: String,
    pub description: String,
    /// Inequalities to verify exactly on each instance.
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistentialConstant {
    pub name: String,
    pub meaning: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub m: u32,
    /// Ambient dimension `N`.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Divisor dimension `n = N - 1`.
    pub n: usize,
    pub trivial: bool,
    /// Least `a` with `(m-1) a < (a-1)(m+n-1)`; absent when `m = 1`.
    pub a_of_m: Option<u32>,
    /// `b_0 >= A(m)`; the other term `a_0(m-1)` is existential, so `A(m)` is
    /// used as a lower bound.
    pub b0_lower_bound: Option<u32>,
    /// Number of free points `N_free` needed in the final step, when `delta`
    /// was supplied.
    pub n_free: Option<u64>,
    /// Least `alpha` with `h^0(O(alpha)) > N_free`.
    pub alpha: Option<u32>,
    pub steps: Vec<ScheduleStep>,
    pub existential_constants: Vec<ExistentialConstant>,
}

/// Least `a` with `(m-1)/(m+n-1) * a < a - 1`.
pub fn a_of_m(m: u32, n: usize) -> u32 {
    let (m, n) = (m as u64, n as u64);
    let mut a = 1u64;
    while (m - 1) * a >= (a - 1) * (m + n - 1) {
        a += 1;
    }
    a as u32
}

/// Least `alpha` with `C(alpha + N, N) > n_free`.
pub fn alpha_for(n_free: u64, big_n: usize) -> u32 {
    let mut alpha = 0;
    while h0_projective(big_n, alpha as i64) <= n_free {
        alpha += 1;
    }
    alpha
}

/// Schedule for multiplicity `m` in `P^N`; `delta` optionally fixes the
/// degree `Delta` of the first step so that `N_free` and `alpha` can be
/// evaluated (with `b_0 = A(m)`).
pub fn plan_schedule(m: u32, big_n: usize, delta: Option<u32>) -> ScheduleReport {
    let n = big_n.saturating_sub(1);
    let constants = |names: &[(&str, &str)]| {
        names
            .iter()
            .map(|(a, b)| ExistentialConstant {
                name: a.to_string(),
                meaning: b.to_string(),
            })
            .collect()
    };
    if m <= 1 {
        return ScheduleReport {
            m,
            big_n,
            n,
            trivial: true,
            a_of_m: None,
            b0_lower_bound: None,
            n_free: None,
            alpha: None,
            steps: vec![ScheduleStep {
                name: "direct".into(),
                description: "simple points impose independent conditions; check by direct rank"
                    .into(),
                checks: vec!["rank of the evaluation matrix = min(#points, h0(O(d)))".into()],
            }],
            existential_constants: Vec::new(),
        };
    }
    let a = a_of_m(m, n);
    let b0 = a;
    let n_free = delta.map(|delta| {
        h0_projective(big_n, delta as i64 + b0 as i64 - 1)
            + binomial(n as u64 + m as u64 - 1, n as u64)
    });
    let alpha = n_free.map(|nf| alpha_for(nf, big_n));
    let steps = vec![
        ScheduleStep {
            name: "first".into(),
            description: format!(
                "divisor degree b0 = max(A(m), a0(m-1)) >= {b0}; for d >= Delta, candidates with no free \
                 {m}-fold point or at least N_free free points of lower multiplicity are winning, by \
                 repeated derivatives"
            ),
            checks: vec![
                "candidate: deg Z >= h0(O(d)) and deg Tr <= h0(G_b0, O(d))".into(),
                "derivable: r + s <= t".into(),
                "derivative is a (d - b0)-candidate".into(),
                "no free m-fold point, or >= N_free free points of multiplicity < m, is preserved".into(),
            ],
        },
        ScheduleStep {
            name: "second".into(),
            description: "for b >= b0, lower the divisor degree one at a time with concentrated derivatives"
                .into(),
            checks: vec![
                "a >= 2".into(),
                "deg Tr_{G_(b-1)} of the derivative <= h0(G_(b-1), O(d - b))".into(),
            ],
        },
        ScheduleStep {
            name: "final".into(),
            description: format!(
                "a >= b0 + alpha: the special second derivative frees up to h0(O(alpha)) - 1 point residues \
                 and lands on divisor degree a - alpha{}",
                alpha.map(|x| format!(" (alpha = {x})")).unwrap_or_default()
            ),
            checks: vec![
                "twice derivable".into(),
                "deg Tr of the result <= h0(G_(a - alpha), O(d - 2a))".into(),
                "h0(O(alpha)) > N_free".into(),
            ],
        },
    ];
    ScheduleReport {
        m,
        big_n,
        n,
        trivial: false,
        a_of_m: Some(a),
        b0_lower_bound: Some(b0),
        n_free,
        alpha,
        steps,
        existential_constants: constants(&[
            (
                "a0(m-1)",
                "divisor degree from which multiplicity m-1 is settled",
            ),
            (
                "d0(a, m-1)",
                "degree from which (d, m-1, a)-candidates are winning",
            ),
            (
                "der(a, m)",
                "degree from which every candidate is derivable",
            ),
            (
                "derc(a, m)",
                "degree from which concentrated derivatives are candidates",
            ),
            ("delta(b, m)", "degree bound of the second step"),
            (
                "d'0(m, N, a)",
                "degree from which the special second derivative applies",
            ),
            (
                "a0(m, N)",
                "divisor degree threshold of the special second derivative",
            ),
            ("Delta", "degree at which the first step starts"),
        ]),
    }
}
