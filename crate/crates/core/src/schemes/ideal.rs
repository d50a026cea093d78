use serde::{Deserialize, Serialize};

use super::SchemeError;
use crate::geom::{exponents_of_degree, MultiIndex};

/// Monomial ideal in `n_vars` variables, stored by its minimal generators.
///
/// An ideal without generators is the zero ideal; the generator `1` makes
/// it the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal", into = "RawIdeal")]
pub struct MonomialIdeal {
    n_vars: usize,
    gens: Vec<MultiIndex>,
}

#[derive(Serialize, Deserialize)]
struct RawIdeal {
    n_vars: usize,
    gens: Vec<MultiIndex>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = SchemeError;

    fn try_from(raw: RawIdeal) -> Result<Self, SchemeError> {
        Self::new(raw.n_vars, raw.gens)
    }
}

impl From<MonomialIdeal> for RawIdeal {
    fn from(i: MonomialIdeal) -> Self {
        Self {
            n_vars: i.n_vars,
            gens: i.gens,
        }
    }
}

impl MonomialIdeal {
    pub fn new(n_vars: usize, gens: Vec<MultiIndex>) -> Result<Self, SchemeError> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != n_vars) {
            return Err(SchemeError::InvalidIdeal(format!(
                "generator {g} does not have {n_vars} exponents"
            )));
        }
        Ok(Self::minimalized(n_vars, gens))
    }

    fn minimalized(n_vars: usize, mut gens: Vec<MultiIndex>) -> Self {
        gens.sort();
        gens.dedup();
        let minimal: Vec<MultiIndex> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Self {
            n_vars,
            gens: minimal,
        }
    }

    pub fn unit(n_vars: usize) -> Self {
        Self {
            n_vars,
            gens: vec![MultiIndex::zero(n_vars)],
        }
    }

    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            gens: Vec::new(),
        }
    }

    /// `n^k` for the maximal ideal `n` at the origin; `k = 0` is the unit ideal.
    pub fn max_power(n_vars: usize, k: u32) -> Self {
        if n_vars == 0 {
            return if k == 0 { Self::unit(0) } else { Self::zero(0) };
        }
        Self::minimalized(n_vars, exponents_of_degree(n_vars, k))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gens(&self) -> &[MultiIndex] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }

    pub fn contains(&self, exps: &[u32]) -> bool {
        let m = MultiIndex(exps.to_vec());
        self.gens.iter().any(|g| g.divides(&m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.gens.iter().all(|g| other.contains(&g.0))
    }

    pub fn product(&self, other: &Self) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)))
            .collect();
        Self::minimalized(self.n_vars, gens)
    }

    /// Exponent bound per variable, when every variable has a pure power
    /// among the generators.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        (0..self.n_vars)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g.0[i])
                    .min()
            })
            .collect()
    }

    pub fn has_finite_colength(&self) -> bool {
        self.n_vars == 0 || self.is_unit() || self.pure_power_bounds().is_some()
    }

    /// Monomials outside the ideal (the staircase complement), sorted.
    pub fn standard_monomials(&self) -> Result<Vec<MultiIndex>, SchemeError> {
        if self.is_unit() {
            return Ok(Vec::new());
        }
        if self.n_vars == 0 {
            return Ok(vec![MultiIndex::zero(0)]);
        }
        let bounds = self
            .pure_power_bounds()
            .ok_or(SchemeError::InfiniteColength)?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n_vars];
        loop {
            if !self.contains(&cur) {
                out.push(MultiIndex(cur.clone()));
            }
            let mut i = 0;
            loop {
                if i == self.n_vars {
                    out.sort();
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn colength(&self) -> Result<u64, SchemeError> {
        Ok(self.standard_monomials()?.len() as u64)
    }

    /// `Some(k)` when the ideal equals `n^k`.
    pub fn max_power_exponent(&self) -> Option<u32> {
        if self.is_unit() {
            return Some(0);
        }
        let k = self.gens.first()?.degree();
        (*self == Self::max_power(self.n_vars, k)).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn colength_of_powers() {
        for n in 1..=3 {
            for k in 0..=5 {
                let i = MonomialIdeal::max_power(n, k);
                let expected = binomial(k as u64 + n as u64 - 1, n as u64);
                assert_eq!(i.colength().unwrap(), expected, "n={n} k={k}");
                assert_eq!(i.max_power_exponent(), Some(k));
            }
        }
        assert_eq!(MonomialIdeal::zero(0).colength().unwrap(), 1);
        assert_eq!(MonomialIdeal::unit(0).colength().unwrap(), 0);
    }

    #[test]
    fn membership_and_minimality() {
        let i = MonomialIdeal::new(2, vec![mi(&[2, 0]), mi(&[3, 1]), mi(&[0, 1])]).unwrap();
        assert_eq!(i.gens(), &[mi(&[0, 1]), mi(&[2, 0])]);
        assert!(i.contains(&[1, 1]));
        assert!(!i.contains(&[1, 0]));
        assert_eq!(i.colength().unwrap(), 2);
        assert_eq!(i.max_power_exponent(), None);
        assert!(MonomialIdeal::new(2, vec![mi(&[1])]).is_err());
    }

    #[test]
    fn infinite_colength_detected() {
        let i = MonomialIdeal::new(2, vec![mi(&[1, 0])]).unwrap();
        assert!(!i.has_finite_colength());
        assert_eq!(i.colength(), Err(SchemeError::InfiniteColength));
    }

    #[test]
    fn products_and_containment() {
        let n = MonomialIdeal::max_power(2, 1);
        let n2 = n.product(&n);
        assert_eq!(n2, MonomialIdeal::max_power(2, 2));
        assert!(n2.is_subset_of(&n));
        assert!(!n.is_subset_of(&n2));
        assert!(n.is_subset_of(&MonomialIdeal::unit(2)));
    }

    #[test]
    fn serde_round_trip() {
        let i = MonomialIdeal::max_power(2, 2);
        let s = serde_json::to_string(&i).unwrap();
        let back: MonomialIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
