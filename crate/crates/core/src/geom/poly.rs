use std::collections::BTreeMap;

use crate::exactlin::{Field, PrimeField};

/// Sparse polynomial over `F_p` in a fixed number of variables.
///
/// Terms with zero coefficient are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(field: &PrimeField, nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(field, vec![0; nvars], field.reduce(c));
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn monomial(exps: Vec<u32>, c: u64) -> Self {
        let mut p = Self::zero(exps.len());
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term<F: Field>(&mut self, field: &F, exps: Vec<u32>, c: u64) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot = field.add(*slot, c);
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add<F: Field>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(field, e.clone(), c);
        }
        out
    }

    pub fn scale<F: Field>(&self, field: &F, c: u64) -> Self {
        let mut out = Self::zero(self.nvars);
        if c == 0 {
            return out;
        }
        for (e, v) in self.terms() {
            out.add_term(field, e.clone(), field.mul(v, c));
        }
        out
    }

    pub fn mul<F: Field>(&self, field: &F, other: &Self) -> Self {
        self.mul_truncated(field, other, None)
    }

    /// Product keeping only terms of total degree `<= order`.
    pub fn mul_truncated<F: Field>(&self, field: &F, other: &Self, order: Option<u32>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in self.terms() {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in other.terms() {
                if let Some(k) = order {
                    if da + eb.iter().sum::<u32>() > k {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(field, e, field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow_truncated<F: Field>(&self, field: &F, mut e: u32, order: Option<u32>) -> Self {
        let mut acc = Self::monomial(vec![0; self.nvars], 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(field, &base, order);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(field, &base, order);
            }
        }
        acc
    }

    pub fn eval<F: Field>(&self, field: &F, point: &[u64]) -> u64 {
        self.terms().fold(0, |acc, (e, c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c, |m, (&k, &x)| (0..k).fold(m, |m, _| field.mul(m, x)));
            field.add(acc, m)
        })
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, field: &PrimeField, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(field, ne, field.mul(c, field.reduce(e[i] as u64)));
        }
        out
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    /// `self(origin + A u)` where `A` is given as rows (one per variable of
    /// `self`), truncated at `order` in the new variables.
    pub fn compose_affine(
        &self,
        field: &PrimeField,
        origin: &[u64],
        linear: &[Vec<u64>],
        order: Option<u32>,
    ) -> Self {
        let new_vars = linear.first().map_or(0, Vec::len);
        let forms: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let mut l = Poly::constant_in(field, new_vars, origin[i]);
                for (j, &a) in linear[i].iter().enumerate() {
                    let mut e = vec![0; new_vars];
                    e[j] = 1;
                    l.add_term(field, e, a);
                }
                l
            })
            .collect();
        let mut out = Poly::zero(new_vars);
        for (e, c) in self.terms() {
            let mut term = Poly::constant_in(field, new_vars, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term =
                        term.mul_truncated(field, &forms[i].pow_truncated(field, k, order), order);
                }
            }
            out = out.add(field, &term);
        }
        out
    }
}
