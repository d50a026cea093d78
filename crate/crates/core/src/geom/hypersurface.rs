use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::monomial::{exponents_of_degree, hasse_eval, monomial_basis, MultiIndex};
use super::poly::Poly;
use super::roots::roots;
use super::GeomError;
use crate::exactlin::{Field, PrimeField};

/// Default number of sampling attempts before giving up.
pub const DEFAULT_SAMPLING_BUDGET: usize = 64;

/// A point of `P^N` given by homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ProjPoint {
    coords: Vec<u64>,
}

impl TryFrom<Vec<u64>> for ProjPoint {
    type Error = GeomError;

    fn try_from(coords: Vec<u64>) -> Result<Self, GeomError> {
        Self::new(coords)
    }
}

impl From<ProjPoint> for Vec<u64> {
    fn from(p: ProjPoint) -> Self {
        p.coords
    }
}

impl ProjPoint {
    pub fn new(coords: Vec<u64>) -> Result<Self, GeomError> {
        if coords.len() < 2 || coords.iter().all(|&c| c == 0) {
            return Err(GeomError::ZeroPoint);
        }
        Ok(Self { coords })
    }

    /// A point with every coordinate nonzero.
    pub fn random_general<R: Rng + ?Sized>(field: &PrimeField, n: usize, rng: &mut R) -> Self {
        Self {
            coords: (0..=n).map(|_| field.random_nonzero(rng)).collect(),
        }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the dehomogenization chart: the last nonzero coordinate.
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .rposition(|&c| c != 0)
            .expect("nonzero point")
    }

    /// Affine coordinates in [`Self::chart`]: the chart coordinate is
    /// normalized to 1 and dropped.
    pub fn affine(&self, field: &PrimeField) -> Vec<u64> {
        let k = self.chart();
        let inv = field.inv(self.coords[k]);
        self.coords
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &c)| field.mul(field.reduce(c), inv))
            .collect()
    }

    /// Representative with chart coordinate equal to 1.
    pub fn normalized(&self, field: &PrimeField) -> Self {
        let k = self.chart();
        let inv = field.inv(self.coords[k]);
        Self {
            coords: self
                .coords
                .iter()
                .map(|&c| field.mul(field.reduce(c), inv))
                .collect(),
        }
    }
}

/// The zero locus of a nonzero homogeneous form `g` of degree `a` in `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypersurface {
    n: usize,
    degree: u32,
    /// Aligned with `monomial_basis(n, degree)`.
    coeffs: Vec<u64>,
}

impl Hypersurface {
    pub fn new(
        field: &PrimeField,
        n: usize,
        degree: u32,
        coeffs: Vec<u64>,
    ) -> Result<Self, GeomError> {
        let expected = monomial_basis(n, degree).len();
        if degree == 0 || coeffs.len() != expected {
            return Err(GeomError::BadHypersurface(format!(
                "degree {degree} in P^{n} needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return Err(GeomError::BadHypersurface("zero form".into()));
        }
        Ok(Self { n, degree, coeffs })
    }

    /// Builds a form from `(exponents, coefficient)` pairs.
    pub fn from_terms(
        field: &PrimeField,
        n: usize,
        degree: u32,
        terms: &[(Vec<u32>, u64)],
    ) -> Result<Self, GeomError> {
        let basis = monomial_basis(n, degree);
        let index: HashMap<&[u32], usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let mut coeffs = vec![0; basis.len()];
        for (e, c) in terms {
            let i = *index.get(e.as_slice()).ok_or_else(|| {
                GeomError::BadHypersurface(format!(
                    "monomial {e:?} is not of degree {degree} in P^{n}"
                ))
            })?;
            coeffs[i] = field.add(coeffs[i], field.reduce(*c));
        }
        Self::new(field, n, degree, coeffs)
    }

    /// The coordinate hyperplane `x_N = 0`.
    pub fn hyperplane(n: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[n] = 1;
        Self::from_terms(&PrimeField::default(), n, 1, &[(e, 1)]).expect("valid hyperplane")
    }

    /// A form with uniformly random coefficients (retried until nonzero).
    pub fn random<R: Rng + ?Sized>(field: &PrimeField, n: usize, degree: u32, rng: &mut R) -> Self {
        let len = monomial_basis(n, degree).len();
        loop {
            let coeffs: Vec<u64> = (0..len).map(|_| field.random(rng)).collect();
            if let Ok(h) = Self::new(field, n, degree, coeffs) {
                return h;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn as_poly(&self, field: &PrimeField) -> Poly {
        let mut p = Poly::zero(self.n + 1);
        for (m, c) in self.terms() {
            p.add_term(field, m.0, c);
        }
        p
    }

    fn terms(&self) -> impl Iterator<Item = (MultiIndex, u64)> + '_ {
        monomial_basis(self.n, self.degree)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|&(_, c)| c != 0)
    }

    pub fn eval(&self, field: &PrimeField, point: &ProjPoint) -> u64 {
        self.terms().fold(0, |acc, (m, c)| {
            field.add(
                acc,
                field.mul(c, monomial_value(field, &m.0, point.coords())),
            )
        })
    }

    /// All `N + 1` formal partial derivatives at `point`.
    pub fn gradient(&self, field: &PrimeField, point: &ProjPoint) -> Vec<u64> {
        (0..=self.n)
            .map(|i| {
                let mut beta = vec![0; self.n + 1];
                beta[i] = 1;
                self.terms().fold(0, |acc, (m, c)| {
                    field.add(
                        acc,
                        field.mul(c, hasse_eval(field, &m.0, &beta, point.coords())),
                    )
                })
            })
            .collect()
    }

    /// `g(P) = 0` and `grad g(P) != 0`.
    pub fn is_smooth_point(&self, field: &PrimeField, point: &ProjPoint) -> bool {
        point.dim() == self.n
            && self.eval(field, point) == 0
            && self.gradient(field, point).iter().any(|&v| v != 0)
    }

    /// Dehomogenization in chart `k` as a polynomial in `N` variables.
    pub fn affine_poly(&self, field: &PrimeField, k: usize) -> Poly {
        let mut p = Poly::zero(self.n);
        for (m, c) in self.terms() {
            p.add_term(field, m.without(k).0, field.reduce(c));
        }
        p
    }
}

fn monomial_value(field: &PrimeField, exps: &[u32], point: &[u64]) -> u64 {
    exps.iter().zip(point).fold(1, |acc, (&e, &x)| {
        field.mul(acc, field.pow(field.reduce(x), e as u64))
    })
}

/// Samples a smooth point of `g` with the default retry budget.
pub fn sample_point_on<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Hypersurface,
    rng: &mut R,
) -> Result<ProjPoint, GeomError> {
    sample_point_on_with_budget(field, g, rng, DEFAULT_SAMPLING_BUDGET)
}

/// Fixes random nonzero values for all but one coordinate and solves the
/// remaining univariate equation; retries up to `budget` times.
pub fn sample_point_on_with_budget<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Hypersurface,
    rng: &mut R,
    budget: usize,
) -> Result<ProjPoint, GeomError> {
    let terms: Vec<(MultiIndex, u64)> = g.terms().collect();
    let solvable: Vec<usize> = (0..=g.n)
        .filter(|&k| terms.iter().any(|(m, _)| m.0[k] > 0))
        .collect();
    for _ in 0..budget {
        let k = solvable[rng.random_range(0..solvable.len())];
        let mut coords: Vec<u64> = (0..=g.n).map(|_| field.random_nonzero(rng)).collect();
        let mut uni = vec![0u64; g.degree as usize + 1];
        for (m, c) in &terms {
            let mut v = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if i != k {
                    v = field.mul(v, field.pow(coords[i], e as u64));
                }
            }
            let slot = &mut uni[m.0[k] as usize];
            *slot = field.add(*slot, v);
        }
        if uni.iter().all(|&c| c == 0) {
            continue;
        }
        let rs = roots(field, &uni, rng);
        if rs.is_empty() {
            continue;
        }
        coords[k] = rs[rng.random_range(0..rs.len())];
        let Ok(point) = ProjPoint::new(coords) else {
            continue;
        };
        if g.is_smooth_point(field, &point) {
            return Ok(point);
        }
    }
    Err(GeomError::SamplingExhausted { attempts: budget })
}

/// Affine coordinate change `x = origin + A u` in the chart of a point.
///
/// In the `u` coordinates the point is the origin and the local equation of
/// the hypersurface has linear part exactly `u_{N-1}` (the last coordinate).
/// The first `N - 1` coordinates are tangential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub chart: usize,
    pub origin: Vec<u64>,
    /// `N x N`, row `i` gives `x_i` in terms of `u`.
    pub linear: Vec<Vec<u64>>,
}

impl Frame {
    /// Plain translation to `point` (no divisor to align with).
    pub fn translation(field: &PrimeField, point: &ProjPoint) -> Self {
        let n = point.dim();
        let linear = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Self {
            chart: point.chart(),
            origin: point.affine(field),
            linear,
        }
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    /// Expresses a homogeneous monomial in frame coordinates, truncated at
    /// total degree `order`.
    pub fn pull_monomial(&self, field: &PrimeField, gamma: &[u32], order: u32) -> Poly {
        let affine = MultiIndex(gamma.to_vec()).without(self.chart);
        Poly::monomial(affine.0, 1).compose_affine(field, &self.origin, &self.linear, Some(order))
    }
}

/// Local frame of `g` at the smooth point `p`.
pub fn frame_at(field: &PrimeField, g: &Hypersurface, p: &ProjPoint) -> Result<Frame, GeomError> {
    if p.dim() != g.n || g.eval(field, p) != 0 {
        return Err(GeomError::NotOnHypersurface);
    }
    let chart = p.chart();
    let origin = p.affine(field);
    let affine = g.affine_poly(field, chart);
    let grad: Vec<u64> = (0..g.n)
        .map(|i| affine.partial(field, i).eval(field, &origin))
        .collect();
    let Some(k) = grad.iter().rposition(|&v| v != 0) else {
        return Err(GeomError::SingularPoint);
    };
    let inv = field.inv(grad[k]);
    let n = g.n;
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in (0..n).filter(|&i| i != k) {
        let mut v = vec![0; n];
        v[i] = 1;
        v[k] = field.neg(field.mul(grad[i], inv));
        cols.push(v);
    }
    let mut normal = vec![0; n];
    normal[k] = inv;
    cols.push(normal);
    let linear = (0..n)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    Ok(Frame {
        chart,
        origin,
        linear,
    })
}

/// Taylor coefficients up to order `order` of every degree-`d` monomial in
/// the frame: `rows[beta][col]` is the coefficient of `u^beta` in the pulled
/// back monomial `col`, for each requested `beta`.
pub fn framed_rows(
    field: &PrimeField,
    frame: &Frame,
    basis: &[MultiIndex],
    betas: &[MultiIndex],
) -> Vec<Vec<u64>> {
    let order = betas.iter().map(MultiIndex::degree).max().unwrap_or(0);
    let mut cache = PowerCache::new(field, frame, order);
    let mut rows = vec![vec![0u64; basis.len()]; betas.len()];
    for (col, gamma) in basis.iter().enumerate() {
        let pulled = cache.pull(&gamma.without(frame.chart).0);
        for (row, beta) in betas.iter().enumerate() {
            rows[row][col] = pulled.coeff(&beta.0);
        }
    }
    rows
}

/// Taylor rows at a point in its standard chart (no frame): entry
/// `D^beta(x^gamma)` at the affine representative.
pub fn hasse_rows(
    field: &PrimeField,
    point: &ProjPoint,
    basis: &[MultiIndex],
    betas: &[MultiIndex],
) -> Vec<Vec<u64>> {
    let chart = point.chart();
    let affine = point.affine(field);
    betas
        .iter()
        .map(|beta| {
            basis
                .iter()
                .map(|gamma| hasse_eval(field, &gamma.without(chart).0, &beta.0, &affine))
                .collect()
        })
        .collect()
}

/// All `beta` of total degree `< m` in `n` variables.
pub fn taylor_indices(n: usize, m: u32) -> Vec<MultiIndex> {
    (0..m).flat_map(|k| exponents_of_degree(n, k)).collect()
}

struct PowerCache<'a> {
    field: &'a PrimeField,
    order: u32,
    forms: Vec<Poly>,
    powers: HashMap<(usize, u32), Poly>,
}

impl<'a> PowerCache<'a> {
    fn new(field: &'a PrimeField, frame: &Frame, order: u32) -> Self {
        let n = frame.dim();
        let forms = (0..n)
            .map(|i| {
                let mut l = Poly::constant_in(field, n, frame.origin[i]);
                for (j, &a) in frame.linear[i].iter().enumerate() {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    l.add_term(field, e, a);
                }
                l
            })
            .collect();
        Self {
            field,
            order,
            forms,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, i: usize, e: u32) -> Poly {
        if let Some(p) = self.powers.get(&(i, e)) {
            return p.clone();
        }
        let p = if e == 0 {
            Poly::constant_in(self.field, self.forms.len(), 1)
        } else {
            let prev = self.power(i, e - 1);
            prev.mul_truncated(self.field, &self.forms[i], Some(self.order))
        };
        self.powers.insert((i, e), p.clone());
        p
    }

    fn pull(&mut self, exps: &[u32]) -> Poly {
        let mut acc = Poly::constant_in(self.field, self.forms.len(), 1);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                let pw = self.power(i, e);
                acc = acc.mul_truncated(self.field, &pw, Some(self.order));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hyperplane_sampling_and_translation_frame() {
        let f = PrimeField::default();
        let g = Hypersurface::hyperplane(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = sample_point_on(&f, &g, &mut rng).unwrap();
        assert_eq!(p.coords()[2], 0);
        let frame = frame_at(&f, &g, &p).unwrap();
        // x_N is the last affine coordinate only if chart < N; chart is 1 here
        assert_eq!(frame.chart, 1);
        assert_eq!(frame.linear, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn conic_points_over_f7() {
        let f = PrimeField::new(7).unwrap();
        // x^2 + y^2 - z^2
        let g = Hypersurface::from_terms(
            &f,
            2,
            2,
            &[(vec![2, 0, 0], 1), (vec![0, 2, 0], 1), (vec![0, 0, 2], 6)],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = sample_point_on(&f, &g, &mut rng).unwrap();
            assert_eq!(g.eval(&f, &p), 0);
        }
    }

    #[test]
    fn double_line_is_exhausted() {
        let f = PrimeField::new(101).unwrap();
        let g = Hypersurface::from_terms(&f, 2, 2, &[(vec![2, 0, 0], 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            sample_point_on(&f, &g, &mut rng),
            Err(GeomError::SamplingExhausted { .. })
        ));
    }

    #[test]
    fn frame_makes_linear_part_last_coordinate() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, a) in [(2, 2), (2, 3), (3, 2), (3, 1)] {
            let g = Hypersurface::random(&f, n, a, &mut rng);
            let p = sample_point_on(&f, &g, &mut rng).unwrap();
            let frame = frame_at(&f, &g, &p).unwrap();
            let local = g.affine_poly(&f, frame.chart).compose_affine(
                &f,
                &frame.origin,
                &frame.linear,
                Some(1),
            );
            let mut last = vec![0; n];
            last[n - 1] = 1;
            assert_eq!(local, Poly::monomial(last, 1), "n={n} a={a}");
        }
    }

    #[test]
    fn frame_errors() {
        let f = PrimeField::new(101).unwrap();
        let g = Hypersurface::hyperplane(2);
        let off = ProjPoint::new(vec![1, 1, 1]).unwrap();
        assert_eq!(frame_at(&f, &g, &off), Err(GeomError::NotOnHypersurface));
        // xy = 0 is singular at [0:0:1]
        let node = Hypersurface::from_terms(&f, 2, 2, &[(vec![1, 1, 0], 1)]).unwrap();
        let origin = ProjPoint::new(vec![0, 0, 1]).unwrap();
        assert_eq!(frame_at(&f, &node, &origin), Err(GeomError::SingularPoint));
    }

    #[test]
    fn framed_rows_match_hasse_rows_for_identity_frame() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = ProjPoint::random_general(&f, 2, &mut rng);
        let basis = monomial_basis(2, 4);
        let betas = taylor_indices(2, 3);
        let frame = Frame::translation(&f, &p);
        assert_eq!(
            framed_rows(&f, &frame, &basis, &betas),
            hasse_rows(&f, &p, &basis, &betas)
        );
    }

    #[test]
    fn point_serde_rejects_zero() {
        assert!(serde_json::from_str::<ProjPoint>("[0,0,0]").is_err());
        let p: ProjPoint = serde_json::from_str("[1,2,3]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,2,3]");
    }
}
