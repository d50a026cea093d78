use horace_core::binomial;
use horace_core::exactlin::{DenseMatrix, Field, PrimeField};
use horace_core::geom::{
    exponents_up_to, frame_at, hasse_eval, monomial_basis, sample_point_on, Hypersurface, Poly,
};
use horace_core::oracle::sample_instance;
use horace_core::schemes::{conditions_matrix, Component, Configuration, MonomialIdeal, VgModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u64 = 1_000_003;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        // small entries make rank deficiency common
        (Just(r), Just(c), prop::collection::vec(0u64..3, r * c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_of_transpose((r, c, e) in matrix_strategy()) {
        let m = DenseMatrix::from_entries(field(), r, c, e).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= r.min(c));
    }

    #[test]
    fn rank_nullity((r, c, e) in matrix_strategy()) {
        let m = DenseMatrix::from_entries(field(), r, c, e).unwrap();
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), c);
        for v in kernel {
            prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rank_invariant_under_invertible_maps((r, c, e) in matrix_strategy(), seed in any::<u64>()) {
        let f = field();
        let m = DenseMatrix::from_entries(f, r, c, e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // unit upper triangular times a permutation is invertible
        let mut u = DenseMatrix::identity(f, r);
        for i in 0..r {
            for j in i + 1..r {
                u.set(i, j, f.random(&mut rng));
            }
        }
        let mut perm: Vec<usize> = (0..c).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut rng);
        let mut q = DenseMatrix::zeros(f, c, c);
        for (i, &j) in perm.iter().enumerate() {
            q.set(i, j, 1);
        }
        let moved = u.mul(&m).unwrap().mul(&q).unwrap();
        prop_assert_eq!(moved.rank(), m.rank());
    }

    #[test]
    fn hasse_leibniz(
        gamma in prop::collection::vec(0u32..6, 3),
        delta in prop::collection::vec(0u32..6, 3),
        beta in prop::collection::vec(0u32..5, 3),
        point in prop::collection::vec(0u64..P, 3),
    ) {
        let f = field();
        let sum: Vec<u32> = gamma.iter().zip(&delta).map(|(a, b)| a + b).collect();
        let lhs = hasse_eval(&f, &sum, &beta, &point);
        let mut rhs = 0;
        let split_max = beta.iter().copied().max().unwrap_or(0);
        for b1 in exponents_up_to(3, split_max * 3) {
            if b1.0.iter().zip(&beta).any(|(x, y)| x > y) {
                continue;
            }
            let b2: Vec<u32> = beta.iter().zip(&b1.0).map(|(x, y)| x - y).collect();
            let term = f.mul(hasse_eval(&f, &gamma, &b1.0, &point), hasse_eval(&f, &delta, &b2, &point));
            rhs = f.add(rhs, term);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frame_straightens_hypersurface(seed in any::<u64>(), n in 2usize..4, a in 1u32..4) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Hypersurface::random(&f, n, a, &mut rng);
        let p = sample_point_on(&f, &g, &mut rng).unwrap();
        if let Ok(frame) = frame_at(&f, &g, &p) {
            let local = g.affine_poly(&f, frame.chart).compose_affine(&f, &frame.origin, &frame.linear, Some(1));
            let mut last = vec![0; n];
            last[n - 1] = 1;
            prop_assert_eq!(local, Poly::monomial(last, 1));
        }
    }

    #[test]
    fn slicing_splits_degree(seed in any::<u64>(), n_vars in 1usize..3, height in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = horace_core::formal::random_model(&mut rng, n_vars, height);
        for p in 0..height {
            let res = model.res_p(p).unwrap();
            prop_assert_eq!(model.degree(), model.tr_p(p).colength().unwrap() + res.degree());
        }
        prop_assert!(model.res_p(height).is_err());
    }

    #[test]
    fn rows_match_degree_and_rank_grows(
        seed in any::<u64>(),
        n in 1usize..4,
        a in 1u32..3,
        d in 0u32..6,
        frees in prop::collection::vec(1u32..4, 0..4),
        divisor_points in prop::collection::vec(1u32..4, 0..3),
        extra in 1u32..4,
    ) {
        let f = field();
        let mut comps: Vec<Component> = frees.iter().map(|&m| Component::free(m)).collect();
        comps.extend(divisor_points.iter().map(|&m| Component::divisor_point(m)));
        let config = Configuration::new(n, a, comps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = sample_instance(&f, &config, &mut rng).unwrap();
        let m = conditions_matrix(&f, &inst.config, d, &inst.divisor).unwrap();
        prop_assert_eq!(m.rows() as u64, config.degree());
        prop_assert_eq!(m.cols() as u64, binomial(d as u64 + n as u64, n as u64));

        let one = Configuration::new(n, a, vec![Component::free(extra)]).unwrap();
        let more = sample_instance(&f, &one, &mut rng).unwrap();
        let comps = inst.config.components().iter().cloned().chain(more.config.into_components()).collect();
        let bigger = Configuration::new(n, a, comps).unwrap();
        let m2 = conditions_matrix(&f, &bigger, d, &inst.divisor).unwrap();
        prop_assert!(m2.rank() >= m.rank());
    }
}

#[test]
fn basis_sizes() {
    for n in 0..=4usize {
        for d in 0..=12u32 {
            assert_eq!(
                monomial_basis(n, d).len() as u64,
                binomial(d as u64 + n as u64, n as u64)
            );
        }
    }
}

#[test]
fn additivity_exhaustive() {
    for n in 1..=4usize {
        for m in 1..=8u32 {
            let mut kinds = vec![
                Component::divisor_point(m),
                Component::model(VgModel::fat_point(n - 1, m)),
            ];
            if m >= 2 {
                kinds.push(Component::simple_residue(m));
                kinds.push(Component::model(VgModel::simple_residue(n - 1, m)));
            }
            for c in kinds {
                let residual = c.residual().map_or(0, |r| r.degree(n));
                assert_eq!(
                    c.degree(n),
                    c.trace_degree(n).unwrap() + residual,
                    "{:?} n={n}",
                    c.kind
                );
            }
        }
    }
}

#[test]
fn max_power_ideal_colength() {
    for n in 1..=3usize {
        for k in 0..=5u32 {
            let want = if k == 0 {
                0
            } else {
                binomial(k as u64 - 1 + n as u64, n as u64)
            };
            assert_eq!(MonomialIdeal::max_power(n, k).colength().unwrap(), want);
        }
    }
}
