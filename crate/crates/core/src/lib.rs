//! Maximal-rank decisions and certificates for generic unions of fat points.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactlin`]: exact linear algebra over `F_p` (plus a rational path).
//! - [`geom`]: monomials, Hasse derivatives, hypersurfaces and local frames.
//! - [`schemes`]: fat points, simple residues, vertically graded models,
//!   trace/residual operators and condition matrices.
//! - [`oracle`]: randomized exact rank decisions and the cuspidal
//!   counterexample in positive characteristic.
//! - [`horace`]: candidates, derivatives, certification, curve base cases
//!   and the schedule planner.
//! - [`formal`]: checker for standard deformations of vertically graded
//!   ideals.

pub mod exactlin;
pub mod formal;
pub mod geom;
pub mod horace;
pub mod oracle;
pub mod schemes;

/// `C(n, k)` as an exact integer; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// `h^0(P^n, O(d)) = C(d + n, n)`, zero for negative `d`.
pub fn h0_projective(n: usize, d: i64) -> u64 {
    if d < 0 {
        0
    } else {
        binomial(d as u64 + n as u64, n as u64)
    }
}

/// `h^0(G_a, O(d))` for a hypersurface of degree `a` in `P^n`.
pub fn h0_hypersurface(n: usize, a: u32, d: i64) -> u64 {
    h0_projective(n, d) - h0_projective(n, d - a as i64)
}

/// Reproducible sub-seed derivation (splitmix64 finaliser).
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
