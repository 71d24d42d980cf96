//! Seeded random unitaries: complex Gaussian matrix → Householder QR, with
//! the diagonal phases of R absorbed into Q so the distribution is uniform
//! (Haar) and the result is reproducible bit-for-bit per seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Complex64, ComplexMatrix, ONE, ZERO};

/// Derive an independent task seed from a base seed.
///
/// One SplitMix64 step per task index; documented so sweeps can reproduce any
/// single task in isolation.
pub fn split_seed(seed: u64, task: u64) -> u64 {
    let mut z = seed.wrapping_add(task.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random n×n unitary, deterministic for a given seed.
///
/// The RNG is ChaCha8 seeded from the 64-bit seed; Gaussian entries come from
/// the standard normal in fixed row-major order, so the same seed always
/// yields the identical matrix.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    assert!(n >= 1, "unitary dimension must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            g.set(i, j, Complex64::new(re, im));
        }
    }
    let (q, r) = householder_qr(&g);

    // Fix the phases: Q ← Q·diag(r_jj/|r_jj|) makes the factorization unique
    // and the resulting distribution Haar.
    let mut out = q;
    for j in 0..n {
        let d = r.get(j, j);
        let mag = d.norm();
        let phase = if mag > 0.0 { d / mag } else { ONE };
        for i in 0..n {
            out.set(i, j, out.get(i, j) * phase);
        }
    }
    out
}

/// Householder QR of a square complex matrix; returns (Q, R) with Q unitary.
fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    assert!(a.is_square(), "QR here is only needed for square matrices");
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n {
        // Build the reflector for column k below the diagonal.
        let mut x = vec![ZERO; n - k];
        for i in k..n {
            x[i - k] = r.get(i, k);
        }
        let norm_x = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { ONE };
        let beta = -phase * norm_x;
        let mut v = x;
        v[0] -= beta;
        let vnorm_sqr = v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // R ← P R with P = I − τ v v† acting on rows k..n.
        for j in k..n {
            let mut dot = ZERO;
            for i in k..n {
                dot += v[i - k].conj() * r.get(i, j);
            }
            let dot = dot * tau;
            for i in k..n {
                let val = r.get(i, j) - v[i - k] * dot;
                r.set(i, j, val);
            }
        }
        // Q ← Q P (accumulate the product of reflectors).
        for i in 0..n {
            let mut dot = ZERO;
            for j in k..n {
                dot += q.get(i, j) * v[j - k];
            }
            let dot = dot * tau;
            for j in k..n {
                let val = q.get(i, j) - dot * v[j - k].conj();
                q.set(i, j, val);
            }
        }
    }
    (q, r)
}
