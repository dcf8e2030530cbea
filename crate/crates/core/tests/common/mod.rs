#![allow(dead_code)]

use entclone::{validate_density, Complex, ComplexMatrix, DensityMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let data = (0..n * n)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(n, data).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n).hermitian_part()
}

/// G·G† / Tr with G a random n×rank matrix (zero-padded), so ranks 1..=n occur.
pub fn random_density_of_rank(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> DensityMatrix {
    let mut g = random_matrix(rng, n);
    for i in 0..n {
        for j in rank..n {
            g[(i, j)] = Complex::new(0.0, 0.0);
        }
    }
    let m = &g * &g.adjoint();
    let m = m.scale(1.0 / m.trace().re);
    validate_density(&m).unwrap()
}

pub fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let rank = rng.gen_range(1..=n);
    random_density_of_rank(rng, n, rank)
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect()
}

/// Single-qubit shrink superoperator tensored with itself, applied entry by
/// entry to the basis operators |ij⟩⟨kl|. Independent of the library's
/// marginal-based formula.
pub fn local_clone_by_superoperator(rho: &ComplexMatrix, eta: f64) -> ComplexMatrix {
    // single qubit: |i⟩⟨k| -> η|i⟩⟨k| + (1-η) δ_ik I/2
    let single = |i: usize, k: usize| -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        out[i][k] += eta;
        if i == k {
            out[0][0] += (1.0 - eta) / 2.0;
            out[1][1] += (1.0 - eta) / 2.0;
        }
        out
    };
    let mut result = ComplexMatrix::zeros(4);
    for r in 0..4 {
        for s in 0..4 {
            let coeff = rho[(r, s)];
            let (i, j) = (r / 2, r % 2);
            let (k, l) = (s / 2, s % 2);
            let a = single(i, k);
            let b = single(j, l);
            for p in 0..2 {
                for q in 0..2 {
                    for u in 0..2 {
                        for v in 0..2 {
                            result[(p * 2 + u, q * 2 + v)] += coeff * (a[p][q] * b[u][v]);
                        }
                    }
                }
            }
        }
    }
    result
}
