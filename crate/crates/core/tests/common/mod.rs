#![allow(dead_code)]

use ludersgap::matcore::{CMatrix, CVector, DensityMatrix, C64};
use ludersgap::measure::EigenBasis;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng) -> CMatrix {
    let data = (0..9)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CMatrix::from_vec(3, data).unwrap()
}

/// Full-rank (almost surely) mixed state `G G^dagger / Tr`.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let g = random_matrix(rng);
    let m = g.mul(&g.adjoint()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr).hermitian_part()).unwrap()
}

/// Orthonormal basis from the eigenvectors of a random Hermitian matrix.
pub fn random_orthonormal(rng: &mut impl Rng) -> Vec<CVector> {
    random_matrix(rng).hermitian_part().eigh().1
}

/// A random dichotomic observable with spectrum `(-1, 1, 1)`.
pub fn random_dichotomic(rng: &mut impl Rng) -> EigenBasis {
    let v = random_orthonormal(rng);
    EigenBasis::new(vec![
        (v[0].clone(), -1.0),
        (v[1].clone(), 1.0),
        (v[2].clone(), 1.0),
    ])
    .unwrap()
}

pub fn assert_valid(rho: &DensityMatrix) {
    rho.validate().unwrap();
}
