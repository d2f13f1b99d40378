#![allow(dead_code)]

use bqf_core::cumulants::NCPolynomial;
use bqf_core::matrix::ComplexMatrix;
use bqf_core::rational::rat;
use bqf_core::{CumulantSequence, GaussianRational, HermitianMatrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-6, 6]` and denominator in `[1, 4]`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn cumulant_sequence(rng: &mut impl Rng, order: usize) -> CumulantSequence {
    CumulantSequence::new((0..order).map(|_| small_rational(rng)).collect()).unwrap()
}

pub fn real_symmetric(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x = GaussianRational::real(small_rational(rng));
            m.set(j, i, x.clone());
            m.set(i, j, x);
        }
    }
    HermitianMatrix::new(m).unwrap()
}

pub fn hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, GaussianRational::real(small_rational(rng)));
        for j in i + 1..n {
            let x = GaussianRational::new(small_rational(rng), small_rational(rng));
            m.set(j, i, x.conj());
            m.set(i, j, x);
        }
    }
    HermitianMatrix::new(m).unwrap()
}

/// `Σ_{i,j} a_ij X_i X_j` for a real symmetric matrix.
pub fn quadratic_form(a: &HermitianMatrix) -> NCPolynomial {
    let mut terms = Vec::new();
    for i in 0..a.n() {
        for j in 0..a.n() {
            assert!(a.get(i, j).is_real(), "the oracle takes real coefficients");
            terms.push((a.get(i, j).re.clone(), vec![i as u32 + 1, j as u32 + 1]));
        }
    }
    NCPolynomial::from_terms(terms).unwrap()
}

/// `(I − P_n) M (I − P_n)`: Hermitian with all row sums zero.
pub fn zero_row_sum(m: &HermitianMatrix) -> HermitianMatrix {
    let n = m.n();
    let q = bqf_core::statistics::sample_variance_matrix(n).unwrap();
    let qm = q.as_matrix().checked_mul(m.as_matrix()).unwrap();
    HermitianMatrix::new(qm.checked_mul(q.as_matrix()).unwrap()).unwrap()
}
