//! Deterministic inputs shared by the benchmarks.

use bqf_core::matrix::{ComplexMatrix, GaussianRational};
use bqf_core::rational::rat;
use bqf_core::{CumulantSequence, HermitianMatrix};

/// Hermitian matrix with small rational entries and nonzero imaginary parts off the diagonal.
pub fn hermitian_fixture(n: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, GaussianRational::real(rat(i as i64 + 1, 2)));
        for j in i + 1..n {
            let z = GaussianRational::new(rat((i + 2 * j) as i64 % 5 - 2, 3), rat(j as i64 - i as i64, 4));
            m.set(j, i, z.conj());
            m.set(i, j, z);
        }
    }
    HermitianMatrix::new(m).expect("constructed Hermitian")
}

/// Real symmetric fixture, usable with the expansion oracle.
pub fn real_fixture(n: usize) -> HermitianMatrix {
    let rows: Vec<Vec<_>> =
        (0..n).map(|i| (0..n).map(|j| rat(((i + j) % 4) as i64 - 1, (1 + i.min(j)) as i64)).collect()).collect();
    HermitianMatrix::from_real_rows(&rows).expect("symmetric by construction")
}

/// `K_k = (−1)^k k / (k + 1)` through `order`.
pub fn cumulant_fixture(order: usize) -> CumulantSequence {
    let values = (1..=order as i64).map(|k| rat(if k % 2 == 0 { k } else { -k }, k + 1)).collect();
    CumulantSequence::new(values).expect("non-empty")
}
