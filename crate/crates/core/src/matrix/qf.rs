//! Cumulants of the quadratic form `T = Σ_{i,j} a_ij X_i X_j` in Boolean
//! independent variables.
//!
//! For the product formula only partitions `π ∈ I(2r)` with `π ∨ 1̂₂^r = 1̂` and
//! constant indices on blocks survive; those are exactly the lifts `π̂` of
//! `π ∈ I(r+1)`, and the surviving index tuples are chains `(i_0, …, i_r)`
//! weighted by `a_{i_0 i_1} ⋯ a_{i_{r−1} i_r}`.

use num::{One, Zero};

use super::{ones, sum, ComplexMatrix, GaussianRational, HermitianMatrix};
use crate::cumulants::{element_cumulants, partition_cumulant, CumulantSequence, Family, NCPolynomial};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_interval, matching_connected, IntervalPartition};
use crate::Rational;

/// `K_r(T)` split by `π ∈ I(r+1)`.
///
/// Individual contributions of a complex Hermitian matrix may be non-real; only
/// their sum is guaranteed real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFCumulantReport {
    pub order: usize,
    pub value: Rational,
    pub contributions: Vec<(IntervalPartition, GaussianRational)>,
}

impl QFCumulantReport {
    pub fn nonzero_contributions(&self) -> Vec<&(IntervalPartition, GaussianRational)> {
        self.contributions.iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn check_order(r: usize, available: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("cumulant order r must be >= 1".into()));
    }
    if available < 2 * r {
        return Err(Error::InsufficientOrder { needed: 2 * r, available });
    }
    Ok(())
}

fn real_total(z: GaussianRational) -> Result<Rational> {
    if !z.is_real() {
        return Err(Error::Inconsistent(format!("quadratic-form cumulant has imaginary part {}", z.im)));
    }
    Ok(z.re)
}

/// `K_{π̂} = Π_{B ∈ π̂} K_{|B|}`.
fn lifted_cumulant(pi: &IntervalPartition, k: &CumulantSequence) -> Result<Rational> {
    let mut acc = Rational::one();
    for size in pi.lift_matching()?.block_sizes() {
        acc *= k.get(size)?;
    }
    Ok(acc)
}

fn entry_product(a: &ComplexMatrix, tuple: &[usize]) -> GaussianRational {
    let mut acc = GaussianRational::one();
    for w in tuple.windows(2) {
        let entry = a.get(w[0], w[1]);
        if entry.is_zero() {
            return GaussianRational::zero();
        }
        acc *= entry;
    }
    acc
}

/// Calls `f` on every tuple in `{0..n}^len` (odometer order).
fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut tuple = vec![0usize; len];
    loop {
        f(&tuple)?;
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Sum of entry products over index tuples `(i_0, …, i_r)` constant on the blocks of `π`.
fn tuple_weight(a: &ComplexMatrix, pi: &IntervalPartition) -> Result<GaussianRational> {
    let blocks = pi.blocks();
    let mut tuple = vec![0usize; pi.n()];
    let mut acc = GaussianRational::zero();
    for_each_tuple(a.n(), blocks.len(), |values| {
        for (block, &v) in blocks.iter().zip(values) {
            for p in block.clone() {
                tuple[p - 1] = v;
            }
        }
        debug_assert!(pi.kernel_refines(&tuple).unwrap_or(false));
        acc += &entry_product(a, &tuple);
        Ok(())
    })?;
    Ok(acc)
}

/// `K_r(T)` for identically distributed variables with cumulants `k`, by
/// explicit sums over index tuples.
pub fn qf_cumulant_iid(a: &HermitianMatrix, k: &CumulantSequence, r: usize) -> Result<QFCumulantReport> {
    check_order(r, k.order())?;
    let mut contributions = Vec::new();
    let mut total = GaussianRational::zero();
    for pi in enumerate_interval(r + 1)? {
        let kpi = lifted_cumulant(&pi, k)?;
        let c = if kpi.is_zero() { GaussianRational::zero() } else { tuple_weight(a.as_matrix(), &pi)?.scale(&kpi) };
        total += &c;
        contributions.push((pi, c));
    }
    Ok(QFCumulantReport { order: r, value: real_total(total)?, contributions })
}

/// `Tr(E^D(J D_1 A D_2 A ⋯ A D_m))` for the closure structure of `π ∈ I(r+1)`
/// with arguments `(J, A, …, A)`; `D_j = E^D(A ⊙ ⋯ ⊙ A)` over the inner list
/// nested under the j-th outer position.
pub fn hadamard_weight(a: &HermitianMatrix, pi: &IntervalPartition) -> GaussianRational {
    let m = a.as_matrix();
    let structure = pi.closure_structure();
    let segments = structure.segments();
    let mut v = ones(m.n());
    for &(outer, inner) in segments.iter().rev() {
        if !inner.is_empty() {
            let diag: Vec<GaussianRational> = m.diagonal().iter().map(|d| d.pow(inner.len())).collect();
            if diag.iter().all(Zero::is_zero) {
                return GaussianRational::zero();
            }
            for (x, d) in v.iter_mut().zip(&diag) {
                *x *= d;
            }
        }
        if outer > 1 {
            v = m.matvec(&v);
        }
    }
    sum(&v)
}

/// `K_r(T)` through the operator-valued evaluator: a Hadamard factor per inner
/// block and a diagonal expectation over the outer block.
pub fn qf_cumulant_hadamard(a: &HermitianMatrix, k: &CumulantSequence, r: usize) -> Result<Rational> {
    check_order(r, k.order())?;
    let mut total = GaussianRational::zero();
    for pi in enumerate_interval(r + 1)? {
        let kpi = lifted_cumulant(&pi, k)?;
        if !kpi.is_zero() {
            total += &hadamard_weight(a, &pi).scale(&kpi);
        }
    }
    real_total(total)
}

/// `K_r(T)` for a family with per-variable cumulants (`X_i` ↔ variable `i`, 1-based).
pub fn qf_cumulant_general(a: &HermitianMatrix, family: &Family, r: usize) -> Result<Rational> {
    let n = a.n();
    if family.len() != n {
        return Err(Error::SizeMismatch { left: n, right: family.len() });
    }
    for i in 1..=n as u32 {
        family.get(i)?;
    }
    check_order(r, family.min_order())?;
    let connected = matching_connected(r)?;
    let m = a.as_matrix();
    let mut word = vec![0u32; 2 * r];
    let mut total = GaussianRational::zero();
    for_each_tuple(n, r + 1, |tuple| {
        let w = entry_product(m, tuple);
        if w.is_zero() {
            return Ok(());
        }
        word[0] = tuple[0] as u32 + 1;
        for (j, &i) in tuple[1..r].iter().enumerate() {
            word[2 * j + 1] = i as u32 + 1;
            word[2 * j + 2] = i as u32 + 1;
        }
        word[2 * r - 1] = tuple[r] as u32 + 1;
        let mut kappa = Rational::zero();
        for pi in &connected {
            kappa += partition_cumulant(pi, &word, family)?;
        }
        total += &w.scale(&kappa);
        Ok(())
    })?;
    real_total(total)
}

/// `Tr(J_n A_1 A_2 ⋯ A_r)`, the mixed cumulant `K_r(T_1, …, T_r)` for a standard normal family.
///
/// For a single matrix (`r = 1`) the cumulant itself is `Tr(J_n A) + Tr(A)`;
/// this function returns the trace term only.
pub fn mixed_qf_cumulant(mats: &[&HermitianMatrix]) -> Result<GaussianRational> {
    let first = mats.first().ok_or_else(|| Error::InvalidArgument("at least one matrix is required".into()))?;
    let n = first.n();
    let inner: Vec<&ComplexMatrix> = mats.iter().map(|m| m.as_matrix()).collect();
    super::trace_j_product(n, &inner)
}

/// `Σ_{i,j} a_ij X_i X_j` as a polynomial in `X_1, …, X_n`.
///
/// The expansion oracle works over ℚ, so every entry must be real.
pub fn quadratic_form_polynomial(a: &HermitianMatrix) -> Result<NCPolynomial> {
    let mut terms = Vec::with_capacity(a.n() * a.n());
    for i in 0..a.n() {
        for j in 0..a.n() {
            let entry = a.get(i, j);
            if !entry.is_real() {
                return Err(Error::InvalidArgument(format!(
                    "the expansion oracle needs real entries; ({}, {}) is {entry}",
                    i + 1,
                    j + 1
                )));
            }
            terms.push((entry.re.clone(), vec![i as u32 + 1, j as u32 + 1]));
        }
    }
    NCPolynomial::from_terms(terms)
}

/// `K_1..K_R` of the quadratic form from the tuple sum and from brute-force expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleComparison {
    pub engine: Vec<Rational>,
    pub oracle: Vec<Rational>,
}

impl OracleComparison {
    pub fn agree(&self) -> bool {
        self.engine == self.oracle
    }
}

pub fn qf_oracle_comparison(a: &HermitianMatrix, k: &CumulantSequence, r: usize) -> Result<OracleComparison> {
    check_order(r, k.order())?;
    let engine = (1..=r).map(|j| qf_cumulant_iid(a, k, j).map(|report| report.value)).collect::<Result<Vec<_>>>()?;
    let oracle = element_cumulants(&quadratic_form_polynomial(a)?, &Family::iid(a.n(), k), r)?;
    Ok(OracleComparison { engine, oracle: oracle.values().to_vec() })
}
