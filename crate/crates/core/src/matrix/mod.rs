//! Gaussian-rational matrices, the special matrices `J_n`, `P_n`, `B_n`, trace
//! identities under `J_n`, and the quadratic-form cumulant engines.
//!
//! Everything that involves `J_n` is computed through the all-ones vector:
//! `Tr(J_n M) = 1ᵀ M 1` and `J_n M = 0` iff `1ᵀ M = 0`. No matrix power is ever
//! formed explicitly.

mod gaussian;
mod qf;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

pub use gaussian::GaussianRational;
pub use qf::{
    hadamard_weight, mixed_qf_cumulant, qf_cumulant_general, qf_cumulant_hadamard, qf_cumulant_iid,
    qf_oracle_comparison, quadratic_form_polynomial, OracleComparison, QFCumulantReport,
};

use crate::error::{Error, Result};
use crate::rational::int;
use crate::series::FormalSeries;
use crate::Rational;

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, actual: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GaussianRational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn diagonal(&self) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same dimension");
        }
        acc
    }

    pub fn trace(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for i in 0..self.n {
            acc += self.get(i, i);
        }
        acc
    }

    /// `M v`.
    pub fn matvec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        self.rows()
            .map(|row| {
                let mut acc = GaussianRational::zero();
                for (a, x) in row.iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `vᵀ M`.
    pub fn vecmat(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.n];
        for (x, row) in v.iter().zip(self.rows()) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += &(x * a);
                }
            }
        }
        out
    }

    /// Row sums `M 1`.
    pub fn row_sums(&self) -> Vec<GaussianRational> {
        self.matvec(&ones(self.n))
    }

    fn same_dim(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        Ok(())
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn ones(n: usize) -> Vec<GaussianRational> {
    vec![GaussianRational::one(); n]
}

pub(crate) fn sum(v: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for x in v {
        acc += x;
    }
    acc
}

/// Self-adjoint matrix with Gaussian-rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<[String; 2]>>,
}

impl HermitianMatrix {
    /// Validates `A = A*`; the error names the first violating pair in row-major order.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.n();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be >= 1".into()));
        }
        for i in 0..n {
            for j in i..n {
                if *matrix.get(i, j) != matrix.get(j, i).conj() {
                    return Err(Error::NotHermitian { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(Self { inner: matrix })
    }

    /// Real symmetric matrix from rational rows.
    pub fn from_real_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().cloned().map(GaussianRational::real).collect()).collect();
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_real_rows(&rows)
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        self.inner.get(i, j)
    }

    /// Diagonal entries (real by self-adjointness).
    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n()).map(|i| self.get(i, i).re.clone()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { inner: self.inner.scale(&GaussianRational::real(c.clone())) }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.checked_add(&rhs.inner)? })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { inner: self.inner.checked_sub(&rhs.inner)? })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)?;
        if file.entries.len() != file.n {
            return Err(Error::Parse(format!("expected {} rows, found {}", file.n, file.entries.len())));
        }
        let mut rows = Vec::with_capacity(file.n);
        for (i, row) in file.entries.iter().enumerate() {
            if row.len() != file.n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {}", i + 1, row.len(), file.n)));
            }
            rows.push(row.iter().map(|[re, im]| GaussianRational::parse_pair(re, im)).collect::<Result<Vec<_>>>()?);
        }
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn to_json_string(&self) -> String {
        let file = MatrixFile {
            n: self.n(),
            entries: self.inner.rows().map(|row| row.iter().map(GaussianRational::to_pair).collect()).collect(),
        };
        serde_json::to_string(&file).expect("matrix file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

impl fmt::Display for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    /// All-ones matrix `J_n`.
    J,
    /// Projection `P_n = J_n / n`.
    P,
    /// `B_n`: `i/n` above the diagonal, `−i/n` below, zero diagonal.
    B,
    Identity,
}

impl FromStr for SpecialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J" | "j" => Ok(SpecialKind::J),
            "P" | "p" => Ok(SpecialKind::P),
            "B" | "b" => Ok(SpecialKind::B),
            "I" | "identity" => Ok(SpecialKind::Identity),
            other => Err(Error::Parse(format!("unknown special matrix `{other}` (expected J, P, B or identity)"))),
        }
    }
}

pub fn build_special(kind: SpecialKind, n: usize) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix dimension must be >= 1".into()));
    }
    let inv_n = int(n as i64).recip();
    let m = match kind {
        SpecialKind::J => ComplexMatrix::from_fn(n, |_, _| GaussianRational::one()),
        SpecialKind::P => ComplexMatrix::from_fn(n, |_, _| GaussianRational::real(inv_n.clone())),
        SpecialKind::B => ComplexMatrix::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => GaussianRational::new(Rational::zero(), inv_n.clone()),
            std::cmp::Ordering::Greater => GaussianRational::new(Rational::zero(), -&inv_n),
            std::cmp::Ordering::Equal => GaussianRational::zero(),
        }),
        SpecialKind::Identity => ComplexMatrix::identity(n),
    };
    HermitianMatrix::new(m)
}

/// `Tr(J_n M_1 M_2 ⋯ M_k) = 1ᵀ M_1 ⋯ M_k 1`; for an empty product this is `n`.
pub fn trace_j_product(n: usize, mats: &[&ComplexMatrix]) -> Result<GaussianRational> {
    let mut v = ones(n);
    for m in mats.iter().rev() {
        if m.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: m.n() });
        }
        v = m.matvec(&v);
    }
    Ok(sum(&v))
}

/// `1ᵀ A^k 1` for every `k = 0..=k_max`.
fn j_power_traces(a: &ComplexMatrix, k_max: usize) -> Vec<GaussianRational> {
    let mut v = ones(a.n());
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(sum(&v));
    for _ in 0..k_max {
        v = a.matvec(&v);
        out.push(sum(&v));
    }
    out
}

fn real_or_inconsistent(z: GaussianRational, what: &str) -> Result<Rational> {
    if !z.is_real() {
        return Err(Error::Inconsistent(format!("{what} has nonzero imaginary part {}", z.im)));
    }
    Ok(z.re)
}

/// `Tr(J_n A^k)`, real for self-adjoint `A`.
pub fn trace_j_power(a: &HermitianMatrix, k: usize) -> Result<Rational> {
    let z = j_power_traces(a.as_matrix(), k).pop().expect("k + 1 traces");
    real_or_inconsistent(z, "Tr(J A^k)")
}

/// `ω(A^m) = Tr(P_n A^m)`.
pub fn omega_moment(a: &HermitianMatrix, m: usize) -> Result<Rational> {
    Ok(trace_j_power(a, m)? / int(a.n() as i64))
}

/// The three zero-sum characterizations computed independently, plus diagonal constancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumReport {
    pub is_zero_row_sum: bool,
    pub tr_ja2_zero: bool,
    /// `Tr(J A^k) = 0` for every `1 ≤ k ≤ 2n`.
    pub tr_jak_zero_upto_2n: bool,
    pub constant_diagonal: bool,
}

impl ZeroSumReport {
    pub fn conditions_agree(&self) -> bool {
        self.is_zero_row_sum == self.tr_ja2_zero && self.tr_ja2_zero == self.tr_jak_zero_upto_2n
    }
}

pub fn zero_sum_checks(a: &HermitianMatrix) -> ZeroSumReport {
    let m = a.as_matrix();
    let n = a.n();
    let is_zero_row_sum = m.row_sums().iter().all(Zero::is_zero);
    let tr_ja2_zero = trace_j_product(n, &[m, m]).expect("same dimension").is_zero();
    let tr_jak_zero_upto_2n = j_power_traces(m, 2 * n).iter().skip(1).all(Zero::is_zero);
    let diag = a.diagonal();
    let constant_diagonal = diag.windows(2).all(|w| w[0] == w[1]);
    ZeroSumReport { is_zero_row_sum, tr_ja2_zero, tr_jak_zero_upto_2n, constant_diagonal }
}

/// Which of the two products `J A^k B`, `J B^k A` failed to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductSide {
    AkB,
    BkA,
}

impl fmt::Display for ProductSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductSide::AkB => write!(f, "J A^k B"),
            ProductSide::BkA => write!(f, "J B^k A"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    pub k_max: usize,
    /// First `(k, side)` with a nonzero product, scanning `k` upwards and `A^k B` before `B^k A`.
    pub witness: Option<(usize, ProductSide)>,
}

/// Checks `J A^k B = 0` and `J B^k A = 0` for `1 ≤ k ≤ k_max` (default `2n`; only `k = 1` when `n = 2`).
pub fn independence_check(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    k_max: Option<usize>,
) -> Result<IndependenceReport> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.n() });
    }
    let k_max = match (n, k_max) {
        (2, _) => 1,
        (_, Some(k)) => k,
        (_, None) => 2 * n,
    };
    let (am, bm) = (a.as_matrix(), b.as_matrix());
    let mut row_a = ones(n);
    let mut row_b = ones(n);
    for k in 1..=k_max {
        row_a = am.vecmat(&row_a);
        row_b = bm.vecmat(&row_b);
        if !bm.vecmat(&row_a).iter().all(Zero::is_zero) {
            return Ok(IndependenceReport { independent: false, k_max, witness: Some((k, ProductSide::AkB)) });
        }
        if !am.vecmat(&row_b).iter().all(Zero::is_zero) {
            return Ok(IndependenceReport { independent: false, k_max, witness: Some((k, ProductSide::BkA)) });
        }
    }
    Ok(IndependenceReport { independent: true, k_max, witness: None })
}

/// `J A^k B = 0` as a matrix.
pub fn j_power_product_vanishes(a: &HermitianMatrix, k: usize, b: &HermitianMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let mut row = ones(a.n());
    for _ in 0..k {
        row = a.as_matrix().vecmat(&row);
    }
    Ok(b.as_matrix().vecmat(&row).iter().all(Zero::is_zero))
}

/// `H_T(z) = Σ_{k≥1} Tr(J A^k) z^k` for the quadratic form of a standard normal family.
pub fn h_series_qf(a: &HermitianMatrix, order: usize) -> Result<FormalSeries> {
    let traces = j_power_traces(a.as_matrix(), order);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    for z in traces.into_iter().skip(1) {
        coeffs.push(real_or_inconsistent(z, "Tr(J A^k)")?);
    }
    FormalSeries::new(coeffs)
}

/// Whether `Tr(J A^k) = λ α^k` for `k = 1..=r_max`, i.e. the H-transform of the
/// Boolean Poisson law with rate `λ` and jump `α`.
pub fn poisson_qf_check(a: &HermitianMatrix, lambda: &Rational, alpha: &Rational, r_max: usize) -> Result<bool> {
    if r_max < 2 {
        return Err(Error::InvalidArgument("poisson check needs R >= 2".into()));
    }
    let h = h_series_qf(a, r_max)?;
    let mut power = Rational::one();
    for k in 1..=r_max {
        power *= alpha;
        if *h.coeff(k)? != lambda * &power {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Tr(J Λ^k A Λ^k) = Σ_{i,j} (a_ii a_jj)^k a_ij` with `Λ = diag(A)`.
pub fn lemma25_probe_value(a: &HermitianMatrix, k: usize) -> GaussianRational {
    let lambda: Vec<GaussianRational> =
        a.diagonal().into_iter().map(|d| GaussianRational::real(crate::rational::pow(&d, k))).collect();
    let mut acc = GaussianRational::zero();
    for (i, row) in a.as_matrix().rows().enumerate() {
        for (j, aij) in row.iter().enumerate() {
            acc += &(&(&lambda[i] * &lambda[j]) * aij);
        }
    }
    acc
}

/// True iff the probe vanishes for every even `k` with `2 ≤ k ≤ k_max_even`.
pub fn lemma25_probe(a: &HermitianMatrix, k_max_even: usize) -> Result<bool> {
    if k_max_even < 2 || !k_max_even.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("k_max_even must be even and >= 2, got {k_max_even}")));
    }
    Ok((2..=k_max_even).step_by(2).all(|k| lemma25_probe_value(a, k).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn g(re: Rational) -> GaussianRational {
        GaussianRational::real(re)
    }

    fn sample_variance_matrix(n: usize) -> HermitianMatrix {
        build_special(SpecialKind::Identity, n)
            .unwrap()
            .checked_sub(&build_special(SpecialKind::P, n).unwrap())
            .unwrap()
    }

    #[test]
    fn special_matrices() {
        let j2 = build_special(SpecialKind::J, 2).unwrap();
        assert!(j2.as_matrix().rows().flatten().all(|x| x.is_one()));
        let b2 = build_special(SpecialKind::B, 2).unwrap();
        assert_eq!(*b2.get(0, 1), GaussianRational::new(int(0), rat(1, 2)));
        assert_eq!(*b2.get(1, 0), GaussianRational::new(int(0), rat(-1, 2)));
        let sq = b2.as_matrix().checked_mul(b2.as_matrix()).unwrap();
        assert_eq!(sq, ComplexMatrix::identity(2).scale(&g(rat(1, 4))));
        for n in 1..=8 {
            let p = build_special(SpecialKind::P, n).unwrap();
            assert_eq!(p.as_matrix().checked_mul(p.as_matrix()).unwrap(), *p.as_matrix());
        }
        assert!(build_special(SpecialKind::B, 0).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let b3 = build_special(SpecialKind::B, 3).unwrap();
        let text = b3.to_json_string();
        assert!(text.starts_with(r#"{"n":3,"entries":[[["0/1","0/1"],["0/1","1/3"]"#));
        assert_eq!(HermitianMatrix::from_json_str(&text).unwrap(), b3);
        let bad = r#"{"n":2,"entries":[[["1","0"],["2","1"]],[["2","1"],["0","0"]]]}"#;
        assert_eq!(HermitianMatrix::from_json_str(bad), Err(Error::NotHermitian { i: 1, j: 2 }));
        let bad_diag = r#"{"n":1,"entries":[[["1","1"]]]}"#;
        assert_eq!(HermitianMatrix::from_json_str(bad_diag), Err(Error::NotHermitian { i: 1, j: 1 }));
        assert!(matches!(HermitianMatrix::from_json_str(r#"{"n":2,"entries":[]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn trace_examples() {
        let swap = HermitianMatrix::from_integer_rows(&[&[0, 1], &[1, 0]]).unwrap();
        for k in 0..6 {
            assert_eq!(trace_j_power(&swap, k).unwrap(), int(2));
        }
        let zs = HermitianMatrix::from_integer_rows(&[&[1, -1], &[-1, 1]]).unwrap();
        assert_eq!(trace_j_power(&zs, 2).unwrap(), int(0));
        let b2 = build_special(SpecialKind::B, 2).unwrap();
        assert_eq!(omega_moment(&b2, 2).unwrap(), rat(1, 4));
        let p4 = build_special(SpecialKind::P, 4).unwrap();
        assert_eq!(omega_moment(&p4, 5).unwrap(), int(1));
        assert_eq!(omega_moment(&build_special(SpecialKind::Identity, 3).unwrap(), 1).unwrap(), int(1));
    }

    #[test]
    fn zero_sum_examples() {
        for n in 2..=5 {
            let report = zero_sum_checks(&sample_variance_matrix(n));
            assert!(report.is_zero_row_sum && report.tr_ja2_zero && report.tr_jak_zero_upto_2n);
            assert!(report.constant_diagonal);
            let report = zero_sum_checks(&build_special(SpecialKind::J, n).unwrap());
            assert!(!report.is_zero_row_sum && !report.tr_ja2_zero && !report.tr_jak_zero_upto_2n);
            assert!(report.constant_diagonal && report.conditions_agree());
        }
    }

    #[test]
    fn independence_examples() {
        let a = HermitianMatrix::from_integer_rows(&[&[-15, 6, 1], &[6, 9, -8], &[1, -8, 5]]).unwrap();
        let b = HermitianMatrix::from_integer_rows(&[&[-1, 16, 60], &[16, 44, 90], &[60, 90, 75]]).unwrap();
        assert!(j_power_product_vanishes(&a, 1, &b).unwrap());
        assert!(j_power_product_vanishes(&b, 1, &a).unwrap());
        assert!(!j_power_product_vanishes(&a, 2, &b).unwrap());
        assert!(!j_power_product_vanishes(&b, 2, &a).unwrap());
        let report = independence_check(&a, &b, None).unwrap();
        assert_eq!(report.witness, Some((2, ProductSide::AkB)));

        // zero-sum blocks on disjoint coordinates
        let a = HermitianMatrix::from_integer_rows(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]])
            .unwrap();
        let b = HermitianMatrix::from_integer_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 2, -2], &[0, 0, -2, 2]])
            .unwrap();
        let report = independence_check(&a, &b, None).unwrap();
        assert!(report.independent && report.k_max == 8);
        assert!(independence_check(&a, &build_special(SpecialKind::J, 3).unwrap(), None).is_err());
    }

    #[test]
    fn h_series_and_poisson() {
        for n in 1..=4 {
            let p = build_special(SpecialKind::P, n).unwrap();
            let h = h_series_qf(&p, 6).unwrap();
            assert_eq!(h.coeff(0).unwrap(), &int(0));
            assert!(h.coeffs()[1..].iter().all(|c| *c == int(n as i64)));
            assert!(poisson_qf_check(&p, &int(n as i64), &int(1), 6).unwrap());
            if n > 1 {
                assert!(!poisson_qf_check(&p, &int(1), &int(n as i64), 2).unwrap());
            }
            let h = h_series_qf(&build_special(SpecialKind::Identity, n).unwrap(), 4).unwrap();
            assert!(h.coeffs()[1..].iter().all(|c| *c == int(n as i64)));
        }
        let zs = sample_variance_matrix(3);
        assert!(h_series_qf(&zs, 5).unwrap().coeffs().iter().all(Zero::is_zero));
        assert!(poisson_qf_check(&zs, &int(0), &rat(7, 3), 5).unwrap());
        assert!(poisson_qf_check(&zs, &int(0), &int(1), 1).is_err());
    }

    #[test]
    fn lemma25_examples() {
        let zero = HermitianMatrix::from_integer_rows(&[&[0, 0], &[0, 0]]).unwrap();
        assert!(lemma25_probe(&zero, 6).unwrap());
        let off = HermitianMatrix::from_integer_rows(&[&[0, 3], &[3, 0]]).unwrap();
        assert!(lemma25_probe(&off, 4).unwrap());
        assert_eq!(lemma25_probe_value(&off, 0), g(int(6)));
        let mixed = HermitianMatrix::from_integer_rows(&[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(lemma25_probe_value(&mixed, 2), g(int(2)));
        assert!(!lemma25_probe(&mixed, 2).unwrap());
        assert!(lemma25_probe(&mixed, 3).is_err());
    }
}
