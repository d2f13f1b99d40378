//! Quadratic statistics of identically distributed Boolean independent samples:
//! symmetrized squares of linear forms, the sample variance and shifted sums of squares.

use num::{One, Zero};

use crate::cumulants::{element_cumulants, CumulantSequence, Family, NCPolynomial};
use crate::error::{Error, Result};
use crate::matrix::{build_special, qf_cumulant_iid, HermitianMatrix, SpecialKind};
use crate::partitions::enumerate_interval;
use crate::rational::{factorial, int, pow};
use crate::Rational;

/// Weights `α_1, …, α_n` of a linear form `L = Σ α_i X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormSpec {
    weights: Vec<Rational>,
}

impl LinearFormSpec {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidArgument(format!("a linear form needs n >= 2 weights, got {}", weights.len())));
        }
        Ok(Self { weights })
    }

    /// `(1 − 1/n, −1/n, …, −1/n)`.
    pub fn sample_variance(n: usize) -> Result<Self> {
        let inv = int(n as i64).recip();
        Self::new((0..n).map(|i| if i == 0 { Rational::one() - &inv } else { -&inv }).collect())
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn sum(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn sum_squares(&self) -> Rational {
        self.weights.iter().map(|a| a * a).sum()
    }

    fn require_centered(&self) -> Result<()> {
        let total = self.sum();
        if !total.is_zero() {
            return Err(Error::WeightSumNonzero(total));
        }
        Ok(())
    }
}

/// Shifts `a_1, …, a_n` with their cached sum of squares `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftVector {
    shifts: Vec<Rational>,
    s: Rational,
}

impl ShiftVector {
    pub fn new(shifts: Vec<Rational>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidArgument("shift vector must be non-empty".into()));
        }
        let s = shifts.iter().map(|a| a * a).sum();
        Ok(Self { shifts, s })
    }

    pub fn shifts(&self) -> &[Rational] {
        &self.shifts
    }

    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    /// `Σ a_i²`.
    pub fn s(&self) -> &Rational {
        let fresh: Rational = self.shifts.iter().map(|a| a * a).sum();
        assert_eq!(fresh, self.s, "cached sum of squares is stale");
        &self.s
    }

    /// `Σ_i (X_i + a_i)² = Σ_i X_i² + 2a_i X_i + a_i²`.
    pub fn sum_of_squares_polynomial(&self) -> NCPolynomial {
        let mut p = NCPolynomial::zero();
        for (i, a) in self.shifts.iter().enumerate() {
            let v = i as u32 + 1;
            p = p
                + NCPolynomial::monomial(Rational::one(), vec![v, v])
                + NCPolynomial::monomial(a * int(2), vec![v])
                + NCPolynomial::constant(a * a);
        }
        p
    }
}

/// System matrix of `Σ_σ L_σ²` over all permutations `σ ∈ 𝔖_n`, where `L_σ = Σ α_i X_{σ(i)}`:
/// diagonal `(n−1)! Σ α_i²`, off-diagonal `(n−2)! Σ_{i≠j} α_i α_j`.
pub fn symmetrized_square_matrix(w: &LinearFormSpec) -> Result<HermitianMatrix> {
    let n = w.n();
    let sq = w.sum_squares();
    let total = w.sum();
    let diag = factorial(n - 1) * &sq;
    let off = factorial(n - 2) * (&total * &total - &sq);
    let rows: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { diag.clone() } else { off.clone() }).collect()).collect();
    HermitianMatrix::from_real_rows(&rows)
}

/// `K_r(Σ_σ L_σ²) = n ((n−1)!)^r (Σ α_i²)^r K_{2r}` for centered weights.
///
/// For `n ≤ 3`, `r ≤ 3` the value is also computed through the quadratic-form
/// engine on [`symmetrized_square_matrix`] and a disagreement is reported.
pub fn symmetrized_square_cumulant(w: &LinearFormSpec, k: &CumulantSequence, r: usize) -> Result<Rational> {
    w.require_centered()?;
    if r == 0 {
        return Err(Error::InvalidArgument("cumulant order r must be >= 1".into()));
    }
    k.require(2 * r)?;
    let n = w.n();
    let value = int(n as i64) * pow(&(factorial(n - 1) * w.sum_squares()), r) * k.get(2 * r)?;
    if n <= 3 && r <= 3 {
        let via_matrix = qf_cumulant_iid(&symmetrized_square_matrix(w)?, k, r)?.value;
        if via_matrix != value {
            return Err(Error::Inconsistent(format!("closed form {value} != quadratic-form route {via_matrix}")));
        }
    }
    Ok(value)
}

/// `K_r(Q_n) = n (1 − 1/n)^r K_{2r}` for `Q_n = Σ_i (X_i − X̄)²`.
///
/// Cross-checked against the quadratic-form engine with `A = I − P_n` for `n ≤ 4`, `r ≤ 4`.
pub fn sample_variance_cumulant(n: usize, k: &CumulantSequence, r: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sample variance needs n >= 2, got {n}")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("cumulant order r must be >= 1".into()));
    }
    k.require(2 * r)?;
    let nn = int(n as i64);
    let value = &nn * pow(&(Rational::one() - nn.recip()), r) * k.get(2 * r)?;
    if n <= 4 && r <= 4 {
        let via_matrix = qf_cumulant_iid(&sample_variance_matrix(n)?, k, r)?.value;
        if via_matrix != value {
            return Err(Error::Inconsistent(format!("closed form {value} != quadratic-form route {via_matrix}")));
        }
    }
    Ok(value)
}

/// `I − P_n`.
pub fn sample_variance_matrix(n: usize) -> Result<HermitianMatrix> {
    build_special(SpecialKind::Identity, n)?.checked_sub(&build_special(SpecialKind::P, n)?)
}

/// `K_r(Σ_i (X_i + a_i)²)` through the expansion oracle.
pub fn shifted_sos_cumulant(a: &ShiftVector, family: &Family, r: usize) -> Result<Rational> {
    for i in 1..=a.n() as u32 {
        family.get(i)?;
    }
    let k = element_cumulants(&a.sum_of_squares_polynomial(), family, r)?;
    Ok(k.get(r)?.clone())
}

/// First order `r ≤ r_max` at which two shift vectors give different
/// `K_r(Σ (X_i + a_i)²)` for iid variables with cumulants `k`.
pub fn first_shift_invariance_violation(
    k: &CumulantSequence,
    a: &ShiftVector,
    b: &ShiftVector,
    r_max: usize,
) -> Result<Option<usize>> {
    let fa = Family::iid(a.n(), k);
    let fb = Family::iid(b.n(), k);
    let ka = element_cumulants(&a.sum_of_squares_polynomial(), &fa, r_max)?;
    let kb = element_cumulants(&b.sum_of_squares_polynomial(), &fb, r_max)?;
    Ok((1..=r_max).find(|&r| ka.values()[r - 1] != kb.values()[r - 1]))
}

/// `Σ_{π ∈ I(2r), cuts ⊆ odd} s^{r + #Sing(π) − #π}` for any `r ≥ 1` (`0^0 = 1`).
pub fn kagan_compact_sum(s: &Rational, r: usize) -> Result<Rational> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let mut acc = Rational::zero();
    for pi in enumerate_interval(2 * r)? {
        if pi.cuts().iter().any(|c| c % 2 == 0) {
            continue;
        }
        let exponent = r + pi.num_singletons() - pi.num_blocks();
        acc += pow(s, exponent);
    }
    Ok(acc)
}

/// The compact shift-invariance formula, valid for `r ≥ 2`.
///
/// At `r = 1` the compact sum gives `1 + s` while `K_1(Σ (X_i + a_i)²) = n + s`
/// for standard normal variables, so `r = 1` is rejected; use
/// [`kagan_compact_sum`] to inspect that value.
pub fn kagan_closed_form(s: &Rational, r: usize) -> Result<Rational> {
    if r < 2 {
        return Err(Error::InvalidArgument("the compact formula holds for r >= 2 only".into()));
    }
    kagan_compact_sum(s, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::Distribution;
    use crate::rational::rat;

    fn standard_gaussian(order: usize) -> CumulantSequence {
        Distribution::Gaussian { mean: int(0), variance: int(1) }.cumulants(order).unwrap()
    }

    fn seq(values: &[i64]) -> CumulantSequence {
        CumulantSequence::new(values.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn symmetrized_examples() {
        let k = seq(&[3, 5, -2, 7, 1, 4, 9, 2]);
        let w = LinearFormSpec::new(vec![int(1), int(-1)]).unwrap();
        assert_eq!(symmetrized_square_cumulant(&w, &k, 1).unwrap(), int(4) * int(5));
        for n in 2..=3 {
            let w = LinearFormSpec::sample_variance(n).unwrap();
            let nn = int(n as i64);
            for r in 1..=3 {
                let expected = &nn * pow(&(factorial(n - 1) * (int(1) - nn.recip())), r) * k.get(2 * r).unwrap();
                assert_eq!(symmetrized_square_cumulant(&w, &k, r).unwrap(), expected);
            }
        }
        let zero_even = seq(&[1, 0, 1, 0, 1, 0]);
        let w = LinearFormSpec::new(vec![rat(1, 2), rat(1, 3), rat(-5, 6)]).unwrap();
        assert_eq!(symmetrized_square_cumulant(&w, &zero_even, 3).unwrap(), int(0));
        let bad = LinearFormSpec::new(vec![int(1), int(1)]).unwrap();
        assert_eq!(symmetrized_square_cumulant(&bad, &k, 1), Err(Error::WeightSumNonzero(int(2))));
        assert!(LinearFormSpec::new(vec![int(1)]).is_err());
    }

    #[test]
    fn sample_variance_examples() {
        let k = seq(&[2, 3, 5, 7, 11, 13, 17, 19]);
        for r in 1..=4 {
            assert_eq!(
                sample_variance_cumulant(2, &k, r).unwrap(),
                int(2) * pow(&rat(1, 2), r) * k.get(2 * r).unwrap()
            );
        }
        let even = Distribution::EvenPoisson { odd: vec![int(0); 4] }.cumulants(8).unwrap();
        for n in 2..=4 {
            let nn = int(n as i64);
            assert_eq!(sample_variance_cumulant(n, &even, 3).unwrap(), &nn * pow(&(int(1) - nn.recip()), 3));
        }
        let g = Distribution::Gaussian { mean: rat(5, 2), variance: rat(2, 3) }.cumulants(2).unwrap();
        assert_eq!(sample_variance_cumulant(4, &g, 1).unwrap(), int(3) * rat(2, 3));
        assert!(sample_variance_cumulant(1, &k, 1).is_err());
    }

    #[test]
    fn shifted_sos_examples() {
        let g = standard_gaussian(8);
        let a = ShiftVector::new(vec![rat(3, 2)]).unwrap();
        assert_eq!(shifted_sos_cumulant(&a, &Family::iid(1, &g), 2).unwrap(), int(4) * rat(9, 4));
        let u = ShiftVector::new(vec![int(3), int(4), int(0)]).unwrap();
        let v = ShiftVector::new(vec![int(5), int(0), int(0)]).unwrap();
        assert_eq!(u.s(), v.s());
        assert_eq!(first_shift_invariance_violation(&g, &u, &v, 4).unwrap(), None);
        let zero = ShiftVector::new(vec![int(0); 2]).unwrap();
        let plain = element_cumulants(
            &(NCPolynomial::monomial(int(1), vec![1, 1]) + NCPolynomial::monomial(int(1), vec![2, 2])),
            &Family::iid(2, &g),
            3,
        )
        .unwrap();
        assert_eq!(shifted_sos_cumulant(&zero, &Family::iid(2, &g), 3).unwrap(), plain.values()[2]);
    }

    #[test]
    fn poisson_breaks_shift_invariance() {
        let poisson = Distribution::Poisson { rate: int(1), jump: int(1) }.cumulants(8).unwrap();
        let u = ShiftVector::new(vec![int(3), int(4)]).unwrap();
        let v = ShiftVector::new(vec![int(5), int(0)]).unwrap();
        let first = first_shift_invariance_violation(&poisson, &u, &v, 2).unwrap();
        assert!(matches!(first, Some(r) if r <= 2));
    }

    #[test]
    fn kagan_examples() {
        let s = rat(7, 3);
        assert_eq!(kagan_closed_form(&s, 2).unwrap(), int(4) * &s);
        assert_eq!(kagan_closed_form(&int(0), 2).unwrap(), int(0));
        assert!(kagan_closed_form(&s, 1).is_err());
        assert_eq!(kagan_compact_sum(&s, 1).unwrap(), int(1) + &s);
        let g = standard_gaussian(8);
        for n in 1..=3usize {
            let a = ShiftVector::new((0..n).map(|i| rat(i as i64 + 1, 2)).collect()).unwrap();
            let fam = Family::iid(n, &g);
            assert_eq!(shifted_sos_cumulant(&a, &fam, 1).unwrap(), int(n as i64) + a.s());
            for r in 2..=3 {
                assert_eq!(shifted_sos_cumulant(&a, &fam, r).unwrap(), kagan_closed_form(a.s(), r).unwrap());
            }
        }
    }
}
