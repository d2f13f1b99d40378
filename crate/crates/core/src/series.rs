//! Truncated power series with exact rational coefficients, the tangent
//! family of number sequences, and the closed-form generating functions of
//! the commutator/anticommutator limit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, format_rational, int, pow};
use crate::Rational;

/// Dense power series `c_0 + c_1 z + ⋯ + c_N z^N`, known exactly through order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least a constant term".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// `c·z`.
    pub fn linear(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = c;
        }
        s
    }

    /// `1 / (1 − c z)`.
    pub fn geometric(c: &Rational, order: usize) -> Self {
        Self { coeffs: (0..=order).map(|k| pow(c, k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or(Error::InsufficientOrder { needed: k, available: self.order() })
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder { needed: order, available: self.order() });
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `f(c z)`.
    pub fn dilate(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        Self { coeffs }
    }

    /// `f(z) / z`; requires `c_0 = 0` and lowers the order by one.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("div_z needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, available: 0 });
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z f(z)`, keeping the order.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    pub fn reciprocal(&self, order: usize) -> Result<Self> {
        series_ratio(&Self::one(order), self, order)
    }

    /// `f^k` through the order of `f`.
    pub fn powi(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

fn zip_with(a: &FormalSeries, b: &FormalSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> FormalSeries {
    let order = a.order().min(b.order());
    FormalSeries { coeffs: (0..=order).map(|k| f(&a.coeffs[k], &b.coeffs[k])).collect() }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;

    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;

    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;

    fn neg(self) -> FormalSeries {
        self.scale(&-Rational::one())
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;

    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        FormalSeries { coeffs }
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}] + O(z^{})", parts.join(", "), self.order() + 1)
    }
}

/// Exact quotient `num / den` through order `order`.
pub fn series_ratio(num: &FormalSeries, den: &FormalSeries, order: usize) -> Result<FormalSeries> {
    if den.coeffs[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let available = num.order().min(den.order());
    if order > available {
        return Err(Error::InsufficientOrder { needed: order, available });
    }
    let inv_d0 = den.coeffs[0].recip();
    let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.coeffs[k].clone();
        for j in 1..=k {
            acc -= &den.coeffs[j] * &q[k - j];
        }
        q.push(acc * &inv_d0);
    }
    FormalSeries::new(q)
}

/// `outer(inner(z))` through order `order`; needs `inner(0) = 0`.
pub fn compose(outer: &FormalSeries, inner: &FormalSeries, order: usize) -> Result<FormalSeries> {
    if !inner.coeffs[0].is_zero() {
        return Err(Error::NonzeroInnerConstant);
    }
    let available = outer.order().min(inner.order());
    if order > available {
        return Err(Error::InsufficientOrder { needed: order, available });
    }
    let inner = inner.truncate(order)?;
    // Horner in the inner series; terms of outer beyond `order` cannot contribute
    let mut acc = FormalSeries::constant(outer.coeffs[order].clone(), order);
    for k in (0..order).rev() {
        acc = &acc * &inner;
        acc.coeffs[0] += &outer.coeffs[k];
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Tan,
    Arctan,
    Sec,
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tan" => Ok(SeriesKind::Tan),
            "arctan" => Ok(SeriesKind::Arctan),
            "sec" => Ok(SeriesKind::Sec),
            other => Err(Error::UnknownSeriesKind(other.to_string())),
        }
    }
}

/// Taylor series at 0 of `tan`, `arctan` or `sec` through order `order`.
pub fn elementary_series(kind: SeriesKind, order: usize) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be >= 1".into()));
    }
    match kind {
        SeriesKind::Tan => Ok(tan_series(order)),
        SeriesKind::Arctan => Ok(FormalSeries {
            coeffs: (0..=order)
                .map(|k| match k % 4 {
                    1 => int(1) / int(k as i64),
                    3 => int(-1) / int(k as i64),
                    _ => Rational::zero(),
                })
                .collect(),
        }),
        SeriesKind::Sec => {
            let cos = FormalSeries {
                coeffs: (0..=order)
                    .map(|k| match k % 4 {
                        0 => factorial(k).recip(),
                        2 => -factorial(k).recip(),
                        _ => Rational::zero(),
                    })
                    .collect(),
            };
            cos.reciprocal(order)
        }
    }
}

// t' = 1 + t², t(0) = 0:  (k + 1) t_{k+1} = [k = 0] + Σ_{i+j=k} t_i t_j
fn tan_series(order: usize) -> FormalSeries {
    let mut t = vec![Rational::zero(); order + 1];
    for k in 0..order {
        let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
        for i in 1..k {
            acc += &t[i] * &t[k - i];
        }
        t[k + 1] = acc / int(k as i64 + 1);
    }
    FormalSeries { coeffs: t }
}

/// Bernoulli numbers `B_0..B_m` with `B_1 = −1/2`, from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for k in 1..=m {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binomial(k + 1, j) * bj;
        }
        b.push(-acc / int(k as i64 + 1));
    }
    b
}

/// Tangent numbers `[T_1, T_3, …, T_{2k_max − 1}]`.
///
/// Computed twice, from Bernoulli numbers via
/// `T_{2k−1} = (−1)^{k+1} 4^k (4^k − 1) B_{2k} / (2k)` and as `(2k−1)!` times the
/// Taylor coefficients of `tan`; a disagreement is reported as an error.
pub fn tangent_numbers(k_max: usize) -> Result<Vec<Rational>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    let bernoulli = bernoulli_numbers(2 * k_max);
    let tan = tan_series(2 * k_max - 1);
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let four_k = pow(&int(4), k);
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        let from_bernoulli = sign * &four_k * (&four_k - int(1)) * &bernoulli[2 * k] / int(2 * k as i64);
        let from_series = factorial(2 * k - 1) * &tan.coeffs[2 * k - 1];
        if from_bernoulli != from_series {
            return Err(Error::Inconsistent(format!(
                "T_{}: Bernoulli route {} != series route {}",
                2 * k - 1,
                from_bernoulli,
                from_series
            )));
        }
        if !(from_series.is_integer() && from_series.is_positive()) {
            return Err(Error::Inconsistent(format!("T_{} = {from_series} is not a positive integer", 2 * k - 1)));
        }
        out.push(from_series);
    }
    Ok(out)
}

/// Euler zigzag numbers `E_0..E_{k_max}` from `tan z + sec z = Σ E_n z^n / n!`.
pub fn zigzag_numbers(k_max: usize) -> Result<Vec<Rational>> {
    let order = k_max.max(1);
    let sum = &tan_series(order) + &elementary_series(SeriesKind::Sec, order)?;
    Ok((0..=k_max).map(|n| factorial(n) * &sum.coeffs[n]).collect())
}

/// Polynomial in one indeterminate with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn mul_x(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Tangent polynomial `T_n(x) = Σ_k T_n^{(k+1)} x^k`, read off `tan z / (1 − x tan z)`.
///
/// The z-coefficients `P_m(x)` of the generating function satisfy
/// `P = tan + x·tan·P`, which is solved order by order.
pub fn tangent_polynomial(n: usize) -> Result<RationalPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("tangent polynomials start at n = 1".into()));
    }
    let tan = tan_series(n);
    let mut p: Vec<RationalPolynomial> = vec![RationalPolynomial::default(); n + 1];
    for m in 1..=n {
        let mut acc = RationalPolynomial::new(vec![tan.coeffs[m].clone()]);
        for i in 1..m {
            if tan.coeffs[i].is_zero() {
                continue;
            }
            acc = &acc + &p[m - i].scale(&tan.coeffs[i]).mul_x();
        }
        p[m] = acc;
    }
    Ok(p[n].scale(&factorial(n)))
}

/// Higher-order tangent number `T_n^{(k)} = n! [z^n] tan^k z`.
pub fn higher_order_tangent_number(n: usize, k: usize) -> Rational {
    let tan = tan_series(n.max(1));
    factorial(n) * &tan.powi(k).coeffs[n]
}

/// Moment generating function of `aP_n + bB_n` in the state `ω`:
/// `tan(n·arctan(bz/n)) / (bz − az·tan(n·arctan(bz/n)))`, through order `order`.
///
/// For `b = 0` this is the analytic limit `1 / (1 − az)`.
pub fn limit_mgf_series(a: &Rational, b: &Rational, n: usize, order: usize) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be >= 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size n must be >= 1".into()));
    }
    if b.is_zero() {
        return Ok(FormalSeries::geometric(a, order));
    }
    let n_rat = int(n as i64);
    let arctan = elementary_series(SeriesKind::Arctan, order + 1)?;
    let inner = arctan.dilate(&(b / &n_rat)).scale(&n_rat);
    let t = compose(&tan_series(order + 1), &inner, order + 1)?;
    ratio_over_shifted_tan(&t, a, b, order)
}

// (t/z) / (b − a t) through `order`
fn ratio_over_shifted_tan(t: &FormalSeries, a: &Rational, b: &Rational, order: usize) -> Result<FormalSeries> {
    let num = t.div_z()?;
    let den = &FormalSeries::constant(b.clone(), order) - &t.scale(a).truncate(order)?;
    series_ratio(&num, &den, order)
}

/// H-transform of the generalized Boolean tangent law,
/// `(1/z)·tan(bz) / (b − a tan(bz)) − 1`, through order `order`.
///
/// For `b = 0` this is the analytic limit `az / (1 − az)`.
pub fn limit_h_series(a: &Rational, b: &Rational, order: usize) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be >= 1".into()));
    }
    let m = if b.is_zero() {
        FormalSeries::geometric(a, order)
    } else {
        let t = tan_series(order + 1).dilate(b);
        ratio_over_shifted_tan(&t, a, b, order)?
    };
    Ok(&m - &FormalSeries::one(order))
}

/// `b^r T_{r+1}(a/b) / (r+1)!`, the r-th cumulant of the generalized tangent law (`b ≠ 0`).
pub fn limit_cumulant_from_polynomial(a: &Rational, b: &Rational, r: usize) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::InvalidArgument("the tangent-polynomial form needs b != 0".into()));
    }
    let poly = tangent_polynomial(r + 1)?;
    Ok(pow(b, r) * poly.eval(&(a / b)) / factorial(r + 1))
}

/// `M(z) = 1 / (1 − H(z))`.
pub fn moment_series_from_h(h: &FormalSeries) -> Result<FormalSeries> {
    if !h.coeffs[0].is_zero() {
        return Err(Error::InvalidArgument("an H-transform has zero constant term".into()));
    }
    let order = h.order();
    (&FormalSeries::one(order) - h).reciprocal(order)
}

/// `H(z) = 1 − 1 / M(z)`.
pub fn h_from_moment_series(m: &FormalSeries) -> Result<FormalSeries> {
    let order = m.order();
    Ok(&FormalSeries::one(order) - &m.reciprocal(order)?)
}

/// Moment series `z / (2z − tan z)` of the Boolean tangent law.
pub fn tangent_law_moment_series(order: usize) -> Result<FormalSeries> {
    let t_over_z = tan_series(order + 1).div_z()?;
    let den = &FormalSeries::constant(int(2), order) - &t_over_z;
    den.reciprocal(order)
}
