use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::binomial;
use crate::Rational;

/// Truncated list of Boolean cumulants `[K_1, …, K_R]` of one variable.
///
/// Reads past the truncation order are errors; a sequence never pretends
/// that `K_{R+1}` is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CumulantSequence {
    values: Vec<Rational>,
}

impl CumulantSequence {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a cumulant sequence needs order >= 1".into()));
        }
        Ok(Self { values })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `K_k`, 1-based.
    pub fn get(&self, k: usize) -> Result<&Rational> {
        if k == 0 {
            return Err(Error::InvalidArgument("cumulants are indexed from 1".into()));
        }
        self.values.get(k - 1).ok_or(Error::InsufficientOrder { needed: k, available: self.order() })
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if needed > self.order() {
            return Err(Error::InsufficientOrder { needed, available: self.order() });
        }
        Ok(())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        Self::new(self.values[..order].to_vec())
    }

    /// Copy with `K_k` replaced.
    pub fn with(&self, k: usize, value: Rational) -> Result<Self> {
        self.get(k)?;
        let mut values = self.values.clone();
        values[k - 1] = value;
        Ok(Self { values })
    }
}

/// Moments `[m_1, …, m_N]` from `m_n = Σ_{k=1}^{n} K_k m_{n−k}` with `m_0 = 1`.
pub fn moments_from_cumulants(cumulants: &CumulantSequence, n: usize) -> Result<Vec<Rational>> {
    cumulants.require(n)?;
    let k = cumulants.values();
    let mut m = Vec::with_capacity(n + 1);
    m.push(Rational::one());
    for order in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=order {
            acc += &k[j - 1] * &m[order - j];
        }
        m.push(acc);
    }
    m.remove(0);
    Ok(m)
}

/// Inverse of [`moments_from_cumulants`]: `K_n = m_n − Σ_{k=1}^{n−1} K_k m_{n−k}`.
pub fn cumulants_from_moments(moments: &[Rational], n: usize) -> Result<CumulantSequence> {
    if moments.len() < n {
        return Err(Error::InsufficientOrder { needed: n, available: moments.len() });
    }
    let m = |j: usize| -> Rational {
        if j == 0 {
            Rational::one()
        } else {
            moments[j - 1].clone()
        }
    };
    let mut k: Vec<Rational> = Vec::with_capacity(n);
    for order in 1..=n {
        let mut acc = m(order);
        for j in 1..order {
            acc -= &k[j - 1] * m(order - j);
        }
        k.push(acc);
    }
    CumulantSequence::new(k)
}

/// Cumulants of `X + a·1` through order `r`:
/// `K_1 + a` and `K_m(X + a) = Σ_{i=0}^{m−2} C(m−2, i) a^i K_{m−i}(X)` for `m ≥ 2`.
pub fn shifted_cumulants(cumulants: &CumulantSequence, shift: &Rational, r: usize) -> Result<CumulantSequence> {
    if r == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    cumulants.require(r)?;
    let k = cumulants.values();
    let mut out = Vec::with_capacity(r);
    out.push(&k[0] + shift);
    for m in 2..=r {
        let mut acc = Rational::zero();
        let mut a_pow = Rational::one();
        for i in 0..=m - 2 {
            acc += binomial(m - 2, i) * &a_pow * &k[m - i - 1];
            a_pow *= shift;
        }
        out.push(acc);
    }
    CumulantSequence::new(out)
}
