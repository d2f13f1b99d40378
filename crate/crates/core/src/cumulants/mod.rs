//! Boolean moments and cumulants of words and polynomials in Boolean
//! independent variables.
//!
//! The moment of a word factorizes over its maximal runs of equal letters,
//! `φ(X_{i}^{a} X_{j}^{b} ⋯) = φ(X_i^a) φ(X_j^b) ⋯`, which is Boolean
//! independence. Everything in [`element_cumulants`] and [`mixed_cumulant`]
//! is built on that factorization and on the moment–cumulant recursion only,
//! so it serves as a brute-force oracle for the interval-partition formulas
//! elsewhere in the crate.

mod distribution;
mod polynomial;
mod sequence;

use std::collections::BTreeMap;

use num::{One, Zero};

pub use distribution::Distribution;
pub use polynomial::{NCPolynomial, Word};
pub use sequence::{cumulants_from_moments, moments_from_cumulants, shifted_cumulants, CumulantSequence};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_interval, IntervalPartition};
use crate::Rational;

/// Cumulant sequences of Boolean independent variables, keyed by variable index.
///
/// Identically distributed variables share one sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Family {
    members: BTreeMap<u32, CumulantSequence>,
}

impl Family {
    pub fn new() -> Self {
        Self::default()
    }

    /// `X_1, …, X_n` all with cumulants `k`.
    pub fn iid(n: usize, k: &CumulantSequence) -> Self {
        let mut family = Self::new();
        for i in 1..=n as u32 {
            family.insert(i, k.clone());
        }
        family
    }

    pub fn from_sequences(seqs: impl IntoIterator<Item = CumulantSequence>) -> Self {
        let mut family = Self::new();
        for (i, k) in seqs.into_iter().enumerate() {
            family.insert(i as u32 + 1, k);
        }
        family
    }

    pub fn insert(&mut self, var: u32, k: CumulantSequence) {
        self.members.insert(var, k);
    }

    pub fn get(&self, var: u32) -> Result<&CumulantSequence> {
        self.members.get(&var).ok_or(Error::UnknownVariable(var))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CumulantSequence)> {
        self.members.iter().map(|(&i, k)| (i, k))
    }

    /// Smallest truncation order across the family.
    pub fn min_order(&self) -> usize {
        self.members.values().map(CumulantSequence::order).min().unwrap_or(0)
    }
}

/// Caches univariate moments `φ(X_i^m)` for repeated word evaluation.
struct MomentTable<'a> {
    family: &'a Family,
    moments: BTreeMap<u32, Vec<Rational>>,
}

impl<'a> MomentTable<'a> {
    fn new(family: &'a Family) -> Self {
        Self { family, moments: BTreeMap::new() }
    }

    fn power_moment(&mut self, var: u32, m: usize) -> Result<Rational> {
        let have = self.moments.get(&var).map_or(0, Vec::len);
        if have < m {
            let k = self.family.get(var)?;
            self.moments.insert(var, moments_from_cumulants(k, m)?);
        }
        Ok(self.moments[&var][m - 1].clone())
    }

    fn word(&mut self, word: &[u32]) -> Result<Rational> {
        let mut acc = Rational::one();
        for run in word.chunk_by(|a, b| a == b) {
            acc *= self.power_moment(run[0], run.len())?;
            if acc.is_zero() {
                // still validate the remaining letters
                for rest in word.iter() {
                    self.family.get(*rest)?;
                }
                break;
            }
        }
        Ok(acc)
    }

    fn polynomial(&mut self, p: &NCPolynomial) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (w, c) in p.terms() {
            acc += c * self.word(w)?;
        }
        Ok(acc)
    }
}

/// Mixed moment `φ(X_{w_1} ⋯ X_{w_L})` of a word in the family's state.
///
/// Equals `Σ_{π ∈ I(L), ker w ≥ π} Π_{B ∈ π} K_{|B|}(X_B)`; needs each variable's
/// cumulants up to the length of its longest run.
pub fn word_moment(word: &[u32], family: &Family) -> Result<Rational> {
    MomentTable::new(family).word(word)
}

/// `φ(P)` by linearity over the words of `P`.
pub fn polynomial_moment(p: &NCPolynomial, family: &Family) -> Result<Rational> {
    MomentTable::new(family).polynomial(p)
}

/// Limits for the brute-force expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum raw term count of a single polynomial product.
    pub max_terms: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_terms: 2_000_000 }
    }
}

/// Boolean cumulants `K_1..K_R` of the single element `P`, by expanding
/// `P, P², …, P^R`, evaluating the moments word by word and inverting.
pub fn element_cumulants(p: &NCPolynomial, family: &Family, r: usize) -> Result<CumulantSequence> {
    element_cumulants_with(p, family, r, &OracleConfig::default())
}

pub fn element_cumulants_with(
    p: &NCPolynomial,
    family: &Family,
    r: usize,
    config: &OracleConfig,
) -> Result<CumulantSequence> {
    if r == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    for v in p.variables() {
        family.get(v)?;
    }
    let mut table = MomentTable::new(family);
    let mut power = NCPolynomial::one();
    let mut moments = Vec::with_capacity(r);
    for _ in 0..r {
        power = power.checked_mul(p, config.max_terms)?;
        moments.push(table.polynomial(&power)?);
    }
    cumulants_from_moments(&moments, r)
}

/// `K_n(Y_1, …, Y_n) = Σ_{π ∈ I(n)} (−1)^{#π−1} Π_{B ∈ π} φ(Π_{i ∈ B} Y_i)`.
pub fn mixed_cumulant(args: &[NCPolynomial], family: &Family) -> Result<Rational> {
    mixed_cumulant_with(args, family, &OracleConfig::default())
}

pub fn mixed_cumulant_with(args: &[NCPolynomial], family: &Family, config: &OracleConfig) -> Result<Rational> {
    let n = args.len();
    if n == 0 {
        return Err(Error::InvalidArgument("mixed cumulant needs at least one argument".into()));
    }
    let mut table = MomentTable::new(family);
    // interval[i][j] = φ(Y_{i+1} ⋯ Y_{j+1})
    let mut interval = vec![vec![Rational::zero(); n]; n];
    for (i, row) in interval.iter_mut().enumerate() {
        let mut product = NCPolynomial::one();
        for (j, arg) in args.iter().enumerate().skip(i) {
            product = product.checked_mul(arg, config.max_terms)?;
            row[j] = table.polynomial(&product)?;
        }
    }
    let mut total = Rational::zero();
    for pi in enumerate_interval(n)? {
        let mut term = Rational::one();
        for block in pi.blocks() {
            term *= &interval[block.start() - 1][block.end() - 1];
        }
        if (pi.num_blocks() - 1) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `K_π(X_{w_1}, …, X_{w_L})` under vanishing of mixed cumulants: the product
/// of `K_{|B|}` over blocks, zero as soon as a block carries two different variables.
pub fn partition_cumulant(pi: &IntervalPartition, word: &[u32], family: &Family) -> Result<Rational> {
    if word.len() != pi.n() {
        return Err(Error::LengthMismatch { expected: pi.n(), actual: word.len() });
    }
    let mut acc = Rational::one();
    for block in pi.blocks() {
        let letters = &word[block.start() - 1..*block.end()];
        if letters.windows(2).any(|w| w[0] != w[1]) {
            return Ok(Rational::zero());
        }
        acc *= family.get(letters[0])?.get(letters.len())?;
    }
    Ok(acc)
}

/// Cumulant of grouped products via the product formula:
/// `K_r(X_1⋯X_{i_1}, …) = Σ_{π ∈ I(L), π ∨ ρ = 1̂_L} K_π(X_{w_1}, …, X_{w_L})`,
/// where `ρ` is the interval partition with block sizes `grouping`.
pub fn product_cumulant(grouping: &[usize], word: &[u32], family: &Family) -> Result<Rational> {
    let total: usize = grouping.iter().sum();
    if total != word.len() {
        return Err(Error::LengthMismatch { expected: word.len(), actual: total });
    }
    let rho = IntervalPartition::from_block_sizes(grouping)?;
    let mut acc = Rational::zero();
    for pi in enumerate_interval(word.len())? {
        if pi.join_is_top(&rho)? {
            acc += partition_cumulant(&pi, word, family)?;
        }
    }
    Ok(acc)
}
