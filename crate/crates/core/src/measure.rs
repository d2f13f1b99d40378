//! Floating-point side of the Boolean tangent law: its atoms, the Lévy measure
//! of its self-energy, moment and Cauchy-transform checks, the large-n
//! convergence of quadratic-form cumulants, and trace approximations of
//! `ζ(2k+2)`, tangent and zigzag numbers.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use num::complex::Complex64;
use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::{
    build_special, hadamard_weight, omega_moment, ComplexMatrix, GaussianRational, HermitianMatrix, SpecialKind,
};
use crate::partitions::enumerate_interval;
use crate::rational::{exact_sqrt, factorial, int, to_f64};
use crate::series::{limit_h_series, tangent_law_moment_series, tangent_numbers, zigzag_numbers};
use crate::Rational;

pub const POLE_GUARD: f64 = 1e-6;
pub const ATOM_GUARD: f64 = 1e-9;
const BRACKET_INSET: f64 = 1e-9;

/// Finite measure made of point masses, sorted by location.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<(f64, f64)>,
}

impl AtomicMeasure {
    /// Sorts the atoms and validates positivity, distinct locations and total mass `≤ 1 + 1e−12`.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(&(x, m)) = atoms.iter().find(|(x, m)| !(x.is_finite() && *m > 0.0)) {
            return Err(Error::InvalidArgument(format!("atom at {x} has non-positive or non-finite mass {m}")));
        }
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(format!("duplicate atom location {}", w[0].0)));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if total > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!("total mass {total} exceeds 1")));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.moment(0)
    }

    /// Positive locations in descending order.
    pub fn positive_locations(&self) -> Vec<f64> {
        self.atoms.iter().rev().map(|a| a.0).filter(|&x| x > 0.0).collect()
    }

    pub fn mass_at(&self, location: f64) -> Option<f64> {
        self.atoms.iter().find(|a| a.0 == location).map(|a| a.1)
    }

    /// `Σ mass · x^m`.
    ///
    /// Positive and negative atoms are each summed in order of increasing `|x|`,
    /// so odd moments of a symmetric measure cancel exactly.
    pub fn moment(&self, m: usize) -> f64 {
        let power = |x: f64| x.powi(m as i32);
        let zero: f64 = self.atoms.iter().filter(|a| a.0 == 0.0).map(|a| a.1 * power(0.0)).sum();
        let positive: f64 = self.atoms.iter().filter(|a| a.0 > 0.0).map(|a| a.1 * power(a.0)).sum();
        let negative: f64 = self.atoms.iter().rev().filter(|a| a.0 < 0.0).map(|a| a.1 * power(a.0)).sum();
        zero + positive + negative
    }

    /// `G(z) = Σ mass / (z − x)`.
    pub fn cauchy_transform(&self, z: Complex64) -> Complex64 {
        self.atoms.iter().map(|&(x, m)| Complex64::new(m, 0.0) / (z - x)).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("location,mass\n");
        for (x, m) in &self.atoms {
            writeln!(out, "{x:.16e},{m:.16e}").expect("write to string");
        }
        out
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::BracketFailure { lo, hi });
    }
    // run to full precision: the residual near a pole is amplified by sec²
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Positive solutions `u_1 < u_2 < ⋯` of `tan u = 2u`, one per branch of `tan`.
pub fn tan_fixed_points(count: usize) -> Result<Vec<f64>> {
    let f = |u: f64| u.tan() - 2.0 * u;
    (0..count)
        .map(|m| {
            let base = m as f64 * PI;
            let lo = if m == 0 { FRAC_PI_4 + BRACKET_INSET } else { base + BRACKET_INSET };
            bisect(f, lo, base + FRAC_PI_2 - BRACKET_INSET)
        })
        .collect()
}

/// The Boolean tangent law truncated to `pairs` symmetric pairs:
/// atoms at `±x` with `2/x = tan(1/x)` and mass `x²/(4 − x²)`, plus mass `1/2` at 0.
pub fn tangent_atoms(pairs: usize) -> Result<AtomicMeasure> {
    if pairs == 0 {
        return Err(Error::InvalidArgument("pairs must be >= 1".into()));
    }
    let mut atoms = vec![(0.0, 0.5)];
    for u in tan_fixed_points(pairs)? {
        let x = 1.0 / u;
        let mass = x * x / (4.0 - x * x);
        atoms.push((x, mass));
        atoms.push((-x, mass));
    }
    AtomicMeasure::new(atoms)
}

/// Lévy measure of the self-energy: atoms at `±2/(nπ)` for the first `terms`
/// odd `n`, mass `x⁴/(1 + x²)`.
pub fn levy_atoms(terms: usize) -> Result<AtomicMeasure> {
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be >= 1".into()));
    }
    let mut atoms = Vec::with_capacity(2 * terms);
    for j in 1..=terms {
        let x = 2.0 / ((2 * j - 1) as f64 * PI);
        let mass = x.powi(4) / (1.0 + x * x);
        atoms.push((x, mass));
        atoms.push((-x, mass));
    }
    AtomicMeasure::new(atoms)
}

/// `φ(z) = z² tan(1/z) − z`, rejecting `z` whose reciprocal lies within `guard` of a pole of `tan`.
pub fn self_energy_eval_with(z: f64, guard: f64) -> Result<f64> {
    if z == 0.0 || !z.is_finite() {
        return Err(Error::PoleProximity(z));
    }
    let u = 1.0 / z;
    let k = ((u / FRAC_PI_2 - 1.0) / 2.0).round();
    if (u - (2.0 * k + 1.0) * FRAC_PI_2).abs() < guard {
        return Err(Error::PoleProximity(z));
    }
    Ok(z * z * u.tan() - z)
}

pub fn self_energy_eval(z: f64) -> Result<f64> {
    self_energy_eval_with(z, POLE_GUARD)
}

/// `Σ 32z / ((n²π²z² − 4) n²π²)` over the first `terms` odd `n`.
pub fn levy_partial_sum_with(z: f64, terms: usize, guard: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("z = {z} is not finite")));
    }
    if z != 0.0 {
        // nearest atoms 2/(nπ) to |z|
        let n_star = 2.0 / (PI * z.abs());
        let base = n_star.floor() as i64;
        for n in [base - 1, base, base + 1, base + 2] {
            if n >= 1 && n % 2 == 1 && (z.abs() - 2.0 / (n as f64 * PI)).abs() < guard {
                return Err(Error::AtomProximity(z));
            }
        }
        if z.abs() < guard {
            return Err(Error::AtomProximity(z));
        }
    }
    let pi2 = PI * PI;
    let mut acc = 0.0;
    for j in 1..=terms {
        let n = (2 * j - 1) as f64;
        let nn = n * n * pi2;
        acc += 32.0 * z / ((nn * z * z - 4.0) * nn);
    }
    Ok(acc)
}

pub fn levy_partial_sum(z: f64, terms: usize) -> Result<f64> {
    levy_partial_sum_with(z, terms, ATOM_GUARD)
}

/// `Σ 1/n²` over the first `terms` odd `n`; tends to `π²/8`.
pub fn odd_reciprocal_square_sum(terms: usize) -> f64 {
    (1..=terms).rev().map(|j| 1.0 / ((2 * j - 1) as f64).powi(2)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentRow {
    pub m: usize,
    pub atom_moment: f64,
    pub series_moment: f64,
    pub error: f64,
}

/// Atom moments against the exact coefficients of `z / (2z − tan z)`.
pub fn moment_consistency(measure: &AtomicMeasure, m_max: usize) -> Result<Vec<MomentRow>> {
    let series = tangent_law_moment_series(m_max.max(1))?;
    Ok((0..=m_max)
        .map(|m| {
            let atom_moment = measure.moment(m);
            let series_moment = to_f64(&series.coeffs()[m]);
            MomentRow { m, atom_moment, series_moment, error: (atom_moment - series_moment).abs() }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesReport {
    pub points: Vec<f64>,
    pub eps: [f64; 2],
    /// `|Im G(x + iε)|` per point, for each ε.
    pub imag_parts: [Vec<f64>; 2],
    /// `2 · max |Im G(x + iε_0)| / ε_0`.
    pub constant: f64,
    pub passed: bool,
}

/// Off-atom surrogate for a vanishing absolutely continuous part:
/// `|Im G(x + iε)| ≤ C ε` at 20 sample points for `ε ∈ {1e−3, 1e−4}`, with `C`
/// fitted (with a factor 2 of slack) from the larger ε.
pub fn stieltjes_surrogate(measure: &AtomicMeasure) -> StieltjesReport {
    let eps = [1e-3, 1e-4];
    let mut points = Vec::with_capacity(20);
    let mut j = 0;
    while points.len() < 20 {
        let x = -1.9 + 0.187 * j as f64 + 0.0123;
        j += 1;
        let near_atom = measure.atoms().iter().any(|a| (a.0 - x).abs() < 0.02);
        if !near_atom && x.abs() > 0.02 {
            points.push(x);
        }
    }
    let imag = |e: f64| -> Vec<f64> {
        points.iter().map(|&x| measure.cauchy_transform(Complex64::new(x, e)).im.abs()).collect()
    };
    let imag_parts = [imag(eps[0]), imag(eps[1])];
    let constant = 2.0 * imag_parts[0].iter().fold(0.0_f64, |a, &b| a.max(b)) / eps[0];
    let passed = imag_parts[1].iter().all(|&v| v <= constant * eps[1]);
    StieltjesReport { points, eps, imag_parts, constant, passed }
}

/// `p + q√d` with rational `p`, `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub rational: Rational,
    pub sqrt_coeff: Rational,
    pub radicand: Rational,
}

impl Surd {
    /// Exact value when the irrational part vanishes or `d` is a perfect square.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.sqrt_coeff.is_zero() {
            return Some(self.rational.clone());
        }
        exact_sqrt(&self.radicand).map(|root| &self.rational + &self.sqrt_coeff * root)
    }

    pub fn to_f64(&self) -> f64 {
        match self.as_rational() {
            Some(v) => to_f64(&v),
            None => to_f64(&self.rational) + to_f64(&self.sqrt_coeff) * to_f64(&self.radicand).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub r: usize,
    pub finite: f64,
    pub limit: f64,
    pub abs_error: f64,
    pub finite_exact: Surd,
    pub limit_exact: Rational,
}

/// `(1/n)·[0 on the diagonal, a + ib above, a − ib below]`.
pub fn tangent_system_matrix(a: &Rational, b: &Rational, n: usize) -> Result<HermitianMatrix> {
    let inv = int(n as i64).recip();
    let upper = GaussianRational::new(a * &inv, b * &inv);
    let lower = upper.conj();
    HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => upper.clone(),
        std::cmp::Ordering::Greater => lower.clone(),
        std::cmp::Ordering::Equal => GaussianRational::zero(),
    }))
}

/// Exact `K_r(Q_n)` for the quadratic form of [`tangent_system_matrix`] in iid
/// Boolean Gaussian variables with mean `1/√n` and variance 1.
///
/// Only partitions whose lift has blocks of size at most two contribute, with
/// `K_π̂ = n^{−s/2}` for `s ∈ {0, 1, 2}` singletons; the contributions are
/// bucketed by `s` and returned as `p + q√n`.
pub fn tangent_finite_cumulant(a: &Rational, b: &Rational, n: usize, r: usize) -> Result<Surd> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let matrix = tangent_system_matrix(a, b, n)?;
    let mut buckets = [GaussianRational::zero(), GaussianRational::zero(), GaussianRational::zero()];
    for pi in enumerate_interval(r + 1)? {
        let sizes = pi.lift_matching()?.block_sizes();
        if sizes.iter().any(|&s| s > 2) {
            continue;
        }
        let singletons = sizes.iter().filter(|&&s| s == 1).count();
        buckets[singletons] += &hadamard_weight(&matrix, &pi);
    }
    let nn = int(n as i64);
    let rational = &buckets[0] + &buckets[2].scale(&nn.recip());
    let sqrt_part = buckets[1].scale(&nn.recip());
    if !rational.is_real() || !sqrt_part.is_real() {
        return Err(Error::Inconsistent("tangent quadratic form has a non-real cumulant".into()));
    }
    Ok(Surd { rational: rational.re, sqrt_coeff: sqrt_part.re, radicand: nn })
}

/// Finite-n cumulants against the coefficients of the limiting H-transform.
pub fn tangent_convergence(a: &Rational, b: &Rational, n_list: &[usize], r_max: usize) -> Result<Vec<ConvergenceRow>> {
    if r_max == 0 {
        return Err(Error::InvalidArgument("r_max must be >= 1".into()));
    }
    let h = limit_h_series(a, b, r_max)?;
    let mut rows = Vec::with_capacity(n_list.len() * r_max);
    for &n in n_list {
        for r in 1..=r_max {
            let finite_exact = tangent_finite_cumulant(a, b, n, r)?;
            let limit_exact = h.coeffs()[r].clone();
            let finite = finite_exact.to_f64();
            let limit = to_f64(&limit_exact);
            rows.push(ConvergenceRow {
                n,
                r,
                finite,
                limit,
                abs_error: (finite - limit).abs(),
                finite_exact,
                limit_exact,
            });
        }
    }
    Ok(rows)
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("n,r,finite,limit,abs_error\n");
    for row in rows {
        writeln!(out, "{},{},{:.16e},{:.16e},{:.16e}", row.n, row.r, row.finite, row.limit, row.abs_error)
            .expect("write to string");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxKind {
    Zeta,
    Tangent,
    Zigzag,
}

impl FromStr for ApproxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta" => Ok(ApproxKind::Zeta),
            "tangent" => Ok(ApproxKind::Tangent),
            "zigzag" => Ok(ApproxKind::Zigzag),
            other => Err(Error::Parse(format!("unknown approximation `{other}` (expected zeta, tangent or zigzag)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub kind: ApproxKind,
    pub k: usize,
    pub n: usize,
    /// Exact trace `ω(B_n^{2k})` (zeta, tangent) or `ω((P_n + B_n)^{k−1})` (zigzag).
    pub trace: Rational,
    pub approx: f64,
    pub target: f64,
    pub rel_error: f64,
}

/// `ζ(s) = Σ j^{−s}`: direct summation until the terms drop below `1e−15` (at
/// most `10⁶` terms), smallest first, plus an Euler–Maclaurin tail.
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta needs s >= 2");
    let term = |j: f64| j.powi(-(s as i32));
    let mut last = 1usize;
    while last < 1_000_000 && term(last as f64) >= 1e-15 {
        last += 1;
    }
    let head: f64 = (1..=last).rev().map(|j| term(j as f64)).sum();
    let big = last as f64;
    let sf = s as f64;
    let tail = big.powf(1.0 - sf) / (sf - 1.0) - 0.5 * term(big) + sf / 12.0 * big.powf(-sf - 1.0);
    head + tail
}

/// Trace approximations of `ζ(2k+2)`, `T_{2k+1}` and `E_k` through `P_n`, `B_n`.
pub fn zeta_zigzag_approx(kind: ApproxKind, k: usize, n: usize) -> Result<ApproxResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let b = build_special(SpecialKind::B, n)?;
    let (trace, approx, target) = match kind {
        ApproxKind::Zeta => {
            let trace = omega_moment(&b, 2 * k)?;
            let scale = 2.0 * (2f64.powi(2 * k as i32 + 2) - 1.0);
            let approx = PI.powi(2 * k as i32 + 2) * to_f64(&trace) / scale;
            (trace, approx, zeta(2 * k as u32 + 2))
        }
        ApproxKind::Tangent => {
            let trace = omega_moment(&b, 2 * k)?;
            let approx = to_f64(&(factorial(2 * k + 1) * &trace));
            let target = to_f64(&tangent_numbers(k + 1)?[k]);
            (trace, approx, target)
        }
        ApproxKind::Zigzag => {
            if k < 2 {
                return Err(Error::InvalidArgument(format!("zigzag approximation needs k >= 2, got {k}")));
            }
            let pb = build_special(SpecialKind::P, n)?.checked_add(&b)?;
            let trace = omega_moment(&pb, k - 1)?;
            let approx = to_f64(&(factorial(k) * &trace / crate::rational::pow(&int(2), k - 1)));
            let target = to_f64(&zigzag_numbers(k)?[k]);
            (trace, approx, target)
        }
    };
    Ok(ApproxResult { kind, k, n, trace, approx, target, rel_error: ((approx - target) / target).abs() })
}
