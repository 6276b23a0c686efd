//! Lower bounds for almost-cover numbers.
//!
//! The actionable bounds are exact integer scans over binomial coefficients
//! and the Gröbner certificate. The two corollaries involving `e` are
//! reported with outward-rounded rationals and never feed a decision.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::vanishing::{buchberger_moller, GroebnerData};

/// `E_LOWER < e < E_UPPER`, as numerators over [`E_DENOM`].
pub const E_LOWER: u64 = 2_718_281_828;
pub const E_UPPER: u64 = 2_718_281_829;
pub const E_DENOM: u64 = 1_000_000_000;

/// Scale used when under-approximating `N^(1/n)`.
const ROOT_SCALE: u64 = 1_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundMethod {
    Count,
    CubeCount,
    Certificate,
    Cor4n,
    CorE,
}

impl BoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::Count => "count",
            BoundMethod::CubeCount => "cube_count",
            BoundMethod::Certificate => "certificate",
            BoundMethod::Cor4n => "cor_4n",
            BoundMethod::CorE => "cor_e",
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A lower bound on `AC(V)` (or on `AC(V, v)` for a certificate at `v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub value: u64,
    pub certificate_point: Option<Point>,
    /// Exact intermediate quantities keyed by name.
    pub details: BTreeMap<String, BigRational>,
}

impl BoundReport {
    fn new(method: BoundMethod, value: u64) -> Self {
        BoundReport { method, value, certificate_point: None, details: BTreeMap::new() }
    }

    fn detail(mut self, key: &str, value: impl Into<BigRational>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

fn int(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `C(a, b)`, zero when `b < 0`, `b > a` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of monomials in `n` variables of degree at most `k`: `C(n+k, n)`.
pub fn ball_size(n: i64, k: i64) -> Result<BigUint> {
    if n < 1 || k < 0 {
        return Err(Error::InvalidArgument(format!("ball_size needs n >= 1, k >= 0 (got {n}, {k})")));
    }
    Ok(binomial(n + k, n))
}

/// Smallest `k` with `C(n+k, n) >= N`; every `V` of size `N` in `F^n` has
/// `AC(V) >= k`.
pub fn counting_lower_bound(n: u32, size: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if size == 0 {
        return Err(Error::InvalidArgument("point set must be nonempty".into()));
    }
    let target = BigUint::from(size);
    let mut k = 0i64;
    while binomial(n as i64 + k, n as i64) < target {
        k += 1;
    }
    Ok(BoundReport::new(BoundMethod::Count, k as u64)
        .detail("size", int(target))
        .detail("ball_size_at_bound", int(binomial(n as i64 + k, n as i64)))
        .detail("ball_size_below_bound", int(binomial(n as i64 + k - 1, n as i64))))
}

/// Smallest `k` with `sum_{i<=k} C(n, i) >= N`; valid for 0-1 point sets.
pub fn cube_counting_lower_bound(n: u32, size: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if size == 0 {
        return Err(Error::InvalidArgument("point set must be nonempty".into()));
    }
    let target = BigUint::from(size);
    if target > BigUint::one() << n {
        return Err(Error::InvalidArgument(format!("no 0-1 set in dimension {n} has {size} points")));
    }
    let mut k = 0i64;
    let mut sum = BigUint::one();
    while sum < target {
        k += 1;
        sum += binomial(n as i64, k);
    }
    let below = &sum - binomial(n as i64, k);
    Ok(BoundReport::new(BoundMethod::CubeCount, k as u64)
        .detail("size", int(target))
        .detail("cube_ball_at_bound", int(sum))
        .detail("cube_ball_below_bound", int(below)))
}

impl GroebnerData {
    /// With a point: `AC(V, v) >= separating_degree(v)`. Without: the best
    /// such bound over all points, which equals the top standard-monomial
    /// degree; the first maximizing point is reported.
    pub fn certificate_lower_bound(&self, v: Option<&Point>) -> Result<BoundReport> {
        let (point, degree) = match v {
            Some(v) => (v.clone(), self.separating_degree(v)?),
            None => {
                let mut best: Option<(usize, u32)> = None;
                for (i, chi) in self.all_indicator_expansions().iter().enumerate() {
                    let d = chi.degree();
                    if best.is_none_or(|(_, b)| d > b) {
                        best = Some((i, d));
                    }
                }
                let (i, d) = best.expect("nonempty point set");
                (self.source().points()[i].clone(), d)
            }
        };
        let mut report = BoundReport::new(BoundMethod::Certificate, degree as u64)
            .detail("separating_degree", BigRational::from_integer(degree.into()))
            .detail("max_standard_degree", BigRational::from_integer(self.max_sm_degree().into()));
        report.certificate_point = Some(point);
        Ok(report)
    }
}

/// See [`GroebnerData::certificate_lower_bound`].
pub fn certificate_lower_bound(points: &PointSet, v: Option<&Point>) -> Result<BoundReport> {
    if let Some(v) = v {
        points.require(v)?;
    }
    buchberger_moller(points)?.certificate_lower_bound(v)
}

/// The two corollaries of the counting bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorBounds {
    /// `N >= 4^n`, which forces `AC > n`.
    pub cor_4n: bool,
    /// Certified lower approximation of `n * N^(1/n) / e - n`.
    pub cor_e: BigRational,
    /// Integer bound implied by `AC > cor_e`.
    pub cor_e_bound: u64,
}

impl CorBounds {
    pub fn reports(&self, n: u32) -> [BoundReport; 2] {
        let four = BoundReport::new(BoundMethod::Cor4n, if self.cor_4n { n as u64 + 1 } else { 0 });
        let e = BoundReport::new(BoundMethod::CorE, self.cor_e_bound).detail("cor_e_lower", self.cor_e.clone());
        [four, e]
    }
}

pub fn cor_bounds(n: u32, size: u64) -> Result<CorBounds> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if size == 0 {
        return Err(Error::InvalidArgument("point set must be nonempty".into()));
    }
    let cor_4n = BigUint::from(size) >= Pow::pow(BigUint::from(4u32), n);

    // floor(N^(1/n) * S) / S <= N^(1/n)
    let scaled = BigUint::from(size) * Pow::pow(BigUint::from(ROOT_SCALE), n);
    let root_lo = BigRational::new(BigInt::from(scaled.nth_root(n)), BigInt::from(ROOT_SCALE));
    let e_hi = BigRational::new(BigInt::from(E_UPPER), BigInt::from(E_DENOM));
    let nn = BigRational::from_integer(BigInt::from(n));
    let cor_e = &nn * root_lo / e_hi - &nn;
    let floor = cor_e.floor().to_integer();
    let implied = floor + BigInt::one();
    let cor_e_bound = if implied > BigInt::zero() { u64::try_from(implied).unwrap_or(u64::MAX) } else { 0 };
    Ok(CorBounds { cor_4n, cor_e, cor_e_bound })
}

/// Verdict of [`check_binomial_inequalities`]; `None` where the pair is out of
/// the inequality's range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialVerdict {
    /// `C(n, k) < (n e / k)^k` for `1 <= k <= n`.
    pub upper: Option<bool>,
    /// `C(n+k, n) < e^n (1 + k/n)^n` for `k > -n`.
    pub shifted: Option<bool>,
}

impl BinomialVerdict {
    pub fn passed(&self) -> bool {
        self.upper != Some(false) && self.shifted != Some(false)
    }
}

/// Checks both binomial estimates with `e` replaced by a rational lower
/// bound, so a pass means the real inequality certainly holds.
pub fn check_binomial_inequalities(n: i64, k: i64) -> Result<BinomialVerdict> {
    if n < 1 || k <= -n {
        return Err(Error::InvalidArgument(format!("binomial checks need n >= 1 and k > -n (got {n}, {k})")));
    }
    let e_lo = BigRational::new(BigInt::from(E_LOWER), BigInt::from(E_DENOM));
    let upper = (1 <= k && k <= n).then(|| {
        let base = BigRational::from_integer(n.into()) * &e_lo / BigRational::from_integer(k.into());
        int(binomial(n, k)) < Pow::pow(base, k as u32)
    });
    let ratio = BigRational::one() + BigRational::new(k.into(), n.into());
    let rhs = Pow::pow(e_lo, n as u32) * Pow::pow(ratio, n as u32);
    let shifted = Some(int(binomial(n + k, n)) < rhs);
    Ok(BinomialVerdict { upper, shifted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(ball_size(7, 0).unwrap(), BigUint::one());
        assert_eq!(ball_size(4, 2).unwrap(), BigUint::from(15u32));
        assert!(ball_size(0, 1).is_err());
        assert!(ball_size(2, -1).is_err());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(3, -1), BigUint::zero());
    }

    /// Monomials of degree <= k in n variables, counted by enumeration.
    fn count_monomials(n: usize, k: u32) -> u64 {
        fn go(vars: usize, budget: u32) -> u64 {
            if vars == 0 {
                return 1;
            }
            (0..=budget).map(|e| go(vars - 1, budget - e)).sum()
        }
        go(n, k)
    }

    #[test]
    fn ball_size_matches_enumeration() {
        for n in 1..5usize {
            for k in 0..6u32 {
                assert_eq!(ball_size(n as i64, k as i64).unwrap(), BigUint::from(count_monomials(n, k)));
            }
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(counting_lower_bound(2, 6).unwrap().value, 2);
        assert_eq!(counting_lower_bound(5, 1).unwrap().value, 0);
        assert_eq!(counting_lower_bound(4, 16).unwrap().value, 3);
        assert!(counting_lower_bound(2, 0).is_err());
        let mut prev = 0;
        for size in 1..200 {
            let v = counting_lower_bound(3, size).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
        for n in 1..6u32 {
            for k in 0..6i64 {
                let size = u64::try_from(binomial(n as i64 + k, n as i64)).unwrap();
                assert_eq!(counting_lower_bound(n, size).unwrap().value, k as u64);
            }
        }
    }

    #[test]
    fn cube_counting_examples() {
        assert_eq!(cube_counting_lower_bound(4, 16).unwrap().value, 4);
        for n in 1..8u32 {
            assert_eq!(cube_counting_lower_bound(n, 1 << n).unwrap().value, n as u64);
        }
        assert_eq!(cube_counting_lower_bound(3, 4).unwrap().value, 1);
        assert!(cube_counting_lower_bound(3, 9).is_err());
        for n in 1..7u32 {
            for size in 1..=(1u64 << n) {
                let cube = cube_counting_lower_bound(n, size).unwrap().value;
                assert!(cube >= counting_lower_bound(n, size).unwrap().value);
            }
            for k in 0..=n as i64 {
                let size: u64 = (0..=k).map(|i| u64::try_from(binomial(n as i64, i)).unwrap()).sum();
                assert_eq!(cube_counting_lower_bound(n, size).unwrap().value, k as u64);
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let q = FieldSpec::Rational;
        let pts = |c: &[&[i64]]| PointSet::new(q, 2, c.iter().map(|x| Point::from_i64(q, x)).collect()).unwrap();
        let square = pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let origin = Point::from_i64(q, &[0, 0]);
        assert_eq!(certificate_lower_bound(&square, Some(&origin)).unwrap().value, 2);
        let v21 = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(certificate_lower_bound(&v21, Some(&origin)).unwrap().value, 1);
        let j23 = pts(&[&[1, 1], &[1, 2], &[1, 3], &[2, 2], &[2, 3], &[3, 3]]);
        let best = certificate_lower_bound(&j23, None).unwrap();
        assert_eq!(best.value, 2);
        assert!(best.certificate_point.is_some());
        assert!(certificate_lower_bound(&v21, Some(&Point::from_i64(q, &[1, 1]))).is_err());
    }

    #[test]
    fn corollaries() {
        assert!(cor_bounds(3, 64).unwrap().cor_4n);
        assert!(!cor_bounds(3, 63).unwrap().cor_4n);
        let c = cor_bounds(2, 9).unwrap();
        // 6/e - 2 = 0.207276...
        let lo = BigRational::new(20727.into(), 100000.into());
        let hi = BigRational::new(20728.into(), 100000.into());
        assert!(c.cor_e > lo && c.cor_e < hi, "{}", c.cor_e);
        assert_eq!(c.cor_e_bound, 1);
        let single = cor_bounds(1, 1).unwrap();
        assert!(single.cor_e < BigRational::zero());
        assert_eq!(single.cor_e_bound, 0);
        for n in 1..5u32 {
            for size in 1..300u64 {
                let c = cor_bounds(n, size).unwrap();
                let count = counting_lower_bound(n, size).unwrap().value;
                assert!(c.cor_e_bound <= count);
                assert!(c.cor_e < BigRational::from_integer(count.into()));
                if c.cor_4n {
                    assert!(count > n as u64);
                }
            }
        }
    }

    #[test]
    fn binomial_inequalities() {
        let v = check_binomial_inequalities(5, 2).unwrap();
        assert_eq!(v.upper, Some(true));
        assert!(check_binomial_inequalities(4, -1).unwrap().passed());
        assert_eq!(check_binomial_inequalities(4, -1).unwrap().upper, None);
        assert!(check_binomial_inequalities(3, -3).is_err());
        for n in 1..=30 {
            for k in (1 - n)..=n {
                assert!(check_binomial_inequalities(n, k).unwrap().passed(), "n={n} k={k}");
            }
        }
    }
}
