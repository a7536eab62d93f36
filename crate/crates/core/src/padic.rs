//! Base-p digit arithmetic, integer sequences, and bound constants shared by
//! the counting modules.
//!
//! - [`PAdicExpansion`]: base-p digits of a non-negative integer together with
//!   the derived statistics height, top-digit index and interior zero count
//! - [`fibonacci`], [`binomial`]: exact big-integer sequences
//! - [`bound_c`], [`hardy_ramanujan_bound`], [`p2_cohomology_bound`]:
//!   upward-rounded evaluations of the exponential bound constants

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Trial-division primality test. The primes in scope are tiny, so nothing
/// faster is warranted.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn require_odd_prime(p: u64, what: &'static str) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::RequiresOddPrime(what));
    }
    Ok(())
}

/// The base-p expansion `m = c_0 + c_1 p + ... + c_r p^r` of a non-negative
/// integer, with the top digit nonzero unless `m = 0` (which expands to `[0]`
/// so that the digit accessors stay total).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicExpansion {
    p: u64,
    m: u64,
    digits: Vec<u64>,
}

impl PAdicExpansion {
    /// Expand `m` in base `p`. Rejects non-prime `p`.
    pub fn new(m: u64, p: u64) -> Result<Self> {
        require_prime(p)?;
        let mut digits = Vec::new();
        let mut rest = m;
        loop {
            digits.push(rest % p);
            rest /= p;
            if rest == 0 {
                break;
            }
        }
        Ok(PAdicExpansion { p, m, digits })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// Digits `c_0..c_r`, least significant first.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Digit sum `ht(m)`.
    pub fn height(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Index of the top digit; `0` for `m = 0` by convention of the `[0]`
    /// expansion.
    pub fn top_index(&self) -> usize {
        self.digits.len() - 1
    }

    /// Number of zeros among `c_1..c_r`.
    pub fn interior_zeros(&self) -> usize {
        self.digits[1..].iter().filter(|&&c| c == 0).count()
    }

    /// Number of nonzero digits among `c_1..c_r`, i.e. `r_m - s_m`.
    pub fn interior_support(&self) -> usize {
        self.top_index() - self.interior_zeros()
    }
}

/// Convenience wrapper around [`PAdicExpansion::new`].
pub fn expand(m: u64, p: u64) -> Result<PAdicExpansion> {
    PAdicExpansion::new(m, p)
}

/// Digit sum of `m` in base `p`.
pub fn height(m: u64, p: u64) -> Result<u64> {
    Ok(expand(m, p)?.height())
}

/// `(r_m, s_m)`: the top digit index and the number of zeros among
/// `c_1..c_{r_m}`. Undefined for `m = 0`.
pub fn r_s_stats(m: u64, p: u64) -> Result<(u64, u64)> {
    if m == 0 {
        return Err(Error::TopDigitOfZero);
    }
    let e = expand(m, p)?;
    Ok((e.top_index() as u64, e.interior_zeros() as u64))
}

/// `F(n)` with `F(1) = F(2) = 1`, exact. Index 0 is rejected.
pub fn fibonacci(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::FibonacciIndexZero);
    }
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for _ in 1..n {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Binomial coefficient with the out-of-range-zero convention: returns 0 when
/// `k < 0`, `k > n`, or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let (n, k) = (n as u64, k as u64);
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// An upward-rounded evaluation of a positive real constant attached to a
/// degree. `value` always dominates the exact mathematical value, so every
/// `count <= value` comparison is conservative: a bound can be reported
/// violated spuriously, never satisfied spuriously.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstant {
    pub n: u64,
    pub value: f64,
}

/// Relative inflation applied after f64 evaluation. The f64 pipeline for
/// these expressions carries a relative error well below 1e-12 (exp argument
/// up to ~180), so 1e-9 safely buries it.
const UPWARD_SLACK: f64 = 1e-9;

fn round_up(x: f64) -> f64 {
    x * (1.0 + UPWARD_SLACK)
}

/// `C_n = n * 4^n * e^{2 pi n / sqrt(3)}`, rounded upward.
pub fn bound_c(n: u64) -> BoundConstant {
    let nf = n as f64;
    let value = round_up(nf * 4f64.powi(n as i32) * (2.0 * std::f64::consts::PI * nf / 3f64.sqrt()).exp());
    BoundConstant { n, value }
}

/// Hardy-Ramanujan partition bound `e^{pi sqrt(2n/3)}`, rounded upward.
pub fn hardy_ramanujan_bound(n: u64) -> BoundConstant {
    let value = round_up((std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt()).exp());
    BoundConstant { n, value }
}

/// `e^{2 pi n / sqrt(3)} * 2^n`, rounded upward. With `n` replaced by `n + 1`
/// this bounds the Weyl cohomology dimensions in characteristic two, and it
/// bounds the power-of-p partition counts in any characteristic.
pub fn power_partition_bound(n: u64) -> BoundConstant {
    let value = round_up((2.0 * std::f64::consts::PI * n as f64 / 3f64.sqrt()).exp() * 2f64.powi(n as i32));
    BoundConstant { n, value }
}

/// Characteristic-two cohomology bound `e^{2 pi (n+1) / sqrt(3)} * 2^{n+1}`.
pub fn p2_cohomology_bound(n: u64) -> BoundConstant {
    BoundConstant { n, value: power_partition_bound(n + 1).value }
}

/// Lower-precision evaluation of `C_n` used to check the rounding policy: an
/// f32 pipeline with proportionally larger slack must still dominate the f64
/// value.
#[doc(hidden)]
pub fn bound_c_low_precision(n: u64) -> f64 {
    let nf = n as f32;
    let raw = nf * 4f32.powi(n as i32) * (2.0 * std::f32::consts::PI * nf / 3f32.sqrt()).exp();
    (raw * (1.0 + 1e-4)) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_zero() {
        let e = expand(0, 3).unwrap();
        assert_eq!(e.digits(), &[0]);
        assert_eq!(e.height(), 0);
        assert_eq!(e.top_index(), 0);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(12, 3).unwrap().digits(), &[0, 1, 1]);
        assert_eq!(expand(138, 3).unwrap().digits(), &[0, 1, 0, 2, 1]);
    }

    #[test]
    fn expand_rejects_composite_base() {
        assert_eq!(expand(10, 4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(expand(10, 1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn height_and_stats() {
        assert_eq!(height(12, 3).unwrap(), 2);
        assert_eq!(r_s_stats(12, 3).unwrap(), (2, 0));
        assert_eq!(r_s_stats(9, 3).unwrap(), (2, 1));
        assert_eq!(r_s_stats(0, 3).unwrap_err(), Error::TopDigitOfZero);
    }

    #[test]
    fn reassembly_round_trip() {
        for p in [2u64, 3, 5, 7] {
            for m in (0..2000).chain([65_536, 999_983, 1_000_000]) {
                let e = expand(m, p).unwrap();
                let back: u64 = e
                    .digits()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c * p.pow(i as u32))
                    .sum();
                assert_eq!(back, m);
                assert!(e.digits().iter().all(|&c| c < p));
            }
        }
    }

    #[test]
    fn height_dominates_support() {
        // ht(m) >= (r_m - s_m) + [c_0 != 0]: each nonzero digit contributes
        // at least one.
        for p in [3u64, 5] {
            for m in 1..5000 {
                let e = expand(m, p).unwrap();
                let c0 = u64::from(e.digit(0) != 0);
                assert!(e.height() >= e.interior_support() as u64 + c0, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(1).unwrap(), BigUint::from(1u32));
        assert_eq!(fibonacci(2).unwrap(), BigUint::from(1u32));
        assert_eq!(fibonacci(10).unwrap(), BigUint::from(55u32));
        assert_eq!(fibonacci(0).unwrap_err(), Error::FibonacciIndexZero);
    }

    #[test]
    fn fibonacci_is_exact_beyond_machine_words() {
        // F(100), checked against the recurrence run through big integers.
        assert_eq!(
            fibonacci(100).unwrap().to_string(),
            "354224848179261915075"
        );
        assert_eq!(
            fibonacci(100).unwrap(),
            fibonacci(99).unwrap() + fibonacci(98).unwrap()
        );
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(2, 1), BigUint::from(2u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(5, -2), BigUint::zero());
    }

    #[test]
    fn binomial_pascal_identity() {
        for n in 1..40i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                );
            }
        }
    }

    #[test]
    fn bound_c_at_one() {
        // C_1 = 4 e^{2 pi / sqrt 3} = 150.4887...; the stored value sits just
        // above it.
        let c1 = bound_c(1);
        let exact = 4.0 * (2.0 * std::f64::consts::PI / 3f64.sqrt()).exp();
        assert!(c1.value >= exact);
        assert!(c1.value > 150.488 && c1.value < 150.49, "{}", c1.value);
    }

    #[test]
    fn bound_c_at_two() {
        let c2 = bound_c(2);
        let reference = 32.0 * (4.0 * std::f64::consts::PI / 3f64.sqrt()).exp();
        assert!(c2.value >= reference);
    }

    #[test]
    fn bound_c_monotone() {
        for n in 1..50 {
            assert!(bound_c(n + 1).value > bound_c(n).value);
        }
    }

    #[test]
    fn upward_rounding_dominates_across_precisions() {
        // f32 overflows past n = 17, which is plenty to exercise the policy.
        for n in 1..=16 {
            assert!(
                bound_c_low_precision(n) >= bound_c(n).value,
                "low-precision upper bound lost at n = {n}"
            );
        }
    }

    #[test]
    fn hardy_ramanujan_small_values() {
        // e^{pi sqrt(2/3)} = 13.001...
        let b = hardy_ramanujan_bound(1);
        assert!(b.value > 13.0 && b.value < 13.01);
    }
}
