//! Counting solutions of the two-equation digit-carry system
//!
//! ```text
//!   2(a_1 + ... + a_r) + b_1 + ... + b_r           = n
//!   b_1 + sum_{i=1}^{r-1} (a_i + b_{i+1}) p^i + a_r p^r = m
//! ```
//!
//! with `a_i >= 0` and `b_i` in `{0, d_i}` (`d_i = 1` for the plain system).
//! The stabilized count (any `r` with `p^r > m`) is computed four ways:
//!
//! - [`count_brute`]: complete bounded enumeration (the oracle)
//! - [`count_recursive`]: two-term memoized recursion, odd `p` only
//! - [`count_sum_form`]: independent sum-over-`a` recursion, odd `p` only
//! - [`count_closed_form`]: binomial closed form, valid for `n <= 2p-2`
//!
//! The three derived routes are cross-validated against the enumeration by
//! the `oracle` and `closed-form` verification suites.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::padic::{binomial, expand, require_odd_prime, require_prime};

/// Maximum vector length accepted for a query. Enumeration walks `2^r`
/// sign patterns, so anything near this cap is already impractical.
const MAX_RANK: usize = 40;

/// A query against the system: right-hand sides `m` (carry equation) and `n`
/// (degree equation), the prime base, and the `b`-weights `d_1..d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemQuery {
    m: u64,
    n: u64,
    p: u64,
    weights: Vec<u64>,
}

impl SystemQuery {
    /// Plain system (all weights 1) at an explicit vector length `r`.
    pub fn new(m: u64, n: u64, p: u64, r: usize) -> Result<Self> {
        Self::with_weights(m, n, p, vec![1; r])
    }

    /// Weighted system; the vector length is `weights.len()`.
    pub fn with_weights(m: u64, n: u64, p: u64, weights: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if weights.is_empty() {
            return Err(Error::InvalidQuery("vector length r must be at least 1".into()));
        }
        if weights.len() > MAX_RANK {
            return Err(Error::InvalidQuery(format!(
                "vector length r = {} exceeds the supported cap {MAX_RANK}",
                weights.len()
            )));
        }
        if weights.iter().any(|&d| d == 0) {
            return Err(Error::InvalidQuery("weights must be positive".into()));
        }
        Ok(SystemQuery { m, n, p, weights })
    }

    /// Plain system at the minimal stabilized length, `p^r > m`.
    pub fn stabilized(m: u64, n: u64, p: u64) -> Result<Self> {
        require_prime(p)?;
        Self::new(m, n, p, stable_rank(m, p))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

/// Minimal `r >= 1` with `p^r > m`; solution sets are identical for every
/// larger length.
pub fn stable_rank(m: u64, p: u64) -> usize {
    let mut r = 1;
    let mut pow = p as u128;
    while pow <= m as u128 {
        pow *= p as u128;
        r += 1;
    }
    r
}

/// One solution of the system: `a` in `N^r` and `b` with `b_i` in `{0, d_i}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionPair {
    pub b: Vec<u64>,
    pub a: Vec<u64>,
}

impl SolutionPair {
    /// Direct check of both equations and the `b`-range constraint.
    pub fn satisfies(&self, q: &SystemQuery) -> bool {
        let r = q.r();
        if self.a.len() != r || self.b.len() != r {
            return false;
        }
        if (0..r).any(|i| self.b[i] != 0 && self.b[i] != q.weights[i]) {
            return false;
        }
        let degree: u64 = 2 * self.a.iter().sum::<u64>() + self.b.iter().sum::<u64>();
        if degree != q.n {
            return false;
        }
        // b_j carries place value p^{j-1}, a_i carries p^i.
        let mut carry: u128 = 0;
        for i in 0..r {
            let place = (q.p as u128).pow(i as u32);
            carry += self.b[i] as u128 * place + self.a[i] as u128 * place * q.p as u128;
        }
        carry == q.m as u128
    }
}

/// All solutions of the query, in lexicographic order on `(b, a)`.
pub fn enumerate_solutions(q: &SystemQuery) -> Vec<SolutionPair> {
    let mut out = Vec::new();
    for_each_b_choice(q, |b, budget, reduced| {
        let mut prefix = Vec::with_capacity(q.r());
        collect_digit_vectors(q.p, reduced, budget, q.r(), &mut prefix, &mut |a| {
            out.push(SolutionPair { b: b.to_vec(), a: a.to_vec() });
        });
    });
    out
}

/// Number of solutions of the query, without materializing them.
pub fn count_for_query(q: &SystemQuery) -> u64 {
    let mut memo = HashMap::new();
    let mut total = 0u64;
    for_each_b_choice(q, |_, budget, reduced| {
        total += digit_count(q.p, reduced, budget, q.r() as u32, &mut memo);
    });
    total
}

/// Stabilized count by complete enumeration; this is the oracle the other
/// routes are checked against. Panics if `p` is not prime.
pub fn count_brute(m: u64, n: u64, p: u64) -> u64 {
    let q = SystemQuery::stabilized(m, n, p).expect("count_brute requires a prime p");
    count_for_query(&q)
}

/// Stabilized count of the weighted system. The weights fix the vector
/// length, which must satisfy `p^r > m` so the count is the stable one.
pub fn count_weighted(m: u64, n: u64, p: u64, weights: &[u64]) -> u64 {
    let q = SystemQuery::with_weights(m, n, p, weights.to_vec())
        .expect("count_weighted requires a prime p and positive weights");
    assert!(
        (p as u128).pow(q.r() as u32) > m as u128,
        "count_weighted requires p^r > m (r = {}, m = {m})",
        q.r()
    );
    count_for_query(&q)
}

/// Walk the `2^r` choices of `b` in lexicographic order, handing each viable
/// one to `f` together with the remaining `a`-budget and the carry equation
/// right side divided by `p`.
fn for_each_b_choice(q: &SystemQuery, mut f: impl FnMut(&[u64], u64, u64)) {
    let r = q.r();
    let places: Vec<u128> = (0..r).map(|i| (q.p as u128).pow(i as u32)).collect();
    let mut b = vec![0u64; r];
    for mask in 0u64..(1 << r) {
        let mut sum_b = 0u64;
        let mut val_b: u128 = 0;
        for i in 0..r {
            // Bit r-1-i holds position i so that ascending masks yield
            // lexicographically ascending b-tuples.
            if (mask >> (r - 1 - i)) & 1 == 1 {
                b[i] = q.weights[i];
                sum_b += b[i];
                val_b += b[i] as u128 * places[i];
            } else {
                b[i] = 0;
            }
        }
        if sum_b > q.n || (q.n - sum_b) % 2 != 0 || val_b > q.m as u128 {
            continue;
        }
        let rest = q.m - val_b as u64;
        if rest % q.p != 0 {
            continue;
        }
        f(&b, (q.n - sum_b) / 2, rest / q.p);
    }
}

/// Number of `(a_1..a_slots)` with `sum a_i p^{i-1} = u` and `sum a_i =
/// budget`. Shared by the brute-force routes; memo keys are `(u, budget,
/// slots)` and are only valid for a fixed `p`.
pub(crate) fn digit_count(
    p: u64,
    u: u64,
    budget: u64,
    slots: u32,
    memo: &mut HashMap<(u64, u64, u32), u64>,
) -> u64 {
    if slots == 0 {
        return u64::from(u == 0 && budget == 0);
    }
    // With a fixed budget the reachable sums lie in [budget, budget*p^(slots-1)].
    if u < budget {
        return 0;
    }
    if slots == 1 {
        return u64::from(u == budget);
    }
    if (u as u128) > budget as u128 * (p as u128).pow(slots - 1) {
        return 0;
    }
    if let Some(&v) = memo.get(&(u, budget, slots)) {
        return v;
    }
    let mut total = 0u64;
    let mut head = u % p;
    while head <= budget && head <= u {
        total += digit_count(p, (u - head) / p, budget - head, slots - 1, memo);
        head += p;
    }
    memo.insert((u, budget, slots), total);
    total
}

/// Enumeration twin of [`digit_count`], emitting the vectors in
/// lexicographic order.
fn collect_digit_vectors(
    p: u64,
    u: u64,
    budget: u64,
    slots: usize,
    prefix: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if slots == 0 {
        if u == 0 && budget == 0 {
            emit(prefix);
        }
        return;
    }
    if u < budget {
        return;
    }
    if slots == 1 {
        if u == budget {
            prefix.push(u);
            emit(prefix);
            prefix.pop();
        }
        return;
    }
    if (u as u128) > budget as u128 * (p as u128).pow(slots as u32 - 1) {
        return;
    }
    let mut head = u % p;
    while head <= budget && head <= u {
        prefix.push(head);
        collect_digit_vectors(p, (u - head) / p, budget - head, slots - 1, prefix, emit);
        prefix.pop();
        head += p;
    }
}

thread_local! {
    static REC_MEMO: RefCell<HashMap<(u64, u64, u64), u64>> = RefCell::new(HashMap::new());
    static SUM_MEMO: RefCell<HashMap<(u64, u64, u64), u64>> = RefCell::new(HashMap::new());
}

/// Stabilized count via the two-term recursion
///
/// ```text
///   N(m, n) = N(m-p, n-2) + N(m/p, n)          if p | m
///   N(m, n) = N(m-p, n-2) + N((m-1)/p, n-1)    if m = 1 (mod p)
///   N(m, n) = 0                                 otherwise
/// ```
///
/// with `N(0, n) = [n = 0]`, `N(1, n) = [n = 1]`, and out-of-range recursive
/// arguments contributing 0. Only valid for odd primes; the memo cache is
/// per-thread, so parallel sweeps each warm their own.
pub fn count_recursive(m: u64, n: u64, p: u64) -> Result<u64> {
    require_odd_prime(p, "the two-term recursion")?;
    Ok(count_recursive_unchecked(m, n, p))
}

pub(crate) fn count_recursive_unchecked(m: u64, n: u64, p: u64) -> u64 {
    debug_assert!(p > 2 && crate::padic::is_prime(p));
    REC_MEMO.with(|cache| recursive(m, n, p, &mut cache.borrow_mut()))
}

fn recursive(m: u64, n: u64, p: u64, memo: &mut HashMap<(u64, u64, u64), u64>) -> u64 {
    if m == 0 {
        return u64::from(n == 0);
    }
    if m == 1 {
        return u64::from(n == 1);
    }
    let eps = m % p;
    if eps > 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&(p, m, n)) {
        return v;
    }
    // m >= 2 with residue 0 or 1 forces m >= p, so m - p never underflows.
    let shifted = if n >= 2 { recursive(m - p, n - 2, p, memo) } else { 0 };
    let reduced = if eps == 0 {
        recursive(m / p, n, p, memo)
    } else if n >= 1 {
        recursive((m - 1) / p, n - 1, p, memo)
    } else {
        0
    };
    let v = shifted + reduced;
    memo.insert((p, m, n), v);
    v
}

/// Stabilized count via the independent sum form
///
/// ```text
///   N(m, n) = sum_{0 <= a <= n/2} N(m/p - a, n - 2a)           if p | m
///   N(m, n) = sum_{0 <= a <= n/2} N((m-1)/p - a, n - 2a - 1)   if m = 1 (mod p)
/// ```
///
/// kept free of the two-term recursion so the two can cross-check each other.
pub fn count_sum_form(m: u64, n: u64, p: u64) -> Result<u64> {
    require_odd_prime(p, "the sum-form recursion")?;
    Ok(SUM_MEMO.with(|cache| sum_form(m, n, p, &mut cache.borrow_mut())))
}

fn sum_form(m: u64, n: u64, p: u64, memo: &mut HashMap<(u64, u64, u64), u64>) -> u64 {
    if m == 0 {
        return u64::from(n == 0);
    }
    if m == 1 {
        return u64::from(n == 1);
    }
    let eps = m % p;
    if eps > 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&(p, m, n)) {
        return v;
    }
    let u = (m - eps) / p;
    let mut total = 0u64;
    let mut a = 0u64;
    while 2 * a + eps <= n && a <= u {
        total += sum_form(u - a, n - 2 * a - eps, p, memo);
        a += 1;
    }
    memo.insert((p, m, n), total);
    total
}

/// Stabilized count in closed form, valid for `1 <= n <= 2p-2`:
/// `C(r_m - s_m, 2 ht(m) - c_0 - n)` when `m = 0, 1 (mod p)` and 0 otherwise
/// (the digit-match construction forces `b_1 = c_0`, so residues >= 2 admit
/// no solutions).
pub fn count_closed_form(m: u64, n: u64, p: u64) -> Result<u64> {
    require_odd_prime(p, "the closed form")?;
    if n == 0 || n > 2 * p - 2 {
        return Err(Error::ClosedFormDegree { n, p });
    }
    if m == 0 || m % p > 1 {
        return Ok(0);
    }
    let e = expand(m, p)?;
    let support = e.interior_support() as i64;
    let picks = 2 * e.height() as i64 - e.digit(0) as i64 - n as i64;
    Ok(binomial(support, picks)
        .to_u64()
        .expect("closed-form binomial exceeds u64"))
}

/// The weight shape `sum_{j=1}^{h} p^j` that maximizes the stabilized count
/// among all weights of height `h`, for degrees within the closed-form range.
pub fn max_count_weight(h: u64, p: u64) -> u64 {
    assert!(h >= 1, "height must be positive");
    (1..=h).fold(0u64, |acc, j| {
        acc.checked_add(p.checked_pow(j as u32).expect("p^j overflows u64"))
            .expect("weight sum overflows u64")
    })
}
