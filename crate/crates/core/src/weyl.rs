//! Cohomology dimensions for the Borel subgroup and for Weyl modules of SL2.
//!
//! For odd p both reduce to stabilized solution counts of the digit-carry
//! system: `dim H^n(B, -m) = N(m/2, n)` and `dim H^n(G, V(m)) =
//! N(m/2 + 1, n + 1)`. In characteristic two the Weyl dimension is instead a
//! power-of-two partition count. Degrees one to three also admit a direct
//! digit-pattern classifier, kept independent so the two can be swept
//! against each other.

use crate::error::{Error, Result};
use crate::padic::{self, bound_c, expand, fibonacci, p2_cohomology_bound, require_odd_prime};
use crate::partitions::count_power_partitions;
use crate::report::SuiteReport;
use crate::systems::count_recursive_unchecked;

/// `dim H^n(B, -m)` for odd p: the stabilized count at `(m/2, n)`, zero off
/// the root lattice.
pub fn dim_b_cohomology(n: u64, m: u64, p: u64) -> Result<u64> {
    require_odd_prime(p, "B-cohomology")?;
    if m % 2 == 1 {
        return Ok(0);
    }
    Ok(count_recursive_unchecked(m / 2, n, p))
}

/// `dim H^n(G, V(m))`.
///
/// Negative degree or weight gives 0, which is what the extension recursion
/// needs at its range ends. For odd p an odd weight lies off the root
/// lattice and gives 0; the remaining even weights evaluate to
/// `N(m/2 + 1, n + 1)`. For p = 2 the dimension is the number of partitions
/// of `m + 1` into exactly `n + 1` parts from `{2, 4, 8, ...}`, taken as is.
pub fn dim_weyl_cohomology(n: i64, m: i64, p: u64) -> u64 {
    assert!(padic::is_prime(p), "dim_weyl_cohomology requires a prime p");
    if n < 0 || m < 0 {
        return 0;
    }
    let (n, m) = (n as u64, m as u64);
    if p == 2 {
        return count_power_partitions(m + 1, n + 1, 2, 1);
    }
    if m % 2 == 1 {
        return 0;
    }
    count_recursive_unchecked(m / 2 + 1, n + 1, p)
}

/// `dim H^n(G, V(m))` for `n` in `{1, 2, 3}` and odd p, by matching the
/// base-p digits of `(m + 2) / 2` against the closed family lists. At most
/// four nonzero digits can occur, so the match is O(log m).
pub fn low_degree_dim(n: u64, m: u64, p: u64) -> Result<u64> {
    require_odd_prime(p, "the low-degree tables")?;
    if !(1..=3).contains(&n) {
        return Err(Error::NotLowDegree(n));
    }
    if m % 2 == 1 {
        return Ok(0);
    }
    let target = expand(m / 2 + 1, p)?;
    let unit = target.digit(0);
    if unit > 1 {
        return Ok(0);
    }
    let mut high: Vec<u64> = target.digits()[1..].iter().copied().filter(|&c| c != 0).collect();
    high.sort_unstable();
    let dim = match (n, unit, high.as_slice()) {
        // weight families 2p^u - 2e and 2p^u + 2p^v - 2
        (1, 1, [1]) | (1, 0, [1]) | (1, 0, [1, 1]) => 1,
        (2, 0, [1, 1]) => 2,
        // 2p^u | 4p^u - 2 | 2p^u + 2p^v | 2p^u + 2p^v + 2p^w - 2
        (2, 1, [1]) | (2, 0, [2]) | (2, 1, [1, 1]) | (2, 0, [1, 1, 1]) => 1,
        (3, 0, [1, 1, 1]) => 3,
        (3, 1, [1, 1]) => 2,
        // 4p^u - 2e | 2p^u + 2p^v - 2 | 4p^u + 2p^v - 2
        // | 2p^u + 2p^v + 2p^w | 2p^u + 2p^v + 2p^w + 2p^x - 2
        (3, 1, [2]) | (3, 0, [2]) | (3, 0, [1, 1]) | (3, 0, [1, 2]) | (3, 1, [1, 1, 1])
        | (3, 0, [1, 1, 1, 1]) => 1,
        _ => 0,
    };
    Ok(dim)
}

/// Sweep `dim H^n(G, V(m))` for `0 <= n <= max_n`, `0 <= m <= max_m` against
/// the degree bounds: the Fibonacci bound `F(n + 1)` (odd p, `n <= 2p - 3`),
/// the exponential bound `C_{n+1}` (odd p, `n >= 1`), and the
/// characteristic-two bound `e^{2 pi (n+1)/sqrt 3} 2^{n+1}` (`n >= 1`).
/// Reports the attained maximum per degree.
pub fn verify_weyl_bounds(p: u64, max_n: u64, max_m: u64) -> SuiteReport {
    let mut report = SuiteReport::new("weyl-bounds");
    for n in 0..=max_n {
        let mut max_dim = 0u64;
        let fib = fibonacci(n + 1).expect("n + 1 >= 1");
        let exp_bound = bound_c(n + 1);
        let p2_bound = p2_cohomology_bound(n);
        for m in 0..=max_m {
            let dim = dim_weyl_cohomology(n as i64, m as i64, p);
            max_dim = max_dim.max(dim);
            if p == 2 {
                if n >= 1 {
                    report.check((dim as f64) <= p2_bound.value, || {
                        format!("p=2 bound fails at n={n} m={m}: dim={dim}")
                    });
                }
            } else {
                if n >= 1 && n <= 2 * p - 3 {
                    report.check(num_bigint::BigUint::from(dim) <= fib, || {
                        format!("Fibonacci bound fails at p={p} n={n} m={m}: dim={dim} > F({})", n + 1)
                    });
                }
                if n >= 1 {
                    report.check((dim as f64) <= exp_bound.value, || {
                        format!("exponential bound fails at p={p} n={n} m={m}: dim={dim}")
                    });
                }
            }
        }
        report.note(format!("p={p} n={n}: max dim over m<={max_m} is {max_dim}"));
    }
    report
}
