//! Partition-function machinery: classical p(n), compositions, partitions
//! into powers of a prime, and composition-indexed exponent counts.
//!
//! - [`partition_count`]: p(n), exact, via the bounded-parts dynamic program
//! - [`compositions_iter`] / [`compositions_count`]: ordered tuples of
//!   positive parts with a fixed sum
//! - [`count_power_partitions`]: partitions of `m` into exactly `n` powers
//!   `p^e` with `e >= min_exp`
//! - [`count_increasing_exponents`]: strictly increasing exponent vectors
//!   realizing `m = sum c_i p^{s_i}` for a fixed composition `c`

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::is_prime;

/// Number of partitions of `n`, exact.
pub fn partition_count(n: u64) -> BigUint {
    let n = n as usize;
    let mut table = vec![BigUint::zero(); n + 1];
    table[0] = BigUint::one();
    for part in 1..=n {
        for amount in part..=n {
            let add = table[amount - part].clone();
            table[amount] += add;
        }
    }
    table[n].clone()
}

/// An ordered tuple of positive integers with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidQuery(
                "a composition needs at least one positive part".into(),
            ));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

/// Iterator over all compositions of `n` in lexicographic order, starting
/// from `(1, 1, ..., 1)` and ending at `(n)`.
pub struct Compositions {
    next: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // Lexicographic successor: merge the last part into its predecessor
        // plus one, then pad the remainder with ones.
        if current.len() >= 2 {
            let r = current.len();
            let merged = current[r - 2] + current[r - 1];
            let mut succ = current[..r - 2].to_vec();
            succ.push(current[r - 2] + 1);
            succ.extend(std::iter::repeat(1).take((merged - current[r - 2] - 1) as usize));
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

/// All compositions of `n` (empty for `n = 0`).
pub fn compositions_iter(n: u64) -> Compositions {
    Compositions { next: (n > 0).then(|| vec![1; n as usize]) }
}

/// Number of compositions of `n`, i.e. `2^(n-1)` for `n >= 1`.
pub fn compositions_count(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    BigUint::one() << (n - 1)
}

/// Dense count table for partitions into powers of `p` with exponents at
/// least `min_exp`: entry `(parts, amount)` counts multisets of exactly
/// `parts` such powers summing to `amount`.
struct PowerTable {
    max_m: u64,
    max_n: u64,
    width: usize,
    counts: Vec<u64>,
}

impl PowerTable {
    fn build(p: u64, min_exp: u32, max_m: u64, max_n: u64) -> Self {
        let width = max_m as usize + 1;
        let mut counts = vec![0u64; (max_n as usize + 1) * width];
        counts[0] = 1;
        let mut power = p.checked_pow(min_exp).unwrap_or(u64::MAX);
        while power <= max_m {
            // Ascending amount makes repeated use of the same power legal;
            // distinct powers never interleave, so multisets are counted once.
            for parts in 1..=max_n as usize {
                let (lower, upper) = counts.split_at_mut(parts * width);
                let prev = &lower[(parts - 1) * width..];
                for amount in power as usize..width {
                    upper[amount] += prev[amount - power as usize];
                }
            }
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
        }
        PowerTable { max_m, max_n, width, counts }
    }

    fn get(&self, m: u64, n: u64) -> u64 {
        self.counts[n as usize * self.width + m as usize]
    }
}

thread_local! {
    static POWER_TABLES: RefCell<HashMap<(u64, u32), PowerTable>> = RefCell::new(HashMap::new());
}

/// Number of multisets of exactly `n` powers of `p` (each exponent at least
/// `min_exp`) summing to `m`. Tables are cached per `(p, min_exp)` and grown
/// on demand, so sweeps over `m` cost amortized O(1) per query.
pub fn count_power_partitions(m: u64, n: u64, p: u64, min_exp: u32) -> u64 {
    assert!(is_prime(p), "count_power_partitions requires a prime p");
    POWER_TABLES.with(|cell| {
        let mut tables = cell.borrow_mut();
        let entry = tables.entry((p, min_exp));
        use std::collections::hash_map::Entry;
        let rebuild = match &entry {
            Entry::Occupied(t) => {
                let t = t.get();
                t.max_m < m || t.max_n < n
            }
            Entry::Vacant(_) => true,
        };
        if rebuild {
            let (old_m, old_n) = match &entry {
                Entry::Occupied(t) => (t.get().max_m, t.get().max_n),
                Entry::Vacant(_) => (0, 0),
            };
            let new_m = m.max(old_m).max(1024).next_power_of_two();
            let new_n = n.max(old_n).max(8);
            let table = PowerTable::build(p, min_exp, new_m, new_n);
            match entry {
                Entry::Occupied(mut t) => {
                    t.insert(table);
                    t.get().get(m, n)
                }
                Entry::Vacant(v) => v.insert(table).get(m, n),
            }
        } else {
            match entry {
                Entry::Occupied(t) => t.get().get(m, n),
                Entry::Vacant(_) => unreachable!(),
            }
        }
    })
}

/// Number of strictly increasing exponent vectors `s_1 < ... < s_r` (from 0)
/// with `m = sum c_i p^{s_i}` for the composition `c`.
pub fn count_increasing_exponents(m: u64, c: &Composition, p: u64) -> u64 {
    assert!(is_prime(p), "count_increasing_exponents requires a prime p");
    fn go(m_left: u64, parts: &[u64], min_exp: u32, p: u64) -> u64 {
        if parts.is_empty() {
            return u64::from(m_left == 0);
        }
        if m_left == 0 {
            return 0;
        }
        // Every remaining term is divisible by p^min_exp.
        match (p as u128).checked_pow(min_exp) {
            Some(scale) if scale <= m_left as u128 => {
                if m_left as u128 % scale != 0 {
                    return 0;
                }
            }
            _ => return 0,
        }
        let mut total = 0;
        let mut e = min_exp;
        loop {
            let term = match (p as u128).checked_pow(e) {
                Some(pe) => parts[0] as u128 * pe,
                None => break,
            };
            if term > m_left as u128 {
                break;
            }
            total += go(m_left - term as u64, &parts[1..], e + 1, p);
            e += 1;
        }
        total
    }
    go(m, c.parts(), 0, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent implementation through Euler's pentagonal recurrence.
    fn partition_count_pentagonal(n: u64) -> BigUint {
        let n = n as usize;
        let mut table: Vec<num_bigint::BigInt> = vec![num_bigint::BigInt::from(0); n + 1];
        table[0] = num_bigint::BigInt::from(1);
        for i in 1..=n {
            let mut acc = num_bigint::BigInt::from(0);
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * &table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    acc += sign * &table[i - g2];
                }
                k += 1;
            }
            table[i] = acc;
        }
        table[n].to_biguint().expect("p(n) is non-negative")
    }

    #[test]
    fn partition_small_values() {
        assert_eq!(partition_count(0), BigUint::from(1u32));
        assert_eq!(partition_count(5), BigUint::from(7u32));
        assert_eq!(partition_count(10), BigUint::from(42u32));
        assert_eq!(partition_count(100), BigUint::from(190_569_292u64));
    }

    #[test]
    fn partition_matches_pentagonal_recurrence() {
        for n in 0..=300 {
            assert_eq!(partition_count(n), partition_count_pentagonal(n), "n={n}");
        }
    }

    #[test]
    fn compositions_of_three() {
        let all: Vec<Vec<u64>> = compositions_iter(3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(all, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
    }

    #[test]
    fn compositions_count_closed_form() {
        assert_eq!(compositions_count(1), BigUint::from(1u32));
        for n in 1..=14u64 {
            assert_eq!(
                BigUint::from(compositions_iter(n).count()),
                compositions_count(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn compositions_are_valid_and_lex_sorted() {
        for n in 1..=9u64 {
            let all: Vec<Composition> = compositions_iter(n).collect();
            assert!(all.iter().all(|c| c.total() == n));
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(all, sorted);
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn ordered_partitions_bounded_by_classical_count() {
        for n in 1..=12u64 {
            assert!(compositions_count(n) <= partition_count(2 * n * n), "n={n}");
        }
    }

    #[test]
    fn power_partition_examples() {
        // 4 = 2 + 2 is the only way with two parts; 1 + 3 uses a non-power.
        assert_eq!(count_power_partitions(4, 2, 2, 0), 1);
        assert_eq!(count_power_partitions(3, 3, 2, 0), 1);
        assert_eq!(count_power_partitions(0, 0, 2, 0), 1);
        assert_eq!(count_power_partitions(5, 0, 2, 0), 0);
    }

    #[test]
    fn power_partition_min_exponent() {
        // Parts restricted to {2, 4, 8, ...}.
        assert_eq!(count_power_partitions(4, 2, 2, 1), 1);
        assert_eq!(count_power_partitions(2, 1, 2, 1), 1);
        assert_eq!(count_power_partitions(1, 1, 2, 1), 0);
        assert_eq!(count_power_partitions(6, 2, 2, 1), 1);
    }

    #[test]
    fn power_partition_brute_comparison() {
        // Tiny independent enumeration: multisets as non-increasing exponent
        // lists.
        fn brute(m: u64, n: u64, p: u64, min_exp: u32, max_exp: u32) -> u64 {
            fn go(m: u64, n: u64, p: u64, e_cap: i64, min_exp: u32) -> u64 {
                if n == 0 {
                    return u64::from(m == 0);
                }
                let mut total = 0;
                let mut e = min_exp as i64;
                while e <= e_cap {
                    let term = p.pow(e as u32);
                    if term > m {
                        break;
                    }
                    total += go(m - term, n - 1, p, e, min_exp);
                    e += 1;
                }
                total
            }
            go(m, n, p, max_exp as i64, min_exp)
        }
        for p in [2u64, 3] {
            for m in 0..=60 {
                for n in 0..=6 {
                    assert_eq!(
                        count_power_partitions(m, n, p, 0),
                        brute(m, n, p, 0, 8),
                        "m={m} n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_cache_survives_shrinking_queries() {
        let first = count_power_partitions(2048, 3, 3, 0);
        // force a rebuild at a larger cap, then re-ask the earlier queries
        let _ = count_power_partitions(5000, 6, 3, 0);
        assert_eq!(count_power_partitions(2048, 3, 3, 0), first);
        assert_eq!(count_power_partitions(12, 2, 3, 0), 1); // 3 + 9
        assert_eq!(count_power_partitions(2187, 1, 3, 0), 1); // 3^7
    }

    #[test]
    fn increasing_exponent_examples() {
        let c = Composition::new(vec![2]).unwrap();
        assert_eq!(count_increasing_exponents(4, &c, 2), 1); // 4 = 2 * 2^1
        for parts in [vec![1], vec![2, 1], vec![1, 1, 1]] {
            let c = Composition::new(parts).unwrap();
            assert_eq!(count_increasing_exponents(0, &c, 2), 0);
        }
    }

    #[test]
    fn decomposition_identity_small() {
        // Summing the composition-indexed counts over all compositions of n
        // recovers the n-part power-partition count.
        for p in [2u64, 3] {
            for m in 0..=200u64 {
                for n in 1..=5u64 {
                    let total: u64 = compositions_iter(n)
                        .map(|c| count_increasing_exponents(m, &c, p))
                        .sum();
                    assert_eq!(total, count_power_partitions(m, n, p, 0), "m={m} n={n} p={p}");
                }
            }
        }
    }
}
