//! Named verification suites: each one sweeps a family of identities or
//! bounds over a grid and reports check counts, violations, and attained
//! maxima. `quick` grids finish in seconds; `full` grids run the complete
//! acceptance ranges.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::carlson;
use crate::ext::{self, BlockRelation};
use crate::padic::{bound_c, fibonacci, hardy_ramanujan_bound, p2_cohomology_bound, power_partition_bound};
use crate::partitions::{self, compositions_iter, Composition};
use crate::report::{Scale, SuiteReport};
use crate::systems::{self, SystemQuery};
use crate::weyl;

/// Every suite name accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "oracle",
    "closed-form",
    "properties",
    "fibonacci",
    "low-degree",
    "ext3",
    "ext-bounds",
    "partition-bounds",
    "p2",
    "finite-bounds",
    "stabilization",
];

/// Run one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, scale: Scale) -> Option<SuiteReport> {
    let report = match name {
        "oracle" => oracle_suite(scale),
        "closed-form" => closed_form_suite(scale),
        "properties" => properties_suite(scale),
        "fibonacci" => fibonacci_suite(scale),
        "low-degree" => low_degree_suite(scale),
        "ext3" => ext3_suite(scale),
        "ext-bounds" => ext_bounds_suite(scale),
        "partition-bounds" => partition_bounds_suite(scale),
        "p2" => p2_suite(scale),
        "finite-bounds" => finite_bounds_suite(scale),
        "stabilization" => stabilization_suite(scale),
        _ => return None,
    };
    Some(report)
}

/// Shard `0..=max_m` across the thread pool, run `work` on each value, and
/// fold the shard reports back together in deterministic order.
fn sharded_m_sweep(
    suite: &str,
    max_m: u64,
    work: impl Fn(&mut SuiteReport, u64) + Sync,
) -> SuiteReport {
    let chunk = (max_m / 128).max(64);
    let starts: Vec<u64> = (0..=max_m / chunk).map(|i| i * chunk).collect();
    let shards: Vec<SuiteReport> = starts
        .par_iter()
        .map(|&lo| {
            let mut shard = SuiteReport::new(suite);
            let hi = (lo + chunk - 1).min(max_m);
            for m in lo..=hi {
                work(&mut shard, m);
            }
            shard
        })
        .collect();
    let mut report = SuiteReport::new(suite);
    for shard in shards {
        report.absorb(shard);
    }
    report
}

/// Three-way agreement of the recursion, the sum form, and brute force.
pub fn oracle_suite(scale: Scale) -> SuiteReport {
    let (max_m, max_n) = scale.pick((500, 8), (2000, 10));
    let primes: &[u64] = scale.pick(&[3, 5][..], &[3, 5, 7][..]);
    let mut report = SuiteReport::new("oracle");
    for &p in primes {
        report.absorb(sharded_m_sweep("oracle", max_m, |shard, m| {
            for n in 0..=max_n {
                let brute = systems::count_brute(m, n, p);
                let rec = systems::count_recursive(m, n, p).expect("odd prime");
                let sum = systems::count_sum_form(m, n, p).expect("odd prime");
                shard.check(rec == brute, || {
                    format!("recursion disagrees with brute force at p={p} m={m} n={n}: {rec} vs {brute}")
                });
                shard.check(sum == brute, || {
                    format!("sum form disagrees with brute force at p={p} m={m} n={n}: {sum} vs {brute}")
                });
            }
        }));
    }
    report.note(format!("grid: m <= {max_m}, n <= {max_n}, p in {primes:?}"));
    report
}

/// Closed form against brute force on its full validity range.
pub fn closed_form_suite(scale: Scale) -> SuiteReport {
    let max_m = scale.pick(1200, 5000);
    let mut report = SuiteReport::new("closed-form");
    for p in [3u64, 5] {
        report.absorb(sharded_m_sweep("closed-form", max_m, |shard, m| {
            for n in 1..=2 * p - 2 {
                let closed = systems::count_closed_form(m, n, p).expect("n in range");
                let brute = systems::count_brute(m, n, p);
                shard.check(closed == brute, || {
                    format!("closed form disagrees at p={p} m={m} n={n}: {closed} vs {brute}")
                });
            }
        }));
    }
    report.note(format!("grid: m <= {max_m}, 1 <= n <= 2p-2, p in [3, 5]"));
    report
}

/// Structural identities: residue vanishing, the unit shift, diagonal
/// values, rank stabilization, the weight-shift injection, weighted-system
/// checks, the maximizing weight shape, and the cohomology shift laws.
pub fn properties_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("properties");

    // residue / shift / diagonal laws of the stabilized count
    let (max_m, max_n) = scale.pick((500, 8), (2000, 10));
    let primes: &[u64] = scale.pick(&[3, 5][..], &[3, 5, 7][..]);
    for &p in primes {
        report.absorb(sharded_m_sweep("properties", max_m, |shard, m| {
            let count = |m, n| systems::count_recursive(m, n, p).expect("odd prime");
            for n in 0..=max_n {
                if m % p > 1 {
                    shard.check(count(m, n) == 0, || {
                        format!("residue vanishing fails at p={p} m={m} n={n}")
                    });
                }
                if m % p == 0 {
                    shard.check(count(m, n) == count(m + 1, n + 1), || {
                        format!("unit shift fails at p={p} m={m} n={n}")
                    });
                }
            }
            if m % p == 0 {
                let diagonal = 2 * m / p;
                shard.check(count(m, diagonal) == 1, || {
                    format!("diagonal value is not 1 at p={p} m={m}")
                });
                for extra in 1..=2 {
                    shard.check(count(m, diagonal + extra) == 0, || {
                        format!("count past the diagonal is nonzero at p={p} m={m}")
                    });
                }
            }
        }));
    }

    // solution sets stabilize once p^r > m
    for (m, n, p) in [(138u64, 8u64, 3u64), (64, 6, 3), (120, 5, 5), (48, 4, 7)] {
        let r = systems::stable_rank(m, p);
        let base = systems::count_for_query(&SystemQuery::new(m, n, p, r).expect("valid"));
        let wider = systems::count_for_query(&SystemQuery::new(m, n, p, r + 1).expect("valid"));
        report.check(base == wider, || {
            format!("stabilization fails at p={p} m={m} n={n}: {base} vs {wider}")
        });
    }

    // appending p^{r+1} and one more unit never loses solutions
    let max_m0 = scale.pick(120, 500);
    report.absorb(sharded_m_sweep("properties", max_m0, |shard, m0| {
        let p = 3u64;
        let r = systems::stable_rank(m0, p);
        let lifted_m = m0 + p.pow(r as u32 + 1);
        for n in 0..=8 {
            let here = systems::count_for_query(&SystemQuery::new(m0, n, p, r).expect("valid"));
            let lifted =
                systems::count_for_query(&SystemQuery::new(lifted_m, n + 1, p, r + 1).expect("valid"));
            shard.check(here <= lifted, || {
                format!("weight-shift injection fails at m0={m0} n={n}: {here} > {lifted}")
            });
        }
    }));

    // weighted system: degenerate weights recover the plain count, and the
    // count stays under the exponential bound
    let max_weighted_m = scale.pick(150, 400);
    for p in [3u64, 5] {
        report.absorb(sharded_m_sweep("properties", max_weighted_m, |shard, m| {
            let r = systems::stable_rank(m, p);
            for n in 0..=8u64 {
                let plain = systems::count_brute(m, n, p);
                let ones = systems::count_weighted(m, n, p, &vec![1; r]);
                shard.check(plain == ones, || {
                    format!("weighted system with unit weights deviates at p={p} m={m} n={n}")
                });
                for weights in [
                    vec![2; r],
                    (0..r).map(|i| 1 + (i as u64 % 3)).collect::<Vec<_>>(),
                    (0..r).map(|i| if i % 2 == 0 { 1 } else { 4 }).collect::<Vec<_>>(),
                ] {
                    let count = systems::count_weighted(m, n, p, &weights);
                    if n >= 1 {
                        shard.check((count as f64) <= bound_c(n).value, || {
                            format!("weighted count exceeds C_n at p={p} m={m} n={n}: {count}")
                        });
                    }
                }
            }
        }));
    }

    // the all-distinct-powers shape maximizes the count at its height
    let max_shape_m = scale.pick(600, 3000);
    for p in [3u64, 5] {
        report.absorb(sharded_m_sweep("properties", max_shape_m, |shard, m| {
            if m == 0 {
                return;
            }
            let h = crate::padic::expand(m, p).expect("prime").height();
            let best = systems::max_count_weight(h, p);
            for n in 1..=2 * p - 2 {
                let here = systems::count_recursive(m, n, p).expect("odd prime");
                let top = systems::count_recursive(best, n, p).expect("odd prime");
                shard.check(here <= top, || {
                    format!("maximizer beaten at p={p} m={m} n={n}: {here} > {top}")
                });
            }
        }));
    }

    // shift law between Weyl and Borel cohomology, plus degree-zero and
    // odd-weight vanishing
    let (max_shift_m, max_shift_n) = scale.pick((1000u64, 5u64), (5000, 8));
    for p in [3u64, 5] {
        report.absorb(sharded_m_sweep("properties", max_shift_m, |shard, m| {
            if m % 2 == 0 {
                for n in 0..=max_shift_n {
                    let weyl_dim = weyl::dim_weyl_cohomology(n as i64, m as i64, p);
                    let borel_dim = weyl::dim_b_cohomology(n + 1, m + 2, p).expect("odd prime");
                    shard.check(weyl_dim == borel_dim, || {
                        format!("shift law fails at p={p} n={n} m={m}: {weyl_dim} vs {borel_dim}")
                    });
                }
            } else {
                for n in 0..=max_shift_n {
                    shard.check(weyl::dim_weyl_cohomology(n as i64, m as i64, p) == 0, || {
                        format!("odd-weight vanishing fails at p={p} n={n} m={m}")
                    });
                }
            }
            let h0 = weyl::dim_weyl_cohomology(0, m as i64, p);
            // an invariant vector exists exactly for the weights 2p^k - 2
            let expected = if m % 2 == 0 {
                let mut reduced = m / 2 + 1;
                while reduced % p == 0 {
                    reduced /= p;
                }
                u64::from(reduced == 1)
            } else {
                0
            };
            shard.check(h0 == expected, || {
                format!("degree-zero law fails at p={p} m={m}: {h0} vs {expected}")
            });
        }));
    }

    // explicit exponential lower-bound instance: weight 724 = 2(3+...+3^5)-2
    // in degree 7 at p = 3 has dimension at least C(4, 2) = 6
    let instance = weyl::dim_weyl_cohomology(7, 724, 3);
    report.check(instance >= 6, || {
        format!("lower-bound instance fails: dim H^7(G, V(724)) = {instance} < 6")
    });
    report.note(format!("dim H^7(G, V(724)) at p=3: {instance}"));

    report
}

/// The Fibonacci ceiling on the counts and on Weyl cohomology.
pub fn fibonacci_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("fibonacci");
    let max_m = scale.pick(10_000, 100_000);
    let primes: &[u64] = scale.pick(&[3][..], &[3, 5, 7][..]);
    for &p in primes {
        let caps: Vec<u64> = (1..=2 * p - 2)
            .map(|n| fibonacci(n).expect("n >= 1").to_u64().expect("small"))
            .collect();
        report.absorb(sharded_m_sweep("fibonacci", max_m, |shard, m| {
            for n in 1..=2 * p - 2 {
                let count = systems::count_recursive(m, n, p).expect("odd prime");
                shard.check(count <= caps[(n - 1) as usize], || {
                    format!("Fibonacci cap fails at p={p} m={m} n={n}: {count} > F({n})")
                });
            }
        }));
        report.note(format!("count cap checked for p={p}, m <= {max_m}, n <= {}", 2 * p - 2));
    }
    report.absorb(weyl::verify_weyl_bounds(3, 3, scale.pick(2000, 10_000)));
    if scale == Scale::Full {
        report.absorb(weyl::verify_weyl_bounds(5, 7, 10_000));
    }
    report
}

/// Low-degree classifier against the general formula, plus spot values.
pub fn low_degree_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("low-degree");
    let max_m = scale.pick(2000, 10_000);
    let primes: &[u64] = scale.pick(&[3][..], &[3, 5][..]);
    for &p in primes {
        report.absorb(sharded_m_sweep("low-degree", max_m, |shard, m| {
            if m % 2 != 0 {
                return;
            }
            for n in 1..=3u64 {
                let table = weyl::low_degree_dim(n, m, p).expect("n in 1..=3");
                let formula = weyl::dim_weyl_cohomology(n as i64, m as i64, p);
                shard.check(table == formula, || {
                    format!("classifier disagrees at p={p} n={n} m={m}: {table} vs {formula}")
                });
            }
        }));
    }
    for (n, m, want) in [(1u64, 4u64, 1u64), (2, 22, 2), (3, 76, 3)] {
        let got = weyl::dim_weyl_cohomology(n as i64, m as i64, 3);
        report.check(got == want, || {
            format!("spot value fails: dim H^{n}(G, V({m})) = {got}, expected {want}")
        });
    }
    report
}

/// Degree-three closed form against the recursion, the cap of 3, and the
/// degree-one/two caps, over all same-block pairs.
pub fn ext3_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("ext3");
    let max_m1 = scale.pick(1000, 3000);
    let primes: &[u64] = scale.pick(&[3][..], &[3, 5][..]);
    for &p in primes {
        let mut max_seen = 0u64;
        let folded = sharded_m_sweep("ext3", max_m1, |shard, m1| {
            for m2 in 0..=m1 {
                match ext::classify_block(m1, m2, p).expect("m1 >= m2") {
                    BlockRelation::DifferentBlock => {
                        // vanishing across blocks, sampled
                        if (m1 + m2) % 97 == 0 {
                            for n in 0..=3 {
                                let dim = ext::dim_ext(n, m2, m1, p).expect("valid");
                                shard.check(dim == 0, || {
                                    format!("cross-block extension nonzero: p={p} n={n} m1={m1} m2={m2}")
                                });
                            }
                        }
                    }
                    _ => {
                        let closed = ext::ext3_closed(m2, m1, p).expect("valid");
                        let recursive = ext::dim_ext(3, m2, m1, p).expect("valid");
                        shard.check(closed == recursive, || {
                            format!("degree-three routes disagree: p={p} m1={m1} m2={m2}: {closed} vs {recursive}")
                        });
                        shard.check(closed <= 3, || {
                            format!("degree-three dimension above 3: p={p} m1={m1} m2={m2}: {closed}")
                        });
                        for n in 1..=2u64 {
                            let dim = ext::dim_ext(n, m2, m1, p).expect("valid");
                            shard.check(dim <= n, || {
                                format!("degree-{n} dimension above {n}: p={p} m1={m1} m2={m2}: {dim}")
                            });
                        }
                    }
                }
            }
        });
        // scan for attained maximum separately from the sharded checks
        for m1 in 0..=max_m1.min(600) {
            for m2 in 0..=m1 {
                max_seen = max_seen.max(ext::ext3_closed(m2, m1, p).expect("valid"));
            }
        }
        report.absorb(folded);
        report.note(format!("p={p}: max degree-three dimension attained on sample: {max_seen}"));
    }
    report
}

/// Fibonacci-type and exponential extension bounds, the Steinberg
/// invariance, and the Specht translation bounds.
pub fn ext_bounds_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("ext-bounds");
    let primes: &[u64] = scale.pick(&[3][..], &[3, 5][..]);
    let max_m1 = scale.pick(2000, 10_000);
    for &p in primes {
        report.absorb(ext::verify_ext_bounds(p, max_m1, 3, 8, 89, 7));
    }

    // Steinberg invariance
    let max_a = scale.pick(120, 300);
    for a in 0..=max_a {
        for b in 0..=a {
            for n in 0..=4 {
                let stripped = ext::dim_ext(n, b, a, 3).expect("valid");
                let dressed = ext::dim_ext(n, 3 * b + 2, 3 * a + 2, 3).expect("valid");
                report.check(stripped == dressed, || {
                    format!("Steinberg invariance fails at a={a} b={b} n={n}")
                });
            }
        }
    }

    // Specht translation: dim <= n in degrees 1..3 and the Fibonacci-type
    // bound through degree 2p-4
    let max_lambda = scale.pick(60, 200);
    let specht_primes: &[u64] = scale.pick(&[5][..], &[5, 7][..]);
    for &p in specht_primes {
        report.absorb(sharded_m_sweep("ext-bounds", max_lambda, |shard, l1| {
            for l2 in 0..=l1 {
                for n in 1..=3u64 {
                    let dim = ext::specht_dim(n, l1, l2, p).expect("degree in range");
                    shard.check(dim <= n, || {
                        format!("Specht degree-{n} cap fails at p={p} lambda=({l1},{l2}): {dim}")
                    });
                }
                let r = ext::restriction_rank(2 * (l1 - l2), p);
                for n in 0..=2 * p - 4 {
                    let dim = ext::specht_dim(n, l1, l2, p).expect("degree in range");
                    let bound = ext::fibonacci_type_bound(n, r);
                    shard.check(dim <= bound, || {
                        format!("Specht Fibonacci-type bound fails at p={p} n={n} lambda=({l1},{l2}): {dim} > {bound}")
                    });
                }
            }
        }));
    }
    report
}

/// Partition identities and all three exponential partition bounds.
pub fn partition_bounds_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("partition-bounds");

    // decomposition identity and the per-composition cap
    let (max_m_id, max_n_id) = scale.pick((2000u64, 6u64), (10_000, 8));
    for p in [2u64, 3] {
        for n in 1..=max_n_id {
            let comps: Vec<Composition> = compositions_iter(n).collect();
            let cap = 1u64 << n;
            report.absorb(sharded_m_sweep("partition-bounds", max_m_id, |shard, m| {
                let mut total = 0u64;
                for c in &comps {
                    let count = partitions::count_increasing_exponents(m, c, p);
                    shard.check(count <= cap, || {
                        format!("per-composition cap fails at p={p} m={m} c={:?}: {count}", c.parts())
                    });
                    total += count;
                }
                let direct = partitions::count_power_partitions(m, n, p, 0);
                shard.check(total == direct, || {
                    format!("decomposition identity fails at p={p} m={m} n={n}: {total} vs {direct}")
                });
            }));
        }
    }

    // sup over m of the n-part power-partition count
    let (max_m_sup, max_n_sup) = scale.pick((10_000u64, 10u64), (100_000, 15));
    for p in [2u64, 3] {
        for n in 1..=max_n_sup {
            let bound = power_partition_bound(n).value;
            let mut max_count = 0u64;
            for m in 0..=max_m_sup {
                let count = partitions::count_power_partitions(m, n, p, 0);
                max_count = max_count.max(count);
                report.check((count as f64) < bound, || {
                    format!("power-partition bound fails at p={p} m={m} n={n}: {count}")
                });
            }
            report.note(format!("p={p} n={n}: max n-part power-partition count {max_count}"));
        }
    }

    // Hardy-Ramanujan bound on classical partitions
    for n in 1..=scale.pick(100u64, 200) {
        let value = partitions::partition_count(n).to_f64().unwrap_or(f64::INFINITY);
        report.check(value < hardy_ramanujan_bound(n).value, || {
            format!("Hardy-Ramanujan bound fails at n={n}")
        });
    }

    // ordered partitions against classical partitions of 2n^2
    for n in 1..=scale.pick(10u64, 12) {
        report.check(
            partitions::compositions_count(n) <= partitions::partition_count(2 * n * n),
            || format!("ordered-partition bound fails at n={n}"),
        );
    }
    report
}

/// Count of the characteristic-two system: `sum a_i = n + 1` and
/// `sum 2^i a_i = m + 1`, by direct digit recursion. This is the oracle the
/// partition-table route is checked against.
fn p2_system_count(m: u64, n: u64, memo: &mut HashMap<(u64, u64, u32), u64>) -> u64 {
    let target = m + 1;
    if target % 2 != 0 {
        return 0;
    }
    let reduced = target / 2;
    let slots = 64 - reduced.leading_zeros().min(63);
    systems::digit_count(2, reduced, n + 1, slots, memo)
}

/// Characteristic-two route against its system oracle and bound.
pub fn p2_suite(scale: Scale) -> SuiteReport {
    let (max_m, max_n) = scale.pick((512u64, 8u64), (4096, 12));
    let mut report = sharded_m_sweep("p2", max_m, |shard, m| {
        let mut memo = HashMap::new();
        for n in 0..=max_n {
            let via_partitions = weyl::dim_weyl_cohomology(n as i64, m as i64, 2);
            let via_system = p2_system_count(m, n, &mut memo);
            shard.check(via_partitions == via_system, || {
                format!("p=2 routes disagree at m={m} n={n}: {via_partitions} vs {via_system}")
            });
            shard.check((via_partitions as f64) <= p2_cohomology_bound(n).value, || {
                format!("p=2 bound fails at m={m} n={n}: {via_partitions}")
            });
        }
    });
    report.note(format!("grid: m <= {max_m}, n <= {max_n}"));
    report
}

/// Carlson enumeration agreement and the finite-group bounds.
pub fn finite_bounds_suite(scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("finite-bounds");
    match scale {
        Scale::Quick => {
            report.absorb(carlson::verify_finite_bound(3, 2, 4, 1));
        }
        Scale::Full => {
            report.absorb(carlson::verify_finite_bound(3, 3, 6, 1));
            report.absorb(carlson::verify_finite_bound(5, 3, 6, 7));
        }
    }
    report
}

/// Determinism and shape of the generic-cohomology stabilization probe.
/// This is exploratory: the suite asserts reproducibility of the emitted
/// tables, not any stabilization theorem.
pub fn stabilization_suite(_scale: Scale) -> SuiteReport {
    let mut report = SuiteReport::new("stabilization");
    for n in 0..=4u64 {
        for m in 0..=8u64 {
            let first = carlson::stabilization_probe(n, m, 3, 2, 5).expect("m < 9");
            let second = carlson::stabilization_probe(n, m, 3, 2, 5).expect("m < 9");
            report.check(first == second, || {
                format!("probe is not deterministic at n={n} m={m}")
            });
            report.check(first.rows.len() == 4, || {
                format!("probe window has wrong length at n={n} m={m}")
            });
            let dims: Vec<u64> = first.rows.iter().map(|&(_, d)| d).collect();
            report.note(format!(
                "p=3 n={n} m={m}: dims over s in [2,5]: {dims:?}, constant from s={}, tail constant: {}",
                first.constant_from, first.tail_constant
            ));
        }
    }
    report
}

/// Labels shared by the probe sweep [`stabilization_suite`] and the CLI.
pub fn stabilization_grid() -> Vec<(u64, u64)> {
    let mut grid = Vec::new();
    for n in 0..=4u64 {
        for m in 0..=8u64 {
            grid.push((n, m));
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("no-such-suite", Scale::Quick).is_none());
    }

    #[test]
    fn suite_list_is_exhaustive() {
        for name in SUITES {
            assert!(run_suite(name, Scale::Quick).is_some(), "{name} missing");
        }
    }

    #[test]
    fn quick_oracle_passes() {
        let report = oracle_suite(Scale::Quick);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.checks > 0);
    }

    #[test]
    fn quick_stabilization_passes() {
        let report = stabilization_suite(Scale::Quick);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn p2_oracle_agrees_on_small_grid() {
        let mut memo = HashMap::new();
        // dim H^0(G, V(1)) = 1 via 2 = 2; dim H^1(G, V(5)) = 1 via 6 = 2+4.
        assert_eq!(p2_system_count(1, 0, &mut memo), 1);
        assert_eq!(p2_system_count(5, 1, &mut memo), 1);
        assert_eq!(p2_system_count(4, 1, &mut memo), 0);
    }
}
