//! Extension dimensions between simple modules of the finite group
//! SL2(p^s), by enumerating the combinatorial conditions that index a basis
//! of `Ext^n(L_d, L_f)`.
//!
//! A simple module is labeled by an s-tuple of p-restricted weights. A basis
//! element is an s-tuple triple `(a, b, k)` subject to
//!
//! 1. `2 sum a_i + sum b_i = n`
//! 2. `b_i` in `{0, 1}`
//! 3. `a_i = b_i = 0` whenever `d_i = p - 1` or `f_i = p - 1`
//! 4. a per-coordinate window for `k_i` depending on `(a_i, b_i, d_i, f_i)`
//! 5. `2 (p sum a_i p^{i-1} + sum b_i p^{i-1}) = sum (d_i - f_i + 2 k_i
//!    - 2 b_i d_i) p^{i-1}  (mod p^s - 1)`
//!
//! The congruence is checked as a residue equality, never by enumerating its
//! wrap multiplier; the multiplier window is reported as an observation.

use crate::error::{Error, Result};
use crate::padic::require_odd_prime;
use crate::report::SuiteReport;

/// Label of a simple SL2(p^s)-module: an s-tuple of weights in `[0, p-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleLabel {
    p: u64,
    weights: Vec<u64>,
}

impl SimpleLabel {
    pub fn new(p: u64, weights: Vec<u64>) -> Result<Self> {
        require_odd_prime(p, "simple-module labels")?;
        if weights.is_empty() {
            return Err(Error::InvalidLabel("need s >= 1 weights".into()));
        }
        if let Some(&w) = weights.iter().find(|&&w| w >= p) {
            return Err(Error::InvalidLabel(format!(
                "weight {w} is not p-restricted for p = {p}"
            )));
        }
        Ok(SimpleLabel { p, weights })
    }

    /// The zero label `(0, ..., 0)`, i.e. the trivial module.
    pub fn zero(p: u64, s: usize) -> Result<Self> {
        Self::new(p, vec![0; s])
    }

    /// Label of `L(m)` at tuple length `s`; requires `m < p^s`.
    pub fn from_weight(m: u64, p: u64, s: usize) -> Result<Self> {
        require_odd_prime(p, "simple-module labels")?;
        if s == 0 || (p as u128).pow(s as u32) <= m as u128 {
            return Err(Error::InvalidLabel(format!("m = {m} needs more than {s} digits")));
        }
        let mut weights = Vec::with_capacity(s);
        let mut rest = m;
        for _ in 0..s {
            weights.push(rest % p);
            rest /= p;
        }
        Self::new(p, weights)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// The weight `sum m_i p^{i-1}` the label stands for.
    pub fn weight(&self) -> u64 {
        self.weights
            .iter()
            .rev()
            .fold(0, |acc, &w| acc * self.p + w)
    }
}

/// One basis index of `Ext^n(L_d, L_f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarlsonSolution {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub k: Vec<u64>,
}

/// The window `[lo, hi]` condition (4) allows for `k_i`; empty when
/// `lo > hi`.
fn k_window(a_i: u64, b_i: u64, d_i: i64, f_i: i64, p: i64) -> (i64, i64) {
    if b_i == 0 {
        let lo = 0.max(f_i - d_i);
        let hi = if a_i == 0 { f_i } else { f_i.min(p - d_i - 2) };
        (lo, hi)
    } else {
        (0.max(d_i + f_i + 2 - p), d_i.min(f_i))
    }
}

/// Signed left-minus-right value of the congruence (5); a solution must have
/// this divisible by `p^s - 1`.
fn congruence_gap(d: &SimpleLabel, f: &SimpleLabel, a: &[u64], b: &[u64], k: &[u64]) -> i128 {
    let p = d.p as i128;
    let mut lhs: i128 = 0;
    let mut rhs: i128 = 0;
    let mut place: i128 = 1;
    for i in 0..d.s() {
        lhs += p * a[i] as i128 * place + b[i] as i128 * place;
        rhs += (d.weights[i] as i128 - f.weights[i] as i128 + 2 * k[i] as i128
            - 2 * b[i] as i128 * d.weights[i] as i128)
            * place;
        place *= p;
    }
    2 * lhs - rhs
}

/// The wrap multiplier `t` with `lhs - rhs = t (p^s - 1)` for a solution;
/// the finite-bound report checks it stays inside the predicted window.
pub fn wrap_multiplier(d: &SimpleLabel, f: &SimpleLabel, sol: &CarlsonSolution) -> i64 {
    let modulus = (d.p as i128).pow(d.s() as u32) - 1;
    let gap = congruence_gap(d, f, &sol.a, &sol.b, &sol.k);
    debug_assert_eq!(gap % modulus, 0);
    (gap / modulus) as i64
}

fn check_compatible(d: &SimpleLabel, f: &SimpleLabel) -> Result<()> {
    if d.p != f.p || d.s() != f.s() {
        return Err(Error::LabelMismatch);
    }
    Ok(())
}

/// All basis indices of `Ext^n(L_d, L_f)`, enumerated with `b` outermost,
/// then `a` over the remaining degree budget, then the `k` windows.
pub fn enumerate_carlson(n: u64, d: &SimpleLabel, f: &SimpleLabel) -> Result<Vec<CarlsonSolution>> {
    check_compatible(d, f)?;
    let s = d.s();
    let p = d.p;
    let modulus = (p as i128).pow(s as u32) - 1;
    // Positions forced to a_i = b_i = 0 by condition (3).
    let blocked: Vec<bool> = (0..s)
        .map(|i| d.weights[i] == p - 1 || f.weights[i] == p - 1)
        .collect();
    let mut out = Vec::new();
    let mut b = vec![0u64; s];
    'mask: for mask in 0u64..(1 << s) {
        let mut sum_b = 0u64;
        for i in 0..s {
            b[i] = (mask >> i) & 1;
            if b[i] == 1 && blocked[i] {
                continue 'mask;
            }
            sum_b += b[i];
        }
        if sum_b > n || (n - sum_b) % 2 != 0 {
            continue;
        }
        let budget = (n - sum_b) / 2;
        let mut a = vec![0u64; s];
        distribute_budget(budget, 0, &blocked, &mut a, &mut |a| {
            scan_k_windows(d, f, a, &b, modulus, &mut |k| {
                out.push(CarlsonSolution { a: a.to_vec(), b: b.clone(), k: k.to_vec() });
            });
        });
    }
    Ok(out)
}

/// All ways to spread `budget` over the unblocked positions from `pos` on.
fn distribute_budget(
    budget: u64,
    pos: usize,
    blocked: &[bool],
    a: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if pos == blocked.len() {
        if budget == 0 {
            emit(a);
        }
        return;
    }
    if blocked[pos] {
        a[pos] = 0;
        distribute_budget(budget, pos + 1, blocked, a, emit);
        return;
    }
    for value in 0..=budget {
        a[pos] = value;
        distribute_budget(budget - value, pos + 1, blocked, a, emit);
    }
    a[pos] = 0;
}

/// Walk the `k` windows of condition (4) coordinate by coordinate and emit
/// every tuple passing the congruence (5).
fn scan_k_windows(
    d: &SimpleLabel,
    f: &SimpleLabel,
    a: &[u64],
    b: &[u64],
    modulus: i128,
    emit: &mut impl FnMut(&[u64]),
) {
    let p = d.p as i64;
    let s = d.s();
    let mut windows = Vec::with_capacity(s);
    for i in 0..s {
        let (lo, hi) = k_window(a[i], b[i], d.weights[i] as i64, f.weights[i] as i64, p);
        if lo > hi {
            return;
        }
        windows.push((lo as u64, hi as u64));
    }
    let mut k: Vec<u64> = windows.iter().map(|&(lo, _)| lo).collect();
    loop {
        if congruence_gap(d, f, a, b, &k) % modulus == 0 {
            emit(&k);
        }
        // odometer step over the windows
        let mut i = 0;
        loop {
            if i == s {
                return;
            }
            if k[i] < windows[i].1 {
                k[i] += 1;
                break;
            }
            k[i] = windows[i].0;
            i += 1;
        }
    }
}

/// `dim Ext^n(L_d, L_f)`: the number of solutions of conditions (1)-(5).
pub fn dim_ext_finite(n: u64, d: &SimpleLabel, f: &SimpleLabel) -> Result<u64> {
    Ok(enumerate_carlson(n, d, f)?.len() as u64)
}

/// Independent re-count of `dim Ext^n(L_d, L_f)` with the loop nesting
/// reversed: total `a`-degree outermost, condition (3) rejected late, `k`
/// windows scanned downward. Exists solely to cross-check
/// [`dim_ext_finite`].
pub fn dim_ext_finite_alt(n: u64, d: &SimpleLabel, f: &SimpleLabel) -> Result<u64> {
    check_compatible(d, f)?;
    let s = d.s();
    let p = d.p;
    let modulus = (p as i128).pow(s as u32) - 1;
    let mut total = 0u64;
    for a_degree in 0..=n / 2 {
        let b_degree = n - 2 * a_degree;
        if b_degree > s as u64 {
            continue;
        }
        let mut a = vec![0u64; s];
        // over all a-vectors of the given total, blocked positions included
        // (they get rejected below, unlike in the primary enumerator)
        fill_all(a_degree, 0, &mut a, &mut |a| {
            for mask in 0u64..(1 << s) {
                if mask.count_ones() as u64 != b_degree {
                    continue;
                }
                let b: Vec<u64> = (0..s).map(|i| (mask >> i) & 1).collect();
                let violates_blocking = (0..s).any(|i| {
                    (d.weights[i] == p - 1 || f.weights[i] == p - 1) && (a[i] > 0 || b[i] > 0)
                });
                if violates_blocking {
                    continue;
                }
                total += count_k_descending(d, f, a, &b, modulus);
            }
        });
    }
    Ok(total)
}

fn fill_all(budget: u64, pos: usize, a: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if pos == a.len() {
        if budget == 0 {
            emit(a);
        }
        return;
    }
    for value in 0..=budget {
        a[pos] = value;
        fill_all(budget - value, pos + 1, a, emit);
    }
    a[pos] = 0;
}

fn count_k_descending(
    d: &SimpleLabel,
    f: &SimpleLabel,
    a: &[u64],
    b: &[u64],
    modulus: i128,
) -> u64 {
    let p = d.p as i64;
    let s = d.s();
    let mut windows = Vec::with_capacity(s);
    for i in 0..s {
        let (lo, hi) = k_window(a[i], b[i], d.weights[i] as i64, f.weights[i] as i64, p);
        if lo > hi {
            return 0;
        }
        windows.push((lo as u64, hi as u64));
    }
    let mut k: Vec<u64> = windows.iter().map(|&(_, hi)| hi).collect();
    let mut count = 0u64;
    loop {
        if congruence_gap(d, f, a, b, &k) % modulus == 0 {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == s {
                return count;
            }
            if k[i] > windows[i].0 {
                k[i] -= 1;
                break;
            }
            k[i] = windows[i].1;
            i += 1;
        }
    }
}

/// `dim H^n(SL2(p^s), L_f)`: the extension dimension from the trivial
/// module.
pub fn dim_h_finite(n: u64, f: &SimpleLabel) -> u64 {
    let zero = SimpleLabel::zero(f.p, f.s()).expect("zero label is always valid");
    dim_ext_finite(n, &zero, f).expect("labels share (p, s) by construction")
}

/// Dimension table of `H^n(SL2(p^s), L(m))` over a window of field sizes,
/// plus flags describing how the tail of the sequence behaves. No claim is
/// made beyond the tested window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationTable {
    pub p: u64,
    pub n: u64,
    pub m: u64,
    /// `(s, dim)` rows, ascending in `s`.
    pub rows: Vec<(u64, u64)>,
    /// Smallest tested `s` from which the dimension stays constant through
    /// the end of the window.
    pub constant_from: u64,
    /// True when at least the last two tested sizes agree.
    pub tail_constant: bool,
}

/// Compute `dim H^n(SL2(p^s), L(m))` for every `s` in `[s_min, s_max]`.
/// Requires `m < p^{s_min}` so the label exists at every tested size.
pub fn stabilization_probe(
    n: u64,
    m: u64,
    p: u64,
    s_min: usize,
    s_max: usize,
) -> Result<StabilizationTable> {
    require_odd_prime(p, "the stabilization probe")?;
    if s_min == 0 || s_min > s_max {
        return Err(Error::InvalidLabel(format!(
            "need 1 <= s_min <= s_max, got [{s_min}, {s_max}]"
        )));
    }
    if (p as u128).pow(s_min as u32) <= m as u128 {
        return Err(Error::InvalidLabel(format!(
            "m = {m} is not p^s-restricted at s = {s_min}"
        )));
    }
    let mut rows = Vec::with_capacity(s_max - s_min + 1);
    for s in s_min..=s_max {
        let label = SimpleLabel::from_weight(m, p, s)?;
        rows.push((s as u64, dim_h_finite(n, &label)));
    }
    let last = rows.last().expect("window is nonempty").1;
    let constant_from = rows
        .iter()
        .rev()
        .take_while(|&&(_, dim)| dim == last)
        .last()
        .expect("at least the last row matches itself")
        .0;
    let tail_constant = rows.len() >= 2 && constant_from <= rows[rows.len() - 2].0;
    Ok(StabilizationTable { p, n, m, rows, constant_from, tail_constant })
}

/// Sweep every label pair at tuple lengths up to `max_s` (strided once
/// `s >= 3`) and degrees up to `max_n`, checking:
///
/// - the two independently coded enumerators agree;
/// - `dim <= (2n + 2 max d_i + 7) C_n prod(min(d_i, f_i) + 1)` for `n >= 1`
///   (`C_0 = 0` makes degree zero vacuous);
/// - the cohomology specialization `dim <= (2n + 7) C_n` when `d = 0`;
/// - every solution's wrap multiplier lies in `[-3, 2n + 2 max d_i + 3]`,
///   the window behind the bound's counting argument.
pub fn verify_finite_bound(p: u64, max_s: usize, max_n: u64, s3_stride: usize) -> SuiteReport {
    use crate::padic::bound_c;
    let mut report = SuiteReport::new("finite-bounds");
    let mut t_lo = i64::MAX;
    let mut t_hi = i64::MIN;
    for s in 1..=max_s {
        let labels = (p as u128).pow(s as u32) as u64;
        let stride = if s >= 3 { s3_stride.max(1) } else { 1 };
        for dw in (0..labels).step_by(stride) {
            let d = SimpleLabel::from_weight(dw, p, s).expect("dw < p^s");
            let max_d = *d.weights().iter().max().expect("s >= 1");
            for fw in (0..labels).step_by(stride) {
                let f = SimpleLabel::from_weight(fw, p, s).expect("fw < p^s");
                let window_product: u64 = d
                    .weights()
                    .iter()
                    .zip(f.weights())
                    .map(|(&di, &fi)| di.min(fi) + 1)
                    .product();
                for n in 0..=max_n {
                    let sols = enumerate_carlson(n, &d, &f).expect("labels share (p, s)");
                    let dim = sols.len() as u64;
                    let alt = dim_ext_finite_alt(n, &d, &f).expect("labels share (p, s)");
                    report.check(dim == alt, || {
                        format!("enumerators disagree: p={p} s={s} n={n} d={dw} f={fw}: {dim} vs {alt}")
                    });
                    if n >= 1 {
                        let cn = bound_c(n).value;
                        let bound = (2 * n + 2 * max_d + 7) as f64 * cn * window_product as f64;
                        report.check((dim as f64) <= bound, || {
                            format!("finite bound fails: p={p} s={s} n={n} d={dw} f={fw}: dim={dim}")
                        });
                        if dw == 0 {
                            report.check((dim as f64) <= (2 * n + 7) as f64 * cn, || {
                                format!("cohomology bound fails: p={p} s={s} n={n} f={fw}: dim={dim}")
                            });
                        }
                    }
                    let window_top = 2 * n as i64 + 2 * max_d as i64 + 3;
                    for sol in &sols {
                        let t = wrap_multiplier(&d, &f, sol);
                        t_lo = t_lo.min(t);
                        t_hi = t_hi.max(t);
                        report.check((-3..=window_top).contains(&t), || {
                            format!(
                                "wrap multiplier outside window: p={p} s={s} n={n} d={dw} f={fw}: t={t}"
                            )
                        });
                    }
                }
            }
        }
    }
    if t_lo <= t_hi {
        report.note(format!("p={p}: observed wrap multipliers in [{t_lo}, {t_hi}]"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_construction() {
        let l = SimpleLabel::from_weight(7, 3, 3).unwrap();
        assert_eq!(l.weights(), &[1, 2, 0]);
        assert_eq!(l.weight(), 7);
        assert!(SimpleLabel::new(3, vec![0, 3]).is_err());
        assert!(SimpleLabel::from_weight(9, 3, 2).is_err());
        assert!(SimpleLabel::new(2, vec![0]).is_err());
    }

    #[test]
    fn trivial_module_in_degree_zero() {
        let zero = SimpleLabel::zero(3, 2).unwrap();
        assert_eq!(dim_ext_finite(0, &zero, &zero).unwrap(), 1);
        assert_eq!(dim_h_finite(0, &zero), 1);
    }

    #[test]
    fn full_steinberg_label_kills_positive_degrees() {
        for s in 1..=3usize {
            let st = SimpleLabel::new(3, vec![2; s]).unwrap();
            for f_weight in 0..9u64.min(3u64.pow(s as u32)) {
                let f = SimpleLabel::from_weight(f_weight, 3, s).unwrap();
                for n in 1..=5 {
                    assert_eq!(dim_ext_finite(n, &st, &f).unwrap(), 0, "s={s} n={n}");
                }
            }
        }
    }

    #[test]
    fn frozen_rank_one_tables() {
        // p = 3, s = 1: cohomology of the three simple modules in low degree.
        let expect_h1 = [1, 0, 0];
        let expect_h2 = [1, 0, 0];
        for f_weight in 0..3u64 {
            let f = SimpleLabel::from_weight(f_weight, 3, 1).unwrap();
            assert_eq!(dim_h_finite(1, &f), expect_h1[f_weight as usize], "f={f_weight}");
            assert_eq!(dim_h_finite(2, &f), expect_h2[f_weight as usize], "f={f_weight}");
        }
    }

    #[test]
    fn enumerators_agree() {
        for p in [3u64, 5] {
            for s in 1..=2usize {
                let labels = p.pow(s as u32);
                for dw in 0..labels {
                    for fw in 0..labels {
                        let d = SimpleLabel::from_weight(dw, p, s).unwrap();
                        let f = SimpleLabel::from_weight(fw, p, s).unwrap();
                        for n in 0..=4 {
                            assert_eq!(
                                dim_ext_finite(n, &d, &f).unwrap(),
                                dim_ext_finite_alt(n, &d, &f).unwrap(),
                                "p={p} s={s} n={n} d={dw} f={fw}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_labels_are_rejected() {
        let d = SimpleLabel::zero(3, 2).unwrap();
        let f = SimpleLabel::zero(3, 3).unwrap();
        assert_eq!(dim_ext_finite(1, &d, &f).unwrap_err(), Error::LabelMismatch);
        let g = SimpleLabel::zero(5, 2).unwrap();
        assert_eq!(dim_ext_finite(1, &d, &g).unwrap_err(), Error::LabelMismatch);
    }

    #[test]
    fn wrap_multiplier_is_exact() {
        let d = SimpleLabel::zero(3, 2).unwrap();
        for fw in 0..9u64 {
            let f = SimpleLabel::from_weight(fw, 3, 2).unwrap();
            for n in 0..=5 {
                for sol in enumerate_carlson(n, &d, &f).unwrap() {
                    let t = wrap_multiplier(&d, &f, &sol);
                    assert!((-3..=2 * n as i64 + 3).contains(&t), "t={t} n={n} f={fw}");
                }
            }
        }
    }

    #[test]
    fn probe_is_deterministic() {
        let a = stabilization_probe(2, 0, 3, 2, 5).unwrap();
        let b = stabilization_probe(2, 0, 3, 2, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 4);
        // H^2(SL2(p^s), k) at p = 3 starts at 1 for s = 2 and settles to 0:
        // the window is not constant, but its tail is.
        assert_eq!(a.rows.iter().map(|&(_, d)| d).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        assert_eq!(a.constant_from, 3);
        assert!(a.tail_constant);
    }

    #[test]
    fn probe_degree_zero_is_constant_one() {
        let t = stabilization_probe(0, 0, 3, 2, 5).unwrap();
        assert!(t.rows.iter().all(|&(_, d)| d == 1));
        assert_eq!(t.constant_from, 2);
    }

    #[test]
    fn probe_rejects_oversized_weight() {
        assert!(stabilization_probe(1, 9, 3, 2, 4).is_err());
        assert!(stabilization_probe(1, 8, 3, 2, 4).is_ok());
    }
}
