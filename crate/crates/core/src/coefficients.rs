//! Combinatorial kernel: partitions as multiplicity vectors, binomials,
//! double factorials, Stirling and Bell numbers, the table of `C^{s,m,k}_α`
//! regenerated from its own recurrences, and the identity verifiers.
//!
//! Throughout, `k` in a table key is the operator power the number belongs to
//! (`C^{s,m,k}_α` is a coefficient of `F_m^k`), `s` is the differential weight
//! and `m` the number of derivative factors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::operator_power::{expansions, extract_c, CEntry};
use crate::report::Report;
use crate::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("double factorial is defined here for odd n >= -1, got {0}")]
    DoubleFactorialDomain(i64),
    #[error("no recurrence produces C^{{{s},{m},{k}}}_({alpha})")]
    Unreachable {
        k: u32,
        s: u32,
        m: u32,
        alpha: String,
    },
    #[error("table needs k_max >= 2, got {0}")]
    TooSmall(u32),
}

/// Multiplicities `(α_1, …, α_s)` with `Σ α_i = m` and `Σ i·α_i = s`:
/// a partition of `s` into exactly `m` parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompositionIndex {
    pub alpha: Vec<u32>,
    pub m: u32,
    pub s: u32,
}

impl CompositionIndex {
    /// `alpha` without trailing zeros, the form used as a table key.
    pub fn trimmed(&self) -> Vec<u32> {
        trim(self.alpha.clone())
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Every `α` of length `s` with `Σ α_i = m`, `Σ i·α_i = s`, in lexicographic order.
pub fn compositions(s: u32, m: u32) -> Vec<CompositionIndex> {
    fn go(pos: u32, s: u32, parts_left: u32, weight_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos > s {
            if parts_left == 0 && weight_left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = core::cmp::min(parts_left, weight_left / pos);
        for a in 0..=max {
            let rem_parts = parts_left - a;
            let rem_weight = weight_left - a * pos;
            // Remaining parts are each at least pos+1 and at most s.
            if u64::from(rem_parts) * u64::from(pos + 1) > u64::from(rem_weight)
                || u64::from(rem_parts) * u64::from(s) < u64::from(rem_weight)
            {
                continue;
            }
            cur.push(a);
            go(pos + 1, s, rem_parts, rem_weight, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 || m == 0 || m > s {
        return Vec::new();
    }
    go(1, s, m, s, &mut Vec::with_capacity(s as usize), &mut out);
    out.into_iter()
        .map(|alpha| CompositionIndex { alpha, m, s })
        .collect()
}

/// `n choose r`, zero when `r < 0` or `r > n`.
pub fn binomial(n: u64, r: i64) -> ExactInt {
    if r < 0 || r as u64 > n {
        return ExactInt::zero();
    }
    let r = core::cmp::min(r as u64, n - r as u64);
    let mut acc = ExactInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// `n!! = n (n-2) (n-4) … 1` for odd `n`, with `(-1)!! = 1`.
pub fn double_factorial_odd(n: i64) -> Result<ExactInt, CoeffError> {
    if n < -1 || n.is_even() {
        return Err(CoeffError::DoubleFactorialDomain(n));
    }
    let mut acc = ExactInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

/// Rows `0..=n_max` of the Stirling triangle of the second kind; row `n` has
/// entries for `m = 0..=n`.
pub fn stirling2_triangle(n_max: u32) -> Vec<Vec<ExactInt>> {
    let mut rows: Vec<Vec<ExactInt>> = alloc::vec![alloc::vec![ExactInt::one()]];
    for n in 1..=n_max as usize {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|m| {
                let diag = if m >= 1 { prev[m - 1].clone() } else { ExactInt::zero() };
                let same = prev.get(m).map(|v| v * m).unwrap_or_default();
                diag + same
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Rows `0..=n_max` of the unsigned Stirling triangle of the first kind.
pub fn stirling1_unsigned_triangle(n_max: u32) -> Vec<Vec<ExactInt>> {
    let mut rows: Vec<Vec<ExactInt>> = alloc::vec![alloc::vec![ExactInt::one()]];
    for n in 1..=n_max as usize {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|m| {
                let diag = if m >= 1 { prev[m - 1].clone() } else { ExactInt::zero() };
                let same = prev.get(m).map(|v| v * (n - 1)).unwrap_or_default();
                diag + same
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn triangle_entry(rows: &[Vec<ExactInt>], n: u32, m: i64) -> ExactInt {
    if m < 0 {
        return ExactInt::zero();
    }
    rows.get(n as usize)
        .and_then(|row| row.get(m as usize))
        .cloned()
        .unwrap_or_default()
}

/// Stirling number of the second kind `σ(n, m)`; zero out of range.
pub fn stirling2(n: u32, m: i64) -> ExactInt {
    triangle_entry(&stirling2_triangle(n), n, m)
}

/// Unsigned Stirling number of the first kind `c(n, m) = (-1)^{n-m} S(n, m)`.
pub fn stirling1_unsigned(n: u32, m: i64) -> ExactInt {
    triangle_entry(&stirling1_unsigned_triangle(n), n, m)
}

/// Bell numbers `B(0..=n_max)` from the Bell triangle.
pub fn bell_numbers(n_max: u32) -> Vec<ExactInt> {
    let mut bells = alloc::vec![ExactInt::one()];
    let mut row = alloc::vec![ExactInt::one()];
    for _ in 0..n_max {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_default());
        for v in &row {
            let sum = next.last().expect("seeded") + v;
            next.push(sum);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells
}

/// Key of one `C^{s,m,k}_α`; `alpha` is the trimmed tuple `(α_1, α_2, …)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CKey {
    pub k: u32,
    pub s: u32,
    pub m: u32,
    pub alpha: Vec<u32>,
}

impl CKey {
    pub fn new(k: u32, s: u32, m: u32, alpha: Vec<u32>) -> Self {
        CKey { k, s, m, alpha: trim(alpha) }
    }

    pub fn alpha_string(&self) -> String {
        join_alpha(&self.alpha)
    }
}

/// Semicolon-joined tuple, e.g. `0;1`.
pub fn join_alpha(alpha: &[u32]) -> String {
    let mut out = String::new();
    for (i, a) in alpha.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        out.push_str(&format!("{a}"));
    }
    out
}

impl core::fmt::Display for CKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "C^{{{},{},{}}}_({})", self.s, self.m, self.k, self.alpha_string())
    }
}

/// The numbers `C^{s,m,k}_α` for a range of powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CTable {
    entries: BTreeMap<CKey, ExactInt>,
}

impl CTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: CKey, value: ExactInt) {
        self.entries.insert(key, value);
    }

    /// Value at `(k, s, m, α)`, zero when absent.
    pub fn get(&self, k: u32, s: u32, m: u32, alpha: &[u32]) -> ExactInt {
        self.entries
            .get(&CKey::new(k, s, m, alpha.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn contains(&self, key: &CKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CKey, &ExactInt)> {
        self.entries.iter()
    }

    /// Entries of one `(k, s)` block.
    pub fn block(&self, k: u32, s: u32) -> impl Iterator<Item = (&CKey, &ExactInt)> {
        let lo = CKey { k, s, m: 0, alpha: Vec::new() };
        let hi = CKey { k, s: s + 1, m: 0, alpha: Vec::new() };
        self.entries.range(lo..hi)
    }

    pub fn from_entries<'a>(entries: impl IntoIterator<Item = &'a CEntry>) -> Self {
        let mut table = CTable::new();
        for e in entries {
            table.insert(CKey::new(e.k, e.s, e.m, e.alpha_tuple()), e.value.clone());
        }
        table
    }

    /// Reads the table off the expansions of `A^2, …, A^{k_max}`.
    pub fn by_extraction(k_max: u32) -> Self {
        let mut table = CTable::new();
        for exp in expansions(k_max).skip(1) {
            for e in extract_c(&exp) {
                table.insert(CKey::new(e.k, e.s, e.m, e.alpha_tuple()), e.value);
            }
        }
        table
    }
}

/// Regenerates `C^{s,m,k}_α` for `2 <= k <= k_max` without touching the
/// operator expansion.
///
/// Weight 1 is seeded with `C^{1,1,k}_{(1)} = k(k-1)/2`. A weight `w = s+1`
/// entry at power `K` sums over `t = s+1 ..= K-1`:
///
/// * `m = 1`: `C^{s,1,t}_{(0,…,0,1)}`;
/// * `m = s+1`: `(t-s) · C^{s,s,t}_{γ - e_1}`;
/// * otherwise: `(t+1-m) · C^{s,m-1,t}_{γ - e_1} + Σ_j (γ_j+1) · C^{s,m,t}_{γ + e_j - e_{j+1}}`,
///
/// where any index with a negative slot contributes nothing.
pub fn c_table_by_recurrence(k_max: u32) -> Result<CTable, CoeffError> {
    if k_max < 2 {
        return Err(CoeffError::TooSmall(k_max));
    }
    let mut table = CTable::new();
    for big_k in 2..=k_max {
        let seed = u64::from(big_k) * u64::from(big_k - 1) / 2;
        table.insert(CKey::new(big_k, 1, 1, alloc::vec![1]), ExactInt::from(seed));
        for w in 2..big_k {
            let s = w - 1;
            for m in 1..=w {
                for gamma in compositions(w, m) {
                    let g = &gamma.alpha;
                    let mut value = ExactInt::zero();
                    for t in s + 1..big_k {
                        if m == 1 {
                            let mut single = alloc::vec![0; s as usize];
                            single[s as usize - 1] = 1;
                            value += table.get(t, s, 1, &single);
                        } else if m == w {
                            if let Some(src) = lower_first(g) {
                                value += table.get(t, s, s, &src) * (t - s);
                            }
                        } else {
                            if let Some(src) = lower_first(g) {
                                value += table.get(t, s, m - 1, &src) * (t + 1 - m);
                            }
                            for j in 1..=s as usize {
                                if let Some(src) = shift_down(g, j) {
                                    value += table.get(t, s, m, &src) * (g[j - 1] + 1);
                                }
                            }
                        }
                    }
                    if value.is_zero() {
                        return Err(CoeffError::Unreachable {
                            k: big_k,
                            s: w,
                            m,
                            alpha: join_alpha(&gamma.trimmed()),
                        });
                    }
                    table.insert(CKey::new(big_k, w, m, gamma.alpha.clone()), value);
                }
            }
        }
    }
    Ok(table)
}

/// `γ - e_1`, dropping the last slot, or `None` when `γ_1 = 0`.
fn lower_first(gamma: &[u32]) -> Option<Vec<u32>> {
    if gamma[0] == 0 || *gamma.last().expect("non-empty") != 0 {
        return None;
    }
    let mut src = gamma[..gamma.len() - 1].to_vec();
    src[0] -= 1;
    Some(src)
}

/// `γ + e_j - e_{j+1}` (1-based `j`), dropping the last slot; `None` when a
/// slot would go negative or the last slot stays occupied.
fn shift_down(gamma: &[u32], j: usize) -> Option<Vec<u32>> {
    if gamma[j] == 0 {
        return None;
    }
    let mut src = gamma.to_vec();
    src[j - 1] += 1;
    src[j] -= 1;
    if src.pop() != Some(0) {
        return None;
    }
    Some(src)
}

fn single_part(s: u32) -> Vec<u32> {
    let mut alpha = alloc::vec![0; s as usize];
    alpha[s as usize - 1] = 1;
    alpha
}

/// Exact equality of two tables over `2 <= k <= k_max`, in both directions.
pub fn compare_tables(reference: &CTable, candidate: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("cross-check", 2, k_max);
    for (key, expected) in reference.iter().filter(|(key, _)| key.k <= k_max) {
        let actual = candidate.get(key.k, key.s, key.m, &key.alpha);
        report.check_eq(|| format!("{key}"), expected, &actual);
    }
    for (key, actual) in candidate.iter().filter(|(key, _)| key.k <= k_max) {
        if !reference.contains(key) {
            report.fail(format!("{key}"), "absent".into(), format!("{actual}"));
        }
    }
    report
}

/// `C^{s,1,k}_{(0,…,0,1)} = binomial(k, s+1)` for `1 <= s <= k-1`, `k <= k_max`.
pub fn verify_corollary1(table: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("corollary1", 2, k_max);
    for big_k in 2..=k_max {
        for s in 1..big_k {
            let alpha = single_part(s);
            let actual = table.get(big_k, s, 1, &alpha);
            let expected = binomial(u64::from(big_k), i64::from(s) + 1);
            report.check_eq(|| format!("{}", CKey::new(big_k, s, 1, alpha.clone())), &expected, &actual);

            // The alternate reading puts s zeros before the 1; that index has
            // weight s+1 and must not occur at weight s.
            let mut shifted = alloc::vec![0; s as usize];
            shifted.push(1);
            let key = CKey::new(big_k, s, 1, shifted);
            report.check(
                !table.contains(&key),
                || format!("{key}"),
                || "absent".into(),
                || "present".into(),
            );
        }
    }
    report.note("single-part index (0,...,0,1) has its 1 in position s (the factor u^(s)); the reading with s leading zeros is absent at weight s");
    report
}

/// `C^{s+1,s+1,k+1}_{(s+1)} = σ(k+1, k-s)` and its running-sum form
/// `C^{s+1,s+1,k+1}_{(s+1)} = Σ_{t=s+1}^{k} (t-s) C^{s,s,t}_{(s)}`.
pub fn verify_corollary2(table: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("corollary2", 2, k_max);
    let sigma = stirling2_triangle(k_max);
    for big_k in 2..=k_max {
        let k = big_k - 1;
        for s in 0..k {
            let actual = table.get(big_k, s + 1, s + 1, &[s + 1]);
            let expected = triangle_entry(&sigma, big_k, i64::from(k - s));
            report.check_eq(
                || format!("{} vs sigma({big_k},{})", CKey::new(big_k, s + 1, s + 1, alloc::vec![s + 1]), k - s),
                &expected,
                &actual,
            );
            if s >= 1 {
                let running: ExactInt = (s + 1..=k)
                    .map(|t| table.get(t, s, s, &[s]) * (t - s))
                    .sum();
                report.check_eq(
                    || format!("running sum for {}", CKey::new(big_k, s + 1, s + 1, alloc::vec![s + 1])),
                    &running,
                    &actual,
                );
            }
        }
    }
    report
}

/// `Σ_m Σ_α C^{s,m,k}_α = c(k, k-s)` for `1 <= s <= k-1`.
pub fn verify_identity_stirling1(table: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("identity1", 2, k_max);
    let c = stirling1_unsigned_triangle(k_max);
    for k in 2..=k_max {
        for s in 1..k {
            let actual: ExactInt = table.block(k, s).map(|(_, v)| v).sum();
            let expected = triangle_entry(&c, k, i64::from(k - s));
            report.check_eq(|| format!("k={k} s={s}"), &expected, &actual);
        }
    }
    report
}

/// `k! / Π_i (i^{α_i} α_i!)` summed over partitions of `k` into `s` parts.
pub fn cycle_type_sum(k: u32, s: u32) -> ExactInt {
    compositions(k, s)
        .iter()
        .map(|c| {
            let denom = c
                .alpha
                .iter()
                .enumerate()
                .fold(ExactInt::one(), |acc, (i, &a)| {
                    acc * ExactInt::from(i as u64 + 1).pow(a) * factorial(u64::from(a))
                });
            factorial(u64::from(k)) / denom
        })
        .sum()
}

/// Counts permutations of `n` elements by number of cycles (index = cycle count).
pub fn permutation_cycle_counts(n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut counts = alloc::vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut seen = alloc::vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if !seen[start] {
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm[i];
                }
            }
        }
        counts[cycles] += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    counts
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Largest power at which the cycle-type index convention is re-validated
/// against an enumeration of all permutations.
pub const CYCLE_CONVENTION_CHECK_MAX: u32 = 8;

/// `Σ_α k!/(Π i^{α_i} α_i!) = Σ_m Σ_α C^{k-s,m,k}_α` with `α` running over
/// `Σ α_i = s`, `Σ i·α_i = k`.
pub fn verify_identity_cycle_count(table: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("identity2", 2, k_max);
    report.note("left side sums over alpha with sum(alpha_i) = s and sum(i*alpha_i) = k (permutations of k with s cycles)");
    for k in 2..=k_max {
        let brute = if k <= CYCLE_CONVENTION_CHECK_MAX {
            Some(permutation_cycle_counts(k))
        } else {
            None
        };
        for s in 1..k {
            let lhs = cycle_type_sum(k, s);
            if let Some(counts) = &brute {
                report.check_eq(
                    || format!("convention k={k} s={s} vs permutation count"),
                    &ExactInt::from(counts[s as usize]),
                    &lhs,
                );
            }
            let rhs: ExactInt = table.block(k, k - s).map(|(_, v)| v).sum();
            report.check_eq(|| format!("k={k} s={s}"), &lhs, &rhs);
        }
    }
    report
}

/// `Σ_m Σ_α Π_j (j!)^{α_j} C^{s,m,k+1}_α = (2s-1)!! · binomial(k+s, 2s)` for `1 <= s <= k`.
pub fn verify_identity_doublefact(table: &CTable, k_max: u32) -> Report {
    let mut report = Report::new("identity3", 2, k_max);
    for big_k in 2..=k_max {
        let k = big_k - 1;
        for s in 1..=k {
            let actual: ExactInt = table
                .block(big_k, s)
                .map(|(key, v)| {
                    key.alpha
                        .iter()
                        .enumerate()
                        .fold(v.clone(), |acc, (j, &a)| acc * factorial(j as u64 + 1).pow(a))
                })
                .sum();
            let expected = double_factorial_odd(2 * i64::from(s) - 1).expect("odd")
                * binomial(u64::from(k + s), 2 * i64::from(s));
            report.check_eq(|| format!("k+1={big_k} s={s}"), &expected, &actual);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn composition_examples() {
        let alphas = |s, m| compositions(s, m).into_iter().map(|c| c.alpha).collect::<Vec<_>>();
        assert_eq!(alphas(3, 1), vec![vec![0, 0, 1]]);
        assert_eq!(alphas(3, 2), vec![vec![1, 1, 0]]);
        assert_eq!(alphas(3, 3), vec![vec![3, 0, 0]]);
        assert_eq!(alphas(4, 2), vec![vec![0, 2, 0, 0], vec![1, 0, 1, 0]]);
        assert!(alphas(2, 3).is_empty());
        assert_eq!(compositions(3, 2)[0].trimmed(), vec![1, 1]);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 2), int(3));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(5, 7), int(0));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial(30, 15), int(155_117_520));
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial_odd(-1), Ok(int(1)));
        assert_eq!(double_factorial_odd(1), Ok(int(1)));
        assert_eq!(double_factorial_odd(5), Ok(int(15)));
        assert_eq!(double_factorial_odd(4), Err(CoeffError::DoubleFactorialDomain(4)));
        assert_eq!(double_factorial_odd(-3), Err(CoeffError::DoubleFactorialDomain(-3)));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling1_unsigned(3, 1), int(2));
        assert_eq!(stirling1_unsigned(3, 2), int(3));
        for n in 1..10 {
            assert_eq!(stirling2(n, i64::from(n)), int(1));
            assert_eq!(stirling1_unsigned(n, i64::from(n)), int(1));
            assert_eq!(stirling2(n, -1), int(0));
            assert_eq!(stirling2(n, i64::from(n) + 1), int(0));
        }
        let row4: Vec<_> = (1..=4).map(|m| stirling2(4, m)).collect();
        assert_eq!(row4, vec![int(1), int(7), int(6), int(1)]);
        let row4: Vec<_> = (1..=4).map(|m| stirling1_unsigned(4, m)).collect();
        assert_eq!(row4, vec![int(6), int(11), int(6), int(1)]);
    }

    #[test]
    fn bell_numbers_golden() {
        let expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        assert_eq!(bell_numbers(10), expected.iter().map(|&b| int(b)).collect::<Vec<_>>());
    }

    #[test]
    fn recurrence_table_examples() {
        let t = c_table_by_recurrence(3).unwrap();
        assert_eq!(t.get(3, 1, 1, &[1]), int(3));
        assert_eq!(t.get(3, 2, 1, &[0, 1]), int(1));
        assert_eq!(t.get(3, 2, 2, &[2]), int(1));
        assert_eq!(t.len(), 4); // plus C^{1,1,2}_(1) = 1
        assert_eq!(c_table_by_recurrence(1), Err(CoeffError::TooSmall(1)));
    }

    #[test]
    fn recurrence_matches_extraction_small() {
        let report = compare_tables(&CTable::by_extraction(7), &c_table_by_recurrence(7).unwrap(), 7);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn table_block_sums() {
        let t = CTable::by_extraction(4);
        // c(4,2) = 11 from the weight-2 block at k = 4.
        let sum: ExactInt = t.block(4, 2).map(|(_, v)| v).sum();
        assert_eq!(sum, int(11));
    }

    #[test]
    fn verifier_examples() {
        let t = c_table_by_recurrence(6).unwrap();
        for report in [
            verify_corollary1(&t, 6),
            verify_corollary2(&t, 6),
            verify_identity_stirling1(&t, 6),
            verify_identity_cycle_count(&t, 6),
            verify_identity_doublefact(&t, 6),
        ] {
            assert!(report.passed(), "{report}");
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn verifier_flags_tampered_entry() {
        let mut t = c_table_by_recurrence(4).unwrap();
        t.insert(CKey::new(4, 2, 2, vec![2]), int(8));
        assert!(!verify_corollary2(&t, 4).passed());
        assert!(!verify_identity_stirling1(&t, 4).passed());
    }

    #[test]
    fn cycle_type_sum_small() {
        assert_eq!(cycle_type_sum(3, 2), int(3));
        assert_eq!(cycle_type_sum(3, 1), int(2));
        assert_eq!(permutation_cycle_counts(4), vec![0, 6, 11, 6, 1]);
    }
}
