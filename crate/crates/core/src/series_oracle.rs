//! Brute-force oracle: apply `A = u·d/dz` to explicit Laurent series and
//! compare with the normal-ordered expansion evaluated on the same series.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::{max, min};
use core::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::operator_power::OperatorExpansion;
use crate::report::Report;
use crate::{ExactInt, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operator power must be at least 1")]
    ZeroPower,
    #[error("no known coefficients left (precision O(z^{0}))")]
    PrecisionExhausted(i64),
}

/// Exponent bound below which coefficients are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// Every coefficient is known (a Laurent polynomial).
    Exact,
    /// Coefficients of `z^n` with `n >= bound` are unknown.
    Below(i64),
}

impl Precision {
    fn shift(self, by: i64) -> Self {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Below(p) => Precision::Below(p + by),
        }
    }

    fn meet(self, other: Self) -> Self {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Below(a), Precision::Below(b)) => Precision::Below(min(a, b)),
        }
    }

    pub fn knows(self, exponent: i64) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Below(p) => exponent < p,
        }
    }
}

/// `Σ_i coeffs[i] z^{min_exp + i} + O(z^prec)`. Coefficients below `min_exp`
/// and between the last stored one and `prec` are known zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurentSeries {
    min_exp: i64,
    coeffs: Vec<ExactRational>,
    prec: Precision,
}

impl TruncatedLaurentSeries {
    pub fn new(min_exp: i64, coeffs: Vec<ExactRational>, prec: Precision) -> Self {
        let mut s = TruncatedLaurentSeries { min_exp, coeffs, prec };
        s.normalize();
        s
    }

    /// Exact Laurent polynomial starting at `z^{min_exp}`.
    pub fn laurent(min_exp: i64, coeffs: Vec<ExactRational>) -> Self {
        Self::new(min_exp, coeffs, Precision::Exact)
    }

    pub fn polynomial(coeffs: Vec<ExactRational>) -> Self {
        Self::laurent(0, coeffs)
    }

    pub fn from_integers(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::laurent(
            min_exp,
            coeffs
                .iter()
                .map(|&c| ExactRational::from_integer(ExactInt::from(c)))
                .collect(),
        )
    }

    /// `c · z^exp`.
    pub fn monomial(c: ExactRational, exp: i64) -> Self {
        Self::laurent(exp, alloc::vec![c])
    }

    pub fn zero() -> Self {
        Self::laurent(0, Vec::new())
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    /// Exponent one past the last stored coefficient.
    pub fn end_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    /// Coefficient of `z^exp`, or `None` when it is beyond the precision.
    pub fn coefficient(&self, exp: i64) -> Option<ExactRational> {
        if !self.prec.knows(exp) {
            return None;
        }
        let idx = exp - self.min_exp;
        if idx < 0 {
            return Some(ExactRational::zero());
        }
        Some(self.coeffs.get(idx as usize).cloned().unwrap_or_else(ExactRational::zero))
    }

    fn normalize(&mut self) {
        if let Precision::Below(p) = self.prec {
            let keep = max(0, p - self.min_exp) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.min_exp += lead as i64;
        if self.coeffs.is_empty() {
            self.min_exp = match self.prec {
                Precision::Exact => 0,
                Precision::Below(p) => p,
            };
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * ExactRational::from_integer(ExactInt::from(self.min_exp + i as i64)))
            .collect();
        Self::new(self.min_exp - 1, coeffs, self.prec.shift(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self
            .prec
            .shift(other.min_exp)
            .meet(other.prec.shift(self.min_exp));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.min_exp + other.min_exp, Vec::new(), prec);
        }
        let mut coeffs = alloc::vec![ExactRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.min_exp + other.min_exp, coeffs, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.meet(other.prec);
        let lo = min(self.min_exp, other.min_exp);
        let hi = max(self.end_exp(), other.end_exp());
        let coeffs = (lo..hi)
            .map(|e| {
                let a = self.coefficient(e).unwrap_or_else(ExactRational::zero);
                let b = other.coefficient(e).unwrap_or_else(ExactRational::zero);
                a + b
            })
            .collect();
        Self::new(lo, coeffs, prec)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(
            self.min_exp,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.prec,
        )
    }

    /// Exponents at which both series are known and at least one may be non-zero.
    fn common_known_range(&self, other: &Self) -> core::ops::Range<i64> {
        let lo = min(self.min_exp, other.min_exp);
        let mut hi = max(self.end_exp(), other.end_exp());
        if let Precision::Below(p) = self.prec.meet(other.prec) {
            hi = min(hi, p);
        }
        lo..max(lo, hi)
    }

    /// Equality on every coefficient known in both series.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.common_known_range(other)
            .all(|e| self.coefficient(e) == other.coefficient(e))
    }
}

impl fmt::Display for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c} z^{}", self.min_exp + i as i64)?;
        }
        match self.prec {
            Precision::Exact if first => f.write_str("0"),
            Precision::Exact => Ok(()),
            Precision::Below(p) if first => write!(f, "O(z^{p})"),
            Precision::Below(p) => write!(f, " + O(z^{p})"),
        }
    }
}

/// `u · f'`.
pub fn apply_a(u: &TruncatedLaurentSeries, f: &TruncatedLaurentSeries) -> TruncatedLaurentSeries {
    u.mul(&f.derivative())
}

/// `A^k f` by `k` direct applications of `f ↦ u·f'`.
pub fn apply_a_repeated(
    u: &TruncatedLaurentSeries,
    f: &TruncatedLaurentSeries,
    k: u32,
) -> Result<TruncatedLaurentSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroPower);
    }
    let mut g = f.clone();
    for _ in 0..k {
        g = apply_a(u, &g);
        exhausted(&g)?;
    }
    Ok(g)
}

fn exhausted(g: &TruncatedLaurentSeries) -> Result<(), SeriesError> {
    match g.prec {
        Precision::Below(p) if g.coeffs.is_empty() => Err(SeriesError::PrecisionExhausted(p)),
        _ => Ok(()),
    }
}

/// `Σ_s P_k^s(u) f^{(s)}` with each `P_k^s` evaluated on the series `u, u', u'', …`.
pub fn apply_expansion(
    exp: &OperatorExpansion,
    u: &TruncatedLaurentSeries,
    f: &TruncatedLaurentSeries,
) -> Result<TruncatedLaurentSeries, SeriesError> {
    let k = exp.k() as usize;
    let mut u_derivs = alloc::vec![u.clone()];
    for j in 1..k {
        let next = u_derivs[j - 1].derivative();
        u_derivs.push(next);
    }
    let mut f_derivs = alloc::vec![f.clone()];
    for s in 1..=k {
        let next = f_derivs[s - 1].derivative();
        f_derivs.push(next);
    }

    let mut powers: BTreeMap<(usize, u32), TruncatedLaurentSeries> = BTreeMap::new();
    let mut total = TruncatedLaurentSeries::zero();
    for (s, poly) in exp.iter() {
        let mut p_value = TruncatedLaurentSeries::zero();
        for mono in poly.monomials() {
            let mut term = TruncatedLaurentSeries::monomial(
                ExactRational::from_integer(mono.coeff.clone()),
                0,
            );
            for (j, &e) in mono.exps.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = powers
                    .entry((j, e))
                    .or_insert_with(|| {
                        (1..e).fold(u_derivs[j].clone(), |acc, _| acc.mul(&u_derivs[j]))
                    })
                    .clone();
                term = term.mul(&power);
            }
            p_value = p_value.add(&term);
        }
        total = total.add(&p_value.mul(&f_derivs[s as usize]));
    }
    exhausted(&total)?;
    Ok(total)
}

/// Polynomial of uniformly random degree `0..=max_degree` with integer
/// coefficients in `[-9, 9]`.
pub fn random_polynomial(rng: &mut impl Rng, max_degree: usize) -> TruncatedLaurentSeries {
    let degree = rng.random_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=degree).map(|_| rng.random_range(-9..=9)).collect();
    TruncatedLaurentSeries::from_integers(0, &coeffs)
}

/// Compares the direct and expanded evaluations of `A^k f`.
pub fn oracle_check(
    exp: &OperatorExpansion,
    u: &TruncatedLaurentSeries,
    f: &TruncatedLaurentSeries,
    report: &mut Report,
    label: &str,
) {
    let k = exp.k();
    let direct = apply_a_repeated(u, f, k);
    let expanded = apply_expansion(exp, u, f);
    match (direct, expanded) {
        (Ok(d), Ok(e)) => report.check(
            d.agrees_with(&e),
            || format!("{label}: k={k} u={u} f={f}"),
            || format!("{d}"),
            || format!("{e}"),
        ),
        (d, e) => report.fail(
            format!("{label}: k={k} u={u} f={f}"),
            format!("{d:?}"),
            format!("{e:?}"),
        ),
    }
}

/// Seeded random comparison: `pairs_per_k` random `(u, f)` for each `k <= k_max`,
/// `deg u <= 4`, `deg f <= 6`.
pub fn random_oracle(k_max: u32, seed: u64, pairs_per_k: u32) -> Report {
    let mut report = Report::new("oracle", 1, k_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for exp in crate::operator_power::expansions(k_max) {
        for i in 0..pairs_per_k {
            let u = random_polynomial(&mut rng, 4);
            let f = random_polynomial(&mut rng, 6);
            oracle_check(&exp, &u, &f, &mut report, &format!("seed {seed} pair {i}"));
        }
    }
    report
}

/// `(z d/dz)^k z^n = n^k z^n` for `1 <= n <= n_max`, `1 <= k <= k_max`.
pub fn verify_eigenfunction_law(n_max: u32, k_max: u32) -> Report {
    let mut report = Report::new("eigenfunction", 1, k_max);
    let z = TruncatedLaurentSeries::from_integers(1, &[1]);
    for n in 1..=n_max {
        let f = TruncatedLaurentSeries::from_integers(i64::from(n), &[1]);
        for k in 1..=k_max {
            let expected = TruncatedLaurentSeries::monomial(
                ExactRational::from_integer(ExactInt::from(n).pow(k)),
                i64::from(n),
            );
            match apply_a_repeated(&z, &f, k) {
                Ok(actual) => report.check_eq(|| format!("(zD)^{k} z^{n}"), &expected, &actual),
                Err(e) => report.fail(format!("(zD)^{k} z^{n}"), format!("{expected}"), format!("{e}")),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_power::expand;
    use alloc::string::ToString;
    use alloc::vec;

    fn ints(min_exp: i64, c: &[i64]) -> TruncatedLaurentSeries {
        TruncatedLaurentSeries::from_integers(min_exp, c)
    }

    fn q(n: i64) -> ExactRational {
        ExactRational::from_integer(ExactInt::from(n))
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ints(2, &[1]).derivative(), ints(1, &[2]));
        assert_eq!(ints(-1, &[1]).derivative(), ints(-2, &[-1]));
        assert_eq!(ints(0, &[5]).derivative(), TruncatedLaurentSeries::zero());
    }

    #[test]
    fn derivative_drops_precision() {
        let s = TruncatedLaurentSeries::new(0, vec![q(1), q(1), q(1)], Precision::Below(3));
        let d = s.derivative();
        assert_eq!(d.prec(), Precision::Below(2));
        assert_eq!(d.coefficient(1), Some(q(2)));
        assert_eq!(d.coefficient(2), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ints(1, &[1]).mul(&ints(1, &[1])), ints(2, &[1]));
        assert_eq!(ints(0, &[1, 1]).mul(&ints(0, &[1, -1])), ints(0, &[1, 0, -1]));
        assert_eq!(ints(-1, &[1]).mul(&ints(2, &[1])), ints(1, &[1]));
    }

    #[test]
    fn mul_tracks_joint_precision() {
        // (1 + z + O(z^2)) * (z^-1 + 2) known below min(2 + (-1), inf) = 1.
        let a = TruncatedLaurentSeries::new(0, vec![q(1), q(1)], Precision::Below(2));
        let b = ints(-1, &[1, 2]);
        let p = a.mul(&b);
        assert_eq!(p.prec(), Precision::Below(1));
        assert_eq!(p.coefficient(-1), Some(q(1)));
        assert_eq!(p.coefficient(0), Some(q(3)));
        assert_eq!(p.coefficient(1), None);
    }

    #[test]
    fn repeated_application_examples() {
        let z = ints(1, &[1]);
        assert_eq!(apply_a_repeated(&z, &ints(2, &[1]), 2).unwrap(), ints(2, &[4]));
        assert_eq!(apply_a_repeated(&z, &ints(3, &[1]), 3).unwrap(), ints(3, &[27]));
        let inv = ints(-1, &[1]);
        assert_eq!(apply_a_repeated(&inv, &ints(4, &[1]), 2).unwrap(), ints(0, &[8]));
        assert_eq!(apply_a_repeated(&z, &z, 0), Err(SeriesError::ZeroPower));
    }

    #[test]
    fn precision_exhaustion_is_reported() {
        let f = TruncatedLaurentSeries::new(0, vec![q(1), q(2)], Precision::Below(2));
        let u = ints(0, &[1]);
        // f' = 2 + O(z), f'' = O(z^0)
        assert!(apply_a_repeated(&u, &f, 1).is_ok());
        assert_eq!(apply_a_repeated(&u, &f, 2), Err(SeriesError::PrecisionExhausted(0)));
    }

    #[test]
    fn expansion_examples() {
        let z = ints(1, &[1]);
        let z2 = ints(2, &[1]);
        assert_eq!(apply_expansion(&expand(2).unwrap(), &z, &z2).unwrap(), ints(2, &[4]));

        let u = ints(0, &[3, -1, 2]);
        let f = ints(0, &[1, 4, 0, 5]);
        let once = apply_expansion(&expand(1).unwrap(), &u, &f).unwrap();
        assert_eq!(once, u.mul(&f.derivative()));

        let one_plus_z = ints(0, &[1, 1]);
        let direct = apply_a_repeated(&one_plus_z, &z2, 3).unwrap();
        let expanded = apply_expansion(&expand(3).unwrap(), &one_plus_z, &z2).unwrap();
        assert_eq!(direct, expanded);
    }

    #[test]
    fn laurent_u_with_high_power_f() {
        let inv = ints(-1, &[1]);
        let f = ints(10, &[1]);
        let exp = expand(5).unwrap();
        let mut report = Report::new("t", 5, 5);
        oracle_check(&exp, &inv, &f, &mut report, "inv");
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn truncated_inputs_agree_on_known_terms() {
        // u = 1/(1-z) truncated, f = exp-like truncated series.
        let u = TruncatedLaurentSeries::new(0, vec![q(1); 12], Precision::Below(12));
        let f = TruncatedLaurentSeries::new(0, vec![q(1), q(1), q(2), q(6), q(24), q(120), q(720), q(5040), q(40320), q(362880), q(3628800), q(39916800)], Precision::Below(12));
        for k in 1..=4 {
            let exp = expand(k).unwrap();
            let direct = apply_a_repeated(&u, &f, k).unwrap();
            let expanded = apply_expansion(&exp, &u, &f).unwrap();
            assert_eq!(direct.prec(), Precision::Below(12 - i64::from(k)));
            assert!(direct.agrees_with(&expanded));
        }
    }

    #[test]
    fn display_series() {
        assert_eq!(ints(-1, &[1, 0, -2]).to_string(), "1 z^-1 + -2 z^1");
        let t = TruncatedLaurentSeries::new(0, vec![], Precision::Below(3));
        assert_eq!(t.to_string(), "O(z^3)");
    }

    #[test]
    fn random_oracle_small() {
        let r = random_oracle(3, 7, 10);
        assert_eq!(r.checks, 30);
        assert!(r.passed(), "{r}");
        assert_eq!(random_oracle(3, 7, 10), r);
    }

    #[test]
    fn eigenfunction_small() {
        let r = verify_eigenfunction_law(4, 4);
        assert_eq!(r.checks, 16);
        assert!(r.passed(), "{r}");
    }
}
