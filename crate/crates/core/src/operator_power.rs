//! Normal-ordered expansion `A^k = Σ_{s=1}^{k} P_k^s(u) (d/dz)^s`.
//!
//! The expansion is grown one power at a time from `P_1^1 = u` using
//!
//! ```text
//! P_{k+1}^1     = u · d/dz P_k^1
//! P_{k+1}^s     = u · P_k^{s-1} + u · d/dz P_k^s      (1 < s < k+1)
//! P_{k+1}^{k+1} = u · P_k^k
//! ```
//!
//! which is what applying `A` to `Σ P_k^s f^{(s)}` produces. Every monomial
//! of `P_k^s` has total degree `k` and differential weight `k - s`, so the
//! `u`-power of a monomial in `P_k^{k-s}` is `k - m` where `m` counts its
//! derivative factors. That is how `F_m^k` and the numbers `C^{s,m,k}_α`
//! are read off.

use alloc::format;
use alloc::vec::Vec;

use num_traits::One;
use thiserror::Error;

use crate::diffpoly::{DiffPolynomial, ExponentVector};
use crate::report::Report;
use crate::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("operator power must be at least 1, got {0}")]
    ZeroPower(u32),
    #[error("F_m^k needs 1 <= m <= s <= k-1; got m={m}, s={s}, k={k}")]
    OutOfRange { k: u32, s: u32, m: u32 },
}

/// `A^k` in normal order: `coeffs[s-1]` holds `P_k^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorExpansion {
    k: u32,
    coeffs: Vec<DiffPolynomial>,
}

impl OperatorExpansion {
    /// `A^1 = u · d/dz`.
    pub fn first() -> Self {
        OperatorExpansion {
            k: 1,
            coeffs: alloc::vec![DiffPolynomial::u()],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `P_k^s`, or `None` outside `1..=k`.
    pub fn coeff(&self, s: u32) -> Option<&DiffPolynomial> {
        if s == 0 {
            return None;
        }
        self.coeffs.get(s as usize - 1)
    }

    /// `(s, P_k^s)` for `s = 1..=k`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &DiffPolynomial)> {
        self.coeffs.iter().enumerate().map(|(i, p)| (i as u32 + 1, p))
    }

    /// Applies `A` once more, giving the expansion of `A^{k+1}`.
    pub fn next_power(&self) -> Self {
        let u = DiffPolynomial::u();
        let k = self.coeffs.len();
        let mut next = Vec::with_capacity(k + 1);
        for s in 1..=k + 1 {
            let shifted = if s >= 2 { Some(&self.coeffs[s - 2]) } else { None };
            let differentiated = self.coeffs.get(s - 1).map(DiffPolynomial::total_derivative);
            let inner = match (shifted, differentiated) {
                (Some(a), Some(b)) => a.add(&b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b,
                (None, None) => unreachable!("s ranges over 1..=k+1"),
            };
            next.push(u.mul(&inner));
        }
        OperatorExpansion {
            k: self.k + 1,
            coeffs: next,
        }
    }

    /// Checks degree `k`, weight `k - s` and positivity on every monomial.
    pub fn check_invariants(&self) -> Report {
        let mut report = Report::new("expansion-invariants", self.k, self.k);
        let k = u64::from(self.k);
        for (s, poly) in self.iter() {
            report.check(
                !poly.is_zero(),
                || format!("P_{}^{}", self.k, s),
                || "non-zero polynomial".into(),
                || "0".into(),
            );
            for m in poly.monomials() {
                let (deg, wt) = (m.exps.degree(), m.exps.weight());
                report.check(
                    deg == k && wt == k - u64::from(s) && m.coeff > ExactInt::from(0),
                    || format!("P_{}^{} monomial {}", self.k, s, m.exps),
                    || format!("deg {k}, wt {}, coeff > 0", k - u64::from(s)),
                    || format!("deg {deg}, wt {wt}, coeff {}", m.coeff),
                );
            }
        }
        report
    }
}

/// Normal-ordered expansion of `A^k`.
pub fn expand(k: u32) -> Result<OperatorExpansion, ExpandError> {
    if k == 0 {
        return Err(ExpandError::ZeroPower(k));
    }
    let mut exp = OperatorExpansion::first();
    while exp.k < k {
        exp = exp.next_power();
    }
    Ok(exp)
}

/// Expansions of `A^1, A^2, …, A^{k_max}`, each derived from the previous one.
pub fn expansions(k_max: u32) -> impl Iterator<Item = OperatorExpansion> {
    let mut current: Option<OperatorExpansion> = None;
    core::iter::from_fn(move || {
        let next = match &current {
            None => OperatorExpansion::first(),
            Some(prev) => prev.next_power(),
        };
        current = Some(next.clone());
        Some(next)
    })
    .take(k_max as usize)
}

/// `F_m^k`: the monomials of `P_k^{k-s}` carrying `u^{k-m}`, with that factor removed.
pub fn extract_f(exp: &OperatorExpansion, m: u32, s: u32) -> Result<DiffPolynomial, ExpandError> {
    let k = exp.k;
    if m == 0 || m > s || s >= k {
        return Err(ExpandError::OutOfRange { k, s, m });
    }
    let source = exp.coeff(k - s).expect("k - s lies in 1..k");
    let u_power = k - m;
    Ok(DiffPolynomial::normalize(
        source
            .monomials()
            .iter()
            .filter(|mono| mono.exps.get(0) == u_power)
            .map(|mono| {
                crate::diffpoly::DiffMonomial::new(mono.coeff.clone(), mono.exps.with_u_power(0))
            }),
    ))
}

/// One number `C^{s,m,k}_α`. `alpha` is an exponent vector with `e_0 = 0`,
/// so `alpha.get(j)` is the exponent of `u^{(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CEntry {
    pub k: u32,
    pub s: u32,
    pub m: u32,
    pub alpha: ExponentVector,
    pub value: ExactInt,
}

impl CEntry {
    /// The index tuple `(α_1, …, α_d)`, trimmed.
    pub fn alpha_tuple(&self) -> Vec<u32> {
        self.alpha.as_slice().iter().skip(1).copied().collect()
    }
}

/// All `C^{s,m,k}_α` contained in the expansion, ordered by `(s, m, α)`.
pub fn extract_c(exp: &OperatorExpansion) -> Vec<CEntry> {
    let k = exp.k;
    let mut entries = Vec::new();
    for s in 1..k {
        for m in 1..=s {
            let f = extract_f(exp, m, s).expect("loop stays in range");
            entries.extend(f.monomials().iter().map(|mono| CEntry {
                k,
                s,
                m,
                alpha: mono.exps.clone(),
                value: mono.coeff.clone(),
            }));
        }
    }
    entries
}

/// Checks `P_k^k = u^k` and `P_k^{k-1} = k(k-1)/2 · u^{k-1} u'`.
pub fn check_closed_forms(exp: &OperatorExpansion) -> Report {
    let k = exp.k;
    let mut report = Report::new("eq13", k, k);
    let top = DiffPolynomial::monomial(ExactInt::one(), ExponentVector::jet_power(0, k));
    report.check_eq(
        || format!("P_{k}^{k}"),
        &top,
        exp.coeff(k).expect("P_k^k exists"),
    );
    if k >= 2 {
        let expected = DiffPolynomial::monomial(
            ExactInt::from(u64::from(k) * u64::from(k - 1) / 2),
            ExponentVector::new(alloc::vec![k - 1, 1]),
        );
        report.check_eq(
            || format!("P_{k}^{}", k - 1),
            &expected,
            exp.coeff(k - 1).expect("P_k^{k-1} exists"),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::DiffMonomial;

    fn p(terms: &[(i64, &[u32])]) -> DiffPolynomial {
        DiffPolynomial::normalize(
            terms
                .iter()
                .map(|&(c, e)| DiffMonomial::new(c, ExponentVector::new(e.to_vec()))),
        )
    }

    #[test]
    fn expand_rejects_zero() {
        assert_eq!(expand(0), Err(ExpandError::ZeroPower(0)));
    }

    #[test]
    fn small_powers() {
        let e1 = expand(1).unwrap();
        assert_eq!(e1.coeff(1), Some(&DiffPolynomial::u()));
        assert_eq!(e1.coeff(2), None);

        let e2 = expand(2).unwrap();
        assert_eq!(e2.coeff(1), Some(&p(&[(1, &[1, 1])])));
        assert_eq!(e2.coeff(2), Some(&p(&[(1, &[2])])));

        let e3 = expand(3).unwrap();
        assert_eq!(e3.coeff(1), Some(&p(&[(1, &[1, 2]), (1, &[2, 0, 1])])));
        assert_eq!(e3.coeff(2), Some(&p(&[(3, &[2, 1])])));
        assert_eq!(e3.coeff(3), Some(&p(&[(1, &[3])])));
    }

    #[test]
    fn fourth_power_weight_two() {
        // Coefficients sum to c(4,2) = 11 and the u^2 u'^2 term is sigma(4,2) = 7.
        let e4 = expand(4).unwrap();
        assert_eq!(e4.coeff(2), Some(&p(&[(7, &[2, 2]), (4, &[3, 0, 1])])));
    }

    #[test]
    fn extract_f_examples() {
        let e3 = expand(3).unwrap();
        assert_eq!(extract_f(&e3, 1, 1).unwrap(), p(&[(3, &[0, 1])]));
        assert_eq!(extract_f(&e3, 1, 2).unwrap(), p(&[(1, &[0, 0, 1])]));
        assert_eq!(extract_f(&e3, 2, 2).unwrap(), p(&[(1, &[0, 2])]));
        assert_eq!(
            extract_f(&e3, 3, 2),
            Err(ExpandError::OutOfRange { k: 3, s: 2, m: 3 })
        );
        assert!(extract_f(&e3, 1, 3).is_err());
        assert!(extract_f(&e3, 0, 1).is_err());
    }

    #[test]
    fn extract_c_from_cube() {
        let entries = extract_c(&expand(3).unwrap());
        let rows: Vec<_> = entries
            .iter()
            .map(|e| (e.k, e.s, e.m, e.alpha_tuple(), e.value.clone()))
            .collect();
        assert_eq!(
            rows,
            alloc::vec![
                (3, 1, 1, alloc::vec![1], ExactInt::from(3)),
                (3, 2, 1, alloc::vec![0, 1], ExactInt::from(1)),
                (3, 2, 2, alloc::vec![2], ExactInt::from(1)),
            ]
        );
        assert!(extract_c(&expand(1).unwrap()).is_empty());
    }

    #[test]
    fn closed_forms_small() {
        for k in 1..=6 {
            let report = check_closed_forms(&expand(k).unwrap());
            assert!(report.passed(), "{report}");
        }
        let e4 = expand(4).unwrap();
        assert_eq!(e4.coeff(3), Some(&p(&[(6, &[3, 1])])));
    }

    #[test]
    fn closed_form_check_reports_mismatch() {
        let mut bogus = expand(3).unwrap();
        bogus.coeffs[1] = p(&[(4, &[2, 1])]);
        let report = check_closed_forms(&bogus);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].location, "P_3^2");
        assert_eq!(report.failures[0].actual, "4 u^2 u'");
    }

    #[test]
    fn incremental_matches_scratch() {
        let all: Vec<_> = expansions(7).collect();
        assert_eq!(all.len(), 7);
        for (i, exp) in all.iter().enumerate() {
            assert_eq!(exp, &expand(i as u32 + 1).unwrap());
            assert!(exp.check_invariants().passed());
        }
        assert_eq!(all[5].next_power(), expand(7).unwrap());
    }
}
