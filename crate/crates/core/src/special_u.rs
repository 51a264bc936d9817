//! Concrete choices of `u`: `z`, `e^z`, `1/z` and polynomials in `z`.
//!
//! Substituting `u` turns each `P_k^s` into a finite sum of terms
//! `c · z^a · e^{b z}`, so a specialized operator is a list of
//! [`SpecialTerm`]s. The `1/z` case also has its own coefficient table
//! `a_k^s` with `(z^{-1} d/dz)^k = Σ_s a_k^s z^{s-2k} (d/dz)^s`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coefficients::{
    bell_numbers, binomial, double_factorial_odd, factorial, stirling1_unsigned_triangle,
    stirling2_triangle,
};
use crate::diffpoly::DiffMonomial;
use crate::operator_power::{expansions, OperatorExpansion};
use crate::report::Report;
use crate::{ExactInt, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("polynomial u must have a non-zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("a_k^s needs 1 <= s <= k; got k={k}, s={s}")]
    OutOfRange { k: u32, s: u32 },
}

/// `u(z) = c_0 + c_1 z + … + c_d z^d` with `c_d ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolynomial(Vec<ExactRational>);

impl ZPolynomial {
    pub fn new(coeffs: Vec<ExactRational>) -> Result<Self, SpecialError> {
        match coeffs.last() {
            Some(c) if !c.is_zero() => Ok(ZPolynomial(coeffs)),
            _ => Err(SpecialError::ZeroLeadingCoefficient),
        }
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.0
    }
}

/// Formal derivative of a dense coefficient list.
fn poly_derivative(p: &[ExactRational]) -> Vec<ExactRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * ExactRational::from_integer(ExactInt::from(i)))
        .collect()
}

fn poly_mul(a: &[ExactRational], b: &[ExactRational]) -> Vec<ExactRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![ExactRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum URule {
    /// `u = z`
    IdentityZ,
    /// `u = e^z`
    ExpZ,
    /// `u = 1/z`
    InverseZ,
    PolynomialU(ZPolynomial),
}

impl URule {
    pub fn polynomial(coeffs: Vec<ExactRational>) -> Result<Self, SpecialError> {
        ZPolynomial::new(coeffs).map(URule::PolynomialU)
    }
}

/// `coeff · z^{z_exp} · e^{exp_mult·z} · (d/dz)^{d_order}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialTerm {
    pub coeff: ExactRational,
    pub z_exp: i64,
    pub exp_mult: i64,
    pub d_order: u32,
}

impl fmt::Display for SpecialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.z_exp != 0 {
            write!(f, " z^{}", self.z_exp)?;
        }
        if self.exp_mult != 0 {
            write!(f, " e^({}z)", self.exp_mult)?;
        }
        write!(f, " D^{}", self.d_order)
    }
}

/// Joins terms with ` + `, for diagnostics.
pub fn terms_to_string(terms: &[SpecialTerm]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        out.push_str(&format!("{t}"));
    }
    if terms.is_empty() {
        out.push('0');
    }
    out
}

type TermKey = (u32, i64, i64);

/// Value of one monomial under the rule, as `(z_exp, exp_mult) → coefficient`.
fn evaluate_monomial(
    mono: &DiffMonomial,
    rule: &URule,
    poly_derivs: &[Vec<ExactRational>],
) -> Vec<(i64, i64, ExactRational)> {
    let exps = mono.exps.as_slice();
    let coeff = ExactRational::from_integer(mono.coeff.clone());
    match rule {
        URule::IdentityZ => {
            // u = z, u' = 1, higher derivatives vanish.
            if exps.iter().skip(2).any(|&e| e > 0) {
                Vec::new()
            } else {
                alloc::vec![(i64::from(mono.exps.get(0)), 0, coeff)]
            }
        }
        URule::ExpZ => alloc::vec![(0, mono.exps.degree() as i64, coeff)],
        URule::InverseZ => {
            // u^{(j)} = (-1)^j j! z^{-(j+1)}
            let mut c = mono.coeff.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    let mut f = factorial(j as u64).pow(e);
                    if j % 2 == 1 && e % 2 == 1 {
                        f = -f;
                    }
                    c *= f;
                }
            }
            let z_exp = -((mono.exps.degree() + mono.exps.weight()) as i64);
            alloc::vec![(z_exp, 0, ExactRational::from_integer(c))]
        }
        URule::PolynomialU(_) => {
            let mut value = alloc::vec![coeff];
            for (j, &e) in exps.iter().enumerate() {
                let base = poly_derivs.get(j).map(Vec::as_slice).unwrap_or(&[]);
                for _ in 0..e {
                    value = poly_mul(&value, base);
                }
            }
            value
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64, 0, c))
                .collect()
        }
    }
}

/// Substitutes `u` into every `P_k^s`; terms sorted by `(d_order, z_exp, exp_mult)`.
pub fn specialize(exp: &OperatorExpansion, rule: &URule) -> Vec<SpecialTerm> {
    let mut poly_derivs = Vec::new();
    if let URule::PolynomialU(p) = rule {
        let mut current = p.coeffs().to_vec();
        // Orders up to k are enough: P_k^s only involves u^{(j)} with j <= k - s.
        for _ in 0..=exp.k() {
            let next = poly_derivative(&current);
            poly_derivs.push(current);
            current = next;
        }
    }
    let mut acc: BTreeMap<TermKey, ExactRational> = BTreeMap::new();
    for (s, poly) in exp.iter() {
        for mono in poly.monomials() {
            for (z_exp, exp_mult, c) in evaluate_monomial(mono, rule, &poly_derivs) {
                *acc.entry((s, z_exp, exp_mult)).or_insert_with(ExactRational::zero) += c;
            }
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((d_order, z_exp, exp_mult), coeff)| SpecialTerm {
            coeff,
            z_exp,
            exp_mult,
            d_order,
        })
        .collect()
}

/// `a_k^s` for `1 <= s <= k <= k_max`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ATable {
    rows: Vec<Vec<ExactInt>>,
}

impl ATable {
    pub fn k_max(&self) -> u32 {
        self.rows.len() as u32
    }

    /// `a_k^s`, or `None` out of range.
    pub fn get(&self, k: u32, s: u32) -> Option<&ExactInt> {
        if k == 0 || s == 0 {
            return None;
        }
        self.rows.get(k as usize - 1)?.get(s as usize - 1)
    }

    /// `(k, s, a_k^s)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &ExactInt)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i as u32 + 1, j as u32 + 1, v))
        })
    }
}

/// Builds `a_k^s` from `a_1^1 = 1` with
/// `a_{k+1}^s = a_k^{s-1} - (2k-s) a_k^s` (`a_k^0 = 0`) and `a_{k+1}^{k+1} = 1`.
pub fn a_table_by_recurrence(k_max: u32) -> ATable {
    let mut rows: Vec<Vec<ExactInt>> = Vec::new();
    if k_max == 0 {
        return ATable { rows };
    }
    rows.push(alloc::vec![ExactInt::one()]);
    for k in 1..k_max as usize {
        let prev = &rows[k - 1];
        let mut row = Vec::with_capacity(k + 1);
        for s in 1..=k {
            let lower = if s >= 2 { prev[s - 2].clone() } else { ExactInt::zero() };
            row.push(lower - &prev[s - 1] * ExactInt::from(2 * k - s));
        }
        row.push(ExactInt::one());
        rows.push(row);
    }
    ATable { rows }
}

/// `a_k^s = (-1)^{k-s} (2k-2s-1)!! · binomial(2k-1-s, s-1)`.
pub fn a_closed_form(k: u32, s: u32) -> Result<ExactInt, SpecialError> {
    if s == 0 || s > k {
        return Err(SpecialError::OutOfRange { k, s });
    }
    let (k, s) = (i64::from(k), i64::from(s));
    let magnitude = double_factorial_odd(2 * k - 2 * s - 1).expect("odd and >= -1")
        * binomial((2 * k - 1 - s) as u64, s - 1);
    Ok(if (k - s) % 2 == 0 { magnitude } else { -magnitude })
}

fn integer_term(coeff: ExactInt, z_exp: i64, exp_mult: i64, d_order: u32) -> SpecialTerm {
    SpecialTerm {
        coeff: ExactRational::from_integer(coeff),
        z_exp,
        exp_mult,
        d_order,
    }
}

fn sorted(mut terms: Vec<SpecialTerm>) -> Vec<SpecialTerm> {
    terms.retain(|t| !t.coeff.is_zero());
    terms.sort_by_key(|t| (t.d_order, t.z_exp, t.exp_mult));
    terms
}

/// Recurrence table, closed form and the `u = 1/z` specialization of the
/// generic expansion must all agree.
pub fn verify_theorem2(k_max: u32) -> Report {
    let mut report = Report::new("theorem2", 1, k_max);
    let table = a_table_by_recurrence(k_max);
    for exp in expansions(k_max) {
        let k = exp.k();
        let specialized = specialize(&exp, &URule::InverseZ);
        let mut from_table = Vec::new();
        for s in 1..=k {
            let rec = table.get(k, s).cloned().unwrap_or_default();
            let closed = a_closed_form(k, s).expect("in range");
            report.check_eq(|| format!("a_{k}^{s} recurrence vs closed form"), &closed, &rec);
            let sign_ok = rec.is_positive() == ((k - s) % 2 == 0) && !rec.is_zero();
            report.check(
                sign_ok,
                || format!("sign of a_{k}^{s}"),
                || format!("(-1)^{}", k - s),
                || format!("{rec}"),
            );
            from_table.push(integer_term(rec, i64::from(s) - 2 * i64::from(k), 0, s));
        }
        let from_table = sorted(from_table);
        report.check(
            from_table == specialized,
            || format!("A^{k} with u = 1/z"),
            || terms_to_string(&from_table),
            || terms_to_string(&specialized),
        );
    }
    report.note("top term of the power-k display uses z^-k, matching a_k^k z^(k-2k)");
    report
}

/// `u = z` gives `σ(k,s) z^s D^s`, `u = e^z` gives `c(k,s) e^{kz} D^s`,
/// `u = 1/z` gives `(-1)^s (2s-1)!! binomial(k-1+s, 2s) z^{-(k+s)} D^{k-s}`.
pub fn verify_section4(k_max: u32) -> Report {
    let mut report = Report::new("section4", 1, k_max);
    let sigma = stirling2_triangle(k_max);
    let cycles = stirling1_unsigned_triangle(k_max);
    let bells = bell_numbers(k_max);
    for exp in expansions(k_max) {
        let k = exp.k();
        let ku = k as usize;

        let identity = specialize(&exp, &URule::IdentityZ);
        let expected: Vec<_> = (1..=k)
            .map(|s| integer_term(sigma[ku][s as usize].clone(), i64::from(s), 0, s))
            .collect();
        let expected = sorted(expected);
        report.check(
            identity == expected,
            || format!("A^{k} with u = z"),
            || terms_to_string(&expected),
            || terms_to_string(&identity),
        );
        let row_sum: ExactRational = identity.iter().map(|t| t.coeff.clone()).sum();
        report.check_eq(
            || format!("A^{k} with u = z row sum vs Bell({k})"),
            &ExactRational::from_integer(bells[ku].clone()),
            &row_sum,
        );

        let exponential = specialize(&exp, &URule::ExpZ);
        let expected: Vec<_> = (1..=k)
            .map(|s| integer_term(cycles[ku][s as usize].clone(), 0, i64::from(k), s))
            .collect();
        let expected = sorted(expected);
        report.check(
            exponential == expected,
            || format!("A^{k} with u = e^z"),
            || terms_to_string(&expected),
            || terms_to_string(&exponential),
        );
        let row_sum: ExactRational = exponential.iter().map(|t| t.coeff.clone()).sum();
        report.check_eq(
            || format!("A^{k} with u = e^z row sum vs {k}!"),
            &ExactRational::from_integer(factorial(u64::from(k))),
            &row_sum,
        );

        let inverse = specialize(&exp, &URule::InverseZ);
        let expected: Vec<_> = (0..k)
            .map(|s| {
                let si = i64::from(s);
                let mut c = double_factorial_odd(2 * si - 1).expect("odd")
                    * binomial(u64::from(k - 1 + s), 2 * si);
                if s % 2 == 1 {
                    c = -c;
                }
                integer_term(c, -(i64::from(k) + si), 0, k - s)
            })
            .collect();
        let expected = sorted(expected);
        report.check(
            inverse == expected,
            || format!("A^{k} with u = 1/z"),
            || terms_to_string(&expected),
            || terms_to_string(&inverse),
        );
    }
    report.note("u = e^z: coefficients carry no power of z (direct computation gives e^(2z)(D + D^2) at k = 2)");
    report.note("u = 1/z: the term with D^(k-s) carries z^-(k+s)");
    report
}
