//! Integer polynomials in the jet variables `u, u', u'', …`.
//!
//! A monomial `u^{e_0} (u')^{e_1} (u'')^{e_2} …` is stored as its exponent
//! vector `(e_0, e_1, e_2, …)` with trailing zeros trimmed. Polynomials keep
//! their monomials sorted by graded lexicographic order (total degree first,
//! then lexicographic on the exponent sequence) with like terms merged and
//! zero terms dropped, so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::ExactInt;

/// Exponents of `u, u', u'', …` in a differential monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Vec<u32>,
    // Cached Σ e_j; the ordering compares it first on every lookup.
    degree: u64,
}

impl ExponentVector {
    /// Builds a vector from raw exponents, trimming trailing zeros.
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let degree = exps.iter().map(|&e| u64::from(e)).sum();
        ExponentVector { exps, degree }
    }

    /// The exponent vector of the constant monomial `1`.
    pub fn one() -> Self {
        ExponentVector::default()
    }

    /// The single jet variable `u^{(order)}`.
    pub fn jet(order: usize) -> Self {
        Self::jet_power(order, 1)
    }

    /// `(u^{(order)})^power`.
    pub fn jet_power(order: usize, power: u32) -> Self {
        let mut exps = alloc::vec![0; order + 1];
        exps[order] = power;
        Self::new(exps)
    }

    /// Exponent of `u^{(order)}`; zero past the stored length.
    pub fn get(&self, order: usize) -> u32 {
        self.exps.get(order).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.exps
    }

    /// Number of stored slots, i.e. one more than the highest derivative order present.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree `Σ e_j`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Differential weight `Σ j·e_j`.
    pub fn weight(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(j, &e)| j as u64 * u64::from(e))
            .sum()
    }

    /// Componentwise sum, i.e. the exponent vector of a product of monomials.
    pub fn combine(&self, other: &Self) -> Self {
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (slot, &e) in exps.iter_mut().zip(short.exps.iter()) {
            *slot += e;
        }
        ExponentVector {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Replaces one factor `u^{(order)}` by `u^{(order+1)}`; `None` when `e_order = 0`.
    pub fn raise_order(&self, order: usize) -> Option<Self> {
        if self.get(order) == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        if exps.len() < order + 2 {
            exps.resize(order + 2, 0);
        }
        exps[order] -= 1;
        exps[order + 1] += 1;
        Some(Self::new(exps))
    }

    /// Same vector with the exponent of `u` itself replaced.
    pub fn with_u_power(&self, power: u32) -> Self {
        let mut exps = self.exps.clone();
        if exps.is_empty() {
            exps.push(0);
        }
        exps[0] = power;
        Self::new(exps)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        // Trimmed vectors: slice order agrees with zero-padded lex order.
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(exps: Vec<u32>) -> Self {
        Self::new(exps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    pub coeff: ExactInt,
    pub exps: ExponentVector,
}

impl DiffMonomial {
    pub fn new(coeff: impl Into<ExactInt>, exps: impl Into<ExponentVector>) -> Self {
        DiffMonomial {
            coeff: coeff.into(),
            exps: exps.into(),
        }
    }
}

/// Canonical integer polynomial in the jet variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPolynomial {
    monomials: Vec<DiffMonomial>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        DiffPolynomial::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, ExponentVector::one())
    }

    /// The polynomial `u`.
    pub fn u() -> Self {
        Self::jet(0)
    }

    /// The polynomial `u^{(order)}`.
    pub fn jet(order: usize) -> Self {
        Self::monomial(1, ExponentVector::jet(order))
    }

    pub fn monomial(coeff: impl Into<ExactInt>, exps: impl Into<ExponentVector>) -> Self {
        Self::normalize(core::iter::once(DiffMonomial::new(coeff, exps)))
    }

    /// Merges like terms, drops zeros and sorts into graded lexicographic order.
    pub fn normalize(monomials: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut acc: BTreeMap<ExponentVector, ExactInt> = BTreeMap::new();
        for m in monomials {
            *acc.entry(m.exps).or_default() += m.coeff;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<ExponentVector, ExactInt>) -> Self {
        let monomials = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| DiffMonomial { coeff, exps })
            .collect();
        DiffPolynomial { monomials }
    }

    pub fn monomials(&self) -> &[DiffMonomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, exps: &ExponentVector) -> ExactInt {
        self.monomials
            .binary_search_by(|m| m.exps.cmp(exps))
            .map(|i| self.monomials[i].coeff.clone())
            .unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::normalize(self.monomials.iter().chain(&other.monomials).cloned())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<ExponentVector, ExactInt> = BTreeMap::new();
        for a in &self.monomials {
            for b in &other.monomials {
                *acc.entry(a.exps.combine(&b.exps)).or_default() += &a.coeff * &b.coeff;
            }
        }
        Self::from_map(acc)
    }

    pub fn scale(&self, factor: &ExactInt) -> Self {
        Self::normalize(
            self.monomials
                .iter()
                .map(|m| DiffMonomial::new(&m.coeff * factor, m.exps.clone())),
        )
    }

    /// Multiplies by `u^power`.
    pub fn mul_u_power(&self, power: u32) -> Self {
        Self::normalize(self.monomials.iter().map(|m| {
            DiffMonomial::new(m.coeff.clone(), m.exps.with_u_power(m.exps.get(0) + power))
        }))
    }

    /// Total derivative `d/dz`, acting on jet variables by `u^{(j)} ↦ u^{(j+1)}`.
    pub fn total_derivative(&self) -> Self {
        let mut acc: BTreeMap<ExponentVector, ExactInt> = BTreeMap::new();
        for m in &self.monomials {
            for (order, &e) in m.exps.as_slice().iter().enumerate() {
                if let Some(raised) = m.exps.raise_order(order) {
                    *acc.entry(raised).or_default() += &m.coeff * ExactInt::from(e);
                }
            }
        }
        Self::from_map(acc)
    }

    /// Sum of all coefficients, i.e. the value at `u^{(j)} = 1` for every `j`.
    pub fn coefficient_sum(&self) -> ExactInt {
        self.monomials.iter().map(|m| &m.coeff).sum()
    }
}

impl Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: Self) -> DiffPolynomial {
        DiffPolynomial::add(self, rhs)
    }
}

impl Mul for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: Self) -> DiffPolynomial {
        DiffPolynomial::mul(self, rhs)
    }
}

impl Neg for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        self.scale(&-ExactInt::one())
    }
}

/// Writes `u`, `u'`, `u''`, `u'''`, then `u^(4)`, `u^(5)`, ….
pub fn write_jet(f: &mut impl fmt::Write, order: usize) -> fmt::Result {
    match order {
        0 => f.write_str("u"),
        1 => f.write_str("u'"),
        2 => f.write_str("u''"),
        3 => f.write_str("u'''"),
        n => write!(f, "u^({n})"),
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (order, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match (order, e) {
                (_, 1) => write_jet(f, order)?,
                (0..=3, _) => {
                    write_jet(f, order)?;
                    write!(f, "^{e}")?;
                }
                _ => {
                    f.write_str("(")?;
                    write_jet(f, order)?;
                    write!(f, ")^{e}")?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            let negative = m.coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = m.coeff.abs();
            if m.exps.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", m.exps)?;
            } else {
                write!(f, "{magnitude} {}", m.exps)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    fn p(terms: &[(i64, &[u32])]) -> DiffPolynomial {
        DiffPolynomial::normalize(terms.iter().map(|&(c, e)| DiffMonomial::new(c, ev(e))))
    }

    #[test]
    fn exponent_vector_trims_trailing_zeros() {
        assert_eq!(ev(&[1, 0, 0]).as_slice(), &[1]);
        assert!(ev(&[0, 0]).is_empty());
        assert_eq!(ev(&[2, 1, 3]).degree(), 6);
        assert_eq!(ev(&[2, 1, 3]).weight(), 7);
    }

    #[test]
    fn normalize_merges_and_cancels() {
        assert_eq!(p(&[(2, &[1]), (3, &[1])]), p(&[(5, &[1])]));
        assert!(p(&[(1, &[1, 1]), (-1, &[1, 1])]).is_zero());
    }

    #[test]
    fn normalize_uses_graded_lex_order() {
        // u'' has degree 1, u^2 degree 2.
        let poly = p(&[(1, &[2]), (1, &[0, 0, 1])]);
        let order: Vec<_> = poly.monomials().iter().map(|m| m.exps.clone()).collect();
        assert_eq!(order, vec![ev(&[0, 0, 1]), ev(&[2])]);
        assert_eq!(poly.to_string(), "u'' + u^2");
    }

    #[test]
    fn add_examples() {
        let u = DiffPolynomial::u();
        assert_eq!(&u + &DiffPolynomial::zero(), u);
        assert_eq!(p(&[(1, &[1, 1])]).add(&p(&[(2, &[1, 1])])), p(&[(3, &[1, 1])]));
        let sum = p(&[(1, &[1, 2])]).add(&p(&[(1, &[2, 0, 1])]));
        assert_eq!(sum.len(), 2);
        assert_eq!(sum.to_string(), "u u'^2 + u^2 u''");
    }

    #[test]
    fn mul_examples() {
        let u = DiffPolynomial::u();
        let du = DiffPolynomial::jet(1);
        assert_eq!(&u * &u, p(&[(1, &[2])]));
        assert_eq!(&(&u * &u) * &du, p(&[(1, &[2, 1])]));
        let lhs = &(&u + &du) * &(&u + &-&du);
        assert_eq!(lhs, p(&[(1, &[2]), (-1, &[0, 2])]));
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(p(&[(1, &[2])]).total_derivative(), p(&[(2, &[1, 1])]));
        assert_eq!(
            p(&[(1, &[1, 1])]).total_derivative(),
            p(&[(1, &[0, 2]), (1, &[1, 0, 1])])
        );
        // d/dz (u u'^2) = u'^3 + 2 u u' u''
        assert_eq!(
            p(&[(1, &[1, 2])]).total_derivative(),
            p(&[(1, &[0, 3]), (2, &[1, 1, 1])])
        );
        assert!(DiffPolynomial::one().total_derivative().is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(DiffPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[(-3, &[2, 1]), (1, &[])]).to_string(), "1 - 3 u^2 u'");
        assert_eq!(p(&[(1, &[0, 0, 0, 0, 2])]).to_string(), "(u^(4))^2");
    }

    #[test]
    fn coeff_lookup() {
        let poly = p(&[(7, &[2, 2]), (4, &[3, 0, 1])]);
        assert_eq!(poly.coeff(&ev(&[2, 2])), ExactInt::from(7));
        assert_eq!(poly.coeff(&ev(&[1])), ExactInt::from(0));
        assert_eq!(poly.coefficient_sum(), ExactInt::from(11));
    }
}
