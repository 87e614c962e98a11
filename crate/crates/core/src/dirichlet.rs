//! Dirichlet polynomials with exact integer coefficients, their quotients,
//! and finite windows onto formal Dirichlet series.
//!
//! A Dirichlet polynomial `∑ a_n / n^s` is stored as a sorted sparse map
//! `n ↦ a_n` with every stored coefficient nonzero, so structural equality is
//! mathematical equality. Multiplication is Dirichlet convolution.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::DirichletError;

/// Index `n` of a term `a_n / n^s`.
pub type Index = u128;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirichletPolynomial {
    terms: BTreeMap<Index, BigInt>,
}

impl DirichletPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, BigInt::one())
    }

    /// `c / n^s`. Panics on `n == 0`.
    pub fn monomial(n: Index, c: impl Into<BigInt>) -> Self {
        assert!(n >= 1, "Dirichlet indices start at 1");
        let mut p = Self::zero();
        p.add_term(n, &c.into());
        p
    }

    /// Builds a polynomial from `(n, a_n)` pairs; repeated indices are summed.
    pub fn from_terms<I, C>(terms: I) -> Result<Self, DirichletError>
    where
        I: IntoIterator<Item = (Index, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (n, c) in terms {
            if n == 0 {
                return Err(DirichletError::ZeroIndex);
            }
            p.add_term(n, &c.into());
        }
        Ok(p)
    }

    /// `1 - c / n^s`, the shape of every abelian chief factor polynomial.
    pub fn one_minus(n: Index, c: impl Into<BigInt>) -> Self {
        let mut p = Self::one();
        p.add_term(n, &-c.into());
        p
    }

    fn add_term(&mut self, n: Index, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|c| c.is_one())
    }

    /// Coefficient `a_n` (zero when absent).
    pub fn coeff(&self, n: Index) -> BigInt {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, n: Index) -> Option<&BigInt> {
        self.terms.get(&n)
    }

    /// Nonzero terms in ascending index order.
    pub fn terms(&self) -> impl Iterator<Item = (Index, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Index> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_index(&self) -> Option<Index> {
        self.terms.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<Index> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(n, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&n, c)| (n, c * k)).collect(),
        }
    }

    /// Dirichlet convolution: `(pq)_n = ∑_{de=n} p_d q_e`.
    pub fn mul(&self, other: &Self) -> Result<Self, DirichletError> {
        let mut out = Self::zero();
        for (&d, a) in &self.terms {
            for (&e, b) in &other.terms {
                let n = d.checked_mul(e).ok_or(DirichletError::IndexOverflow)?;
                out.add_term(n, &(a * b));
            }
        }
        Ok(out)
    }

    /// Exact quotient `q` with `d·q = self`, searching quotient indices up to
    /// `bound` (default: the largest index of `self`).
    ///
    /// Works by ascending-index elimination against the lowest term of `d`.
    pub fn divide_exact(&self, d: &Self, bound: Option<Index>) -> Result<Self, DirichletError> {
        let (&n0, d0) = d.terms.iter().next().ok_or(DirichletError::ZeroDivisor)?;
        let bound = bound.unwrap_or_else(|| self.max_index().unwrap_or(1));
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&m, rm)) = rem.terms.iter().next() {
            if m % n0 != 0 {
                return Err(DirichletError::NotDivisible { bound });
            }
            let k = m / n0;
            if k > bound {
                return Err(DirichletError::NotDivisible { bound });
            }
            let (c, r) = rm.div_rem(d0);
            if !r.is_zero() {
                return Err(DirichletError::NotDivisible { bound });
            }
            for (&n, dc) in &d.terms {
                let idx = n.checked_mul(k).ok_or(DirichletError::IndexOverflow)?;
                rem.add_term(idx, &-(dc * &c));
            }
            quot.add_term(k, &c);
        }
        Ok(quot)
    }

    /// The π-projection: drop every term whose index is divisible by a prime in `primes`.
    pub fn project_pi(&self, primes: &[Index]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&n, _)| !primes.iter().any(|&p| p >= 2 && n % p == 0))
                .map(|(&n, c)| (n, c.clone()))
                .collect(),
        }
    }

    /// Substitution `s ↦ r·s − r + 1`: `a_m/m^s ↦ a_m m^{r−1}/(m^r)^s`.
    pub fn shift_r(&self, r: u32) -> Result<Self, DirichletError> {
        if r == 0 {
            return Err(DirichletError::ZeroShift);
        }
        let mut out = Self::zero();
        for (&m, a) in &self.terms {
            let idx = m.checked_pow(r).ok_or(DirichletError::IndexOverflow)?;
            let weight = BigInt::from(m).pow(r - 1);
            out.add_term(idx, &(a * weight));
        }
        Ok(out)
    }

    /// Terms with index at most `bound`.
    pub fn truncate(&self, bound: Index) -> TruncatedSeries {
        TruncatedSeries {
            bound,
            terms: self.terms.range(..=bound).map(|(&n, c)| (n, c.clone())).collect(),
        }
    }

    /// Exact value at the integer point `s = k`.
    pub fn evaluate_at(&self, k: u32) -> BigRational {
        let mut acc = BigRational::zero();
        for (&n, a) in &self.terms {
            let den = BigInt::from(n).pow(k);
            acc += BigRational::new(a.clone(), den);
        }
        acc
    }

    /// Primes dividing some index with nonzero coefficient.
    pub fn prime_support(&self) -> BTreeSet<Index> {
        self.terms.keys().flat_map(|&n| arith::prime_divisors(n)).collect()
    }
}

impl fmt::Display for DirichletPolynomial {
    /// Terms as `a/n^s`, e.g. `1 - 1/2^s - 3/3^s + 3/6^s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Index, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (&n, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        if n == 1 {
            write!(f, "{mag}")?;
        } else {
            write!(f, "{mag}/{n}^s")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Formal quotient `A(s)/B(s)` with `B`'s constant term `±1`.
///
/// No normal form is attempted; two pairs are compared through their expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: DirichletPolynomial,
    denominator: DirichletPolynomial,
}

impl RationalSeries {
    pub fn new(
        numerator: DirichletPolynomial,
        denominator: DirichletPolynomial,
    ) -> Result<Self, DirichletError> {
        let c1 = denominator.coeff(1);
        if c1.abs() != BigInt::one() {
            return Err(DirichletError::NonUnitDenominator {
                constant: c1.to_string(),
            });
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &DirichletPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &DirichletPolynomial {
        &self.denominator
    }

    /// Integer expansion of `A/B`, exact for every index `≤ bound`.
    pub fn expand(&self, bound: Index) -> TruncatedSeries {
        let b1 = self.denominator.coeff(1);
        let tail: Vec<(Index, &BigInt)> =
            self.denominator.terms().filter(|&(n, _)| n > 1 && n <= bound).collect();

        // Candidate support: products a·d_1·…·d_k ≤ bound with a ∈ supp(A), d_j ∈ supp(B)\{1}.
        let mut candidates: BTreeSet<Index> =
            self.numerator.support().filter(|&n| n <= bound).collect();
        let mut frontier: Vec<Index> = candidates.iter().copied().collect();
        while let Some(n) = frontier.pop() {
            for &(d, _) in &tail {
                if let Some(m) = n.checked_mul(d) {
                    if m <= bound && candidates.insert(m) {
                        frontier.push(m);
                    }
                }
            }
        }

        let mut out: BTreeMap<Index, BigInt> = BTreeMap::new();
        for n in candidates {
            let mut acc = self.numerator.coeff(n);
            for &(d, bd) in &tail {
                if d > n {
                    break;
                }
                if n % d == 0 {
                    if let Some(c) = out.get(&(n / d)) {
                        acc -= bd * c;
                    }
                }
            }
            // b1 = ±1, so division is exact.
            let c = acc * &b1;
            if !c.is_zero() {
                out.insert(n, c);
            }
        }
        TruncatedSeries { bound, terms: out }
    }
}

/// Coefficients `a_n` for `n ≤ bound` of a formal Dirichlet series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    bound: Index,
    terms: BTreeMap<Index, BigInt>,
}

impl TruncatedSeries {
    pub fn one(bound: Index) -> Self {
        DirichletPolynomial::one().truncate(bound)
    }

    pub fn bound(&self) -> Index {
        self.bound
    }

    pub fn coeff(&self, n: Index) -> BigInt {
        assert!(n <= self.bound, "coefficient {n} outside the window {}", self.bound);
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Index, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// The window's contents as a polynomial.
    pub fn to_polynomial(&self) -> DirichletPolynomial {
        DirichletPolynomial {
            terms: self.terms.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let p = self.to_polynomial().add(&other.to_polynomial());
        p.truncate(bound)
    }

    /// Product, exact up to the smaller of the two windows.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = DirichletPolynomial::zero();
        for (&d, a) in self.terms.range(..=bound) {
            for (&e, b) in other.terms.range(..=bound / d) {
                out.add_term(d * e, &(a * b));
            }
        }
        out.truncate(bound)
    }

    /// Primes dividing an index with a nonzero coefficient inside the window.
    /// The true set for the full series can only be larger.
    pub fn prime_support_lower_bound(&self) -> BTreeSet<Index> {
        self.terms.keys().flat_map(|&n| arith::prime_divisors(n)).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())?;
        write!(f, " + O(n > {})", self.bound)
    }
}

/// Product of unital factors, exact for every index `≤ bound`.
///
/// Factors whose non-constant support lies entirely above `bound` do not
/// change the window and are skipped.
pub fn product_truncated(
    factors: &[DirichletPolynomial],
    bound: Index,
) -> Result<TruncatedSeries, DirichletError> {
    for (position, f) in factors.iter().enumerate() {
        let c1 = f.coeff(1);
        if !c1.is_one() {
            return Err(DirichletError::FactorNotUnital {
                position,
                constant: c1.to_string(),
            });
        }
    }
    let mut acc = TruncatedSeries::one(bound);
    for f in factors {
        if f.terms.keys().all(|&n| n == 1 || n > bound) {
            continue;
        }
        acc = acc.mul(&f.truncate(bound));
    }
    Ok(acc)
}
