//! Decision procedures on finite factor data: valuations, the two
//! finiteness conditions for products `∏ (1 − c_i/(q^{r_i})^s)`, extraction
//! of the leading product `F*`, and a replay of the infinite-product argument
//! on concrete factors.
//!
//! Statements about infinite families are decided on the encoded data. For
//! explicit lists the verdicts are window-relative and flagged as such.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::arith;
use crate::dirichlet::{product_truncated, DirichletPolynomial, Index, TruncatedSeries};
use crate::error::{DirichletError, RationalityError};
use crate::psl2::Psl2Variant;
use crate::zeta::predicted_w;

/// `v_q(n)`.
pub fn v_q(n: Index, q: Index) -> u32 {
    arith::valuation(n, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    /// Abelian chief factor `C_q^r`.
    Cyclic(u64),
    /// Nonabelian chief factor `PSL(2,q)^r` with `X_i` of the given kind.
    Psl2 { q: u64, variant: Psl2Variant },
}

impl FactorKind {
    pub fn prime(&self) -> u64 {
        match *self {
            FactorKind::Cyclic(q) | FactorKind::Psl2 { q, .. } => q,
        }
    }
}

/// One factor `P_i(s) = 1 + ∑ b_{i,n}/n^s` with its chief-factor data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescriptor {
    pub id: u64,
    pub kind: FactorKind,
    pub r: u32,
    /// Nonzero `b_{i,n}` for `n > 1`; the constant term 1 is implicit.
    pub coeffs: BTreeMap<Index, BigInt>,
}

impl FactorDescriptor {
    /// Checks the structural invariants. The `n = m^r` shape of
    /// nonabelian factors is a hypothesis of the procedures below and is
    /// checked there, see [`FactorDescriptor::check_shape`].
    pub fn new(
        id: u64,
        kind: FactorKind,
        r: u32,
        coeffs: impl IntoIterator<Item = (Index, BigInt)>,
    ) -> Result<Self, RationalityError> {
        let invalid = |detail: alloc::string::String| RationalityError::InvalidDescriptor { id, detail };
        if r == 0 {
            return Err(invalid("r must be positive".into()));
        }
        let q = kind.prime();
        if !arith::is_prime(q as Index) {
            return Err(invalid(format!("{q} is not prime")));
        }
        if matches!(kind, FactorKind::Psl2 { .. }) && q < 5 {
            return Err(invalid(format!("PSL(2,{q}) is not simple")));
        }
        let mut map: BTreeMap<Index, BigInt> = BTreeMap::new();
        for (n, b) in coeffs {
            if n < 2 {
                return Err(invalid(format!("index {n}: the constant term is implicit")));
            }
            *map.entry(n).or_default() += b;
        }
        map.retain(|_, b| !b.is_zero());
        if let FactorKind::Cyclic(q) = kind {
            let n = (q as Index)
                .checked_pow(r)
                .ok_or_else(|| invalid("q^r overflows".into()))?;
            if map.keys().any(|&k| k != n) {
                return Err(invalid(format!("cyclic factor may only carry index {n}")));
            }
            if map.values().any(|b| b.is_positive()) {
                return Err(invalid("cyclic factor coefficient must be -c with c ≥ 0".into()));
            }
        }
        Ok(Self {
            id,
            kind,
            r,
            coeffs: map,
        })
    }

    /// The cyclic factor `1 − c/(q^r)^s`.
    pub fn cyclic(id: u64, q: u64, r: u32, c: u64) -> Result<Self, RationalityError> {
        let n = (q as Index).checked_pow(r).ok_or(DirichletError::IndexOverflow)?;
        Self::new(id, FactorKind::Cyclic(q), r, [(n, -BigInt::from(c))])
    }

    /// A nonabelian factor whose odd-index part is determined by
    /// `P_{X,S}`: `b_{m^r} = c_m(X)·m^{r−1}` for odd `m > 1`.
    /// Even indices are not determined by `P_{X,S}` and are left out.
    pub fn psl2_from_pxs(
        id: u64,
        q: u64,
        variant: Psl2Variant,
        r: u32,
        pxs: &DirichletPolynomial,
    ) -> Result<Self, RationalityError> {
        let mut coeffs = Vec::new();
        for (m, c) in pxs.terms() {
            if m == 1 || m % 2 == 0 {
                continue;
            }
            let n = m.checked_pow(r).ok_or(DirichletError::IndexOverflow)?;
            coeffs.push((n, c * BigInt::from(m).pow(r - 1)));
        }
        Self::new(id, FactorKind::Psl2 { q, variant }, r, coeffs)
    }

    pub fn coeff(&self, n: Index) -> BigInt {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn polynomial(&self) -> DirichletPolynomial {
        DirichletPolynomial::one().add(
            &DirichletPolynomial::from_terms(self.coeffs.iter().map(|(&n, b)| (n, b.clone())))
                .expect("indices are at least 2"),
        )
    }

    /// For nonabelian factors, every odd `n` with `b_n ≠ 0` is an `r`-th power.
    pub fn check_shape(&self) -> Result<(), RationalityError> {
        if let FactorKind::Psl2 { .. } = self.kind {
            for &n in self.coeffs.keys() {
                if n % 2 == 1 && arith::exact_root(n, self.r).is_none() {
                    return Err(RationalityError::HypothesisViolated(format!(
                        "factor {}: odd index {n} is not a perfect power with exponent {}",
                        self.id, self.r
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Membership predicate for the index set `Λ`: multiples of `q`,
/// optionally odd, optionally free of primes above `max_prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaDef {
    pub odd: bool,
    pub max_prime: Option<Index>,
}

impl LambdaDef {
    /// All multiples of `q`.
    pub const MULTIPLES: LambdaDef = LambdaDef {
        odd: false,
        max_prime: None,
    };

    /// Odd multiples of `q`.
    pub const ODD: LambdaDef = LambdaDef {
        odd: true,
        max_prime: None,
    };

    /// Odd multiples of `q` with no prime factor above `q`.
    pub fn odd_bounded(q: Index) -> LambdaDef {
        LambdaDef {
            odd: true,
            max_prime: Some(q),
        }
    }

    pub fn contains(&self, n: Index, q: Index) -> bool {
        if n == 0 || !n.is_multiple_of(q) || (self.odd && n.is_multiple_of(2)) {
            return false;
        }
        match self.max_prime {
            None => true,
            Some(p) => is_smooth(n, p),
        }
    }
}

/// No prime factor of `n` exceeds `p`.
fn is_smooth(mut n: Index, p: Index) -> bool {
    let mut d = 2;
    while d <= p && n > 1 {
        while n.is_multiple_of(d) {
            n /= d;
        }
        d += 1;
    }
    n == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExperiment {
    pub factors: Vec<FactorDescriptor>,
    pub q: Index,
    pub lambda: LambdaDef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub w: Index,
    pub i_star: Vec<u64>,
    /// `1 + b_{i,w^{r_i}}/(w^{r_i})^s` for `i ∈ I*`, in input order.
    pub f_star: Vec<DirichletPolynomial>,
}

/// Checks the hypothesis on `Λ` and computes
/// `w = min{x | v_q(x) = 1, b_{i,x^{r_i}} ≠ 0 for some i}` with `I*` and `F*`.
pub fn extract_w(exp: &ProductExperiment) -> Result<Extraction, RationalityError> {
    let q = exp.q;
    if !arith::is_prime(q) {
        return Err(RationalityError::HypothesisViolated(format!("{q} is not prime")));
    }
    let mut w: Option<Index> = None;
    for f in &exp.factors {
        for &n in f.coeffs.keys() {
            if !exp.lambda.contains(n, q) {
                continue;
            }
            let x = arith::exact_root(n, f.r).ok_or_else(|| {
                RationalityError::HypothesisViolated(format!(
                    "factor {}: index {n} in Λ is not a perfect power with exponent {}",
                    f.id, f.r
                ))
            })?;
            if v_q(n, q) != f.r {
                return Err(RationalityError::HypothesisViolated(format!(
                    "factor {}: v_{q}({n}) = {} but r = {}",
                    f.id,
                    v_q(n, q),
                    f.r
                )));
            }
            w = Some(w.map_or(x, |w| w.min(x)));
        }
    }
    let w = w.ok_or(RationalityError::NoWitness)?;
    let mut i_star = Vec::new();
    let mut f_star = Vec::new();
    for f in &exp.factors {
        let Some(n) = w.checked_pow(f.r) else { continue };
        let b = f.coeff(n);
        if !b.is_zero() {
            i_star.push(f.id);
            f_star.push(DirichletPolynomial::one().add(&DirichletPolynomial::monomial(n, b)));
        }
    }
    Ok(Extraction { w, i_star, f_star })
}

/// A family of exponents `r_i`, explicit or given by an infinite pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentFamily {
    /// A finite window onto the family.
    Explicit(Vec<u64>),
    /// `r_i = r` for infinitely many `i`.
    Constant(u64),
    /// `r_i = start + i·step`, `i ≥ 0`, `step ≥ 1`.
    Arithmetic { start: u64, step: u64 },
    /// `r_i = start·ratio^i`, `i ≥ 0`, `ratio ≥ 2`.
    Geometric { start: u64, ratio: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionI {
    Holds,
    /// Infinitely many `r_i` divide this `n`.
    ViolatedAt(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmlVerdict {
    pub condition_i: ConditionI,
    /// A prime dividing no `r_i`, if one exists.
    pub condition_ii: Option<u64>,
    /// The verdict only speaks about an explicit finite window.
    pub window_relative: bool,
}

impl SmlVerdict {
    pub fn both_hold(&self) -> bool {
        self.condition_i == ConditionI::Holds && self.condition_ii.is_some()
    }
}

fn smallest_prime_not_dividing(n: u64) -> u64 {
    (2..).find(|&p| arith::is_prime(p as Index) && !n.is_multiple_of(p)).expect("infinitely many primes")
}

/// Decides conditions (i) and (ii) on an exponent family.
///
/// For an explicit window, a repeated value `r` stands for a value that
/// recurs in the family, so (i) is reported violated at `n = r`; for (ii)
/// the witness is the smallest prime `t ≤ max(2, max r_i)` dividing no
/// `r_i`, since any larger prime trivially divides none of the window.
pub fn sml_conditions(family: &ExponentFamily) -> Result<SmlVerdict, RationalityError> {
    let bad = |d: &str| RationalityError::HypothesisViolated(format!("exponent family: {d}"));
    Ok(match family {
        ExponentFamily::Explicit(rs) => {
            if rs.contains(&0) {
                return Err(bad("exponents must be positive"));
            }
            let mut seen = BTreeSet::new();
            let repeated = rs.iter().filter(|&&r| !seen.insert(r)).min().copied();
            let top = rs.iter().copied().max().unwrap_or(1).max(2);
            let t = (2..=top).find(|&p| arith::is_prime(p as Index) && rs.iter().all(|r| r % p != 0));
            SmlVerdict {
                condition_i: repeated.map_or(ConditionI::Holds, ConditionI::ViolatedAt),
                condition_ii: t,
                window_relative: true,
            }
        }
        &ExponentFamily::Constant(r) => {
            if r == 0 {
                return Err(bad("exponents must be positive"));
            }
            SmlVerdict {
                condition_i: ConditionI::ViolatedAt(r),
                condition_ii: Some(smallest_prime_not_dividing(r)),
                window_relative: false,
            }
        }
        &ExponentFamily::Arithmetic { start, step } => {
            if start == 0 || step == 0 {
                return Err(bad("arithmetic family needs start ≥ 1 and step ≥ 1"));
            }
            // A prime t divides no term iff t | step and t ∤ start.
            let t = arith::prime_divisors(step as Index)
                .into_iter()
                .map(|p| p as u64)
                .find(|p| start % p != 0);
            SmlVerdict {
                condition_i: ConditionI::Holds,
                condition_ii: t,
                window_relative: false,
            }
        }
        &ExponentFamily::Geometric { start, ratio } => {
            if start == 0 || ratio < 2 {
                return Err(bad("geometric family needs start ≥ 1 and ratio ≥ 2"));
            }
            SmlVerdict {
                condition_i: ConditionI::Holds,
                condition_ii: Some(smallest_prime_not_dividing(start.saturating_mul(ratio))),
                window_relative: false,
            }
        }
    })
}

/// Primes dividing some index with a nonzero coefficient.
pub fn pi_of_series(p: &DirichletPolynomial) -> BTreeSet<Index> {
    p.prime_support()
}

/// Same for a window; the result is a lower bound for the full series.
pub fn pi_of_truncated(t: &TruncatedSeries) -> BTreeSet<Index> {
    t.prime_support_lower_bound()
}

/// Primes dividing the order of a finite group.
pub fn pi_of_group(order: u64) -> BTreeSet<Index> {
    arith::prime_divisors(order as Index).into_iter().collect()
}

/// Every computable quantity of the replayed argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    /// `max q_i`.
    pub q: Index,
    /// `Λ` used for `w` and `I*`: odd multiples of `q`.
    pub lambda: LambdaDef,
    /// `Λ` used for `β`: odd multiples of `q` without primes above `q`.
    pub lambda_bounded: LambdaDef,
    /// `min{r_i | S_i = PSL(2,q)}`.
    pub r: Option<u32>,
    /// Ids with `S_i = PSL(2,q)` and `r_i = r`.
    pub i_star_min_r: Vec<u64>,
    /// `min w(X_i)` over those ids, from the table of minima.
    pub w_min_r: Option<Index>,
    /// `min{n > 1 | n ∈ Λ, v_q(n) = r, b_{i,n} ≠ 0}` over nonabelian factors.
    pub beta: Option<Index>,
    /// Whether `β = w^r`.
    pub beta_is_w_pow_r: Option<bool>,
    /// `∑ b_{i,β}` over `i` with `S_i = PSL(2,q)`, `r_i = r`, `w(X_i) = w`.
    pub c_beta: Option<BigInt>,
    /// Coefficient of `β` in the truncated product of the nonabelian factors.
    pub c_beta_product: Option<BigInt>,
    /// `min{x ∈ Λ | v_q(x) = 1, b_{i,x^{r_i}} ≠ 0}`.
    pub w: Option<Index>,
    /// The same minimum recomputed on the `{2}`-projected factors.
    pub w_via_projection: Option<Index>,
    /// `{i | b_{i,w^{r_i}} ≠ 0}`.
    pub i_star: Vec<u64>,
    /// Factors of `H(s) = ∏_{i∈I*} (1 + b_{i,w^{r_i}}/w^{r_i s})`.
    pub h_factors: Vec<DirichletPolynomial>,
    /// `H(s)` up to the requested bound.
    pub h_expansion: TruncatedSeries,
    /// `Q(s) = ∏ P_i^{{2}}(s)` up to the requested bound.
    pub q_expansion: TruncatedSeries,
    /// Each `i ∈ I*` is cyclic of order `q` with `w = q`, or nonabelian
    /// over `PSL(2,q)` with `w(X_i) = w`.
    pub characterization_holds: bool,
    /// `b_{i,w^{r_i}} < 0` for every `i ∈ I*`.
    pub h_coefficients_negative: bool,
    /// Conditions (i) and (ii) on `{r_i | i ∈ I*}`.
    pub sml: Option<SmlVerdict>,
}

/// Replays the argument on a finite list of factors.
pub fn replay_factors(factors: &[FactorDescriptor], bound: Index) -> Result<ReplayReport, RationalityError> {
    if factors.is_empty() {
        return Err(RationalityError::EmptyInput);
    }
    for f in factors {
        f.check_shape()?;
    }
    let q = factors.iter().map(|f| f.kind.prime() as Index).max().expect("nonempty");
    let lambda = LambdaDef::ODD;
    let lambda_bounded = LambdaDef::odd_bounded(q);
    let w_of = |f: &FactorDescriptor| match f.kind {
        FactorKind::Psl2 { q, variant } => Some(predicted_w(q, variant) as Index),
        FactorKind::Cyclic(_) => None,
    };
    let over_q = |f: &&FactorDescriptor| matches!(f.kind, FactorKind::Psl2 { q: qi, .. } if qi as Index == q);

    // Quantities attached to the smallest multiplicity over PSL(2,q).
    let r = factors.iter().filter(over_q).map(|f| f.r).min();
    let min_r: Vec<&FactorDescriptor> = factors.iter().filter(over_q).filter(|f| Some(f.r) == r).collect();
    let i_star_min_r = min_r.iter().map(|f| f.id).collect();
    let w_min_r = min_r.iter().filter_map(|f| w_of(f)).min();
    let nonabelian: Vec<&FactorDescriptor> =
        factors.iter().filter(|f| matches!(f.kind, FactorKind::Psl2 { .. })).collect();
    let beta = r.and_then(|r| {
        nonabelian
            .iter()
            .flat_map(|f| f.coeffs.keys().copied())
            .filter(|&n| n > 1 && lambda_bounded.contains(n, q) && v_q(n, q) == r)
            .min()
    });
    let beta_is_w_pow_r = match (beta, w_min_r, r) {
        (Some(b), Some(w), Some(r)) => Some(w.checked_pow(r) == Some(b)),
        _ => None,
    };
    let c_beta = beta.map(|b| {
        min_r
            .iter()
            .filter(|f| w_of(f) == w_min_r)
            .map(|f| f.coeff(b))
            .sum::<BigInt>()
    });
    let c_beta_product = match beta {
        Some(b) => {
            let polys: Vec<_> = nonabelian.iter().map(|f| f.polynomial()).collect();
            Some(product_truncated(&polys, b)?.coeff(b))
        }
        None => None,
    };

    // w, I* and H(s).
    let exp = ProductExperiment {
        factors: factors.to_vec(),
        q,
        lambda,
    };
    let extraction = match extract_w(&exp) {
        Ok(e) => Some(e),
        Err(RationalityError::NoWitness) => None,
        Err(e) => return Err(e),
    };
    let projected: Vec<FactorDescriptor> = factors
        .iter()
        .map(|f| FactorDescriptor {
            coeffs: f.coeffs.iter().filter(|(n, _)| *n % 2 == 1).map(|(&n, b)| (n, b.clone())).collect(),
            ..f.clone()
        })
        .collect();
    let projected_polys: Vec<_> = projected.iter().map(|f| f.polynomial()).collect();
    let w_via_projection = match extract_w(&ProductExperiment {
        factors: projected,
        q,
        lambda: LambdaDef::MULTIPLES,
    }) {
        Ok(e) => Some(e.w),
        Err(RationalityError::NoWitness) => None,
        Err(e) => return Err(e),
    };
    let q_expansion = product_truncated(&projected_polys, bound)?;

    let (w, i_star, h_factors) = match extraction {
        Some(e) => (Some(e.w), e.i_star, e.f_star),
        None => (None, Vec::new(), Vec::new()),
    };
    let h_expansion = product_truncated(&h_factors, bound)?;
    let in_star: Vec<&FactorDescriptor> = factors.iter().filter(|f| i_star.contains(&f.id)).collect();
    let characterization_holds = in_star.iter().all(|f| match f.kind {
        FactorKind::Cyclic(qi) => qi as Index == q && w == Some(q),
        FactorKind::Psl2 { q: qi, .. } => qi as Index == q && w_of(f) == w,
    });
    let h_coefficients_negative = match w {
        Some(w) => in_star.iter().all(|f| f.coeff(w.pow(f.r)).is_negative()),
        None => true,
    };
    let sml = if i_star.is_empty() {
        None
    } else {
        Some(sml_conditions(&ExponentFamily::Explicit(in_star.iter().map(|f| f.r as u64).collect()))?)
    };

    Ok(ReplayReport {
        q,
        lambda,
        lambda_bounded,
        r,
        i_star_min_r,
        w_min_r,
        beta,
        beta_is_w_pow_r,
        c_beta,
        c_beta_product,
        w,
        w_via_projection,
        i_star,
        h_factors,
        h_expansion,
        q_expansion,
        characterization_holds,
        h_coefficients_negative,
        sml,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psl2(id: u64, q: u64, variant: Psl2Variant, r: u32, coeffs: &[(Index, i64)]) -> FactorDescriptor {
        FactorDescriptor::new(
            id,
            FactorKind::Psl2 { q, variant },
            r,
            coeffs.iter().map(|&(n, b)| (n, BigInt::from(b))),
        )
        .unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(v_q(18, 3), 2);
        assert_eq!(v_q(7, 5), 0);
        assert_eq!(v_q(48, 2), 4);
    }

    #[test]
    fn descriptor_validation() {
        assert!(FactorDescriptor::cyclic(0, 3, 2, 4).is_ok());
        assert!(FactorDescriptor::new(0, FactorKind::Cyclic(3), 1, [(9, BigInt::from(-1))]).is_err());
        assert!(FactorDescriptor::new(0, FactorKind::Cyclic(3), 1, [(3, BigInt::from(2))]).is_err());
        assert!(FactorDescriptor::new(0, FactorKind::Cyclic(4), 1, []).is_err());
        assert!(FactorDescriptor::new(0, FactorKind::Cyclic(3), 0, []).is_err());
        let bad = psl2(0, 7, Psl2Variant::Pgl, 2, &[(21, -1)]);
        assert!(matches!(bad.check_shape(), Err(RationalityError::HypothesisViolated(_))));
    }

    #[test]
    fn sml_examples() {
        let window = ExponentFamily::Explicit((1..=20).collect());
        let v = sml_conditions(&window).unwrap();
        assert_eq!(v.condition_i, ConditionI::Holds);
        assert_eq!(v.condition_ii, None);
        assert!(v.window_relative);

        let powers = ExponentFamily::Explicit((0..10).map(|i| 1 << i).collect());
        let v = sml_conditions(&powers).unwrap();
        assert_eq!((v.condition_i, v.condition_ii), (ConditionI::Holds, Some(3)));
        let v = sml_conditions(&ExponentFamily::Geometric { start: 1, ratio: 2 }).unwrap();
        assert_eq!((v.condition_i, v.condition_ii), (ConditionI::Holds, Some(3)));

        let v = sml_conditions(&ExponentFamily::Constant(1)).unwrap();
        assert_eq!(v.condition_i, ConditionI::ViolatedAt(1));
        let v = sml_conditions(&ExponentFamily::Explicit(alloc::vec![1; 10])).unwrap();
        assert_eq!(v.condition_i, ConditionI::ViolatedAt(1));

        let v = sml_conditions(&ExponentFamily::Arithmetic { start: 1, step: 1 }).unwrap();
        assert_eq!(v.condition_ii, None);
        let v = sml_conditions(&ExponentFamily::Arithmetic { start: 1, step: 6 }).unwrap();
        assert_eq!(v.condition_ii, Some(2));
    }

    #[test]
    fn extraction_examples() {
        let exp = ProductExperiment {
            factors: alloc::vec![
                psl2(1, 5, Psl2Variant::Psl, 1, &[(15, -2)]),
                psl2(2, 5, Psl2Variant::Psl, 2, &[(225, -3)]),
                psl2(3, 5, Psl2Variant::Psl, 1, &[(35, -1)]),
            ],
            q: 5,
            lambda: LambdaDef::MULTIPLES,
        };
        let e = extract_w(&exp).unwrap();
        assert_eq!(e.w, 15);
        assert_eq!(e.i_star, alloc::vec![1, 2]);
        let f = DirichletPolynomial::from_terms([(1, 1), (15, -2)]).unwrap();
        let g = DirichletPolynomial::from_terms([(1, 1), (225, -3)]).unwrap();
        assert_eq!(e.f_star, alloc::vec![f, g]);

        let single = ProductExperiment {
            factors: alloc::vec![FactorDescriptor::cyclic(0, 7, 1, 1).unwrap()],
            q: 7,
            lambda: LambdaDef::MULTIPLES,
        };
        let e = extract_w(&single).unwrap();
        assert_eq!(e.w, 7);
        assert_eq!(e.f_star, alloc::vec![DirichletPolynomial::one_minus(7, 1)]);

        let none = ProductExperiment {
            factors: alloc::vec![psl2(0, 7, Psl2Variant::Psl, 1, &[(8, -1)])],
            q: 7,
            lambda: LambdaDef::MULTIPLES,
        };
        assert_eq!(extract_w(&none), Err(RationalityError::NoWitness));

        let violating = ProductExperiment {
            factors: alloc::vec![psl2(0, 7, Psl2Variant::Psl, 2, &[(49 * 7, -1)])],
            q: 7,
            lambda: LambdaDef::MULTIPLES,
        };
        assert!(matches!(extract_w(&violating), Err(RationalityError::HypothesisViolated(_))));
    }

    #[test]
    fn replay_cyclic_family() {
        let factors: Vec<_> = (0..10).map(|i| FactorDescriptor::cyclic(i, 7, 1, 1).unwrap()).collect();
        let rep = replay_factors(&factors, 7u128.pow(3)).unwrap();
        assert_eq!(rep.w, Some(7));
        assert_eq!(rep.i_star.len(), 10);
        assert_eq!(rep.r, None);
        assert!(rep.characterization_holds);
        assert_eq!(rep.h_expansion.coeff(7), BigInt::from(-10));
        assert_eq!(rep.h_expansion.coeff(49), BigInt::from(45));
        assert_eq!(rep.sml.unwrap().condition_i, ConditionI::ViolatedAt(1));
        assert_eq!(replay_factors(&[], 10), Err(RationalityError::EmptyInput));
    }

    #[test]
    fn replay_mixed_primes() {
        let factors = alloc::vec![
            FactorDescriptor::cyclic(0, 3, 1, 2).unwrap(),
            psl2(1, 7, Psl2Variant::Pgl, 1, &[(21, -1), (8, -1), (28, 2)]),
            psl2(2, 7, Psl2Variant::Pgl, 2, &[(441, -21)]),
            psl2(3, 7, Psl2Variant::Psl, 3, &[(343, -4), (125 * 27, 3)]),
        ];
        let rep = replay_factors(&factors, 1000).unwrap();
        assert_eq!(rep.q, 7);
        assert_eq!(rep.w, Some(7));
        assert_eq!(rep.i_star, alloc::vec![3]);
        assert_eq!(rep.w_via_projection, Some(7));
        assert!(rep.characterization_holds);
        assert!(rep.h_coefficients_negative);
        assert_eq!(rep.r, Some(1));
        assert_eq!(rep.i_star_min_r, alloc::vec![1]);
        assert_eq!(rep.w_min_r, Some(21));
        assert_eq!(rep.beta, Some(21));
        assert_eq!(rep.beta_is_w_pow_r, Some(true));
        assert_eq!(rep.c_beta, Some(BigInt::from(-1)));
        assert_eq!(rep.c_beta_product, Some(BigInt::from(-1)));
    }

    #[test]
    fn pi_examples() {
        let p = DirichletPolynomial::from_terms([(1, 1), (3, -3), (6, 3)]).unwrap();
        assert_eq!(pi_of_series(&p), [2, 3].into_iter().collect());
        assert!(pi_of_series(&DirichletPolynomial::one()).is_empty());
        assert_eq!(pi_of_group(60), [2, 3, 5].into_iter().collect());
    }
}
