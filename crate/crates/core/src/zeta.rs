//! Probabilistic zeta functions and the quantities built from them.
//!
//! `P_G(s) = ∑_H μ_G(H) / |G:H|^s` summed over all subgroups. For a normal
//! subgroup `N`, the subgroups of `G/N` are the subgroups of `G` above `N`,
//! and `μ_G(H)` only depends on the interval `[H, G]`, so `P_{G/N}` is the
//! same sum restricted to `H ≥ N`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::{DefaultHashBuilder, HashMap};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::dirichlet::{DirichletPolynomial, Index};
use crate::error::{GroupError, ZetaError};
use crate::group::{CayleyTable, PermGroup};
use crate::lattice::{Budget, Interrupt, LatticeStats, NodeId, NoInterrupt, SubgroupLattice};
use crate::psl2::{make_psl2, AlmostSimpleSpec, Psl2Variant};
use crate::structure::{ChiefChoice, ChiefSeries};

/// `P_G(s)` from a complete lattice.
pub fn p_g(lattice: &SubgroupLattice) -> DirichletPolynomial {
    p_g_over(lattice, lattice.trivial())
}

/// `P_{G/N}(s)` for a normal subgroup `N`.
pub fn p_g_over(lattice: &SubgroupLattice, n: NodeId) -> DirichletPolynomial {
    let terms = (0..lattice.len())
        .filter(|&h| lattice.moebius(h) != 0 && lattice.leq(n, h))
        .map(|h| (lattice.index(h) as Index, BigInt::from(lattice.moebius(h))));
    DirichletPolynomial::from_terms(terms).expect("indices are positive")
}

/// Builds the lattice and returns `P_G(s)` with the lattice size.
pub fn probabilistic_zeta(
    group: &PermGroup,
    budget: Budget,
) -> Result<(DirichletPolynomial, LatticeStats), GroupError> {
    let lattice = SubgroupLattice::build(group, budget)?;
    Ok((p_g(&lattice), lattice.stats()))
}

/// Exact probability that `k` independent uniform elements generate `group`.
///
/// Counts tuples directly: a dynamic program over the subgroup generated by
/// the first `j` entries, with no use of Möbius values.
pub fn generating_probability(group: &PermGroup, k: u32, max_order: usize) -> Result<BigRational, GroupError> {
    let n = group.order();
    if n > max_order {
        return Err(GroupError::OrderBoundExceeded { bound: max_order });
    }
    let table = CayleyTable::new(group);
    let words = n.div_ceil(64);
    let hasher = DefaultHashBuilder::default();

    #[derive(Clone)]
    struct State {
        elems: Vec<u32>,
        gens: Vec<u32>,
        count: BigUint,
    }

    let mut trivial = alloc::vec![0u64; words];
    trivial[0] = 1;
    let mut states: HashMap<Vec<u64>, State> = HashMap::with_hasher(hasher);
    states.insert(
        trivial,
        State {
            elems: alloc::vec![0],
            gens: Vec::new(),
            count: BigUint::one(),
        },
    );
    for _ in 0..k {
        let mut next: HashMap<Vec<u64>, State> = HashMap::with_hasher(hasher);
        for (bits, state) in &states {
            for g in 0..n as u32 {
                let (nbits, nelems, ngens) = if bits[(g >> 6) as usize] >> (g & 63) & 1 == 1 {
                    (bits.clone(), state.elems.clone(), state.gens.clone())
                } else {
                    let mut gens = state.gens.clone();
                    gens.push(g);
                    let (b, e) = close(&table, words, &gens);
                    (b, e, gens)
                };
                next.entry(nbits)
                    .and_modify(|s| s.count += &state.count)
                    .or_insert(State {
                        elems: nelems,
                        gens: ngens,
                        count: state.count.clone(),
                    });
            }
        }
        states = next;
    }
    let full = states.values().find(|s| s.elems.len() == n).map(|s| s.count.clone());
    let hits = BigInt::from(full.unwrap_or_default());
    let total = BigInt::from(n).pow(k);
    Ok(BigRational::new(hits, total))
}

fn close(table: &CayleyTable, words: usize, gens: &[u32]) -> (Vec<u64>, Vec<u32>) {
    let mut bits = alloc::vec![0u64; words];
    bits[0] = 1;
    let mut elems = alloc::vec![0u32];
    let mut k = 0;
    while k < elems.len() {
        for &s in gens {
            let y = table.mul(elems[k], s);
            if bits[(y >> 6) as usize] >> (y & 63) & 1 == 0 {
                bits[(y >> 6) as usize] |= 1 << (y & 63);
                elems.push(y);
            }
        }
        k += 1;
    }
    (bits, elems)
}

/// Node of the socle inside the lattice of `spec.group`.
pub fn socle_node(spec: &AlmostSimpleSpec, lattice: &SubgroupLattice) -> NodeId {
    lattice
        .find_elements(&spec.socle_elements())
        .expect("the socle is a subgroup of X")
}

/// Subgroups `H` of `X` with `H·S = X`.
fn supplements(lattice: &SubgroupLattice, socle: NodeId) -> impl Iterator<Item = NodeId> + '_ {
    let n = lattice.group_order();
    (0..lattice.len()).filter(move |&h| lattice.product_order(h, socle) == n)
}

/// `P_{X,S}(s) = ∑ μ_X(H)/|X:H|^s` over the supplements `H` of the socle.
pub fn p_xs(spec: &AlmostSimpleSpec, lattice: &SubgroupLattice) -> DirichletPolynomial {
    let socle = socle_node(spec, lattice);
    let terms = supplements(lattice, socle)
        .filter(|&h| lattice.moebius(h) != 0)
        .map(|h| (lattice.index(h) as Index, BigInt::from(lattice.moebius(h))));
    DirichletPolynomial::from_terms(terms).expect("indices are positive")
}

/// Which indices `m` to admit into `Ω(X)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OmegaParity {
    /// Odd indices only (the defining condition).
    #[default]
    Odd,
    /// Every index; an extension with no counterpart in the table of minima.
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaResult {
    pub label: String,
    pub omega: Vec<u64>,
    pub w: Option<u64>,
}

/// `Ω(X)`: indices `m` such that some supplement of the socle has index `m`,
/// and every supplement of index `m` is maximal.
pub fn omega_set(spec: &AlmostSimpleSpec, lattice: &SubgroupLattice, parity: OmegaParity) -> OmegaResult {
    let socle = socle_node(spec, lattice);
    // index ↦ all supplements of that index maximal?
    let mut by_index: BTreeMap<u64, bool> = BTreeMap::new();
    for c in lattice.classes() {
        let rep = c.members[0];
        if lattice.product_order(rep, socle) != lattice.group_order() {
            continue;
        }
        let m = lattice.index(rep) as u64;
        let maximal = lattice.is_maximal(rep);
        by_index.entry(m).and_modify(|all| *all &= maximal).or_insert(maximal);
    }
    let omega: Vec<u64> = by_index
        .into_iter()
        .filter(|&(m, all_maximal)| all_maximal && (parity == OmegaParity::Any || m % 2 == 1))
        .map(|(m, _)| m)
        .collect();
    OmegaResult {
        label: spec.label.clone(),
        w: omega.first().copied(),
        omega,
    }
}

/// Odd indices of supplements of the socle, with multiplicity per class.
pub fn odd_supplement_indices(spec: &AlmostSimpleSpec, lattice: &SubgroupLattice) -> Vec<u64> {
    let socle = socle_node(spec, lattice);
    lattice
        .classes()
        .iter()
        .map(|c| c.members[0])
        .filter(|&h| lattice.product_order(h, socle) == lattice.group_order())
        .map(|h| lattice.index(h) as u64)
        .filter(|m| m % 2 == 1)
        .collect()
}

/// Closed-form and exceptional values of `w(X)` for `soc(X) = PSL(2,q)`.
pub fn predicted_w(q: u64, variant: Psl2Variant) -> u64 {
    use Psl2Variant::*;
    match (q, variant) {
        (5, _) => 5,
        (7, Psl) => 7,
        (7, Pgl) => 3 * 7,
        (11, Psl) => 11,
        (11, Pgl) => 11 * 5,
        (19, Psl) => 19 * 3,
        (19, Pgl) => 19 * 9,
        (29, Psl) => 29 * 7,
        (29, Pgl) => 29 * 3 * 5,
        _ if q % 4 == 3 => q * (q - 1) / 2,
        _ => q * (q + 1) / 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    Skipped,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Match => "MATCH",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WRow {
    pub q: u64,
    pub variant: Psl2Variant,
    pub computed: Option<u64>,
    pub predicted: u64,
    pub status: RowStatus,
    /// Why the row was skipped.
    pub note: Option<String>,
}

/// `|X|` for `X = PSL(2,q)` or `PGL(2,q)`.
pub fn psl2_order(q: u64, variant: Psl2Variant) -> u64 {
    let pgl = q * (q * q - 1);
    match variant {
        Psl2Variant::Psl => pgl / 2,
        Psl2Variant::Pgl => pgl,
    }
}

/// Brute-force `w(X)` for one `(q, variant)` against the predicted value.
/// Budget failures produce a skipped row, not an error.
pub fn w_table_row(
    q: u64,
    variant: Psl2Variant,
    budget: Budget,
    max_q: u64,
    interrupt: &dyn Interrupt,
) -> Result<WRow, GroupError> {
    let predicted = predicted_w(q, variant);
    let skipped = |note: String| WRow {
        q,
        variant,
        computed: None,
        predicted,
        status: RowStatus::Skipped,
        note: Some(note),
    };
    if psl2_order(q, variant) > budget.max_order as u64 {
        return Ok(skipped(format!(
            "order {} exceeds budget {}",
            psl2_order(q, variant),
            budget.max_order
        )));
    }
    let spec = make_psl2(q, variant, max_q)?;
    let lattice = match SubgroupLattice::build_with_interrupt(&spec.group, budget, interrupt) {
        Ok(l) => l,
        Err(e @ (GroupError::OrderBoundExceeded { .. }
        | GroupError::SubgroupBoundExceeded { .. }
        | GroupError::Interrupted { .. })) => return Ok(skipped(format!("{e}"))),
        Err(e) => return Err(e),
    };
    let computed = omega_set(&spec, &lattice, OmegaParity::Odd).w;
    let status = if computed == Some(predicted) {
        RowStatus::Match
    } else {
        RowStatus::Mismatch
    };
    Ok(WRow {
        q,
        variant,
        computed,
        predicted,
        status,
        note: None,
    })
}

/// Sequential table over the given field sizes and variants.
pub fn w_table(qs: &[u64], variants: &[Psl2Variant], budget: Budget, max_q: u64) -> Result<Vec<WRow>, GroupError> {
    let mut rows = Vec::new();
    for &q in qs {
        for &v in variants {
            rows.push(w_table_row(q, v, budget, max_q, &NoInterrupt)?);
        }
    }
    Ok(rows)
}

/// Chief series with the factor polynomials `P_i` of
/// `P_{G/N_{i+1}} = P_{G/N_i} · P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactorization {
    pub series: ChiefSeries,
    pub polys: Vec<DirichletPolynomial>,
    /// Factor lies in the Frattini subgroup of `G/N_{i+1}`.
    pub frattini: Vec<bool>,
    /// Number of complements, for abelian factors.
    pub complements: Vec<Option<u64>>,
}

impl ChiefFactorization {
    /// Product of the factor polynomials.
    pub fn product(&self) -> Result<DirichletPolynomial, ZetaError> {
        let mut acc = DirichletPolynomial::one();
        for p in &self.polys {
            acc = acc.mul(p)?;
        }
        Ok(acc)
    }

    /// Factor polynomials sorted, for comparisons up to reordering.
    pub fn poly_multiset(&self) -> Vec<DirichletPolynomial> {
        let mut v = self.polys.clone();
        v.sort();
        v
    }
}

/// Number of complements of `upper/lower` in `G/lower`.
pub fn count_complements(lattice: &SubgroupLattice, upper: NodeId, lower: NodeId) -> u64 {
    let n = lattice.group_order();
    let target = n * lattice.order(lower) / lattice.order(upper);
    (0..lattice.len())
        .filter(|&k| {
            lattice.order(k) == target
                && lattice.leq(lower, k)
                && lattice.intersection_order(k, upper) == lattice.order(lower)
        })
        .count() as u64
}

pub fn chief_factorization(lattice: &SubgroupLattice, choice: ChiefChoice) -> Result<ChiefFactorization, ZetaError> {
    let series = lattice.chief_series(choice);
    let mut polys = Vec::new();
    let mut frattini = Vec::new();
    let mut complements = Vec::new();
    let mut above = DirichletPolynomial::one();
    for (i, f) in series.factors.iter().enumerate() {
        let below = p_g_over(lattice, f.lower);
        let poly = below.divide_exact(&above, None)?;
        let is_frattini = lattice.leq(f.upper, lattice.frattini_over(f.lower));
        if is_frattini && !poly.is_one() {
            return Err(ZetaError::InconsistentFactor {
                factor: i,
                detail: format!("Frattini factor with polynomial {poly}"),
            });
        }
        let comp = if f.simple.is_abelian() {
            let c = count_complements(lattice, f.upper, f.lower);
            let expected = DirichletPolynomial::one_minus(f.order as Index, c);
            if poly != expected {
                return Err(ZetaError::InconsistentFactor {
                    factor: i,
                    detail: format!("abelian factor polynomial {poly}, complements give {expected}"),
                });
            }
            Some(c)
        } else {
            None
        };
        polys.push(poly);
        frattini.push(is_frattini);
        complements.push(comp);
        above = below;
    }
    Ok(ChiefFactorization {
        series,
        polys,
        frattini,
        complements,
    })
}

/// Checks that the `π`-projection of `P_{X,S}(rs − r + 1)` carries
/// `c_m(X)·m^{r−1}` at `m^r` for every surviving `m`, and nothing else.
pub fn verify_paz(
    spec: &AlmostSimpleSpec,
    lattice: &SubgroupLattice,
    r: u32,
    pi: &[Index],
) -> Result<bool, ZetaError> {
    let socle_order = spec.socle.order() as Index;
    if !pi.iter().any(|&p| p >= 2 && socle_order.is_multiple_of(p)) {
        return Err(GroupError::InvalidParameter(format!(
            "π = {pi:?} contains no prime divisor of |S| = {socle_order}"
        ))
        .into());
    }
    let pxs = p_xs(spec, lattice);
    let lhs = pxs.shift_r(r)?.project_pi(pi);
    let surviving = pxs.project_pi(pi);
    if lhs.len() != surviving.len() {
        return Ok(false);
    }
    for (m, c) in surviving.terms() {
        let n = m.checked_pow(r).ok_or(crate::error::DirichletError::IndexOverflow)?;
        let expected = c * BigInt::from(m).pow(r - 1);
        if lhs.coeff(n) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::psl2::DEFAULT_MAX_Q;

    fn poly(terms: &[(Index, i64)]) -> DirichletPolynomial {
        DirichletPolynomial::from_terms(terms.iter().copied()).unwrap()
    }

    fn zeta(g: &PermGroup) -> DirichletPolynomial {
        probabilistic_zeta(g, Budget::default()).unwrap().0
    }

    #[test]
    fn p_g_examples() {
        assert_eq!(zeta(&builtin::cyclic(7)), poly(&[(1, 1), (7, -1)]));
        assert_eq!(zeta(&builtin::symmetric(3)), poly(&[(1, 1), (2, -1), (3, -3), (6, 3)]));
        assert_eq!(zeta(&builtin::klein_four()), poly(&[(1, 1), (2, -3), (4, 2)]));
    }

    #[test]
    fn generating_probability_examples() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(generating_probability(&builtin::symmetric(3), 2, 1000).unwrap(), half);
        assert_eq!(generating_probability(&builtin::cyclic(2), 1, 1000).unwrap(), half);
        let a5 = builtin::alternating(5);
        assert_eq!(generating_probability(&a5, 2, 1000).unwrap(), zeta(&a5).evaluate_at(2));
    }

    #[test]
    fn p_xs_examples() {
        let x = make_psl2(5, Psl2Variant::Psl, DEFAULT_MAX_Q).unwrap();
        let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
        assert_eq!(p_xs(&x, &l), p_g(&l));

        let x = make_psl2(5, Psl2Variant::Pgl, DEFAULT_MAX_Q).unwrap();
        let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
        assert_eq!(p_xs(&x, &l).coeff(1), BigInt::one());

        let x = make_psl2(7, Psl2Variant::Pgl, DEFAULT_MAX_Q).unwrap();
        let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
        assert!(p_xs(&x, &l).coeff(21) < BigInt::from(0));
    }

    #[test]
    fn omega_examples() {
        for (q, v, w) in [(5, Psl2Variant::Psl, 5), (7, Psl2Variant::Psl, 7), (7, Psl2Variant::Pgl, 21)] {
            let x = make_psl2(q, v, DEFAULT_MAX_Q).unwrap();
            let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
            let res = omega_set(&x, &l, OmegaParity::Odd);
            assert_eq!(res.w, Some(w), "{}", x.label);
            assert!(res.omega.iter().all(|m| m % 2 == 1));
        }
    }

    #[test]
    fn predicted_values() {
        assert_eq!(predicted_w(13, Psl2Variant::Psl), 91);
        assert_eq!(predicted_w(11, Psl2Variant::Psl), 11);
        assert_eq!(predicted_w(11, Psl2Variant::Pgl), 55);
        assert_eq!(predicted_w(19, Psl2Variant::Psl), 57);
        assert_eq!(predicted_w(17, Psl2Variant::Psl), 153);
        assert_eq!(predicted_w(23, Psl2Variant::Pgl), 253);
    }

    #[test]
    fn skipped_rows() {
        let row = w_table_row(29, Psl2Variant::Pgl, Budget::default(), DEFAULT_MAX_Q, &NoInterrupt).unwrap();
        assert_eq!(row.status, RowStatus::Skipped);
        assert_eq!(row.computed, None);
    }

    #[test]
    fn chief_factorization_examples() {
        let l = SubgroupLattice::build(&builtin::symmetric(4), Budget::default()).unwrap();
        let cf = chief_factorization(&l, ChiefChoice::First).unwrap();
        assert_eq!(
            cf.polys,
            alloc::vec![poly(&[(1, 1), (2, -1)]), poly(&[(1, 1), (3, -3)]), poly(&[(1, 1), (4, -4)])]
        );
        assert_eq!(cf.complements, alloc::vec![Some(1), Some(3), Some(4)]);
        assert_eq!(cf.product().unwrap(), p_g(&l));

        let l = SubgroupLattice::build(&builtin::cyclic(4), Budget::default()).unwrap();
        let cf = chief_factorization(&l, ChiefChoice::First).unwrap();
        assert_eq!(cf.frattini, alloc::vec![false, true]);
        assert!(cf.polys[1].is_one());
        assert_eq!(p_g(&l), poly(&[(1, 1), (2, -1)]));
    }

    #[test]
    fn paz_examples() {
        let x = make_psl2(7, Psl2Variant::Pgl, DEFAULT_MAX_Q).unwrap();
        let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
        assert!(verify_paz(&x, &l, 1, &[2]).unwrap());
        assert!(verify_paz(&x, &l, 2, &[2]).unwrap());
        assert!(verify_paz(&x, &l, 3, &[2, 3]).unwrap());
        assert!(verify_paz(&x, &l, 2, &[5]).is_err());
        let lhs = p_xs(&x, &l).shift_r(2).unwrap().project_pi(&[2]);
        assert_eq!(lhs.coeff(441), p_xs(&x, &l).coeff(21) * 21);

        let x = make_psl2(5, Psl2Variant::Psl, DEFAULT_MAX_Q).unwrap();
        let l = SubgroupLattice::build(&x.group, Budget::default()).unwrap();
        assert!(verify_paz(&x, &l, 2, &[2, 3, 5]).unwrap());
        let full = p_xs(&x, &l).shift_r(2).unwrap().project_pi(&[2, 3, 5]);
        assert!(full.is_one());
    }
}
