//! Normal structure read off a subgroup lattice: normal subgroups, quotients,
//! the Frattini subgroup, chief series and centralizers of chief factors.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::error::GroupError;
use crate::group::{PermGroup, DEFAULT_MAX_ORDER};
use crate::lattice::{NodeId, SubgroupLattice};
use crate::perm::Permutation;

/// Isomorphism type of a simple group, as far as order and abelianness tell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    Cyclic(u64),
    /// `PSL(2,q)` for a prime `q ≥ 5` (including `A5 = PSL(2,5)`).
    Psl2(u64),
    Alternating(u64),
    /// Nonabelian simple group identified only by its order.
    Other(u64),
}

impl SimpleType {
    pub fn from_order(order: u64, abelian: bool) -> Self {
        if abelian {
            return SimpleType::Cyclic(order);
        }
        if let Some(q) = psl2_field(order) {
            return SimpleType::Psl2(q);
        }
        match order {
            360 => SimpleType::Alternating(6),
            2520 => SimpleType::Alternating(7),
            _ => SimpleType::Other(order),
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            SimpleType::Cyclic(p) => p,
            SimpleType::Psl2(q) => q * (q * q - 1) / 2,
            SimpleType::Alternating(n) => (3..=n).product::<u64>(),
            SimpleType::Other(n) => n,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, SimpleType::Cyclic(_))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Cyclic(p) => write!(f, "C{p}"),
            SimpleType::Psl2(q) => write!(f, "PSL(2,{q})"),
            SimpleType::Alternating(n) => write!(f, "A{n}"),
            SimpleType::Other(n) => write!(f, "simple({n})"),
        }
    }
}

/// The prime `q ≥ 5` with `|PSL(2,q)| = q(q²−1)/2 = order`, if any.
pub fn psl2_field(order: u64) -> Option<u64> {
    (5u64..)
        .take_while(|q| q * (q * q - 1) / 2 <= order)
        .find(|&q| q * (q * q - 1) / 2 == order && arith::is_prime(q as u128))
}

/// A factor `upper/lower ≅ simple^multiplicity` of a chief series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub upper: NodeId,
    pub lower: NodeId,
    pub simple: SimpleType,
    pub multiplicity: u32,
    pub order: u64,
}

impl ChiefFactor {
    pub fn label(&self) -> String {
        if self.multiplicity == 1 {
            format!("{}", self.simple)
        } else {
            format!("{}^{}", self.simple, self.multiplicity)
        }
    }
}

/// Which minimal normal subgroup to take when several are available.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChiefChoice {
    /// Lowest node id (the default, deterministic ordering).
    #[default]
    First,
    /// Highest node id; yields a different series when one exists.
    Last,
}

/// A chief series `G = N_0 > N_1 > … > N_k = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub nodes: Vec<NodeId>,
    pub factors: Vec<ChiefFactor>,
}

impl SubgroupLattice {
    /// Normal subgroups, ascending by node id.
    pub fn normal_subgroups(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&k| self.is_normal(k)).collect()
    }

    /// Intersection of all maximal subgroups (the whole group if there are none).
    pub fn frattini(&self) -> NodeId {
        self.intersection_of(self.maximal_subgroups().into_iter(), self.top())
    }

    /// Preimage of `Frat(G/N)`: the intersection of the maximal subgroups containing `n`.
    pub fn frattini_over(&self, n: NodeId) -> NodeId {
        let maxes = self.maximal_subgroups().into_iter().filter(|&m| self.leq(n, m));
        self.intersection_of(maxes, self.top())
    }

    fn intersection_of(&self, nodes: impl Iterator<Item = NodeId>, empty: NodeId) -> NodeId {
        nodes.fold(empty, |acc, m| self.intersection(acc, m))
    }

    /// Does `factor = upper/lower` commute, i.e. `[upper, upper] ≤ lower`?
    fn factor_is_abelian(&self, upper: NodeId, lower: NodeId) -> bool {
        let gens = self.generators(upper);
        let t = self.table();
        gens.iter().enumerate().all(|(k, &a)| {
            gens[k + 1..].iter().all(|&b| self.contains_element(lower, t.commutator(a, b) as usize))
        })
    }

    /// Identifies `upper/lower` as `S^r` for a simple `S`.
    pub fn classify_factor(&self, upper: NodeId, lower: NodeId) -> ChiefFactor {
        let order = (self.order(upper) / self.order(lower)) as u64;
        if self.factor_is_abelian(upper, lower) {
            let f = arith::factorize(order as u128);
            let (p, r) = f.first().copied().unwrap_or((1, 0));
            return ChiefFactor {
                upper,
                lower,
                simple: SimpleType::Cyclic(p as u64),
                multiplicity: r,
                order,
            };
        }
        // A component: smallest M with lower < M ≤ upper and M normal in upper.
        let component = (0..self.len())
            .filter(|&m| {
                self.order(m) > self.order(lower)
                    && self.leq(lower, m)
                    && self.leq(m, upper)
                    && self.is_normalized_by(m, upper)
            })
            .min_by_key(|&m| self.order(m))
            .expect("upper itself qualifies");
        let s = (self.order(component) / self.order(lower)) as u64;
        let mut r = 0;
        let mut rest = order;
        while rest > 1 && rest.is_multiple_of(s) {
            rest /= s;
            r += 1;
        }
        ChiefFactor {
            upper,
            lower,
            simple: SimpleType::from_order(s, false),
            multiplicity: r,
            order,
        }
    }

    /// Chief series built bottom-up: at each step take a minimal normal
    /// subgroup of `G/N` (chosen by `choice`).
    pub fn chief_series(&self, choice: ChiefChoice) -> ChiefSeries {
        let normals = self.normal_subgroups();
        let mut chain = alloc::vec![self.trivial()];
        let mut current = self.trivial();
        while current != self.top() {
            let above: Vec<NodeId> = normals
                .iter()
                .copied()
                .filter(|&m| m != current && self.order(m) > self.order(current) && self.leq(current, m))
                .collect();
            let minimal = above.iter().copied().filter(|&m| {
                !above.iter().any(|&k| k != m && self.order(k) < self.order(m) && self.leq(k, m))
            });
            let next = match choice {
                ChiefChoice::First => minimal.min(),
                ChiefChoice::Last => minimal.max(),
            }
            .expect("G itself lies above every proper normal subgroup");
            chain.push(next);
            current = next;
        }
        chain.reverse();
        let factors = chain.windows(2).map(|w| self.classify_factor(w[0], w[1])).collect();
        ChiefSeries {
            nodes: chain,
            factors,
        }
    }

    /// `C_G(upper/lower)`: elements acting trivially by conjugation on the factor.
    pub fn factor_centralizer(&self, upper: NodeId, lower: NodeId) -> Result<NodeId, GroupError> {
        if !self.is_normal(upper) || !self.is_normal(lower) {
            return Err(GroupError::NotNormal);
        }
        let t = self.table();
        let gens = self.generators(upper);
        let elems: Vec<usize> = (0..self.group_order())
            .filter(|&x| {
                gens.iter().all(|&m| self.contains_element(lower, t.commutator(x as u32, m) as usize))
            })
            .collect();
        Ok(self.find_elements(&elems).expect("centralizers are subgroups"))
    }

    /// `G/N` acting on the right cosets of `N`.
    pub fn quotient(&self, n: NodeId) -> Result<PermGroup, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let t = self.table();
        let size = self.group_order();
        let mut coset = alloc::vec![u32::MAX; size];
        let n_elems = self.elements(n);
        let mut count = 0u32;
        for x in 0..size {
            if coset[x] != u32::MAX {
                continue;
            }
            for &h in &n_elems {
                coset[t.mul(h as u32, x as u32) as usize] = count;
            }
            count += 1;
        }
        // Representative of each coset.
        let mut rep = alloc::vec![0u32; count as usize];
        for x in (0..size).rev() {
            rep[coset[x] as usize] = x as u32;
        }
        let gens = self
            .group_generators()
            .iter()
            .map(|&s| {
                let images = rep.iter().map(|&r| coset[t.mul(r, s) as usize]).collect();
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::close(count as usize, gens, DEFAULT_MAX_ORDER)
    }

    /// `L = G / C_G(upper/lower)`.
    pub fn centralizer_quotient(&self, factor: &ChiefFactor) -> Result<PermGroup, GroupError> {
        let c = self.factor_centralizer(factor.upper, factor.lower)?;
        self.quotient(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::lattice::Budget;

    fn lattice(g: &PermGroup) -> SubgroupLattice {
        SubgroupLattice::build(g, Budget::default()).unwrap()
    }

    fn orders(l: &SubgroupLattice, nodes: &[NodeId]) -> Vec<usize> {
        nodes.iter().map(|&k| l.order(k)).collect()
    }

    #[test]
    fn normal_subgroups_examples() {
        let s4 = builtin::symmetric(4);
        let l = lattice(&s4);
        assert_eq!(orders(&l, &l.normal_subgroups()), alloc::vec![1, 4, 12, 24]);
        let l = lattice(&builtin::alternating(5));
        assert_eq!(orders(&l, &l.normal_subgroups()), alloc::vec![1, 60]);
        let l = lattice(&builtin::klein_four());
        assert_eq!(l.normal_subgroups().len(), 5);
    }

    #[test]
    fn quotients() {
        let s4 = builtin::symmetric(4);
        let l = lattice(&s4);
        let normals = l.normal_subgroups();
        let q = l.quotient(normals[1]).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        let q = l.quotient(normals[0]).unwrap();
        assert_eq!((q.order(), q.degree()), (24, 24));
        assert_eq!(l.quotient(normals[2]).unwrap().order(), 2);
        let not_normal = (0..l.len()).find(|&k| !l.is_normal(k)).unwrap();
        assert_eq!(l.quotient(not_normal).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn frattini_examples() {
        let l = lattice(&builtin::symmetric(4));
        assert_eq!(l.order(l.frattini()), 1);
        let l = lattice(&builtin::cyclic(4));
        assert_eq!(l.order(l.frattini()), 2);
        let l = lattice(&builtin::klein_four());
        assert_eq!(l.order(l.frattini()), 1);
        let l = lattice(&builtin::quaternion());
        assert_eq!(l.order(l.frattini()), 2);
    }

    #[test]
    fn chief_series_examples() {
        let l = lattice(&builtin::symmetric(4));
        let cs = l.chief_series(ChiefChoice::First);
        assert_eq!(orders(&l, &cs.nodes), alloc::vec![24, 12, 4, 1]);
        let labels: Vec<String> = cs.factors.iter().map(|f| f.label()).collect();
        assert_eq!(labels, alloc::vec!["C2", "C3", "C2^2"]);

        let l = lattice(&builtin::alternating(5));
        let cs = l.chief_series(ChiefChoice::First);
        assert_eq!(cs.factors.len(), 1);
        assert_eq!(cs.factors[0].simple, SimpleType::Psl2(5));
        assert_eq!(cs.factors[0].multiplicity, 1);

        let l = lattice(&builtin::cyclic(6));
        let mut primes: Vec<SimpleType> =
            l.chief_series(ChiefChoice::First).factors.into_iter().map(|f| f.simple).collect();
        primes.sort();
        assert_eq!(primes, alloc::vec![SimpleType::Cyclic(2), SimpleType::Cyclic(3)]);
    }

    #[test]
    fn a5_squared_factor_has_multiplicity_two() {
        let a5 = builtin::alternating(5);
        let g = builtin::direct_product(&a5, &a5);
        let l = SubgroupLattice::build(&g, Budget { max_order: 4000, max_subgroups: 100_000 });
        // A5 × A5 has a lattice of manageable size; check the top factor is A5 (the
        // series passes through one of the two direct factors).
        let l = l.unwrap();
        let cs = l.chief_series(ChiefChoice::First);
        assert_eq!(cs.factors.len(), 2);
        assert!(cs.factors.iter().all(|f| f.simple == SimpleType::Psl2(5) && f.multiplicity == 1));
        let f = l.classify_factor(l.top(), l.trivial());
        assert_eq!((f.simple, f.multiplicity), (SimpleType::Psl2(5), 2));
    }

    #[test]
    fn centralizer_quotients() {
        let s4 = builtin::symmetric(4);
        let l = lattice(&s4);
        let cs = l.chief_series(ChiefChoice::First);
        // A4/V4: S4 acts through S4/A4, so L has order 2.
        assert_eq!(l.centralizer_quotient(&cs.factors[1]).unwrap().order(), 2);
        // V4: centralizer V4, L = S4/V4 ≅ S3.
        let lq = l.centralizer_quotient(&cs.factors[2]).unwrap();
        assert_eq!(lq.order(), 6);
        assert!(!lq.is_abelian());

        let a5 = builtin::alternating(5);
        let l = lattice(&a5);
        let cs = l.chief_series(ChiefChoice::First);
        assert_eq!(l.centralizer_quotient(&cs.factors[0]).unwrap().order(), 60);

        let c6 = builtin::cyclic(6);
        let l = lattice(&c6);
        for f in &l.chief_series(ChiefChoice::First).factors {
            assert_eq!(l.centralizer_quotient(f).unwrap().order(), 1);
        }
    }
}
