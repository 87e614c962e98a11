//! Subgroup lattices of finite permutation groups.
//!
//! Enumeration works up to conjugacy. Every subgroup is generated by elements
//! of prime-power order, so starting from the trivial subgroup and repeatedly
//! joining a class representative `H` with one cyclic subgroup `⟨g⟩` of
//! prime-power order reaches every class. Each newly found subgroup has its
//! whole conjugacy class registered at once, so only representatives are ever
//! extended.
//!
//! Subgroups are bitsets over the parent's element table. Möbius values are
//! computed top-down, once per conjugacy class.

use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::arith;
use crate::error::GroupError;
use crate::group::{CayleyTable, PermGroup};

pub type NodeId = usize;

/// Hard limits for lattice construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order whose lattice may be built.
    pub max_order: usize,
    /// Largest number of subgroups that may be registered.
    pub max_subgroups: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_order: 10_000,
            max_subgroups: 250_000,
        }
    }
}

/// Cooperative cancellation, polled while a lattice is being built.
pub trait Interrupt {
    fn should_stop(&self) -> bool;
}

/// Never interrupts.
pub struct NoInterrupt;

impl Interrupt for NoInterrupt {
    fn should_stop(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug)]
struct Node {
    bits: Vec<u64>,
    order: usize,
    class: usize,
}

/// One conjugacy class of subgroups; `members[0]` is the representative.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub members: Vec<NodeId>,
    /// Generators of the representative, as element indices.
    pub generators: Vec<u32>,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeStats {
    pub subgroups: usize,
    pub classes: usize,
}

pub struct SubgroupLattice {
    table: CayleyTable,
    group_generators: Vec<u32>,
    words: usize,
    nodes: Vec<Node>,
    classes: Vec<ConjugacyClass>,
    /// Strict overgroups of each class representative.
    overgroups: Vec<Vec<NodeId>>,
    moebius: Vec<i64>,
    lookup: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl core::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group_order", &self.group_order())
            .field("subgroups", &self.nodes.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

// ---------------------------------------------------------------------------
// bitset helpers

#[inline]
fn bit(bits: &[u64], i: u32) -> bool {
    bits[(i >> 6) as usize] >> (i & 63) & 1 == 1
}

#[inline]
fn set_bit(bits: &mut [u64], i: u32) {
    bits[(i >> 6) as usize] |= 1 << (i & 63);
}

fn is_subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().zip(big).all(|(a, b)| a & !b == 0)
}

fn ones(bits: &[u64]) -> impl Iterator<Item = u32> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        core::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let t = word.trailing_zeros();
            word &= word - 1;
            Some((w as u32) * 64 + t)
        })
    })
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

// ---------------------------------------------------------------------------
// construction

struct Builder<'a> {
    table: &'a CayleyTable,
    ggens: Vec<u32>,
    words: usize,
    budget: Budget,
    nodes: Vec<Node>,
    classes: Vec<ConjugacyClass>,
    lookup: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Builder<'_> {
    fn find(&self, bits: &[u64]) -> Option<usize> {
        let h = self.hasher.hash_one(bits);
        self.lookup.find(h, |&i| self.nodes[i as usize].bits == bits).map(|&i| i as usize)
    }

    fn insert(&mut self, node: Node) -> usize {
        let id = self.nodes.len();
        let h = self.hasher.hash_one(&node.bits[..]);
        self.nodes.push(node);
        let (nodes, hasher) = (&self.nodes, &self.hasher);
        self.lookup
            .insert_unique(h, id as u32, |&i| hasher.hash_one(&nodes[i as usize].bits[..]));
        id
    }

    fn conjugate(&self, bits: &[u64], x: u32) -> Vec<u64> {
        let mut out = alloc::vec![0u64; self.words];
        for e in ones(bits) {
            set_bit(&mut out, self.table.conj(e, x));
        }
        out
    }

    /// Registers the conjugacy class of a new subgroup and returns its class id.
    fn register(&mut self, bits: Vec<u64>, order: usize, generators: Vec<u32>) -> Result<usize, GroupError> {
        let class = self.classes.len();
        let first = self.insert(Node { bits, order, class });
        let mut members = alloc::vec![first];
        let mut k = 0;
        while k < members.len() {
            for gi in 0..self.ggens.len() {
                let conj = self.conjugate(&self.nodes[members[k]].bits, self.ggens[gi]);
                if self.find(&conj).is_none() {
                    if self.nodes.len() >= self.budget.max_subgroups {
                        return Err(GroupError::SubgroupBoundExceeded {
                            bound: self.budget.max_subgroups,
                            found: self.nodes.len(),
                            classes: self.classes.len() + 1,
                        });
                    }
                    members.push(self.insert(Node { bits: conj, order, class }));
                }
            }
            k += 1;
        }
        self.classes.push(ConjugacyClass {
            members,
            generators,
            order,
        });
        Ok(class)
    }

    /// `⟨H, g⟩`, built as a union of right cosets of `H`.
    fn extend(&self, h_bits: &[u64], h_elems: &[u32], gens: &[u32], g: u32) -> (Vec<u64>, usize) {
        let mut bits = h_bits.to_vec();
        let mut reps: Vec<u32> = alloc::vec![0];
        let mut size = h_elems.len();
        let n = self.table.order();
        let mut k = 0;
        while k < reps.len() && size < n {
            let x = reps[k];
            for &s in gens.iter().chain(core::iter::once(&g)) {
                let y = self.table.mul(x, s);
                if !bit(&bits, y) {
                    let col = self.table.column(y);
                    for &h in h_elems {
                        set_bit(&mut bits, col[h as usize]);
                    }
                    size += h_elems.len();
                    reps.push(y);
                }
            }
            k += 1;
        }
        if size == n {
            // Fill whole group directly; coset bookkeeping stopped early.
            for (w, word) in bits.iter_mut().enumerate() {
                let lo = w * 64;
                let hi = (lo + 64).min(n);
                *word = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
            }
        }
        (bits, size)
    }
}

impl SubgroupLattice {
    pub fn build(group: &PermGroup, budget: Budget) -> Result<Self, GroupError> {
        Self::build_with_interrupt(group, budget, &NoInterrupt)
    }

    pub fn build_with_interrupt(
        group: &PermGroup,
        budget: Budget,
        interrupt: &dyn Interrupt,
    ) -> Result<Self, GroupError> {
        let n = group.order();
        if n > budget.max_order {
            return Err(GroupError::OrderBoundExceeded {
                bound: budget.max_order,
            });
        }
        let table = CayleyTable::new(group);
        let ggens: Vec<u32> = group.generator_indices().into_iter().map(|i| i as u32).collect();
        let words = n.div_ceil(64);

        let mut b = Builder {
            table: &table,
            ggens,
            words,
            budget,
            nodes: Vec::new(),
            classes: Vec::new(),
            lookup: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        };

        let extenders = prime_power_cyclic_generators(&table);

        let mut trivial = alloc::vec![0u64; words];
        set_bit(&mut trivial, 0);
        b.register(trivial, 1, Vec::new())?;

        let mut next_class = 0;
        while next_class < b.classes.len() {
            if interrupt.should_stop() {
                return Err(GroupError::Interrupted {
                    found: b.nodes.len(),
                    classes: b.classes.len(),
                });
            }
            let rep = b.classes[next_class].members[0];
            let h_bits = b.nodes[rep].bits.clone();
            let h_elems: Vec<u32> = ones(&h_bits).collect();
            let gens = b.classes[next_class].generators.clone();
            if h_elems.len() < n {
                for &g in &extenders {
                    if bit(&h_bits, g) {
                        continue;
                    }
                    let (bits, size) = b.extend(&h_bits, &h_elems, &gens, g);
                    if b.find(&bits).is_none() {
                        let mut new_gens = gens.clone();
                        new_gens.push(g);
                        b.register(bits, size, new_gens)?;
                    }
                }
            }
            next_class += 1;
        }

        let Builder {
            nodes: raw_nodes,
            classes: raw_classes,
            ggens,
            hasher,
            ..
        } = b;
        Self::finish(table, ggens, words, raw_nodes, raw_classes, hasher)
    }

    /// Renumbers nodes by (order, discovery) and computes Möbius values.
    fn finish(
        table: CayleyTable,
        group_generators: Vec<u32>,
        words: usize,
        raw_nodes: Vec<Node>,
        raw_classes: Vec<ConjugacyClass>,
        hasher: DefaultHashBuilder,
    ) -> Result<Self, GroupError> {
        let mut class_order: Vec<usize> = (0..raw_classes.len()).collect();
        class_order.sort_by_key(|&c| (raw_classes[c].order, c));

        let mut slots: Vec<Option<Node>> = raw_nodes.into_iter().map(Some).collect();
        let mut nodes = Vec::with_capacity(slots.len());
        let mut classes = Vec::with_capacity(raw_classes.len());
        for (new_c, &old_c) in class_order.iter().enumerate() {
            let old = &raw_classes[old_c];
            let mut members = Vec::with_capacity(old.members.len());
            for &m in &old.members {
                let mut node = slots[m].take().expect("each node belongs to one class");
                node.class = new_c;
                members.push(nodes.len());
                nodes.push(node);
            }
            classes.push(ConjugacyClass {
                members,
                generators: old.generators.clone(),
                order: old.order,
            });
        }

        let mut lookup = HashTable::with_capacity(nodes.len());
        for (id, node) in nodes.iter().enumerate() {
            let h = hasher.hash_one(&node.bits[..]);
            lookup.insert_unique(h, id as u32, |&i| hasher.hash_one(&nodes[i as usize].bits[..]));
        }

        let mut lattice = Self {
            table,
            group_generators,
            words,
            nodes,
            classes,
            overgroups: Vec::new(),
            moebius: Vec::new(),
            lookup,
            hasher,
        };
        lattice.compute_moebius()?;
        Ok(lattice)
    }

    fn compute_moebius(&mut self) -> Result<(), GroupError> {
        let count = self.nodes.len();
        let mut mu = alloc::vec![0i64; count];
        let mut over = alloc::vec![Vec::new(); self.classes.len()];
        // First node id of each order, to skip smaller subgroups quickly.
        for c in (0..self.classes.len()).rev() {
            let rep = self.classes[c].members[0];
            let h = &self.nodes[rep];
            let start = self.classes[c].members.last().copied().unwrap_or(rep) + 1;
            let mut sum: i64 = 0;
            let mut ups = Vec::new();
            for (k, node) in self.nodes.iter().enumerate().skip(start) {
                if node.order > h.order && node.order % h.order == 0 && is_subset(&h.bits, &node.bits) {
                    sum = sum.checked_add(mu[k]).ok_or(GroupError::MoebiusOverflow)?;
                    ups.push(k);
                }
            }
            let value = if ups.is_empty() { 1 } else { sum.checked_neg().ok_or(GroupError::MoebiusOverflow)? };
            for &m in &self.classes[c].members {
                mu[m] = value;
            }
            over[c] = ups;
        }
        self.moebius = mu;
        self.overgroups = over;
        Ok(())
    }

    // -----------------------------------------------------------------------
    // queries

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn stats(&self) -> LatticeStats {
        LatticeStats {
            subgroups: self.nodes.len(),
            classes: self.classes.len(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// Element indices of the parent group's generators.
    pub fn group_generators(&self) -> &[u32] {
        &self.group_generators
    }

    pub fn trivial(&self) -> NodeId {
        0
    }

    pub fn top(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn order(&self, node: NodeId) -> usize {
        self.nodes[node].order
    }

    /// `|G : H|`.
    pub fn index(&self, node: NodeId) -> usize {
        self.group_order() / self.nodes[node].order
    }

    pub fn bits(&self, node: NodeId) -> &[u64] {
        &self.nodes[node].bits
    }

    /// Sorted element indices of `node`.
    pub fn elements(&self, node: NodeId) -> Vec<usize> {
        ones(&self.nodes[node].bits).map(|e| e as usize).collect()
    }

    pub fn contains_element(&self, node: NodeId, e: usize) -> bool {
        bit(&self.nodes[node].bits, e as u32)
    }

    /// `small ≤ big`.
    pub fn leq(&self, small: NodeId, big: NodeId) -> bool {
        let (s, b) = (&self.nodes[small], &self.nodes[big]);
        b.order % s.order == 0 && is_subset(&s.bits, &b.bits)
    }

    pub fn class_of(&self, node: NodeId) -> usize {
        self.nodes[node].class
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_size(&self, node: NodeId) -> usize {
        self.classes[self.nodes[node].class].members.len()
    }

    pub fn is_normal(&self, node: NodeId) -> bool {
        self.class_size(node) == 1
    }

    pub fn moebius(&self, node: NodeId) -> i64 {
        self.moebius[node]
    }

    pub fn moebius_values(&self) -> &[i64] {
        &self.moebius
    }

    /// Proper subgroup with `G` as its only strict overgroup.
    pub fn is_maximal(&self, node: NodeId) -> bool {
        let ups = &self.overgroups[self.nodes[node].class];
        ups.len() == 1
    }

    /// Maximal subgroups, ascending.
    pub fn maximal_subgroups(&self) -> Vec<NodeId> {
        (0..self.nodes.len()).filter(|&k| self.is_maximal(k)).collect()
    }

    /// Strict overgroups of `node`.
    pub fn overgroups(&self, node: NodeId) -> Vec<NodeId> {
        let c = self.nodes[node].class;
        if self.classes[c].members[0] == node {
            return self.overgroups[c].clone();
        }
        (node + 1..self.nodes.len())
            .filter(|&k| self.nodes[k].order > self.nodes[node].order && self.leq(node, k))
            .collect()
    }

    /// Looks up the node with exactly this element set.
    pub fn find_bits(&self, bits: &[u64]) -> Option<NodeId> {
        if bits.len() != self.words {
            return None;
        }
        let h = self.hasher.hash_one(bits);
        self.lookup.find(h, |&i| self.nodes[i as usize].bits == bits).map(|&i| i as usize)
    }

    /// Looks up the node with exactly these elements.
    pub fn find_elements(&self, elements: &[usize]) -> Option<NodeId> {
        let mut bits = alloc::vec![0u64; self.words];
        for &e in elements {
            if e >= self.group_order() {
                return None;
            }
            set_bit(&mut bits, e as u32);
        }
        self.find_bits(&bits)
    }

    pub fn intersection(&self, a: NodeId, b: NodeId) -> NodeId {
        let bits: Vec<u64> =
            self.nodes[a].bits.iter().zip(&self.nodes[b].bits).map(|(x, y)| x & y).collect();
        self.find_bits(&bits).expect("intersection of subgroups is a subgroup")
    }

    pub fn intersection_order(&self, a: NodeId, b: NodeId) -> usize {
        self.nodes[a].bits.iter().zip(&self.nodes[b].bits).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    /// `|AB| = |A||B| / |A ∩ B|`.
    pub fn product_order(&self, a: NodeId, b: NodeId) -> usize {
        self.order(a) * self.order(b) / self.intersection_order(a, b)
    }

    /// A generating set for `node`, as element indices.
    pub fn generators(&self, node: NodeId) -> Vec<u32> {
        let c = self.nodes[node].class;
        if self.classes[c].members[0] == node {
            return self.classes[c].generators.clone();
        }
        // Greedy: add any element outside the subgroup generated so far.
        let target = &self.nodes[node].bits;
        let mut gens = Vec::new();
        let mut current = alloc::vec![0u64; self.words];
        set_bit(&mut current, 0);
        for e in ones(target) {
            if !bit(&current, e) {
                gens.push(e);
                current = self.close(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by the given elements, as a bitset.
    pub fn close(&self, gens: &[u32]) -> Vec<u64> {
        let mut bits = alloc::vec![0u64; self.words];
        set_bit(&mut bits, 0);
        let mut elems = alloc::vec![0u32];
        let mut k = 0;
        while k < elems.len() {
            for &s in gens {
                let y = self.table.mul(elems[k], s);
                if !bit(&bits, y) {
                    set_bit(&mut bits, y);
                    elems.push(y);
                }
            }
            k += 1;
        }
        bits
    }

    /// Nodes conjugate-invariant under every element of `by`, a subgroup.
    pub fn is_normalized_by(&self, node: NodeId, by: NodeId) -> bool {
        let bits = &self.nodes[node].bits;
        self.generators(by).iter().all(|&x| {
            ones(bits).all(|e| bit(bits, self.table.conj(e, x)))
        })
    }

    /// Covering pairs `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut edges = Vec::new();
        for a in 0..self.nodes.len() {
            let ups: Vec<NodeId> = (a + 1..self.nodes.len())
                .filter(|&b| self.nodes[b].order > self.nodes[a].order && self.leq(a, b))
                .collect();
            for &b in &ups {
                if !ups.iter().any(|&c| c != b && self.nodes[c].order < self.nodes[b].order && self.leq(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    pub fn popcount(&self, bits: &[u64]) -> usize {
        popcount(bits)
    }
}

/// One generator for each cyclic subgroup of prime-power order greater than one.
fn prime_power_cyclic_generators(table: &CayleyTable) -> Vec<u32> {
    let n = table.order();
    let mut covered = alloc::vec![false; n];
    let mut out = Vec::new();
    covered[0] = true;
    for e in 1..n as u32 {
        if covered[e as usize] {
            continue;
        }
        let mut powers = alloc::vec![e];
        let mut x = table.mul(e, e);
        while x != e {
            powers.push(x);
            x = table.mul(x, e);
        }
        let ord = powers.len();
        // Generators of ⟨e⟩ are e^k with gcd(k, ord) = 1; mark them as done.
        for (k, &p) in powers.iter().enumerate() {
            if arith::gcd((k + 1) as u128, ord as u128) == 1 {
                covered[p as usize] = true;
            }
        }
        if arith::factorize(ord as u128).len() == 1 {
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn s3_lattice() {
        let g = builtin::symmetric(3);
        let l = SubgroupLattice::build(&g, Budget::default()).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.classes().len(), 4);
        let mus: Vec<(usize, i64)> = (0..l.len()).map(|k| (l.order(k), l.moebius(k))).collect();
        assert_eq!(mus, alloc::vec![(1, 3), (2, -1), (2, -1), (2, -1), (3, -1), (6, 1)]);
    }

    #[test]
    fn prime_cyclic_lattice() {
        let l = SubgroupLattice::build(&builtin::cyclic(7), Budget::default()).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.moebius(0), -1);
        assert_eq!(l.moebius(1), 1);
    }

    #[test]
    fn a5_lattice_classes() {
        let l = SubgroupLattice::build(&builtin::alternating(5), Budget::default()).unwrap();
        assert_eq!(l.len(), 59);
        assert_eq!(l.classes().len(), 9);
        let mut sizes: Vec<usize> = l.classes().iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        let mut expected = alloc::vec![1, 15, 10, 5, 6, 10, 6, 5, 1];
        expected.sort_unstable();
        assert_eq!(sizes, expected);
        assert_eq!(l.moebius(0), -60);
    }

    #[test]
    fn budget_failures_are_explicit() {
        let g = builtin::symmetric(4);
        let err = SubgroupLattice::build(&g, Budget { max_order: 10, max_subgroups: 100 }).unwrap_err();
        assert_eq!(err, GroupError::OrderBoundExceeded { bound: 10 });
        let err = SubgroupLattice::build(&g, Budget { max_order: 100, max_subgroups: 5 }).unwrap_err();
        assert!(matches!(err, GroupError::SubgroupBoundExceeded { bound: 5, .. }));

        struct Always;
        impl Interrupt for Always {
            fn should_stop(&self) -> bool {
                true
            }
        }
        let err = SubgroupLattice::build_with_interrupt(&g, Budget::default(), &Always).unwrap_err();
        assert!(matches!(err, GroupError::Interrupted { .. }));
    }

    #[test]
    fn hasse_edges_of_klein_four() {
        let l = SubgroupLattice::build(&builtin::klein_four(), Budget::default()).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.hasse_edges().len(), 6);
    }
}
