//! Finite permutation groups with a fully materialized element table.

use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::error::GroupError;
use crate::perm::Permutation;

/// Default refusal threshold for [`PermGroup::close`].
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// A finite permutation group given by generators, with every element
/// enumerated.
///
/// Elements are stored as flat image arrays and addressed by their index in
/// enumeration order; index 0 is the identity. Lookups go through a base: a
/// list of points whose images determine an element uniquely.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    flat: Vec<u32>,
    order: usize,
    base: Vec<u32>,
    lookup: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl core::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Closes `generators` under composition, refusing groups larger than `max_order`.
    pub fn close(
        degree: usize,
        generators: Vec<Permutation>,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let hasher = DefaultHashBuilder::default();
        let mut flat: Vec<u32> = (0..degree as u32).collect();
        let mut seen: HashTable<u32> = HashTable::new();
        let h0 = hasher.hash_one(&flat[..]);
        seen.insert_unique(h0, 0, |&i| hasher.hash_one(slice(&flat, degree, i)));
        let mut order = 1usize;
        let mut cursor = 0usize;
        let mut scratch = alloc::vec![0u32; degree];
        while cursor < order {
            for g in &generators {
                for (x, out) in scratch.iter_mut().enumerate() {
                    *out = g.images()[flat[cursor * degree + x] as usize];
                }
                let h = hasher.hash_one(&scratch[..]);
                let present = seen
                    .find(h, |&i| slice(&flat, degree, i) == &scratch[..])
                    .is_some();
                if !present {
                    if order >= max_order {
                        return Err(GroupError::OrderBoundExceeded { bound: max_order });
                    }
                    flat.extend_from_slice(&scratch);
                    seen.insert_unique(h, order as u32, |&i| {
                        hasher.hash_one(slice(&flat, degree, i))
                    });
                    order += 1;
                }
            }
            cursor += 1;
        }
        drop(seen);

        let base = find_base(&flat, degree, order);
        let mut group = Self {
            degree,
            generators,
            flat,
            order,
            base,
            lookup: HashTable::new(),
            hasher,
        };
        group.rebuild_lookup();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::close(degree, Vec::new(), 1).expect("trivial group")
    }

    fn rebuild_lookup(&mut self) {
        let mut table = HashTable::with_capacity(self.order);
        let mut key = alloc::vec![0u32; self.base.len()];
        for i in 0..self.order {
            for (k, &b) in self.base.iter().enumerate() {
                key[k] = self.flat[i * self.degree + b as usize];
            }
            let h = self.hasher.hash_one(&key[..]);
            table.insert_unique(h, i as u32, |&j| {
                let k: Vec<u32> =
                    self.base.iter().map(|&b| self.flat[j as usize * self.degree + b as usize]).collect();
                self.hasher.hash_one(&k[..])
            });
        }
        self.lookup = table;
    }

    fn find_key(&self, key: &[u32]) -> Option<usize> {
        let h = self.hasher.hash_one(key);
        self.lookup
            .find(h, |&i| {
                self.base
                    .iter()
                    .zip(key)
                    .all(|(&b, &k)| self.flat[i as usize * self.degree + b as usize] == k)
            })
            .map(|&i| i as usize)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    /// Image array of element `i`.
    pub fn element(&self, i: usize) -> &[u32] {
        slice(&self.flat, self.degree, i as u32)
    }

    pub fn permutation(&self, i: usize) -> Permutation {
        Permutation::from_images(self.element(i).to_vec()).expect("stored elements are bijections")
    }

    /// Index of `p` in the element table, if `p` belongs to the group.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let i = self.find_key(&key)?;
        (self.element(i) == p.images()).then_some(i)
    }

    /// Index of the product `element(i) * element(j)` (apply `i`, then `j`).
    pub fn product(&self, i: usize, j: usize) -> usize {
        let ei = self.element(i);
        let ej = self.element(j);
        let mut key = [0u32; 16];
        if self.base.len() <= key.len() {
            for (k, &b) in self.base.iter().enumerate() {
                key[k] = ej[ei[b as usize] as usize];
            }
            self.find_key(&key[..self.base.len()]).expect("closed under products")
        } else {
            let key: Vec<u32> = self.base.iter().map(|&b| ej[ei[b as usize] as usize]).collect();
            self.find_key(&key).expect("closed under products")
        }
    }

    pub fn inverse(&self, i: usize) -> usize {
        let e = self.element(i);
        let mut inv = alloc::vec![0u32; self.degree];
        for (x, &y) in e.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| inv[b as usize]).collect();
        self.find_key(&key).expect("closed under inverses")
    }

    /// Indices of the generators in the element table.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generator is an element"))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(k, a)| g[k + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Element orders.
    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.product(x, i);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, which must be elements of this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &gens {
            if self.index_of(g).is_none() {
                return Err(GroupError::InvalidParameter(alloc::format!(
                    "{g} is not an element of the group"
                )));
            }
        }
        Self::close(self.degree, gens, self.order)
    }
}

fn slice(flat: &[u32], degree: usize, i: u32) -> &[u32] {
    let i = i as usize;
    &flat[i * degree..(i + 1) * degree]
}

/// Greedy base: repeatedly pick a point moved by some element that fixes the
/// points chosen so far.
fn find_base(flat: &[u32], degree: usize, order: usize) -> Vec<u32> {
    let mut remaining: Vec<usize> = (1..order).collect();
    let mut base = Vec::new();
    while let Some(&e) = remaining.first() {
        let img = slice(flat, degree, e as u32);
        let x = (0..degree).find(|&x| img[x] as usize != x).expect("non-identity moves a point");
        base.push(x as u32);
        remaining.retain(|&e| flat[e * degree + x] as usize == x);
    }
    base
}

/// Multiplication table of a group, column major: `col(j)[i] = i * j`.
pub struct CayleyTable {
    n: usize,
    cols: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    pub fn new(group: &PermGroup) -> Self {
        let n = group.order();
        let mut cols = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                cols.push(group.product(i, j) as u32);
            }
        }
        let inv = (0..n).map(|i| group.inverse(i) as u32).collect();
        Self { n, cols, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.cols[j as usize * self.n + i as usize]
    }

    /// All products `i * j` for fixed `j`.
    #[inline]
    pub fn column(&self, j: u32) -> &[u32] {
        let j = j as usize;
        &self.cols[j * self.n..(j + 1) * self.n]
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `x^{-1} e x`.
    #[inline]
    pub fn conj(&self, e: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), e), x)
    }

    /// `a^{-1} b^{-1} a b`.
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }
}
