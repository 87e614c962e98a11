//! Almost simple groups, and `PSL(2,q) ≤ PGL(2,q)` acting on the projective line.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::error::GroupError;
use crate::group::{PermGroup, DEFAULT_MAX_ORDER};
use crate::perm::Permutation;

/// Largest field size accepted by [`make_psl2`] unless the caller raises it.
pub const DEFAULT_MAX_Q: u64 = 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Psl2Variant {
    Psl,
    Pgl,
}

impl Psl2Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Psl2Variant::Psl => "psl",
            Psl2Variant::Pgl => "pgl",
        }
    }
}

impl fmt::Display for Psl2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Psl2Variant {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "psl" => Ok(Psl2Variant::Psl),
            "pgl" => Ok(Psl2Variant::Pgl),
            other => Err(GroupError::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

/// An almost simple group `X` together with its socle `S`.
#[derive(Clone, Debug)]
pub struct AlmostSimpleSpec {
    pub group: PermGroup,
    pub socle: PermGroup,
    pub label: String,
}

impl AlmostSimpleSpec {
    /// Validates that `socle` is a nonabelian simple normal subgroup of
    /// `group` with trivial centralizer.
    pub fn new(group: PermGroup, socle: PermGroup, label: impl Into<String>) -> Result<Self, GroupError> {
        if socle.degree() != group.degree() {
            return Err(GroupError::InvalidParameter("socle and group act on different points".into()));
        }
        let socle_gens = socle.generators();
        if socle_gens.iter().any(|s| group.index_of(s).is_none()) {
            return Err(GroupError::InvalidParameter("socle is not a subgroup".into()));
        }
        for g in group.generators() {
            let gi = g.inverse();
            for s in socle_gens {
                if socle.index_of(&gi.then(s).then(g)).is_none() {
                    return Err(GroupError::NotNormal);
                }
            }
        }
        if socle.is_abelian() {
            return Err(GroupError::InvalidParameter("socle is abelian".into()));
        }
        if !is_simple(&socle) {
            return Err(GroupError::InvalidParameter("socle is not simple".into()));
        }
        for i in 1..group.order() {
            let x = group.permutation(i);
            if socle_gens.iter().all(|s| x.then(s) == s.then(&x)) {
                return Err(GroupError::InvalidParameter(
                    "socle has a nontrivial centralizer".into(),
                ));
            }
        }
        Ok(Self {
            group,
            socle,
            label: label.into(),
        })
    }

    /// Indices, in `group`'s element table, of the socle's elements.
    pub fn socle_elements(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.socle.order())
            .map(|i| self.group.index_of(&self.socle.permutation(i)).expect("socle ≤ group"))
            .collect();
        v.sort_unstable();
        v
    }
}

/// A nontrivial group is simple when the normal closure of every
/// non-identity element is the whole group.
pub fn is_simple(group: &PermGroup) -> bool {
    let n = group.order();
    if n == 1 {
        return false;
    }
    let gens = group.generator_indices();
    let mut classified = alloc::vec![false; n];
    classified[0] = true;
    for x in 1..n {
        if classified[x] {
            continue;
        }
        // Conjugacy class of x.
        let mut class = alloc::vec![x];
        classified[x] = true;
        let mut k = 0;
        while k < class.len() {
            for &g in &gens {
                let c = group.product(group.product(group.inverse(g), class[k]), g);
                if !classified[c] {
                    classified[c] = true;
                    class.push(c);
                }
            }
            k += 1;
        }
        // Subgroup generated by the class.
        let mut inside = alloc::vec![false; n];
        inside[0] = true;
        let mut elems = alloc::vec![0usize];
        let mut k = 0;
        while k < elems.len() {
            for &c in &class {
                let y = group.product(elems[k], c);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            k += 1;
        }
        if elems.len() != n {
            return false;
        }
    }
    true
}

fn primitive_root(q: u64) -> u64 {
    let phi = q - 1;
    let factors = arith::prime_divisors(phi as u128);
    (2..q)
        .find(|&a| factors.iter().all(|&p| pow_mod(a, phi / p as u64, q) != 1))
        .expect("prime fields have primitive roots")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `z ↦ (a z + b)/(c z + d)` on points `0..q` with `q` standing for `∞`.
fn moebius_map(q: u64, a: u64, b: u64, c: u64, d: u64) -> Permutation {
    let inf = q;
    let inv = |x: u64| pow_mod(x, q - 2, q);
    let images = (0..=q)
        .map(|z| {
            let (num, den) = if z == inf {
                (a % q, c % q)
            } else {
                ((a * z + b) % q, (c * z + d) % q)
            };
            (if den == 0 { inf } else { num * inv(den) % q }) as u32
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrices act bijectively")
}

/// `PSL(2,q)` or `PGL(2,q)` acting on the `q+1` points of the projective line,
/// with socle `PSL(2,q)`.
pub fn make_psl2(q: u64, variant: Psl2Variant, max_q: u64) -> Result<AlmostSimpleSpec, GroupError> {
    if q < 5 || q.is_multiple_of(2) || !arith::is_prime(q as u128) {
        return Err(GroupError::InvalidParameter(format!("q = {q} must be an odd prime ≥ 5")));
    }
    if q > max_q {
        return Err(GroupError::InvalidParameter(format!("q = {q} exceeds the configured maximum {max_q}")));
    }
    let a = primitive_root(q);
    let degree = (q + 1) as usize;
    let translation = moebius_map(q, 1, 1, 0, 1);
    let square = moebius_map(q, a * a % q, 0, 0, 1);
    let inversion = moebius_map(q, 0, q - 1, 1, 0);
    let psl_gens = alloc::vec![translation, square, inversion];
    let socle = PermGroup::close(degree, psl_gens.clone(), DEFAULT_MAX_ORDER)?;
    let (group, label) = match variant {
        Psl2Variant::Psl => (socle.clone(), format!("PSL(2,{q})")),
        Psl2Variant::Pgl => {
            let mut gens = psl_gens;
            gens.push(moebius_map(q, a, 0, 0, 1));
            (PermGroup::close(degree, gens, DEFAULT_MAX_ORDER)?, format!("PGL(2,{q})"))
        }
    };
    Ok(AlmostSimpleSpec {
        group,
        socle,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_degrees() {
        let x = make_psl2(5, Psl2Variant::Psl, DEFAULT_MAX_Q).unwrap();
        assert_eq!((x.group.order(), x.group.degree()), (60, 6));
        let x = make_psl2(7, Psl2Variant::Pgl, DEFAULT_MAX_Q).unwrap();
        assert_eq!((x.group.order(), x.group.degree()), (336, 8));
        assert_eq!(x.socle.order(), 168);
        let x = make_psl2(11, Psl2Variant::Psl, DEFAULT_MAX_Q).unwrap();
        assert_eq!((x.group.order(), x.group.degree()), (660, 12));
    }

    #[test]
    fn invalid_parameters() {
        for q in [2, 3, 4, 9, 15] {
            assert!(make_psl2(q, Psl2Variant::Psl, DEFAULT_MAX_Q).is_err());
        }
        assert!(make_psl2(67, Psl2Variant::Psl, DEFAULT_MAX_Q).is_err());
    }

    #[test]
    fn constructed_specs_validate() {
        for q in [5, 7] {
            let x = make_psl2(q, Psl2Variant::Pgl, DEFAULT_MAX_Q).unwrap();
            let checked = AlmostSimpleSpec::new(x.group.clone(), x.socle.clone(), x.label.clone());
            assert!(checked.is_ok());
        }
        let s5 = crate::builtin::symmetric(5);
        assert!(!is_simple(&s5));
        assert!(is_simple(&crate::builtin::alternating(5)));
        // S4 has no nonabelian simple normal subgroup.
        let s4 = crate::builtin::symmetric(4);
        let v4 = s4
            .subgroup(alloc::vec![
                Permutation::from_cycles(4, &[[0u32, 1], [2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[[0u32, 2], [1, 3]]).unwrap(),
            ])
            .unwrap();
        assert!(AlmostSimpleSpec::new(s4, v4, "S4").is_err());
    }
}
