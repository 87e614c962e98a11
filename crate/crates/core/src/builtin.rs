//! Standard small groups used by tests and the command line.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::group::{PermGroup, DEFAULT_MAX_ORDER};
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<u32> = points.into_iter().map(|x| x as u32).collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

fn close(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::close(degree, gens, DEFAULT_MAX_ORDER).expect("builtin groups are small")
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    let degree = n.max(1);
    if n < 2 {
        return PermGroup::trivial(degree);
    }
    let mut gens = alloc::vec![cycle(n, [0, 1])];
    if n > 2 {
        gens.push(cycle(n, 0..n));
    }
    close(n, gens)
}

/// Alternating group on `n` points.
pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let mut gens = alloc::vec![cycle(n, [0, 1, 2])];
    if n > 3 {
        gens.push(if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) });
    }
    close(n, gens)
}

/// Cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    close(n, alloc::vec![cycle(n, 0..n)])
}

/// Dihedral group of order `2m` acting on the vertices of an `m`-gon (`m ≥ 3`).
pub fn dihedral(m: usize) -> PermGroup {
    assert!(m >= 3, "dihedral groups need at least three vertices");
    let reflection: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
    close(
        m,
        alloc::vec![cycle(m, 0..m), Permutation::from_images(reflection).expect("bijection")],
    )
}

/// `C2 × C2` on four points.
pub fn klein_four() -> PermGroup {
    let a = Permutation::from_cycles(4, &[[0u32, 1], [2, 3]]).expect("valid");
    let b = Permutation::from_cycles(4, &[[0u32, 2], [1, 3]]).expect("valid");
    close(4, alloc::vec![a, b])
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> PermGroup {
    // Point 2u + s encodes sign (-1)^s times unit u ∈ {1, i, j, k}.
    // Unit products: u*v = sign * w.
    const UNIT: [[(u8, u8); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let right_mul = |v: usize| -> Permutation {
        let images = (0..8)
            .map(|p| {
                let (u, s) = (p / 2, p % 2);
                let (w, t) = UNIT[u][v];
                (2 * w as usize + ((s + t as usize) % 2)) as u32
            })
            .collect();
        Permutation::from_images(images).expect("bijection")
    };
    close(8, alloc::vec![right_mul(1), right_mul(2)])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let total = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| g.shifted(0, total))
        .chain(b.generators().iter().map(|g| g.shifted(a.degree(), total)))
        .collect();
    close(total, gens)
}

/// The standard test corpus: `C2`…`C12`, `S3`, `S4`, `A4`, `A5`, `D8`,
/// `Q8`, `C2xC2` and `PSL(2,5)` on six points.
pub fn corpus() -> Vec<(String, PermGroup)> {
    let mut v: Vec<(String, PermGroup)> = (2..=12).map(|n| (format!("C{n}"), cyclic(n))).collect();
    v.push(("S3".into(), symmetric(3)));
    v.push(("S4".into(), symmetric(4)));
    v.push(("A4".into(), alternating(4)));
    v.push(("A5".into(), alternating(5)));
    v.push(("D8".into(), dihedral(4)));
    v.push(("Q8".into(), quaternion()));
    v.push(("C2xC2".into(), klein_four()));
    let psl = crate::psl2::make_psl2(5, crate::psl2::Psl2Variant::Psl, 5).expect("PSL(2,5)");
    v.push(("PSL(2,5)".into(), psl.group));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(6).order(), 360);
        assert_eq!(cyclic(12).order(), 12);
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(klein_four().order(), 4);
        assert_eq!(quaternion().order(), 8);
        assert!(!quaternion().is_abelian());
        assert_eq!(direct_product(&alternating(5), &cyclic(2)).order(), 120);
    }
}
