//! Small integer helpers: primality, factorization, valuations, exact roots.

use alloc::vec::Vec;

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u128> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `q`-adic valuation of `n`: the largest `e` with `q^e | n`.
///
/// Panics if `n == 0` or `q < 2`.
pub fn valuation(n: u128, q: u128) -> u32 {
    assert!(n >= 1, "valuation of zero");
    assert!(q >= 2, "valuation base must be at least 2");
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(q) {
        n /= q;
        e += 1;
    }
    e
}

/// Returns `m` with `m^r == n`, if it exists.
pub fn exact_root(n: u128, r: u32) -> Option<u128> {
    if r == 0 {
        return None;
    }
    if r == 1 || n < 2 {
        return Some(n);
    }
    // Largest m with m^r <= n, by bisection.
    let (mut lo, mut hi) = (1u128, 1u128 << (128 / r + 1).min(127));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match mid.checked_pow(r) {
            Some(p) if p <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (lo.checked_pow(r) == Some(n)).then_some(lo)
}

pub fn gcd(a: u128, b: u128) -> u128 {
    num_integer::Integer::gcd(&a, &b)
}

/// Primes in ascending order up to and including `bound`.
pub fn primes_up_to(bound: u128) -> Vec<u128> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(18, 3), 2);
        assert_eq!(valuation(7, 5), 0);
        assert_eq!(valuation(48, 2), 4);
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(21u128.pow(20), 20), Some(21));
        assert_eq!(exact_root(225, 2), Some(15));
        assert_eq!(exact_root(226, 2), None);
        assert_eq!(exact_root(1, 7), Some(1));
        assert_eq!(exact_root(343, 3), Some(7));
        assert_eq!(exact_root(3u128.pow(80), 40), Some(9));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_divisors(1), Vec::<u128>::new());
        assert!(is_prime(29) && !is_prime(1) && !is_prime(91));
    }
}
