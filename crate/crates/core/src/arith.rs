//! Small-integer arithmetic functions.
//!
//! All inputs in practice stay below ~10⁶ (they are denominators of expansion
//! bases), so factorization is plain trial division.

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Ω(n): number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    factorize(n).iter().map(|&(_, e)| e).sum()
}

/// ω(n): number of distinct prime factors.
pub fn small_omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Liouville's λ(n) = (-1)^Ω(n).
pub fn liouville(n: u64) -> i32 {
    if big_omega(n) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut p = 5;
    while p * p <= n {
        if n % p == 0 || n % (p + 2) == 0 {
            return false;
        }
        p += 6;
    }
    true
}

/// Ascending primes, unbounded.
pub fn prime_stream() -> impl Iterator<Item = u64> + Clone {
    (2u64..).filter(|&n| is_prime(n))
}

/// `(p, k)` for every prime power `p^k`, ordered by the value `p^k`.
pub fn prime_power_stream() -> impl Iterator<Item = (u64, u64, u32)> + Clone {
    (2u64..).filter_map(|n| {
        let f = factorize(n);
        if f.len() == 1 {
            Some((n, f[0].0, f[0].1))
        } else {
            None
        }
    })
}

/// Thue–Morse sign at rank `n ≥ 1`: +1 when the letter is 0.
///
/// Ranks start at 1 over the word `0110100110010110…`, so the letter at rank
/// n is the bit parity of n − 1.
pub fn thue_morse_sign(n: u64) -> i32 {
    assert!(n >= 1, "Thue-Morse ranks start at 1");
    if (n - 1).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Generalized harmonic number H_n^(k) as an exact fraction.
pub fn harmonic(n: u64, k: u32) -> crate::Rational {
    use num_bigint::BigInt;
    let mut acc = crate::Rational::zero();
    for m in 1..=n {
        acc += &crate::Rational::new(1, num_traits::pow(BigInt::from(m), k as usize));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn factorization_edges() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(45), vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(243), vec![(3, 5)]);
        assert_eq!(factorize(539), vec![(7, 2), (11, 1)]);
        assert_eq!(factorize(999_983), vec![(999_983, 1)]);
    }

    #[test]
    fn omega_values() {
        assert_eq!(big_omega(1), 0);
        assert_eq!(big_omega(45), 3);
        assert_eq!(big_omega(243), 5);
        assert_eq!(small_omega(45), 2);
    }

    #[test]
    fn mobius_and_liouville() {
        assert_eq!(mobius(1), 1);
        assert_eq!(liouville(1), 1);
        assert_eq!(liouville(12), -1);
        assert_eq!(mobius(45), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn multiplicativity() {
        for m in 1..=200u64 {
            for n in 1..=200u64 {
                assert_eq!(liouville(m * n), liouville(m) * liouville(n));
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(mobius(m * n), mobius(m) * mobius(n));
                }
            }
        }
    }

    #[test]
    fn primes() {
        let p: Vec<u64> = prime_stream().take(10).collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let pp: Vec<u64> = prime_power_stream().take(8).map(|t| t.0).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11]);
    }

    fn thue_morse_word(len: usize) -> Vec<u8> {
        let mut w = vec![0u8];
        while w.len() < len {
            let next: Vec<u8> = w.iter().flat_map(|&b| if b == 0 { [0, 1] } else { [1, 0] }).collect();
            w = next;
        }
        w.truncate(len);
        w
    }

    #[test]
    fn thue_morse_matches_substitution() {
        let signs: Vec<i32> = (1..=8).map(thue_morse_sign).collect();
        assert_eq!(signs, vec![1, -1, -1, 1, -1, 1, 1, -1]);
        let word = thue_morse_word(4096);
        for (i, &b) in word.iter().enumerate() {
            let expected = if b == 0 { 1 } else { -1 };
            assert_eq!(thue_morse_sign(i as u64 + 1), expected);
        }
    }

    #[test]
    fn thue_morse_is_cube_free() {
        let len = 3 * 1024;
        let w: Vec<i32> = (1..=len as u64).map(thue_morse_sign).collect();
        for block in 1..=len / 3 {
            for start in 0..=(len - 3 * block) {
                let a = &w[start..start + block];
                let b = &w[start + block..start + 2 * block];
                let c = &w[start + 2 * block..start + 3 * block];
                assert!(!(a == b && b == c), "cube at {start} with block {block}");
            }
        }
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0, 1), q(0, 1));
        assert_eq!(harmonic(3, 1), q(11, 6));
        assert_eq!(harmonic(3, 2), q(49, 36));
    }
}
