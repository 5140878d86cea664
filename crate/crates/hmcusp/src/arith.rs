//! Small integer helpers shared by the exact modules.

use num_integer::{Integer, Roots};

/// Nonnegative gcd.
pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Extended gcd: returns (x, y, g) with a*x + b*y = g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_s, -old_t, -old_r)
    } else {
        (old_s, old_t, old_r)
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    n.sqrt()
}

/// True if `n` is a perfect square.
pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

/// floor(a / b) for b != 0.
pub fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

/// ceil(a / b) for b != 0.
pub fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Rational sum of divisors σ(n) for n >= 1.
pub fn sigma(n: u128) -> u128 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product()
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Kronecker symbol (d | n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut result = 1i32;
    while n.is_multiple_of(2) {
        n /= 2;
        let r = d.rem_euclid(8);
        match r {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    result * jacobi(d, n)
}

/// Jacobi symbol (a | n) for odd n >= 1.
pub fn jacobi(a: i64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// True if `d` is the discriminant of a real quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let squarefree = |m: i64| factorize(m as u128).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_small_cases() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(5, 3), -1);
        assert_eq!(kronecker(5, 11), 1);
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(12, 2), 0);
    }

    #[test]
    fn fundamental_discriminants() {
        let fund: Vec<i64> = (2..60)
            .filter(|&d| is_fundamental_discriminant(d))
            .collect();
        assert_eq!(
            fund,
            vec![5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53, 56, 57]
        );
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12, 18), (-7, 3), (0, 5), (5, 0), (-4, -6)] {
            let (x, y, g) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd(a, b));
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(6), 12);
        assert_eq!(sigma(16), 31);
    }
}
