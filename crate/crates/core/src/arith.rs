//! Elementary number theory used by the bound functions and the rule engine.

use num_rational::Ratio;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; panics on `u128` overflow, which cannot happen for
/// cycle types of degree at most [`crate::partition::MAX_DEGREE`].
pub fn lcm128(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd128(a, b))
        .checked_mul(b)
        .expect("lcm overflows u128")
}

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// `Some((p, f))` when `q = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

/// Number of distinct prime factors.
pub fn nu(n: u64) -> u32 {
    factorize(n).len() as u32
}

/// Primes `>= from` in increasing order, as an endless iterator.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&k| is_prime(k))
}

/// Squarefree divisors of `modulus` paired with their Möbius sign.
fn signed_squarefree_divisors(modulus: u64) -> Vec<(u64, i64)> {
    let primes: Vec<u64> = factorize(modulus).into_iter().map(|(p, _)| p).collect();
    let mut divs = vec![(1u64, 1i64)];
    for p in primes {
        let extra: Vec<(u64, i64)> = divs.iter().map(|&(d, s)| (d * p, -s)).collect();
        divs.extend(extra);
    }
    divs
}

/// `#{ 1 <= i <= upto : gcd(i, modulus) = 1 }` by inclusion-exclusion.
pub fn coprime_count_upto(upto: u64, modulus: u64) -> u64 {
    let total: i128 = signed_squarefree_divisors(modulus)
        .into_iter()
        .map(|(d, s)| s as i128 * (upto / d) as i128)
        .sum();
    total as u64
}

/// Count of integers `i` with `lo < i < hi` and `gcd(i, modulus) = 1`.
///
/// Both extremes are excluded. Endpoints are non-negative rationals.
pub fn coprime_count_open(lo: Ratio<u64>, hi: Ratio<u64>, modulus: u64) -> u64 {
    if hi <= lo {
        return 0;
    }
    // largest integer strictly below hi, smallest integer strictly above lo
    let top = hi.ceil().to_integer().saturating_sub(1);
    let bottom = lo.floor().to_integer();
    if top <= bottom {
        return 0;
    }
    coprime_count_upto(top, modulus) - coprime_count_upto(bottom, modulus)
}
