//! The bound functions `g`, `h`, the interval coprime counter `φ`, and the
//! comparisons between them.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{coprime_count_open, coprime_count_upto, factorize, is_prime, nu, primes_from};
use crate::error::{domain, Result};

/// `g(n)` for `n >= 4`.
///
/// With `n = p_1^a_1 ··· p_v^a_v`, `p_1 < p_2 < ..`, the value is
/// `n/2 (1 - 1/p_1)`, plus 1 when `v = 1, a_1 >= 2`; and
/// `n/2 (1 - 1/p_1)(1 - 1/p_2)`, plus 1 when `n = p_1 p_2` and plus 2
/// otherwise.
pub fn g_bound(n: u64) -> Result<u64> {
    if n < 4 {
        return domain(format!("g is defined for n >= 4, got {n}"));
    }
    let f = factorize(n);
    let n128 = n as u128;
    let value = match f.as_slice() {
        [(p, a)] => {
            let p = *p as u128;
            let base = n128 / p * (p - 1) / 2;
            base + if *a >= 2 { 1 } else { 0 }
        }
        [(p1, a1), (p2, a2), rest @ ..] => {
            let (p1, p2) = (*p1 as u128, *p2 as u128);
            let base = n128 / (p1 * p2) * (p1 - 1) * (p2 - 1) / 2;
            base + if rest.is_empty() && *a1 == 1 && *a2 == 1 {
                1
            } else {
                2
            }
        }
        [] => unreachable!("n >= 4 has a prime factor"),
    };
    Ok(value as u64)
}

/// `φ(I; n)`: the number of integers strictly between `x` and `y` that are
/// coprime to `n`.
pub fn phi_interval(x: Ratio<u64>, y: Ratio<u64>, n: u64) -> Result<u64> {
    if n == 0 || x >= y || y > Ratio::from_integer(n) {
        return domain(format!(
            "need 0 <= x < y <= n, got x = {x}, y = {y}, n = {n}"
        ));
    }
    Ok(coprime_count_open(x, y, n))
}

/// `h(n)` for `n >= 4`: `⌊n/3⌋ + ν(n) + φ((n/3, n/2); n)` for even `n`,
/// `⌊n/4⌋ + ν(n) + φ((n/4, n/2); n) + 1` for odd `n`.
pub fn h_bound(n: u64) -> Result<u64> {
    if n < 4 {
        return domain(format!("h is defined for n >= 4, got {n}"));
    }
    let half = Ratio::new(n, 2);
    let v = nu(n) as u64;
    Ok(if n % 2 == 0 {
        n / 3 + v + phi_interval(Ratio::new(n, 3), half, n)?
    } else {
        n / 4 + v + phi_interval(Ratio::new(n, 4), half, n)? + 1
    })
}

/// `⌈(n + 4)/4⌉`, the size of the even-degree special set.
pub fn delta_e_size(n: u64) -> u64 {
    (n + 7) / 4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhRow {
    pub n: u64,
    pub g: u64,
    pub h: u64,
    /// Sign of `g - h`: `"less"`, `"equal"` or `"greater"`.
    pub sign: String,
}

fn sign(a: u64, b: u64) -> String {
    match a.cmp(&b) {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
    .into()
}

pub fn compare_g_h(n: u64) -> Result<GhRow> {
    let (g, h) = (g_bound(n)?, h_bound(n)?);
    Ok(GhRow {
        n,
        g,
        h,
        sign: sign(g, h),
    })
}

pub fn compare_g_h_range(from: u64, to: u64) -> Result<Vec<GhRow>> {
    if from < 4 || from > to {
        return domain(format!("invalid degree range {from}..={to}"));
    }
    (from..=to).map(compare_g_h).collect()
}

/// An odd product of consecutive primes with `h(n) < g(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhConstruction {
    pub primes: Vec<u64>,
    pub n: u64,
    pub g: u64,
    pub h: u64,
    /// `g(n)` recomputed as the count of `i < n/2` coprime to `p_1 p_2`,
    /// plus 2.
    pub g_recount: u64,
    pub sign: String,
}

/// Multiplies `p1`, `p2` and the primes after `p2` until `h(n) < g(n)`.
///
/// Requires odd primes `p1 < p2` with `(1 - 1/p1)(1 - 1/p2) > 1/2`; stops
/// with an error when the product would leave `u64` or `max_factors` is
/// reached.
pub fn construct_h_below_g(p1: u64, p2: u64, max_factors: usize) -> Result<GhConstruction> {
    if !(is_prime(p1) && is_prime(p2) && 2 < p1 && p1 < p2) {
        return domain("need odd primes p1 < p2");
    }
    if 2 * (p1 - 1) * (p2 - 1) <= p1 * p2 {
        return domain("need (1 - 1/p1)(1 - 1/p2) > 1/2");
    }
    let mut primes = vec![p1, p2];
    let mut later = primes_from(p2 + 1);
    let mut n = p1 * p2;
    loop {
        let (g, h) = (g_bound(n)?, h_bound(n)?);
        if primes.len() >= 3 && h < g {
            let g_recount = coprime_count_upto((n - 1) / 2, p1 * p2) + 2;
            return Ok(GhConstruction {
                primes,
                n,
                g,
                h,
                g_recount,
                sign: sign(g, h),
            });
        }
        if primes.len() >= max_factors {
            return domain(format!("no h < g within {max_factors} prime factors"));
        }
        let p = later.next().expect("primes are endless");
        n = match n.checked_mul(p) {
            Some(m) => m,
            None => return domain("prime product leaves u64"),
        };
        primes.push(p);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EvenClass {
    PowerOfTwo { alpha: u32 },
    FourTimesPrime { q: u64 },
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaERelation {
    pub n: u64,
    pub g: u64,
    pub delta_e_size: u64,
    pub equal: bool,
    pub class: EvenClass,
    /// `g(n) <= |δ_E|`, with equality exactly for the two classes.
    pub iff_holds: bool,
}

pub fn classify_even(n: u64) -> EvenClass {
    if n.is_power_of_two() {
        EvenClass::PowerOfTwo {
            alpha: n.trailing_zeros(),
        }
    } else if n % 4 == 0 && is_prime(n / 4) {
        EvenClass::FourTimesPrime { q: n / 4 }
    } else {
        EvenClass::Other
    }
}

pub fn delta_e_size_relation(n: u64) -> Result<DeltaERelation> {
    if n % 2 == 1 || n < 4 {
        return domain(format!("need an even degree n >= 4, got {n}"));
    }
    let g = g_bound(n)?;
    let size = delta_e_size(n);
    let class = classify_even(n);
    let equal = g == size;
    Ok(DeltaERelation {
        n,
        g,
        delta_e_size: size,
        equal,
        class,
        iff_holds: g <= size && equal == (class != EvenClass::Other),
    })
}

/// Reported linear bounds on `r(S_n)`; never used in certificates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearBounds {
    /// `2n/3` as a fraction.
    pub upper: (u64, u64),
    /// The cited constant `k` with `kn <= r(S_n)`, when it applies.
    pub lower_constant: Option<f64>,
    pub note: String,
}

pub fn linear_bounds(n: u64) -> LinearBounds {
    let upper = Ratio::new(2 * n, 3);
    let applies = n % 2 == 0 && n >= 792_000;
    LinearBounds {
        upper: (*upper.numer(), *upper.denom()),
        lower_constant: applies.then_some(0.025),
        note: if applies {
            "cited: k = 0.025 works for even n >= 792000; optimal k unknown".into()
        } else {
            "a linear lower bound kn holds for some unknown k > 0".into()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_values() {
        assert_eq!(g_bound(10).unwrap(), 3);
        assert_eq!(g_bound(14).unwrap(), 4);
        assert_eq!(g_bound(8).unwrap(), 3);
        assert_eq!(g_bound(12).unwrap(), 4);
        assert_eq!(g_bound(9).unwrap(), 4);
        assert_eq!(g_bound(18).unwrap(), 5);
        for p in [5, 7, 11, 13] {
            assert_eq!(g_bound(p).unwrap(), (p - 1) / 2);
        }
        assert!(g_bound(3).is_err());
    }

    #[test]
    fn h_values() {
        assert_eq!(h_bound(4).unwrap(), 2);
        assert_eq!(h_bound(7).unwrap(), 5);
        assert_eq!(h_bound(12).unwrap(), 7);
        for p in [5u64, 7, 11, 13] {
            assert_eq!(h_bound(p).unwrap(), 2 + (p - 1) / 2);
        }
    }

    #[test]
    fn phi_examples() {
        let r = |a, b| Ratio::new(a, b);
        assert_eq!(phi_interval(r(4, 1), r(6, 1), 12).unwrap(), 1);
        assert_eq!(phi_interval(r(0, 1), r(12, 1), 12).unwrap(), 4);
        assert_eq!(phi_interval(r(10, 3), r(5, 1), 10).unwrap(), 0);
        assert!(phi_interval(r(6, 1), r(4, 1), 12).is_err());
        assert!(phi_interval(r(0, 1), r(13, 1), 12).is_err());
    }

    #[test]
    fn delta_e_relation_examples() {
        let r = delta_e_size_relation(8).unwrap();
        assert_eq!((r.g, r.delta_e_size, r.equal), (3, 3, true));
        assert_eq!(r.class, EvenClass::PowerOfTwo { alpha: 3 });
        let r = delta_e_size_relation(12).unwrap();
        assert_eq!((r.g, r.delta_e_size, r.equal), (4, 4, true));
        assert_eq!(r.class, EvenClass::FourTimesPrime { q: 3 });
        let r = delta_e_size_relation(18).unwrap();
        assert_eq!(
            (r.g, r.delta_e_size, r.equal, r.class),
            (5, 6, false, EvenClass::Other)
        );
        assert!(delta_e_size_relation(9).is_err());
    }

    #[test]
    fn linear_metadata() {
        assert_eq!(linear_bounds(9).upper, (6, 1));
        assert_eq!(linear_bounds(792_000).lower_constant, Some(0.025));
        assert_eq!(linear_bounds(791_998).lower_constant, None);
    }
}
