//! Integer partitions as cycle types of `S_n`.
//!
//! A [`Partition`] of `n` is stored as its multiplicity vector `m_1, ..., m_n`
//! where `m_j` is the number of parts equal to `j`. Two partitions are equal
//! exactly when their multiplicity vectors are, so the representation is
//! canonical. Partitions double as cycle types: a permutation of type `T`
//! has one cycle of length `j` for every part `j` of `T`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd, lcm128};
use crate::error::{domain, Error, Result};

/// Largest degree accepted for a partition. Keeps every cycle order in `u128`.
pub const MAX_DEGREE: u32 = 1000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    /// `mult[j - 1]` is the multiplicity of part `j`; the length is the degree.
    mult: Vec<u32>,
}

impl Partition {
    /// Builds a partition from its parts, in any order.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        let n: u64 = parts.iter().map(|&p| p as u64).sum();
        check_degree(n)?;
        let mut mult = vec![0u32; n as usize];
        for &p in parts {
            mult[p as usize - 1] += 1;
        }
        Ok(Partition { mult })
    }

    /// Builds a partition from `(part, multiplicity)` pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(p, m) in pairs {
            parts.extend(std::iter::repeat_n(p, m as usize));
        }
        Self::from_parts(&parts)
    }

    /// Builds a partition from a multiplicity vector whose length is the degree.
    pub fn from_multiplicities(mult: Vec<u32>) -> Result<Self> {
        check_degree(mult.len() as u64)?;
        let total: u64 = mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum();
        if total != mult.len() as u64 {
            return domain(format!(
                "multiplicities sum to {total}, expected the representation length {}",
                mult.len()
            ));
        }
        Ok(Partition { mult })
    }

    /// The type of the identity, `[1^n]`.
    pub fn identity(n: u32) -> Result<Self> {
        Self::from_pairs(&[(1, n)])
    }

    /// The type of an `n`-cycle, `[n]`.
    pub fn full_cycle(n: u32) -> Result<Self> {
        Self::from_parts(&[n])
    }

    pub fn degree(&self) -> u32 {
        self.mult.len() as u32
    }

    /// Multiplicity of part `j` (zero outside `1..=n`).
    pub fn mult(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.mult.get(j as usize - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Number of parts `k`.
    pub fn num_parts(&self) -> u32 {
        self.mult.iter().sum()
    }

    /// `(part, multiplicity)` pairs with positive multiplicity, ascending by part.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
            .collect()
    }

    pub fn parts_ascending(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.num_parts() as usize);
        for (p, m) in self.pairs() {
            out.extend(std::iter::repeat_n(p, m as usize));
        }
        out
    }

    pub fn parts_descending(&self) -> Vec<u32> {
        let mut out = self.parts_ascending();
        out.reverse();
        out
    }

    /// Distinct part sizes, ascending.
    pub fn distinct_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i as u32 + 1)
    }

    /// True when every part of `self` occurs in `whole` at least as often.
    pub fn is_subpartition_of(&self, whole: &Partition) -> bool {
        self.degree() <= whole.degree() && self.pairs().into_iter().all(|(p, m)| whole.mult(p) >= m)
    }
}

fn check_degree(n: u64) -> Result<()> {
    if n == 0 {
        return domain("partitions of 0 are not types of a symmetric group");
    }
    if n > MAX_DEGREE as u64 {
        return Err(Error::Resource(format!(
            "degree {n} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn superscript(mut k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = Vec::new();
    loop {
        out.push(DIGITS[(k % 10) as usize]);
        k /= 10;
        if k == 0 {
            break;
        }
    }
    out.iter().rev().collect()
}

/// Bracket notation with superscript multiplicities, e.g. `[1³,2²,5]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{p}{}", superscript(m))
                }
            })
            .collect();
        write!(f, "[{}]", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(u32, u32)> = Vec::deserialize(deserializer)?;
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) || pairs.iter().any(|&(_, m)| m == 0) {
            return Err(D::Error::custom(
                "partition pairs must have strictly ascending parts and positive multiplicities",
            ));
        }
        Partition::from_pairs(&pairs).map_err(D::Error::custom)
    }
}

/// The number `p(n)` of partitions of `n`, saturating at `u128::MAX`.
pub fn partition_count(n: u32) -> u128 {
    let n = n as usize;
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] = p[m].saturating_add(p[m - part]);
        }
    }
    p[n]
}

/// Every partition of `n`, each exactly once.
///
/// Order: decreasing lexicographic order of the multiplicity vector read
/// from the largest part size down, which is the same as decreasing
/// lexicographic order of the parts listed in descending order. For `n = 4`
/// this yields `[4], [3,1], [2²], [2,1²], [1⁴]`.
pub fn enumerate_partitions(n: u32) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_partition(n, |t| out.push(t))?;
    Ok(out)
}

/// Streams the partitions of `n` in the order of [`enumerate_partitions`]
/// without collecting them.
pub fn for_each_partition(n: u32, mut f: impl FnMut(Partition)) -> Result<()> {
    check_degree(n as u64)?;
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut f);
    Ok(())
}

fn descend(remaining: u32, max_part: u32, stack: &mut Vec<u32>, f: &mut dyn FnMut(Partition)) {
    if remaining == 0 {
        f(Partition::from_parts(stack).expect("valid by construction"));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        stack.push(part);
        descend(remaining - part, part, stack, f);
        stack.pop();
    }
}

/// The integers `c` with `0 < c < n` realized as the sum of a subpartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSet {
    n: u32,
    /// `reach[c]` for `0 <= c <= n`, including the trivial sums 0 and n.
    reach: Vec<bool>,
}

impl SumSet {
    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Whether `c` is a proper subpartition sum (`0 < c < n` is required).
    pub fn contains(&self, c: u32) -> bool {
        c > 0 && c < self.n && self.reach[c as usize]
    }

    /// Achievable proper sums in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.n).filter(|&c| self.reach[c as usize])
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

/// Subset sums of a multiset of parts, by bounded-knapsack dynamic programming.
pub(crate) fn reachable_sums(parts: &[(u32, u32)], limit: u32) -> Vec<bool> {
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    for &(p, m) in parts {
        let p = p as usize;
        if p > limit as usize {
            continue;
        }
        // count[s]: copies of p spent to first reach s in this round
        let mut used = vec![0u32; reach.len()];
        for s in p..reach.len() {
            if !reach[s] && reach[s - p] && used[s - p] < m {
                reach[s] = true;
                used[s] = used[s - p] + 1;
            }
        }
    }
    reach
}

pub fn subset_sums(t: &Partition) -> SumSet {
    let n = t.degree();
    SumSet {
        n,
        reach: reachable_sums(&t.pairs(), n),
    }
}

/// A `c`-cut `[left | right]` of a partition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cut {
    pub whole: Partition,
    pub left: Partition,
    pub right: Partition,
}

impl Cut {
    /// The cut whose left side is the subpartition `left`.
    pub fn new(whole: &Partition, left: &Partition) -> Result<Self> {
        if !left.is_subpartition_of(whole) || left.degree() >= whole.degree() {
            return domain(format!("{left} is not a proper subpartition of {whole}"));
        }
        let mut rest = Vec::new();
        for (p, m) in whole.pairs() {
            let r = m - left.mult(p);
            rest.extend(std::iter::repeat_n(p, r as usize));
        }
        Ok(Cut {
            whole: whole.clone(),
            left: left.clone(),
            right: Partition::from_parts(&rest)?,
        })
    }

    /// The value `c`, the degree of the left side.
    pub fn size(&self) -> u32 {
        self.left.degree()
    }

    /// Whether the cut isolates `part`, i.e. `part` sits wholly on one side.
    pub fn isolates(&self, part: &Partition) -> bool {
        part.is_subpartition_of(&self.left) || part.is_subpartition_of(&self.right)
    }
}

impl std::fmt::Display for Cut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strip = |p: &Partition| {
            let s = p.to_string();
            s[1..s.len() - 1].to_string()
        };
        write!(f, "[{} | {}]", strip(&self.left), strip(&self.right))
    }
}

/// A sub-multiset of `parts` (sorted ascending) summing to `target`,
/// preferring the smallest parts first. `None` if no such sub-multiset exists.
pub(crate) fn subset_with_sum(parts: &[u32], target: u32) -> Option<Vec<u32>> {
    let t = target as usize;
    let k = parts.len();
    // suffix[i][s]: some sub-multiset of parts[i..] sums to s
    let mut suffix = vec![vec![false; t + 1]; k + 1];
    suffix[k][0] = true;
    for i in (0..k).rev() {
        let p = parts[i] as usize;
        for s in 0..=t {
            suffix[i][s] = suffix[i + 1][s] || (s >= p && suffix[i + 1][s - p]);
        }
    }
    if !suffix[0][t] {
        return None;
    }
    let mut chosen = Vec::new();
    let mut s = t;
    for i in 0..k {
        if s == 0 {
            break;
        }
        let p = parts[i] as usize;
        if s >= p && suffix[i + 1][s - p] {
            chosen.push(parts[i]);
            s -= p;
        }
    }
    Some(chosen)
}

fn remove_parts(whole: &Partition, sub: &Partition) -> Vec<u32> {
    let mut rest = Vec::new();
    for (p, m) in whole.pairs() {
        rest.extend(std::iter::repeat_n(p, (m - sub.mult(p)) as usize));
    }
    rest
}

/// A `c`-cut of `t` isolating the subpartition `iso`, if one exists.
///
/// `iso` is placed on the left side when possible and on the right side
/// otherwise; the remaining parts of the side holding it are completed from
/// the smallest parts upward.
pub fn cut_isolating(t: &Partition, iso: &Partition, c: u32) -> Result<Option<Cut>> {
    let n = t.degree();
    if !iso.is_subpartition_of(t) {
        return domain(format!("{iso} is not a subpartition of {t}"));
    }
    if c == 0 || c >= n {
        return domain(format!("cut size {c} must satisfy 0 < c < {n}"));
    }
    let rest = remove_parts(t, iso);
    let s_iso = iso.degree();
    if c >= s_iso {
        if let Some(extra) = subset_with_sum(&rest, c - s_iso) {
            let mut left = iso.parts_ascending();
            left.extend(extra);
            return Cut::new(t, &Partition::from_parts(&left)?).map(Some);
        }
    }
    if n - c >= s_iso {
        if let Some(left) = subset_with_sum(&rest, c) {
            return Cut::new(t, &Partition::from_parts(&left)?).map(Some);
        }
    }
    Ok(None)
}

/// The cycle type of `σ^e` for any `σ` of type `t`.
pub fn type_power(t: &Partition, e: u64) -> Partition {
    assert!(e >= 1, "exponent must be positive");
    let mut mult = vec![0u32; t.mult.len()];
    for (p, m) in t.pairs() {
        let g = gcd(p as u64, e) as u32;
        mult[(p / g) as usize - 1] += m * g;
    }
    Partition { mult }
}

/// Order of a permutation of type `t`: the lcm of its parts.
pub fn type_order(t: &Partition) -> u128 {
    t.distinct_parts()
        .fold(1u128, |acc, p| lcm128(acc, p as u128))
}

/// Whether permutations of type `t` are even, i.e. `n - k` is even.
pub fn is_even_type(t: &Partition) -> bool {
    (t.degree() - t.num_parts()) % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(10), 42);
        assert_eq!(partition_count(100), 190_569_292);
    }

    #[test]
    fn enumeration_small_degrees() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
        let four = enumerate_partitions(4).unwrap();
        assert_eq!(
            four,
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert!(matches!(enumerate_partitions(0), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicity_representation() {
        let t = p(&[5, 1, 2, 1, 2, 1]);
        assert_eq!(t.degree(), 12);
        assert_eq!(t.multiplicities(), &[3, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t.pairs(), vec![(1, 3), (2, 2), (5, 1)]);
        assert_eq!(t.num_parts(), 6);
        assert_eq!(t.to_string(), "[1³,2²,5]");
        assert_eq!(
            Partition::from_multiplicities(vec![3, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap(),
            t
        );
        assert!(Partition::from_multiplicities(vec![1, 1]).is_err());
    }

    #[test]
    fn json_pair_form() {
        let t = p(&[1, 1, 1, 2, 2, 5]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[1,3],[2,2],[5,1]]");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Partition>("[[2,1],[1,1]]").is_err());
        assert!(serde_json::from_str::<Partition>("[[2,0]]").is_err());
    }

    #[test]
    fn subset_sum_examples() {
        assert_eq!(subset_sums(&p(&[2, 9])).to_vec(), vec![2, 9]);
        assert_eq!(subset_sums(&p(&[1, 4, 5])).to_vec(), vec![1, 4, 5, 6, 9]);
        assert!(subset_sums(&p(&[1, 1, 1, 2, 2, 5])).contains(7));
        assert!(!subset_sums(&p(&[12])).contains(6));
    }

    #[test]
    fn cut_isolating_examples() {
        let t = p(&[1, 1, 1, 2, 2, 5]);
        let cut = cut_isolating(&t, &p(&[1, 5]), 7).unwrap().unwrap();
        assert_eq!(cut.left, p(&[1, 1, 5]));
        assert_eq!(cut.right, p(&[1, 2, 2]));
        assert_eq!(cut.to_string(), "[1²,5 | 1,2²]");

        // the particular cut above isolates [1,5] and [2²] but not [2,5] ...
        assert!(cut.isolates(&p(&[1, 5])));
        assert!(cut.isolates(&p(&[2, 2])));
        assert!(!cut.isolates(&p(&[2, 5])));
        // ... while [2 | 5] itself forms another 7-cut that does isolate it
        let other = cut_isolating(&t, &p(&[2, 5]), 7).unwrap().unwrap();
        assert_eq!(other.left, p(&[2, 5]));
        assert_eq!(other.right, p(&[1, 1, 1, 2]));

        let t = p(&[1, 1, 6]);
        let cut = cut_isolating(&t, &p(&[1, 1]), 2).unwrap().unwrap();
        assert_eq!((cut.left, cut.right), (p(&[1, 1]), p(&[6])));

        assert!(cut_isolating(&p(&[2, 9]), &p(&[2, 9]), 5)
            .unwrap()
            .is_none());
        assert!(cut_isolating(&t, &p(&[2]), 2).is_err());
        assert!(cut_isolating(&t, &p(&[1]), 8).is_err());
    }

    #[test]
    fn powers_orders_parity() {
        assert_eq!(
            type_power(&p(&[3, 6, 5]), 6),
            Partition::from_pairs(&[(1, 9), (5, 1)]).unwrap()
        );
        assert_eq!(
            type_power(&p(&[2, 9]), 9),
            Partition::from_pairs(&[(1, 9), (2, 1)]).unwrap()
        );
        assert_eq!(type_power(&p(&[3, 6, 5]), 1), p(&[3, 6, 5]));

        assert_eq!(type_order(&p(&[4, 10])), 20);
        assert_eq!(type_order(&Partition::identity(9).unwrap()), 1);
        assert_eq!(type_order(&p(&[3, 6, 5])), 30);

        assert!(!is_even_type(&p(&[1, 4, 5])));
        assert!(is_even_type(&Partition::identity(7).unwrap()));
        assert!(is_even_type(&p(&[1, 3, 5])));
    }

    #[test]
    fn degree_guards() {
        assert!(matches!(Partition::from_parts(&[]), Err(Error::Domain(_))));
        assert!(matches!(
            Partition::from_parts(&[0, 3]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            Partition::from_parts(&[MAX_DEGREE + 1]),
            Err(Error::Resource(_))
        ));
    }
}
