//! Symbolic maximal-subgroup descriptors of `S_n` and the decision
//! "type `T` belongs to component `H`".

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::error::{domain, Error, Result};
use crate::partition::{subset_sums, Partition};

/// The sporadic primitive groups that contain a full cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SporadicGroup {
    /// `PSL_2(11)` in its exceptional action on 11 points.
    #[serde(rename = "PSL2(11)")]
    Psl2_11,
    #[serde(rename = "M11")]
    M11,
    #[serde(rename = "M23")]
    M23,
}

impl SporadicGroup {
    pub fn degree(self) -> u32 {
        match self {
            SporadicGroup::Psl2_11 | SporadicGroup::M11 => 11,
            SporadicGroup::M23 => 23,
        }
    }

    pub fn order(self) -> u128 {
        match self {
            SporadicGroup::Psl2_11 => 660,
            SporadicGroup::M11 => 7_920,
            SporadicGroup::M23 => 10_200_960,
        }
    }
}

/// A conjugacy class of proper subgroups of `S_n`, described symbolically.
///
/// The degree is not stored; [`Component::validate`] checks a descriptor
/// against a given `n`. Only the first four variants have an exact
/// membership test; the remaining ones are facts about primitive groups
/// that the rule engine can only exclude types from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Component {
    /// `P_x`, the stabilizer of an `x`-subset.
    Intransitive {
        x: u32,
    },
    /// `S_b ≀ S_m`, the stabilizer of `m` blocks of size `b`.
    Imprimitive {
        b: u32,
        m: u32,
    },
    Alternating,
    /// `AGL_1(p)` acting on `p` points.
    Affine {
        p: u32,
    },
    /// A group between `PGL_d(q)` and `PΓL_d(q)` on `(q^d - 1)/(q - 1)` points;
    /// `ext` selects the full semilinear group.
    Projective {
        d: u32,
        q: u32,
        ext: bool,
    },
    Sporadic {
        group: SporadicGroup,
    },
    /// Any primitive subgroup not containing `A_n` and without an `n`-cycle.
    OtherPrimitive,
}

impl Component {
    /// Checks the descriptor is a proper subgroup class of `S_n`.
    pub fn validate(&self, n: u32) -> Result<()> {
        let bad = |why: String| domain(format!("{self} is not a component of S_{n}: {why}"));
        match *self {
            Component::Intransitive { x } => {
                if x == 0 || 2 * x > n {
                    return bad(format!("need 1 <= x <= {}", n / 2));
                }
            }
            Component::Imprimitive { b, m } => {
                if b < 2 || m < 2 || b * m != n {
                    return bad("need b, m >= 2 with b·m = n".into());
                }
            }
            Component::Alternating => {
                if n < 2 {
                    return bad("degree too small".into());
                }
            }
            Component::Affine { p } => {
                if p != n || p < 5 || !is_prime(p as u64) {
                    return bad(
                        "AGL_1(p) is a proper component only for n = p prime, p >= 5".into(),
                    );
                }
            }
            Component::Projective { d, q, .. } => {
                if d < 2
                    || prime_power(q as u64).is_none()
                    || projective_degree(d, q) != Some(n as u128)
                {
                    return bad("need d >= 2, q a prime power and n = (q^d - 1)/(q - 1)".into());
                }
            }
            Component::Sporadic { group } => {
                if group.degree() != n {
                    return bad(format!("acts on {} points", group.degree()));
                }
            }
            Component::OtherPrimitive => {}
        }
        Ok(())
    }

    /// Components without an exact membership test.
    pub fn is_rule_only(&self) -> bool {
        matches!(
            self,
            Component::Projective { .. } | Component::Sporadic { .. } | Component::OtherPrimitive
        )
    }

    pub fn is_intransitive(&self) -> bool {
        matches!(self, Component::Intransitive { .. })
    }

    /// Whether `t` belongs to this component (some conjugate contains a
    /// permutation of type `t`).
    pub fn contains_type(&self, t: &Partition) -> Result<bool> {
        let n = t.degree();
        self.validate(n)?;
        match *self {
            Component::Intransitive { x } => Ok(subset_sums(t).contains(x)),
            Component::Imprimitive { b, m } => Ok(block_assignment(t, b, m)?.is_some()),
            Component::Alternating => Ok(crate::partition::is_even_type(t)),
            Component::Affine { p } => Ok(affine_type(t, p)),
            _ => Err(Error::Undecidable {
                component: self.to_string(),
                ty: t.to_string(),
            }),
        }
    }
}

pub(crate) fn projective_degree(d: u32, q: u32) -> Option<u128> {
    if q < 2 {
        return None;
    }
    let q = q as u128;
    let qd = q.checked_pow(d)?;
    Some((qd - 1) / (q - 1))
}

/// Types of elements of `AGL_1(p)`: the identity, translations `[p]`, and
/// for each divisor `d > 1` of `p - 1` the type `[1, d^((p-1)/d)]`.
fn affine_type(t: &Partition, p: u32) -> bool {
    let pairs = t.pairs();
    match pairs.as_slice() {
        [(1, m)] => *m == p,
        [(l, 1)] => *l == p,
        [(1, 1), (d, k)] => (p - 1) % d == 0 && d * k == p - 1,
        _ => false,
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Component::Intransitive { x } => write!(f, "P_{x}"),
            Component::Imprimitive { b, m } => write!(f, "S_{b}≀S_{m}"),
            Component::Alternating => write!(f, "A_n"),
            Component::Affine { p } => write!(f, "AGL_1({p})"),
            Component::Projective { d, q, ext: false } => write!(f, "PGL_{d}({q})"),
            Component::Projective { d, q, ext: true } => write!(f, "PΓL_{d}({q})"),
            Component::Sporadic { group } => match group {
                SporadicGroup::Psl2_11 => write!(f, "PSL_2(11)"),
                SporadicGroup::M11 => write!(f, "M_11"),
                SporadicGroup::M23 => write!(f, "M_23"),
            },
            Component::OtherPrimitive => write!(f, "primitive (no n-cycle)"),
        }
    }
}

/// Parses `P_3`, `A`, `A_n`, `S_2wrS_5`, `S_2≀S_5`, `AGL_1(11)` or a JSON object.
impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Domain(e.to_string()));
        }
        let compact: String = s
            .chars()
            .filter(|c| *c != '_' && !c.is_whitespace())
            .collect();
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Domain(format!("cannot parse component {s:?}")))
        };
        if compact == "A"
            || compact == "An"
            || (compact.starts_with('A') && compact[1..].parse::<u32>().is_ok())
        {
            return Ok(Component::Alternating);
        }
        if let Some(rest) = compact
            .strip_prefix("AGL1(")
            .and_then(|r| r.strip_suffix(')'))
        {
            return Ok(Component::Affine { p: num(rest)? });
        }
        if let Some(rest) = compact.strip_prefix('P') {
            return Ok(Component::Intransitive { x: num(rest)? });
        }
        if let Some(rest) = compact.strip_prefix('S') {
            let rest = rest.replace('≀', "wr");
            if let Some((b, m)) = rest.split_once("wrS") {
                return Ok(Component::Imprimitive {
                    b: num(b)?,
                    m: num(m)?,
                });
            }
        }
        domain(format!("cannot parse component {s:?}"))
    }
}

/// One group of cycles in a block assignment: the cycles in `parts` are
/// spread over `divisor` blocks that they permute cyclically, each cycle
/// meeting each of those blocks in `part / divisor` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGroup {
    pub parts: Vec<u32>,
    pub divisor: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAssignment {
    pub b: u32,
    pub m: u32,
    pub groups: Vec<BlockGroup>,
}

impl BlockAssignment {
    /// Checks the arithmetic conditions against `t`.
    pub fn is_valid_for(&self, t: &Partition) -> bool {
        let mut parts: Vec<u32> = self.groups.iter().flat_map(|g| g.parts.clone()).collect();
        parts.sort_unstable();
        parts == t.parts_ascending()
            && self.groups.iter().all(|g| {
                g.divisor >= 1
                    && g.parts.iter().all(|&l| l % g.divisor == 0)
                    && g.parts.iter().map(|&l| l / g.divisor).sum::<u32>() == self.b
            })
            && self.groups.iter().map(|g| g.divisor).sum::<u32>() == self.m
    }
}

/// Decides whether a permutation of type `t` preserves some system of `m`
/// blocks of size `b`, returning a grouping of the cycles that realizes it.
///
/// A permutation preserving the blocks permutes them in cycles; a cycle of
/// `d` blocks is covered by cycles of lengths divisible by `d`, each meeting
/// every block of the orbit in `length / d` points. Conversely any such
/// grouping builds a preserved block system.
pub fn block_assignment(t: &Partition, b: u32, m: u32) -> Result<Option<BlockAssignment>> {
    if b < 2 || m < 2 || b * m != t.degree() {
        return domain(format!(
            "block system with b = {b}, m = {m} does not fit degree {}",
            t.degree()
        ));
    }
    let mut state = t.multiplicities().to_vec();
    let mut failed = HashSet::new();
    let mut groups = Vec::new();
    if assign(&mut state, b, &mut failed, &mut groups) {
        Ok(Some(BlockAssignment { b, m, groups }))
    } else {
        Ok(None)
    }
}

fn assign(
    state: &mut Vec<u32>,
    b: u32,
    failed: &mut HashSet<Vec<u32>>,
    groups: &mut Vec<BlockGroup>,
) -> bool {
    let Some(top) = state.iter().rposition(|&m| m > 0) else {
        return true;
    };
    if failed.contains(state) {
        return false;
    }
    let largest = top as u32 + 1;
    state[top] -= 1;
    for d in (1..=largest).filter(|d| largest % d == 0 && largest / d <= b) {
        let need = d * b - largest;
        let mut picked = Vec::new();
        if complete_group(state, d, need, largest, &mut picked, &mut |st, picked| {
            let mut parts = vec![largest];
            parts.extend(picked.iter().copied());
            groups.push(BlockGroup { parts, divisor: d });
            if assign(st, b, failed, groups) {
                return true;
            }
            groups.pop();
            false
        }) {
            state[top] += 1;
            return true;
        }
    }
    state[top] += 1;
    failed.insert(state.clone());
    false
}

/// Enumerates sub-multisets of `state` with parts divisible by `d`, each at
/// most `max_part`, summing to `need`, in non-increasing part order; calls
/// `k` with the state reduced by the choice.
fn complete_group(
    state: &mut Vec<u32>,
    d: u32,
    need: u32,
    max_part: u32,
    picked: &mut Vec<u32>,
    k: &mut dyn FnMut(&mut Vec<u32>, &[u32]) -> bool,
) -> bool {
    if need == 0 {
        return k(state, picked);
    }
    let mut part = max_part.min(need);
    part -= part % d;
    while part >= d {
        let idx = part as usize - 1;
        if state[idx] > 0 {
            state[idx] -= 1;
            picked.push(part);
            let found = complete_group(state, d, need - part, part, picked, k);
            picked.pop();
            state[idx] += 1;
            if found {
                return true;
            }
        }
        part -= d;
    }
    false
}

/// An ordered, duplicate-free set of components valid for one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPool {
    pub n: u32,
    pub members: Vec<Component>,
}

impl ComponentPool {
    pub fn new(n: u32, members: Vec<Component>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &members {
            c.validate(n)?;
            if !seen.insert(*c) {
                return domain(format!("duplicate component {c} in pool"));
            }
        }
        Ok(ComponentPool { n, members })
    }

    /// The maximal intransitive and imprimitive subgroups and `A_n`, plus
    /// `AGL_1(p)` when `n = p` is a prime `>= 5`. `P_{n/2}` (not maximal) is
    /// added only on request.
    pub fn standard(n: u32, include_half: bool) -> Result<Self> {
        if n < 3 {
            return domain("standard pools need n >= 3");
        }
        let mut members: Vec<Component> = (1..=n / 2)
            .filter(|&x| 2 * x < n || include_half)
            .map(|x| Component::Intransitive { x })
            .collect();
        members.extend(
            (2..=n / 2)
                .filter(|b| n % b == 0)
                .map(|b| Component::Imprimitive { b, m: n / b }),
        );
        members.push(Component::Alternating);
        if n >= 5 && is_prime(n as u64) {
            members.push(Component::Affine { p: n });
        }
        Self::new(n, members)
    }

    pub fn contains(&self, c: &Component) -> bool {
        self.members.contains(c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn membership_examples() {
        let p2 = Component::Intransitive { x: 2 };
        assert!(p2.contains_type(&p(&[2, 9])).unwrap());
        assert!(!p2.contains_type(&p(&[3, 7])).unwrap());
        assert!(!Component::Alternating
            .contains_type(&p(&[1, 4, 5]))
            .unwrap());
        assert!(Component::Affine { p: 5 }
            .contains_type(&p(&[1, 2, 2]))
            .unwrap());
        assert!(!Component::Affine { p: 5 }
            .contains_type(&p(&[1, 1, 3]))
            .unwrap());
    }

    #[test]
    fn block_assignment_examples() {
        let a = block_assignment(&p(&[10]), 2, 5).unwrap().unwrap();
        assert_eq!(
            a.groups,
            vec![BlockGroup {
                parts: vec![10],
                divisor: 5
            }]
        );
        assert!(a.is_valid_for(&p(&[10])));

        assert!(block_assignment(&p(&[1, 3, 6]), 2, 5).unwrap().is_none());

        let a = block_assignment(&p(&[2, 2]), 2, 2).unwrap().unwrap();
        assert_eq!(a.groups.len(), 2);
        assert!(a.groups.iter().all(|g| g.divisor == 1));

        assert!(block_assignment(&p(&[2, 2]), 3, 2).is_err());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        assert!(Component::Intransitive { x: 6 }
            .contains_type(&p(&[4, 5]))
            .is_err());
        assert!(Component::Affine { p: 7 }.contains_type(&p(&[5])).is_err());
        assert!(matches!(
            Component::Projective {
                d: 2,
                q: 9,
                ext: true
            }
            .contains_type(&p(&[10])),
            Err(Error::Undecidable { .. })
        ));
    }

    #[test]
    fn json_forms() {
        let cases = [
            (
                Component::Intransitive { x: 3 },
                r#"{"kind":"intransitive","x":3}"#,
            ),
            (
                Component::Imprimitive { b: 2, m: 5 },
                r#"{"kind":"imprimitive","b":2,"m":5}"#,
            ),
            (Component::Alternating, r#"{"kind":"alternating"}"#),
            (Component::Affine { p: 11 }, r#"{"kind":"affine","p":11}"#),
            (
                Component::Projective {
                    d: 2,
                    q: 9,
                    ext: true,
                },
                r#"{"kind":"projective","d":2,"q":9,"ext":true}"#,
            ),
        ];
        for (c, json) in cases {
            assert_eq!(serde_json::to_string(&c).unwrap(), json);
            assert_eq!(serde_json::from_str::<Component>(json).unwrap(), c);
        }
    }

    #[test]
    fn parsing_short_names() {
        assert_eq!(
            "P_2".parse::<Component>().unwrap(),
            Component::Intransitive { x: 2 }
        );
        assert_eq!("A_10".parse::<Component>().unwrap(), Component::Alternating);
        assert_eq!(
            "S_2wrS_5".parse::<Component>().unwrap(),
            Component::Imprimitive { b: 2, m: 5 }
        );
        assert_eq!(
            "S_4≀S_2".parse::<Component>().unwrap(),
            Component::Imprimitive { b: 4, m: 2 }
        );
        assert_eq!(
            "AGL_1(11)".parse::<Component>().unwrap(),
            Component::Affine { p: 11 }
        );
        assert!("Q_3".parse::<Component>().is_err());
    }

    #[test]
    fn standard_pools() {
        let pool = ComponentPool::standard(10, false).unwrap();
        assert_eq!(pool.len(), 4 + 2 + 1);
        assert!(!pool.contains(&Component::Intransitive { x: 5 }));
        assert!(ComponentPool::standard(10, true)
            .unwrap()
            .contains(&Component::Intransitive { x: 5 }));
        assert!(ComponentPool::standard(7, false)
            .unwrap()
            .contains(&Component::Affine { p: 7 }));
        assert!(
            ComponentPool::new(6, vec![Component::Alternating, Component::Alternating]).is_err()
        );
    }
}
