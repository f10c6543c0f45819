//! Special metacyclic subgroups `M = <σ> × <τ>`, where `τ = (i j)` is a
//! transposition and `σ` has even order and fixes `i` and `j`.

use serde::{Deserialize, Serialize};

use crate::basic_set::BasicSet;
use crate::component::Component;
use crate::error::{domain, Error, Result};
use crate::partition::{enumerate_partitions, reachable_sums, subset_with_sum, Cut, Partition};
use crate::perm::{explicit_containment, Perm, ORACLE_MAX_DEGREE};

/// The cycle data `[1², x_1, .., x_k]` of `σ`, with the two points moved by
/// `τ` kept apart from the other parts.
///
/// Parts are stored in canonical order: even parts first, then odd parts,
/// each block non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawShape")]
pub struct MetacyclicShape {
    n: u32,
    pair: [u32; 2],
    parts: Vec<u32>,
}

#[derive(Deserialize)]
struct RawShape {
    n: u32,
    pair: [u32; 2],
    parts: Vec<u32>,
}

impl TryFrom<RawShape> for MetacyclicShape {
    type Error = Error;

    fn try_from(raw: RawShape) -> Result<Self> {
        if raw.pair != [1, 2] {
            return Err(Error::InvalidShape(
                "the distinguished pair is always [1,2]".into(),
            ));
        }
        MetacyclicShape::new(raw.n, &raw.parts)
    }
}

impl MetacyclicShape {
    pub fn new(n: u32, parts: &[u32]) -> Result<Self> {
        let invalid = |why: &str| Err(Error::InvalidShape(format!("{parts:?} in S_{n}: {why}")));
        if parts.is_empty() {
            return invalid("σ needs at least one further part");
        }
        if parts.iter().any(|&x| x == 0 || x >= n) {
            return invalid("parts must lie in 1..n-1");
        }
        if parts.iter().sum::<u32>() + 2 != n {
            return invalid("parts must sum to n - 2");
        }
        if parts.iter().all(|x| x % 2 == 1) {
            return invalid("σ must have even order");
        }
        let mut even: Vec<u32> = parts.iter().copied().filter(|x| x % 2 == 0).collect();
        let mut odd: Vec<u32> = parts.iter().copied().filter(|x| x % 2 == 1).collect();
        even.sort_unstable_by(|a, b| b.cmp(a));
        odd.sort_unstable_by(|a, b| b.cmp(a));
        even.extend(odd);
        Ok(MetacyclicShape {
            n,
            pair: [1, 2],
            parts: even,
        })
    }

    /// Reads the shape off an explicit `σ` fixing the points of `pair`.
    pub fn from_generator(sigma: &Perm, pair: (u32, u32)) -> Result<Self> {
        let n = sigma.degree();
        let (i, j) = pair;
        if i == j || i >= n || j >= n || sigma.apply(i) != i || sigma.apply(j) != j {
            return Err(Error::InvalidShape("σ must fix both points of τ".into()));
        }
        let mut lengths = sigma.cycle_lengths();
        for _ in 0..2 {
            let k = lengths
                .iter()
                .position(|&l| l == 1)
                .expect("σ fixes i and j");
            lengths.swap_remove(k);
        }
        MetacyclicShape::new(n, &lengths)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// The parts `x_1, .., x_k` in canonical order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number `s` of even parts.
    pub fn split(&self) -> usize {
        self.parts.iter().take_while(|x| *x % 2 == 0).count()
    }

    /// The cycle type of `σ`, including the two distinguished fixed points.
    pub fn sigma_type(&self) -> Partition {
        let mut all = vec![1, 1];
        all.extend(&self.parts);
        Partition::from_parts(&all).expect("valid shape")
    }

    /// Explicit generators: `σ` with its cycles on consecutive points after
    /// `0` and `1`, and `τ = (0 1)`.
    pub fn generators(&self) -> (Perm, Perm) {
        let sigma = Perm::with_cycle_lengths(self.n, 2, &self.parts).expect("valid shape");
        let tau = Perm::from_cycles(self.n, &[&[0, 1]]).expect("n >= 2");
        (sigma, tau)
    }
}

impl std::fmt::Display for MetacyclicShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rest: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "[1²,{}]", rest.join(","))
    }
}

/// One shape for every partition of `n - 2` with even lcm, in the order of
/// [`enumerate_partitions`]. Empty for `n <= 3`.
pub fn enumerate_shapes(n: u32) -> Result<Vec<MetacyclicShape>> {
    if n <= 3 {
        return Ok(Vec::new());
    }
    enumerate_partitions(n - 2)?
        .into_iter()
        .filter(|p| p.distinct_parts().any(|x| x % 2 == 0))
        .map(|p| MetacyclicShape::new(n, &p.parts_descending()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageStatus {
    Covered,
    NotEstablished,
    Impossible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageRule {
    /// A union of orbits of `M` of the right size: a cut of `σ`'s type
    /// keeping the pair on one side.
    IsolatingCut,
    /// Disjoint cycles of length divisible by `b`, `τ` among them, with the
    /// common fixed points grouped into blocks.
    DisjointCycles,
    /// No sufficient wreath rule applies.
    WreathSilent,
    /// `τ` is odd.
    OddTransposition,
    /// A primitive group containing a transposition is `S_n`.
    PrimitiveTransposition,
    /// Decided by explicit enumeration.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum VerdictWitness {
    /// The side of the cut holding `[1²]` is a union of `M`-orbits.
    Cut { cut: Cut, x: u32 },
    /// Cycles of `σ` (and `τ`) that each break into `b`-cycles, plus the
    /// number of further fixed points grouped into blocks.
    Blocks {
        b: u32,
        cycles: Vec<u32>,
        fixed: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageVerdict {
    pub status: CoverageStatus,
    pub rule: CoverageRule,
    pub witness: Option<VerdictWitness>,
}

impl CoverageVerdict {
    fn new(status: CoverageStatus, rule: CoverageRule) -> Self {
        CoverageVerdict {
            status,
            rule,
            witness: None,
        }
    }

    pub fn is_covered(&self) -> bool {
        self.status == CoverageStatus::Covered
    }
}

/// Whether `M` lies in a conjugate of `P_x`.
///
/// The orbits of `M` are `{i, j}` and the cycles of `σ` on the other
/// points, so this is exact: covered iff `x - 2` or `n - x - 2` is a sum of
/// some of the `x_i`.
pub fn covered_by_intransitive(s: &MetacyclicShape, x: u32) -> Result<CoverageVerdict> {
    let n = s.n;
    if x == 0 || 2 * x > n {
        return domain(format!("P_{x} is not a component of S_{n}"));
    }
    let mut asc = s.parts.clone();
    asc.sort_unstable();
    let side = [x, n - x]
        .into_iter()
        .filter(|&c| c >= 2)
        .find_map(|c| subset_with_sum(&asc, c - 2).map(|extra| (c, extra)));
    let Some((_, extra)) = side else {
        return Ok(CoverageVerdict::new(
            CoverageStatus::Impossible,
            CoverageRule::IsolatingCut,
        ));
    };
    let mut left = vec![1, 1];
    left.extend(extra);
    let cut = Cut::new(&s.sigma_type(), &Partition::from_parts(&left)?)?;
    Ok(CoverageVerdict {
        status: CoverageStatus::Covered,
        rule: CoverageRule::IsolatingCut,
        witness: Some(VerdictWitness::Cut { cut, x }),
    })
}

/// Sufficient test for `M` lying in a conjugate of `S_b ≀ S_m`.
///
/// Fires when `b` divides the length of `τ` and of every nontrivial cycle
/// of `σ`, i.e. `b = 2` and every `x_i > 1` is even. Otherwise the answer
/// is `NotEstablished`.
pub fn covered_by_wreath(s: &MetacyclicShape, b: u32, m: u32) -> Result<CoverageVerdict> {
    if b < 2 || m < 2 || b * m != s.n {
        return domain(format!("S_{b}≀S_{m} is not a component of S_{}", s.n));
    }
    if b == 2 && s.parts.iter().all(|&x| x == 1 || x % 2 == 0) {
        let mut cycles: Vec<u32> = s.parts.iter().copied().filter(|&x| x > 1).collect();
        cycles.push(2);
        let fixed = s.parts.iter().filter(|&&x| x == 1).count() as u32;
        return Ok(CoverageVerdict {
            status: CoverageStatus::Covered,
            rule: CoverageRule::DisjointCycles,
            witness: Some(VerdictWitness::Blocks { b, cycles, fixed }),
        });
    }
    Ok(CoverageVerdict::new(
        CoverageStatus::NotEstablished,
        CoverageRule::WreathSilent,
    ))
}

pub fn covered_by_alternating(_s: &MetacyclicShape) -> CoverageVerdict {
    CoverageVerdict::new(CoverageStatus::Impossible, CoverageRule::OddTransposition)
}

/// Dispatches to the checker for the kind of `h`.
pub fn covered_by(s: &MetacyclicShape, h: &Component) -> Result<CoverageVerdict> {
    h.validate(s.n)?;
    match *h {
        Component::Intransitive { x } => covered_by_intransitive(s, x),
        Component::Imprimitive { b, m } => covered_by_wreath(s, b, m),
        Component::Alternating => Ok(covered_by_alternating(s)),
        _ => Ok(CoverageVerdict::new(
            CoverageStatus::Impossible,
            CoverageRule::PrimitiveTransposition,
        )),
    }
}

/// Ground truth by enumeration: whether some conjugate of `h` contains
/// both generators of the shape.
pub fn oracle_contained(s: &MetacyclicShape, h: &Component) -> Result<bool> {
    if s.n > ORACLE_MAX_DEGREE {
        return Err(Error::Resource(format!(
            "explicit enumeration is limited to degree {ORACLE_MAX_DEGREE}, got {}",
            s.n
        )));
    }
    h.validate(s.n)?;
    match h {
        Component::Intransitive { .. } | Component::Imprimitive { .. } | Component::Alternating => {
            let (sigma, tau) = s.generators();
            explicit_containment(&[sigma, tau], h)
        }
        _ => domain(format!("no explicit oracle for {h}")),
    }
}

/// A shape together with the component that absorbs it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCover {
    pub shape: MetacyclicShape,
    pub component: Component,
    pub verdict: CoverageVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialVerdict {
    pub n: u32,
    pub basic: bool,
    pub special: bool,
    pub uncovered_types: Vec<Partition>,
    pub uncovered_shapes: Vec<MetacyclicShape>,
    pub covers: Vec<ShapeCover>,
    /// Shapes that needed the explicit oracle.
    pub oracle_fallbacks: u32,
}

/// Whether `delta` is a special basic set: a basic set whose components
/// also absorb every special metacyclic subgroup.
///
/// Each shape is checked with the sufficient rules; when they are silent,
/// `n <= 12` and `allow_oracle` is set, the explicit oracle decides.
pub fn is_special_basic_set(delta: &BasicSet, allow_oracle: bool) -> Result<SpecialVerdict> {
    let n = delta.n;
    let basic = crate::basic_set::verify_basic_set(delta)?;
    let mut covers = Vec::new();
    let mut uncovered_shapes = Vec::new();
    let mut oracle_fallbacks = 0;
    'shapes: for shape in enumerate_shapes(n)? {
        let mut silent = Vec::new();
        for h in &delta.components {
            let verdict = covered_by(&shape, h)?;
            match verdict.status {
                CoverageStatus::Covered => {
                    covers.push(ShapeCover {
                        shape,
                        component: *h,
                        verdict,
                    });
                    continue 'shapes;
                }
                CoverageStatus::NotEstablished => silent.push(*h),
                CoverageStatus::Impossible => {}
            }
        }
        if allow_oracle && n <= ORACLE_MAX_DEGREE {
            for h in silent {
                if oracle_contained(&shape, &h)? {
                    oracle_fallbacks += 1;
                    covers.push(ShapeCover {
                        shape,
                        component: h,
                        verdict: CoverageVerdict::new(
                            CoverageStatus::Covered,
                            CoverageRule::Oracle,
                        ),
                    });
                    continue 'shapes;
                }
            }
        }
        uncovered_shapes.push(shape);
    }
    Ok(SpecialVerdict {
        n,
        basic: basic.basic,
        special: basic.basic && uncovered_shapes.is_empty(),
        uncovered_types: basic.uncovered,
        uncovered_shapes,
        covers,
        oracle_fallbacks,
    })
}

/// For even `n`, the component of the matching even-degree set that
/// absorbs `s`, chosen by case analysis on the odd parts:
///
/// - no odd part: `S_2 ≀ S_(n/2)`;
/// - `n = 2^a` or `n = 2p`: `P_x` for an odd part `x < n/2` (or `n - x`);
/// - otherwise, with `p` the smallest odd prime of `n`: `P_x` for an odd
///   part not divisible by `p`, else for an even part `u` not divisible by
///   `p` and any odd part `v`, `P_c` with `c = min(u + v, n - u - v)`.
pub fn even_degree_witness(s: &MetacyclicShape) -> Result<Component> {
    let n = s.n;
    if n % 2 == 1 || n < 4 {
        return domain(format!("even degree n >= 4 required, got {n}"));
    }
    let odd: Vec<u32> = s.parts[s.split()..].to_vec();
    let even = &s.parts[..s.split()];
    if odd.is_empty() {
        return Ok(Component::Imprimitive { b: 2, m: n / 2 });
    }
    let p_x = |c: u32| Component::Intransitive { x: c.min(n - c) };
    let odd_prime = crate::arith::factorize(n as u64)
        .get(1)
        .map(|&(p, _)| p as u32);
    let two_p = odd_prime.is_some_and(|p| n == 2 * p);
    match odd_prime {
        None => Ok(p_x(odd[0])),
        Some(_) if two_p => {
            let x = *odd
                .iter()
                .find(|&&x| 2 * x < n)
                .expect("two odd parts sum below n");
            Ok(p_x(x))
        }
        Some(p) => {
            if let Some(&x) = odd.iter().find(|&&x| x % p != 0) {
                return Ok(p_x(x));
            }
            let u = *even
                .iter()
                .find(|&&u| u % p != 0)
                .expect("an even part avoids p");
            Ok(p_x(u + odd[0]))
        }
    }
}

/// Sums of sub-multisets of the shape's parts, `0` included.
pub fn part_sums(s: &MetacyclicShape) -> Vec<u32> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &x in &s.parts {
        match pairs.iter_mut().find(|(p, _)| *p == x) {
            Some(e) => e.1 += 1,
            None => pairs.push((x, 1)),
        }
    }
    reachable_sums(&pairs, s.n - 2)
        .into_iter()
        .enumerate()
        .filter_map(|(c, ok)| ok.then_some(c as u32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_enumeration() {
        let parts = |n| -> Vec<Vec<u32>> {
            enumerate_shapes(n)
                .unwrap()
                .iter()
                .map(|s| s.parts().to_vec())
                .collect()
        };
        assert!(parts(3).is_empty());
        assert_eq!(parts(4), vec![vec![2]]);
        assert_eq!(parts(5), vec![vec![2, 1]]);
        assert_eq!(parts(6), vec![vec![4], vec![2, 2], vec![2, 1, 1]]);
    }

    #[test]
    fn canonical_order_and_json() {
        let s = MetacyclicShape::new(12, &[3, 4, 3]).unwrap();
        assert_eq!(s.parts(), &[4, 3, 3]);
        assert_eq!(s.split(), 1);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":12,"pair":[1,2],"parts":[4,3,3]}"#);
        assert_eq!(serde_json::from_str::<MetacyclicShape>(&json).unwrap(), s);
        assert!(
            serde_json::from_str::<MetacyclicShape>(r#"{"n":5,"pair":[1,2],"parts":[3]}"#).is_err()
        );
    }

    #[test]
    fn intransitive_examples() {
        let s = MetacyclicShape::new(4, &[2]).unwrap();
        let v = covered_by_intransitive(&s, 2).unwrap();
        assert!(v.is_covered());
        match v.witness {
            Some(VerdictWitness::Cut { cut, .. }) => assert_eq!(cut.to_string(), "[1² | 2]"),
            other => panic!("unexpected {other:?}"),
        }

        let s = MetacyclicShape::new(10, &[4, 4]).unwrap();
        assert_eq!(part_sums(&s), vec![0, 4, 8]);
        let v = covered_by_intransitive(&s, 3).unwrap();
        assert_eq!(v.status, CoverageStatus::Impossible);
    }

    #[test]
    fn wreath_examples() {
        let s = MetacyclicShape::new(8, &[2, 4]).unwrap();
        assert!(covered_by_wreath(&s, 2, 4).unwrap().is_covered());
        let s = MetacyclicShape::new(12, &[4, 3, 3]).unwrap();
        assert_eq!(
            covered_by_wreath(&s, 2, 6).unwrap().status,
            CoverageStatus::NotEstablished
        );
        let s = MetacyclicShape::new(8, &[6]).unwrap();
        assert!(covered_by_wreath(&s, 2, 4).unwrap().is_covered());
        assert!(covered_by_wreath(&s, 3, 3).is_err());
    }

    #[test]
    fn oracle_examples() {
        let sigma = Perm::from_cycles(6, &[&[2, 3, 4, 5]]).unwrap();
        let s = MetacyclicShape::from_generator(&sigma, (0, 1)).unwrap();
        assert!(oracle_contained(&s, &Component::Intransitive { x: 2 }).unwrap());

        let sigma = Perm::from_cycles(6, &[&[2, 3], &[4, 5]]).unwrap();
        let s = MetacyclicShape::from_generator(&sigma, (0, 1)).unwrap();
        assert!(oracle_contained(&s, &Component::Imprimitive { b: 2, m: 3 }).unwrap());
        assert!(!oracle_contained(&s, &Component::Alternating).unwrap());

        let sigma = Perm::from_cycles(5, &[&[2, 3, 4]]).unwrap();
        assert!(matches!(
            MetacyclicShape::from_generator(&sigma, (0, 1)),
            Err(Error::InvalidShape(_))
        ));

        let big = MetacyclicShape::new(14, &[12]).unwrap();
        assert!(matches!(
            oracle_contained(&big, &Component::Alternating),
            Err(Error::Resource(_))
        ));
    }
}
