//! Named basic sets and the basic-set check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, is_prime};
use crate::component::Component;
use crate::error::{domain, Error, Result};
use crate::partition::{enumerate_partitions, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SetName {
    DeltaC,
    Delta1,
    Delta2,
    DeltaE,
    Prime,
    PrimePower,
    TwoP,
}

impl SetName {
    pub const ALL: [SetName; 7] = [
        SetName::DeltaC,
        SetName::Delta1,
        SetName::Delta2,
        SetName::DeltaE,
        SetName::Prime,
        SetName::PrimePower,
        SetName::TwoP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SetName::DeltaC => "deltaC",
            SetName::Delta1 => "delta1",
            SetName::Delta2 => "delta2",
            SetName::DeltaE => "deltaE",
            SetName::Prime => "prime",
            SetName::PrimePower => "primePower",
            SetName::TwoP => "twoP",
        }
    }
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown set name {s:?}")))
    }
}

/// A set of pairwise distinct components of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSet {
    pub n: u32,
    pub components: Vec<Component>,
    pub name: Option<SetName>,
    pub claimed_basic: bool,
    pub claimed_special: bool,
}

impl BasicSet {
    pub fn new(n: u32, components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return domain("a basic set needs at least one component");
        }
        for (i, c) in components.iter().enumerate() {
            c.validate(n)?;
            if components[..i].contains(c) {
                return domain(format!("duplicate component {c}"));
            }
        }
        Ok(BasicSet {
            n,
            components,
            name: None,
            claimed_basic: false,
            claimed_special: false,
        })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

fn not_applicable<T>(name: SetName, n: u32, hypothesis: &str) -> Result<T> {
    Err(Error::Applicability {
        set: name.to_string(),
        n,
        hypothesis: hypothesis.into(),
    })
}

fn wreath(b: u32, n: u32) -> Component {
    Component::Imprimitive { b, m: n / b }
}

fn intransitive(xs: impl Iterator<Item = u32>) -> Vec<Component> {
    xs.map(|x| Component::Intransitive { x }).collect()
}

/// Builds one of the named basic sets, checking its hypotheses on `n`.
pub fn build_named_set(name: SetName, n: u32) -> Result<BasicSet> {
    if n < 4 {
        return not_applicable(name, n, "n >= 4");
    }
    let f = factorize(n as u64);
    let primes: Vec<u32> = f.iter().map(|&(p, _)| p as u32).collect();
    let components = match name {
        SetName::DeltaC => {
            let canonical = match f.as_slice() {
                [(_, a1), (_, a2)] => (*a1, *a2) != (1, 1),
                _ => f.len() >= 3,
            };
            if !canonical {
                return not_applicable(name, n, "nu(n) = 2 with (a1, a2) != (1, 1), or nu(n) >= 3");
            }
            let (p1, p2) = (primes[0], primes[1]);
            let mut c = intransitive(
                (1..)
                    .take_while(|x| 2 * x < n)
                    .filter(|&x| gcd(x as u64, (p1 * p2) as u64) == 1),
            );
            c.push(wreath(p1, n));
            c.push(wreath(p2, n));
            c
        }
        SetName::Delta1 => {
            if n < 6 || is_prime(n as u64) {
                return not_applicable(name, n, "n >= 6 and n composite");
            }
            let mut c = intransitive((1..).take_while(|x| 3 * x <= n));
            c.extend(intransitive(
                (1..)
                    .take_while(|x| 2 * x < n)
                    .filter(|&x| 3 * x > n && gcd(x as u64, n as u64) == 1),
            ));
            c.extend(primes.iter().map(|&p| wreath(p, n)));
            c
        }
        SetName::Delta2 => {
            if n % 2 == 0 {
                return not_applicable(name, n, "n odd");
            }
            if is_prime(n as u64) {
                return not_applicable(name, n, "n composite");
            }
            let mut c = intransitive((1..).take_while(|x| 4 * x <= n));
            c.extend(intransitive(
                (1..)
                    .take_while(|x| 2 * x < n)
                    .filter(|&x| 4 * x > n && gcd(x as u64, n as u64) == 1),
            ));
            c.extend(primes.iter().map(|&p| wreath(p, n)));
            c.push(Component::Alternating);
            c
        }
        SetName::DeltaE => {
            if n % 2 == 1 {
                return not_applicable(name, n, "n even");
            }
            let mut c = intransitive((1..).take_while(|x| 2 * x < n).filter(|x| x % 2 == 0));
            c.push(wreath(n / 2, n));
            c.push(Component::Alternating);
            c
        }
        SetName::Prime => {
            if n < 5 || !is_prime(n as u64) {
                return not_applicable(name, n, "n prime, n >= 5");
            }
            let mut c = vec![Component::Affine { p: n }];
            c.extend(intransitive(2..=(n - 1) / 2));
            c
        }
        SetName::PrimePower => {
            if !n.is_power_of_two() {
                return not_applicable(name, n, "n a power of 2");
            }
            let mut c = vec![wreath(2, n)];
            c.extend(intransitive((1..n / 2).filter(|x| x % 2 == 1)));
            c
        }
        SetName::TwoP => {
            if n % 2 == 1 || !is_prime(n as u64 / 2) || n == 4 {
                return not_applicable(name, n, "n = 2p with p an odd prime");
            }
            let mut c = vec![wreath(2, n)];
            c.extend(intransitive((1..n / 2).filter(|x| x % 2 == 1)));
            c
        }
    };
    let mut set = BasicSet::new(n, components)?;
    set.name = Some(name);
    set.claimed_basic = true;
    set.claimed_special = true;
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicVerdict {
    pub n: u32,
    pub basic: bool,
    pub uncovered: Vec<Partition>,
    /// The set is `{A_n}`, which never covers.
    pub trivial_alternating: bool,
}

/// Whether every type of `S_n` belongs to some component of `delta`.
pub fn verify_basic_set(delta: &BasicSet) -> Result<BasicVerdict> {
    let mut uncovered = Vec::new();
    for t in enumerate_partitions(delta.n)? {
        let mut hit = false;
        for c in &delta.components {
            if c.contains_type(&t)? {
                hit = true;
                break;
            }
        }
        if !hit {
            uncovered.push(t);
        }
    }
    let trivial_alternating = delta.components == [Component::Alternating];
    Ok(BasicVerdict {
        n: delta.n,
        basic: uncovered.is_empty() && !trivial_alternating,
        uncovered,
        trivial_alternating,
    })
}
