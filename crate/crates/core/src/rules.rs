//! Exclusion rules for primitive components.
//!
//! Primitive groups other than `A_n` have no exact membership test here.
//! The rules below only ever rule a type *out*; each exclusion carries a
//! trace that [`check_trace`] re-verifies from scratch.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, prime_power};
use crate::component::{projective_degree, Component, SporadicGroup};
use crate::error::{domain, Error, Result};
use crate::partition::{type_order, type_power, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionRule {
    /// Some power of the type is a single `m`-cycle, `2 <= m <= n - 5`; a
    /// primitive group containing it contains `A_n`.
    CyclePower,
    /// The type is a full cycle and the component is not one of the
    /// primitive groups that contain a full cycle.
    FullCycleClassification,
    /// The type is an `(n-1)`-cycle and the projective group has none.
    NMinusOneCycle,
    /// The element order does not divide the group order.
    OrderDivisibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Witness {
    CyclePower {
        exponent: u64,
        power: Partition,
        cycle: u32,
    },
    FullCycleClassification {
        candidates: Vec<Component>,
    },
    NMinusOneCycle {
        d: u32,
        q: u32,
        ext: bool,
    },
    /// Orders are serialized as decimal strings.
    OrderDivisibility {
        #[serde(with = "decimal")]
        element_order: u128,
        #[serde(with = "decimal")]
        group_order: u128,
    },
}

mod decimal {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Why type `ty` cannot lie in `component` (or, when `component` is
/// `None`, in any primitive component other than `A_n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionTrace {
    #[serde(rename = "type")]
    pub ty: Partition,
    pub rule: ExclusionRule,
    pub component: Option<Component>,
    pub witness: Witness,
}

fn is_single_cycle_power(power: &Partition) -> Option<u32> {
    let n = power.degree();
    match power.pairs().as_slice() {
        [(1, f), (m, 1)] if f + m == n && *m >= 2 && *m + 5 <= n => Some(*m),
        _ => None,
    }
}

/// The smallest exponent `e` with `T^e = [1^(n-m), m]`, `2 <= m <= n - 5`.
///
/// A power of `T` is a single nontrivial cycle exactly when one part `l`
/// occurs once, every other part divides `e`, and `gcd(l, e) = 1`; the
/// smallest such `e` for a given `l` is the lcm of the other parts.
pub fn cycle_power_excluded(t: &Partition) -> Option<ExclusionTrace> {
    let n = t.degree();
    if n < 7 {
        return None;
    }
    let pairs = t.pairs();
    let mut best: Option<(u64, u32)> = None;
    for &(l, m) in &pairs {
        if m != 1 || l < 2 || l + 5 > n {
            continue;
        }
        let e = pairs
            .iter()
            .filter(|&&(p, _)| p != l)
            .fold(1u64, |acc, &(p, _)| acc / gcd(acc, p as u64) * p as u64);
        if gcd(l as u64, e) == 1 && best.is_none_or(|(b, _)| e < b) {
            best = Some((e, l));
        }
    }
    let (exponent, cycle) = best?;
    Some(ExclusionTrace {
        ty: t.clone(),
        rule: ExclusionRule::CyclePower,
        component: None,
        witness: Witness::CyclePower {
            exponent,
            power: type_power(t, exponent),
            cycle,
        },
    })
}

/// The proper primitive groups of degree `n` containing an `n`-cycle, other
/// than `A_n`: projective families, the sporadic cases and `AGL_1(n)`.
///
/// Entries whose order is at least `n!/2` are `A_n` or `S_n` and are
/// dropped; this removes `PΓL_2(4) = S_5`.
pub fn full_cycle_candidates(n: u32) -> Vec<Component> {
    let mut out = Vec::new();
    let mut d = 2;
    while (1u128 << d) - 1 <= n as u128 {
        let mut q = 2u32;
        while let Some(deg) = projective_degree(d, q) {
            if deg > n as u128 {
                break;
            }
            if deg == n as u128 && prime_power(q as u64).is_some() {
                out.push(Component::Projective {
                    d,
                    q,
                    ext: !is_prime(q as u64),
                });
            }
            q += 1;
        }
        d += 1;
    }
    for group in [
        SporadicGroup::Psl2_11,
        SporadicGroup::M11,
        SporadicGroup::M23,
    ] {
        if group.degree() == n {
            out.push(Component::Sporadic { group });
        }
    }
    if n >= 5 && is_prime(n as u64) {
        out.push(Component::Affine { p: n });
    }
    out.retain(|c| !reaches_alternating(c, n));
    out
}

fn reaches_alternating(c: &Component, n: u32) -> bool {
    let Some(order) = group_order(c) else {
        return false;
    };
    let half_factorial = (3..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
    half_factorial.is_some_and(|h| order >= h)
}

/// Whether the projective group on `n = q + 1` points contains an
/// `(n-1)`-cycle: exactly when `d = 2` and `q` is prime, or `q = 4` with
/// the full semilinear group.
pub fn nminus1_cycle_allowed(fact: &Component) -> Result<bool> {
    match *fact {
        Component::Projective { d, q, ext } => {
            Ok(d == 2 && (is_prime(q as u64) || (q == 4 && ext)))
        }
        _ => domain(format!("{fact} is not a projective fact")),
    }
}

/// Group order, when known: `|PGL_d(q)| = q^(d(d-1)/2) · Π_{i=2..d} (q^i - 1)`,
/// times `f` for `PΓL_d(p^f)`. `None` on `u128` overflow or for components
/// without a fixed order.
pub fn group_order(c: &Component) -> Option<u128> {
    match *c {
        Component::Projective { d, q, ext } => {
            let q128 = q as u128;
            let mut order = q128.checked_pow(d * (d - 1) / 2)?;
            for i in 2..=d {
                order = order.checked_mul(q128.checked_pow(i)? - 1)?;
            }
            if ext {
                order = order.checked_mul(prime_power(q as u64)?.1 as u128)?;
            }
            Some(order)
        }
        Component::Sporadic { group } => Some(group.order()),
        Component::Affine { p } => Some(p as u128 * (p as u128 - 1)),
        _ => None,
    }
}

/// True when the order of `t` does not divide the order of `fact`.
pub fn order_divisibility_excludes(fact: &Component, t: &Partition) -> Result<bool> {
    let order = group_order(fact)
        .ok_or_else(|| Error::Domain(format!("no group order known for {fact}")))?;
    Ok(order % type_order(t) != 0)
}

/// The answer to "does `t` belong to `component`" as far as it is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Decided exactly: `t` belongs.
    Contains,
    /// Decided exactly: `t` does not belong.
    Excludes,
    /// Ruled out by an exclusion rule.
    ExcludedBy(ExclusionTrace),
    /// Not ruled out; an over-approximated universe admits it.
    Possible,
}

impl Membership {
    pub fn admits(&self) -> bool {
        matches!(self, Membership::Contains | Membership::Possible)
    }
}

/// Exact membership where available, rule-based exclusion otherwise.
pub fn membership(component: &Component, t: &Partition) -> Result<Membership> {
    let n = t.degree();
    component.validate(n)?;
    if !component.is_rule_only() {
        return Ok(if component.contains_type(t)? {
            Membership::Contains
        } else {
            Membership::Excludes
        });
    }
    if let Some(mut trace) = cycle_power_excluded(t) {
        trace.component = Some(*component);
        return Ok(Membership::ExcludedBy(trace));
    }
    match *component {
        Component::OtherPrimitive => {
            if t.pairs() == [(n, 1)] {
                return Ok(Membership::ExcludedBy(ExclusionTrace {
                    ty: t.clone(),
                    rule: ExclusionRule::FullCycleClassification,
                    component: Some(*component),
                    witness: Witness::FullCycleClassification {
                        candidates: full_cycle_candidates(n),
                    },
                }));
            }
        }
        Component::Projective { d, q, ext } => {
            if n >= 2 && t.pairs() == [(1, 1), (n - 1, 1)] && !nminus1_cycle_allowed(component)? {
                return Ok(Membership::ExcludedBy(ExclusionTrace {
                    ty: t.clone(),
                    rule: ExclusionRule::NMinusOneCycle,
                    component: Some(*component),
                    witness: Witness::NMinusOneCycle { d, q, ext },
                }));
            }
        }
        _ => {}
    }
    if let Some(group_order) = group_order(component) {
        let element_order = type_order(t);
        if group_order % element_order != 0 {
            return Ok(Membership::ExcludedBy(ExclusionTrace {
                ty: t.clone(),
                rule: ExclusionRule::OrderDivisibility,
                component: Some(*component),
                witness: Witness::OrderDivisibility {
                    element_order,
                    group_order,
                },
            }));
        }
    }
    Ok(Membership::Possible)
}

/// Re-verifies a trace without trusting how it was produced.
pub fn check_trace(trace: &ExclusionTrace) -> Result<()> {
    let t = &trace.ty;
    let n = t.degree();
    let fail = |why: &str| Err(Error::Certificate(format!("trace for {t}: {why}")));
    if let Some(c) = &trace.component {
        c.validate(n)?;
        if !c.is_rule_only() {
            return fail("exclusion rules apply only to primitive facts");
        }
    }
    match (&trace.rule, &trace.witness) {
        (
            ExclusionRule::CyclePower,
            Witness::CyclePower {
                exponent,
                power,
                cycle,
            },
        ) => {
            if *exponent == 0 || type_power(t, *exponent) != *power {
                return fail("power does not match");
            }
            if is_single_cycle_power(power) != Some(*cycle) {
                return fail("power is not a single cycle of admissible length");
            }
        }
        (
            ExclusionRule::FullCycleClassification,
            Witness::FullCycleClassification { candidates },
        ) => {
            if t.pairs() != [(n, 1)] {
                return fail("type is not a full cycle");
            }
            if *candidates != full_cycle_candidates(n) {
                return fail("candidate list differs");
            }
            match &trace.component {
                Some(c) if !candidates.contains(c) && *c != Component::Alternating => {}
                _ => return fail("component is a full-cycle candidate"),
            }
        }
        (ExclusionRule::NMinusOneCycle, Witness::NMinusOneCycle { d, q, ext }) => {
            let fact = Component::Projective {
                d: *d,
                q: *q,
                ext: *ext,
            };
            if trace.component != Some(fact) {
                return fail("component does not match witness");
            }
            if t.pairs() != [(1, 1), (n - 1, 1)] || nminus1_cycle_allowed(&fact)? {
                return fail("(n-1)-cycle rule does not apply");
            }
        }
        (
            ExclusionRule::OrderDivisibility,
            Witness::OrderDivisibility {
                element_order,
                group_order: claimed,
            },
        ) => {
            let Some(c) = &trace.component else {
                return fail("order rule needs a component");
            };
            if group_order(c) != Some(*claimed) || type_order(t) != *element_order {
                return fail("orders do not match");
            }
            if claimed % element_order == 0 {
                return fail("element order divides group order");
            }
        }
        _ => return fail("rule and witness disagree"),
    }
    Ok(())
}
