//! Lower bounds for `γ(S_n)` that do not depend on the pool being complete.
//!
//! The standard pool omits primitive components. To certify a minimum, the
//! search is repeated over an augmented universe that also contains every
//! primitive group with a full cycle (as rule-only facts) and one wildcard
//! standing for every other primitive group. Rule-only members admit every
//! type the exclusion rules cannot rule out, so the augmented universe
//! over-approximates all maximal components and its minimum is a sound
//! lower bound.

use serde::{Deserialize, Serialize};

use crate::component::{Component, ComponentPool};
use crate::error::{domain, Result};
use crate::rules::{full_cycle_candidates, ExclusionRule, ExclusionTrace};
use crate::search::{min_cover_search, Constraints, CoverCertificate, SearchOptions};

/// Standard pool, the full-cycle primitive facts, and the wildcard.
pub fn augmented_pool(n: u32) -> Result<ComponentPool> {
    let mut members = ComponentPool::standard(n, false)?.members;
    for c in full_cycle_candidates(n) {
        if !members.contains(&c) {
            members.push(c);
        }
    }
    members.push(Component::OtherPrimitive);
    ComponentPool::new(n, members)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub n: u32,
    /// Minimum over the standard pool.
    pub pool_min: Option<u32>,
    /// Minimum over the augmented universe, searched up to `pool_min`.
    pub augmented_min: Option<u32>,
    /// `γ(S_n)` when both minima agree.
    pub gamma: Option<u32>,
    pub pool_certificate: CoverCertificate,
    pub augmented_certificate: CoverCertificate,
    pub unresolved: Vec<String>,
}

/// Searches the standard pool, then the augmented universe up to the same
/// size.
pub fn certify_lower_bound(n: u32, opts: &SearchOptions) -> Result<LowerBound> {
    let pool = ComponentPool::standard(n, false)?;
    let pool_certificate = min_cover_search(&pool, &Constraints::default(), opts)?;
    let pool_min = pool_certificate.size;
    let cap = pool_min.unwrap_or(pool_certificate.cap);
    let aug = augmented_pool(n)?;
    let augmented_certificate = min_cover_search(
        &aug,
        &Constraints {
            max_size: Some(cap),
            ..Default::default()
        },
        opts,
    )?;
    let augmented_min = augmented_certificate.size;
    let mut unresolved = Vec::new();
    let gamma = match (pool_min, augmented_min) {
        (Some(p), Some(a)) if p == a => Some(p),
        (Some(p), Some(a)) => {
            unresolved.push(format!(
                "a cover of size {a} < {p} exists if {} contain the types the rules cannot exclude",
                names(&augmented_certificate.over_approximated)
            ));
            None
        }
        _ => {
            unresolved.push(format!(
                "no cover of size at most {cap} over the standard pool"
            ));
            None
        }
    };
    Ok(LowerBound {
        n,
        pool_min,
        augmented_min,
        gamma,
        pool_certificate,
        augmented_certificate,
        unresolved,
    })
}

fn names(cs: &[Component]) -> String {
    cs.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub n: u32,
    pub gamma: Option<u32>,
    pub lower_bound: LowerBound,
    /// Covers of size `γ` forced to contain `P_2`: infeasible when no
    /// minimal basic set contains `P_2`.
    pub p2_certificate: CoverCertificate,
    pub p2_free: bool,
    /// Exclusions of full-cycle primitive facts by the `(n-1)`-cycle and
    /// order rules.
    pub discharged: Vec<ExclusionTrace>,
    pub unresolved: Vec<String>,
    pub summary: String,
}

/// Replays the degree-10 and degree-14 results: the value of `γ(S_n)` and
/// that no minimal basic set contains `P_2`.
pub fn certify_degree(n: u32, opts: &SearchOptions) -> Result<DegreeCertificate> {
    if n != 10 && n != 14 {
        return domain(format!("certify supports n = 10 and n = 14, got {n}"));
    }
    let lower_bound = certify_lower_bound(n, opts)?;
    let mut unresolved = lower_bound.unresolved.clone();
    let gamma = lower_bound.gamma;
    let cap = gamma
        .or(lower_bound.pool_min)
        .unwrap_or(lower_bound.pool_certificate.cap);
    let p2 = Component::Intransitive { x: 2 };
    let p2_certificate = min_cover_search(
        &augmented_pool(n)?,
        &Constraints {
            force_in: vec![p2],
            force_out: vec![],
            max_size: Some(cap),
        },
        opts,
    )?;
    let p2_free = !p2_certificate.is_feasible();
    if !p2_free {
        unresolved.push(format!(
            "a size-{cap} cover containing P_2 is not ruled out: {}",
            names(&p2_certificate.chosen)
        ));
    }
    let discharged = lower_bound
        .augmented_certificate
        .exclusion_traces
        .iter()
        .filter(|t| {
            t.rule != ExclusionRule::CyclePower
                && t.component.is_some_and(|c| c != Component::OtherPrimitive)
        })
        .cloned()
        .collect();
    let summary = match gamma {
        Some(g) if p2_free => format!("γ(S_{n})={g}; no size-{g} cover contains P_2"),
        Some(g) => format!("γ(S_{n})={g}; P_2 claim unresolved"),
        None => format!("γ(S_{n}) unresolved"),
    };
    Ok(DegreeCertificate {
        n,
        gamma,
        lower_bound,
        p2_certificate,
        p2_free,
        discharged,
        unresolved,
        summary,
    })
}
