//! Per-degree summary of what is known about `γ(S_n)`, `γ'(S_n)` and
//! `r(S_n)`, which satisfy `2 <= γ <= r <= γ'` and `r ∈ {γ, γ + 1}`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, nu};
use crate::basic_set::{build_named_set, SetName};
use crate::bounds::{delta_e_size, g_bound, h_bound, linear_bounds, LinearBounds};
use crate::certify::certify_lower_bound;
use crate::error::{domain, Result};
use crate::search::SearchOptions;

pub const REPORT_SCHEMA: &str = "symcover.report/1";

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Largest degree for which the report runs the exact searches.
    pub search_limit: u32,
    pub search: SearchOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            search_limit: 30,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: String,
    pub n: u32,
    pub g: Option<u64>,
    pub h: Option<u64>,
    pub delta_e_size: Option<u64>,
    /// Minimum cover size over the standard pool, when searched.
    pub gamma_pool_min: Option<u32>,
    /// `γ(S_n)` when certified or cited.
    pub gamma: Option<u32>,
    pub gamma_source: String,
    pub gamma_lower: u32,
    pub gamma_upper: u32,
    /// Smallest size among the special basic sets that apply at `n`.
    pub gamma_prime_upper: u32,
    pub gamma_prime_sets: Vec<String>,
    pub r_interval: [u32; 2],
    /// Bounds on `r - γ`: `[0, 0]` when the interval collapses, else `[0, 1]`.
    pub r_offset: [u32; 2],
    /// Why the interval is a single point, if it is.
    pub collapse: Option<String>,
    pub relation: String,
    pub linear: LinearBounds,
    pub unresolved: Vec<String>,
}

impl BoundReport {
    pub fn r_point(&self) -> Option<u32> {
        (self.r_interval[0] == self.r_interval[1]).then_some(self.r_interval[0])
    }
}

/// Values of `γ(S_n)` taken from the literature rather than computed.
pub fn cited_gamma(n: u32) -> Option<(u32, &'static str)> {
    let g = || g_bound(n as u64).ok().map(|g| g as u32);
    if n == 3 {
        Some((2, "cited: {A_3, P_1} is the unique minimal covering of S_3"))
    } else if n >= 5 && is_prime(n as u64) {
        Some(((n - 1) / 2, "cited: γ(S_p) = (p-1)/2"))
    } else if n % 2 == 1 && n >= 5 && nu(n as u64) <= 2 {
        Some((
            g()?,
            "cited: γ = g for odd n with at most two prime factors",
        ))
    } else if n % 2 == 0 && (4..=12).contains(&n) {
        Some((g()?, "cited: γ = g for even 4 <= n <= 12"))
    } else if n == 14 {
        Some((4, "cited: γ(S_14) = 4"))
    } else {
        None
    }
}

fn special_set_sizes(n: u32) -> Result<Vec<(u32, String)>> {
    let mut sizes = vec![(g_bound(n as u64)? as u32, "g(n)".to_string())];
    for name in [SetName::Delta1, SetName::Delta2, SetName::DeltaE] {
        if let Ok(set) = build_named_set(name, n) {
            sizes.push((set.len() as u32, name.to_string()));
        }
    }
    Ok(sizes)
}

pub fn interval_report(n: u32, opts: &ReportOptions) -> Result<BoundReport> {
    if n < 3 {
        return domain(format!("reports need n >= 3, got {n}"));
    }
    let linear = linear_bounds(n as u64);
    let relation = "γ <= r <= γ' and r ∈ {γ, γ+1}".to_string();
    if n == 3 {
        let (gamma, source) = cited_gamma(3).expect("cited");
        return Ok(BoundReport {
            schema: REPORT_SCHEMA.into(),
            n,
            g: None,
            h: None,
            delta_e_size: None,
            gamma_pool_min: None,
            gamma: Some(gamma),
            gamma_source: source.into(),
            gamma_lower: gamma,
            gamma_upper: gamma,
            gamma_prime_upper: gamma,
            gamma_prime_sets: vec!["{A_3, P_1}".into()],
            r_interval: [gamma, gamma],
            r_offset: [0, 0],
            collapse: Some("γ' = γ for S_3".into()),
            relation,
            linear,
            unresolved: Vec::new(),
        });
    }
    let g = g_bound(n as u64)?;
    let h = h_bound(n as u64)?;
    let mut unresolved = Vec::new();

    let mut gamma_pool_min = None;
    let mut certified = None;
    if n <= opts.search_limit {
        let lb = certify_lower_bound(n, &opts.search)?;
        gamma_pool_min = lb.pool_min;
        certified = lb.gamma;
        unresolved.extend(lb.unresolved);
    }
    let (gamma, gamma_source) = match (certified, cited_gamma(n)) {
        (Some(c), _) => (
            Some(c),
            "certified: standard-pool search with augmented lower bound".to_string(),
        ),
        (None, Some((c, source))) => {
            if gamma_pool_min.is_some_and(|p| p < c) {
                unresolved.push(format!("pool minimum is below the cited value {c}"));
            }
            (Some(c), source.to_string())
        }
        (None, None) => (None, "unknown".to_string()),
    };

    let sizes = special_set_sizes(n)?;
    let gamma_prime_upper = sizes.iter().map(|s| s.0).min().expect("g applies");
    let gamma_prime_sets = sizes
        .iter()
        .filter(|s| s.0 == gamma_prime_upper)
        .map(|s| s.1.clone())
        .collect();
    let gamma_lower = gamma.unwrap_or(2);
    let gamma_upper = gamma.unwrap_or_else(|| gamma_pool_min.unwrap_or(g as u32).min(g as u32));

    let collapse = match gamma {
        Some(c) if c as u64 == g => Some("γ = g(n), so r = γ' = γ".to_string()),
        Some(_) if n % 2 == 1 => Some("odd degree: r = γ' = γ".to_string()),
        _ => None,
    };
    let r_interval = match (&collapse, gamma) {
        (Some(_), Some(c)) => [c, c],
        _ => [gamma_lower, gamma_prime_upper.min(gamma_upper + 1)],
    };
    Ok(BoundReport {
        schema: REPORT_SCHEMA.into(),
        n,
        g: Some(g),
        h: Some(h),
        delta_e_size: (n % 2 == 0).then(|| delta_e_size(n as u64)),
        gamma_pool_min,
        gamma,
        gamma_source,
        gamma_lower,
        gamma_upper,
        gamma_prime_upper: if collapse.is_some() {
            gamma.unwrap()
        } else {
            gamma_prime_upper
        },
        gamma_prime_sets,
        r_interval,
        r_offset: if collapse.is_some() { [0, 0] } else { [0, 1] },
        collapse,
        relation,
        linear,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_answer_for_three() {
        let r = interval_report(3, &Default::default()).unwrap();
        assert_eq!(r.r_point(), Some(2));
        assert_eq!(r.gamma_prime_upper, 2);
        assert!(interval_report(2, &Default::default()).is_err());
    }

    #[test]
    fn collapses() {
        let r = interval_report(8, &Default::default()).unwrap();
        assert_eq!(r.r_point(), Some(3));
        let r = interval_report(13, &Default::default()).unwrap();
        assert_eq!(r.r_point(), Some(6));
        let r = interval_report(7, &Default::default()).unwrap();
        assert_eq!((r.g, r.h, r.r_point()), (Some(3), Some(5), Some(3)));
    }

    #[test]
    fn unknown_even_degree_keeps_an_interval() {
        let r = interval_report(50, &Default::default()).unwrap();
        assert_eq!(r.gamma, None);
        assert_eq!(r.r_offset, [0, 1]);
        assert!(r.r_interval[0] <= r.r_interval[1]);
        assert_eq!(
            r.r_interval[1],
            r.gamma_prime_upper.min(r.g.unwrap() as u32 + 1)
        );
    }
}
