use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use symcover::basic_set::{build_named_set, verify_basic_set, BasicSet, BasicVerdict, SetName};
use symcover::bounds::{compare_g_h_range, construct_h_below_g};
use symcover::certify::{augmented_pool, certify_degree, DegreeCertificate};
use symcover::metacyclic::{
    enumerate_shapes, is_special_basic_set, CoverageRule, CoverageStatus, MetacyclicShape,
    SpecialVerdict,
};
use symcover::report::{interval_report, ReportOptions};
use symcover::search::{
    check_certificate, min_cover_search, Constraints, CoverCertificate, SearchOptions, MAX_TYPES,
};
use symcover::{partition_count, Component, ComponentPool, Partition};

use crate::cache::Cache;
use crate::error::{CliError, CliResult};
use crate::payload::{Kind, Payload};

pub struct Context {
    pub cache: Cache,
    pub jobs: Option<usize>,
    pub force: bool,
}

impl Context {
    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            allow_large: self.force,
        }
    }

    fn guard_types(&self, n: u32) -> CliResult<()> {
        let count = partition_count(n);
        if count > MAX_TYPES as u128 && !self.force {
            return Err(symcover::Error::Resource(format!(
                "S_{n} has {count} types, above the limit of {MAX_TYPES}"
            ))
            .into());
        }
        Ok(())
    }
}

fn check_degree(n: u32, least: u32) -> CliResult<()> {
    if n < least {
        return Err(CliError::Usage(format!(
            "degree must be at least {least}, got {n}"
        )));
    }
    Ok(())
}

/// Parses a comma-separated component list, or a JSON array of components.
pub fn parse_components(spec: &str) -> CliResult<Vec<Component>> {
    let spec = spec.trim();
    if spec.starts_with('[') {
        return Ok(serde_json::from_str(spec)?);
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse().map_err(CliError::from))
        .collect()
}

/// A named set, or an explicit component list.
pub fn parse_set(spec: &str, n: u32) -> CliResult<BasicSet> {
    match spec.parse::<SetName>() {
        Ok(name) => Ok(build_named_set(name, n)?),
        Err(_) => Ok(BasicSet::new(n, parse_components(spec)?)?),
    }
}

pub fn parse_pool(spec: &str, n: u32) -> CliResult<ComponentPool> {
    Ok(match spec {
        "standard" => ComponentPool::standard(n, false)?,
        "standard-half" => ComponentPool::standard(n, true)?,
        "augmented" => augmented_pool(n)?,
        list => ComponentPool::new(n, parse_components(list)?)?,
    })
}

pub fn bounds_row(ctx: &Context, n: u32, search_limit: u32) -> CliResult<Payload> {
    check_degree(n, 3)?;
    let request = json!({ "command": "bounds", "n": n, "search_limit": search_limit });
    ctx.cache.get_or_compute(request, || {
        let opts = ReportOptions {
            search_limit,
            search: ctx.search_options(),
        };
        Ok(Payload::new(Kind::Bounds, true, interval_report(n, &opts)?))
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyResult {
    pub set: BasicSet,
    pub basic: BasicVerdict,
    pub special: Option<SpecialVerdict>,
    /// The uncovered type moving the fewest points.
    pub witness: Option<Partition>,
}

pub fn verify(
    ctx: &Context,
    n: u32,
    spec: &str,
    special: bool,
    oracle: bool,
) -> CliResult<Payload> {
    check_degree(n, 3)?;
    let set = parse_set(spec, n)?;
    ctx.guard_types(n)?;
    let special = special || set.claimed_special;
    let request = json!({ "command": "verify", "set": set, "special": special, "oracle": oracle });
    ctx.cache.get_or_compute(request, || {
        let basic = verify_basic_set(&set)?;
        let witness = basic
            .uncovered
            .iter()
            .min_by_key(|t| n - t.mult(1))
            .cloned();
        let special = special
            .then(|| is_special_basic_set(&set, oracle))
            .transpose()?;
        let ok = basic.basic && special.as_ref().is_none_or(|s| s.special);
        Ok(Payload::new(
            Kind::Verify,
            ok,
            VerifyResult {
                set,
                basic,
                special,
                witness,
            },
        ))
    })
}

pub fn search(
    ctx: &Context,
    n: u32,
    pool: &str,
    force_in: &[String],
    force_out: &[String],
    max_size: Option<u32>,
) -> CliResult<Payload> {
    check_degree(n, 3)?;
    let pool = parse_pool(pool, n)?;
    let list = |items: &[String]| -> CliResult<Vec<Component>> {
        items
            .iter()
            .map(|s| s.parse().map_err(CliError::from))
            .collect()
    };
    let constraints = Constraints {
        force_in: list(force_in)?,
        force_out: list(force_out)?,
        max_size,
    };
    let request =
        json!({ "command": "search", "n": n, "pool": pool.members, "constraints": constraints });
    ctx.cache.get_or_compute(request, || {
        let cert = min_cover_search(&pool, &constraints, &ctx.search_options())?;
        Ok(Payload::new(Kind::Search, true, cert))
    })
}

pub fn certify(ctx: &Context, n: u32) -> CliResult<Payload> {
    let request = json!({ "command": "certify", "n": n });
    ctx.cache.get_or_compute(request, || {
        let cert = certify_degree(n, &ctx.search_options())?;
        Ok(Payload::new(
            Kind::Certify,
            cert.unresolved.is_empty(),
            cert,
        ))
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeRow {
    pub shape: MetacyclicShape,
    pub sigma_type: Partition,
    pub component: Option<Component>,
    pub status: Option<CoverageStatus>,
    pub rule: Option<CoverageRule>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapesResult {
    pub n: u32,
    pub set: Option<BasicSet>,
    pub shapes: Vec<ShapeRow>,
}

pub fn shapes(ctx: &Context, n: u32, spec: Option<&str>, oracle: bool) -> CliResult<Payload> {
    check_degree(n, 4)?;
    let set = spec.map(|s| parse_set(s, n)).transpose()?;
    ctx.guard_types(n)?;
    let request = json!({ "command": "shapes", "n": n, "set": set, "oracle": oracle });
    ctx.cache.get_or_compute(request, || {
        let verdict = set
            .as_ref()
            .map(|s| is_special_basic_set(s, oracle))
            .transpose()?;
        let shapes = enumerate_shapes(n)?
            .into_iter()
            .map(|shape| {
                let cover = verdict
                    .as_ref()
                    .and_then(|v| v.covers.iter().find(|c| c.shape == shape));
                ShapeRow {
                    sigma_type: shape.sigma_type(),
                    component: cover.map(|c| c.component),
                    status: cover.map(|c| c.verdict.status),
                    rule: cover.map(|c| c.verdict.rule),
                    shape,
                }
            })
            .collect::<Vec<_>>();
        let ok = shapes
            .iter()
            .all(|r| set.is_none() || r.component.is_some());
        Ok(Payload::new(
            Kind::Shapes,
            ok,
            ShapesResult { n, set, shapes },
        ))
    })
}

pub fn compare_range(ctx: &Context, from: u64, to: u64) -> CliResult<Payload> {
    let request = json!({ "command": "compare-gh", "from": from, "to": to });
    ctx.cache.get_or_compute(request, || {
        Ok(Payload::new(
            Kind::CompareGh,
            true,
            compare_g_h_range(from, to)?,
        ))
    })
}

pub fn compare_construction(
    ctx: &Context,
    p1: u64,
    p2: u64,
    max_factors: usize,
) -> CliResult<Payload> {
    let request =
        json!({ "command": "compare-gh", "primes": [p1, p2], "max_factors": max_factors });
    ctx.cache.get_or_compute(request, || {
        Ok(Payload::new(
            Kind::GhConstruction,
            true,
            construct_h_below_g(p1, p2, max_factors)?,
        ))
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub file: String,
    pub kind: String,
    pub valid: bool,
    pub error: Option<String>,
}

/// Re-validates a search certificate, or the three parts of a degree
/// certificate.
pub fn check_file(path: &Path) -> CliResult<Payload> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)?;
    let (kind, outcome) = if value.get("lower_bound").is_some() {
        let cert: DegreeCertificate = serde_json::from_value(value)?;
        let outcome = [
            &cert.lower_bound.pool_certificate,
            &cert.lower_bound.augmented_certificate,
            &cert.p2_certificate,
        ]
        .into_iter()
        .try_for_each(check_certificate)
        .and_then(|()| degree_claims(&cert));
        ("degree", outcome)
    } else {
        let cert: CoverCertificate = serde_json::from_value(value)?;
        ("cover", check_certificate(&cert))
    };
    let result = CheckResult {
        file: path.display().to_string(),
        kind: kind.into(),
        valid: outcome.is_ok(),
        error: outcome.err().map(|e| e.to_string()),
    };
    Ok(Payload::new(Kind::CheckCertificate, result.valid, result))
}

fn degree_claims(cert: &DegreeCertificate) -> symcover::Result<()> {
    let lb = &cert.lower_bound;
    let agreed = match (lb.pool_min, lb.augmented_min) {
        (Some(p), Some(a)) if p == a => Some(p),
        _ => None,
    };
    let reject = |why: &str| Err(symcover::Error::Certificate(why.into()));
    if lb.gamma != agreed || cert.gamma != agreed {
        return reject("γ does not follow from the two minima");
    }
    if lb.pool_certificate.size != lb.pool_min || lb.augmented_certificate.size != lb.augmented_min
    {
        return reject("recorded minima differ from their certificates");
    }
    if cert.p2_free == cert.p2_certificate.is_feasible() {
        return reject("P_2 claim contradicts its certificate");
    }
    Ok(())
}
