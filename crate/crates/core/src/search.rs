//! Exact minimum cover of the types of `S_n` by components of a pool, with
//! certificates that can be re-checked without searching.
//!
//! The search deepens the size bound one step at a time, so every size
//! below the reported one has been exhausted. Each level branches on the
//! uncovered type with the fewest admitting components; siblings already
//! tried are excluded from later branches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::g_bound;
use crate::component::{Component, ComponentPool};
use crate::error::{domain, Error, Result};
use crate::partition::{enumerate_partitions, partition_count, Partition};
use crate::rules::{check_trace, membership, ExclusionTrace, Membership};

pub const CERTIFICATE_SCHEMA: &str = "symcover.certificate/1";

/// Largest number of types searched without an explicit override.
pub const MAX_TYPES: usize = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub force_in: Vec<Component>,
    pub force_out: Vec<Component>,
    pub max_size: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Search even when `p(n)` exceeds [`MAX_TYPES`].
    pub allow_large: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverStatus {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    #[serde(rename = "type")]
    pub ty: Partition,
    pub component: Component,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub size: u32,
    pub feasible: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimality {
    /// One entry per size tried, in increasing order.
    pub levels: Vec<Level>,
    /// Largest size shown infeasible by exhaustion.
    pub infeasible_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub schema: String,
    pub n: u32,
    pub pool: Vec<Component>,
    pub constraints: Constraints,
    /// Largest size searched.
    pub cap: u32,
    pub status: CoverStatus,
    pub size: Option<u32>,
    pub chosen: Vec<Component>,
    /// Every type in enumeration order, with the first chosen component
    /// admitting it.
    pub assignment: Vec<Assignment>,
    pub optimality: Optimality,
    /// Rule-based exclusions for the pool's primitive facts.
    pub exclusion_traces: Vec<ExclusionTrace>,
    /// Chosen components admitted only because no rule excludes them.
    pub over_approximated: Vec<Component>,
    pub note: Option<String>,
}

impl CoverCertificate {
    pub fn is_feasible(&self) -> bool {
        self.status == CoverStatus::Feasible
    }
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn count_new(col: &Bits, covered: &Bits) -> u32 {
    col.iter()
        .zip(covered)
        .map(|(c, v)| (c & !v).count_ones())
        .sum()
}

struct Universe {
    types: Vec<Partition>,
    cols: Vec<Bits>,
    traces: Vec<ExclusionTrace>,
    over: Vec<bool>,
}

impl Universe {
    fn build(n: u32, pool: &ComponentPool, opts: &SearchOptions) -> Result<Self> {
        let count = partition_count(n);
        if count > MAX_TYPES as u128 && !opts.allow_large {
            return Err(Error::Resource(format!(
                "S_{n} has {count} types, above the limit of {MAX_TYPES}"
            )));
        }
        let types = enumerate_partitions(n)?;
        let words = types.len().div_ceil(64);
        let mut cols = Vec::with_capacity(pool.len());
        let mut traces = Vec::new();
        let mut over = Vec::with_capacity(pool.len());
        for c in &pool.members {
            let mut col = vec![0u64; words];
            for (i, t) in types.iter().enumerate() {
                match membership(c, t)? {
                    Membership::Contains | Membership::Possible => col[i / 64] |= 1 << (i % 64),
                    Membership::Excludes => {}
                    Membership::ExcludedBy(trace) => traces.push(trace),
                }
            }
            cols.push(col);
            over.push(c.is_rule_only());
        }
        Ok(Universe {
            types,
            cols,
            traces,
            over,
        })
    }

    fn full(&self) -> Bits {
        let mut full = vec![u64::MAX; self.types.len().div_ceil(64)];
        let rem = self.types.len() % 64;
        if rem != 0 {
            *full.last_mut().unwrap() = (1u64 << rem) - 1;
        }
        full
    }
}

struct Dfs<'a> {
    cols: &'a [Bits],
    full: &'a Bits,
    ntypes: usize,
    nodes: u64,
}

impl Dfs<'_> {
    /// Candidate components for the next branch, best first, or `None` when
    /// some uncovered type has no admitting component left.
    fn branches(&self, covered: &Bits, allowed: &[bool]) -> Option<Vec<usize>> {
        let mut best: Option<(usize, u32)> = None;
        for i in 0..self.ntypes {
            if bit(covered, i) {
                continue;
            }
            let k = (0..self.cols.len())
                .filter(|&c| allowed[c] && bit(&self.cols[c], i))
                .count() as u32;
            if best.is_none_or(|(_, b)| k < b) {
                best = Some((i, k));
                if k == 0 {
                    return None;
                }
            }
        }
        let (ty, _) = best?;
        let mut cands: Vec<(usize, u32)> = (0..self.cols.len())
            .filter(|&c| allowed[c] && bit(&self.cols[c], ty))
            .map(|c| (c, count_new(&self.cols[c], covered)))
            .collect();
        cands.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        Some(cands.into_iter().map(|(c, _)| c).collect())
    }

    fn run(
        &mut self,
        covered: &Bits,
        allowed: &mut Vec<bool>,
        left: u32,
        chosen: &mut Vec<usize>,
    ) -> bool {
        self.nodes += 1;
        if covered == self.full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let uncovered: u32 = self
            .full
            .iter()
            .zip(covered)
            .map(|(f, c)| (f & !c).count_ones())
            .sum();
        let best_gain = (0..self.cols.len())
            .filter(|&c| allowed[c])
            .map(|c| count_new(&self.cols[c], covered))
            .max()
            .unwrap_or(0);
        if best_gain * left < uncovered {
            return false;
        }
        let Some(cands) = self.branches(covered, allowed) else {
            return false;
        };
        let saved = allowed.clone();
        for c in cands {
            let next: Bits = covered
                .iter()
                .zip(&self.cols[c])
                .map(|(a, b)| a | b)
                .collect();
            allowed[c] = false;
            chosen.push(c);
            if self.run(&next, &mut allowed.clone(), left - 1, chosen) {
                *allowed = saved;
                return true;
            }
            chosen.pop();
        }
        *allowed = saved;
        false
    }
}

/// One level: is there a cover with at most `size` components on top of
/// `base`? Returns the added components and the node count.
fn search_level(
    u: &Universe,
    full: &Bits,
    base: &Bits,
    allowed: &[bool],
    size: u32,
) -> (Option<Vec<usize>>, u64) {
    let root = Dfs {
        cols: &u.cols,
        full,
        ntypes: u.types.len(),
        nodes: 1,
    };
    if base == full {
        return (Some(Vec::new()), 1);
    }
    if size == 0 {
        return (None, 1);
    }
    let Some(cands) = root.branches(base, allowed) else {
        return (None, 1);
    };
    let results: Vec<(Option<Vec<usize>>, u64)> = cands
        .par_iter()
        .enumerate()
        .map(|(k, &c)| {
            let mut allowed = allowed.to_vec();
            for &earlier in &cands[..k] {
                allowed[earlier] = false;
            }
            allowed[c] = false;
            let next: Bits = base.iter().zip(&u.cols[c]).map(|(a, b)| a | b).collect();
            let mut dfs = Dfs {
                cols: &u.cols,
                full,
                ntypes: u.types.len(),
                nodes: 0,
            };
            let mut chosen = vec![c];
            let found = dfs.run(&next, &mut allowed, size - 1, &mut chosen);
            (found.then_some(chosen), dfs.nodes)
        })
        .collect();
    let nodes = 1 + results.iter().map(|r| r.1).sum::<u64>();
    (results.into_iter().find_map(|r| r.0), nodes)
}

fn with_threads<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|p| p.install(f))
            .map_err(|e| Error::Resource(e.to_string())),
    }
}

/// Minimum cover of all types of `S_n` by pool components, subject to the
/// constraints. The size cap defaults to `g(n)` (or the pool size for
/// `n < 4`).
pub fn min_cover_search(
    pool: &ComponentPool,
    constraints: &Constraints,
    opts: &SearchOptions,
) -> Result<CoverCertificate> {
    let n = pool.n;
    if pool.is_empty() {
        return domain("empty pool");
    }
    for c in constraints.force_in.iter().chain(&constraints.force_out) {
        c.validate(n)?;
        if !pool.contains(c) {
            return domain(format!("constrained component {c} is not in the pool"));
        }
    }
    let cap = match constraints.max_size {
        Some(m) => m,
        None if n >= 4 => g_bound(n as u64)? as u32,
        None => pool.len() as u32,
    };
    let u = Universe::build(n, pool, opts)?;
    let full = u.full();
    let index = |c: &Component| pool.members.iter().position(|m| m == c).unwrap();

    let mut cert = CoverCertificate {
        schema: CERTIFICATE_SCHEMA.into(),
        n,
        pool: pool.members.clone(),
        constraints: constraints.clone(),
        cap,
        status: CoverStatus::Infeasible,
        size: None,
        chosen: Vec::new(),
        assignment: Vec::new(),
        optimality: Optimality {
            levels: Vec::new(),
            infeasible_at: None,
        },
        exclusion_traces: u.traces.clone(),
        over_approximated: Vec::new(),
        note: None,
    };
    if constraints
        .force_in
        .iter()
        .any(|c| constraints.force_out.contains(c))
    {
        cert.note = Some("a component is both forced in and forced out".into());
        return Ok(cert);
    }
    let mut forced: Vec<usize> = constraints.force_in.iter().map(index).collect();
    forced.sort_unstable();
    forced.dedup();
    if forced.len() as u32 > cap {
        cert.note = Some("more forced components than the size cap".into());
        return Ok(cert);
    }
    let mut allowed = vec![true; pool.len()];
    for c in &constraints.force_out {
        allowed[index(c)] = false;
    }
    let mut base = vec![0u64; full.len()];
    for &c in &forced {
        allowed[c] = false;
        for (b, w) in base.iter_mut().zip(&u.cols[c]) {
            *b |= w;
        }
    }

    let start = (forced.len() as u32).max(1);
    let found = with_threads(opts.jobs, || {
        let mut levels = Vec::new();
        for size in start..=cap {
            let (found, nodes) =
                search_level(&u, &full, &base, &allowed, size - forced.len() as u32);
            levels.push(Level {
                size,
                feasible: found.is_some(),
                nodes,
            });
            if let Some(extra) = found {
                return (levels, Some(extra));
            }
        }
        (levels, None)
    })?;
    let (levels, extra) = found;
    cert.optimality.infeasible_at = levels.iter().rev().find(|l| !l.feasible).map(|l| l.size);
    cert.optimality.levels = levels;
    let Some(extra) = extra else {
        cert.note = Some(format!("no cover with at most {cap} components"));
        return Ok(cert);
    };
    let mut chosen: Vec<usize> = forced.into_iter().chain(extra).collect();
    chosen.sort_unstable();
    cert.status = CoverStatus::Feasible;
    cert.size = Some(chosen.len() as u32);
    cert.chosen = chosen.iter().map(|&c| pool.members[c]).collect();
    cert.over_approximated = chosen
        .iter()
        .filter(|&&c| u.over[c])
        .map(|&c| pool.members[c])
        .collect();
    cert.assignment = u
        .types
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let c = *chosen.iter().find(|&&c| bit(&u.cols[c], i)).expect("cover");
            Assignment {
                ty: t.clone(),
                component: pool.members[c],
            }
        })
        .collect();
    Ok(cert)
}

/// Re-validates a certificate using only the partition and component code.
///
/// Checks the pool and constraints, that the assignment lists every type
/// once in enumeration order, that each type goes to the first chosen
/// component admitting it, and every exclusion trace. Infeasibility claims
/// are checked for consistency only; they are reproduced by searching.
pub fn check_certificate(cert: &CoverCertificate) -> Result<()> {
    let reject = |why: String| Err(Error::Certificate(why));
    if cert.schema != CERTIFICATE_SCHEMA {
        return reject(format!("unknown schema {:?}", cert.schema));
    }
    let n = cert.n;
    let pool = ComponentPool::new(n, cert.pool.clone())?;
    let cons = &cert.constraints;
    for c in cons.force_in.iter().chain(&cons.force_out) {
        if !pool.contains(c) {
            return reject(format!("constrained component {c} outside the pool"));
        }
    }
    for trace in &cert.exclusion_traces {
        check_trace(trace)?;
        match &trace.component {
            Some(c) if pool.contains(c) => {}
            _ => {
                return reject(format!(
                    "trace for {} names a component outside the pool",
                    trace.ty
                ))
            }
        }
    }
    let levels = &cert.optimality.levels;
    if levels.windows(2).any(|w| w[1].size != w[0].size + 1) {
        return reject("levels are not consecutive".into());
    }
    if levels.iter().rev().skip(1).any(|l| l.feasible) {
        return reject("only the last level may be feasible".into());
    }
    if cert.optimality.infeasible_at != levels.iter().rev().find(|l| !l.feasible).map(|l| l.size) {
        return reject("infeasible_at disagrees with the levels".into());
    }
    match cert.status {
        CoverStatus::Infeasible => {
            if cert.size.is_some() || !cert.chosen.is_empty() || !cert.assignment.is_empty() {
                return reject("an infeasible certificate carries a cover".into());
            }
            if levels.iter().any(|l| l.feasible) {
                return reject("an infeasible certificate has a feasible level".into());
            }
            return Ok(());
        }
        CoverStatus::Feasible => {}
    }
    let size = cert.chosen.len() as u32;
    if cert.size != Some(size) || size > cert.cap || cons.max_size.is_some_and(|m| size > m) {
        return reject("size does not match the chosen components or the cap".into());
    }
    if levels.last().is_some_and(|l| !l.feasible || l.size != size) {
        return reject("last level does not match the cover size".into());
    }
    for (i, c) in cert.chosen.iter().enumerate() {
        if !pool.contains(c) || cert.chosen[..i].contains(c) {
            return reject(format!(
                "chosen component {c} is repeated or outside the pool"
            ));
        }
        if cons.force_out.contains(c) {
            return reject(format!("forced-out component {c} was chosen"));
        }
    }
    if let Some(c) = cons.force_in.iter().find(|c| !cert.chosen.contains(c)) {
        return reject(format!("forced-in component {c} missing"));
    }
    let over: Vec<Component> = cert
        .chosen
        .iter()
        .copied()
        .filter(|c| c.is_rule_only())
        .collect();
    if over != cert.over_approximated {
        return reject("over-approximated list is wrong".into());
    }
    let types = enumerate_partitions(n)?;
    if types.len() != cert.assignment.len() {
        return reject(format!(
            "assignment lists {} types, S_{n} has {}",
            cert.assignment.len(),
            types.len()
        ));
    }
    for (t, a) in types.iter().zip(&cert.assignment) {
        if *t != a.ty {
            return reject(format!("assignment out of order at {}", a.ty));
        }
        let mut first = None;
        for c in &cert.chosen {
            if membership(c, t)?.admits() {
                first = Some(*c);
                break;
            }
        }
        match first {
            Some(c) if c == a.component => {}
            Some(c) => {
                return reject(format!(
                    "{t} assigned to {}, first admitting component is {c}",
                    a.component
                ))
            }
            None => return reject(format!("{t} is not covered")),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(n: u32) -> ComponentPool {
        ComponentPool::standard(n, false).unwrap()
    }

    #[test]
    fn small_minimum_covers() {
        let cert =
            min_cover_search(&standard(10), &Constraints::default(), &Default::default()).unwrap();
        assert_eq!(cert.size, Some(3));
        assert_eq!(cert.optimality.infeasible_at, Some(2));
        check_certificate(&cert).unwrap();

        let cert =
            min_cover_search(&standard(4), &Constraints::default(), &Default::default()).unwrap();
        assert_eq!(cert.size, Some(2));
    }

    #[test]
    fn forced_p2_is_infeasible_at_ten() {
        let cons = Constraints {
            force_in: vec![Component::Intransitive { x: 2 }],
            force_out: vec![],
            max_size: Some(3),
        };
        let cert = min_cover_search(&standard(10), &cons, &Default::default()).unwrap();
        assert_eq!(cert.status, CoverStatus::Infeasible);
        assert_eq!(cert.optimality.infeasible_at, Some(3));
        check_certificate(&cert).unwrap();
    }

    #[test]
    fn contradictory_constraints() {
        let c = Component::Alternating;
        let cons = Constraints {
            force_in: vec![c],
            force_out: vec![c],
            max_size: None,
        };
        let cert = min_cover_search(&standard(6), &cons, &Default::default()).unwrap();
        assert_eq!(cert.status, CoverStatus::Infeasible);
        assert!(cert.note.is_some());
    }

    #[test]
    fn thread_count_does_not_change_the_result() {
        let pool = standard(12);
        let one = min_cover_search(
            &pool,
            &Constraints::default(),
            &SearchOptions {
                jobs: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let four = min_cover_search(
            &pool,
            &Constraints::default(),
            &SearchOptions {
                jobs: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn mutated_assignment_is_rejected() {
        let cert =
            min_cover_search(&standard(8), &Constraints::default(), &Default::default()).unwrap();
        for i in 0..cert.assignment.len() {
            for c in &cert.chosen {
                if *c == cert.assignment[i].component {
                    continue;
                }
                let mut bad = cert.clone();
                bad.assignment[i].component = *c;
                assert!(check_certificate(&bad).is_err());
            }
        }
    }
}
