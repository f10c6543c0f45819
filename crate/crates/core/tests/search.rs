use symcover::bounds::g_bound;
use symcover::certify::{certify_degree, certify_lower_bound};
use symcover::component::{Component, ComponentPool};
use symcover::search::{check_certificate, min_cover_search, Constraints, SearchOptions};

fn pool_min(n: u32, constraints: &Constraints) -> Option<u32> {
    let pool = ComponentPool::standard(n, false).unwrap();
    let cert = min_cover_search(&pool, constraints, &SearchOptions::default()).unwrap();
    check_certificate(&cert).unwrap();
    cert.size
}

#[test]
fn standard_pool_minimum_is_g() {
    for n in (4..=13).chain([15]) {
        let g = g_bound(n as u64).unwrap() as u32;
        assert_eq!(pool_min(n, &Constraints::default()), Some(g), "n = {n}");
    }
}

#[test]
fn prime_degrees_need_half_the_degree() {
    for p in [5u32, 7, 11, 13, 17] {
        let lb = certify_lower_bound(p, &SearchOptions::default()).unwrap();
        assert_eq!(lb.gamma, Some((p - 1) / 2), "p = {p}");
        assert!(lb.unresolved.is_empty());
    }
}

#[test]
fn small_even_degrees_stay_unresolved_by_rules() {
    for n in [6u32, 8, 12] {
        let lb = certify_lower_bound(n, &SearchOptions::default()).unwrap();
        assert!(lb.augmented_min < lb.pool_min, "n = {n}");
        assert_eq!(lb.gamma, None);
        assert!(!lb.unresolved.is_empty());
    }
}

#[test]
fn dropping_p1_at_odd_degree_costs_a_component() {
    for n in [9u32, 15] {
        let base = pool_min(n, &Constraints::default()).unwrap();
        let without = Constraints {
            force_out: vec![Component::Intransitive { x: 1 }],
            ..Default::default()
        };
        let forced = pool_min(n, &without);
        assert!(
            forced.is_none_or(|f| f > base),
            "n = {n}: {forced:?} vs {base}"
        );
    }
}

#[test]
fn degree_certificates_for_ten_and_fourteen() {
    for (n, gamma) in [(10u32, 3u32), (14, 4)] {
        let c = certify_degree(n, &SearchOptions::default()).unwrap();
        assert_eq!(c.gamma, Some(gamma));
        assert!(c.p2_free);
        assert!(c.unresolved.is_empty());
        assert_eq!(
            c.summary,
            format!("γ(S_{n})={gamma}; no size-{gamma} cover contains P_2")
        );
        check_certificate(&c.p2_certificate).unwrap();
    }
    assert!(certify_degree(12, &SearchOptions::default()).is_err());
}

#[test]
fn certificates_survive_a_json_round_trip() {
    let pool = ComponentPool::standard(12, true).unwrap();
    let cert = min_cover_search(
        &pool,
        &Constraints::default(),
        &SearchOptions {
            jobs: Some(2),
            ..Default::default()
        },
    )
    .unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let back: symcover::search::CoverCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    check_certificate(&back).unwrap();
}
