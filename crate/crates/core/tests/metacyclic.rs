use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};
use symcover::basic_set::{build_named_set, SetName};
use symcover::component::{Component, ComponentPool};
use symcover::metacyclic::*;
use symcover::perm::{explicit_containment, Perm};

#[test]
fn intransitive_verdicts_are_exact_up_to_twelve() {
    for n in 4..=12 {
        for s in enumerate_shapes(n).unwrap() {
            for x in 1..=n / 2 {
                let h = Component::Intransitive { x };
                let v = covered_by_intransitive(&s, x).unwrap();
                assert_ne!(v.status, CoverageStatus::NotEstablished);
                assert_eq!(
                    v.is_covered(),
                    oracle_contained(&s, &h).unwrap(),
                    "{s} in {h}"
                );
            }
        }
    }
}

#[test]
fn covered_wreath_verdicts_are_confirmed_up_to_twelve() {
    for n in 4..=12 {
        for s in enumerate_shapes(n).unwrap() {
            for b in (2..=n / 2).filter(|b| n % b == 0) {
                let h = Component::Imprimitive { b, m: n / b };
                let v = covered_by_wreath(&s, b, n / b).unwrap();
                assert_ne!(v.status, CoverageStatus::Impossible);
                if v.is_covered() {
                    assert!(oracle_contained(&s, &h).unwrap(), "{s} in {h}");
                }
            }
        }
    }
}

#[test]
fn alternating_never_contains_a_shape() {
    for n in 4..=10 {
        for s in enumerate_shapes(n).unwrap() {
            assert_eq!(
                covered_by_alternating(&s).status,
                CoverageStatus::Impossible
            );
            assert!(!oracle_contained(&s, &Component::Alternating).unwrap());
        }
    }
}

#[test]
fn cut_witnesses_isolate_the_pair() {
    let pair = symcover::Partition::from_parts(&[1, 1]).unwrap();
    for n in 4..=16 {
        for s in enumerate_shapes(n).unwrap() {
            for x in 1..=n / 2 {
                let v = covered_by_intransitive(&s, x).unwrap();
                if let Some(VerdictWitness::Cut { cut, .. }) = v.witness {
                    assert!(pair.is_subpartition_of(&cut.left));
                    assert!(cut.size() == x || cut.size() == n - x);
                    assert_eq!(cut.whole, s.sigma_type());
                }
            }
        }
    }
}

#[test]
fn relabeling_does_not_change_containment() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in [6u32, 8, 9] {
        let pool = ComponentPool::standard(n, true).unwrap();
        for s in enumerate_shapes(n).unwrap() {
            let (sigma, tau) = s.generators();
            let mut images: Vec<u32> = (0..n).collect();
            images.shuffle(&mut rng);
            let g = Perm::from_images(images).unwrap();
            let moved = [sigma.conjugate_by(&g), tau.conjugate_by(&g)];
            for h in &pool.members {
                assert_eq!(
                    oracle_contained(&s, h).unwrap(),
                    explicit_containment(&moved, h).unwrap(),
                    "{s} in {h}"
                );
            }
        }
    }
}

#[test]
fn even_degree_case_analysis_needs_no_oracle() {
    for n in (4u32..=30).step_by(2) {
        let name = if n.is_power_of_two() {
            SetName::PrimePower
        } else if symcover::arith::is_prime(n as u64 / 2) {
            SetName::TwoP
        } else {
            SetName::DeltaC
        };
        let set = build_named_set(name, n).unwrap();
        for s in enumerate_shapes(n).unwrap() {
            let h = even_degree_witness(&s).unwrap();
            assert!(set.components.contains(&h), "{s}: {h} not in {name}({n})");
            assert!(covered_by(&s, &h).unwrap().is_covered(), "{s} in {h}");
        }
    }
}

#[test]
fn primitive_components_never_hold_a_transposition() {
    let s = MetacyclicShape::new(7, &[2, 2, 1]).unwrap();
    let v = covered_by(&s, &Component::Affine { p: 7 }).unwrap();
    assert_eq!(v.status, CoverageStatus::Impossible);
    assert_eq!(v.rule, CoverageRule::PrimitiveTransposition);
}
