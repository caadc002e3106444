mod common;

use common::{raw, raw_closure, raw_mul};
use proptest::prelude::*;
use wexp_core::{PermGroup, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(degree: usize, max: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(degree), 1..=max)
}

fn degree_and_gens() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..=9).prop_flat_map(|d| (Just(d), perms(d, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bsgs_order_matches_closure((d, gens) in degree_and_gens()) {
        let g = PermGroup::new(gens.clone(), d).unwrap();
        prop_assume!(g.order() <= 5000);
        let raws: Vec<_> = gens.iter().map(raw).collect();
        prop_assert_eq!(g.order(), raw_closure(&raws, d).len() as u128);
    }

    #[test]
    fn products_of_generators_are_members(
        (d, gens) in degree_and_gens(),
        word in prop::collection::vec(0usize..3, 0..20),
    ) {
        let g = PermGroup::new(gens.clone(), d).unwrap();
        let mut x = Permutation::identity(d);
        for i in word {
            x = x.compose(&gens[i % gens.len()]).unwrap();
        }
        prop_assert!(g.contains(&x).unwrap());
    }

    #[test]
    fn membership_matches_set(
        gens in perms(7, 2),
        probes in prop::collection::vec(perm(7), 20),
    ) {
        let g = PermGroup::new(gens.clone(), 7).unwrap();
        prop_assume!(g.order() < 5040);
        let set = raw_closure(&gens.iter().map(raw).collect::<Vec<_>>(), 7);
        for p in probes {
            prop_assert_eq!(g.contains(&p).unwrap(), set.contains(&raw(&p)));
        }
    }

    #[test]
    fn power_is_iterated_compose(p in perm(10), k in 0i64..=12) {
        let mut acc = (0..10u32).collect::<Vec<_>>();
        for _ in 0..k {
            acc = raw_mul(&acc, &raw(&p));
        }
        prop_assert_eq!(raw(&p.power(k)), acc.clone());
        prop_assert_eq!(raw(&p.power_u128(k as u128)), acc);
        prop_assert!(p.power(-k).compose(&p.power(k)).unwrap().is_identity());
    }

    #[test]
    fn conjugation_preserves_order_and_cycle_type(x in perm(12), g in perm(12)) {
        let y = x.conjugate(&g).unwrap();
        prop_assert_eq!(y.order(), x.order());
        prop_assert_eq!(y.cycle_type(), x.cycle_type());
        // x^g = g⁻¹xg with left-to-right composition
        let direct = g.inverse().compose(&x).unwrap().compose(&g).unwrap();
        prop_assert_eq!(y, direct);
    }

    #[test]
    fn cycle_notation_round_trips(x in perm(11)) {
        let text = x.to_string();
        prop_assert_eq!(Permutation::parse(&text, 11).unwrap(), x.clone());
        prop_assert_eq!(Permutation::from_images_1based(&x.images_1based()).unwrap(), x);
    }

    #[test]
    fn orbits_partition_points((d, gens) in degree_and_gens()) {
        let g = PermGroup::new(gens.clone(), d).unwrap();
        let mut all: Vec<usize> = g.orbits().concat();
        all.sort();
        prop_assert_eq!(all, (1..=d).collect::<Vec<_>>());
        for orbit in g.orbits() {
            for &pt in &orbit {
                for s in &gens {
                    prop_assert!(orbit.contains(&s.apply(pt)));
                }
            }
        }
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    let g = common::group("PSL2:7");
    let elems = g.elements(1000).unwrap();
    let set: std::collections::HashSet<_> = elems.iter().map(raw).collect();
    assert_eq!(set.len(), 168);
    assert!(elems.iter().all(|e| g.contains(e).unwrap()));
}

#[test]
fn degree_mismatch_is_an_error() {
    let g = common::group("S:4");
    let x = Permutation::parse("(1 2)", 5).unwrap();
    assert!(g.contains(&x).is_err());
    assert!(Permutation::parse("(1 2)", 4).unwrap().compose(&x).is_err());
}
