use classprod::constructive::{
    at_least_one_fixed_point, avoid_conjugator, derangement_product, one_fixed_point_product,
    shrink_fixed_points, two_fixed_point_product,
};
use classprod::partitions::partitions_of;
use classprod::permutations::canonical_rep;
use classprod::{CycleType, Error, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

/// A uniformly chosen class, then a uniformly chosen element of it.
fn of_random_type(n: usize, keep: fn(&CycleType) -> bool) -> impl Strategy<Value = Permutation> {
    let types: Vec<CycleType> = partitions_of(n).unwrap().into_iter().filter(keep).collect();
    (0..types.len(), perm(n)).prop_map(move |(i, g)| canonical_rep(&types[i]).conjugate(&g).unwrap())
}

fn any_type(_: &CycleType) -> bool {
    true
}

fn derangement(t: &CycleType) -> bool {
    t.is_fixed_point_free()
}

fn nontrivial(t: &CycleType) -> bool {
    !t.is_identity()
}

fn pair(lo: usize, hi: usize, a: fn(&CycleType) -> bool, b: fn(&CycleType) -> bool)
    -> impl Strategy<Value = (Permutation, Permutation)> {
    (lo..=hi).prop_flat_map(move |n| (of_random_type(n, a), of_random_type(n, b)))
}

fn same_types(a: &Permutation, b: &Permutation, x: &str, y: &str) -> bool {
    let (ta, tb) = (a.cycle_type().to_string(), b.cycle_type().to_string());
    (ta == x && tb == y) || (ta == y && tb == x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn avoidance_holds_pointwise((a, b) in pair(5, 12, any_type, any_type)) {
        prop_assume!(a.fixed_point_count() + b.fixed_point_count() <= a.n());
        let sigma = avoid_conjugator(&a, &b).unwrap();
        prop_assert_eq!(sigma.n(), a.n());
        let c = a.conjugate(&sigma).unwrap();
        for i in 1..=a.n() {
            prop_assert_ne!(c.apply(i), b.apply(i));
        }
    }

    #[test]
    fn derangement_products((a, b) in pair(5, 12, derangement, any_type)) {
        let w = derangement_product(&a, &b).unwrap();
        w.verify(&a, &b).unwrap();
        prop_assert_eq!(w.fixed_point_count(), 0);
    }

    #[test]
    fn shrinking_leaves_exactly_the_padding_fixed(
        (m, a, b) in (4usize..=8).prop_flat_map(|m| (Just(m), of_random_type(m, derangement), of_random_type(m, nontrivial))),
        extra in 1usize..=4,
    ) {
        let n = m + extra;
        match shrink_fixed_points(&a, &b, m, n) {
            Ok(w) => {
                prop_assert_eq!(w.fixed_point_count(), n - m - 1);
                prop_assert!(w.fixed_points.iter().all(|&p| p > m + 1));
            }
            Err(Error::Impossible(_)) => prop_assert!(m == 4 && same_types(&a, &b, "2,2", "3,1")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn some_product_has_a_fixed_point((a, b) in pair(2, 12, nontrivial, nontrivial)) {
        let w = at_least_one_fixed_point(&a, &b).unwrap();
        w.verify(&a, &b).unwrap();
        prop_assert!(w.fixed_point_count() >= 1);
    }

    #[test]
    fn exactly_one_fixed_point((a, b) in pair(6, 12, nontrivial, nontrivial)) {
        let (ta, tb) = (a.cycle_type(), b.cycle_type());
        prop_assume!(ta.has_cycle_at_least(3) || tb.has_cycle_at_least(3));
        prop_assume!(ta.is_fixed_point_free() || tb.is_fixed_point_free());
        match one_fixed_point_product(&a, &b) {
            Ok(w) => prop_assert_eq!(w.fixed_point_count(), 1),
            Err(Error::Impossible(_)) => prop_assert!(a.n() == 6 && same_types(&a, &b, "3,3", "2,2,2")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn at_least_two_fixed_points((a, b) in pair(4, 12, nontrivial, nontrivial)) {
        let (ta, tb) = (a.cycle_type(), b.cycle_type());
        prop_assume!(ta.is_fixed_point_free() || tb.is_fixed_point_free());
        let applies = (ta.has_cycle_at_least(3) && tb.has_cycle_at_least(3))
            || (ta.moved_point_count() >= 4 && tb.moved_point_count() >= 4)
            || (ta.contains_part(2) && tb.contains_part(2));
        match two_fixed_point_product(&a, &b) {
            Ok(w) => {
                prop_assert!(applies);
                prop_assert!(w.fixed_point_count() >= 2);
            }
            Err(Error::Domain(_)) => prop_assert!(!applies),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn every_admissible_pair_in_s6_gets_one_fixed_point() {
    // Exhaustive over type pairs at the smallest degree, where the fallback search may be used.
    for ta in partitions_of(6).unwrap() {
        for tb in partitions_of(6).unwrap() {
            if ta.is_identity() || tb.is_identity() {
                continue;
            }
            if !(ta.has_cycle_at_least(3) || tb.has_cycle_at_least(3)) {
                continue;
            }
            if !(ta.is_fixed_point_free() || tb.is_fixed_point_free()) {
                continue;
            }
            let (a, b) = (canonical_rep(&ta), canonical_rep(&tb));
            match one_fixed_point_product(&a, &b) {
                Ok(w) => assert_eq!(w.fixed_point_count(), 1, "[{ta}] [{tb}]"),
                Err(Error::Impossible(_)) => assert!(same_types(&a, &b, "3,3", "2,2,2")),
                Err(e) => panic!("[{ta}] [{tb}]: {e}"),
            }
        }
    }
}

#[test]
fn transposition_square_components_are_all_constructible() {
    // The three classes in the square of the transposition class are each
    // reached by an explicit conjugate: the identity, a 3-cycle and a double
    // transposition.
    let n = 6;
    let t = Permutation::transposition(n, 1, 2).unwrap();
    let w = at_least_one_fixed_point(&t, &t).unwrap();
    let mut found = vec![w.product.cycle_type()];
    for sigma in [
        Permutation::transposition(n, 2, 3).unwrap(),
        Permutation::parse("(1 3)(2 4)", n).unwrap(),
    ] {
        found.push(t.conjugate(&sigma).unwrap().compose(&t).unwrap().cycle_type());
    }
    found.sort();
    let names: Vec<String> = found.iter().map(|c| c.to_string()).collect();
    assert_eq!(names, ["1,1,1,1,1,1", "2,2,1,1", "3,1,1,1"]);
}
