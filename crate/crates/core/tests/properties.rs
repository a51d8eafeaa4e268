use fatpoints::dimension::{q_value, restrict_to_quadric};
use fatpoints::reduction::{is_pre_standard, is_standard};
use fatpoints::{
    chi, enumerate_minus_one, h0_interpolation, is_minus_one_class, oracle, pre_standard_form, standardize,
    DivisorClass, InterpolationProblem, ReductionStatus, RootClass,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn class_strategy(n_range: std::ops::RangeInclusive<usize>, max_points: usize) -> impl Strategy<Value = DivisorClass> {
    (n_range, -5i64..30, prop::collection::vec(-4i64..15, 0..=max_points))
        .prop_map(|(n, d, m)| DivisorClass::from_ints(n, d, &m).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = (DivisorClass, DivisorClass)> {
    (
        2usize..=5,
        -5i64..30,
        prop::collection::vec((-4i64..15, -4i64..15), 0..=9),
    )
        .prop_map(|(n, d, pairs)| {
            let a: Vec<i64> = pairs.iter().map(|p| p.0).collect();
            let b: Vec<i64> = pairs.iter().map(|p| p.1).collect();
            (
                DivisorClass::from_ints(n, d, &a).unwrap(),
                DivisorClass::from_ints(n, d / 2 + 1, &b).unwrap(),
            )
        })
}

fn generators(n: usize, points: usize) -> Vec<RootClass> {
    let mut roots = vec![RootClass::cremona_root(n).unwrap()];
    for slot in 0..points.saturating_sub(1) {
        roots.push(RootClass::transposition_root(n, slot).unwrap());
    }
    roots
}

/// Degree and nonzero multiplicities; endpoints are sorted, so this forgets
/// only where padded zero slots ended up.
fn nonzero_part(class: &DivisorClass) -> (BigInt, Vec<BigInt>) {
    let mults = class.mults().iter().filter(|m| !m.is_zero()).cloned().collect();
    (class.degree().clone(), mults)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reflections_are_isometric_involutions((a, b) in pair_strategy()) {
        let n = a.ambient_dim();
        let before = a.intersect(&b).unwrap();
        for root in generators(n, a.points()) {
            let ra = a.reflect(&root).unwrap();
            let rb = b.reflect(&root).unwrap();
            prop_assert_eq!(ra.intersect(&rb).unwrap(), before.clone());
            prop_assert_eq!(ra.k_dot(), a.k_dot());
            prop_assert_eq!(ra.reflect(&root).unwrap(), a.clone());
        }
    }

    #[test]
    fn cremona_matches_reflection(a in class_strategy(2..=6, 9)) {
        let root = RootClass::cremona_root(a.ambient_dim()).unwrap();
        prop_assert_eq!(a.cremona(), a.reflect(&root).unwrap());
        prop_assert_eq!(a.cremona().cremona(), a.clone());
    }

    #[test]
    fn padding_is_neutral(a in class_strategy(2..=5, 8), extra in 1usize..4) {
        let padded = a.with_points(a.points() + extra);
        prop_assert_eq!(&padded, &a);
        prop_assert_eq!(padded.self_intersection(), a.self_intersection());
        prop_assert_eq!(padded.k_dot(), a.k_dot());
        let (sp, sa) = (standardize(&padded), standardize(&a));
        prop_assert_eq!(sp.status, sa.status);
        if sa.status == ReductionStatus::Standard {
            prop_assert_eq!(nonzero_part(&sp.result), nonzero_part(&sa.result));
        }
    }

    #[test]
    fn pre_standard_word_round_trips(a in class_strategy(2..=5, 9)) {
        let report = pre_standard_form(&a);
        prop_assert!(report.word.is_weyl());
        prop_assert_eq!(a.apply_word(&report.word), report.result.clone());
        let back = report.result.apply_word(&report.word.invert().unwrap());
        prop_assert_eq!(back, a.clone());
        if report.status == ReductionStatus::PreStandard {
            prop_assert!(is_pre_standard(&report.result));
        }
    }

    #[test]
    fn standardize_is_idempotent(a in class_strategy(2..=5, 9)) {
        let once = standardize(&a);
        let twice = standardize(&once.result);
        prop_assert_eq!(&twice.result, &once.result);
        prop_assert_eq!(twice.status, once.status);
        match once.status {
            ReductionStatus::Standard => {
                prop_assert!(is_standard(&once.result));
                prop_assert!(twice.word.moves().iter().all(|m| m.is_weyl()));
            }
            ReductionStatus::NotEffective => {
                let r = &once.result;
                prop_assert!(r.degree().is_negative() || *r.degree() < r.mult(0));
            }
            ReductionStatus::PreStandard => prop_assert!(false, "standardize returned PreStandard"),
        }
    }

    #[test]
    fn plane_weyl_moves_preserve_chi(a in class_strategy(2..=2, 9)) {
        let before = chi(&a);
        for root in generators(2, a.points()) {
            prop_assert_eq!(chi(&a.reflect(&root).unwrap()), before.clone());
        }
    }

    #[test]
    fn q_equals_chi_of_restriction(d in 0i64..40, mut m in prop::collection::vec(0i64..20, 0..=12)) {
        m.sort_unstable_by(|x, y| y.cmp(x));
        let class = DivisorClass::from_ints(3, d, &m).unwrap();
        let standard = standardize(&class);
        prop_assume!(standard.status == ReductionStatus::Standard);
        let s = standard.result;
        prop_assert_eq!(q_value(&s).unwrap(), chi(&restrict_to_quadric(&s).unwrap()));
    }

    #[test]
    fn weyl_moves_keep_minus_one_classes(r in 3usize..=8, pick in 0usize..1000, seq in prop::collection::vec(0usize..8, 0..6)) {
        let set = enumerate_minus_one(2, r, 3);
        let classes: Vec<DivisorClass> = set.iter().collect();
        let mut e = classes[pick % classes.len()].clone();
        let roots = generators(2, r);
        for g in seq {
            e = e.reflect(&roots[g % roots.len()]).unwrap();
            prop_assert!(is_minus_one_class(&e).verdict);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn adding_a_point_never_raises_h0(n in 2usize..=3, d in 0usize..6, m in prop::collection::vec(1usize..4, 0..5), extra in 1usize..4) {
        let p = oracle::DEFAULT_PRIME;
        let base = InterpolationProblem::new(n, d, &m, p, 0, 2).unwrap();
        let mut more = m.clone();
        more.push(extra);
        let bigger = InterpolationProblem::new(n, d, &more, p, 0, 2).unwrap();
        prop_assert!(h0_interpolation(&bigger) <= h0_interpolation(&base));
    }

    #[test]
    fn oracle_is_deterministic(d in 0usize..6, m in prop::collection::vec(1usize..4, 0..6), seed in 0u64..1000) {
        let p = oracle::DEFAULT_PRIME;
        let a = InterpolationProblem::new(2, d, &m, p, seed, 2).unwrap();
        let b = InterpolationProblem::new(2, d, &m, p, seed, 2).unwrap();
        prop_assert_eq!(h0_interpolation(&a), h0_interpolation(&b));
    }
}

#[test]
fn standardize_keeps_h0_on_small_plane_classes() {
    // Effective-side spot check: h^0 computed directly equals h^0 of the standard endpoint.
    for (d, m) in [
        (4, vec![2, 2, 2, 2, 2]),
        (6, vec![3, 3, 2, 2, 1]),
        (5, vec![4, 1, 1]),
        (7, vec![3, 3, 3, 3, 1]),
    ] {
        let class = DivisorClass::from_ints(2, d, &m).unwrap();
        let direct = oracle::oracle_h0(&class, oracle::DEFAULT_PRIME, 0, 3).unwrap();
        let report = standardize(&class);
        let reduced = if report.status == ReductionStatus::NotEffective {
            0
        } else {
            oracle::oracle_h0(&report.result, oracle::DEFAULT_PRIME, 0, 3).unwrap()
        };
        assert_eq!(direct, reduced, "{class}");
        assert!(BigInt::from(direct) >= chi(&class).max(BigInt::from(0)));
    }
}
