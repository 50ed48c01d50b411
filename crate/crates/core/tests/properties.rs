use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use gnc::formulas::narayana_check;
use gnc::patterns::{avoids, census, census_sharded, word_contains, PatternSet};
use gnc::schroder::{decode_path, encode_tree, enumerate_schroder};
use gnc::series::Solutions;
use gnc::trees::{enumerate_nc_trees, make_gnc, EdgeClass, JumpSet, PathWord};
use gnc::{GncTree, Limits, NcTree, SchroderPath, UniSeries};

const MAX_N: usize = 5;

fn bases() -> &'static Vec<Vec<NcTree>> {
    static BASES: OnceLock<Vec<Vec<NcTree>>> = OnceLock::new();
    BASES.get_or_init(|| {
        (0..=MAX_N)
            .map(|n| enumerate_nc_trees(n + 1, &Limits::default()).unwrap())
            .collect()
    })
}

fn paths() -> &'static Vec<Vec<SchroderPath>> {
    static PATHS: OnceLock<Vec<Vec<SchroderPath>>> = OnceLock::new();
    PATHS.get_or_init(|| (0..=6).map(|n| enumerate_schroder(n, &Limits::default()).unwrap()).collect())
}

fn gnc_tree() -> impl Strategy<Value = GncTree> {
    (0..=MAX_N, any::<usize>(), any::<u32>()).prop_map(|(n, i, mask)| {
        let all = &bases()[n];
        let base = all[i % all.len()].clone();
        let gaps: Vec<usize> = (1..=n).filter(|k| mask >> k & 1 == 1).collect();
        make_gnc(base, &gaps).unwrap()
    })
}

fn pattern_set() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(prop::sample::select(vec!['u', 'h', 'd']), 1..=3), 0..=3)
        .prop_map(|words| words.into_iter().map(|w| w.into_iter().collect::<String>()).collect::<Vec<_>>().join(","))
}

fn uni(coeffs: &[i64]) -> UniSeries {
    UniSeries::from_integers(coeffs)
}

proptest! {
    #[test]
    fn labels_are_contiguous_from_one(mask in any::<u32>(), n in 0usize..20) {
        let gaps: Vec<usize> = (1..=n).filter(|k| mask >> k & 1 == 1).collect();
        let jumps = JumpSet::from_gaps(n, &gaps).unwrap();
        prop_assert_eq!(jumps.label(0), 1);
        for k in 1..=n {
            let step = jumps.label(k) - jumps.label(k - 1);
            prop_assert_eq!(step, u32::from(jumps.contains(k)));
        }
        prop_assert_eq!(jumps.gaps(), gaps);
    }

    #[test]
    fn trees_are_valid_and_classified_by_labels(tree in gnc_tree()) {
        prop_assert!(tree.validate().is_empty());
        let stats = tree.stats();
        prop_assert_eq!(stats.total(), tree.n());
        for v in 1..=tree.n() {
            let p = tree.base().parent(v).unwrap();
            let expected = EdgeClass::from_labels(tree.label(p), tree.label(v));
            prop_assert_eq!(tree.edge_class(v), Some(expected));
            prop_assert_eq!(tree.path_word(v).0.last().copied(), Some(expected));
        }
    }

    #[test]
    fn json_round_trip(tree in gnc_tree()) {
        let text = serde_json::to_string(&tree.to_json()).unwrap();
        prop_assert_eq!(GncTree::from_json_str(&text).unwrap(), tree);
    }

    #[test]
    fn avoidance_matches_path_words(tree in gnc_tree(), spec in pattern_set()) {
        let set: PatternSet = spec.parse().unwrap();
        let contained = (0..=tree.n()).any(|v| {
            let word: PathWord = tree.path_word(v);
            set.patterns().iter().any(|p| word_contains(&word, p))
        });
        prop_assert_eq!(avoids(&tree, &set), !contained);
    }

    #[test]
    fn pattern_set_display_round_trips(spec in pattern_set()) {
        let set: PatternSet = spec.parse().unwrap();
        let again: PatternSet = set.to_string().parse().unwrap();
        prop_assert_eq!(again, set);
    }

    #[test]
    fn increasing_trees_round_trip(tree in gnc_tree()) {
        let increasing = avoids(&tree, &"h,d".parse().unwrap());
        match encode_tree(&tree) {
            Ok(path) => {
                prop_assert!(increasing);
                prop_assert_eq!(path.semilength(), tree.n());
                prop_assert_eq!(decode_path(&path).unwrap(), tree);
            }
            Err(_) => prop_assert!(!increasing),
        }
    }

    #[test]
    fn paths_round_trip(n in 0usize..=6, i in any::<usize>()) {
        let all = &paths()[n];
        let path = &all[i % all.len()];
        let text = path.to_string();
        prop_assert_eq!(&text.parse::<SchroderPath>().unwrap(), path);
        prop_assert_eq!(&encode_tree(&decode_path(path).unwrap()).unwrap(), path);
    }

    #[test]
    fn series_ring_laws(
        a in prop::collection::vec(-50i64..50, 1..8),
        b in prop::collection::vec(-50i64..50, 1..8),
        c in prop::collection::vec(-50i64..50, 1..8),
    ) {
        let (a, b, c) = (uni(&a), uni(&b), uni(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(mut a in prop::collection::vec(-50i64..50, 1..8)) {
        a[0] = 1;
        let a = uni(&a);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv), UniSeries::one(a.order()));
    }

    #[test]
    fn narayana_holds_for_rational_q(n in 1u64..=12, p in -9i64..=9, q in 1i64..=9) {
        let q = BigRational::new(BigInt::from(p), BigInt::from(q));
        let check = narayana_check(n, &q).unwrap();
        prop_assert!(check.equal);
        prop_assert_eq!(check.lhs, check.rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sharding_does_not_change_census(n in 0usize..=5, spec in pattern_set(), jobs in 1usize..=9, star in any::<bool>()) {
        let set: PatternSet = spec.parse().unwrap();
        let limits = Limits::default();
        let one = census(n, &set, star, &limits).unwrap();
        let many = census_sharded(n, &set, star, &limits, jobs).unwrap();
        prop_assert_eq!(one.to_csv(), many.to_csv());
    }
}

#[test]
fn series_coefficients_are_homogeneous_and_nonnegative() {
    let s = Solutions::new(8);
    for series in [&s.master.main, &s.star, s.uu(), s.dd(), s.ud(), s.du(), &s.uudd.main, &s.star_du] {
        assert!(series.is_homogeneous_nonnegative());
    }
}
