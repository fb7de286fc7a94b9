//! Property tests for the structural invariants: representation algebra,
//! preorder laws, and cross-route agreement.

use proptest::prelude::*;

use fekit_core::constructions::{binomial, minimal_sets};
use fekit_core::{fe, GroundSet};

/// Raw (not necessarily canonical) ultimately periodic sets, empty
/// patterns included, so normalization itself is under test.
fn raw_periodic(max_p: usize, max_q: u64) -> impl Strategy<Value = GroundSet> {
    (1..=max_q).prop_flat_map(move |q| {
        (
            prop::collection::vec(any::<bool>(), 0..=max_p),
            prop::collection::btree_set(0..q, 0..=q as usize),
        )
            .prop_map(move |(bits, pattern)| GroundSet::periodic(bits, q, pattern).unwrap())
    })
}

/// Infinite canonical periodic sets (nonempty pattern, normalized).
fn infinite_periodic(max_p: usize, max_q: u64) -> impl Strategy<Value = GroundSet> {
    (1..=max_q).prop_flat_map(move |q| {
        (
            prop::collection::vec(any::<bool>(), 0..=max_p),
            prop::collection::btree_set(0..q, 1..=q as usize),
        )
            .prop_map(move |(bits, pattern)| {
                GroundSet::periodic(bits, q, pattern).unwrap().normalize()
            })
    })
}

fn sampled(max_h: u64) -> impl Strategy<Value = GroundSet> {
    (1..=max_h).prop_flat_map(|h| {
        prop::collection::vec(0..h, 0..=(h.min(40) as usize))
            .prop_map(move |v| GroundSet::sampled(v, h).unwrap())
    })
}

fn any_ground() -> impl Strategy<Value = GroundSet> {
    prop_oneof![
        raw_periodic(6, 10),
        prop::collection::vec(0u64..60, 0..=12).prop_map(GroundSet::finite),
        sampled(60),
    ]
}

/// Pointwise agreement bound: past the joint preperiod both exact sets are
/// periodic, so this window decides everything.
fn view_bound(s: &GroundSet) -> (u64, u64) {
    match s {
        GroundSet::Finite(f) => (f.max().map_or(0, |m| m + 1), 1),
        GroundSet::Periodic(u) => (u.preperiod_len(), u.period()),
        GroundSet::Sampled(sp) => (sp.horizon(), 1),
    }
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_membership_preserving(s in raw_periodic(8, 12)) {
        let once = s.normalize();
        prop_assert_eq!(&once.normalize(), &once);
        let (p, q) = view_bound(&s);
        for x in 0..10 * (p + q) {
            prop_assert_eq!(s.member_opt(x), once.member_opt(x));
        }
    }

    #[test]
    fn translates_compose(s in any_ground(), j in 0u64..20, k in 0u64..20) {
        let two_step = s.translate(j).translate(k);
        let one_step = s.translate(j + k);
        let (p, q) = view_bound(&s);
        for x in 0..(p + 2 * q + j + k + 4) {
            prop_assert_eq!(two_step.member_opt(x), one_step.member_opt(x));
        }
    }

    #[test]
    fn meet_and_join_are_pointwise(a in raw_periodic(6, 10), b in raw_periodic(6, 10)) {
        let meet = a.intersect(&b);
        let join = a.union(&b);
        let (pa, qa) = view_bound(&a);
        let (pb, qb) = view_bound(&b);
        let bound = pa.max(pb) + 2 * num_integer::lcm(qa, qb);
        for x in 0..bound {
            let (ma, mb) = (a.member_opt(x).unwrap(), b.member_opt(x).unwrap());
            prop_assert_eq!(meet.member_opt(x), Some(ma && mb));
            prop_assert_eq!(join.member_opt(x), Some(ma || mb));
        }
    }

    #[test]
    fn sampled_differences_are_realized(s in sampled(80), w in 1u64..100) {
        let d = s.difference_set(w);
        let elems = s.as_sampled().unwrap().elements();
        for &diff in d.as_sampled().unwrap().elements() {
            prop_assert!(
                elems.iter().any(|&a| elems.binary_search(&(a + diff)).is_ok()),
                "difference {} not realized", diff
            );
        }
    }

    #[test]
    fn shifting_by_zero_is_identity(s in any_ground()) {
        let shifted = s.shift_down_intersect(&fekit_core::FiniteSet::new(vec![0])).unwrap();
        prop_assert_eq!(shifted, s.normalize());
    }

    #[test]
    fn embeddability_is_reflexive_with_zero_witness(s in raw_periodic(6, 10)) {
        let v = fe::decide(&s, &s);
        prop_assert!(v.is_yes());
        prop_assert_eq!(v.witness, Some(0));
    }

    #[test]
    fn every_set_embeds_into_its_translate(s in raw_periodic(6, 10), k in 0u64..20) {
        prop_assert!(fe::decide(&s, &s.translate(k)).is_yes());
    }

    #[test]
    fn purely_periodic_sets_are_translate_equivalent(
        q in 1u64..=10,
        k in 0u64..20,
        seed in any::<u64>(),
    ) {
        // Nonempty pattern, no preperiod: the translate is equivalent.
        let mut pattern = vec![seed % q];
        pattern.push((seed / 7) % q);
        let s = GroundSet::periodic(vec![], q, pattern).unwrap();
        prop_assert!(fe::equiv(&s, &s.translate(k)).is_yes());
    }

    #[test]
    fn embeddability_is_monotone_in_the_left_operand(
        a in infinite_periodic(5, 8),
        c in infinite_periodic(5, 8),
        b in infinite_periodic(5, 8),
    ) {
        if fe::decide(&a, &b).is_yes() {
            let smaller = a.intersect(&c);
            prop_assert!(fe::decide(&smaller, &b).is_yes());
        }
    }

    #[test]
    fn strong_unembeddability_is_symmetric(a in any_ground(), b in any_ground()) {
        let ab = fe::strongly_non_embeddable(&a, &b, 64);
        let ba = fe::strongly_non_embeddable(&b, &a, 64);
        prop_assert_eq!(ab.outcome, ba.outcome);
        prop_assert_eq!(ab.witness, ba.witness);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embeddability_is_transitive(
        a in infinite_periodic(4, 8),
        b in infinite_periodic(4, 8),
        c in infinite_periodic(4, 8),
    ) {
        if fe::decide(&a, &b).is_yes() && fe::decide(&b, &c).is_yes() {
            prop_assert!(fe::decide(&a, &c).is_yes());
        }
    }

    #[test]
    fn decide_and_oracle_never_contradict(
        a in raw_periodic(5, 8),
        b in raw_periodic(5, 8),
    ) {
        let decided = fe::decide(&a, &b);
        let (w, kmax) = fe::suggested_oracle_params(&a, &b);
        let oracle = fe::oracle_bruteforce(&a, &b, w, kmax);
        prop_assert!(!(decided.is_yes() && oracle.is_no()), "decide Yes but oracle No");
        prop_assert!(!(decided.is_no() && oracle.is_yes()), "decide No but oracle Yes");
    }

    #[test]
    fn minimal_set_counts_match_binomial(n in 1u64..=5, m in 0u64..=10) {
        prop_assume!(m + 1 >= n);
        prop_assert_eq!(minimal_sets(n, m).len() as u64, binomial(m, n - 1));
    }

    #[test]
    fn windowed_density_is_monotone_in_the_horizon(
        s in infinite_periodic(6, 10),
        w in 2u64..40,
        h1 in 50u64..200,
        extra in 1u64..200,
    ) {
        let h2 = h1 + extra;
        let prefix_at = |h: u64| {
            GroundSet::sampled(s.enumerate_below(h).unwrap().elements().to_vec(), h).unwrap()
        };
        let d1 = fekit_core::combinatorics::upper_banach_density(&prefix_at(h1), w);
        let d2 = fekit_core::combinatorics::upper_banach_density(&prefix_at(h2), w);
        prop_assert!(d1.value <= d2.value, "sliding max lost windows as the horizon grew");
    }
}

/// Maximality shadow: a thick exact set hosts every corpus set, and a
/// non-thick one provably refuses the naturals.
#[test]
fn thickness_matches_the_maximality_shadow() {
    use fekit_core::laws::{self, InstanceConfig};
    let sets = laws::corpus_sets(&InstanceConfig { corpus_size: 24, ..InstanceConfig::default() });
    for b in &sets {
        if fekit_core::combinatorics::is_thick(b, 1).is_yes() {
            for a in &sets {
                assert!(fe::decide(a, b).is_yes(), "thick {b} refused {a}");
            }
        } else {
            assert!(
                fe::decide(&GroundSet::naturals(), b).is_no(),
                "non-thick {b} admitted the naturals"
            );
        }
    }
}

/// Pointwise implication chain on exact periodic sets: thick implies
/// syndetic implies piecewise syndetic implies positive density.
#[test]
fn classifier_chain_holds_on_exact_sets() {
    use fekit_core::combinatorics as comb;
    use fekit_core::laws::{self, InstanceConfig};
    let sets = laws::corpus_sets(&InstanceConfig { corpus_size: 40, ..InstanceConfig::default() });
    for s in &sets {
        let thick = comb::is_thick(s, 1).is_yes();
        let syndetic = comb::is_syndetic(s).is_yes();
        let ps = comb::is_piecewise_syndetic(s).is_yes();
        let dense = comb::upper_banach_density(s, 100).value
            > num_rational::Ratio::new(0, 1);
        assert!(!thick || syndetic, "thick but not syndetic: {s}");
        assert!(!syndetic || ps, "syndetic but not piecewise syndetic: {s}");
        assert!(!ps || dense, "piecewise syndetic with zero density: {s}");
    }
}
