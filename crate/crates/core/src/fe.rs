//! The finite-embeddability relation and its decision procedures.
//!
//! A set `A` is finitely embeddable in `B` (written `A <=_fe B`) when every
//! finite subset of `A` has a rightward translate contained in `B`. The
//! offset `k = 0` is admissible, so the relation is reflexive.
//!
//! On exact representations the relation is decided outright:
//!
//! * finite left operand -- a bounded translate search whose range is
//!   provably complete for exact targets;
//! * ultimately periodic operands on both sides -- the constraint set
//!   `K_F = {k : F + k ⊆ B}` for growing prefixes `F` of `A` is an
//!   ultimately periodic set of offsets with period `q_B` and preperiod at
//!   most `p_B`. Adding elements only shrinks it, and every constraint an
//!   element of `A` can impose is already imposed by some element below
//!   `max(p_A, p_B) + lcm(q_A, q_B)`, so the chain stabilizes there. The
//!   relation holds iff the stabilized set is nonempty, in which case its
//!   minimum is a single offset embedding all of `A` at once.
//!
//! Sampled prefixes get the three-valued treatment: a failing genuine
//! prefix refutes definitively (against an exact target), while success up
//! to a horizon is only ever `Unknown`.
//!
//! [`oracle_bruteforce`] re-decides the same relation by raw membership
//! scanning with none of the machinery above; the two routes are held in
//! agreement by the acceptance suite.

use num_integer::Integer;

use crate::setrep::{FiniteSet, GroundSet, NextElement};
use crate::verdict::TriVerdict;

/// Decides whether the finite set `f` has a rightward translate inside `b`.
///
/// Yes-verdicts carry the least offset. No-verdicts are definite (exact
/// targets admit a complete search range); for sampled targets absence
/// below the horizon is reported as `Unknown`.
pub fn finite_into(f: &FiniteSet, b: &GroundSet) -> TriVerdict {
    if f.is_empty() {
        return TriVerdict::yes_because(0, "the empty set embeds everywhere");
    }
    let b = b.normalize();
    let max_f = f.max().unwrap();
    let fits = |k: u64| f.elements().iter().all(|&x| b.member_opt(x + k) == Some(true));
    match &b {
        GroundSet::Finite(fb) => {
            let top = match fb.max() {
                Some(m) if m >= max_f => m - max_f,
                _ => {
                    return TriVerdict::no_certificate(
                        f.elements().to_vec(),
                        "no translate fits under the target's maximum",
                    )
                }
            };
            for k in 0..=top {
                if fits(k) {
                    return TriVerdict::yes(k);
                }
            }
            TriVerdict::no_certificate(
                f.elements().to_vec(),
                "exhaustive search over every translate that fits under the target's maximum",
            )
        }
        GroundSet::Periodic(up) => {
            // Complete range: a witness k >= p reduces modulo q to one in
            // [p, p + q), so searching k < p + q decides.
            for k in 0..up.preperiod_len() + up.period() {
                if fits(k) {
                    return TriVerdict::yes(k);
                }
            }
            TriVerdict::no_certificate(
                f.elements().to_vec(),
                format!(
                    "complete search over k < {} (preperiod + period of the target)",
                    up.preperiod_len() + up.period()
                ),
            )
        }
        GroundSet::Sampled(sp) => {
            if max_f >= sp.horizon() {
                return TriVerdict::unknown(format!(
                    "finite set reaches {} at or beyond the target horizon {}",
                    max_f,
                    sp.horizon()
                ));
            }
            for k in 0..=sp.horizon() - 1 - max_f {
                if fits(k) {
                    return TriVerdict::yes(k);
                }
            }
            TriVerdict::unknown(format!(
                "no translate below horizon {}; absence below the horizon is not absence",
                sp.horizon()
            ))
        }
    }
}

/// Consumes `prefix` left to right, intersecting the offset constraint of
/// each element against `target` (which must be exact). Returns the least
/// surviving offset, or the consumed elements at the moment the constraint
/// set became empty.
fn saturate_constraints(prefix: &[u64], target: &GroundSet) -> Result<Option<u64>, Vec<u64>> {
    debug_assert!(target.is_exact());
    let mut valid = GroundSet::naturals();
    let mut consumed = Vec::new();
    for &x in prefix {
        consumed.push(x);
        let constraint = target
            .shift_down_intersect(&FiniteSet::new(vec![x]))
            .expect("singleton shift set is nonempty");
        valid = valid.intersect(&constraint);
        if valid.min_element().is_none() {
            return Err(consumed);
        }
    }
    Ok(valid.min_element())
}

/// Decides `a <=_fe b`.
///
/// Exact on exact representations. A `Yes` carries the least offset that
/// translates every finite subset of `a` into `b` simultaneously; a `No`
/// carries the shortest refuting prefix of `a` encountered in increasing
/// order.
pub fn decide(a: &GroundSet, b: &GroundSet) -> TriVerdict {
    let a = a.normalize();
    let b = b.normalize();
    if let GroundSet::Finite(fa) = &a {
        return finite_into(fa, &b);
    }
    match (&a, &b) {
        (GroundSet::Periodic(ua), GroundSet::Periodic(ub)) => {
            let lcm = ua.period().lcm(&ub.period());
            let stable = ua.preperiod_len().max(ub.preperiod_len()) + lcm;
            let prefix = a.enumerate_below(stable).expect("exact enumeration");
            match saturate_constraints(prefix.elements(), &b) {
                Ok(k) => TriVerdict::yes(k.expect("nonempty constraint set has a minimum")),
                Err(cert) => TriVerdict::no_certificate(
                    cert,
                    "prefix admits no translate; constraints stabilized, refutation is complete",
                ),
            }
        }
        (GroundSet::Periodic(_), GroundSet::Finite(fb)) => {
            // Pigeonhole: any prefix longer than the target refutes.
            let mut prefix = Vec::with_capacity(fb.len() + 1);
            let mut last: Option<u64> = None;
            for _ in 0..=fb.len() {
                let next = match last {
                    None => a.min_element().expect("normalized periodic set is infinite"),
                    Some(v) => match a.next_above(v) {
                        NextElement::Found(x) => x,
                        _ => unreachable!("normalized periodic set is infinite"),
                    },
                };
                prefix.push(next);
                last = Some(next);
            }
            match saturate_constraints(&prefix, &b) {
                Ok(_) => unreachable!("a prefix larger than a finite target cannot embed"),
                Err(cert) => TriVerdict::no_certificate(
                    cert,
                    "infinite left operand cannot finitely embed into a finite target",
                ),
            }
        }
        (GroundSet::Sampled(sa), _) if b.is_exact() => {
            match saturate_constraints(sa.elements(), &b) {
                Err(cert) => TriVerdict::no_certificate(
                    cert,
                    "a known prefix of the left operand admits no translate into the exact target",
                ),
                Ok(k) => TriVerdict::unknown(format!(
                    "all known prefixes embed (least offset {}); elements at or beyond horizon {} are unknown",
                    k.expect("nonempty constraint set"),
                    sa.horizon()
                )),
            }
        }
        _ => TriVerdict::unknown(format!(
            "target known only below horizon {}; no definite verdict for an infinite left operand",
            b.known_horizon().unwrap_or(0)
        )),
    }
}

/// Mutual finite embeddability; the three-valued conjunction of both
/// directions. A joint `Yes` records both witnesses.
pub fn equiv(a: &GroundSet, b: &GroundSet) -> TriVerdict {
    decide(a, b).and(decide(b, a))
}

/// Strong non-embeddability: no two-element subset of `a` embeds in `b`.
///
/// A pair `{c, c + d}` embeds in `b` exactly when `d` is a difference of
/// two elements of `b`, so this reduces to disjointness of the two
/// positive difference sets. Exact when both operands are exact; otherwise
/// decided on `[1, window)` with `Unknown` beyond.
pub fn strongly_non_embeddable(a: &GroundSet, b: &GroundSet, window: u64) -> TriVerdict {
    let da = a.difference_set(window);
    let db = b.difference_set(window);
    if da.is_exact() && db.is_exact() {
        let common = da.intersect(&db);
        match common.min_element() {
            Some(d) => TriVerdict::no_witness(d, "difference realized on both sides"),
            None => TriVerdict::yes_plain("difference sets provably disjoint"),
        }
    } else {
        for d in 1..window {
            if da.member_opt(d) == Some(true) && db.member_opt(d) == Some(true) {
                return TriVerdict::no_witness(d, "difference realized on both sides");
            }
        }
        TriVerdict::unknown(format!(
            "difference sets disjoint below window {window}; larger differences unknown"
        ))
    }
}

/// Strong non-embeddability in both directions. The difference-set
/// characterization is symmetric, so both conjuncts coincide; the
/// conjunction is still evaluated literally.
pub fn mutually_strongly_unembeddable(a: &GroundSet, b: &GroundSet, window: u64) -> TriVerdict {
    strongly_non_embeddable(a, b, window).and(strongly_non_embeddable(b, a, window))
}

/// Window and translate bounds that make [`oracle_bruteforce`] a thorough
/// cross-check for these operands: the window covers the constraint
/// stabilization point with margin, and the translate range exceeds the
/// complete bound of any exact target.
pub fn suggested_oracle_params(a: &GroundSet, b: &GroundSet) -> (u64, u64) {
    let view = |s: &GroundSet| -> (u64, u64) {
        match s {
            GroundSet::Finite(f) => (f.max().map_or(0, |m| m + 1), 1),
            GroundSet::Periodic(u) => (u.preperiod_len(), u.period()),
            GroundSet::Sampled(sp) => (sp.horizon(), 1),
        }
    };
    let (pa, qa) = view(a);
    let (pb, qb) = view(b);
    (pa + 4 * qa.lcm(&qb), pb + 4 * qb)
}

/// Largest translate range that makes a failed search a complete
/// refutation against this (exact) target.
fn complete_translate_bound(b: &GroundSet) -> Option<u64> {
    match b {
        GroundSet::Finite(fb) => Some(fb.max().unwrap_or(0)),
        GroundSet::Periodic(up) => Some(up.preperiod_len() + up.period().saturating_sub(1)),
        GroundSet::Sampled(_) => None,
    }
}

/// Independent brute-force check of `a <=_fe b`, by direct membership
/// tests only.
///
/// Every prefix `a ∩ [0, n)` for `n <= window` is tested against every
/// translate `k <= kmax`. A prefix that fails all of them yields `No`; the
/// refutation is complete (not merely windowed) when the target is exact
/// and `kmax` reaches [`complete_translate_bound`]. `Yes` is definite only
/// when `a` lies entirely below `window`. Everything else is `Unknown`.
///
/// This is the cross-validation oracle for [`decide`]; it deliberately
/// shares no machinery with it beyond raw membership queries.
pub fn oracle_bruteforce(a: &GroundSet, b: &GroundSet, window: u64, kmax: u64) -> TriVerdict {
    if window == 0 {
        return TriVerdict::unknown("window must be at least 1");
    }
    let scan_bound = match a.known_horizon() {
        Some(h) => window.min(h),
        None => window,
    };
    let prefix = a.enumerate_below(scan_bound).expect("bound clamped to horizon");

    let entire = match a {
        GroundSet::Finite(fa) => fa.max().is_none_or(|m| m < window),
        _ => false,
    };
    if prefix.is_empty() {
        if entire {
            return TriVerdict::yes_because(0, "the empty set embeds everywhere");
        }
        return TriVerdict::unknown(format!("no known elements below window {window}"));
    }

    // Dense per-translate state; ranges past 2^24 are clamped to keep the
    // scan affordable (verdict reasons always quote the searched range).
    let kmax = kmax.min(1 << 24) as usize;
    let mut refuted = vec![false; kmax + 1];
    let mut saw_unknown = vec![false; kmax + 1];
    let mut consumed: Vec<u64> = Vec::new();

    for &x in prefix.elements() {
        consumed.push(x);
        for (k, slot) in refuted.iter_mut().enumerate() {
            if *slot {
                continue;
            }
            match b.member_opt(x + k as u64) {
                Some(true) => {}
                Some(false) => *slot = true,
                None => saw_unknown[k] = true,
            }
        }
        if refuted.iter().all(|&r| r) {
            let reason = match complete_translate_bound(b) {
                Some(bound) if kmax as u64 >= bound => {
                    "prefix fails every translate; the searched range is complete for this target"
                        .to_string()
                }
                _ => format!("prefix fails every translate k <= {kmax} (windowed refutation)"),
            };
            return TriVerdict::no_certificate(consumed, reason);
        }
    }

    if entire {
        let survivor = refuted
            .iter()
            .zip(&saw_unknown)
            .position(|(&r, &u)| !r && !u)
            .map(|k| k as u64);
        return match survivor {
            Some(k) => TriVerdict::yes(k),
            None => TriVerdict::unknown(
                "surviving translates all touch the target's unknown region",
            ),
        };
    }
    TriVerdict::unknown(format!(
        "every prefix below {scan_bound} embeds with some k <= {kmax}; the left set extends further"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(bits: &[u8], q: u64, pat: &[u64]) -> GroundSet {
        GroundSet::periodic(bits.iter().map(|&b| b != 0).collect(), q, pat.iter().copied())
            .unwrap()
    }

    #[test]
    fn finite_into_examples() {
        let v = finite_into(&FiniteSet::new(vec![0, 2, 4]), &GroundSet::odds());
        assert!(v.is_yes());
        assert_eq!(v.witness, Some(1));

        let v = finite_into(&FiniteSet::new(vec![0, 1]), &GroundSet::evens());
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![0, 1]);

        let v = finite_into(&FiniteSet::empty(), &GroundSet::empty());
        assert_eq!(v.witness, Some(0));

        let v = finite_into(&FiniteSet::new(vec![5]), &GroundSet::evens());
        assert_eq!(v.witness, Some(1));
    }

    #[test]
    fn finite_into_sampled_three_valued() {
        let b = GroundSet::sampled(vec![4, 6], 10).unwrap();
        let v = finite_into(&FiniteSet::new(vec![0, 2]), &b);
        assert_eq!(v.witness, Some(4));
        let v = finite_into(&FiniteSet::new(vec![0, 3]), &b);
        assert!(v.is_unknown());
        let v = finite_into(&FiniteSet::new(vec![0, 12]), &b);
        assert!(v.is_unknown());
    }

    #[test]
    fn decide_parity_equivalence_pair() {
        let fwd = decide(&GroundSet::evens(), &GroundSet::odds());
        assert_eq!(fwd.witness, Some(1));
        let bwd = decide(&GroundSet::odds(), &GroundSet::evens());
        assert_eq!(bwd.witness, Some(1));
        assert!(equiv(&GroundSet::evens(), &GroundSet::odds()).is_yes());
    }

    #[test]
    fn decide_refutes_with_minimal_prefix() {
        // {1} together with the even numbers from 10 on.
        let mut bits = vec![false; 10];
        bits[1] = true;
        let a = GroundSet::periodic(bits, 2, [0]).unwrap();
        let v = decide(&a, &GroundSet::evens());
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![1, 10]);

        let v = decide(&GroundSet::naturals(), &GroundSet::evens());
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![0, 1]);
    }

    #[test]
    fn decide_is_reflexive_with_zero_witness() {
        for s in [GroundSet::evens(), up(&[0, 1, 1], 3, &[2]), GroundSet::finite(vec![3, 5])] {
            let v = decide(&s, &s);
            assert!(v.is_yes());
            assert_eq!(v.witness, Some(0));
        }
    }

    #[test]
    fn decide_uses_preperiod_embeddings() {
        // {0, 1} plus the multiples of 10: only k = 0 embeds the prefix
        // {0, 1}, because the tail pattern alone cannot host consecutive
        // elements. The naive tail-residue criterion misses this.
        let mut bits = vec![false; 10];
        bits[0] = true;
        bits[1] = true;
        let a = GroundSet::periodic(bits, 10, [0]).unwrap();
        let v = decide(&a, &a);
        assert!(v.is_yes());
        assert_eq!(v.witness, Some(0));
    }

    #[test]
    fn decide_infinite_into_finite_is_refuted() {
        let v = decide(&GroundSet::evens(), &GroundSet::finite(vec![0, 2, 4]));
        assert!(v.is_no());
        assert_eq!(v.certificate.len(), 4);
    }

    #[test]
    fn decide_sampled_left_operand() {
        // Genuine prefix refutes against an exact target.
        let a = GroundSet::sampled(vec![0, 1, 4], 6).unwrap();
        let v = decide(&a, &GroundSet::evens());
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![0, 1]);

        // Embedding prefixes prove nothing.
        let a = GroundSet::sampled(vec![0, 2, 4], 6).unwrap();
        assert!(decide(&a, &GroundSet::evens()).is_unknown());

        // Sampled target never yields a definite verdict for an infinite left side.
        assert!(decide(&GroundSet::evens(), &a).is_unknown());
    }

    #[test]
    fn equiv_examples() {
        assert!(equiv(&GroundSet::evens(), &GroundSet::naturals()).is_no());
        assert!(equiv(&GroundSet::finite(vec![0]), &GroundSet::finite(vec![0])).is_yes());
    }

    #[test]
    fn strong_unembeddability_examples() {
        let a = GroundSet::finite(vec![0, 3, 11, 32]);
        let b = GroundSet::finite(vec![1, 6, 19, 53]);
        assert!(strongly_non_embeddable(&a, &b, 60).is_yes());
        assert!(mutually_strongly_unembeddable(&a, &b, 60).is_yes());

        let v = strongly_non_embeddable(&GroundSet::evens(), &GroundSet::evens(), 10);
        assert!(v.is_no());
        assert_eq!(v.witness, Some(2));

        let v = strongly_non_embeddable(&GroundSet::evens(), &GroundSet::odds(), 10);
        assert!(v.is_no());
        assert_eq!(v.witness, Some(2));
    }

    #[test]
    fn strong_unembeddability_windowed_on_prefixes() {
        let a = GroundSet::sampled(vec![0, 3, 11, 32], 40).unwrap();
        let b = GroundSet::sampled(vec![1, 6, 19, 53], 60).unwrap();
        let v = strongly_non_embeddable(&a, &b, 40);
        assert!(v.is_unknown());
        assert!(v.reason.contains("disjoint below window"));

        let c = GroundSet::sampled(vec![0, 2], 10).unwrap();
        let d = GroundSet::sampled(vec![5, 7], 10).unwrap();
        let v = strongly_non_embeddable(&c, &d, 10);
        assert!(v.is_no());
        assert_eq!(v.witness, Some(2));
    }

    #[test]
    fn oracle_reference_cases() {
        let v = oracle_bruteforce(&GroundSet::evens(), &GroundSet::odds(), 50, 50);
        assert!(v.is_unknown());

        let v = oracle_bruteforce(&GroundSet::naturals(), &GroundSet::evens(), 10, 100);
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![0, 1]);

        let mut bits = vec![false; 10];
        bits[1] = true;
        let a = GroundSet::periodic(bits, 2, [0]).unwrap();
        let v = oracle_bruteforce(&a, &GroundSet::evens(), 20, 200);
        assert!(v.is_no());
        assert_eq!(v.certificate, vec![1, 10]);
    }

    #[test]
    fn oracle_definite_yes_for_contained_finite_sets() {
        let a = GroundSet::finite(vec![1, 3]);
        let v = oracle_bruteforce(&a, &GroundSet::odds(), 10, 10);
        assert!(v.is_yes());
        assert_eq!(v.witness, Some(0));
    }

    #[test]
    fn oracle_windowed_refutation_against_sampled_target() {
        let b = GroundSet::sampled(vec![0, 4, 9], 30).unwrap();
        let v = oracle_bruteforce(&GroundSet::naturals(), &b, 5, 20);
        assert!(v.is_no());
        assert!(v.reason.contains("windowed"));
    }
}
