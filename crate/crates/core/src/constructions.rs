//! Explicit constructions inside arbitrary infinite sets: strongly mutually
//! unembeddable pairs, certified descending chains, and the minimal
//! elements among sets of a given size.
//!
//! The pair builder runs the interleaved recursion
//!
//! ```text
//! a_0 = x_0,  b_0 = x_1,
//! a_{n+1} = min { x in X : x > a_n + b_n + 1 },
//! b_{n+1} = min { x in X : x > b_n + a_{n+1} + 1 }
//! ```
//!
//! over the increasing enumeration of the source. The growth guards force
//! every difference within the A side to differ from every difference
//! within the B side, which is what `verify_pair` re-checks by plain pair
//! enumeration.

use thiserror::Error;

use crate::fe;
use crate::laws::{Evidence, LawOutcome, LawReport};
use crate::setrep::{FiniteSet, GroundSet, NextElement, SampledPrefix};
use crate::verdict::TriVerdict;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("requested count must be at least 1")]
    ZeroCount,
    #[error("depth out of range")]
    DepthOutOfRange,
    #[error(
        "source exhausted after {produced} of {requested} term pairs: {detail}"
    )]
    SourceExhausted { produced: u64, requested: u64, detail: String },
    #[error("term values overflowed while extending the recursion")]
    Overflow,
}

/// First `count` terms of each side of the recursion, plus the window on
/// which the pair's guarantees were established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnembeddablePair {
    pub a_elements: Vec<u64>,
    pub b_elements: Vec<u64>,
    pub source: GroundSet,
    pub horizon: u64,
}

impl UnembeddablePair {
    /// The A side as a sampled prefix with an honest horizon: the next
    /// unseen A term provably exceeds `a_last + b_last + 1`, so every
    /// element of the full A side below that bound is already listed.
    pub fn a_prefix(&self) -> SampledPrefix {
        let a_last = *self.a_elements.last().expect("count >= 1");
        let b_last = *self.b_elements.last().expect("count >= 1");
        SampledPrefix::new(self.a_elements.clone(), a_last + b_last + 2)
            .expect("elements lie below the derived horizon")
    }

    /// The B side as a sampled prefix; the next unseen B term exceeds
    /// `b_last + a_next + 1 > 2 b_last + a_last + 2`.
    pub fn b_prefix(&self) -> SampledPrefix {
        let a_last = *self.a_elements.last().expect("count >= 1");
        let b_last = *self.b_elements.last().expect("count >= 1");
        SampledPrefix::new(self.b_elements.clone(), 2 * b_last + a_last + 3)
            .expect("elements lie below the derived horizon")
    }
}

fn next_strictly_above(x: &GroundSet, bound: u64, context: &str) -> Result<u64, BuildError> {
    match x.next_above(bound) {
        NextElement::Found(v) => Ok(v),
        NextElement::Exhausted => Err(BuildError::SourceExhausted {
            produced: 0,
            requested: 0,
            detail: format!("{context}: no element above {bound}"),
        }),
        NextElement::BeyondHorizon(h) => Err(BuildError::SourceExhausted {
            produced: 0,
            requested: 0,
            detail: format!("{context}: elements above {bound} are unknown past horizon {h}"),
        }),
    }
}

/// Builds a strongly mutually unembeddable pair of subsets of `x` with
/// `count` terms on each side.
///
/// Exact: every term is the true minimum demanded by the recursion, since
/// a sampled source answers `next above` definitively below its horizon
/// and the builder fails fast once the horizon is reached.
pub fn unembeddable_pair(x: &GroundSet, count: u64) -> Result<UnembeddablePair, BuildError> {
    if count == 0 {
        return Err(BuildError::ZeroCount);
    }
    let seed_a = x.min_element().ok_or_else(|| BuildError::SourceExhausted {
        produced: 0,
        requested: count,
        detail: "source has no known elements".to_string(),
    })?;
    let seed_b = next_strictly_above(x, seed_a, "second seed").map_err(|e| relabel(e, 0, count))?;

    let mut a = vec![seed_a];
    let mut b = vec![seed_b];
    for i in 1..count {
        let last_a = a[i as usize - 1];
        let last_b = b[i as usize - 1];
        let bound_a = last_a
            .checked_add(last_b)
            .and_then(|v| v.checked_add(1))
            .ok_or(BuildError::Overflow)?;
        let next_a =
            next_strictly_above(x, bound_a, "A-side term").map_err(|e| relabel(e, i, count))?;
        let bound_b = last_b
            .checked_add(next_a)
            .and_then(|v| v.checked_add(1))
            .ok_or(BuildError::Overflow)?;
        let next_b =
            next_strictly_above(x, bound_b, "B-side term").map_err(|e| relabel(e, i, count))?;
        a.push(next_a);
        b.push(next_b);
    }
    let horizon = b.last().unwrap() + 1;
    Ok(UnembeddablePair { a_elements: a, b_elements: b, source: x.clone(), horizon })
}

fn relabel(e: BuildError, produced: u64, requested: u64) -> BuildError {
    match e {
        BuildError::SourceExhausted { detail, .. } => {
            BuildError::SourceExhausted { produced, requested, detail }
        }
        other => other,
    }
}

/// Re-checks a generated pair from scratch: the sides are disjoint, both
/// lie inside the source, and their difference sets (by plain pair
/// enumeration) share nothing.
pub fn verify_pair(pair: &UnembeddablePair) -> LawReport {
    let instance = format!(
        "A={:?} B={:?} source={} window={}",
        pair.a_elements, pair.b_elements, pair.source, pair.horizon
    );
    let mut witness = Vec::new();

    let a_set = FiniteSet::new(pair.a_elements.clone());
    let b_set = FiniteSet::new(pair.b_elements.clone());

    if let Some(&x) = pair.a_elements.iter().find(|&&x| b_set.contains(x)) {
        witness.push(Evidence::Note { text: format!("sides share the element {x}") });
        return LawReport::new("pair_construction", instance, LawOutcome::Fail, witness);
    }
    for (label, elems) in [("A", &pair.a_elements), ("B", &pair.b_elements)] {
        if let Some(&x) = elems.iter().find(|&&x| pair.source.member_opt(x) != Some(true)) {
            witness.push(Evidence::Note {
                text: format!("{label}-side element {x} is not a definite member of the source"),
            });
            return LawReport::new("pair_construction", instance, LawOutcome::Fail, witness);
        }
    }
    let da = a_set.difference_set();
    let db = b_set.difference_set();
    if let Some(&d) = da.elements().iter().find(|&&d| db.contains(d)) {
        witness.push(Evidence::CommonDifference { difference: d });
        return LawReport::new("pair_construction", instance, LawOutcome::Fail, witness);
    }

    witness.push(Evidence::Note {
        text: format!(
            "sides disjoint, contained in the source, difference sets disjoint on [1, {})",
            pair.horizon
        ),
    });
    LawReport::new("pair_construction", instance, LawOutcome::Pass, witness)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSide {
    A,
    B,
}

impl std::fmt::Display for PairSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PairSide::A => write!(f, "A"),
            PairSide::B => write!(f, "B"),
        }
    }
}

/// One certified link of a descending chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    /// Which side of the generated pair became the next level.
    pub side: PairSide,
    /// Brute-force refutation of `parent <=_fe child` on the recorded window.
    pub refusal: TriVerdict,
    pub window: u64,
    pub kmax: u64,
}

/// A strictly descending chain `X = X_0 ⊃ X_1 ⊃ ...` in which every step
/// carries an oracle refutation of `X_i <=_fe X_{i+1}`.
#[derive(Clone, Debug)]
pub struct DescendingChain {
    /// The exact level-0 set (the levels list only materializes a prefix).
    pub source: GroundSet,
    /// `levels[0]` is a display prefix of the source; `levels[i + 1]` is
    /// the side kept by step `i`, with an honest horizon.
    pub levels: Vec<SampledPrefix>,
    pub steps: Vec<ChainStep>,
    /// Present when the construction window ran out; the chain built so
    /// far is still valid.
    pub truncated: Option<String>,
}

impl DescendingChain {
    /// Strict inclusion on windows plus a refusal verdict for every step.
    pub fn certified(&self) -> bool {
        if self.truncated.is_some() || self.steps.len() + 1 != self.levels.len() {
            return false;
        }
        for (i, step) in self.steps.iter().enumerate() {
            if !step.refusal.is_no() {
                return false;
            }
            let child = &self.levels[i + 1];
            let parent_has = |x: u64| -> bool {
                if i == 0 {
                    self.source.member_opt(x) == Some(true)
                } else {
                    self.levels[i].contains_below_horizon(x) == Some(true)
                }
            };
            if !child.elements().iter().all(|&x| parent_has(x)) {
                return false;
            }
            // Strictness: some parent element below the child's horizon is
            // missing from the child.
            let parent_elems: Vec<u64> = if i == 0 {
                match self.source.enumerate_below(child.horizon().min(4096)) {
                    Ok(fs) => fs.elements().to_vec(),
                    Err(_) => Vec::new(),
                }
            } else {
                self.levels[i].elements().to_vec()
            };
            let strict = parent_elems
                .iter()
                .any(|&x| x < child.horizon() && child.contains_below_horizon(x) != Some(true));
            if !strict {
                return false;
            }
        }
        true
    }
}

/// Builds a descending chain with `depth` certified steps below `x`.
///
/// Each step generates an unembeddable pair inside the current level and
/// keeps a side that provably refuses to host the level above, preferring
/// the A side. Counts are scheduled so the recursion consumes exactly the
/// elements each level exposes: on the super-increasing levels the pair
/// recursion takes two source elements per generated term pair, so level
/// `i` is built with `count * 2^(depth - 1 - i)` terms.
pub fn descending_chain(
    x: &GroundSet,
    depth: u64,
    count: u64,
) -> Result<DescendingChain, BuildError> {
    if count == 0 {
        return Err(BuildError::ZeroCount);
    }
    if depth == 0 || depth > 32 {
        return Err(BuildError::DepthOutOfRange);
    }
    let mut want = count.checked_shl((depth - 1) as u32).ok_or(BuildError::Overflow)?;

    let display = match x {
        GroundSet::Sampled(sp) => sp.clone(),
        _ => {
            let mut elems = Vec::new();
            let mut v = match x.min_element() {
                Some(v) => v,
                None => {
                    return Err(BuildError::SourceExhausted {
                        produced: 0,
                        requested: count,
                        detail: "source has no elements".to_string(),
                    })
                }
            };
            elems.push(v);
            while elems.len() < 64 {
                match x.next_above(v) {
                    NextElement::Found(n) => {
                        elems.push(n);
                        v = n;
                    }
                    _ => break,
                }
            }
            let horizon = elems.last().unwrap() + 1;
            SampledPrefix::new(elems, horizon).expect("prefix elements below derived horizon")
        }
    };

    let mut chain = DescendingChain {
        source: x.clone(),
        levels: vec![display],
        steps: Vec::new(),
        truncated: None,
    };
    let mut current = x.clone();

    for level in 0..depth {
        let pair = match unembeddable_pair(&current, want) {
            Ok(p) => p,
            Err(e) => {
                chain.truncated = Some(format!("level {}: {e}", level + 1));
                return Ok(chain);
            }
        };
        let check = verify_pair(&pair);
        if check.outcome != LawOutcome::Pass {
            chain.truncated = Some(format!("level {}: pair verification failed", level + 1));
            return Ok(chain);
        }

        // The first two elements of the current level differ by less than
        // any difference within either generated side, so their gap pins
        // down a refusing side; the A side always qualifies and is
        // preferred, with the B side kept as fallback.
        let x0 = pair.a_elements[0];
        let x1 = pair.b_elements[0];
        let gap = x1 - x0;
        let mut chosen: Option<(PairSide, SampledPrefix)> = None;
        for (side, prefix, elems) in [
            (PairSide::A, pair.a_prefix(), &pair.a_elements),
            (PairSide::B, pair.b_prefix(), &pair.b_elements),
        ] {
            let diffs = FiniteSet::new(elems.clone()).difference_set();
            if !diffs.contains(gap) {
                chosen = Some((side, prefix));
                break;
            }
        }
        let (side, prefix) = match chosen {
            Some(c) => c,
            None => {
                chain.truncated =
                    Some(format!("level {}: neither side refuses the seed gap", level + 1));
                return Ok(chain);
            }
        };

        let window = x1 + 1;
        let kmax = 10_000u64.min(prefix.horizon().saturating_sub(x1 + 1)).max(1);
        let child = GroundSet::Sampled(prefix.clone());
        let refusal = fe::oracle_bruteforce(&current, &child, window, kmax);
        if !refusal.is_no() {
            chain.truncated = Some(format!(
                "level {}: oracle did not refuse the embedding ({refusal})",
                level + 1
            ));
            return Ok(chain);
        }

        chain.steps.push(ChainStep { side, refusal, window, kmax });
        chain.levels.push(prefix);
        current = child;
        want /= 2;
        if want == 0 {
            want = 1;
        }
    }
    Ok(chain)
}

/// All minimal elements of the sets of size `n`, drawn from `{0, ..., m}`:
/// exactly the `A` with `0 ∈ A` and `|A| = n`, in lexicographic order.
///
/// The list has `C(m, n - 1)` entries; it is empty when `m < n - 1`.
pub fn minimal_sets(n: u64, m: u64) -> Vec<FiniteSet> {
    if n == 0 || m + 1 < n {
        return Vec::new();
    }
    let k = (n - 1) as usize;
    let mut out = Vec::new();
    if k == 0 {
        out.push(FiniteSet::new(vec![0]));
        return out;
    }
    // Lexicographic k-combinations of {1, ..., m}.
    let mut idx: Vec<u64> = (1..=k as u64).collect();
    loop {
        let mut elems = Vec::with_capacity(k + 1);
        elems.push(0);
        elems.extend_from_slice(&idx);
        out.push(FiniteSet::new(elems));

        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < m - (k - 1 - i) as u64 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient, as the count oracle for [`minimal_sets`].
pub fn binomial(m: u64, k: u64) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}
