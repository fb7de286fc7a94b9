//! Set representations over the naturals and the closed algebra the rest of
//! the toolkit consumes.
//!
//! Three representations with a common three-valued membership interface:
//!
//! * [`FiniteSet`] -- an explicit strictly increasing list; every query is
//!   definite.
//! * [`UltimatelyPeriodic`] -- a preperiod bit block plus a periodic tail
//!   given by a residue pattern; every query is definite and every
//!   operation below stays exact on this representation.
//! * [`SampledPrefix`] -- a fully known initial segment `[0, horizon)` of an
//!   otherwise unknown set; queries at or above the horizon answer
//!   `Unknown`, and every operation computes the largest horizon below
//!   which its output is still fully determined.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so the whole module is safe for concurrent use.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::verdict::TriVerdict;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SetError {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("pattern residue {residue} is not below period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("element {element} is not below the horizon {horizon}")]
    ElementBeyondHorizon { element: u64, horizon: u64 },
    #[error("bound {bound} exceeds the known horizon {horizon}")]
    BoundBeyondHorizon { bound: u64, horizon: u64 },
    #[error("shifted intersection needs a nonempty offset set")]
    EmptyShiftSet,
}

// ---------------------------------------------------------------------------
// FiniteSet
// ---------------------------------------------------------------------------

/// A finite subset of the naturals, kept strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    elements: Vec<u64>,
}

impl FiniteSet {
    /// Builds from arbitrary input order; sorts and deduplicates.
    pub fn new(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        FiniteSet { elements }
    }

    pub fn empty() -> Self {
        FiniteSet { elements: Vec::new() }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Set of positive pairwise differences.
    pub fn difference_set(&self) -> FiniteSet {
        let mut diffs = BTreeSet::new();
        for (i, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[i + 1..] {
                diffs.insert(b - a);
            }
        }
        FiniteSet { elements: diffs.into_iter().collect() }
    }
}

impl std::fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// UltimatelyPeriodic
// ---------------------------------------------------------------------------

/// Finite preperiod plus a periodic tail.
///
/// Membership rule: `x` belongs to the set iff `x < p` and
/// `preperiod_bits[x]` is set, or `x >= p` and `x mod q` lies in `pattern`,
/// where `p` is the preperiod length and `q` the period.
///
/// The canonical form (see [`GroundSet::normalize`]) has the minimal tail
/// period and the minimal preperiod; a canonical value with an empty
/// pattern does not exist because normalization demotes it to a
/// [`FiniteSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltimatelyPeriodic {
    preperiod_bits: Vec<bool>,
    period: u64,
    pattern: BTreeSet<u64>,
}

impl UltimatelyPeriodic {
    /// Validates the shape but does not canonicalize.
    pub fn new(
        preperiod_bits: Vec<bool>,
        period: u64,
        pattern: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        if period == 0 {
            return Err(SetError::ZeroPeriod);
        }
        let pattern: BTreeSet<u64> = pattern.into_iter().collect();
        if let Some(&residue) = pattern.iter().find(|&&r| r >= period) {
            return Err(SetError::ResidueOutOfRange { residue, period });
        }
        Ok(UltimatelyPeriodic { preperiod_bits, period, pattern })
    }

    pub fn preperiod_len(&self) -> u64 {
        self.preperiod_bits.len() as u64
    }

    pub fn preperiod_bits(&self) -> &[bool] {
        &self.preperiod_bits
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn pattern(&self) -> &BTreeSet<u64> {
        &self.pattern
    }

    pub fn contains(&self, x: u64) -> bool {
        if x < self.preperiod_len() {
            self.preperiod_bits[x as usize]
        } else {
            self.pattern.contains(&(x % self.period))
        }
    }

    /// Minimal (period, preperiod) form, demoting an empty tail to a
    /// finite set.
    fn canonicalize(&self) -> GroundSet {
        // Minimal tail period: smallest divisor d of q under which the
        // pattern is rotation invariant.
        let q = self.period;
        let mut min_period = q;
        for d in 1..=q {
            if !q.is_multiple_of(d) {
                continue;
            }
            let invariant = (0..q)
                .all(|r| self.pattern.contains(&r) == self.pattern.contains(&((r + d) % q)));
            if invariant {
                min_period = d;
                break;
            }
        }
        let pattern: BTreeSet<u64> =
            self.pattern.iter().copied().filter(|&r| r < min_period).collect();

        if pattern.is_empty() {
            // Empty tail: the set is exactly its preperiod bits.
            let elements = self
                .preperiod_bits
                .iter()
                .enumerate()
                .filter_map(|(x, &b)| b.then_some(x as u64))
                .collect();
            return GroundSet::Finite(FiniteSet { elements });
        }

        // Minimal preperiod: greedy left-shrink while the boundary bit
        // agrees with the tail pattern at that position.
        let mut bits = self.preperiod_bits.clone();
        while let Some(&last) = bits.last() {
            let x = bits.len() as u64 - 1;
            if last == pattern.contains(&(x % min_period)) {
                bits.pop();
            } else {
                break;
            }
        }

        GroundSet::Periodic(UltimatelyPeriodic { preperiod_bits: bits, period: min_period, pattern })
    }
}

// ---------------------------------------------------------------------------
// SampledPrefix
// ---------------------------------------------------------------------------

/// Fully known initial segment of a possibly infinite set.
///
/// Everything below `horizon` is decided by the element list; nothing at or
/// above it is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledPrefix {
    elements: Vec<u64>,
    horizon: u64,
}

impl SampledPrefix {
    pub fn new(mut elements: Vec<u64>, horizon: u64) -> Result<Self, SetError> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&element) = elements.iter().find(|&&x| x >= horizon) {
            return Err(SetError::ElementBeyondHorizon { element, horizon });
        }
        Ok(SampledPrefix { elements, horizon })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn contains_below_horizon(&self, x: u64) -> Option<bool> {
        (x < self.horizon).then(|| self.elements.binary_search(&x).is_ok())
    }
}

// ---------------------------------------------------------------------------
// GroundSet
// ---------------------------------------------------------------------------

/// Result of asking for the least element strictly above a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NextElement {
    Found(u64),
    /// The set provably has no further element.
    Exhausted,
    /// The known prefix ran out at this horizon.
    BeyondHorizon(u64),
}

/// A subset of the naturals in one of the three representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundSet {
    Finite(FiniteSet),
    Periodic(UltimatelyPeriodic),
    Sampled(SampledPrefix),
}

impl GroundSet {
    pub fn empty() -> Self {
        GroundSet::Finite(FiniteSet::empty())
    }

    pub fn finite(elements: Vec<u64>) -> Self {
        GroundSet::Finite(FiniteSet::new(elements))
    }

    pub fn periodic(
        preperiod_bits: Vec<bool>,
        period: u64,
        pattern: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        Ok(GroundSet::Periodic(UltimatelyPeriodic::new(preperiod_bits, period, pattern)?))
    }

    pub fn sampled(elements: Vec<u64>, horizon: u64) -> Result<Self, SetError> {
        Ok(GroundSet::Sampled(SampledPrefix::new(elements, horizon)?))
    }

    /// The full set of naturals.
    pub fn naturals() -> Self {
        GroundSet::Periodic(UltimatelyPeriodic {
            preperiod_bits: Vec::new(),
            period: 1,
            pattern: BTreeSet::from([0]),
        })
    }

    pub fn evens() -> Self {
        GroundSet::Periodic(UltimatelyPeriodic {
            preperiod_bits: Vec::new(),
            period: 2,
            pattern: BTreeSet::from([0]),
        })
    }

    pub fn odds() -> Self {
        GroundSet::Periodic(UltimatelyPeriodic {
            preperiod_bits: Vec::new(),
            period: 2,
            pattern: BTreeSet::from([1]),
        })
    }

    /// Membership is definite in both exact representations.
    pub fn is_exact(&self) -> bool {
        !matches!(self, GroundSet::Sampled(_))
    }

    /// `Some(h)` when membership is only known below `h`.
    pub fn known_horizon(&self) -> Option<u64> {
        match self {
            GroundSet::Sampled(s) => Some(s.horizon),
            _ => None,
        }
    }

    pub fn as_periodic(&self) -> Option<&UltimatelyPeriodic> {
        match self {
            GroundSet::Periodic(up) => Some(up),
            _ => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteSet> {
        match self {
            GroundSet::Finite(fs) => Some(fs),
            _ => None,
        }
    }

    pub fn as_sampled(&self) -> Option<&SampledPrefix> {
        match self {
            GroundSet::Sampled(sp) => Some(sp),
            _ => None,
        }
    }

    /// Three-valued membership; `None` means beyond the known horizon.
    pub fn member_opt(&self, x: u64) -> Option<bool> {
        match self {
            GroundSet::Finite(fs) => Some(fs.contains(x)),
            GroundSet::Periodic(up) => Some(up.contains(x)),
            GroundSet::Sampled(sp) => sp.contains_below_horizon(x),
        }
    }

    pub fn member(&self, x: u64) -> TriVerdict {
        match self.member_opt(x) {
            Some(true) => TriVerdict::yes_plain(""),
            Some(false) => TriVerdict::no_plain(""),
            None => TriVerdict::unknown(format!(
                "{} is at or beyond the known horizon {}",
                x,
                self.known_horizon().unwrap_or(0)
            )),
        }
    }

    /// Canonical form. Idempotent; preserves membership everywhere.
    pub fn normalize(&self) -> GroundSet {
        match self {
            GroundSet::Finite(_) | GroundSet::Sampled(_) => self.clone(),
            GroundSet::Periodic(up) => up.canonicalize(),
        }
    }

    /// Rightward translate `{a + k : a in self}`.
    pub fn translate(&self, k: u64) -> GroundSet {
        match self {
            GroundSet::Finite(fs) => {
                GroundSet::Finite(FiniteSet { elements: fs.elements.iter().map(|a| a + k).collect() })
            }
            GroundSet::Periodic(up) => {
                let q = up.period;
                let mut bits = vec![false; k as usize];
                bits.extend_from_slice(&up.preperiod_bits);
                let pattern: BTreeSet<u64> = up.pattern.iter().map(|&r| (r + k) % q).collect();
                UltimatelyPeriodic { preperiod_bits: bits, period: q, pattern }.canonicalize()
            }
            GroundSet::Sampled(sp) => GroundSet::Sampled(SampledPrefix {
                elements: sp.elements.iter().map(|a| a + k).collect(),
                horizon: sp.horizon + k,
            }),
        }
    }

    pub fn intersect(&self, other: &GroundSet) -> GroundSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &GroundSet) -> GroundSet {
        self.combine(other, |a, b| a || b)
    }

    fn combine(&self, other: &GroundSet, op: fn(bool, bool) -> bool) -> GroundSet {
        match (self.known_horizon(), other.known_horizon()) {
            (None, None) => combine_exact(self, other, op),
            (ha, hb) => {
                let horizon = match (ha, hb) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                };
                let elements = (0..horizon)
                    .filter(|&x| {
                        // Both memberships are definite below the joint horizon.
                        op(self.member_opt(x).unwrap(), other.member_opt(x).unwrap())
                    })
                    .collect();
                GroundSet::Sampled(SampledPrefix { elements, horizon })
            }
        }
    }

    /// `{x : x + t in self for every t in shifts}`, the intersection of the
    /// downward shifts of the set.
    pub fn shift_down_intersect(&self, shifts: &FiniteSet) -> Result<GroundSet, SetError> {
        if shifts.is_empty() {
            return Err(SetError::EmptyShiftSet);
        }
        let max_shift = shifts.max().unwrap();
        Ok(match self {
            GroundSet::Finite(fs) => {
                let candidates = match fs.max() {
                    None => Vec::new(),
                    Some(max_s) => (0..=max_s.saturating_sub(max_shift))
                        .filter(|&x| shifts.elements().iter().all(|&t| fs.contains(x + t)))
                        .collect(),
                };
                GroundSet::Finite(FiniteSet { elements: candidates })
            }
            GroundSet::Periodic(up) => {
                let q = up.period;
                // Every x >= p has x + t in the tail, so the rule stays
                // periodic with the same period.
                let pattern: BTreeSet<u64> = (0..q)
                    .filter(|&r| shifts.elements().iter().all(|&t| up.pattern.contains(&((r + t) % q))))
                    .collect();
                let bits: Vec<bool> = (0..up.preperiod_len())
                    .map(|x| shifts.elements().iter().all(|&t| up.contains(x + t)))
                    .collect();
                UltimatelyPeriodic { preperiod_bits: bits, period: q, pattern }.canonicalize()
            }
            GroundSet::Sampled(sp) => {
                let horizon = sp.horizon.saturating_sub(max_shift);
                let elements = sp
                    .elements
                    .iter()
                    .copied()
                    .filter(|&x| {
                        x < horizon
                            && shifts.elements().iter().all(|&t| sp.elements.binary_search(&(x + t)).is_ok())
                    })
                    .collect();
                GroundSet::Sampled(SampledPrefix { elements, horizon })
            }
        })
    }

    /// The set of positive differences of pairs of elements.
    ///
    /// Exact for both exact representations. For an ultimately periodic set
    /// every difference is witnessed by a pair whose smaller element lies
    /// below `p + q`, so the result is again ultimately periodic with the
    /// same period. For a sampled prefix the result lists the differences
    /// realized by pairs below `min(window, horizon)`; as an approximation
    /// of the underlying infinite set it is a sound under-approximation
    /// (listed differences are genuine, absent ones are merely unwitnessed).
    pub fn difference_set(&self, window: u64) -> GroundSet {
        match self {
            GroundSet::Finite(fs) => GroundSet::Finite(fs.difference_set()),
            GroundSet::Periodic(up) => {
                let p = up.preperiod_len();
                let q = up.period;
                // Witness pool: every realizable difference has a pair whose
                // smaller element is below p + q (shift the pair down by
                // whole periods otherwise).
                let witnesses: Vec<u64> = (0..p + q).filter(|&a| up.contains(a)).collect();
                let new_p = p.max(1);
                let bits: Vec<bool> = (0..new_p)
                    .map(|d| d > 0 && witnesses.iter().any(|&a| up.contains(a + d)))
                    .collect();
                let pattern: BTreeSet<u64> = (0..q)
                    .filter(|&r| witnesses.iter().any(|&a| up.pattern.contains(&((a + r) % q))))
                    .collect();
                UltimatelyPeriodic { preperiod_bits: bits, period: q, pattern }.canonicalize()
            }
            GroundSet::Sampled(sp) => {
                let cap = window.min(sp.horizon);
                let visible: Vec<u64> = sp.elements.iter().copied().filter(|&x| x < cap).collect();
                let mut diffs = BTreeSet::new();
                for (i, &a) in visible.iter().enumerate() {
                    for &b in &visible[i + 1..] {
                        diffs.insert(b - a);
                    }
                }
                GroundSet::Sampled(SampledPrefix { elements: diffs.into_iter().collect(), horizon: cap })
            }
        }
    }

    /// All elements strictly below `bound`, in increasing order.
    pub fn enumerate_below(&self, bound: u64) -> Result<FiniteSet, SetError> {
        match self {
            GroundSet::Finite(fs) => {
                Ok(FiniteSet { elements: fs.elements.iter().copied().filter(|&x| x < bound).collect() })
            }
            GroundSet::Periodic(up) => {
                Ok(FiniteSet { elements: (0..bound).filter(|&x| up.contains(x)).collect() })
            }
            GroundSet::Sampled(sp) => {
                if bound > sp.horizon {
                    return Err(SetError::BoundBeyondHorizon { bound, horizon: sp.horizon });
                }
                Ok(FiniteSet { elements: sp.elements.iter().copied().filter(|&x| x < bound).collect() })
            }
        }
    }

    /// Least element, when the representation can name one.
    ///
    /// For a sampled prefix, `None` means "no element below the horizon";
    /// the underlying set may still be nonempty further out.
    pub fn min_element(&self) -> Option<u64> {
        match self {
            GroundSet::Finite(fs) => fs.min(),
            GroundSet::Periodic(up) => {
                if let Some(x) = up.preperiod_bits.iter().position(|&b| b) {
                    return Some(x as u64);
                }
                let p = up.preperiod_len();
                up.pattern
                    .iter()
                    .map(|&r| {
                        let offset = (r + up.period - p % up.period) % up.period;
                        p + offset
                    })
                    .min()
            }
            GroundSet::Sampled(sp) => sp.elements.first().copied(),
        }
    }

    /// Least element strictly above `v`.
    pub fn next_above(&self, v: u64) -> NextElement {
        match self {
            GroundSet::Finite(fs) => {
                let idx = fs.elements.partition_point(|&x| x <= v);
                match fs.elements.get(idx) {
                    Some(&x) => NextElement::Found(x),
                    None => NextElement::Exhausted,
                }
            }
            GroundSet::Periodic(up) => {
                let p = up.preperiod_len();
                let mut x = v + 1;
                while x < p {
                    if up.preperiod_bits[x as usize] {
                        return NextElement::Found(x);
                    }
                    x += 1;
                }
                if up.pattern.is_empty() {
                    return NextElement::Exhausted;
                }
                let start = p.max(v + 1);
                for candidate in start..start + up.period {
                    if up.pattern.contains(&(candidate % up.period)) {
                        return NextElement::Found(candidate);
                    }
                }
                unreachable!("nonempty pattern yields an element within one period")
            }
            GroundSet::Sampled(sp) => {
                let idx = sp.elements.partition_point(|&x| x <= v);
                match sp.elements.get(idx) {
                    Some(&x) => NextElement::Found(x),
                    None => NextElement::BeyondHorizon(sp.horizon),
                }
            }
        }
    }

    /// Exact subset test; `None` when either side is horizon-limited.
    pub fn subset_exact(&self, other: &GroundSet) -> Option<bool> {
        if !self.is_exact() || !other.is_exact() {
            return None;
        }
        let bound = joint_check_bound(self, other);
        Some((0..bound).all(|x| !self.member_opt(x).unwrap() || other.member_opt(x).unwrap()))
    }

    /// Exact extensional equality; `None` when either side is horizon-limited.
    pub fn eq_exact(&self, other: &GroundSet) -> Option<bool> {
        Some(self.subset_exact(other)? && other.subset_exact(self)?)
    }
}

impl From<FiniteSet> for GroundSet {
    fn from(fs: FiniteSet) -> Self {
        GroundSet::Finite(fs)
    }
}

/// Checking two exact sets pointwise below this bound decides any
/// inclusion between them: past `max(p_a, p_b)` both are periodic with the
/// joint period.
pub(crate) fn joint_check_bound(a: &GroundSet, b: &GroundSet) -> u64 {
    let view = |s: &GroundSet| -> (u64, u64) {
        match s {
            GroundSet::Finite(fs) => (fs.max().map_or(0, |m| m + 1), 1),
            GroundSet::Periodic(up) => (up.preperiod_len(), up.period),
            GroundSet::Sampled(sp) => (sp.horizon, 1),
        }
    };
    let (pa, qa) = view(a);
    let (pb, qb) = view(b);
    pa.max(pb) + qa.lcm(&qb)
}

fn combine_exact(a: &GroundSet, b: &GroundSet, op: fn(bool, bool) -> bool) -> GroundSet {
    // Uniform view: a finite set is a periodic set with period 1 and an
    // empty pattern.
    let view = |s: &GroundSet| -> (Vec<bool>, u64, BTreeSet<u64>) {
        match s {
            GroundSet::Finite(fs) => {
                let p = fs.max().map_or(0, |m| m + 1);
                let bits = (0..p).map(|x| fs.contains(x)).collect();
                (bits, 1, BTreeSet::new())
            }
            GroundSet::Periodic(up) => {
                (up.preperiod_bits.clone(), up.period, up.pattern.clone())
            }
            GroundSet::Sampled(_) => unreachable!("combine_exact takes exact operands"),
        }
    };
    let (bits_a, qa, pat_a) = view(a);
    let (bits_b, qb, pat_b) = view(b);
    let p = (bits_a.len() as u64).max(bits_b.len() as u64);
    let q = qa.lcm(&qb);
    let tail = |bits: &[bool], qs: u64, pat: &BTreeSet<u64>, x: u64| -> bool {
        if x < bits.len() as u64 {
            bits[x as usize]
        } else {
            pat.contains(&(x % qs))
        }
    };
    let bits: Vec<bool> = (0..p)
        .map(|x| op(tail(&bits_a, qa, &pat_a, x), tail(&bits_b, qb, &pat_b, x)))
        .collect();
    let pattern: BTreeSet<u64> = (0..q)
        .filter(|&r| op(pat_a.contains(&(r % qa)), pat_b.contains(&(r % qb))))
        .collect();
    UltimatelyPeriodic { preperiod_bits: bits, period: q, pattern }.canonicalize()
}

impl std::fmt::Display for GroundSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroundSet::Finite(fs) => write!(f, "{fs}"),
            GroundSet::Periodic(up) => {
                let bits: String = up
                    .preperiod_bits
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                write!(f, "up({bits};{};", up.period)?;
                for (i, r) in up.pattern.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
            GroundSet::Sampled(sp) => {
                write!(f, "prefix[H={}]{{", sp.horizon)?;
                for (i, x) in sp.elements.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(bits: &[u8], q: u64, pat: &[u64]) -> GroundSet {
        GroundSet::periodic(bits.iter().map(|&b| b != 0).collect(), q, pat.iter().copied())
            .unwrap()
    }

    #[test]
    fn normalize_halves_redundant_period() {
        let raw = up(&[], 4, &[0, 2]);
        assert_eq!(raw.normalize(), GroundSet::evens());
    }

    #[test]
    fn normalize_shrinks_agreeing_preperiod() {
        let raw = up(&[1, 0], 2, &[0]);
        assert_eq!(raw.normalize(), GroundSet::evens());
    }

    #[test]
    fn normalize_demotes_empty_pattern_to_finite() {
        let raw = up(&[0, 1, 1], 3, &[]);
        assert_eq!(raw.normalize(), GroundSet::finite(vec![1, 2]));
        let empty = up(&[], 3, &[]);
        assert_eq!(empty.normalize(), GroundSet::empty());
    }

    #[test]
    fn normalize_is_idempotent_on_examples() {
        for s in [up(&[1, 0, 0, 1], 6, &[0, 3]), up(&[0, 0, 1], 4, &[1, 3]), up(&[], 1, &[0])] {
            let once = s.normalize();
            assert_eq!(once.normalize(), once);
        }
    }

    #[test]
    fn membership_three_valued() {
        let evens = GroundSet::evens();
        assert_eq!(evens.member_opt(4), Some(true));
        assert_eq!(evens.member_opt(5), Some(false));
        let prefix = GroundSet::sampled(vec![0, 3, 11], 20).unwrap();
        assert_eq!(prefix.member_opt(11), Some(true));
        assert_eq!(prefix.member_opt(12), Some(false));
        assert_eq!(prefix.member_opt(32), None);
        assert!(prefix.member(32).is_unknown());
    }

    #[test]
    fn translate_examples() {
        assert_eq!(
            GroundSet::finite(vec![0, 3, 11]).translate(1),
            GroundSet::finite(vec![1, 4, 12])
        );
        assert_eq!(GroundSet::evens().translate(1), GroundSet::odds());
        let s = up(&[0, 1], 3, &[0]);
        assert_eq!(s.translate(0), s.normalize());
    }

    #[test]
    fn translate_shifts_sampled_horizon() {
        let s = GroundSet::sampled(vec![0, 3], 10).unwrap();
        let t = s.translate(5);
        assert_eq!(t.known_horizon(), Some(15));
        assert_eq!(t.member_opt(8), Some(true));
        assert_eq!(t.member_opt(2), Some(false));
    }

    #[test]
    fn intersect_union_examples() {
        let evens = GroundSet::evens();
        let threes = up(&[], 3, &[0]);
        assert_eq!(evens.intersect(&threes), up(&[], 6, &[0]).normalize());
        assert_eq!(evens.union(&GroundSet::odds()), GroundSet::naturals());
        assert_eq!(evens.intersect(&GroundSet::odds()), GroundSet::empty());
    }

    #[test]
    fn combine_with_sampled_takes_min_horizon() {
        let evens = GroundSet::evens();
        let prefix = GroundSet::sampled(vec![0, 2, 3, 8], 12).unwrap();
        let meet = prefix.intersect(&evens);
        assert_eq!(meet.known_horizon(), Some(12));
        assert_eq!(meet.enumerate_below(12).unwrap(), FiniteSet::new(vec![0, 2, 8]));
        let join = prefix.union(&evens);
        assert_eq!(join.enumerate_below(12).unwrap().elements(), &[0, 2, 3, 4, 6, 8, 10]);
    }

    #[test]
    fn shift_down_intersect_examples() {
        let evens = GroundSet::evens();
        let same = evens.shift_down_intersect(&FiniteSet::new(vec![0, 2])).unwrap();
        assert_eq!(same, GroundSet::evens());
        let clash = evens.shift_down_intersect(&FiniteSet::new(vec![0, 1])).unwrap();
        assert_eq!(clash, GroundSet::empty());
        let nat = GroundSet::naturals();
        assert_eq!(nat.shift_down_intersect(&FiniteSet::new(vec![5])).unwrap(), nat);
        assert_eq!(
            evens.shift_down_intersect(&FiniteSet::empty()),
            Err(SetError::EmptyShiftSet)
        );
    }

    #[test]
    fn difference_set_examples() {
        let fs = GroundSet::finite(vec![0, 3, 11]);
        assert_eq!(fs.difference_set(100), GroundSet::finite(vec![3, 8, 11]));

        // Positive even numbers: period 2 with 0 struck out.
        let d = GroundSet::evens().difference_set(100);
        assert_eq!(d.member_opt(0), Some(false));
        assert_eq!(d.member_opt(2), Some(true));
        assert_eq!(d.member_opt(3), Some(false));
        assert_eq!(d.member_opt(104), Some(true));

        let sp = GroundSet::sampled(vec![0, 3, 11, 32], 40).unwrap();
        let dd = sp.difference_set(40);
        assert_eq!(
            dd.as_sampled().unwrap().elements(),
            &[3, 8, 11, 21, 29, 32]
        );
    }

    #[test]
    fn difference_set_of_preperiodic_set_is_exact() {
        // {1} plus the multiples of 10 from 10 on.
        let s = up(&[0, 1], 10, &[0]);
        let d = s.difference_set(0);
        // 9 = 10 - 1 and 10 = 20 - 10 are differences; 8 is not.
        assert_eq!(d.member_opt(9), Some(true));
        assert_eq!(d.member_opt(10), Some(true));
        assert_eq!(d.member_opt(8), Some(false));
        // 19 = 20 - 1: witnessed through the preperiod element.
        assert_eq!(d.member_opt(19), Some(true));
        assert_eq!(d.member_opt(18), Some(false));
    }

    #[test]
    fn enumerate_and_min() {
        assert_eq!(
            GroundSet::evens().enumerate_below(7).unwrap(),
            FiniteSet::new(vec![0, 2, 4, 6])
        );
        assert_eq!(GroundSet::odds().min_element(), Some(1));
        assert_eq!(GroundSet::empty().min_element(), None);
        let sp = GroundSet::sampled(vec![5], 10).unwrap();
        assert_eq!(sp.enumerate_below(10).unwrap(), FiniteSet::new(vec![5]));
        assert_eq!(
            sp.enumerate_below(11),
            Err(SetError::BoundBeyondHorizon { bound: 11, horizon: 10 })
        );
    }

    #[test]
    fn min_element_respects_preperiod_gap() {
        // Empty preperiod of length 3, then multiples of 2: min is 4.
        let s = up(&[0, 0, 0], 2, &[0]);
        assert_eq!(s.min_element(), Some(4));
    }

    #[test]
    fn next_above_walks_all_representations() {
        assert_eq!(GroundSet::evens().next_above(5), NextElement::Found(6));
        assert_eq!(GroundSet::finite(vec![1, 4]).next_above(4), NextElement::Exhausted);
        let sp = GroundSet::sampled(vec![1, 4], 9).unwrap();
        assert_eq!(sp.next_above(1), NextElement::Found(4));
        assert_eq!(sp.next_above(4), NextElement::BeyondHorizon(9));
    }

    #[test]
    fn subset_exact_examples() {
        let evens = GroundSet::evens();
        let sixes = up(&[], 6, &[0]);
        assert_eq!(sixes.subset_exact(&evens), Some(true));
        assert_eq!(evens.subset_exact(&sixes), Some(false));
        assert_eq!(GroundSet::empty().subset_exact(&evens), Some(true));
        let sp = GroundSet::sampled(vec![0], 5).unwrap();
        assert_eq!(sp.subset_exact(&evens), None);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            GroundSet::periodic(vec![], 2, [2]),
            Err(SetError::ResidueOutOfRange { residue: 2, period: 2 })
        );
        assert_eq!(GroundSet::periodic(vec![], 0, []), Err(SetError::ZeroPeriod));
        assert_eq!(
            GroundSet::sampled(vec![7], 7),
            Err(SetError::ElementBeyondHorizon { element: 7, horizon: 7 })
        );
    }
}
