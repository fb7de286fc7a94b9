//! Combinatorial classifiers: upper Banach density, thickness, syndeticity,
//! piecewise syndeticity and arithmetic progressions.
//!
//! All of these properties are preserved upward along finite embeddability,
//! which is what the law checkers exercise. On ultimately periodic sets
//! each classifier is exact; on sampled prefixes it degrades to windowed
//! evidence and `Unknown` verdicts, since no finite window can certify
//! "arbitrarily long" behaviour.

use num_rational::Ratio;

use crate::setrep::GroundSet;
use crate::verdict::TriVerdict;

/// Exact rational density value.
pub type Density = Ratio<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMethod {
    Exact,
    Windowed,
}

/// Upper Banach density of a set, either exact or a windowed lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Density,
    pub method: DensityMethod,
    /// Window length used, when `method` is `Windowed`.
    pub window: Option<u64>,
}

impl DensityReport {
    fn exact(value: Density) -> Self {
        DensityReport { value, method: DensityMethod::Exact, window: None }
    }
}

impl std::fmt::Display for DensityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.method {
            DensityMethod::Exact => write!(f, "{} (exact)", self.value),
            DensityMethod::Windowed => {
                write!(f, "{} (windowed, W={})", self.value, self.window.unwrap_or(0))
            }
        }
    }
}

/// A `length`-term arithmetic progression contained in the reported set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApWitness {
    pub start: u64,
    pub difference: u64,
    pub length: u64,
}

impl ApWitness {
    /// Re-checks every term's membership.
    pub fn holds_in(&self, s: &GroundSet) -> bool {
        (0..self.length).all(|i| s.member_opt(self.start + i * self.difference) == Some(true))
    }
}

impl std::fmt::Display for ApWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "start={} diff={} len={}", self.start, self.difference, self.length)
    }
}

/// Upper Banach density.
///
/// Finite sets have density exactly zero. For an ultimately periodic set
/// the sliding-window maximum converges to the tail pattern density
/// `|pattern| / q`, reported exactly. For a sampled prefix the result is
/// the maximum over all fully known windows of length `window`, a lower
/// bound for the true value.
pub fn upper_banach_density(s: &GroundSet, window: u64) -> DensityReport {
    let window = window.max(1);
    match &s.normalize() {
        GroundSet::Finite(_) => DensityReport::exact(Ratio::new(0, 1)),
        GroundSet::Periodic(up) => {
            DensityReport::exact(Ratio::new(up.pattern().len() as u64, up.period()))
        }
        GroundSet::Sampled(sp) => {
            let horizon = sp.horizon();
            if window > horizon {
                return DensityReport {
                    value: Ratio::new(0, 1),
                    method: DensityMethod::Windowed,
                    window: Some(window),
                };
            }
            // Max count of elements in any [x, x + window) fully inside the
            // known region, via a sliding pair of cursors.
            let elems = sp.elements();
            let mut best = 0usize;
            let mut lo = 0usize;
            for hi in 0..elems.len() {
                while elems[hi] - elems[lo] >= window {
                    lo += 1;
                }
                best = best.max(hi - lo + 1);
            }
            DensityReport {
                value: Ratio::new(best as u64, window),
                method: DensityMethod::Windowed,
                window: Some(window),
            }
        }
    }
}

/// Longest run of consecutive members found in the listed elements.
fn longest_run(elems: &[u64]) -> u64 {
    let mut best = 0u64;
    let mut run = 0u64;
    let mut prev: Option<u64> = None;
    for &x in elems {
        run = match prev {
            Some(p) if x == p + 1 => run + 1,
            _ => 1,
        };
        best = best.max(run);
        prev = Some(x);
    }
    best
}

/// Largest gap between consecutive listed elements.
fn max_gap(elems: &[u64]) -> u64 {
    elems.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
}

/// Thickness: the set contains intervals of every finite length.
///
/// Exact for exact representations (an ultimately periodic set is thick
/// iff its tail is cofinite). A sampled prefix can never certify or refute
/// thickness, so the verdict is `Unknown` either way; `threshold` only
/// shapes the reported evidence, with the longest observed run as witness.
pub fn is_thick(s: &GroundSet, threshold: u64) -> TriVerdict {
    let threshold = threshold.max(1);
    match &s.normalize() {
        GroundSet::Finite(_) => TriVerdict::no_plain("finite sets contain no unbounded runs"),
        GroundSet::Periodic(up) => {
            if up.pattern().len() as u64 == up.period() {
                TriVerdict::yes_plain("cofinite tail contains intervals of every length")
            } else {
                let missing = (0..up.period())
                    .find(|r| !up.pattern().contains(r))
                    .expect("non-full pattern misses a residue");
                TriVerdict::no_plain(format!(
                    "tail runs are interrupted at residue {missing} (mod {})",
                    up.period()
                ))
            }
        }
        GroundSet::Sampled(sp) => {
            let run = longest_run(sp.elements());
            let mut v = if run >= threshold {
                TriVerdict::unknown(format!(
                    "run of length {run} >= {threshold} below horizon {}; arbitrarily long runs are not finitely certifiable",
                    sp.horizon()
                ))
            } else {
                TriVerdict::unknown(format!(
                    "longest run below horizon {} is {run} < {threshold}; absence below the horizon refutes nothing",
                    sp.horizon()
                ))
            };
            v.witness = Some(run);
            v
        }
    }
}

/// Syndeticity: gaps between consecutive elements are bounded.
pub fn is_syndetic(s: &GroundSet) -> TriVerdict {
    match &s.normalize() {
        GroundSet::Finite(_) => {
            TriVerdict::no_plain("a finite set has an unbounded gap after its maximum")
        }
        GroundSet::Periodic(up) => {
            // The true maximal gap is realized among consecutive elements
            // whose first member lies below p + 2q.
            let bound = up.preperiod_len() + 3 * up.period();
            let elems: Vec<u64> = (0..bound).filter(|&x| up.contains(x)).collect();
            let mut v = TriVerdict::yes_plain(format!(
                "gaps bounded by {}",
                max_gap(&elems).max(1)
            ));
            v.witness = Some(max_gap(&elems).max(1));
            v
        }
        GroundSet::Sampled(sp) => {
            let gap = max_gap(sp.elements());
            let mut v = TriVerdict::unknown(format!(
                "largest observed gap below horizon {} is {gap}; gaps beyond are unknown",
                sp.horizon()
            ));
            v.witness = Some(gap);
            v
        }
    }
}

/// Piecewise syndeticity: a syndetic set intersected with a thick one.
///
/// On exact ultimately periodic sets this collapses to syndeticity (a
/// nonempty tail pattern is already syndetic, an empty one is finite); the
/// sampled path keeps the notions separate and stays `Unknown`.
pub fn is_piecewise_syndetic(s: &GroundSet) -> TriVerdict {
    match &s.normalize() {
        GroundSet::Finite(_) => TriVerdict::no_plain("finite sets are not piecewise syndetic"),
        GroundSet::Periodic(_) => {
            let mut v = is_syndetic(s);
            v.reason = format!("syndetic, hence piecewise syndetic ({})", v.reason);
            v
        }
        GroundSet::Sampled(sp) => {
            let gap = max_gap(sp.elements());
            let run = longest_run(sp.elements());
            TriVerdict::unknown(format!(
                "windowed evidence only (max gap {gap}, longest run {run} below horizon {})",
                sp.horizon()
            ))
        }
    }
}

/// Exhaustive arithmetic-progression search among `elems`, with terms
/// checked through `member` and kept strictly below `bound`.
fn search_longest_ap(
    elems: &[u64],
    member: &dyn Fn(u64) -> bool,
    bound: u64,
    stop_at: Option<u64>,
) -> Option<ApWitness> {
    let mut best: Option<ApWitness> = None;
    for &start in elems {
        for diff in 1..bound {
            let mut len = 1u64;
            while start + len * diff < bound && member(start + len * diff) {
                len += 1;
            }
            if best.is_none_or(|b| len > b.length) {
                best = Some(ApWitness { start, difference: diff, length: len });
            }
            if let (Some(target), Some(b)) = (stop_at, best) {
                if b.length >= target {
                    return best;
                }
            }
        }
    }
    best
}

/// Longest arithmetic progression wholly contained in `[0, window)`.
///
/// Exhaustive over all starts and differences; `None` when no member lies
/// below the window.
pub fn longest_ap(s: &GroundSet, window: u64) -> Option<ApWitness> {
    let bound = match s.known_horizon() {
        Some(h) => window.min(h),
        None => window,
    };
    let elems = s.enumerate_below(bound).expect("bound clamped to horizon");
    if elems.is_empty() {
        return None;
    }
    let member = |x: u64| s.member_opt(x) == Some(true);
    search_longest_ap(elems.elements(), &member, bound, None)
}

/// Does the set contain a `k`-term arithmetic progression?
///
/// For an infinite ultimately periodic set the answer is `Yes` for every
/// `k` with the tail period as difference, no search needed. Finite sets
/// are searched exhaustively over their span, making both answers
/// definite. Sampled prefixes search `[0, min(window, horizon))` and
/// cannot refute.
pub fn contains_k_ap(s: &GroundSet, k: u64, window: u64) -> TriVerdict {
    let k = k.max(1);
    match &s.normalize() {
        GroundSet::Periodic(up) => {
            let p = up.preperiod_len();
            let q = up.period();
            let first_tail = (p..p + q)
                .find(|&x| up.contains(x))
                .expect("normalized periodic set has a nonempty tail");
            let mut v = TriVerdict::yes_because(
                q,
                format!("tail elements {first_tail}, {first_tail}+{q}, ... form progressions of every length"),
            );
            v.witness = Some(q);
            v
        }
        GroundSet::Finite(fs) => {
            if fs.is_empty() {
                return TriVerdict::no_plain("the empty set contains no progressions");
            }
            if k == 1 {
                return TriVerdict::yes_because(1, format!("member {} alone", fs.min().unwrap()));
            }
            let span = fs.max().unwrap() + 2;
            let member = |x: u64| fs.contains(x);
            match search_longest_ap(fs.elements(), &member, span, Some(k)) {
                Some(w) if w.length >= k => TriVerdict::yes_because(
                    w.difference,
                    format!("progression {w}"),
                ),
                _ => TriVerdict::no_plain(
                    "exhaustive search over the set's whole span found no such progression",
                ),
            }
        }
        GroundSet::Sampled(sp) => {
            let bound = window.min(sp.horizon());
            let elems: Vec<u64> =
                sp.elements().iter().copied().filter(|&x| x < bound).collect();
            if k == 1 {
                return match elems.first() {
                    Some(&x) => TriVerdict::yes_because(1, format!("member {x} alone")),
                    None => TriVerdict::unknown("no known members below the window"),
                };
            }
            let member = |x: u64| sp.contains_below_horizon(x) == Some(true);
            match search_longest_ap(&elems, &member, bound, Some(k)) {
                Some(w) if w.length >= k => {
                    TriVerdict::yes_because(w.difference, format!("progression {w}"))
                }
                _ => TriVerdict::unknown(format!(
                    "no {k}-term progression inside [0, {bound}); longer-range ones are unknown"
                )),
            }
        }
    }
}
