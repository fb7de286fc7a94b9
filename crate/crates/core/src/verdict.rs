//! Three-valued verdicts with checkable evidence.
//!
//! Every decision in this crate answers in Kleene-style three-valued logic:
//! `Yes` carries a witness that can be re-checked (typically a translate
//! offset), `No` carries a finite certificate (an obstruction set or a
//! common difference), and `Unknown` names the horizon that was exhausted.
//! Nothing horizon-limited is ever reported as definite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Yes => write!(f, "Yes"),
            Outcome::No => write!(f, "No"),
            Outcome::Unknown => write!(f, "Unknown"),
        }
    }
}

/// A three-valued answer together with its evidence.
///
/// `witness` is a single natural: a translate offset for positive
/// embeddability verdicts, a common difference for negative strong
/// unembeddability verdicts, a run or gap length for classifier reports.
/// `certificate` is a finite set of naturals: for embeddability it is a
/// finite subset of the left operand that admits no translate into the
/// right one. `reason` is human-readable context; for `Unknown` it states
/// which horizon ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriVerdict {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<u64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub reason: String,
}

impl TriVerdict {
    pub fn yes(witness: u64) -> Self {
        TriVerdict {
            outcome: Outcome::Yes,
            witness: Some(witness),
            certificate: Vec::new(),
            reason: String::new(),
        }
    }

    pub fn yes_because(witness: u64, reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::Yes,
            witness: Some(witness),
            certificate: Vec::new(),
            reason: reason.into(),
        }
    }

    /// Positive verdict whose evidence is not a single number (e.g. an
    /// exact emptiness check).
    pub fn yes_plain(reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::Yes,
            witness: None,
            certificate: Vec::new(),
            reason: reason.into(),
        }
    }

    pub fn no_plain(reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::No,
            witness: None,
            certificate: Vec::new(),
            reason: reason.into(),
        }
    }

    /// Negative verdict certified by a finite obstruction set.
    pub fn no_certificate(certificate: Vec<u64>, reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::No,
            witness: None,
            certificate,
            reason: reason.into(),
        }
    }

    /// Negative verdict certified by a single natural (e.g. a common
    /// difference realized on both sides).
    pub fn no_witness(witness: u64, reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::No,
            witness: Some(witness),
            certificate: Vec::new(),
            reason: reason.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        TriVerdict {
            outcome: Outcome::Unknown,
            witness: None,
            certificate: Vec::new(),
            reason: reason.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == Outcome::Unknown
    }

    pub fn is_definite(&self) -> bool {
        self.outcome != Outcome::Unknown
    }

    /// Kleene conjunction of two verdicts: any `No` dominates, `Yes`
    /// requires both. The merged verdict keeps the evidence of whichever
    /// side decided it (for a joint `Yes`, the left witness, with both
    /// mentioned in the reason).
    pub fn and(self, other: TriVerdict) -> TriVerdict {
        match (&self.outcome, &other.outcome) {
            (Outcome::No, _) => self,
            (_, Outcome::No) => other,
            (Outcome::Yes, Outcome::Yes) => {
                let reason = match (self.witness, other.witness) {
                    (Some(a), Some(b)) => format!("forward witness {a}, backward witness {b}"),
                    _ => self.reason.clone(),
                };
                TriVerdict {
                    outcome: Outcome::Yes,
                    witness: self.witness,
                    certificate: Vec::new(),
                    reason,
                }
            }
            _ => {
                let reason = if self.is_unknown() { self.reason } else { other.reason };
                TriVerdict::unknown(reason)
            }
        }
    }
}

impl std::fmt::Display for TriVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.outcome {
            Outcome::Yes => {
                write!(f, "Yes")?;
                if let Some(k) = self.witness {
                    write!(f, " k={k}")?;
                }
            }
            Outcome::No => {
                write!(f, "No")?;
                if !self.certificate.is_empty() {
                    write!(f, ", certificate F={{")?;
                    for (i, x) in self.certificate.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{x}")?;
                    }
                    write!(f, "}}")?;
                } else if let Some(d) = self.witness {
                    write!(f, ", witness {d}")?;
                }
            }
            Outcome::Unknown => write!(f, "Unknown")?,
        }
        if !self.reason.is_empty() {
            match self.outcome {
                Outcome::Unknown => write!(f, ": {}", self.reason)?,
                _ => write!(f, " ({})", self.reason)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn and_truth_table() {
        let y = TriVerdict::yes(1);
        let n = TriVerdict::no_plain("n");
        let u = TriVerdict::unknown("u");
        assert!(y.clone().and(y.clone()).is_yes());
        assert!(y.clone().and(n.clone()).is_no());
        assert!(n.clone().and(u.clone()).is_no());
        assert!(y.clone().and(u.clone()).is_unknown());
        assert!(u.clone().and(u.clone()).is_unknown());
        assert!(u.and(n).is_no());
    }

    #[test]
    fn display_formats() {
        assert_eq!(TriVerdict::yes(1).to_string(), "Yes k=1");
        assert_eq!(
            TriVerdict::no_certificate(vec![0, 1], "").to_string(),
            "No, certificate F={0,1}"
        );
        assert_eq!(TriVerdict::unknown("horizon 10").to_string(), "Unknown: horizon 10");
    }
}
