//! Exact and horizon-bounded decision procedures for the finite
//! embeddability preorder on subsets of the naturals.
//!
//! A set `A` is *finitely embeddable* in `B` (`A <=_fe B`) when every
//! finite subset of `A` has a rightward translate inside `B`. This crate
//! decides that relation exactly on finite and ultimately periodic sets
//! and three-valuedly on sampled prefixes, together with the combinatorial
//! classifiers that are monotone along it (upper Banach density,
//! thickness, syndeticity, piecewise syndeticity, arithmetic
//! progressions), the classic constructions (strongly mutually
//! unembeddable pairs inside any infinite set, certified descending
//! chains, minimal sets of a given size), and a law-checking harness that
//! re-verifies the structural theorems on seeded corpora.
//!
//! Everything is a pure function over immutable values. With the default
//! `parallel` feature the corpus harness fans out over rayon; without it
//! the same code runs sequentially.

pub mod combinatorics;
pub mod constructions;
pub mod fe;
pub mod laws;
pub mod rng;
pub mod setrep;
pub mod verdict;

pub use combinatorics::{ApWitness, Density, DensityMethod, DensityReport};
pub use constructions::{BuildError, ChainStep, DescendingChain, PairSide, UnembeddablePair};
pub use laws::{CorpusReport, CorpusSummary, Evidence, InstanceConfig, LawOutcome, LawReport};
pub use setrep::{FiniteSet, GroundSet, NextElement, SampledPrefix, SetError, UltimatelyPeriodic};
pub use verdict::{Outcome, TriVerdict};
