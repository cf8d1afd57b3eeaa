//! Degeneration combinatorics of slope sequences.
//!
//! A sequence `{τ_1 ≤ ... ≤ τ_p}` labels a rough stratum. One step `R ↦ S`
//! glues an adjacent pair of distinct slopes into its characteristic
//! successor; `≺` is the reachability order generated by these steps.

mod enumerate;
mod export;
mod poset;
mod seq;
mod successor;

pub use enumerate::admissible_sequences;
pub use export::{to_dot, to_json};
pub use poset::{precedes, reachable_poset, DegenerationPoset};
pub use seq::SlopeSeq;
pub use successor::{char_seq_base, char_seq_pair, char_seq_pair_explicit, successors};
