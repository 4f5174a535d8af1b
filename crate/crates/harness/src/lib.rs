//! Verification pipelines over the core library: seeded random-game
//! cross-checks of the game/graph equivalence, end-to-end runs of the 3-SAT
//! reduction, and the bundled formula corpus.

pub mod corpus;
pub mod pipeline;
pub mod random;
pub mod report;

pub use corpus::{corpus, CorpusEntry};
pub use pipeline::{count_segment_crossings, crosscheck_equivalence, end_to_end};
pub use random::{generate_random_game, RandomGameSpec};
pub use report::{Stage, StageStatus, VerificationReport};
