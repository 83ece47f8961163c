//! Automatic scansion of Classical Greek hexameter.
//!
//! The crate analyses epic verse in four steps: polytonic text is normalized
//! and classified ([`greek`]), split into syllables ([`syllable`]), probed with
//! local prosodic rules ([`rules`]), and then resolved against the catalog of
//! 32 valid hexameter schemes ([`meter`]). A targeted finite-state search
//! ([`search`]) confirms spondees where the rules allow it, and a weighted
//! finite-state transducer ([`transducer`]) completes partial annotations,
//! ranks alternatives, and rejects invalid candidates. Verses that fail are
//! re-analysed vowel by vowel, with a simple synizesis heuristic ([`recovery`]).
//!
//! [`pipeline`] wires the steps together per verse and over corpora, and
//! [`metrics`] scores output against gold annotations (precision, recall,
//! F-measure, Cohen's kappa, accuracy).

pub mod config;
pub mod greek;
pub mod meter;
pub mod metrics;
pub mod pipeline;
pub mod recovery;
pub mod rules;
pub mod search;
pub mod syllable;
pub mod transducer;

pub use config::ScanConfig;
pub use greek::{normalize, CharClass, NormalizedVerse};
pub use meter::{all_variants, plausibility_check, ScansionMark, Variant};
pub use pipeline::{Engine, VerseRecord, VerseStatus};
pub use syllable::{syllabify, Syllable};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A character outside the normalized Greek alphabet.
    #[error("unknown character '{ch}' at position {position}")]
    UnknownCharacter { ch: char, position: usize },

    /// A verse without any vowel cannot be syllabified.
    #[error("verse contains no vowels")]
    NoVowels,

    /// Syllable count admits no hexameter variant.
    #[error("syllable count {count} admits no hexameter variant")]
    NotAHexameter { count: usize },

    /// The confirmed spondees contradict every variant.
    #[error("confirmed spondees are inconsistent with every variant")]
    Contradiction,

    /// A scansion mark sequence violated an operation's precondition.
    #[error("invalid marks: {0}")]
    InvalidMarks(String),

    /// Bad configuration value.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A metric whose denominator vanished.
    #[error("undefined metric: {0}")]
    UndefinedMetric(&'static str),

    /// Malformed input file contents.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
