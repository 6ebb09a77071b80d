use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("unknown game id {0}")]
    UnknownGame(u32),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("octal digit {0} out of range 0..7")]
    DigitOutOfRange(char),
    #[error("ruleset has {digits} digits but {points} point values")]
    PointCountMismatch { digits: usize, points: usize },
    #[error("ruleset has no nonzero digit")]
    EmptyRuleset,
    #[error("malformed ruleset `{0}`")]
    BadRuleset(String),
    #[error("at least one component is required")]
    NoComponents,
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("heap splitting is not defined under the sequential join")]
    SplitInSequential,
    #[error("heap size {size} exceeds the tree cap {cap}")]
    HeapCapExceeded { size: u32, cap: u32 },
    #[error("game is not impartial")]
    NotImpartial,
    #[error("the zero game has no distinguishing witness")]
    ZeroGame,
    #[error("operator {0} has no nonzero-witness construction")]
    UnsupportedOperator(&'static str),
    #[error("witness construction failed to distinguish: {0}")]
    WitnessFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
