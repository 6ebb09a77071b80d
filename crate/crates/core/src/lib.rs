//! Scoring combinatorial games: construction, evaluation, compound
//! operators, structural experiments and scoring octal games.

pub mod error;
pub mod eval;
pub mod game;
pub mod lab;
pub mod notation;
pub mod octal;
pub mod ops;
pub mod score;
pub mod verify;

pub use error::{Error, Result};
pub use eval::{final_scores, outcome, FinalScores, Outcome};
pub use game::{make_game, number, GameId, Player};
pub use notation::{format_game, parse_game};
pub use ops::OperatorKind;
pub use score::Score;
