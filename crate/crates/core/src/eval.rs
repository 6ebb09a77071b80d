//! Optimal-play final scores and outcome classes.
//!
//! Left maximizes and Right minimizes the `L - R` score; play ends as soon as
//! the player to move has no option, leaving the current node score as the
//! final score. Final scores of every interned node are fixed when the node
//! is created, so [`final_scores`] is a lookup.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::game::{GameId, Player};
use crate::score::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinalScores {
    /// Final score when Left moves first.
    #[serde(rename = "SL")]
    pub left_first: Score,
    /// Final score when Right moves first.
    #[serde(rename = "SR")]
    pub right_first: Score,
}

impl FinalScores {
    pub fn new(left_first: Score, right_first: Score) -> Self {
        FinalScores {
            left_first,
            right_first,
        }
    }

    pub fn leaf(score: Score) -> Self {
        FinalScores::new(score, score)
    }

    pub(crate) fn from_children(score: Score, left: &[GameId], right: &[GameId]) -> Self {
        let left_first = left
            .iter()
            .map(|g| g.finals().right_first)
            .max()
            .unwrap_or(score);
        let right_first = right
            .iter()
            .map(|g| g.finals().left_first)
            .min()
            .unwrap_or(score);
        FinalScores::new(left_first, right_first)
    }

    pub fn first(&self, mover: Player) -> Score {
        match mover {
            Player::Left => self.left_first,
            Player::Right => self.right_first,
        }
    }

    pub fn shifted(&self, c: Score) -> Self {
        FinalScores::new(self.left_first + c, self.right_first + c)
    }

    pub fn outcome(&self) -> Outcome {
        Outcome::from_signs(self.left_first.sign(), self.right_first.sign())
    }

    pub fn in_set(&self, set: SignSet) -> bool {
        use Ordering::*;
        match set {
            SignSet::LeftPositive => self.left_first.sign() == Greater,
            SignSet::LeftNegative => self.left_first.sign() == Less,
            SignSet::LeftZero => self.left_first.sign() == Equal,
            SignSet::RightPositive => self.right_first.sign() == Greater,
            SignSet::RightNegative => self.right_first.sign() == Less,
            SignSet::RightZero => self.right_first.sign() == Equal,
        }
    }
}

impl std::ops::Add for FinalScores {
    type Output = FinalScores;
    fn add(self, rhs: FinalScores) -> FinalScores {
        FinalScores::new(
            self.left_first + rhs.left_first,
            self.right_first + rhs.right_first,
        )
    }
}

/// The six sign sets on final scores (`L_>`, `L_<`, `L_=`, `R_>`, `R_<`, `R_=`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignSet {
    LeftPositive,
    LeftNegative,
    LeftZero,
    RightPositive,
    RightNegative,
    RightZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    /// Left wins whoever starts (ties allowed on one side).
    L,
    R,
    /// First player wins.
    N,
    /// Second player wins.
    P,
    Tie,
}

impl Outcome {
    pub fn from_signs(left_first: Ordering, right_first: Ordering) -> Outcome {
        use Ordering::*;
        match (left_first, right_first) {
            (Greater, Greater) | (Greater, Equal) | (Equal, Greater) => Outcome::L,
            (Less, Less) | (Less, Equal) | (Equal, Less) => Outcome::R,
            (Greater, Less) => Outcome::N,
            (Less, Greater) => Outcome::P,
            (Equal, Equal) => Outcome::Tie,
        }
    }

    /// Class of `-G` given the class of `G`.
    pub fn mirrored(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::Tie => "Tie",
        })
    }
}

pub fn final_scores(g: GameId) -> FinalScores {
    g.finals()
}

pub fn outcome(g: GameId) -> Outcome {
    g.finals().outcome()
}

/// One optimal line of play from `g` with `mover` to start. Among equally
/// good options the first in canonical order is taken.
pub fn principal_line(g: GameId, mover: Player) -> Vec<GameId> {
    let mut line = vec![g];
    let mut cur = g;
    let mut who = mover;
    loop {
        let target = cur.finals().first(who);
        let next = cur
            .options(who)
            .iter()
            .copied()
            .find(|o| o.finals().first(who.opponent()) == target);
        match next {
            Some(n) => {
                line.push(n);
                cur = n;
                who = who.opponent();
            }
            None => return line,
        }
    }
}
