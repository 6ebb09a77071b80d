//! Scoring octal games.
//!
//! Digit `d_k` of a ruleset governs removing `k` beans from one heap: bit 0
//! allows leaving no heap, bit 1 leaving one nonempty heap, bit 2 leaving two
//! nonempty heaps. The mover collects `p_k` points for the removal. Heaps of
//! size zero vanish from positions.

mod gs;
mod period;

pub use gs::{gs_to_game, Heap, HeapTrees, GsSolver, RulesetId, DEFAULT_TREE_CAP};
pub use period::{
    conjecture_report, find_period, ConjectureReport, OperatorPeriod, PeriodReport,
};

use arrayvec::ArrayVec;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::score::Score;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OctalRuleset {
    digits: Vec<u8>,
    points: Vec<Score>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapMove {
    pub points: Score,
    /// Nonempty heaps left behind, smallest first.
    pub remainder: ArrayVec<u32, 2>,
}

impl OctalRuleset {
    pub fn new(digits: Vec<u8>, points: Vec<Score>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|d| **d > 7) {
            return Err(Error::DigitOutOfRange(char::from_digit(u32::from(*d), 10).unwrap_or('?')));
        }
        if digits.len() != points.len() {
            return Err(Error::PointCountMismatch {
                digits: digits.len(),
                points: points.len(),
            });
        }
        if digits.iter().all(|d| *d == 0) {
            return Err(Error::EmptyRuleset);
        }
        Ok(OctalRuleset { digits, points })
    }

    /// Points `p_i = i` where digit `i` is 1, 2 or 3, and 0 elsewhere.
    pub fn with_default_points(digits: Vec<u8>) -> Result<Self> {
        let points = digits
            .iter()
            .enumerate()
            .map(|(i, d)| {
                if (1..=3).contains(d) {
                    Score::integer(i as i64 + 1)
                } else {
                    Score::ZERO
                }
            })
            .collect();
        Self::new(digits, points)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn points(&self) -> &[Score] {
        &self.points
    }

    /// True when some digit allows leaving two heaps.
    pub fn splits(&self) -> bool {
        self.digits.iter().any(|d| d & 4 != 0)
    }

    /// `2k` for the largest `k` whose digit is neither 0 nor 1, if any.
    pub fn reference_period(&self) -> Option<usize> {
        self.digits
            .iter()
            .rposition(|d| *d > 1)
            .map(|i| 2 * (i + 1))
    }

    pub fn heap_moves(&self, n: u32) -> Vec<HeapMove> {
        let mut out = Vec::new();
        for (i, (&d, &p)) in self.digits.iter().zip(&self.points).enumerate() {
            let k = i as u32 + 1;
            if k > n {
                break;
            }
            let rest = n - k;
            if d & 1 != 0 && rest == 0 {
                out.push(HeapMove {
                    points: p,
                    remainder: ArrayVec::new(),
                });
            }
            if d & 2 != 0 && rest >= 1 {
                out.push(HeapMove {
                    points: p,
                    remainder: [rest].into_iter().collect(),
                });
            }
            if d & 4 != 0 {
                for a in 1..=rest / 2 {
                    out.push(HeapMove {
                        points: p,
                        remainder: [a, rest - a].into_iter().collect(),
                    });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for OctalRuleset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::notation::format_octal(self))
    }
}

impl std::str::FromStr for OctalRuleset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::notation::parse_octal(s)
    }
}

impl Serialize for OctalRuleset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(s: &str) -> OctalRuleset {
        s.parse().unwrap()
    }

    fn mv(p: i64, rem: &[u32]) -> HeapMove {
        HeapMove {
            points: Score::integer(p),
            remainder: rem.iter().copied().collect(),
        }
    }

    #[test]
    fn take_one_or_two() {
        assert_eq!(rules("0.33:1,2").heap_moves(2), vec![mv(1, &[1]), mv(2, &[])]);
        assert_eq!(rules("0.33:1,2").heap_moves(1), vec![mv(1, &[])]);
    }

    #[test]
    fn take_three_and_split() {
        let r = rules("0.007:0,0,1");
        assert_eq!(r.heap_moves(5), vec![mv(1, &[2]), mv(1, &[1, 1])]);
        assert_eq!(r.heap_moves(3), vec![mv(1, &[])]);
        assert!(r.heap_moves(1).is_empty());
        assert!(r.heap_moves(2).is_empty());
        assert_eq!(r.heap_moves(9).len(), 1 + 3);
    }

    #[test]
    fn bit_meanings() {
        // 4 alone: must leave exactly two heaps.
        let r = rules("0.4:5");
        assert!(r.heap_moves(1).is_empty());
        assert!(r.heap_moves(2).is_empty());
        assert_eq!(r.heap_moves(3), vec![mv(5, &[1, 1])]);
        // 1 alone: take the whole heap only.
        let r = rules("0.01:0,3");
        assert_eq!(r.heap_moves(2), vec![mv(3, &[])]);
        assert!(r.heap_moves(3).is_empty());
    }

    #[test]
    fn reference_periods() {
        assert_eq!(rules("0.33:1,2").reference_period(), Some(4));
        assert_eq!(rules("0.337").reference_period(), Some(6));
        assert_eq!(rules("0.1:1").reference_period(), None);
        assert_eq!(rules("0.3101").reference_period(), Some(2));
    }

    #[test]
    fn default_points() {
        assert_eq!(
            rules("0.1234").points(),
            &[1, 2, 3, 0].map(Score::integer)
        );
    }
}
