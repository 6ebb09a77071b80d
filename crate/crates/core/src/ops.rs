//! Composition operators.
//!
//! Each operator is available in two forms: [`Composer`] materializes the
//! product game tree, and [`SumSolver`] computes the final scores of a
//! composition directly by memoized search over component multisets (or
//! sequences, for the sequential join) without building the product.
//!
//! All compositions follow the long rule: play ends only when the player to
//! move has no legal move in the composite.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::FinalScores;
use crate::game::{self, node, GameId, Player};
use crate::score::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// Move in exactly one component.
    Disjunctive,
    /// Move in every component where the mover has an option.
    Conjunctive,
    /// Move in any nonempty set of components where the mover has options.
    Selective,
    /// Play the components strictly in order.
    Sequential,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::Disjunctive,
        OperatorKind::Conjunctive,
        OperatorKind::Selective,
        OperatorKind::Sequential,
    ];

    pub fn is_commutative(self) -> bool {
        self != OperatorKind::Sequential
    }

    pub fn short_name(self) -> &'static str {
        match self {
            OperatorKind::Disjunctive => "disj",
            OperatorKind::Conjunctive => "conj",
            OperatorKind::Selective => "sel",
            OperatorKind::Sequential => "seq",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Disjunctive => "disjunctive",
            OperatorKind::Conjunctive => "conjunctive",
            OperatorKind::Selective => "selective",
            OperatorKind::Sequential => "sequential",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "disj" | "disjunctive" | "+" => OperatorKind::Disjunctive,
            "conj" | "conjunctive" => OperatorKind::Conjunctive,
            "sel" | "selective" => OperatorKind::Selective,
            "seq" | "sequential" => OperatorKind::Sequential,
            _ => return Err(Error::UnknownOperator(s.to_string())),
        })
    }
}

/// How the conjunctive sum treats a component in which the mover has no
/// option.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ConjunctiveRule {
    /// The component is left untouched; the mover plays every other
    /// component that has an option.
    #[default]
    Available,
    /// `{G^L △ H^L | G^S+H^S | G^R △ H^R}` read literally: the mover has
    /// no move at all unless every component offers one.
    Literal,
}

/// Successor component lists for one move by `player`.
///
/// Commutative operators expect `comps` sorted by id; for the sequential
/// join the first component is the one in play.
fn successors(
    op: OperatorKind,
    rule: ConjunctiveRule,
    comps: &[GameId],
    player: Player,
) -> Vec<Vec<GameId>> {
    let mut out = Vec::new();
    match op {
        OperatorKind::Disjunctive => {
            for (i, c) in comps.iter().enumerate() {
                if i > 0 && comps[i - 1] == *c {
                    continue;
                }
                for o in c.options(player) {
                    let mut next = comps.to_vec();
                    next[i] = *o;
                    out.push(next);
                }
            }
        }
        OperatorKind::Sequential => {
            if let Some(first) = comps.first() {
                for o in first.options(player) {
                    let mut next = comps.to_vec();
                    next[0] = *o;
                    out.push(next);
                }
            }
        }
        OperatorKind::Conjunctive => {
            let stuck = comps.iter().any(|c| c.options(player).is_empty());
            if rule == ConjunctiveRule::Literal && stuck {
                return out;
            }
            let choices: Vec<Vec<Option<GameId>>> = comps
                .iter()
                .map(|c| {
                    let opts = c.options(player);
                    if opts.is_empty() {
                        vec![None]
                    } else {
                        opts.iter().map(|o| Some(*o)).collect()
                    }
                })
                .collect();
            product(comps, &choices, &mut out);
        }
        OperatorKind::Selective => {
            let choices: Vec<Vec<Option<GameId>>> = comps
                .iter()
                .map(|c| {
                    std::iter::once(None)
                        .chain(c.options(player).iter().map(|o| Some(*o)))
                        .collect()
                })
                .collect();
            product(comps, &choices, &mut out);
        }
    }
    out
}

/// Every combination of per-component choices in which at least one
/// component moves. `None` keeps the component as it is.
fn product(comps: &[GameId], choices: &[Vec<Option<GameId>>], out: &mut Vec<Vec<GameId>>) {
    fn go(
        k: usize,
        moved: bool,
        comps: &[GameId],
        choices: &[Vec<Option<GameId>>],
        cur: &mut Vec<GameId>,
        out: &mut Vec<Vec<GameId>>,
    ) {
        if k == comps.len() {
            if moved {
                out.push(cur.clone());
            }
            return;
        }
        for ch in &choices[k] {
            cur.push(ch.unwrap_or(comps[k]));
            go(k + 1, moved || ch.is_some(), comps, choices, cur, out);
            cur.pop();
        }
    }
    go(0, false, comps, choices, &mut Vec::with_capacity(comps.len()), out);
}

fn distinct_sorted(lists: Vec<Vec<GameId>>) -> Vec<Vec<GameId>> {
    let mut seen = HashSet::new();
    lists
        .into_iter()
        .map(|mut l| {
            l.sort_unstable();
            l
        })
        .filter(|l| seen.insert(l.clone()))
        .collect()
}

/// Builds product game trees, reusing already composed sub-positions.
#[derive(Default)]
pub struct Composer {
    rule: ConjunctiveRule,
    commutative: HashMap<(OperatorKind, Vec<GameId>), GameId>,
    joins: HashMap<(GameId, GameId), GameId>,
}

impl Composer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rule(rule: ConjunctiveRule) -> Self {
        Composer {
            rule,
            ..Self::default()
        }
    }

    pub fn sum(&mut self, op: OperatorKind, comps: &[GameId]) -> Result<GameId> {
        if comps.is_empty() {
            return Err(Error::NoComponents);
        }
        game::validate(comps)?;
        Ok(match op {
            OperatorKind::Sequential => {
                let (last, init) = comps.split_last().expect("nonempty");
                init.iter().rev().fold(*last, |acc, g| self.join(*g, acc))
            }
            _ => {
                let mut sorted = comps.to_vec();
                sorted.sort_unstable();
                self.commutative(op, sorted)
            }
        })
    }

    fn commutative(&mut self, op: OperatorKind, comps: Vec<GameId>) -> GameId {
        if comps.len() == 1 {
            return comps[0];
        }
        let key = (op, comps);
        if let Some(g) = self.commutative.get(&key) {
            return *g;
        }
        let comps = &key.1;
        let score: Score = comps.iter().map(|c| c.score()).sum();
        let mut side = |player| -> Vec<GameId> {
            distinct_sorted(successors(op, self.rule, comps, player))
                .into_iter()
                .map(|next| self.commutative(op, next))
                .collect()
        };
        let left = side(Player::Left);
        let right = side(Player::Right);
        let g = node(left, score, right);
        self.commutative.insert(key, g);
        g
    }

    /// `G ▷ H`. A finished first component hands play to `H`, offset by its
    /// score.
    fn join(&mut self, g: GameId, h: GameId) -> GameId {
        if g.is_leaf() {
            return game::shift(h, g.score());
        }
        if let Some(r) = self.joins.get(&(g, h)) {
            return *r;
        }
        let left = g.left().iter().map(|x| self.join(*x, h)).collect();
        let right = g.right().iter().map(|x| self.join(*x, h)).collect();
        let r = node(left, g.score() + h.score(), right);
        self.joins.insert((g, h), r);
        r
    }
}

/// Materializes the composition of `comps` under `op`.
pub fn sum(op: OperatorKind, comps: &[GameId]) -> Result<GameId> {
    Composer::new().sum(op, comps)
}

pub fn sum_with_rule(op: OperatorKind, comps: &[GameId], rule: ConjunctiveRule) -> Result<GameId> {
    Composer::with_rule(rule).sum(op, comps)
}

/// Final scores of compositions under one operator, by memoized search.
///
/// Positions are keyed by their non-leaf components; leaf components have no
/// moves under any operator and are folded into a score offset.
pub struct SumSolver {
    op: OperatorKind,
    memo: HashMap<Vec<GameId>, FinalScores>,
}

impl SumSolver {
    pub fn new(op: OperatorKind) -> Self {
        SumSolver {
            op,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, comps: &[GameId]) -> Result<FinalScores> {
        if comps.is_empty() {
            return Err(Error::NoComponents);
        }
        game::validate(comps)?;
        Ok(self.position(comps.to_vec()))
    }

    fn position(&mut self, comps: Vec<GameId>) -> FinalScores {
        let mut offset = Score::ZERO;
        let mut live: Vec<GameId> = comps
            .into_iter()
            .filter(|c| {
                if c.is_leaf() {
                    offset += c.score();
                    false
                } else {
                    true
                }
            })
            .collect();
        if self.op.is_commutative() {
            live.sort_unstable();
        }
        self.solve(live).shifted(offset)
    }

    fn solve(&mut self, comps: Vec<GameId>) -> FinalScores {
        match comps.len() {
            0 => return FinalScores::leaf(Score::ZERO),
            1 => return comps[0].finals(),
            _ => {}
        }
        if let Some(f) = self.memo.get(&comps) {
            return *f;
        }
        let root: Score = comps.iter().map(|c| c.score()).sum();
        let mut best = |player: Player| -> Score {
            let nexts = successors(self.op, ConjunctiveRule::Available, &comps, player);
            let vals = nexts
                .into_iter()
                .map(|n| self.position(n).first(player.opponent()));
            match player {
                Player::Left => vals.max(),
                Player::Right => vals.min(),
            }
            .unwrap_or(root)
        };
        let left_first = best(Player::Left);
        let right_first = best(Player::Right);
        let f = FinalScores::new(left_first, right_first);
        self.memo.insert(comps, f);
        f
    }
}

/// Final scores of the composition of `comps` under `op`, computed without
/// building the product tree.
pub fn eval_sum(op: OperatorKind, comps: &[GameId]) -> Result<FinalScores> {
    SumSolver::new(op).eval(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::final_scores;
    use crate::game::number;
    use crate::notation::parse_game;

    fn g(s: &str) -> GameId {
        parse_game(s).unwrap()
    }

    fn fs(a: i64, b: i64) -> FinalScores {
        FinalScores::new(Score::integer(a), Score::integer(b))
    }

    // (a..f) = (5,-2,3,0,1,-4), (g..k) = (2,7,-1,4,6)
    const FREEDOM_CONJ_G: &str = "{{.|-2|{.|3|{1|0|-4}}}|5|.}";
    const FREEDOM_CONJ_H: &str = "{.|2|{{{6|4|.}|-1|.}|7|.}}";
    // (a..g) = (1,-3,2,0,-5,4,-6)
    const FREEDOM_SEL_G: &str = "{{2|-3|.}|1|.}";
    const FREEDOM_SEL_H: &str = "{.|0|{.|-5|{.|4|-6}}}";

    #[test]
    fn conjunctive_freedom_example() {
        let s = sum(OperatorKind::Conjunctive, &[g(FREEDOM_CONJ_G), g(FREEDOM_CONJ_H)]).unwrap();
        // e + j = 1 + 4, e + k = 1 + 6
        assert_eq!(final_scores(s), fs(5, 7));
        assert_eq!(
            eval_sum(OperatorKind::Conjunctive, &[g(FREEDOM_CONJ_G), g(FREEDOM_CONJ_H)]).unwrap(),
            fs(5, 7)
        );
    }

    #[test]
    fn literal_conjunctive_breaks_freedom_example() {
        let s = sum_with_rule(
            OperatorKind::Conjunctive,
            &[g(FREEDOM_CONJ_G), g(FREEDOM_CONJ_H)],
            ConjunctiveRule::Literal,
        )
        .unwrap();
        assert_eq!(final_scores(s), fs(7, 7));
    }

    #[test]
    fn selective_freedom_example() {
        let s = sum(OperatorKind::Selective, &[g(FREEDOM_SEL_G), g(FREEDOM_SEL_H)]).unwrap();
        // c + f = 2 + 4, c + g = 2 - 6
        assert_eq!(final_scores(s), fs(6, -4));
        assert_eq!(
            eval_sum(OperatorKind::Selective, &[g(FREEDOM_SEL_G), g(FREEDOM_SEL_H)]).unwrap(),
            fs(6, -4)
        );
    }

    #[test]
    fn sequential_cases() {
        let one = number(Score::integer(1));
        assert_eq!(sum(OperatorKind::Sequential, &[one, one]).unwrap(), number(Score::integer(2)));
        // G = {{c|b|.}|a|.} with (a,b,c) = (1,-3,2), H = {e|d|f} = {7|4|-8}
        let s = sum(OperatorKind::Sequential, &[g("{{2|-3|.}|1|.}"), g("{7|4|-8}")]).unwrap();
        assert_eq!(final_scores(s), fs(-3 + 4, 1 + 4));
    }

    #[test]
    fn leaves_only() {
        let comps = [number(Score::integer(2)), number(Score::integer(-2))];
        for op in OperatorKind::ALL {
            assert_eq!(eval_sum(op, &comps).unwrap(), fs(0, 0));
            assert_eq!(sum(op, &comps).unwrap(), number(Score::ZERO));
        }
    }

    #[test]
    fn root_score_is_additive() {
        let comps = [g("{4|3|2}"), g("{.|-1|{0|1/2|.}}"), g("7")];
        for op in OperatorKind::ALL {
            assert_eq!(sum(op, &comps).unwrap().score(), Score::integer(9));
        }
    }

    #[test]
    fn disjunctive_small() {
        // {1|0|-1} + {1|0|-1}: two moves, one each, total 0.
        let x = g("{1|0|-1}");
        assert_eq!(eval_sum(OperatorKind::Disjunctive, &[x, x]).unwrap(), fs(0, 0));
        // Conjunctive: both move at once, first mover takes both.
        assert_eq!(eval_sum(OperatorKind::Conjunctive, &[x, x]).unwrap(), fs(2, -2));
    }

    #[test]
    fn empty_components_rejected() {
        assert_eq!(sum(OperatorKind::Selective, &[]), Err(Error::NoComponents));
        assert_eq!(eval_sum(OperatorKind::Selective, &[]), Err(Error::NoComponents));
    }

    #[test]
    fn operator_names() {
        for op in OperatorKind::ALL {
            assert_eq!(op.short_name().parse::<OperatorKind>().unwrap(), op);
            assert_eq!(op.to_string().parse::<OperatorKind>().unwrap(), op);
        }
        assert!("ordinal".parse::<OperatorKind>().is_err());
    }
}
