use std::collections::HashMap;

use serde::Serialize;

use super::{HeapMove, OctalRuleset};
use crate::error::{Error, Result};
use crate::game::{self, node, GameId};
use crate::ops::{Composer, OperatorKind};
use crate::score::Score;

/// Default largest heap that [`gs_to_game`] will expand into a tree.
pub const DEFAULT_TREE_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RulesetId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Heap {
    pub rules: RulesetId,
    pub size: u32,
}

impl Heap {
    pub fn new(rules: RulesetId, size: u32) -> Self {
        Heap { rules, size }
    }
}

/// Memoized scoring Sprague-Grundy values.
///
/// A position is a list of heaps, each played under one of the registered
/// rulesets. It is a multiset for the commutative operators and an ordered
/// sequence for the sequential join. The value is the best score margin the
/// player to move can secure; a position with no legal move is worth 0.
#[derive(Default)]
pub struct GsSolver {
    rules: Vec<OctalRuleset>,
    moves: Vec<Vec<Vec<HeapMove>>>,
    memo: HashMap<(OperatorKind, Vec<Heap>), Score>,
}

impl GsSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Solver with a single ruleset, registered as `RulesetId(0)`.
    pub fn single(rules: OctalRuleset) -> Self {
        let mut s = Self::new();
        s.add_ruleset(rules);
        s
    }

    pub fn add_ruleset(&mut self, rules: OctalRuleset) -> RulesetId {
        if let Some(i) = self.rules.iter().position(|r| *r == rules) {
            return RulesetId(i);
        }
        self.rules.push(rules);
        self.moves.push(Vec::new());
        RulesetId(self.rules.len() - 1)
    }

    pub fn ruleset(&self, id: RulesetId) -> &OctalRuleset {
        &self.rules[id.0]
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn ensure_moves(&mut self, heaps: &[Heap]) {
        for h in heaps {
            let table = &mut self.moves[h.rules.0];
            while table.len() <= h.size as usize {
                let n = table.len() as u32;
                table.push(self.rules[h.rules.0].heap_moves(n));
            }
        }
    }

    fn heap_moves(&self, h: Heap) -> &[HeapMove] {
        &self.moves[h.rules.0][h.size as usize]
    }

    fn is_live(&self, h: Heap) -> bool {
        h.size > 0 && !self.heap_moves(h).is_empty()
    }

    /// Drops empty and dead heaps; sorts for the commutative operators.
    fn normalize(&self, op: OperatorKind, mut heaps: Vec<Heap>) -> Vec<Heap> {
        heaps.retain(|h| self.is_live(*h));
        if op.is_commutative() {
            heaps.sort_unstable();
        }
        heaps
    }

    pub fn gs(&mut self, op: OperatorKind, heaps: &[Heap]) -> Result<Score> {
        if let Some(h) = heaps.iter().find(|h| h.rules.0 >= self.rules.len()) {
            return Err(Error::BadRuleset(format!("unregistered ruleset {}", h.rules.0)));
        }
        if op == OperatorKind::Sequential
            && heaps.iter().any(|h| self.rules[h.rules.0].splits())
        {
            return Err(Error::SplitInSequential);
        }
        self.ensure_moves(heaps);
        let start = self.normalize(op, heaps.to_vec());
        Ok(self.value(op, start))
    }

    /// Values of `{n} ∪ tail` for `n = 0..=n_max` (for the sequential join
    /// the new heap is played first).
    pub fn gs_table(
        &mut self,
        op: OperatorKind,
        rules: RulesetId,
        n_max: u32,
        tail: &[Heap],
    ) -> Result<Vec<Score>> {
        (0..=n_max)
            .map(|n| {
                let mut heaps = vec![Heap::new(rules, n)];
                heaps.extend_from_slice(tail);
                self.gs(op, &heaps)
            })
            .collect()
    }

    fn value(&mut self, op: OperatorKind, heaps: Vec<Heap>) -> Score {
        if heaps.is_empty() {
            return Score::ZERO;
        }
        let key = (op, heaps);
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let heaps = &key.1;
        let best = match op {
            OperatorKind::Disjunctive => self.best_disjunctive(heaps),
            OperatorKind::Sequential => self.best_sequential(heaps),
            OperatorKind::Conjunctive | OperatorKind::Selective => {
                self.best_combined(op, heaps)
            }
        };
        let v = best.unwrap_or(Score::ZERO);
        self.memo.insert(key, v);
        v
    }

    fn after_move(&self, op: OperatorKind, mut rest: Vec<Heap>, from: Heap, m: &HeapMove) -> Vec<Heap> {
        rest.extend(m.remainder.iter().map(|s| Heap::new(from.rules, *s)));
        self.normalize(op, rest)
    }

    fn best_disjunctive(&mut self, heaps: &[Heap]) -> Option<Score> {
        let op = OperatorKind::Disjunctive;
        let mut best: Option<Score> = None;
        for i in 0..heaps.len() {
            if i > 0 && heaps[i] == heaps[i - 1] {
                continue;
            }
            let h = heaps[i];
            for m in self.heap_moves(h).to_vec() {
                let mut rest = heaps.to_vec();
                rest.remove(i);
                let next = self.after_move(op, rest, h, &m);
                let v = m.points - self.value(op, next);
                best = Some(best.map_or(v, |b| b.max(v)));
            }
        }
        best
    }

    fn best_sequential(&mut self, heaps: &[Heap]) -> Option<Score> {
        let op = OperatorKind::Sequential;
        let h = heaps[0];
        let mut best: Option<Score> = None;
        for m in self.heap_moves(h).to_vec() {
            let mut next: Vec<Heap> = m.remainder.iter().map(|s| Heap::new(h.rules, *s)).collect();
            next.extend_from_slice(&heaps[1..]);
            let next = self.normalize(op, next);
            let v = m.points - self.value(op, next);
            best = Some(best.map_or(v, |b| b.max(v)));
        }
        best
    }

    /// Conjunctive: every heap moves. Selective: a nonempty subset moves.
    /// Equal heaps are grouped and enumerated as multisets of moves.
    fn best_combined(&mut self, op: OperatorKind, heaps: &[Heap]) -> Option<Score> {
        let mut groups: Vec<(Heap, usize)> = Vec::new();
        for h in heaps {
            match groups.last_mut() {
                Some((g, c)) if g == h => *c += 1,
                _ => groups.push((*h, 1)),
            }
        }
        let allow_stay = op == OperatorKind::Selective;
        let per_group: Vec<Vec<GroupChoice>> = groups
            .iter()
            .map(|(h, c)| group_choices(*h, *c, self.heap_moves(*h), allow_stay))
            .collect();

        let mut best: Option<Score> = None;
        let mut stack: Vec<&GroupChoice> = Vec::with_capacity(per_group.len());
        self.combine(op, &per_group, &mut stack, &mut best);
        best
    }

    fn combine<'a>(
        &mut self,
        op: OperatorKind,
        per_group: &'a [Vec<GroupChoice>],
        stack: &mut Vec<&'a GroupChoice>,
        best: &mut Option<Score>,
    ) {
        let k = stack.len();
        if k == per_group.len() {
            if !stack.iter().any(|c| c.moved) {
                return;
            }
            let points: Score = stack.iter().map(|c| c.points).sum();
            let next: Vec<Heap> = stack.iter().flat_map(|c| c.heaps.iter().copied()).collect();
            let next = self.normalize(op, next);
            let v = points - self.value(op, next);
            *best = Some(best.map_or(v, |b| b.max(v)));
            return;
        }
        for choice in &per_group[k] {
            stack.push(choice);
            self.combine(op, per_group, stack, best);
            stack.pop();
        }
    }
}

struct GroupChoice {
    points: Score,
    heaps: Vec<Heap>,
    moved: bool,
}

/// All ways for `count` copies of heap `h` to act at once, as multisets over
/// the heap's moves (plus "stay" when `allow_stay`).
fn group_choices(h: Heap, count: usize, moves: &[HeapMove], allow_stay: bool) -> Vec<GroupChoice> {
    let kinds = moves.len() + usize::from(allow_stay);
    let mut out = Vec::new();
    let mut counts = vec![0usize; kinds];
    fn go(
        j: usize,
        left: usize,
        counts: &mut Vec<usize>,
        h: Heap,
        moves: &[HeapMove],
        allow_stay: bool,
        out: &mut Vec<GroupChoice>,
    ) {
        if j + 1 == counts.len() {
            counts[j] = left;
            let mut points = Score::ZERO;
            let mut heaps = Vec::new();
            let mut moved = false;
            for (idx, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if allow_stay && idx == 0 {
                    heaps.extend(std::iter::repeat_n(h, c));
                    continue;
                }
                let m = &moves[idx - usize::from(allow_stay)];
                moved = true;
                points += m.points.scale(c as i64);
                for _ in 0..c {
                    heaps.extend(m.remainder.iter().map(|s| Heap::new(h.rules, *s)));
                }
            }
            out.push(GroupChoice { points, heaps, moved });
            return;
        }
        for c in 0..=left {
            counts[j] = c;
            go(j + 1, left - c, counts, h, moves, allow_stay, out);
        }
    }
    if kinds > 0 {
        go(0, count, &mut counts, h, moves, allow_stay, &mut out);
    }
    out
}

/// Builds explicit impartial game trees for single heaps, one ruleset and
/// operator at a time. A move that splits a heap leads to the composition
/// of the two parts under the builder's operator.
pub struct HeapTrees<'a> {
    rules: &'a OctalRuleset,
    op: OperatorKind,
    cap: u32,
    composer: Composer,
    memo: HashMap<u32, GameId>,
}

impl<'a> HeapTrees<'a> {
    pub fn new(rules: &'a OctalRuleset, op: OperatorKind) -> Self {
        Self::with_cap(rules, op, DEFAULT_TREE_CAP)
    }

    pub fn with_cap(rules: &'a OctalRuleset, op: OperatorKind, cap: u32) -> Self {
        HeapTrees {
            rules,
            op,
            cap,
            composer: Composer::new(),
            memo: HashMap::new(),
        }
    }

    pub fn tree(&mut self, n: u32) -> Result<GameId> {
        if n > self.cap {
            return Err(Error::HeapCapExceeded { size: n, cap: self.cap });
        }
        if self.op == OperatorKind::Sequential && self.rules.splits() {
            return Err(Error::SplitInSequential);
        }
        if n == 0 {
            return Ok(game::number(Score::ZERO));
        }
        if let Some(g) = self.memo.get(&n) {
            return Ok(*g);
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for m in self.rules.heap_moves(n) {
            let parts = m
                .remainder
                .iter()
                .map(|s| self.tree(*s))
                .collect::<Result<Vec<_>>>()?;
            let after = match parts.len() {
                0 => game::number(Score::ZERO),
                1 => parts[0],
                _ => self.composer.sum(self.op, &parts)?,
            };
            left.push(game::shift(after, m.points));
            right.push(game::shift(after, -m.points));
        }
        let g = node(left, Score::ZERO, right);
        self.memo.insert(n, g);
        Ok(g)
    }

    /// Materialized composition of the trees of `sizes` under the builder's
    /// operator, in the given order.
    pub fn position(&mut self, sizes: &[u32]) -> Result<GameId> {
        let trees = sizes
            .iter()
            .map(|s| self.tree(*s))
            .collect::<Result<Vec<_>>>()?;
        if trees.is_empty() {
            return Ok(game::number(Score::ZERO));
        }
        self.composer.sum(self.op, &trees)
    }
}

/// Game tree of a single heap of size `n`, with splits composed under `op`
/// and the default size cap.
pub fn gs_to_game(rules: &OctalRuleset, n: u32, op: OperatorKind) -> Result<GameId> {
    HeapTrees::new(rules, op).tree(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::final_scores;
    use crate::lab::is_impartial;
    use crate::notation::parse_game;

    fn rules(s: &str) -> OctalRuleset {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Score> {
        v.iter().map(|x| Score::integer(*x)).collect()
    }

    /// Plain recursion on single heaps of a non-splitting ruleset, written
    /// directly from the defining maximum.
    fn single_heap_oracle(r: &OctalRuleset, n_max: u32) -> Vec<Score> {
        let mut v = vec![Score::ZERO; n_max as usize + 1];
        for n in 1..=n_max {
            let mut best: Option<Score> = None;
            for (i, (&d, &p)) in r.digits().iter().zip(r.points()).enumerate() {
                let k = i as u32 + 1;
                if k > n {
                    break;
                }
                let take_all = d & 1 != 0 && k == n;
                let leave_one = d & 2 != 0 && k < n;
                if take_all || leave_one {
                    let x = p - v[(n - k) as usize];
                    best = Some(best.map_or(x, |b| b.max(x)));
                }
            }
            v[n as usize] = best.unwrap_or(Score::ZERO);
        }
        v
    }

    #[test]
    fn disjunctive_single_heap_table() {
        let r = rules("0.33:1,2");
        let mut s = GsSolver::single(r.clone());
        let t = s.gs_table(OperatorKind::Disjunctive, RulesetId(0), 8, &[]).unwrap();
        assert_eq!(t, ints(&[0, 1, 2, 1, 0, 1, 2, 1, 0]));
        assert_eq!(t, single_heap_oracle(&r, 8));
    }

    #[test]
    fn single_heap_is_operator_independent_without_splits() {
        for text in ["0.33:1,2", "0.123", "0.3102:2,-1,0,3"] {
            let r = rules(text);
            let mut s = GsSolver::single(r.clone());
            let oracle = single_heap_oracle(&r, 30);
            for op in OperatorKind::ALL {
                assert_eq!(s.gs_table(op, RulesetId(0), 30, &[]).unwrap(), oracle, "{text} {op}");
            }
        }
    }

    #[test]
    fn conjunctive_pair_example() {
        let mut s = GsSolver::single(rules("0.33:1,2"));
        let h = |n| Heap::new(RulesetId(0), n);
        assert_eq!(s.gs(OperatorKind::Conjunctive, &[h(2), h(3)]).unwrap(), Score::integer(3));
    }

    #[test]
    fn sequential_pair_example() {
        let mut s = GsSolver::single(rules("0.33:1,2"));
        let h = |n| Heap::new(RulesetId(0), n);
        assert_eq!(s.gs(OperatorKind::Sequential, &[h(1), h(3)]).unwrap(), Score::ZERO);
        assert_eq!(s.gs(OperatorKind::Sequential, &[h(2), h(3)]).unwrap(), Score::integer(1));
    }

    #[test]
    fn sequential_rejects_splitting() {
        let mut s = GsSolver::single(rules("0.007:0,0,1"));
        assert_eq!(
            s.gs(OperatorKind::Sequential, &[Heap::new(RulesetId(0), 5)]),
            Err(Error::SplitInSequential)
        );
    }

    #[test]
    fn dead_heaps_are_worth_nothing() {
        let mut s = GsSolver::single(rules("0.007:0,0,1"));
        let h = |n| Heap::new(RulesetId(0), n);
        for op in [OperatorKind::Disjunctive, OperatorKind::Conjunctive, OperatorKind::Selective] {
            assert_eq!(s.gs(op, &[h(1)]).unwrap(), Score::ZERO);
            assert_eq!(s.gs(op, &[h(2), h(1)]).unwrap(), Score::ZERO);
            assert_eq!(s.gs(op, &[h(3)]).unwrap(), Score::integer(1));
            assert_eq!(s.gs(op, &[h(3), h(2)]).unwrap(), Score::integer(1));
        }
    }

    #[test]
    fn heap_tree_shapes() {
        let r = rules("0.33:1,2");
        assert_eq!(gs_to_game(&r, 0, OperatorKind::Disjunctive).unwrap(), parse_game("0").unwrap());
        assert_eq!(gs_to_game(&r, 1, OperatorKind::Disjunctive).unwrap(), parse_game("{1|0|-1}").unwrap());
        let t3 = gs_to_game(&r, 3, OperatorKind::Disjunctive).unwrap();
        assert!(is_impartial(t3));
        assert_eq!(final_scores(t3).left_first, Score::integer(1));
        assert_eq!(
            gs_to_game(&r, 13, OperatorKind::Disjunctive),
            Err(Error::HeapCapExceeded { size: 13, cap: 12 })
        );
    }

    #[test]
    fn heap_trees_match_values_for_each_operator() {
        for text in ["0.33:1,2", "0.007:0,0,1", "0.16:2,1", "0.4:1"] {
            let r = rules(text);
            let mut s = GsSolver::single(r.clone());
            for op in OperatorKind::ALL {
                if op == OperatorKind::Sequential && r.splits() {
                    continue;
                }
                let mut trees = HeapTrees::new(&r, op);
                for n in 0..=10 {
                    let t = trees.tree(n).unwrap();
                    assert!(is_impartial(t));
                    let v = s.gs(op, &[Heap::new(RulesetId(0), n)]).unwrap();
                    assert_eq!(final_scores(t).left_first, v, "{text} {op} n={n}");
                }
            }
        }
    }

    #[test]
    fn mixed_rulesets() {
        let mut s = GsSolver::new();
        let a = s.add_ruleset(rules("0.33:1,2"));
        let b = s.add_ruleset(rules("0.007:0,0,1"));
        assert_eq!(s.add_ruleset(rules("0.33:1,2")), a);
        let ra = rules("0.33:1,2");
        let rb = rules("0.007:0,0,1");
        for op in [OperatorKind::Disjunctive, OperatorKind::Conjunctive, OperatorKind::Selective] {
            let mut ta = HeapTrees::new(&ra, op);
            let mut tb = HeapTrees::new(&rb, op);
            for (x, y) in [(3, 5), (4, 7), (2, 9)] {
                let v = s.gs(op, &[Heap::new(a, x), Heap::new(b, y)]).unwrap();
                let g = crate::ops::sum(op, &[ta.tree(x).unwrap(), tb.tree(y).unwrap()]).unwrap();
                assert_eq!(final_scores(g).left_first, v, "{op} {x} {y}");
            }
        }
    }
}
