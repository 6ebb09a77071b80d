//! Impartiality, identity and inverse experiments, and bounded searches for
//! contexts that tell two games apart.
//!
//! Two relations are involved. `≈` (same outcome class) is checked exactly.
//! Contextual equality is only ever approximated: a search that finds no
//! distinguishing context within its bounds says nothing beyond those
//! bounds.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::eval::{outcome, Outcome};
use crate::game::{self, negate, node, number, reverse, shift, GameId};
use crate::notation::parse_game;
use crate::ops::{OperatorKind, SumSolver};
use crate::score::Score;

/// Sampling parameters for random games.
#[derive(Clone, Debug, PartialEq)]
pub struct ImpartialParams {
    pub max_depth: u32,
    pub max_branching: usize,
    /// Root scores and per-move score increments are drawn from here.
    pub palette: Vec<Score>,
    pub leaf_probability: f64,
    pub seed: u64,
}

impl Default for ImpartialParams {
    fn default() -> Self {
        ImpartialParams {
            max_depth: 3,
            max_branching: 2,
            palette: [-2, -1, 0, 1, 2].map(Score::integer).to_vec(),
            leaf_probability: 0.25,
            seed: 0,
        }
    }
}

fn serialize_game<S: Serializer>(g: &GameId, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

/// The identity game `{{0|0|0}|0|{0|0|0}}`.
pub fn identity_game() -> GameId {
    parse_game("{{0|0|0}|0|{0|0|0}}").expect("valid literal")
}

/// Reflects `g` through the score `s`: `s + -(g - s)`.
pub fn mirror(g: GameId, s: Score) -> GameId {
    shift(negate(shift(g, -s)), s)
}

/// Stateful random game source; reproducible from its seed.
pub struct GameSampler {
    params: ImpartialParams,
    rng: ChaCha8Rng,
}

impl GameSampler {
    pub fn new(params: ImpartialParams) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(params.seed);
        GameSampler { params, rng }
    }

    fn pick(&mut self) -> Score {
        *self
            .params
            .palette
            .choose(&mut self.rng)
            .unwrap_or(&Score::ZERO)
    }

    fn stop(&mut self, depth: u32) -> bool {
        depth == 0 || self.rng.gen_bool(self.params.leaf_probability.clamp(0.0, 1.0))
    }

    /// Random impartial game. Each Left option is built recursively around
    /// a score offset from the palette and paired with its mirror image as
    /// a Right option.
    pub fn impartial(&mut self) -> GameId {
        let s = self.pick();
        self.impartial_at(self.params.max_depth, s)
    }

    fn impartial_at(&mut self, depth: u32, s: Score) -> GameId {
        if self.stop(depth) {
            return number(s);
        }
        let k = self.rng.gen_range(1..=self.params.max_branching.max(1));
        let mut left = Vec::with_capacity(k);
        let mut right = Vec::with_capacity(k);
        for _ in 0..k {
            let step = self.pick();
            let child = self.impartial_at(depth - 1, s + step);
            right.push(mirror(child, s));
            left.push(child);
        }
        node(left, s, right)
    }

    /// Random game with independent Left and Right option sets (possibly
    /// empty on either side) and node scores drawn from the palette.
    pub fn general(&mut self) -> GameId {
        self.general_at(self.params.max_depth)
    }

    fn general_at(&mut self, depth: u32) -> GameId {
        let s = self.pick();
        if self.stop(depth) {
            return number(s);
        }
        let b = self.params.max_branching;
        let nl = self.rng.gen_range(0..=b);
        let nr = self.rng.gen_range(0..=b);
        let left = (0..nl).map(|_| self.general_at(depth - 1)).collect();
        let right = (0..nr).map(|_| self.general_at(depth - 1)).collect();
        node(left, s, right)
    }
}

pub fn random_impartial(params: &ImpartialParams) -> GameId {
    GameSampler::new(params.clone()).impartial()
}

/// Tree-identity test for impartiality, applied at every node: a node has
/// Left options exactly when it has Right options, and its Left options are
/// precisely the mirror images (through the node score) of its Right
/// options. This accepts only impartial games but may reject games that are
/// impartial only up to game equality.
pub fn is_impartial(g: GameId) -> bool {
    fn go(g: GameId, memo: &mut HashMap<GameId, bool>) -> bool {
        if let Some(b) = memo.get(&g) {
            return *b;
        }
        let s = g.score();
        let ok = g.left().len() == g.right().len() && {
            let mut mirrored: Vec<GameId> = g.right().iter().map(|r| mirror(*r, s)).collect();
            let mut left = g.left().to_vec();
            mirrored.sort_unstable();
            left.sort_unstable();
            left == mirrored
        } && g.left().iter().chain(g.right()).all(|c| go(*c, memo));
        memo.insert(g, ok);
        ok
    }
    go(g, &mut HashMap::new())
}

/// An impartial game whose final scores are the negation of `g`'s, so that
/// `g △ inverse` is a tie. The score reversal of `g` is returned whenever it
/// has that property; otherwise the two-leaf game
/// `{-SL(g) | -g^S | -SR(g)}` is used.
pub fn conjunctive_inverse(g: GameId) -> Result<GameId> {
    if !is_impartial(g) {
        return Err(Error::NotImpartial);
    }
    let f = g.finals();
    let r = reverse(g);
    let rf = r.finals();
    if rf.left_first == -f.left_first && rf.right_first == -f.right_first {
        return Ok(r);
    }
    Ok(node(
        vec![number(-f.left_first)],
        -g.score(),
        vec![number(-f.right_first)],
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    #[serde(serialize_with = "serialize_game")]
    pub probe: GameId,
    /// Outcome of the probe alone.
    pub expected: Outcome,
    /// Outcome of the probe composed with the candidate.
    pub got: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "serialize_game")]
    pub candidate: GameId,
    pub operator: OperatorKind,
    pub samples: usize,
    pub passed: usize,
    pub fraction: f64,
    pub counterexample: Option<Counterexample>,
}

/// Probe games for identity tests: the zero game, then random games from
/// `params` (impartial for the commutative operators, arbitrary for the
/// sequential join).
pub fn probe_set(op: OperatorKind, samples: usize, params: &ImpartialParams) -> Vec<GameId> {
    let mut sampler = GameSampler::new(params.clone());
    let mut probes = Vec::with_capacity(samples);
    if samples > 0 {
        probes.push(number(Score::ZERO));
    }
    while probes.len() < samples {
        probes.push(match op {
            OperatorKind::Sequential => sampler.general(),
            _ => sampler.impartial(),
        });
    }
    probes
}

/// True when composing with `candidate` leaves the outcome of `probe`
/// unchanged (on both sides, for the sequential join).
fn preserves(solver: &mut SumSolver, op: OperatorKind, candidate: GameId, probe: GameId) -> Option<Outcome> {
    let expected = outcome(probe);
    let mut orders = vec![[candidate, probe]];
    if op == OperatorKind::Sequential {
        orders.push([probe, candidate]);
    }
    for comps in orders {
        let got = solver.eval(&comps).expect("nonempty").outcome();
        if got != expected {
            return Some(got);
        }
    }
    None
}

/// Samples probes and checks `candidate ⊕ P ≈ P`.
pub fn identity_test(
    candidate: GameId,
    op: OperatorKind,
    samples: usize,
    params: &ImpartialParams,
) -> IdentityReport {
    let mut solver = SumSolver::new(op);
    let mut passed = 0;
    let mut counterexample = None;
    let probes = probe_set(op, samples, params);
    for p in &probes {
        match preserves(&mut solver, op, candidate, *p) {
            None => passed += 1,
            Some(got) => {
                counterexample.get_or_insert(Counterexample {
                    probe: *p,
                    expected: outcome(*p),
                    got,
                });
            }
        }
    }
    IdentityReport {
        candidate,
        operator: op,
        samples: probes.len(),
        passed,
        fraction: if probes.is_empty() {
            1.0
        } else {
            passed as f64 / probes.len() as f64
        },
        counterexample,
    }
}

/// A context in which two games (or a game and the zero game) land in
/// different outcome classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContextWitness {
    #[serde(serialize_with = "serialize_game")]
    pub context: GameId,
    pub operator: OperatorKind,
    pub first: Outcome,
    pub second: Outcome,
}

impl ContextWitness {
    fn new(context: GameId, operator: OperatorKind, first: Outcome, second: Outcome) -> Option<Self> {
        (first != second).then_some(ContextWitness {
            context,
            operator,
            first,
            second,
        })
    }
}

/// `{.|1|b}` with `b` below every score in `g` (or the mirrored
/// `{b|-1|.}` when `g` has no Left option).
fn witness_gadget(g: GameId) -> GameId {
    let big = game::max_abs_score(g) + Score::integer(1);
    if g.left().is_empty() {
        node(vec![number(big)], Score::integer(-1), Vec::new())
    } else {
        node(Vec::new(), Score::integer(1), vec![number(-big)])
    }
}

/// Context showing that `g` is not the zero game under `op`: the zero game
/// for a nonzero leaf, otherwise a one-move gadget whose single move
/// outweighs every score in `g`. `first` is the outcome of `g ⊕ X`, `second`
/// that of `X` alone.
pub fn nonzero_witness(g: GameId, op: OperatorKind) -> Result<ContextWitness> {
    if !matches!(op, OperatorKind::Conjunctive | OperatorKind::Selective) {
        return Err(Error::UnsupportedOperator(op.short_name()));
    }
    let x = if g.is_leaf() {
        if g.score().is_zero() {
            return Err(Error::ZeroGame);
        }
        number(Score::ZERO)
    } else {
        witness_gadget(g)
    };
    let with = crate::ops::eval_sum(op, &[g, x])?.outcome();
    let alone = outcome(x);
    ContextWitness::new(x, op, with, alone).ok_or_else(|| {
        Error::WitnessFailed(format!("{g} under {op} with context {x}: both {with}"))
    })
}

/// Which games a context search draws from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ContextFamily {
    /// Every game over the palette, plus the nonzero-witness gadgets.
    #[default]
    All,
    /// Impartial games only.
    Impartial,
}

/// Scores used by the context enumeration, in enumeration order.
pub fn context_palette() -> Vec<Score> {
    [0, 1, -1, 2, -2].map(Score::integer).to_vec()
}

pub const DEFAULT_CONTEXT_BUDGET: usize = 10_000;

fn small_subsets(pool: &[GameId], min: usize) -> Vec<Vec<GameId>> {
    let mut out = Vec::new();
    if min == 0 {
        out.push(Vec::new());
    }
    for (i, a) in pool.iter().enumerate() {
        out.push(vec![*a]);
        for b in &pool[i + 1..] {
            out.push(vec![*a, *b]);
        }
    }
    out
}

/// Visits contexts in a fixed order: height 0, then height 1, and so on up
/// to `depth`, with at most two options per side. Each height is built from
/// all games of smaller height. Stops after `budget` contexts.
fn enumerate_contexts(
    family: ContextFamily,
    depth: u32,
    budget: usize,
    extra_after_leaves: &[GameId],
    visit: &mut dyn FnMut(GameId) -> ControlFlow<()>,
) {
    let palette = context_palette();
    let mut seen = std::collections::HashSet::new();
    let mut count = 0usize;
    let mut emit = |g: GameId, pool: &mut Vec<GameId>| -> ControlFlow<()> {
        if !seen.insert(g) {
            return ControlFlow::Continue(());
        }
        if count >= budget {
            return ControlFlow::Break(());
        }
        count += 1;
        pool.push(g);
        visit(g)
    };

    let mut pool: Vec<GameId> = Vec::new();
    for s in &palette {
        if emit(number(*s), &mut pool).is_break() {
            return;
        }
    }
    let mut scratch = Vec::new();
    for x in extra_after_leaves {
        if emit(*x, &mut scratch).is_break() {
            return;
        }
    }

    for h in 1..=depth {
        let mut next = pool.clone();
        let fresh = |opts: &[GameId]| opts.iter().any(|o| o.height() + 1 == h);
        match family {
            ContextFamily::All => {
                let subsets = small_subsets(&pool, 0);
                for s in &palette {
                    for l in &subsets {
                        for r in &subsets {
                            if !fresh(l) && !fresh(r) {
                                continue;
                            }
                            let g = node(l.clone(), *s, r.clone());
                            if emit(g, &mut next).is_break() {
                                return;
                            }
                        }
                    }
                }
            }
            ContextFamily::Impartial => {
                for s in &palette {
                    for l in small_subsets(&pool, 1) {
                        if !fresh(&l) {
                            continue;
                        }
                        let r = l.iter().map(|x| mirror(*x, *s)).collect();
                        let g = node(l, *s, r);
                        if emit(g, &mut next).is_break() {
                            return;
                        }
                    }
                }
            }
        }
        pool = next;
    }
}

/// First context `X` (in enumeration order) with `outcome(g ⊕ X) !=
/// outcome(h ⊕ X)`. `None` means only that no such context exists within
/// the bounds.
pub fn distinguishing_context(
    g: GameId,
    h: GameId,
    op: OperatorKind,
    depth: u32,
    budget: usize,
    family: ContextFamily,
) -> Option<ContextWitness> {
    if g == h {
        return None;
    }
    let gadgets: Vec<GameId> = match family {
        ContextFamily::All => [g, h]
            .iter()
            .filter(|x| !x.is_leaf())
            .map(|x| witness_gadget(*x))
            .collect(),
        ContextFamily::Impartial => Vec::new(),
    };
    let mut solver = SumSolver::new(op);
    let mut found = None;
    enumerate_contexts(family, depth, budget, &gadgets, &mut |x| {
        let a = solver.eval(&[g, x]).expect("nonempty").outcome();
        let b = solver.eval(&[h, x]).expect("nonempty").outcome();
        match ContextWitness::new(x, op, a, b) {
            Some(w) => {
                found = Some(w);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    found
}

/// Fixed probe set used by [`inverse_search`].
pub fn inverse_probes() -> Vec<GameId> {
    let mut probes: Vec<GameId> = ["0", "1", "-1", "{1|0|-1}", "{2|1|0}", "{{0|0|0}|0|{0|0|0}}"]
        .iter()
        .map(|s| parse_game(s).expect("valid literal"))
        .collect();
    let mut sampler = GameSampler::new(ImpartialParams {
        seed: 0x1f2e_3d4c,
        ..ImpartialParams::default()
    });
    probes.extend((0..26).map(|_| sampler.impartial()));
    probes
}

/// Looks for an impartial `Y` with `g ⊕ Y ⊕ P ≈ P` on every probe `P`.
/// Candidates are the reversal and negation of `g`, its conjunctive inverse
/// when `g` is impartial, then impartial games by increasing height. A hit
/// is evidence, not proof, of invertibility; `None` is evidence against it.
pub fn inverse_search(g: GameId, op: OperatorKind, depth: u32, budget: usize) -> Option<GameId> {
    let probes = inverse_probes();
    let mut solver = SumSolver::new(op);
    let mut accepts = |y: GameId| {
        probes.iter().all(|p| {
            let got = solver.eval(&[g, y, *p]).expect("nonempty").outcome();
            got == outcome(*p)
        })
    };

    let mut seeds = vec![reverse(g), negate(g)];
    if let Ok(inv) = conjunctive_inverse(g) {
        seeds.push(inv);
    }
    let mut tried = std::collections::HashSet::new();
    for y in seeds {
        if tried.insert(y) && is_impartial(y) && accepts(y) {
            return Some(y);
        }
    }
    let mut found = None;
    enumerate_contexts(ContextFamily::Impartial, depth, budget, &[], &mut |y| {
        if tried.insert(y) && accepts(y) {
            found = Some(y);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{final_scores, FinalScores};
    use crate::ops::eval_sum;

    fn g(s: &str) -> GameId {
        parse_game(s).unwrap()
    }

    #[test]
    fn impartiality_examples() {
        assert!(is_impartial(g("{4|3|2}")));
        assert!(is_impartial(identity_game()));
        assert!(!is_impartial(g("{1|0|1}")));
        assert!(!is_impartial(g("{1|0|.}")));
        assert!(is_impartial(g("7")));
        assert!(is_impartial(g("{1,{0|0|0}|0|{0|0|0},-1}")));
        // Root is fine but a child is not.
        assert!(!is_impartial(g("{{3|2|.}|0|{.|-2|-3}}")));
    }

    #[test]
    fn generator_shapes() {
        let leafy = ImpartialParams {
            leaf_probability: 1.0,
            ..ImpartialParams::default()
        };
        assert!(random_impartial(&leafy).is_leaf());

        let one = ImpartialParams {
            max_depth: 1,
            max_branching: 1,
            palette: vec![Score::integer(1)],
            leaf_probability: 0.0,
            seed: 3,
        };
        assert_eq!(random_impartial(&one), g("{2|1|0}"));
    }

    #[test]
    fn generator_is_deterministic() {
        let p = ImpartialParams {
            seed: 42,
            ..ImpartialParams::default()
        };
        assert_eq!(random_impartial(&p), random_impartial(&p));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(conjunctive_inverse(g("5")).unwrap(), g("-5"));
        let x = g("{4|3|2}");
        let inv = conjunctive_inverse(x).unwrap();
        assert_eq!(inv, g("{-4|-3|-2}"));
        assert_eq!(
            eval_sum(OperatorKind::Conjunctive, &[x, inv]).unwrap(),
            FinalScores::leaf(Score::ZERO)
        );
        // Negation is not an inverse.
        let neg = eval_sum(OperatorKind::Conjunctive, &[x, negate(x)]).unwrap();
        assert_eq!(neg.left_first, Score::integer(2));

        let y = g("{{2|1|0}|0|{0|-1|-2}}");
        let inv = conjunctive_inverse(y).unwrap();
        assert_eq!(inv, reverse(y));
        assert_eq!(eval_sum(OperatorKind::Conjunctive, &[y, inv]).unwrap().outcome(), Outcome::Tie);

        assert_eq!(conjunctive_inverse(g("{1|0|.}")), Err(Error::NotImpartial));
    }

    #[test]
    fn reversal_fails_as_inverse_when_choices_exist() {
        let x = g("{5,4|3|2,1}");
        assert!(is_impartial(x));
        let r = reverse(x);
        assert_eq!(final_scores(r), FinalScores::new(Score::integer(-4), Score::integer(-2)));
        let f = eval_sum(OperatorKind::Conjunctive, &[x, r]).unwrap();
        assert_eq!(f, FinalScores::new(Score::integer(1), Score::integer(-1)));
        assert_eq!(f.outcome(), Outcome::N);

        let inv = conjunctive_inverse(x).unwrap();
        assert_eq!(inv, g("{-5|-3|-1}"));
        assert_eq!(eval_sum(OperatorKind::Conjunctive, &[x, inv]).unwrap().outcome(), Outcome::Tie);
    }

    #[test]
    fn identity_examples() {
        let params = ImpartialParams::default();
        let r = identity_test(identity_game(), OperatorKind::Selective, 200, &params);
        assert_eq!(r.passed, 200, "{:?}", r.counterexample);
        let r = identity_test(identity_game(), OperatorKind::Sequential, 200, &params);
        assert_eq!(r.passed, 200, "{:?}", r.counterexample);

        for op in OperatorKind::ALL {
            let r = identity_test(g("1"), op, 20, &params);
            let c = r.counterexample.unwrap();
            assert_eq!(c.probe, g("0"));
            assert_eq!((c.expected, c.got), (Outcome::Tie, Outcome::L));
        }
    }

    #[test]
    fn nonzero_witness_examples() {
        let w = nonzero_witness(g("2"), OperatorKind::Conjunctive).unwrap();
        assert_eq!(w.context, g("0"));
        assert_eq!((w.first, w.second), (Outcome::L, Outcome::Tie));

        let x = g("{0|0|.}");
        let w = nonzero_witness(x, OperatorKind::Conjunctive).unwrap();
        assert_eq!(w.context, g("{.|1|-1}"));
        assert_eq!(w.second, Outcome::N);
        assert_ne!(w.first, Outcome::N);
        assert!(eval_sum(OperatorKind::Conjunctive, &[x, w.context]).unwrap().left_first < Score::ZERO);

        let w = nonzero_witness(x, OperatorKind::Selective).unwrap();
        assert_eq!(w.context, g("{.|1|-1}"));
        assert_ne!(w.first, w.second);

        let w = nonzero_witness(g("{.|0|3}"), OperatorKind::Selective).unwrap();
        assert_eq!(w.context, g("{4|-1|.}"));
        assert_ne!(w.first, w.second);

        assert_eq!(nonzero_witness(g("0"), OperatorKind::Conjunctive), Err(Error::ZeroGame));
        assert!(nonzero_witness(g("1"), OperatorKind::Disjunctive).is_err());
    }

    #[test]
    fn context_search_examples() {
        let one = g("1");
        let zero = g("0");
        for op in OperatorKind::ALL {
            assert_eq!(distinguishing_context(one, one, op, 3, 100, ContextFamily::All), None);
            let w = distinguishing_context(one, zero, op, 2, 100, ContextFamily::All).unwrap();
            assert_eq!(w.context, zero);
            assert_eq!((w.first, w.second), (Outcome::L, Outcome::Tie));
        }
    }

    #[test]
    fn identity_game_is_not_zero_in_every_context() {
        let w = distinguishing_context(
            identity_game(),
            g("0"),
            OperatorKind::Selective,
            1,
            DEFAULT_CONTEXT_BUDGET,
            ContextFamily::All,
        )
        .unwrap();
        assert_ne!(w.first, w.second);
    }

    #[test]
    fn identity_game_is_invisible_to_impartial_contexts() {
        let found = distinguishing_context(
            identity_game(),
            g("0"),
            OperatorKind::Selective,
            3,
            DEFAULT_CONTEXT_BUDGET,
            ContextFamily::Impartial,
        );
        assert_eq!(found, None);
    }

    #[test]
    fn sequential_example_has_no_small_inverse() {
        let x = g("{1,{0|0|0}|0|{0|0|0},-1}");
        assert_eq!(inverse_search(x, OperatorKind::Sequential, 2, 2_000), None);
    }

    #[test]
    fn inverse_search_examples() {
        assert_eq!(inverse_search(g("3"), OperatorKind::Conjunctive, 1, 200), Some(g("-3")));
        assert_eq!(
            inverse_search(g("{4|3|2}"), OperatorKind::Conjunctive, 1, 200),
            Some(g("{-4|-3|-2}"))
        );
    }
}
