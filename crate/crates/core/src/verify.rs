//! Replayable checks of the worked examples and proven identities. Each
//! check is deterministic for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eval::{final_scores, outcome, FinalScores, Outcome};
use crate::game::{negate, node, number, reverse, shift, GameId};
use crate::lab::{
    conjunctive_inverse, identity_game, identity_test, is_impartial, nonzero_witness, probe_set,
    GameSampler, ImpartialParams,
};
use crate::notation::{format_game, parse_game};
use crate::octal::{conjecture_report, find_period, GsSolver, Heap, HeapTrees, OctalRuleset};
use crate::ops::{Composer, ConjunctiveRule, OperatorKind, SumSolver};
use crate::score::Score;

pub const SCHEMA_VERSION: &str = "1";

/// Rulesets exercised by the octal checks.
pub const BATTERY: [&str; 5] = [
    "0.33:1,2",
    "0.007:0,0,1",
    "0.123",
    "0.3102:2,-1,0,3",
    "0.2211:1,0,-1,2",
];

pub fn battery() -> Vec<OctalRuleset> {
    BATTERY.iter().map(|s| s.parse().expect("valid ruleset")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Conjunctive semantics used when materializing sums. `Literal` exists
    /// to show that the literal formula breaks the worked example.
    pub conjunctive_rule: ConjunctiveRule,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            conjunctive_rule: ConjunctiveRule::Available,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, cases: usize, failure: Option<String>) -> Self {
        Check {
            name,
            passed: failure.is_none(),
            cases,
            detail: failure.unwrap_or_else(|| format!("{cases} cases")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Runs every check in a fixed order.
pub fn run_all(opts: &VerifyOptions) -> VerifyReport {
    let checks = vec![
        worked_examples(),
        conjunctive_freedom(opts, 100),
        selective_freedom(opts, 100),
        sequential_identity(opts, 500),
        selective_identity(opts, 200),
        conjunctive_inverse_check(opts, 200, 50),
        conjunctive_additivity(30),
        selective_additivity(20),
        tree_oracle(12),
        period_anchor(),
        battery_reports(40),
        outcome_partition(opts, 1000),
        negation_mirror(opts, 1000),
        shift_covariance(opts, 1000),
        impartial_symmetry(opts, 1000),
        notation_round_trip(opts, 1000),
        nonzero_witnesses(opts, 200),
    ];
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Small rationals with numerators in -9..=9 and denominators in 1..=3.
pub fn random_rational(rng: &mut impl Rng) -> Score {
    Score::new(rng.gen_range(-9..=9), rng.gen_range(1..=3)).expect("nonzero denominator")
}

fn rng(opts: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn general_params(opts: &VerifyOptions, salt: u64, max_depth: u32) -> ImpartialParams {
    ImpartialParams {
        max_depth,
        max_branching: 2,
        palette: ["-2", "-1", "-1/2", "0", "1/3", "1", "2"]
            .iter()
            .map(|s| s.parse().expect("valid score"))
            .collect(),
        leaf_probability: 0.3,
        seed: opts.seed ^ salt,
    }
}

fn show(v: &[Score]) -> String {
    let parts: Vec<String> = v.iter().map(Score::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn leaf(s: Score) -> GameId {
    number(s)
}

/// `{{.|b|{.|c|{e|d|f}}}|a|.}` and `{.|g|{{{k|j|.}|i|.}|h|.}}` for
/// `v = [a, b, ..., k]`.
pub fn conjunctive_freedom_pair(v: &[Score; 11]) -> (GameId, GameId) {
    let [a, b, c, d, e, f, g, h, i, j, k] = *v;
    let inner = node(vec![leaf(e)], d, vec![leaf(f)]);
    let g1 = node(vec![], c, vec![inner]);
    let g2 = node(vec![], b, vec![g1]);
    let left_game = node(vec![g2], a, vec![]);
    let h1 = node(vec![leaf(k)], j, vec![]);
    let h2 = node(vec![h1], i, vec![]);
    let h3 = node(vec![h2], h, vec![]);
    let right_game = node(vec![], g, vec![h3]);
    (left_game, right_game)
}

/// `{{c|b|.}|a|.}` and `{.|d|{.|e|{.|f|g}}}` for `v = [a, ..., g]`.
pub fn selective_freedom_pair(v: &[Score; 7]) -> (GameId, GameId) {
    let [a, b, c, d, e, f, g] = *v;
    let g1 = node(vec![leaf(c)], b, vec![]);
    let first = node(vec![g1], a, vec![]);
    let h1 = node(vec![], f, vec![leaf(g)]);
    let h2 = node(vec![], e, vec![h1]);
    let second = node(vec![], d, vec![h2]);
    (first, second)
}

/// Representative final scores for each outcome class.
fn scores_for(o: Outcome) -> (Score, Score) {
    let (l, r) = match o {
        Outcome::L => (1, 1),
        Outcome::R => (-1, -1),
        Outcome::N => (1, -1),
        Outcome::P => (-1, 1),
        Outcome::Tie => (0, 0),
    };
    (Score::integer(l), Score::integer(r))
}

const OUTCOMES: [Outcome; 5] = [Outcome::L, Outcome::R, Outcome::N, Outcome::P, Outcome::Tie];

fn expect_finals(what: &str, got: FinalScores, want: (Score, Score)) -> Option<String> {
    (got != FinalScores::new(want.0, want.1)).then(|| {
        format!(
            "{what}: got ({}, {}), expected ({}, {})",
            got.left_first, got.right_first, want.0, want.1
        )
    })
}

fn worked_examples() -> Check {
    let cases: [(&str, (i64, i64), Outcome); 4] = [
        ("{4|3|2}", (4, 2), Outcome::L),
        ("0", (0, 0), Outcome::Tie),
        ("{{.|-2|{.|3|{1|0|-4}}}|5|.}", (3, 5), Outcome::L),
        ("{.|2|{{{6|4|.}|-1|.}|7|.}}", (2, -1), Outcome::N),
    ];
    let mut failure = None;
    for (text, (l, r), o) in cases {
        let g = parse_game(text).expect("valid literal");
        let f = final_scores(g);
        if f != FinalScores::new(Score::integer(l), Score::integer(r)) || f.outcome() != o {
            failure.get_or_insert(format!("{text}: got ({}, {}) {}", f.left_first, f.right_first, f.outcome()));
        }
    }
    Check::new("worked-examples", cases.len(), failure)
}

/// Final-score identities of the conjunctive outcome-freedom example, over
/// random assignments and over one assignment per triple of outcome classes.
pub fn conjunctive_freedom(opts: &VerifyOptions, assignments: usize) -> Check {
    let mut composer = Composer::with_rule(opts.conjunctive_rule);
    let mut rng = rng(opts, 1);
    let mut check = |v: &[Score; 11]| -> Option<String> {
        let [a, _, c, _, e, _, g, _, i, j, k] = *v;
        let (x, y) = conjunctive_freedom_pair(v);
        let sum = composer.sum(OperatorKind::Conjunctive, &[x, y]).expect("nonempty");
        expect_finals(&format!("G for {}", show(v)), final_scores(x), (c, a))
            .or_else(|| expect_finals(&format!("H for {}", show(v)), final_scores(y), (g, i)))
            .or_else(|| expect_finals(&format!("sum for {}", show(v)), final_scores(sum), (e + j, e + k)))
    };
    let mut failure = None;
    for _ in 0..assignments {
        let v: [Score; 11] = std::array::from_fn(|_| random_rational(&mut rng));
        if let Some(f) = check(&v) {
            failure.get_or_insert(f);
        }
    }
    let mut triples = 0;
    for og in OUTCOMES {
        for oh in OUTCOMES {
            for os in OUTCOMES {
                let mut v: [Score; 11] = std::array::from_fn(|_| random_rational(&mut rng));
                (v[2], v[0]) = scores_for(og);
                (v[6], v[8]) = scores_for(oh);
                v[4] = Score::ZERO;
                (v[9], v[10]) = scores_for(os);
                let (x, y) = conjunctive_freedom_pair(&v);
                let sum = composer.sum(OperatorKind::Conjunctive, &[x, y]).expect("nonempty");
                let got = (outcome(x), outcome(y), outcome(sum));
                if got != (og, oh, os) {
                    failure.get_or_insert(format!("classes {og}/{oh}/{os} not realized: got {got:?}"));
                }
                triples += 1;
            }
        }
    }
    Check::new("conjunctive-freedom", assignments + triples, failure)
}

/// Same for the selective outcome-freedom example.
pub fn selective_freedom(opts: &VerifyOptions, assignments: usize) -> Check {
    let mut composer = Composer::with_rule(opts.conjunctive_rule);
    let mut rng = rng(opts, 2);
    let mut failure = None;
    for _ in 0..assignments {
        let v: [Score; 7] = std::array::from_fn(|_| random_rational(&mut rng));
        let [a, b, c, d, e, f, g] = v;
        let (x, y) = selective_freedom_pair(&v);
        let sum = composer.sum(OperatorKind::Selective, &[x, y]).expect("nonempty");
        let bad = expect_finals(&format!("G for {}", show(&v)), final_scores(x), (b, a))
            .or_else(|| expect_finals(&format!("H for {}", show(&v)), final_scores(y), (d, e)))
            .or_else(|| expect_finals(&format!("sum for {}", show(&v)), final_scores(sum), (c + f, c + g)));
        if let Some(m) = bad {
            failure.get_or_insert(m);
        }
    }
    let mut triples = 0;
    for og in OUTCOMES {
        for oh in OUTCOMES {
            for os in OUTCOMES {
                let mut v: [Score; 7] = std::array::from_fn(|_| random_rational(&mut rng));
                (v[1], v[0]) = scores_for(og);
                (v[3], v[4]) = scores_for(oh);
                v[2] = Score::ZERO;
                (v[5], v[6]) = scores_for(os);
                let (x, y) = selective_freedom_pair(&v);
                let sum = composer.sum(OperatorKind::Selective, &[x, y]).expect("nonempty");
                let got = (outcome(x), outcome(y), outcome(sum));
                if got != (og, oh, os) {
                    failure.get_or_insert(format!("classes {og}/{oh}/{os} not realized: got {got:?}"));
                }
                triples += 1;
            }
        }
    }
    Check::new("selective-freedom", assignments + triples, failure)
}

/// `i ▷ G` and `G ▷ i` have the final scores of `G`, for random games of
/// depth at most 5.
pub fn sequential_identity(opts: &VerifyOptions, games: usize) -> Check {
    let i = identity_game();
    let mut sampler = GameSampler::new(general_params(opts, 3, 5));
    let mut composer = Composer::new();
    let mut failure = None;
    for _ in 0..games {
        let g = sampler.general();
        let want = final_scores(g);
        for comps in [[i, g], [g, i]] {
            let joined = composer.sum(OperatorKind::Sequential, &comps).expect("nonempty");
            if final_scores(joined) != want {
                failure.get_or_insert(format!("{} ▷ {}", comps[0], comps[1]));
            }
        }
    }
    Check::new("sequential-identity", games, failure)
}

/// `i ▽ P ≈ P` for random impartial `P`.
pub fn selective_identity(opts: &VerifyOptions, probes: usize) -> Check {
    let params = ImpartialParams {
        seed: opts.seed ^ 4,
        ..ImpartialParams::default()
    };
    let r = identity_test(identity_game(), OperatorKind::Selective, probes, &params);
    let failure = r
        .counterexample
        .map(|c| format!("probe {}: {} became {}", c.probe, c.expected, c.got));
    Check::new("selective-identity", r.samples, failure)
}

fn impartial_params(opts: &VerifyOptions, salt: u64) -> ImpartialParams {
    ImpartialParams {
        seed: opts.seed ^ salt,
        ..ImpartialParams::default()
    }
}

/// Shared body of the two inverse checks: `g △ y` must tie, and composing
/// it with impartial probes must preserve their outcomes.
fn inverse_trial(
    name: &'static str,
    opts: &VerifyOptions,
    games: usize,
    probes: usize,
    inverse: impl Fn(GameId) -> GameId,
) -> Check {
    let mut sampler = GameSampler::new(impartial_params(opts, 5));
    let mut solver = SumSolver::new(OperatorKind::Conjunctive);
    let mut failure = None;
    let mut ties = 0;
    for idx in 0..games {
        let g = sampler.impartial();
        let y = inverse(g);
        let tie = solver.eval(&[g, y]).expect("nonempty").outcome();
        if tie == Outcome::Tie {
            ties += 1;
        } else {
            failure.get_or_insert(format!("{g} with {y} is {tie}, not a tie"));
            continue;
        }
        if !is_impartial(y) {
            failure.get_or_insert(format!("{y} is not impartial"));
        }
        let ps = probe_set(OperatorKind::Conjunctive, probes, &impartial_params(opts, 1000 + idx as u64));
        for p in ps {
            let got = solver.eval(&[g, y, p]).expect("nonempty").outcome();
            if got != outcome(p) {
                failure.get_or_insert(format!("{g} with {y} changes probe {p}"));
                break;
            }
        }
    }
    let failure = failure.map(|f| format!("{ties}/{games} ties; first failure: {f}"));
    Check::new(name, games, failure)
}

/// The conjunctive inverse from [`conjunctive_inverse`].
pub fn conjunctive_inverse_check(opts: &VerifyOptions, games: usize, probes: usize) -> Check {
    inverse_trial("conjunctive-inverse", opts, games, probes, |g| {
        conjunctive_inverse(g).expect("generated games are impartial")
    })
}

/// The score reversal used directly as the conjunctive inverse.
pub fn reversal_inverse_check(opts: &VerifyOptions, games: usize, probes: usize) -> Check {
    inverse_trial("reversal-inverse", opts, games, probes, reverse)
}

/// `gs(△, {n, m}) = gs(△, {n}) + gs(△, {m})` for `n, m <= bound` over the
/// battery.
pub fn conjunctive_additivity(bound: u32) -> Check {
    let mut failure = None;
    let mut cases = 0;
    for rules in battery() {
        let mut solver = GsSolver::new();
        let id = solver.add_ruleset(rules.clone());
        let single = solver
            .gs_table(OperatorKind::Conjunctive, id, bound, &[])
            .expect("commutative operator");
        for n in 0..=bound {
            for m in 0..=bound {
                let v = solver
                    .gs(OperatorKind::Conjunctive, &[Heap::new(id, n), Heap::new(id, m)])
                    .expect("commutative operator");
                let want = single[n as usize] + single[m as usize];
                if v != want {
                    failure.get_or_insert(format!("{rules} {{{n}, {m}}}: {v} != {want}"));
                }
                cases += 1;
            }
        }
    }
    Check::new("conjunctive-additivity", cases, failure)
}

/// Selective values of up to three heaps of size `<= bound` add up, for
/// every battery ruleset whose single-heap values up to `bound` are all
/// nonnegative.
pub fn selective_additivity(bound: u32) -> Check {
    let op = OperatorKind::Selective;
    let mut failure = None;
    let mut cases = 0;
    let mut eligible = 0;
    for rules in battery() {
        let mut solver = GsSolver::new();
        let id = solver.add_ruleset(rules.clone());
        let single = solver.gs_table(op, id, bound, &[]).expect("commutative operator");
        if single.iter().any(|v| *v < Score::ZERO) {
            continue;
        }
        eligible += 1;
        for a in 0..=bound {
            for b in a..=bound {
                for c in b..=bound {
                    let heaps = [a, b, c].map(|s| Heap::new(id, s));
                    let v = solver.gs(op, &heaps).expect("commutative operator");
                    let want = single[a as usize] + single[b as usize] + single[c as usize];
                    if v != want {
                        failure.get_or_insert(format!("{rules} {{{a}, {b}, {c}}}: {v} != {want}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    if eligible == 0 {
        failure = Some("no battery ruleset has nonnegative values".to_string());
    }
    Check::new("selective-additivity", cases, failure)
}

/// Positions of up to three heaps (in every order) with at most
/// `max_beans` beans in total.
fn small_positions(max_beans: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=max_beans {
        out.push(vec![a]);
        for b in 1..=max_beans - a {
            out.push(vec![a, b]);
            for c in 1..=max_beans - a - b {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// `gs` agrees with the first-player final score of the materialized game
/// tree for all small battery positions and all operators.
pub fn tree_oracle(max_beans: u32) -> Check {
    let mut failure = None;
    let mut cases = 0;
    for rules in battery() {
        let mut solver = GsSolver::new();
        let id = solver.add_ruleset(rules.clone());
        for op in OperatorKind::ALL {
            if op == OperatorKind::Sequential && rules.splits() {
                continue;
            }
            let mut trees = HeapTrees::new(&rules, op);
            for sizes in small_positions(max_beans) {
                let heaps: Vec<Heap> = sizes.iter().map(|s| Heap::new(id, *s)).collect();
                let v = solver.gs(op, &heaps).expect("supported operator");
                let tree = trees.position(&sizes).expect("within the tree cap");
                let want = final_scores(tree).left_first;
                if v != want {
                    failure.get_or_insert(format!("{rules} {op} {sizes:?}: {v} != {want}"));
                }
                cases += 1;
            }
        }
    }
    Check::new("tree-oracle", cases, failure)
}

/// The take-one-or-two table repeats 0, 1, 2, 1 from the start.
pub fn period_anchor() -> Check {
    let rules: OctalRuleset = "0.33:1,2".parse().expect("valid ruleset");
    let mut solver = GsSolver::single(rules);
    let table = solver
        .gs_table(OperatorKind::Disjunctive, crate::octal::RulesetId(0), 200, &[])
        .expect("disjunctive");
    let anchor = [0, 1, 2, 1];
    let mut failure = table
        .iter()
        .enumerate()
        .find(|(n, v)| **v != Score::integer(anchor[n % 4]))
        .map(|(n, v)| format!("entry {n} is {v}"));
    match find_period(&table, 10) {
        Some(p) if (p.preperiod, p.period) == (0, 4) => {}
        other => {
            failure.get_or_insert(format!("detected {other:?}, expected preperiod 0 and period 4"));
        }
    }
    Check::new("period-anchor", table.len(), failure)
}

/// Period reports for the whole battery; every reported period must hold
/// on its table.
pub fn battery_reports(n_max: u32) -> Check {
    let mut failure = None;
    let mut cases = 0;
    for rules in battery() {
        let report = match conjecture_report(&rules, &[], n_max, 10) {
            Ok(r) => r,
            Err(e) => {
                failure.get_or_insert(format!("{rules}: {e}"));
                continue;
            }
        };
        for o in &report.operators {
            cases += 1;
            if let (Some(values), Some(p)) = (&o.values, o.period) {
                let holds = (p.preperiod..values.len() - p.period).all(|n| values[n + p.period] == values[n]);
                if !holds {
                    failure.get_or_insert(format!("{rules} {}: reported period does not hold", o.operator));
                }
            }
        }
    }
    Check::new("battery-reports", cases, failure)
}

fn random_games(opts: &VerifyOptions, salt: u64, count: usize) -> Vec<GameId> {
    let mut sampler = GameSampler::new(general_params(opts, salt, 4));
    (0..count).map(|_| sampler.general()).collect()
}

/// Each game lies in exactly one outcome class, read off the signs of its
/// final scores; a zero on one side counts for the other side's winner.
pub fn outcome_partition(opts: &VerifyOptions, games: usize) -> Check {
    let mut failure = None;
    for g in random_games(opts, 6, games) {
        let f = final_scores(g);
        let (l, r) = (f.left_first, f.right_first);
        let z = Score::ZERO;
        let members: Vec<Outcome> = [
            (l >= z && r >= z && (l > z || r > z), Outcome::L),
            (l <= z && r <= z && (l < z || r < z), Outcome::R),
            (l > z && r < z, Outcome::N),
            (l < z && r > z, Outcome::P),
            (l == z && r == z, Outcome::Tie),
        ]
        .into_iter()
        .filter_map(|(b, o)| b.then_some(o))
        .collect();
        if members != [f.outcome()] {
            failure.get_or_insert(format!("{g}: classes {members:?}, outcome {}", f.outcome()));
        }
    }
    Check::new("outcome-partition", games, failure)
}

/// `SL(-g) = -SR(g)`, `SR(-g) = -SL(g)`, and the outcome class mirrors.
pub fn negation_mirror(opts: &VerifyOptions, games: usize) -> Check {
    let mut failure = None;
    for g in random_games(opts, 7, games) {
        let f = final_scores(g);
        let n = negate(g);
        let fneg = final_scores(n);
        if fneg != FinalScores::new(-f.right_first, -f.left_first)
            || outcome(n) != f.outcome().mirrored()
            || negate(n) != g
        {
            failure.get_or_insert(format!("{g}"));
        }
    }
    Check::new("negation-mirror", games, failure)
}

/// Shifting every score by `c` shifts both final scores by `c`.
pub fn shift_covariance(opts: &VerifyOptions, games: usize) -> Check {
    let mut r = rng(opts, 8);
    let mut failure = None;
    for g in random_games(opts, 8, games) {
        let c = random_rational(&mut r);
        if final_scores(shift(g, c)) != final_scores(g).shifted(c) {
            failure.get_or_insert(format!("{g} by {c}"));
        }
    }
    Check::new("shift-covariance", games, failure)
}

/// For impartial `g`, `SL + SR = 2 * score`.
pub fn impartial_symmetry(opts: &VerifyOptions, games: usize) -> Check {
    let mut sampler = GameSampler::new(impartial_params(opts, 9));
    let mut failure = None;
    for _ in 0..games {
        let g = sampler.impartial();
        let f = final_scores(g);
        if !is_impartial(g) || f.left_first + f.right_first != g.score().scale(2) {
            failure.get_or_insert(format!("{g}"));
        }
    }
    Check::new("impartial-symmetry", games, failure)
}

/// Printing then parsing returns the same game.
pub fn notation_round_trip(opts: &VerifyOptions, games: usize) -> Check {
    let mut failure = None;
    for g in random_games(opts, 10, games) {
        let text = format_game(g);
        match parse_game(&text) {
            Ok(back) if back == g => {}
            _ => {
                failure.get_or_insert(text);
            }
        }
    }
    Check::new("notation-round-trip", games, failure)
}

/// The constructed witness separates random nonzero games from the zero
/// game under both the conjunctive and selective sums. Outcomes are
/// recomputed on materialized sums.
pub fn nonzero_witnesses(opts: &VerifyOptions, games: usize) -> Check {
    let zero = number(Score::ZERO);
    let mut sampler = GameSampler::new(general_params(opts, 11, 3));
    let mut composer = Composer::new();
    let mut failure = None;
    let mut done = 0;
    while done < games {
        let g = sampler.general();
        if g == zero {
            continue;
        }
        done += 1;
        for op in [OperatorKind::Conjunctive, OperatorKind::Selective] {
            match nonzero_witness(g, op) {
                Ok(w) => {
                    let with = outcome(composer.sum(op, &[g, w.context]).expect("nonempty"));
                    if with == outcome(w.context) {
                        failure.get_or_insert(format!("{g} under {op}: context {} does not separate", w.context));
                    }
                }
                Err(e) => {
                    failure.get_or_insert(format!("{g} under {op}: {e}"));
                }
            }
        }
    }
    Check::new("nonzero-witness", games, failure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freedom_pairs_match_literals() {
        let v = [5, -2, 3, 0, 1, -4, 2, 7, -1, 4, 6].map(Score::integer);
        let (g, h) = conjunctive_freedom_pair(&v);
        assert_eq!(g, parse_game("{{.|-2|{.|3|{1|0|-4}}}|5|.}").unwrap());
        assert_eq!(h, parse_game("{.|2|{{{6|4|.}|-1|.}|7|.}}").unwrap());
        let v = [1, -3, 2, 0, -5, 4, -6].map(Score::integer);
        let (g, h) = selective_freedom_pair(&v);
        assert_eq!(g, parse_game("{{2|-3|.}|1|.}").unwrap());
        assert_eq!(h, parse_game("{.|0|{.|-5|{.|4|-6}}}").unwrap());
    }

    #[test]
    fn freedom_checks_pass() {
        let opts = VerifyOptions::default();
        assert!(conjunctive_freedom(&opts, 20).passed);
        assert!(selective_freedom(&opts, 20).passed);
    }

    #[test]
    fn literal_conjunction_breaks_the_example() {
        let opts = VerifyOptions {
            conjunctive_rule: ConjunctiveRule::Literal,
            ..VerifyOptions::default()
        };
        let c = conjunctive_freedom(&opts, 20);
        assert!(!c.passed);
        assert!(selective_freedom(&opts, 20).passed);
    }

    #[test]
    fn small_position_enumeration() {
        let p = small_positions(2);
        assert_eq!(
            p,
            vec![vec![0], vec![0, 1], vec![0, 1, 1], vec![0, 2], vec![1], vec![1, 1], vec![2]]
        );
    }

    #[test]
    fn rationals_stay_small() {
        let mut r = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let s = random_rational(&mut r);
            assert!(s.denom() <= 3 && s.abs() <= Score::integer(9));
        }
    }

    #[test]
    fn cheap_checks_pass() {
        let opts = VerifyOptions::default();
        for c in [
            worked_examples(),
            sequential_identity(&opts, 30),
            conjunctive_inverse_check(&opts, 20, 5),
            outcome_partition(&opts, 100),
            negation_mirror(&opts, 100),
            shift_covariance(&opts, 100),
            impartial_symmetry(&opts, 100),
            notation_round_trip(&opts, 100),
            nonzero_witnesses(&opts, 30),
            period_anchor(),
        ] {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
