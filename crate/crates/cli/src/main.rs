//! `scoreplay` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! usage or parse errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use scoreplay::notation::parse_game_lines;
use scoreplay::octal::{conjecture_report, find_period, GsSolver, Heap, OctalRuleset, RulesetId};
use scoreplay::ops::{eval_sum, ConjunctiveRule};
use scoreplay::verify::{run_all, VerifyOptions, SCHEMA_VERSION};
use scoreplay::{final_scores, parse_game, GameId, OperatorKind};

use output::{Format, Table};

#[derive(Parser)]
#[command(name = "scoreplay", version, about = "Scoring combinatorial game engine")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Final scores and outcome class of each game.
    Eval {
        games: Vec<String>,
        /// File with one game per line; `#` starts a comment.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Final scores of a compound game.
    Sum {
        #[arg(long, value_parser = parse_op)]
        op: OperatorKind,
        #[arg(required = true)]
        games: Vec<String>,
    },
    /// Scoring Grundy value table for one heap plus a fixed tail.
    Gs {
        /// Ruleset such as `0.33:1,2`; points default from the digits.
        #[arg(long, value_parser = parse_rules)]
        rules: OctalRuleset,
        #[arg(long, value_parser = parse_op, default_value = "disj")]
        op: OperatorKind,
        #[arg(long, default_value_t = 200)]
        n_max: u32,
        /// Extra heap sizes present in every position.
        #[arg(long, value_delimiter = ',')]
        tail: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        min_confirm: usize,
    },
    /// Periods of the value tables under all four operators.
    PeriodCompare {
        #[arg(long, value_parser = parse_rules, num_args = 1..)]
        rules: Vec<OctalRuleset>,
        #[arg(long, default_value_t = 200)]
        n_max: u32,
        #[arg(long, value_delimiter = ',')]
        tail: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        min_confirm: usize,
    },
    /// Replays the worked examples and proven identities.
    VerifyPaper {
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RuleArg::Available, hide = true)]
        conjunctive_rule: RuleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Available,
    Literal,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<scoreplay::Error> for Failure {
    fn from(e: scoreplay::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_op(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e: scoreplay::Error| e.to_string())
}

fn parse_rules(s: &str) -> Result<OctalRuleset, String> {
    s.parse().map_err(|e: scoreplay::Error| e.to_string())
}

fn read_games(games: &[String], file: Option<&PathBuf>) -> Result<Vec<GameId>, Failure> {
    let mut out = Vec::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        out.extend(parse_game_lines(&text)?);
    }
    for g in games {
        out.push(parse_game(g)?);
    }
    Ok(out)
}

fn cmd_eval(games: &[GameId]) -> Table {
    let mut t = Table::new(&["game", "SL", "SR", "outcome"]);
    let mut results = Vec::new();
    for g in games {
        let f = final_scores(*g);
        t.row(vec![
            g.to_string(),
            f.left_first.to_string(),
            f.right_first.to_string(),
            f.outcome().to_string(),
        ]);
        results.push(json!({
            "game": g.to_string(),
            "SL": f.left_first,
            "SR": f.right_first,
            "outcome": f.outcome(),
        }));
    }
    t.json = json!({ "schema_version": SCHEMA_VERSION, "results": results });
    t.text = t
        .rows
        .iter()
        .map(|r| format!("{}  SL={} SR={} outcome={}\n", r[0], r[1], r[2], r[3]))
        .collect();
    t
}

fn cmd_sum(op: OperatorKind, games: &[GameId]) -> Result<Table, Failure> {
    let f = eval_sum(op, games)?;
    let names: Vec<String> = games.iter().map(ToString::to_string).collect();
    let mut t = Table::new(&["operator", "SL", "SR", "outcome"]);
    t.row(vec![
        op.to_string(),
        f.left_first.to_string(),
        f.right_first.to_string(),
        f.outcome().to_string(),
    ]);
    t.json = json!({
        "schema_version": SCHEMA_VERSION,
        "operator": op,
        "components": names,
        "SL": f.left_first,
        "SR": f.right_first,
        "outcome": f.outcome(),
    });
    t.text = format!("SL={} SR={} outcome={}\n", f.left_first, f.right_first, f.outcome());
    Ok(t)
}

fn cmd_gs(
    rules: &OctalRuleset,
    op: OperatorKind,
    n_max: u32,
    tail: &[u32],
    min_confirm: usize,
) -> Result<Table, Failure> {
    if n_max < 1 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let mut solver = GsSolver::single(rules.clone());
    let tail_heaps: Vec<Heap> = tail.iter().map(|s| Heap::new(RulesetId(0), *s)).collect();
    let values = solver.gs_table(op, RulesetId(0), n_max, &tail_heaps)?;
    let period = find_period(&values, min_confirm);

    let mut t = Table::new(&["n", "value"]);
    for (n, v) in values.iter().enumerate() {
        t.row(vec![n.to_string(), v.to_string()]);
    }
    t.json = json!({
        "schema_version": SCHEMA_VERSION,
        "ruleset": rules,
        "operator": op,
        "tail": tail,
        "n_max": n_max,
        "min_confirm": min_confirm,
        "values": values,
        "period": period,
    });
    let mut text: String = t.rows.iter().map(|r| format!("{} {}\n", r[0], r[1])).collect();
    text.push_str(&match period {
        Some(p) => format!(
            "period: N={} p={} ({} confirmations)\n",
            p.preperiod, p.period, p.confirmations
        ),
        None => "period: none detected\n".to_string(),
    });
    t.text = text;
    Ok(t)
}

fn cmd_period_compare(
    battery: &[OctalRuleset],
    n_max: u32,
    tail: &[u32],
    min_confirm: usize,
) -> Result<Table, Failure> {
    if battery.is_empty() {
        return Err(Failure::Usage("period-compare needs at least one --rules".into()));
    }
    let mut t = Table::new(&[
        "ruleset",
        "operator",
        "preperiod",
        "period",
        "confirmations",
        "reference_period",
        "all_periods_equal",
    ]);
    let mut reports = Vec::new();
    let mut text = String::new();
    for rules in battery {
        let rep = conjecture_report(rules, tail, n_max, min_confirm)?;
        let reference = rep.reference_period.map_or("none".to_string(), |p| p.to_string());
        text.push_str(&format!(
            "{}  reference={}  all_periods_equal={}\n",
            rules, reference, rep.all_periods_equal
        ));
        for o in &rep.operators {
            let (pre, per, conf) = match o.period {
                Some(p) => (p.preperiod.to_string(), p.period.to_string(), p.confirmations.to_string()),
                None => Default::default(),
            };
            let status = match (&o.skipped, o.period) {
                (Some(why), _) => format!("skipped ({why})"),
                (None, Some(p)) => format!("N={} p={}", p.preperiod, p.period),
                (None, None) => "no period".to_string(),
            };
            text.push_str(&format!("  {:<12} {}\n", o.operator.to_string(), status));
            t.row(vec![
                rules.to_string(),
                o.operator.short_name().to_string(),
                pre,
                per,
                conf,
                reference.clone(),
                rep.all_periods_equal.to_string(),
            ]);
        }
        reports.push(rep);
    }
    t.json = json!({
        "schema_version": SCHEMA_VERSION,
        "n_max": n_max,
        "min_confirm": min_confirm,
        "tail": tail,
        "reports": reports,
    });
    t.text = text;
    Ok(t)
}

fn cmd_verify(seed: u64, rule: RuleArg) -> (Table, bool) {
    let opts = VerifyOptions {
        conjunctive_rule: match rule {
            RuleArg::Available => ConjunctiveRule::Available,
            RuleArg::Literal => ConjunctiveRule::Literal,
        },
        seed,
    };
    let report = run_all(&opts);
    let mut t = Table::new(&["check", "passed", "cases", "detail"]);
    let mut text = String::new();
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
        t.row(vec![c.name.to_string(), c.passed.to_string(), c.cases.to_string(), c.detail.clone()]);
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", report.checks.len()));
    t.text = text;
    t.json = serde_json::to_value(&report).expect("report serializes");
    (t, report.passed)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut format = cli.format;
    let (table, ok) = match cli.command {
        Command::Eval { games, file } => {
            let games = read_games(&games, file.as_ref())?;
            if games.is_empty() {
                return Err(Failure::Usage("no games given".into()));
            }
            (cmd_eval(&games), true)
        }
        Command::Sum { op, games } => (cmd_sum(op, &read_games(&games, None)?)?, true),
        Command::Gs {
            rules,
            op,
            n_max,
            tail,
            min_confirm,
        } => (cmd_gs(&rules, op, n_max, &tail, min_confirm)?, true),
        Command::PeriodCompare {
            rules,
            n_max,
            tail,
            min_confirm,
        } => (cmd_period_compare(&rules, n_max, &tail, min_confirm)?, true),
        Command::VerifyPaper {
            json,
            seed,
            conjunctive_rule,
        } => {
            if json {
                format = Format::Json;
            }
            cmd_verify(seed, conjunctive_rule)
        }
    };
    output::emit(&table, format, cli.output.as_deref()).map_err(Failure::Usage)?;
    if ok {
        Ok(())
    } else {
        let failed: Vec<&str> = table
            .rows
            .iter()
            .filter(|r| r[1] == "false")
            .map(|r| r[0].as_str())
            .collect();
        Err(Failure::Check(format!("failed checks: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("scoreplay: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("scoreplay: {msg}");
            ExitCode::from(2)
        }
    }
}
