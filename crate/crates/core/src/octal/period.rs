use serde::Serialize;

use super::{GsSolver, Heap, OctalRuleset};
use crate::error::Result;
use crate::ops::OperatorKind;
use crate::score::Score;

/// Detected eventual period of a finite table. This is evidence only: a
/// finite prefix never proves periodicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub preperiod: usize,
    pub period: usize,
    /// Indices `n >= preperiod` at which `values[n + period] == values[n]`
    /// was checked.
    pub confirmations: usize,
}

/// Smallest period `p`, and for it the smallest preperiod `N`, such that
/// `values[n + p] == values[n]` for every `N <= n < len - p`, with at least
/// `min_confirm` (and at least one) checked indices.
pub fn find_period(values: &[Score], min_confirm: usize) -> Option<PeriodReport> {
    let len = values.len();
    for p in 1..len {
        let preperiod = (0..len - p)
            .rev()
            .find(|&n| values[n + p] != values[n])
            .map_or(0, |n| n + 1);
        let confirmations = len - p - preperiod;
        if confirmations >= min_confirm.max(1) {
            return Some(PeriodReport {
                preperiod,
                period: p,
                confirmations,
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorPeriod {
    pub operator: OperatorKind,
    /// `None` when the table could not be computed for this operator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Score>>,
    pub period: Option<PeriodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub ruleset: OctalRuleset,
    pub tail: Vec<u32>,
    pub n_max: u32,
    pub min_confirm: usize,
    /// `2k` for the largest digit index `k` whose digit is not 0 or 1.
    pub reference_period: Option<usize>,
    pub operators: Vec<OperatorPeriod>,
    /// True when every operator that was evaluated produced a period and all
    /// of them coincide.
    pub all_periods_equal: bool,
}

/// Tables of `G_s(n ⊕ tail)` under all four operators, with period
/// detection on each. Rulesets that split heaps skip the sequential join.
pub fn conjecture_report(
    rules: &OctalRuleset,
    tail: &[u32],
    n_max: u32,
    min_confirm: usize,
) -> Result<ConjectureReport> {
    let mut solver = GsSolver::new();
    let id = solver.add_ruleset(rules.clone());
    let tail_heaps: Vec<Heap> = tail.iter().map(|s| Heap::new(id, *s)).collect();

    let mut operators = Vec::new();
    for op in OperatorKind::ALL {
        let entry = match solver.gs_table(op, id, n_max, &tail_heaps) {
            Ok(values) => OperatorPeriod {
                operator: op,
                period: find_period(&values, min_confirm),
                values: Some(values),
                skipped: None,
            },
            Err(e) => OperatorPeriod {
                operator: op,
                values: None,
                period: None,
                skipped: Some(e.to_string()),
            },
        };
        operators.push(entry);
    }

    let evaluated: Vec<&OperatorPeriod> = operators.iter().filter(|o| o.skipped.is_none()).collect();
    let all_periods_equal = evaluated.iter().all(|o| o.period.is_some())
        && evaluated
            .windows(2)
            .all(|w| w[0].period.map(|p| p.period) == w[1].period.map(|p| p.period));

    Ok(ConjectureReport {
        ruleset: rules.clone(),
        tail: tail.to_vec(),
        n_max,
        min_confirm,
        reference_period: rules.reference_period(),
        operators,
        all_periods_equal,
    })
}
