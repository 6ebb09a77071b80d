//! Acceptance harness: runs a group of checks against a wall-clock budget
//! and prints one PASS/FAIL line for it.

use std::io::Write;
use std::time::{Duration, Instant};

use scoreplay::verify::Check;

pub struct Verdict {
    pub passed: bool,
    pub line: String,
}

/// Runs `checks`, times them and renders the verdict line.
pub fn judge(label: &str, budget: Duration, checks: impl FnOnce() -> Vec<Check>) -> Verdict {
    let start = Instant::now();
    let checks = checks();
    let elapsed = start.elapsed();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    let in_time = elapsed <= budget;
    let passed = failed.is_empty() && in_time;
    let cases: usize = checks.iter().map(|c| c.cases).sum();
    let mut line = format!(
        "[acceptance] {} {label} ({cases} cases, {:.2}s of {}s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for f in &failed {
        line.push_str(&format!("\n    {f}"));
    }
    if !in_time {
        line.push_str("\n    over time budget");
    }
    Verdict { passed, line }
}

/// [`judge`], printing the line straight to stderr so that it shows even
/// when test output is captured, then failing the test if needed.
pub fn report(label: &str, budget: Duration, checks: impl FnOnce() -> Vec<Check>) {
    let v = judge(label, budget, checks);
    let _ = writeln!(std::io::stderr(), "{}", v.line);
    assert!(v.passed, "{}", v.line);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(passed: bool) -> Check {
        Check {
            name: "c",
            passed,
            cases: 3,
            detail: "why".into(),
        }
    }

    #[test]
    fn verdicts() {
        let v = judge("x", Duration::from_secs(5), || vec![check(true), check(true)]);
        assert!(v.passed);
        assert!(v.line.starts_with("[acceptance] PASS x (6 cases"));
        let v = judge("x", Duration::from_secs(5), || vec![check(true), check(false)]);
        assert!(!v.passed);
        assert!(v.line.contains("\n    c: why"));
        let v = judge("x", Duration::ZERO, || {
            std::thread::sleep(Duration::from_millis(2));
            vec![check(true)]
        });
        assert!(!v.passed);
        assert!(v.line.ends_with("over time budget"));
    }
}
