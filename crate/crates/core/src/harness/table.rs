//! Golden-table reproduction with per-column significant-digit tolerances.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::study::{run_study, ConvergenceRow, StudyConfig, TABLE_LADDER};
use crate::model::RuleTag;

/// A published row: `i, N, err, E_N, c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenRow {
    pub index: usize,
    pub n_terms: usize,
    pub err: f64,
    pub envelope: f64,
    pub ratio: f64,
}

const fn golden(index: usize, n_terms: usize, err: f64, envelope: f64, ratio: f64) -> GoldenRow {
    GoldenRow {
        index,
        n_terms,
        err,
        envelope,
        ratio,
    }
}

/// `ex2` with the `w-exact` rule.
pub const EX2_GOLDEN: [GoldenRow; 10] = [
    golden(1, 2, 6.373770e-02, 3.641222e-02, 1.750448),
    golden(2, 4, 4.011175e-02, 1.904281e-02, 2.106399),
    golden(3, 8, 1.019463e-02, 8.186076e-03, 1.245362),
    golden(4, 16, 3.765622e-03, 2.948999e-03, 1.276915),
    golden(5, 32, 1.368552e-03, 9.160491e-04, 1.493972),
    golden(6, 64, 1.777309e-04, 2.523604e-04, 0.704274),
    golden(7, 128, 7.216260e-05, 6.312895e-05, 1.143098),
    golden(8, 256, 7.698800e-06, 1.460731e-05, 0.527051),
    golden(9, 512, 2.505400e-06, 3.171023e-06, 0.790092),
    golden(10, 1024, 3.281000e-07, 6.528835e-07, 0.502540),
];

/// Significant digits required per column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitTolerances {
    pub err: u32,
    pub envelope: u32,
    pub ratio: u32,
}

impl Default for DigitTolerances {
    fn default() -> Self {
        Self {
            err: 3,
            envelope: 6,
            ratio: 3,
        }
    }
}

/// `true` when `computed` agrees with `golden` to `digits` significant digits,
/// i.e. `|computed - golden| <= 0.5 * 10^(1 - digits) * |golden|`.
pub fn agrees_to_digits(computed: f64, golden: f64, digits: u32) -> bool {
    let tol = 0.5 * 10f64.powi(1 - digits as i32) * golden.abs();
    (computed - golden).abs() <= tol
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellCheck {
    pub computed: f64,
    pub golden: f64,
    pub digits: u32,
    pub pass: bool,
}

impl CellCheck {
    fn new(computed: f64, golden: f64, digits: u32) -> Self {
        Self {
            computed,
            golden,
            digits,
            pass: agrees_to_digits(computed, golden, digits),
        }
    }

    pub fn relative_deviation(&self) -> f64 {
        (self.computed - self.golden).abs() / self.golden.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowCheck {
    pub index: usize,
    pub n_terms: usize,
    pub step: f64,
    pub err: CellCheck,
    pub envelope: CellCheck,
    pub ratio: CellCheck,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.err.pass && self.envelope.pass && self.ratio.pass
    }
}

/// Cell-by-cell comparison; failures never abort the remaining rows.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    /// Golden rows with no computed counterpart (and vice versa), by `N`.
    pub unmatched: Vec<usize>,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.unmatched.is_empty() && self.rows.iter().all(RowCheck::pass)
    }

    pub fn passing_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.pass()).count()
    }

    pub fn failed_cells(&self) -> usize {
        self.rows
            .iter()
            .map(|r| [r.err.pass, r.envelope.pass, r.ratio.pass].iter().filter(|p| !**p).count())
            .sum()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |c: &CellCheck| if c.pass { ' ' } else { '*' };
        writeln!(
            f,
            "{:>3} {:>5} {:>13} {:>13} {:>13} {:>13} {:>10} {:>10}  status",
            "i", "N", "h", "err", "err(ref)", "E_N", "c", "c(ref)"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>5} {:>13.6e} {:>12.6e}{} {:>13.6e} {:>12.6e}{} {:>9.6}{} {:>10.6}  {}",
                r.index,
                r.n_terms,
                r.step,
                r.err.computed,
                mark(&r.err),
                r.err.golden,
                r.envelope.computed,
                mark(&r.envelope),
                r.ratio.computed,
                mark(&r.ratio),
                r.ratio.golden,
                if r.pass() { "pass" } else { "FAIL" }
            )?;
        }
        for n in &self.unmatched {
            writeln!(f, "unmatched row N = {n}")?;
        }
        write!(f, "{}/{} rows pass", self.passing_rows(), self.rows.len() + self.unmatched.len())
    }
}

/// Compares computed rows with golden rows matched by `N`.
pub fn compare_table(rows: &[ConvergenceRow], golden: &[GoldenRow], tol: DigitTolerances) -> TableReport {
    let mut checks = Vec::with_capacity(golden.len());
    let mut unmatched = Vec::new();
    for g in golden {
        match rows.iter().find(|r| r.n_terms == g.n_terms) {
            Some(r) => checks.push(RowCheck {
                index: g.index,
                n_terms: g.n_terms,
                step: r.step,
                err: CellCheck::new(r.observed_err, g.err, tol.err),
                envelope: CellCheck::new(r.envelope, g.envelope, tol.envelope),
                ratio: CellCheck::new(r.ratio, g.ratio, tol.ratio),
            }),
            None => unmatched.push(g.n_terms),
        }
    }
    unmatched.extend(
        rows.iter()
            .filter(|r| !golden.iter().any(|g| g.n_terms == r.n_terms))
            .map(|r| r.n_terms),
    );
    TableReport {
        rows: checks,
        unmatched,
    }
}

/// Tables that can be reproduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// `ex2`, `w-exact` rule.
    Ex2WExact,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex2" => Ok(TableId::Ex2WExact),
            _ => Err(Error::InvalidConfig(format!("unknown table `{s}`"))),
        }
    }
}

impl TableId {
    pub fn config(&self) -> StudyConfig {
        match self {
            TableId::Ex2WExact => StudyConfig::new("ex2", RuleTag::WExact, TABLE_LADDER.to_vec()),
        }
    }

    pub fn golden(&self) -> &'static [GoldenRow] {
        match self {
            TableId::Ex2WExact => &EX2_GOLDEN,
        }
    }
}

/// Runs the canonical configuration and diffs it against the golden values.
pub fn reproduce_table(which: TableId) -> Result<TableReport> {
    let rows = run_study(&which.config())?;
    Ok(compare_table(&rows, which.golden(), DigitTolerances::default()))
}
