//! Recomputes the (W) and (W)+(H) verdict table for one dimension and
//! compares it against the tabulated verdicts and gradings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{entries_of_dim, CatalogEntry, Expected, Verdict};
use crate::error::{Error, Result};
use crate::grading::{check_conditions, Mode, WeightAssignment};
use crate::search::{find_grading, none_found_caveat, GuardAlarm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub verdict: Verdict,
    pub grading: Option<WeightAssignment>,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Match,
    Mismatch,
    SourceUnknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingCheck {
    pub weights: WeightAssignment,
    pub homogeneous: bool,
    pub w_pass: Option<bool>,
    pub h_pass: Option<bool>,
    /// W passes and H matches the tabulated WH verdict.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub dim: usize,
    pub p_filiform: Option<usize>,
    pub bound: u64,
    pub w: Cell,
    pub wh: Cell,
    pub expected: Expected,
    pub expected_grading: Option<GradingCheck>,
    pub agreement: Agreement,
    pub failures: Vec<String>,
    pub alarms: Vec<GuardAlarm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub dim: usize,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn failures(&self) -> impl Iterator<Item = (&str, &str)> {
        self.rows
            .iter()
            .flat_map(|r| r.failures.iter().map(move |f| (r.name.as_str(), f.as_str())))
    }

    pub fn alarm_count(&self) -> usize {
        self.rows.iter().map(|r| r.alarms.len()).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none() && self.alarm_count() == 0
    }
}

fn cell(found: Option<&WeightAssignment>, bound: u64) -> Cell {
    match found {
        Some(w) => Cell {
            verdict: Verdict::Yes,
            grading: Some(w.clone()),
            note: format!("found {w}"),
        },
        None => Cell {
            verdict: Verdict::No,
            grading: None,
            note: none_found_caveat(bound),
        },
    }
}

fn row(entry: &CatalogEntry, bound: Option<i64>) -> Result<TableRow> {
    let l = &entry.algebra;
    let bound = bound.unwrap_or(2 * l.dim() as i64);
    let mut failures = Vec::new();
    let mut alarms = Vec::new();

    let mut cells = Vec::with_capacity(2);
    for mode in [Mode::W, Mode::Wh] {
        let outcome = find_grading(l, bound, mode)?;
        if let Some(w) = outcome.first() {
            // re-verify independently of the search
            if !check_conditions(l, w)?.passes(mode) {
                failures.push(format!("{mode} grading {w} does not re-verify"));
            }
        }
        alarms.extend(outcome.alarms.iter().cloned());
        cells.push(cell(outcome.first(), outcome.bound));
    }
    let wh = cells.pop().expect("two cells");
    let w = cells.pop().expect("two cells");

    let expected = entry.expected.clone();
    let mut mismatch = false;
    for (label, tabulated, computed) in [("W", expected.w, w.verdict), ("WH", expected.wh, wh.verdict)] {
        if tabulated != Verdict::Unknown && tabulated != computed {
            mismatch = true;
            failures.push(format!("{label}: tabulated {tabulated}, computed {computed}"));
        }
    }

    let expected_grading = match &expected.grading {
        Some(g) => {
            let r = check_conditions(l, g)?;
            let consistent = r.w_pass == Some(true) && r.h_pass == Some(expected.wh == Verdict::Yes);
            if !consistent {
                failures.push(format!(
                    "tabulated grading {g}: homogeneous {}, W {:?}, H {:?}",
                    r.homogeneous, r.w_pass, r.h_pass
                ));
            }
            Some(GradingCheck {
                weights: g.clone(),
                homogeneous: r.homogeneous,
                w_pass: r.w_pass,
                h_pass: r.h_pass,
                consistent,
            })
        }
        None => None,
    };

    let agreement = if mismatch {
        Agreement::Mismatch
    } else if expected.w == Verdict::Unknown {
        Agreement::SourceUnknown
    } else {
        Agreement::Match
    };

    Ok(TableRow {
        name: entry.name.clone(),
        dim: l.dim(),
        p_filiform: l.p_filiform_degree()?,
        bound: bound as u64,
        w,
        wh,
        expected,
        expected_grading,
        agreement,
        failures,
        alarms,
    })
}

/// One row per catalog entry of dimension `dim`, in catalog order. `bound`
/// defaults to twice the dimension.
pub fn reproduce_table(dim: usize, bound: Option<i64>) -> Result<TableReport> {
    if !(1..=6).contains(&dim) {
        return Err(Error::InvalidInput(format!("table dimension must be 1..=6, got {dim}")));
    }
    let entries: Vec<_> = entries_of_dim(dim).collect();
    let rows = entries.par_iter().map(|e| row(e, bound)).collect::<Result<Vec<_>>>()?;
    Ok(TableReport { dim, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_three() {
        let t = reproduce_table(3, None).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.ok());
        assert!(t.rows.iter().all(|r| r.agreement == Agreement::Match));
    }

    #[test]
    fn dimension_five_wh_column() {
        let t = reproduce_table(5, None).unwrap();
        let yes: Vec<_> = t.rows.iter().filter(|r| r.wh.verdict == Verdict::Yes).map(|r| r.name.as_str()).collect();
        assert_eq!(yes, vec!["L5_1", "L5_2", "L5_4", "L5_9"]);
        assert!(t.ok(), "{:?}", t.failures().collect::<Vec<_>>());
        let l56 = t.rows.iter().find(|r| r.name == "L5_6").unwrap();
        assert_eq!(l56.agreement, Agreement::SourceUnknown);
        assert!(l56.wh.note.contains("basis-diagonal"));
    }

    #[test]
    fn dimension_out_of_range() {
        assert!(reproduce_table(0, None).is_err());
        assert!(reproduce_table(7, None).is_err());
    }
}
