//! Exhaustive search for basis-diagonal gradings.
//!
//! Writing `a_i = -w_i >= 1`, homogeneity is the linear system
//! `a_i + a_j = a_k` over the nonzero bracket support. Variables that never
//! occur as a bracket target are free; everything else is derived from them
//! by propagation, with branching only when the system is cyclic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::grading::{graded_betti, is_homogeneous, ConditionChecker, LemmaChecker, Mode, WeightAssignment};

/// Weights range over `{-1, ..., -bound}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightConstraintSystem {
    pub dim: usize,
    pub bound: u64,
    /// `(i, j, k)`, 0-based: `w_i + w_j = w_k`.
    pub equations: Vec<(usize, usize, usize)>,
    /// Indices that never occur as a bracket target.
    pub free: Vec<usize>,
}

pub fn constraint_system(l: &LieAlgebra, bound: i64) -> Result<WeightConstraintSystem> {
    if bound < 1 {
        return Err(Error::InvalidInput(format!("weight bound must be at least 1, got {bound}")));
    }
    let report = l.validate();
    if !report.ok {
        return Err(Error::Jacobi {
            triples: report
                .violations
                .iter()
                .map(|v| (v.triple.0 + 1, v.triple.1 + 1, v.triple.2 + 1))
                .collect(),
        });
    }
    let mut equations: Vec<_> = l.entries().iter().map(|e| (e.i, e.j, e.k)).collect();
    equations.sort_unstable();
    equations.dedup();
    let mut is_target = vec![false; l.dim()];
    for &(_, _, k) in &equations {
        is_target[k] = true;
    }
    Ok(WeightConstraintSystem {
        dim: l.dim(),
        bound: bound as u64,
        equations,
        free: (0..l.dim()).filter(|&i| !is_target[i]).collect(),
    })
}

type Partial = Vec<Option<u64>>;

impl WeightConstraintSystem {
    /// Fills in every variable forced by an equation with one unknown.
    /// Returns `false` on a contradiction or an out-of-range value.
    fn propagate(&self, a: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for &(i, j, k) in &self.equations {
                let derived = match (a[i], a[j], a[k]) {
                    (Some(x), Some(y), Some(z)) => {
                        if x + y != z {
                            return false;
                        }
                        continue;
                    }
                    (Some(x), Some(y), None) => (k, x as i64 + y as i64),
                    (Some(x), None, Some(z)) => (j, z as i64 - x as i64),
                    (None, Some(y), Some(z)) => (i, z as i64 - y as i64),
                    _ => continue,
                };
                let (var, value) = derived;
                if value < 1 || value as u64 > self.bound {
                    return false;
                }
                a[var] = Some(value as u64);
                changed = true;
            }
            if !changed {
                return true;
            }
        }
    }

    fn next_branch(&self, a: &Partial) -> Option<usize> {
        self.free
            .iter()
            .copied()
            .find(|&i| a[i].is_none())
            .or_else(|| (0..self.dim).find(|&i| a[i].is_none()))
    }

    fn domain(&self, var: usize, free_max: u64) -> std::ops::RangeInclusive<u64> {
        if self.free.binary_search(&var).is_ok() {
            1..=free_max.min(self.bound)
        } else {
            1..=self.bound
        }
    }

    fn dfs(&self, mut a: Partial, free_max: u64, out: &mut Vec<WeightAssignment>) {
        if !self.propagate(&mut a) {
            return;
        }
        match self.next_branch(&a) {
            None => {
                let weights = a.iter().map(|x| -(x.expect("assigned") as i64)).collect();
                out.push(WeightAssignment::new(weights).expect("weights are negative"));
            }
            Some(var) => {
                for v in self.domain(var, free_max) {
                    let mut b = a.clone();
                    b[var] = Some(v);
                    self.dfs(b, free_max, out);
                }
            }
        }
    }

    /// All solutions with free variables in `1..=free_max`, sorted by the
    /// absolute-value vector. The free-variable space is split across rayon
    /// workers and the results re-sorted.
    pub fn solutions(&self, free_max: u64) -> Vec<WeightAssignment> {
        let seeds: Vec<Partial> = match self.free.first() {
            Some(&first) => self
                .domain(first, free_max)
                .map(|v| {
                    let mut a = vec![None; self.dim];
                    a[first] = Some(v);
                    a
                })
                .collect(),
            None => vec![vec![None; self.dim]],
        };
        let mut out: Vec<WeightAssignment> = seeds
            .into_par_iter()
            .flat_map_iter(|seed| {
                let mut local = Vec::new();
                self.dfs(seed, free_max, &mut local);
                local
            })
            .collect();
        out.sort_by_cached_key(WeightAssignment::abs_key);
        out.dedup();
        out
    }
}

/// Every homogeneous assignment with weights in `{-1, ..., -bound}`, in
/// ascending lexicographic order of `(|w_1|, ..., |w_n|)`.
pub fn enumerate_gradings(l: &LieAlgebra, bound: i64) -> Result<Vec<WeightAssignment>> {
    let system = constraint_system(l, bound)?;
    Ok(system.solutions(system.bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlarmKind {
    /// A passing grading on an algebra where none can exist.
    Theorem,
    /// A grading violating a structural property every grading has.
    Lemma,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardAlarm {
    pub kind: AlarmKind,
    pub algebra: String,
    pub weights: WeightAssignment,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub mode: Mode,
    pub bound: u64,
    pub found: Vec<WeightAssignment>,
    /// The whole search space within the bound was examined.
    pub exhausted: bool,
    pub alarms: Vec<GuardAlarm>,
}

impl SearchOutcome {
    pub fn first(&self) -> Option<&WeightAssignment> {
        self.found.first()
    }
}

/// Printed with every negative search result.
pub fn none_found_caveat(bound: u64) -> String {
    format!(
        "no grading found (exhausted, basis-diagonal, bound {bound}); this does not rule out gradings in another basis or with larger weights"
    )
}

/// Cross-checks a grading that passed (W) and (H). An algebra that is
/// p-filiform with `dim >= p + 3` has no such grading, so any call that gets
/// here for one indicates a bug; the extra relations on `n_{-1}`, `n_{-2}`
/// and `H^1_2` are listed as details when `p >= 2` and `dim >= 5`.
///
/// The caller is trusted to pass an assignment that satisfied both
/// conditions; this is not re-checked so that the guard can be exercised.
pub fn theorem_guard(l: &LieAlgebra, w: &WeightAssignment) -> Result<Option<GuardAlarm>> {
    let Some(p) = l.p_filiform_degree()? else {
        return Ok(None);
    };
    let n = l.dim();
    if n < p + 3 {
        return Ok(None);
    }
    let mut details = Vec::new();
    if p >= 2 && n >= 5 {
        let comps = w.component_dims();
        let n1 = comps.get(&1).copied().unwrap_or(0);
        let n2 = comps.get(&2).copied().unwrap_or(0);
        let h1_2 = graded_betti(l, w, 1)?.get(2);
        if n1 == 0 {
            details.push("n_{-1} = 0".to_string());
        }
        if n2 == 0 {
            details.push("n_{-2} = 0".to_string());
        }
        if n2 != h1_2 + 1 {
            details.push(format!("dim n_{{-2}} = {n2} but dim H^1_2 + 1 = {}", h1_2 + 1));
        }
    }
    Ok(Some(GuardAlarm {
        kind: AlarmKind::Theorem,
        algebra: l.name().to_string(),
        weights: w.clone(),
        message: format!("{p}-filiform algebra of dimension {n} >= {} admits a grading passing W and H", p + 3),
        details,
    }))
}

/// Searches gradings passing the conditions of `mode`.
///
/// Free generators `x_i` are closed 1-forms and never exact, so each one is a
/// nonzero class of `H^1` in degree `|w_i|`; (W) therefore forces
/// `|w_i| <= 2` on them and the search only enumerates that slice. In WH mode
/// assignments with an odd-dimensional odd-degree component are skipped
/// before any cohomology is computed.
///
/// With `first_only` the enumeration-order first hit is returned. Every
/// examined grading is run through the structural lemma checks and every hit
/// through [`theorem_guard`]; failures of either become alarms.
pub fn search(l: &LieAlgebra, bound: i64, mode: Mode, first_only: bool) -> Result<SearchOutcome> {
    let system = constraint_system(l, bound)?;
    let checker = ConditionChecker::new(l)?;
    let lemmas = LemmaChecker::new(l)?;
    let candidates = system.solutions(2);

    let evaluate = |w: &WeightAssignment| -> Result<(bool, Vec<GuardAlarm>)> {
        let mut alarms = Vec::new();
        let lemma = lemmas.check(w)?;
        if !lemma.ok {
            alarms.push(GuardAlarm {
                kind: AlarmKind::Lemma,
                algebra: l.name().to_string(),
                weights: w.clone(),
                message: "grading violates the length bound or the lower central series inclusions".into(),
                details: vec![format!("{lemma:?}")],
            });
        }
        if mode == Mode::Wh && w.component_dims().iter().any(|(k, d)| k % 2 == 1 && d % 2 == 1) {
            return Ok((false, alarms));
        }
        let report = checker.check(w)?;
        let pass = report.passes(mode);
        if pass && report.passes(Mode::Wh) {
            alarms.extend(theorem_guard(l, w)?);
        }
        Ok((pass, alarms))
    };

    let evaluated: Vec<(usize, bool, Vec<GuardAlarm>)> = if first_only {
        let hit = candidates
            .par_iter()
            .enumerate()
            .map(|(idx, w)| evaluate(w).map(|(pass, alarms)| (idx, pass, alarms)))
            .find_first(|r| r.as_ref().map_or(true, |(_, pass, alarms)| *pass || !alarms.is_empty()))
            .transpose()?;
        // alarms from candidates before the first hit would be lost by
        // `find_first`, so re-walk that prefix serially when needed
        match hit {
            Some((idx, pass, alarms)) if !pass => {
                let mut out = vec![(idx, false, alarms)];
                for (j, w) in candidates.iter().enumerate().skip(idx + 1) {
                    let (p, a) = evaluate(w)?;
                    if p || !a.is_empty() {
                        out.push((j, p, a));
                    }
                    if p {
                        break;
                    }
                }
                out
            }
            Some(h) => vec![h],
            None => Vec::new(),
        }
    } else {
        candidates
            .par_iter()
            .enumerate()
            .map(|(idx, w)| evaluate(w).map(|(pass, alarms)| (idx, pass, alarms)))
            .collect::<Result<Vec<_>>>()?
    };

    let mut found = Vec::new();
    let mut alarms = Vec::new();
    for (idx, pass, a) in evaluated {
        if pass {
            found.push(candidates[idx].clone());
        }
        alarms.extend(a);
    }
    let exhausted = !(first_only && !found.is_empty());
    Ok(SearchOutcome {
        mode,
        bound: system.bound,
        found,
        exhausted,
        alarms,
    })
}

/// First grading in enumeration order passing the conditions of `mode`.
pub fn find_grading(l: &LieAlgebra, bound: i64, mode: Mode) -> Result<SearchOutcome> {
    search(l, bound, mode, true)
}

/// Re-checks homogeneity independently of the propagation.
pub fn verify_homogeneous(l: &LieAlgebra, found: &[WeightAssignment]) -> Result<bool> {
    for w in found {
        if !is_homogeneous(l, w)?.homogeneous {
            return Ok(false);
        }
    }
    Ok(true)
}
