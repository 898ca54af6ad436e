//! Basis-diagonal negative gradings and the weight/parity conditions on the
//! induced grading of `H^1` and `H^2`.
//!
//! A weight assignment gives every basis vector `X_i` a degree `w_i <= -1`.
//! The dual form `x_{i_1} ∧ ... ∧ x_{i_j}` then sits in cochain degree
//! `-(w_{i_1} + ... + w_{i_j}) > 0`, and the differential preserves it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, SeriesReport};
use crate::cochain::Differential;
use crate::error::{Error, Result};
use crate::linalg::rank_of_sparse;

/// Degree of each basis vector; every entry is `<= -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightAssignment(Vec<i64>);

impl WeightAssignment {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("weight assignment is empty".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| **w >= 0) {
            return Err(Error::InvalidInput(format!(
                "weight {w} of basis vector {} is not negative",
                i + 1
            )));
        }
        Ok(Self(weights))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cochain degree of the dual basis form `x_i`.
    pub fn dual_degree(&self, i: usize) -> u32 {
        (-self.0[i]) as u32
    }

    /// Absolute-value vector, the key of the canonical enumeration order.
    pub fn abs_key(&self) -> Vec<u64> {
        self.0.iter().map(|w| w.unsigned_abs()).collect()
    }

    /// Every weight doubled. Odd-degree components become empty.
    pub fn doubled(&self) -> Self {
        Self(self.0.iter().map(|w| 2 * w).collect())
    }

    /// Extends to `n ⊕ K^m`, placing the new central generators at `weight`.
    pub fn extended(&self, m: usize, weight: i64) -> Result<Self> {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(weight, m));
        Self::new(v)
    }

    /// `k -> dim n_{-k}` for occupied degrees.
    pub fn component_dims(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.0.len() {
            *out.entry(self.dual_degree(i)).or_insert(0) += 1;
        }
        out
    }

    /// Number of occupied degrees.
    pub fn grading_length(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    fn check_len(&self, l: &LieAlgebra) -> Result<()> {
        if self.len() != l.dim() {
            return Err(Error::InvalidInput(format!(
                "weight assignment has {} entries but the algebra has dimension {}",
                self.len(),
                l.dim()
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<i64>> for WeightAssignment {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<WeightAssignment> for Vec<i64> {
    fn from(w: WeightAssignment) -> Self {
        w.0
    }
}

impl FromStr for WeightAssignment {
    type Err = Error;

    /// Comma-separated integers, e.g. `-1,-1,-2`.
    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("weight {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }
}

impl fmt::Display for WeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Search/verification mode: both conditions, or the weight condition only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "wh")]
    Wh,
    #[serde(rename = "w")]
    W,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wh" => Ok(Mode::Wh),
            "w" => Ok(Mode::W),
            other => Err(Error::Parse(format!("unknown mode {other:?}, expected wh or w"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Wh => "wh",
            Mode::W => "w",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    /// 0-based `(i, j, k)` of bracket entries with `w_i + w_j != w_k`.
    pub violations: Vec<(usize, usize, usize)>,
}

pub fn is_homogeneous(l: &LieAlgebra, w: &WeightAssignment) -> Result<HomogeneityReport> {
    w.check_len(l)?;
    let ws = w.weights();
    let violations: Vec<_> = l
        .entries()
        .iter()
        .filter(|e| ws[e.i] + ws[e.j] != ws[e.k])
        .map(|e| (e.i, e.j, e.k))
        .collect();
    Ok(HomogeneityReport {
        homogeneous: violations.is_empty(),
        violations,
    })
}

/// `k -> dim H^j_k`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBettiProfile {
    pub j: usize,
    pub by_degree: BTreeMap<u32, usize>,
}

impl GradedBettiProfile {
    pub fn total(&self) -> usize {
        self.by_degree.values().sum()
    }

    pub fn get(&self, k: u32) -> usize {
        self.by_degree.get(&k).copied().unwrap_or(0)
    }
}

fn form_degree(w: &WeightAssignment, form: &[usize]) -> u32 {
    form.iter().map(|&i| w.dual_degree(i)).sum()
}

/// Ranks of the degree blocks of a differential. Fails if some column leaves
/// its degree, which only happens for non-homogeneous weights.
fn block_ranks(d: &Differential, w: &WeightAssignment) -> Result<BTreeMap<u32, usize>> {
    let target_degrees: Vec<u32> = d.targets.iter().map(|f| form_degree(w, f.indices())).collect();
    let mut blocks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, src) in d.sources.iter().enumerate() {
        let deg = form_degree(w, src.indices());
        if let Some((r, _)) = d.columns[c].iter().find(|(r, _)| target_degrees[*r] != deg) {
            return Err(Error::Precondition(format!(
                "differential maps {src} (degree {deg}) onto {} (degree {}); weights are not a grading",
                d.targets[*r], target_degrees[*r]
            )));
        }
        blocks.entry(deg).or_default().push(c);
    }
    Ok(blocks
        .into_iter()
        .map(|(deg, cols)| {
            let rank = rank_of_sparse(d.targets.len(), cols.iter().map(|&c| d.columns[c].clone()));
            (deg, rank)
        })
        .collect())
}

fn profile_from(j: usize, w: &WeightAssignment, d_prev: &Differential, d_here: &Differential) -> Result<GradedBettiProfile> {
    let image = block_ranks(d_prev, w)?;
    let outgoing = block_ranks(d_here, w)?;
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for f in &d_here.sources {
        *sizes.entry(form_degree(w, f.indices())).or_insert(0) += 1;
    }
    let by_degree = sizes
        .into_iter()
        .map(|(k, size)| {
            let kernel = size - outgoing.get(&k).copied().unwrap_or(0);
            (k, kernel - image.get(&k).copied().unwrap_or(0))
        })
        .filter(|(_, dim)| *dim > 0)
        .collect();
    Ok(GradedBettiProfile { j, by_degree })
}

/// Induced grading on `H^j`. Requires a homogeneous weight assignment.
pub fn graded_betti(l: &LieAlgebra, w: &WeightAssignment, j: usize) -> Result<GradedBettiProfile> {
    w.check_len(l)?;
    if j == 0 {
        return Err(Error::InvalidInput("graded Betti numbers start at degree 1".into()));
    }
    let h = is_homogeneous(l, w)?;
    if !h.homogeneous {
        return Err(Error::Precondition(format!(
            "weights {w} are not a grading; violated brackets (1-based) {:?}",
            one_based(&h.violations)
        )));
    }
    if j > l.dim() {
        return Ok(GradedBettiProfile {
            j,
            by_degree: BTreeMap::new(),
        });
    }
    let d_prev = Differential::new(l, j - 1)?;
    let d_here = Differential::new(l, j)?;
    profile_from(j, w, &d_prev, &d_here)
}

pub(crate) fn one_based(v: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize)> {
    v.iter().map(|&(i, j, k)| (i + 1, j + 1, k + 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightWitness {
    pub j: usize,
    pub k: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParitySpace {
    /// The component `n_{-k}` itself.
    Component,
    /// `H^j_k`.
    Cohomology { j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityWitness {
    pub space: ParitySpace,
    pub k: u32,
    pub dim: usize,
}

/// Verdicts for one weight assignment. `w_pass`/`h_pass` are `None` when the
/// weights are not a grading, since the conditions are then not evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub homogeneous: bool,
    pub homogeneity_violations: Vec<(usize, usize, usize)>,
    pub w_pass: Option<bool>,
    pub w_witnesses: Vec<WeightWitness>,
    pub h_pass: Option<bool>,
    pub h_witnesses: Vec<ParityWitness>,
    pub profiles: Option<[GradedBettiProfile; 2]>,
    /// `k -> dim n_{-k}`
    pub component_dims: BTreeMap<u32, usize>,
}

impl ConditionReport {
    pub fn passes(&self, mode: Mode) -> bool {
        match mode {
            Mode::W => self.w_pass == Some(true),
            Mode::Wh => self.w_pass == Some(true) && self.h_pass == Some(true),
        }
    }

    pub fn h1(&self) -> Option<&GradedBettiProfile> {
        self.profiles.as_ref().map(|p| &p[0])
    }

    pub fn h2(&self) -> Option<&GradedBettiProfile> {
        self.profiles.as_ref().map(|p| &p[1])
    }
}

/// Evaluates the conditions for many weight assignments on one algebra,
/// building the differentials `Λ^0 → Λ^1 → Λ^2 → Λ^3` once.
pub struct ConditionChecker<'a> {
    algebra: &'a LieAlgebra,
    differentials: Vec<Differential>,
}

impl<'a> ConditionChecker<'a> {
    pub fn new(algebra: &'a LieAlgebra) -> Result<Self> {
        let top = algebra.dim().min(2);
        let differentials = (0..=top).map(|k| Differential::new(algebra, k)).collect::<Result<_>>()?;
        Ok(Self { algebra, differentials })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.algebra
    }

    fn profile(&self, w: &WeightAssignment, j: usize) -> Result<GradedBettiProfile> {
        if j > self.algebra.dim() {
            return Ok(GradedBettiProfile {
                j,
                by_degree: BTreeMap::new(),
            });
        }
        profile_from(j, w, &self.differentials[j - 1], &self.differentials[j])
    }

    pub fn check(&self, w: &WeightAssignment) -> Result<ConditionReport> {
        let homogeneity = is_homogeneous(self.algebra, w)?;
        let component_dims = w.component_dims();
        if !homogeneity.homogeneous {
            return Ok(ConditionReport {
                homogeneous: false,
                homogeneity_violations: homogeneity.violations,
                w_pass: None,
                w_witnesses: Vec::new(),
                h_pass: None,
                h_witnesses: Vec::new(),
                profiles: None,
                component_dims,
            });
        }
        let h1 = self.profile(w, 1)?;
        let h2 = self.profile(w, 2)?;

        let mut w_witnesses = Vec::new();
        for (profile, allowed) in [(&h1, 1..=2u32), (&h2, 2..=4u32)] {
            for (&k, &dim) in &profile.by_degree {
                if !allowed.contains(&k) {
                    w_witnesses.push(WeightWitness { j: profile.j, k, dim });
                }
            }
        }

        let mut h_witnesses = Vec::new();
        for (&k, &dim) in &component_dims {
            if k % 2 == 1 && dim % 2 == 1 {
                h_witnesses.push(ParityWitness {
                    space: ParitySpace::Component,
                    k,
                    dim,
                });
            }
        }
        for profile in [&h1, &h2] {
            for (&k, &dim) in &profile.by_degree {
                if k % 2 == 1 && dim % 2 == 1 {
                    h_witnesses.push(ParityWitness {
                        space: ParitySpace::Cohomology { j: profile.j },
                        k,
                        dim,
                    });
                }
            }
        }

        Ok(ConditionReport {
            homogeneous: true,
            homogeneity_violations: Vec::new(),
            w_pass: Some(w_witnesses.is_empty()),
            w_witnesses,
            h_pass: Some(h_witnesses.is_empty()),
            h_witnesses,
            profiles: Some([h1, h2]),
            component_dims,
        })
    }
}

/// Evaluates homogeneity and, for gradings, the weight condition on `H^1`
/// (degrees 1, 2) and `H^2` (degrees 2, 3, 4) and the parity condition
/// (odd-degree components and odd-degree `H^1_k`, `H^2_k` even-dimensional).
pub fn check_conditions(l: &LieAlgebra, w: &WeightAssignment) -> Result<ConditionReport> {
    w.check_len(l)?;
    ConditionChecker::new(l)?.check(w)
}

pub fn double_weights(w: &WeightAssignment) -> WeightAssignment {
    w.doubled()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionCheck {
    /// Lower central series index, `k >= 1`.
    pub k: usize,
    /// The `k`-th largest occupied weight `i_k`, if the grading has that many.
    pub threshold: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub grading_length: usize,
    pub nilpotency_class: usize,
    pub length_bound_holds: bool,
    pub inclusions: Vec<InclusionCheck>,
    pub ok: bool,
}

/// Checks, for gradings of one algebra, that the grading length is at least
/// the nilpotency class and that `C^k n ⊆ ⊕_{i < i_k} n_i` for `k >= 1`.
/// Both hold for every grading, so a failure points at a bug.
pub struct LemmaChecker<'a> {
    algebra: &'a LieAlgebra,
    series: SeriesReport,
}

impl<'a> LemmaChecker<'a> {
    pub fn new(algebra: &'a LieAlgebra) -> Result<Self> {
        Ok(Self {
            algebra,
            series: algebra.lower_central_series()?,
        })
    }

    pub fn check(&self, w: &WeightAssignment) -> Result<LemmaReport> {
        let h = is_homogeneous(self.algebra, w)?;
        if !h.homogeneous {
            return Err(Error::Precondition(format!("weights {w} are not a grading")));
        }
        let mut distinct: Vec<i64> = w.weights().iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        distinct.reverse(); // i_1 > i_2 > ...
        let class = self.series.nilpotency_class;
        let inclusions: Vec<InclusionCheck> = (1..self.series.terms.len() - 1)
            .map(|k| {
                let threshold = distinct.get(k - 1).copied();
                let term = &self.series.terms[k];
                let holds = (0..term.dim()).all(|r| {
                    term.basis().row(r).iter().enumerate().all(|(i, x)| {
                        num_traits::Zero::is_zero(x) || threshold.is_some_and(|t| w.weights()[i] < t)
                    })
                });
                InclusionCheck { k, threshold, holds }
            })
            .collect();
        let length_bound_holds = distinct.len() >= class;
        Ok(LemmaReport {
            grading_length: distinct.len(),
            nilpotency_class: class,
            length_bound_holds,
            ok: length_bound_holds && inclusions.iter().all(|c| c.holds),
            inclusions,
        })
    }
}

pub fn structural_lemma_checks(l: &LieAlgebra, w: &WeightAssignment) -> Result<LemmaReport> {
    w.check_len(l)?;
    LemmaChecker::new(l)?.check(w)
}
