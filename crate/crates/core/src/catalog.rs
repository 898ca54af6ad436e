//! Named nilpotent Lie algebras of dimension at most 6, their expected
//! grading verdicts, and the parametric families used for the
//! non-existence checks.
//!
//! Brackets are written `[X_i, X_j] = X_k` with 1-based indices and
//! coefficient 1; a pair listed with `i > j` is stored as `[X_j, X_i] = -X_k`.
//!
//! `L6_15` carries `[X1, X5] = X6`: with `[X2, X5] = X6` in its place the
//! Jacobi identity fails on `(X1, X2, X3)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::grading::WeightAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub w: Verdict,
    pub wh: Verdict,
    pub grading: Option<WeightAssignment>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub expected: Expected,
    /// `(factor, m)` when the entry is `factor ⊕ K^m`.
    pub decomposition: Option<(String, usize)>,
}

enum Source {
    Brackets(usize, &'static [(usize, usize, usize)]),
    Sum(&'static str, usize),
}

use Source::{Brackets, Sum};
use Verdict::{No, Unknown, Yes};

struct Row {
    name: &'static str,
    source: Source,
    w: Verdict,
    wh: Verdict,
    grading: Option<&'static [i64]>,
}

const fn row(name: &'static str, source: Source, w: Verdict, wh: Verdict, grading: Option<&'static [i64]>) -> Row {
    Row {
        name,
        source,
        w,
        wh,
        grading,
    }
}

#[rustfmt::skip]
const ROWS: &[Row] = &[
    row("L1_1", Brackets(1, &[]), Yes, Yes, Some(&[-2])),
    row("L2_1", Brackets(2, &[]), Yes, Yes, Some(&[-1, -1])),
    row("L3_1", Brackets(3, &[]), Yes, Yes, Some(&[-1, -1, -2])),
    row("L3_2", Brackets(3, &[(1, 2, 3)]), Yes, Yes, Some(&[-1, -1, -2])),
    row("L4_1", Brackets(4, &[]), Yes, Yes, Some(&[-1, -1, -1, -1])),
    row("L4_2", Sum("L3_2", 1), Yes, Yes, Some(&[-1, -1, -2, -2])),
    row("L4_3", Brackets(4, &[(1, 2, 3), (1, 3, 4)]), Yes, No, Some(&[-1, -1, -2, -3])),
    row("L5_1", Brackets(5, &[]), Yes, Yes, Some(&[-1, -1, -1, -1, -2])),
    row("L5_2", Sum("L3_2", 2), Yes, Yes, Some(&[-1, -1, -2, -2, -2])),
    row("L5_3", Sum("L4_3", 1), Yes, No, Some(&[-1, -1, -2, -3, -2])),
    row("L5_4", Brackets(5, &[(4, 1, 5), (2, 3, 5)]), Yes, Yes, Some(&[-1, -1, -1, -1, -2])),
    row("L5_5", Brackets(5, &[(1, 3, 4), (1, 4, 5), (3, 2, 5)]), Yes, No, Some(&[-1, -2, -1, -2, -3])),
    row("L5_6", Brackets(5, &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5)]), Unknown, No, None),
    row("L5_7", Brackets(5, &[(1, 2, 3), (1, 3, 4), (1, 4, 5)]), Unknown, No, None),
    row("L5_8", Brackets(5, &[(1, 2, 3), (1, 4, 5)]), Yes, No, Some(&[-1, -1, -2, -1, -2])),
    row("L5_9", Brackets(5, &[(1, 2, 3), (2, 3, 4), (1, 3, 5)]), Yes, Yes, Some(&[-1, -1, -2, -3, -3])),
    row("L6_1", Brackets(6, &[]), Yes, Yes, Some(&[-1, -1, -1, -1, -2, -2])),
    row("L6_2", Sum("L3_2", 3), Yes, Yes, Some(&[-1, -1, -2, -2, -2, -2])),
    row("L6_3", Sum("L4_3", 2), Yes, No, Some(&[-1, -1, -2, -3, -2, -2])),
    row("L6_4", Sum("L5_4", 1), Yes, Yes, Some(&[-1, -1, -1, -1, -2, -2])),
    row("L6_5", Sum("L5_5", 1), Yes, No, Some(&[-1, -2, -1, -2, -3, -2])),
    row("L6_6", Sum("L5_6", 1), Unknown, No, None),
    row("L6_7", Sum("L5_7", 1), Unknown, No, None),
    row("L6_8", Sum("L5_8", 1), Yes, No, Some(&[-1, -1, -2, -1, -2, -2])),
    row("L6_9", Sum("L5_9", 1), Yes, Yes, Some(&[-1, -1, -2, -3, -3, -2])),
    row("L6_10", Brackets(6, &[(2, 3, 4), (5, 1, 6), (2, 4, 6)]), Yes, No, Some(&[-1, -1, -1, -2, -2, -3])),
    row("L6_11", Brackets(6, &[(1, 2, 3), (1, 3, 5), (1, 5, 6), (2, 3, 6), (2, 4, 6)]), Unknown, No, None),
    row("L6_12", Brackets(6, &[(2, 3, 4), (2, 4, 5), (3, 1, 6), (2, 5, 6)]), Unknown, No, None),
    row("L6_13", Brackets(6, &[(1, 3, 4), (1, 4, 5), (3, 2, 5), (1, 5, 6), (4, 2, 6)]), Unknown, No, None),
    row("L6_14", Brackets(6, &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5), (2, 5, 6), (4, 3, 6)]), Unknown, No, None),
    row("L6_15", Brackets(6, &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5), (1, 5, 6), (2, 4, 6)]), Unknown, No, None),
    row("L6_16", Brackets(6, &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 5, 6), (4, 3, 6)]), Unknown, No, None),
    row("L6_17", Brackets(6, &[(2, 1, 3), (2, 3, 4), (2, 4, 5), (1, 3, 6), (2, 5, 6)]), Unknown, No, None),
    row("L6_18", Brackets(6, &[(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6)]), Unknown, No, None),
    row("L6_19(-1)", Brackets(6, &[(1, 2, 3), (1, 4, 5), (2, 5, 6), (4, 3, 6)]), Yes, No, Some(&[-1, -1, -2, -1, -2, -3])),
    row("L6_20", Brackets(6, &[(1, 2, 3), (1, 4, 5), (1, 5, 6), (2, 3, 6)]), Yes, No, Some(&[-1, -1, -2, -1, -2, -3])),
    row("L6_21(-1)", Brackets(6, &[(1, 2, 3), (2, 3, 4), (1, 3, 5), (1, 4, 6), (2, 5, 6)]), Yes, Yes, Some(&[-1, -1, -2, -3, -3, -4])),
    row("L6_22(0)", Brackets(6, &[(2, 4, 5), (4, 1, 6), (2, 3, 6)]), Yes, Yes, Some(&[-1, -1, -1, -1, -2, -2])),
    row("L6_22(1)", Brackets(6, &[(1, 2, 3), (4, 5, 6)]), Yes, Yes, Some(&[-1, -1, -2, -1, -1, -2])),
    row("L6_23", Brackets(6, &[(1, 2, 3), (1, 4, 5), (1, 5, 6), (4, 2, 6)]), Unknown, No, None),
    row("L6_24(0)", Brackets(6, &[(1, 3, 4), (3, 4, 5), (1, 4, 6), (3, 2, 6)]), Yes, Yes, Some(&[-1, -2, -1, -2, -3, -3])),
    row("L6_24(1)", Brackets(6, &[(1, 2, 3), (2, 3, 5), (2, 4, 5), (1, 3, 6)]), Yes, Yes, Some(&[-1, -1, -2, -2, -3, -3])),
    row("L6_25", Brackets(6, &[(1, 2, 3), (1, 3, 4), (1, 5, 6)]), Yes, No, Some(&[-1, -1, -2, -3, -1, -2])),
    row("L6_26", Brackets(6, &[(1, 2, 3), (2, 4, 5), (1, 4, 6)]), Yes, No, Some(&[-1, -1, -2, -1, -2, -2])),
    row("L6_27", Brackets(6, &[(1, 2, 3), (1, 3, 4), (2, 5, 6)]), Yes, No, Some(&[-1, -1, -2, -3, -1, -2])),
    row("L6_28", Brackets(6, &[(1, 2, 3), (2, 3, 4), (1, 3, 5), (1, 5, 6)]), Unknown, No, None),
];

/// `[X_i, X_j] = X_k` with coefficient 1, reoriented to `i < j`.
fn from_pairs(name: &str, dim: usize, pairs: &[(usize, usize, usize)]) -> Result<LieAlgebra> {
    let entries: Vec<_> = pairs
        .iter()
        .map(|&(i, j, k)| if i < j { (i, j, k, 1) } else { (j, i, k, -1) })
        .collect();
    LieAlgebra::from_one_based(name, dim, &entries)?.validated()
}

fn build() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::with_capacity(ROWS.len());
    for r in ROWS {
        let (algebra, decomposition) = match r.source {
            Brackets(dim, pairs) => (from_pairs(r.name, dim, pairs), None),
            Sum(factor, m) => {
                let base = out
                    .iter()
                    .find(|e| e.name == factor)
                    .unwrap_or_else(|| panic!("factor {factor} listed after {}", r.name));
                (
                    Ok(base.algebra.direct_sum_abelian(m).with_name(r.name)),
                    Some((factor.to_string(), m)),
                )
            }
        };
        let algebra = algebra.unwrap_or_else(|e| panic!("catalog entry {}: {e}", r.name));
        let grading = r
            .grading
            .map(|g| WeightAssignment::new(g.to_vec()).expect("tabulated weights are negative"));
        out.push(CatalogEntry {
            name: r.name.to_string(),
            algebra,
            expected: Expected {
                w: r.w,
                wh: r.wh,
                grading,
            },
            decomposition,
        });
    }
    out
}

/// All entries in table order (by dimension, then index).
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn list() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name.as_str()).collect()
}

pub fn entries_of_dim(dim: usize) -> impl Iterator<Item = &'static CatalogEntry> {
    catalog().iter().filter(move |e| e.algebra.dim() == dim)
}

fn suggestions(name: &str) -> Vec<String> {
    let lower = name.to_ascii_lowercase();
    let mut scored: Vec<(f64, &str)> = catalog()
        .iter()
        .map(|e| {
            let candidate = e.name.to_ascii_lowercase();
            let prefix = if candidate.starts_with(&lower) { 1.0 } else { 0.0 };
            (strsim::jaro_winkler(&lower, &candidate) + prefix, e.name.as_str())
        })
        .filter(|(s, _)| *s >= 0.8)
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(b.1)));
    scored.into_iter().take(5).map(|(_, n)| n.to_string()).collect()
}

pub fn get(name: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownAlgebra {
        name: name.to_string(),
        suggestions: suggestions(name),
    })
}

pub fn expected_grading(name: &str) -> Result<Option<WeightAssignment>> {
    Ok(get(name)?.expected.grading.clone())
}

pub fn expected_verdicts(name: &str) -> Result<(Verdict, Verdict)> {
    let e = get(name)?;
    Ok((e.expected.w, e.expected.wh))
}

/// Parametric families. Parameter ranges:
///
/// * `nmq:m,q`: `m >= 3`, `1 <= q <= (m-1)/2`. Basis `X0, X1, X2, Y1..Y_{m-3}`
///   with `[X0,X1] = X2` and `[Y_{2k-1}, Y_{2k}] = X2` for `k < q`.
/// * `nm_odd:m,q`: `m >= 5`, `0 <= q <= (m-4)/2`. Basis `X0..X3, Y1..Y_{m-4}`
///   with `[X0,X1] = X2`, `[X0,X2] = X3` and `[Y_{2k-1}, Y_{2k}] = X3` for `k <= q`.
/// * `nm_even:m,q`: `m >= 5`, `1 <= q <= (m-3)/2`. As `nm_odd` with `q - 1`
///   pairs, plus `[X1, Y_{m-4}] = X3`.
/// * `nm_top:m`: `m >= 5`. `[X0,X1] = X2`, `[X0,X2] = X3`, `[X1,X2] = Y_{m-4}`.
/// * `Ln:n`: `n >= 3`. `[X1, Xi] = X_{i+1}` for `2 <= i <= n-1`.
/// * `Rm:m`: `m >= 5`. `Ln` brackets plus `[X2, Xj] = X_{j+2}` for `3 <= j <= m-2`.
/// * `Q2m:m`: `m >= 3`, dimension `2m`. `[X1, Xi] = X_{i+1}` for `2 <= i <= 2m-2`
///   and `[X_j, X_{2m+1-j}] = (-1)^{j+1} X_{2m}` for `2 <= j <= m`.
/// * `heis:d`: odd `d >= 3`. `[X_{2i-1}, X_{2i}] = X_d`.
/// * `abelian:n`: `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Nmq { m: usize, q: usize },
    NmOdd { m: usize, q: usize },
    NmEven { m: usize, q: usize },
    NmTop { m: usize },
    Ln { n: usize },
    Rm { m: usize },
    Q2m { m: usize },
    Heis { dim: usize },
    Abelian { n: usize },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Nmq { m, q } => write!(f, "nmq:{m},{q}"),
            FamilySpec::NmOdd { m, q } => write!(f, "nm_odd:{m},{q}"),
            FamilySpec::NmEven { m, q } => write!(f, "nm_even:{m},{q}"),
            FamilySpec::NmTop { m } => write!(f, "nm_top:{m}"),
            FamilySpec::Ln { n } => write!(f, "Ln:{n}"),
            FamilySpec::Rm { m } => write!(f, "Rm:{m}"),
            FamilySpec::Q2m { m } => write!(f, "Q2m:{m}"),
            FamilySpec::Heis { dim } => write!(f, "heis:{dim}"),
            FamilySpec::Abelian { n } => write!(f, "abelian:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family spec {s:?} has no ':'")))?;
        let params = params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("parameter {p:?} of {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let want = |count: usize| -> Result<()> {
            if params.len() != count {
                return Err(Error::Parse(format!(
                    "family {family} takes {count} parameter(s), got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        let spec = match family {
            "nmq" | "nm_odd" | "nm_even" => {
                want(2)?;
                let (m, q) = (params[0], params[1]);
                match family {
                    "nmq" => FamilySpec::Nmq { m, q },
                    "nm_odd" => FamilySpec::NmOdd { m, q },
                    _ => FamilySpec::NmEven { m, q },
                }
            }
            "nm_top" | "Ln" | "Rm" | "Q2m" | "heis" | "abelian" => {
                want(1)?;
                let p = params[0];
                match family {
                    "nm_top" => FamilySpec::NmTop { m: p },
                    "Ln" => FamilySpec::Ln { n: p },
                    "Rm" => FamilySpec::Rm { m: p },
                    "Q2m" => FamilySpec::Q2m { m: p },
                    "heis" => FamilySpec::Heis { dim: p },
                    _ => FamilySpec::Abelian { n: p },
                }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

fn out_of_range(spec: FamilySpec, rule: &str) -> Error {
    Error::InvalidInput(format!("{spec}: parameters out of range ({rule})"))
}

type Entry = (usize, usize, usize, i64);

/// Builds and Jacobi-validates a family member.
pub fn family(spec: FamilySpec) -> Result<LieAlgebra> {
    let (dim, entries): (usize, Vec<Entry>) = match spec {
        FamilySpec::Nmq { m, q } => {
            if m < 3 || q < 1 || 2 * q > m - 1 {
                return Err(out_of_range(spec, "m >= 3, 1 <= q <= (m-1)/2"));
            }
            // X0, X1, X2 -> 1, 2, 3; Y_k -> 3 + k
            let mut e = vec![(1, 2, 3, 1)];
            e.extend((1..q).map(|k| (3 + 2 * k - 1, 3 + 2 * k, 3, 1)));
            (m, e)
        }
        FamilySpec::NmOdd { m, q } => {
            if m < 5 || 2 * q > m - 4 {
                return Err(out_of_range(spec, "m >= 5, 0 <= q <= (m-4)/2"));
            }
            // X0..X3 -> 1..4; Y_k -> 4 + k
            let mut e = vec![(1, 2, 3, 1), (1, 3, 4, 1)];
            e.extend((1..=q).map(|k| (4 + 2 * k - 1, 4 + 2 * k, 4, 1)));
            (m, e)
        }
        FamilySpec::NmEven { m, q } => {
            if m < 5 || q < 1 || 2 * q > m - 3 {
                return Err(out_of_range(spec, "m >= 5, 1 <= q <= (m-3)/2"));
            }
            let mut e = vec![(1, 2, 3, 1), (1, 3, 4, 1), (2, m, 4, 1)];
            e.extend((1..q).map(|k| (4 + 2 * k - 1, 4 + 2 * k, 4, 1)));
            (m, e)
        }
        FamilySpec::NmTop { m } => {
            if m < 5 {
                return Err(out_of_range(spec, "m >= 5"));
            }
            (m, vec![(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, m, 1)])
        }
        FamilySpec::Ln { n } => {
            if n < 3 {
                return Err(out_of_range(spec, "n >= 3"));
            }
            (n, (2..n).map(|i| (1, i, i + 1, 1)).collect())
        }
        FamilySpec::Rm { m } => {
            if m < 5 {
                return Err(out_of_range(spec, "m >= 5"));
            }
            let mut e: Vec<Entry> = (2..m).map(|i| (1, i, i + 1, 1)).collect();
            e.extend((3..=m - 2).map(|j| (2, j, j + 2, 1)));
            (m, e)
        }
        FamilySpec::Q2m { m } => {
            if m < 3 {
                return Err(out_of_range(spec, "m >= 3"));
            }
            let n = 2 * m;
            let mut e: Vec<Entry> = (2..n - 1).map(|i| (1, i, i + 1, 1)).collect();
            e.extend((2..=m).map(|j| (j, n + 1 - j, n, if j % 2 == 1 { 1 } else { -1 })));
            (n, e)
        }
        FamilySpec::Heis { dim } => {
            if dim < 3 || dim % 2 == 0 {
                return Err(out_of_range(spec, "odd dimension >= 3"));
            }
            (dim, (1..=dim / 2).map(|i| (2 * i - 1, 2 * i, dim, 1)).collect())
        }
        FamilySpec::Abelian { n } => {
            if n < 1 {
                return Err(out_of_range(spec, "n >= 1"));
            }
            (n, Vec::new())
        }
    };
    LieAlgebra::from_one_based(spec.to_string(), dim, &entries)?.validated()
}

/// The grading on `nmq:m,q` with `X0, X1, Y_1..Y_{2q-2}` at `-1` and every
/// other basis vector at `-2`.
pub fn nmq_grading(m: usize, q: usize) -> Result<WeightAssignment> {
    family(FamilySpec::Nmq { m, q })?;
    let weights = (0..m)
        .map(|i| match i {
            0 | 1 => -1,
            2 => -2,
            _ if i - 3 < 2 * q - 2 => -1,
            _ => -2,
        })
        .collect();
    WeightAssignment::new(weights)
}

/// Catalog name, or a family spec such as `nmq:5,2`.
pub fn resolve(name: &str) -> Result<LieAlgebra> {
    if name.contains(':') {
        return family(name.parse()?);
    }
    Ok(get(name)?.algebra.clone())
}
