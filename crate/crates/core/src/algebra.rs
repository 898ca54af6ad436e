//! Nilpotent Lie algebras given by structure constants on a fixed ordered
//! basis, and the bracket-level invariants computed from them.
//!
//! Indices are 0-based in Rust and 1-based in every serialized form (the JSON
//! document, CLI output, and the `(i, j, k)` triples reported to users).

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, RationalMatrix, Scalar, SparseVec};

/// One nonzero structure constant: `[X_i, X_j]` has coefficient `c` on `X_k`,
/// with `i < j`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

/// Finite-dimensional Lie algebra over the rationals, stored sparsely.
///
/// Construction rejects malformed entries (index out of range, `i >= j`,
/// zero coefficient, duplicate `(i, j, k)`); it does not check Jacobi, see
/// [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    entries: Vec<BracketEntry>,
    // pair index i * dim + j (i < j) -> sparse image
    table: Vec<SparseVec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    /// 0-based basis triple `i < j < k`.
    pub triple: (usize, usize, usize),
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

/// Linear subspace of `K^n` stored as the rows of its reduced row-echelon
/// basis, so two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: RationalMatrix,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = RationalMatrix::from_rows(ambient_dim, vectors)?;
        Ok(Self { basis: m.rref().0 })
    }

    pub fn full(n: usize) -> Self {
        Self {
            basis: RationalMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            basis: RationalMatrix::zeros(0, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let mut rest = v.to_vec();
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let pivot = row.iter().position(|x| !x.is_zero()).expect("rref row");
            if rest[pivot].is_zero() {
                continue;
            }
            let f = rest[pivot].clone();
            for (x, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn is_within(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// `C^0 = n ⊇ C^1 ⊇ ... ⊇ 0`, ending with the zero subspace.
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// Smallest `k` with `C^k = 0`.
    pub nilpotency_class: usize,
}

/// Serialized form: `{"name", "dim", "brackets": [{"i","j","k","c"}]}` with
/// 1-based indices and `c` a rational literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDocument {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl LieAlgebra {
    pub fn new(name: impl Into<String>, dim: usize, mut entries: Vec<BracketEntry>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &entries {
            let one_based = (e.i + 1, e.j + 1, e.k + 1);
            if e.i >= dim || e.j >= dim || e.k >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {one_based:?} has an index outside 1..={dim}"
                )));
            }
            if e.i >= e.j {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {one_based:?} must satisfy i < j"
                )));
            }
            if e.c.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {one_based:?} has a zero coefficient"
                )));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {one_based:?} is listed twice"
                )));
            }
        }
        entries.sort_by_key(|e| (e.i, e.j, e.k));
        let mut table = vec![Vec::new(); dim * dim];
        for e in &entries {
            table[e.i * dim + e.j].push((e.k, e.c.clone()));
        }
        Ok(Self {
            name: name.into(),
            dim,
            entries,
            table,
        })
    }

    /// Builds from 1-based integer entries `(i, j, k, c)` with `i < j`.
    pub fn from_one_based(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(entries.len());
        for &(i, j, k, c) in entries {
            if i == 0 || j == 0 || k == 0 {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {:?} uses index 0; indices are 1-based",
                    (i, j, k)
                )));
            }
            out.push(BracketEntry {
                i: i - 1,
                j: j - 1,
                k: k - 1,
                c: crate::linalg::scalar(c),
            });
        }
        Self::new(name, dim, out)
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new(name, dim, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BracketEntry] {
        &self.entries
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sparse `[X_i, X_j]` for any ordered pair.
    pub fn basis_bracket(&self, i: usize, j: usize) -> SparseVec<Scalar> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.table[i * self.dim + j].clone(),
            Ordering::Greater => self.table[j * self.dim + i]
                .iter()
                .map(|(k, c)| (*k, -c.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of the structure constants to coordinate vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "bracket arguments have lengths {} and {}, expected {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for e in &self.entries {
            // u_i v_j - u_j v_i
            let coeff = &u[e.i] * &v[e.j] - &u[e.j] * &v[e.i];
            if !coeff.is_zero() {
                out[e.k] += coeff * &e.c;
            }
        }
        Ok(out)
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let basis_brackets: Vec<Vec<Vec<Scalar>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        self.bracket(&self.unit(a), &self.unit(b))
                            .expect("unit vectors have the right length")
                    })
                    .collect()
            })
            .collect();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket(&basis_brackets[i][j], &self.unit(k)).expect("len");
                    let t2 = self.bracket(&basis_brackets[j][k], &self.unit(i)).expect("len");
                    let t3 = self.bracket(&basis_brackets[k][i], &self.unit(j)).expect("len");
                    let residual: Vec<Scalar> = t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .map(|((a, b), c)| a + b + c)
                        .collect();
                    if residual.iter().any(|x| !x.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Returns `self` if Jacobi holds, otherwise a [`Error::Jacobi`] listing
    /// the failing triples (1-based).
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.ok {
            Ok(self)
        } else {
            Err(Error::Jacobi {
                triples: report
                    .violations
                    .iter()
                    .map(|v| (v.triple.0 + 1, v.triple.1 + 1, v.triple.2 + 1))
                    .collect(),
            })
        }
    }

    /// `C^0 = n`, `C^{i+1} = [n, C^i]`, down to zero.
    pub fn lower_central_series(&self) -> Result<SeriesReport> {
        let n = self.dim;
        let mut terms = vec![Subspace::full(n)];
        let mut dims = vec![n];
        while !terms.last().expect("nonempty").is_zero() {
            let current = terms.last().expect("nonempty");
            let mut gens = Vec::new();
            for b in 0..n {
                let eb = self.unit(b);
                for r in 0..current.dim() {
                    let v = self.bracket(&eb, current.basis().row(r))?;
                    if v.iter().any(|x| !x.is_zero()) {
                        gens.push(v);
                    }
                }
            }
            let next = Subspace::span(n, gens)?;
            if next.dim() >= current.dim() {
                dims.push(next.dim());
                return Err(Error::NotNilpotent { dims });
            }
            dims.push(next.dim());
            terms.push(next);
        }
        let nilpotency_class = terms.len() - 1;
        Ok(SeriesReport {
            terms,
            dims,
            nilpotency_class,
        })
    }

    /// The `p` with `dim C^i = m - i - p` for every `i >= 1` (clamped at 0),
    /// if one exists. One-dimensional algebras would need `p = 0` and get
    /// `None`.
    pub fn p_filiform_degree(&self) -> Result<Option<usize>> {
        let series = self.lower_central_series()?;
        Ok(p_filiform_from_dims(self.dim, &series.dims))
    }

    /// `self ⊕ K^m`: the new basis vectors are appended and central.
    pub fn direct_sum_abelian(&self, m: usize) -> LieAlgebra {
        if m == 0 {
            return self.clone();
        }
        let name = format!("{}+C{}", self.name, if m == 1 { String::new() } else { format!("^{m}") });
        LieAlgebra::new(name, self.dim + m, self.entries.clone()).expect("entries stay in range")
    }

    /// Re-expresses the algebra in the basis whose `a`-th vector is row `a` of
    /// `change` (coordinates in the current basis).
    pub fn change_basis(&self, change: &RationalMatrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if change.rows() != n || change.cols() != n {
            return Err(Error::InvalidInput(format!(
                "change of basis must be {n}x{n}, got {}x{}",
                change.rows(),
                change.cols()
            )));
        }
        let inv = change.inverse()?;
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let old = self.bracket(change.row(a), change.row(b))?;
                let new = inv.left_apply(&old)?;
                for (k, c) in new.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push(BracketEntry { i: a, j: b, k, c });
                    }
                }
            }
        }
        LieAlgebra::new(self.name.clone(), n, entries)
    }

    pub fn to_document(&self) -> AlgebraDocument {
        AlgebraDocument {
            name: self.name.clone(),
            dim: self.dim,
            brackets: self
                .entries
                .iter()
                .map(|e| BracketDocument {
                    i: e.i + 1,
                    j: e.j + 1,
                    k: e.k + 1,
                    c: format_scalar(&e.c),
                })
                .collect(),
        }
    }

    /// Parses and structurally checks a document. Jacobi is not checked here.
    pub fn from_document(doc: &AlgebraDocument) -> Result<Self> {
        let mut entries = Vec::with_capacity(doc.brackets.len());
        for b in &doc.brackets {
            if b.i == 0 || b.j == 0 || b.k == 0 {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {:?} uses index 0; indices are 1-based",
                    (b.i, b.j, b.k)
                )));
            }
            entries.push(BracketEntry {
                i: b.i - 1,
                j: b.j - 1,
                k: b.k - 1,
                c: parse_scalar(&b.c)?,
            });
        }
        Self::new(doc.name.clone(), doc.dim, entries)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra document: {e}")))?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

pub(crate) fn p_filiform_from_dims(m: usize, dims: &[usize]) -> Option<usize> {
    let c1 = *dims.get(1)?;
    if m < 1 + c1 + 1 {
        return None;
    }
    let p = m - 1 - c1;
    for (i, &d) in dims.iter().enumerate().skip(1) {
        let expected = m.saturating_sub(i + p);
        if d != expected {
            return None;
        }
    }
    // the series stops at the first zero term; later terms are all zero
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;
    use proptest::prelude::*;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_one_based("L3_2", 3, &[(1, 2, 3, 1)]).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn malformed_entries_are_input_errors() {
        let bad = [
            vec![(1, 2, 4, 1)],
            vec![(2, 1, 3, 1)],
            vec![(1, 1, 3, 1)],
            vec![(1, 2, 3, 0)],
            vec![(1, 2, 3, 1), (1, 2, 3, 2)],
        ];
        for entries in bad {
            let err = LieAlgebra::from_one_based("bad", 3, &entries).unwrap_err();
            assert!(matches!(err, Error::InvalidInput(_)), "{entries:?}: {err}");
        }
    }

    #[test]
    fn jacobi_violation_is_reported_with_its_triple() {
        let l = LieAlgebra::from_one_based("bogus", 5, &[(1, 2, 3, 1), (1, 3, 5, 1), (2, 3, 4, 1), (1, 4, 5, 1)]).unwrap();
        let report = l.validate();
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].triple, (0, 1, 2));
        assert_eq!(report.violations[0].residual, vec![scalar(0), scalar(0), scalar(0), scalar(0), scalar(-1)]);
        assert!(matches!(l.validated(), Err(Error::Jacobi { triples }) if triples == vec![(1, 2, 3)]));
    }

    #[test]
    fn heisenberg_bracket_and_series() {
        let l = heisenberg();
        assert!(l.validate().ok);
        assert_eq!(l.bracket(&unit(3, 0), &unit(3, 1)).unwrap(), unit(3, 2));
        assert_eq!(l.bracket(&unit(3, 1), &unit(3, 0)).unwrap(), vec![scalar(0), scalar(0), scalar(-1)]);
        assert!(l.bracket(&unit(2, 0), &unit(3, 1)).is_err());
        let s = l.lower_central_series().unwrap();
        assert_eq!(s.dims, vec![3, 1, 0]);
        assert_eq!(s.nilpotency_class, 2);
        assert_eq!(l.p_filiform_degree().unwrap(), Some(1));
    }

    #[test]
    fn abelian_series() {
        let l = LieAlgebra::abelian("C4", 4).unwrap();
        let s = l.lower_central_series().unwrap();
        assert_eq!(s.dims, vec![4, 0]);
        assert_eq!(s.nilpotency_class, 1);
        assert_eq!(l.p_filiform_degree().unwrap(), Some(3));
        assert_eq!(LieAlgebra::abelian("C1", 1).unwrap().p_filiform_degree().unwrap(), None);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        // sl2-like: [e,f]=h, [h,e]=2e, [h,f]=-2f with basis (e, f, h)
        let l = LieAlgebra::from_one_based("sl2", 3, &[(1, 2, 3, 1), (1, 3, 1, -2), (2, 3, 2, 2)]).unwrap();
        assert!(l.validate().ok);
        assert!(matches!(l.lower_central_series(), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn direct_sum_keeps_brackets() {
        let l = heisenberg();
        assert_eq!(l.direct_sum_abelian(0), l);
        let l4 = l.direct_sum_abelian(1);
        assert_eq!(l4.dim(), 4);
        assert_eq!(l4.entries(), l.entries());
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, vec![vec![scalar(1), scalar(1), scalar(0)], vec![scalar(2), scalar(2), scalar(0)]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[scalar(-3), scalar(-3), scalar(0)]));
        assert!(!s.contains(&[scalar(1), scalar(0), scalar(0)]));
        assert!(s.is_within(&Subspace::full(3)));
        assert!(Subspace::zero(3).is_within(&s));
        assert!(!Subspace::full(3).is_within(&s));
    }

    #[test]
    fn change_of_basis_swaps_generators() {
        let l = heisenberg();
        let p = RationalMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let swapped = l.change_basis(&p).unwrap();
        assert_eq!(swapped.entries()[0].c, scalar(-1));
        assert!(swapped.validate().ok);
        let singular = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(l.change_basis(&singular).is_err());
    }

    #[test]
    fn document_round_trip_and_errors() {
        let l = LieAlgebra::from_json(r#"{"name":"h","dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"1"}]}"#).unwrap();
        assert_eq!(l.entries(), heisenberg().entries());
        let back = LieAlgebra::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
        let zero = LieAlgebra::from_json(r#"{"name":"h","dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"0"}]}"#);
        assert!(matches!(zero, Err(Error::InvalidInput(_))));
        let junk = LieAlgebra::from_json(r#"{"name":"h","dim":3}"#);
        assert!(matches!(junk, Err(Error::Parse(_))));
        let frac = LieAlgebra::from_json(r#"{"name":"h","dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"-2/4"}]}"#).unwrap();
        assert_eq!(frac.to_document().brackets[0].c, "-1/2");
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
    }

    fn vec5() -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec(small_rational(), 5)
    }

    proptest! {
        #[test]
        fn bracket_is_bilinear_and_antisymmetric(u in vec5(), v in vec5(), w in vec5(), a in small_rational()) {
            let l = LieAlgebra::from_one_based("L5_9", 5, &[(1, 2, 3, 1), (2, 3, 4, 1), (1, 3, 5, 1)]).unwrap();
            let uv = l.bracket(&u, &v).unwrap();
            let vu = l.bracket(&v, &u).unwrap();
            prop_assert!(uv.iter().zip(&vu).all(|(x, y)| (x + y).is_zero()));
            prop_assert!(l.bracket(&u, &u).unwrap().iter().all(Zero::is_zero));
            let au_plus_w: Vec<Scalar> = u.iter().zip(&w).map(|(x, y)| &a * x + y).collect();
            let lhs = l.bracket(&au_plus_w, &v).unwrap();
            let wv = l.bracket(&w, &v).unwrap();
            let rhs: Vec<Scalar> = uv.iter().zip(&wv).map(|(x, y)| &a * x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
