//! Chevalley–Eilenberg complex of a Lie algebra with trivial coefficients.
//!
//! On 1-forms, `d x_k = -Σ_{i<j} c_{ij}^k x_i ∧ x_j`; higher degrees follow
//! from the graded Leibniz rule. Basis k-forms are strictly increasing index
//! tuples in lexicographic order, and that order indexes every matrix here.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank_of_sparse, RationalMatrix, Scalar, SparseVec};

/// Basis k-form `x_{i_1} ∧ ... ∧ x_{i_k}` with 0-based strictly increasing
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KForm(pub Vec<usize>);

impl KForm {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// All `C(n, k)` basis k-forms in lexicographic order.
pub fn k_form_basis(n: usize, k: usize) -> Result<Vec<KForm>> {
    if k > n {
        return Err(Error::InvalidInput(format!("form degree {k} exceeds dimension {n}")));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    push_combinations(n, k, 0, &mut current, &mut out);
    Ok(out)
}

fn push_combinations(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<KForm>) {
    if current.len() == k {
        out.push(KForm(current.clone()));
        return;
    }
    let remaining = k - current.len();
    for i in start..=n - remaining {
        current.push(i);
        push_combinations(n, k, i + 1, current, out);
        current.pop();
    }
}

/// Sorts `v` in place and returns the permutation sign, or `None` when an
/// index repeats.
fn sort_with_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// Sparse columns of `d: Λ^k → Λ^{k+1}` together with the row basis.
pub struct Differential {
    pub sources: Vec<KForm>,
    pub targets: Vec<KForm>,
    /// One sparse column per source form, indexed into `targets`.
    pub columns: Vec<SparseVec<Scalar>>,
}

impl Differential {
    pub fn new(l: &LieAlgebra, k: usize) -> Result<Self> {
        let n = l.dim();
        let sources = k_form_basis(n, k)?;
        let targets = if k < n { k_form_basis(n, k + 1)? } else { Vec::new() };
        let index: HashMap<&[usize], usize> =
            targets.iter().enumerate().map(|(r, f)| (f.indices(), r)).collect();

        let mut by_target: Vec<Vec<(usize, usize, &Scalar)>> = vec![Vec::new(); n];
        for e in l.entries() {
            by_target[e.k].push((e.i, e.j, &e.c));
        }

        let columns = sources
            .iter()
            .map(|form| {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                let a = form.indices();
                for (p, &ap) in a.iter().enumerate() {
                    let position_sign = if p % 2 == 0 { 1 } else { -1 };
                    for &(i, j, c) in &by_target[ap] {
                        let mut tuple = Vec::with_capacity(k + 1);
                        tuple.extend_from_slice(&a[..p]);
                        tuple.push(i);
                        tuple.push(j);
                        tuple.extend_from_slice(&a[p + 1..]);
                        let Some(perm_sign) = sort_with_sign(&mut tuple) else {
                            continue;
                        };
                        let row = index[tuple.as_slice()];
                        let coeff = c * Scalar::from_integer((-position_sign * perm_sign).into());
                        *acc.entry(row).or_insert_with(Scalar::zero) += coeff;
                    }
                }
                let mut col: SparseVec<Scalar> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        Ok(Self {
            sources,
            targets,
            columns,
        })
    }

    pub fn rank(&self) -> usize {
        rank_of_sparse(self.targets.len(), self.columns.iter().cloned())
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.targets.len(), self.sources.len());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }
}

/// Matrix of `d: Λ^k n* → Λ^{k+1} n*`; columns indexed by k-forms, rows by
/// (k+1)-forms, both lexicographic.
pub fn ce_differential(l: &LieAlgebra, k: usize) -> Result<RationalMatrix> {
    Ok(Differential::new(l, k)?.to_matrix())
}

/// `b_k = dim ker(d_k) - rank(d_{k-1})`.
pub fn betti(l: &LieAlgebra, k: usize) -> Result<usize> {
    let n = l.dim();
    if k > n {
        return Err(Error::InvalidInput(format!("cohomological degree {k} exceeds dimension {n}")));
    }
    let dk = Differential::new(l, k)?;
    let kernel = dk.sources.len() - dk.rank();
    let image = if k == 0 { 0 } else { Differential::new(l, k - 1)?.rank() };
    Ok(kernel - image)
}

/// `(b_0, ..., b_max)`, computing each differential rank once.
pub fn betti_numbers(l: &LieAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    let n = l.dim();
    if max_degree > n {
        return Err(Error::InvalidInput(format!(
            "cohomological degree {max_degree} exceeds dimension {n}"
        )));
    }
    let mut ranks = Vec::with_capacity(max_degree + 1);
    let mut sizes = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let d = Differential::new(l, k)?;
        sizes.push(d.sources.len());
        ranks.push(d.rank());
    }
    Ok((0..=max_degree)
        .map(|k| sizes[k] - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    fn forms(n: usize, k: usize) -> Vec<Vec<usize>> {
        k_form_basis(n, k).unwrap().into_iter().map(|f| f.0).collect()
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(
            forms(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(forms(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(forms(3, 3), vec![vec![0, 1, 2]]);
        assert!(k_form_basis(3, 4).is_err());
    }

    #[test]
    fn heisenberg_degree_one_differential() {
        let l = LieAlgebra::from_one_based("L3_2", 3, &[(1, 2, 3, 1)]).unwrap();
        let d = ce_differential(&l, 1).unwrap();
        assert_eq!(d.rows(), 3);
        assert_eq!(d.cols(), 3);
        // only column x3 is nonzero: -1 at row x1^x2
        let expected = RationalMatrix::from_i64_rows(&[&[0, 0, -1], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(d, expected);
        assert_eq!(d.rank(), 1);
        let ker = d.kernel_basis();
        assert_eq!(ker, RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn degree_zero_and_top_differentials() {
        let l = LieAlgebra::from_one_based("L3_2", 3, &[(1, 2, 3, 1)]).unwrap();
        assert!(ce_differential(&l, 0).unwrap().is_zero());
        let top = ce_differential(&l, 3).unwrap();
        assert_eq!((top.rows(), top.cols()), (0, 1));
        assert!(ce_differential(&l, 4).is_err());
        assert!(betti(&l, 4).is_err());
    }

    #[test]
    fn sign_helper() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![0, 1, 2]);
        let mut w = vec![1, 0];
        assert_eq!(sort_with_sign(&mut w), Some(-1));
        assert_eq!(sort_with_sign(&mut [1, 2, 1]), None);
    }

    #[test]
    fn abelian_betti_numbers_are_binomial() {
        let l = LieAlgebra::abelian("C5", 5).unwrap();
        assert_eq!(betti_numbers(&l, 5).unwrap(), vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn differential_entry_values() {
        let l = LieAlgebra::from_one_based("L4_3", 4, &[(1, 2, 3, 1), (1, 3, 4, 1)]).unwrap();
        let d = Differential::new(&l, 2).unwrap();
        // d(x3^x4) = dx3^x4 - x3^dx4 = -x1^x2^x4 + x3^x1^x3 = -x1^x2^x4
        let src = d.sources.iter().position(|f| f.0 == vec![2, 3]).unwrap();
        let row = d.targets.iter().position(|f| f.0 == vec![0, 1, 3]).unwrap();
        assert_eq!(d.columns[src], vec![(row, scalar(-1))]);
    }
}
