//! Echelon reduction of submodules of free graded modules.
//!
//! Submodule generators are the columns of a [`GradedMatrix`]. The leading
//! coordinate of a homogeneous element is the one with the smallest power of
//! `t`, i.e. the largest basis degree; ties go to the larger basis index. A
//! column can only be reduced by basis columns of degree at most its own.

use crate::field::Scalar;
use crate::graded::basis::GradedBasis;
use crate::graded::element::HomogeneousElement;
use crate::graded::matrix::GradedMatrix;
use crate::graded::sparse::{self, SparseVec};

/// Position of the leading coordinate of `v` over `basis`.
pub fn leading(basis: &GradedBasis, v: &[(usize, Scalar)]) -> Option<usize> {
    v.iter()
        .map(|(i, _)| *i)
        .max_by_key(|&i| (basis.degree(i), i))
}

/// Result of [`row_echelon`]: `echelon = m · change`, with zero columns where
/// an input column reduced away.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub echelon: GradedMatrix,
    pub change: GradedMatrix,
    /// Leading row of each nonzero echelon column.
    pub pivots: Vec<Option<usize>>,
}

impl Echelon {
    /// Indices of the nonzero echelon columns.
    pub fn basis_columns(&self) -> Vec<usize> {
        (0..self.pivots.len())
            .filter(|&j| self.pivots[j].is_some())
            .collect()
    }

    /// The nonzero echelon columns alone; a free basis of the column space.
    pub fn basis(&self) -> GradedMatrix {
        self.echelon.select_columns(&self.basis_columns())
    }

    /// Indices of the input columns that reduced to zero.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.pivots.len())
            .filter(|&j| self.pivots[j].is_none())
            .collect()
    }
}

/// Column reduction in ascending source degree (stable in index), tracking the
/// combinations of original columns. Only leading coordinates are cleared, as in
/// the persistence reduction algorithm.
pub fn row_echelon(m: &GradedMatrix) -> Echelon {
    let field = m.field();
    let target = m.target();
    let n = m.ncols();
    let mut cols: Vec<SparseVec> = m.columns().to_vec();
    let mut change: Vec<SparseVec> = (0..n).map(|j| vec![(j, field.one())]).collect();
    let mut owner: Vec<Option<usize>> = vec![None; m.nrows()];
    let mut pivots = vec![None; n];
    for j in m.source().ascending_order() {
        while let Some(i) = leading(target, &cols[j]) {
            match owner[i] {
                Some(k) => {
                    let a = sparse::get(&cols[j], i).unwrap();
                    let b = sparse::get(&cols[k], i).unwrap();
                    let factor = -a.div(b).expect("pivot is nonzero");
                    let (ck, tk) = (cols[k].clone(), change[k].clone());
                    sparse::axpy(&mut cols[j], &factor, &ck);
                    sparse::axpy(&mut change[j], &factor, &tk);
                }
                None => {
                    owner[i] = Some(j);
                    pivots[j] = Some(i);
                    break;
                }
            }
        }
    }
    let echelon = GradedMatrix::from_columns(field, m.source().clone(), target.clone(), cols)
        .expect("reduction preserves homogeneity");
    let change = GradedMatrix::from_columns(field, m.source().clone(), m.source().clone(), change)
        .expect("reduction preserves homogeneity");
    Echelon {
        echelon,
        change,
        pivots,
    }
}

/// Reduces `x` against an echelon basis (columns with distinct leading rows),
/// clearing every coordinate that some basis column of small enough degree
/// leads. Also returns the coefficients subtracted, one per basis column.
pub fn reduce_with_coefficients(
    x: &HomogeneousElement,
    basis: &GradedMatrix,
) -> (HomogeneousElement, SparseVec) {
    let target = basis.target();
    let mut lead_of: Vec<Option<usize>> = vec![None; basis.nrows()];
    for j in 0..basis.ncols() {
        if basis.source().degree(j) > x.degree() {
            continue;
        }
        if let Some(i) = leading(target, basis.column(j)) {
            lead_of[i].get_or_insert(j);
        }
    }
    let mut v: SparseVec = x.coords().to_vec();
    let mut coeffs: SparseVec = Vec::new();
    let mut order: Vec<usize> = (0..basis.nrows()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((target.degree(i), i)));
    for i in order {
        let Some(j) = lead_of[i] else { continue };
        let Some(a) = sparse::get(&v, i) else {
            continue;
        };
        let b = sparse::get(basis.column(j), i).unwrap();
        let c = a.div(b).expect("pivot is nonzero");
        sparse::axpy(&mut v, &-&c, basis.column(j));
        sparse::axpy(&mut coeffs, &c, &[(j, c.field().one())]);
    }
    (HomogeneousElement::from_parts(x.degree(), v), coeffs)
}

pub fn normal_form(x: &HomogeneousElement, basis: &GradedMatrix) -> HomogeneousElement {
    reduce_with_coefficients(x, basis).0
}

/// Whether `x` lies in the submodule spanned by the columns of `sub`.
pub fn membership(x: &HomogeneousElement, sub: &GradedMatrix) -> bool {
    x.is_zero() || normal_form(x, &row_echelon(sub).basis()).is_zero()
}

/// Expresses `x` in the columns of `sub`, if it lies in their span.
pub fn solve(x: &HomogeneousElement, sub: &GradedMatrix) -> Option<HomogeneousElement> {
    let ech = row_echelon(sub);
    let cols = ech.basis_columns();
    let basis = ech.echelon.select_columns(&cols);
    let (rest, coeffs) = reduce_with_coefficients(x, &basis);
    if !rest.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for (k, c) in coeffs {
        sparse::axpy(&mut out, &c, ech.change.column(cols[k]));
    }
    Some(HomogeneousElement::from_parts(x.degree(), out))
}

/// A free basis of `ker m`, as columns over `m.source()`, in ascending degree.
///
/// Each basis element is scaled so that its earliest coordinate (smallest
/// degree, then index) has coefficient 1.
pub fn free_kernel(m: &GradedMatrix) -> GradedMatrix {
    let ech = row_echelon(m);
    let mut zeros = ech.zero_columns();
    zeros.sort_by_key(|&j| m.source().degree(j));
    let kernel = ech.change.select_columns(&zeros);
    let source = m.source();
    let cols = kernel
        .columns()
        .iter()
        .map(|c| {
            let first = c
                .iter()
                .min_by_key(|(i, _)| (source.degree(*i), *i))
                .unwrap();
            sparse::scale(c, &first.1.inv().expect("nonzero"))
        })
        .collect();
    GradedMatrix::from_columns(m.field(), kernel.source().clone(), source.clone(), cols)
        .expect("scaling preserves homogeneity")
}
