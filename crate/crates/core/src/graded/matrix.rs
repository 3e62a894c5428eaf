use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Monomial, Scalar};
use crate::graded::basis::GradedBasis;
use crate::graded::element::HomogeneousElement;
use crate::graded::sparse::{self, SparseVec};

/// A degree-0 map between free graded modules.
///
/// Column `j` is the image of `source[j]`, stored as sparse scalars over the
/// target basis. The entry at `(i, j)` is the monomial `c·t^(deg source[j] -
/// deg target[i])`; constructors reject any nonzero entry whose implied
/// exponent would be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    field: Field,
    source: GradedBasis,
    target: GradedBasis,
    cols: Vec<SparseVec>,
}

impl GradedMatrix {
    pub fn zero(field: Field, source: GradedBasis, target: GradedBasis) -> GradedMatrix {
        let cols = vec![Vec::new(); source.len()];
        GradedMatrix {
            field,
            source,
            target,
            cols,
        }
    }

    pub fn identity(field: Field, basis: GradedBasis) -> GradedMatrix {
        let cols = (0..basis.len()).map(|i| vec![(i, field.one())]).collect();
        GradedMatrix {
            field,
            source: basis.clone(),
            target: basis,
            cols,
        }
    }

    pub fn from_columns(
        field: Field,
        source: GradedBasis,
        target: GradedBasis,
        cols: Vec<SparseVec>,
    ) -> Result<GradedMatrix> {
        if cols.len() != source.len() {
            return Err(Error::BasisMismatch(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.len()
            )));
        }
        let cols: Vec<SparseVec> = cols.into_iter().map(sparse::normalize).collect();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                if c.field() != field {
                    return Err(Error::FieldMismatch(
                        c.field().to_string(),
                        field.to_string(),
                    ));
                }
                if *i >= target.len() {
                    return Err(Error::BasisMismatch(format!(
                        "row {i} outside target of rank {}",
                        target.len()
                    )));
                }
                if source.degree(j) < target.degree(*i) {
                    return Err(Error::NonHomogeneous(format!(
                        "entry ({}, {}) would need t^{}",
                        target.label(*i),
                        source.label(j),
                        source.degree(j) - target.degree(*i)
                    )));
                }
            }
        }
        Ok(GradedMatrix {
            field,
            source,
            target,
            cols,
        })
    }

    /// Columns given as homogeneous elements over `target`, one per source generator.
    pub fn from_elements(
        field: Field,
        source: GradedBasis,
        target: GradedBasis,
        elements: Vec<HomogeneousElement>,
    ) -> Result<GradedMatrix> {
        for (j, e) in elements.iter().enumerate() {
            if !e.is_zero() && e.degree() != source.degree(j) {
                return Err(Error::NonHomogeneous(format!(
                    "image of `{}` has degree {}, expected {}",
                    source.label(j),
                    e.degree(),
                    source.degree(j)
                )));
            }
        }
        let cols = elements
            .into_iter()
            .map(HomogeneousElement::into_coords)
            .collect();
        GradedMatrix::from_columns(field, source, target, cols)
    }

    /// Builds from a dense table of scalars (`rows[i][j]`); zeros are dropped.
    pub fn from_dense(
        field: Field,
        source: GradedBasis,
        target: GradedBasis,
        rows: &[Vec<Scalar>],
    ) -> Result<GradedMatrix> {
        let mut cols = vec![Vec::new(); source.len()];
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    cols[j].push((i, c.clone()));
                }
            }
        }
        GradedMatrix::from_columns(field, source, target, cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }

    pub fn ncols(&self) -> usize {
        self.source.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    /// Column `j` as an element of the target in degree `deg source[j]`.
    pub fn column_element(&self, j: usize) -> HomogeneousElement {
        HomogeneousElement::from_parts(self.source.degree(j), self.cols[j].clone())
    }

    pub fn scalar(&self, i: usize, j: usize) -> Option<&Scalar> {
        sparse::get(&self.cols[j], i)
    }

    pub fn entry(&self, i: usize, j: usize) -> Monomial {
        match self.scalar(i, j) {
            Some(c) => Monomial::new(c.clone(), self.exponent(i, j)),
            None => Monomial::zero(self.field),
        }
    }

    /// Exponent forced on entry `(i, j)` by the degrees. Only meaningful when nonnegative.
    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        (self.source.degree(j) - self.target.degree(i)) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, x: &HomogeneousElement) -> Result<HomogeneousElement> {
        let mut out = Vec::new();
        for (j, c) in x.coords() {
            if *j >= self.ncols() {
                return Err(Error::BasisMismatch(format!(
                    "coordinate {j} outside source of rank {}",
                    self.ncols()
                )));
            }
            if self.source.degree(*j) > x.degree() {
                return Err(Error::NonHomogeneous("element not over this source".into()));
            }
            sparse::axpy(&mut out, c, &self.cols[*j]);
        }
        Ok(HomogeneousElement::from_parts(x.degree(), out))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        if !rhs.target.same_degrees(&self.source) {
            return Err(Error::BasisMismatch(format!(
                "cannot compose: {} vs {}",
                rhs.target, self.source
            )));
        }
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let mut out = Vec::new();
                for (k, c) in col {
                    sparse::axpy(&mut out, c, &self.cols[*k]);
                }
                out
            })
            .collect();
        Ok(GradedMatrix {
            field: self.field,
            source: rhs.source.clone(),
            target: self.target.clone(),
            cols,
        })
    }

    pub fn negated(&self) -> GradedMatrix {
        let minus = -self.field.one();
        GradedMatrix {
            field: self.field,
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(|c| sparse::scale(c, &minus)).collect(),
        }
    }

    /// `[self | other]` over a common target.
    pub fn hstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if !self.target.same_degrees(&other.target) {
            return Err(Error::BasisMismatch("hstack needs a common target".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(GradedMatrix {
            field: self.field,
            source: self.source.concat(&other.source),
            target: self.target.clone(),
            cols,
        })
    }

    /// `[self ; other]` over a common source: the map into `target ⊕ other.target`.
    pub fn vstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if !self.source.same_degrees(&other.source) {
            return Err(Error::BasisMismatch("vstack needs a common source".into()));
        }
        let offset = self.nrows();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, x)| (i + offset, x.clone())));
                c
            })
            .collect();
        Ok(GradedMatrix {
            field: self.field,
            source: self.source.clone(),
            target: self.target.concat(&other.target),
            cols,
        })
    }

    pub fn block_diag(&self, other: &GradedMatrix) -> GradedMatrix {
        let offset = self.nrows();
        let mut cols = self.cols.clone();
        cols.extend(
            other
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, x)| (i + offset, x.clone())).collect()),
        );
        GradedMatrix {
            field: self.field,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            cols,
        }
    }

    pub fn select_columns(&self, indices: &[usize]) -> GradedMatrix {
        GradedMatrix {
            field: self.field,
            source: self.source.select(indices),
            target: self.target.clone(),
            cols: indices.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Restriction to the rows in `indices` (renumbered in the given order).
    pub fn select_rows(&self, indices: &[usize]) -> GradedMatrix {
        let mut position = vec![None; self.nrows()];
        for (new, &old) in indices.iter().enumerate() {
            position[old] = Some(new);
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                sparse::normalize(
                    c.iter()
                        .filter_map(|(i, x)| position[*i].map(|n| (n, x.clone())))
                        .collect(),
                )
            })
            .collect();
        GradedMatrix {
            field: self.field,
            source: self.source.clone(),
            target: self.target.select(indices),
            cols,
        }
    }

    pub fn with_source(&self, source: GradedBasis) -> Result<GradedMatrix> {
        if !source.same_degrees(&self.source) {
            return Err(Error::BasisMismatch(
                "relabelled source changes degrees".into(),
            ));
        }
        Ok(GradedMatrix {
            source,
            ..self.clone()
        })
    }

    pub fn with_target(&self, target: GradedBasis) -> Result<GradedMatrix> {
        if !target.same_degrees(&self.target) {
            return Err(Error::BasisMismatch(
                "relabelled target changes degrees".into(),
            ));
        }
        Ok(GradedMatrix {
            target,
            ..self.clone()
        })
    }

    /// Dense scalar table `rows[i][j]`.
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![self.field.zero(); self.ncols()]; self.nrows()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i][j] = c.clone();
            }
        }
        rows
    }

    /// Structural equality of the scalar entries, ignoring labels.
    pub fn same_entries(&self, other: &GradedMatrix) -> bool {
        self.source.same_degrees(&other.source)
            && self.target.same_degrees(&other.target)
            && self.cols == other.cols
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows() {
            write!(f, "{:>8} |", self.target.label(i))?;
            for j in 0..self.ncols() {
                let m = self.entry(i, j);
                if m.is_zero() {
                    write!(f, " {:>8}", ".")?;
                } else {
                    write!(f, " {:>8}", m.to_string())?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
