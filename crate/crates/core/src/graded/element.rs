use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Monomial, Scalar};
use crate::graded::basis::GradedBasis;
use crate::graded::sparse::{self, SparseVec};

/// A homogeneous element `Σ c_i t^(d - deg_i) e_i` of a free graded module.
///
/// Only the scalars `c_i` are stored; the power of `t` on each coordinate is
/// forced by the element degree `d` and the basis degrees. The basis itself is
/// not owned: operations that need it take it as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousElement {
    degree: i64,
    coords: SparseVec,
}

impl HomogeneousElement {
    /// Validates that every nonzero coordinate has a nonnegative implied exponent.
    pub fn new(basis: &GradedBasis, degree: i64, coords: SparseVec) -> Result<HomogeneousElement> {
        let coords = sparse::normalize(coords);
        for (i, _) in &coords {
            if *i >= basis.len() {
                return Err(Error::BasisMismatch(format!(
                    "coordinate {i} outside basis of rank {}",
                    basis.len()
                )));
            }
            if basis.degree(*i) > degree {
                return Err(Error::NonHomogeneous(format!(
                    "generator `{}` of degree {} cannot appear in an element of degree {degree}",
                    basis.label(*i),
                    basis.degree(*i)
                )));
            }
        }
        Ok(HomogeneousElement { degree, coords })
    }

    /// Builds an element from `(coefficient, exponent, index)` terms, checking
    /// that all terms land in the same degree.
    pub fn from_terms(
        basis: &GradedBasis,
        terms: &[(Scalar, u32, usize)],
    ) -> Result<HomogeneousElement> {
        let mut degree = None;
        let mut coords = Vec::new();
        for (c, e, i) in terms {
            if *i >= basis.len() {
                return Err(Error::BasisMismatch(format!("index {i} out of range")));
            }
            let d = basis.degree(*i) + *e as i64;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::NonHomogeneous(format!(
                        "term t^{e}*{} has degree {d}, expected {prev}",
                        basis.label(*i)
                    )))
                }
                _ => {}
            }
            coords.push((*i, c.clone()));
        }
        let degree = degree.ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        HomogeneousElement::new(basis, degree, coords)
    }

    pub(crate) fn from_parts(degree: i64, coords: SparseVec) -> HomogeneousElement {
        HomogeneousElement { degree, coords }
    }

    pub fn zero(degree: i64) -> HomogeneousElement {
        HomogeneousElement {
            degree,
            coords: Vec::new(),
        }
    }

    /// The basis element `e_i` in its own degree.
    pub fn basis_vector(basis: &GradedBasis, field: Field, i: usize) -> HomogeneousElement {
        HomogeneousElement {
            degree: basis.degree(i),
            coords: vec![(i, field.one())],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn coords(&self) -> &[(usize, Scalar)] {
        &self.coords
    }

    pub(crate) fn into_coords(self) -> SparseVec {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        sparse::get(&self.coords, i)
    }

    /// The monomial coefficient on basis element `i`.
    pub fn term(&self, basis: &GradedBasis, i: usize) -> Option<Monomial> {
        self.coeff(i)
            .map(|c| Monomial::new(c.clone(), (self.degree - basis.degree(i)) as u32))
    }

    pub fn terms<'a>(
        &'a self,
        basis: &'a GradedBasis,
    ) -> impl Iterator<Item = (usize, Monomial)> + 'a {
        self.coords.iter().map(move |(i, c)| {
            (
                *i,
                Monomial::new(c.clone(), (self.degree - basis.degree(*i)) as u32),
            )
        })
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: u32) -> HomogeneousElement {
        HomogeneousElement {
            degree: self.degree + k as i64,
            coords: self.coords.clone(),
        }
    }

    pub fn scale(&self, a: &Scalar) -> HomogeneousElement {
        HomogeneousElement {
            degree: self.degree,
            coords: sparse::scale(&self.coords, a),
        }
    }

    /// `self + a·t^(deg self - deg other)·other`; the power of `t` must be nonnegative.
    pub fn add_scaled(&mut self, a: &Scalar, other: &HomogeneousElement) -> Result<()> {
        if other.degree > self.degree {
            return Err(Error::NonHomogeneous(format!(
                "cannot add an element of degree {} into degree {}",
                other.degree, self.degree
            )));
        }
        sparse::axpy(&mut self.coords, a, &other.coords);
        Ok(())
    }

    pub fn add(&self, other: &HomogeneousElement) -> Result<HomogeneousElement> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::NonHomogeneous(format!(
                "degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut coords = self.coords.clone();
        if let Some((_, c)) = other.coords.first() {
            sparse::axpy(&mut coords, &c.field().one(), &other.coords);
        }
        Ok(HomogeneousElement { degree, coords })
    }

    /// Renders with the labels of `basis`, e.g. `1t^1*ab + -1t^0*ad`.
    pub fn display<'a>(&'a self, basis: &'a GradedBasis) -> ElementDisplay<'a> {
        ElementDisplay {
            element: self,
            basis,
        }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a HomogeneousElement,
    basis: &'a GradedBasis,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, m)) in self.element.terms(self.basis).enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", m, self.basis.label(i))?;
        }
        Ok(())
    }
}
