use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered basis of a free graded `k[t]`-module: labelled generators with integer degrees.
///
/// Degrees may be negative (duals live in negative degrees).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedBasis {
    pub fn new<I, S>(elements: I) -> Result<GradedBasis>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut seen = HashSet::new();
        for (label, degree) in elements {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            degrees.push(degree);
        }
        Ok(GradedBasis { labels, degrees })
    }

    /// Like [`GradedBasis::new`], but clashing labels get primes appended instead of failing.
    pub fn new_dedup<I, S>(elements: I) -> GradedBasis
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let (labels, degrees) = elements.into_iter().map(|(l, d)| (l.into(), d)).unzip();
        let mut basis = GradedBasis { labels, degrees };
        basis.dedup_labels();
        basis
    }

    /// Basis with generated labels `{prefix}{i}`.
    pub fn numbered(prefix: &str, degrees: impl IntoIterator<Item = i64>) -> GradedBasis {
        let degrees: Vec<i64> = degrees.into_iter().collect();
        let labels = (0..degrees.len()).map(|i| format!("{prefix}{i}")).collect();
        GradedBasis { labels, degrees }
    }

    pub fn empty() -> GradedBasis {
        GradedBasis::default()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.degrees.iter().copied())
    }

    /// Indices sorted by ascending degree, stable in the original order.
    pub fn ascending_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.degrees[i]);
        order
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    /// Same labels and degrees up to relabelling: equal degree sequences.
    pub fn same_degrees(&self, other: &GradedBasis) -> bool {
        self.degrees == other.degrees
    }

    pub fn select(&self, indices: &[usize]) -> GradedBasis {
        GradedBasis {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            degrees: indices.iter().map(|&i| self.degrees[i]).collect(),
        }
    }

    /// Every degree moved by `by`.
    pub fn shifted(&self, by: i64) -> GradedBasis {
        GradedBasis {
            labels: self.labels.clone(),
            degrees: self.degrees.iter().map(|d| d + by).collect(),
        }
    }

    pub fn relabelled(&self, f: impl Fn(&str) -> String) -> GradedBasis {
        GradedBasis {
            labels: self.labels.iter().map(|l| f(l)).collect(),
            degrees: self.degrees.clone(),
        }
    }

    /// Concatenation `self ⊕ other`. Labels are kept when the two label sets are
    /// disjoint; otherwise every label gets a `_1` / `_2` suffix.
    pub fn concat(&self, other: &GradedBasis) -> GradedBasis {
        let clash = other.labels.iter().any(|l| self.labels.contains(l));
        let (left, right) = if clash {
            (
                self.relabelled(|l| format!("{l}_1")),
                other.relabelled(|l| format!("{l}_2")),
            )
        } else {
            (self.clone(), other.clone())
        };
        let mut labels = left.labels;
        labels.extend(right.labels);
        let mut degrees = left.degrees;
        degrees.extend(right.degrees);
        let mut basis = GradedBasis { labels, degrees };
        basis.dedup_labels();
        basis
    }

    /// Appends primes until labels are unique. Only reachable through pathological suffix clashes.
    fn dedup_labels(&mut self) {
        let mut seen = HashSet::new();
        for label in &mut self.labels {
            while !seen.insert(label.clone()) {
                label.push('\'');
            }
        }
    }
}

impl fmt::Display for GradedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (label, degree)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{label}({degree})")?;
        }
        write!(f, "]")
    }
}
