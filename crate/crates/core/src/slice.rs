//! Brute-force degree slices: plain k-vector spaces and Gaussian elimination.
//!
//! Nothing here uses echelon forms or the Smith normal form; these functions
//! serve as an independent reference for the graded algorithms.

use crate::field::{Field, Scalar};
use crate::graded::GradedMatrix;

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<Scalar> = a[r].iter().map(|x| &inv * x).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        a[r] = pivot_row;
        r += 1;
    }
    r
}

/// Indices of generators alive in degree `d`.
pub fn alive(degrees: &[i64], d: i64) -> Vec<usize> {
    (0..degrees.len()).filter(|&i| degrees[i] <= d).collect()
}

/// The k-linear map of degree-`d` slices as a dense matrix: rows are target
/// generators of degree ≤ d, columns source generators of degree ≤ d.
pub fn slice_matrix(m: &GradedMatrix, d: i64) -> Vec<Vec<Scalar>> {
    let rows = alive(m.target().degrees(), d);
    let cols = alive(m.source().degrees(), d);
    rows.iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| m.scalar(i, j).cloned().unwrap_or_else(|| m.field().zero()))
                .collect()
        })
        .collect()
}

/// Concatenates dense matrices with the same number of rows side by side.
pub fn hconcat(nrows: usize, blocks: &[Vec<Vec<Scalar>>]) -> Vec<Vec<Scalar>> {
    (0..nrows)
        .map(|i| blocks.iter().flat_map(|b| b[i].iter().cloned()).collect())
        .collect()
}

/// Columns of the degree-`d` slice of the identity of a basis, restricted to
/// generators of degree ≤ `from` (the image of `F_from` in `F_d` under `t^(d - from)`).
pub fn inclusion_columns(field: Field, degrees: &[i64], from: i64, d: i64) -> Vec<Vec<Scalar>> {
    let rows = alive(degrees, d);
    let cols = alive(degrees, from);
    rows.iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

/// Rank of the composite `A_d → F_d → F_d / R_d`, where the columns of `a`
/// and `r` are vectors in the degree-`d` slice of the same free module.
pub fn rank_modulo(nrows: usize, a: &[Vec<Scalar>], r: &[Vec<Scalar>]) -> usize {
    let both = hconcat(nrows, &[a.to_vec(), r.to_vec()]);
    rank(&both) - rank(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let f = Field::Prime(5);
        let i = |n| f.from_int(n);
        assert_eq!(rank(&[vec![i(1), i(2)], vec![i(2), i(4)]]), 1);
        assert_eq!(rank(&[vec![i(1), i(2)], vec![i(2), i(3)]]), 2);
        assert_eq!(rank(&[]), 0);
        let q = Field::Rationals;
        assert_eq!(rank(&[vec![q.from_int(0), q.from_int(0)]]), 0);
    }
}
