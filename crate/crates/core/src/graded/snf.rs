//! Graded Smith normal form.

use crate::field::{Field, Monomial, Scalar};
use crate::graded::basis::GradedBasis;
use crate::graded::matrix::GradedMatrix;

/// `reduced = row_change · m · col_change`.
///
/// The new target basis is given by the columns of `row_change_inv` (expressed
/// in the old target generators), the new source basis by the columns of
/// `col_change`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub row_change: GradedMatrix,
    pub row_change_inv: GradedMatrix,
    pub col_change: GradedMatrix,
    pub col_change_inv: GradedMatrix,
    pub reduced: GradedMatrix,
    /// `(row, col, pivot)` in the order the pivots were chosen.
    pub diagonal: Vec<(usize, usize, Monomial)>,
    pub free_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
}

impl SnfResult {
    /// Pivot exponent for each target row, `None` for free rows.
    pub fn row_exponents(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.reduced.nrows()];
        for (i, _, m) in &self.diagonal {
            out[*i] = Some(m.exponent());
        }
        out
    }
}

struct Dense {
    rows: Vec<Vec<Scalar>>,
}

impl Dense {
    fn identity(field: Field, n: usize) -> Dense {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Dense { rows }
    }

    /// row[dst] += a · row[src]
    fn add_row(&mut self, dst: usize, src: usize, a: &Scalar) {
        let (d, s) = pair_mut(&mut self.rows, dst, src);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x = &*x + &(a * y);
            }
        }
    }

    /// col[dst] += a · col[src]
    fn add_col(&mut self, dst: usize, src: usize, a: &Scalar) {
        for row in &mut self.rows {
            if !row[src].is_zero() {
                row[dst] = &row[dst] + &(a * &row[src]);
            }
        }
    }

    fn into_matrix(self, field: Field, source: &GradedBasis, target: &GradedBasis) -> GradedMatrix {
        GradedMatrix::from_dense(field, source.clone(), target.clone(), &self.rows)
            .expect("graded operations preserve homogeneity")
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Graded Smith normal form by marking rows and columns as finished.
///
/// Each step takes the untreated nonzero columns of lowest degree and, among
/// their entries, one with the smallest power of `t`. Ties go to the bottom-most
/// row, then the leftmost column. The pivot clears its column by row operations
/// and its row by column operations; both are legal because of how it was chosen.
pub fn graded_snf(m: &GradedMatrix) -> SnfResult {
    let field = m.field();
    let (nr, nc) = (m.nrows(), m.ncols());
    let src = m.source();
    let tgt = m.target();
    let mut d = Dense { rows: m.to_dense() };
    let mut s = Dense::identity(field, nr);
    let mut s_inv = Dense::identity(field, nr);
    let mut t = Dense::identity(field, nc);
    let mut t_inv = Dense::identity(field, nc);
    let mut row_done = vec![false; nr];
    let mut col_done = vec![false; nc];
    let mut diagonal = Vec::new();

    loop {
        let nonzero_col = |j: usize, d: &Dense| (0..nr).any(|i| !d.rows[i][j].is_zero());
        let block = (0..nc)
            .filter(|&j| !col_done[j] && nonzero_col(j, &d))
            .map(|j| src.degree(j))
            .min();
        let Some(block) = block else { break };
        let mut best: Option<(usize, usize)> = None;
        for j in (0..nc).filter(|&j| !col_done[j] && src.degree(j) == block) {
            for i in (0..nr).filter(|&i| !row_done[i]) {
                if d.rows[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => {
                        let key = (tgt.degree(i), i);
                        let bkey = (tgt.degree(bi), bi);
                        key > bkey || (key == bkey && j < bj)
                    }
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = best.expect("block has a nonzero entry");
        let pivot = d.rows[pi][pj].clone();

        for i in 0..nr {
            if i == pi || d.rows[i][pj].is_zero() {
                continue;
            }
            let f = d.rows[i][pj].div(&pivot).expect("pivot is nonzero");
            let neg = -&f;
            d.add_row(i, pi, &neg);
            s.add_row(i, pi, &neg);
            s_inv.add_col(pi, i, &f);
        }
        for j in 0..nc {
            if j == pj || d.rows[pi][j].is_zero() {
                continue;
            }
            let f = d.rows[pi][j].div(&pivot).expect("pivot is nonzero");
            let neg = -&f;
            d.add_col(j, pj, &neg);
            t.add_col(j, pj, &neg);
            t_inv.add_row(pj, j, &f);
        }
        row_done[pi] = true;
        col_done[pj] = true;
        let exponent = (src.degree(pj) - tgt.degree(pi)) as u32;
        diagonal.push((pi, pj, Monomial::new(pivot, exponent)));
    }

    SnfResult {
        row_change: s.into_matrix(field, tgt, tgt),
        row_change_inv: s_inv.into_matrix(field, tgt, tgt),
        col_change: t.into_matrix(field, src, src),
        col_change_inv: t_inv.into_matrix(field, src, src),
        reduced: d.into_matrix(field, src, tgt),
        diagonal,
        free_rows: (0..nr).filter(|&i| !row_done[i]).collect(),
        zero_cols: (0..nc).filter(|&j| !col_done[j]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Five-generator example: generators x,y (1), z (2), u,v (3); relations
    /// z+tx+ty, u+t²x+t²y, tv+t²z+t³y, tu+t²z+t³y.
    fn five_gens() -> GradedMatrix {
        let f = Field::Rationals;
        let gens = GradedBasis::new([("x", 1), ("y", 1), ("z", 2), ("u", 3), ("v", 3)]).unwrap();
        let rels = GradedBasis::numbered("r", [2, 3, 4, 4]);
        let one = f.one();
        GradedMatrix::from_columns(
            f,
            rels,
            gens,
            vec![
                vec![(0, one.clone()), (1, one.clone()), (2, one.clone())],
                vec![(0, one.clone()), (1, one.clone()), (3, one.clone())],
                vec![(1, one.clone()), (2, one.clone()), (4, one.clone())],
                vec![(1, one.clone()), (2, one.clone()), (3, one)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn snf_is_consistent() {
        let m = five_gens();
        let r = graded_snf(&m);
        let prod = r
            .row_change
            .compose(&m)
            .unwrap()
            .compose(&r.col_change)
            .unwrap();
        assert_eq!(prod, r.reduced);
        let id_t = GradedMatrix::identity(m.field(), m.target().clone());
        assert!(r
            .row_change
            .compose(&r.row_change_inv)
            .unwrap()
            .same_entries(&id_t));
        let id_s = GradedMatrix::identity(m.field(), m.source().clone());
        assert!(r
            .col_change
            .compose(&r.col_change_inv)
            .unwrap()
            .same_entries(&id_s));
        assert_eq!(r.reduced.nnz(), r.diagonal.len());
    }

    #[test]
    fn diagonal_input_untouched() {
        let f = Field::Prime(7);
        let gens = GradedBasis::new([("a", 0), ("b", 1)]).unwrap();
        let rels = GradedBasis::new([("r", 2), ("s", 1)]).unwrap();
        let m = GradedMatrix::from_columns(
            f,
            rels.clone(),
            gens.clone(),
            vec![vec![(0, f.one())], vec![(1, f.from_int(3))]],
        )
        .unwrap();
        let r = graded_snf(&m);
        assert_eq!(r.reduced, m);
        assert_eq!(r.row_change, GradedMatrix::identity(f, gens));
        assert_eq!(r.col_change, GradedMatrix::identity(f, rels));
        assert!(r.free_rows.is_empty() && r.zero_cols.is_empty());
    }

    #[test]
    fn five_generator_new_basis() {
        let m = five_gens();
        let r = graded_snf(&m);
        let exps: Vec<(usize, u32)> = r
            .diagonal
            .iter()
            .map(|(i, _, p)| (*i, p.exponent()))
            .collect();
        assert_eq!(exps, vec![(2, 0), (3, 0), (4, 1), (1, 3)]);
        assert_eq!(r.free_rows, vec![0]);
        assert!(r.zero_cols.is_empty());
        let new_gen = |i: usize| {
            r.row_change_inv
                .column_element(i)
                .display(m.target())
                .to_string()
        };
        assert_eq!(new_gen(1), "2t^0*x + 1t^0*y");
        assert_eq!(new_gen(2), "1t^1*x + 1t^1*y + 1t^0*z");
        assert_eq!(new_gen(3), "1t^2*x + 1t^2*y + 1t^0*u");
        assert_eq!(new_gen(4), "-1t^2*x + 1t^0*v");
    }
}
