//! Sorted sparse coordinate vectors.

use crate::field::Scalar;

/// Coordinates `(index, value)` sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `y += a·x`.
pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &[(usize, Scalar)]) {
    if a.is_zero() || x.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let mut yi = std::mem::take(y).into_iter().peekable();
    let mut xi = x.iter().peekable();
    loop {
        match (yi.peek(), xi.peek()) {
            (Some((iy, _)), Some((ix, _))) => {
                if iy < ix {
                    out.push(yi.next().unwrap());
                } else if ix < iy {
                    let (i, v) = xi.next().unwrap();
                    out.push((*i, a * v));
                } else {
                    let (i, v) = yi.next().unwrap();
                    let (_, w) = xi.next().unwrap();
                    let s = &v + &(a * w);
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
            }
            (Some(_), None) => out.push(yi.next().unwrap()),
            (None, Some(_)) => {
                let (i, v) = xi.next().unwrap();
                out.push((*i, a * v));
            }
            (None, None) => break,
        }
    }
    *y = out;
}

pub fn get(v: &[(usize, Scalar)], index: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&index, |(i, _)| *i)
        .ok()
        .map(|pos| &v[pos].1)
}

pub fn scale(v: &[(usize, Scalar)], a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, a * x)).collect()
}

/// Sorts, merges duplicates and drops zeros.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
