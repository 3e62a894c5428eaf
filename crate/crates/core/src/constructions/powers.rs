//! Exterior and symmetric powers on Smith normal form presentations.

use crate::constructions::tensor::{min_exponent, snf_form};
use crate::error::{Error, Result};
use crate::graded::GradedBasis;
use crate::presentation::Presentation;

/// Sorts `indices` and returns the sign of the sorting permutation, or `None`
/// when an index repeats (the wedge vanishes).
pub fn wedge_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

fn subsets(n: usize, m: usize, allow_repeats: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        m: usize,
        rep: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(if rep { i } else { i + 1 }, n, m, rep, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, allow_repeats, &mut cur, &mut out);
    out
}

fn power(p: &Presentation, m: usize, symmetric: bool) -> Result<Presentation> {
    if m < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if m == 1 {
        return Ok(p.clone());
    }
    let mp = snf_form(p);
    let g = mp.presentation.gens();
    let sep = if symmetric { "." } else { "^" };
    let mut gens = Vec::new();
    let mut exps = Vec::new();
    for s in subsets(g.len(), m, symmetric) {
        let label = s.iter().map(|&i| g.label(i)).collect::<Vec<_>>().join(sep);
        gens.push((label, s.iter().map(|&i| g.degree(i)).sum::<i64>()));
        exps.push(min_exponent(s.iter().map(|&i| mp.exponents[i])));
    }
    Ok(Presentation::from_bars(
        p.field(),
        GradedBasis::new_dedup(gens),
        &exps,
        None,
    ))
}

/// `Λ^m P`: one generator per `m`-subset, killed by the smallest member exponent.
pub fn exterior_power(p: &Presentation, m: usize) -> Result<Presentation> {
    power(p, m, false)
}

/// `S^m P`: one generator per multiset of size `m`, killed by the smallest member exponent.
pub fn symmetric_power(p: &Presentation, m: usize) -> Result<Presentation> {
    power(p, m, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn bars(gens: &[(&str, i64)], exps: &[Option<u32>]) -> Presentation {
        let b = GradedBasis::new(gens.iter().map(|(l, d)| (*l, *d))).unwrap();
        Presentation::from_bars(Field::Rationals, b, exps, None)
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(wedge_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(wedge_sign(&[1, 1]), None);
    }

    #[test]
    fn exterior_square_of_two_bars() {
        let p = bars(&[("x", 1), ("y", 2)], &[Some(4), Some(8)]);
        let w = exterior_power(&p, 2).unwrap();
        assert_eq!(w.gens().labels(), &["x^y"]);
        assert_eq!(w.barcode().pairs(), vec![(3, Some(7))]);
        let free = bars(&[("x", 0)], &[None]);
        assert!(exterior_power(&free, 2).unwrap().gens().is_empty());
        assert!(exterior_power(&p, 0).is_err());
    }

    #[test]
    fn symmetric_square() {
        let p = bars(&[("x", 1)], &[Some(4)]);
        let s = symmetric_power(&p, 2).unwrap();
        assert_eq!(s.gens().labels(), &["x.x"]);
        assert_eq!(s.barcode().pairs(), vec![(2, Some(6))]);
        let free = bars(&[("x", 0)], &[None]);
        assert_eq!(
            symmetric_power(&free, 2).unwrap().barcode().pairs(),
            vec![(0, None)]
        );
    }
}
