//! Tensor products, duals and homs, computed on Smith normal form presentations.

use crate::error::{Error, Result};
use crate::graded::{GradedBasis, HomogeneousElement};
use crate::presentation::{Minimized, Presentation, PresentationMorphism};

/// Smallest annihilator exponent of a family of generators; `None` if all are free.
pub(crate) fn min_exponent(exps: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    exps.into_iter().flatten().min()
}

pub(crate) fn snf_form(p: &Presentation) -> Minimized {
    p.minimize_with_change(false)
}

/// `P ⊗ Q`: generators are pairs, each killed by the smaller of the two exponents.
pub fn tensor(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(
            p.field().to_string(),
            q.field().to_string(),
        ));
    }
    let (mp, mq) = (snf_form(p), snf_form(q));
    let (gp, gq) = (mp.presentation.gens(), mq.presentation.gens());
    let mut gens = Vec::new();
    let mut exps = Vec::new();
    for (i, a) in mp.exponents.iter().enumerate() {
        for (j, b) in mq.exponents.iter().enumerate() {
            gens.push((
                format!("{}@{}", gp.label(i), gq.label(j)),
                gp.degree(i) + gq.degree(j),
            ));
            exps.push(min_exponent([*a, *b]));
        }
    }
    Ok(Presentation::from_bars(
        p.field(),
        GradedBasis::new_dedup(gens),
        &exps,
        None,
    ))
}

/// Dual basis `x*` in degree `-deg x`, keeping the annihilator of `x`.
pub fn dual(p: &Presentation) -> Presentation {
    let m = snf_form(p);
    let g = m.presentation.gens();
    let gens = GradedBasis::new_dedup(g.iter().map(|(l, d)| (format!("{l}*"), -d)));
    Presentation::from_bars(p.field(), gens, &m.exponents, None)
}

/// `hom(P, Q) = P* ⊗ Q`.
pub fn hom(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    tensor(&dual(p), q)
}

/// A morphism `P → Q` as a degree-0 element of [`hom`]`(P, Q)`: the coefficient
/// of `x* @ u` is the entry of the map from `x` to `u`, in the Smith normal form bases.
pub fn hom_element(f: &PresentationMorphism) -> Result<HomogeneousElement> {
    let (mp, mq) = (snf_form(f.src()), snf_form(f.dst()));
    let phi = mq.to_new.compose(f.phi())?.compose(&mp.from_new)?;
    let nq = mq.exponents.len();
    let mut coords = Vec::new();
    for i in 0..phi.ncols() {
        for (j, c) in phi.column(i) {
            coords.push((i * nq + j, c.clone()));
        }
    }
    let h = hom(f.src(), f.dst())?;
    HomogeneousElement::new(h.gens(), 0, coords)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `P ⊗_k Q` with `t` acting on one factor. With `Side::Left`, `t` moves the `P`
/// factor and every k-basis element of `Q` in degree `e` contributes a copy of `P`
/// shifted by `e`; `Q` must be finite dimensional. `Side::Right` mirrors this.
pub fn tensor_over_k(p: &Presentation, q: &Presentation, side: Side) -> Result<Presentation> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(
            p.field().to_string(),
            q.field().to_string(),
        ));
    }
    let (acting, other) = match side {
        Side::Left => (p, q),
        Side::Right => (q, p),
    };
    let ma = snf_form(acting);
    let mo = snf_form(other);
    let (ga, go) = (ma.presentation.gens(), mo.presentation.gens());
    let mut gens = Vec::new();
    let mut exps = Vec::new();
    for (j, e) in mo.exponents.iter().enumerate() {
        let Some(len) = e else {
            return Err(Error::InvalidArgument(format!(
                "generator `{}` has an infinite bar; the tensor product over k would have infinite rank",
                go.label(j)
            )));
        };
        let b = go.degree(j);
        for shift in b..b + *len as i64 {
            for (i, a) in ma.exponents.iter().enumerate() {
                let label = match side {
                    Side::Left => format!("{}@{}_{}", ga.label(i), go.label(j), shift),
                    Side::Right => format!("{}_{}@{}", go.label(j), shift, ga.label(i)),
                };
                gens.push((label, ga.degree(i) + shift));
                exps.push(*a);
            }
        }
    }
    Ok(Presentation::from_bars(
        p.field(),
        GradedBasis::new_dedup(gens),
        &exps,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn bars(f: Field, gens: &[(&str, i64)], exps: &[Option<u32>]) -> Presentation {
        Presentation::from_bars(
            f,
            GradedBasis::new(gens.iter().map(|(l, d)| (*l, *d))).unwrap(),
            exps,
            None,
        )
    }

    #[test]
    fn interval_tensor() {
        let f = Field::Rationals;
        let a = bars(f, &[("x", 1)], &[Some(4)]);
        let b = bars(f, &[("y", 2)], &[Some(8)]);
        assert_eq!(
            tensor(&a, &b).unwrap().barcode().pairs(),
            vec![(3, Some(7))]
        );
        let unit = bars(f, &[("1", 0)], &[None]);
        assert_eq!(tensor(&a, &unit).unwrap().barcode(), a.barcode());
    }

    #[test]
    fn dual_degrees() {
        let f = Field::Rationals;
        let m = bars(f, &[("x", 1), ("y", 2)], &[Some(3), Some(4)]);
        let d = dual(&m);
        assert_eq!(d.gens().labels(), &["x*", "y*"]);
        assert_eq!(d.gens().degrees(), &[-1, -2]);
        assert_eq!(d.barcode().pairs(), vec![(-2, Some(2)), (-1, Some(2))]);
    }

    #[test]
    fn tensor_over_k_slices() {
        let f = Field::Rationals;
        let p = bars(f, &[("x", 1)], &[None]);
        let q = bars(f, &[("u", 0)], &[Some(2)]);
        let out = tensor_over_k(&p, &q, Side::Left).unwrap();
        assert_eq!(out.barcode().pairs(), vec![(1, None), (2, None)]);
        let mirrored = tensor_over_k(&q, &p, Side::Right).unwrap();
        assert_eq!(mirrored.barcode(), out.barcode());
        assert!(matches!(
            tensor_over_k(&q, &p, Side::Left),
            Err(Error::InvalidArgument(_))
        ));
        let k0 = bars(f, &[("u", 0)], &[Some(1)]);
        assert_eq!(
            tensor_over_k(&p, &k0, Side::Left).unwrap().barcode(),
            p.barcode()
        );
    }
}
