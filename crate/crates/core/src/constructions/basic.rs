use crate::error::{Error, Result};
use crate::graded::echelon::{reduce_with_coefficients, row_echelon};
use crate::graded::{free_kernel, GradedBasis, GradedMatrix};
use crate::presentation::{Presentation, PresentationMorphism};

fn same_field(p: &Presentation, q: &Presentation) -> Result<()> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(
            p.field().to_string(),
            q.field().to_string(),
        ));
    }
    Ok(())
}

fn require_valid(f: &PresentationMorphism) -> Result<()> {
    if !f.is_valid() {
        return Err(Error::IncompatibleMorphism(
            "a relation of the source does not map into the relations of the target".into(),
        ));
    }
    Ok(())
}

/// `P ⊕ Q`: block diagonal inclusion.
pub fn direct_sum(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    same_field(p, q)?;
    Ok(Presentation::new(p.incl().block_diag(q.incl())))
}

/// `Q / (i_Q(G_Q) + φ(F_P))`: the generators of `P` join the relations.
pub fn cokernel(f: &PresentationMorphism) -> Result<Presentation> {
    require_valid(f)?;
    Ok(cokernel_unchecked(f))
}

pub(crate) fn cokernel_unchecked(f: &PresentationMorphism) -> Presentation {
    let incl = f.dst().incl().hstack(f.phi()).expect("common target F_Q");
    Presentation::new(incl)
}

/// Kernel of `f` together with its inclusion into `f.src()`.
///
/// Generators are the `F_P`-parts of a free basis of
/// `ker(F_P ⊕ G_Q → F_Q, (x, g) ↦ φ(x) − i_Q(g))`; relations are the `F_K`-parts
/// of a free basis of `ker(F_K ⊕ G_P → F_P, (k, g) ↦ k − i_P(g))`.
pub fn kernel(f: &PresentationMorphism) -> Result<(Presentation, PresentationMorphism)> {
    require_valid(f)?;
    Ok(kernel_unchecked(f))
}

pub(crate) fn kernel_unchecked(f: &PresentationMorphism) -> (Presentation, PresentationMorphism) {
    let field = f.field();
    let p = f.src();
    let np = p.gens().len();

    let stacked = f
        .phi()
        .hstack(&f.dst().incl().negated())
        .expect("common target F_Q");
    let k1 = free_kernel(&stacked);
    let proj = k1.select_rows(&(0..np).collect::<Vec<_>>());
    let keep: Vec<usize> = (0..proj.ncols())
        .filter(|&j| !proj.column(j).is_empty())
        .collect();
    let gens_k = GradedBasis::numbered("k", keep.iter().map(|&j| proj.source().degree(j)));
    let incl_k = proj
        .select_columns(&keep)
        .with_source(gens_k.clone())
        .expect("same degrees")
        .with_target(p.gens().clone())
        .expect("same degrees");

    let nk = gens_k.len();
    let stacked = incl_k
        .hstack(&p.incl().negated())
        .expect("common target F_P");
    let k2 = free_kernel(&stacked);
    let proj = k2.select_rows(&(0..nk).collect::<Vec<_>>());
    let keep: Vec<usize> = (0..proj.ncols())
        .filter(|&j| !proj.column(j).is_empty())
        .collect();
    let rels_k = GradedBasis::numbered("kr", keep.iter().map(|&j| proj.source().degree(j)));
    let rel_cols = proj.select_columns(&keep).columns().to_vec();
    let k =
        Presentation::from_parts(field, gens_k, rels_k, rel_cols).expect("kernel is homogeneous");
    let inclusion =
        PresentationMorphism::new_unchecked(k.clone(), p.clone(), incl_k).expect("shapes agree");
    (k, inclusion)
}

/// `(i_Q(G_Q) + φ(F_P)) / i_Q(G_Q)`, presented on an echelon basis of the numerator.
pub fn image(f: &PresentationMorphism) -> Result<Presentation> {
    require_valid(f)?;
    let field = f.field();
    let rels_q = f.dst().incl();
    let rel_basis = row_echelon(rels_q).basis();
    let reduced: Vec<_> = (0..f.phi().ncols())
        .map(|j| {
            reduce_with_coefficients(&f.phi().column_element(j), &rel_basis)
                .0
                .into_coords()
        })
        .collect();
    let reduced = GradedMatrix::from_columns(
        field,
        f.phi().source().clone(),
        f.phi().target().clone(),
        reduced,
    )
    .expect("reduction preserves homogeneity");
    let combined = rel_basis.hstack(&reduced).expect("common target F_Q");
    let span = row_echelon(&combined).basis();
    let gens = GradedBasis::numbered("e", span.source().degrees().iter().copied());
    let span = span.with_source(gens.clone()).expect("same degrees");
    let mut cols = Vec::new();
    for j in 0..rels_q.ncols() {
        let (rest, coeffs) = reduce_with_coefficients(&rels_q.column_element(j), &span);
        debug_assert!(rest.is_zero());
        cols.push(coeffs);
    }
    Ok(
        Presentation::from_parts(field, gens, rels_q.source().clone(), cols)
            .expect("coefficients are homogeneous"),
    )
}

/// Free basis of `ker([f | −g])` on `A ⊕ B`, with the two projections.
pub fn free_pullback(
    f: &GradedMatrix,
    g: &GradedMatrix,
) -> Result<(GradedBasis, GradedMatrix, GradedMatrix)> {
    if !f.target().same_degrees(g.target()) {
        return Err(Error::BasisMismatch(
            "free pullback needs a common target".into(),
        ));
    }
    let na = f.ncols();
    let k = free_kernel(&f.hstack(&g.negated())?);
    let pb = GradedBasis::numbered("pb", k.source().degrees().iter().copied());
    let k = k.with_source(pb.clone())?;
    let proj_a = k
        .select_rows(&(0..na).collect::<Vec<_>>())
        .with_target(f.source().clone())?;
    let proj_b = k
        .select_rows(&(na..k.nrows()).collect::<Vec<_>>())
        .with_target(g.source().clone())?;
    Ok((pb, proj_a, proj_b))
}

/// Pullback of `P → R ← Q` as the kernel of `(p, q) ↦ f(p) − g(q)`.
pub fn pullback(
    f: &PresentationMorphism,
    g: &PresentationMorphism,
) -> Result<(Presentation, PresentationMorphism, PresentationMorphism)> {
    if f.dst() != g.dst() {
        return Err(Error::IncompatibleMorphism(
            "pullback needs a common target".into(),
        ));
    }
    require_valid(f)?;
    require_valid(g)?;
    let sum = direct_sum(f.src(), g.src())?;
    let phi = f.phi().hstack(&g.phi().negated())?;
    let diff = PresentationMorphism::new_unchecked(sum, f.dst().clone(), phi)?;
    let (k, incl) = kernel_unchecked(&diff);
    let np = f.src().gens().len();
    let rows_p: Vec<usize> = (0..np).collect();
    let rows_q: Vec<usize> = (np..incl.phi().nrows()).collect();
    let proj_p = incl
        .phi()
        .select_rows(&rows_p)
        .with_target(f.src().gens().clone())?;
    let proj_q = incl
        .phi()
        .select_rows(&rows_q)
        .with_target(g.src().gens().clone())?;
    let proj_p = PresentationMorphism::new_unchecked(k.clone(), f.src().clone(), proj_p)?;
    let proj_q = PresentationMorphism::new_unchecked(k.clone(), g.src().clone(), proj_q)?;
    Ok((k, proj_p, proj_q))
}

/// Pushout of `P ← R → Q` as the cokernel of `r ↦ (f(r), −g(r))`.
pub fn pushout(f: &PresentationMorphism, g: &PresentationMorphism) -> Result<Presentation> {
    if f.src() != g.src() {
        return Err(Error::IncompatibleMorphism(
            "pushout needs a common source".into(),
        ));
    }
    require_valid(f)?;
    require_valid(g)?;
    let sum = direct_sum(f.dst(), g.dst())?;
    let phi = f.phi().vstack(&g.phi().negated())?;
    let phi = phi.with_target(sum.gens().clone())?;
    let m = PresentationMorphism::new_unchecked(f.src().clone(), sum, phi)?;
    Ok(cokernel_unchecked(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn bar(f: Field, label: &str, birth: i64, len: Option<u32>) -> Presentation {
        Presentation::from_bars(f, GradedBasis::new([(label, birth)]).unwrap(), &[len], None)
    }

    #[test]
    fn kernel_of_projection_onto_shorter_bar() {
        // x in [0,5) maps onto y in [0,2): kernel is t^2 x, the bar [2,5)
        let f = Field::Rationals;
        let p = bar(f, "x", 0, Some(5));
        let q = bar(f, "y", 0, Some(2));
        let phi = GradedMatrix::from_columns(
            f,
            p.gens().clone(),
            q.gens().clone(),
            vec![vec![(0, f.one())]],
        )
        .unwrap();
        let m = PresentationMorphism::new(p.clone(), q.clone(), phi).unwrap();
        let (k, incl) = kernel(&m).unwrap();
        assert_eq!(k.barcode().without_ephemeral().pairs(), vec![(2, Some(5))]);
        assert!(incl.then(&m).unwrap().is_zero_on_slices(0, 6));
        assert_eq!(
            image(&m).unwrap().barcode().without_ephemeral().pairs(),
            vec![(0, Some(2))]
        );
        assert_eq!(
            cokernel(&m).unwrap().barcode().without_ephemeral().pairs(),
            vec![]
        );
    }

    #[test]
    fn identity_and_zero_morphisms() {
        let f = Field::Prime(5);
        let p = bar(f, "x", 1, Some(3));
        let id = PresentationMorphism::identity(&p);
        for d in 0..6 {
            assert_eq!(kernel(&id).unwrap().0.dimension_at(d), 0);
            assert_eq!(cokernel(&id).unwrap().dimension_at(d), 0);
            assert_eq!(image(&id).unwrap().dimension_at(d), p.dimension_at(d));
        }
        let zero = PresentationMorphism::zero(&p, &p);
        let (k, _) = kernel(&zero).unwrap();
        assert_eq!(k.barcode().without_ephemeral(), p.barcode());
        assert!(image(&zero)
            .unwrap()
            .barcode()
            .without_ephemeral()
            .is_empty());
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let f = Field::Rationals;
        let p = bar(f, "x", 0, None);
        let id = PresentationMorphism::identity(&p);
        let (pb, a, b) = pullback(&id, &id).unwrap();
        assert_eq!(pb.barcode().without_ephemeral().pairs(), vec![(0, None)]);
        assert_eq!(a.phi().entry(0, 0), b.phi().entry(0, 0));
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.barcode().without_ephemeral().pairs(), vec![(0, None)]);
    }

    #[test]
    fn free_pullback_graph() {
        let f = Field::Rationals;
        let a = GradedBasis::new([("a", 1)]).unwrap();
        let c = GradedBasis::new([("c", 0)]).unwrap();
        let m = GradedMatrix::from_columns(f, a.clone(), c.clone(), vec![vec![(0, f.from_int(2))]])
            .unwrap();
        let id = GradedMatrix::identity(f, c);
        let (pb, pa, pc) = free_pullback(&m, &id).unwrap();
        assert_eq!(pb.degrees(), &[1]);
        assert_eq!(pa.compose(&GradedMatrix::identity(f, a)).unwrap().nnz(), 1);
        assert_eq!(m.compose(&pa).unwrap(), pc);
    }
}
