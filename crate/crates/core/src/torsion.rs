//! Torsion chain complexes and relative persistence.

use crate::constructions::kernel_unchecked;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::echelon::solve;
use crate::graded::{GradedBasis, GradedMatrix, HomogeneousElement};
use crate::homology::{boundary_in_dim, FilteredComplex};
use crate::presentation::{Barcode, Minimized, Presentation, PresentationMorphism};

/// Chain modules `C_p` with relations, and degree-0 boundaries `∂_p : C_p → C_{p-1}`.
#[derive(Clone, Debug)]
pub struct TorsionChainComplex {
    chains: Vec<Presentation>,
    /// `boundaries[p]` is `∂_p`; `∂_0` maps to the zero module.
    boundaries: Vec<GradedMatrix>,
}

impl TorsionChainComplex {
    /// Checks shapes and `∂ ∘ ∂ = 0`.
    pub fn new(
        chains: Vec<Presentation>,
        boundaries: Vec<GradedMatrix>,
    ) -> Result<TorsionChainComplex> {
        if chains.len() != boundaries.len() {
            return Err(Error::InvalidArgument(
                "one boundary per chain module is required".into(),
            ));
        }
        for (p, d) in boundaries.iter().enumerate() {
            if !d.source().same_degrees(chains[p].gens()) {
                return Err(Error::BasisMismatch(format!(
                    "∂_{p} does not start at C_{p}"
                )));
            }
            let expected = if p == 0 {
                0
            } else {
                chains[p - 1].gens().len()
            };
            if d.nrows() != expected || (p > 0 && !d.target().same_degrees(chains[p - 1].gens())) {
                return Err(Error::BasisMismatch(format!(
                    "∂_{p} does not end at C_{}",
                    p as i64 - 1
                )));
            }
            if p > 0 {
                let dd = boundaries[p - 1].compose(d)?;
                if !dd.is_zero() {
                    return Err(Error::BoundarySquare(format!("∂_{} ∘ ∂_{p} ≠ 0", p - 1)));
                }
            }
        }
        Ok(TorsionChainComplex { chains, boundaries })
    }

    pub fn chains(&self) -> &[Presentation] {
        &self.chains
    }

    pub fn boundaries(&self) -> &[GradedMatrix] {
        &self.boundaries
    }

    pub fn top_dim(&self) -> usize {
        self.chains.len().saturating_sub(1)
    }

    pub fn field(&self) -> Field {
        self.chains
            .first()
            .map_or(Field::Rationals, Presentation::field)
    }

    /// `∂_p` as a morphism of presentations `C_p → C_{p-1}`, compatibility unchecked.
    pub fn boundary_morphism(&self, p: usize) -> PresentationMorphism {
        let dst = if p == 0 {
            Presentation::zero(self.chains[0].field())
        } else {
            self.chains[p - 1].clone()
        };
        PresentationMorphism::new_unchecked(self.chains[p].clone(), dst, self.boundaries[p].clone())
            .expect("shapes checked")
    }

    /// Whether every boundary maps relations into relations.
    pub fn is_compatible(&self) -> bool {
        (0..self.chains.len()).all(|p| self.boundary_morphism(p).is_valid())
    }
}

/// Chains with one generator per simplex at its birth and a relation
/// `t^(removal − birth)` per removed simplex.
pub fn relative_complex(c: &FilteredComplex, field: Field) -> Result<TorsionChainComplex> {
    let top = match c.max_dim() {
        Some(d) => d,
        None => return TorsionChainComplex::new(Vec::new(), Vec::new()),
    };
    let mut chains = Vec::new();
    let mut boundaries = Vec::new();
    for p in 0..=top {
        let idx = c.indices_in_dim(p);
        let simplices: Vec<_> = idx.iter().map(|&i| &c.simplices()[i]).collect();
        let gens = GradedBasis::new_dedup(simplices.iter().map(|s| (s.label(), s.birth)));
        let exps: Vec<Option<u32>> = simplices
            .iter()
            .map(|s| s.removal.map(|r| (r - s.birth) as u32))
            .collect();
        let rel_labels: Vec<String> = simplices
            .iter()
            .filter(|s| s.removal.is_some())
            .map(|s| format!("rho_{}", s.label()))
            .collect();
        chains.push(Presentation::from_bars(
            field,
            gens.clone(),
            &exps,
            Some(rel_labels),
        ));
        let d = boundary_in_dim(c, field, p).with_source(gens)?;
        let d = if p == 0 {
            d
        } else {
            d.with_target(chains[p - 1].gens().clone())?
        };
        boundaries.push(d);
    }
    TorsionChainComplex::new(chains, boundaries)
}

/// Intermediate results of the torsion homology computation in one dimension.
#[derive(Clone, Debug)]
pub struct TorsionStage {
    pub dim: usize,
    /// The cycle module as produced by the kernel construction.
    pub kernel: Presentation,
    /// Images of the kernel generators in `C_p`.
    pub kernel_inclusion: GradedMatrix,
    /// The cycle module in Smith normal form.
    pub minimal_kernel: Minimized,
    /// Boundaries of `(p+1)`-chains written in the minimal kernel generators.
    pub boundaries: GradedMatrix,
    /// Cycles modulo boundaries.
    pub homology: Presentation,
}

impl TorsionStage {
    pub fn barcode(&self) -> Barcode {
        self.homology.barcode().with_dim(self.dim)
    }
}

/// Per dimension: `Z_p = ker ∂_p`, then `H_p = Z_p / ∂_{p+1}(C_{p+1})`.
pub fn torsion_stages(tcc: &TorsionChainComplex) -> Result<Vec<TorsionStage>> {
    let field = tcc.field();
    let mut out = Vec::new();
    for p in 0..tcc.chains().len() {
        let (kernel, incl) = kernel_unchecked(&tcc.boundary_morphism(p));
        let kernel_inclusion = incl.phi().clone();
        let minimal_kernel = kernel.minimize_with_change(false);
        let mk = &minimal_kernel.presentation;
        let chains = &tcc.chains()[p];
        let lift_into = kernel_inclusion.hstack(chains.incl())?;
        let mut cols = Vec::new();
        let mut rels = Vec::new();
        if p + 1 < tcc.chains().len() {
            let d = &tcc.boundaries()[p + 1];
            for j in 0..d.ncols() {
                let b = d.column_element(j);
                let x = solve(&b, &kernel_inclusion)
                    .or_else(|| {
                        solve(&b, &lift_into).map(|y| {
                            let k = kernel_inclusion.ncols();
                            let coords =
                                y.coords().iter().filter(|(i, _)| *i < k).cloned().collect();
                            HomogeneousElement::new(kernel.gens(), y.degree(), coords)
                                .expect("restriction is homogeneous")
                        })
                    })
                    .ok_or_else(|| {
                        Error::BrokenReduction(format!(
                            "boundary of {} is not a cycle modulo relations",
                            d.source().label(j)
                        ))
                    })?;
                let x = minimal_kernel.to_new.apply(&x)?;
                rels.push((format!("b_{}", d.source().label(j)), x.degree()));
                cols.push(x.into_coords());
            }
        }
        let boundaries = GradedMatrix::from_columns(
            field,
            GradedBasis::new_dedup(rels),
            mk.gens().clone(),
            cols,
        )?;
        let homology = Presentation::new(mk.incl().hstack(&boundaries)?);
        out.push(TorsionStage {
            dim: p,
            kernel,
            kernel_inclusion,
            minimal_kernel,
            boundaries,
            homology,
        });
    }
    Ok(out)
}

/// Dimension-labelled barcode of the homology of a torsion chain complex.
pub fn torsion_homology(tcc: &TorsionChainComplex) -> Result<Barcode> {
    let mut bars = Barcode::empty();
    for stage in torsion_stages(tcc)? {
        bars = bars.union(&stage.barcode());
    }
    Ok(bars)
}

/// Relative persistence of a complex with removal grades.
pub fn relative_persistence(c: &FilteredComplex, field: Field) -> Result<Barcode> {
    torsion_homology(&relative_complex(c, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{persistent_homology, Simplex};

    /// The 2-simplex with faces born at 0..6 and removed in reverse order at 7..13.
    fn reverse_removals() -> FilteredComplex {
        let s = |v: &[u32], b, r| Simplex::new(v.to_vec(), b, Some(r));
        FilteredComplex::new(vec![
            s(&[0], 0, 13),
            s(&[1], 1, 12),
            s(&[2], 2, 11),
            s(&[0, 1], 3, 10),
            s(&[0, 2], 4, 9),
            s(&[1, 2], 5, 8),
            s(&[0, 1, 2], 6, 7),
        ])
        .unwrap()
    }

    #[test]
    fn reverse_removal_relations() {
        let tcc = relative_complex(&reverse_removals(), Field::Rationals).unwrap();
        let exps: Vec<Vec<i64>> = tcc
            .chains()
            .iter()
            .map(|p| {
                p.rels()
                    .degrees()
                    .iter()
                    .zip(p.gens().degrees())
                    .map(|(r, g)| r - g)
                    .collect()
            })
            .collect();
        assert_eq!(exps, vec![vec![13, 11, 9], vec![7, 5, 3], vec![1]]);
        assert!(!tcc.is_compatible());
    }

    #[test]
    fn reverse_removal_stages() {
        let tcc = relative_complex(&reverse_removals(), Field::Rationals).unwrap();
        let stages = torsion_stages(&tcc).unwrap();
        let degrees: Vec<i64> = stages
            .iter()
            .flat_map(|s| s.kernel.gens().degrees().to_vec())
            .collect();
        assert_eq!(degrees, vec![0, 1, 2, 5, 12, 13, 10]);
        let exps: Vec<Option<u32>> = stages
            .iter()
            .flat_map(|s| s.minimal_kernel.exponents.clone())
            .collect();
        assert_eq!(exps, vec![Some(13), Some(11), Some(9), Some(5)]);
        let lines: Vec<String> = torsion_homology(&tcc)
            .unwrap()
            .intervals()
            .iter()
            .map(|i| i.to_string())
            .collect();
        // t^11 k0 = t^7 (t^4 k0 - t^2 k2) + t^2 (t^9 k2) lies in the relations, so the
        // surviving component dies when vertex 2 is removed at 11
        assert_eq!(lines, vec!["0 0 11", "0 1 3", "0 2 4", "1 5 6"]);
        let h0 = &stages[0].homology;
        assert_eq!((h0.dimension_at(10), h0.dimension_at(11)), (1, 0));
    }

    #[test]
    fn single_vertex_with_torsion() {
        let c = FilteredComplex::new(vec![Simplex::new(vec![0], 0, Some(3))]).unwrap();
        let lines: Vec<String> = relative_persistence(&c, Field::Prime(3))
            .unwrap()
            .intervals()
            .iter()
            .map(|i| i.to_string())
            .collect();
        assert_eq!(lines, vec!["0 0 3"]);
    }

    #[test]
    fn torsion_free_matches_ordinary_persistence() {
        let c = crate::homology::tests::two_triangles();
        let f = Field::Rationals;
        assert_eq!(
            relative_persistence(&c, f).unwrap(),
            persistent_homology(&c, f).unwrap()
        );
    }
}
