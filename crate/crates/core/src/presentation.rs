//! Finitely presented graded modules, morphisms between them, and barcodes.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::echelon::{normal_form, row_echelon};
use crate::graded::sparse::SparseVec;
use crate::graded::{graded_snf, GradedBasis, GradedMatrix, SnfResult};
use crate::slice;

/// One bar `[birth, death)`; `death = None` is an infinite bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub dim: Option<usize>,
    pub birth: i64,
    pub death: Option<i64>,
}

impl Interval {
    pub fn new(dim: Option<usize>, birth: i64, death: Option<i64>) -> Interval {
        debug_assert!(death.is_none_or(|e| birth <= e));
        Interval { dim, birth, death }
    }

    pub fn finite(birth: i64, death: i64) -> Interval {
        Interval::new(None, birth, Some(death))
    }

    pub fn infinite(birth: i64) -> Interval {
        Interval::new(None, birth, None)
    }

    /// A generator that is killed the moment it appears.
    pub fn is_ephemeral(&self) -> bool {
        self.death == Some(self.birth)
    }

    /// Alive in the degree-`d` slice: `birth ≤ d < death`.
    pub fn alive_at(&self, d: i64) -> bool {
        self.birth <= d && self.death.is_none_or(|e| d < e)
    }

    pub fn length(&self) -> Option<i64> {
        self.death.map(|e| e - self.birth)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Some(p) => write!(f, "{p} ")?,
            None => write!(f, "- ")?,
        }
        match self.death {
            Some(e) => write!(f, "{} {}", self.birth, e),
            None => write!(f, "{} inf", self.birth),
        }
    }
}

/// A multiset of intervals, kept sorted by `(dim, birth, death)` with infinite
/// deaths last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

fn sort_key(i: &Interval) -> (Option<usize>, i64, bool, i64) {
    (i.dim, i.birth, i.death.is_none(), i.death.unwrap_or(0))
}

impl Barcode {
    pub fn new(mut intervals: Vec<Interval>) -> Barcode {
        intervals.sort_by_key(sort_key);
        Barcode { intervals }
    }

    pub fn empty() -> Barcode {
        Barcode::default()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn with_dim(&self, dim: usize) -> Barcode {
        Barcode::new(
            self.intervals
                .iter()
                .map(|i| Interval {
                    dim: Some(dim),
                    ..*i
                })
                .collect(),
        )
    }

    pub fn union(&self, other: &Barcode) -> Barcode {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Barcode::new(all)
    }

    pub fn without_ephemeral(&self) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .filter(|i| !i.is_ephemeral())
                .copied()
                .collect(),
        }
    }

    pub fn in_dim(&self, dim: usize) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .filter(|i| i.dim == Some(dim))
                .copied()
                .collect(),
        }
    }

    /// Number of bars alive in degree `d`.
    pub fn alive_at(&self, d: i64) -> usize {
        self.intervals.iter().filter(|i| i.alive_at(d)).count()
    }

    /// Number of bars alive at both `d` and `d + j`: the rank of `t^j` on the slice.
    pub fn rank_t_power(&self, d: i64, j: i64) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.alive_at(d) && i.alive_at(d + j))
            .count()
    }

    /// `(birth, death)` pairs, ignoring dimensions.
    pub fn pairs(&self) -> Vec<(i64, Option<i64>)> {
        self.intervals.iter().map(|i| (i.birth, i.death)).collect()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.intervals {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

/// `F / i(G)`: generators `F`, relations `G`, and the inclusion `i : G → F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    incl: GradedMatrix,
}

/// A presentation in Smith normal form, together with the change of generators.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub presentation: Presentation,
    /// Old generators written in the new ones.
    pub to_new: GradedMatrix,
    /// New generators written in the old ones.
    pub from_new: GradedMatrix,
    /// Annihilator exponent of each new generator, `None` when free.
    pub exponents: Vec<Option<u32>>,
}

impl Presentation {
    pub fn new(incl: GradedMatrix) -> Presentation {
        Presentation { incl }
    }

    pub fn from_parts(
        field: Field,
        gens: GradedBasis,
        rels: GradedBasis,
        cols: Vec<SparseVec>,
    ) -> Result<Presentation> {
        Ok(Presentation::new(GradedMatrix::from_columns(
            field, rels, gens, cols,
        )?))
    }

    pub fn free(field: Field, gens: GradedBasis) -> Presentation {
        Presentation::new(GradedMatrix::zero(field, GradedBasis::empty(), gens))
    }

    pub fn zero(field: Field) -> Presentation {
        Presentation::free(field, GradedBasis::empty())
    }

    /// Generators in degrees `b_i` killed by `t^α_i` (free when `None`): an
    /// interval module per generator.
    pub fn from_bars(
        field: Field,
        gens: GradedBasis,
        exponents: &[Option<u32>],
        rel_labels: Option<Vec<String>>,
    ) -> Presentation {
        let mut rels = Vec::new();
        let mut cols = Vec::new();
        for (i, e) in exponents.iter().enumerate() {
            if let Some(e) = e {
                let label = match &rel_labels {
                    Some(l) => l[rels.len()].clone(),
                    None => format!("r{}", rels.len()),
                };
                rels.push((label, gens.degree(i) + *e as i64));
                cols.push(vec![(i, field.one())]);
            }
        }
        let rels = GradedBasis::new(rels.clone()).unwrap_or_else(|_| {
            GradedBasis::numbered("r", rels.iter().map(|(_, d)| *d).collect::<Vec<_>>())
        });
        Presentation::new(
            GradedMatrix::from_columns(field, rels, gens, cols)
                .expect("diagonal relations are homogeneous"),
        )
    }

    pub fn field(&self) -> Field {
        self.incl.field()
    }

    pub fn gens(&self) -> &GradedBasis {
        self.incl.target()
    }

    pub fn rels(&self) -> &GradedBasis {
        self.incl.source()
    }

    pub fn incl(&self) -> &GradedMatrix {
        &self.incl
    }

    pub fn snf(&self) -> SnfResult {
        graded_snf(&self.incl)
    }

    /// Unlabelled barcode, length-0 bars included.
    pub fn barcode(&self) -> Barcode {
        let r = self.snf();
        let gens = self.gens();
        let mut bars = Vec::new();
        for (i, _, p) in &r.diagonal {
            let b = gens.degree(*i);
            bars.push(Interval::finite(b, b + p.exponent() as i64));
        }
        for &i in &r.free_rows {
            bars.push(Interval::infinite(gens.degree(i)));
        }
        Barcode::new(bars)
    }

    /// Smith normal form presentation: one generator per free row or pivot row,
    /// each with at most one monic relation `t^α`. Unit pivots are dropped
    /// unless `keep_ephemeral`; zero relations are always dropped.
    pub fn minimize_with_change(&self, keep_ephemeral: bool) -> Minimized {
        let r = self.snf();
        let field = self.field();
        let gens = self.gens();
        let mut row_exp: Vec<Option<Option<u32>>> = vec![None; gens.len()];
        let mut rel_label: Vec<Option<String>> = vec![None; gens.len()];
        for (i, j, p) in &r.diagonal {
            if p.exponent() > 0 || keep_ephemeral {
                row_exp[*i] = Some(Some(p.exponent()));
                rel_label[*i] = Some(self.rels().label(*j).to_string());
            }
        }
        for &i in &r.free_rows {
            row_exp[i] = Some(None);
        }
        let kept: Vec<usize> = (0..gens.len()).filter(|&i| row_exp[i].is_some()).collect();
        let exponents: Vec<Option<u32>> = kept.iter().map(|&i| row_exp[i].unwrap()).collect();

        let from_new = r.row_change_inv.select_columns(&kept);
        let unchanged: Vec<bool> = (0..kept.len())
            .map(|k| from_new.column(k) == [(kept[k], field.one())])
            .collect();
        let mut labels: Vec<String> = kept
            .iter()
            .zip(&unchanged)
            .filter(|(_, u)| **u)
            .map(|(&i, _)| gens.label(i).to_string())
            .collect();
        let mut new_labels = Vec::new();
        for (k, &i) in kept.iter().enumerate() {
            let mut label = gens.label(i).to_string();
            if !unchanged[k] {
                label.push('\'');
                while labels.contains(&label) {
                    label.push('\'');
                }
                labels.push(label.clone());
            }
            new_labels.push(label);
        }
        let new_gens = GradedBasis::new(
            new_labels
                .into_iter()
                .zip(kept.iter().map(|&i| gens.degree(i))),
        )
        .expect("labels made unique");
        let from_new = from_new
            .with_source(new_gens.clone())
            .expect("same degrees");
        let to_new = r
            .row_change
            .select_rows(&kept)
            .with_target(new_gens.clone())
            .expect("same degrees");
        let rel_labels: Vec<String> = kept.iter().filter_map(|&i| rel_label[i].clone()).collect();
        let presentation = Presentation::from_bars(field, new_gens, &exponents, Some(rel_labels));
        Minimized {
            presentation,
            to_new,
            from_new,
            exponents,
        }
    }

    pub fn minimize(&self, keep_ephemeral: bool) -> Presentation {
        self.minimize_with_change(keep_ephemeral).presentation
    }

    /// `dim_k` of the degree-`d` slice, computed from plain slices.
    pub fn dimension_at(&self, d: i64) -> usize {
        let gens = slice::alive(self.gens().degrees(), d).len();
        gens - slice::rank(&slice::slice_matrix(&self.incl, d))
    }

    /// Rank of multiplication by `t^j` from the degree-`d` slice to degree `d + j`.
    pub fn rank_t_power(&self, d: i64, j: i64) -> usize {
        let field = self.field();
        let degrees = self.gens().degrees();
        let nrows = slice::alive(degrees, d + j).len();
        let image = slice::inclusion_columns(field, degrees, d, d + j);
        let rels = slice::slice_matrix(&self.incl, d + j);
        slice::rank_modulo(nrows, &image, &rels)
    }

    /// A degree bound past which all slices of this presentation are stable.
    pub fn stable_degree(&self) -> i64 {
        let g = self.gens().max_degree().unwrap_or(0);
        let r = self.rels().max_degree().unwrap_or(0);
        g.max(r) + 1
    }

    pub fn min_degree(&self) -> i64 {
        self.gens().min_degree().unwrap_or(0)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gens {} rels {}\n{}",
            self.gens(),
            self.rels(),
            self.incl
        )
    }
}

/// A morphism `P → Q` given on generators: `phi : F_P → F_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMorphism {
    src: Presentation,
    dst: Presentation,
    phi: GradedMatrix,
}

impl PresentationMorphism {
    /// Checks shapes and that relations map into relations.
    pub fn new(
        src: Presentation,
        dst: Presentation,
        phi: GradedMatrix,
    ) -> Result<PresentationMorphism> {
        let m = PresentationMorphism::new_unchecked(src, dst, phi)?;
        if !m.is_valid() {
            return Err(Error::IncompatibleMorphism(
                "a relation of the source does not map into the relations of the target".into(),
            ));
        }
        Ok(m)
    }

    /// Checks shapes only.
    pub fn new_unchecked(
        src: Presentation,
        dst: Presentation,
        phi: GradedMatrix,
    ) -> Result<PresentationMorphism> {
        if !phi.source().same_degrees(src.gens()) || !phi.target().same_degrees(dst.gens()) {
            return Err(Error::BasisMismatch(
                "morphism matrix does not match the generators of its source and target".into(),
            ));
        }
        if src.field() != dst.field() || phi.field() != src.field() {
            return Err(Error::FieldMismatch(
                src.field().to_string(),
                dst.field().to_string(),
            ));
        }
        let phi = phi
            .with_source(src.gens().clone())?
            .with_target(dst.gens().clone())?;
        Ok(PresentationMorphism { src, dst, phi })
    }

    pub fn identity(p: &Presentation) -> PresentationMorphism {
        let phi = GradedMatrix::identity(p.field(), p.gens().clone());
        PresentationMorphism {
            src: p.clone(),
            dst: p.clone(),
            phi,
        }
    }

    pub fn zero(src: &Presentation, dst: &Presentation) -> PresentationMorphism {
        let phi = GradedMatrix::zero(src.field(), src.gens().clone(), dst.gens().clone());
        PresentationMorphism {
            src: src.clone(),
            dst: dst.clone(),
            phi,
        }
    }

    pub fn src(&self) -> &Presentation {
        &self.src
    }

    pub fn dst(&self) -> &Presentation {
        &self.dst
    }

    pub fn phi(&self) -> &GradedMatrix {
        &self.phi
    }

    pub fn field(&self) -> Field {
        self.src.field()
    }

    /// `φ(i_P(G_P)) ⊆ i_Q(G_Q)`.
    pub fn is_valid(&self) -> bool {
        let images = self.phi.compose(self.src.incl()).expect("shapes checked");
        let basis = row_echelon(self.dst.incl()).basis();
        (0..images.ncols()).all(|j| normal_form(&images.column_element(j), &basis).is_zero())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PresentationMorphism) -> Result<PresentationMorphism> {
        let phi = other.phi.compose(&self.phi)?;
        PresentationMorphism::new_unchecked(self.src.clone(), other.dst.clone(), phi)
    }

    /// Rank of the induced k-linear map `P_d → Q_d`, from plain slices.
    pub fn slice_rank(&self, d: i64) -> usize {
        let nrows = slice::alive(self.dst.gens().degrees(), d).len();
        let image = slice::slice_matrix(&self.phi, d);
        let rels = slice::slice_matrix(self.dst.incl(), d);
        slice::rank_modulo(nrows, &image, &rels)
    }

    /// Whether the induced map on every slice up to `max_d` is zero.
    pub fn is_zero_on_slices(&self, min_d: i64, max_d: i64) -> bool {
        (min_d..=max_d).all(|d| self.slice_rank(d) == 0)
    }
}
