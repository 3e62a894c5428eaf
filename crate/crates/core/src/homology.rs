//! Persistent homology of filtered simplicial complexes.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::echelon::row_echelon;
use crate::graded::sparse::{self, SparseVec};
use crate::graded::{GradedBasis, GradedMatrix, HomogeneousElement};
use crate::presentation::{Barcode, Interval, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub vertices: Vec<u32>,
    pub birth: i64,
    /// Grade at which the simplex joins the torsion relations, if ever.
    pub removal: Option<i64>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<u32>, birth: i64, removal: Option<i64>) -> Simplex {
        vertices.sort_unstable();
        Simplex {
            vertices,
            birth,
            removal,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-1 faces with their signs `(-1)^i`, `i` the index of the dropped vertex.
    pub fn faces(&self) -> Vec<(Vec<u32>, i64)> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let mut f = self.vertices.clone();
                f.remove(i);
                (f, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    pub fn label(&self) -> String {
        let v: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        format!("s{}", v.join("_"))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        write!(f, "{} ; {}", v.join(" "), self.birth)?;
        if let Some(r) = self.removal {
            write!(f, " ; {r}")?;
        }
        Ok(())
    }
}

/// Simplices with birth grades, stored in filtration order: by birth, then
/// dimension, then input order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Vec<u32>, usize>,
}

impl FilteredComplex {
    pub fn new(simplices: Vec<Simplex>) -> Result<FilteredComplex> {
        let mut order: Vec<usize> = (0..simplices.len()).collect();
        order.sort_by_key(|&i| (simplices[i].birth, simplices[i].dim(), i));
        let simplices: Vec<Simplex> = order.into_iter().map(|i| simplices[i].clone()).collect();
        let mut index = HashMap::new();
        for (i, s) in simplices.iter().enumerate() {
            if s.vertices.is_empty() {
                return Err(Error::InvalidComplex("simplex with no vertices".into()));
            }
            if s.vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "simplex [{s}] repeats a vertex"
                )));
            }
            if s.birth < 0 {
                return Err(Error::InvalidComplex(format!(
                    "simplex [{s}] has a negative birth"
                )));
            }
            if s.removal.is_some_and(|r| r < s.birth) {
                return Err(Error::InvalidComplex(format!(
                    "simplex [{s}] is removed before it is born"
                )));
            }
            if index.insert(s.vertices.clone(), i).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate simplex [{s}]")));
            }
        }
        for s in &simplices {
            for (face, _) in s.faces() {
                let Some(&fi) = index.get(&face) else {
                    return Err(Error::InvalidComplex(format!(
                        "face {face:?} of simplex [{s}] is missing"
                    )));
                };
                let f = &simplices[fi];
                if f.birth > s.birth {
                    return Err(Error::InvalidComplex(format!(
                        "face [{f}] is born after simplex [{s}]"
                    )));
                }
                let outlives = match (f.removal, s.removal) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(a), Some(b)) => a >= b,
                };
                if !outlives {
                    return Err(Error::InvalidComplex(format!(
                        "face [{f}] is removed before simplex [{s}]"
                    )));
                }
            }
        }
        Ok(FilteredComplex { simplices, index })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, vertices: &[u32]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn has_removals(&self) -> bool {
        self.simplices.iter().any(|s| s.removal.is_some())
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Filtration-order indices of the `p`-simplices.
    pub fn indices_in_dim(&self, p: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.simplices[i].dim() == p)
            .collect()
    }

    /// All simplices as one graded basis, degree = birth.
    pub fn basis(&self) -> GradedBasis {
        GradedBasis::new_dedup(self.simplices.iter().map(|s| (s.label(), s.birth)))
    }

    /// The same complex with all removal grades dropped.
    pub fn without_removals(&self) -> FilteredComplex {
        let simplices = self
            .simplices
            .iter()
            .map(|s| Simplex {
                removal: None,
                ..s.clone()
            })
            .collect();
        FilteredComplex::new(simplices).expect("dropping removals keeps the invariants")
    }
}

/// The graded boundary on all simplices: entry `(face, σ)` is `(-1)^i t^(birth σ - birth face)`.
pub fn graded_boundary(c: &FilteredComplex, field: Field) -> GradedMatrix {
    let basis = c.basis();
    let cols = c
        .simplices()
        .iter()
        .map(|s| {
            sparse::normalize(
                s.faces()
                    .into_iter()
                    .map(|(f, sign)| {
                        (
                            c.index_of(&f).expect("faces validated"),
                            field.from_int(sign),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    GradedMatrix::from_columns(field, basis.clone(), basis, cols).expect("faces are born first")
}

/// The graded boundary restricted to `C_p → C_{p-1}`.
pub fn boundary_in_dim(c: &FilteredComplex, field: Field, p: usize) -> GradedMatrix {
    let full = graded_boundary(c, field);
    let cols = c.indices_in_dim(p);
    let rows = if p == 0 {
        Vec::new()
    } else {
        c.indices_in_dim(p - 1)
    };
    full.select_columns(&cols).select_rows(&rows)
}

/// Cycles and boundaries found by the column reduction of a boundary matrix.
#[derive(Clone, Debug)]
pub struct ReductionState {
    pub boundary: GradedMatrix,
    /// Cycle basis, in order of appearance; each is normalized so that its
    /// earliest simplex has coefficient 1.
    pub cycles: Vec<HomogeneousElement>,
    /// The simplex whose column produced each cycle.
    pub cycle_simplex: Vec<usize>,
    /// Reduced nonzero columns, with the simplex that produced them.
    pub boundaries: Vec<(usize, HomogeneousElement)>,
    /// Row index of a pivot → column owning it.
    pub pivots: HashMap<usize, usize>,
}

/// Column reduction of a square boundary matrix whose columns are in filtration order.
pub fn reduce_boundary(m: &GradedMatrix) -> ReductionState {
    let ech = row_echelon(m);
    let basis = m.source();
    let mut cycles = Vec::new();
    let mut cycle_simplex = Vec::new();
    let mut boundaries = Vec::new();
    let mut pivots = HashMap::new();
    for j in 0..m.ncols() {
        match ech.pivots[j] {
            Some(i) => {
                pivots.insert(i, j);
                boundaries.push((j, ech.echelon.column_element(j)));
            }
            None => {
                let c = ech.change.column(j);
                let first = c
                    .iter()
                    .min_by_key(|(i, _)| (basis.degree(*i), *i))
                    .unwrap();
                let inv = first.1.inv().expect("nonzero");
                cycles.push(
                    HomogeneousElement::new(basis, basis.degree(j), sparse::scale(c, &inv))
                        .expect("homogeneous"),
                );
                cycle_simplex.push(j);
            }
        }
    }
    ReductionState {
        boundary: m.clone(),
        cycles,
        cycle_simplex,
        boundaries,
        pivots,
    }
}

/// A presentation whose generators carry homological dimensions.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub presentation: Presentation,
    pub dims: Vec<usize>,
}

impl HomologyPresentation {
    pub fn barcode(&self) -> Barcode {
        labelled_barcode(&self.presentation, &self.dims)
    }
}

/// Barcode of `p` with each bar labelled by the dimension of its generator row.
pub fn labelled_barcode(p: &Presentation, dims: &[usize]) -> Barcode {
    let r = p.snf();
    let gens = p.gens();
    let mut bars = Vec::new();
    for (i, _, m) in &r.diagonal {
        let b = gens.degree(*i);
        bars.push(Interval::new(
            Some(dims[*i]),
            b,
            Some(b + m.exponent() as i64),
        ));
    }
    for &i in &r.free_rows {
        bars.push(Interval::new(Some(dims[i]), gens.degree(i), None));
    }
    Barcode::new(bars)
}

/// Writes `x` in the cycle basis by repeatedly cancelling its latest simplex.
fn express_in_cycles(state: &ReductionState, x: &HomogeneousElement) -> Option<SparseVec> {
    let basis = state.boundary.source();
    let by_simplex: HashMap<usize, usize> = state
        .cycle_simplex
        .iter()
        .enumerate()
        .map(|(k, &s)| (s, k))
        .collect();
    let mut v: SparseVec = x.coords().to_vec();
    let mut out: SparseVec = Vec::new();
    while let Some(i) = crate::graded::echelon::leading(basis, &v) {
        let k = *by_simplex.get(&i)?;
        let z = &state.cycles[k];
        if z.degree() > x.degree() {
            return None;
        }
        let a = sparse::get(&v, i).unwrap();
        let b = z.coeff(i).unwrap();
        let c = a.div(b).ok()?;
        sparse::axpy(&mut v, &-&c, z.coords());
        sparse::axpy(&mut out, &c, &[(k, c.field().one())]);
    }
    Some(out)
}

/// Presents homology as cycles modulo boundaries: generators are the cycles,
/// relations the boundaries of all positive-dimensional simplices written in
/// the cycle basis.
pub fn boundaries_in_cycles(
    state: &ReductionState,
    complex: &FilteredComplex,
) -> Result<HomologyPresentation> {
    let m = &state.boundary;
    let field = m.field();
    let gens = GradedBasis::new_dedup(
        state
            .cycles
            .iter()
            .enumerate()
            .map(|(k, z)| (format!("z{}", k + 1), z.degree())),
    );
    let dims: Vec<usize> = state
        .cycle_simplex
        .iter()
        .map(|&j| complex.simplices()[j].dim())
        .collect();
    let mut rels = Vec::new();
    let mut cols = Vec::new();
    for j in 0..m.ncols() {
        if m.column(j).is_empty() {
            continue;
        }
        let b = m.column_element(j);
        let coords = express_in_cycles(state, &b).ok_or_else(|| {
            Error::BrokenReduction(format!(
                "boundary of {} does not reduce to zero against the cycle basis",
                m.source().label(j)
            ))
        })?;
        rels.push((format!("r{}", rels.len() + 1), b.degree()));
        cols.push(coords);
    }
    let presentation = Presentation::from_parts(field, gens, GradedBasis::new_dedup(rels), cols)?;
    Ok(HomologyPresentation { presentation, dims })
}

fn check_square_zero(d: &GradedMatrix) -> Result<()> {
    let dd = d.compose(d)?;
    if !dd.is_zero() {
        return Err(Error::BoundarySquare(format!(
            "{} nonzero entries in ∂∂",
            dd.nnz()
        )));
    }
    Ok(())
}

/// The full pipeline for a complex without removals.
pub fn homology_presentation(c: &FilteredComplex, field: Field) -> Result<HomologyPresentation> {
    if c.has_removals() {
        return Err(Error::InvalidArgument(
            "complex has removal grades; use relative persistence".into(),
        ));
    }
    let d = graded_boundary(c, field);
    check_square_zero(&d)?;
    let state = reduce_boundary(&d);
    boundaries_in_cycles(&state, c)
}

/// Dimension-labelled barcode, length-0 bars included.
pub fn persistent_homology(c: &FilteredComplex, field: Field) -> Result<Barcode> {
    Ok(homology_presentation(c, field)?.barcode())
}
