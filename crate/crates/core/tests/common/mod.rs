//! Seeded random inputs shared by the property tests and the acceptance run.
#![allow(dead_code)]

use persmod::{
    Field, FilteredComplex, GradedBasis, GradedMatrix, Presentation, PresentationMorphism, Simplex,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(rng: &mut ChaCha8Rng) -> Field {
    if rng.gen_bool(0.5) {
        Field::Rationals
    } else {
        Field::Prime(5)
    }
}

fn small(rng: &mut ChaCha8Rng, f: Field) -> persmod::Scalar {
    loop {
        let c = f.from_int(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Columns landing in `target`, each in a random degree with a few random entries.
pub fn matrix(
    rng: &mut ChaCha8Rng,
    f: Field,
    target: &GradedBasis,
    ncols: usize,
    max_deg: i64,
) -> GradedMatrix {
    let mut degrees = Vec::new();
    let mut cols = Vec::new();
    for _ in 0..ncols {
        let d = rng.gen_range(0..=max_deg);
        let below: Vec<usize> = (0..target.len())
            .filter(|&i| target.degree(i) <= d)
            .collect();
        let k = rng.gen_range(0..=below.len().min(3));
        let mut col: Vec<(usize, persmod::Scalar)> = below
            .choose_multiple(rng, k)
            .map(|&i| (i, small(rng, f)))
            .collect();
        col.sort_by_key(|(i, _)| *i);
        degrees.push(d);
        cols.push(col);
    }
    let source = GradedBasis::numbered("c", degrees);
    GradedMatrix::from_columns(f, source, target.clone(), cols).unwrap()
}

pub fn basis(rng: &mut ChaCha8Rng, prefix: &str, max_len: usize, max_deg: i64) -> GradedBasis {
    let n = rng.gen_range(0..=max_len);
    GradedBasis::numbered(prefix, (0..n).map(|_| rng.gen_range(0..=max_deg)))
}

/// At most 8 generators in degrees 0..=10 and at most 8 relations.
pub fn presentation(rng: &mut ChaCha8Rng, f: Field) -> Presentation {
    let gens = basis(rng, "g", 8, 10);
    let nrels = rng.gen_range(0..=8);
    let m = matrix(rng, f, &gens, nrels, 14);
    let m = m
        .with_source(GradedBasis::numbered("r", m.source().degrees().to_vec()))
        .unwrap();
    Presentation::new(m)
}

/// A compatible morphism: the target gets the images of the source relations added.
pub fn morphism(rng: &mut ChaCha8Rng, f: Field) -> PresentationMorphism {
    let p = presentation(rng, f);
    let q = presentation(rng, f);
    let cols: Vec<_> = (0..p.gens().len())
        .map(|j| {
            let d = p.gens().degree(j);
            let below: Vec<usize> = (0..q.gens().len())
                .filter(|&i| q.gens().degree(i) <= d)
                .collect();
            let k = rng.gen_range(0..=below.len().min(3));
            let mut c: Vec<_> = below
                .choose_multiple(rng, k)
                .map(|&i| (i, small(rng, f)))
                .collect();
            c.sort_by_key(|(i, _)| *i);
            c
        })
        .collect();
    let phi = GradedMatrix::from_columns(f, p.gens().clone(), q.gens().clone(), cols).unwrap();
    let pushed = phi.compose(p.incl()).unwrap();
    let rels = q.incl().hstack(&pushed).unwrap();
    let rels = rels
        .with_source(GradedBasis::numbered("r", rels.source().degrees().to_vec()))
        .unwrap();
    PresentationMorphism::new(p, Presentation::new(rels), phi).unwrap()
}

/// A random complex of at most `max` simplices with face-monotone births.
pub fn complex(rng: &mut ChaCha8Rng, max: usize) -> Vec<Simplex> {
    let nv = rng.gen_range(1..=6u32);
    let mut out: Vec<Simplex> = Vec::new();
    let mut have = std::collections::HashMap::new();
    for v in 0..nv {
        let b = rng.gen_range(0..=4);
        have.insert(vec![v], b);
        out.push(Simplex::new(vec![v], b, None));
    }
    for _ in 0..4 * max {
        if out.len() >= max {
            break;
        }
        let k = rng.gen_range(2..=4usize.min(nv as usize).max(2));
        if k > nv as usize {
            break;
        }
        let mut vs: Vec<u32> = (0..nv)
            .collect::<Vec<_>>()
            .choose_multiple(rng, k)
            .copied()
            .collect();
        vs.sort_unstable();
        if have.contains_key(&vs) {
            continue;
        }
        let s = Simplex::new(vs.clone(), 0, None);
        let faces: Option<Vec<i64>> = s
            .faces()
            .iter()
            .map(|(f, _)| have.get(f).copied())
            .collect();
        let Some(faces) = faces else { continue };
        let b = faces.into_iter().max().unwrap() + rng.gen_range(0..=3);
        have.insert(vs.clone(), b);
        out.push(Simplex::new(vs, b, None));
    }
    out
}

/// Random order in which every simplex comes after its faces.
pub fn inclusion_order(rng: &mut ChaCha8Rng, simplices: &[Simplex]) -> Vec<Simplex> {
    let mut left: Vec<Simplex> = simplices.to_vec();
    let mut placed = std::collections::HashSet::new();
    let mut out = Vec::new();
    while !left.is_empty() {
        let ready: Vec<usize> = (0..left.len())
            .filter(|&i| left[i].faces().iter().all(|(f, _)| placed.contains(f)))
            .collect();
        let i = *ready.choose(rng).expect("faces are always present");
        let s = left.swap_remove(i);
        placed.insert(s.vertices.clone());
        out.push(s);
    }
    out
}

pub fn filtered(simplices: &[Simplex]) -> FilteredComplex {
    FilteredComplex::new(simplices.to_vec()).unwrap()
}
