//! Persistence of simplices arriving in any inclusion-compatible order.
//!
//! Every simplex keeps a reduced boundary column. A column is only ever reduced by
//! columns of simplices that come earlier in the filtration, compared by
//! `(value, arrival)`. When a new simplex claims a leading simplex owned by a
//! later one, the later column is reduced again, which may cascade.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::sparse::{axpy, SparseVec};
use crate::homology::Simplex;
use crate::presentation::{Barcode, Interval};

/// Intervals that appeared and disappeared with one insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarcodeDelta {
    pub added: Vec<Interval>,
    pub removed: Vec<Interval>,
}

impl BarcodeDelta {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }

    /// Applies the delta to `bars`. Fails if a removed interval is not present.
    pub fn apply(&self, bars: &Barcode) -> Result<Barcode> {
        let mut v = bars.intervals().to_vec();
        for r in &self.removed {
            let pos = v
                .iter()
                .position(|i| i == r)
                .ok_or_else(|| Error::Stream(format!("interval {r} is not in the barcode")))?;
            v.remove(pos);
        }
        v.extend(self.added.iter().copied());
        Ok(Barcode::new(v))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    simplex: Simplex,
    value: i64,
    column: SparseVec,
    /// Creator whose class this simplex kills.
    kills: Option<usize>,
    /// Destroyer of this simplex's class.
    killed_by: Option<usize>,
}

/// Incremental reduction state. Simplex ids are arrival positions.
#[derive(Clone, Debug)]
pub struct StreamState {
    field: Field,
    entries: Vec<Entry>,
    index: HashMap<Vec<u32>, usize>,
}

impl StreamState {
    pub fn new(field: Field) -> StreamState {
        StreamState {
            field,
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.entries[id].simplex
    }

    pub fn value(&self, id: usize) -> i64 {
        self.entries[id].value
    }

    fn key(&self, id: usize) -> (i64, usize) {
        (self.entries[id].value, id)
    }

    fn low(&self, col: &SparseVec) -> Option<usize> {
        col.iter().map(|(i, _)| *i).max_by_key(|&i| self.key(i))
    }

    /// Current pairs `(creator, destroyer)` as simplex ids, ordered by destroyer key.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .entries
            .iter()
            .enumerate()
            .filter_map(|(j, e)| e.kills.map(|i| (i, j)))
            .collect();
        out.sort_by_key(|&(_, j)| self.key(j));
        out
    }

    /// Pairs as simplex labels, e.g. `("s2", "s1_2")`.
    pub fn labelled_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(i, j)| {
                (
                    self.entries[i].simplex.label(),
                    self.entries[j].simplex.label(),
                )
            })
            .collect()
    }

    /// The bars of the current pairing; unpaired creators give infinite bars.
    pub fn current_barcode(&self) -> Barcode {
        let mut bars = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.kills.is_some() {
                continue;
            }
            let death = e.killed_by.map(|j| self.entries[j].value);
            bars.push(Interval::new(
                Some(e.simplex.dim()),
                self.entries[i].value,
                death,
            ));
        }
        Barcode::new(bars)
    }

    /// Inserts `vertices` at filtration `value` and repairs the pairing.
    pub fn add_simplex(&mut self, vertices: Vec<u32>, value: i64) -> Result<BarcodeDelta> {
        let simplex = Simplex::new(vertices, value, None);
        if simplex.vertices.is_empty() {
            return Err(Error::Stream("simplex with no vertices".into()));
        }
        if simplex.vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Stream(format!(
                "simplex [{simplex}] repeats a vertex"
            )));
        }
        if self.index.contains_key(&simplex.vertices) {
            return Err(Error::Stream(format!("duplicate simplex [{simplex}]")));
        }
        let mut column = Vec::new();
        for (face, sign) in simplex.faces() {
            let Some(&fi) = self.index.get(&face) else {
                return Err(Error::Stream(format!(
                    "face {face:?} of [{simplex}] has not arrived"
                )));
            };
            if self.entries[fi].value > value {
                return Err(Error::Stream(format!(
                    "face {face:?} has value {} above [{simplex}]",
                    self.entries[fi].value
                )));
            }
            column.push((fi, self.field.from_int(sign)));
        }
        column.sort_by_key(|(i, _)| *i);

        let before = self.current_barcode();
        let id = self.entries.len();
        self.index.insert(simplex.vertices.clone(), id);
        self.entries.push(Entry {
            simplex,
            value,
            column,
            kills: None,
            killed_by: None,
        });
        let mut pending = BTreeSet::new();
        pending.insert(self.key(id));
        while let Some((_, j)) = pending.pop_first() {
            if let Some(displaced) = self.reduce(j) {
                pending.insert(self.key(displaced));
            }
        }
        #[cfg(debug_assertions)]
        self.audit()?;
        Ok(diff(&before, &self.current_barcode()))
    }

    /// Reduces column `j` by earlier columns until it is zero or claims a leading
    /// simplex. Returns the later simplex that lost its pair, if any.
    fn reduce(&mut self, j: usize) -> Option<usize> {
        loop {
            let theta = self.low(&self.entries[j].column)?;
            let owner = self.entries[theta].killed_by;
            match owner {
                Some(tau) if tau == j => return None,
                Some(tau) if self.key(tau) < self.key(j) => {
                    self.eliminate(j, tau, theta);
                }
                Some(tau) => {
                    self.entries[tau].kills = None;
                    self.entries[theta].killed_by = Some(j);
                    self.entries[j].kills = Some(theta);
                    self.eliminate(tau, j, theta);
                    return Some(tau);
                }
                None => {
                    self.entries[theta].killed_by = Some(j);
                    self.entries[j].kills = Some(theta);
                    return None;
                }
            }
        }
    }

    /// Clears the `theta` entry of column `j` with column `k`.
    fn eliminate(&mut self, j: usize, k: usize, theta: usize) {
        let a = coeff(&self.entries[j].column, theta);
        let b = coeff(&self.entries[k].column, theta);
        let f = -a.div(&b).expect("leading entries are nonzero");
        let src = self.entries[k].column.clone();
        axpy(&mut self.entries[j].column, &f, &src);
    }

    /// Recomputes the pairing from scratch in filtration order and compares.
    pub fn audit(&self) -> Result<()> {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by_key(|&i| self.key(i));
        let mut owner: HashMap<usize, usize> = HashMap::new();
        let mut cols: HashMap<usize, SparseVec> = HashMap::new();
        for &j in &order {
            let mut col = SparseVec::new();
            for (face, sign) in self.entries[j].simplex.faces() {
                col.push((self.index[&face], self.field.from_int(sign)));
            }
            col.sort_by_key(|(i, _)| *i);
            while let Some(theta) = self.low(&col) {
                let Some(&k) = owner.get(&theta) else { break };
                let f = -coeff(&col, theta)
                    .div(&coeff(&cols[&k], theta))
                    .expect("nonzero");
                axpy(&mut col, &f, &cols[&k]);
            }
            if let Some(theta) = self.low(&col) {
                owner.insert(theta, j);
                if self.entries[j].kills != Some(theta) {
                    return Err(Error::Stream(format!(
                        "pairing of {} disagrees with a full reduction",
                        self.entries[j].simplex.label()
                    )));
                }
            } else if self.entries[j].kills.is_some() {
                return Err(Error::Stream(format!(
                    "{} is paired but its boundary reduces to zero",
                    self.entries[j].simplex.label()
                )));
            }
            cols.insert(j, col);
        }
        Ok(())
    }
}

fn coeff(col: &SparseVec, i: usize) -> Scalar {
    crate::graded::sparse::get(col, i)
        .cloned()
        .expect("entry present")
}

/// Multiset difference `after − before` and `before − after`.
pub fn diff(before: &Barcode, after: &Barcode) -> BarcodeDelta {
    let mut removed = before.intervals().to_vec();
    let mut added = Vec::new();
    for i in after.intervals() {
        match removed.iter().position(|r| r == i) {
            Some(pos) => {
                removed.remove(pos);
            }
            None => added.push(*i),
        }
    }
    BarcodeDelta { added, removed }
}

/// Streams `(vertices, value)` pairs in order and returns the final state with all deltas.
pub fn stream<I>(field: Field, items: I) -> Result<(StreamState, Vec<BarcodeDelta>)>
where
    I: IntoIterator<Item = (Vec<u32>, i64)>,
{
    let mut s = StreamState::new(field);
    let mut deltas = Vec::new();
    for (v, f) in items {
        deltas.push(s.add_simplex(v, f)?);
    }
    Ok((s, deltas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{persistent_homology, FilteredComplex};

    fn trace_431() -> Vec<(Vec<u32>, i64)> {
        vec![
            (vec![1], 1),
            (vec![2], 4),
            (vec![1, 2], 6),
            (vec![3], 2),
            (vec![1, 3], 3),
            (vec![2, 3], 5),
            (vec![1, 2, 3], 7),
        ]
    }

    fn lines(b: &Barcode) -> Vec<String> {
        b.intervals().iter().map(|i| i.to_string()).collect()
    }

    #[test]
    fn repairing_trace() {
        let mut s = StreamState::new(Field::Rationals);
        let items = trace_431();
        for (v, f) in &items[..3] {
            s.add_simplex(v.clone(), *f).unwrap();
        }
        assert_eq!(
            s.labelled_pairs(),
            vec![("s2".to_string(), "s1_2".to_string())]
        );
        s.add_simplex(vec![3], 2).unwrap();
        s.add_simplex(vec![1, 3], 3).unwrap();
        let delta = s.add_simplex(vec![2, 3], 5).unwrap();
        let pairs = s.labelled_pairs();
        assert!(pairs.contains(&("s2".into(), "s2_3".into())));
        assert!(!pairs.iter().any(|(_, d)| d == "s1_2"));
        assert_eq!(delta.removed, vec![Interval::new(Some(0), 4, Some(6))]);
        assert!(delta.added.contains(&Interval::new(Some(0), 4, Some(5))));
        assert!(delta.added.contains(&Interval::new(Some(1), 6, None)));
        s.add_simplex(vec![1, 2, 3], 7).unwrap();
        assert_eq!(
            lines(&s.current_barcode()),
            vec!["0 1 inf", "0 2 3", "0 4 5", "1 6 7"]
        );
    }

    #[test]
    fn matches_batch_and_deltas_fold() {
        let items = trace_431();
        let (s, deltas) = stream(Field::Prime(3), items.clone()).unwrap();
        let c = FilteredComplex::new(
            items
                .into_iter()
                .map(|(v, f)| Simplex::new(v, f, None))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            s.current_barcode(),
            persistent_homology(&c, Field::Prime(3)).unwrap()
        );
        let mut folded = Barcode::empty();
        for d in &deltas {
            folded = d.apply(&folded).unwrap();
        }
        assert_eq!(folded, s.current_barcode());
    }

    #[test]
    fn vertex_is_a_creator() {
        let mut s = StreamState::new(Field::Rationals);
        let d = s.add_simplex(vec![0], 3).unwrap();
        assert_eq!(d.added, vec![Interval::new(Some(0), 3, None)]);
        assert!(StreamState::new(Field::Rationals)
            .current_barcode()
            .is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let mut s = StreamState::new(Field::Rationals);
        assert!(s.add_simplex(vec![0, 1], 0).is_err());
        s.add_simplex(vec![0], 2).unwrap();
        s.add_simplex(vec![1], 0).unwrap();
        assert!(s.add_simplex(vec![0], 1).is_err());
        assert!(s.add_simplex(vec![0, 1], 1).is_err());
        assert_eq!(s.len(), 2);
    }
}
