//! Incremental row reduction over cyclotomic numbers.

use super::Cyclo;

/// A growing echelon basis of a subspace of `Cyclo^n`.
///
/// Rows are reduced against the stored pivots as they are inserted, so rank and
/// membership queries never revisit earlier rows.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    width: usize,
    rows: Vec<(usize, Vec<Cyclo>)>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        RowEchelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(v.len(), self.width, "vector length mismatch");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*p) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Cyclo]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let r: Vec<Cyclo> = r.iter().map(|x| x * &inv).collect();
        // keep stored rows fully reduced at the new pivot
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, v: &[Cyclo]) -> bool {
        self.reduce(v).iter().all(Cyclo::is_zero)
    }

    pub fn basis(&self) -> impl Iterator<Item = &[Cyclo]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

pub fn rank<'a>(width: usize, vectors: impl IntoIterator<Item = &'a [Cyclo]>) -> usize {
    let mut e = RowEchelon::new(width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
