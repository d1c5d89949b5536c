//! Exact dense linear algebra over the coefficient fields: an online row
//! echelon form supporting rank queries and row-span membership. Used to
//! measure graded pieces of quotient rings independently of any Groebner
//! machinery.

use crate::scalar::{Field, Scalar};

/// A growing row space in echelon form. Rows are kept pivot-monic with
/// strictly increasing pivot columns, so membership tests are a single
/// reduction pass.
#[derive(Clone, Debug)]
pub struct RowSpan {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: Field, width: usize) -> RowSpan {
        RowSpan { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = &*vi - &(&factor * ri);
            }
        }
        v
    }

    /// True iff `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Inserts a row, returning true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("nonzero pivot");
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
        // Clear the new pivot column in existing rows so reduce() stays a
        // single ascending pass.
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (ri, vi) in row.iter_mut().zip(&v) {
                *ri = &*ri - &(&factor * vi);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Rank of a list of rows.
pub fn rank(field: Field, width: usize, rows: &[Vec<Scalar>]) -> usize {
    let mut span = RowSpan::new(field, width);
    for r in rows {
        span.insert(r.clone());
    }
    span.rank()
}
