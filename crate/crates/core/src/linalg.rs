//! Exact Gaussian elimination over F_q.

use crate::gf::{Field, FieldElement};

pub type Row = Vec<FieldElement>;

/// Reduces `rows` in place to reduced row echelon form, choosing as pivot
/// the first nonzero column of the remaining rows. Zero rows are dropped.
/// Returns the pivot columns, one per surviving row.
pub fn rref(field: &Field, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = field.inv(rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank(field: &Field, rows: &[Row]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// Basis of `{ y : rows . y = 0 }` for vectors of length `ncols`, one
/// vector per non-pivot column with a 1 in that column.
pub fn nullspace(field: &Field, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in work.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// An incrementally built row space supporting undo, used by subset
/// searches that add and remove one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Row)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, field: &Field, v: &[FieldElement]) -> Row {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        v
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) when `v`
    /// already lies in the span.
    pub fn push(&mut self, field: &Field, v: &[FieldElement]) -> bool {
        let mut r = self.reduce(field, v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv(r[pivot]).expect("nonzero");
        for x in r.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.rows.push((pivot, r));
        true
    }

    /// Removes the most recently added row.
    pub fn pop(&mut self) {
        self.rows.pop();
    }
}
