//! Dense exact linear algebra over the base field.
//!
//! Only what the ring operations need: solve M x = b and return a particular
//! solution together with a kernel basis.

use crate::scalar::{FieldDesc, Scalar};

/// Outcome of solving `M x = b` by Gaussian elimination.
pub struct SolveResult {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solve `M x = b` where `M` is given row-major with `cols` columns.
/// Returns `None` when the system is inconsistent.
// index loops keep the in-place row operations readable
#[allow(clippy::needless_range_loop)]
pub fn solve(field: &FieldDesc, m: &[Vec<Scalar>], b: &[Scalar], cols: usize) -> Option<SolveResult> {
    let rows = m.len();
    assert_eq!(b.len(), rows);
    // augmented matrix
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !field.is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(row, p);
        let inv = field.inv(&a[row][col]).expect("pivot is nonzero");
        for c in col..=cols {
            a[row][c] = field.mul(&a[row][c], &inv);
        }
        for r in 0..rows {
            if r != row && !field.is_zero(&a[r][col]) {
                let f = a[r][col].clone();
                for c in col..=cols {
                    let t = field.mul(&f, &a[row][c]);
                    a[r][c] = field.sub(&a[r][c], &t);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }

    // consistency
    for r in row..rows {
        if !field.is_zero(&a[r][cols]) {
            return None;
        }
    }

    let mut particular = vec![field.zero(); cols];
    for (r, &c) in pivot_col_of_row.iter().enumerate() {
        particular[c] = a[r][cols].clone();
    }

    let pivot_set: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &c) in pivot_col_of_row.iter().enumerate() {
            v[c] = field.neg(&a[r][free]);
        }
        kernel.push(v);
    }

    Some(SolveResult { particular, kernel })
}
