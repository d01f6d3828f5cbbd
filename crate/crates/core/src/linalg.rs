//! Gaussian elimination over an exact ring.
//!
//! Pivots are restricted to units, which makes the routine exact over fields
//! (`Q`, `Z/p`) and still correct, if possibly incomplete, over `Z/m`.

use crate::error::{Error, Result};
use crate::rings::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<E> {
    /// A particular solution (free variables set to zero). Meaningless when inconsistent.
    pub solution: Vec<E>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub consistent: bool,
}

impl<E> LinearSolution<E> {
    pub fn is_unique(&self) -> bool {
        self.consistent && self.rank == self.solution.len()
    }
}

/// Solves `a x = b` for `x`, where `a` is given as rows.
pub fn solve<R: Ring>(
    ring: &R,
    mut a: Vec<Vec<R::Elem>>,
    mut b: Vec<R::Elem>,
) -> Result<LinearSolution<R::Elem>> {
    let rows = a.len();
    if b.len() != rows {
        return Err(Error::invalid(
            "right-hand side length does not match row count",
        ));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid("ragged matrix"));
    }
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some((p, inv)) = (row..rows).find_map(|r| ring.inv(&a[r][col]).ok().map(|i| (r, i)))
        else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        for x in a[row].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        b[row] = ring.mul(&b[row], &inv);
        let prow = a[row].clone();
        let pb = b[row].clone();
        for r in 0..rows {
            if r == row || ring.is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for (x, y) in a[r].iter_mut().zip(&prow) {
                *x = ring.sub(x, &ring.mul(&f, y));
            }
            b[r] = ring.sub(&b[r], &ring.mul(&f, &pb));
        }
        pivot_cols.push(col);
        row += 1;
    }
    let rank = pivot_cols.len();
    let consistent =
        (rank..rows).all(|r| ring.is_zero(&b[r]) || a[r].iter().any(|x| !ring.is_zero(x)));
    // rows past the rank with nonzero (non-unit) entries mean elimination stalled
    let stalled = (rank..rows).any(|r| a[r].iter().any(|x| !ring.is_zero(x)));
    let mut solution = vec![ring.zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        solution[c] = b[i].clone();
    }
    Ok(LinearSolution {
        solution,
        rank,
        pivot_cols,
        consistent: consistent && !stalled,
    })
}
