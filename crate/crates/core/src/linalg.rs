//! Dense complex rank and nullity by pivoted Gaussian elimination.
//!
//! The matrices here are small (dimension bounded by the level) and sparse
//! in practice, so elimination with partial pivoting and a threshold
//! relative to the largest row norm is accurate and fast enough.

use num::complex::Complex64;

/// Rank of `mat` with entries below `rel_tol * max_row_norm` treated as zero.
pub fn rank(mut mat: Vec<Vec<Complex64>>, rel_tol: f64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let max_row_norm = mat
        .iter()
        .map(|r| r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    if max_row_norm == 0.0 {
        return 0;
    }
    let tol_sq = (rel_tol * max_row_norm).powi(2);

    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let (best, best_norm_sq) = (pivot_row..rows)
            .map(|r| (r, mat[r][col].norm_sqr()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty row range");
        if best_norm_sq <= tol_sq {
            continue;
        }
        mat.swap(pivot_row, best);
        let (pivot_part, rest) = mat.split_at_mut(pivot_row + 1);
        let pivot = &pivot_part[pivot_row];
        for row in rest.iter_mut() {
            if row[col].norm_sqr() == 0.0 {
                continue;
            }
            let factor = row[col] / pivot[col];
            for (dst, src) in row[col..].iter_mut().zip(&pivot[col..]) {
                *dst -= factor * src;
            }
        }
        rank += 1;
        pivot_row += 1;
    }
    rank
}

/// Nullity (column count minus rank).
pub fn nullity(mat: Vec<Vec<Complex64>>, rel_tol: f64) -> usize {
    let cols = mat.first().map_or(0, Vec::len);
    cols - rank(mat, rel_tol)
}

/// True when `extra` lies in the row span of `basis` (rank comparison).
pub fn in_row_span(basis: &[Vec<Complex64>], extra: &[Complex64], rel_tol: f64) -> bool {
    let base_rank = rank(basis.to_vec(), rel_tol);
    let mut stacked = basis.to_vec();
    stacked.push(extra.to_vec());
    rank(stacked, rel_tol) == base_rank
}
