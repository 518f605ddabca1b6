//! Cohomology of the total complex and of the augmenting column, plus the
//! Whitehead-style comparison of the two for semisimple `L`.

use num::traits::Zero;

use crate::bicomplex::{Branch, Complex, TotalCochain};
use crate::linalg::{kernel_basis, reduce_mod_subspace, rref, RationalMatrix, SubspaceBasis};
use crate::rational::Rat;
use crate::{Error, Result};

/// Cohomology dimensions per degree, with optional canonical representatives.
#[derive(Debug, Clone)]
pub struct BettiTable {
    pub branch: Branch,
    /// `(n, dim H^n)` for `n = 0..=max_n`.
    pub degrees: Vec<(usize, usize)>,
    /// Per degree, canonical representative cocycles (kernel vectors reduced
    /// mod image, deduplicated by row reduction). Empty when not requested.
    pub representatives: Vec<(usize, Vec<TotalCochain>)>,
}

fn column_matrix(ambient: usize, vectors: &[Vec<Rat>]) -> RationalMatrix {
    let mut m = RationalMatrix::zero(ambient, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for i in 0..ambient {
            *m.get_mut(i, j) = v[i].clone();
        }
    }
    m
}

/// Kernel of `d_n` modulo image of `d_{n−1}`: returns `(dim, representatives)`.
/// `image_vectors` are spanning vectors of the image (not necessarily
/// independent). Errors with a contract violation if the image is not
/// contained in the kernel.
fn homology_at(
    kernel: &SubspaceBasis,
    image_vectors: &[Vec<Rat>],
    want_reps: bool,
) -> Result<(usize, Vec<Vec<Rat>>)> {
    let ambient = kernel.ambient_dim;
    // image rank and membership check: stack image under kernel via solve
    let kernel_cols = column_matrix(ambient, &kernel.vectors);
    let mut image_rank_rows: Vec<Vec<Rat>> = Vec::new();
    for v in image_vectors {
        if v.iter().all(|r| r.is_zero()) {
            continue;
        }
        if crate::linalg::solve(&kernel_cols, v).is_none() {
            return Err(Error::Contract(
                "image of the differential is not contained in the next kernel".into(),
            ));
        }
        image_rank_rows.push(v.clone());
    }
    let image_rank = if image_rank_rows.is_empty() {
        0
    } else {
        rref(&RationalMatrix::from_rows(image_rank_rows.clone())).rank
    };
    let dim = kernel.dim() - image_rank;
    if !want_reps {
        return Ok((dim, Vec::new()));
    }
    let image_basis = SubspaceBasis::from_spanning(ambient, &image_rank_rows);
    // reduce each kernel vector mod the image, then row-reduce the results to
    // a canonical independent set
    let reduced: Vec<Vec<Rat>> = kernel
        .vectors
        .iter()
        .map(|v| reduce_mod_subspace(v, &image_basis))
        .filter(|v| v.iter().any(|r| !r.is_zero()))
        .collect();
    if reduced.is_empty() {
        return Ok((dim, Vec::new()));
    }
    let rr = rref(&RationalMatrix::from_rows(reduced));
    let mut reps = Vec::new();
    for i in 0..rr.reduced.rows {
        let row = rr.reduced.row(i).to_vec();
        if row.iter().any(|r| !r.is_zero()) {
            // canonicalize again: row-reduced vectors need not be reduced mod
            // image, so reduce once more
            reps.push(reduce_mod_subspace(&row, &image_basis));
        }
    }
    debug_assert_eq!(reps.len(), dim);
    Ok((dim, reps))
}

/// Dimensions (and optionally canonical representatives) of `H^n` of the
/// total complex for `n = 0..=max_n`.
pub fn total_cohomology(complex: &Complex, max_n: usize, want_reps: bool) -> Result<BettiTable> {
    let mut degrees = Vec::new();
    let mut representatives = Vec::new();
    let mut prev_images: Vec<Vec<Rat>> = Vec::new(); // images of d_{n-1}
    for n in 0..=max_n {
        let d = complex.total_differential(n);
        let kernel = kernel_basis(&d.to_dense());
        let (dim, reps) = homology_at(&kernel, &prev_images, want_reps)?;
        degrees.push((n, dim));
        if want_reps {
            let total_reps = reps
                .iter()
                .map(|v| complex.total_cochain_from_flat(n, v))
                .collect::<Result<Vec<_>>>()?;
            representatives.push((n, total_reps));
        }
        // images of d_n for the next round
        prev_images = (0..d.cols())
            .map(|j| {
                let mut e = vec![Rat::zero(); d.cols()];
                e[j] = Rat::from_integer(1.into());
                d.apply(&e)
            })
            .collect();
    }
    Ok(BettiTable { branch: complex.branch, degrees, representatives })
}

/// Cohomology of the augmenting column `P^L → C^1(A,M)^L → …` through
/// position `max_p`.
pub fn augmented_column_cohomology(complex: &Complex, max_p: usize) -> Result<BettiTable> {
    // build one extra map so H^{max_p} sees its outgoing differential
    let col = complex.augmenting_column(max_p + 1)?;
    let mut degrees = Vec::new();
    for p in 0..=max_p {
        let out_map = &col.maps[p];
        let kernel = kernel_basis(out_map);
        let image_vectors: Vec<Vec<Rat>> = if p == 0 {
            Vec::new()
        } else {
            let prev = &col.maps[p - 1];
            (0..prev.cols)
                .map(|j| {
                    let mut e = vec![Rat::zero(); prev.cols];
                    e[j] = Rat::from_integer(1.into());
                    prev.apply(&e)
                })
                .collect()
        };
        let (dim, _) = homology_at(&kernel, &image_vectors, false)?;
        degrees.push((p, dim));
    }
    Ok(BettiTable { branch: complex.branch, degrees, representatives: Vec::new() })
}

/// Comparison of total cohomology with the augmenting-column cohomology in
/// degrees 1..3. Meaningful when `L` is semisimple; the tool records the
/// caller's assertion instead of verifying it.
#[derive(Debug, Clone)]
pub struct WhiteheadReport {
    pub semisimple_asserted: bool,
    /// `(i, dim H^i(total), dim H^i(column))` for `i = 1, 2, 3`.
    pub rows: Vec<(usize, usize, usize)>,
    pub all_match: bool,
}

pub fn whitehead_compare(complex: &Complex, semisimple_asserted: bool) -> Result<WhiteheadReport> {
    let total = total_cohomology(complex, 3, false)?;
    let column = augmented_column_cohomology(complex, 3)?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for i in 1..=3usize {
        let t = total.degrees[i].1;
        let c = column.degrees[i].1;
        all_match &= t == c;
        rows.push((i, t, c));
    }
    Ok(WhiteheadReport { semisimple_asserted, rows, all_match })
}
