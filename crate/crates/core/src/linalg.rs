//! Exact rational linear algebra: RREF, rank, kernel and image bases,
//! solving, and quotient dimensions.
//!
//! Everything is dense and deterministic: pivoting always picks the first
//! nonzero entry in column order, so bases and canonical representatives are
//! reproducible. `num`'s `BigRational` keeps every entry in lowest terms
//! after every operation, which is all the anti-swell control elimination
//! over the rationals needs.

use num::traits::Zero;

use crate::rational::Rat;
use crate::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::from_integer(1.into());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += e * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *out.get_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Result of a reduced-row-echelon computation.
#[derive(Debug, Clone)]
pub struct RrefResult {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: RationalMatrix,
}

/// Gauss-Jordan elimination to reduced row echelon form. The pivot in each
/// column is the first nonzero entry below the previous pivot row.
pub fn rref(m: &RationalMatrix) -> RrefResult {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(src) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..a.cols {
                let i = src * a.cols + c;
                let j = pivot_row * a.cols + c;
                a.entries.swap(i, j);
            }
        }
        let inv = {
            let p = a.get(pivot_row, col).clone();
            Rat::from_integer(1.into()) / p
        };
        for c in col..a.cols {
            let v = a.get(pivot_row, c).clone() * &inv;
            *a.get_mut(pivot_row, c) = v;
        }
        for r in 0..a.rows {
            if r == pivot_row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let sub = a.get(pivot_row, c).clone() * &factor;
                *a.get_mut(r, c) -= sub;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    RrefResult { rank: pivots.len(), pivots, reduced: a }
}

/// A list of linearly independent vectors spanning a subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Rat>>,
}

impl SubspaceBasis {
    /// Builds a basis, verifying linear independence by a rank check.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Structural("basis vector of wrong length".into()));
        }
        if !vectors.is_empty() {
            let m = RationalMatrix::from_rows(vectors.clone());
            if rref(&m).rank != vectors.len() {
                return Err(Error::Structural("basis vectors are linearly dependent".into()));
            }
        }
        Ok(Self { ambient_dim, vectors })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: Vec::new() }
    }

    /// Basis of the span of (possibly dependent) vectors: the nonzero rows
    /// of their RREF.
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return Self::empty(ambient_dim);
        }
        let r = rref(&RationalMatrix::from_rows(vectors.to_vec()));
        let basis = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Self { ambient_dim, vectors: basis }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// RREF of the basis rows; used for canonical reduction mod the subspace.
    fn reduced_rows(&self) -> RrefResult {
        if self.vectors.is_empty() {
            return rref(&RationalMatrix::zero(0, self.ambient_dim));
        }
        rref(&RationalMatrix::from_rows(self.vectors.clone()))
    }
}

/// Basis of the null space `{v : m v = 0}`, one vector per free column, in
/// column order. The free coordinate of each vector is set to 1.
pub fn kernel_basis(m: &RationalMatrix) -> SubspaceBasis {
    let RrefResult { pivots, reduced, .. } = rref(m);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut vectors = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::from_integer(1.into());
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = -reduced.get(row, free).clone();
        }
        vectors.push(v);
    }
    SubspaceBasis { ambient_dim: m.cols, vectors }
}

/// Solves `m x = b` if consistent, returning the canonical particular
/// solution (zero in every non-pivot coordinate).
pub fn solve(m: &RationalMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows, "rhs length mismatch");
    let mut aug = RationalMatrix::zero(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            *aug.get_mut(r, c) = m.get(r, c).clone();
        }
        *aug.get_mut(r, m.cols) = b[r].clone();
    }
    let RrefResult { pivots, reduced, .. } = rref(&aug);
    if pivots.contains(&m.cols) {
        return None; // row [0 ... 0 | 1]: inconsistent
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = reduced.get(row, m.cols).clone();
    }
    Some(x)
}

/// `dim Z - dim B`, after verifying `B ⊆ span Z`. A failure of the
/// containment is a contract violation (in cohomology use it means the image
/// of a differential escaped the next kernel).
pub fn quotient_dim(z: &SubspaceBasis, b: &SubspaceBasis) -> Result<usize> {
    if z.ambient_dim != b.ambient_dim {
        return Err(Error::Structural("ambient dimension mismatch".into()));
    }
    if !b.vectors.is_empty() {
        // columns of zt are the Z basis vectors
        let mut zt = RationalMatrix::zero(z.ambient_dim, z.dim());
        for (j, v) in z.vectors.iter().enumerate() {
            for i in 0..z.ambient_dim {
                *zt.get_mut(i, j) = v[i].clone();
            }
        }
        for v in &b.vectors {
            if solve(&zt, v).is_none() {
                return Err(Error::Contract(
                    "subspace B is not contained in span Z".into(),
                ));
            }
        }
    }
    Ok(z.dim() - b.dim())
}

/// Canonical representative of `v + span(B)`: eliminates the pivot
/// coordinates of the RREF of `B`. Returns zero iff `v ∈ span B`.
pub fn reduce_mod_subspace(v: &[Rat], b: &SubspaceBasis) -> Vec<Rat> {
    assert_eq!(v.len(), b.ambient_dim, "ambient dimension mismatch");
    let RrefResult { pivots, reduced, .. } = b.reduced_rows();
    let mut out = v.to_vec();
    for (row, &col) in pivots.iter().enumerate() {
        if out[col].is_zero() {
            continue;
        }
        let factor = out[col].clone();
        for c in 0..b.ambient_dim {
            let sub = reduced.get(row, c).clone() * &factor;
            out[c] -= sub;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_proportional_rows() {
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let r = rref(&RationalMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.reduced, RationalMatrix::identity(3));
    }

    #[test]
    fn rref_fractional_full_rank() {
        // determinant 1/10 - 1/12 = 1/60 != 0
        let mat = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(rref(&mat).rank, 2);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel_basis(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.vectors, vec![vec![rat_int(-2), rat_int(1)]]);
    }

    #[test]
    fn kernel_of_zero_and_invertible() {
        assert_eq!(kernel_basis(&RationalMatrix::zero(2, 3)).dim(), 3);
        assert_eq!(kernel_basis(&m(&[&[1, 1], &[0, 1]])).dim(), 0);
    }

    #[test]
    fn solve_scalar() {
        assert_eq!(solve(&m(&[&[2]]), &[rat_int(3)]), Some(vec![rat(3, 2)]));
    }

    #[test]
    fn solve_inconsistent() {
        assert_eq!(solve(&m(&[&[1, 1], &[1, 1]]), &[rat_int(1), rat_int(2)]), None);
    }

    #[test]
    fn solve_picks_canonical_solution() {
        assert_eq!(
            solve(&m(&[&[1, 1]]), &[rat_int(5)]),
            Some(vec![rat_int(5), rat_int(0)])
        );
    }

    #[test]
    fn quotient_dims() {
        let z = SubspaceBasis::new(2, vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]])
            .unwrap();
        let b = SubspaceBasis::new(2, vec![vec![rat_int(1), rat_int(1)]]).unwrap();
        assert_eq!(quotient_dim(&z, &b).unwrap(), 1);
        assert_eq!(quotient_dim(&z, &z).unwrap(), 0);
        assert_eq!(quotient_dim(&z, &SubspaceBasis::empty(2)).unwrap(), 2);
    }

    #[test]
    fn quotient_rejects_escaping_subspace() {
        let z = SubspaceBasis::new(2, vec![vec![rat_int(1), rat_int(0)]]).unwrap();
        let b = SubspaceBasis::new(2, vec![vec![rat_int(0), rat_int(1)]]).unwrap();
        assert!(matches!(quotient_dim(&z, &b), Err(crate::Error::Contract(_))));
    }

    #[test]
    fn reduce_mod_examples() {
        let b = SubspaceBasis::new(2, vec![vec![rat_int(1), rat_int(1)]]).unwrap();
        assert_eq!(
            reduce_mod_subspace(&[rat_int(1), rat_int(1)], &b),
            vec![rat_int(0), rat_int(0)]
        );
        assert_eq!(
            reduce_mod_subspace(&[rat_int(1), rat_int(0)], &SubspaceBasis::empty(2)),
            vec![rat_int(1), rat_int(0)]
        );
        let b3 = SubspaceBasis::new(3, vec![vec![rat_int(1), rat_int(0), rat_int(0)]]).unwrap();
        assert_eq!(
            reduce_mod_subspace(&[rat_int(1), rat_int(2), rat_int(3)], &b3),
            vec![rat_int(0), rat_int(2), rat_int(3)]
        );
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(SubspaceBasis::new(
            2,
            vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]]
        )
        .is_err());
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity_and_solve(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec(-6i64..=6, 0..49),
        ) {
            let mut mat = RationalMatrix::zero(rows, cols);
            for (k, &v) in seed.iter().enumerate().take(rows * cols) {
                *mat.get_mut(k / cols, k % cols) = rat_int(v);
            }
            let r = rref(&mat);
            let kernel = kernel_basis(&mat);
            proptest::prop_assert_eq!(r.rank + kernel.dim(), cols);
            for v in &kernel.vectors {
                proptest::prop_assert!(mat.apply(v).iter().all(|x| x.is_zero()));
            }
            // any vector built from the columns is solvable, exactly
            let x: Vec<Rat> = (0..cols).map(|i| rat_int(seed.get(i).copied().unwrap_or(1))).collect();
            let b = mat.apply(&x);
            let sol = solve(&mat, &b).expect("in the image by construction");
            proptest::prop_assert_eq!(mat.apply(&sol), b);
        }
    }
}
