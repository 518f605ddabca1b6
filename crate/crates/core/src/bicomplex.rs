//! The double complex of a Leibniz pair and the modified complex of a
//! Poisson algebra, materialized as matrices over enumerated bases.
//!
//! Spaces: `C^{p,q} = Hom(A^⊗p ⊗ Λ^q L, M)` for `p ≥ 1` and
//! `C^{0,q} = Hom(Λ^q L, P)`. Exterior powers are stored on strictly
//! increasing basis index tuples. A cochain's coefficient at index
//! `(a-tuple, L-combination, target)` is the coefficient of the target basis
//! vector in the value on those basis inputs; indices are lexicographic with
//! the A-tuple outermost and the target innermost.
//!
//! The Poisson complex reuses this machinery through the associated pair
//! `(A, A_Lie, μ = bracket)` with self coefficients: its bottom row
//! `Hom(Λ^{q+1} A, M)` is that pair's `C^{0,q+1}`, relabeled as bidegree
//! `(1, q)`, and rows `p ≥ 2` coincide. Row 1 of the pair complex is elided.
//!
//! Sign conventions (pinned by the requirement that every total differential
//! squares to zero; see the unit and acceptance tests):
//! - Hochschild: `(δ_H f)(a_1..a_{p+1}) = a_1 f(a_2..) + Σ_i (−1)^i f(.. a_i a_{i+1} ..) + (−1)^{p+1} f(a_1..a_p) a_{p+1}`.
//! - Chevalley–Eilenberg: action terms `(−1)^{i+1}`, bracket terms `(−1)^{i+j}` (1-indexed).
//! - `δ_v(g)(a; X) = [g(X), a]`; `ε*(g)(a | X) = g(a ∧ X)`; `δ_P = δ_H ∘ ε*`.
//! - Leibniz total differential on `C^{p,q}`: `δ_H + (−1)^p δ_CE` (with `δ_v`
//!   at `p = 0`). Poisson total differential: `δ_CE + δ_P` on the bottom row
//!   (the CE part unsigned — with the conventions above `δ_P` anticommutes
//!   with `δ_CE`, so a `−δ_CE` bottom row would not square to zero) and
//!   `δ_H + (−1)^p δ_CE` on rows `p ≥ 2`.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::algebra::{LeibnizPair, PairModule, PoissonAlgebra};
use crate::linalg::{kernel_basis, solve, RationalMatrix, SubspaceBasis};
use crate::rational::Rat;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Leibniz,
    Poisson,
}

/// External bidegree label. For the Poisson branch `p ≥ 1`, and `(1, q)`
/// denotes the bottom-row slot `Hom(Λ^{q+1} A, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub branch: Branch,
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn leibniz(p: usize, q: usize) -> Self {
        Self { branch: Branch::Leibniz, p, q }
    }

    pub fn poisson(p: usize, q: usize) -> Self {
        Self { branch: Branch::Poisson, p, q }
    }

    pub fn total(&self) -> usize {
        self.p + self.q
    }
}

/// A single-bidegree cochain as a dense coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub bidegree: Bidegree,
    pub coeffs: Vec<Rat>,
}

impl Cochain {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| r.is_zero())
    }
}

/// A total-degree-`n` cochain: one part per slot, in layout order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalCochain {
    pub n: usize,
    pub parts: Vec<Cochain>,
}

impl TotalCochain {
    pub fn flat(&self) -> Vec<Rat> {
        let mut v = Vec::new();
        for part in &self.parts {
            v.extend(part.coeffs.iter().cloned());
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|c| c.is_zero())
    }

    pub fn part(&self, d: Bidegree) -> Option<&Cochain> {
        self.parts.iter().find(|c| c.bidegree == d)
    }
}

/// Sparse rational matrix in row-major adjacency form. Rows are kept sorted
/// by column with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub row_data: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, row_data: vec![Vec::new(); rows] }
    }

    pub fn from_row_maps(rows: usize, cols: usize, maps: Vec<BTreeMap<usize, Rat>>) -> Self {
        assert_eq!(maps.len(), rows);
        let row_data = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, row_data }
    }

    pub fn is_zero(&self) -> bool {
        self.row_data.iter().all(|r| r.is_empty())
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rat::zero(); self.rows];
        for (i, row) in self.row_data.iter().enumerate() {
            for (j, c) in row {
                if !v[*j].is_zero() {
                    out[i] += c * &v[*j];
                }
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows);
        let mut maps = Vec::with_capacity(self.rows);
        for row in &self.row_data {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, c) in row {
                for (j, d) in &other.row_data[*k] {
                    let e = acc.entry(*j).or_insert_with(Rat::zero);
                    *e += c * d;
                }
            }
            maps.push(acc);
        }
        SparseMat::from_row_maps(self.rows, other.cols, maps)
    }

    /// Accumulate `scale · block` into `self` at the given offsets.
    pub fn add_block(&mut self, row_off: usize, col_off: usize, block: &SparseMat, scale: i64) {
        if scale == 0 {
            return;
        }
        let s = Rat::from_integer(scale.into());
        for (i, row) in block.row_data.iter().enumerate() {
            let dest = &mut self.row_data[row_off + i];
            for (j, c) in row {
                dest.push((col_off + j, &s * c));
            }
        }
    }

    /// Sort rows and merge duplicate columns (after `add_block` calls).
    pub fn normalize(&mut self) {
        for row in &mut self.row_data {
            row.sort_by_key(|(j, _)| *j);
            let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(row.len());
            for (j, c) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lc)) if *lj == j => *lc += c,
                    _ => merged.push((j, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            *row = merged;
        }
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zero(self.rows, self.cols);
        for (i, row) in self.row_data.iter().enumerate() {
            for (j, c) in row {
                *m.get_mut(i, *j) = c.clone();
            }
        }
        m
    }
}

/// A total differential `C^n_tot → C^{n+1}_tot` with its basis layout.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub from_degree: usize,
    pub to_degree: usize,
    /// `(bidegree, offset, dim)` per slot of the source, in layout order.
    pub from_layout: Vec<(Bidegree, usize, usize)>,
    pub to_layout: Vec<(Bidegree, usize, usize)>,
    pub(crate) mat: SparseMat,
}

impl DifferentialMatrix {
    pub fn rows(&self) -> usize {
        self.mat.rows
    }

    pub fn cols(&self) -> usize {
        self.mat.cols
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.mat.apply(v)
    }

    pub fn to_dense(&self) -> RationalMatrix {
        self.mat.to_dense()
    }

    /// Exact check that `next ∘ self = 0` without densifying.
    pub fn composes_to_zero(&self, next: &DifferentialMatrix) -> bool {
        next.mat.mul(&self.mat).is_zero()
    }
}

// --- combinatorics -----------------------------------------------------

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Lexicographic rank of a strictly increasing `k`-tuple from `{0..n-1}`.
pub(crate) fn comb_rank(tuple: &[usize], n: usize) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &t) in tuple.iter().enumerate() {
        for c in (prev + 1) as usize..t {
            rank += binom(n - c - 1, k - i - 1);
        }
        prev = t as isize;
    }
    rank
}

pub(crate) fn comb_unrank(mut rank: usize, n: usize, k: usize) -> Vec<usize> {
    let mut tuple = Vec::with_capacity(k);
    let mut c = 0;
    for i in 0..k {
        loop {
            let count = binom(n - c - 1, k - i - 1);
            if rank < count {
                tuple.push(c);
                c += 1;
                break;
            }
            rank -= count;
            c += 1;
        }
    }
    tuple
}

/// Insert `z` into the strictly increasing tuple `rest`, returning the sign
/// of the permutation placing `z` first, or `None` on a repeat.
fn insert_sorted(rest: &[usize], z: usize) -> Option<(Vec<usize>, i64)> {
    if rest.contains(&z) {
        return None;
    }
    let pos = rest.iter().filter(|&&x| x < z).count();
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(z);
    out.extend_from_slice(&rest[pos..]);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

fn a_rank(tuple: &[usize], na: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * na + t)
}

fn a_unrank(mut rank: usize, na: usize, p: usize) -> Vec<usize> {
    let mut tuple = vec![0; p];
    for i in (0..p).rev() {
        tuple[i] = rank % na;
        rank /= na;
    }
    tuple
}

// --- the complex --------------------------------------------------------

/// A Leibniz-pair bicomplex (or the modified Poisson complex) over a fixed
/// pair and coefficient module.
#[derive(Debug, Clone)]
pub struct Complex {
    pub branch: Branch,
    pub pair: LeibnizPair,
    pub module: PairModule,
}

impl Complex {
    pub fn leibniz(pair: LeibnizPair, module: PairModule) -> Self {
        Self { branch: Branch::Leibniz, pair, module }
    }

    /// The modified complex of a Poisson algebra with self coefficients,
    /// through the associated pair `(A, A_Lie, μ = bracket)`.
    pub fn poisson(p: &PoissonAlgebra) -> Self {
        let pair = p.as_pair();
        let module = PairModule::self_module(&pair);
        Self { branch: Branch::Poisson, pair, module }
    }

    fn na(&self) -> usize {
        self.pair.a.dim
    }
    fn nl(&self) -> usize {
        self.pair.l.dim
    }
    fn nm(&self) -> usize {
        self.module.m_dim
    }
    fn np(&self) -> usize {
        self.module.p_dim
    }

    /// Internal pair-complex slot for an external bidegree.
    fn internal(&self, d: Bidegree) -> Result<(usize, usize)> {
        if d.branch != self.branch {
            return Err(Error::Precondition("bidegree branch does not match complex".into()));
        }
        match self.branch {
            Branch::Leibniz => Ok((d.p, d.q)),
            Branch::Poisson => match d.p {
                0 => Err(Error::Precondition("poisson bidegrees have p ≥ 1".into())),
                1 => Ok((0, d.q + 1)),
                p => Ok((p, d.q)),
            },
        }
    }

    fn internal_dim(&self, p: usize, q: usize) -> usize {
        if p == 0 {
            binom(self.nl(), q) * self.np()
        } else {
            self.na().pow(p as u32) * binom(self.nl(), q) * self.nm()
        }
    }

    pub fn dim_cpq(&self, d: Bidegree) -> Result<usize> {
        let (p, q) = self.internal(d)?;
        Ok(self.internal_dim(p, q))
    }

    /// Index of the coefficient at `(a-tuple, increasing L-tuple, target)`
    /// within the internal slot `(p, q)`.
    fn index(&self, p: usize, q: usize, a_tuple: &[usize], comb: &[usize], target: usize) -> usize {
        let nc = binom(self.nl(), q);
        let tdim = if p == 0 { self.np() } else { self.nm() };
        debug_assert_eq!(a_tuple.len(), p);
        debug_assert_eq!(comb.len(), q);
        (a_rank(a_tuple, self.na()) * nc + comb_rank(comb, self.nl())) * tdim + target
    }

    /// External slots of total degree `n`, in layout order (increasing `p`).
    pub fn slots(&self, n: usize) -> Vec<Bidegree> {
        let mut out = Vec::new();
        match self.branch {
            Branch::Leibniz => {
                for p in 0..=n {
                    let d = Bidegree::leibniz(p, n - p);
                    if self.dim_cpq(d).unwrap() > 0 {
                        out.push(d);
                    }
                }
            }
            Branch::Poisson => {
                if n >= 1 {
                    let d = Bidegree::poisson(1, n - 1);
                    if self.dim_cpq(d).unwrap() > 0 {
                        out.push(d);
                    }
                }
                for p in 2..=n {
                    let d = Bidegree::poisson(p, n - p);
                    if self.dim_cpq(d).unwrap() > 0 {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    /// Slot layout `(bidegree, offset, dim)` for total degree `n`.
    pub fn layout(&self, n: usize) -> Vec<(Bidegree, usize, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for d in self.slots(n) {
            let dim = self.dim_cpq(d).unwrap();
            out.push((d, off, dim));
            off += dim;
        }
        out
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.layout(n).iter().map(|(_, _, dim)| dim).sum()
    }

    pub fn zero_cochain(&self, d: Bidegree) -> Result<Cochain> {
        Ok(Cochain { bidegree: d, coeffs: vec![Rat::zero(); self.dim_cpq(d)?] })
    }

    /// Coefficient index inside a cochain at external bidegree `d`.
    pub fn coeff_index(
        &self,
        d: Bidegree,
        a_tuple: &[usize],
        comb: &[usize],
        target: usize,
    ) -> Result<usize> {
        let (p, q) = self.internal(d)?;
        if a_tuple.len() != p || comb.len() != q {
            return Err(Error::Precondition("input tuple lengths do not match bidegree".into()));
        }
        Ok(self.index(p, q, a_tuple, comb, target))
    }

    pub fn total_cochain_from_flat(&self, n: usize, v: &[Rat]) -> Result<TotalCochain> {
        let layout = self.layout(n);
        let total: usize = layout.iter().map(|(_, _, d)| d).sum();
        if v.len() != total {
            return Err(Error::Precondition(format!(
                "flat vector length {} does not match total dimension {total} at degree {n}",
                v.len()
            )));
        }
        let parts = layout
            .iter()
            .map(|&(d, off, dim)| Cochain { bidegree: d, coeffs: v[off..off + dim].to_vec() })
            .collect();
        Ok(TotalCochain { n, parts })
    }

    pub fn zero_total_cochain(&self, n: usize) -> TotalCochain {
        let parts = self
            .layout(n)
            .iter()
            .map(|&(d, _, dim)| Cochain { bidegree: d, coeffs: vec![Rat::zero(); dim] })
            .collect();
        TotalCochain { n, parts }
    }

    // --- block matrices (internal slots) --------------------------------

    /// Hochschild coboundary `C^{p,q} → C^{p+1,q}`, `p ≥ 1`.
    fn delta_h_block(&self, p: usize, q: usize) -> SparseMat {
        assert!(p >= 1);
        let (na, nl, nm) = (self.na(), self.nl(), self.nm());
        let (rows, cols) = (self.internal_dim(p + 1, q), self.internal_dim(p, q));
        let ncq = binom(nl, q);
        let mut maps: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); rows];
        for ar in 0..na.pow((p + 1) as u32) {
            let tuple = a_unrank(ar, na, p + 1);
            for cr in 0..ncq {
                let comb = comb_unrank(cr, nl, q);
                for m in 0..nm {
                    let out = self.index(p + 1, q, &tuple, &comb, m);
                    let row = &mut maps[out];
                    // a_1 · f(a_2..a_{p+1})
                    for t in 0..nm {
                        let c = self.module.left_act.get(tuple[0], t, m);
                        if !c.is_zero() {
                            let col = self.index(p, q, &tuple[1..], &comb, t);
                            *row.entry(col).or_insert_with(Rat::zero) += c;
                        }
                    }
                    // (−1)^i f(.., a_i a_{i+1}, ..)
                    for i in 1..=p {
                        let sign = if i % 2 == 0 { 1i64 } else { -1 };
                        for k in 0..na {
                            let c = self.pair.a.c.get(tuple[i - 1], tuple[i], k);
                            if c.is_zero() {
                                continue;
                            }
                            let mut merged = Vec::with_capacity(p);
                            merged.extend_from_slice(&tuple[..i - 1]);
                            merged.push(k);
                            merged.extend_from_slice(&tuple[i + 1..]);
                            let col = self.index(p, q, &merged, &comb, m);
                            *row.entry(col).or_insert_with(Rat::zero) +=
                                c * Rat::from_integer(sign.into());
                        }
                    }
                    // (−1)^{p+1} f(a_1..a_p) · a_{p+1}
                    let sign = if (p + 1) % 2 == 0 { 1i64 } else { -1 };
                    for t in 0..nm {
                        let c = self.module.right_act.get(t, tuple[p], m);
                        if !c.is_zero() {
                            let col = self.index(p, q, &tuple[..p], &comb, t);
                            *row.entry(col).or_insert_with(Rat::zero) +=
                                c * Rat::from_integer(sign.into());
                        }
                    }
                }
            }
        }
        SparseMat::from_row_maps(rows, cols, maps)
    }

    /// `δ_v : C^{0,q} → C^{1,q}`, `(δ_v g)(a; X) = [g(X), a]`.
    fn delta_v_block(&self, q: usize) -> SparseMat {
        let (na, nl, nm, np) = (self.na(), self.nl(), self.nm(), self.np());
        let (rows, cols) = (self.internal_dim(1, q), self.internal_dim(0, q));
        let ncq = binom(nl, q);
        let mut maps: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); rows];
        for a in 0..na {
            for cr in 0..ncq {
                let comb = comb_unrank(cr, nl, q);
                for m in 0..nm {
                    let out = self.index(1, q, &[a], &comb, m);
                    for t in 0..np {
                        let c = self.module.p_on_a.get(t, a, m);
                        if !c.is_zero() {
                            let col = self.index(0, q, &[], &comb, t);
                            *maps[out].entry(col).or_insert_with(Rat::zero) += c;
                        }
                    }
                }
            }
        }
        SparseMat::from_row_maps(rows, cols, maps)
    }

    /// Chevalley–Eilenberg coboundary `C^{p,q} → C^{p,q+1}`.
    fn delta_ce_block(&self, p: usize, q: usize) -> SparseMat {
        let (na, nl) = (self.na(), self.nl());
        let tdim = if p == 0 { self.np() } else { self.nm() };
        let act = if p == 0 { &self.module.l_on_p } else { &self.module.l_on_m };
        let (rows, cols) = (self.internal_dim(p, q + 1), self.internal_dim(p, q));
        let ncq1 = binom(nl, q + 1);
        let mut maps: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); rows];
        for ar in 0..na.pow(p as u32) {
            let tuple = a_unrank(ar, na, p);
            for cr in 0..ncq1 {
                let comb = comb_unrank(cr, nl, q + 1);
                for m in 0..tdim {
                    let out = self.index(p, q + 1, &tuple, &comb, m);
                    let row = &mut maps[out];
                    for i in 1..=q + 1 {
                        let x = comb[i - 1];
                        let mut rest = comb.clone();
                        rest.remove(i - 1);
                        let sign_i = if i % 2 == 1 { 1i64 } else { -1 };
                        // (−1)^{i+1} x_i · f(..; rest)
                        for t in 0..tdim {
                            let c = act.get(x, t, m);
                            if !c.is_zero() {
                                let col = self.index(p, q, &tuple, &rest, t);
                                *row.entry(col).or_insert_with(Rat::zero) +=
                                    c * Rat::from_integer(sign_i.into());
                            }
                        }
                        // −(−1)^{i+1} Σ_k f(a_1.. μ(x_i)a_k ..; rest)
                        for k in 0..p {
                            for b in 0..na {
                                let c = self.pair.mu.get(x, tuple[k], b);
                                if c.is_zero() {
                                    continue;
                                }
                                let mut mod_tuple = tuple.clone();
                                mod_tuple[k] = b;
                                let col = self.index(p, q, &mod_tuple, &rest, m);
                                *row.entry(col).or_insert_with(Rat::zero) +=
                                    c * Rat::from_integer((-sign_i).into());
                            }
                        }
                        // (−1)^{i+j} f(..; [x_i, x_j] ∧ rest∖{x_j})
                        for j in i + 1..=q + 1 {
                            let y = comb[j - 1];
                            let mut rest2 = comb.clone();
                            rest2.remove(j - 1);
                            rest2.remove(i - 1);
                            let sign_ij = if (i + j) % 2 == 0 { 1i64 } else { -1 };
                            for z in 0..nl {
                                let c = self.pair.l.c.get(x, y, z);
                                if c.is_zero() {
                                    continue;
                                }
                                if let Some((sorted, perm)) = insert_sorted(&rest2, z) {
                                    let col = self.index(p, q, &tuple, &sorted, m);
                                    *row.entry(col).or_insert_with(Rat::zero) +=
                                        c * Rat::from_integer((sign_ij * perm).into());
                                }
                            }
                        }
                    }
                }
            }
        }
        SparseMat::from_row_maps(rows, cols, maps)
    }

    /// `ε* : C^{0,q} → C^{1,q−1}`, `(ε*g)(a | X) = g(a ∧ X)`. Requires the
    /// identification `P = M` (the Poisson self-module situation).
    fn eps_star_block(&self, q: usize) -> Result<SparseMat> {
        if self.np() != self.nm() {
            return Err(Error::Contract(
                "ε* needs the coefficient identification P = M".into(),
            ));
        }
        if q == 0 {
            return Err(Error::Precondition("ε* needs q ≥ 1".into()));
        }
        let (na, nl, nm) = (self.na(), self.nl(), self.nm());
        let (rows, cols) = (self.internal_dim(1, q - 1), self.internal_dim(0, q));
        let nc = binom(nl, q - 1);
        let mut maps: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); rows];
        for a in 0..na {
            for cr in 0..nc {
                let comb = comb_unrank(cr, nl, q - 1);
                if let Some((sorted, sign)) = insert_sorted(&comb, a) {
                    for m in 0..nm {
                        let out = self.index(1, q - 1, &[a], &comb, m);
                        let col = self.index(0, q, &[], &sorted, m);
                        maps[out].insert(col, Rat::from_integer(sign.into()));
                    }
                }
            }
        }
        Ok(SparseMat::from_row_maps(rows, cols, maps))
    }

    /// `δ_P = δ_H ∘ ε* : C^{0,q} → C^{2,q−1}` (internal slots).
    fn delta_p_block(&self, q: usize) -> Result<SparseMat> {
        Ok(self.delta_h_block(1, q - 1).mul(&self.eps_star_block(q)?))
    }

    // --- cochain-level operations ----------------------------------------

    fn apply_block(&self, f: &Cochain, to: Bidegree, block: &SparseMat) -> Cochain {
        Cochain { bidegree: to, coeffs: block.apply(&f.coeffs) }
    }

    pub fn delta_h(&self, f: &Cochain) -> Result<Cochain> {
        let (p, q) = self.internal(f.bidegree)?;
        if p < 1 {
            return Err(Error::Precondition("δ_H needs p ≥ 1".into()));
        }
        let to = Bidegree { branch: self.branch, p: f.bidegree.p + 1, q: f.bidegree.q };
        Ok(self.apply_block(f, to, &self.delta_h_block(p, q)))
    }

    pub fn delta_ce(&self, f: &Cochain) -> Result<Cochain> {
        let (p, q) = self.internal(f.bidegree)?;
        let to = Bidegree { branch: self.branch, p: f.bidegree.p, q: f.bidegree.q + 1 };
        Ok(self.apply_block(f, to, &self.delta_ce_block(p, q)))
    }

    pub fn delta_v(&self, f: &Cochain) -> Result<Cochain> {
        if self.branch != Branch::Leibniz {
            return Err(Error::Precondition("δ_v is a leibniz-branch operation".into()));
        }
        let (p, q) = self.internal(f.bidegree)?;
        if p != 0 {
            return Err(Error::Precondition("δ_v needs p = 0".into()));
        }
        let to = Bidegree::leibniz(1, q);
        Ok(self.apply_block(f, to, &self.delta_v_block(q)))
    }

    /// `ε*` on a bottom-row cochain `Hom(Λ^q A, M)`, poisson branch: input
    /// at bidegree `(1, q−1)`, output the row-1 pair cochain reinterpreted
    /// at internal `(1, q−1)`. Returned as a raw coefficient vector since
    /// row 1 has no external poisson bidegree.
    pub fn epsilon_star(&self, f: &Cochain) -> Result<Vec<Rat>> {
        let (p, q) = self.internal(f.bidegree)?;
        if p != 0 || q == 0 {
            return Err(Error::Precondition("ε* applies to bottom-row cochains of Λ-degree ≥ 1".into()));
        }
        Ok(self.eps_star_block(q)?.apply(&f.coeffs))
    }

    pub fn delta_p(&self, f: &Cochain) -> Result<Cochain> {
        if self.branch != Branch::Poisson {
            return Err(Error::Precondition("δ_P is a poisson-branch operation".into()));
        }
        let (p, q) = self.internal(f.bidegree)?;
        if p != 0 || q == 0 {
            return Err(Error::Precondition("δ_P applies to bottom-row cochains of Λ-degree ≥ 1".into()));
        }
        let to = Bidegree::poisson(2, q - 1);
        Ok(self.apply_block(f, to, &self.delta_p_block(q)?))
    }

    /// `[x, f]` for a basis element `x` of `L` and `f` at `(p, 0)`:
    /// `[x,f](a_1..a_p) = x·f(a_1..a_p) − Σ_k f(a_1.. μ(x)a_k ..a_p)`
    /// (for `p = 0` just the `L`-action on `P`).
    pub fn lie_action_on_cochain(&self, x: usize, f: &Cochain) -> Result<Cochain> {
        let (p, q) = self.internal(f.bidegree)?;
        if q != 0 {
            return Err(Error::Precondition("lie_action_on_cochain needs q = 0".into()));
        }
        if x >= self.nl() {
            return Err(Error::Precondition("L basis index out of range".into()));
        }
        Ok(Cochain {
            bidegree: f.bidegree,
            coeffs: self.lie_action_block(x, p).apply(&f.coeffs),
        })
    }

    fn lie_action_block(&self, x: usize, p: usize) -> SparseMat {
        let na = self.na();
        let tdim = if p == 0 { self.np() } else { self.nm() };
        let act = if p == 0 { &self.module.l_on_p } else { &self.module.l_on_m };
        let dim = self.internal_dim(p, 0);
        let mut maps: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); dim];
        for ar in 0..na.pow(p as u32) {
            let tuple = a_unrank(ar, na, p);
            for m in 0..tdim {
                let out = self.index(p, 0, &tuple, &[], m);
                let row = &mut maps[out];
                for t in 0..tdim {
                    let c = act.get(x, t, m);
                    if !c.is_zero() {
                        let col = self.index(p, 0, &tuple, &[], t);
                        *row.entry(col).or_insert_with(Rat::zero) += c;
                    }
                }
                for k in 0..p {
                    for b in 0..na {
                        let c = self.pair.mu.get(x, tuple[k], b);
                        if c.is_zero() {
                            continue;
                        }
                        let mut mod_tuple = tuple.clone();
                        mod_tuple[k] = b;
                        let col = self.index(p, 0, &mod_tuple, &[], m);
                        *row.entry(col).or_insert_with(Rat::zero) -= c;
                    }
                }
            }
        }
        SparseMat::from_row_maps(dim, dim, maps)
    }

    // --- total differential ----------------------------------------------

    pub fn total_differential(&self, n: usize) -> DifferentialMatrix {
        let from_layout = self.layout(n);
        let to_layout = self.layout(n + 1);
        let from_dim: usize = from_layout.iter().map(|(_, _, d)| d).sum();
        let to_dim: usize = to_layout.iter().map(|(_, _, d)| d).sum();
        let mut mat = SparseMat::zero(to_dim, from_dim);
        let to_offset = |d: Bidegree| to_layout.iter().find(|(b, _, _)| *b == d).map(|(_, o, _)| *o);

        for &(d, col_off, _) in &from_layout {
            let (p, q) = self.internal(d).unwrap();
            match self.branch {
                Branch::Leibniz => {
                    if p == 0 {
                        if let Some(ro) = to_offset(Bidegree::leibniz(1, q)) {
                            mat.add_block(ro, col_off, &self.delta_v_block(q), 1);
                        }
                        if let Some(ro) = to_offset(Bidegree::leibniz(0, q + 1)) {
                            mat.add_block(ro, col_off, &self.delta_ce_block(0, q), 1);
                        }
                    } else {
                        if let Some(ro) = to_offset(Bidegree::leibniz(p + 1, q)) {
                            mat.add_block(ro, col_off, &self.delta_h_block(p, q), 1);
                        }
                        if let Some(ro) = to_offset(Bidegree::leibniz(p, q + 1)) {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            mat.add_block(ro, col_off, &self.delta_ce_block(p, q), sign);
                        }
                    }
                }
                Branch::Poisson => {
                    if p == 0 {
                        // bottom row, external (1, q−1)
                        if let Some(ro) = to_offset(Bidegree::poisson(1, q)) {
                            mat.add_block(ro, col_off, &self.delta_ce_block(0, q), 1);
                        }
                        if let Some(ro) = to_offset(Bidegree::poisson(2, q - 1)) {
                            mat.add_block(ro, col_off, &self.delta_p_block(q).unwrap(), 1);
                        }
                    } else {
                        if let Some(ro) = to_offset(Bidegree::poisson(p + 1, q)) {
                            mat.add_block(ro, col_off, &self.delta_h_block(p, q), 1);
                        }
                        if let Some(ro) = to_offset(Bidegree::poisson(p, q + 1)) {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            mat.add_block(ro, col_off, &self.delta_ce_block(p, q), sign);
                        }
                    }
                }
            }
        }
        mat.normalize();
        DifferentialMatrix { from_degree: n, to_degree: n + 1, from_layout, to_layout, mat }
    }

    pub fn apply_total(&self, f: &TotalCochain) -> Result<TotalCochain> {
        let d = self.total_differential(f.n);
        let out = d.apply(&f.flat());
        self.total_cochain_from_flat(f.n + 1, &out)
    }

    // --- invariants and the augmenting column ----------------------------

    /// Basis of `{f ∈ C^{p,0} : [x, f] = 0 ∀ x}` (for `p = 0`: `P^L`).
    pub fn invariants_subspace(&self, p: usize) -> Result<SubspaceBasis> {
        let dim = self.internal_dim(p, 0);
        let nl = self.nl();
        if nl == 0 {
            let id = RationalMatrix::identity(dim);
            let vectors = (0..dim).map(|i| id.row(i).to_vec()).collect();
            return SubspaceBasis::new(dim, vectors);
        }
        let mut stacked = RationalMatrix::zero(nl * dim, dim);
        for x in 0..nl {
            let block = self.lie_action_block(x, p).to_dense();
            for i in 0..dim {
                for j in 0..dim {
                    *stacked.get_mut(x * dim + i, j) = block.get(i, j).clone();
                }
            }
        }
        Ok(kernel_basis(&stacked))
    }
}

/// The augmenting column: invariant subspaces `C^p(A,M)^L` (with `P^L` in
/// position 0) and the induced maps between them.
#[derive(Debug, Clone)]
pub struct AugmentedColumn {
    /// Bases of the invariant subspaces, positions `0..=max_p`.
    pub bases: Vec<SubspaceBasis>,
    /// `maps[p]` sends coordinates w.r.t. `bases[p]` to coordinates w.r.t.
    /// `bases[p+1]`; position 0 is induced by `P → Der(A,M)`, the rest by `δ_H`.
    pub maps: Vec<RationalMatrix>,
}

impl Complex {
    pub fn augmenting_column(&self, max_p: usize) -> Result<AugmentedColumn> {
        if self.branch != Branch::Leibniz {
            return Err(Error::Precondition("the augmenting column is a leibniz-branch construction".into()));
        }
        let mut bases = Vec::with_capacity(max_p + 1);
        for p in 0..=max_p {
            bases.push(self.invariants_subspace(p)?);
        }
        let mut maps = Vec::with_capacity(max_p);
        for p in 0..max_p {
            let block = if p == 0 { self.delta_v_block(0) } else { self.delta_h_block(p, 0) };
            let target = &bases[p + 1];
            // columns of `cols_mat` are the target basis vectors
            let amb = self.internal_dim(p + 1, 0);
            let mut cols_mat = RationalMatrix::zero(amb, target.dim());
            for (j, v) in target.vectors.iter().enumerate() {
                for i in 0..amb {
                    *cols_mat.get_mut(i, j) = v[i].clone();
                }
            }
            let mut map = RationalMatrix::zero(target.dim(), bases[p].dim());
            for (j, v) in bases[p].vectors.iter().enumerate() {
                let image = block.apply(v);
                let coords = solve(&cols_mat, &image).ok_or_else(|| {
                    Error::Contract(format!(
                        "differential does not preserve invariants at column position {p}"
                    ))
                })?;
                for i in 0..target.dim() {
                    *map.get_mut(i, j) = coords[i].clone();
                }
            }
            maps.push(map);
        }
        Ok(AugmentedColumn { bases, maps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rat};
    use crate::samples;
    use num::traits::Zero;

    fn self_complex(pair: LeibnizPair) -> Complex {
        let module = PairModule::self_module(&pair);
        Complex::leibniz(pair, module)
    }

    #[test]
    fn combinatorics_round_trip() {
        for n in 0..7usize {
            for k in 0..=n {
                for r in 0..binom(n, k) {
                    let t = comb_unrank(r, n, k);
                    assert!(t.windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(comb_rank(&t, n), r);
                }
            }
        }
    }

    #[test]
    fn dims_match_counting_formulas() {
        let c = self_complex(samples::pair1());
        assert_eq!(c.dim_cpq(Bidegree::leibniz(2, 1)).unwrap(), 8);
        let c = self_complex(samples::sl2_pair());
        assert_eq!(c.dim_cpq(Bidegree::leibniz(0, 2)).unwrap(), 9);
        let c = Complex::poisson(&samples::pois3());
        assert_eq!(c.dim_cpq(Bidegree::poisson(1, 1)).unwrap(), 9);
    }

    #[test]
    fn lie_action_examples() {
        // [d, f](a) = [d, f(a)] − f(μ(d)a) on PAIR1; f picks the
        // x-coefficient as a multiple of 1
        let c = self_complex(samples::pair1());
        let mut f = c.zero_cochain(Bidegree::leibniz(1, 0)).unwrap();
        let i = c.coeff_index(Bidegree::leibniz(1, 0), &[1], &[], 0).unwrap();
        f.coeffs[i] = rat_int(1);
        let df = c.lie_action_on_cochain(0, &f).unwrap();
        // on a = x the value is −1·(basis "1")
        assert_eq!(df.coeffs[i], rat_int(-1));

        // with μ = 0 and trivial action the bracket vanishes
        let c = self_complex(samples::sl2_pair());
        let mut f = c.zero_cochain(Bidegree::leibniz(1, 0)).unwrap();
        f.coeffs[0] = rat_int(5);
        for x in 0..3 {
            assert!(c.lie_action_on_cochain(x, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn delta_h_example() {
        // dual numbers, f(1)=0, f(x)=1: (δ_H f)(x,x) = x·1 + 1·x = 2x
        let c = self_complex(samples::dual_pair());
        let d = Bidegree::leibniz(1, 0);
        let mut f = c.zero_cochain(d).unwrap();
        f.coeffs[c.coeff_index(d, &[1], &[], 0).unwrap()] = rat_int(1);
        let df = c.delta_h(&f).unwrap();
        let d2 = Bidegree::leibniz(2, 0);
        assert_eq!(df.coeffs[c.coeff_index(d2, &[1, 1], &[], 1).unwrap()], rat_int(2));
        assert_eq!(df.coeffs[c.coeff_index(d2, &[1, 1], &[], 0).unwrap()], rat_int(0));
    }

    #[test]
    fn derivations_are_hochschild_cocycles() {
        // the Euler derivation of the dual numbers
        let c = self_complex(samples::dual_pair());
        let d = Bidegree::leibniz(1, 0);
        let mut f = c.zero_cochain(d).unwrap();
        f.coeffs[c.coeff_index(d, &[1], &[], 1).unwrap()] = rat_int(1);
        assert!(c.delta_h(&f).unwrap().is_zero());
    }

    #[test]
    fn delta_ce_examples() {
        let c = self_complex(samples::sl2_pair());
        // identity in C^{0,1} = Hom(L, L): (δ f)(h∧e) = [h,e] − [e,h] − f([h,e]) = 2e
        let d = Bidegree::leibniz(0, 1);
        let mut f = c.zero_cochain(d).unwrap();
        for x in 0..3 {
            f.coeffs[c.coeff_index(d, &[], &[x], x).unwrap()] = rat_int(1);
        }
        let df = c.delta_ce(&f).unwrap();
        let d2 = Bidegree::leibniz(0, 2);
        // h∧e is the combination {0,1}, target e = 1
        assert_eq!(df.coeffs[c.coeff_index(d2, &[], &[0, 1], 1).unwrap()], rat_int(2));
        assert_eq!(df.coeffs[c.coeff_index(d2, &[], &[0, 1], 0).unwrap()], rat_int(0));

        // π = h ∈ C^{0,0}: (δ_CE h)(e) = [e, h] = −2e
        let d0 = Bidegree::leibniz(0, 0);
        let mut pi = c.zero_cochain(d0).unwrap();
        pi.coeffs[0] = rat_int(1); // h
        let dpi = c.delta_ce(&pi).unwrap();
        assert_eq!(dpi.coeffs[c.coeff_index(d, &[], &[1], 1).unwrap()], rat_int(-2));
    }

    #[test]
    fn delta_v_examples() {
        // PAIR1: δ_v(d) is the Euler derivation
        let c = self_complex(samples::pair1());
        let mut f = c.zero_cochain(Bidegree::leibniz(0, 0)).unwrap();
        f.coeffs[0] = rat_int(1);
        let df = c.delta_v(&f).unwrap();
        let d1 = Bidegree::leibniz(1, 0);
        assert_eq!(df.coeffs[c.coeff_index(d1, &[1], &[], 1).unwrap()], rat_int(1));
        assert_eq!(df.coeffs[c.coeff_index(d1, &[0], &[], 0).unwrap()], rat_int(0));
        assert_eq!(df.coeffs[c.coeff_index(d1, &[0], &[], 1).unwrap()], rat_int(0));
        // image of δ_v consists of derivations
        assert!(c.delta_h(&df).unwrap().is_zero());

        // (Q, sl2): Der(Q) = 0
        let c = self_complex(samples::sl2_pair());
        for q in 0..3 {
            let dim = c.dim_cpq(Bidegree::leibniz(0, q)).unwrap();
            for i in 0..dim {
                let mut f = c.zero_cochain(Bidegree::leibniz(0, q)).unwrap();
                f.coeffs[i] = rat_int(1);
                assert!(c.delta_v(&f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn epsilon_star_antisymmetry() {
        // POIS3, f(x∧y) = m: (ε*f)(x|y) = m, (ε*f)(y|x) = −m, (ε*f)(x|x) = 0
        let c = Complex::poisson(&samples::pois3());
        let d = Bidegree::poisson(1, 1); // Hom(Λ²A, A)
        let mut f = c.zero_cochain(d).unwrap();
        let m = 2; // target basis y, arbitrary
        f.coeffs[c.coeff_index(d, &[], &[1, 2], m).unwrap()] = rat_int(1);
        let ef = c.epsilon_star(&f).unwrap();
        // ε*f lives at internal (1,1): index (a-tuple [a], comb [x], target)
        let idx = |a: usize, x: usize, t: usize| (a * 3 + x) * 3 + t;
        assert_eq!(ef[idx(1, 2, m)], rat_int(1)); // (x | y)
        assert_eq!(ef[idx(2, 1, m)], rat_int(-1)); // (y | x)
        assert_eq!(ef[idx(1, 1, m)], rat_int(0)); // (x | x)
    }

    #[test]
    fn epsilon_star_q1_is_reinterpretation() {
        let c = Complex::poisson(&samples::dual_poisson_zero_bracket());
        let d = Bidegree::poisson(1, 0); // Hom(A, M)
        let mut f = c.zero_cochain(d).unwrap();
        f.coeffs[1] = rat_int(3);
        assert_eq!(c.epsilon_star(&f).unwrap(), f.coeffs);
    }

    #[test]
    fn delta_p_examples() {
        // dual numbers, zero bracket: δ_P = δ_H on the q=1 bottom row
        let c = Complex::poisson(&samples::dual_poisson_zero_bracket());
        let d = Bidegree::poisson(1, 0);
        let mut f = c.zero_cochain(d).unwrap();
        f.coeffs[c.coeff_index(d, &[], &[1], 0).unwrap()] = rat_int(1); // f(x) = 1
        let df = c.delta_p(&f).unwrap();
        let d2 = Bidegree::poisson(2, 0);
        assert_eq!(df.coeffs[c.coeff_index(d2, &[1, 1], &[], 1).unwrap()], rat_int(2));

        // a derivation has δ_P = 0
        let mut g = c.zero_cochain(d).unwrap();
        g.coeffs[c.coeff_index(d, &[], &[1], 1).unwrap()] = rat_int(1); // Euler
        assert!(c.delta_p(&g).unwrap().is_zero());
    }

    #[test]
    fn eps_star_homotopy_identity_sign_pinned() {
        // δ_CE ε* + ε* δ_CE = −δ_v on the unmodified complex of the
        // associated pair, for the bundled Poisson examples, q ≤ 3
        for pois in [samples::pois3(), samples::dual_poisson_zero_bracket()] {
            let pair = pois.as_pair();
            let module = PairModule::self_module(&pair);
            let c = Complex::leibniz(pair, module);
            for q in 1..=3usize {
                let lhs = c
                    .delta_ce_block(1, q - 1)
                    .mul(&c.eps_star_block(q).unwrap());
                let rhs = c.eps_star_block(q + 1).unwrap().mul(&c.delta_ce_block(0, q));
                let mut sum = SparseMat::zero(lhs.rows, lhs.cols);
                sum.add_block(0, 0, &lhs, 1);
                sum.add_block(0, 0, &rhs, 1);
                sum.add_block(0, 0, &c.delta_v_block(q), 1);
                sum.normalize();
                assert!(sum.is_zero(), "homotopy identity failed at q = {q}");
            }
        }
    }

    #[test]
    fn delta_p_anticommutes_with_delta_ce() {
        for pois in [samples::pois3(), samples::dual_poisson_zero_bracket()] {
            let c = Complex::poisson(&pois);
            for q in 1..=3usize {
                let a = c.delta_ce_block(2, q - 1).mul(&c.delta_p_block(q).unwrap());
                let b = c.delta_p_block(q + 1).unwrap().mul(&c.delta_ce_block(0, q));
                let mut sum = SparseMat::zero(a.rows, a.cols);
                sum.add_block(0, 0, &a, 1);
                sum.add_block(0, 0, &b, 1);
                sum.normalize();
                assert!(sum.is_zero(), "anticommutation failed at q = {q}");
            }
        }
    }

    #[test]
    fn square_zero_and_commutation_blocks() {
        for pair in samples::bundled_pairs() {
            let c = self_complex(pair);
            for p in 0..=3usize {
                for q in 0..=(3 - p) {
                    // δ_CE² = 0
                    let ce2 = c.delta_ce_block(p, q + 1).mul(&c.delta_ce_block(p, q));
                    assert!(ce2.is_zero(), "δ_CE² ≠ 0 at ({p},{q})");
                    if p >= 1 {
                        let h2 = c.delta_h_block(p + 1, q).mul(&c.delta_h_block(p, q));
                        assert!(h2.is_zero(), "δ_H² ≠ 0 at ({p},{q})");
                        // δ_H δ_CE = δ_CE δ_H
                        let a = c.delta_h_block(p, q + 1).mul(&c.delta_ce_block(p, q));
                        let b = c.delta_ce_block(p + 1, q).mul(&c.delta_h_block(p, q));
                        let mut diff = SparseMat::zero(a.rows, a.cols);
                        diff.add_block(0, 0, &a, 1);
                        diff.add_block(0, 0, &b, -1);
                        diff.normalize();
                        assert!(diff.is_zero(), "commutation failed at ({p},{q})");
                    } else {
                        // δ_H δ_v = 0 and δ_v δ_CE = δ_CE δ_v
                        let hv = c.delta_h_block(1, q).mul(&c.delta_v_block(q));
                        assert!(hv.is_zero(), "δ_H δ_v ≠ 0 at q={q}");
                        let a = c.delta_v_block(q + 1).mul(&c.delta_ce_block(0, q));
                        let b = c.delta_ce_block(1, q).mul(&c.delta_v_block(q));
                        let mut diff = SparseMat::zero(a.rows, a.cols);
                        diff.add_block(0, 0, &a, 1);
                        diff.add_block(0, 0, &b, -1);
                        diff.normalize();
                        assert!(diff.is_zero(), "δ_v chain-map failed at q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn total_differential_examples() {
        // (DUAL, L=0): degree-1 total differential is the Hochschild map alone
        let c = self_complex(samples::dual_pair());
        let d = c.total_differential(1);
        assert_eq!(d.from_layout.len(), 1);
        assert_eq!(d.from_layout[0].0, Bidegree::leibniz(1, 0));
        let hoch = c.delta_h_block(1, 0);
        assert_eq!(d.mat, hoch);

        // PAIR1 self, n=0: 5×1 of rank 1
        let c = self_complex(samples::pair1());
        let d = c.total_differential(0);
        assert_eq!((d.rows(), d.cols()), (5, 1));
        assert_eq!(crate::linalg::rref(&d.to_dense()).rank, 1);
    }

    #[test]
    fn total_squares_to_zero_small() {
        for pair in [samples::dual_pair(), samples::pair1(), samples::sl2_pair()] {
            let c = self_complex(pair);
            for n in 0..=3 {
                let d0 = c.total_differential(n);
                let d1 = c.total_differential(n + 1);
                assert!(d0.composes_to_zero(&d1), "total δ² ≠ 0 at degree {n}");
            }
        }
        for pois in [samples::pois3(), samples::dual_poisson_zero_bracket()] {
            let c = Complex::poisson(&pois);
            for n in 0..=3 {
                let d0 = c.total_differential(n);
                let d1 = c.total_differential(n + 1);
                assert!(d0.composes_to_zero(&d1), "poisson total δ² ≠ 0 at degree {n}");
            }
        }
    }

    #[test]
    fn invariants_examples() {
        // L = 0: everything is invariant
        let c = self_complex(samples::dual_pair());
        for p in 0..=2 {
            assert_eq!(c.invariants_subspace(p).unwrap().dim(), c.internal_dim(p, 0));
        }
        // (Q, sl2): the action on C^p(Q,Q) is zero, dim 1 each
        let c = self_complex(samples::sl2_pair());
        for p in 1..=3 {
            assert_eq!(c.invariants_subspace(p).unwrap().dim(), 1);
        }
        // P^L for the adjoint module is the center: 0 for sl2
        assert_eq!(c.invariants_subspace(0).unwrap().dim(), 0);
        // PAIR1 p=0: P = L abelian, all invariant
        let c = self_complex(samples::pair1());
        assert_eq!(c.invariants_subspace(0).unwrap().dim(), 1);
    }

    #[test]
    fn augmenting_column_sl2() {
        // (Q, sl2): 0 → Q → Q → …, maps alternate 0, id starting with δ_v = 0
        let c = self_complex(samples::sl2_pair());
        let col = c.augmenting_column(4).unwrap();
        let dims: Vec<usize> = col.bases.iter().map(|b| b.dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 1]);
        // δ_H on C^p(Q,Q) multiplies by 1 + Σ(−1)^i + (−1)^{p+1}: id for odd
        // p, zero for even p; the first arrow δ_v vanishes on Der(Q) = 0
        assert!(col.maps[0].is_zero());
        assert_eq!(col.maps[1], RationalMatrix::identity(1));
        assert!(col.maps[2].is_zero());
        assert_eq!(col.maps[3], RationalMatrix::identity(1));
        // composites vanish
        for p in 0..3 {
            assert!(col.maps[p + 1].matmul(&col.maps[p]).is_zero());
        }
    }

    #[test]
    fn augmenting_column_l_zero_is_hochschild() {
        let c = self_complex(samples::dual_pair());
        let col = c.augmenting_column(3).unwrap();
        assert_eq!(col.bases[0].dim(), 0); // P = 0 prepended
        for p in 1..=3 {
            assert_eq!(col.bases[p].dim(), c.internal_dim(p, 0));
        }
        for p in 0..2 {
            assert!(col.maps[p + 1].matmul(&col.maps[p]).is_zero());
        }
    }

    #[test]
    fn epsilon_projection_idempotent() {
        // the antisymmetrization of Hom(Λ²A, M) into Hom(A⊗A, M) composed
        // with restriction-to-increasing-tuples is the identity on Λ²
        let c = Complex::poisson(&samples::pois3());
        let d = Bidegree::poisson(1, 1);
        let dim = c.dim_cpq(d).unwrap();
        for i in 0..dim {
            let mut f = c.zero_cochain(d).unwrap();
            f.coeffs[i] = rat_int(1);
            let ef = c.epsilon_star(&f).unwrap();
            // rebuild the Λ² cochain from the skew tensor: g(x∧y) = (ε*f)(x|y)
            let idx = |a: usize, x: usize, t: usize| (a * 3 + x) * 3 + t;
            let mut back = vec![Rat::zero(); dim];
            for x in 0..3 {
                for y in (x + 1)..3 {
                    for t in 0..3 {
                        back[c.coeff_index(d, &[], &[x, y], t).unwrap()] = ef[idx(x, y, t)].clone();
                    }
                }
            }
            assert_eq!(back, f.coeffs);
        }
    }

    #[test]
    fn poisson_degree_zero_is_empty() {
        let c = Complex::poisson(&samples::pois3());
        assert_eq!(c.total_dim(0), 0);
        assert_eq!(c.total_dim(1), 9); // Hom(A, A)
    }
}
