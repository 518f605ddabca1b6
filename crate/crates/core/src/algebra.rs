//! Algebraic input data: associative and Lie algebras as structure-constant
//! tensors, Leibniz pairs, Poisson algebras, and modules over pairs, with
//! exhaustive axiom validation on basis tuples.
//!
//! All axioms checked here are multilinear, so verifying them on every basis
//! tuple is exhaustive. Every check is exact rational equality.

use num::traits::Zero;

use crate::rational::Rat;
use crate::{Error, Result};

/// Dense rank-3 tensor of rationals, row-major in `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    data: Vec<Rat>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self { d0, d1, d2, data: vec![Rat::zero(); d0 * d1 * d2] }
    }

    pub fn from_data(d0: usize, d1: usize, d2: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != d0 * d1 * d2 {
            return Err(Error::Structural(format!(
                "tensor data length {} does not match shape {}x{}x{}",
                data.len(),
                d0,
                d1,
                d2
            )));
        }
        Ok(Self { d0, d1, d2, data })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    /// Slice `t[i][j][.]` as a coefficient vector.
    pub fn fiber(&self, i: usize, j: usize) -> &[Rat] {
        let base = (i * self.d1 + j) * self.d2;
        &self.data[base..base + self.d2]
    }

    /// Bilinear evaluation on coefficient vectors: `Σ u_i v_j t[i][j][.]`.
    pub fn eval(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        assert_eq!(u.len(), self.d0);
        assert_eq!(v.len(), self.d1);
        let mut out = vec![Rat::zero(); self.d2];
        for i in 0..self.d0 {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.d1 {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..self.d2 {
                    let t = self.get(i, j, k);
                    if !t.is_zero() {
                        out[k] += &uv * t;
                    }
                }
            }
        }
        out
    }

    /// Evaluation on a pair of basis indices.
    pub fn eval_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        self.fiber(i, j).to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Associative,
    Lie,
}

/// A finite-dimensional associative or Lie algebra given by its
/// structure-constant tensor: `c[i][j][k]` is the coefficient of basis `k`
/// in `b_i · b_j` (or `[b_i, b_j]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    pub kind: AlgebraKind,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub c: Tensor3,
    pub unit_index: Option<usize>,
}

impl StructureAlgebra {
    pub fn new(
        kind: AlgebraKind,
        dim: usize,
        basis_labels: Option<Vec<String>>,
        c: Tensor3,
        unit_index: Option<usize>,
    ) -> Result<Self> {
        if c.shape() != (dim, dim, dim) {
            return Err(Error::Structural(format!(
                "structure tensor shape {:?} does not match dim {dim}",
                c.shape()
            )));
        }
        if let Some(u) = unit_index {
            if u >= dim {
                return Err(Error::Structural(format!("unit index {u} out of range")));
            }
            if kind == AlgebraKind::Lie {
                return Err(Error::Structural("a Lie algebra has no unit index".into()));
            }
        }
        let basis_labels = basis_labels
            .unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if basis_labels.len() != dim {
            return Err(Error::Structural("basis label count does not match dim".into()));
        }
        Ok(Self { kind, dim, basis_labels, c, unit_index })
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::from_integer(1.into());
        v
    }

    /// Product (or bracket) of two coefficient vectors.
    pub fn mul(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        self.c.eval(u, v)
    }
}

/// A Leibniz pair: associative `A`, Lie `L`, and the structure morphism
/// `μ : L → Der A` as the tensor `mu[x][a][b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizPair {
    pub a: StructureAlgebra,
    pub l: StructureAlgebra,
    pub mu: Tensor3,
}

impl LeibnizPair {
    pub fn new(a: StructureAlgebra, l: StructureAlgebra, mu: Tensor3) -> Result<Self> {
        if a.kind != AlgebraKind::Associative {
            return Err(Error::Structural("pair component A must be associative".into()));
        }
        if l.kind != AlgebraKind::Lie {
            return Err(Error::Structural("pair component L must be a Lie algebra".into()));
        }
        if mu.shape() != (l.dim, a.dim, a.dim) {
            return Err(Error::Structural(format!(
                "mu tensor shape {:?} does not match (dim L, dim A, dim A) = ({}, {}, {})",
                mu.shape(),
                l.dim,
                a.dim,
                a.dim
            )));
        }
        Ok(Self { a, l, mu })
    }

    /// `μ(x)(v)` for basis `x` and a coefficient vector `v` in `A`.
    pub fn mu_basis(&self, x: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.a.dim];
        for (ai, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for b in 0..self.a.dim {
                let t = self.mu.get(x, ai, b);
                if !t.is_zero() {
                    out[b] += coeff * t;
                }
            }
        }
        out
    }
}

/// A (not necessarily commutative) Poisson algebra: one underlying space with
/// an associative product and a skew bracket, each bracket operator acting as
/// a derivation of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonAlgebra {
    pub a: StructureAlgebra,
    pub bracket: Tensor3,
}

impl PoissonAlgebra {
    pub fn new(a: StructureAlgebra, bracket: Tensor3) -> Result<Self> {
        if a.kind != AlgebraKind::Associative {
            return Err(Error::Structural("Poisson underlying algebra must be associative".into()));
        }
        if bracket.shape() != (a.dim, a.dim, a.dim) {
            return Err(Error::Structural("bracket tensor shape does not match dim".into()));
        }
        Ok(Self { a, bracket })
    }

    /// The underlying space with its bracket, as a Lie `StructureAlgebra`.
    pub fn lie_part(&self) -> StructureAlgebra {
        StructureAlgebra {
            kind: AlgebraKind::Lie,
            dim: self.a.dim,
            basis_labels: self.a.basis_labels.clone(),
            c: self.bracket.clone(),
            unit_index: None,
        }
    }

    /// The associated Leibniz pair `(A, A_Lie)` with `μ = bracket`.
    pub fn as_pair(&self) -> LeibnizPair {
        LeibnizPair { a: self.a.clone(), l: self.lie_part(), mu: self.bracket.clone() }
    }
}

/// A coefficient module `(M, P)` over a Leibniz pair: `M` an `A`-bimodule,
/// `P` a Lie `L`-module, tied together by the semidirect-product derivation
/// axioms. There is no `[P, M]` tensor: that bracket is zero by definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairModule {
    pub m_dim: usize,
    pub p_dim: usize,
    /// `left_act[a][m][m']`: coefficient of `m'` in `b_a · m`.
    pub left_act: Tensor3,
    /// `right_act[m][a][m']`: coefficient of `m'` in `m · b_a`.
    pub right_act: Tensor3,
    /// `l_on_m[x][m][m']`: Lie action of `L` on `M`.
    pub l_on_m: Tensor3,
    /// `l_on_p[x][p][p']`: Lie action of `L` on `P`.
    pub l_on_p: Tensor3,
    /// `p_on_a[p][a][m]`: the map `P → Der(A, M)`, `p ⊗ a ↦ [p, a]`.
    pub p_on_a: Tensor3,
}

impl PairModule {
    pub fn new(
        pair: &LeibnizPair,
        m_dim: usize,
        p_dim: usize,
        left_act: Tensor3,
        right_act: Tensor3,
        l_on_m: Tensor3,
        l_on_p: Tensor3,
        p_on_a: Tensor3,
    ) -> Result<Self> {
        let (na, nl) = (pair.a.dim, pair.l.dim);
        let checks = [
            (left_act.shape(), (na, m_dim, m_dim), "left_act"),
            (right_act.shape(), (m_dim, na, m_dim), "right_act"),
            (l_on_m.shape(), (nl, m_dim, m_dim), "l_on_m"),
            (l_on_p.shape(), (nl, p_dim, p_dim), "l_on_p"),
            (p_on_a.shape(), (p_dim, na, m_dim), "p_on_a"),
        ];
        for (got, want, name) in checks {
            if got != want {
                return Err(Error::Structural(format!(
                    "{name} tensor shape {got:?} does not match expected {want:?}"
                )));
            }
        }
        Ok(Self { m_dim, p_dim, left_act, right_act, l_on_m, l_on_p, p_on_a })
    }

    /// The self-module of a pair: `M = A` with multiplication actions,
    /// `P = L` with the adjoint action, and `P → Der(A)` given by `μ`.
    pub fn self_module(pair: &LeibnizPair) -> Self {
        Self {
            m_dim: pair.a.dim,
            p_dim: pair.l.dim,
            left_act: pair.a.c.clone(),
            right_act: pair.a.c.clone(),
            l_on_m: pair.mu.clone(),
            l_on_p: pair.l.c.clone(),
            p_on_a: pair.mu.clone(),
        }
    }
}

/// One failed axiom instance: which axiom, on which basis indices, and the
/// two sides that should have agreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub left: Vec<Rat>,
    pub right: Vec<Rat>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, axiom: &str, witness: &[usize], left: Vec<Rat>, right: Vec<Rat>) {
        if left != right {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness: witness.to_vec(),
                left,
                right,
            });
        }
    }
}

/// Associativity on all basis triples, plus unit axioms when a unit is
/// declared.
pub fn validate_associative(a: &StructureAlgebra) -> Result<ValidationReport> {
    if a.kind != AlgebraKind::Associative {
        return Err(Error::Precondition("validate_associative requires kind=associative".into()));
    }
    let n = a.dim;
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            let ij = a.c.eval_basis(i, j);
            for k in 0..n {
                let left = a.c.eval(&ij, &a.basis_vector(k));
                let jk = a.c.eval_basis(j, k);
                let right = a.c.eval(&a.basis_vector(i), &jk);
                report.check("associativity", &[i, j, k], left, right);
            }
        }
    }
    if let Some(u) = a.unit_index {
        for i in 0..n {
            report.check("left unit", &[u, i], a.c.eval_basis(u, i), a.basis_vector(i));
            report.check("right unit", &[i, u], a.c.eval_basis(i, u), a.basis_vector(i));
        }
    }
    Ok(report)
}

/// Skew-symmetry and the Jacobi identity on all basis tuples.
pub fn validate_lie(l: &StructureAlgebra) -> Result<ValidationReport> {
    if l.kind != AlgebraKind::Lie {
        return Err(Error::Precondition("validate_lie requires kind=lie".into()));
    }
    let n = l.dim;
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            let left = l.c.eval_basis(i, j);
            let right: Vec<Rat> = l.c.fiber(j, i).iter().map(|r| -r.clone()).collect();
            report.check("skew-symmetry", &[i, j], left, right);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = vec![Rat::zero(); n];
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let xy = l.c.eval_basis(x, y);
                    let term = l.c.eval(&xy, &l.basis_vector(z));
                    for (t, s) in acc.iter_mut().zip(term) {
                        *t += s;
                    }
                }
                report.check("jacobi", &[i, j, k], acc, vec![Rat::zero(); n]);
            }
        }
    }
    Ok(report)
}

/// Each `μ(x)` a derivation of `A`, and `μ` a Lie morphism into `Der A`.
pub fn validate_pair(pair: &LeibnizPair) -> Result<ValidationReport> {
    let (na, nl) = (pair.a.dim, pair.l.dim);
    let mut report = ValidationReport::default();
    for x in 0..nl {
        for i in 0..na {
            for j in 0..na {
                let prod = pair.a.c.eval_basis(i, j);
                let left = pair.mu_basis(x, &prod);
                let mut right = pair.a.c.eval(&pair.mu_basis(x, &pair.a.basis_vector(i)), &pair.a.basis_vector(j));
                let t2 = pair.a.c.eval(&pair.a.basis_vector(i), &pair.mu_basis(x, &pair.a.basis_vector(j)));
                for (r, s) in right.iter_mut().zip(t2) {
                    *r += s;
                }
                report.check("mu is a derivation", &[x, i, j], left, right);
            }
        }
    }
    for x in 0..nl {
        for y in 0..nl {
            let bracket = pair.l.c.eval_basis(x, y);
            for a in 0..na {
                // μ([x,y])(a)
                let mut left = vec![Rat::zero(); na];
                for (z, coeff) in bracket.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (t, s) in left.iter_mut().zip(pair.mu.fiber(z, a)) {
                        *t += coeff * s;
                    }
                }
                let e_a = pair.a.basis_vector(a);
                let mut right = pair.mu_basis(x, &pair.mu_basis(y, &e_a));
                let t2 = pair.mu_basis(y, &pair.mu_basis(x, &e_a));
                for (r, s) in right.iter_mut().zip(t2) {
                    *r -= s;
                }
                report.check("mu is a Lie morphism", &[x, y, a], left, right);
            }
        }
    }
    Ok(report)
}

/// Rinehart conditions: `A` commutative, `L` an `A`-module via
/// `a_action_on_l[a][x][y]`, `μ` `A`-linear in its `L` argument, and the
/// mixed identity `[x, a·y] = [x,a]·y + a·[x,y]`. Non-commutativity of `A`
/// is reported as a violation, not a structural error.
pub fn validate_rinehart(pair: &LeibnizPair, a_action_on_l: &Tensor3) -> Result<ValidationReport> {
    let (na, nl) = (pair.a.dim, pair.l.dim);
    if a_action_on_l.shape() != (na, nl, nl) {
        return Err(Error::Structural("a_action_on_l tensor shape mismatch".into()));
    }
    let mut report = ValidationReport::default();
    for i in 0..na {
        for j in 0..na {
            report.check(
                "A commutative",
                &[i, j],
                pair.a.c.eval_basis(i, j),
                pair.a.c.eval_basis(j, i),
            );
        }
    }
    let act = |a_vec: &[Rat], x_vec: &[Rat]| a_action_on_l.eval(a_vec, x_vec);
    // (ab)·x = a·(b·x), and 1·x = x when a unit exists.
    for i in 0..na {
        for j in 0..na {
            let prod = pair.a.c.eval_basis(i, j);
            for x in 0..nl {
                let e_x = pair.l.basis_vector(x);
                let left = act(&prod, &e_x);
                let right = act(&pair.a.basis_vector(i), &act(&pair.a.basis_vector(j), &e_x));
                report.check("L is an A-module", &[i, j, x], left, right);
            }
        }
    }
    if let Some(u) = pair.a.unit_index {
        for x in 0..nl {
            let e_x = pair.l.basis_vector(x);
            report.check("unit acts as identity on L", &[u, x], act(&pair.a.basis_vector(u), &e_x), e_x.clone());
        }
    }
    // μ(a·x)(b) = a μ(x)(b)
    for a in 0..na {
        for x in 0..nl {
            let ax = act(&pair.a.basis_vector(a), &pair.l.basis_vector(x));
            for b in 0..na {
                let mut left = vec![Rat::zero(); na];
                for (y, coeff) in ax.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (t, s) in left.iter_mut().zip(pair.mu.fiber(y, b)) {
                        *t += coeff * s;
                    }
                }
                let right = pair.a.c.eval(
                    &pair.a.basis_vector(a),
                    &pair.mu_basis(x, &pair.a.basis_vector(b)),
                );
                report.check("mu is A-linear", &[a, x, b], left, right);
            }
        }
    }
    // [x, a·y] = [x,a]·y + a·[x,y]
    for x in 0..nl {
        for a in 0..na {
            for y in 0..nl {
                let ay = act(&pair.a.basis_vector(a), &pair.l.basis_vector(y));
                let left = pair.l.c.eval(&pair.l.basis_vector(x), &ay);
                let xa = pair.mu_basis(x, &pair.a.basis_vector(a));
                let mut right = act(&xa, &pair.l.basis_vector(y));
                let xy = pair.l.c.eval_basis(x, y);
                let t2 = act(&pair.a.basis_vector(a), &xy);
                for (r, s) in right.iter_mut().zip(t2) {
                    *r += s;
                }
                report.check("mixed Leibniz identity", &[x, a, y], left, right);
            }
        }
    }
    Ok(report)
}

/// Skew bracket, Jacobi, and the Leibniz rule `[a, bc] = [a,b]c + b[a,c]`.
pub fn validate_poisson(p: &PoissonAlgebra) -> Result<ValidationReport> {
    let mut report = validate_lie(&p.lie_part())?;
    let n = p.a.dim;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = p.a.c.eval_basis(b, c);
                let left = p.bracket.eval(&p.a.basis_vector(a), &bc);
                let ab = p.bracket.eval_basis(a, b);
                let mut right = p.a.c.eval(&ab, &p.a.basis_vector(c));
                let ac = p.bracket.eval_basis(a, c);
                let t2 = p.a.c.eval(&p.a.basis_vector(b), &ac);
                for (r, s) in right.iter_mut().zip(t2) {
                    *r += s;
                }
                report.check("bracket is a biderivation", &[a, b, c], left, right);
            }
        }
    }
    Ok(report)
}

/// All module axioms on basis tuples: bimodule, Lie modules, the semidirect
/// derivation axioms for `L` on `A + M`, the derivation property of each
/// `P → Der(A, M)` slice, and the `L`-equivariance of that map.
pub fn validate_module(pair: &LeibnizPair, module: &PairModule) -> Result<ValidationReport> {
    let (na, nl) = (pair.a.dim, pair.l.dim);
    let (nm, np) = (module.m_dim, module.p_dim);
    let mut report = ValidationReport::default();

    let e_m = |i: usize| {
        let mut v = vec![Rat::zero(); nm];
        v[i] = Rat::from_integer(1.into());
        v
    };
    let e_p = |i: usize| {
        let mut v = vec![Rat::zero(); np];
        v[i] = Rat::from_integer(1.into());
        v
    };
    let left = |a: &[Rat], m: &[Rat]| module.left_act.eval(a, m);
    let right = |m: &[Rat], a: &[Rat]| module.right_act.eval(m, a);
    let lm = |x: usize, m: &[Rat]| module.l_on_m.eval(&pair.l.basis_vector(x), m);
    let lp = |x: usize, p: &[Rat]| module.l_on_p.eval(&pair.l.basis_vector(x), p);
    let pa = |p: &[Rat], a: &[Rat]| module.p_on_a.eval(p, a);

    for i in 0..na {
        for j in 0..na {
            let prod = pair.a.c.eval_basis(i, j);
            let (e_i, e_j) = (pair.a.basis_vector(i), pair.a.basis_vector(j));
            for m in 0..nm {
                report.check(
                    "bimodule: (ab)m = a(bm)",
                    &[i, j, m],
                    left(&prod, &e_m(m)),
                    left(&e_i, &left(&e_j, &e_m(m))),
                );
                report.check(
                    "bimodule: m(ab) = (ma)b",
                    &[m, i, j],
                    right(&e_m(m), &prod),
                    right(&right(&e_m(m), &e_i), &e_j),
                );
                report.check(
                    "bimodule: (am)b = a(mb)",
                    &[i, m, j],
                    right(&left(&e_i, &e_m(m)), &e_j),
                    left(&e_i, &right(&e_m(m), &e_j)),
                );
            }
        }
    }
    if let Some(u) = pair.a.unit_index {
        let e_u = pair.a.basis_vector(u);
        for m in 0..nm {
            report.check("unit acts as identity on M (left)", &[u, m], left(&e_u, &e_m(m)), e_m(m));
            report.check("unit acts as identity on M (right)", &[m, u], right(&e_m(m), &e_u), e_m(m));
        }
    }
    for x in 0..nl {
        for y in 0..nl {
            let bracket = pair.l.c.eval_basis(x, y);
            for p in 0..np {
                let lhs = module.l_on_p.eval(&bracket, &e_p(p));
                let mut rhs = lp(x, &lp(y, &e_p(p)));
                for (r, s) in rhs.iter_mut().zip(lp(y, &lp(x, &e_p(p)))) {
                    *r -= s;
                }
                report.check("P is a Lie L-module", &[x, y, p], lhs, rhs);
            }
            for m in 0..nm {
                let lhs = module.l_on_m.eval(&bracket, &e_m(m));
                let mut rhs = lm(x, &lm(y, &e_m(m)));
                for (r, s) in rhs.iter_mut().zip(lm(y, &lm(x, &e_m(m)))) {
                    *r -= s;
                }
                report.check("M is a Lie L-module", &[x, y, m], lhs, rhs);
            }
        }
    }
    // x·(am) = μ(x)(a)·m + a·(x·m)  and  x·(ma) = (x·m)·a + m·μ(x)(a)
    for x in 0..nl {
        for a in 0..na {
            let e_a = pair.a.basis_vector(a);
            let mu_xa = pair.mu_basis(x, &e_a);
            for m in 0..nm {
                let lhs = lm(x, &left(&e_a, &e_m(m)));
                let mut rhs = left(&mu_xa, &e_m(m));
                for (r, s) in rhs.iter_mut().zip(left(&e_a, &lm(x, &e_m(m)))) {
                    *r += s;
                }
                report.check("L acts by derivations (left)", &[x, a, m], lhs, rhs);

                let lhs = lm(x, &right(&e_m(m), &e_a));
                let mut rhs = right(&lm(x, &e_m(m)), &e_a);
                for (r, s) in rhs.iter_mut().zip(right(&e_m(m), &mu_xa)) {
                    *r += s;
                }
                report.check("L acts by derivations (right)", &[x, m, a], lhs, rhs);
            }
        }
    }
    // [p, ab] = [p,a]b + a[p,b]
    for p in 0..np {
        for i in 0..na {
            for j in 0..na {
                let prod = pair.a.c.eval_basis(i, j);
                let (e_i, e_j) = (pair.a.basis_vector(i), pair.a.basis_vector(j));
                let lhs = pa(&e_p(p), &prod);
                let mut rhs = right(&pa(&e_p(p), &e_i), &e_j);
                for (r, s) in rhs.iter_mut().zip(left(&e_i, &pa(&e_p(p), &e_j))) {
                    *r += s;
                }
                report.check("P maps to Der(A, M)", &[p, i, j], lhs, rhs);
            }
        }
    }
    // [x·p, a] = x·[p,a] - [p, μ(x)(a)]  (P → Der(A,M) is an L-module morphism)
    for x in 0..nl {
        for p in 0..np {
            let xp = lp(x, &e_p(p));
            for a in 0..na {
                let e_a = pair.a.basis_vector(a);
                let lhs = pa(&xp, &e_a);
                let mut rhs = lm(x, &pa(&e_p(p), &e_a));
                for (r, s) in rhs.iter_mut().zip(pa(&e_p(p), &pair.mu_basis(x, &e_a))) {
                    *r -= s;
                }
                report.check("P -> Der(A,M) is L-equivariant", &[x, p, a], lhs, rhs);
            }
        }
    }
    Ok(report)
}
