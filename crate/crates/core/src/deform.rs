//! Formal deformation calculus truncated at a chosen order: jets, axiom
//! defects, infinitesimal cocycle checks, equivalences, obstructions, and
//! order-by-order lifting. Everything lives in `k[t]/t^{N+1}`.
//!
//! Deformations use self coefficients. A degree-2 total cochain packs an
//! infinitesimal `(α, μ, λ)` blockwise; the signs below are forced by the
//! requirement that the order-1 axiom defect of any jet equals the total
//! differential of its assembled infinitesimal:
//!
//! - leibniz, degree 2:  `C^{2,0} = α`, `C^{1,1}(a; x) = −μ(x, a)`, `C^{0,2} = −λ`;
//!   degree 3 defects:  `C^{3,0} = −assoc`, `C^{2,1}(a,b; x) = +μ-derivation defect`,
//!   `C^{1,2}(a; x∧y) = −μ-morphism defect`, `C^{0,3} = +jacobiator`;
//!   degree 1:  `C^{1,0} = φ`, `C^{0,1} = −ψ`.
//! - poisson (A = L, μ = λ): degree 2: `(2,0) = α`, bottom `Λ²` slot `= +λ`;
//!   degree 3: `(3,0) = −assoc`, `(2,1) = +compatibility defect`,
//!   bottom `Λ³` slot `= −jacobiator`; degree 1: bottom slot `= φ`.

use num::traits::Zero;

use crate::algebra::{LeibnizPair, PoissonAlgebra, Tensor3};
use crate::bicomplex::{Bidegree, Branch, Complex, TotalCochain};
use crate::linalg::{kernel_basis, reduce_mod_subspace, solve, RationalMatrix, SubspaceBasis};
use crate::rational::{rat_int, Rat};
use crate::{Error, Result};

/// The undeformed structure a jet deforms.
#[derive(Debug, Clone)]
pub enum JetBase {
    Leibniz(LeibnizPair),
    Poisson(PoissonAlgebra),
}

impl JetBase {
    pub fn branch(&self) -> Branch {
        match self {
            JetBase::Leibniz(_) => Branch::Leibniz,
            JetBase::Poisson(_) => Branch::Poisson,
        }
    }

    pub fn complex(&self) -> Complex {
        match self {
            JetBase::Leibniz(pair) => {
                let module = crate::algebra::PairModule::self_module(pair);
                Complex::leibniz(pair.clone(), module)
            }
            JetBase::Poisson(p) => Complex::poisson(p),
        }
    }

    pub fn pair(&self) -> LeibnizPair {
        match self {
            JetBase::Leibniz(pair) => pair.clone(),
            JetBase::Poisson(p) => p.as_pair(),
        }
    }

    fn na(&self) -> usize {
        match self {
            JetBase::Leibniz(pair) => pair.a.dim,
            JetBase::Poisson(p) => p.a.dim,
        }
    }

    fn nl(&self) -> usize {
        match self {
            JetBase::Leibniz(pair) => pair.l.dim,
            JetBase::Poisson(p) => p.a.dim,
        }
    }
}

fn tensor_is_skew(t: &Tensor3) -> bool {
    for i in 0..t.d0 {
        for j in 0..t.d1 {
            for k in 0..t.d2 {
                if *t.get(i, j, k) != -t.get(j, i, k).clone() {
                    return false;
                }
            }
        }
    }
    true
}

/// A truncated formal deformation: `α_t = α_0 + tα_1 + …`, `μ_t`, `λ_t`,
/// all modulo `t^{order+1}`. For a poisson base `A = L`, `μ = λ`, and the
/// `mu` list stays empty.
#[derive(Debug, Clone)]
pub struct DeformationJet {
    pub base: JetBase,
    pub alpha: Vec<Tensor3>,
    pub mu: Vec<Tensor3>,
    pub lambda: Vec<Tensor3>,
}

impl DeformationJet {
    pub fn new(
        base: JetBase,
        alpha: Vec<Tensor3>,
        mu: Vec<Tensor3>,
        lambda: Vec<Tensor3>,
    ) -> Result<Self> {
        let (na, nl) = (base.na(), base.nl());
        if alpha.len() != lambda.len() {
            return Err(Error::Structural("alpha and lambda lists differ in length".into()));
        }
        match base.branch() {
            Branch::Leibniz => {
                if mu.len() != alpha.len() {
                    return Err(Error::Structural("mu list length must match alpha".into()));
                }
            }
            Branch::Poisson => {
                if !mu.is_empty() {
                    return Err(Error::Structural(
                        "poisson jets carry no separate mu list (μ = λ)".into(),
                    ));
                }
            }
        }
        for t in &alpha {
            if t.shape() != (na, na, na) {
                return Err(Error::Structural("alpha tensor shape mismatch".into()));
            }
        }
        for t in &mu {
            if t.shape() != (nl, na, na) {
                return Err(Error::Structural("mu tensor shape mismatch".into()));
            }
        }
        for t in &lambda {
            if t.shape() != (nl, nl, nl) {
                return Err(Error::Structural("lambda tensor shape mismatch".into()));
            }
            if !tensor_is_skew(t) {
                return Err(Error::Structural("lambda tensors must be skew".into()));
            }
        }
        Ok(Self { base, alpha, mu, lambda })
    }

    pub fn zero(base: JetBase, order: usize) -> Self {
        let (na, nl) = (base.na(), base.nl());
        let alpha = vec![Tensor3::zeros(na, na, na); order];
        let lambda = vec![Tensor3::zeros(nl, nl, nl); order];
        let mu = match base.branch() {
            Branch::Leibniz => vec![Tensor3::zeros(nl, na, na); order],
            Branch::Poisson => Vec::new(),
        };
        Self { base, alpha, mu, lambda }
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// `α_i`, with `α_0` the base product; zero above the stored order.
    fn alpha_at(&self, i: usize) -> Option<&Tensor3> {
        if i == 0 {
            Some(match &self.base {
                JetBase::Leibniz(pair) => &pair.a.c,
                JetBase::Poisson(p) => &p.a.c,
            })
        } else {
            self.alpha.get(i - 1)
        }
    }

    fn mu_at(&self, i: usize) -> Option<&Tensor3> {
        if i == 0 {
            Some(match &self.base {
                JetBase::Leibniz(pair) => &pair.mu,
                JetBase::Poisson(p) => &p.bracket,
            })
        } else {
            match self.base.branch() {
                Branch::Leibniz => self.mu.get(i - 1),
                Branch::Poisson => self.lambda.get(i - 1),
            }
        }
    }

    fn lambda_at(&self, i: usize) -> Option<&Tensor3> {
        if i == 0 {
            Some(match &self.base {
                JetBase::Leibniz(pair) => &pair.l.c,
                JetBase::Poisson(p) => &p.bracket,
            })
        } else {
            self.lambda.get(i - 1)
        }
    }

    /// A copy truncated to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let take = order.min(self.order());
        Self {
            base: self.base.clone(),
            alpha: self.alpha[..take].to_vec(),
            mu: if self.mu.is_empty() { Vec::new() } else { self.mu[..take].to_vec() },
            lambda: self.lambda[..take].to_vec(),
        }
    }

    /// Append one more order of terms.
    pub fn extend(&mut self, alpha_n: Tensor3, mu_n: Option<Tensor3>, lambda_n: Tensor3) {
        self.alpha.push(alpha_n);
        if let Some(m) = mu_n {
            self.mu.push(m);
        }
        self.lambda.push(lambda_n);
    }
}

/// The coefficient of `t^n` in each deformed axiom, as single-bidegree
/// cochains of the self-coefficient complex. Raw defects, no signs.
#[derive(Debug, Clone)]
pub struct DefectReport {
    pub order_checked: usize,
    /// Associator coefficient, at `(3, 0)`.
    pub assoc_defect: crate::bicomplex::Cochain,
    /// Defect of `μ_t(x, α_t(a,b)) = α_t(μ_t(x,a), b) + α_t(a, μ_t(x,b))`,
    /// at `(2, 1)`.
    pub mu_der_defect: crate::bicomplex::Cochain,
    /// Defect of `μ` being a Lie morphism, at `(1, 2)`; absent on the
    /// poisson branch where it coincides with the jacobiator.
    pub mu_mor_defect: Option<crate::bicomplex::Cochain>,
    /// Jacobiator coefficient: leibniz `(0, 3)`, poisson bottom `Λ³` slot.
    pub jacobi_defect: crate::bicomplex::Cochain,
}

impl DefectReport {
    pub fn is_zero(&self) -> bool {
        self.assoc_defect.is_zero()
            && self.mu_der_defect.is_zero()
            && self.mu_mor_defect.as_ref().is_none_or(|c| c.is_zero())
            && self.jacobi_defect.is_zero()
    }

    /// The defects assembled into one total 3-cochain with the pinned signs,
    /// so that it equals the total coboundary of the assembled order-n
    /// unknowns plus the obstruction.
    pub fn total(&self, complex: &Complex) -> TotalCochain {
        let mut out = complex.zero_total_cochain(3);
        let mut put = |bid: Bidegree, coeffs: &[Rat], sign: i64| {
            for part in out.parts.iter_mut() {
                if part.bidegree == bid {
                    for (dst, src) in part.coeffs.iter_mut().zip(coeffs) {
                        *dst = src * Rat::from_integer(sign.into());
                    }
                }
            }
        };
        put(self.assoc_defect.bidegree, &self.assoc_defect.coeffs, -1);
        put(self.mu_der_defect.bidegree, &self.mu_der_defect.coeffs, 1);
        if let Some(m) = &self.mu_mor_defect {
            put(m.bidegree, &m.coeffs, -1);
        }
        let jac_sign = match complex.branch {
            Branch::Leibniz => 1,
            Branch::Poisson => -1,
        };
        put(self.jacobi_defect.bidegree, &self.jacobi_defect.coeffs, jac_sign);
        out
    }
}

/// The coefficient of `t^n` in the associator, the two `μ` compatibility
/// equations, and the jacobiator of the jet.
pub fn defects(jet: &DeformationJet, n: usize) -> Result<DefectReport> {
    let complex = jet.base.complex();
    let branch = jet.base.branch();
    let (na, nl) = (jet.base.na(), jet.base.nl());
    let basis_a = |i: usize| {
        let mut v = vec![Rat::zero(); na];
        v[i] = rat_int(1);
        v
    };
    let basis_l = |i: usize| {
        let mut v = vec![Rat::zero(); nl];
        v[i] = rat_int(1);
        v
    };
    let pairs = |n: usize| (0..=n).map(move |i| (i, n - i));

    // associator: Σ_{i+j=n} α_i(α_j(a,b), c) − α_i(a, α_j(b,c))
    let assoc_bid = match branch {
        Branch::Leibniz => Bidegree::leibniz(3, 0),
        Branch::Poisson => Bidegree::poisson(3, 0),
    };
    let mut assoc = complex.zero_cochain(assoc_bid)?;
    for a in 0..na {
        for b in 0..na {
            for c in 0..na {
                let mut acc = vec![Rat::zero(); na];
                for (i, j) in pairs(n) {
                    let (Some(ai), Some(aj)) = (jet.alpha_at(i), jet.alpha_at(j)) else {
                        continue;
                    };
                    let ab = aj.eval_basis(a, b);
                    for (t, s) in acc.iter_mut().zip(ai.eval(&ab, &basis_a(c))) {
                        *t += s;
                    }
                    let bc = aj.eval_basis(b, c);
                    for (t, s) in acc.iter_mut().zip(ai.eval(&basis_a(a), &bc)) {
                        *t -= s;
                    }
                }
                for (t, v) in acc.into_iter().enumerate() {
                    let idx = complex.coeff_index(assoc_bid, &[a, b, c], &[], t)?;
                    assoc.coeffs[idx] = v;
                }
            }
        }
    }

    // μ-derivation defect: Σ μ_i(x, α_j(a,b)) − α_i(μ_j(x,a), b) − α_i(a, μ_j(x,b))
    let muder_bid = match branch {
        Branch::Leibniz => Bidegree::leibniz(2, 1),
        Branch::Poisson => Bidegree::poisson(2, 1),
    };
    let mut muder = complex.zero_cochain(muder_bid)?;
    for x in 0..nl {
        for a in 0..na {
            for b in 0..na {
                let mut acc = vec![Rat::zero(); na];
                for (i, j) in pairs(n) {
                    if let (Some(mi), Some(aj)) = (jet.mu_at(i), jet.alpha_at(j)) {
                        let ab = aj.eval_basis(a, b);
                        for (t, s) in acc.iter_mut().zip(mi.eval(&basis_l(x), &ab)) {
                            *t += s;
                        }
                    }
                    if let (Some(ai), Some(mj)) = (jet.alpha_at(i), jet.mu_at(j)) {
                        let xa = mj.eval_basis(x, a);
                        for (t, s) in acc.iter_mut().zip(ai.eval(&xa, &basis_a(b))) {
                            *t -= s;
                        }
                        let xb = mj.eval_basis(x, b);
                        for (t, s) in acc.iter_mut().zip(ai.eval(&basis_a(a), &xb)) {
                            *t -= s;
                        }
                    }
                }
                for (t, v) in acc.into_iter().enumerate() {
                    let idx = complex.coeff_index(muder_bid, &[a, b], &[x], t)?;
                    muder.coeffs[idx] = v;
                }
            }
        }
    }

    // μ-morphism defect (leibniz only): Σ μ_i(λ_j(x,y), a) − μ_i(x, μ_j(y,a)) + μ_i(y, μ_j(x,a))
    let mumor = match branch {
        Branch::Poisson => None,
        Branch::Leibniz => {
            let bid = Bidegree::leibniz(1, 2);
            let mut out = complex.zero_cochain(bid)?;
            for x in 0..nl {
                for y in (x + 1)..nl {
                    for a in 0..na {
                        let mut acc = vec![Rat::zero(); na];
                        for (i, j) in pairs(n) {
                            if let (Some(mi), Some(lj)) = (jet.mu_at(i), jet.lambda_at(j)) {
                                let xy = lj.eval_basis(x, y);
                                for (t, s) in acc.iter_mut().zip(mi.eval(&xy, &basis_a(a))) {
                                    *t += s;
                                }
                            }
                            if let (Some(mi), Some(mj)) = (jet.mu_at(i), jet.mu_at(j)) {
                                let ya = mj.eval_basis(y, a);
                                for (t, s) in acc.iter_mut().zip(mi.eval(&basis_l(x), &ya)) {
                                    *t -= s;
                                }
                                let xa = mj.eval_basis(x, a);
                                for (t, s) in acc.iter_mut().zip(mi.eval(&basis_l(y), &xa)) {
                                    *t += s;
                                }
                            }
                        }
                        for (t, v) in acc.into_iter().enumerate() {
                            let idx = complex.coeff_index(bid, &[a], &[x, y], t)?;
                            out.coeffs[idx] = v;
                        }
                    }
                }
            }
            Some(out)
        }
    };

    // jacobiator: Σ_{i+j=n} Σ_cyc λ_i(λ_j(x,y), z); alternating in (x,y,z)
    let jac_bid = match branch {
        Branch::Leibniz => Bidegree::leibniz(0, 3),
        Branch::Poisson => Bidegree::poisson(1, 2),
    };
    let mut jac = complex.zero_cochain(jac_bid)?;
    for x in 0..nl {
        for y in (x + 1)..nl {
            for z in (y + 1)..nl {
                let mut acc = vec![Rat::zero(); nl];
                for (i, j) in pairs(n) {
                    let (Some(li), Some(lj)) = (jet.lambda_at(i), jet.lambda_at(j)) else {
                        continue;
                    };
                    for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                        let uv = lj.eval_basis(u, v);
                        for (t, s) in acc.iter_mut().zip(li.eval(&uv, &basis_l(w))) {
                            *t += s;
                        }
                    }
                }
                for (t, v) in acc.into_iter().enumerate() {
                    let idx = complex.coeff_index(jac_bid, &[], &[x, y, z], t)?;
                    jac.coeffs[idx] = v;
                }
            }
        }
    }

    Ok(DefectReport {
        order_checked: n,
        assoc_defect: assoc,
        mu_der_defect: muder,
        mu_mor_defect: mumor,
        jacobi_defect: jac,
    })
}

// --- assembly of infinitesimals, defects, and 1-cochains ----------------

/// Pack `(α, μ, λ)` into a total 2-cochain with the pinned signs. For the
/// poisson branch `mu1` must be `None` and `λ` fills the bottom row.
pub fn assemble2(
    complex: &Complex,
    alpha1: &Tensor3,
    mu1: Option<&Tensor3>,
    lambda1: &Tensor3,
) -> Result<TotalCochain> {
    let (na, nl) = (complex.pair.a.dim, complex.pair.l.dim);
    if !tensor_is_skew(lambda1) {
        return Err(Error::Precondition("lambda must be skew".into()));
    }
    let mut out = complex.zero_total_cochain(2);
    let branch = complex.branch;
    let bid20 = Bidegree { branch, p: 2, q: 0 };
    for part in out.parts.iter_mut() {
        if part.bidegree == bid20 {
            for a in 0..na {
                for b in 0..na {
                    for t in 0..na {
                        let idx = complex.coeff_index(bid20, &[a, b], &[], t)?;
                        part.coeffs[idx] = alpha1.get(a, b, t).clone();
                    }
                }
            }
        }
    }
    match branch {
        Branch::Leibniz => {
            let mu1 = mu1.ok_or_else(|| {
                Error::Precondition("a leibniz infinitesimal needs a mu block".into())
            })?;
            let bid11 = Bidegree::leibniz(1, 1);
            let bid02 = Bidegree::leibniz(0, 2);
            for part in out.parts.iter_mut() {
                if part.bidegree == bid11 {
                    for a in 0..na {
                        for x in 0..nl {
                            for t in 0..na {
                                let idx = complex.coeff_index(bid11, &[a], &[x], t)?;
                                part.coeffs[idx] = -mu1.get(x, a, t).clone();
                            }
                        }
                    }
                } else if part.bidegree == bid02 {
                    for x in 0..nl {
                        for y in (x + 1)..nl {
                            for t in 0..nl {
                                let idx = complex.coeff_index(bid02, &[], &[x, y], t)?;
                                part.coeffs[idx] = -lambda1.get(x, y, t).clone();
                            }
                        }
                    }
                }
            }
        }
        Branch::Poisson => {
            if mu1.is_some() {
                return Err(Error::Precondition(
                    "a poisson infinitesimal has no separate mu block".into(),
                ));
            }
            let bot = Bidegree::poisson(1, 1);
            for part in out.parts.iter_mut() {
                if part.bidegree == bot {
                    for x in 0..nl {
                        for y in (x + 1)..nl {
                            for t in 0..nl {
                                let idx = complex.coeff_index(bot, &[], &[x, y], t)?;
                                part.coeffs[idx] = lambda1.get(x, y, t).clone();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`assemble2`]: unpack a total 2-cochain into `(α, μ, λ)`.
pub fn disassemble2(
    complex: &Complex,
    c: &TotalCochain,
) -> Result<(Tensor3, Option<Tensor3>, Tensor3)> {
    let (na, nl) = (complex.pair.a.dim, complex.pair.l.dim);
    let branch = complex.branch;
    let mut alpha = Tensor3::zeros(na, na, na);
    let bid20 = Bidegree { branch, p: 2, q: 0 };
    if let Some(part) = c.part(bid20) {
        for a in 0..na {
            for b in 0..na {
                for t in 0..na {
                    let idx = complex.coeff_index(bid20, &[a, b], &[], t)?;
                    alpha.set(a, b, t, part.coeffs[idx].clone());
                }
            }
        }
    }
    let mut lambda = Tensor3::zeros(nl, nl, nl);
    let mu = match branch {
        Branch::Leibniz => {
            let mut mu = Tensor3::zeros(nl, na, na);
            if let Some(part) = c.part(Bidegree::leibniz(1, 1)) {
                for a in 0..na {
                    for x in 0..nl {
                        for t in 0..na {
                            let idx = complex.coeff_index(Bidegree::leibniz(1, 1), &[a], &[x], t)?;
                            mu.set(x, a, t, -part.coeffs[idx].clone());
                        }
                    }
                }
            }
            if let Some(part) = c.part(Bidegree::leibniz(0, 2)) {
                for x in 0..nl {
                    for y in (x + 1)..nl {
                        for t in 0..nl {
                            let idx = complex.coeff_index(Bidegree::leibniz(0, 2), &[], &[x, y], t)?;
                            let v = -part.coeffs[idx].clone();
                            lambda.set(y, x, t, -v.clone());
                            lambda.set(x, y, t, v);
                        }
                    }
                }
            }
            Some(mu)
        }
        Branch::Poisson => {
            if let Some(part) = c.part(Bidegree::poisson(1, 1)) {
                for x in 0..nl {
                    for y in (x + 1)..nl {
                        for t in 0..nl {
                            let idx = complex.coeff_index(Bidegree::poisson(1, 1), &[], &[x, y], t)?;
                            let v = part.coeffs[idx].clone();
                            lambda.set(y, x, t, -v.clone());
                            lambda.set(x, y, t, v);
                        }
                    }
                }
            }
            None
        }
    };
    Ok((alpha, mu, lambda))
}

/// Pack `(φ, ψ)` into a total 1-cochain (`φ` alone on the poisson branch).
pub fn assemble1(
    complex: &Complex,
    phi: &RationalMatrix,
    psi: Option<&RationalMatrix>,
) -> Result<TotalCochain> {
    let (na, nl) = (complex.pair.a.dim, complex.pair.l.dim);
    if phi.rows != na || phi.cols != na {
        return Err(Error::Precondition("phi must be a square matrix over A".into()));
    }
    let mut out = complex.zero_total_cochain(1);
    match complex.branch {
        Branch::Leibniz => {
            let bid10 = Bidegree::leibniz(1, 0);
            let bid01 = Bidegree::leibniz(0, 1);
            for part in out.parts.iter_mut() {
                if part.bidegree == bid10 {
                    for a in 0..na {
                        for t in 0..na {
                            let idx = complex.coeff_index(bid10, &[a], &[], t)?;
                            part.coeffs[idx] = phi.get(t, a).clone();
                        }
                    }
                } else if part.bidegree == bid01 {
                    let psi = psi.ok_or_else(|| {
                        Error::Precondition("a leibniz 1-cochain needs a psi block".into())
                    })?;
                    if psi.rows != nl || psi.cols != nl {
                        return Err(Error::Precondition("psi must be a square matrix over L".into()));
                    }
                    for x in 0..nl {
                        for t in 0..nl {
                            let idx = complex.coeff_index(bid01, &[], &[x], t)?;
                            part.coeffs[idx] = -psi.get(t, x).clone();
                        }
                    }
                }
            }
        }
        Branch::Poisson => {
            if psi.is_some() {
                return Err(Error::Precondition("the poisson branch forces ψ = φ".into()));
            }
            let bot = Bidegree::poisson(1, 0);
            for part in out.parts.iter_mut() {
                if part.bidegree == bot {
                    for x in 0..na {
                        for t in 0..na {
                            let idx = complex.coeff_index(bot, &[], &[x], t)?;
                            part.coeffs[idx] = phi.get(t, x).clone();
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether `(α₁, μ₁, λ₁)` is a 2-cocycle of the total complex, with its
/// cohomology class.
#[derive(Debug, Clone)]
pub struct InfinitesimalReport {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    /// The assembled 2-cochain reduced mod the image of the degree-1 total
    /// differential; zero iff the class is trivial.
    pub class: Vec<Rat>,
    pub cochain: TotalCochain,
}

pub fn is_infinitesimal(
    base: &JetBase,
    alpha1: &Tensor3,
    mu1: Option<&Tensor3>,
    lambda1: &Tensor3,
) -> Result<InfinitesimalReport> {
    let complex = base.complex();
    let cochain = assemble2(&complex, alpha1, mu1, lambda1)?;
    let flat = cochain.flat();
    let d2 = complex.total_differential(2);
    let is_cocycle = d2.apply(&flat).iter().all(|r| r.is_zero());
    let d1 = complex.total_differential(1);
    let image = image_basis(&d1);
    let class = reduce_mod_subspace(&flat, &image);
    let is_coboundary = class.iter().all(|r| r.is_zero());
    Ok(InfinitesimalReport { is_cocycle, is_coboundary, class, cochain })
}

fn image_basis(d: &crate::bicomplex::DifferentialMatrix) -> SubspaceBasis {
    let images: Vec<Vec<Rat>> = (0..d.cols())
        .map(|j| {
            let mut e = vec![Rat::zero(); d.cols()];
            e[j] = rat_int(1);
            d.apply(&e)
        })
        .collect();
    SubspaceBasis::from_spanning(d.rows(), &images)
}

// --- equivalences --------------------------------------------------------

/// A truncated invertible pair of series `Φ_t = id + tφ₁ + …` on `A` and
/// `Ψ_t` on `L`; the poisson branch keeps `psi` empty (`Ψ = Φ`).
#[derive(Debug, Clone)]
pub struct EquivalenceJet {
    pub phi: Vec<RationalMatrix>,
    pub psi: Vec<RationalMatrix>,
}

impl EquivalenceJet {
    pub fn identity(order: usize, na: usize, nl: usize, branch: Branch) -> Self {
        let phi = vec![RationalMatrix::zero(na, na); order];
        let psi = match branch {
            Branch::Leibniz => vec![RationalMatrix::zero(nl, nl); order],
            Branch::Poisson => Vec::new(),
        };
        Self { phi, psi }
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    /// Coefficients of `Φ_t^{-1}` (Neumann series), orders `0..=N`.
    fn inverse_series(coeffs: &[RationalMatrix], dim: usize) -> Vec<RationalMatrix> {
        let n = coeffs.len();
        let mut inv = Vec::with_capacity(n + 1);
        inv.push(RationalMatrix::identity(dim));
        for k in 1..=n {
            // inv_k = −Σ_{i=1..k} φ_i inv_{k−i}
            let mut acc = RationalMatrix::zero(dim, dim);
            for i in 1..=k {
                let prod = coeffs[i - 1].matmul(&inv[k - i]);
                for r in 0..dim {
                    for c in 0..dim {
                        *acc.get_mut(r, c) -= prod.get(r, c);
                    }
                }
            }
            inv.push(acc);
        }
        inv
    }

    /// The truncated inverse equivalence (`Φ_t^{-1}`, `Ψ_t^{-1}`).
    pub fn inverse(&self, na: usize, nl: usize) -> Self {
        let phi = Self::inverse_series(&self.phi, na)[1..].to_vec();
        let psi = if self.psi.is_empty() {
            Vec::new()
        } else {
            Self::inverse_series(&self.psi, nl)[1..].to_vec()
        };
        Self { phi, psi }
    }
}

/// Pad a series (index 0 = identity) to `n + 1` coefficient matrices.
fn padded_series(coeffs: &[RationalMatrix], dim: usize, n: usize) -> Vec<RationalMatrix> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(RationalMatrix::identity(dim));
    for i in 0..n {
        out.push(coeffs.get(i).cloned().unwrap_or_else(|| RationalMatrix::zero(dim, dim)));
    }
    out
}

/// `post(T(pre1 ·, pre2 ·))` on a bilinear structure tensor.
fn conjugate_bilinear(
    t: &Tensor3,
    pre1: &RationalMatrix,
    pre2: &RationalMatrix,
    post: &RationalMatrix,
) -> Tensor3 {
    let (d0, d1, d2) = t.shape();
    let mut out = Tensor3::zeros(d0, d1, d2);
    for i in 0..d0 {
        for j in 0..d1 {
            // value = post(T(pre1 e_i, pre2 e_j))
            let mut mid = vec![Rat::zero(); d2];
            for a in 0..d0 {
                let p1 = pre1.get(a, i);
                if p1.is_zero() {
                    continue;
                }
                for b in 0..d1 {
                    let p2 = pre2.get(b, j);
                    if p2.is_zero() {
                        continue;
                    }
                    let w = p1 * p2;
                    for k in 0..d2 {
                        let c = t.get(a, b, k);
                        if !c.is_zero() {
                            mid[k] += &w * c;
                        }
                    }
                }
            }
            for k in 0..d2 {
                let mut acc = Rat::zero();
                for (c, m) in mid.iter().enumerate() {
                    if !m.is_zero() {
                        let p = post.get(k, c);
                        if !p.is_zero() {
                            acc += p * m;
                        }
                    }
                }
                out.set(i, j, k, acc);
            }
        }
    }
    out
}

/// The transformed jet `Φ_t^{-1} α_t(Φ_t·, Φ_t·)`, `Φ_t^{-1} μ_t(Ψ_t·, Φ_t·)`,
/// `Ψ_t^{-1} λ_t(Ψ_t·, Ψ_t·)`, truncated at the jet's order.
pub fn apply_equivalence(jet: &DeformationJet, eq: &EquivalenceJet) -> Result<DeformationJet> {
    let n = jet.order();
    let (na, nl) = (jet.base.na(), jet.base.nl());
    let branch = jet.base.branch();
    if branch == Branch::Poisson && !eq.psi.is_empty() {
        return Err(Error::Precondition("the poisson branch forces Ψ = Φ".into()));
    }
    let phi = padded_series(&eq.phi, na, n);
    let phi_inv = {
        let body: Vec<RationalMatrix> = phi[1..].to_vec();
        EquivalenceJet::inverse_series(&body, na)
    };
    let (psi, psi_inv) = match branch {
        Branch::Leibniz => {
            let psi = padded_series(&eq.psi, nl, n);
            let inv = EquivalenceJet::inverse_series(&psi[1..].to_vec(), nl);
            (psi, inv)
        }
        Branch::Poisson => (phi.clone(), phi_inv.clone()),
    };

    let series_term = |structure: &dyn Fn(usize) -> Option<Tensor3>,
                       inv: &[RationalMatrix],
                       pre1: &[RationalMatrix],
                       pre2: &[RationalMatrix],
                       k: usize|
     -> Tensor3 {
        let shape = structure(0).unwrap();
        let mut acc = Tensor3::zeros(shape.d0, shape.d1, shape.d2);
        for i in 0..=k {
            for j in 0..=(k - i) {
                let Some(s) = structure(j) else { continue };
                for l in 0..=(k - i - j) {
                    let m = k - i - j - l;
                    let term = conjugate_bilinear(&s, &pre1[l], &pre2[m], &inv[i]);
                    for u in 0..term.d0 {
                        for v in 0..term.d1 {
                            for w in 0..term.d2 {
                                let cur = acc.get(u, v, w).clone();
                                acc.set(u, v, w, cur + term.get(u, v, w).clone());
                            }
                        }
                    }
                }
            }
        }
        acc
    };

    let mut alpha = Vec::with_capacity(n);
    let mut mu = Vec::new();
    let mut lambda = Vec::with_capacity(n);
    for k in 1..=n {
        alpha.push(series_term(
            &|i| jet.alpha_at(i).cloned(),
            &phi_inv,
            &phi,
            &phi,
            k,
        ));
        lambda.push(series_term(
            &|i| jet.lambda_at(i).cloned(),
            &psi_inv,
            &psi,
            &psi,
            k,
        ));
        if branch == Branch::Leibniz {
            mu.push(series_term(&|i| jet.mu_at(i).cloned(), &phi_inv, &psi, &phi, k));
        }
    }
    DeformationJet::new(jet.base.clone(), alpha, mu, lambda)
}

// --- obstructions and lifting -------------------------------------------

/// The order-`n` obstruction of a jet valid mod `t^n`: the order-`n` axiom
/// defect of the jet truncated to order `n−1` and extended by zero,
/// assembled as a total 3-cochain, together with its class mod the image of
/// the degree-2 total differential.
pub fn obstruction(jet: &DeformationJet, n: usize) -> Result<(TotalCochain, Vec<Rat>)> {
    if n == 0 {
        return Err(Error::Precondition("obstruction order must be ≥ 1".into()));
    }
    let truncated = jet.truncate(n - 1);
    for i in 1..n {
        if !defects(&truncated, i)?.is_zero() {
            return Err(Error::Precondition(format!(
                "jet does not satisfy the axioms at order {i}"
            )));
        }
    }
    let complex = jet.base.complex();
    let report = defects(&truncated, n)?;
    let cochain = report.total(&complex);
    let d2 = complex.total_differential(2);
    let image = image_basis(&d2);
    let class = reduce_mod_subspace(&cochain.flat(), &image);
    Ok((cochain, class))
}

/// Result of greedy order-by-order lifting.
#[derive(Debug, Clone)]
pub enum LiftOutcome {
    Lifted(DeformationJet),
    Obstructed {
        /// The first order whose obstruction class is nonzero.
        order: usize,
        class: Vec<Rat>,
        /// The jet completed through `order − 1`.
        partial: DeformationJet,
    },
}

/// Greedily extend an infinitesimal to a jet of order `target_n`, solving
/// `δ_tot(c_n) = −obstruction_n` with the canonical particular solution at
/// each order.
pub fn lift_to_order(
    base: &JetBase,
    alpha1: &Tensor3,
    mu1: Option<&Tensor3>,
    lambda1: &Tensor3,
    target_n: usize,
) -> Result<LiftOutcome> {
    let complex = base.complex();
    let report = is_infinitesimal(base, alpha1, mu1, lambda1)?;
    if !report.is_cocycle {
        return Err(Error::Precondition("the infinitesimal is not a total 2-cocycle".into()));
    }
    let mut jet = DeformationJet::new(
        base.clone(),
        vec![alpha1.clone()],
        match base.branch() {
            Branch::Leibniz => vec![mu1
                .ok_or_else(|| Error::Precondition("a leibniz jet needs mu terms".into()))?
                .clone()],
            Branch::Poisson => Vec::new(),
        },
        vec![lambda1.clone()],
    )?;
    let d2_dense = complex.total_differential(2).to_dense();
    for n in 2..=target_n {
        let (cochain, class) = obstruction(&jet, n)?;
        if class.iter().any(|r| !r.is_zero()) {
            return Ok(LiftOutcome::Obstructed { order: n, class, partial: jet });
        }
        let rhs: Vec<Rat> = cochain.flat().iter().map(|r| -r.clone()).collect();
        let c = solve(&d2_dense, &rhs).ok_or_else(|| {
            Error::Contract("zero obstruction class but no solution to the lift equation".into())
        })?;
        let total = complex.total_cochain_from_flat(2, &c)?;
        let (alpha_n, mu_n, lambda_n) = disassemble2(&complex, &total)?;
        jet.extend(alpha_n, mu_n, lambda_n);
    }
    Ok(LiftOutcome::Lifted(jet))
}

/// Whether `(φ, ψ)` is a total 1-cocycle (an infinitesimal automorphism).
pub fn is_infinitesimal_automorphism(
    base: &JetBase,
    phi: &RationalMatrix,
    psi: Option<&RationalMatrix>,
) -> Result<bool> {
    let complex = base.complex();
    let cochain = assemble1(&complex, phi, psi)?;
    let d1 = complex.total_differential(1);
    Ok(d1.apply(&cochain.flat()).iter().all(|r| r.is_zero()))
}

/// `Φ_t = Σ_{i≤N} t^i φ^i / i!` for a simultaneous derivation `φ` of a
/// Poisson algebra.
pub fn exponentiate_derivation(
    poisson: &PoissonAlgebra,
    phi: &RationalMatrix,
    n: usize,
) -> Result<EquivalenceJet> {
    let na = poisson.a.dim;
    if phi.rows != na || phi.cols != na {
        return Err(Error::Precondition("phi must be a square matrix over A".into()));
    }
    let mut coeffs = Vec::with_capacity(n);
    let mut power = RationalMatrix::identity(na);
    let mut factorial = rat_int(1);
    for i in 1..=n {
        power = phi.matmul(&power);
        factorial *= rat_int(i as i64);
        let mut term = RationalMatrix::zero(na, na);
        for r in 0..na {
            for c in 0..na {
                *term.get_mut(r, c) = power.get(r, c) / &factorial;
            }
        }
        coeffs.push(term);
    }
    Ok(EquivalenceJet { phi: coeffs, psi: Vec::new() })
}

/// Kernel basis of the degree-2 total differential: the space of
/// infinitesimals (as flat vectors). Used by randomized tests and the CLI.
pub fn infinitesimal_space(complex: &Complex) -> SubspaceBasis {
    kernel_basis(&complex.total_differential(2).to_dense())
}
