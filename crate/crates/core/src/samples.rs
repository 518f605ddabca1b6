//! Built-in example algebras, pairs, and Poisson algebras used by tests and
//! shipped as JSON examples.

use crate::algebra::{AlgebraKind, LeibnizPair, PoissonAlgebra, StructureAlgebra, Tensor3};
use crate::rational::rat_int;

/// The base field as a one-dimensional algebra.
pub fn rationals() -> StructureAlgebra {
    let mut c = Tensor3::zeros(1, 1, 1);
    c.set(0, 0, 0, rat_int(1));
    StructureAlgebra::new(AlgebraKind::Associative, 1, Some(vec!["1".into()]), c, Some(0)).unwrap()
}

/// Dual numbers `k[x]/(x²)`, basis `{1, x}`.
pub fn dual_numbers() -> StructureAlgebra {
    let mut c = Tensor3::zeros(2, 2, 2);
    c.set(0, 0, 0, rat_int(1));
    c.set(0, 1, 1, rat_int(1));
    c.set(1, 0, 1, rat_int(1));
    StructureAlgebra::new(
        AlgebraKind::Associative,
        2,
        Some(vec!["1".into(), "x".into()]),
        c,
        Some(0),
    )
    .unwrap()
}

/// One-dimensional abelian Lie algebra, basis `{d}`.
pub fn abelian_line() -> StructureAlgebra {
    StructureAlgebra::new(AlgebraKind::Lie, 1, Some(vec!["d".into()]), Tensor3::zeros(1, 1, 1), None)
        .unwrap()
}

/// `sl2` with the standard basis `{h, e, f}`: `[h,e] = 2e`, `[h,f] = -2f`,
/// `[e,f] = h`.
pub fn sl2() -> StructureAlgebra {
    let (h, e, f) = (0usize, 1usize, 2usize);
    let mut c = Tensor3::zeros(3, 3, 3);
    c.set(h, e, e, rat_int(2));
    c.set(e, h, e, rat_int(-2));
    c.set(h, f, f, rat_int(-2));
    c.set(f, h, f, rat_int(2));
    c.set(e, f, h, rat_int(1));
    c.set(f, e, h, rat_int(-1));
    StructureAlgebra::new(
        AlgebraKind::Lie,
        3,
        Some(vec!["h".into(), "e".into(), "f".into()]),
        c,
        None,
    )
    .unwrap()
}

/// The pair `(k[x]/(x²), 0)`: trivial Lie part, so the bicomplex collapses
/// to the Hochschild column.
pub fn dual_pair() -> LeibnizPair {
    let l = StructureAlgebra::new(AlgebraKind::Lie, 0, Some(vec![]), Tensor3::zeros(0, 0, 0), None)
        .unwrap();
    LeibnizPair::new(dual_numbers(), l, Tensor3::zeros(0, 2, 2)).unwrap()
}

/// The pair `(k[x]/(x²), k·d)` where `d` acts as the Euler derivation
/// `d(1) = 0`, `d(x) = x`.
pub fn pair1() -> LeibnizPair {
    let mut mu = Tensor3::zeros(1, 2, 2);
    mu.set(0, 1, 1, rat_int(1));
    LeibnizPair::new(dual_numbers(), abelian_line(), mu).unwrap()
}

/// The pair `(k, sl2)` with the (necessarily) zero action on the base field.
pub fn sl2_pair() -> LeibnizPair {
    LeibnizPair::new(rationals(), sl2(), Tensor3::zeros(3, 1, 1)).unwrap()
}

/// 2×2 matrices with the standard basis `{e11, e12, e21, e22}` and no
/// declared basis unit (the unit `e11 + e22` is not a basis element).
pub fn matrix2() -> StructureAlgebra {
    let dim = 4;
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut c = Tensor3::zeros(dim, dim, dim);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    if j == k {
                        c.set(idx(i, j), idx(k, l), idx(i, l), rat_int(1));
                    }
                }
            }
        }
    }
    StructureAlgebra::new(
        AlgebraKind::Associative,
        dim,
        Some(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()]),
        c,
        None,
    )
    .unwrap()
}

/// The pair `(M2, sl2)` with `sl2` acting by the inner derivations
/// `μ(h) = ad(e11 - e22)`, `μ(e) = ad(e12)`, `μ(f) = ad(e21)`.
pub fn matrix2_pair() -> LeibnizPair {
    let a = matrix2();
    let l = sl2();
    let idx = |i: usize, j: usize| 2 * i + j;
    // traceless generators as coefficient vectors in the e_{ij} basis
    let gens: [Vec<(usize, i64)>; 3] = [
        vec![(idx(0, 0), 1), (idx(1, 1), -1)], // h ↦ e11 - e22
        vec![(idx(0, 1), 1)],                  // e ↦ e12
        vec![(idx(1, 0), 1)],                  // f ↦ e21
    ];
    let mut mu = Tensor3::zeros(3, 4, 4);
    for (x, gen) in gens.iter().enumerate() {
        for &(g, coeff) in gen {
            for b in 0..4 {
                // ad(g)(b) = g·b - b·g
                let gb = a.c.eval_basis(g, b);
                let bg = a.c.eval_basis(b, g);
                for k in 0..4 {
                    let delta = rat_int(coeff) * (&gb[k] - &bg[k]);
                    let cur = mu.get(x, b, k).clone();
                    mu.set(x, b, k, cur + delta);
                }
            }
        }
    }
    LeibnizPair::new(a, l, mu).unwrap()
}

/// Three-dimensional Poisson algebra `span{1, x, y}` with `x·x = x·y = y·y = 0`
/// and bracket `{x, y} = x`.
pub fn pois3() -> PoissonAlgebra {
    let mut c = Tensor3::zeros(3, 3, 3);
    for i in 0..3 {
        c.set(0, i, i, rat_int(1));
        if i != 0 {
            c.set(i, 0, i, rat_int(1));
        }
    }
    let a = StructureAlgebra::new(
        AlgebraKind::Associative,
        3,
        Some(vec!["1".into(), "x".into(), "y".into()]),
        c,
        Some(0),
    )
    .unwrap();
    let mut br = Tensor3::zeros(3, 3, 3);
    br.set(1, 2, 1, rat_int(1));
    br.set(2, 1, 1, rat_int(-1));
    PoissonAlgebra::new(a, br).unwrap()
}

/// The dual numbers with the zero Poisson bracket.
pub fn dual_poisson_zero_bracket() -> PoissonAlgebra {
    let a = dual_numbers();
    let br = Tensor3::zeros(2, 2, 2);
    PoissonAlgebra::new(a, br).unwrap()
}

/// Every bundled Leibniz pair, including those associated to the bundled
/// Poisson algebras.
pub fn bundled_pairs() -> Vec<LeibnizPair> {
    vec![dual_pair(), pair1(), sl2_pair(), matrix2_pair(), pois3().as_pair()]
}
