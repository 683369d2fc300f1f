//! Integral isometries of a lattice: Gram preservation, positive-cone
//! orientation, and the elliptic / parabolic / hyperbolic trichotomy decided
//! by exact characteristic-polynomial analysis.
//!
//! All eigenvalues of an integral isometry are algebraic units, so by
//! Kronecker's theorem the spectral radius is 1 exactly when every
//! irreducible factor of the characteristic polynomial is cyclotomic. That
//! makes the trichotomy decidable without numerics: a non-cyclotomic factor
//! certifies hyperbolic; otherwise finite order (elliptic) is separated from
//! parabolic by testing `g^N = 1` at the cyclotomic-order lcm `N`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumeration::MarkedLattice;
use crate::lattice::{LatticeError, LatticeSpace, LatticeVector};
use crate::matrix::Matrix;
use crate::poly::{self, IntPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IsometryError {
    Lattice(LatticeError),
    NotAnIsometry {
        row: usize,
        col: usize,
        expected: BigInt,
        got: BigInt,
    },
    NotSquareMatrix,
    SwapsComponents,
    NotParabolic,
}

impl fmt::Display for IsometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsometryError::Lattice(e) => write!(f, "{e}"),
            IsometryError::NotAnIsometry {
                row,
                col,
                expected,
                got,
            } => write!(
                f,
                "matrix does not preserve the form: entry ({row}, {col}) of m^T G m is {got}, gram has {expected}"
            ),
            IsometryError::NotSquareMatrix => write!(f, "isometry matrix must be square of the ambient rank"),
            IsometryError::SwapsComponents => {
                write!(f, "isometry swaps the two components of the positive cone")
            }
            IsometryError::NotParabolic => write!(f, "isometry is not parabolic"),
        }
    }
}

impl core::error::Error for IsometryError {}

impl From<LatticeError> for IsometryError {
    fn from(e: LatticeError) -> Self {
        IsometryError::Lattice(e)
    }
}

/// An integral matrix with `m^T G m = G`, acting on column coordinate
/// vectors. Determinant is `+-1` automatically (asserted).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeIsometry {
    space: LatticeSpace,
    matrix: Matrix,
}

impl LatticeIsometry {
    pub fn new(space: LatticeSpace, matrix: Matrix) -> Result<Self, IsometryError> {
        let n = space.rank();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(IsometryError::NotSquareMatrix);
        }
        let mgm = matrix.transpose().mul(&space.gram().mul(&matrix));
        for i in 0..n {
            for j in 0..n {
                if mgm.at(i, j) != space.gram().at(i, j) {
                    return Err(IsometryError::NotAnIsometry {
                        row: i,
                        col: j,
                        expected: space.gram().at(i, j).clone(),
                        got: mgm.at(i, j).clone(),
                    });
                }
            }
        }
        debug_assert_eq!(matrix.determinant().abs(), BigInt::one());
        Ok(LatticeIsometry { space, matrix })
    }

    pub fn identity(space: LatticeSpace) -> Self {
        let n = space.rank();
        LatticeIsometry {
            space,
            matrix: Matrix::identity(n),
        }
    }

    /// The reflection `s_r` in a `(-2)`-vector as an isometry.
    pub fn from_reflection(
        space: &LatticeSpace,
        root: &LatticeVector,
    ) -> Result<Self, IsometryError> {
        let matrix = space.reflection_matrix(root)?;
        Ok(LatticeIsometry {
            space: space.clone(),
            matrix,
        })
    }

    pub fn space(&self) -> &LatticeSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.matrix.mul_vec(v.coords()))
    }

    /// `self` first, then `other`: the matrix product `other * self`.
    pub fn then(&self, other: &LatticeIsometry) -> LatticeIsometry {
        LatticeIsometry {
            space: self.space.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }

    pub fn pow(&self, k: u64) -> LatticeIsometry {
        LatticeIsometry {
            space: self.space.clone(),
            matrix: self.matrix.pow(k),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.space.rank())
    }

    pub fn char_poly(&self) -> IntPoly {
        poly::char_poly(&self.matrix)
    }
}

/// True iff the isometry fixes the positive-cone component of the marking,
/// i.e. `<g(H), H> > 0`.
pub fn preserves_positive_cone(marked: &MarkedLattice, g: &LatticeIsometry) -> bool {
    let gh = g.apply(marked.marking());
    marked
        .space()
        .inner_product(&gh, marked.marking())
        .map(|p| p.is_positive())
        .unwrap_or(false)
}

/// The trichotomy, with a certificate per tag: the exact finite order, the
/// fixed primitive isotropic ray, or a non-cyclotomic irreducible factor of
/// the characteristic polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IsometryKind {
    Elliptic { order: u64 },
    Parabolic { fixed_ray: LatticeVector },
    Hyperbolic { certificate: IntPoly },
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsometryKind::Elliptic { order } => write!(f, "elliptic (order {order})"),
            IsometryKind::Parabolic { fixed_ray } => {
                write!(f, "parabolic (fixed ray {fixed_ray})")
            }
            IsometryKind::Hyperbolic { certificate } => {
                write!(f, "hyperbolic (non-cyclotomic factor {certificate})")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Splits the characteristic polynomial into cyclotomic orders (with
/// multiplicity) and the non-cyclotomic residual.
fn strip_cyclotomic(cp: &IntPoly) -> (Vec<(u64, u32)>, IntPoly) {
    let rank = cp.degree().unwrap_or(0);
    let mut residual = cp.clone();
    let mut orders = Vec::new();
    for d in 1..=rank {
        for m in poly::cyclotomic_orders_of_degree(d) {
            let phi = poly::cyclotomic(m);
            let (mult, rest) = residual.strip_factor(&phi);
            if mult > 0 {
                orders.push((m, mult));
                residual = rest;
            }
        }
    }
    (orders, residual)
}

fn lcm_of_orders(orders: &[(u64, u32)]) -> u64 {
    orders.iter().fold(1u64, |acc, &(m, _)| acc.lcm(&m))
}

fn sorted_divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Least `N` with `g^N = 1`, or `Infinite`. The candidate bound is the lcm of
/// the cyclotomic orders in the characteristic polynomial; anything beyond it
/// cannot be a period.
pub fn order(g: &LatticeIsometry) -> Order {
    let (orders, residual) = strip_cyclotomic(&g.char_poly());
    if residual.degree().unwrap_or(0) > 0 {
        return Order::Infinite;
    }
    let n = lcm_of_orders(&orders);
    if !g.pow(n).is_identity() {
        return Order::Infinite;
    }
    for d in sorted_divisors(n) {
        if g.pow(d).is_identity() {
            return Order::Finite(d);
        }
    }
    Order::Finite(n)
}

/// Classifies an isometry preserving the positive-cone component.
pub fn classify(marked: &MarkedLattice, g: &LatticeIsometry) -> Result<IsometryKind, IsometryError> {
    if !preserves_positive_cone(marked, g) {
        return Err(IsometryError::SwapsComponents);
    }
    let (orders, residual) = strip_cyclotomic(&g.char_poly());
    if residual.degree().unwrap_or(0) > 0 {
        let (_, factors) = poly::factor(&residual);
        let certificate = factors
            .into_iter()
            .map(|(f, _)| f)
            .find(|f| poly::is_cyclotomic(f).is_none())
            .expect("residual after cyclotomic stripping has a non-cyclotomic factor");
        return Ok(IsometryKind::Hyperbolic { certificate });
    }
    let n = lcm_of_orders(&orders);
    if g.pow(n).is_identity() {
        let order = sorted_divisors(n)
            .into_iter()
            .find(|&d| g.pow(d).is_identity())
            .unwrap_or(n);
        Ok(IsometryKind::Elliptic { order })
    } else {
        let fixed_ray = fixed_isotropic_ray(marked, g)?;
        Ok(IsometryKind::Parabolic { fixed_ray })
    }
}

/// The unique primitive isotropic fixed ray of a parabolic isometry, oriented
/// into the positive-cone closure.
pub fn parabolic_fixed_ray(
    marked: &MarkedLattice,
    g: &LatticeIsometry,
) -> Result<LatticeVector, IsometryError> {
    match classify(marked, g)? {
        IsometryKind::Parabolic { fixed_ray } => Ok(fixed_ray),
        _ => Err(IsometryError::NotParabolic),
    }
}

/// Kernel of `g - 1` intersected with the isotropic condition: the radical of
/// the form restricted to the fixed sublattice, which is one-dimensional for
/// a parabolic isometry of a signature (1, n) lattice.
fn fixed_isotropic_ray(
    marked: &MarkedLattice,
    g: &LatticeIsometry,
) -> Result<LatticeVector, IsometryError> {
    let n = g.space.rank();
    let fixed = g.matrix.sub(&Matrix::identity(n)).integer_kernel();
    if fixed.is_empty() {
        return Err(IsometryError::NotParabolic);
    }
    let basis: Vec<LatticeVector> = fixed.into_iter().map(LatticeVector::new).collect();
    let induced = g.space.induced_gram(&basis);
    let radical = induced.integer_kernel();
    if radical.len() != 1 {
        return Err(IsometryError::NotParabolic);
    }
    let mut ray = LatticeVector::zero(n);
    for (c, b) in radical[0].iter().zip(&basis) {
        ray = ray.add(&b.scale(c));
    }
    let ray = ray.primitive();
    if !g.space.norm(&ray)?.is_zero() {
        return Err(IsometryError::NotParabolic);
    }
    let deg = g.space.inner_product(&ray, marked.marking())?;
    if deg.is_zero() {
        return Err(IsometryError::NotParabolic);
    }
    let oriented = if deg.is_negative() { ray.neg() } else { ray };
    debug_assert_eq!(g.apply(&oriented), oriented);
    Ok(oriented)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn k3_space() -> LatticeSpace {
        LatticeSpace::from_i64(&[&[0, 1, 1], &[1, -2, 0], &[1, 0, -2]]).unwrap()
    }

    fn k3_marked() -> MarkedLattice {
        MarkedLattice::new(k3_space(), lv(&[3, 1, 1])).unwrap()
    }

    /// The transvection x -> x + <x,e>a - <x,a>e + 2<x,e>e with e = (1,0,0)
    /// isotropic and a = (0,1,-1) orthogonal to e of norm -4; unipotent with
    /// characteristic polynomial (x-1)^3.
    fn parabolic_translation() -> LatticeIsometry {
        let m = Matrix::from_i64_rows(&[&[1, 4, 0], &[0, 2, 1], &[0, -1, 0]]);
        LatticeIsometry::new(k3_space(), m).unwrap()
    }

    #[test]
    fn construction_accepts_isometries() {
        let space = k3_space();
        assert!(LatticeIsometry::new(space.clone(), Matrix::identity(3)).is_ok());
        assert!(LatticeIsometry::new(space.clone(), Matrix::identity(3).neg()).is_ok());
        // the gram matrix is symmetric under swapping the two (-2)-vectors
        let swap = Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(LatticeIsometry::new(space, swap).is_ok());
    }

    #[test]
    fn construction_rejects_non_isometries() {
        let space = k3_space();
        let bad = Matrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        match LatticeIsometry::new(space, bad) {
            Err(IsometryError::NotAnIsometry { .. }) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn component_preservation() {
        let marked = k3_marked();
        let id = LatticeIsometry::identity(k3_space());
        assert!(preserves_positive_cone(&marked, &id));
        let minus =
            LatticeIsometry::new(k3_space(), Matrix::identity(3).neg()).unwrap();
        assert!(!preserves_positive_cone(&marked, &minus));
        // <s_r(H), H> = <H,H> + <H,r>^2 > 0 for any root reflection
        for root in [lv(&[0, 1, 0]), lv(&[0, 0, 1]), lv(&[4, 2, -1])] {
            let s = LatticeIsometry::from_reflection(&k3_space(), &root).unwrap();
            assert!(preserves_positive_cone(&marked, &s));
        }
    }

    #[test]
    fn classify_identity_and_reflections() {
        let marked = k3_marked();
        let id = LatticeIsometry::identity(k3_space());
        assert_eq!(classify(&marked, &id).unwrap(), IsometryKind::Elliptic { order: 1 });
        let s = LatticeIsometry::from_reflection(&k3_space(), &lv(&[0, 1, 0])).unwrap();
        assert_eq!(classify(&marked, &s).unwrap(), IsometryKind::Elliptic { order: 2 });
        assert_eq!(order(&s), Order::Finite(2));
    }

    #[test]
    fn classify_rejects_component_swap() {
        let marked = k3_marked();
        let minus = LatticeIsometry::new(k3_space(), Matrix::identity(3).neg()).unwrap();
        assert!(matches!(
            classify(&marked, &minus),
            Err(IsometryError::SwapsComponents)
        ));
        // order itself ignores the marking: (-1)^2 = 1
        assert_eq!(order(&minus), Order::Finite(2));
    }

    #[test]
    fn classify_parabolic_translation() {
        let marked = k3_marked();
        let g = parabolic_translation();
        assert_eq!(g.char_poly(), IntPoly::from_i64(&[-1, 3, -3, 1]));
        assert!(!g.is_identity());
        match classify(&marked, &g).unwrap() {
            IsometryKind::Parabolic { fixed_ray } => {
                assert_eq!(fixed_ray, lv(&[1, 0, 0]));
            }
            other => panic!("expected parabolic, got {other:?}"),
        }
        assert_eq!(order(&g), Order::Infinite);
        // powers fix the same ray
        let g2 = g.then(&g);
        assert_eq!(parabolic_fixed_ray(&marked, &g2).unwrap(), lv(&[1, 0, 0]));
    }

    #[test]
    fn parabolic_ray_rejects_non_parabolic() {
        let marked = k3_marked();
        let s = LatticeIsometry::from_reflection(&k3_space(), &lv(&[0, 0, 1])).unwrap();
        assert!(matches!(
            parabolic_fixed_ray(&marked, &s),
            Err(IsometryError::NotParabolic)
        ));
    }

    #[test]
    fn classify_hyperbolic_composition() {
        let marked = k3_marked();
        let space = k3_space();
        // the two roots pair to 6; |6| > 2 forces a translation axis
        let s1 = LatticeIsometry::from_reflection(&space, &lv(&[0, 0, 1])).unwrap();
        let s2 = LatticeIsometry::from_reflection(&space, &lv(&[4, 2, -1])).unwrap();
        let g = s1.then(&s2);
        // trace on the plane spanned by the roots is 6^2 - 2 = 34, plus a
        // fixed orthogonal line: char poly (x - 1)(x^2 - 34x + 1)
        assert_eq!(
            g.char_poly(),
            IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[1, -34, 1]))
        );
        match classify(&marked, &g).unwrap() {
            IsometryKind::Hyperbolic { certificate } => {
                assert_eq!(certificate, IntPoly::from_i64(&[1, -34, 1]));
                assert!(poly::is_cyclotomic(&certificate).is_none());
            }
            other => panic!("expected hyperbolic, got {other:?}"),
        }
        assert_eq!(order(&g), Order::Infinite);
    }

    #[test]
    fn classify_conjugation_invariant() {
        let marked = k3_marked();
        let space = k3_space();
        let g = parabolic_translation();
        let h = LatticeIsometry::from_reflection(&space, &lv(&[0, 1, 0])).unwrap();
        // h has order 2, so h g h^{-1} = h g h
        let conj = h.then(&g).then(&h);
        let a = classify(&marked, &g).unwrap();
        let b = classify(&marked, &conj).unwrap();
        assert!(matches!(
            (a, b),
            (IsometryKind::Parabolic { .. }, IsometryKind::Parabolic { .. })
        ));
    }

    #[test]
    fn classify_powers_keep_their_kind() {
        let marked = k3_marked();
        let space = k3_space();
        let s1 = LatticeIsometry::from_reflection(&space, &lv(&[0, 0, 1])).unwrap();
        let s2 = LatticeIsometry::from_reflection(&space, &lv(&[4, 2, -1])).unwrap();
        let hyp = s1.then(&s2);
        for k in [1u64, 2, 3] {
            assert!(matches!(
                classify(&marked, &hyp.pow(k)).unwrap(),
                IsometryKind::Hyperbolic { .. }
            ));
        }
        let par = parabolic_translation();
        for k in [1u64, 2, 5] {
            assert!(matches!(
                classify(&marked, &par.pow(k)).unwrap(),
                IsometryKind::Parabolic { .. }
            ));
        }
    }

    #[test]
    fn float_spectral_radius_probe() {
        use num_traits::ToPrimitive;
        // test-only consistency check: exact classification against a
        // floating-point eigenvalue computation
        let space = k3_space();
        let marked = k3_marked();
        let s1 = LatticeIsometry::from_reflection(&space, &lv(&[0, 0, 1])).unwrap();
        let s2 = LatticeIsometry::from_reflection(&space, &lv(&[4, 2, -1])).unwrap();
        let cases: Vec<(LatticeIsometry, bool)> = vec![
            (s1.then(&s2), true),                 // hyperbolic
            (parabolic_translation(), false),     // parabolic
            (s1.clone(), false),                  // elliptic
            (LatticeIsometry::identity(space.clone()), false),
        ];
        for (g, expect_hyperbolic) in cases {
            let n = g.space().rank();
            let mut data: Vec<f64> = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    data.push(g.matrix().at(i, j).to_f64().unwrap());
                }
            }
            let m = nalgebra::DMatrix::from_row_slice(n, n, &data);
            let radius = m
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            let classified_hyperbolic = matches!(
                classify(&marked, &g),
                Ok(IsometryKind::Hyperbolic { .. })
            );
            assert_eq!(classified_hyperbolic, expect_hyperbolic);
            if expect_hyperbolic {
                assert!(radius > 1.0 + 1e-6, "radius {radius}");
            } else {
                assert!((radius - 1.0).abs() < 1e-6, "radius {radius}");
            }
        }
    }

    #[test]
    fn order_divisor_property() {
        let space = k3_space();
        let swap = LatticeIsometry::new(
            space,
            Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
        )
        .unwrap();
        match order(&swap) {
            Order::Finite(n) => {
                assert_eq!(n, 2);
                assert!(swap.pow(2).is_identity());
                assert!(!swap.pow(1).is_identity());
            }
            Order::Infinite => panic!("swap has order 2"),
        }
    }
}
