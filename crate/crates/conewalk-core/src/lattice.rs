//! Integral symmetric bilinear forms on free modules of finite rank:
//! pairings, signatures, determinants, evenness, root reflections and
//! orthogonal complements, all in exact arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{self, Matrix};

/// A vector in a fixed lattice basis. Comparison is coordinatewise
/// lexicographic, which is what gives enumeration its deterministic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: alloc::vec![BigInt::zero(); rank],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn at(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), other.len());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), other.len());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// gcd of the coordinates; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        matrix::content(&self.coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive vector on the same ray (zero stays zero).
    pub fn primitive(&self) -> LatticeVector {
        LatticeVector {
            coords: matrix::primitive_part(&self.coords),
        }
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }
}

/// Signature of a nondegenerate form: `positive + negative = rank`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeError {
    EmptyGram,
    NotSquare { rows: usize, cols: usize },
    NotSymmetric { row: usize, col: usize },
    Degenerate,
    DimensionMismatch { expected: usize, got: usize },
    NotARoot { norm: BigInt },
    ZeroVector,
    LabelCountMismatch { expected: usize, got: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::EmptyGram => write!(f, "gram matrix must have positive rank"),
            LatticeError::NotSquare { rows, cols } => {
                write!(f, "gram matrix is {rows}x{cols}, not square")
            }
            LatticeError::NotSymmetric { row, col } => {
                write!(f, "gram matrix is not symmetric at ({row}, {col})")
            }
            LatticeError::Degenerate => write!(f, "gram matrix is degenerate (determinant 0)"),
            LatticeError::DimensionMismatch { expected, got } => {
                write!(f, "vector has length {got}, expected {expected}")
            }
            LatticeError::NotARoot { norm } => {
                write!(f, "reflection vector has norm {norm}, expected -2")
            }
            LatticeError::ZeroVector => write!(f, "vector must be nonzero"),
            LatticeError::LabelCountMismatch { expected, got } => {
                write!(f, "{got} labels for {expected} basis vectors")
            }
        }
    }
}

impl core::error::Error for LatticeError {}

/// A finite-rank free module with an integral symmetric bilinear form that is
/// nondegenerate over the rationals. Degeneracy is rejected at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeSpace {
    gram: Matrix,
    labels: Option<Vec<String>>,
}

impl LatticeSpace {
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let rows = gram.len();
        if rows == 0 {
            return Err(LatticeError::EmptyGram);
        }
        let cols = gram[0].len();
        if gram.iter().any(|r| r.len() != cols) || rows != cols {
            return Err(LatticeError::NotSquare { rows, cols });
        }
        let m = Matrix::from_rows(gram);
        for i in 0..rows {
            for j in (i + 1)..rows {
                if m.at(i, j) != m.at(j, i) {
                    return Err(LatticeError::NotSymmetric { row: i, col: j });
                }
            }
        }
        if m.determinant().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(LatticeSpace {
            gram: m,
            labels: None,
        })
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self, LatticeError> {
        LatticeSpace::new(
            gram.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Labels are metadata only; no operation depends on them.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.rank() {
            return Err(LatticeError::LabelCountMismatch {
                expected: self.rank(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_len(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `G * v`, the coordinate functional of pairing with `v`.
    pub fn gram_times(&self, v: &LatticeVector) -> Result<Vec<BigInt>, LatticeError> {
        self.check_len(v)?;
        Ok(self.gram.mul_vec(v.coords()))
    }

    /// The bilinear pairing `x^T G y`.
    pub fn inner_product(
        &self,
        x: &LatticeVector,
        y: &LatticeVector,
    ) -> Result<BigInt, LatticeError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(matrix::dot(&self.gram.mul_vec(x.coords()), y.coords()))
    }

    /// Self-pairing `<x, x>`.
    pub fn norm(&self, x: &LatticeVector) -> Result<BigInt, LatticeError> {
        self.inner_product(x, x)
    }

    /// Exact signature via rational congruence reduction; the zero count is
    /// always 0 by the nondegeneracy invariant.
    pub fn signature(&self) -> Signature {
        let (positive, negative, zero) = self.gram.signature();
        debug_assert_eq!(zero, 0);
        Signature { positive, negative }
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// True iff `<x, x>` is even for every lattice vector, equivalently iff
    /// every diagonal Gram entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.at(i, i).is_even())
    }

    /// Reflection in a `(-2)`-vector: `s_r(x) = x + <x, r> r`. Requires
    /// `<r, r> = -2`; an involution preserving all pairings.
    pub fn reflect_in_root(
        &self,
        r: &LatticeVector,
        x: &LatticeVector,
    ) -> Result<LatticeVector, LatticeError> {
        let rr = self.norm(r)?;
        if rr != BigInt::from(-2) {
            return Err(LatticeError::NotARoot { norm: rr });
        }
        let xr = self.inner_product(x, r)?;
        Ok(x.add(&r.scale(&xr)))
    }

    /// Matrix of `s_r` acting on column coordinate vectors.
    pub fn reflection_matrix(&self, r: &LatticeVector) -> Result<Matrix, LatticeError> {
        let rr = self.norm(r)?;
        if rr != BigInt::from(-2) {
            return Err(LatticeError::NotARoot { norm: rr });
        }
        let gr = self.gram.mul_vec(r.coords());
        let n = self.rank();
        // column j is s_r(e_j) = e_j + <e_j, r> r
        Ok(Matrix::from_fn(n, n, |i, j| {
            let mut v = if i == j { BigInt::from(1) } else { BigInt::zero() };
            v += r.at(i) * &gr[j];
            v
        }))
    }

    /// Integral basis of `{x : <x, v> = 0}` with its induced Gram matrix.
    ///
    /// The sublattice is saturated of rank `rank - 1`. When `<v, v> = 0` it
    /// contains `v` itself and the induced form is degenerate, so the Gram is
    /// returned as a raw matrix rather than a `LatticeSpace`.
    pub fn orthogonal_complement(
        &self,
        v: &LatticeVector,
    ) -> Result<(Vec<LatticeVector>, Matrix), LatticeError> {
        self.check_len(v)?;
        if v.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let functional = Matrix::from_rows(alloc::vec![self.gram.mul_vec(v.coords())]);
        let basis: Vec<LatticeVector> = functional
            .integer_kernel()
            .into_iter()
            .map(LatticeVector::new)
            .collect();
        let induced = self.induced_gram(&basis);
        Ok((basis, induced))
    }

    /// Gram matrix of the form restricted to the span of `basis`.
    pub fn induced_gram(&self, basis: &[LatticeVector]) -> Matrix {
        let m = basis.len();
        let images: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|b| self.gram.mul_vec(b.coords()))
            .collect();
        Matrix::from_fn(m, m, |i, j| matrix::dot(&images[i], basis[j].coords()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    pub(crate) fn k3_rank3() -> LatticeSpace {
        LatticeSpace::from_i64(&[&[0, 1, 1], &[1, -2, 0], &[1, 0, -2]]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            LatticeSpace::new(vec![]),
            Err(LatticeError::EmptyGram)
        ));
        assert!(matches!(
            LatticeSpace::from_i64(&[&[1, 2], &[3, 4]]),
            Err(LatticeError::NotSymmetric { row: 0, col: 1 })
        ));
        assert!(matches!(
            LatticeSpace::from_i64(&[&[1, 1], &[1, 1]]),
            Err(LatticeError::Degenerate)
        ));
        assert!(matches!(
            LatticeSpace::from_i64(&[&[1, 0]]),
            Err(LatticeError::NotSquare { .. })
        ));
    }

    #[test]
    fn inner_product_examples() {
        let l = k3_rank3();
        let p = LatticeVector::from_i64(&[1, 0, 0]);
        assert_eq!(l.inner_product(&p, &p).unwrap(), bi(0));
        let z = LatticeVector::zero(3);
        let y = LatticeVector::from_i64(&[5, -3, 2]);
        assert_eq!(l.inner_product(&z, &y).unwrap(), bi(0));
        let e2 = LatticeVector::from_i64(&[0, 1, 0]);
        assert_eq!(l.inner_product(&p, &e2).unwrap(), bi(1));
        let short = LatticeVector::from_i64(&[1, 0]);
        assert!(matches!(
            l.inner_product(&p, &short),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        let blowup6 = LatticeSpace::from_i64(&[
            &[1, 0, 0, 0, 0, 0, 0],
            &[0, -1, 0, 0, 0, 0, 0],
            &[0, 0, -1, 0, 0, 0, 0],
            &[0, 0, 0, -1, 0, 0, 0],
            &[0, 0, 0, 0, -1, 0, 0],
            &[0, 0, 0, 0, 0, -1, 0],
            &[0, 0, 0, 0, 0, 0, -1],
        ])
        .unwrap();
        assert_eq!(
            blowup6.signature(),
            Signature {
                positive: 1,
                negative: 6
            }
        );
        assert_eq!(
            k3_rank3().signature(),
            Signature {
                positive: 1,
                negative: 2
            }
        );
        // product of two elliptic-curve factors plus the diagonal:
        // eigenvalues of the all-ones matrix minus identity are (2, -1, -1)
        let exe = LatticeSpace::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(
            exe.signature(),
            Signature {
                positive: 1,
                negative: 2
            }
        );
    }

    #[test]
    fn determinant_examples() {
        let ex63 = LatticeSpace::from_i64(&[
            &[0, 2, 1, 1],
            &[2, 0, 1, 1],
            &[1, 1, -2, 0],
            &[1, 1, 0, -2],
        ])
        .unwrap();
        assert_eq!(ex63.determinant(), bi(-32));
        assert_eq!(k3_rank3().determinant(), bi(4));
        let id4 = LatticeSpace::new(
            (0..4)
                .map(|i| (0..4).map(|j| bi((i == j) as i64)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(id4.determinant(), bi(1));
    }

    #[test]
    fn evenness() {
        assert!(k3_rank3().is_even());
        let odd = LatticeSpace::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        assert!(!odd.is_even());
        let scaled_hyperbolic = LatticeSpace::from_i64(&[&[0, 2], &[2, 0]]).unwrap();
        assert!(scaled_hyperbolic.is_even());
    }

    #[test]
    fn reflection_examples() {
        let l = k3_rank3();
        let r = LatticeVector::from_i64(&[0, 1, 0]);
        let x = LatticeVector::from_i64(&[1, 0, 0]);
        // <x, r> = 1, norm 0 is preserved
        let image = l.reflect_in_root(&r, &x).unwrap();
        assert_eq!(image, LatticeVector::from_i64(&[1, 1, 0]));
        assert_eq!(l.norm(&image).unwrap(), l.norm(&x).unwrap());
        // a mirror fixes its wall
        let fixed = LatticeVector::from_i64(&[2, 1, 0]);
        assert_eq!(l.inner_product(&fixed, &r).unwrap(), bi(0));
        assert_eq!(l.reflect_in_root(&r, &fixed).unwrap(), fixed);
        // s_r(r) = -r
        assert_eq!(l.reflect_in_root(&r, &r).unwrap(), r.neg());
        // non-root rejected
        let not_root = LatticeVector::from_i64(&[1, 0, 0]);
        assert!(matches!(
            l.reflect_in_root(&not_root, &x),
            Err(LatticeError::NotARoot { .. })
        ));
    }

    #[test]
    fn reflection_matrix_agrees_with_reflect() {
        let l = k3_rank3();
        let r = LatticeVector::from_i64(&[4, 2, -1]);
        let m = l.reflection_matrix(&r).unwrap();
        let x = LatticeVector::from_i64(&[3, 1, 1]);
        let via_matrix = LatticeVector::new(m.mul_vec(x.coords()));
        assert_eq!(via_matrix, l.reflect_in_root(&r, &x).unwrap());
    }

    #[test]
    fn orthogonal_complement_examples() {
        let l = LatticeSpace::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        let v = LatticeVector::from_i64(&[1, 0]);
        let (basis, gram) = l.orthogonal_complement(&v).unwrap();
        assert_eq!(basis, vec![LatticeVector::from_i64(&[0, 1])]);
        assert_eq!(gram.at(0, 0), &bi(-1));

        let k3 = k3_rank3();
        let v = LatticeVector::from_i64(&[3, 1, 1]);
        assert_eq!(k3.norm(&v).unwrap(), bi(8));
        let (basis, gram) = k3.orthogonal_complement(&v).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(k3.inner_product(b, &v).unwrap(), bi(0));
        }
        assert_eq!(gram.signature(), (0, 2, 0));

        let diag = LatticeSpace::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]).unwrap();
        let e2 = LatticeVector::from_i64(&[0, 1, 0]);
        let (basis, gram) = diag.orthogonal_complement(&e2).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(gram.signature(), (1, 1, 0));

        assert!(matches!(
            k3.orthogonal_complement(&LatticeVector::zero(3)),
            Err(LatticeError::ZeroVector)
        ));
    }

    #[test]
    fn isotropic_complement_contains_the_vector() {
        let k3 = k3_rank3();
        let p = LatticeVector::from_i64(&[1, 0, 0]);
        let (basis, gram) = k3.orthogonal_complement(&p).unwrap();
        assert_eq!(basis.len(), 2);
        // the span of the complement contains p itself, so the induced form
        // is degenerate
        assert_eq!(gram.determinant(), bi(0));
        let m = Matrix::from_rows(basis.iter().map(|b| b.coords().to_vec()).collect());
        let sys = m.transpose().column_reduction();
        assert!(sys.solve(p.coords()).is_some());
    }
}
