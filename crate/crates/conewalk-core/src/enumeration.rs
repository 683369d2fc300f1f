//! Exhaustive enumeration of lattice vectors of a prescribed norm with
//! bounded pairing against a marking vector.
//!
//! Searches fiber over the degree `d = <v, H>`: each fiber is an affine
//! integral solution set of the linear constraints, and the norm condition
//! becomes an ellipsoid equation over the negative definite complement,
//! solved by exact Fincke-Pohst backtracking over rationals. Exhaustiveness
//! within the bound is part of the contract.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{LatticeError, LatticeSpace, LatticeVector};
use crate::matrix::{self, ColumnReduction, Matrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumerationError {
    Lattice(LatticeError),
    MarkingNotPositive { norm: BigInt },
    TargetNotNegative { target: BigInt },
    NotNegativeDefinite,
    IndefiniteComplement,
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::Lattice(e) => write!(f, "{e}"),
            EnumerationError::MarkingNotPositive { norm } => {
                write!(f, "marking vector must have positive norm, got {norm}")
            }
            EnumerationError::TargetNotNegative { target } => {
                write!(f, "definite short-vector search needs a negative target, got {target}")
            }
            EnumerationError::NotNegativeDefinite => {
                write!(f, "gram matrix is not negative definite")
            }
            EnumerationError::IndefiniteComplement => {
                write!(
                    f,
                    "constrained complement of the marking is not negative definite"
                )
            }
        }
    }
}

impl core::error::Error for EnumerationError {}

impl From<LatticeError> for EnumerationError {
    fn from(e: LatticeError) -> Self {
        EnumerationError::Lattice(e)
    }
}

/// A lattice with an interior marking vector `H` (`<H, H> > 0`) selecting the
/// positive-cone component and the chamber orientation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedLattice {
    space: LatticeSpace,
    marking: LatticeVector,
}

impl MarkedLattice {
    pub fn new(space: LatticeSpace, marking: LatticeVector) -> Result<Self, EnumerationError> {
        let norm = space.norm(&marking)?;
        if !norm.is_positive() {
            return Err(EnumerationError::MarkingNotPositive { norm });
        }
        Ok(MarkedLattice { space, marking })
    }

    pub fn space(&self) -> &LatticeSpace {
        &self.space
    }

    pub fn marking(&self) -> &LatticeVector {
        &self.marking
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// `<v, H>`.
    pub fn degree(&self, v: &LatticeVector) -> Result<BigInt, EnumerationError> {
        Ok(self.space.inner_product(v, &self.marking)?)
    }
}

/// What to enumerate: norm, inclusive degree bound, optional primitivity,
/// extra exact pairing constraints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassQuery {
    pub target_norm: BigInt,
    pub max_degree: u64,
    pub primitive_only: bool,
    pub constraints: Vec<(LatticeVector, BigInt)>,
}

impl ClassQuery {
    pub fn new(target_norm: i64, max_degree: u64) -> Self {
        ClassQuery {
            target_norm: BigInt::from(target_norm),
            max_degree,
            primitive_only: false,
            constraints: Vec::new(),
        }
    }

    pub fn primitive(mut self) -> Self {
        self.primitive_only = true;
        self
    }

    pub fn with_constraint(mut self, vector: LatticeVector, value: i64) -> Self {
        self.constraints.push((vector, BigInt::from(value)));
        self
    }
}

/// All `v` with `<v, v> = target_norm` (negative) in a negative definite
/// lattice; both `v` and `-v` appear, in lexicographic order.
pub fn short_vectors_definite(
    space: &LatticeSpace,
    target_norm: &BigInt,
) -> Result<Vec<LatticeVector>, EnumerationError> {
    if !target_norm.is_negative() {
        return Err(EnumerationError::TargetNotNegative {
            target: target_norm.clone(),
        });
    }
    let form = QuadForm::new(&space.gram().neg()).ok_or(EnumerationError::NotNegativeDefinite)?;
    let center = vec![BigRational::zero(); space.rank()];
    let value = BigRational::from(-target_norm.clone());
    let mut result: Vec<LatticeVector> = form
        .enumerate_exact(&center, &value)
        .into_iter()
        .map(LatticeVector::new)
        .collect();
    result.sort();
    Ok(result)
}

/// Precomputed fibered search; fibers for distinct degrees are independent
/// and may be evaluated concurrently, then merged in degree order.
pub struct ClassSearch {
    space: LatticeSpace,
    query: ClassQuery,
    system: ColumnReduction,
    kernel: Vec<LatticeVector>,
    form: Option<QuadForm>,
    constraint_values: Vec<BigInt>,
    gram_marking: Vec<BigInt>,
}

impl ClassSearch {
    pub fn new(marked: &MarkedLattice, query: &ClassQuery) -> Result<Self, EnumerationError> {
        let space = marked.space().clone();
        let gram_marking = space.gram_times(marked.marking())?;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(1 + query.constraints.len());
        rows.push(gram_marking.clone());
        let mut constraint_values = Vec::with_capacity(query.constraints.len());
        for (c, value) in &query.constraints {
            rows.push(space.gram_times(c)?);
            constraint_values.push(value.clone());
        }
        let system = Matrix::from_rows(rows).column_reduction();
        let kernel: Vec<LatticeVector> = system
            .kernel_basis()
            .into_iter()
            .map(LatticeVector::new)
            .collect();
        let form = if kernel.is_empty() {
            None
        } else {
            let induced = space.induced_gram(&kernel);
            Some(QuadForm::new(&induced.neg()).ok_or(EnumerationError::IndefiniteComplement)?)
        };
        Ok(ClassSearch {
            space,
            query: query.clone(),
            system,
            kernel,
            form,
            constraint_values,
            gram_marking,
        })
    }

    pub fn max_degree(&self) -> u64 {
        self.query.max_degree
    }

    /// All solutions of the query with `<v, H> = d` exactly, in lexicographic
    /// order. Primitivity filtering happens on the merged result, not here.
    pub fn fiber(&self, d: u64) -> Vec<LatticeVector> {
        let mut rhs = Vec::with_capacity(1 + self.constraint_values.len());
        rhs.push(BigInt::from(d));
        rhs.extend(self.constraint_values.iter().cloned());
        let Some(v0) = self.system.solve(&rhs) else {
            return vec![];
        };
        let v0 = LatticeVector::new(v0);
        let v0_norm = self.space.norm(&v0).expect("rank checked at construction");
        match &self.form {
            None => {
                if v0_norm == self.query.target_norm && !v0.is_zero() {
                    vec![v0]
                } else {
                    vec![]
                }
            }
            Some(form) => {
                // <v0 + By, v0 + By> = target becomes (y - t)^T P (y - t) = R
                // with P = -B^T G B, P t = B^T G v0, R = v0^2 - target + t^T P t.
                let g: Vec<BigRational> = self
                    .kernel
                    .iter()
                    .map(|b| {
                        BigRational::from(self.space.inner_product(b, &v0).expect("dims checked"))
                    })
                    .collect();
                let t = form.solve(&g);
                let t_p_t: BigRational = t
                    .iter()
                    .zip(&g)
                    .map(|(ti, gi)| ti * gi)
                    .fold(BigRational::zero(), |a, b| a + b);
                let r = BigRational::from(&v0_norm - &self.query.target_norm) + t_p_t;
                if r.is_negative() {
                    return vec![];
                }
                let mut out: Vec<LatticeVector> = form
                    .enumerate_exact(&t, &r)
                    .into_iter()
                    .map(|y| {
                        let mut v = v0.clone();
                        for (yi, b) in y.iter().zip(&self.kernel) {
                            v = v.add(&b.scale(yi));
                        }
                        v
                    })
                    .filter(|v| !v.is_zero())
                    .collect();
                out.sort();
                out
            }
        }
    }

    /// Runs every fiber in order and applies the primitivity filter.
    pub fn run(&self) -> Vec<LatticeVector> {
        let fibers: Vec<Vec<LatticeVector>> =
            (0..=self.query.max_degree).map(|d| self.fiber(d)).collect();
        self.merge(fibers)
    }

    /// Deterministic merge of per-degree fibers (degree-major order), with
    /// the primitivity filter applied when requested. `fibers[i]` must be the
    /// output of `fiber(i)` for `i = 0..=max_degree`.
    pub fn merge(&self, fibers: Vec<Vec<LatticeVector>>) -> Vec<LatticeVector> {
        let mut all: Vec<LatticeVector> = fibers.into_iter().flatten().collect();
        if self.query.primitive_only {
            // divide by the content, deduplicate, and keep whatever still
            // satisfies the original query exactly
            let mut seen: Vec<LatticeVector> = Vec::new();
            for v in all {
                let p = v.primitive();
                if seen.contains(&p) {
                    continue;
                }
                if self.space.norm(&p).expect("dims") != self.query.target_norm {
                    continue;
                }
                if !self
                    .query
                    .constraints
                    .iter()
                    .zip(&self.constraint_values)
                    .all(|((c, _), k)| &self.space.inner_product(&p, c).expect("dims") == k)
                {
                    continue;
                }
                seen.push(p);
            }
            all = seen;
            // primitivization changes degrees, so restore degree-major order
            all.sort_by_key(|v| (matrix::dot(&self.gram_marking, v.coords()), v.clone()));
        }
        all
    }
}

/// All classes matching the query, fibered over the degree `d = <v, H>`,
/// exhaustive within the inclusive bound, in degree-major lexicographic
/// order.
pub fn classes_of_norm(
    marked: &MarkedLattice,
    query: &ClassQuery,
) -> Result<Vec<LatticeVector>, EnumerationError> {
    Ok(ClassSearch::new(marked, query)?.run())
}

/// Norm `-2` classes up to the degree bound. Roots pairing positively with
/// the marking land in `roots`; roots orthogonal to the marking mean the
/// marking lies on a mirror and are reported separately so chamber-walk
/// callers can reject the marking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSet {
    pub roots: Vec<LatticeVector>,
    pub walls_through_marking: Vec<LatticeVector>,
}

impl RootSet {
    pub fn marking_is_interior(&self) -> bool {
        self.walls_through_marking.is_empty()
    }
}

pub fn root_set(marked: &MarkedLattice, max_degree: u64) -> Result<RootSet, EnumerationError> {
    let classes = classes_of_norm(marked, &ClassQuery::new(-2, max_degree))?;
    let mut roots = Vec::new();
    let mut walls = Vec::new();
    for r in classes {
        let d = marked.degree(&r)?;
        if d.is_zero() {
            walls.push(r);
        } else {
            debug_assert!(d.is_positive());
            roots.push(r);
        }
    }
    Ok(RootSet {
        roots,
        walls_through_marking: walls,
    })
}

/// `floor(a + sqrt(r))` for rationals with `r >= 0`, exactly.
fn floor_plus_sqrt(a: &BigRational, r: &BigRational) -> BigInt {
    debug_assert!(!r.is_negative());
    let ad = a.denom();
    let an = a.numer();
    let rn = r.numer();
    let rd = r.denom();
    // a + sqrt(r) = (an*rd + sqrt(ad^2 * rn * rd)) / (ad * rd)
    let inner: BigInt = ad * ad * rn * rd;
    let num = an * rd + inner.sqrt();
    num.div_floor(&(ad * rd))
}

/// `ceil(a - sqrt(r))` for rationals with `r >= 0`, exactly.
fn ceil_minus_sqrt(a: &BigRational, r: &BigRational) -> BigInt {
    -floor_plus_sqrt(&-a, r)
}

/// LDL^T data of a positive definite rational quadratic form:
/// `Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`.
pub struct QuadForm {
    dim: usize,
    d: Vec<BigRational>,
    u: Vec<Vec<BigRational>>, // u[i][j] stored for j > i
}

impl QuadForm {
    /// `None` unless the (symmetric integer) matrix is positive definite.
    pub fn new(p: &Matrix) -> Option<QuadForm> {
        let n = p.rows();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(p.at(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut d = Vec::with_capacity(n);
        let mut u = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let di = m[i][i].clone();
            if !di.is_positive() {
                return None;
            }
            for j in i + 1..n {
                u[i][j] = &m[i][j] / &di;
            }
            for r in i + 1..n {
                for c in r..n {
                    let sub = &di * &u[i][r] * &u[i][c];
                    m[r][c] -= sub;
                }
            }
            d.push(di);
        }
        Some(QuadForm { dim: n, d, u })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Solves `P t = g` using the decomposition.
    pub fn solve(&self, g: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim;
        assert_eq!(g.len(), n);
        // L^T w = g (unit lower), then L t = D^{-1} w (unit upper)
        let mut w = vec![BigRational::zero(); n];
        for i in 0..n {
            let mut acc = g[i].clone();
            for j in 0..i {
                acc -= &self.u[j][i] * &w[j];
            }
            w[i] = acc;
        }
        let mut t = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &w[i] / &self.d[i];
            for j in i + 1..n {
                acc -= &self.u[i][j] * &t[j];
            }
            t[i] = acc;
        }
        t
    }

    /// All integer points `y` with `Q(y - t) = value`, exactly.
    pub fn enumerate_exact(&self, t: &[BigRational], value: &BigRational) -> Vec<Vec<BigInt>> {
        assert_eq!(t.len(), self.dim);
        if value.is_negative() {
            return vec![];
        }
        let mut out = Vec::new();
        let mut z = vec![BigRational::zero(); self.dim];
        self.descend(t, value, value, self.dim, &mut z, &mut out);
        out
    }

    /// Chooses coordinates from the last index down; `budget` is what is left
    /// of `value` after the outer levels.
    fn descend(
        &self,
        t: &[BigRational],
        value: &BigRational,
        budget: &BigRational,
        level: usize,
        z: &mut Vec<BigRational>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if level == 0 {
            if budget.is_zero() {
                let y: Vec<BigInt> = (0..self.dim)
                    .map(|i| {
                        let yi = &z[i] + &t[i];
                        debug_assert!(yi.is_integer());
                        yi.to_integer()
                    })
                    .collect();
                out.push(y);
            }
            return;
        }
        let i = level - 1;
        // c_i = sum_{j > i} u_ij z_j
        let mut c = BigRational::zero();
        for j in i + 1..self.dim {
            c += &self.u[i][j] * &z[j];
        }
        // d_i (z_i + c)^2 <= budget, z_i = y_i - t_i
        let radius = budget / &self.d[i];
        let center = &t[i] - &c; // y_i ranges around this
        let lo = ceil_minus_sqrt(&center, &radius);
        let hi = floor_plus_sqrt(&center, &radius);
        let mut y = lo;
        while y <= hi {
            let zi = BigRational::from(y.clone()) - &t[i];
            let term = &self.d[i] * (&zi + &c) * (&zi + &c);
            let remaining = budget - &term;
            if !remaining.is_negative() {
                z[i] = zi;
                self.descend(t, value, &remaining, i, z, out);
            }
            y += BigInt::one();
        }
        z[i] = BigRational::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn k3_rank3() -> MarkedLattice {
        let space = LatticeSpace::from_i64(&[&[0, 1, 1], &[1, -2, 0], &[1, 0, -2]]).unwrap();
        MarkedLattice::new(space, lv(&[3, 1, 1])).unwrap()
    }

    fn blowup(n: usize) -> MarkedLattice {
        let rank = n + 1;
        let gram: Vec<Vec<BigInt>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        BigInt::from(if i != j {
                            0
                        } else if i == 0 {
                            1
                        } else {
                            -1
                        })
                    })
                    .collect()
            })
            .collect();
        let space = LatticeSpace::new(gram).unwrap();
        let mut marking = vec![3i64];
        marking.extend(core::iter::repeat(-1).take(n));
        MarkedLattice::new(space, lv(&marking)).unwrap()
    }

    fn anticanonical(n: usize) -> LatticeVector {
        let mut k = vec![-3i64];
        k.extend(core::iter::repeat(1).take(n));
        lv(&k)
    }

    /// Independent oracle: scan the full coefficient box.
    fn brute_force(
        marked: &MarkedLattice,
        query: &ClassQuery,
        box_bound: i64,
    ) -> Vec<LatticeVector> {
        let rank = marked.rank();
        let mut out = Vec::new();
        let mut coords = vec![-box_bound; rank];
        'outer: loop {
            let v = LatticeVector::new(coords.iter().map(|&c| BigInt::from(c)).collect());
            let norm = marked.space().norm(&v).unwrap();
            let deg = marked.degree(&v).unwrap();
            if !v.is_zero()
                && norm == query.target_norm
                && !deg.is_negative()
                && deg <= BigInt::from(query.max_degree)
                && query
                    .constraints
                    .iter()
                    .all(|(c, k)| &marked.space().inner_product(&v, c).unwrap() == k)
            {
                out.push(v);
            }
            for i in 0..rank {
                coords[i] += 1;
                if coords[i] <= box_bound {
                    continue 'outer;
                }
                coords[i] = -box_bound;
            }
            break;
        }
        out.sort();
        out
    }

    #[test]
    fn short_vectors_rank_one() {
        let l = LatticeSpace::from_i64(&[&[-2]]).unwrap();
        let vs = short_vectors_definite(&l, &BigInt::from(-2)).unwrap();
        assert_eq!(vs, alloc::vec![lv(&[-1]), lv(&[1])]);
    }

    #[test]
    fn short_vectors_diag() {
        let l = LatticeSpace::from_i64(&[&[-1, 0], &[0, -1]]).unwrap();
        let vs = short_vectors_definite(&l, &BigInt::from(-1)).unwrap();
        assert_eq!(vs.len(), 4);
        assert!(vs.contains(&lv(&[0, 1])) && vs.contains(&lv(&[-1, 0])));
    }

    #[test]
    fn short_vectors_norm_four() {
        // 2a^2 + 2b^2 = 4 has the 4 solutions (+-1, +-1)
        let l = LatticeSpace::from_i64(&[&[-2, 0], &[0, -2]]).unwrap();
        let vs = short_vectors_definite(&l, &BigInt::from(-4)).unwrap();
        assert_eq!(vs.len(), 4);
        for v in &vs {
            assert_eq!(l.norm(v).unwrap(), BigInt::from(-4));
        }
    }

    #[test]
    fn short_vectors_rejects_indefinite() {
        let l = LatticeSpace::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        assert!(matches!(
            short_vectors_definite(&l, &BigInt::from(-2)),
            Err(EnumerationError::NotNegativeDefinite)
        ));
        let neg = LatticeSpace::from_i64(&[&[-2]]).unwrap();
        assert!(matches!(
            short_vectors_definite(&neg, &BigInt::from(2)),
            Err(EnumerationError::TargetNotNegative { .. })
        ));
    }

    #[test]
    fn marking_must_be_positive() {
        let space = LatticeSpace::from_i64(&[&[1, 0], &[0, -1]]).unwrap();
        assert!(MarkedLattice::new(space, lv(&[0, 1])).is_err());
    }

    #[test]
    fn twenty_seven_lines() {
        let m = blowup(6);
        let query = ClassQuery::new(-1, 9).with_constraint(anticanonical(6), -1);
        let classes = classes_of_norm(&m, &query).unwrap();
        assert_eq!(classes.len(), 27);
        // box bound 2 suffices: norm -1 and degree 1 force |a| <= 2, and
        // |c_i|^2 <= a^2 + 1 <= 5
        let oracle = brute_force(&m, &query, 2);
        let mut sorted = classes.clone();
        sorted.sort();
        assert_eq!(sorted, oracle);
    }

    #[test]
    fn e6_roots_both_signs() {
        let m = blowup(6);
        let query = ClassQuery::new(-2, 3).with_constraint(anticanonical(6), 0);
        let classes = classes_of_norm(&m, &query).unwrap();
        assert_eq!(classes.len(), 72);
        let oracle = brute_force(&m, &query, 3);
        let mut sorted = classes.clone();
        sorted.sort();
        assert_eq!(sorted, oracle);
    }

    #[test]
    fn isotropic_primitive_classes() {
        let m = k3_rank3();
        let query = ClassQuery::new(0, 2).primitive();
        let classes = classes_of_norm(&m, &query).unwrap();
        assert!(classes.contains(&lv(&[1, 0, 0])));
        assert_eq!(m.degree(&lv(&[1, 0, 0])).unwrap(), BigInt::from(2));
        for v in &classes {
            assert!(v.is_primitive());
            assert!(v.coords().iter().any(|c| !c.is_zero()));
        }
    }

    #[test]
    fn exhaustive_on_rank_3_vs_oracle() {
        let m = k3_rank3();
        for (norm, bound) in [(-2i64, 6u64), (0, 4), (2, 4)] {
            let query = ClassQuery::new(norm, bound);
            let classes = classes_of_norm(&m, &query).unwrap();
            // box 12 is generous for these small degrees on this gram
            let oracle = brute_force(&m, &query, 12);
            assert_eq!(classes.len(), oracle.len(), "norm {norm} bound {bound}");
            let mut sorted = classes;
            sorted.sort();
            assert_eq!(sorted, oracle);
        }
    }

    #[test]
    fn degree_major_order_and_monotonicity() {
        let m = k3_rank3();
        let small = classes_of_norm(&m, &ClassQuery::new(-2, 4)).unwrap();
        let large = classes_of_norm(&m, &ClassQuery::new(-2, 9)).unwrap();
        assert!(small.len() < large.len());
        assert_eq!(&large[..small.len()], &small[..]);
        // degrees are nondecreasing along the output
        let degs: Vec<BigInt> = large.iter().map(|v| m.degree(v).unwrap()).collect();
        assert!(degs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn root_set_k3() {
        let m = k3_rank3();
        let rs = root_set(&m, 1).unwrap();
        assert!(rs.marking_is_interior());
        assert!(rs.roots.contains(&lv(&[0, 1, 0])));
        assert!(rs.roots.contains(&lv(&[0, 0, 1])));
        for r in &rs.roots {
            assert!(m.degree(r).unwrap().is_positive());
            assert_eq!(m.space().norm(r).unwrap(), BigInt::from(-2));
        }
        // (4, 2, -1) is a root of degree 9: present at bound 9, absent at 6
        let rs9 = root_set(&m, 9).unwrap();
        assert!(rs9.roots.contains(&lv(&[4, 2, -1])));
        let rs6 = root_set(&m, 6).unwrap();
        assert!(!rs6.roots.contains(&lv(&[4, 2, -1])));
    }

    #[test]
    fn root_set_flags_marking_on_mirror() {
        // in the hyperbolic plane with H = (1,1), the only roots +-(1,-1)
        // are orthogonal to H
        let space = LatticeSpace::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let m = MarkedLattice::new(space, lv(&[1, 1])).unwrap();
        let rs = root_set(&m, 4).unwrap();
        assert!(!rs.marking_is_interior());
        assert_eq!(rs.roots.len(), 0);
        assert_eq!(rs.walls_through_marking.len(), 2);

        // with H = (2,1) the marking is interior and (-1,1) has degree 1
        let space = LatticeSpace::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let m = MarkedLattice::new(space, lv(&[2, 1])).unwrap();
        let rs = root_set(&m, 10).unwrap();
        assert!(rs.marking_is_interior());
        assert_eq!(rs.roots, alloc::vec![lv(&[-1, 1])]);
    }

    #[test]
    fn del_pezzo_minus_one_counts() {
        // frozen counts, re-derivable with the box-scan oracle below
        for (n, expected) in [(7usize, 56usize), (8, 240)] {
            let m = blowup(n);
            let q = ClassQuery::new(-1, 9).with_constraint(anticanonical(n), -1);
            let classes = classes_of_norm(&m, &q).unwrap();
            assert_eq!(classes.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn del_pezzo_box_scan_oracle() {
        // Independent i64 scan for (a; c) with a^2 - sum c^2 = -1 and
        // 3a + sum c = 1 (the (-1)-class conditions in the blow-up basis,
        // where class coordinates are (a, c_1..c_n) with c = -multiplicity).
        // Box justification: substituting sum c = 1 - 3a into Cauchy-Schwarz
        // over the remaining coordinates gives
        //   (n+1) c_i^2 - 2(1-3a) c_i + ((9-n)a^2 - 6a + 1 - n) <= 0,
        // whose integer solutions need -1 <= a <= 7 and |c_i| <= 3 for
        // n = 7, 8.
        for (n, expected) in [(7usize, 56usize), (8, 240)] {
            let mut count = 0usize;
            let mut c = alloc::vec![-3i64; n];
            for a in -1i64..=7 {
                c.iter_mut().for_each(|x| *x = -3);
                'odometer: loop {
                    let sum: i64 = c.iter().sum();
                    if 3 * a + sum == 1 {
                        let sum_sq: i64 = c.iter().map(|x| x * x).sum();
                        if a * a - sum_sq == -1 {
                            count += 1;
                        }
                    }
                    for slot in c.iter_mut() {
                        *slot += 1;
                        if *slot <= 3 {
                            continue 'odometer;
                        }
                        *slot = -3;
                    }
                    break;
                }
            }
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn root_growth_on_k3() {
        // root degrees on this lattice turn out to be odd squares
        // (1, 9, 25, 49, ...), so sample bounds straddling them
        let m = k3_rank3();
        let counts: Vec<usize> = [1u64, 9, 25, 49]
            .iter()
            .map(|&b| root_set(&m, b).unwrap().roots.len())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
        assert_eq!(counts[0], 2);
    }
}
