//! Positive-cone membership, nef tests against curve classes, the
//! reflection-group chamber walk, and exact dual-cone / extremal-ray
//! computation for rational polyhedral cones.
//!
//! The duality pairing is the lattice form itself (divisor and curve classes
//! share one space on a surface). Dual cones are computed by the double
//! description method over exact integers with primitive normalization of
//! every intermediate ray, so ray counts are certificates.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enumeration::MarkedLattice;
use crate::lattice::{LatticeError, LatticeSpace, LatticeVector};
use crate::matrix::{self, Matrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConeError {
    Lattice(LatticeError),
    ZeroGenerator,
    AmbientMismatch { expected: usize, got: usize },
    OutsidePositiveCone { vector: LatticeVector },
    RootNotPositiveOnMarking { root: LatticeVector },
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::Lattice(e) => write!(f, "{e}"),
            ConeError::ZeroGenerator => write!(f, "cone generators must be nonzero"),
            ConeError::AmbientMismatch { expected, got } => {
                write!(f, "generator has length {got}, ambient rank is {expected}")
            }
            ConeError::OutsidePositiveCone { vector } => {
                write!(f, "vector {vector} is not in the open positive cone")
            }
            ConeError::RootNotPositiveOnMarking { root } => {
                write!(
                    f,
                    "root {root} does not pair positively with the marking (marking on or beyond a mirror)"
                )
            }
        }
    }
}

impl core::error::Error for ConeError {}

impl From<LatticeError> for ConeError {
    fn from(e: LatticeError) -> Self {
        ConeError::Lattice(e)
    }
}

/// A rational polyhedral cone given by primitive integral ray representatives
/// in a lattice; deduplicated up to positive scaling, order preserved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCone {
    ambient: LatticeSpace,
    generators: Vec<LatticeVector>,
}

impl RationalCone {
    pub fn new(ambient: LatticeSpace, generators: Vec<LatticeVector>) -> Result<Self, ConeError> {
        let mut primitive: Vec<LatticeVector> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != ambient.rank() {
                return Err(ConeError::AmbientMismatch {
                    expected: ambient.rank(),
                    got: g.len(),
                });
            }
            if g.is_zero() {
                return Err(ConeError::ZeroGenerator);
            }
            let p = g.primitive();
            if !primitive.contains(&p) {
                primitive.push(p);
            }
        }
        Ok(RationalCone {
            ambient,
            generators: primitive,
        })
    }

    pub fn ambient(&self) -> &LatticeSpace {
        &self.ambient
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Exact membership: `x` is in the cone iff it pairs `>= 0` with every
    /// generator of the dual cone.
    pub fn contains(&self, x: &LatticeVector) -> Result<bool, ConeError> {
        let dual = dual_cone(self)?;
        for w in dual.generators() {
            if self.ambient.inner_product(w, x)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `x^2 >= 0 and <H, x> >= 0` (closed), or with strict inequalities (open).
pub fn in_positive_cone(
    marked: &MarkedLattice,
    x: &LatticeVector,
    strict: bool,
) -> Result<bool, ConeError> {
    let norm = marked.space().norm(x)?;
    let deg = marked.space().inner_product(x, marked.marking())?;
    Ok(if strict {
        norm.is_positive() && deg.is_positive()
    } else {
        !norm.is_negative() && !deg.is_negative()
    })
}

/// Outcome of a nef test: either nef against all supplied classes, or the
/// first violating class in supplied order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NefCheck {
    Nef,
    Violated {
        class: LatticeVector,
        pairing: BigInt,
    },
}

impl NefCheck {
    pub fn is_nef(&self) -> bool {
        matches!(self, NefCheck::Nef)
    }
}

/// `<x, C> >= 0` for every supplied class `C`?
pub fn is_nef_against(
    x: &LatticeVector,
    curve_classes: &[LatticeVector],
    space: &LatticeSpace,
) -> Result<NefCheck, ConeError> {
    for c in curve_classes {
        let pairing = space.inner_product(x, c)?;
        if pairing.is_negative() {
            return Ok(NefCheck::Violated {
                class: c.clone(),
                pairing,
            });
        }
    }
    Ok(NefCheck::Nef)
}

/// Root-selection rule of the chamber walk. The final image is independent
/// of the policy; only the recorded word can differ.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WalkPolicy {
    /// Among roots pairing negatively with the image, the most negative
    /// pairing wins, ties broken by lexicographically smallest root.
    #[default]
    MostNegative,
    /// First root in list order with a negative pairing.
    FirstListed,
}

/// A chamber walk outcome: the image in the chamber cut out by the supplied
/// roots, and the word of reflections applied (in application order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberWalkResult {
    pub image: LatticeVector,
    pub word: Vec<LatticeVector>,
}

impl ChamberWalkResult {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Repeatedly reflects `x` in supplied roots pairing negatively with it until
/// none does. Each step strictly decreases the integer `<image, H> > 0`, so
/// the walk terminates; the final image pairs `>= 0` with every supplied
/// root and has the same norm as `x`.
///
/// Soundness is relative to the supplied root set: the image is "nef against
/// these roots", nothing more.
pub fn chamber_walk(
    marked: &MarkedLattice,
    roots: &[LatticeVector],
    x: &LatticeVector,
) -> Result<ChamberWalkResult, ConeError> {
    chamber_walk_with_policy(marked, roots, x, WalkPolicy::MostNegative)
}

pub fn chamber_walk_with_policy(
    marked: &MarkedLattice,
    roots: &[LatticeVector],
    x: &LatticeVector,
    policy: WalkPolicy,
) -> Result<ChamberWalkResult, ConeError> {
    let space = marked.space();
    if !in_positive_cone(marked, x, true)? {
        return Err(ConeError::OutsidePositiveCone { vector: x.clone() });
    }
    let minus_two = BigInt::from(-2);
    let mut functionals: Vec<Vec<BigInt>> = Vec::with_capacity(roots.len());
    for r in roots {
        let norm = space.norm(r)?;
        if norm != minus_two {
            return Err(ConeError::Lattice(LatticeError::NotARoot { norm }));
        }
        if !space.inner_product(r, marked.marking())?.is_positive() {
            return Err(ConeError::RootNotPositiveOnMarking { root: r.clone() });
        }
        functionals.push(space.gram_times(r)?);
    }
    let mut image = x.clone();
    let mut word = Vec::new();
    loop {
        let mut chosen: Option<(usize, BigInt)> = None;
        for (i, f) in functionals.iter().enumerate() {
            let pairing = matrix::dot(f, image.coords());
            if !pairing.is_negative() {
                continue;
            }
            match policy {
                WalkPolicy::FirstListed => {
                    chosen = Some((i, pairing));
                    break;
                }
                WalkPolicy::MostNegative => {
                    let better = match &chosen {
                        None => true,
                        Some((j, best)) => {
                            pairing < *best || (pairing == *best && roots[i] < roots[*j])
                        }
                    };
                    if better {
                        chosen = Some((i, pairing));
                    }
                }
            }
        }
        let Some((i, pairing)) = chosen else { break };
        image = image.add(&roots[i].scale(&pairing));
        word.push(roots[i].clone());
    }
    debug_assert_eq!(space.norm(&image).unwrap(), space.norm(x).unwrap());
    Ok(ChamberWalkResult { image, word })
}

/// V-representation of a dual cone: lineality space basis plus extreme rays
/// modulo lineality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualDescription {
    pub lineality: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

/// `{y : <g, y> >= 0 for all generators g}`, by incremental double
/// description over exact integers.
pub fn dual_description(cone: &RationalCone) -> Result<DualDescription, ConeError> {
    let space = cone.ambient();
    let mut constraints: Vec<Vec<BigInt>> = Vec::with_capacity(cone.generators().len());
    for g in cone.generators() {
        constraints.push(space.gram_times(g)?);
    }
    Ok(dd_run(space.rank(), &constraints))
}

/// The dual cone as a `RationalCone`: extreme rays plus a `+-` pair for each
/// lineality basis vector, in sorted order.
pub fn dual_cone(cone: &RationalCone) -> Result<RationalCone, ConeError> {
    let dd = dual_description(cone)?;
    let mut gens = dd.rays;
    for l in dd.lineality {
        gens.push(l.neg());
        gens.push(l);
    }
    gens.sort();
    RationalCone::new(cone.ambient().clone(), gens)
}

/// Extremal rays of a pointed cone, or an explicit lineality description
/// when the cone contains a line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtremalRays {
    /// The unique minimal generating set, primitive, sorted.
    Pointed(Vec<LatticeVector>),
    /// The cone contains a line; a basis of its lineality space.
    NonPointed { lineality: Vec<LatticeVector> },
}

pub fn extremal_rays(cone: &RationalCone) -> Result<ExtremalRays, ConeError> {
    let space = cone.ambient();
    let dd = dual_description(cone)?;
    let mut dual_gens: Vec<LatticeVector> = dd.rays.clone();
    for l in &dd.lineality {
        dual_gens.push(l.clone());
        dual_gens.push(l.neg());
    }
    // lineality of the cone = everything pairing to 0 with the whole dual
    let pairing_rows: Vec<Vec<BigInt>> = dual_gens
        .iter()
        .map(|w| space.gram_times(w).expect("rank checked"))
        .collect();
    let lineality = Matrix::from_rows(pairing_rows).integer_kernel();
    if !lineality.is_empty() {
        return Ok(ExtremalRays::NonPointed {
            lineality: lineality.into_iter().map(LatticeVector::new).collect(),
        });
    }
    // pointed: the double dual recovers exactly the extreme rays
    let dual = RationalCone::new(space.clone(), dual_gens)?;
    let back = dual_description(&dual)?;
    debug_assert!(back.lineality.is_empty());
    let mut rays = back.rays;
    rays.sort();
    Ok(ExtremalRays::Pointed(rays))
}

// ---------------------------------------------------------------------------
// double description internals

#[derive(Clone)]
struct DdRay {
    v: Vec<BigInt>,
    tight: TightSet,
}

#[derive(Clone, PartialEq, Eq)]
struct TightSet {
    words: Vec<u64>,
}

impl TightSet {
    fn new(n_constraints: usize) -> Self {
        TightSet {
            words: vec![0; n_constraints.div_ceil(64)],
        }
    }

    fn full_prefix(n_constraints: usize, upto: usize) -> Self {
        let mut t = TightSet::new(n_constraints);
        for k in 0..upto {
            t.set(k);
        }
        t
    }

    fn set(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    fn intersect(&self, other: &TightSet) -> TightSet {
        TightSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn contains_all(&self, other: &TightSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }
}

fn dd_run(rank: usize, constraints: &[Vec<BigInt>]) -> DualDescription {
    let total = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| BigInt::from((i == j) as i64))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        let values: Vec<BigInt> = lineality.iter().map(|l| matrix::dot(a, l)).collect();
        if let Some(pos) = values.iter().position(|v| !v.is_zero()) {
            // reduce the lineality space against this constraint
            let mut pivot = lineality.remove(pos);
            let mut pivot_value = values[pos].clone();
            if pivot_value.is_negative() {
                pivot = pivot.iter().map(|c| -c).collect();
                pivot_value = -pivot_value;
            }
            for l in lineality.iter_mut() {
                let lv = matrix::dot(a, l);
                if !lv.is_zero() {
                    let combo: Vec<BigInt> = l
                        .iter()
                        .zip(&pivot)
                        .map(|(li, pi)| li * &pivot_value - &lv * pi)
                        .collect();
                    *l = matrix::primitive_part(&combo);
                }
            }
            for r in rays.iter_mut() {
                let rv = matrix::dot(a, &r.v);
                if !rv.is_zero() {
                    let combo: Vec<BigInt> = r
                        .v
                        .iter()
                        .zip(&pivot)
                        .map(|(ri, pi)| ri * &pivot_value - &rv * pi)
                        .collect();
                    r.v = matrix::primitive_part(&combo);
                }
                r.tight.set(k);
            }
            // the pivot itself becomes a ray, tight on every earlier
            // constraint (it came from the old lineality space)
            rays.push(DdRay {
                v: matrix::primitive_part(&pivot),
                tight: TightSet::full_prefix(total, k),
            });
            continue;
        }

        // lineality untouched; split the rays by sign
        let ray_values: Vec<BigInt> = rays.iter().map(|r| matrix::dot(a, &r.v)).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for (r, v) in rays.iter().zip(&ray_values) {
            if v.is_zero() {
                let mut r2 = r.clone();
                r2.tight.set(k);
                next.push(r2);
            } else if v.is_positive() {
                next.push(r.clone());
            }
        }
        for (i, (p, pv)) in rays.iter().zip(&ray_values).enumerate() {
            if !pv.is_positive() {
                continue;
            }
            for (j, (n, nv)) in rays.iter().zip(&ray_values).enumerate() {
                if !nv.is_negative() {
                    continue;
                }
                // adjacency: no third ray is tight everywhere p and n both are
                let common = p.tight.intersect(&n.tight);
                let adjacent = rays.iter().enumerate().all(|(m, w)| {
                    m == i || m == j || !w.tight.contains_all(&common)
                });
                if !adjacent {
                    continue;
                }
                let combo: Vec<BigInt> = n
                    .v
                    .iter()
                    .zip(&p.v)
                    .map(|(ni, pi)| ni * pv - nv * pi)
                    .collect();
                let v = matrix::primitive_part(&combo);
                let mut tight = common.clone();
                tight.set(k);
                if next.iter().all(|r| r.v != v) {
                    next.push(DdRay { v, tight });
                }
            }
        }
        rays = next;
    }

    let mut lin: Vec<LatticeVector> = lineality
        .into_iter()
        .map(|l| LatticeVector::new(canonical_sign(matrix::primitive_part(&l))))
        .collect();
    lin.sort();
    let mut out_rays: Vec<LatticeVector> = rays.into_iter().map(|r| LatticeVector::new(r.v)).collect();
    out_rays.sort();
    out_rays.dedup();
    DualDescription {
        lineality: lin,
        rays: out_rays,
    }
}

fn canonical_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(first) if first.is_negative() => v.iter().map(|c| -c).collect(),
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::root_set;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn k3_rank3() -> MarkedLattice {
        let space = LatticeSpace::from_i64(&[&[0, 1, 1], &[1, -2, 0], &[1, 0, -2]]).unwrap();
        MarkedLattice::new(space, lv(&[3, 1, 1])).unwrap()
    }

    fn blowup1_space() -> LatticeSpace {
        LatticeSpace::from_i64(&[&[1, 0], &[0, -1]]).unwrap()
    }

    #[test]
    fn positive_cone_membership() {
        let m = k3_rank3();
        let p = lv(&[1, 0, 0]);
        assert!(in_positive_cone(&m, &p, false).unwrap());
        assert!(!in_positive_cone(&m, &p, true).unwrap()); // boundary class
        assert!(in_positive_cone(&m, &lv(&[3, 1, 1]), true).unwrap());
        assert!(!in_positive_cone(&m, &lv(&[-3, -1, -1]), false).unwrap());
    }

    #[test]
    fn nef_checks() {
        let m = k3_rank3();
        let space = m.space();
        let p = lv(&[1, 0, 0]);
        let walls = [lv(&[0, 1, 0]), lv(&[0, 0, 1])];
        assert!(is_nef_against(&p, &walls, space).unwrap().is_nef());
        let r = lv(&[0, 1, 0]);
        match is_nef_against(&r, &[r.clone()], space).unwrap() {
            NefCheck::Violated { class, pairing } => {
                assert_eq!(class, r);
                assert_eq!(pairing, BigInt::from(-2));
            }
            NefCheck::Nef => panic!("a root is never nef against itself"),
        }
        assert!(is_nef_against(&r, &[], space).unwrap().is_nef());
    }

    #[test]
    fn walk_single_reflection() {
        let m = k3_rank3();
        let roots = [lv(&[0, 1, 0]), lv(&[0, 0, 1])];
        let result = chamber_walk(&m, &roots, &lv(&[3, 2, 1])).unwrap();
        assert_eq!(result.image, lv(&[3, 1, 1]));
        assert_eq!(result.word, alloc::vec![lv(&[0, 1, 0])]);
        assert_eq!(result.length(), 1);
    }

    #[test]
    fn walk_idempotent_in_chamber() {
        let m = k3_rank3();
        let roots = [lv(&[0, 1, 0]), lv(&[0, 0, 1])];
        let result = chamber_walk(&m, &roots, &lv(&[3, 1, 1])).unwrap();
        assert_eq!(result.image, lv(&[3, 1, 1]));
        assert!(result.word.is_empty());
    }

    #[test]
    fn walk_round_trip_and_policies() {
        let m = k3_rank3();
        let rs = root_set(&m, 9).unwrap();
        assert!(rs.marking_is_interior());
        let roots = rs.roots;
        let h = lv(&[3, 1, 1]);
        // push H out with a few reflections, then walk back
        let space = m.space();
        let mut x = h.clone();
        for r in [&roots[1], &roots[0], &roots[2]] {
            x = space.reflect_in_root(r, &x).unwrap();
        }
        assert_eq!(space.norm(&x).unwrap(), BigInt::from(8));
        let a = chamber_walk_with_policy(&m, &roots, &x, WalkPolicy::MostNegative).unwrap();
        let b = chamber_walk_with_policy(&m, &roots, &x, WalkPolicy::FirstListed).unwrap();
        assert_eq!(a.image, h);
        assert_eq!(b.image, a.image);
        // word replay reproduces the image and preserves norm stepwise
        let mut replay = x.clone();
        for r in &a.word {
            replay = space.reflect_in_root(r, &replay).unwrap();
            assert_eq!(space.norm(&replay).unwrap(), BigInt::from(8));
        }
        assert_eq!(replay, a.image);
    }

    #[test]
    fn walk_rejects_bad_input() {
        let m = k3_rank3();
        let roots = [lv(&[0, 1, 0])];
        // outside the open positive cone
        assert!(matches!(
            chamber_walk(&m, &roots, &lv(&[0, 1, 0])),
            Err(ConeError::OutsidePositiveCone { .. })
        ));
        // non-root in the root list
        assert!(matches!(
            chamber_walk(&m, &[lv(&[1, 0, 0])], &lv(&[3, 1, 1])),
            Err(ConeError::Lattice(LatticeError::NotARoot { .. }))
        ));
        // root pairing zero with the marking
        let space = LatticeSpace::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let m2 = MarkedLattice::new(space, lv(&[1, 1])).unwrap();
        assert!(matches!(
            chamber_walk(&m2, &[lv(&[1, -1])], &lv(&[1, 1])),
            Err(ConeError::RootNotPositiveOnMarking { .. })
        ));
    }

    #[test]
    fn dual_of_curve_cone_blowup1() {
        // cone{E, H - E} in the one-point blow-up; dual has rays H, H - E
        let cone =
            RationalCone::new(blowup1_space(), alloc::vec![lv(&[0, 1]), lv(&[1, -1])]).unwrap();
        let dual = dual_cone(&cone).unwrap();
        let mut expected = alloc::vec![lv(&[1, 0]), lv(&[1, -1])];
        expected.sort();
        assert_eq!(dual.generators(), &expected[..]);
    }

    #[test]
    fn dual_of_orthant() {
        let cone =
            RationalCone::new(blowup1_space(), alloc::vec![lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let dual = dual_cone(&cone).unwrap();
        assert_eq!(dual.generators().len(), 2);
        let mut expected = alloc::vec![lv(&[1, 0]), lv(&[0, -1])];
        expected.sort();
        assert_eq!(dual.generators(), &expected[..]);
    }

    #[test]
    fn dual_of_single_ray_is_half_plane() {
        let cone = RationalCone::new(blowup1_space(), alloc::vec![lv(&[1, 0])]).unwrap();
        let dd = dual_description(&cone).unwrap();
        assert_eq!(dd.lineality.len(), 1);
        assert_eq!(dd.rays.len(), 1);
        let dual = dual_cone(&cone).unwrap();
        assert_eq!(dual.generators().len(), 3); // ray plus a +- lineality pair
    }

    #[test]
    fn extremal_rays_drop_midray() {
        // (1, 0) = ((0,1) + (1,-1)) / scaling is not extremal
        let cone = RationalCone::new(
            blowup1_space(),
            alloc::vec![lv(&[0, 1]), lv(&[1, -1]), lv(&[1, 0])],
        )
        .unwrap();
        match extremal_rays(&cone).unwrap() {
            ExtremalRays::Pointed(rays) => {
                let mut expected = alloc::vec![lv(&[0, 1]), lv(&[1, -1])];
                expected.sort();
                assert_eq!(rays, expected);
            }
            ExtremalRays::NonPointed { .. } => panic!("cone is pointed"),
        }
    }

    #[test]
    fn extremal_rays_two_generators() {
        let cone =
            RationalCone::new(blowup1_space(), alloc::vec![lv(&[2, 1]), lv(&[1, 2])]).unwrap();
        match extremal_rays(&cone).unwrap() {
            ExtremalRays::Pointed(rays) => assert_eq!(rays.len(), 2),
            _ => panic!("pointed"),
        }
    }

    #[test]
    fn non_pointed_cone_reports_lineality() {
        let cone = RationalCone::new(
            blowup1_space(),
            alloc::vec![lv(&[0, 1]), lv(&[0, -1]), lv(&[1, 0])],
        )
        .unwrap();
        match extremal_rays(&cone).unwrap() {
            ExtremalRays::NonPointed { lineality } => {
                assert_eq!(lineality.len(), 1);
                assert_eq!(lineality[0].primitive(), lineality[0]);
            }
            ExtremalRays::Pointed(_) => panic!("cone contains a line"),
        }
    }

    #[test]
    fn double_dual_is_identity_on_pointed_cones() {
        let k3 = k3_rank3().space().clone();
        let gens = alloc::vec![lv(&[1, 0, 0]), lv(&[2, 1, 0]), lv(&[2, 0, 1]), lv(&[3, 1, 1])];
        let cone = RationalCone::new(k3, gens).unwrap();
        let dd1 = dual_cone(&cone).unwrap();
        let dd2 = dual_cone(&dd1).unwrap();
        let expect = match extremal_rays(&cone).unwrap() {
            ExtremalRays::Pointed(r) => r,
            _ => panic!("pointed"),
        };
        let mut got = dd2.generators().to_vec();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn membership_via_dual() {
        let cone =
            RationalCone::new(blowup1_space(), alloc::vec![lv(&[0, 1]), lv(&[1, -1])]).unwrap();
        assert!(cone.contains(&lv(&[1, 0])).unwrap());
        assert!(cone.contains(&lv(&[2, -1])).unwrap());
        assert!(cone.contains(&lv(&[1, 2])).unwrap()); // = 3E + (H - E)
        assert!(!cone.contains(&lv(&[-1, 0])).unwrap());
        assert!(!cone.contains(&lv(&[0, -1])).unwrap());
    }

    #[test]
    fn zero_generator_rejected() {
        assert!(matches!(
            RationalCone::new(blowup1_space(), alloc::vec![lv(&[0, 0])]),
            Err(ConeError::ZeroGenerator)
        ));
    }
}
