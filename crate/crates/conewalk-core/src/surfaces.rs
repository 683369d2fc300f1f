//! Surface semantics on top of lattices: blow-up models of the plane,
//! canonical classes, Mordell-Weil ranks of elliptic fibrations, the
//! non-arithmeticity hypothesis checker, and a registry of worked examples
//! with their expected values.
//!
//! The checker consumes user-asserted geometric facts (irreducibility of
//! fibers, existence of a (-2)-curve): those are not derivable from the
//! lattice alone, so they enter as inputs and the verdict only states that
//! the hypotheses hold.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cones::{self, ConeError, ExtremalRays, NefCheck, RationalCone};
use crate::enumeration::{self, ClassQuery, EnumerationError, MarkedLattice};
use crate::lattice::{LatticeError, LatticeSpace, LatticeVector, Signature};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceError {
    Lattice(LatticeError),
    Enumeration(EnumerationError),
    Cone(ConeError),
    PicardRankTooSmall { rho: u32 },
    InvalidFiberProfile { value: u32 },
    InconsistentFiberData { rank: i64 },
    FiberClassNotIsotropic { norm: BigInt },
    FiberClassNotPositiveDegree { degree: BigInt },
    FibrationsProportional,
    EmptyDecomposition,
    UnknownExample { name: String },
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::Lattice(e) => write!(f, "{e}"),
            SurfaceError::Enumeration(e) => write!(f, "{e}"),
            SurfaceError::Cone(e) => write!(f, "{e}"),
            SurfaceError::PicardRankTooSmall { rho } => {
                write!(f, "picard rank {rho} is below 2, no elliptic fibration data")
            }
            SurfaceError::InvalidFiberProfile { value } => {
                write!(f, "fiber component count must be >= 1, got {value}")
            }
            SurfaceError::InconsistentFiberData { rank } => {
                write!(f, "fiber data yields negative Mordell-Weil rank {rank}")
            }
            SurfaceError::FiberClassNotIsotropic { norm } => {
                write!(f, "fiber class must be isotropic, has norm {norm}")
            }
            SurfaceError::FiberClassNotPositiveDegree { degree } => {
                write!(f, "fiber class must pair positively with the marking, got {degree}")
            }
            SurfaceError::FibrationsProportional => {
                write!(f, "fibration classes span the same ray, not two fibrations")
            }
            SurfaceError::EmptyDecomposition => {
                write!(f, "decomposition must have at least one part")
            }
            SurfaceError::UnknownExample { name } => {
                write!(
                    f,
                    "unknown example '{name}'; valid names: {}",
                    registry::NAMES.join(", ")
                )
            }
        }
    }
}

impl core::error::Error for SurfaceError {}

impl From<LatticeError> for SurfaceError {
    fn from(e: LatticeError) -> Self {
        SurfaceError::Lattice(e)
    }
}

impl From<EnumerationError> for SurfaceError {
    fn from(e: EnumerationError) -> Self {
        SurfaceError::Enumeration(e)
    }
}

impl From<ConeError> for SurfaceError {
    fn from(e: ConeError) -> Self {
        SurfaceError::Cone(e)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceKind {
    BlowupPlane(u32),
    K3,
    Abelian,
    Custom,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::BlowupPlane(n) => write!(f, "blow-up of the plane at {n} points"),
            SurfaceKind::K3 => write!(f, "K3"),
            SurfaceKind::Abelian => write!(f, "abelian"),
            SurfaceKind::Custom => write!(f, "custom"),
        }
    }
}

/// A lattice with surface semantics: marking, canonical class, model kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceModel {
    pub lattice: MarkedLattice,
    pub canonical_class: LatticeVector,
    pub kind: SurfaceKind,
    pub notes: String,
}

impl SurfaceModel {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn picard_rank(&self) -> u32 {
        self.rank() as u32
    }

    /// `K^2`.
    pub fn canonical_norm(&self) -> BigInt {
        self.lattice
            .space()
            .norm(&self.canonical_class)
            .expect("canonical class has ambient rank")
    }
}

/// Blow-up of the plane at `n` points: lattice `diag(1, -1^n)` in the basis
/// (hyperplane, exceptional classes), canonical class `(-3, 1, ..., 1)`.
/// Marked anticanonically while `(-K)^2 = 9 - n > 0`, otherwise with the
/// hyperplane-heavy interior vector `(a, -1, ..., -1)` for the least `a`
/// with `a^2 > n`, which keeps the degree filtration of `(-1)`-classes fine
/// (their degree is then `a_class + 1`).
pub fn blowup_plane(n: u32) -> SurfaceModel {
    let n = n as usize;
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
    let space = LatticeSpace::new(gram).expect("diagonal gram is nondegenerate");
    let mut k = vec![BigInt::from(-3)];
    k.extend(core::iter::repeat(BigInt::one()).take(n));
    let canonical_class = LatticeVector::new(k);
    let marking = if n <= 8 {
        canonical_class.neg()
    } else {
        let a = (1..).find(|a| a * a > n as i64).expect("some square exceeds n");
        let mut m = vec![BigInt::from(a)];
        m.extend(core::iter::repeat(BigInt::from(-1)).take(n));
        LatticeVector::new(m)
    };
    let lattice = MarkedLattice::new(space, marking).expect("marking has positive norm");
    SurfaceModel {
        lattice,
        canonical_class,
        kind: SurfaceKind::BlowupPlane(n as u32),
        notes: String::new(),
    }
}

/// Mordell-Weil rank of an elliptic fibration on a surface of Picard rank
/// `rho`: `rho - 2 - sum(m_v - 1)` over the reducible-fiber component counts.
pub fn mordell_weil_rank(rho: u32, profiles: &[u32]) -> Result<i64, SurfaceError> {
    if rho < 2 {
        return Err(SurfaceError::PicardRankTooSmall { rho });
    }
    let mut rank = rho as i64 - 2;
    for &m in profiles {
        if m < 1 {
            return Err(SurfaceError::InvalidFiberProfile { value: m });
        }
        rank -= m as i64 - 1;
    }
    if rank < 0 {
        return Err(SurfaceError::InconsistentFiberData { rank });
    }
    Ok(rank)
}

/// An elliptic fibration seen by the lattice: a primitive isotropic fiber
/// class of positive degree, component counts of its reducible fibers, and
/// an optional user-asserted Mordell-Weil rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FibrationData {
    fiber_class: LatticeVector,
    reducible_fiber_profiles: Vec<u32>,
    mw_rank_hint: Option<i64>,
}

impl FibrationData {
    pub fn new(
        marked: &MarkedLattice,
        fiber_class: LatticeVector,
        reducible_fiber_profiles: Vec<u32>,
        mw_rank_hint: Option<i64>,
    ) -> Result<Self, SurfaceError> {
        let norm = marked.space().norm(&fiber_class)?;
        if !norm.is_zero() {
            return Err(SurfaceError::FiberClassNotIsotropic { norm });
        }
        let degree = marked.space().inner_product(&fiber_class, marked.marking())?;
        if !degree.is_positive() {
            return Err(SurfaceError::FiberClassNotPositiveDegree { degree });
        }
        for &m in &reducible_fiber_profiles {
            if m < 1 {
                return Err(SurfaceError::InvalidFiberProfile { value: m });
            }
        }
        Ok(FibrationData {
            fiber_class,
            reducible_fiber_profiles,
            mw_rank_hint,
        })
    }

    pub fn fiber_class(&self) -> &LatticeVector {
        &self.fiber_class
    }

    pub fn reducible_fiber_profiles(&self) -> &[u32] {
        &self.reducible_fiber_profiles
    }

    pub fn has_no_reducible_fibers(&self) -> bool {
        self.reducible_fiber_profiles.iter().all(|&m| m == 1)
    }

    /// The hint when present, otherwise the rank formula.
    pub fn mordell_weil_rank(&self, rho: u32) -> Result<i64, SurfaceError> {
        match self.mw_rank_hint {
            Some(r) => Ok(r),
            None => mordell_weil_rank(rho, &self.reducible_fiber_profiles),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    CriteriaMet,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CriteriaMet => write!(f, "criteria_met"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of the four-hypothesis gate. `CriteriaMet` states exactly that
/// the hypotheses hold; it is not a proof object.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonArithReport {
    pub verdict: Verdict,
    pub checked_hypotheses: Vec<HypothesisCheck>,
    pub explanation: String,
}

impl NonArithReport {
    pub fn failed_hypotheses(&self) -> Vec<&'static str> {
        self.checked_hypotheses
            .iter()
            .filter(|h| !h.passed)
            .map(|h| h.name)
            .collect()
    }
}

pub const HYPOTHESIS_NAMES: [&str; 4] = [
    "picard_rank_at_least_4",
    "first_fibration_no_reducible_fibers",
    "second_fibration_mw_rank_positive",
    "has_minus_two_curve",
];

fn build_report(checks: Vec<HypothesisCheck>) -> NonArithReport {
    let all = checks.iter().all(|h| h.passed);
    let verdict = if all {
        Verdict::CriteriaMet
    } else {
        Verdict::Inconclusive
    };
    let explanation = if all {
        "all four lattice-level hypotheses hold".to_string()
    } else {
        let failed: Vec<&str> = checks.iter().filter(|h| !h.passed).map(|h| h.name).collect();
        format!("failed hypotheses: {}", failed.join(", "))
    };
    NonArithReport {
        verdict,
        checked_hypotheses: checks,
        explanation,
    }
}

/// Evaluates the four hypotheses on two distinct elliptic fibrations of a
/// marked lattice. Geometric facts beyond the lattice (irreducibility, the
/// existence of a `(-2)`-curve) are consumed as asserted inputs.
pub fn check_nonarithmetic(
    picard_rank: u32,
    fib1: &FibrationData,
    fib2: &FibrationData,
    has_minus2_curve: bool,
) -> Result<NonArithReport, SurfaceError> {
    if proportional(fib1.fiber_class(), fib2.fiber_class()) {
        return Err(SurfaceError::FibrationsProportional);
    }
    let mw2 = fib2.mordell_weil_rank(picard_rank)?;
    let checks = vec![
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[0],
            passed: picard_rank >= 4,
            detail: format!("picard rank = {picard_rank}"),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[1],
            passed: fib1.has_no_reducible_fibers(),
            detail: format!(
                "first fibration reducible-fiber profiles: {:?}",
                fib1.reducible_fiber_profiles()
            ),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[2],
            passed: mw2 > 0,
            detail: format!("second fibration Mordell-Weil rank = {mw2}"),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[3],
            passed: has_minus2_curve,
            detail: format!("(-2)-curve asserted: {has_minus2_curve}"),
        },
    ];
    Ok(build_report(checks))
}

/// Same gate fed directly with asserted booleans (the command-line surface).
pub fn check_nonarithmetic_asserted(
    picard_rank: u32,
    fib1_no_reducible_fibers: bool,
    fib2_mw_rank_positive: bool,
    has_minus2_curve: bool,
) -> NonArithReport {
    let checks = vec![
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[0],
            passed: picard_rank >= 4,
            detail: format!("picard rank = {picard_rank}"),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[1],
            passed: fib1_no_reducible_fibers,
            detail: format!("asserted: {fib1_no_reducible_fibers}"),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[2],
            passed: fib2_mw_rank_positive,
            detail: format!("asserted: {fib2_mw_rank_positive}"),
        },
        HypothesisCheck {
            name: HYPOTHESIS_NAMES[3],
            passed: has_minus2_curve,
            detail: format!("asserted: {has_minus2_curve}"),
        },
    ];
    build_report(checks)
}

fn proportional(a: &LatticeVector, b: &LatticeVector) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if a.at(i) * b.at(j) != a.at(j) * b.at(i) {
                return false;
            }
        }
    }
    true
}

/// Is `sum a_i v_i = -K` exactly, over the rationals?
pub fn verify_anticanonical_decomposition(
    model: &SurfaceModel,
    parts: &[(LatticeVector, BigRational)],
) -> Result<bool, SurfaceError> {
    if parts.is_empty() {
        return Err(SurfaceError::EmptyDecomposition);
    }
    let rank = model.rank();
    let mut acc = vec![BigRational::zero(); rank];
    for (v, a) in parts {
        if v.len() != rank {
            return Err(SurfaceError::Lattice(LatticeError::DimensionMismatch {
                expected: rank,
                got: v.len(),
            }));
        }
        for (slot, c) in acc.iter_mut().zip(v.coords()) {
            *slot += a * BigRational::from(c.clone());
        }
    }
    let anti = model.canonical_class.neg();
    Ok(acc
        .iter()
        .zip(anti.coords())
        .all(|(s, c)| s == &BigRational::from(c.clone())))
}

/// The dual Hesse configuration: 12 points and 9 lines, each line through 4
/// points, each point on 3 lines. Points 0..8 are the affine lines of slope
/// 0, 1, 2 over F_3 (index `3s + c`), points 9..11 the vertical lines; line
/// `(i, j)` collects the four pencil lines through the point `(i, j)`.
pub fn dual_hesse_incidence() -> [[usize; 4]; 9] {
    let mut lines = [[0usize; 4]; 9];
    for i in 0..3 {
        for j in 0..3 {
            let row = 3 * i + j;
            for s in 0..3 {
                lines[row][s] = 3 * s + (j + 3 - (s * i) % 3) % 3;
            }
            lines[row][3] = 9 + i;
        }
    }
    lines
}

/// Proper transforms of the 9 configuration lines on the 12-point blow-up:
/// `L = H - sum of the four exceptional classes on the line`.
pub fn hesse_line_classes(model: &SurfaceModel) -> Vec<LatticeVector> {
    debug_assert_eq!(model.rank(), 13);
    dual_hesse_incidence()
        .iter()
        .map(|line| {
            let mut coords = vec![BigInt::zero(); 13];
            coords[0] = BigInt::one();
            for &p in line {
                coords[1 + p] = BigInt::from(-1);
            }
            LatticeVector::new(coords)
        })
        .collect()
}

/// One expected value attached to a registry example, checkable at runtime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExpectedCheck {
    Determinant(BigInt),
    SignatureIs(Signature),
    Even(bool),
    CanonicalNormIs(BigInt),
    /// Count of classes with norm -1 and canonical degree -1.
    MinusOneClassCount { max_degree: u64, expected: usize },
    /// Count of norm -2 classes orthogonal to the canonical class.
    RootCountCanonicalZero { max_degree: u64, expected: usize },
    MordellWeilRank { profiles: Vec<u32>, expected: i64 },
    /// Exactly one primitive isotropic class within the degree bound is nef
    /// against all roots within the root bound.
    UniqueNefIsotropicRay {
        class_degree: u64,
        root_degree: u64,
        expected: LatticeVector,
    },
    /// Extremal rays of the cone on enumerated (-1)-classes and primitive
    /// isotropic classes, with the expected dual rays.
    CurveConeExtremalRays {
        isotropic_degree: u64,
        expected_rays: Vec<LatticeVector>,
        expected_dual: Vec<LatticeVector>,
    },
    /// The nine disjoint (-3)-lines summing to -3K, and the rank drop from
    /// contracting them.
    HesseLines,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckOutcome {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl CheckOutcome {
    fn compare<T: PartialEq + fmt::Display>(label: &str, expected: T, actual: T) -> Self {
        CheckOutcome {
            label: label.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed: expected == actual,
        }
    }
}

/// A worked example: the model plus its expected values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub model: SurfaceModel,
    pub checks: Vec<ExpectedCheck>,
}

pub fn run_expected_checks(entry: &RegistryEntry) -> Result<Vec<CheckOutcome>, SurfaceError> {
    let model = &entry.model;
    let marked = &model.lattice;
    let space = marked.space();
    let mut out = Vec::with_capacity(entry.checks.len());
    for check in &entry.checks {
        let outcome = match check {
            ExpectedCheck::Determinant(expected) => {
                CheckOutcome::compare("determinant", expected.clone(), space.determinant())
            }
            ExpectedCheck::SignatureIs(expected) => {
                CheckOutcome::compare("signature", *expected, space.signature())
            }
            ExpectedCheck::Even(expected) => {
                CheckOutcome::compare("even", *expected, space.is_even())
            }
            ExpectedCheck::CanonicalNormIs(expected) => {
                CheckOutcome::compare("K^2", expected.clone(), model.canonical_norm())
            }
            ExpectedCheck::MinusOneClassCount {
                max_degree,
                expected,
            } => {
                let query = ClassQuery::new(-1, *max_degree)
                    .with_constraint(model.canonical_class.clone(), -1);
                let classes = enumeration::classes_of_norm(marked, &query)?;
                CheckOutcome::compare("(-1)-classes", *expected, classes.len())
            }
            ExpectedCheck::RootCountCanonicalZero {
                max_degree,
                expected,
            } => {
                let query = ClassQuery::new(-2, *max_degree)
                    .with_constraint(model.canonical_class.clone(), 0);
                let classes = enumeration::classes_of_norm(marked, &query)?;
                CheckOutcome::compare("(-2)-classes orthogonal to K", *expected, classes.len())
            }
            ExpectedCheck::MordellWeilRank { profiles, expected } => {
                let rank = mordell_weil_rank(model.picard_rank(), profiles)?;
                CheckOutcome::compare("Mordell-Weil rank", *expected, rank)
            }
            ExpectedCheck::UniqueNefIsotropicRay {
                class_degree,
                root_degree,
                expected,
            } => {
                let isotropic = enumeration::classes_of_norm(
                    marked,
                    &ClassQuery::new(0, *class_degree).primitive(),
                )?;
                let roots = enumeration::root_set(marked, *root_degree)?;
                let nef: Vec<LatticeVector> = isotropic
                    .into_iter()
                    .filter(|v| {
                        matches!(
                            cones::is_nef_against(v, &roots.roots, space),
                            Ok(NefCheck::Nef)
                        )
                    })
                    .collect();
                let actual = if nef.len() == 1 {
                    format!("{}", nef[0])
                } else {
                    format!("{} rays", nef.len())
                };
                CheckOutcome {
                    label: "unique nef isotropic ray".to_string(),
                    expected: format!("{expected}"),
                    actual,
                    passed: nef.len() == 1 && &nef[0] == expected,
                }
            }
            ExpectedCheck::CurveConeExtremalRays {
                isotropic_degree,
                expected_rays,
                expected_dual,
            } => {
                let mut gens = enumeration::classes_of_norm(
                    marked,
                    &ClassQuery::new(-1, *isotropic_degree)
                        .with_constraint(model.canonical_class.clone(), -1),
                )?;
                gens.extend(enumeration::classes_of_norm(
                    marked,
                    &ClassQuery::new(0, *isotropic_degree).primitive(),
                )?);
                let cone = RationalCone::new(space.clone(), gens)?;
                let rays = match cones::extremal_rays(&cone)? {
                    ExtremalRays::Pointed(rays) => rays,
                    ExtremalRays::NonPointed { .. } => Vec::new(),
                };
                let mut expected_sorted = expected_rays.clone();
                expected_sorted.sort();
                let rays_ok = rays == expected_sorted;
                let dual = cones::dual_cone(&cone)?;
                let mut expected_dual_sorted = expected_dual.clone();
                expected_dual_sorted.sort();
                let mut dual_gens = dual.generators().to_vec();
                dual_gens.sort();
                let dual_ok = dual_gens == expected_dual_sorted;
                CheckOutcome {
                    label: "curve cone extremal rays and dual".to_string(),
                    expected: format!("{} rays, dual {:?}", expected_rays.len(), expected_dual),
                    actual: format!("{} rays, dual {:?}", rays.len(), dual_gens),
                    passed: rays_ok && dual_ok,
                }
            }
            ExpectedCheck::HesseLines => {
                let lines = hesse_line_classes(model);
                let minus3 = BigInt::from(-3);
                let mut ok = lines.len() == 9;
                for (i, a) in lines.iter().enumerate() {
                    if space.norm(a)? != minus3 {
                        ok = false;
                    }
                    for b in lines.iter().skip(i + 1) {
                        if !space.inner_product(a, b)?.is_zero() {
                            ok = false;
                        }
                    }
                }
                let third = BigRational::new(BigInt::one(), BigInt::from(3));
                let parts: Vec<(LatticeVector, BigRational)> = lines
                    .iter()
                    .map(|l| (l.clone(), third.clone()))
                    .collect();
                let sums = verify_anticanonical_decomposition(model, &parts)?;
                let contracted_rank_ok = model.rank() - lines.len() == 4;
                CheckOutcome {
                    label: "nine disjoint (-3)-lines with sum(L/3) = -K".to_string(),
                    expected: "true".to_string(),
                    actual: format!("{}", ok && sums && contracted_rank_ok),
                    passed: ok && sums && contracted_rank_ok,
                }
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

pub mod registry {
    use super::*;

    pub const NAMES: [&str; 7] = [
        "k3_rank3",
        "ex63_k3",
        "exe_abelian",
        "blowup6",
        "blowup9_cubics",
        "hesse12",
        "blowup1",
    ];

    pub fn names() -> &'static [&'static str] {
        &NAMES
    }

    pub fn get(name: &str) -> Result<RegistryEntry, SurfaceError> {
        match name {
            "k3_rank3" => Ok(k3_rank3()),
            "ex63_k3" => Ok(ex63_k3()),
            "exe_abelian" => Ok(exe_abelian()),
            "blowup6" => Ok(blowup6()),
            "blowup9_cubics" => Ok(blowup9_cubics()),
            "hesse12" => Ok(hesse12()),
            "blowup1" => Ok(blowup1()),
            other => Err(SurfaceError::UnknownExample {
                name: other.to_string(),
            }),
        }
    }

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    fn k3_model(gram: &[&[i64]], marking: &[i64], notes: &str) -> SurfaceModel {
        let space = LatticeSpace::from_i64(gram).expect("registry gram is valid");
        let rank = space.rank();
        let lattice =
            MarkedLattice::new(space, lv(marking)).expect("registry marking is interior");
        SurfaceModel {
            lattice,
            canonical_class: LatticeVector::zero(rank),
            kind: SurfaceKind::K3,
            notes: notes.to_string(),
        }
    }

    /// Rank-3 K3 with a unique elliptic fibration; the basis is the fiber
    /// class and two sections.
    pub fn k3_rank3() -> RegistryEntry {
        let model = k3_model(
            &[&[0, 1, 1], &[1, -2, 0], &[1, 0, -2]],
            &[3, 1, 1],
            "rank-3 K3: unique nef isotropic ray, infinitely many (-2)-curves",
        );
        RegistryEntry {
            name: "k3_rank3",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 2,
                }),
                ExpectedCheck::Even(true),
                ExpectedCheck::Determinant(BigInt::from(4)),
                ExpectedCheck::MordellWeilRank {
                    profiles: vec![],
                    expected: 1,
                },
                ExpectedCheck::UniqueNefIsotropicRay {
                    class_degree: 12,
                    root_degree: 12,
                    expected: lv(&[1, 0, 0]),
                },
            ],
        }
    }

    /// Rank-4 K3 double cover of a quadric: two fiber classes and two
    /// disjoint (-2)-sections.
    pub fn ex63_k3() -> RegistryEntry {
        let model = k3_model(
            &[&[0, 2, 1, 1], &[2, 0, 1, 1], &[1, 1, -2, 0], &[1, 1, 0, -2]],
            &[1, 1, 0, 0],
            "rank-4 K3 with two elliptic fibrations and no reducible fibers",
        );
        RegistryEntry {
            name: "ex63_k3",
            model,
            checks: vec![
                ExpectedCheck::Determinant(BigInt::from(-32)),
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 3,
                }),
                ExpectedCheck::Even(true),
            ],
        }
    }

    /// Product of an elliptic curve with itself: basis the two factors and
    /// the diagonal, all of self-intersection 0, pairwise pairing 1.
    pub fn exe_abelian() -> RegistryEntry {
        let space = LatticeSpace::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
            .expect("registry gram is valid");
        let lattice =
            MarkedLattice::new(space, lv(&[1, 1, 1])).expect("marking is interior");
        let model = SurfaceModel {
            lattice,
            canonical_class: LatticeVector::zero(3),
            kind: SurfaceKind::Abelian,
            notes: "abelian surface: round nef cone, no (-2)-curves".to_string(),
        };
        RegistryEntry {
            name: "exe_abelian",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 2,
                }),
                ExpectedCheck::Even(true),
                ExpectedCheck::Determinant(BigInt::from(2)),
            ],
        }
    }

    /// Six-point blow-up (a cubic surface): 27 lines, E6 root system.
    pub fn blowup6() -> RegistryEntry {
        let model = blowup_plane(6);
        RegistryEntry {
            name: "blowup6",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 6,
                }),
                ExpectedCheck::CanonicalNormIs(BigInt::from(3)),
                ExpectedCheck::MinusOneClassCount {
                    max_degree: 9,
                    expected: 27,
                },
                ExpectedCheck::RootCountCanonicalZero {
                    max_degree: 3,
                    expected: 72,
                },
            ],
        }
    }

    /// Nine base points of a cubic pencil: the anticanonical class is the
    /// isotropic fiber class of an elliptic fibration.
    pub fn blowup9_cubics() -> RegistryEntry {
        let mut model = blowup_plane(9);
        model.notes = "base points of a cubic pencil; sections are the (-1)-curves".to_string();
        RegistryEntry {
            name: "blowup9_cubics",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 9,
                }),
                ExpectedCheck::CanonicalNormIs(BigInt::zero()),
                ExpectedCheck::MordellWeilRank {
                    profiles: vec![],
                    expected: 8,
                },
            ],
        }
    }

    /// Twelve-point blow-up carrying the dual Hesse configuration.
    pub fn hesse12() -> RegistryEntry {
        let mut model = blowup_plane(12);
        model.notes =
            "dual Hesse configuration: 9 lines through quadruples of the 12 points".to_string();
        RegistryEntry {
            name: "hesse12",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 12,
                }),
                ExpectedCheck::HesseLines,
            ],
        }
    }

    /// One-point blow-up: the curve cone has exactly two extremal rays.
    pub fn blowup1() -> RegistryEntry {
        let model = blowup_plane(1);
        RegistryEntry {
            name: "blowup1",
            model,
            checks: vec![
                ExpectedCheck::SignatureIs(Signature {
                    positive: 1,
                    negative: 1,
                }),
                ExpectedCheck::CanonicalNormIs(BigInt::from(8)),
                ExpectedCheck::CurveConeExtremalRays {
                    isotropic_degree: 4,
                    expected_rays: vec![lv(&[0, 1]), lv(&[1, -1])],
                    expected_dual: vec![lv(&[1, 0]), lv(&[1, -1])],
                },
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    #[test]
    fn blowup_basics() {
        let b0 = blowup_plane(0);
        assert_eq!(b0.rank(), 1);
        assert_eq!(b0.canonical_class, lv(&[-3]));
        assert_eq!(b0.canonical_norm(), BigInt::from(9));
        for n in 0..=12u32 {
            let model = blowup_plane(n);
            assert_eq!(model.canonical_norm(), BigInt::from(9 - n as i64));
            let sig = model.lattice.space().signature();
            assert_eq!((sig.positive, sig.negative), (1, n as usize));
        }
    }

    #[test]
    fn shioda_tate_formula() {
        assert_eq!(mordell_weil_rank(3, &[]).unwrap(), 1);
        assert_eq!(mordell_weil_rank(4, &[]).unwrap(), 2);
        assert_eq!(mordell_weil_rank(10, &[2, 3]).unwrap(), 5);
        for rho in 2..=13u32 {
            assert_eq!(mordell_weil_rank(rho, &[]).unwrap(), rho as i64 - 2);
        }
        assert!(matches!(
            mordell_weil_rank(1, &[]),
            Err(SurfaceError::PicardRankTooSmall { .. })
        ));
        assert!(matches!(
            mordell_weil_rank(3, &[5]),
            Err(SurfaceError::InconsistentFiberData { .. })
        ));
        assert!(matches!(
            mordell_weil_rank(5, &[0]),
            Err(SurfaceError::InvalidFiberProfile { .. })
        ));
    }

    fn ex63_fibrations() -> (MarkedLattice, FibrationData, FibrationData) {
        let entry = registry::get("ex63_k3").unwrap();
        let marked = entry.model.lattice.clone();
        let f1 = FibrationData::new(&marked, lv(&[1, 0, 0, 0]), vec![], None).unwrap();
        let f2 = FibrationData::new(&marked, lv(&[0, 1, 0, 0]), vec![], None).unwrap();
        (marked, f1, f2)
    }

    #[test]
    fn nonarithmetic_criteria_met() {
        let (_, f1, f2) = ex63_fibrations();
        let report = check_nonarithmetic(4, &f1, &f2, true).unwrap();
        assert_eq!(report.verdict, Verdict::CriteriaMet);
        assert!(report.failed_hypotheses().is_empty());
    }

    #[test]
    fn nonarithmetic_single_negations() {
        let (marked, f1, f2) = ex63_fibrations();
        // picard rank too small
        let report = check_nonarithmetic(3, &f1, &f2, true).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert_eq!(report.failed_hypotheses(), vec!["picard_rank_at_least_4"]);
        // first fibration has a reducible fiber
        let f1_bad = FibrationData::new(&marked, lv(&[1, 0, 0, 0]), vec![2], None).unwrap();
        let report = check_nonarithmetic(4, &f1_bad, &f2, true).unwrap();
        assert_eq!(
            report.failed_hypotheses(),
            vec!["first_fibration_no_reducible_fibers"]
        );
        // second fibration with zero Mordell-Weil rank (asserted via hint)
        let f2_bad = FibrationData::new(&marked, lv(&[0, 1, 0, 0]), vec![], Some(0)).unwrap();
        let report = check_nonarithmetic(4, &f1, &f2_bad, true).unwrap();
        assert_eq!(
            report.failed_hypotheses(),
            vec!["second_fibration_mw_rank_positive"]
        );
        // no (-2)-curve
        let report = check_nonarithmetic(4, &f1, &f2, false).unwrap();
        assert_eq!(report.failed_hypotheses(), vec!["has_minus_two_curve"]);
    }

    #[test]
    fn nonarithmetic_rejects_proportional_fibrations() {
        let (marked, f1, _) = ex63_fibrations();
        let same = FibrationData::new(&marked, lv(&[2, 0, 0, 0]), vec![], None).unwrap();
        assert!(matches!(
            check_nonarithmetic(4, &f1, &same, true),
            Err(SurfaceError::FibrationsProportional)
        ));
    }

    #[test]
    fn fibration_data_validation() {
        let entry = registry::get("ex63_k3").unwrap();
        let marked = &entry.model.lattice;
        assert!(matches!(
            FibrationData::new(marked, lv(&[0, 0, 1, 0]), vec![], None),
            Err(SurfaceError::FiberClassNotIsotropic { .. })
        ));
        assert!(matches!(
            FibrationData::new(marked, lv(&[-1, 0, 0, 0]), vec![], None),
            Err(SurfaceError::FiberClassNotPositiveDegree { .. })
        ));
    }

    #[test]
    fn asserted_gate_matches_lattice_gate() {
        let report = check_nonarithmetic_asserted(4, true, true, true);
        assert_eq!(report.verdict, Verdict::CriteriaMet);
        let report = check_nonarithmetic_asserted(4, true, false, true);
        assert_eq!(
            report.failed_hypotheses(),
            vec!["second_fibration_mw_rank_positive"]
        );
    }

    #[test]
    fn anticanonical_decomposition() {
        let entry = registry::get("hesse12").unwrap();
        let model = &entry.model;
        let lines = hesse_line_classes(model);
        assert_eq!(lines.len(), 9);
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let parts: Vec<_> = lines.iter().map(|l| (l.clone(), third.clone())).collect();
        assert!(verify_anticanonical_decomposition(model, &parts).unwrap());
        // a single part -K with coefficient 1
        let anti = model.canonical_class.neg();
        let one = BigRational::one();
        assert!(
            verify_anticanonical_decomposition(model, &[(anti, one)]).unwrap()
        );
        // wrong coefficient fails
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let parts: Vec<_> = lines.iter().map(|l| (l.clone(), half.clone())).collect();
        assert!(!verify_anticanonical_decomposition(model, &parts).unwrap());
        assert!(matches!(
            verify_anticanonical_decomposition(model, &[]),
            Err(SurfaceError::EmptyDecomposition)
        ));
    }

    #[test]
    fn hesse_incidence_is_4_3_regular() {
        let lines = dual_hesse_incidence();
        let mut point_count = [0usize; 12];
        for line in &lines {
            let mut sorted = *line;
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                assert_ne!(w[0], w[1], "repeated point on a line");
            }
            for &p in line {
                point_count[p] += 1;
            }
        }
        assert!(point_count.iter().all(|&c| c == 3));
        // two distinct lines share exactly one point
        for (i, a) in lines.iter().enumerate() {
            for b in lines.iter().skip(i + 1) {
                let common = a.iter().filter(|p| b.contains(p)).count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn registry_names_and_unknown() {
        for name in registry::names() {
            let entry = registry::get(name).unwrap();
            assert_eq!(&entry.name, name);
        }
        assert!(matches!(
            registry::get("nope"),
            Err(SurfaceError::UnknownExample { .. })
        ));
    }

    #[test]
    fn registry_expected_checks_all_pass() {
        for name in registry::names() {
            let entry = registry::get(name).unwrap();
            let outcomes = run_expected_checks(&entry).unwrap();
            for o in &outcomes {
                assert!(
                    o.passed,
                    "{name}: {} expected {} got {}",
                    o.label, o.expected, o.actual
                );
            }
        }
    }

    #[test]
    fn registry_lattices_are_hyperbolic() {
        for name in registry::names() {
            let entry = registry::get(name).unwrap();
            let sig = entry.model.lattice.space().signature();
            assert_eq!(sig.positive, 1, "{name}");
            assert_eq!(sig.negative, entry.model.rank() - 1, "{name}");
        }
    }

    #[test]
    fn k3_rank3_sections_pair_one_with_fiber() {
        let entry = registry::get("k3_rank3").unwrap();
        let space = entry.model.lattice.space();
        let fiber = lv(&[1, 0, 0]);
        for section in [lv(&[0, 1, 0]), lv(&[0, 0, 1])] {
            assert_eq!(space.inner_product(&fiber, &section).unwrap(), BigInt::one());
        }
    }
}
