//! Projection of positive-cone rays of a rank-3 lattice to the hyperbolic
//! disk model and emission of static SVG figures: the unit circle, wall
//! geodesics of roots (circular arcs orthogonal to the boundary), and
//! labeled ray points.
//!
//! Floating point is confined to this module; the exact modules never
//! consume its output. The diagonalizing frame is computed once from the
//! marking via exact Gram-Schmidt over the rationals and only then converted
//! to floats, so the figure does not depend on float rounding order.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use conewalk_core::enumeration::{self, ClassQuery, MarkedLattice};
use conewalk_core::lattice::LatticeVector;

#[derive(Debug, thiserror::Error)]
pub enum VizError {
    #[error("disk projection needs rank 3, lattice has rank {rank}")]
    RankNotThree { rank: usize },
    #[error("vector {vector} is not in the closed positive cone")]
    OutsideCone { vector: LatticeVector },
    #[error("vector {vector} has no wall: its norm is not negative")]
    NotSpacelike { vector: LatticeVector },
    #[error("scene point ({x}, {y}) lies outside the closed unit disk")]
    PointOutsideDisk { x: f64, y: f64 },
    #[error("enumeration failed")]
    Core(#[from] conewalk_core::enumeration::EnumerationError),
    #[error("lattice operation failed")]
    Lattice(#[from] conewalk_core::lattice::LatticeError),
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// Geodesic carrying a wall: a diameter through the origin or a circular arc
/// orthogonal to the boundary circle.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum WallGeometry {
    Diameter,
    Arc { center: DiskPoint, radius: f64 },
}

#[derive(Clone, PartialEq, Debug)]
pub struct WallArc {
    pub root: LatticeVector,
    pub endpoints: (DiskPoint, DiskPoint),
    pub geometry: WallGeometry,
}

impl WallArc {
    /// Distance from a disk point to the full geodesic through the wall.
    pub fn distance_to(&self, p: DiskPoint) -> f64 {
        match self.geometry {
            WallGeometry::Diameter => {
                let (e, _) = self.endpoints;
                (p.x * e.y - p.y * e.x).abs() / e.norm()
            }
            WallGeometry::Arc { center, radius } => {
                let d = ((p.x - center.x).powi(2) + (p.y - center.y).powi(2)).sqrt();
                (d - radius).abs()
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct DiskScene {
    pub walls: Vec<WallArc>,
    pub rays: Vec<(String, DiskPoint)>,
    pub chamber_hint: Option<Vec<DiskPoint>>,
}

/// Frame data mapping the rank-3 form to Minkowski coordinates
/// `diag(+1, -1, -1)` with the marking at the disk center.
pub struct DiskProjection {
    marked: MarkedLattice,
    // rational frame: f0 = H, f1, f2 span the complement, pairwise orthogonal
    f1: Vec<BigRational>,
    f2: Vec<BigRational>,
    n0: BigRational,
    n1: BigRational,
    n2: BigRational,
}

impl DiskProjection {
    pub fn new(marked: &MarkedLattice) -> Result<Self, VizError> {
        let rank = marked.rank();
        if rank != 3 {
            return Err(VizError::RankNotThree { rank });
        }
        let space = marked.space();
        let (basis, _) = space.orthogonal_complement(marked.marking())?;
        let b1: Vec<BigRational> = basis[0]
            .coords()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let b2: Vec<BigRational> = basis[1]
            .coords()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for i in 0..3 {
                for j in 0..3 {
                    acc += &x[i] * BigRational::from(space.gram().at(i, j).clone()) * &y[j];
                }
            }
            acc
        };
        let n1 = pair(&b1, &b1);
        // f2 = b2 - (<b2, b1> / <b1, b1>) b1
        let coeff = pair(&b2, &b1) / &n1;
        let f2: Vec<BigRational> = b2
            .iter()
            .zip(&b1)
            .map(|(x, y)| x - &coeff * y)
            .collect();
        let n2 = pair(&f2, &f2);
        let n0 = BigRational::from(space.norm(marked.marking())?);
        debug_assert!(n0.is_positive() && n1.is_negative() && n2.is_negative());
        Ok(DiskProjection {
            marked: marked.clone(),
            f1: b1,
            f2,
            n0,
            n1,
            n2,
        })
    }

    /// Minkowski coordinates `(T, X, Y)` with `<x, x> = T^2 - X^2 - Y^2`.
    fn minkowski(&self, x: &LatticeVector) -> Result<[f64; 3], VizError> {
        let space = self.marked.space();
        let xr: Vec<BigRational> = x
            .coords()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let pair_with = |f: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for i in 0..3 {
                for j in 0..3 {
                    acc += &xr[i] * BigRational::from(space.gram().at(i, j).clone()) * &f[j];
                }
            }
            acc
        };
        let h: Vec<BigRational> = self
            .marked
            .marking()
            .coords()
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let t = pair_with(&h) / &self.n0;
        let u = pair_with(&self.f1) / &self.n1;
        let w = pair_with(&self.f2) / &self.n2;
        let tf = t.to_f64().expect("small rational");
        let uf = u.to_f64().expect("small rational");
        let wf = w.to_f64().expect("small rational");
        let n0 = self.n0.to_f64().expect("small rational");
        let n1 = self.n1.to_f64().expect("small rational");
        let n2 = self.n2.to_f64().expect("small rational");
        Ok([tf * n0.sqrt(), uf * (-n1).sqrt(), wf * (-n2).sqrt()])
    }

    /// Disk point of a nonzero class in the closed positive cone. Classes of
    /// positive norm land strictly inside, isotropic classes on the unit
    /// circle, the marking at the origin; scale-invariant.
    pub fn disk_point(&self, x: &LatticeVector) -> Result<DiskPoint, VizError> {
        let space = self.marked.space();
        let norm = space.norm(x)?;
        let deg = space.inner_product(x, self.marked.marking())?;
        if x.is_zero() || norm.is_negative() || deg.is_negative() || (deg.is_zero()) {
            return Err(VizError::OutsideCone { vector: x.clone() });
        }
        let [t, xx, yy] = self.minkowski(x)?;
        let s = norm.to_f64().unwrap_or(0.0).max(0.0).sqrt();
        let denom = t + s;
        Ok(DiskPoint {
            x: xx / denom,
            y: yy / denom,
        })
    }

    /// Ideal endpoints of the wall `r^perp` of a negative-norm vector: the
    /// two isotropic directions in its orthogonal plane.
    pub fn wall(&self, r: &LatticeVector) -> Result<WallArc, VizError> {
        let norm = self.marked.space().norm(r)?;
        if !norm.is_negative() {
            return Err(VizError::NotSpacelike { vector: r.clone() });
        }
        let [t, x, y] = self.minkowski(r)?;
        let rho = (x * x + y * y).sqrt();
        debug_assert!(rho > t.abs());
        let phi = y.atan2(x);
        let delta = (t / rho).acos();
        let e1 = DiskPoint {
            x: (phi + delta).cos(),
            y: (phi + delta).sin(),
        };
        let e2 = DiskPoint {
            x: (phi - delta).cos(),
            y: (phi - delta).sin(),
        };
        let geometry = wall_geometry(e1, e2);
        Ok(WallArc {
            root: r.clone(),
            endpoints: (e1, e2),
            geometry,
        })
    }
}

/// The geodesic through two boundary points: a diameter when they are
/// antipodal, otherwise the circle through both orthogonal to the boundary
/// (center `c` solves `c . e1 = c . e2 = 1`).
fn wall_geometry(e1: DiskPoint, e2: DiskPoint) -> WallGeometry {
    let det = e1.x * e2.y - e1.y * e2.x;
    if det.abs() < 1e-12 {
        return WallGeometry::Diameter;
    }
    let cx = (e2.y - e1.y) / det;
    let cy = (e1.x - e2.x) / det;
    let center = DiskPoint { x: cx, y: cy };
    let radius = (cx * cx + cy * cy - 1.0).max(0.0).sqrt();
    WallGeometry::Arc { center, radius }
}

/// Walls for every root within the degree bound (including any through the
/// marking itself) plus labeled rays: the marking at the center and the
/// primitive isotropic classes within the same bound.
pub fn build_scene(marked: &MarkedLattice, max_degree: u64) -> Result<DiskScene, VizError> {
    let projection = DiskProjection::new(marked)?;
    let roots = enumeration::root_set(marked, max_degree)?;
    let mut walls = Vec::new();
    for r in roots.roots.iter().chain(&roots.walls_through_marking) {
        walls.push(projection.wall(r)?);
    }
    let mut rays = vec![(
        "H".to_string(),
        projection.disk_point(marked.marking())?,
    )];
    let isotropic =
        enumeration::classes_of_norm(marked, &ClassQuery::new(0, max_degree).primitive())?;
    for (i, class) in isotropic.iter().enumerate() {
        rays.push((format!("P{i}"), projection.disk_point(class)?));
    }
    Ok(DiskScene {
        walls,
        rays,
        chamber_hint: None,
    })
}

fn fmt_f(v: f64) -> String {
    // normalize negative zero for byte-identical output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.6}")
}

/// Renders a scene as a self-contained SVG 1.1 document (no scripts), with
/// the viewBox fixed at [-1.05, 1.05]^2. Deterministic: identical scenes
/// produce byte-identical documents.
pub fn render_scene(scene: &DiskScene) -> Result<String, VizError> {
    for (_, p) in &scene.rays {
        if p.norm() > 1.0 + 1e-9 {
            return Err(VizError::PointOutsideDisk { x: p.x, y: p.y });
        }
    }
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"640\" height=\"640\">\n",
    );
    if let Some(hint) = &scene.chamber_hint {
        let points: Vec<String> = hint
            .iter()
            .map(|p| format!("{},{}", fmt_f(p.x), fmt_f(-p.y)))
            .collect();
        let _ = writeln!(
            svg,
            "  <polygon points=\"{}\" fill=\"#dce8f5\" stroke=\"none\"/>",
            points.join(" ")
        );
    }
    // boundary circle
    svg.push_str(
        "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.008\"/>\n",
    );
    for wall in &scene.walls {
        let path = sample_wall(wall);
        let points: Vec<String> = path
            .iter()
            .map(|p| format!("{},{}", fmt_f(p.x), fmt_f(-p.y)))
            .collect();
        let _ = writeln!(
            svg,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#8a1f1f\" stroke-width=\"0.006\"/>",
            points.join(" ")
        );
    }
    for (label, p) in &scene.rays {
        let _ = writeln!(
            svg,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"0.014\" fill=\"#1f4e8c\"/>",
            fmt_f(p.x),
            fmt_f(-p.y)
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" font-size=\"0.07\" font-family=\"monospace\" fill=\"#1f4e8c\">{}</text>",
            fmt_f(p.x + 0.02),
            fmt_f(-p.y - 0.02),
            label
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Samples the geodesic between the wall's ideal endpoints.
fn sample_wall(wall: &WallArc) -> Vec<DiskPoint> {
    const STEPS: usize = 64;
    let (e1, e2) = wall.endpoints;
    match wall.geometry {
        WallGeometry::Diameter => vec![e1, e2],
        WallGeometry::Arc { center, radius } => {
            let a1 = (e1.y - center.y).atan2(e1.x - center.x);
            let a2 = (e2.y - center.y).atan2(e2.x - center.x);
            // take the short way around the arc circle
            let mut diff = a2 - a1;
            while diff > core::f64::consts::PI {
                diff -= 2.0 * core::f64::consts::PI;
            }
            while diff < -core::f64::consts::PI {
                diff += 2.0 * core::f64::consts::PI;
            }
            (0..=STEPS)
                .map(|k| {
                    let a = a1 + diff * (k as f64) / (STEPS as f64);
                    DiskPoint {
                        x: center.x + radius * a.cos(),
                        y: center.y + radius * a.sin(),
                    }
                })
                .collect()
        }
    }
}
