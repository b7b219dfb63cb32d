//! Geometry of coherence-vector orbits.
//!
//! Every orbit handled here has the form `p(t) = u cos t + w sin t` in a plane,
//! with `t` proportional to the interaction duration. It is matched against
//!
//! ```text
//! s_x(τ) =  a cos τ cos ψ + b sin τ sin ψ
//! s_y(τ) = -a cos τ sin ψ + b sin τ cos ψ
//! ```
//!
//! through `p(t) = s(t − χ)`, so `χ` is the phase of the initial point
//! measured from the `a` principal axis. The plane basis `(e1, e2)` is always
//! ordered so that the orbit runs counterclockwise; that keeps `b ≥ 0`.
//!
//! Canonical ranges: `a ≥ b ≥ 0`, `χ ∈ (−π/2, π/2]`, `ψ ∈ (−π, π]`. For a
//! circle the `a` axis is taken through the initial point, so `χ = 0`.

use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::heisenberg_orbit_vectors;
use crate::pauli::Axis;
use crate::state::{Subsystem, TwoQubitState};

pub const POINT_TOL: f64 = 1e-12;
pub const CIRCLE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    None,
    Circle,
    Line,
    Point,
}

/// Oriented orbit plane: `(e1, e2)` is an orthonormal basis, `normal = e1 × e2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub e1: Vector3<f64>,
    pub e2: Vector3<f64>,
    pub normal: Vector3<f64>,
    /// Coordinate axes spanning the plane, when it is a coordinate plane.
    pub axes: Option<[Axis; 2]>,
}

impl Plane {
    fn from_axes(first: Axis, second: Axis) -> Plane {
        let unit = |a: Axis| Vector3::ith(a.index(), 1.0);
        let (e1, e2) = (unit(first), unit(second));
        Plane {
            e1,
            e2,
            normal: e1.cross(&e2),
            axes: Some([first, second]),
        }
    }

    pub fn project(&self, v: &Vector3<f64>) -> Vector2<f64> {
        Vector2::new(v.dot(&self.e1), v.dot(&self.e2))
    }

    pub fn embed(&self, p: &Vector2<f64>) -> Vector3<f64> {
        self.e1 * p.x + self.e2 * p.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseParams {
    pub a: f64,
    pub b: f64,
    pub psi: f64,
    pub chi: f64,
    pub plane: Plane,
    pub center: Vector3<f64>,
    /// Orbit angle advanced per unit duration (`t = frequency · φ`).
    pub frequency: f64,
    pub degeneracy: Degeneracy,
}

impl EllipseParams {
    /// Principal directions `(e_a, e_b)` in plane coordinates.
    pub fn principal_axes(&self) -> (Vector2<f64>, Vector2<f64>) {
        let (s, c) = self.psi.sin_cos();
        (Vector2::new(c, -s), Vector2::new(s, c))
    }

    /// `s(τ)` in plane coordinates.
    pub fn planar_point(&self, tau: f64) -> Vector2<f64> {
        let (ea, eb) = self.principal_axes();
        let (st, ct) = tau.sin_cos();
        ea * (self.a * ct) + eb * (self.b * st)
    }

    /// Position on the orbit after duration `phi`.
    pub fn position(&self, phi: f64) -> Vector3<f64> {
        let tau = self.frequency * phi - self.chi;
        self.center + self.plane.embed(&self.planar_point(tau))
    }
}

/// Parameters of `p(t) = u cos t + w sin t` in a counterclockwise plane frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PlanarFit {
    pub a: f64,
    pub b: f64,
    pub psi: f64,
    pub chi: f64,
    pub degeneracy: Degeneracy,
}

fn cross2(u: &Vector2<f64>, w: &Vector2<f64>) -> f64 {
    u.x * w.y - u.y * w.x
}

/// Principal axes from the shape matrix `M = u uᵀ + w wᵀ`, whose eigenvalues are
/// `a²` and `b²`; `χ` then follows from `u·e_a = a cos χ`, `w·e_a = a sin χ`.
pub(crate) fn fit_planar(u: Vector2<f64>, w: Vector2<f64>) -> PlanarFit {
    let m00 = u.x * u.x + w.x * w.x;
    let m11 = u.y * u.y + w.y * w.y;
    let m01 = u.x * u.y + w.x * w.y;
    let half_gap = (0.25 * (m00 - m11).powi(2) + m01 * m01).sqrt();
    let major_sq = 0.5 * (m00 + m11) + half_gap;
    let a = major_sq.max(0.0).sqrt();
    if a < POINT_TOL {
        return PlanarFit {
            a: 0.0,
            b: 0.0,
            psi: 0.0,
            chi: 0.0,
            degeneracy: Degeneracy::Point,
        };
    }
    // det M = (u × w)², so b = |u × w| / a avoids cancellation for thin ellipses.
    let b = (cross2(&u, &w).abs() / a).min(a);

    let circle = (a - b) < CIRCLE_TOL * a.max(1.0);
    let mut ea = if circle {
        u.normalize()
    } else {
        let theta = 0.5 * (2.0 * m01).atan2(m00 - m11);
        Vector2::new(theta.cos(), theta.sin())
    };
    let mut cos_chi = u.dot(&ea) / a;
    let mut sin_chi = w.dot(&ea) / a;
    if cos_chi < 0.0 || (cos_chi == 0.0 && sin_chi < 0.0) {
        ea = -ea;
        cos_chi = -cos_chi;
        sin_chi = -sin_chi;
    }
    let degeneracy = if circle {
        Degeneracy::Circle
    } else if b < POINT_TOL {
        Degeneracy::Line
    } else {
        Degeneracy::None
    };
    PlanarFit {
        a,
        b,
        psi: (-ea.y).atan2(ea.x),
        chi: if circle { 0.0 } else { sin_chi.atan2(cos_chi) },
        degeneracy,
    }
}

/// In-plane data of the one-dimensional orbit of one subsystem under `σ_i⊗σ_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneDimPlane {
    /// Conserved axis (`i` for subsystem 1, `j` for subsystem 2).
    pub fixed_axis: Axis,
    pub fixed_value: f64,
    /// In-plane axes `(k, l)` for subsystem 1 or `(m, n)` for subsystem 2.
    pub axes: [Axis; 2],
    /// Initial in-plane coherence components.
    pub r: Vector2<f64>,
    /// Tensor components that rotate into the coherence vector, `(T^k_j, T^l_j)`
    /// or `(T^i_m, T^i_n)`.
    pub t: Vector2<f64>,
}

impl OneDimPlane {
    pub fn new(s: &TwoQubitState, subsystem: Subsystem, i: Axis, j: Axis) -> OneDimPlane {
        match subsystem {
            Subsystem::One => {
                let (k, l) = (i.prev(), i.next());
                OneDimPlane {
                    fixed_axis: i,
                    fixed_value: s.r1[i.index()],
                    axes: [k, l],
                    r: Vector2::new(s.r1[k.index()], s.r1[l.index()]),
                    t: Vector2::new(s.t[(k.index(), j.index())], s.t[(l.index(), j.index())]),
                }
            }
            Subsystem::Two => {
                let (m, n) = (j.prev(), j.next());
                OneDimPlane {
                    fixed_axis: j,
                    fixed_value: s.r2[j.index()],
                    axes: [m, n],
                    r: Vector2::new(s.r2[m.index()], s.r2[n.index()]),
                    t: Vector2::new(s.t[(i.index(), m.index())], s.t[(i.index(), n.index())]),
                }
            }
        }
    }

    /// `p(φ) = u cos φ + w sin φ` in `(k, l)` coordinates.
    pub fn conjugate_diameters(&self) -> (Vector2<f64>, Vector2<f64>) {
        (self.r, Vector2::new(-self.t.y, self.t.x))
    }
}

/// Ellipse followed by one subsystem's coherence vector under `σ_i⊗σ_j`.
pub fn fit_one_dim(s: &TwoQubitState, subsystem: Subsystem, i: Axis, j: Axis) -> EllipseParams {
    let data = OneDimPlane::new(s, subsystem, i, j);
    let (mut u, mut w) = data.conjugate_diameters();
    let [first, second] = data.axes;
    let plane = if cross2(&u, &w) < 0.0 {
        u = Vector2::new(u.y, u.x);
        w = Vector2::new(w.y, w.x);
        Plane::from_axes(second, first)
    } else {
        Plane::from_axes(first, second)
    };
    let fit = fit_planar(u, w);
    EllipseParams {
        a: fit.a,
        b: fit.b,
        psi: fit.psi,
        chi: fit.chi,
        plane,
        center: Vector3::ith(data.fixed_axis.index(), data.fixed_value),
        frequency: 1.0,
        degeneracy: fit.degeneracy,
    }
}

/// `χ` from `tan 2χ = 2(r^k T^l − r^l T^k) / (−(r^l)² + (T^k)² − (r^k)² + (T^l)²)`.
///
/// Of the two branches `2χ` and `2χ + π`, the one placing the semimajor axis
/// at `τ = 0` is returned, reduced to `(−π/2, π/2]`.
pub fn chi_closed_form(s: &TwoQubitState, subsystem: Subsystem, i: Axis, j: Axis) -> Result<f64> {
    let data = OneDimPlane::new(s, subsystem, i, j);
    let (rk, rl) = (data.r.x, data.r.y);
    let (tk, tl) = (data.t.x, data.t.y);
    let num = 2.0 * (rk * tl - rl * tk);
    let den = -rl * rl + tk * tk - rk * rk + tl * tl;
    let scale = rk * rk + rl * rl + tk * tk + tl * tl;
    if scale < POINT_TOL * POINT_TOL || num.hypot(den) <= CIRCLE_TOL * scale {
        return Err(Error::Indeterminate);
    }
    let (u, w) = data.conjugate_diameters();
    let base = 0.5 * num.atan2(den);
    let other = if base > 0.0 {
        base - std::f64::consts::FRAC_PI_2
    } else {
        base + std::f64::consts::FRAC_PI_2
    };
    let major_excess = |chi: f64| {
        let (sc, cc) = chi.sin_cos();
        (u * cc + w * sc).norm_squared() - (w * cc - u * sc).norm_squared()
    };
    Ok(if major_excess(base) >= major_excess(other) {
        base
    } else {
        other
    })
}

/// Ellipse of one subsystem under Heisenberg exchange with coupling `c`.
///
/// The orbit is `R ± [S cos(2cφ) + V sin(2cφ)]` (`+` for subsystem 1); the
/// plane is spanned by `S` and `V` through the center `R`.
pub fn heisenberg_ellipse(
    s: &TwoQubitState,
    subsystem: Subsystem,
    c: f64,
) -> Result<EllipseParams> {
    if !c.is_finite() {
        return Err(Error::NonFinite("coupling"));
    }
    let (center, swing, quad) = heisenberg_orbit_vectors(s);
    let sign = match subsystem {
        Subsystem::One => 1.0,
        Subsystem::Two => -1.0,
    };
    let u = swing * sign;
    let w = quad * (sign * c.signum());

    let point = |center: Vector3<f64>| EllipseParams {
        a: 0.0,
        b: 0.0,
        psi: 0.0,
        chi: 0.0,
        plane: Plane::from_axes(Axis::X, Axis::Y),
        center,
        frequency: 2.0 * c.abs(),
        degeneracy: Degeneracy::Point,
    };
    if c == 0.0 {
        return Ok(point(s.coherence(subsystem)));
    }
    let e1 = if u.norm() > POINT_TOL {
        u.normalize()
    } else if w.norm() > POINT_TOL {
        w.normalize()
    } else {
        return Ok(point(center));
    };
    let residual = w - e1 * w.dot(&e1);
    let e2 = if residual.norm() > POINT_TOL {
        residual.normalize()
    } else {
        any_perpendicular(&e1)
    };
    let plane = Plane {
        e1,
        e2,
        normal: e1.cross(&e2),
        axes: None,
    };
    let fit = fit_planar(plane.project(&u), plane.project(&w));
    Ok(EllipseParams {
        a: fit.a,
        b: fit.b,
        psi: fit.psi,
        chi: fit.chi,
        plane,
        center,
        frequency: 2.0 * c.abs(),
        degeneracy: fit.degeneracy,
    })
}

fn any_perpendicular(v: &Vector3<f64>) -> Vector3<f64> {
    let least = (0..3)
        .min_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .unwrap_or(0);
    v.cross(&Vector3::ith(least, 1.0)).normalize()
}

/// Semi-minor axis of a product state's one-dimensional orbit:
/// `b1 = 2|r2^j| ‖(r1^k, r1^l)‖` and `b2 = 2|r1^i| ‖(r2^m, r2^n)‖`.
pub fn semi_minor_product(
    s: &TwoQubitState,
    subsystem: Subsystem,
    i: Axis,
    j: Axis,
) -> Result<f64> {
    let residual = s.product_residual();
    if !s.is_product() {
        return Err(Error::NotProduct(residual));
    }
    let data = OneDimPlane::new(s, subsystem, i, j);
    let partner = match subsystem {
        Subsystem::One => s.r2[j.index()],
        Subsystem::Two => s.r1[i.index()],
    };
    Ok(2.0 * partner.abs() * data.r.norm())
}
