//! Tire force laws: the linear cornering model, the Magic Formula, a
//! friction-ellipse combined-slip rule and static/quasi-static wheel loads.

use core::f64::consts::FRAC_PI_2;

use crate::params::{AxisShape, PacejkaParams, RoadParams, VehicleParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axle {
    Front,
    Rear,
}

/// Slip quantities seen by one tire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipState {
    /// Tire sideslip angle, rad.
    pub alpha: f64,
    /// Longitudinal slip ratio in `[-1, 1]`.
    pub lambda: f64,
    /// Vertical load, N.
    pub fz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TireForces {
    pub fx: f64,
    pub fy: f64,
}

/// One fully specified Magic Formula curve (peak `d` in newtons).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagicFormula {
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub sh: f64,
    pub sv: f64,
}

impl MagicFormula {
    pub fn from_shape(shape: &AxisShape, d: f64) -> Self {
        Self { b: shape.b, c: shape.c, d, e: shape.e, sh: shape.sh, sv: shape.sv }
    }

    /// Supremum of `|F - S_v|` over all slips.
    pub fn peak(&self) -> f64 {
        let inner_sup = if self.e < 1.0 { FRAC_PI_2 } else { libm::atan(FRAC_PI_2) };
        self.d.abs() * libm::sin((self.c * inner_sup).min(FRAC_PI_2))
    }
}

/// Linear tire: `F = mu * C_axle * alpha`.
pub fn linear_lateral_force(alpha: f64, axle: Axle, params: &VehicleParams) -> f64 {
    let c = match axle {
        Axle::Front => params.cf0,
        Axle::Rear => params.cr0,
    };
    params.mu * c * alpha
}

/// `D sin(C atan(B x - E (B x - atan(B x)))) + S_v` with `x = slip + S_h`.
pub fn pacejka_force(slip: f64, mf: &MagicFormula) -> f64 {
    let bx = mf.b * (slip + mf.sh);
    let inner = bx - mf.e * (bx - libm::atan(bx));
    mf.d * libm::sin(mf.c * libm::atan(inner)) + mf.sv
}

/// Per-axle tire description used by the double-track plant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxleTire {
    pub longitudinal: AxisShape,
    pub lateral: AxisShape,
    pub peak_coefficient: f64,
}

impl AxleTire {
    /// Builds the tire for one axle. With `match_cornering_stiffness` set, the
    /// lateral `B` is chosen so that `B·C·D` at the static wheel load equals
    /// `mu * C_axle / 2`, i.e. the linear model's per-tire stiffness.
    pub fn for_axle(tire: &PacejkaParams, vehicle: &VehicleParams, axle: Axle) -> Self {
        let mut lateral = tire.lateral;
        if tire.match_cornering_stiffness {
            lateral.b = fitted_lateral_b(tire, vehicle, axle);
        }
        Self { longitudinal: tire.longitudinal, lateral, peak_coefficient: tire.peak_coefficient }
    }

    pub fn curves(&self, mu: f64, fz: f64) -> (MagicFormula, MagicFormula) {
        let d = mu * fz.max(0.0) * self.peak_coefficient;
        (MagicFormula::from_shape(&self.longitudinal, d), MagicFormula::from_shape(&self.lateral, d))
    }
}

/// Lateral `B` such that the origin slope at static load matches the linear
/// per-tire cornering stiffness. Since `D` scales with `mu`, so does the slope.
pub fn fitted_lateral_b(tire: &PacejkaParams, vehicle: &VehicleParams, axle: Axle) -> f64 {
    let l = vehicle.wheelbase();
    let (c_axle, fz) = match axle {
        Axle::Front => (vehicle.cf0, vehicle.m * vehicle.g * vehicle.lr / l / 2.0),
        Axle::Rear => (vehicle.cr0, vehicle.m * vehicle.g * vehicle.lf / l / 2.0),
    };
    (c_axle / 2.0) / (tire.lateral.c * fz * tire.peak_coefficient)
}

/// Pure-slip forces combined with a friction ellipse: when
/// `(F_x0/peak_x)² + (F_y0/peak_y)² > 1` both components are scaled back onto
/// the ellipse. For equal peaks this is the circle of radius `min(peak_x, peak_y)`.
pub fn combined_slip_forces(slip: &SlipState, tire: &AxleTire, mu: f64) -> TireForces {
    let (long, lat) = tire.curves(mu, slip.fz);
    let fx0 = pacejka_force(slip.lambda.clamp(-1.0, 1.0), &long);
    let fy0 = pacejka_force(slip.alpha, &lat);
    let (px, py) = (long.peak(), lat.peak());
    if px <= 0.0 || py <= 0.0 {
        return TireForces { fx: 0.0, fy: 0.0 };
    }
    let u = (fx0 / px) * (fx0 / px) + (fy0 / py) * (fy0 / py);
    if u > 1.0 {
        let k = 1.0 / libm::sqrt(u);
        TireForces { fx: fx0 * k, fy: fy0 * k }
    } else {
        TireForces { fx: fx0, fy: fy0 }
    }
}

/// Wheel loads in FL, FR, RL, RR order. The static split follows the CG
/// position; the optional quasi-static transfer terms only move load between
/// wheels, so the sum is always `m g`.
pub fn vertical_loads(vehicle: &VehicleParams, road: &RoadParams, a_x: f64, a_y: f64) -> [f64; 4] {
    let l = vehicle.wheelbase();
    let w = vehicle.m * vehicle.g;
    let mut front = w * vehicle.lr / l;
    let mut rear = w * vehicle.lf / l;
    if road.longitudinal_transfer {
        let d = vehicle.m * a_x * vehicle.h_cg / l;
        front -= d;
        rear += d;
    }
    let (mut df, mut dr) = (0.0, 0.0);
    if road.lateral_transfer {
        // Positive a_y (left turn) loads the right-hand wheels.
        let total = vehicle.m * a_y * vehicle.h_cg;
        df = total * (vehicle.lr / l) / vehicle.lw1;
        dr = total * (vehicle.lf / l) / vehicle.lw2;
    }
    [front / 2.0 - df, front / 2.0 + df, rear / 2.0 - dr, rear / 2.0 + dr]
}
