//! Expected values. Rationals are stored as numerator/denominator pairs;
//! product-state amplitudes as their squared moduli (all amplitudes in the
//! table are real and non-negative).

use std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio(pub i64, pub i64);

impl Ratio {
    pub fn value(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

pub const fn r(num: i64, den: i64) -> Ratio {
    Ratio(num, den)
}

pub fn values(rs: &[Ratio]) -> Vec<f64> {
    rs.iter().map(|x| x.value()).collect()
}

/// Amplitudes `√q` from squared moduli `q`.
pub fn amplitudes(moduli: &[Ratio]) -> Vec<f64> {
    moduli.iter().map(|q| q.value().sqrt()).collect()
}

pub struct VertexRow {
    pub p: [Ratio; 3],
    /// Squared moduli of the two factors; `None` for points no product state reaches.
    pub state: Option<([Ratio; 3], [Ratio; 3])>,
}

pub const VERTICES: [VertexRow; 12] = [
    VertexRow {
        p: [r(1, 3), r(0, 1), r(0, 1)],
        state: Some(([r(1, 1), r(0, 1), r(0, 1)], [r(0, 1), r(1, 1), r(0, 1)])),
    },
    VertexRow {
        p: [r(0, 1), r(1, 3), r(0, 1)],
        state: Some(([r(1, 1), r(0, 1), r(0, 1)], [r(0, 1), r(0, 1), r(1, 1)])),
    },
    VertexRow {
        p: [r(0, 1), r(0, 1), r(1, 3)],
        state: Some(([r(1, 1), r(0, 1), r(0, 1)], [r(1, 1), r(0, 1), r(0, 1)])),
    },
    VertexRow {
        p: [r(1, 9), r(1, 9), r(1, 3)],
        state: Some(([r(1, 3), r(1, 3), r(1, 3)], [r(1, 3), r(1, 3), r(1, 3)])),
    },
    VertexRow {
        p: [r(1, 48), r(3, 16), r(1, 4)],
        state: Some(([r(0, 1), r(3, 4), r(1, 4)], [r(0, 1), r(1, 4), r(3, 4)])),
    },
    VertexRow {
        p: [r(1, 192), r(49, 192), r(7, 48)],
        state: Some(([r(0, 1), r(1, 8), r(7, 8)], [r(0, 1), r(7, 8), r(1, 8)])),
    },
    VertexRow {
        p: [r(3, 64), r(25, 192), r(5, 16)],
        state: Some(([r(0, 1), r(3, 8), r(5, 8)], [r(0, 1), r(5, 8), r(3, 8)])),
    },
    VertexRow {
        p: [r(1, 12), r(1, 8), r(1, 3)],
        state: None,
    },
    VertexRow {
        p: [r(3, 16), r(1, 48), r(1, 4)],
        state: Some(([r(0, 1), r(1, 4), r(3, 4)], [r(0, 1), r(3, 4), r(1, 4)])),
    },
    VertexRow {
        p: [r(49, 192), r(1, 192), r(7, 48)],
        state: Some(([r(0, 1), r(7, 8), r(1, 8)], [r(0, 1), r(1, 8), r(7, 8)])),
    },
    VertexRow {
        p: [r(25, 192), r(3, 64), r(5, 16)],
        state: Some(([r(0, 1), r(5, 8), r(3, 8)], [r(0, 1), r(3, 8), r(5, 8)])),
    },
    VertexRow {
        p: [r(1, 8), r(1, 12), r(1, 3)],
        state: None,
    },
];

pub struct Maximum {
    pub name: &'static str,
    pub coeffs: &'static [Ratio],
    pub max: Ratio,
    pub argmax: Option<(&'static [Ratio], f64)>,
}

pub const MAXIMA: [Maximum; 6] = [
    Maximum {
        name: "3(p1+p2+p3)",
        coeffs: &[r(3, 1), r(3, 1), r(3, 1)],
        max: r(5, 3),
        argmax: Some((&[r(1, 9), r(1, 9), r(1, 3)], 1e-8)),
    },
    Maximum {
        name: "3(p1+p2)+p3",
        coeffs: &[r(3, 1), r(3, 1), r(1, 1)],
        max: r(1, 1),
        argmax: None,
    },
    Maximum {
        name: "3(-p1+p2+p3)",
        coeffs: &[r(-3, 1), r(3, 1), r(3, 1)],
        max: r(5, 4),
        argmax: Some((&[r(1, 48), r(3, 16), r(1, 4)], 1e-6)),
    },
    Maximum {
        name: "3p1+9p2+5p3",
        coeffs: &[r(3, 1), r(9, 1), r(5, 1)],
        max: r(73, 24),
        argmax: Some((&[r(1, 192), r(49, 192), r(7, 48)], 1e-6)),
    },
    Maximum {
        name: "3(-p1+p2)+6p3",
        coeffs: &[r(-3, 1), r(3, 1), r(6, 1)],
        max: r(17, 8),
        argmax: Some((&[r(3, 64), r(25, 192), r(5, 16)], 1e-6)),
    },
    Maximum {
        name: "4(p1+p2+p3)+p4",
        coeffs: &[r(4, 1), r(4, 1), r(4, 1), r(1, 1)],
        max: r(1, 1),
        argmax: None,
    },
];

/// Tolerance for maxima.
pub const MAX_TOL: f64 = 1e-9;
/// Tolerance for the vertex-table round trip.
pub const VERTEX_TOL: f64 = 1e-12;

pub struct PlaneStatusCase {
    pub name: &'static str,
    pub coeffs: &'static [Ratio],
    pub offset: Ratio,
    pub status: &'static str,
}

pub const PLANES: [PlaneStatusCase; 7] = [
    PlaneStatusCase {
        name: "3(p1+p2+p3)=1",
        coeffs: &[r(3, 1), r(3, 1), r(3, 1)],
        offset: r(1, 1),
        status: "intersecting",
    },
    PlaneStatusCase {
        name: "3(p1+p2)+p3=1",
        coeffs: &[r(3, 1), r(3, 1), r(1, 1)],
        offset: r(1, 1),
        status: "exact_boundary",
    },
    PlaneStatusCase {
        name: "3p1+6p2+3p3=2",
        coeffs: &[r(3, 1), r(6, 1), r(3, 1)],
        offset: r(2, 1),
        status: "tangent",
    },
    PlaneStatusCase {
        name: "6p1+3p2+3p3=2",
        coeffs: &[r(6, 1), r(3, 1), r(3, 1)],
        offset: r(2, 1),
        status: "tangent",
    },
    PlaneStatusCase {
        name: "4(p1+p2+p3+p4)=1",
        coeffs: &[r(4, 1), r(4, 1), r(4, 1), r(4, 1)],
        offset: r(1, 1),
        status: "intersecting",
    },
    PlaneStatusCase {
        name: "4(p1+p2+p3)+p4=1",
        coeffs: &[r(4, 1), r(4, 1), r(4, 1), r(1, 1)],
        offset: r(1, 1),
        status: "exact_boundary",
    },
    PlaneStatusCase {
        name: "p4=0",
        coeffs: &[r(0, 1), r(0, 1), r(0, 1), r(-1, 1)],
        offset: r(0, 1),
        status: "tangent",
    },
];

/// The point found when maximizing over the four-dimensional axis plane.
pub const AXIS_PLANE_4_ARGMAX: [Ratio; 4] = [r(1, 16), r(1, 16), r(1, 16), r(1, 4)];

pub struct Threshold {
    pub family: &'static str,
    pub from: Ratio,
    pub to: Ratio,
    pub open_from: bool,
    pub alpha: Ratio,
}

pub const THRESHOLDS_S2: [Threshold; 1] = [Threshold {
    family: "W3",
    from: r(1, 3),
    to: r(1, 1),
    open_from: false,
    alpha: r(2, 3),
}];

pub const THRESHOLDS_S3: [Threshold; 2] = [
    Threshold {
        family: "W4",
        from: r(1, 4),
        to: r(1, 2),
        open_from: true,
        alpha: r(1, 3),
    },
    Threshold {
        family: "W4p",
        from: r(1, 4),
        to: r(1, 2),
        open_from: true,
        alpha: r(1, 3),
    },
];

/// Parameters at which the middle four-dimensional family stays tangent.
pub const TANGENT_GRID_S3: [Ratio; 5] = [r(26, 100), r(1, 2), r(1, 1), r(2, 1), r(4, 1)];

pub type Coefficient = fn(f64) -> f64;
pub type CoefficientTable = Vec<(usize, usize, Coefficient)>;

/// Reference correlation coefficients `(i, j, c(α))`, index 0 = identity.
pub fn su3_block(primed: bool) -> CoefficientTable {
    let mut t: Vec<(usize, usize, Coefficient)> = vec![(0, 0, |a| (12.0 * a - 2.0) / (27.0 * a))];
    for k in [2, 5, 7] {
        t.push((k, k, |a| (6.0 * a - 1.0) / (18.0 * a)));
    }
    for k in [1, 4, 6] {
        t.push((k, k, |a| -(6.0 * a - 1.0) / (18.0 * a)));
    }
    t.push((3, 3, |a| -(3.0 * a - 5.0) / (36.0 * a)));
    t.push((8, 8, |a| -(3.0 * a - 5.0) / (36.0 * a)));
    if primed {
        t.push((3, 8, |a| -(3f64.sqrt()) * (3.0 * a - 1.0) / (12.0 * a)));
        t.push((8, 3, |a| 3f64.sqrt() * (3.0 * a - 1.0) / (12.0 * a)));
    } else {
        t.push((3, 8, |a| 3f64.sqrt() * (3.0 * a - 1.0) / (12.0 * a)));
        t.push((8, 3, |a| -(3f64.sqrt()) * (3.0 * a - 1.0) / (12.0 * a)));
    }
    t
}

pub fn su4_block(primed: bool) -> CoefficientTable {
    let mut t: Vec<(usize, usize, Coefficient)> = vec![(0, 0, |a| (24.0 * a - 3.0) / (64.0 * a))];
    for k in [2, 5, 7, 10, 12, 14] {
        t.push((k, k, |a| (8.0 * a - 1.0) / (32.0 * a)));
    }
    for k in [1, 4, 6, 9, 11, 13] {
        t.push((k, k, |a| -(8.0 * a - 1.0) / (32.0 * a)));
    }
    t.push((3, 3, |a| 3.0 / (32.0 * a)));
    t.push((8, 8, |a| (16.0 * a + 5.0) / (96.0 * a)));
    t.push((15, 15, |a| (8.0 * a + 7.0) / (96.0 * a)));
    if primed {
        t.push((8, 3, |a| 3.0 * 3f64.sqrt() * (4.0 * a - 1.0) / (48.0 * a)));
        t.push((3, 8, |a| -(3f64.sqrt()) * (4.0 * a - 1.0) / (48.0 * a)));
        t.push((15, 8, |a| 2.0 * SQRT_2 * (4.0 * a - 1.0) / (24.0 * a)));
        t.push((8, 15, |a| -SQRT_2 * (4.0 * a - 1.0) / (24.0 * a)));
        t.push((3, 15, |a| 6f64.sqrt() * (1.0 - 4.0 * a) / (24.0 * a)));
    } else {
        t.push((3, 8, |a| 3f64.sqrt() * (4.0 * a - 1.0) / (16.0 * a)));
        t.push((8, 3, |a| -(3f64.sqrt()) * (4.0 * a - 1.0) / (16.0 * a)));
        t.push((8, 15, |a| SQRT_2 * (4.0 * a - 1.0) / (12.0 * a)));
        t.push((15, 8, |a| -SQRT_2 * (4.0 * a - 1.0) / (12.0 * a)));
        t.push((15, 3, |a| 6f64.sqrt() * (1.0 - 4.0 * a) / (24.0 * a)));
    }
    t
}

pub const DECOMP_TOL: f64 = 1e-12;
pub const SETTINGS_3: usize = 10;
pub const SETTINGS_4: usize = 20;

/// Expected label of `ρ_β` at `β = k/10`.
pub fn horodecki_class(k: u32) -> &'static str {
    match k {
        0..=9 => "free_entangled",
        10..=19 => "ppt_entangled",
        20..=30 => "separable_consistent",
        31..=40 => "ppt_entangled",
        _ => "free_entangled",
    }
}

/// Expected label of `ϱ(β, γ)` at integer `β ∈ [0, 10]`.
pub fn varrho_class(beta: u32, gamma: u32) -> &'static str {
    if gamma < 3 || !(1..=9).contains(&beta) {
        "free_entangled"
    } else if (3..=7).contains(&beta) {
        "unknown"
    } else {
        "ppt_entangled"
    }
}

pub const VARRHO_GAMMAS: [u32; 5] = [0, 2, 3, 4, 6];

/// Named planes `c·p = offset` for plot output.
pub const PLOT_PLANES: [(&[Ratio], Ratio); 7] = [
    (&[r(3, 1), r(3, 1), r(3, 1)], r(1, 1)),
    (&[r(3, 1), r(3, 1), r(1, 1)], r(1, 1)),
    (&[r(-3, 1), r(3, 1), r(3, 1)], r(1, 1)),
    (&[r(3, 1), r(9, 1), r(5, 1)], r(3, 1)),
    (&[r(-3, 1), r(3, 1), r(6, 1)], r(2, 1)),
    (&[r(3, 1), r(6, 1), r(3, 1)], r(2, 1)),
    (&[r(6, 1), r(3, 1), r(3, 1)], r(2, 1)),
];
