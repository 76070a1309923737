//! Small fixed-size vector helpers. Everything is `f32`; the simulator's
//! determinism contract depends on a fixed evaluation order, so these stay
//! scalar and branch-free where possible.

pub type Vec3 = [f32; 3];

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: Vec3, s: f32) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn dot(a: Vec3, b: Vec3) -> f32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f32 {
    dot(a, a).sqrt()
}

pub fn dist(a: Vec3, b: Vec3) -> f32 {
    norm(sub(a, b))
}

pub fn dist_xy(a: Vec3, b: Vec3) -> f32 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

/// Normalize; returns `None` for (near-)zero vectors.
pub fn unit(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n < 1e-9 {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

pub fn clamp_vec(a: Vec3, lo: f32, hi: f32) -> Vec3 {
    [
        a[0].clamp(lo, hi),
        a[1].clamp(lo, hi),
        a[2].clamp(lo, hi),
    ]
}
