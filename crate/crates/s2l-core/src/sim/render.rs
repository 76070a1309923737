//! Deterministic software rasterizer: orthographic projection, flat palette
//! colors, painter's order (containers, chain, objects, gripper last). The
//! gripper glyph encodes the aperture as the gap between its two finger bars,
//! so open/closed state is visible in the image.

use super::{DomainConfig, ViewSpec, WorldState};
use crate::data::Image;
use crate::geom::{self, Vec3};

/// Orthonormal camera basis (right, up, forward) with world +z as up hint.
pub fn view_basis(view: &ViewSpec) -> (Vec3, Vec3, Vec3) {
    let forward = geom::unit(geom::sub(view.look_at, view.camera_pos)).unwrap_or([0.0, 1.0, 0.0]);
    let world_up = if forward[2].abs() > 0.99 {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let right = geom::unit(geom::cross(forward, world_up)).unwrap_or([1.0, 0.0, 0.0]);
    let up = geom::cross(right, forward);
    (right, up, forward)
}

/// World point to fractional pixel coordinates (col, row).
pub fn project(view: &ViewSpec, p: Vec3, width: usize, height: usize) -> (f32, f32) {
    let (right, up, _) = view_basis(view);
    let rel = geom::sub(p, view.look_at);
    let u = geom::dot(rel, right) / view.ortho_half_extent;
    let v = geom::dot(rel, up) / view.ortho_half_extent;
    let col = (u * 0.5 + 0.5) * (width as f32 - 1.0);
    let row = (0.5 - v * 0.5) * (height as f32 - 1.0);
    (col, row)
}

/// Invert the projection for a point of known height `z`. Returns `None`
/// when the view renders the xy-plane degenerately.
pub fn unproject(
    view: &ViewSpec,
    col: f32,
    row: f32,
    z: f32,
    width: usize,
    height: usize,
) -> Option<Vec3> {
    let (right, up, _) = view_basis(view);
    let u = (col / (width as f32 - 1.0) * 2.0 - 1.0) * view.ortho_half_extent;
    let v = (1.0 - row / (height as f32 - 1.0) * 2.0) * view.ortho_half_extent;
    let dz = z - view.look_at[2];
    let bu = u - right[2] * dz;
    let bv = v - up[2] * dz;
    let det = right[0] * up[1] - right[1] * up[0];
    if det.abs() < 1e-9 {
        return None;
    }
    let dx = (bu * up[1] - bv * right[1]) / det;
    let dy = (bv * right[0] - bu * up[0]) / det;
    Some([view.look_at[0] + dx, view.look_at[1] + dy, z])
}

fn fill_rect(img: &mut Image, cx: f32, cy: f32, half_w: f32, half_h: f32, rgb: [u8; 3]) {
    let x0 = (cx - half_w).floor().max(0.0) as isize;
    let x1 = (cx + half_w).ceil().min(img.width as f32 - 1.0) as isize;
    let y0 = (cy - half_h).floor().max(0.0) as isize;
    let y1 = (cy + half_h).ceil().min(img.height as f32 - 1.0) as isize;
    if x1 < 0 || y1 < 0 {
        return;
    }
    for y in y0..=y1 {
        for x in x0..=x1 {
            if x >= 0 && y >= 0 {
                img.put_pixel(y as usize, x as usize, rgb);
            }
        }
    }
}

fn fill_circle(img: &mut Image, cx: f32, cy: f32, r: f32, rgb: [u8; 3]) {
    let x0 = (cx - r).floor().max(0.0) as isize;
    let x1 = (cx + r).ceil().min(img.width as f32 - 1.0) as isize;
    let y0 = (cy - r).floor().max(0.0) as isize;
    let y1 = (cy + r).ceil().min(img.height as f32 - 1.0) as isize;
    if x1 < 0 || y1 < 0 {
        return;
    }
    let r2 = r * r;
    for y in y0..=y1 {
        for x in x0..=x1 {
            if x < 0 || y < 0 {
                continue;
            }
            let dx = x as f32 - cx;
            let dy = y as f32 - cy;
            if dx * dx + dy * dy <= r2 {
                img.put_pixel(y as usize, x as usize, rgb);
            }
        }
    }
}

/// Deterministic rasterization of a world state.
pub fn render(state: &WorldState, cfg: &DomainConfig, height: usize, width: usize) -> Image {
    let mut img = Image::filled(height, width, cfg.color("background"));
    let px_per_unit = width as f32 / (2.0 * cfg.view.ortho_half_extent);
    let proj = |p: Vec3| project(&cfg.view, p, width, height);

    for c in &state.containers {
        let (x, y) = proj(c.pos);
        let r = if c.name == "cylinder" {
            super::CYLINDER_RADIUS * px_per_unit
        } else {
            0.055 * px_per_unit
        };
        fill_circle(&mut img, x, y, r.max(2.0), cfg.color(&c.name));
    }

    if let Some(chain) = &state.chain {
        let flex_color = cfg.color(state.chain_name.as_deref().unwrap_or("beads"));
        for link in chain.iter().skip(1) {
            let (x, y) = proj(*link);
            fill_circle(&mut img, x, y, (0.012 * px_per_unit).max(1.0), flex_color);
        }
    }

    // Carriers first so objects riding inside them stay visible.
    for o in state.objects.iter().filter(|o| o.carrier) {
        let (x, y) = proj(o.pos);
        fill_circle(&mut img, x, y, (0.04 * px_per_unit).max(2.0), cfg.color(&o.name));
    }
    for o in state.objects.iter().filter(|o| !o.carrier) {
        let (x, y) = proj(o.pos);
        let color = cfg.color(&o.name);
        if state.chain.is_some() {
            fill_circle(&mut img, x, y, (0.018 * px_per_unit).max(1.5), color);
        } else {
            let h = (0.025 * px_per_unit).max(1.5);
            fill_rect(&mut img, x, y, h, h, color);
        }
    }

    // Gripper glyph: two finger bars whose gap tracks the aperture, plus a
    // crossbar on top.
    let (gx, gy) = proj(state.gripper_pos);
    let s = width as f32 / 64.0;
    let g = cfg.color("gripper");
    let bar_hw = (0.8 * s).max(0.5);
    let bar_hh = (4.5 * s).max(2.0);
    let half_gap = (1.0 + state.gripper_aperture * 4.0) * s;
    fill_rect(&mut img, gx - half_gap - bar_hw, gy, bar_hw, bar_hh, g);
    fill_rect(&mut img, gx + half_gap + bar_hw, gy, bar_hw, bar_hh, g);
    fill_rect(
        &mut img,
        gx,
        gy - bar_hh - 0.8 * s,
        half_gap + 2.0 * bar_hw,
        (0.9 * s).max(0.5),
        g,
    );
    img
}

/// Pixel centroid of all exact palette-color matches; `None` when the color
/// is absent (e.g. fully occluded).
pub fn blob_centroid(img: &Image, rgb: [u8; 3]) -> Option<(f32, f32)> {
    let mut sx = 0.0f64;
    let mut sy = 0.0f64;
    let mut n = 0usize;
    for row in 0..img.height {
        for col in 0..img.width {
            if img.pixel(row, col) == rgb {
                sx += col as f64;
                sy += row as f64;
                n += 1;
            }
        }
    }
    if n == 0 {
        None
    } else {
        Some(((sx / n as f64) as f32, (sy / n as f64) as f32))
    }
}

/// Mean absolute per-pixel difference between two images of equal shape.
pub fn mean_pixel_difference(a: &Image, b: &Image) -> f32 {
    assert_eq!(a.data.len(), b.data.len());
    let sum: u64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (*x as i32 - *y as i32).unsigned_abs() as u64)
        .sum();
    sum as f32 / a.data.len() as f32
}

/// Fraction of pixels that differ in any channel.
pub fn differing_pixel_fraction(a: &Image, b: &Image) -> f32 {
    assert_eq!(a.data.len(), b.data.len());
    let mut n = 0usize;
    let total = a.data.len() / 3;
    for i in 0..total {
        if a.data[i * 3..i * 3 + 3] != b.data[i * 3..i * 3 + 3] {
            n += 1;
        }
    }
    n as f32 / total as f32
}
