//! Deterministic kinematic manipulation simulator with two configurable
//! domains. The source/target gap is realized through the camera view, the
//! palette, a first-order lag coefficient (the friction/damping analogue),
//! the per-step action scale (the control-frequency analogue), and the
//! episode horizon band.
//!
//! Stepping is pure: `step` takes a state by value reference and returns the
//! next state, so episodes can run concurrently with independent RNG streams.

pub mod render;

use crate::data::{Domain, Suite};
use crate::geom::{self, Vec3};
use crate::rng::{derive_seed, rng_from_seed};
use crate::task::{object_name, TaskKind, TaskSpec};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const WORKSPACE_XY: (f32, f32) = (-0.4, 0.4);
pub const WORKSPACE_Z: (f32, f32) = (0.0, 0.4);
pub const OBJECT_Z: f32 = 0.02;
pub const GRIPPER_HOME: Vec3 = [0.0, 0.0, 0.22];
/// Objects within this distance of the gripper can be grasped.
pub const GRASP_RADIUS: f32 = 0.03;
/// Aperture below which a grasp engages.
pub const GRASP_CLOSE_APERTURE: f32 = 0.4;
/// Aperture above which a held object is released.
pub const RELEASE_APERTURE: f32 = 0.6;
/// Aperture at or above which the gripper counts as open for success checks.
pub const OPEN_APERTURE: f32 = 0.7;
/// Placement tolerance (xy) for success checks.
pub const PLACE_RADIUS: f32 = 0.05;
pub const CYLINDER_RADIUS: f32 = 0.06;
pub const CHAIN_LINKS: usize = 8;
pub const CHAIN_LINK_LEN: f32 = 0.03;
pub const WRAP_SUCCESS_ANGLE: f32 = 5.0 * std::f32::consts::PI / 3.0;
/// The scripted policy keeps wrapping until past this angle, leaving a margin
/// over the success threshold.
pub const WRAP_DONE_ANGLE: f32 = 11.0 * std::f32::consts::PI / 6.0;
pub const SCENARIO_GRID_SIZE: usize = 10;
/// Minimum separation between randomized scene entities at reset.
pub const MIN_SEPARATION: f32 = 0.12;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("init_index {index} out of range (grid size {grid})")]
    InvalidInitIndex { index: usize, grid: usize },
    #[error("invalid domain config: {detail}")]
    InvalidConfig { detail: String },
    #[error("could not place scene entities with the required separation")]
    PlacementFailed,
}

/// Orthographic camera. The basis is derived from the camera position and
/// look-at point with world +z as up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewSpec {
    pub camera_pos: Vec3,
    pub look_at: Vec3,
    /// World units from image center to the left/right edge.
    pub ortho_half_extent: f32,
}

/// Ranges for the domain-randomization baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomizationRanges {
    /// Max absolute per-channel palette perturbation (0..=255 scale).
    pub palette_jitter: u8,
    /// Uniform range for the lag coefficient.
    pub lag_range: (f32, f32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainConfig {
    pub name: Domain,
    pub view: ViewSpec,
    /// Object-role name to RGB color; also keyed by entity names.
    pub palette: BTreeMap<String, [u8; 3]>,
    /// Fraction of the commanded delta executed per step, in (0, 1].
    pub lag: f32,
    /// Workspace units traveled per unit of clipped action per step.
    pub action_scale: f32,
    /// Max aperture change per step.
    pub aperture_rate: f32,
    pub control_hz: f32,
    /// (min, max) episode steps; collection draws uniformly from this band.
    pub horizon: (u32, u32),
    pub randomization: Option<RandomizationRanges>,
}

impl DomainConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.lag > 0.0 && self.lag <= 1.0) {
            return Err(SimError::InvalidConfig {
                detail: format!("lag {} outside (0, 1]", self.lag),
            });
        }
        if self.horizon.0 > self.horizon.1 {
            return Err(SimError::InvalidConfig {
                detail: format!("horizon min {} > max {}", self.horizon.0, self.horizon.1),
            });
        }
        if !(self.action_scale > 0.0) {
            return Err(SimError::InvalidConfig {
                detail: format!("action_scale {} must be positive", self.action_scale),
            });
        }
        if !(self.aperture_rate > 0.0) {
            return Err(SimError::InvalidConfig {
                detail: format!("aperture_rate {} must be positive", self.aperture_rate),
            });
        }
        Ok(())
    }

    /// Third-person oblique view, no lag, 50 Hz control, long horizons.
    pub fn source_default() -> Self {
        Self {
            name: Domain::Source,
            view: ViewSpec {
                camera_pos: [0.0, -0.55, 0.45],
                look_at: [0.0, 0.0, 0.05],
                ortho_half_extent: 0.45,
            },
            palette: source_palette(),
            lag: 1.0,
            action_scale: 0.08,
            aperture_rate: 0.08,
            control_hz: 50.0,
            horizon: (200, 320),
            randomization: None,
        }
    }

    /// Over-the-shoulder view from the +x side, lagged dynamics, 2 Hz
    /// control, short horizons.
    pub fn target_default() -> Self {
        Self {
            name: Domain::Target,
            view: ViewSpec {
                camera_pos: [0.55, 0.15, 0.32],
                look_at: [0.0, 0.0, 0.05],
                ortho_half_extent: 0.34,
            },
            palette: target_palette(),
            lag: 0.6,
            action_scale: 1.0,
            aperture_rate: 0.45,
            control_hz: 2.0,
            horizon: (18, 45),
            randomization: None,
        }
    }

    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::Source => Self::source_default(),
            Domain::Target => Self::target_default(),
        }
    }

    pub fn color(&self, name: &str) -> [u8; 3] {
        self.palette.get(name).copied().unwrap_or([255, 0, 255])
    }
}

fn palette_from(pairs: &[(&str, [u8; 3])]) -> BTreeMap<String, [u8; 3]> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect()
}

fn source_palette() -> BTreeMap<String, [u8; 3]> {
    palette_from(&[
        ("background", [38, 40, 48]),
        ("gripper", [235, 235, 235]),
        ("milk", [228, 222, 208]),
        ("bread", [205, 140, 60]),
        ("can", [200, 40, 40]),
        ("cereal", [220, 200, 60]),
        ("carrot", [235, 120, 35]),
        ("coaster", [120, 85, 50]),
        ("plate", [90, 160, 220]),
        ("pot", [110, 110, 125]),
        ("stove", [150, 60, 160]),
        ("bowl", [80, 170, 90]),
        ("beads", [80, 190, 120]),
        ("last bead", [250, 90, 200]),
        ("cord", [150, 150, 60]),
        ("white plug", [240, 240, 248]),
        ("cylinder", [130, 130, 140]),
    ])
}

fn target_palette() -> BTreeMap<String, [u8; 3]> {
    palette_from(&[
        ("background", [214, 208, 196]),
        ("gripper", [25, 25, 30]),
        ("milk", [120, 120, 200]),
        ("bread", [140, 80, 30]),
        ("can", [160, 20, 20]),
        ("cereal", [180, 160, 20]),
        ("carrot", [230, 110, 40]),
        ("coaster", [80, 60, 40]),
        ("plate", [60, 110, 170]),
        ("pot", [70, 75, 90]),
        ("stove", [120, 40, 130]),
        ("bowl", [50, 130, 60]),
        ("beads", [60, 150, 90]),
        ("last bead", [210, 60, 170]),
        ("cord", [120, 120, 40]),
        ("white plug", [245, 245, 252]),
        ("cylinder", [90, 100, 115]),
    ])
}

/// A movable scene object. `carrier` objects (the pot in the two-step suite)
/// can hold other objects: once an object is released inside a carrier it
/// follows the carrier's position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjEntity {
    pub name: String,
    pub pos: Vec3,
    pub grasped: bool,
    pub carrier: bool,
    pub carried_by: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainerEntity {
    pub name: String,
    pub pos: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldState {
    pub gripper_pos: Vec3,
    /// 1 fully open, 0 fully closed.
    pub gripper_aperture: f32,
    pub objects: Vec<ObjEntity>,
    pub containers: Vec<ContainerEntity>,
    /// Wrap suite only: link positions, `chain[0]` is the graspable end.
    pub chain: Option<Vec<Vec3>>,
    /// Wrap suite only: palette name of the chain body.
    pub chain_name: Option<String>,
    /// Wrap suite only: cylinder center.
    pub center_pos: Option<Vec3>,
    pub t: u32,
    /// Signed angle (radians, ccw positive) accumulated by `chain[0]` around
    /// `center_pos` since reset.
    pub wrap_accum: f32,
}

impl WorldState {
    pub fn grasped_object(&self) -> Option<usize> {
        self.objects.iter().position(|o| o.grasped)
    }

    pub fn gripper_open(&self) -> bool {
        self.gripper_aperture >= OPEN_APERTURE && self.grasped_object().is_none()
    }
}

/// One of the fixed evaluation initializations: `init_index` selects a point
/// on the 10-point placement grid, `seed` drives the remaining scene draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalScenario {
    pub suite: Suite,
    pub domain: Domain,
    pub init_index: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct Region {
    pub x: (f32, f32),
    pub y: (f32, f32),
}

impl Region {
    pub fn contains_xy(&self, p: Vec3) -> bool {
        p[0] >= self.x.0 && p[0] <= self.x.1 && p[1] >= self.y.0 && p[1] <= self.y.1
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec3 {
        let x: f32 = rng.random_range(self.x.0..=self.x.1);
        let y: f32 = rng.random_range(self.y.0..=self.y.1);
        [x, y, OBJECT_Z]
    }
}

/// Object placement region per suite (the "valid initial object positions").
pub fn placement_region(suite: Suite) -> Region {
    match suite {
        Suite::Stack => Region {
            x: (-0.3, 0.3),
            y: (-0.3, 0.3),
        },
        Suite::TwoStep => Region {
            x: (0.05, 0.35),
            y: (0.05, 0.35),
        },
        Suite::Wrap => Region {
            x: (-0.32, -0.22),
            y: (-0.08, 0.08),
        },
    }
}

/// The normative 10-point evaluation grid: a 5x2 lattice spanning the
/// placement region, x at the 0/4..4/4 quantiles, y at the 1/4 and 3/4
/// quantiles.
pub fn scenario_grid(suite: Suite) -> Vec<Vec3> {
    let r = placement_region(suite);
    let mut out = Vec::with_capacity(SCENARIO_GRID_SIZE);
    for j in 0..2 {
        for i in 0..5 {
            let x = r.x.0 + (r.x.1 - r.x.0) * (i as f32) / 4.0;
            let y = r.y.0 + (r.y.1 - r.y.0) * ((2 * j + 1) as f32) / 4.0;
            out.push([x, y, OBJECT_Z]);
        }
    }
    out
}

pub enum ResetSpec {
    Random { seed: u64 },
    Scenario(EvalScenario),
}

fn sample_separated(
    rng: &mut impl Rng,
    region: Region,
    taken: &[Vec3],
    min_sep: f32,
) -> Result<Vec3, SimError> {
    for _ in 0..10_000 {
        let p = region.sample(rng);
        if taken.iter().all(|q| geom::dist_xy(p, *q) >= min_sep) {
            return Ok(p);
        }
    }
    Err(SimError::PlacementFailed)
}

/// Reset the world for a task. Scenario resets place the object on the fixed
/// grid; the remaining entities are drawn from the scenario seed.
pub fn reset(cfg: &DomainConfig, task: &TaskSpec, spec: &ResetSpec) -> Result<WorldState, SimError> {
    cfg.validate()?;
    let suite = task.suite;
    let (obj_pos, mut rng) = match spec {
        ResetSpec::Random { seed } => {
            let mut rng = rng_from_seed(derive_seed(*seed, 0xE5E7));
            let p = placement_region(suite).sample(&mut rng);
            (p, rng)
        }
        ResetSpec::Scenario(sc) => {
            let grid = scenario_grid(suite);
            if sc.init_index >= grid.len() {
                return Err(SimError::InvalidInitIndex {
                    index: sc.init_index,
                    grid: grid.len(),
                });
            }
            let rng = rng_from_seed(derive_seed(sc.seed, 0x5C30 ^ sc.init_index as u64));
            (grid[sc.init_index], rng)
        }
    };

    let mut objects = Vec::new();
    let mut containers = Vec::new();
    let mut chain = None;
    let mut chain_name = None;
    let mut center_pos = None;

    match &task.kind {
        TaskKind::PickPlace { obj, cont } => {
            objects.push(ObjEntity {
                name: obj.clone(),
                pos: obj_pos,
                grasped: false,
                carrier: false,
                carried_by: None,
            });
            let cont_pos =
                sample_separated(&mut rng, placement_region(suite), &[obj_pos], MIN_SEPARATION)?;
            containers.push(ContainerEntity {
                name: cont.clone(),
                pos: cont_pos,
            });
        }
        TaskKind::TwoStep { obj, cont1, cont2 } => {
            let region = placement_region(suite);
            let pot_pos = sample_separated(&mut rng, region, &[obj_pos], MIN_SEPARATION)?;
            let stove_pos =
                sample_separated(&mut rng, region, &[obj_pos, pot_pos], MIN_SEPARATION)?;
            objects.push(ObjEntity {
                name: obj.clone(),
                pos: obj_pos,
                grasped: false,
                carrier: false,
                carried_by: None,
            });
            objects.push(ObjEntity {
                name: cont1.clone(),
                pos: pot_pos,
                grasped: false,
                carrier: true,
                carried_by: None,
            });
            containers.push(ContainerEntity {
                name: cont2.clone(),
                pos: stove_pos,
            });
        }
        TaskKind::Wrap {
            grasp_obj,
            flex_obj,
            direction: _,
        } => {
            let mut links = Vec::with_capacity(CHAIN_LINKS);
            for i in 0..CHAIN_LINKS {
                links.push([
                    obj_pos[0] - CHAIN_LINK_LEN * i as f32,
                    obj_pos[1],
                    OBJECT_Z,
                ]);
            }
            chain = Some(links);
            chain_name = Some(flex_obj.clone());
            center_pos = Some([0.0, 0.0, OBJECT_Z]);
            objects.push(ObjEntity {
                name: grasp_obj.clone(),
                pos: obj_pos,
                grasped: false,
                carrier: false,
                carried_by: None,
            });
            containers.push(ContainerEntity {
                name: "cylinder".into(),
                pos: [0.0, 0.0, OBJECT_Z],
            });
        }
    }

    Ok(WorldState {
        gripper_pos: GRIPPER_HOME,
        gripper_aperture: 1.0,
        objects,
        containers,
        chain,
        chain_name,
        center_pos,
        t: 0,
        wrap_accum: 0.0,
    })
}

fn sanitize(v: f32) -> f32 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// Signed xy angle from `a` to `b` around `center`; zero when either point
/// coincides with the center. Computed in f64 so long accumulations stay
/// accurate.
fn angle_increment(center: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ra = [(a[0] - center[0]) as f64, (a[1] - center[1]) as f64];
    let rb = [(b[0] - center[0]) as f64, (b[1] - center[1]) as f64];
    let na = (ra[0] * ra[0] + ra[1] * ra[1]).sqrt();
    let nb = (rb[0] * rb[0] + rb[1] * rb[1]).sqrt();
    if na < 1e-12 || nb < 1e-12 {
        return 0.0;
    }
    let cross = ra[0] * rb[1] - ra[1] * rb[0];
    let dot = ra[0] * rb[0] + ra[1] * rb[1];
    cross.atan2(dot)
}

/// Total signed accumulated angle of a point trail about `center` (positive
/// counterclockwise). Steps where the point coincides with the center
/// contribute zero.
pub fn wrap_angle(trail: &[Vec3], center: Vec3) -> f32 {
    let mut acc = 0.0f64;
    for w in trail.windows(2) {
        acc += angle_increment(center, w[0], w[1]);
    }
    acc as f32
}

fn chain_relax(chain: &mut [Vec3], center: Option<Vec3>, head_pinned: bool) {
    let collide = |p: &mut Vec3| {
        if let Some(c) = center {
            let dx = p[0] - c[0];
            let dy = p[1] - c[1];
            let d = (dx * dx + dy * dy).sqrt();
            let r = CYLINDER_RADIUS + 0.005;
            if d < r {
                if d < 1e-9 {
                    p[0] = c[0] + r;
                } else {
                    p[0] = c[0] + dx / d * r;
                    p[1] = c[1] + dy / d * r;
                }
            }
        }
    };
    let ftl = |chain: &mut [Vec3]| {
        for i in 1..chain.len() {
            let prev = chain[i - 1];
            let dir = geom::sub(chain[i], prev);
            let u = geom::unit(dir).unwrap_or([-1.0, 0.0, 0.0]);
            chain[i] = geom::add(prev, geom::scale(u, CHAIN_LINK_LEN));
        }
    };
    for _ in 0..6 {
        if !head_pinned {
            collide(&mut chain[0]);
        }
        for i in 1..chain.len() {
            collide(&mut chain[i]);
        }
        ftl(chain);
    }
    // Final pass keeps link lengths exact; residual cylinder penetration
    // after it is bounded by the per-step motion.
    ftl(chain);
}

/// Advance the world by one step. Inputs are clipped, never faulting: the
/// xyz delta is clamped to [-1, 1] per axis and scaled by `lag *
/// action_scale`; the gripper command in [-1, 0] moves the aperture toward
/// its target at the domain's aperture rate.
pub fn step(state: &WorldState, action: [f32; 4], cfg: &DomainConfig) -> WorldState {
    let mut s = state.clone();

    let delta = geom::scale(
        geom::clamp_vec(
            [sanitize(action[0]), sanitize(action[1]), sanitize(action[2])],
            -1.0,
            1.0,
        ),
        cfg.lag * cfg.action_scale,
    );
    s.gripper_pos = [
        (s.gripper_pos[0] + delta[0]).clamp(WORKSPACE_XY.0, WORKSPACE_XY.1),
        (s.gripper_pos[1] + delta[1]).clamp(WORKSPACE_XY.0, WORKSPACE_XY.1),
        (s.gripper_pos[2] + delta[2]).clamp(WORKSPACE_Z.0, WORKSPACE_Z.1),
    ];

    let g_cmd = sanitize(action[3]).clamp(-1.0, 0.0);
    let target_aperture = 1.0 + g_cmd;
    let d_ap = (target_aperture - s.gripper_aperture).clamp(-cfg.aperture_rate, cfg.aperture_rate);
    s.gripper_aperture = (s.gripper_aperture + d_ap).clamp(0.0, 1.0);

    // Release before engage so a single step cannot hand an object over.
    if let Some(gi) = s.grasped_object() {
        if s.gripper_aperture > RELEASE_APERTURE {
            s.objects[gi].grasped = false;
            s.objects[gi].pos[2] = OBJECT_Z;
            // An object released inside a carrier rides with it afterwards.
            let carrier = s
                .objects
                .iter()
                .enumerate()
                .find(|(j, o)| {
                    *j != gi && o.carrier && geom::dist_xy(o.pos, s.objects[gi].pos) <= PLACE_RADIUS
                })
                .map(|(j, _)| j);
            if let Some(j) = carrier {
                if !s.objects[gi].carrier {
                    s.objects[gi].carried_by = Some(j);
                    s.objects[gi].pos =
                        [s.objects[j].pos[0], s.objects[j].pos[1], OBJECT_Z + 0.005];
                }
            }
        } else {
            s.objects[gi].pos = s.gripper_pos;
        }
    } else if s.gripper_aperture < GRASP_CLOSE_APERTURE {
        // Nearest graspable object within reach; ties broken by list order.
        // Objects riding inside a carrier are not graspable.
        let mut best: Option<(usize, f32)> = None;
        for (i, o) in s.objects.iter().enumerate() {
            if o.carried_by.is_some() {
                continue;
            }
            let d = geom::dist(o.pos, s.gripper_pos);
            if d <= GRASP_RADIUS && best.map(|(_, bd)| d < bd).unwrap_or(true) {
                best = Some((i, d));
            }
        }
        if let Some((i, _)) = best {
            s.objects[i].grasped = true;
            s.objects[i].carried_by = None;
            s.objects[i].pos = s.gripper_pos;
        }
    }

    // Carried objects follow their carrier after all carrier motion resolves.
    for i in 0..s.objects.len() {
        if let Some(j) = s.objects[i].carried_by {
            let base = s.objects[j].pos;
            s.objects[i].pos = [base[0], base[1], base[2] + 0.005];
        }
    }

    if let Some(chain) = s.chain.as_mut() {
        let prev_head = state.chain.as_ref().expect("chain present")[0];
        let head_pinned = s.objects[0].grasped;
        chain[0] = s.objects[0].pos;
        chain_relax(chain, s.center_pos, head_pinned);
        s.objects[0].pos = chain[0];
        if let Some(c) = s.center_pos {
            s.wrap_accum += angle_increment(c, prev_head, chain[0]) as f32;
        }
    }

    s.t = state.t + 1;
    s
}

/// Episode outcome: success flag and subtasks-completed partial credit.
/// Two-step counts consecutive-from-start placements; a completed second
/// placement without the first counts zero.
pub fn success(history: &[WorldState], suite: Suite) -> (bool, u32) {
    let last = match history.last() {
        Some(s) => s,
        None => return (false, 0),
    };
    match suite {
        Suite::Stack => {
            let placed = geom::dist_xy(last.objects[0].pos, last.containers[0].pos) <= PLACE_RADIUS
                && !last.objects[0].grasped;
            let ok = placed && last.gripper_open();
            (ok, ok as u32)
        }
        Suite::TwoStep => {
            let p1 = geom::dist_xy(last.objects[0].pos, last.objects[1].pos) <= PLACE_RADIUS
                && !last.objects[0].grasped;
            let p2 = geom::dist_xy(last.objects[1].pos, last.containers[0].pos) <= PLACE_RADIUS
                && !last.objects[1].grasped;
            let subtasks = if p1 {
                if p2 {
                    2
                } else {
                    1
                }
            } else {
                0
            };
            (p1 && p2 && last.gripper_open(), subtasks)
        }
        Suite::Wrap => {
            let center = last.center_pos.unwrap_or([0.0, 0.0, 0.0]);
            let trail: Vec<Vec3> = history
                .iter()
                .filter_map(|s| s.chain.as_ref().map(|c| c[0]))
                .collect();
            let angle = wrap_angle(&trail, center);
            let ok = angle.abs() >= WRAP_SUCCESS_ANGLE
                && !last.objects[0].grasped
                && last.gripper_open();
            (ok, ok as u32)
        }
    }
}

/// Episode horizon for collection. Source-domain horizons are drawn
/// uniformly from the configured band; target-domain horizons are the
/// suite's nominal step count (18 for stack, 45 otherwise), clamped into
/// the band.
pub fn draw_horizon(cfg: &DomainConfig, suite: Suite, seed: u64) -> u32 {
    let (lo, hi) = cfg.horizon;
    match cfg.name {
        Domain::Target => {
            let nominal = match suite {
                Suite::Stack => 18,
                _ => 45,
            };
            nominal.clamp(lo, hi)
        }
        Domain::Source => {
            if lo == hi {
                return lo;
            }
            let mut rng = rng_from_seed(derive_seed(seed, 0x4021));
            rng.random_range(lo..=hi)
        }
    }
}

/// Fixed evaluation horizon per suite and domain.
pub fn eval_horizon(suite: Suite, domain: Domain) -> u32 {
    match (suite, domain) {
        (Suite::Stack, Domain::Target) => 18,
        (_, Domain::Target) => 45,
        (Suite::Stack, Domain::Source) => 280,
        (_, Domain::Source) => 320,
    }
}

/// Convenience: entity names a task puts in the scene, for rendering and
/// detection.
pub fn scene_entity_names(task: &TaskSpec) -> Vec<String> {
    let mut names = vec![object_name(task).to_string()];
    match &task.kind {
        TaskKind::PickPlace { cont, .. } => names.push(cont.clone()),
        TaskKind::TwoStep { cont1, cont2, .. } => {
            names.push(cont1.clone());
            names.push(cont2.clone());
        }
        TaskKind::Wrap { flex_obj, .. } => {
            names.push(flex_obj.clone());
            names.push("cylinder".into());
        }
    }
    names
}
