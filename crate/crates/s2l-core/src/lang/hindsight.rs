//! Hindsight stage labeling: infer per-frame stages from images alone by
//! combining a palette-keyed color-blob detector with a learned gripper state
//! predictor, then replaying the scripted-policy branch logic on the
//! estimated positions. Frames where detection fails carry the previous
//! frame's stage forward; an object that disappears behind a closed gripper
//! is assumed to be held by it.

use crate::data::{Image, Suite, Trajectory};
use crate::geom::{self, Vec3};
use crate::scripted::DROP_HOVER_Z;
use crate::sim::render::{blob_centroid, unproject};
use crate::sim::{DomainConfig, OBJECT_Z, WRAP_DONE_ANGLE};
use crate::task::{TaskKind, TaskSpec, WrapDirection};

#[derive(Debug, Clone, Copy)]
pub struct GripperPrediction {
    pub pos: Vec3,
    pub closed: bool,
}

/// Image-only gripper state estimator (position plus open/closed).
pub trait GripperStatePredictor {
    fn predict(&self, image: &Image) -> GripperPrediction;
}

/// Distance threshold for replayed branch tests; looser than the scripted
/// policy's own threshold to absorb estimation error.
const REPLAY_DIST_THRESH: f32 = 0.035;
/// Gripper-object xy distance below which a closed gripper counts as holding
/// the object.
const REPLAY_GRASP_XY: f32 = 0.05;
const REPLAY_LIFT_Z: f32 = 0.115;
const REPLAY_PLACE_XY: f32 = 0.07;

struct Detector<'a> {
    cfg: &'a DomainConfig,
}

impl<'a> Detector<'a> {
    fn world_pos(&self, image: &Image, name: &str, z: f32) -> Option<Vec3> {
        let (col, row) = blob_centroid(image, self.cfg.color(name))?;
        unproject(&self.cfg.view, col, row, z, image.width, image.height)
    }
}

/// Tracks one movable entity across frames. A grasp is latched when the
/// gripper closes near the entity's last seen position and released when it
/// opens; while latched the entity position is the gripper position, since
/// a held blob is occluded (and its visible sliver biased) by the glyph.
struct EntityTracker {
    name: String,
    last: Option<Vec3>,
    held: bool,
    prev_closed: bool,
}

impl EntityTracker {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            last: None,
            held: false,
            prev_closed: false,
        }
    }

    fn update(&mut self, det: &Detector, image: &Image, pred: &GripperPrediction) -> Option<Vec3> {
        let det_pos = det.world_pos(image, &self.name, OBJECT_Z);
        if pred.closed && !self.prev_closed {
            if let Some(p) = self.last.or(det_pos) {
                if geom::dist_xy(pred.pos, p) <= 2.0 * REPLAY_GRASP_XY {
                    self.held = true;
                }
            }
        }
        if !pred.closed {
            self.held = false;
        }
        self.prev_closed = pred.closed;
        let pos = if self.held {
            Some(pred.pos)
        } else {
            det_pos.or(self.last)
        };
        if let Some(p) = pos {
            self.last = Some(p);
        }
        pos
    }
}

struct PhaseReplay {
    place_attempted: bool,
    was_grasped: bool,
}

impl PhaseReplay {
    fn new() -> Self {
        Self {
            place_attempted: false,
            was_grasped: false,
        }
    }

    /// Stage within one pick-place phase from estimated quantities.
    fn step(&mut self, ee: Vec3, open: bool, obj: Vec3, cont: Vec3, grasped: bool) -> u32 {
        if grasped {
            self.was_grasped = true;
        }
        let drop = [cont[0], cont[1], DROP_HOVER_Z];
        if self.was_grasped && open && geom::dist_xy(obj, cont) <= REPLAY_PLACE_XY {
            self.place_attempted = true;
        }
        if self.place_attempted {
            6
        } else if !grasped && geom::dist(ee, obj) > REPLAY_DIST_THRESH {
            0
        } else if !grasped {
            2
        } else if ee[2] < REPLAY_LIFT_Z {
            3
        } else if geom::dist(ee, drop) > REPLAY_DIST_THRESH {
            4
        } else {
            5
        }
    }
}

/// Infer the stage sequence of a trajectory from its images.
pub fn hindsight_label(
    traj: &Trajectory,
    task: &TaskSpec,
    cfg: &DomainConfig,
    predictor: &dyn GripperStatePredictor,
) -> Vec<u32> {
    let detector = Detector { cfg };
    match &task.kind {
        TaskKind::Wrap { grasp_obj, .. } => label_wrap(traj, &detector, predictor, grasp_obj, task),
        TaskKind::TwoStep { obj, cont1, cont2 } => {
            label_two_step(traj, &detector, predictor, obj, cont1, cont2)
        }
        TaskKind::PickPlace { obj, cont } => {
            label_pick_place(traj, &detector, predictor, obj, cont)
        }
    }
}

fn label_pick_place(
    traj: &Trajectory,
    det: &Detector,
    predictor: &dyn GripperStatePredictor,
    obj_name: &str,
    cont_name: &str,
) -> Vec<u32> {
    let mut replay = PhaseReplay::new();
    let mut obj_tracker = EntityTracker::new(obj_name);
    let mut last_cont: Option<Vec3> = None;
    let mut last_stage = 0u32;
    let mut out = Vec::with_capacity(traj.frames.len());
    for f in &traj.frames {
        let pred = predictor.predict(&f.image);
        let obj = obj_tracker.update(det, &f.image, &pred);
        let cont = det.world_pos(&f.image, cont_name, OBJECT_Z).or(last_cont);
        let stage = match (obj, cont) {
            (Some(o), Some(c)) => {
                last_cont = Some(c);
                replay.step(pred.pos, !pred.closed, o, c, obj_tracker.held)
            }
            _ => last_stage,
        };
        last_stage = stage;
        out.push(stage);
    }
    out
}

fn label_two_step(
    traj: &Trajectory,
    det: &Detector,
    predictor: &dyn GripperStatePredictor,
    obj_name: &str,
    cont1_name: &str,
    cont2_name: &str,
) -> Vec<u32> {
    let mut phases = [PhaseReplay::new(), PhaseReplay::new()];
    let mut s_i = 0usize;
    let mut food_tracker = EntityTracker::new(obj_name);
    let mut pot_tracker = EntityTracker::new(cont1_name);
    let mut last_stove: Option<Vec3> = None;
    let mut last_stage = 0u32;
    let mut out = Vec::with_capacity(traj.frames.len());
    for f in &traj.frames {
        let pred = predictor.predict(&f.image);
        let food = food_tracker.update(det, &f.image, &pred);
        let pot = pot_tracker.update(det, &f.image, &pred);
        let stove = det.world_pos(&f.image, cont2_name, OBJECT_Z).or(last_stove);
        let stage = match (food, pot, stove) {
            (Some(food), Some(pot), Some(stove)) => {
                last_stove = Some(stove);
                let (o, c, held) = if s_i == 0 {
                    (food, pot, food_tracker.held)
                } else {
                    (pot, stove, pot_tracker.held)
                };
                let stage = phases[s_i].step(pred.pos, !pred.closed, o, c, held) + 7 * s_i as u32;
                if s_i == 0
                    && phases[0].was_grasped
                    && !pred.closed
                    && geom::dist_xy(food, pot) <= REPLAY_PLACE_XY
                {
                    s_i = 1;
                }
                stage
            }
            _ => last_stage,
        };
        last_stage = stage;
        out.push(stage);
    }
    out
}

fn label_wrap(
    traj: &Trajectory,
    det: &Detector,
    predictor: &dyn GripperStatePredictor,
    grasp_name: &str,
    task: &TaskSpec,
) -> Vec<u32> {
    let direction = task.wrap_direction().unwrap_or(WrapDirection::Counterclockwise);
    let mut out = Vec::with_capacity(traj.frames.len());
    let mut plug_tracker = EntityTracker::new(grasp_name);
    let mut last_stage = 0u32;
    let mut center: Option<Vec3> = None;
    let mut accum = 0.0f64;
    let mut prev_ee: Option<Vec3> = None;
    let mut was_grasped = false;
    let mut place_attempted = false;
    for f in &traj.frames {
        let pred = predictor.predict(&f.image);
        if center.is_none() {
            center = det.world_pos(&f.image, "cylinder", OBJECT_Z);
        }
        let plug = plug_tracker.update(det, &f.image, &pred);
        let stage = match (plug, center) {
            (Some(plug), Some(c)) => {
                let grasped = plug_tracker.held;
                if grasped {
                    was_grasped = true;
                    if let Some(prev) = prev_ee {
                        let ra = [(prev[0] - c[0]) as f64, (prev[1] - c[1]) as f64];
                        let rb = [(pred.pos[0] - c[0]) as f64, (pred.pos[1] - c[1]) as f64];
                        let na = (ra[0] * ra[0] + ra[1] * ra[1]).sqrt();
                        let nb = (rb[0] * rb[0] + rb[1] * rb[1]).sqrt();
                        if na > 1e-9 && nb > 1e-9 {
                            accum += (ra[0] * rb[1] - ra[1] * rb[0])
                                .atan2(ra[0] * rb[0] + ra[1] * rb[1]);
                        }
                    }
                }
                let signed = match direction {
                    WrapDirection::Counterclockwise => accum,
                    WrapDirection::Clockwise => -accum,
                } as f32;
                if was_grasped && !pred.closed {
                    place_attempted = true;
                }
                if place_attempted {
                    if signed >= WRAP_DONE_ANGLE * 0.95 {
                        8
                    } else {
                        9
                    }
                } else if !grasped && geom::dist(pred.pos, plug) > REPLAY_DIST_THRESH {
                    0
                } else if !grasped {
                    2
                } else if pred.pos[2] < REPLAY_LIFT_Z {
                    3
                } else {
                    let rel = [pred.pos[0] - c[0], pred.pos[1] - c[1]];
                    let theta = rel[1].atan2(rel[0]);
                    let pi = std::f32::consts::PI;
                    if theta.abs() >= 3.0 * pi / 4.0 {
                        4
                    } else if theta <= -pi / 4.0 {
                        5
                    } else if theta <= pi / 4.0 {
                        6
                    } else {
                        7
                    }
                }
            }
            _ => last_stage,
        };
        prev_ee = Some(pred.pos);
        last_stage = stage;
        out.push(stage);
    }
    out
}

/// Fraction of frames where the inferred stages match the recorded ones.
pub fn stage_agreement(truth: &[u32], inferred: &[u32]) -> f32 {
    if truth.is_empty() {
        return 1.0;
    }
    let same = truth.iter().zip(inferred).filter(|(a, b)| a == b).count();
    same as f32 / truth.len() as f32
}

/// Ground-truth gripper labels for predictor training: position plus the
/// open/closed bit (aperture below 0.5 counts as closed).
pub fn gripper_truth(proprio: &[f32]) -> GripperPrediction {
    GripperPrediction {
        pos: [proprio[0], proprio[1], proprio[2]],
        closed: proprio[3] < 0.5,
    }
}

/// Suite helper used by callers that label whole datasets.
pub fn stage_count_for(suite: Suite) -> usize {
    crate::lang::stage_count(suite)
}
