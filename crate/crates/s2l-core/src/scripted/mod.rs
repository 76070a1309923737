//! Reference expert policies. Each policy emits `(action, stage)` pairs; the
//! stage is the index of the branch that fired, which is also the index into
//! the suite's language template table.

pub mod collect;

pub use collect::{collect, collect_default, run_scripted_episode, CollectError, CollectOptions};

use crate::data::Suite;
use crate::geom::{self, Vec3};
use crate::sim::{WorldState, WRAP_DONE_ANGLE};
use crate::task::{TaskKind, TaskSpec, WrapDirection};

#[derive(Debug, Clone, Copy)]
pub struct PickPlaceParams {
    /// Distance at which the reach/transport branches hand over.
    pub dist_thresh: f32,
    /// Gripper height above which a grasped object counts as lifted.
    pub lift_z: f32,
}

impl Default for PickPlaceParams {
    fn default() -> Self {
        Self {
            dist_thresh: 0.02,
            lift_z: 0.12,
        }
    }
}

/// The branch that fired in one scripted pick-and-place step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Place already attempted: zero action.
    Hold,
    /// Move toward the target object, gripper open.
    Reach,
    /// Very close to the object: keep approaching and close the gripper.
    Close,
    /// Grasped but not lifted: straight up.
    Lift,
    /// Move toward the drop position.
    Transport,
    /// Above the drop position: open the gripper.
    Release,
}

impl Branch {
    /// Stage index within one pick-place phase. The "moving down over" and
    /// "above container" templates bracket branches that this policy passes
    /// through without a distinct if-case, so stage 1 is never emitted.
    pub fn stage(self) -> u32 {
        match self {
            Branch::Reach => 0,
            Branch::Close => 2,
            Branch::Lift => 3,
            Branch::Transport => 4,
            Branch::Release => 5,
            Branch::Hold => 6,
        }
    }
}

const CLOSE: f32 = -1.0;
const OPEN: f32 = 0.0;

/// Gripper height targeted when transporting toward a drop point. Kept above
/// `lift_z` so the transport branch never re-triggers the lift branch.
pub const DROP_HOVER_Z: f32 = 0.14;

/// One step of the scripted pick-and-place function. Exactly one branch
/// fires; noise is the caller's responsibility. Only the close/open branches
/// change the gripper command: motion branches emit `grip_cmd` (the latched
/// previous command), so a bounced reach branch does not reopen a closing
/// gripper.
pub fn pick_place_step(
    ee: Vec3,
    ee_z_lifted: bool,
    grasped: bool,
    pick_pos: Vec3,
    drop_pos: Vec3,
    params: &PickPlaceParams,
    place_attempted: bool,
    grip_cmd: f32,
) -> ([f32; 4], Branch, bool) {
    if place_attempted {
        return ([0.0, 0.0, 0.0, OPEN], Branch::Hold, true);
    }
    let pick_dist = geom::dist(ee, pick_pos);
    let drop_dist = geom::dist(ee, drop_pos);
    if !grasped && pick_dist > params.dist_thresh {
        let d = geom::sub(pick_pos, ee);
        ([d[0], d[1], d[2], grip_cmd], Branch::Reach, false)
    } else if !grasped {
        let d = geom::sub(pick_pos, ee);
        ([d[0], d[1], d[2], CLOSE], Branch::Close, false)
    } else if !ee_z_lifted {
        ([0.0, 0.0, 1.0, CLOSE], Branch::Lift, false)
    } else if drop_dist > params.dist_thresh {
        let d = geom::sub(drop_pos, ee);
        ([d[0], d[1], d[2], CLOSE], Branch::Transport, false)
    } else {
        ([0.0, 0.0, 0.0, OPEN], Branch::Release, true)
    }
}

fn next_grip_cmd(branch: Branch, current: f32) -> f32 {
    match branch {
        Branch::Close | Branch::Lift | Branch::Transport => CLOSE,
        Branch::Release | Branch::Hold => OPEN,
        Branch::Reach => current,
    }
}

/// Per-episode scripted policy: maps a world state to `(action, stage)`.
pub trait ScriptedPolicy {
    fn act(&mut self, state: &WorldState) -> ([f32; 4], u32);
}

pub struct StackScript {
    params: PickPlaceParams,
    place_attempted: bool,
    grip_cmd: f32,
}

impl StackScript {
    pub fn new(params: PickPlaceParams) -> Self {
        Self {
            params,
            place_attempted: false,
            grip_cmd: OPEN,
        }
    }
}

impl ScriptedPolicy for StackScript {
    fn act(&mut self, state: &WorldState) -> ([f32; 4], u32) {
        let obj = &state.objects[0];
        let c = state.containers[0].pos;
        let drop = [c[0], c[1], DROP_HOVER_Z];
        let (action, branch, pa) = pick_place_step(
            state.gripper_pos,
            state.gripper_pos[2] >= self.params.lift_z,
            obj.grasped,
            obj.pos,
            drop,
            &self.params,
            self.place_attempted,
            self.grip_cmd,
        );
        self.place_attempted = pa;
        self.grip_cmd = next_grip_cmd(branch, self.grip_cmd);
        (action, branch.stage())
    }
}

pub struct TwoStepScript {
    params: PickPlaceParams,
    step_index: usize,
    place_attempted: [bool; 2],
    steps_completed: [bool; 2],
    grip_cmd: f32,
}

impl TwoStepScript {
    pub fn new(params: PickPlaceParams) -> Self {
        Self {
            params,
            step_index: 0,
            place_attempted: [false, false],
            steps_completed: [false, false],
            grip_cmd: OPEN,
        }
    }

    /// Placement test for phase `i`: manipulated entity inside its container
    /// region and the gripper open.
    fn step_is_successful(&self, state: &WorldState, i: usize) -> bool {
        let placed = match i {
            0 => {
                geom::dist_xy(state.objects[0].pos, state.objects[1].pos)
                    <= crate::sim::PLACE_RADIUS
                    && !state.objects[0].grasped
            }
            _ => {
                geom::dist_xy(state.objects[1].pos, state.containers[0].pos)
                    <= crate::sim::PLACE_RADIUS
                    && !state.objects[1].grasped
            }
        };
        placed && state.gripper_open()
    }
}

impl ScriptedPolicy for TwoStepScript {
    fn act(&mut self, state: &WorldState) -> ([f32; 4], u32) {
        let i = self.step_index;
        let (pick, drop_xy, grasped) = if i == 0 {
            (state.objects[0].pos, state.objects[1].pos, state.objects[0].grasped)
        } else {
            (state.objects[1].pos, state.containers[0].pos, state.objects[1].grasped)
        };
        let drop = [drop_xy[0], drop_xy[1], DROP_HOVER_Z];
        let (action, branch, pa) = pick_place_step(
            state.gripper_pos,
            state.gripper_pos[2] >= self.params.lift_z,
            grasped,
            pick,
            drop,
            &self.params,
            self.place_attempted[i],
            self.grip_cmd,
        );
        self.place_attempted[i] = pa;
        self.grip_cmd = next_grip_cmd(branch, self.grip_cmd);
        let stage = branch.stage() + 7 * i as u32;
        if self.step_is_successful(state, i) && !self.steps_completed[i] {
            self.steps_completed[i] = true;
            self.step_index = 1;
        }
        (action, stage)
    }
}

pub struct WrapScript {
    params: PickPlaceParams,
    direction: WrapDirection,
    target_dist_to_center: f32,
    place_attempted: bool,
    grip_cmd: f32,
}

impl WrapScript {
    pub fn new(params: PickPlaceParams, direction: WrapDirection) -> Self {
        Self {
            params,
            direction,
            target_dist_to_center: 0.15,
            place_attempted: false,
            grip_cmd: OPEN,
        }
    }

    fn wrapped_enough(&self, state: &WorldState) -> bool {
        let signed = match self.direction {
            WrapDirection::Counterclockwise => state.wrap_accum,
            WrapDirection::Clockwise => -state.wrap_accum,
        };
        signed > WRAP_DONE_ANGLE
    }

    fn terminal_stage(&self, state: &WorldState) -> u32 {
        if self.wrapped_enough(state) {
            8
        } else {
            9
        }
    }

    /// Quadrant of the gripper about the center: left, front, right, back.
    /// Boundary angles go to the lower stage index.
    fn quadrant_stage(rel_x: f32, rel_y: f32) -> u32 {
        let theta = rel_y.atan2(rel_x);
        let pi = std::f32::consts::PI;
        if theta.abs() >= 3.0 * pi / 4.0 {
            4 // left
        } else if theta <= -pi / 4.0 {
            5 // front
        } else if theta <= pi / 4.0 {
            6 // right
        } else {
            7 // back
        }
    }
}

impl ScriptedPolicy for WrapScript {
    fn act(&mut self, state: &WorldState) -> ([f32; 4], u32) {
        let plug = &state.objects[0];
        let ee = state.gripper_pos;
        let center = state.center_pos.expect("wrap state has a center");
        if self.place_attempted {
            return ([0.0, 0.0, 0.0, OPEN], self.terminal_stage(state));
        }
        if !plug.grasped {
            let d = geom::sub(plug.pos, ee);
            if geom::dist(ee, plug.pos) > self.params.dist_thresh {
                return ([d[0], d[1], d[2], self.grip_cmd], 0);
            }
            self.grip_cmd = CLOSE;
            return ([d[0], d[1], d[2], CLOSE], 2);
        }
        if ee[2] < self.params.lift_z {
            return ([0.0, 0.0, 1.0, CLOSE], 3);
        }
        if !self.wrapped_enough(state) {
            let rel = [ee[0] - center[0], ee[1] - center[1]];
            let dist = (rel[0] * rel[0] + rel[1] * rel[1]).sqrt();
            if dist < 1e-6 {
                return ([self.target_dist_to_center, 0.0, 0.0, CLOSE], 6);
            }
            let norm_rel = [
                rel[0] / dist * self.target_dist_to_center,
                rel[1] / dist * self.target_dist_to_center,
            ];
            let maintain = [
                rel[0] * (self.target_dist_to_center - dist),
                rel[1] * (self.target_dist_to_center - dist),
            ];
            let mut tangent = [-norm_rel[1], norm_rel[0]];
            if matches!(self.direction, WrapDirection::Clockwise) {
                tangent = [-tangent[0], -tangent[1]];
            }
            let action = [maintain[0] + tangent[0], maintain[1] + tangent[1], 0.0, CLOSE];
            return (action, Self::quadrant_stage(rel[0], rel[1]));
        }
        self.place_attempted = true;
        ([0.0, 0.0, 0.0, OPEN], self.terminal_stage(state))
    }
}

/// Build the scripted expert for a task.
pub fn make_policy(task: &TaskSpec, params: PickPlaceParams) -> Box<dyn ScriptedPolicy> {
    match (&task.kind, task.suite) {
        (TaskKind::Wrap { direction, .. }, _) => Box::new(WrapScript::new(params, *direction)),
        (_, Suite::TwoStep) => Box::new(TwoStepScript::new(params)),
        _ => Box::new(StackScript::new(params)),
    }
}
