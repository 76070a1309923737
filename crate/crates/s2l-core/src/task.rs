//! Task catalog. A task fixes the scene entities, the language-template slot
//! bindings, and the instruction string used for policy conditioning.

use crate::data::{Domain, Suite};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WrapDirection {
    Clockwise,
    Counterclockwise,
}

impl WrapDirection {
    pub fn word(&self) -> &'static str {
        match self {
            WrapDirection::Clockwise => "clockwise",
            WrapDirection::Counterclockwise => "counterclockwise",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TaskKind {
    /// Move `obj` onto `cont`.
    PickPlace { obj: String, cont: String },
    /// Put `obj` into `cont1`, then move `cont1` onto `cont2`.
    TwoStep {
        obj: String,
        cont1: String,
        cont2: String,
    },
    /// Drag `grasp_obj` (the free end of `flex_obj`) around the cylinder.
    Wrap {
        grasp_obj: String,
        flex_obj: String,
        direction: WrapDirection,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub id: String,
    pub suite: Suite,
    pub domain: Domain,
    pub instruction: String,
    pub kind: TaskKind,
}

impl TaskSpec {
    /// Template-slot bindings for a given stage. Two-step tasks rebind the
    /// object/container slots per phase: phase 1 manipulates `obj` relative
    /// to `cont1`, phase 2 manipulates `cont1` relative to `cont2`.
    pub fn bindings_for_stage(&self, stage: u32) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        match &self.kind {
            TaskKind::PickPlace { obj, cont } => {
                m.insert("objName".into(), obj.clone());
                m.insert("contName".into(), cont.clone());
            }
            TaskKind::TwoStep { obj, cont1, cont2 } => {
                if stage < 7 {
                    m.insert("objName".into(), obj.clone());
                    m.insert("contName".into(), cont1.clone());
                } else {
                    m.insert("objName".into(), cont1.clone());
                    m.insert("contName".into(), cont2.clone());
                }
            }
            TaskKind::Wrap {
                grasp_obj,
                flex_obj,
                direction,
            } => {
                m.insert("graspObjName".into(), grasp_obj.clone());
                m.insert("flexWraparoundObjName".into(), flex_obj.clone());
                m.insert("direction".into(), direction.word().to_string());
            }
        }
        m
    }

    pub fn wrap_direction(&self) -> Option<WrapDirection> {
        match &self.kind {
            TaskKind::Wrap { direction, .. } => Some(*direction),
            _ => None,
        }
    }
}

fn pick_place(domain: Domain, obj: &str, cont: &str) -> TaskSpec {
    TaskSpec {
        id: format!("stack-{}-{}", obj, domain),
        suite: Suite::Stack,
        domain,
        instruction: format!("put the {obj} on the {cont}"),
        kind: TaskKind::PickPlace {
            obj: obj.into(),
            cont: cont.into(),
        },
    }
}

fn two_step(domain: Domain, obj: &str, cont1: &str, cont2: &str) -> TaskSpec {
    TaskSpec {
        id: format!("two_step-{}-{}", obj, domain),
        suite: Suite::TwoStep,
        domain,
        instruction: format!("put the {obj} in the {cont1} and move the {cont1} onto the {cont2}"),
        kind: TaskKind::TwoStep {
            obj: obj.into(),
            cont1: cont1.into(),
            cont2: cont2.into(),
        },
    }
}

fn wrap(domain: Domain, grasp: &str, flex: &str, direction: WrapDirection) -> TaskSpec {
    TaskSpec {
        id: format!("wrap-{}-{}", direction.word(), domain),
        suite: Suite::Wrap,
        domain,
        instruction: format!(
            "wrap the {flex} around the cylinder {}",
            direction.word()
        ),
        kind: TaskKind::Wrap {
            grasp_obj: grasp.into(),
            flex_obj: flex.into(),
            direction,
        },
    }
}

/// The default task set collected in each domain. The source domain carries
/// several prior tasks; the target domain carries the single few-shot task
/// (plus the opposite wrap direction, which serves as the prior-task data in
/// that suite).
pub fn default_tasks(suite: Suite, domain: Domain) -> Vec<TaskSpec> {
    match (suite, domain) {
        (Suite::Stack, Domain::Source) => ["milk", "bread", "can", "cereal"]
            .iter()
            .map(|o| pick_place(Domain::Source, o, "coaster"))
            .collect(),
        (Suite::Stack, Domain::Target) => vec![pick_place(Domain::Target, "carrot", "plate")],
        (Suite::TwoStep, Domain::Source) => ["milk", "bread", "can", "cereal"]
            .iter()
            .map(|o| two_step(Domain::Source, o, "pot", "stove"))
            .collect(),
        (Suite::TwoStep, Domain::Target) => {
            vec![two_step(Domain::Target, "carrot", "bowl", "plate")]
        }
        (Suite::Wrap, Domain::Source) => vec![
            wrap(
                Domain::Source,
                "last bead",
                "beads",
                WrapDirection::Counterclockwise,
            ),
            wrap(Domain::Source, "last bead", "beads", WrapDirection::Clockwise),
        ],
        (Suite::Wrap, Domain::Target) => vec![wrap(
            Domain::Target,
            "white plug",
            "cord",
            WrapDirection::Counterclockwise,
        )],
    }
}

/// Entity name rendered/grasped as the manipulated object for a task.
pub fn object_name(task: &TaskSpec) -> &str {
    match &task.kind {
        TaskKind::PickPlace { obj, .. } => obj,
        TaskKind::TwoStep { obj, .. } => obj,
        TaskKind::Wrap { grasp_obj, .. } => grasp_obj,
    }
}
