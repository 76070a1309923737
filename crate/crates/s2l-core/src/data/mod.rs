//! Canonical trajectory data model plus the on-disk archive format.
//!
//! A dataset directory contains `manifest.json` and one subdirectory per
//! trajectory holding flat little-endian arrays (`frames.rgb8`,
//! `proprio.f32le`, `actions.f32le`, `stages.i32le`) and a `record.json`
//! with the per-trajectory metadata. The layout is bit-exact: saving the
//! same dataset twice produces byte-identical files.

mod archive;
mod validate;

pub use archive::{load_dataset, save_dataset};
pub use validate::{validate_trajectory, Violation};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;

/// Which of the two domains a trajectory or config belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Source,
    Target,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Source => write!(f, "source"),
            Domain::Target => write!(f, "target"),
        }
    }
}

/// Task suite. `Stack` is single pick-and-place, `TwoStep` chains two
/// pick-and-place motions, `Wrap` drags a chain around a fixed cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Stack,
    TwoStep,
    Wrap,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Stack => write!(f, "stack"),
            Suite::TwoStep => write!(f, "two_step"),
            Suite::Wrap => write!(f, "wrap"),
        }
    }
}

/// Row-major H×W×3 RGB image, 8 bits per channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub height: usize,
    pub width: usize,
    pub data: Vec<u8>,
}

impl Image {
    pub fn new(height: usize, width: usize, data: Vec<u8>) -> Result<Self, DataError> {
        if data.len() != height * width * 3 {
            return Err(DataError::Validation {
                trajectory: String::new(),
                field: "image".into(),
                detail: format!(
                    "image buffer length {} does not match {}x{}x3",
                    data.len(),
                    height,
                    width
                ),
            });
        }
        Ok(Self {
            height,
            width,
            data,
        })
    }

    pub fn filled(height: usize, width: usize, rgb: [u8; 3]) -> Self {
        let mut data = Vec::with_capacity(height * width * 3);
        for _ in 0..height * width {
            data.extend_from_slice(&rgb);
        }
        Self {
            height,
            width,
            data,
        }
    }

    #[inline]
    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        let i = (row * self.width + col) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn put_pixel(&mut self, row: usize, col: usize, rgb: [u8; 3]) {
        let i = (row * self.width + col) * 3;
        self.data[i] = rgb[0];
        self.data[i + 1] = rgb[1];
        self.data[i + 2] = rgb[2];
    }
}

/// One timestep of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub image: Image,
    pub proprio: Vec<f32>,
    /// `(dx, dy, dz, gripper)` in workspace units; gripper in `[-1, 0]`.
    pub action: Option<[f32; 4]>,
    /// Index of the active scripted-policy branch at this step.
    pub stage: u32,
    pub description: Option<String>,
}

/// A full episode: frames plus task-level metadata. `task_instruction` is
/// identical across all frames of a task; per-frame scene descriptions live
/// on the frames.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub frames: Vec<Frame>,
    pub task_id: String,
    pub task_instruction: String,
    pub domain: Domain,
    pub suite: Suite,
    pub seed: u64,
    pub success: bool,
}

impl Trajectory {
    pub fn has_actions(&self) -> bool {
        !self.frames.is_empty() && self.frames.iter().all(|f| f.action.is_some())
    }
}

/// Dataset-level metadata stored as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub dataset_id: String,
    pub domain: Domain,
    pub suite: Suite,
    pub task_ids: Vec<String>,
    pub trajectory_count: usize,
    /// `[height, width, 3]`.
    pub image_shape: [usize; 3],
    pub proprio_dim: usize,
    pub control_hz: f32,
    pub created_seed: u64,
    pub format_version: u32,
}

pub const FORMAT_VERSION: u32 = 1;

impl DatasetManifest {
    /// Build a manifest consistent with `dataset` by construction.
    pub fn for_dataset(
        dataset_id: &str,
        dataset: &[Trajectory],
        domain: Domain,
        suite: Suite,
        control_hz: f32,
        created_seed: u64,
    ) -> Self {
        let mut task_ids: Vec<String> = dataset.iter().map(|t| t.task_id.clone()).collect();
        task_ids.sort();
        task_ids.dedup();
        let image_shape = dataset
            .first()
            .and_then(|t| t.frames.first())
            .map(|f| [f.image.height, f.image.width, 3])
            .unwrap_or([0, 0, 3]);
        let proprio_dim = dataset
            .first()
            .and_then(|t| t.frames.first())
            .map(|f| f.proprio.len())
            .unwrap_or(0);
        Self {
            dataset_id: dataset_id.to_string(),
            domain,
            suite,
            task_ids,
            trajectory_count: dataset.len(),
            image_shape,
            proprio_dim,
            control_hz,
            created_seed,
            format_version: FORMAT_VERSION,
        }
    }
}

/// Errors for dataset archive IO and validation.
#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("io error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed json at {path}: {detail}")]
    Json { path: PathBuf, detail: String },
    #[error("trajectory {trajectory}: field {field}: {detail}")]
    Validation {
        trajectory: String,
        field: String,
        detail: String,
    },
    #[error("manifest mismatch on field {field}: {detail}")]
    ManifestMismatch { field: String, detail: String },
}

impl DataError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.into(),
            source,
        }
    }
}
