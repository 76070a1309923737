//! Bit-exact dataset archive: little-endian flat arrays plus JSON metadata.
//! No timestamps or other nondeterministic content are written anywhere, so
//! saving the same dataset twice yields byte-identical directories.

use super::{
    validate_trajectory, DataError, DatasetManifest, Domain, Frame, Image, Suite, Trajectory,
};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize, Deserialize)]
struct Lengths {
    frames: usize,
    action_frames: usize,
}

/// Per-trajectory metadata stored as `record.json`.
#[derive(Debug, Serialize, Deserialize)]
struct Record {
    lengths: Lengths,
    task_id: String,
    instruction: String,
    domain: Domain,
    success: bool,
    suite: Suite,
    seed: u64,
    /// Per-frame scene descriptions; `null` when the trajectory carries none.
    descriptions: Option<Vec<Option<String>>>,
}

fn traj_dir_name(index: usize) -> String {
    format!("traj_{index:06}")
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), DataError> {
    let mut f = fs::File::create(path).map_err(|e| DataError::io(path, e))?;
    f.write_all(bytes).map_err(|e| DataError::io(path, e))
}

fn json_bytes<T: Serialize>(value: &T, path: &Path) -> Result<Vec<u8>, DataError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| DataError::Json {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn f32_bytes(values: impl Iterator<Item = f32>) -> Vec<u8> {
    let mut out = Vec::new();
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn check_manifest(dataset: &[Trajectory], manifest: &DatasetManifest) -> Result<(), DataError> {
    if manifest.trajectory_count != dataset.len() {
        return Err(DataError::ManifestMismatch {
            field: "trajectory_count".into(),
            detail: format!(
                "manifest says {} but dataset has {}",
                manifest.trajectory_count,
                dataset.len()
            ),
        });
    }
    if manifest.format_version == 0 {
        return Err(DataError::ManifestMismatch {
            field: "format_version".into(),
            detail: "format_version must be >= 1".into(),
        });
    }
    let mut task_ids: Vec<String> = dataset.iter().map(|t| t.task_id.clone()).collect();
    task_ids.sort();
    task_ids.dedup();
    let mut manifest_ids = manifest.task_ids.clone();
    manifest_ids.sort();
    if task_ids != manifest_ids {
        return Err(DataError::ManifestMismatch {
            field: "task_ids".into(),
            detail: format!("manifest {:?} vs dataset {:?}", manifest_ids, task_ids),
        });
    }
    for t in dataset {
        if t.domain != manifest.domain {
            return Err(DataError::ManifestMismatch {
                field: "domain".into(),
                detail: format!("trajectory {} is {}", t.task_id, t.domain),
            });
        }
        if t.suite != manifest.suite {
            return Err(DataError::ManifestMismatch {
                field: "suite".into(),
                detail: format!("trajectory {} is {}", t.task_id, t.suite),
            });
        }
        for f in &t.frames {
            if [f.image.height, f.image.width, 3] != manifest.image_shape {
                return Err(DataError::ManifestMismatch {
                    field: "image_shape".into(),
                    detail: format!(
                        "frame is {}x{}x3, manifest says {:?}",
                        f.image.height, f.image.width, manifest.image_shape
                    ),
                });
            }
            if f.proprio.len() != manifest.proprio_dim {
                return Err(DataError::ManifestMismatch {
                    field: "proprio_dim".into(),
                    detail: format!(
                        "frame has {} proprio dims, manifest says {}",
                        f.proprio.len(),
                        manifest.proprio_dim
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Save a dataset under `path`. The directory is created if missing; any
/// previous `traj_*` contents are an error (datasets are immutable).
pub fn save_dataset(
    dataset: &[Trajectory],
    manifest: &DatasetManifest,
    path: &Path,
) -> Result<(), DataError> {
    check_manifest(dataset, manifest)?;
    for (i, t) in dataset.iter().enumerate() {
        let violations = validate_trajectory(t);
        if let Some(v) = violations.first() {
            return Err(DataError::Validation {
                trajectory: traj_dir_name(i),
                field: "invariants".into(),
                detail: v.to_string(),
            });
        }
        // Mixed presence would make the flat action array ambiguous.
        let with_actions = t.frames.iter().filter(|f| f.action.is_some()).count();
        if with_actions != 0 && with_actions != t.frames.len() {
            return Err(DataError::Validation {
                trajectory: traj_dir_name(i),
                field: "actions".into(),
                detail: "actions must be present on all frames or none".into(),
            });
        }
    }

    fs::create_dir_all(path).map_err(|e| DataError::io(path, e))?;
    write_file(&path.join("manifest.json"), &json_bytes(manifest, path)?)?;

    for (i, t) in dataset.iter().enumerate() {
        let dir = path.join(traj_dir_name(i));
        fs::create_dir_all(&dir).map_err(|e| DataError::io(&dir, e))?;

        let mut rgb = Vec::new();
        for f in &t.frames {
            rgb.extend_from_slice(&f.image.data);
        }
        write_file(&dir.join("frames.rgb8"), &rgb)?;

        write_file(
            &dir.join("proprio.f32le"),
            &f32_bytes(t.frames.iter().flat_map(|f| f.proprio.iter().copied())),
        )?;

        let has_actions = t.has_actions();
        let actions = if has_actions {
            f32_bytes(
                t.frames
                    .iter()
                    .flat_map(|f| f.action.expect("checked above").into_iter()),
            )
        } else {
            Vec::new()
        };
        write_file(&dir.join("actions.f32le"), &actions)?;

        let mut stages = Vec::new();
        for f in &t.frames {
            stages.extend_from_slice(&(f.stage as i32).to_le_bytes());
        }
        write_file(&dir.join("stages.i32le"), &stages)?;

        let any_desc = t.frames.iter().any(|f| f.description.is_some());
        let record = Record {
            lengths: Lengths {
                frames: t.frames.len(),
                action_frames: if has_actions { t.frames.len() } else { 0 },
            },
            task_id: t.task_id.clone(),
            instruction: t.task_instruction.clone(),
            domain: t.domain,
            success: t.success,
            suite: t.suite,
            seed: t.seed,
            descriptions: any_desc
                .then(|| t.frames.iter().map(|f| f.description.clone()).collect()),
        };
        write_file(&dir.join("record.json"), &json_bytes(&record, &dir)?)?;
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<Vec<u8>, DataError> {
    fs::read(path).map_err(|e| DataError::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, DataError> {
    let bytes = read_file(path)?;
    serde_json::from_slice(&bytes).map_err(|e| DataError::Json {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

fn validation(trajectory: &str, field: &str, detail: String) -> DataError {
    DataError::Validation {
        trajectory: trajectory.to_string(),
        field: field.to_string(),
        detail,
    }
}

/// Load a dataset saved by [`save_dataset`]. Every frame/trajectory invariant
/// is re-checked; the first violation aborts the load with the trajectory id
/// and offending field.
pub fn load_dataset(path: &Path) -> Result<(Vec<Trajectory>, DatasetManifest), DataError> {
    let manifest: DatasetManifest = read_json(&path.join("manifest.json"))?;
    let mut dirs: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| DataError::io(path, e))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.is_dir()
                && p.file_name()
                    .and_then(|n| n.to_str())
                    .map(|n| n.starts_with("traj_"))
                    .unwrap_or(false)
        })
        .collect();
    dirs.sort();

    if dirs.len() != manifest.trajectory_count {
        return Err(DataError::ManifestMismatch {
            field: "trajectory_count".into(),
            detail: format!(
                "manifest says {} but found {} trajectory directories",
                manifest.trajectory_count,
                dirs.len()
            ),
        });
    }

    let [h, w, _c] = manifest.image_shape;
    let frame_bytes = h * w * 3;
    let mut out = Vec::with_capacity(dirs.len());

    for dir in &dirs {
        let id = dir
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or("?")
            .to_string();
        let record: Record = read_json(&dir.join("record.json"))?;
        let n = record.lengths.frames;

        let rgb = read_file(&dir.join("frames.rgb8"))?;
        if rgb.len() != n * frame_bytes {
            return Err(validation(
                &id,
                "frames.rgb8",
                format!("expected {} bytes, found {}", n * frame_bytes, rgb.len()),
            ));
        }
        let proprio = read_file(&dir.join("proprio.f32le"))?;
        if proprio.len() != n * manifest.proprio_dim * 4 {
            return Err(validation(
                &id,
                "proprio.f32le",
                format!(
                    "expected {} bytes, found {}",
                    n * manifest.proprio_dim * 4,
                    proprio.len()
                ),
            ));
        }
        let actions = read_file(&dir.join("actions.f32le"))?;
        if actions.len() != record.lengths.action_frames * 16 {
            return Err(validation(
                &id,
                "actions.f32le",
                format!(
                    "expected {} bytes, found {}",
                    record.lengths.action_frames * 16,
                    actions.len()
                ),
            ));
        }
        if record.lengths.action_frames != 0 && record.lengths.action_frames != n {
            return Err(validation(
                &id,
                "actions.f32le",
                format!(
                    "action_frames {} must be 0 or the frame count {}",
                    record.lengths.action_frames, n
                ),
            ));
        }
        let stages = read_file(&dir.join("stages.i32le"))?;
        if stages.len() != n * 4 {
            return Err(validation(
                &id,
                "stages.i32le",
                format!("expected {} bytes, found {}", n * 4, stages.len()),
            ));
        }
        if let Some(d) = &record.descriptions {
            if d.len() != n {
                return Err(validation(
                    &id,
                    "descriptions",
                    format!("expected {} entries, found {}", n, d.len()),
                ));
            }
        }

        let has_actions = record.lengths.action_frames == n && n > 0;
        let mut frames = Vec::with_capacity(n);
        for i in 0..n {
            let image = Image {
                height: h,
                width: w,
                data: rgb[i * frame_bytes..(i + 1) * frame_bytes].to_vec(),
            };
            let p_off = i * manifest.proprio_dim * 4;
            let proprio_v: Vec<f32> = (0..manifest.proprio_dim)
                .map(|k| {
                    let b = p_off + k * 4;
                    f32::from_le_bytes([proprio[b], proprio[b + 1], proprio[b + 2], proprio[b + 3]])
                })
                .collect();
            let action = has_actions.then(|| {
                let b = i * 16;
                let mut a = [0f32; 4];
                for (k, slot) in a.iter_mut().enumerate() {
                    let o = b + k * 4;
                    *slot = f32::from_le_bytes([
                        actions[o],
                        actions[o + 1],
                        actions[o + 2],
                        actions[o + 3],
                    ]);
                }
                a
            });
            let s_off = i * 4;
            let stage = i32::from_le_bytes([
                stages[s_off],
                stages[s_off + 1],
                stages[s_off + 2],
                stages[s_off + 3],
            ]);
            if stage < 0 {
                return Err(validation(&id, "stages.i32le", format!("negative stage {stage}")));
            }
            frames.push(Frame {
                image,
                proprio: proprio_v,
                action,
                stage: stage as u32,
                description: record
                    .descriptions
                    .as_ref()
                    .and_then(|d| d[i].clone()),
            });
        }

        let traj = Trajectory {
            frames,
            task_id: record.task_id,
            task_instruction: record.instruction,
            domain: record.domain,
            suite: record.suite,
            seed: record.seed,
            success: record.success,
        };
        if traj.domain != manifest.domain {
            return Err(validation(&id, "domain", "does not match manifest".into()));
        }
        if traj.suite != manifest.suite {
            return Err(validation(&id, "suite", "does not match manifest".into()));
        }
        if let Some(v) = validate_trajectory(&traj).first() {
            return Err(validation(&id, "invariants", v.to_string()));
        }
        out.push(traj);
    }
    Ok((out, manifest))
}
