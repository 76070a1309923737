//! Archive format: round-trip identity, byte-level determinism, and
//! corruption reporting.

use proptest::prelude::*;
use s2l_core::data::{
    load_dataset, save_dataset, validate_trajectory, DataError, DatasetManifest, Domain, Frame,
    Image, Suite, Trajectory,
};
use std::fs;
use std::path::Path;

fn tiny_frame(stage: u32, v: u8, action: Option<[f32; 4]>) -> Frame {
    let image = Image::filled(4, 4, [v, v.wrapping_add(1), v.wrapping_add(2)]);
    Frame {
        image,
        proprio: vec![0.1 * v as f32, -0.2, 0.3, 1.0],
        action,
        stage,
        description: (v % 2 == 0).then(|| format!("desc {v}")),
    }
}

fn tiny_dataset() -> Vec<Trajectory> {
    (0..3u8)
        .map(|k| Trajectory {
            frames: (0..4u8)
                .map(|i| tiny_frame((i % 7) as u32, k * 16 + i, Some([0.1, -0.2, 0.3, -0.5])))
                .collect(),
            task_id: format!("stack-milk-source"),
            task_instruction: "put the milk on the coaster".into(),
            domain: Domain::Source,
            suite: Suite::Stack,
            seed: 42 + k as u64,
            success: k != 1,
        })
        .collect()
}

fn manifest_for(data: &[Trajectory]) -> DatasetManifest {
    DatasetManifest::for_dataset("test-ds", data, Domain::Source, Suite::Stack, 50.0, 7)
}

fn dir_bytes(path: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![path.to_path_buf()];
    while let Some(p) = stack.pop() {
        for e in fs::read_dir(&p).unwrap() {
            let e = e.unwrap();
            if e.path().is_dir() {
                stack.push(e.path());
            } else {
                let rel = e.path().strip_prefix(path).unwrap().to_owned();
                out.push((rel.to_string_lossy().into_owned(), fs::read(e.path()).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn roundtrip_is_identity_and_bit_exact() {
    let data = tiny_dataset();
    let manifest = manifest_for(&data);
    let dir = tempfile::tempdir().unwrap();
    save_dataset(&data, &manifest, dir.path()).unwrap();
    let (loaded, loaded_manifest) = load_dataset(dir.path()).unwrap();
    assert_eq!(loaded, data);
    assert_eq!(loaded_manifest, manifest);
}

#[test]
fn saving_twice_is_byte_identical() {
    let data = tiny_dataset();
    let manifest = manifest_for(&data);
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    save_dataset(&data, &manifest, d1.path()).unwrap();
    save_dataset(&data, &manifest, d2.path()).unwrap();
    assert_eq!(dir_bytes(d1.path()), dir_bytes(d2.path()));
}

#[test]
fn empty_dataset_is_valid() {
    let manifest = manifest_for(&[]);
    let dir = tempfile::tempdir().unwrap();
    save_dataset(&[], &manifest, dir.path()).unwrap();
    let (loaded, m) = load_dataset(dir.path()).unwrap();
    assert!(loaded.is_empty());
    assert_eq!(m.trajectory_count, 0);
}

#[test]
fn four_hundred_trajectories_make_four_hundred_subdirs() {
    let one = tiny_dataset().remove(0);
    let data: Vec<Trajectory> = (0..400)
        .map(|i| {
            let mut t = one.clone();
            t.seed = i;
            t
        })
        .collect();
    let manifest = manifest_for(&data);
    assert_eq!(manifest.trajectory_count, 400);
    let dir = tempfile::tempdir().unwrap();
    save_dataset(&data, &manifest, dir.path()).unwrap();
    let subdirs = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().is_dir())
        .count();
    assert_eq!(subdirs, 400);
}

#[test]
fn truncated_actions_file_names_the_trajectory() {
    let data = tiny_dataset();
    let manifest = manifest_for(&data);
    let dir = tempfile::tempdir().unwrap();
    save_dataset(&data, &manifest, dir.path()).unwrap();
    let victim = dir.path().join("traj_000001/actions.f32le");
    let bytes = fs::read(&victim).unwrap();
    fs::write(&victim, &bytes[..bytes.len() - 4]).unwrap();
    let err = load_dataset(dir.path()).unwrap_err();
    match err {
        DataError::Validation {
            trajectory, field, ..
        } => {
            assert_eq!(trajectory, "traj_000001");
            assert_eq!(field, "actions.f32le");
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn manifest_count_mismatch_is_detected() {
    let data = tiny_dataset();
    let manifest = manifest_for(&data);
    let dir = tempfile::tempdir().unwrap();
    save_dataset(&data, &manifest, dir.path()).unwrap();
    fs::remove_dir_all(dir.path().join("traj_000002")).unwrap();
    let err = load_dataset(dir.path()).unwrap_err();
    match err {
        DataError::ManifestMismatch { field, .. } => assert_eq!(field, "trajectory_count"),
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn out_of_range_gripper_is_a_violation() {
    let mut data = tiny_dataset();
    data[0].frames[1].action = Some([0.0, 0.0, 0.0, 0.5]);
    let violations = validate_trajectory(&data[0]);
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0].frame, Some(1));
    assert!(violations[0].invariant.contains("gripper"));
    let manifest = manifest_for(&data);
    let dir = tempfile::tempdir().unwrap();
    assert!(save_dataset(&data, &manifest, dir.path()).is_err());
}

#[test]
fn inconsistent_manifest_names_field() {
    let data = tiny_dataset();
    let mut manifest = manifest_for(&data);
    manifest.proprio_dim = 9;
    let dir = tempfile::tempdir().unwrap();
    match save_dataset(&data, &manifest, dir.path()).unwrap_err() {
        DataError::ManifestMismatch { field, .. } => assert_eq!(field, "proprio_dim"),
        other => panic!("unexpected error {other}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn roundtrip_random_datasets(
        n_traj in 1usize..4,
        n_frames in 1usize..6,
        with_actions in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let data: Vec<Trajectory> = (0..n_traj).map(|k| Trajectory {
            frames: (0..n_frames).map(|i| {
                let v = ((seed as usize + k * 31 + i * 7) % 251) as u8;
                tiny_frame(
                    ((i + k) % 7) as u32,
                    v,
                    with_actions.then_some([v as f32 * 0.01, -0.3, 0.2, -(v as f32 % 10.0) / 10.0]),
                )
            }).collect(),
            task_id: "stack-can-source".into(),
            task_instruction: "put the can on the coaster".into(),
            domain: Domain::Source,
            suite: Suite::Stack,
            seed: seed ^ k as u64,
            success: k % 2 == 0,
        }).collect();
        let manifest = manifest_for(&data);
        let dir = tempfile::tempdir().unwrap();
        save_dataset(&data, &manifest, dir.path()).unwrap();
        let (loaded, _) = load_dataset(dir.path()).unwrap();
        prop_assert_eq!(loaded, data);
    }
}
