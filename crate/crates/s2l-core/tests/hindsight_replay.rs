//! Hindsight labeling replay logic, checked with an oracle gripper
//! predictor (keyed off recorded frames) so the test isolates the branch
//! replay from the learned predictor.

use s2l_core::data::{Domain, Image, Suite};
use s2l_core::lang::hindsight::{
    hindsight_label, stage_agreement, GripperPrediction, GripperStatePredictor,
};
use s2l_core::rng::fnv1a64;
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::{self, DomainConfig, ResetSpec};
use s2l_core::task::default_tasks;
use std::collections::HashMap;

struct OraclePredictor {
    by_image: HashMap<u64, GripperPrediction>,
}

impl OraclePredictor {
    fn from_frames(frames: &[s2l_core::Frame]) -> Self {
        let mut by_image = HashMap::new();
        for f in frames {
            by_image.insert(
                fnv1a64(&f.image.data),
                GripperPrediction {
                    pos: [f.proprio[0], f.proprio[1], f.proprio[2]],
                    closed: f.proprio[3] < 0.5,
                },
            );
        }
        Self { by_image }
    }
}

impl GripperStatePredictor for OraclePredictor {
    fn predict(&self, image: &Image) -> GripperPrediction {
        self.by_image[&fnv1a64(&image.data)]
    }
}

#[test]
fn stack_replay_agrees_with_recorded_stages() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Stack, Domain::Source)[0].clone();
    let opts = CollectOptions {
        noise: false,
        ..Default::default()
    };
    let mut total = 0usize;
    let mut agree = 0usize;
    for seed in 0..12u64 {
        let horizon = sim::draw_horizon(&cfg, Suite::Stack, seed);
        let (traj, _) =
            run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed }, horizon, seed, &opts)
                .unwrap();
        let oracle = OraclePredictor::from_frames(&traj.frames);
        let inferred = hindsight_label(&traj, &task, &cfg, &oracle);
        let truth: Vec<u32> = traj.frames.iter().map(|f| f.stage).collect();
        let a = stage_agreement(&truth, &inferred);
        total += truth.len();
        agree += (a * truth.len() as f32).round() as usize;
        assert!(a >= 0.85, "seed {seed}: agreement {a}");
    }
    let overall = agree as f32 / total as f32;
    assert!(overall >= 0.9, "overall agreement {overall}");
}

#[test]
fn two_step_replay_tracks_phases() {
    let cfg = DomainConfig::target_default();
    let task = default_tasks(Suite::TwoStep, Domain::Target)[0].clone();
    let opts = CollectOptions {
        noise: false,
        ..Default::default()
    };
    let (traj, _) =
        run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed: 21 }, 45, 21, &opts).unwrap();
    assert!(traj.success);
    let oracle = OraclePredictor::from_frames(&traj.frames);
    let inferred = hindsight_label(&traj, &task, &cfg, &oracle);
    // The replay must reach phase 2.
    assert!(inferred.iter().any(|&s| s >= 7));
    let truth: Vec<u32> = traj.frames.iter().map(|f| f.stage).collect();
    let a = stage_agreement(&truth, &inferred);
    assert!(a >= 0.7, "agreement {a}");
}
