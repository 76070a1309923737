//! Debug probe for the hindsight replay: truth vs inferred stages.

use s2l_core::data::{Domain, Image, Suite};
use s2l_core::lang::hindsight::{hindsight_label, GripperPrediction, GripperStatePredictor};
use s2l_core::rng::fnv1a64;
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::{self, DomainConfig, ResetSpec};
use s2l_core::task::default_tasks;
use std::collections::HashMap;

struct OraclePredictor {
    by_image: HashMap<u64, GripperPrediction>,
}

impl GripperStatePredictor for OraclePredictor {
    fn predict(&self, image: &Image) -> GripperPrediction {
        self.by_image[&fnv1a64(&image.data)]
    }
}

fn main() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Stack, Domain::Source)[0].clone();
    let opts = CollectOptions {
        noise: false,
        ..Default::default()
    };
    let seed = 0u64;
    let horizon = sim::draw_horizon(&cfg, Suite::Stack, seed);
    let (traj, _) =
        run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed }, horizon, seed, &opts)
            .unwrap();
    let mut by_image = HashMap::new();
    for f in &traj.frames {
        by_image.insert(
            fnv1a64(&f.image.data),
            GripperPrediction {
                pos: [f.proprio[0], f.proprio[1], f.proprio[2]],
                closed: f.proprio[3] < 0.5,
            },
        );
    }
    let oracle = OraclePredictor { by_image };
    let inferred = hindsight_label(&traj, &task, &cfg, &oracle);
    let truth: Vec<u32> = traj.frames.iter().map(|f| f.stage).collect();
    let mut agree = 0;
    for (i, (t, p)) in truth.iter().zip(&inferred).enumerate() {
        if t == p {
            agree += 1;
        } else if i < 400 {
            println!("t={i:3} truth={t} inferred={p}");
        }
    }
    println!("agreement {}/{}", agree, truth.len());
}
