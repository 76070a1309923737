use s2l_core::data::{Domain, Image, Suite};
use s2l_core::lang::hindsight::{hindsight_label, GripperPrediction, GripperStatePredictor};
use s2l_core::rng::fnv1a64;
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::{DomainConfig, ResetSpec};
use s2l_core::task::default_tasks;
use std::collections::HashMap;

struct OraclePredictor { by_image: HashMap<u64, GripperPrediction> }
impl GripperStatePredictor for OraclePredictor {
    fn predict(&self, image: &Image) -> GripperPrediction { self.by_image[&fnv1a64(&image.data)] }
}

fn main() {
    let cfg = DomainConfig::target_default();
    let task = default_tasks(Suite::TwoStep, Domain::Target)[0].clone();
    let opts = CollectOptions { noise: false, ..Default::default() };
    let (traj, _) = run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed: 21 }, 45, 21, &opts).unwrap();
    println!("success={}", traj.success);
    let mut by_image = HashMap::new();
    for f in &traj.frames {
        by_image.insert(fnv1a64(&f.image.data), GripperPrediction {
            pos: [f.proprio[0], f.proprio[1], f.proprio[2]],
            closed: f.proprio[3] < 0.5,
        });
    }
    let oracle = OraclePredictor { by_image };
    let inferred = hindsight_label(&traj, &task, &cfg, &oracle);
    for (i, f) in traj.frames.iter().enumerate() {
        println!("t={i:2} truth={} inferred={} ap={:.2}", f.stage, inferred[i], f.proprio[3]);
    }
}
