//! Blob detection probe during a stack episode.

use s2l_core::data::{Domain, Suite};
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::render::{blob_centroid, unproject};
use s2l_core::sim::{self, DomainConfig, ResetSpec};
use s2l_core::task::default_tasks;

fn main() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Stack, Domain::Source)[0].clone();
    let opts = CollectOptions {
        noise: false,
        ..Default::default()
    };
    let seed = 0u64;
    let horizon = sim::draw_horizon(&cfg, Suite::Stack, seed);
    let (traj, history) =
        run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed }, horizon, seed, &opts)
            .unwrap();
    let obj_color = cfg.color("milk");
    for (i, f) in traj.frames.iter().enumerate().step_by(10) {
        let c = blob_centroid(&f.image, obj_color);
        let state = &history[i];
        let z = if f.proprio[3] < 0.5 { f.proprio[2] } else { 0.02 };
        let est = c.and_then(|(px, py)| unproject(&cfg.view, px, py, z, 64, 64));
        println!(
            "t={i:3} stage={} obj_true={:?} centroid={:?} est={:?} grip=({:.2},{:.2},{:.2}) ap={:.2}",
            f.stage,
            state.objects[0].pos,
            c,
            est,
            f.proprio[0],
            f.proprio[1],
            f.proprio[2],
            f.proprio[3]
        );
    }
}
