//! Deeper two-step replay probe: entity detection quality per frame.
use s2l_core::data::{Domain, Suite};
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::render::{blob_centroid, unproject};
use s2l_core::sim::{DomainConfig, ResetSpec, OBJECT_Z};
use s2l_core::task::default_tasks;

fn main() {
    let cfg = DomainConfig::target_default();
    let task = default_tasks(Suite::TwoStep, Domain::Target)[0].clone();
    let opts = CollectOptions { noise: false, ..Default::default() };
    let (traj, hist) = run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed: 21 }, 45, 21, &opts).unwrap();
    for (i, f) in traj.frames.iter().enumerate() {
        if !(12..30).contains(&i) { continue; }
        let ee = [f.proprio[0], f.proprio[1], f.proprio[2]];
        let closed = f.proprio[3] < 0.5;
        let pot_px = blob_centroid(&f.image, cfg.color("bowl"));
        let pot_low = pot_px.and_then(|(c, r)| unproject(&cfg.view, c, r, OBJECT_Z, 64, 64));
        let pot_hi = pot_px.and_then(|(c, r)| unproject(&cfg.view, c, r, ee[2], 64, 64));
        let pot_true = hist[i].objects[1].pos;
        println!(
            "t={i:2} truth={:2} closed={} ee=({:+.2},{:+.2},{:+.2}) pot_true=({:+.2},{:+.2},{:+.2}) pot_px={:?} low={:?}",
            f.stage, closed as u8, ee[0], ee[1], ee[2], pot_true[0], pot_true[1], pot_true[2],
            pot_px.map(|(a, b)| (a as i32, b as i32)),
            pot_low.map(|p| ((p[0]*100.0) as i32, (p[1]*100.0) as i32)),
        );
        let _ = pot_hi;
    }
}
