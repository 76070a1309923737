//! Quick tuning probe: scripted success rates and episode shapes per
//! suite/domain, with and without action noise.

use s2l_core::data::{Domain, Suite};
use s2l_core::scripted::{run_scripted_episode, CollectOptions};
use s2l_core::sim::{self, DomainConfig, ResetSpec};
use s2l_core::task::default_tasks;

fn main() {
    let n = 50;
    for suite in [Suite::Stack, Suite::TwoStep, Suite::Wrap] {
        for domain in [Domain::Source, Domain::Target] {
            for noise in [false, true] {
                let cfg = DomainConfig::default_for(domain);
                let tasks = default_tasks(suite, domain);
                let mut opts = CollectOptions::default();
                opts.noise = noise;
                let mut ok = 0;
                let mut lens = Vec::new();
                let mut complete_at = Vec::new();
                for i in 0..n {
                    let task = &tasks[i % tasks.len()];
                    let seed = 1000 + i as u64;
                    let horizon = sim::draw_horizon(&cfg, suite, seed);
                    let (traj, _h) = run_scripted_episode(
                        &cfg,
                        task,
                        &ResetSpec::Random { seed },
                        horizon,
                        seed,
                        &opts,
                    )
                    .unwrap();
                    if traj.success {
                        ok += 1;
                    }
                    lens.push(traj.frames.len());
                    // first frame at final stage
                    let final_stage = *traj.frames.last().map(|f| &f.stage).unwrap_or(&0);
                    let first = traj
                        .frames
                        .iter()
                        .position(|f| f.stage == final_stage)
                        .unwrap_or(0);
                    complete_at.push(first);
                }
                let mean_done = complete_at.iter().sum::<usize>() as f32 / n as f32;
                println!(
                    "{suite:8} {domain:6} noise={noise:5} success {ok}/{n}  horizon {:?}..{:?}  mean_done_at {:.0}",
                    lens.iter().min().unwrap(),
                    lens.iter().max().unwrap(),
                    mean_done
                );
            }
        }
    }
}
