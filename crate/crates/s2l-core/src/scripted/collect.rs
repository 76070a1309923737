//! Demonstration collection: runs scripted experts, records frames with
//! actions, stages, and filled language descriptions, and assembles dataset
//! manifests. Per-episode seeds derive from the master seed through a global
//! attempt counter, so a (suite, domain, n, seed) tuple maps to one exact
//! dataset byte-for-byte.

use super::{make_policy, PickPlaceParams};
use crate::data::{DatasetManifest, Domain, Frame, Suite, Trajectory};
use crate::lang::{self, GranularityLevel, LangError};
use crate::rng::{derive_seed, rng_from_seed};
use crate::sim::{self, render::render, DomainConfig, ResetSpec, SimError, WorldState};
use crate::task::TaskSpec;
use rand_distr::{Distribution, Normal};

#[derive(Debug, thiserror::Error)]
pub enum CollectError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("gave up after {attempts} attempts while collecting {wanted} successful episodes")]
    AttemptsExhausted { attempts: u64, wanted: usize },
    #[error("collect needs at least one task")]
    NoTasks,
}

#[derive(Debug, Clone)]
pub struct CollectOptions {
    pub img_height: usize,
    pub img_width: usize,
    /// Gaussian noise on the xyz action components (the gripper dimension is
    /// left exact so grasp triggering stays reliable at desk scale).
    pub noise: bool,
    pub noise_sigma: f32,
    pub keep_failures: bool,
    /// Record per-frame scene descriptions at full granularity.
    pub label: bool,
    /// Pad proprioception from 4 to 22 dims with sin/cos phase features.
    pub proprio_pad_22: bool,
    /// Abort after `n * max_attempt_factor` episode attempts.
    pub max_attempt_factor: u64,
    pub params: PickPlaceParams,
}

impl Default for CollectOptions {
    fn default() -> Self {
        Self {
            img_height: 64,
            img_width: 64,
            noise: true,
            noise_sigma: 0.1,
            keep_failures: false,
            label: true,
            proprio_pad_22: false,
            max_attempt_factor: 60,
            params: PickPlaceParams::default(),
        }
    }
}

fn proprio_vec(state: &WorldState, t: u32, horizon: u32, pad: bool) -> Vec<f32> {
    let mut p = vec![
        state.gripper_pos[0],
        state.gripper_pos[1],
        state.gripper_pos[2],
        state.gripper_aperture,
    ];
    if pad {
        let h = horizon.max(1) as f32;
        for k in 1..=9u32 {
            let phase = 2.0 * std::f32::consts::PI * (k as f32) * (t as f32) / h;
            p.push(phase.sin());
            p.push(phase.cos());
        }
    }
    p
}

/// Run one scripted episode and return the recorded trajectory plus the full
/// state history (initial state first).
pub fn run_scripted_episode(
    cfg: &DomainConfig,
    task: &TaskSpec,
    reset_spec: &ResetSpec,
    horizon: u32,
    episode_seed: u64,
    opts: &CollectOptions,
) -> Result<(Trajectory, Vec<WorldState>), CollectError> {
    let mut state = sim::reset(cfg, task, reset_spec)?;
    let mut policy = make_policy(task, opts.params);
    let mut noise_rng = rng_from_seed(derive_seed(episode_seed, 0x6E01));
    // The noise sigma is defined against the source domain's executed step
    // size (lag * action_scale = 0.08); other domains scale it so the
    // physical jitter per step is comparable across control frequencies.
    let exec = (cfg.lag * cfg.action_scale).max(1e-6);
    let sigma = opts.noise_sigma * (0.08 / exec);
    let normal = Normal::<f32>::new(0.0, sigma).expect("valid sigma");

    let mut frames = Vec::with_capacity(horizon as usize);
    let mut history = Vec::with_capacity(horizon as usize + 1);
    history.push(state.clone());

    for t in 0..horizon {
        let image = render(&state, cfg, opts.img_height, opts.img_width);
        let proprio = proprio_vec(&state, t, horizon, opts.proprio_pad_22);
        let (mut action, stage) = policy.act(&state);
        if opts.noise {
            for a in action.iter_mut().take(3) {
                *a += normal.sample(&mut noise_rng);
            }
        }
        let description = if opts.label {
            Some(lang::describe(task, GranularityLevel::All, stage, cfg.name)?)
        } else {
            None
        };
        frames.push(Frame {
            image,
            proprio,
            action: Some(action),
            stage,
            description,
        });
        state = sim::step(&state, action, cfg);
        history.push(state.clone());
    }

    let (success, _) = sim::success(&history, task.suite);
    Ok((
        Trajectory {
            frames,
            task_id: task.id.clone(),
            task_instruction: task.instruction.clone(),
            domain: cfg.name,
            suite: task.suite,
            seed: episode_seed,
            success,
        },
        history,
    ))
}

/// Collect `n` demonstrations round-robin over `tasks`. Failures are retried
/// (and dropped) unless `keep_failures` is set.
pub fn collect(
    suite: Suite,
    cfg: &DomainConfig,
    tasks: &[TaskSpec],
    n: usize,
    master_seed: u64,
    opts: &CollectOptions,
) -> Result<(Vec<Trajectory>, DatasetManifest), CollectError> {
    if tasks.is_empty() {
        return Err(CollectError::NoTasks);
    }
    cfg.validate()?;
    let mut out = Vec::with_capacity(n);
    let mut attempt: u64 = 0;
    let max_attempts = (n as u64).saturating_mul(opts.max_attempt_factor).max(1);
    for k in 0..n {
        let task = &tasks[k % tasks.len()];
        loop {
            if attempt >= max_attempts {
                return Err(CollectError::AttemptsExhausted {
                    attempts: attempt,
                    wanted: n,
                });
            }
            let episode_seed = derive_seed(master_seed, attempt);
            attempt += 1;
            let horizon = sim::draw_horizon(cfg, suite, episode_seed);
            let (traj, _) = run_scripted_episode(
                cfg,
                task,
                &ResetSpec::Random { seed: episode_seed },
                horizon,
                episode_seed,
                opts,
            )?;
            if traj.success || opts.keep_failures {
                out.push(traj);
                break;
            }
        }
    }
    let manifest = DatasetManifest::for_dataset(
        &format!("{}-{}-n{}-seed{}", suite, cfg.name, n, master_seed),
        &out,
        cfg.name,
        suite,
        cfg.control_hz,
        master_seed,
    );
    Ok((out, manifest))
}

/// Collect with the domain's default task list.
pub fn collect_default(
    suite: Suite,
    domain: Domain,
    n: usize,
    master_seed: u64,
    opts: &CollectOptions,
) -> Result<(Vec<Trajectory>, DatasetManifest), CollectError> {
    let cfg = DomainConfig::default_for(domain);
    let tasks = crate::task::default_tasks(suite, domain);
    collect(suite, &cfg, &tasks, n, master_seed, opts)
}
