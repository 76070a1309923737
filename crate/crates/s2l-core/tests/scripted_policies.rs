//! Scripted expert properties: branch/stage mapping, determinism, stage
//! monotonicity, wrap geometry, and collection reproducibility.

use s2l_core::data::{Domain, Suite};
use s2l_core::geom;
use s2l_core::scripted::{
    collect_default, pick_place_step, run_scripted_episode, Branch, CollectOptions,
    PickPlaceParams, ScriptedPolicy, WrapScript,
};
use s2l_core::sim::{self, scenario_grid, DomainConfig, ResetSpec, EvalScenario};
use s2l_core::task::{default_tasks, WrapDirection};

fn noise_free() -> CollectOptions {
    CollectOptions {
        noise: false,
        ..Default::default()
    }
}

#[test]
fn place_attempted_holds_zero_action_at_final_stage() {
    let p = PickPlaceParams::default();
    let (action, branch, pa) = pick_place_step(
        [0.0, 0.0, 0.2],
        true,
        false,
        [0.1, 0.1, 0.02],
        [0.2, 0.2, 0.14],
        &p,
        true,
        0.0,
    );
    assert_eq!(action, [0.0, 0.0, 0.0, 0.0]);
    assert_eq!(branch, Branch::Hold);
    assert_eq!(branch.stage(), 6);
    assert!(pa);
}

#[test]
fn grasped_not_lifted_moves_straight_up() {
    let p = PickPlaceParams::default();
    let (action, branch, _) = pick_place_step(
        [0.1, 0.1, 0.05],
        false,
        true,
        [0.1, 0.1, 0.05],
        [0.2, 0.2, 0.14],
        &p,
        false,
        -1.0,
    );
    assert_eq!(&action[..3], &[0.0, 0.0, 1.0]);
    assert_eq!(branch, Branch::Lift);
    assert_eq!(branch.stage(), 3);
}

#[test]
fn reach_action_points_at_the_object() {
    let p = PickPlaceParams::default();
    let ee = [0.0f32, 0.0, 0.2];
    let pick = [0.2f32, -0.1, 0.02];
    let (action, branch, _) = pick_place_step(ee, false, false, pick, [0.3, 0.3, 0.14], &p, false, 0.0);
    let expect = geom::sub(pick, ee);
    assert_eq!(&action[..3], &expect[..]);
    assert_eq!(branch, Branch::Reach);
    assert_eq!(branch.stage(), 0);
}

#[test]
fn noise_free_rollouts_are_bit_deterministic() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Stack, Domain::Source)[1].clone();
    let run = || {
        run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed: 77 }, 220, 77, &noise_free())
            .unwrap()
            .0
    };
    assert_eq!(run(), run());
}

#[test]
fn stages_non_decreasing_on_successful_noise_free_rollouts() {
    for suite in [Suite::Stack, Suite::TwoStep] {
        for domain in [Domain::Source, Domain::Target] {
            let cfg = DomainConfig::default_for(domain);
            let tasks = default_tasks(suite, domain);
            for seed in 0..25u64 {
                let task = &tasks[seed as usize % tasks.len()];
                let horizon = sim::draw_horizon(&cfg, suite, seed);
                let (traj, _) = run_scripted_episode(
                    &cfg,
                    task,
                    &ResetSpec::Random { seed },
                    horizon,
                    seed,
                    &noise_free(),
                )
                .unwrap();
                assert!(traj.success, "{suite} {domain} seed {seed} failed");
                let stages: Vec<u32> = traj.frames.iter().map(|f| f.stage).collect();
                assert_eq!(stages[0], 0, "starts at stage 0");
                assert!(
                    stages.windows(2).all(|w| w[0] <= w[1]),
                    "{suite} {domain} seed {seed}: stages not monotone: {stages:?}"
                );
            }
        }
    }
}

#[test]
fn two_step_stage_range_and_phase_transition() {
    let cfg = DomainConfig::target_default();
    let task = default_tasks(Suite::TwoStep, Domain::Target)[0].clone();
    for seed in 0..10u64 {
        let (traj, history) =
            run_scripted_episode(&cfg, &task, &ResetSpec::Random { seed }, 45, seed, &noise_free())
                .unwrap();
        let stages: Vec<u32> = traj.frames.iter().map(|f| f.stage).collect();
        assert!(stages.iter().all(|&s| s <= 13));
        // Phase 2 begins exactly at the first frame where the phase-1
        // placement test passes on the pre-action state.
        if let Some(first_p2) = stages.iter().position(|&s| s >= 7) {
            let s = &history[first_p2];
            let placed = geom::dist_xy(s.objects[0].pos, s.objects[1].pos) <= sim::PLACE_RADIUS
                && !s.objects[0].grasped
                && s.gripper_open();
            assert!(placed, "seed {seed}: transition without placement");
            for (t, &stage) in stages.iter().enumerate() {
                if t < first_p2 {
                    assert!(stage < 7);
                }
            }
        } else {
            panic!("seed {seed}: never reached phase 2");
        }
    }
}

#[test]
fn wrap_tangent_is_perpendicular_to_radial() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Wrap, Domain::Source)[0].clone();
    let mut s = sim::reset(&cfg, &task, &ResetSpec::Random { seed: 0 }).unwrap();
    // Force the grasped, lifted, mid-wrap condition.
    s.objects[0].grasped = true;
    s.gripper_pos = [0.18, 0.07, 0.15];
    let mut policy = WrapScript::new(PickPlaceParams::default(), WrapDirection::Counterclockwise);
    let (action, stage) = policy.act(&s);
    let center = s.center_pos.unwrap();
    let rel = [s.gripper_pos[0] - center[0], s.gripper_pos[1] - center[1]];
    // Recover the tangent component by removing the radial (maintain) part.
    let dist = (rel[0] * rel[0] + rel[1] * rel[1]).sqrt();
    let maintain = [rel[0] * (0.15 - dist), rel[1] * (0.15 - dist)];
    let tangent = [action[0] - maintain[0], action[1] - maintain[1]];
    let dot = tangent[0] * rel[0] + tangent[1] * rel[1];
    assert!(dot.abs() < 1e-6, "tangent not perpendicular: {dot}");
    assert!((4..=7).contains(&stage));
}

#[test]
fn wrap_reaches_done_angle_on_most_noise_free_seeds() {
    let cfg = DomainConfig::source_default();
    let task = default_tasks(Suite::Wrap, Domain::Source)[0].clone();
    let mut reached = 0;
    let n = 40;
    for seed in 0..n {
        let horizon = sim::draw_horizon(&cfg, Suite::Wrap, seed);
        let (_, history) = run_scripted_episode(
            &cfg,
            &task,
            &ResetSpec::Random { seed },
            horizon,
            seed,
            &noise_free(),
        )
        .unwrap();
        let last = history.last().unwrap();
        if last.wrap_accum > 11.0 * std::f32::consts::PI / 6.0 {
            reached += 1;
        }
    }
    assert!(reached * 10 >= n * 9, "only {reached}/{n} wrapped far enough");
}

#[test]
fn wrap_direction_flag_mirrors_the_accumulated_angle() {
    let cfg = DomainConfig::source_default();
    let tasks = default_tasks(Suite::Wrap, Domain::Source);
    let ccw = &tasks[0];
    let cw = &tasks[1];
    // Grid points 0..5 (y < 0) mirror grid points 5..10 (y > 0); the world
    // and both policies are equivariant under y-negation, so matched pairs
    // accumulate opposite angles.
    for i in 0..5usize {
        let run = |task, init_index| {
            let sc = EvalScenario {
                suite: Suite::Wrap,
                domain: Domain::Source,
                init_index,
                seed: 0,
            };
            // Fixed-seed scenario so both directions see mirrored starts.
            let (_, history) = run_scripted_episode(
                &cfg,
                task,
                &ResetSpec::Scenario(sc),
                240,
                99,
                &noise_free(),
            )
            .unwrap();
            history.last().unwrap().wrap_accum
        };
        let a_ccw = run(ccw, i);
        let a_cw = run(cw, i + 5);
        // Mirrored start positions have the same x and opposite y; the grid
        // builds them at indices i and i+5.
        let g = scenario_grid(Suite::Wrap);
        assert!((g[i][0] - g[i + 5][0]).abs() < 1e-6);
        assert!((g[i][1] + g[i + 5][1]).abs() < 1e-6);
        assert!(
            (a_ccw + a_cw).abs() < 1e-3,
            "ccw {a_ccw} vs cw {a_cw} at grid {i}"
        );
    }
}

#[test]
fn collect_is_reproducible_and_respects_horizon_band() {
    let opts = CollectOptions::default();
    let (a, ma) = collect_default(Suite::Stack, Domain::Source, 6, 123, &opts).unwrap();
    let (b, mb) = collect_default(Suite::Stack, Domain::Source, 6, 123, &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(ma, mb);
    assert_eq!(ma.trajectory_count, 6);
    for t in &a {
        assert!(t.success);
        let len = t.frames.len() as u32;
        assert!((200..=320).contains(&len), "length {len} outside band");
        assert!(t.frames.iter().all(|f| f.action.is_some()));
        assert!(t.frames.iter().all(|f| f.description.is_some()));
    }
    // Round-robin over the four source tasks.
    let ids: Vec<&str> = a.iter().map(|t| t.task_id.as_str()).collect();
    assert_eq!(ids[0], ids[4]);
    assert_ne!(ids[0], ids[1]);
}

#[test]
fn collect_supports_few_shot_budgets() {
    let opts = CollectOptions::default();
    for budget in [25usize] {
        let (d, m) = collect_default(Suite::Stack, Domain::Target, budget, 5, &opts).unwrap();
        assert_eq!(d.len(), budget);
        assert_eq!(m.trajectory_count, budget);
        assert!(d.iter().all(|t| t.frames.len() == 18));
    }
}

#[test]
fn keep_failures_keeps_every_episode() {
    let mut opts = CollectOptions::default();
    opts.keep_failures = true;
    // Source two-step with noise fails sometimes; with keep_failures the
    // count is exact and failures are recorded as such.
    let (d, _) = collect_default(Suite::TwoStep, Domain::Target, 8, 3, &opts).unwrap();
    assert_eq!(d.len(), 8);
}
