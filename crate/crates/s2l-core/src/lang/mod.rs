//! Stage-to-description templating, granularity reduction, and the pluggable
//! embedding/similarity providers used for representation pretraining.
//!
//! Stage indices map 1-to-1 to template strings: 7 for single pick-and-place,
//! 14 for the two-step suite (two consecutive lists of the 7, with the slots
//! rebound per phase), and 10 for wrap. Granularity levels merge stages into
//! coarser groups down to a single pseudo-description whose embedding is a
//! fixed seeded random vector.

pub mod embed;
pub mod hindsight;
pub mod similarity;

pub use embed::{EmbeddingProvider, EmbeddingProviderSpec, ProviderKind};
pub use similarity::{PairSimilarity, SimilarityScorer, TokenOverlapF1};

use crate::data::{Domain, Suite};
use crate::task::TaskSpec;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Debug, thiserror::Error)]
pub enum LangError {
    #[error("no binding for template slot {{{slot}}}")]
    MissingBinding { slot: String },
    #[error("stage {stage} out of range for suite {suite} at level {level}")]
    StageOutOfRange {
        stage: u32,
        suite: Suite,
        level: GranularityLevel,
    },
    #[error("similarity normalization is degenerate: all corpus pairs score identically")]
    DegenerateNormalization,
    #[error("similarity corpus needs at least 2 distinct strings, found {found}")]
    CorpusTooSmall { found: usize },
    #[error("external provider requested but no backend is registered")]
    ExternalProviderUnavailable,
    #[error("cannot embed empty text")]
    EmptyText,
}

/// How many stages a trajectory's language annotation distinguishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GranularityLevel {
    All,
    Half,
    Two,
    One,
    OnePerDomain,
}

impl std::fmt::Display for GranularityLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GranularityLevel::All => "all",
            GranularityLevel::Half => "half",
            GranularityLevel::Two => "two",
            GranularityLevel::One => "one",
            GranularityLevel::OnePerDomain => "one_per_domain",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for GranularityLevel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "half" => Ok(Self::Half),
            "two" => Ok(Self::Two),
            "one" => Ok(Self::One),
            "one_per_domain" => Ok(Self::OnePerDomain),
            other => Err(format!("unknown granularity level {other:?}")),
        }
    }
}

#[derive(Debug, Deserialize)]
struct SuiteTemplates {
    templates: Vec<String>,
    half_templates: Vec<String>,
    half_map: Vec<usize>,
    two_templates: Vec<String>,
    two_map: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct RawTable {
    pick_place: SuiteTemplates,
    wrap: SuiteTemplates,
    variables: BTreeMap<String, Vec<String>>,
}

/// Per-suite ordered template strings with slot variables.
#[derive(Debug)]
pub struct StageTemplateTable {
    raw: RawTable,
}

static TABLE: OnceLock<StageTemplateTable> = OnceLock::new();

pub fn template_table() -> &'static StageTemplateTable {
    TABLE.get_or_init(|| StageTemplateTable {
        raw: serde_json::from_str(include_str!("../../resources/templates.json"))
            .expect("embedded template table is valid json"),
    })
}

/// Number of full-granularity stages for a suite.
pub fn stage_count(suite: Suite) -> usize {
    match suite {
        Suite::Stack => 7,
        Suite::TwoStep => 14,
        Suite::Wrap => 10,
    }
}

impl StageTemplateTable {
    fn suite_templates(&self, suite: Suite) -> &SuiteTemplates {
        match suite {
            Suite::Stack | Suite::TwoStep => &self.raw.pick_place,
            Suite::Wrap => &self.raw.wrap,
        }
    }

    /// Full-granularity template string for a stage. Two-step stages >= 7 use
    /// the same 7 pick-and-place templates again.
    pub fn template(&self, suite: Suite, stage: u32) -> Option<&str> {
        if stage as usize >= stage_count(suite) {
            return None;
        }
        let t = self.suite_templates(suite);
        let idx = match suite {
            Suite::TwoStep => (stage % 7) as usize,
            _ => stage as usize,
        };
        t.templates.get(idx).map(|s| s.as_str())
    }

    pub fn allowed_values(&self, slot: &str) -> Option<&[String]> {
        self.raw.variables.get(slot).map(|v| v.as_slice())
    }
}

fn fill(template: &str, bindings: &BTreeMap<String, String>) -> Result<String, LangError> {
    let mut out = String::with_capacity(template.len() + 16);
    let mut rest = template;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let tail = &rest[start + 1..];
        let end = tail.find('}').ok_or_else(|| LangError::MissingBinding {
            slot: tail.to_string(),
        })?;
        let slot = &tail[..end];
        let value = bindings
            .get(slot)
            .ok_or_else(|| LangError::MissingBinding { slot: slot.into() })?;
        out.push_str(value);
        rest = &tail[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Fill the full-granularity template for `stage` with the given slot values.
pub fn stage_to_description(
    suite: Suite,
    stage: u32,
    bindings: &BTreeMap<String, String>,
) -> Result<String, LangError> {
    let template =
        template_table()
            .template(suite, stage)
            .ok_or(LangError::StageOutOfRange {
                stage,
                suite,
                level: GranularityLevel::All,
            })?;
    fill(template, bindings)
}

/// Sentinel pseudo-descriptions for the coarsest levels. The embedder maps
/// these to stored seeded random vectors instead of bag-of-token embeddings.
pub fn pseudo_description(domain: Option<Domain>) -> String {
    match domain {
        None => "[random language embedding]".to_string(),
        Some(d) => format!("[random language embedding: {d}]"),
    }
}

pub fn is_pseudo_description(text: &str) -> bool {
    text.starts_with("[random language embedding")
}

/// Merged-stage index of `stage` at a granularity level.
pub fn merged_stage(suite: Suite, level: GranularityLevel, stage: u32) -> Option<usize> {
    let n = stage_count(suite);
    if stage as usize >= n {
        return None;
    }
    let t = template_table().suite_templates(suite);
    let s = stage as usize;
    Some(match level {
        GranularityLevel::All => s,
        GranularityLevel::Half => match suite {
            Suite::TwoStep => {
                let phase = s / 7;
                phase * t.half_templates.len() + t.half_map[s % 7]
            }
            _ => t.half_map[s],
        },
        GranularityLevel::Two => match suite {
            Suite::TwoStep => s / 7,
            _ => t.two_map[s],
        },
        GranularityLevel::One | GranularityLevel::OnePerDomain => 0,
    })
}

/// Number of distinct merged classes at a level (used by the stage
/// classification head). `OnePerDomain` distinguishes the two domains.
pub fn merged_class_count(suite: Suite, level: GranularityLevel) -> usize {
    let t = template_table().suite_templates(suite);
    match level {
        GranularityLevel::All => stage_count(suite),
        GranularityLevel::Half => match suite {
            Suite::TwoStep => 2 * t.half_templates.len(),
            _ => t.half_templates.len(),
        },
        GranularityLevel::Two => match suite {
            Suite::TwoStep => 2,
            Suite::Stack => 1,
            Suite::Wrap => 2,
        },
        GranularityLevel::One => 1,
        GranularityLevel::OnePerDomain => 2,
    }
}

/// Scene description for `stage` at a granularity level, with slots bound
/// from the task. Levels `one`/`one_per_domain` return the pseudo-description
/// sentinel.
pub fn describe(
    task: &TaskSpec,
    level: GranularityLevel,
    stage: u32,
    domain: Domain,
) -> Result<String, LangError> {
    let suite = task.suite;
    if stage as usize >= stage_count(suite) {
        return Err(LangError::StageOutOfRange {
            stage,
            suite,
            level,
        });
    }
    let bindings = task.bindings_for_stage(stage);
    let t = template_table().suite_templates(suite);
    match level {
        GranularityLevel::All => stage_to_description(suite, stage, &bindings),
        GranularityLevel::Half => {
            let idx = match suite {
                Suite::TwoStep => t.half_map[(stage % 7) as usize],
                _ => t.half_map[stage as usize],
            };
            fill(&t.half_templates[idx], &bindings)
        }
        GranularityLevel::Two => {
            let idx = match suite {
                Suite::TwoStep => 0, // phase encoded via bindings
                _ => t.two_map[stage as usize],
            };
            fill(&t.two_templates[idx], &bindings)
        }
        GranularityLevel::One => Ok(pseudo_description(None)),
        GranularityLevel::OnePerDomain => Ok(pseudo_description(Some(domain))),
    }
}

/// Per-frame descriptions for a whole stage sequence.
pub fn reduce_granularity(
    stages: &[u32],
    level: GranularityLevel,
    task: &TaskSpec,
    domain: Domain,
) -> Result<Vec<String>, LangError> {
    stages
        .iter()
        .map(|&s| describe(task, level, s, domain))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::task::default_tasks;

    fn bind(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn stack_stage0_matches_reference_row() {
        let d = stage_to_description(
            Suite::Stack,
            0,
            &bind(&[("objName", "carrot"), ("contName", "bowl")]),
        )
        .unwrap();
        assert_eq!(d, "gripper open, reaching for carrot, out of bowl");
    }

    #[test]
    fn two_step_phase2_rebinds_slots() {
        let d = stage_to_description(
            Suite::TwoStep,
            7,
            &bind(&[("objName", "bowl"), ("contName", "plate")]),
        )
        .unwrap();
        assert_eq!(d, "gripper open, reaching for bowl, out of plate");
    }

    #[test]
    fn wrap_terminal_stage_fills_all_slots() {
        let d = stage_to_description(
            Suite::Wrap,
            8,
            &bind(&[
                ("graspObjName", "white plug"),
                ("flexWraparoundObjName", "cord"),
                ("direction", "counterclockwise"),
            ]),
        )
        .unwrap();
        assert_eq!(d, "gripper open, above white plug with cord fully wrapped");
    }

    #[test]
    fn missing_binding_names_slot() {
        let err = stage_to_description(Suite::Stack, 0, &bind(&[("objName", "milk")])).unwrap_err();
        match err {
            LangError::MissingBinding { slot } => assert_eq!(slot, "contName"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn half_level_merges_reach_stages() {
        let task = two_step_target();
        let d0 = describe(&task, GranularityLevel::Half, 0, Domain::Target).unwrap();
        let d1 = describe(&task, GranularityLevel::Half, 1, Domain::Target).unwrap();
        assert_eq!(d0, "gripper open, reaching for carrot, out of bowl");
        assert_eq!(d0, d1);
    }

    #[test]
    fn two_level_collapses_each_phase() {
        let task = two_step_target();
        for s in 0..7 {
            let d = describe(&task, GranularityLevel::Two, s, Domain::Target).unwrap();
            assert_eq!(d, "picking carrot and putting in bowl");
        }
        for s in 7..14 {
            let d = describe(&task, GranularityLevel::Two, s, Domain::Target).unwrap();
            assert_eq!(d, "picking bowl and putting in plate");
        }
    }

    #[test]
    fn one_level_is_domain_independent() {
        let task = two_step_target();
        let a = describe(&task, GranularityLevel::One, 3, Domain::Source).unwrap();
        let b = describe(&task, GranularityLevel::One, 11, Domain::Target).unwrap();
        assert_eq!(a, b);
        assert!(is_pseudo_description(&a));
        let c = describe(&task, GranularityLevel::OnePerDomain, 3, Domain::Source).unwrap();
        let d = describe(&task, GranularityLevel::OnePerDomain, 3, Domain::Target).unwrap();
        assert_ne!(c, d);
    }

    #[test]
    fn merge_maps_are_monotone_coarsenings() {
        // Frames sharing a class at a finer level share one at every coarser level.
        let order = [
            GranularityLevel::All,
            GranularityLevel::Half,
            GranularityLevel::Two,
            GranularityLevel::One,
        ];
        for suite in [Suite::Stack, Suite::TwoStep, Suite::Wrap] {
            let n = stage_count(suite) as u32;
            for w in order.windows(2) {
                for a in 0..n {
                    for b in 0..n {
                        let fine_same =
                            merged_stage(suite, w[0], a) == merged_stage(suite, w[0], b);
                        let coarse_same =
                            merged_stage(suite, w[1], a) == merged_stage(suite, w[1], b);
                        if fine_same {
                            assert!(coarse_same, "{suite} {a} {b} {:?}->{:?}", w[0], w[1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn merge_maps_are_surjective() {
        for suite in [Suite::Stack, Suite::TwoStep, Suite::Wrap] {
            for level in [
                GranularityLevel::All,
                GranularityLevel::Half,
                GranularityLevel::Two,
                GranularityLevel::One,
            ] {
                let k = merged_class_count(suite, level);
                let mut seen = vec![false; k];
                for s in 0..stage_count(suite) as u32 {
                    seen[merged_stage(suite, level, s).unwrap()] = true;
                }
                assert!(seen.iter().all(|&x| x), "{suite} {level} not surjective");
            }
        }
    }

    #[test]
    fn template_coverage_over_default_tasks() {
        // Every (suite, stage, legal binding) yields a non-empty string
        // containing every bound value that its template references.
        for suite in [Suite::Stack, Suite::TwoStep, Suite::Wrap] {
            for domain in [Domain::Source, Domain::Target] {
                for task in default_tasks(suite, domain) {
                    for s in 0..stage_count(suite) as u32 {
                        let d = describe(&task, GranularityLevel::All, s, domain).unwrap();
                        assert!(!d.is_empty());
                        let template = template_table().template(suite, s).unwrap();
                        for (slot, value) in task.bindings_for_stage(s) {
                            if template.contains(&format!("{{{slot}}}")) {
                                assert!(d.contains(&value), "{d:?} missing {value:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    fn two_step_target() -> TaskSpec {
        default_tasks(Suite::TwoStep, Domain::Target)[0].clone()
    }
}
