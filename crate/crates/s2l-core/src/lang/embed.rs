//! Deterministic text embedding. The builtin provider hashes the lowercase
//! token bag of a string into per-token seeded Gaussian vectors, sums them,
//! and unit-normalizes; distinct template strings map to well-separated
//! directions. Pseudo-descriptions (see [`crate::lang::pseudo_description`])
//! bypass tokenization and return one fixed seeded random vector per
//! sentinel. An external provider can be registered behind the same contract
//! for fidelity experiments; requesting it without a backend is an error, not
//! a silent fallback.

use super::LangError;
use crate::rng::{fnv1a64, rng_from_seed, splitmix64};
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

pub const DEFAULT_EMBEDDING_DIM: usize = 384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    Builtin,
    External,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingProviderSpec {
    pub provider: ProviderKind,
    pub dim: usize,
    pub seed: u64,
}

impl Default for EmbeddingProviderSpec {
    fn default() -> Self {
        Self {
            provider: ProviderKind::Builtin,
            dim: DEFAULT_EMBEDDING_DIM,
            seed: 0,
        }
    }
}

type ExternalFn = Box<dyn Fn(&str) -> Vec<f32> + Send + Sync>;

pub struct EmbeddingProvider {
    spec: EmbeddingProviderSpec,
    external: Option<ExternalFn>,
}

impl std::fmt::Debug for EmbeddingProvider {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EmbeddingProvider")
            .field("spec", &self.spec)
            .field("external", &self.external.is_some())
            .finish()
    }
}

fn tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

impl EmbeddingProvider {
    pub fn builtin(dim: usize, seed: u64) -> Self {
        Self {
            spec: EmbeddingProviderSpec {
                provider: ProviderKind::Builtin,
                dim,
                seed,
            },
            external: None,
        }
    }

    pub fn from_spec(spec: EmbeddingProviderSpec) -> Result<Self, LangError> {
        match spec.provider {
            ProviderKind::Builtin => Ok(Self {
                spec,
                external: None,
            }),
            ProviderKind::External => Err(LangError::ExternalProviderUnavailable),
        }
    }

    /// Register an external embedding backend (e.g. an in-process adapter
    /// around a sentence-embedding model) behind the provider contract.
    pub fn external(dim: usize, f: ExternalFn) -> Self {
        Self {
            spec: EmbeddingProviderSpec {
                provider: ProviderKind::External,
                dim,
                seed: 0,
            },
            external: Some(f),
        }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    fn seeded_unit_vector(&self, stream: u64) -> Vec<f32> {
        let mut rng = rng_from_seed(splitmix64(self.spec.seed ^ stream));
        let mut v: Vec<f32> = (0..self.spec.dim)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f32>().sqrt().max(1e-12);
        for x in &mut v {
            *x /= norm;
        }
        v
    }

    pub fn embed(&self, text: &str) -> Result<Vec<f32>, LangError> {
        match self.spec.provider {
            ProviderKind::External => {
                let f = self
                    .external
                    .as_ref()
                    .ok_or(LangError::ExternalProviderUnavailable)?;
                Ok(f(text))
            }
            ProviderKind::Builtin => {
                if super::is_pseudo_description(text) {
                    // Whole-string keyed random vector.
                    return Ok(self.seeded_unit_vector(fnv1a64(text.as_bytes())));
                }
                let toks = tokens(text);
                if toks.is_empty() {
                    return Err(LangError::EmptyText);
                }
                let mut acc = vec![0f32; self.spec.dim];
                for t in &toks {
                    let v = self.seeded_unit_vector(fnv1a64(t.as_bytes()));
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a += x;
                    }
                }
                let norm = acc.iter().map(|x| x * x).sum::<f32>().sqrt().max(1e-12);
                for x in &mut acc {
                    *x /= norm;
                }
                Ok(acc)
            }
        }
    }
}
