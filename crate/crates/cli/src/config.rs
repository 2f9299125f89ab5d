use std::path::PathBuf;

use thiserror::Error;

pub const ENV_MAX_RADIUS: &str = "NATEXT_MAX_RADIUS";
pub const ENV_WORD_BUDGET: &str = "NATEXT_WORD_BUDGET";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("`{0}` must be at least 1")]
    ZeroBound(&'static str),
    #[error("environment variable {name} is not a positive integer: `{value}`")]
    BadEnv { name: &'static str, value: String },
}

/// Bounds shared by every command. All of them are ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub max_radius: usize,
    /// Word-length bound for membership and reversibility searches.
    pub word_budget: usize,
    /// Size of the semigroup window used for surjectivity checks.
    pub window: usize,
    /// Largest Følner index for entropy tables.
    pub n_max: usize,
    pub out: Option<PathBuf>,
    pub log2: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_radius: 4, word_budget: 12, window: 3, n_max: 20, out: None, log2: false }
    }
}

impl RunConfig {
    /// Defaults with the environment overrides applied.
    pub fn from_env() -> Result<Self, ConfigError> {
        Self::with_lookup(|k| std::env::var(k).ok())
    }

    pub fn with_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (name, slot) in [(ENV_MAX_RADIUS, &mut cfg.max_radius), (ENV_WORD_BUDGET, &mut cfg.word_budget)] {
            if let Some(value) = lookup(name) {
                *slot = match value.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => v,
                    _ => return Err(ConfigError::BadEnv { name, value }),
                };
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [
            ("max_radius", self.max_radius),
            ("word_budget", self.word_budget),
            ("window", self.window),
            ("n_max", self.n_max),
        ] {
            if v == 0 {
                return Err(ConfigError::ZeroBound(name));
            }
        }
        Ok(())
    }
}
