use std::path::PathBuf;

use qhodge::numeric;

use crate::args::{Format, GlobalArgs};
use crate::cache::Cache;
use crate::CliError;

pub const MIN_ORDER: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub order: usize,
    pub precision: u32,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<Self, CliError> {
        let cfg = RunConfig {
            order: g.order,
            precision: g.precision,
            format: g.format,
            cache_dir: if g.no_cache { None } else { g.cache_dir.clone() },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.order < MIN_ORDER {
            return Err(CliError::Usage(format!("--order must be at least {MIN_ORDER}")));
        }
        numeric::check_precision(self.precision).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn cache(&self) -> Option<Cache> {
        self.cache_dir.as_ref().map(|d| Cache::new(d.clone()))
    }
}
