use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use serde::Serialize;
use vamat_core::gr::{LowerBoundedModule, ModuleKind};
use vamat_core::reduction::{BlockCache, CacheOutcome, ReductionEngine};
use vamat_core::voa::Voa;
use vamat_core::Scalar;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraArg {
    Heisenberg,
    Virasoro,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every command.
#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Vertex algebra to work in.
    #[arg(long, value_enum, default_value = "heisenberg", global = true)]
    pub algebra: AlgebraArg,

    /// Central charge of the Virasoro algebra, as p/q.
    #[arg(long, default_value = "1/2", global = true)]
    pub central_charge: Scalar,

    /// Heisenberg charge of the Fock module, as p/q.
    #[arg(long, default_value = "1", global = true)]
    pub mu: Scalar,

    /// Lowest weight of the Virasoro Verma module, as p/q.
    #[arg(long, default_value = "1/16", global = true)]
    pub h: Scalar,

    /// Matrix level N.
    #[arg(long = "N", default_value_t = 0, global = true)]
    pub level: usize,

    /// Largest weight of algebra basis vectors used by the checks.
    #[arg(long, default_value_t = 4, global = true)]
    pub weight_cutoff: u32,

    /// Largest depth kept in module computations.
    #[arg(long, default_value_t = 4, global = true)]
    pub depth_cutoff: u32,

    /// Largest weight of the algebra vectors used to cut out the module
    /// filtration; defaults to one above the depth cutoff.
    #[arg(long, global = true)]
    pub v_weight_cutoff: Option<u32>,

    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Largest number of cases per sampled check.
    #[arg(long, default_value_t = 4000, global = true)]
    pub budget: usize,

    /// Output format of tables.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Directory of cached reduction blocks.
    #[arg(long, env = "VAMAT_CACHE_DIR", global = true)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn v_cutoff(&self) -> u32 {
        self.v_weight_cutoff.unwrap_or(self.depth_cutoff + 1)
    }

    /// Truncation of the algebra: room for products of two basis vectors
    /// at the check cutoff, dressed up to level `N`, and for module work.
    pub fn algebra_cutoff(&self) -> u32 {
        let w = self.weight_cutoff.max(self.v_cutoff());
        (2 * w + 2 * self.level as u32 + 4).max(8)
    }

    pub fn voa(&self) -> Voa {
        match self.algebra {
            AlgebraArg::Heisenberg => Voa::heisenberg(self.algebra_cutoff()),
            AlgebraArg::Virasoro => Voa::virasoro(self.central_charge.clone(), self.algebra_cutoff()),
        }
    }

    pub fn module_kind(&self) -> ModuleKind {
        match self.algebra {
            AlgebraArg::Heisenberg => ModuleKind::Fock { mu: self.mu.clone() },
            AlgebraArg::Virasoro => ModuleKind::Verma { h: self.h.clone() },
        }
    }

    pub fn module(&self) -> Result<Arc<LowerBoundedModule>, CliError> {
        Ok(Arc::new(LowerBoundedModule::new(self.voa(), vec![self.module_kind()], self.depth_cutoff)?))
    }

    pub fn engine(&self, size: usize) -> Result<ReductionEngine, CliError> {
        let engine = ReductionEngine::new(self.voa(), size);
        Ok(match &self.cache_dir {
            Some(dir) => engine.with_cache(BlockCache::new(dir)?),
            None => engine,
        })
    }
}

/// Warns on stderr about cache files that had to be rebuilt.
pub fn report_cache(engine: &ReductionEngine) {
    for e in engine.cache_events() {
        match e.outcome {
            CacheOutcome::Stale => eprintln!("warning: stale cache entry {} rebuilt", e.file),
            CacheOutcome::Corrupt(why) => eprintln!("warning: corrupt cache entry {} rebuilt ({why})", e.file),
            CacheOutcome::Hit | CacheOutcome::Miss => {}
        }
    }
}
