use serde::{Deserialize, Serialize};

/// Default cap on the number of lattice points enumerated at one degree.
pub const DEFAULT_MAX_POINTS: u64 = 50_000_000;

/// Default cap on the number of holes stored explicitly per ledger.
pub const DEFAULT_HOLE_CAP: usize = 1_000_000;

/// Integer arithmetic used by the exact linear-algebra kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arith {
    /// Checked 64-bit arithmetic; overflow is reported as an error.
    Checked64,
    /// Arbitrary precision throughout.
    Big,
    /// Checked 64-bit first, rerun with arbitrary precision on overflow.
    #[default]
    Auto,
}

/// Semigroup closure strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Explicit point sets, `G_d = G_{d-1} + L_1`.
    Generic,
    /// Points grouped by every coordinate but the last, with the reachable
    /// values of the last coordinate kept as interval sets. The polytope is
    /// first validated as a lattice segmental fibration.
    Fiber,
    /// Interval sets without the validation step (they are exact for any
    /// polytope) when degree-1 rows hold two or more points on average,
    /// else generic.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeConfig {
    pub max_points: u64,
    pub hole_cap: usize,
    /// Worker threads for closure construction; 0 uses the rayon default.
    pub threads: usize,
    pub engine: Engine,
    pub arith: Arith,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        Self {
            max_points: DEFAULT_MAX_POINTS,
            hole_cap: DEFAULT_HOLE_CAP,
            threads: 0,
            engine: Engine::Auto,
            arith: Arith::Auto,
        }
    }
}

impl ComputeConfig {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_max_points(mut self, max_points: u64) -> Self {
        self.max_points = max_points;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    /// Runs `f` inside a thread pool honoring `threads`.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
