use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polycore::{int, Rational};

/// Normalization convention for the Gegenbauer factor of the free-motion
/// radial functions. Each convention is a fixed rescaling of the standard
/// `C_n^λ` fixed by the three-term recurrence.
pub trait GegenbauerConvention: Send + Sync + fmt::Debug {
    /// Registry key, also the value accepted by `--convention`.
    fn name(&self) -> &'static str;

    /// Human-readable tag written into reports.
    fn label(&self) -> &'static str;

    /// Factor `s` such that the convention's polynomial is `s * C_n^λ`.
    fn scale(&self, n: u32, lambda: u32) -> Rational;
}

/// `C_0 = 1`, `C_1 = 2λx`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Standard;

impl GegenbauerConvention for Standard {
    fn name(&self) -> &'static str {
        "standard"
    }
    fn label(&self) -> &'static str {
        "Standard"
    }
    fn scale(&self, _n: u32, _lambda: u32) -> Rational {
        int(1)
    }
}

/// `G_n^λ = (-1)^n n! C_n^λ`. Under this normalization the perturbed
/// radial functions expand with unit leading coefficient.
#[derive(Debug, Clone, Copy, Default)]
pub struct PaperRodrigues;

impl GegenbauerConvention for PaperRodrigues {
    fn name(&self) -> &'static str {
        "paper"
    }
    fn label(&self) -> &'static str {
        "PaperRodrigues"
    }
    fn scale(&self, n: u32, _lambda: u32) -> Rational {
        let fact: i64 = (1..=n as i64).product();
        if n % 2 == 0 {
            int(fact)
        } else {
            int(-fact)
        }
    }
}

/// Name-keyed registry of conventions, selected at runtime.
#[derive(Clone, Default)]
pub struct ConventionRegistry {
    entries: BTreeMap<String, Arc<dyn GegenbauerConvention>>,
}

impl ConventionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding [`Standard`] and [`PaperRodrigues`].
    pub fn with_defaults() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(Standard));
        reg.register(Arc::new(PaperRodrigues));
        reg
    }

    /// Registers under both `name()` and `label()` (lower-cased).
    pub fn register(&mut self, conv: Arc<dyn GegenbauerConvention>) {
        self.entries
            .insert(conv.name().to_ascii_lowercase(), conv.clone());
        self.entries.insert(conv.label().to_ascii_lowercase(), conv);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn GegenbauerConvention>> {
        self.entries
            .get(&name.to_ascii_lowercase())
            .cloned()
            .ok_or_else(|| Error::UnknownConvention(name.to_string()))
    }

    /// Primary names, without label aliases.
    pub fn names(&self) -> Vec<&'static str> {
        let mut names: Vec<_> = self.entries.values().map(|c| c.name()).collect();
        names.sort_unstable();
        names.dedup();
        names
    }
}

impl fmt::Debug for ConventionRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// Look up a convention in the process-wide default registry.
pub fn convention(name: &str) -> Result<Arc<dyn GegenbauerConvention>> {
    static DEFAULTS: OnceLock<ConventionRegistry> = OnceLock::new();
    DEFAULTS
        .get_or_init(ConventionRegistry::with_defaults)
        .get(name)
}
