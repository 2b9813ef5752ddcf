//! Exact symbolic verification of the eigenvalue equations, ladder recurrences and
//! transfer identities, plus pointwise checks of the connection-matrix identities.
//!
//! Every identity is registered by name in a [`CheckRegistry`] so front-ends can run
//! all of them or a selection.

mod identities;
mod operator;
mod similarity;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use identities::{
    check_free_eigen, check_perturbed_eigen, check_radial_reduction, check_recurrences,
    check_transfer_identity, ladder_annihilates, published_constant, recurrence_cases,
    recurrence_constant, RecurrenceEntry, RecurrenceStatus, PUBLISHED_RECURRENCES,
};
pub use operator::{apply, RadialOperator};
pub use similarity::{check_voala, VoalaReport, FD_STEP};

use crate::error::{Error, Result};
use crate::expansion::{connection_matrix, default_m_tilde, expand, verify_sl, PoleMode};
use crate::specfun::{convention, psi_chi, GegenbauerConvention};
use crate::spectrum::{energy_exact, shifted_casimir_eigenvalue};

/// Distance kept from the poles `χ, θ ∈ {0, π}` when drawing sample points.
pub const SAMPLE_MARGIN: f64 = 0.2;

/// Uniform points `(χ, θ, φ)` in `[m, π-m]² × [0, 2π)`, reproducible from `seed`.
pub fn sample_points(seed: u64, count: usize) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let chi = rng.gen_range(SAMPLE_MARGIN..PI - SAMPLE_MARGIN);
            let theta = rng.gen_range(SAMPLE_MARGIN..PI - SAMPLE_MARGIN);
            let phi = rng.gen_range(0.0..2.0 * PI);
            (chi, theta, phi)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub kmax: u32,
    pub convention: Arc<dyn GegenbauerConvention>,
    /// Couplings used by the pointwise checks.
    pub b_values: Vec<f64>,
    pub seed: u64,
    pub points: usize,
    /// Absolute tolerance for pointwise residuals.
    pub tolerance: f64,
    /// Kmax for the pointwise checks, which are the slow ones.
    pub numeric_kmax: u32,
}

impl VerifyConfig {
    pub fn new(kmax: u32, convention_name: &str) -> Result<Self> {
        Ok(VerifyConfig {
            kmax,
            convention: convention(convention_name)?,
            b_values: vec![0.45, 1.0, 2.0],
            seed: 0,
            points: 50,
            tolerance: 1e-8,
            numeric_kmax: kmax.min(3),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub description: String,
    /// Hard checks decide the overall verdict; soft ones only warn.
    pub hard: bool,
    pub status: Status,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
}

impl CheckOutcome {
    fn new(check: &dyn IdentityCheck) -> Self {
        CheckOutcome {
            name: check.name().to_string(),
            description: check.description().to_string(),
            hard: check.hard(),
            status: Status::Pass,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            max_residual: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    fn residual(&mut self, value: f64) {
        self.max_residual = Some(self.max_residual.map_or(value, |m: f64| m.max(value)));
    }

    fn finish(mut self) -> Self {
        self.status = match (self.failures.is_empty(), self.hard) {
            (true, _) => Status::Pass,
            (false, true) => Status::Fail,
            (false, false) => Status::Warn,
        };
        self
    }
}

/// A named identity that can be run against a configuration.
pub trait IdentityCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn hard(&self) -> bool {
        true
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome>;
}

type LevelCheck = fn(u32, u32, &dyn GegenbauerConvention) -> Result<bool>;

/// Exact identity swept over every `(K, l)` with `l <= K <= kmax`.
struct LevelSweep {
    name: &'static str,
    description: &'static str,
    check: LevelCheck,
}

impl IdentityCheck for LevelSweep {
    fn name(&self) -> &'static str {
        self.name
    }
    fn description(&self) -> &'static str {
        self.description
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        for k in 0..=config.kmax {
            for l in 0..=k {
                let ok = (self.check)(k, l, config.convention.as_ref())?;
                out.record(ok, || format!("K={k}, l={l}"));
            }
        }
        Ok(out.finish())
    }
}

struct EnergyConsistency;

impl IdentityCheck for EnergyConsistency {
    fn name(&self) -> &'static str {
        "energy_consistency"
    }
    fn description(&self) -> &'static str {
        "(K+1)^2 - 1 - b^2/(K+1)^2 == K(K+2) - alpha_K^2/4 as polynomials in b"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        for k in 0..=config.kmax {
            out.record(energy_exact(k) == shifted_casimir_eigenvalue(k), || {
                format!("K={k}")
            });
        }
        Ok(out.finish())
    }
}

struct LadderAnnihilation;

impl IdentityCheck for LadderAnnihilation {
    fn name(&self) -> &'static str {
        "ladder_annihilation"
    }
    fn description(&self) -> &'static str {
        "D_K sin^K(chi) == 0"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        for k in 0..=config.kmax {
            out.record(ladder_annihilates(k), || format!("K={k}"));
        }
        Ok(out.finish())
    }
}

struct Recurrences;

impl IdentityCheck for Recurrences {
    fn name(&self) -> &'static str {
        "recurrences"
    }
    fn description(&self) -> &'static str {
        "D_K S_K^l == c csc^2(chi) S_K^(l+1), compared with the printed constants"
    }
    fn hard(&self) -> bool {
        false
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        for entry in check_recurrences(&recurrence_cases(config.kmax), config.convention.as_ref())?
        {
            let (k, l) = (entry.k, entry.l);
            match entry.status {
                RecurrenceStatus::Discrepancy => {
                    out.record(false, || format!("K={k}, l={l}: {}", entry.note))
                }
                RecurrenceStatus::Unlisted if entry.constant.is_none() => {
                    out.record(true, String::new);
                    out.notes.push(format!("K={k}, l={l}: not proportional"));
                }
                _ => out.record(true, String::new),
            }
        }
        Ok(out.finish())
    }
}

struct ConnectionIdentity;

impl IdentityCheck for ConnectionIdentity {
    fn name(&self) -> &'static str {
        "connection_matrix"
    }
    fn description(&self) -> &'static str {
        "X_K == exp(-alpha_K chi/2) A_K(theta, phi) Y_K at sampled points"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        let points = sample_points(config.seed, config.points);
        for k in 0..=config.numeric_kmax {
            for &b in &config.b_values {
                let rep = verify_sl(k, b, &points, config.convention.as_ref())?;
                out.residual(rep.max_residual);
                out.record(rep.max_residual <= config.tolerance, || {
                    format!("K={k}, b={b}: residual {:e}", rep.max_residual)
                });
            }
        }
        Ok(out.finish())
    }
}

struct SimilarityTransform;

impl IdentityCheck for SimilarityTransform {
    fn name(&self) -> &'static str {
        "similarity_transform"
    }
    fn description(&self) -> &'static str {
        "(K - 2b cot chi) X_K == exp(-alpha chi/2) A_K (K - alpha^2/4) exp(alpha chi/2) A_K^-1 X_K"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        let points = sample_points(config.seed, config.points);
        for k in 0..=config.numeric_kmax {
            for &b in &config.b_values {
                let rep = check_voala(k, b, &points, config.convention.as_ref())?;
                let worst = rep.max_residual.max(rep.max_eigen_residual);
                out.residual(worst);
                out.record(worst <= config.tolerance, || {
                    format!("K={k}, b={b}: residual {worst:e}")
                });
            }
        }
        Ok(out.finish())
    }
}

/// Number of `θ` samples in `(0.05, π - 0.05)` for the determinant scan.
pub const DETERMINANT_SAMPLES: usize = 200;

struct Determinant;

impl IdentityCheck for Determinant {
    fn name(&self) -> &'static str {
        "determinant"
    }
    fn description(&self) -> &'static str {
        "det A_K(theta) != 0 away from the poles"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        let (lo, hi) = (0.05, PI - 0.05);
        for k in 0..=config.kmax.max(config.numeric_kmax) {
            let m = connection_matrix(k, &default_m_tilde(k), config.convention.as_ref())?;
            for i in 0..DETERMINANT_SAMPLES {
                let theta = lo + (hi - lo) * i as f64 / (DETERMINANT_SAMPLES - 1) as f64;
                for &b in &config.b_values {
                    let det = m.determinant(theta, 0.7, b, PoleMode::Strict)?;
                    out.record(det.norm() > 0.0 && det.is_finite(), || {
                        format!("K={k}, theta={theta}, b={b}")
                    });
                }
            }
        }
        Ok(out.finish())
    }
}

struct Reconstruction;

impl IdentityCheck for Reconstruction {
    fn name(&self) -> &'static str {
        "expansion_reconstruction"
    }
    fn description(&self) -> &'static str {
        "sum_l C_l S_K^l == psi_K^l~ exactly"
    }
    fn run(&self, config: &VerifyConfig) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::new(self);
        let conv = config.convention.as_ref();
        for k in 0..=config.kmax {
            for lt in 0..=k {
                let ok = expand(k, lt, conv)?.reconstruct(conv)? == psi_chi(k, lt)?;
                out.record(ok, || format!("K={k}, l~={lt}"));
            }
        }
        Ok(out.finish())
    }
}

/// Name-keyed set of identity checks, run in registration order.
#[derive(Clone, Default)]
pub struct CheckRegistry {
    order: Vec<&'static str>,
    checks: BTreeMap<&'static str, Arc<dyn IdentityCheck>>,
}

impl std::fmt::Debug for CheckRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.order).finish()
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register(LevelSweep {
            name: "free_eigen",
            description: "Casimir(l) S_K^l == K(K+2) S_K^l",
            check: check_free_eigen,
        });
        reg.register(LevelSweep {
            name: "perturbed_eigen",
            description: "[Casimir(l~) - 2b cot chi] e^(-alpha chi/2) psi == (K(K+2) - alpha^2/4) e^(-alpha chi/2) psi",
            check: |k, l, _| check_perturbed_eigen(k, l),
        });
        reg.register(LevelSweep {
            name: "transfer_identity",
            description:
                "(l~(l~+1) csc^2 + alpha_K D_K) sum C_l S_K^l == sum l(l+1) csc^2 C_l S_K^l",
            check: check_transfer_identity,
        });
        reg.register(LevelSweep {
            name: "radial_reduction",
            description: "U = sin(chi) e^(-alpha chi/2) psi solves -U'' + V_RM U == (eps_K + 1) U",
            check: |k, l, _| check_radial_reduction(k, l),
        });
        reg.register(Reconstruction);
        reg.register(EnergyConsistency);
        reg.register(LadderAnnihilation);
        reg.register(Recurrences);
        reg.register(ConnectionIdentity);
        reg.register(SimilarityTransform);
        reg.register(Determinant);
        reg
    }

    /// Add or replace a check; replacing keeps the original position.
    pub fn register<C: IdentityCheck + 'static>(&mut self, check: C) {
        let name = check.name();
        if self.checks.insert(name, Arc::new(check)).is_none() {
            self.order.push(name);
        }
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn IdentityCheck>> {
        self.checks
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownCheck(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.order.clone()
    }

    /// Run every registered check.
    pub fn run_all(&self, config: &VerifyConfig) -> Result<VerifyReport> {
        self.run_selected(config, &self.order)
    }

    /// Run the named checks in the given order.
    pub fn run_selected<S: AsRef<str>>(
        &self,
        config: &VerifyConfig,
        names: &[S],
    ) -> Result<VerifyReport> {
        let checks = names
            .iter()
            .map(|n| self.get(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let outcomes = checks
            .iter()
            .map(|c| c.run(config))
            .collect::<Result<Vec<_>>>()?;
        let recurrences = if names.iter().any(|n| n.as_ref() == "recurrences") {
            check_recurrences(&recurrence_cases(config.kmax), config.convention.as_ref())?
        } else {
            Vec::new()
        };
        Ok(VerifyReport {
            kmax: config.kmax,
            convention: config.convention.label().to_string(),
            seed: config.seed,
            passed: outcomes.iter().all(|o| o.status != Status::Fail),
            checks: outcomes,
            recurrences,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub kmax: u32,
    pub convention: String,
    pub seed: u64,
    /// True iff no hard check failed.
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub recurrences: Vec<RecurrenceEntry>,
}

impl VerifyReport {
    pub fn warnings(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Warn)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}
