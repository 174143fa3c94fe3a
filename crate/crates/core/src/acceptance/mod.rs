//! The acceptance suite: criteria registered by name behind one trait and
//! run with a fixed seed.

mod criteria;
pub mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

pub use criteria::{
    ChainTheorems, ExactSequence, FigureTwo, K0Theorem, PresentationSanity, SkkCollapse, SmithCorrectness,
    SurfaceCalculus,
};

pub trait Criterion: Send + Sync {
    fn id(&self) -> usize;

    fn name(&self) -> &'static str;

    fn budget(&self) -> Duration;

    /// A one-line summary on success, the first failure otherwise.
    fn run(&self, seed: u64) -> Result<String, String>;
}

pub fn criteria() -> Vec<Box<dyn Criterion>> {
    vec![
        Box::new(SmithCorrectness),
        Box::new(SurfaceCalculus),
        Box::new(FigureTwo),
        Box::new(K0Theorem),
        Box::new(ExactSequence),
        Box::new(ChainTheorems),
        Box::new(SkkCollapse),
        Box::new(PresentationSanity),
    ]
}

/// By name or by number.
pub fn criterion_by_name(name: &str) -> Option<Box<dyn Criterion>> {
    criteria().into_iter().find(|c| c.name() == name || c.id().to_string() == name)
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub outcome: Result<String, String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok() && self.within_budget()
    }

    /// The same line without timings, identical across runs with one seed.
    pub fn stable_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let detail = match (&self.outcome, self.within_budget()) {
            (Ok(d), true) => d.clone(),
            (Ok(_), false) => format!("over budget of {}s", self.budget.as_secs()),
            (Err(e), _) => e.clone(),
        };
        format!("criterion={} name={} status={status} detail={detail}", self.id, self.name)
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} elapsed={:.2}s budget={}s", self.stable_line(), self.elapsed.as_secs_f64(), self.budget.as_secs())
    }
}

pub fn run_criterion(c: &dyn Criterion, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = c.run(seed);
    CriterionResult { id: c.id(), name: c.name(), outcome, elapsed: start.elapsed(), budget: c.budget() }
}

pub fn run_acceptance_suite(seed: u64) -> Vec<CriterionResult> {
    criteria().iter().map(|c| run_criterion(c.as_ref(), seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_ordered_and_addressable() {
        let ids: Vec<usize> = criteria().iter().map(|c| c.id()).collect();
        assert_eq!(ids, (1..=8).collect::<Vec<_>>());
        assert_eq!(criterion_by_name("skk").unwrap().id(), 7);
        assert_eq!(criterion_by_name("3").unwrap().name(), "figure-two");
        assert!(criterion_by_name("nine").is_none());
    }

    #[test]
    fn stable_lines_hide_timings() {
        let r = run_criterion(&SkkCollapse, 0);
        assert!(r.passed(), "{r}");
        assert!(r.stable_line().starts_with("criterion=7 name=skk status=PASS"));
        assert!(!r.stable_line().contains("elapsed"));
    }
}
