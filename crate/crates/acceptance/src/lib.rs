//! Acceptance criteria for `tate-core`, each checked against an independent
//! oracle or an exact identity.

pub mod criteria;
pub mod gen;
pub mod oracles;

use std::fmt;
use std::time::{Duration, Instant};

use criteria::Check;

/// The result of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {} ({} checks, {:.2?})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.elapsed
        )?;
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

type Runner = fn(&mut Check);

pub const CRITERIA: [(u8, &str, Runner); 10] = [
    (1, "residue boundary", criteria::residue_boundary),
    (2, "symplectic polarization", criteria::symplectic_polarization),
    (3, "nil-Laurent group laws", criteria::group_laws),
    (4, "symplectic action", criteria::symplectic_action),
    (5, "divided powers and embedding", criteria::divided_powers),
    (6, "Heisenberg and Virasoro", criteria::heisenberg_virasoro),
    (7, "Kontsevich-Witten traces", criteria::kw_traces),
    (8, "Schur Q-functions", criteria::schur_q),
    (9, "twisted involution", criteria::givental),
    (10, "literals and window soundness", criteria::infrastructure),
];

pub fn run(id: u8) -> Option<Outcome> {
    let &(id, name, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let mut c = Check::default();
    f(&mut c);
    Some(Outcome {
        id,
        name,
        passed: c.passed(),
        checks: c.count,
        failures: c.failures,
        elapsed: start.elapsed(),
    })
}

/// Runs every criterion; independent criteria run in parallel, results come
/// back in order.
pub fn run_all() -> Vec<Outcome> {
    tate_core::par::map(&CRITERIA, |c| run(c.0).expect("listed"))
}
