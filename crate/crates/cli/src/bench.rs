//! Benchmark runner: every solver over a seeded suite, with verdict
//! cross-checking. Solvers are injected so the agreement gate is testable
//! against a deliberately broken one.

use std::time::{Duration, Instant};

use pic_core::pic::{PicInstance, Selection};

pub type SolverFn = Box<dyn Fn(&PicInstance) -> Option<Selection>>;

pub struct SolverSpec {
    pub name: &'static str,
    pub run: SolverFn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverStats {
    pub name: &'static str,
    pub instances: usize,
    pub positive: usize,
    pub negative: usize,
    pub total: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchFailure {
    Disagreement {
        seed: u64,
        verdicts: Vec<(&'static str, bool)>,
    },
    InvalidWitness {
        seed: u64,
        solver: &'static str,
    },
}

impl std::fmt::Display for BenchFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchFailure::Disagreement { seed, verdicts } => {
                write!(f, "solvers disagree on seed {seed}:")?;
                for (name, positive) in verdicts {
                    write!(
                        f,
                        " {name}={}",
                        if *positive { "positive" } else { "negative" }
                    )?;
                }
                Ok(())
            }
            BenchFailure::InvalidWitness { seed, solver } => {
                write!(
                    f,
                    "solver {solver} returned a non-covering witness on seed {seed}"
                )
            }
        }
    }
}

/// Runs every solver over the suite, timing each and aborting on the first
/// verdict disagreement or unverifiable witness.
pub fn run_suite(
    suite: &[(u64, PicInstance)],
    solvers: &[SolverSpec],
) -> Result<Vec<SolverStats>, BenchFailure> {
    let mut stats: Vec<SolverStats> = solvers
        .iter()
        .map(|s| SolverStats {
            name: s.name,
            instances: suite.len(),
            positive: 0,
            negative: 0,
            total: Duration::ZERO,
        })
        .collect();

    for (seed, instance) in suite {
        let mut verdicts = Vec::with_capacity(solvers.len());
        for (solver, stat) in solvers.iter().zip(&mut stats) {
            let start = Instant::now();
            let witness = (solver.run)(instance);
            stat.total += start.elapsed();
            if let Some(witness) = &witness {
                if instance.verify_cover(witness) != Ok(true) {
                    return Err(BenchFailure::InvalidWitness {
                        seed: *seed,
                        solver: solver.name,
                    });
                }
            }
            let positive = witness.is_some();
            if positive {
                stat.positive += 1;
            } else {
                stat.negative += 1;
            }
            verdicts.push((solver.name, positive));
        }
        if verdicts.iter().any(|(_, v)| *v != verdicts[0].1) {
            return Err(BenchFailure::Disagreement {
                seed: *seed,
                verdicts,
            });
        }
    }
    Ok(stats)
}

/// Tab-separated report, one row per solver.
pub fn format_table(stats: &[SolverStats]) -> String {
    let mut out = String::from("solver\tinstances\tpositive\tnegative\ttotal_ms\n");
    for stat in stats {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            stat.name,
            stat.instances,
            stat.positive,
            stat.negative,
            stat.total.as_millis()
        ));
    }
    out
}
