//! Seeded property suites over random morphisms.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cobordism::MorphismDiagram;
use crate::linalg::{fmt_q, Q};
use crate::oracle::dense_zeta;
use crate::random::{self, Limits};
use crate::reconstruct::{self, Options, Status};
use crate::tqft::{Tqft, TqftError};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Functoriality,
    Unitarity,
    Monoidality,
    Moves,
    Oracle,
    Reconstruct,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Functoriality,
        Suite::Unitarity,
        Suite::Monoidality,
        Suite::Moves,
        Suite::Oracle,
        Suite::Reconstruct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Functoriality => "functoriality",
            Suite::Unitarity => "unitarity",
            Suite::Monoidality => "monoidality",
            Suite::Moves => "moves",
            Suite::Oracle => "oracle",
            Suite::Reconstruct => "reconstruct",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::Functoriality | Suite::Unitarity | Suite::Moves => 100,
            Suite::Monoidality | Suite::Oracle => 50,
            Suite::Reconstruct => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: Option<usize>,
    pub delta: Q,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            count: None,
            delta: Q::from_integer(2.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub case: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub delta: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn json(m: &MorphismDiagram) -> String {
    serde_json::to_string(m).unwrap_or_default()
}

type CaseResult = Result<(), String>;

fn err(e: TqftError) -> String {
    e.to_string()
}

fn functoriality(z: &Tqft, rng: &mut random::Rng64) -> CaseResult {
    let (m1, m2) = random::composable_pair(rng, &Limits::default());
    let c = MorphismDiagram::compose(&m1, &m2).map_err(|e| e.to_string())?;
    let lhs = z.Z(&c).map_err(err)?;
    let rhs = z.Z(&m2).map_err(err)?.mul(&z.Z(&m1).map_err(err)?);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "Z(m2∘m1) ≠ Z(m2)Z(m1) for m1 = {}, m2 = {}",
            json(&m1),
            json(&m2)
        ))
    }
}

fn unitarity(z: &Tqft, rng: &mut random::Rng64) -> CaseResult {
    let m = random::morphism(rng, &Limits::default());
    let zm = z.Z(&m).map_err(err)?;
    let za = z.Z(&m.adjoint()).map_err(err)?;
    let gd = z.gram(m.domain()).inverse().ok_or("singular domain Gram")?;
    let gc = z.gram(m.codomain());
    if zm.transpose().sandwich(&gd, &gc) == za {
        Ok(())
    } else {
        Err(format!("Z(m̄) ≠ G⁻¹ Zᵀ G for m = {}", json(&m)))
    }
}

fn monoidality(z: &Tqft, rng: &mut random::Rng64) -> CaseResult {
    let lim = Limits {
        max_pieces: 2,
        max_boundary_dim: 50,
        ..Limits::default()
    };
    let m1 = random::morphism(rng, &lim);
    let m2 = random::morphism(rng, &lim);
    let u = MorphismDiagram::disjoint_union(&m1, &m2);
    let lhs = z.Z(&u).map_err(err)?;
    let rhs = z.tensor_product(&m1, &z.Z(&m1).map_err(err)?, &m2, &z.Z(&m2).map_err(err)?);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "Z(m1∐m2) ≠ Z(m1)⊗Z(m2) for m1 = {}, m2 = {}",
            json(&m1),
            json(&m2)
        ))
    }
}

fn moves(z: &Tqft, rng: &mut random::Rng64) -> CaseResult {
    let (m, curve) = loop {
        let m = random::morphism(rng, &Limits::default());
        if let Some(c) = random::split_curve(rng, &m) {
            break (m, c);
        }
    };
    let s = m.split(&curve).map_err(|e| e.to_string())?;
    if z.Z(&s).map_err(err)? != z.Z(&m).map_err(err)? {
        return Err(format!("split changes Z for m = {}", json(&m)));
    }
    let edge = s.glue_pairs().last().ok_or("split added no glue pair")?[0];
    let back = s.merge(edge).map_err(|e| e.to_string())?;
    if back.canonical() != m.canonical() {
        return Err(format!("merge∘split is not the identity for m = {}", json(&m)));
    }
    Ok(())
}

fn oracle(z: &Tqft, rng: &mut random::Rng64) -> CaseResult {
    let lim = Limits {
        max_glue: 3,
        ..Limits::default()
    };
    let m = random::morphism(rng, &lim);
    if dense_zeta(z, &m).map_err(err)? == z.zeta(&m).map_err(err)? {
        Ok(())
    } else {
        Err(format!("zeta differs from the dense contraction for m = {}", json(&m)))
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, TqftError> {
    let z = Tqft::with_delta(cfg.delta.clone())?;
    let cases = cfg.count.unwrap_or(suite.default_count());
    let mut report = SuiteReport {
        suite,
        seed: cfg.seed,
        delta: fmt_q(&cfg.delta),
        cases,
        failures: vec![],
        notes: vec![],
    };
    if suite == Suite::Reconstruct {
        for case in 0..cases {
            let opts = Options {
                seed: cfg.seed.wrapping_add(case as u64),
                ..Options::default()
            };
            let rep = reconstruct::rebuild_and_compare(&z, z.backend(), &opts);
            match reconstruct::recover_delta(&z) {
                Ok(d) if d == cfg.delta => {}
                Ok(d) => report.failures.push(Failure {
                    case,
                    detail: format!("recovered δ = {}", fmt_q(&d)),
                }),
                Err(e) => report.failures.push(Failure { case, detail: e }),
            }
            if case == 0 {
                report
                    .notes
                    .push(format!("δ recovered as {}", fmt_q(&rep.delta_recovered)));
            }
            for s in &rep.steps {
                if case == 0 {
                    report
                        .notes
                        .push(format!("({}) {:?} {}: {}", s.step, s.status, s.title, s.detail));
                }
                if s.status == Status::Fail || s.status == Status::Skipped {
                    report.failures.push(Failure {
                        case,
                        detail: format!("step ({}) {}: {}", s.step, s.title, s.detail),
                    });
                }
            }
        }
        return Ok(report);
    }
    let case_fn: fn(&Tqft, &mut random::Rng64) -> CaseResult = match suite {
        Suite::Functoriality => functoriality,
        Suite::Unitarity => unitarity,
        Suite::Monoidality => monoidality,
        Suite::Moves => moves,
        Suite::Oracle => oracle,
        Suite::Reconstruct => unreachable!("handled above"),
    };
    let mut rng = random::rng(cfg.seed);
    for case in 0..cases {
        if let Err(detail) = case_fn(&z, &mut rng) {
            report.failures.push(Failure { case, detail });
        }
    }
    Ok(report)
}
