//! The check catalog and its runner.

mod automorphisms;
mod birational;
mod parametrized;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use fano_core::pgl::sym_power_rep;
use fano_core::projgeom::{proportionality_witness, pull_polynomial, CrossWitness};
use fano_core::{Group2, Map, Matrix, Poly, Rat, Surface};

use crate::oracle::{numeric_oracle, MapClaim, OracleResult};
use crate::registry::{registry, Registry};
use crate::report::{CheckResult, Report, Status, Witness};
use crate::session::{session, Session};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("`{0}` is not a parameter")]
    UnknownParameter(String),
    #[error("check `{check}` has no free parameter `{name}`")]
    UndeclaredParameter { check: String, name: String },
    #[error("check `{check}` requires `{name}` to stay symbolic")]
    BindingForbidden { check: String, name: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: usize,
    pub bindings: BTreeMap<String, Rat>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            trials: 100,
            bindings: BTreeMap::new(),
        }
    }
}

/// A named, independently runnable check.
pub struct CheckSpec {
    pub id: &'static str,
    pub locus: &'static str,
    /// Parameters that may be fixed to a rational value.
    pub bindable: &'static [&'static str],
    /// Parameters that must stay symbolic.
    pub symbolic: &'static [&'static str],
    run: fn(&Ctx) -> Checked,
}

impl std::fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckSpec")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

/// Outcome of a check body before timing and bookkeeping.
pub(crate) struct Outcome {
    status: Status,
    witness: Option<Witness>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            witness: None,
        }
    }

    fn pass_with(w: Witness) -> Self {
        Outcome {
            status: Status::Pass,
            witness: Some(w),
        }
    }

    fn fail(w: Witness) -> Self {
        Outcome {
            status: Status::Fail,
            witness: Some(w),
        }
    }

    fn discrepancy(w: Witness) -> Self {
        Outcome {
            status: Status::Discrepancy,
            witness: Some(w),
        }
    }
}

/// Any computational error inside a check; reported as a failure.
pub(crate) struct CheckError(String);

impl<E: Display> From<E> for CheckError {
    fn from(e: E) -> Self {
        CheckError(e.to_string())
    }
}

pub(crate) type Checked = Result<Outcome, CheckError>;

/// Everything a check body may use.
pub(crate) struct Ctx {
    reg: &'static Registry,
    s: &'static Session,
    values: Vec<(usize, Rat)>,
    seed: u64,
    trials: usize,
}

impl Ctx {
    fn poly(&self, p: &Poly) -> Poly {
        if self.values.is_empty() {
            p.clone()
        } else {
            p.substitute_values(&self.values)
        }
    }

    fn map(&self, id: &str) -> Result<Map, CheckError> {
        Ok(self.reg.map(id).substitute_values(&self.values)?)
    }

    fn surface(&self, id: &str) -> Result<Surface, CheckError> {
        let h = self.reg.surface(id);
        Ok(Surface::new(h.coords(), self.poly(h.equation()))?)
    }

    fn matrix(&self, id: &str) -> Result<Matrix, CheckError> {
        Ok(self.reg.matrix(id).substitute_values(&self.values)?)
    }

    /// The parameters from `candidates` that are not bound.
    fn free(&self, candidates: &[usize]) -> Vec<usize> {
        candidates
            .iter()
            .copied()
            .filter(|p| self.values.iter().all(|(v, _)| v != p))
            .collect()
    }

    fn oracle(&self, claim: &MapClaim) -> Result<OracleResult, CheckError> {
        Ok(numeric_oracle(claim, self.trials, self.seed)?)
    }
}

/// Longest polynomial printed in full inside a witness.
const WITNESS_TERMS: usize = 12;

fn pair(w: CrossWitness<Rat>) -> Witness {
    let n = w.cross.num_terms();
    let cross = if n <= WITNESS_TERMS {
        w.cross.to_string()
    } else {
        let degree = w.cross.total_degree().unwrap_or(0);
        let (m, c) = w.cross.leading_term().expect("nonzero");
        let lead = Poly::monomial(w.cross.table(), m.clone(), c.clone());
        format!("{lead} + ... ({n} terms, degree {degree})")
    };
    Witness::Pair { i: w.i, j: w.j, cross }
}

/// `None` when the tuples are proportional.
fn tuple_witness(v: &[Poly], w: &[Poly]) -> Result<Option<Witness>, CheckError> {
    Ok(proportionality_witness(v, w)?.map(pair))
}

/// `None` when `g` maps `q` to itself; the pullback is compared with `q`.
fn stabilizer_witness(g: &Group2, q: &Surface) -> Result<Option<Witness>, CheckError> {
    let map = sym_power_rep(g, 4)?.as_map(q.coords())?;
    let pulled = Surface::new(q.coords(), pull_polynomial(q.equation(), &map)?)?;
    Ok(pulled.difference_witness(q)?.map(pair))
}

fn note(s: impl Into<String>) -> Witness {
    Witness::Note(s.into())
}

/// All checks, sorted by id.
pub fn catalog() -> &'static [CheckSpec] {
    static CATALOG: std::sync::OnceLock<Vec<CheckSpec>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut all: Vec<CheckSpec> = automorphisms::specs()
            .into_iter()
            .chain(birational::specs())
            .chain(parametrized::specs())
            .collect();
        all.sort_by_key(|c| c.id);
        all
    })
}

fn find(id: &str) -> Result<&'static CheckSpec, SuiteError> {
    catalog()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| SuiteError::UnknownCheck(id.to_string()))
}

fn validate(spec: &CheckSpec, bindings: &BTreeMap<String, Rat>) -> Result<(), SuiteError> {
    let s = session();
    for name in bindings.keys() {
        if !s.parameter_names().any(|p| p == name) {
            return Err(SuiteError::UnknownParameter(name.clone()));
        }
        if spec.symbolic.contains(&name.as_str()) {
            return Err(SuiteError::BindingForbidden {
                check: spec.id.to_string(),
                name: name.clone(),
            });
        }
        if !spec.bindable.contains(&name.as_str()) {
            return Err(SuiteError::UndeclaredParameter {
                check: spec.id.to_string(),
                name: name.clone(),
            });
        }
    }
    Ok(())
}

fn execute(spec: &CheckSpec, bindings: BTreeMap<String, Rat>, opts: &RunOptions) -> CheckResult {
    let s = session();
    let values = bindings
        .iter()
        .map(|(n, v)| (s.table.index(n).expect("validated"), v.clone()))
        .collect();
    let ctx = Ctx {
        reg: registry(),
        s,
        values,
        seed: opts.seed,
        trials: opts.trials,
    };
    let start = Instant::now();
    let outcome = (spec.run)(&ctx).unwrap_or_else(|CheckError(e)| Outcome::fail(note(format!("error: {e}"))));
    CheckResult {
        check_id: spec.id.to_string(),
        status: outcome.status,
        witness: outcome.witness,
        bindings,
        duration: start.elapsed(),
    }
}

/// Runs one check. Every binding must name a parameter the check declares
/// as bindable.
pub fn run_check(id: &str, opts: &RunOptions) -> Result<CheckResult, SuiteError> {
    let spec = find(id)?;
    validate(spec, &opts.bindings)?;
    Ok(execute(spec, opts.bindings.clone(), opts))
}

/// Runs every check whose id starts with `filter`, in id order. Each check
/// receives only the bindings it declares as bindable.
pub fn run_all(filter: Option<&str>, opts: &RunOptions) -> Report {
    let results = catalog()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .map(|c| {
            let used = opts
                .bindings
                .iter()
                .filter(|(n, _)| c.bindable.contains(&n.as_str()))
                .map(|(n, v)| (n.clone(), v.clone()))
                .collect();
            execute(c, used, opts)
        })
        .collect();
    Report { results }
}

/// Checks among those selected by `filter` that forbid binding `name`.
pub fn forbidding(filter: Option<&str>, name: &str) -> Vec<&'static str> {
    catalog()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .filter(|c| c.symbolic.contains(&name))
        .map(|c| c.id)
        .collect()
}
