//! Seeded random evaluation at small integer points, independent of the
//! symbolic layer.

use fano_core::{Map, Poly, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sampled values are drawn from `-RANGE..=RANGE`.
pub const RANGE: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    /// Up to three failing inputs: source coordinates then parameters.
    pub samples: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("trial count must be positive")]
    NoTrials,
    #[error("no valid sample found in {attempts} attempts")]
    DegenerateClaim { attempts: usize },
    #[error("malformed claim: {0}")]
    InvalidClaim(String),
}

/// Outcome of one sampled point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    Holds,
    Fails,
    /// Point rejected, e.g. in a base locus or on an excluded parameter value.
    Degenerate,
}

/// Runs `test` on `trials` valid samples of `dims` integers. Gives up after
/// `100 * trials` attempts.
pub fn sample_oracle<F>(dims: usize, trials: usize, seed: u64, mut test: F) -> Result<OracleResult, OracleError>
where
    F: FnMut(&[Rat]) -> Sample,
{
    if trials == 0 {
        return Err(OracleError::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = 100 * trials;
    let (mut done, mut failures, mut samples) = (0, 0, Vec::new());
    for _ in 0..attempts {
        if done == trials {
            break;
        }
        let point: Vec<Rat> = (0..dims)
            .map(|_| Rat::from_integer(rng.gen_range(-RANGE..=RANGE).into()))
            .collect();
        match test(&point) {
            Sample::Degenerate => continue,
            Sample::Holds => done += 1,
            Sample::Fails => {
                done += 1;
                failures += 1;
                if samples.len() < 3 {
                    samples.push(point);
                }
            }
        }
    }
    if done < trials {
        return Err(OracleError::DegenerateClaim { attempts });
    }
    Ok(OracleResult {
        trials,
        seed,
        failures,
        samples,
    })
}

/// `lhs[n-1] ∘ ... ∘ lhs[0] ∝ rhs[m-1] ∘ ... ∘ rhs[0]` as maps from a common
/// source, for all values of `params` off the zero set of `avoid`.
#[derive(Clone, Debug)]
pub struct MapClaim {
    pub lhs: Vec<Map>,
    pub rhs: Vec<Map>,
    pub params: Vec<usize>,
    pub avoid: Vec<Poly>,
}

impl MapClaim {
    pub fn new(lhs: Vec<Map>, rhs: Vec<Map>, params: Vec<usize>) -> Self {
        MapClaim {
            lhs,
            rhs,
            params,
            avoid: Vec::new(),
        }
    }

    pub fn avoiding(mut self, p: Poly) -> Self {
        self.avoid.push(p);
        self
    }

    fn source_len(&self) -> Result<usize, OracleError> {
        let (Some(l), Some(r)) = (self.lhs.first(), self.rhs.first()) else {
            return Err(OracleError::InvalidClaim("empty chain".into()));
        };
        if l.source().len() != r.source().len() {
            return Err(OracleError::InvalidClaim("sources differ".into()));
        }
        for chain in [&self.lhs, &self.rhs] {
            for w in chain.windows(2) {
                if w[0].target().len() != w[1].source().len() {
                    return Err(OracleError::InvalidClaim("chain does not compose".into()));
                }
            }
        }
        if self.lhs.last().map(|m| m.target().len()) != self.rhs.last().map(|m| m.target().len()) {
            return Err(OracleError::InvalidClaim("targets differ".into()));
        }
        Ok(l.source().len())
    }
}

fn run_chain(chain: &[Map], point: &[Rat], params: &[(usize, Rat)]) -> Option<Vec<Rat>> {
    let mut v = point.to_vec();
    for m in chain {
        v = m.eval_at(&v, params).ok()?;
        if v.iter().all(Zero::is_zero) {
            return None;
        }
    }
    Some(v)
}

/// Proportionality of two nonzero numeric vectors.
pub fn proportional(v: &[Rat], w: &[Rat]) -> bool {
    let Some(k) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    v.len() == w.len() && (0..v.len()).all(|j| &v[k] * &w[j] == &v[j] * &w[k]) && !w[k].is_zero()
}

pub fn numeric_oracle(claim: &MapClaim, trials: usize, seed: u64) -> Result<OracleResult, OracleError> {
    let n = claim.source_len()?;
    let table = claim.lhs[0].table().clone();
    sample_oracle(n + claim.params.len(), trials, seed, |ints| {
        let (point, values) = ints.split_at(n);
        let params: Vec<(usize, Rat)> = claim.params.iter().copied().zip(values.iter().cloned()).collect();
        if !claim.avoid.is_empty() {
            let mut full = vec![Rat::zero(); table.len()];
            for (v, c) in &params {
                full[*v] = c.clone();
            }
            if claim.avoid.iter().any(|p| p.eval(&full).is_zero()) {
                return Sample::Degenerate;
            }
        }
        match (
            run_chain(&claim.lhs, point, &params),
            run_chain(&claim.rhs, point, &params),
        ) {
            (Some(l), Some(r)) if proportional(&l, &r) => Sample::Holds,
            (Some(_), Some(_)) => Sample::Fails,
            _ => Sample::Degenerate,
        }
    })
}

/// Numeric analogue of the rigid case: whether `Rᵀ S R ∝ S` for integer
/// matrices, by direct matrix products.
pub fn congruent_up_to_scale(r: &[Vec<Rat>], s: &[Vec<Rat>]) -> bool {
    let n = s.len();
    let mut rs = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                rs[i][j] += &r[k][i] * &s[k][j];
            }
        }
    }
    let mut out = vec![Rat::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i * n + j] += &rs[i][k] * &r[k][j];
            }
        }
    }
    let flat: Vec<Rat> = s.iter().flatten().cloned().collect();
    out.iter().any(|c| !c.is_zero()) && proportional(&flat, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::registry;
    use crate::session::session;

    #[test]
    fn identity_against_itself() {
        let s = session();
        let id = Map::identity(&s.table, &s.x);
        let claim = MapClaim::new(vec![id.clone()], vec![id], vec![]);
        let r = numeric_oracle(&claim, 100, 0).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.trials, 100);
    }

    #[test]
    fn printed_phi_fails_and_adjugate_passes() {
        let s = session();
        let r = registry();
        let id = Map::identity(&s.table, &s.x);
        let printed = MapClaim::new(
            vec![r.map("phi").clone(), r.map("phi").clone()],
            vec![id.clone()],
            vec![],
        );
        let res = numeric_oracle(&printed, 100, 0).unwrap();
        assert!(res.failures >= 1);
        assert!(!res.samples.is_empty());
        let adj = MapClaim::new(
            vec![r.map("phi_adj").clone(), r.map("phi_adj").clone()],
            vec![id],
            vec![],
        );
        assert_eq!(numeric_oracle(&adj, 100, 0).unwrap().failures, 0);
    }

    #[test]
    fn deterministic_under_seed() {
        let s = session();
        let r = registry();
        let id = Map::identity(&s.table, &s.x);
        let claim = MapClaim::new(vec![r.map("phi").clone(), r.map("phi").clone()], vec![id], vec![]);
        assert_eq!(
            numeric_oracle(&claim, 50, 7).unwrap(),
            numeric_oracle(&claim, 50, 7).unwrap()
        );
    }

    #[test]
    fn errors() {
        let s = session();
        let id = Map::identity(&s.table, &s.x);
        let claim = MapClaim::new(vec![id.clone()], vec![id.clone()], vec![]);
        assert_eq!(numeric_oracle(&claim, 0, 0), Err(OracleError::NoTrials));
        let never = claim.avoiding(Poly::zero(&s.table));
        assert!(matches!(
            numeric_oracle(&never, 5, 0),
            Err(OracleError::DegenerateClaim { .. })
        ));
        let p4 = Map::identity(&s.table, &s.p4);
        assert!(matches!(
            numeric_oracle(&MapClaim::new(vec![id], vec![p4], vec![]), 5, 0),
            Err(OracleError::InvalidClaim(_))
        ));
    }

    #[test]
    fn proportional_vectors() {
        let v: Vec<Rat> = [1, 2, 0].iter().map(|&n| Rat::from_integer(n.into())).collect();
        let w: Vec<Rat> = [-3, -6, 0].iter().map(|&n| Rat::from_integer(n.into())).collect();
        assert!(proportional(&v, &w));
        assert!(!proportional(&v, &v[..2]));
        let z = vec![Rat::zero(); 3];
        assert!(!proportional(&v, &z));
        assert!(!proportional(&z, &v));
    }
}
