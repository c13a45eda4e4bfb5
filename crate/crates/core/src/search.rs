//! Randomized greedy search for large abelian subspaces of `p₋₁` containing
//! the cone of a nilpotent orbit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptotic::{Ivi, NilpotentOrbit};
use crate::error::{Error, Result};
use crate::lie::{self, Centralizer};
use crate::matrix::{self, Mat};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_steps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 200,
            seed: 0,
            max_steps: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub dim: usize,
    pub basis: Vec<Mat>,
    /// Restart that produced the best subspace.
    pub restart: usize,
    /// Whether the best subspace equals its own centralizer in `p₋₁`.
    pub certified_maximal: bool,
    pub dims_per_restart: Vec<usize>,
}

impl SearchResult {
    pub fn ivi(&self, orbit: &NilpotentOrbit) -> Result<Ivi> {
        Ivi::new(orbit.clone(), &self.basis)
    }
}

struct Run {
    basis: Vec<Mat>,
    certified: bool,
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::gaussian(rng.gen_range(-2..=2), rng.gen_range(-1..=1))
}

fn run(cz: &Centralizer, start: &Subspace, dim_v: usize, rng: &mut ChaCha8Rng, max_steps: usize) -> Run {
    let mut current = start.clone();
    let mut mats = lie::unflatten_basis(dim_v, start);
    for _ in 0..=max_steps {
        let coeffs = cz.coefficient_space(&mats);
        let z = Subspace::span(dim_v * dim_v, coeffs.basis_vectors().iter().map(|c| cz.combine(c).flatten()));
        let fresh = current.complement_in(&z).expect("current space lies in its centralizer");
        if fresh.is_empty() {
            return Run {
                basis: mats,
                certified: true,
            };
        }
        if mats.len() == max_steps + start.dim() {
            break;
        }
        loop {
            let mut x = vec![Scalar::zero(); dim_v * dim_v];
            for v in &fresh {
                x = matrix::axpy(&x, &random_coefficient(rng), v);
            }
            if current.insert(&x) {
                mats.push(Mat::unflatten(dim_v, &x));
                break;
            }
        }
    }
    Run {
        basis: mats,
        certified: false,
    }
}

/// Greedy search: starting from the cone span, each restart repeatedly adds
/// a random combination of a complement of the current subspace inside its
/// centralizer in `p₋₁`, until the subspace is its own centralizer or
/// `max_steps` elements have been added. Restarts use independent streams of one seeded
/// generator, so results do not depend on scheduling.
pub fn greedy_max_abelian(orbit: &NilpotentOrbit, config: &SearchConfig) -> Result<SearchResult> {
    if config.restarts == 0 {
        return Err(Error::Infeasible("search needs at least one restart".into()));
    }
    let dim_v = orbit.dim_v();
    let p = orbit.p_minus_one()?;
    let start = orbit.cone_span();
    if !p.contains_subspace(&start) {
        return Err(Error::Verification("cone is not contained in p_-1".into()));
    }
    if !lie::is_abelian(orbit.cone.generators()) {
        return Err(Error::Verification("cone generators do not commute".into()));
    }
    let cz = Centralizer::new(p);
    let runs: Vec<Run> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            run(&cz, &start, dim_v, &mut rng, config.max_steps)
        })
        .collect();
    let dims: Vec<usize> = runs.iter().map(|r| r.basis.len()).collect();
    let best = (0..runs.len())
        .max_by(|&a, &b| dims[a].cmp(&dims[b]).then(b.cmp(&a)))
        .expect("at least one restart");
    let run = &runs[best];
    Ok(SearchResult {
        dim: dims[best],
        basis: run.basis.clone(),
        restart: best,
        certified_maximal: run.certified,
        dims_per_restart: dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::verify_ivi;
    use crate::constructions::{diagonal_cone_orbit, hodge_tate_orbit};

    #[test]
    fn hodge_tate_three_reaches_three() {
        let orbit = hodge_tate_orbit(2, 3).unwrap();
        let cfg = SearchConfig {
            restarts: 8,
            ..Default::default()
        };
        let res = greedy_max_abelian(&orbit, &cfg).unwrap();
        assert_eq!(res.dim, 3);
        assert!(res.certified_maximal);
        assert!(verify_ivi(&res.ivi(&orbit).unwrap()).unwrap().passed());
        let again = greedy_max_abelian(&orbit, &cfg).unwrap();
        assert_eq!(again.dims_per_restart, res.dims_per_restart);
        assert_eq!(again.basis, res.basis);
    }

    #[test]
    fn diagonal_cone_is_already_maximal() {
        let (orbit, _) = diagonal_cone_orbit(1).unwrap();
        let res = greedy_max_abelian(&orbit, &SearchConfig { restarts: 2, ..Default::default() }).unwrap();
        assert_eq!(res.dim, 2);
        assert!(res.certified_maximal);
    }

    #[test]
    fn zero_restarts_rejected() {
        let orbit = hodge_tate_orbit(1, 1).unwrap();
        let cfg = SearchConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(greedy_max_abelian(&orbit, &cfg).is_err());
    }
}
