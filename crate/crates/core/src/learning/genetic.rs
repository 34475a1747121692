// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LearningError, Task};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneticConfig {
    pub population: usize,
    pub rounds: usize,
    /// Per-bit flip probability for mutated elite copies.
    pub mutation_rate: f64,
    pub elite_fraction: f64,
    /// Share of the population replaced by fresh random masks each round.
    pub random_fraction: f64,
    /// Rounds of the feature-minimization pass in `ext` mode.
    pub ext_rounds: usize,
    pub seed: u64,
}

impl Default for GeneticConfig {
    fn default() -> Self {
        GeneticConfig {
            population: 20,
            rounds: 50,
            mutation_rate: 0.05,
            elite_fraction: 0.25,
            random_fraction: 0.25,
            ext_rounds: 500,
            seed: 0,
        }
    }
}

impl GeneticConfig {
    /// Settings of the extended run: 500 search rounds plus minimization.
    pub fn ext(seed: u64) -> Self {
        GeneticConfig {
            rounds: 500,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), LearningError> {
        let bad = |m: &str| Err(LearningError::InvalidConfig(m.to_string()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if self.rounds < 1 {
            return bad("rounds must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("mutation rate must lie in [0, 1]");
        }
        if !(self.elite_fraction > 0.0 && self.elite_fraction <= 1.0) {
            return bad("elite fraction must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.random_fraction)
            || self.elite_fraction + self.random_fraction > 1.0
        {
            return bad("elite and random fractions must leave room in the population");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub mask: Vec<bool>,
    pub fitness: f64,
    /// Best fitness after each round (initial population first).
    pub trajectory: Vec<f64>,
    pub evaluations: usize,
}

/// Fitness cache keyed by mask.
struct Fitness<'t, T: Scalar> {
    task: &'t Task<'t, T>,
    cache: Mutex<HashMap<Vec<bool>, f64>>,
}

impl<'t, T: Scalar> Fitness<'t, T> {
    fn new(task: &'t Task<'t, T>) -> Self {
        Fitness {
            task,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, mask: &[bool]) -> f64 {
        if let Some(&f) = self.cache.lock().unwrap().get(mask) {
            return f;
        }
        let f = self.task.fitness(mask);
        self.cache.lock().unwrap().insert(mask.to_vec(), f);
        f
    }

    fn all(&self, pop: &[Vec<bool>]) -> Vec<f64> {
        pop.par_iter().map(|m| self.get(m)).collect()
    }

    fn evaluations(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

fn random_mask(rng: &mut ChaCha8Rng, d: usize) -> Vec<bool> {
    let mut m: Vec<bool> = (0..d).map(|_| rng.gen_bool(0.5)).collect();
    ensure_nonempty(&mut m, rng);
    m
}

fn ensure_nonempty(m: &mut [bool], rng: &mut ChaCha8Rng) {
    if !m.iter().any(|&b| b) {
        let i = rng.gen_range(0..m.len());
        m[i] = true;
    }
}

fn mutate(parent: &[bool], rate: f64, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut child: Vec<bool> = parent
        .iter()
        .map(|&b| if rng.gen_bool(rate) { !b } else { b })
        .collect();
    if child == parent {
        let i = rng.gen_range(0..child.len());
        child[i] = !child[i];
    }
    ensure_nonempty(&mut child, rng);
    child
}

/// Higher fitness first, then fewer features, then mask order.
fn ranking(a: &(f64, &Vec<bool>), b: &(f64, &Vec<bool>)) -> std::cmp::Ordering {
    b.0.partial_cmp(&a.0)
        .unwrap()
        .then_with(|| count(a.1).cmp(&count(b.1)))
        .then_with(|| b.1.cmp(a.1))
}

fn count(m: &[bool]) -> usize {
    m.iter().filter(|&&b| b).count()
}

/// Evolves feature masks; the all-ones mask is part of the first population.
pub fn genetic_search<T: Scalar>(
    task: &Task<'_, T>,
    cfg: &GeneticConfig,
) -> Result<SearchOutcome, LearningError> {
    cfg.validate()?;
    let d = task.n_features();
    if d == 0 {
        return Err(LearningError::Shape("no feature columns".into()));
    }
    let fit = Fitness::new(task);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let p = cfg.population;
    let n_elite = ((p as f64 * cfg.elite_fraction).ceil() as usize).clamp(1, p);
    let n_random = ((p as f64 * cfg.random_fraction).floor() as usize).min(p - n_elite);

    let mut pop: Vec<Vec<bool>> = vec![vec![true; d]];
    while pop.len() < p {
        pop.push(random_mask(&mut rng, d));
    }
    let mut best: (f64, Vec<bool>) = (f64::NEG_INFINITY, Vec::new());
    let mut trajectory = Vec::with_capacity(cfg.rounds + 1);
    for round in 0..=cfg.rounds {
        let scores = fit.all(&pop);
        let mut ranked: Vec<(f64, &Vec<bool>)> = scores.iter().copied().zip(pop.iter()).collect();
        ranked.sort_by(ranking);
        if ranking(&ranked[0], &(best.0, &best.1)).is_lt() {
            best = (ranked[0].0, ranked[0].1.clone());
        }
        trajectory.push(best.0);
        if round == cfg.rounds {
            break;
        }
        let elite: Vec<Vec<bool>> = ranked[..n_elite]
            .iter()
            .map(|(_, m)| (*m).clone())
            .collect();
        let mut next = elite.clone();
        let mut e = 0;
        while next.len() < p - n_random {
            next.push(mutate(&elite[e % elite.len()], cfg.mutation_rate, &mut rng));
            e += 1;
        }
        while next.len() < p {
            next.push(random_mask(&mut rng, d));
        }
        pop = next;
    }
    Ok(SearchOutcome {
        mask: best.1,
        fitness: best.0,
        trajectory,
        evaluations: fit.evaluations(),
    })
}

/// Greedily clears bits of `start`, keeping a clear whenever fitness does
/// not drop. Each round tries one random set bit not yet rejected since the
/// last accepted clear.
pub fn minimize_features<T: Scalar>(
    task: &Task<'_, T>,
    start: &SearchOutcome,
    rounds: usize,
    seed: u64,
) -> SearchOutcome {
    let fit = Fitness::new(task);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d69_6e69);
    let mut mask = start.mask.clone();
    let mut fitness = start.fitness;
    let mut trajectory = start.trajectory.clone();
    let mut rejected = vec![false; mask.len()];
    for _ in 0..rounds {
        let candidates: Vec<usize> = (0..mask.len())
            .filter(|&i| mask[i] && !rejected[i])
            .collect();
        if candidates.is_empty() || count(&mask) <= 1 {
            break;
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        let mut trial = mask.clone();
        trial[i] = false;
        let f = fit.get(&trial);
        if f >= fitness {
            mask = trial;
            fitness = f;
            rejected.iter_mut().for_each(|r| *r = false);
        } else {
            rejected[i] = true;
        }
        trajectory.push(fitness);
    }
    SearchOutcome {
        mask,
        fitness,
        trajectory,
        evaluations: start.evaluations + fit.evaluations(),
    }
}
