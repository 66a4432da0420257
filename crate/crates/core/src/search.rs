//! Discovery of NHT coefficient solutions.
//!
//! Exhaustive mode walks `[0, m)^h` in lexicographic order, split across
//! workers by the first coefficient; random mode draws seeded uniform
//! candidates in fixed-size chunks, one ChaCha stream per chunk, so the
//! result depends only on `(seed, budget)` and never on the worker count.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conditions::{is_solution, CoeffVector};
use crate::error::{Error, Result};
use crate::residue::Modulus;

/// Default ceiling on `m^h` for exhaustive enumeration.
pub const DEFAULT_COST_GUARD: u64 = 1_000_000_000;

/// Largest modulus for which unit involutions are found by scanning.
pub const ORBIT_MODULUS_LIMIT: u64 = 1 << 26;

const RANDOM_CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { budget: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub cost_guard: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cost_guard: DEFAULT_COST_GUARD,
            workers: None,
        }
    }
}

impl SearchOptions {
    fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R> {
        match self.workers {
            None => Ok(job()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .map_err(|e| Error::Io(std::io::Error::other(e)))?;
                Ok(pool.install(job))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub h: usize,
    pub m: Modulus,
    pub mode: SearchMode,
    pub limit: Option<usize>,
    /// Emit only orbit representatives.
    pub canonical_only: bool,
    pub options: SearchOptions,
}

impl SearchSpec {
    pub fn exhaustive(h: usize, m: Modulus) -> Self {
        Self {
            h,
            m,
            mode: SearchMode::Exhaustive,
            limit: None,
            canonical_only: false,
            options: SearchOptions::default(),
        }
    }

    pub fn random(h: usize, m: Modulus, budget: u64, seed: u64) -> Self {
        Self {
            mode: SearchMode::Random { budget, seed },
            ..Self::exhaustive(h, m)
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.options.workers = Some(workers);
        self
    }

    pub fn with_cost_guard(mut self, guard: u64) -> Self {
        self.options.cost_guard = guard;
        self
    }

    pub fn canonical_only(mut self, yes: bool) -> Self {
        self.canonical_only = yes;
        self
    }
}

/// One passing coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub n: usize,
    pub m: Modulus,
    pub coeffs: CoeffVector,
    /// True when `coeffs` is its own orbit representative.
    pub canonical: bool,
}

impl fmt::Display for SolutionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.m)?;
        for c in self.coeffs.iter() {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// The group generated by rotation, reversal and scaling by units `t`
/// with `t^2 = 1 (mod m)`. Every element preserves all conditions.
#[derive(Clone, Debug)]
pub struct OrbitGroup {
    m: Modulus,
    involutions: Vec<u64>,
}

impl OrbitGroup {
    pub fn new(m: Modulus) -> Result<Self> {
        if m.get() > ORBIT_MODULUS_LIMIT {
            return Err(Error::ModulusTooLargeForOrbits(m.get()));
        }
        let involutions = (1..m.get()).filter(|&t| m.mul(t, t) == 1).collect();
        Ok(Self { m, involutions })
    }

    /// All `t` in `[1, m)` with `t^2 = 1`, ascending.
    pub fn involutions(&self) -> &[u64] {
        &self.involutions
    }

    /// Calls `visit` with every group image of `u` (with repeats).
    fn for_each_image(&self, u: &[u64], mut visit: impl FnMut(&[u64]) -> bool) {
        let h = u.len();
        let mut image = vec![0u64; h];
        for reversed in [false, true] {
            for r in 0..h {
                for &t in &self.involutions {
                    for (k, slot) in image.iter_mut().enumerate() {
                        let idx = if reversed {
                            (h - 1 + h - (k + r) % h) % h
                        } else {
                            (k + r) % h
                        };
                        *slot = self.m.mul(u[idx], t);
                    }
                    if !visit(&image) {
                        return;
                    }
                }
            }
        }
    }

    /// Lexicographically smallest element of the orbit of `u`.
    pub fn canonicalize(&self, u: &[u64]) -> Vec<u64> {
        let mut best = u.to_vec();
        self.for_each_image(u, |img| {
            if img < best.as_slice() {
                best.copy_from_slice(img);
            }
            true
        });
        best
    }

    pub fn is_canonical(&self, u: &[u64]) -> bool {
        let mut canonical = true;
        self.for_each_image(u, |img| {
            canonical = img >= u;
            canonical
        });
        canonical
    }

    /// Every distinct orbit element, sorted.
    pub fn orbit(&self, u: &[u64]) -> Vec<Vec<u64>> {
        let mut out = BTreeSet::new();
        self.for_each_image(u, |img| {
            out.insert(img.to_vec());
            true
        });
        out.into_iter().collect()
    }
}

pub fn canonicalize(u: &[u64], m: Modulus) -> Result<Vec<u64>> {
    m.check_reduced(u)?;
    Ok(OrbitGroup::new(m)?.canonicalize(u))
}

/// Solutions for `spec`, in strict lexicographic order of coefficients.
pub fn enumerate(spec: &SearchSpec) -> Result<Vec<SolutionRecord>> {
    if spec.h < 2 {
        return Err(Error::TooFewCoefficients(spec.h));
    }
    let tuples = match spec.mode {
        SearchMode::Exhaustive => exhaustive_tuples(spec.h, spec.m, &spec.options)?,
        SearchMode::Random { budget: 0, .. } => return Err(Error::ZeroBudget),
        SearchMode::Random { budget, seed } => {
            random_tuples(spec.h, spec.m, budget, seed, &spec.options)?
        }
    };
    into_records(spec, tuples)
}

/// Seeded random sampling. A zero budget yields an empty result.
pub fn random_search(spec: &SearchSpec) -> Result<Vec<SolutionRecord>> {
    match spec.mode {
        SearchMode::Random { budget: 0, .. } => Ok(Vec::new()),
        _ => enumerate(spec),
    }
}

fn into_records(spec: &SearchSpec, tuples: Vec<Vec<u64>>) -> Result<Vec<SolutionRecord>> {
    let group = match OrbitGroup::new(spec.m) {
        Ok(g) => Some(g),
        Err(e) if spec.canonical_only => return Err(e),
        Err(_) => None,
    };
    let n = 2 * spec.h;
    let mut out = Vec::new();
    for u in tuples {
        let canonical = group.as_ref().is_some_and(|g| g.is_canonical(&u));
        if spec.canonical_only && !canonical {
            continue;
        }
        out.push(SolutionRecord {
            n,
            m: spec.m,
            coeffs: CoeffVector::new(u).expect("solutions are never all zero"),
            canonical,
        });
        if spec.limit.is_some_and(|l| out.len() >= l) {
            break;
        }
    }
    Ok(out)
}

fn candidate_count(h: usize, m: Modulus) -> u128 {
    let mut count: u128 = 1;
    for _ in 0..h {
        count = count.saturating_mul(m.get() as u128);
    }
    count
}

fn exhaustive_tuples(h: usize, m: Modulus, options: &SearchOptions) -> Result<Vec<Vec<u64>>> {
    let candidates = candidate_count(h, m);
    if candidates > options.cost_guard as u128 {
        return Err(Error::CostGuardExceeded {
            candidates,
            guard: options.cost_guard,
        });
    }
    let modulus = m.get();
    options.run(|| {
        let per_lead: Vec<Vec<Vec<u64>>> = (0..modulus)
            .into_par_iter()
            .map(|lead| scan_with_lead(h, m, lead))
            .collect();
        per_lead.into_iter().flatten().collect()
    })
}

/// All solutions with `u[0] = lead`, lexicographic.
fn scan_with_lead(h: usize, m: Modulus, lead: u64) -> Vec<Vec<u64>> {
    let modulus = m.get();
    let mut u = vec![0u64; h];
    u[0] = lead;
    let mut found = Vec::new();
    loop {
        if is_solution(&u, m) {
            found.push(u.clone());
        }
        // odometer over positions 1..h
        let mut pos = h - 1;
        loop {
            u[pos] += 1;
            if u[pos] < modulus {
                break;
            }
            u[pos] = 0;
            if pos == 1 {
                return found;
            }
            pos -= 1;
        }
    }
}

fn random_tuples(
    h: usize,
    m: Modulus,
    budget: u64,
    seed: u64,
    options: &SearchOptions,
) -> Result<Vec<Vec<u64>>> {
    let chunks = budget.div_ceil(RANDOM_CHUNK);
    let modulus = m.get();
    options.run(|| {
        let hits: Vec<Vec<Vec<u64>>> = (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chunk);
                let trials = RANDOM_CHUNK.min(budget - chunk * RANDOM_CHUNK);
                let mut u = vec![0u64; h];
                let mut found = Vec::new();
                for _ in 0..trials {
                    for slot in u.iter_mut() {
                        *slot = rng.gen_range(0..modulus);
                    }
                    if is_solution(&u, m) {
                        found.push(u.clone());
                    }
                }
                found
            })
            .collect();
        let unique: BTreeSet<Vec<u64>> = hits.into_iter().flatten().collect();
        unique.into_iter().collect()
    })
}

/// Solution counts for one `(h, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    pub total_solutions: u64,
    pub equivalence_classes: u64,
}

pub fn census(h: usize, m: Modulus, options: &SearchOptions) -> Result<Census> {
    if h < 2 {
        return Err(Error::TooFewCoefficients(h));
    }
    let group = OrbitGroup::new(m)?;
    let tuples = exhaustive_tuples(h, m, options)?;
    let classes = tuples.iter().filter(|u| group.is_canonical(u)).count();
    Ok(Census {
        total_solutions: tuples.len() as u64,
        equivalence_classes: classes as u64,
    })
}
