//! Parallel applicability, exact parallel complexity, and census tooling.
//!
//! A set of rules applies in parallel iff the domains are pairwise disjoint
//! and every ordering of the rules is an applicable strategy; the results
//! then agree automatically by path invariance. The parallel complexity of
//! a graph is the least number of such simultaneous steps reducing it to
//! the empty graph.
//!
//! The complexity search runs breadth-first over reachable reduced graphs,
//! memoized on the bare adjacency bit-pattern (labels only matter at the
//! boundary), firing every inclusion-maximal parallel step from each state.
//! Parallel applicability itself is decided by full permutation checking,
//! collapsed over shared prefixes: a rule set passes iff for every subset,
//! each leftover rule applies to the subset's reduction. No pairwise
//! commutation shortcut is assumed.
//!
//! Everything here is exponential-state desk tooling; vertex counts are
//! capped.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::Graph;
use crate::reduction::{apply_rule, reduce_matrix, Rule};

/// Default vertex cap for the parallel-complexity search and census.
pub const DEFAULT_PARALLEL_CAP: usize = 10;

/// A set of rules whose every ordering is an applicable strategy on the
/// graph it was validated against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelStep {
    rules: Vec<Rule>,
}

impl ParallelStep {
    /// Validate `rules` as a parallel step on `g`.
    pub fn new(g: &Graph, rules: Vec<Rule>) -> Option<ParallelStep> {
        applies_in_parallel(g, &rules).then_some(ParallelStep { rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

/// True iff the rule domains are pairwise disjoint and every permutation of
/// the rules is an applicable strategy on `g`. A singleton set degenerates
/// to plain applicability, the empty set is vacuously parallel.
///
/// Cost is exponential in the number of rules (all permutations are
/// covered, memoized over shared prefix sets).
pub fn applies_in_parallel(g: &Graph, rules: &[Rule]) -> bool {
    let k = rules.len();
    let mut seen = std::collections::BTreeSet::new();
    for rule in rules {
        for v in rule.domain() {
            match g.index_of(&v) {
                Some(i) => {
                    if !seen.insert(i) {
                        return false;
                    }
                }
                None => return false,
            }
        }
    }
    // after[mask] is Some(graph) iff every ordering of the rules in `mask`
    // is applicable; the graph is their common result.
    let mut after: Vec<Option<Graph>> = vec![None; 1 << k];
    after[0] = Some(g.clone());
    for mask in 1usize..1 << k {
        let mut result = None;
        let mut all_ok = true;
        for r in 0..k {
            if mask >> r & 1 == 0 {
                continue;
            }
            match &after[mask ^ (1 << r)] {
                Some(prev) => match apply_rule(prev, &rules[r]) {
                    Ok(next) => result = Some(next),
                    Err(_) => {
                        all_ok = false;
                        break;
                    }
                },
                None => {
                    all_ok = false;
                    break;
                }
            }
        }
        if all_ok {
            after[mask] = result;
        }
    }
    after[(1 << k) - 1].is_some()
}

/// A rule over matrix indices, for the label-free interior of the search.
#[derive(Debug, Clone, Copy)]
enum IdxRule {
    Gpr(usize),
    Gdr(usize, usize),
    Gnr(usize),
}

impl IdxRule {
    fn domain_mask(self) -> u64 {
        match self {
            IdxRule::Gpr(v) | IdxRule::Gnr(v) => 1 << v,
            IdxRule::Gdr(u, v) => (1 << u) | (1 << v),
        }
    }

    /// Applicability in `mat` after the original indices in `removed` have
    /// been deleted (positions shift down past removed indices).
    fn applies_after(self, mat: &BitMatrix, removed: u64) -> bool {
        let pos = |i: usize| i - (removed & ((1u64 << i) - 1)).count_ones() as usize;
        match self {
            IdxRule::Gpr(v) => mat.get(pos(v), pos(v)),
            IdxRule::Gdr(u, v) => {
                let (pu, pv) = (pos(u), pos(v));
                !mat.get(pu, pu) && !mat.get(pv, pv) && mat.get(pu, pv)
            }
            IdxRule::Gnr(v) => {
                let p = pos(v);
                (0..mat.n_rows()).all(|j| !mat.get(p, j))
            }
        }
    }
}

fn idx_rules(mat: &BitMatrix) -> Vec<IdxRule> {
    let n = mat.n_rows();
    let mut rules = Vec::new();
    for i in 0..n {
        if mat.get(i, i) {
            rules.push(IdxRule::Gpr(i));
        }
    }
    for i in 0..n {
        if mat.get(i, i) {
            continue;
        }
        for j in i + 1..n {
            if !mat.get(j, j) && mat.get(i, j) {
                rules.push(IdxRule::Gdr(i, j));
            }
        }
    }
    for i in 0..n {
        if (0..n).all(|j| !mat.get(i, j)) {
            rules.push(IdxRule::Gnr(i));
        }
    }
    rules
}

/// The downward-closed family of parallel steps on `mat`, as masks over
/// `rules`, each with the matrix left after firing the step.
fn parallel_step_family(mat: &BitMatrix, rules: &[IdxRule]) -> HashMap<u64, BitMatrix> {
    let mut family: HashMap<u64, BitMatrix> = HashMap::new();
    family.insert(0, mat.clone());
    // Subsets of a parallel step are parallel steps, so depth-first
    // extension by increasing rule index reaches the whole family.
    let mut stack: Vec<u64> = vec![0];
    while let Some(mask) = stack.pop() {
        let top = 64 - mask.leading_zeros() as usize;
        for r in top..rules.len() {
            let cand = mask | (1 << r);
            if family.contains_key(&cand) {
                continue;
            }
            if is_parallel_step(mat, rules, cand, &mut family) {
                stack.push(cand);
            }
        }
    }
    family
}

/// Check the defining condition for `cand`: every rule in it must apply to
/// the common result of every sub-step omitting it. Fills `family` with the
/// after-matrices of the subsets it certifies.
fn is_parallel_step(
    mat: &BitMatrix,
    rules: &[IdxRule],
    cand: u64,
    family: &mut HashMap<u64, BitMatrix>,
) -> bool {
    if family.contains_key(&cand) {
        return true;
    }
    let mut domain = 0u64;
    for (r, rule) in rules.iter().enumerate() {
        if cand >> r & 1 == 1 {
            let d = rule.domain_mask();
            if domain & d != 0 {
                return false;
            }
            domain |= d;
        }
    }
    for r in 0..rules.len() {
        if cand >> r & 1 == 0 {
            continue;
        }
        let sub = cand ^ (1 << r);
        if !is_parallel_step(mat, rules, sub, family) {
            return false;
        }
        let removed = domain & !rules[r].domain_mask();
        if !rules[r].applies_after(&family[&sub], removed) {
            return false;
        }
    }
    let idx: Vec<usize> = (0..mat.n_rows()).filter(|&i| domain >> i & 1 == 1).collect();
    let next = reduce_matrix(mat, &idx).expect("an applicable step removes a reducible set");
    family.insert(cand, next);
    true
}

/// Successors of a state under all inclusion-maximal parallel steps.
fn maximal_step_results(mat: &BitMatrix) -> Vec<BitMatrix> {
    let rules = idx_rules(mat);
    let family = parallel_step_family(mat, &rules);
    let mut out = Vec::new();
    for (&mask, next) in &family {
        if mask == 0 {
            continue;
        }
        let maximal = (0..rules.len()).all(|r| mask >> r & 1 == 1 || !family.contains_key(&(mask | (1 << r))));
        if maximal {
            out.push(next.clone());
        }
    }
    out
}

fn parallel_complexity_matrix(start: &BitMatrix) -> usize {
    let mut dist: HashMap<BitMatrix, usize> = HashMap::new();
    let mut queue: VecDeque<BitMatrix> = VecDeque::new();
    dist.insert(start.clone(), 0);
    queue.push_back(start.clone());
    while let Some(state) = queue.pop_front() {
        let d = dist[&state];
        if state.n_rows() == 0 {
            return d;
        }
        for next in maximal_step_results(&state) {
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("every nonempty graph admits an applicable rule");
}

/// Minimum number of parallel steps reducing `g` to the empty graph; 0 iff
/// `g` is empty. Uses the default vertex cap.
pub fn parallel_complexity(g: &Graph) -> Result<usize> {
    parallel_complexity_with_cap(g, DEFAULT_PARALLEL_CAP)
}

pub fn parallel_complexity_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    if g.n() > cap {
        return Err(Error::TooManyVertices { n: g.n(), cap });
    }
    Ok(parallel_complexity_matrix(g.adjacency()))
}

/// How the census draws the `n(n+1)/2` free adjacency bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeDistribution {
    /// Every symmetric matrix equally likely (fair coin per free bit).
    Uniform,
    /// Each free bit set with the given probability.
    Bernoulli(f64),
}

/// Distribution of parallel complexities over a seeded random sample of
/// graphs on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    n: usize,
    sample: usize,
    seed: u64,
    histogram: BTreeMap<usize, usize>,
}

impl CensusReport {
    pub fn histogram(&self) -> &BTreeMap<usize, usize> {
        &self.histogram
    }

    pub fn max(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min(&self) -> usize {
        self.histogram.keys().next().copied().unwrap_or(0)
    }

    /// Mean as the exact reduced fraction `(p, q)`.
    pub fn mean_fraction(&self) -> (u64, u64) {
        let total: u64 = self.histogram.iter().map(|(&pc, &c)| pc as u64 * c as u64).sum();
        let count = self.sample as u64;
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(total, count).max(1);
        (total / g, count / g)
    }
}

impl fmt::Display for CensusReport {
    /// Census report format: a header line, one `pc=<k> count=<c>` line per
    /// observed complexity in ascending order, then the extremes and the
    /// exact rational mean.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} sample={} seed={}", self.n, self.sample, self.seed)?;
        for (pc, count) in &self.histogram {
            writeln!(f, "pc={pc} count={count}")?;
        }
        let (p, q) = self.mean_fraction();
        writeln!(f, "max={} mean={p}/{q}", self.max())
    }
}

/// Census with the default uniform distribution.
pub fn parallel_complexity_census(n: usize, sample: usize, seed: u64) -> Result<CensusReport> {
    parallel_complexity_census_with(n, sample, seed, EdgeDistribution::Uniform)
}

/// Sample `sample` graphs on `n` vertices and report their parallel
/// complexities. Sample `i` draws from a fresh stream keyed by
/// `(seed, i)`, so reports are reproducible for a fixed seed no matter how
/// the index space is scheduled.
pub fn parallel_complexity_census_with(
    n: usize,
    sample: usize,
    seed: u64,
    distribution: EdgeDistribution,
) -> Result<CensusReport> {
    if n > DEFAULT_PARALLEL_CAP {
        return Err(Error::TooManyVertices { n, cap: DEFAULT_PARALLEL_CAP });
    }
    if sample == 0 {
        return Err(Error::EmptySample);
    }
    if let EdgeDistribution::Bernoulli(p) = distribution {
        assert!((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]");
    }
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for index in 0..sample {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&(index as u64).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        let mut adj = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let bit = match distribution {
                    EdgeDistribution::Uniform => rng.random::<bool>(),
                    EdgeDistribution::Bernoulli(p) => rng.random_bool(p),
                };
                if bit {
                    adj.set(i, j, true);
                    adj.set(j, i, true);
                }
            }
        }
        *histogram.entry(parallel_complexity_matrix(&adj)).or_insert(0) += 1;
    }
    Ok(CensusReport { n, sample, seed, histogram })
}

/// Do the `gdr` rules removing the given vertex-disjoint loopless edges
/// apply in parallel?
pub fn parallel_gdr_check(g: &Graph, edges: &[(String, String)]) -> Result<bool> {
    let mut used: Vec<&str> = Vec::new();
    let mut rules = Vec::new();
    for (u, v) in edges {
        for w in [u, v] {
            if g.index_of(w).is_none() {
                return Err(Error::UnknownVertex(w.clone()));
            }
            if g.has_loop(w)? {
                return Err(Error::LoopedVertex(w.clone()));
            }
            if used.contains(&w.as_str()) {
                return Err(Error::SharedVertex(w.clone()));
            }
        }
        if u == v {
            return Err(Error::SharedVertex(u.clone()));
        }
        if !g.has_edge(u, v)? {
            return Err(Error::MissingEdge(u.clone(), v.clone()));
        }
        used.push(u);
        used.push(v);
        rules.push(Rule::gdr(u.clone(), v.clone()));
    }
    Ok(applies_in_parallel(g, &rules))
}
