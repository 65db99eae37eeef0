//! Reducibility, the general reduction `Γ_W`, and the combinatorial rules.
//!
//! With the adjacency matrix written in block form `[[P, Q], [Qᵀ, R]]`
//! (rows and columns of `W` first), the set `W` is reducible iff the image
//! of `Q` is contained in the image of `P`, i.e. iff `Q = PM` is solvable.
//! The reduced graph `Γ_W(G)` lives on `V \ W` and has adjacency
//! `R - MᵀPM = R + MᵀQ`. The three rules are the minimal reductions:
//!
//! * `gpr v`  — `v` looped;           `[[1, Q], [Qᵀ, R]] ↦ R + QᵀQ`
//! * `gdr u v` — loopless adjacent;   `R + Qᵀ [[0,1],[1,0]] Q`
//! * `gnr v`  — loopless isolated;    `R`
//!
//! The nullity `|W| - rank(P)` of a reducible set equals the number of
//! `gnr` applications in every strategy removing it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{solve_right, BitMatrix};
use crate::graph::{Graph, VertexSet};

/// A minimal reduction: one of the three combinatorial rules.
///
/// The derived order (all `gpr`, then all `gdr`, then all `gnr`, each
/// lexicographic by label) is the enumeration and tie-breaking order used
/// throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `gpr v`: remove a looped vertex, complementing its neighborhood.
    Positive(String),
    /// `gdr u v`: remove an adjacent loopless pair, complementing between
    /// the two neighborhoods.
    Double(String, String),
    /// `gnr v`: remove a loopless isolated vertex.
    Negative(String),
}

impl Rule {
    pub fn gpr(v: impl Into<String>) -> Rule {
        Rule::Positive(v.into())
    }

    /// The pair is stored lexicographically smallest-first.
    pub fn gdr(u: impl Into<String>, v: impl Into<String>) -> Rule {
        let (u, v) = (u.into(), v.into());
        if u <= v {
            Rule::Double(u, v)
        } else {
            Rule::Double(v, u)
        }
    }

    pub fn gnr(v: impl Into<String>) -> Rule {
        Rule::Negative(v.into())
    }

    /// The vertices removed by this rule.
    pub fn domain(&self) -> VertexSet {
        match self {
            Rule::Positive(v) | Rule::Negative(v) => BTreeSet::from([v.clone()]),
            Rule::Double(u, v) => BTreeSet::from([u.clone(), v.clone()]),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Rule::Negative(_))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Positive(v) => write!(f, "gpr {v}"),
            Rule::Double(u, v) => write!(f, "gdr {u} {v}"),
            Rule::Negative(v) => write!(f, "gnr {v}"),
        }
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse {
            line: 0,
            message: format!("bad rule `{s}`: expected `gpr v`, `gdr v1 v2`, or `gnr v`"),
        };
        match toks.as_slice() {
            ["gpr", v] => Ok(Rule::gpr(*v)),
            ["gdr", u, v] => Ok(Rule::gdr(*u, *v)),
            ["gnr", v] => Ok(Rule::gnr(*v)),
            _ => Err(bad()),
        }
    }
}

/// An ordered list of rules. A strategy is *applicable* on `G` when each
/// rule applies to the result of the previous ones.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Strategy {
    rules: Vec<Rule>,
}

impl Strategy {
    pub fn new(rules: Vec<Rule>) -> Strategy {
        Strategy { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Union of the rule domains.
    pub fn domain(&self) -> VertexSet {
        self.rules.iter().flat_map(|r| r.domain()).collect()
    }

    /// How many negative rules the strategy uses.
    pub fn gnr_tally(&self) -> usize {
        self.rules.iter().filter(|r| r.is_negative()).count()
    }
}

impl fmt::Display for Strategy {
    /// Strategy text format: one rule per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        let mut rules = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rule = line.parse::<Rule>().map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                other => other,
            })?;
            rules.push(rule);
        }
        Ok(Strategy { rules })
    }
}

/// The block pieces of the adjacency matrix for a subset given by sorted
/// indices: `p` on `w x w`, `q` on `w x rest`, `r` on `rest x rest`.
fn blocks(g: &Graph, idx: &[usize]) -> (BitMatrix, BitMatrix, BitMatrix, Vec<usize>) {
    let rest = g.complement_indices(idx);
    let adj = g.adjacency();
    (
        adj.submatrix(idx, idx),
        adj.submatrix(idx, &rest),
        adj.submatrix(&rest, &rest),
        rest,
    )
}

/// Is `w` reducible in `g`, i.e. is the image of `Q` contained in the image
/// of `P`? The empty set is always reducible, and so is the full vertex set.
pub fn is_reducible(g: &Graph, w: &VertexSet) -> Result<bool> {
    let idx = g.indices_of(w)?;
    let (p, q, _, _) = blocks(g, &idx);
    Ok(solve_right(&p, &q).is_some())
}

/// The first vertex outside `w` (in label order) whose `Q`-column falls
/// outside the image of `P`. Only called on irreducible sets.
fn irreducibility_witness(g: &Graph, idx: &[usize]) -> String {
    let (p, q, _, rest) = blocks(g, idx);
    let p_rank = p.rank();
    for (j, &v) in rest.iter().enumerate() {
        let col = q.submatrix(&(0..idx.len()).collect::<Vec<_>>(), &[j]);
        if p.hstack(&col).rank() > p_rank {
            return g.labels()[v].clone();
        }
    }
    unreachable!("witness requested for a reducible set")
}

/// Matrix-level `Γ`: reduce `mat` by the sorted index set `idx`, or `None`
/// when the set is not reducible.
pub(crate) fn reduce_matrix(mat: &BitMatrix, idx: &[usize]) -> Option<BitMatrix> {
    let rest: Vec<usize> = (0..mat.n_rows()).filter(|i| !idx.contains(i)).collect();
    let p = mat.submatrix(idx, idx);
    let q = mat.submatrix(idx, &rest);
    let r = mat.submatrix(&rest, &rest);
    let m = solve_right(&p, &q)?;
    // R - MᵀPM = R + MᵀQ since PM = Q and -1 = 1.
    Some(r.xor(&m.transpose().multiply(&q)))
}

pub(crate) fn reduce_by_indices(g: &Graph, idx: &[usize]) -> Result<Graph> {
    let Some(adj) = reduce_matrix(g.adjacency(), idx) else {
        return Err(Error::NotReducible {
            witness: irreducibility_witness(g, idx),
        });
    };
    let rest = g.complement_indices(idx);
    let labels = rest.iter().map(|&i| g.labels()[i].clone()).collect();
    Ok(Graph::from_parts_unchecked(labels, adj))
}

/// The graph reduction `Γ_W(G)`: the graph on `V \ W` whose adjacency is
/// `R - MᵀPM` where `Q = PM`. Fails with a witness vertex when `w` is not
/// reducible; reducing by the empty set returns `g` unchanged.
pub fn reduce(g: &Graph, w: &VertexSet) -> Result<Graph> {
    let idx = g.indices_of(w)?;
    reduce_by_indices(g, &idx)
}

/// All applicable rules: a `gpr` per looped vertex, a `gdr` per loopless
/// adjacent pair, a `gnr` per loopless isolated vertex. Ordered by kind and
/// then lexicographically by label.
pub fn applicable_rules(g: &Graph) -> Vec<Rule> {
    let n = g.n();
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.labels()[a].cmp(&g.labels()[b]));

    let mut rules = Vec::new();
    for &i in &order {
        if adj.get(i, i) {
            rules.push(Rule::gpr(g.labels()[i].clone()));
        }
    }
    for (k, &i) in order.iter().enumerate() {
        if adj.get(i, i) {
            continue;
        }
        for &j in &order[k + 1..] {
            if !adj.get(j, j) && adj.get(i, j) {
                rules.push(Rule::gdr(g.labels()[i].clone(), g.labels()[j].clone()));
            }
        }
    }
    for &i in &order {
        if !adj.get(i, i) && (0..n).all(|j| j == i || !adj.get(i, j)) {
            rules.push(Rule::gnr(g.labels()[i].clone()));
        }
    }
    rules
}

fn idx_or_unknown(g: &Graph, v: &str) -> Result<usize> {
    g.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
}

/// Apply one combinatorial rule via its closed matrix form. The result is
/// identical to `reduce(g, rule.domain())`; failures name the violated
/// applicability condition.
pub fn apply_rule(g: &Graph, rule: &Rule) -> Result<Graph> {
    let fail = |reason: &str| Error::NotApplicable {
        rule: rule.clone(),
        reason: reason.to_string(),
    };
    let adj = g.adjacency();
    match rule {
        Rule::Positive(v) => {
            let i = idx_or_unknown(g, v)?;
            if !adj.get(i, i) {
                return Err(fail(&format!("vertex `{v}` has no loop")));
            }
            let (_, q, r, rest) = blocks(g, &[i]);
            let result = r.xor(&q.transpose().multiply(&q));
            let labels = rest.iter().map(|&k| g.labels()[k].clone()).collect();
            Ok(Graph::from_parts_unchecked(labels, result))
        }
        Rule::Double(u, v) => {
            let i = idx_or_unknown(g, u)?;
            let j = idx_or_unknown(g, v)?;
            if i == j {
                return Err(fail("the two domain vertices must be distinct"));
            }
            if adj.get(i, i) {
                return Err(fail(&format!("vertex `{u}` has a loop")));
            }
            if adj.get(j, j) {
                return Err(fail(&format!("vertex `{v}` has a loop")));
            }
            if !adj.get(i, j) {
                return Err(fail(&format!("vertices `{u}` and `{v}` are not adjacent")));
            }
            let mut idx = [i, j];
            idx.sort_unstable();
            let (_, q, r, rest) = blocks(g, &idx);
            let swap = BitMatrix::from_bit_rows(&["01", "10"]);
            let result = r.xor(&q.transpose().multiply(&swap).multiply(&q));
            let labels = rest.iter().map(|&k| g.labels()[k].clone()).collect();
            Ok(Graph::from_parts_unchecked(labels, result))
        }
        Rule::Negative(v) => {
            let i = idx_or_unknown(g, v)?;
            if adj.get(i, i) {
                return Err(fail(&format!("vertex `{v}` has a loop")));
            }
            if (0..g.n()).any(|j| j != i && adj.get(i, j)) {
                return Err(fail(&format!("vertex `{v}` is not isolated")));
            }
            let (_, _, r, rest) = blocks(g, &[i]);
            let labels = rest.iter().map(|&k| g.labels()[k].clone()).collect();
            Ok(Graph::from_parts_unchecked(labels, r))
        }
    }
}

/// Fold a strategy over `g`, checking applicability step by step. On
/// failure the error reports the first inapplicable step together with the
/// intermediate graph it was attempted on.
pub fn apply_strategy(g: &Graph, strategy: &Strategy) -> Result<Graph> {
    let mut current = g.clone();
    for (step, rule) in strategy.rules().iter().enumerate() {
        match apply_rule(&current, rule) {
            Ok(next) => current = next,
            Err(e) => {
                return Err(Error::StrategyFailed {
                    step,
                    graph: Box::new(current),
                    source: Box::new(e),
                })
            }
        }
    }
    Ok(current)
}

/// A strategy removing exactly `w`, built greedily: among applicable rules
/// whose domain lies inside the remaining set, prefer `gpr`, then `gdr`,
/// then `gnr`, lowest label first. Such a rule always exists while any of
/// `w` remains, because every reducible set contains the domain of an
/// applicable rule.
pub fn strategy_for(g: &Graph, w: &VertexSet) -> Result<Strategy> {
    let idx = g.indices_of(w)?;
    if solve_right(
        &g.adjacency().submatrix(&idx, &idx),
        &g.adjacency().submatrix(&idx, &g.complement_indices(&idx)),
    )
    .is_none()
    {
        return Err(Error::NotReducible {
            witness: irreducibility_witness(g, &idx),
        });
    }
    let mut remaining = w.clone();
    let mut current = g.clone();
    let mut rules = Vec::new();
    while !remaining.is_empty() {
        let rule = applicable_rules(&current)
            .into_iter()
            .find(|r| r.domain().is_subset(&remaining))
            .expect("a nonempty reducible set contains an applicable rule domain");
        current = apply_rule(&current, &rule)?;
        for v in rule.domain() {
            remaining.remove(&v);
        }
        rules.push(rule);
    }
    Ok(Strategy::new(rules))
}

/// The number of `gnr` applications in every strategy removing `w`, which
/// equals the nullity of `w` in `g`.
pub fn gnr_count(g: &Graph, w: &VertexSet) -> Result<usize> {
    if !is_reducible(g, w)? {
        let idx = g.indices_of(w)?;
        return Err(Error::NotReducible {
            witness: irreducibility_witness(g, &idx),
        });
    }
    g.nullity_of(w)
}

/// Whether every successful strategy of `g` avoids the negative rule:
/// true iff the adjacency matrix has an empty nullspace, i.e. iff no
/// nonempty vertex subset `S` has every vertex adjacent to an even number
/// of members of `S`.
pub fn avoids_gnr(g: &Graph) -> bool {
    g.adjacency().nullspace_basis().n_rows() == 0
}

/// Rank criterion for a single entry of the reduced graph: the edge (or
/// loop, when `v == u`) is present in `Γ_W(G)` iff
/// `rank(W ∪ {v}, W ∪ {u}) > rank(W)`.
///
/// # Panics
///
/// Panics if `v` or `u` lies inside `w`.
pub fn edge_after_reduction(g: &Graph, w: &VertexSet, v: &str, u: &str) -> Result<bool> {
    assert!(!w.contains(v) && !w.contains(u), "query vertices must lie outside the reduced set");
    if !is_reducible(g, w)? {
        let idx = g.indices_of(w)?;
        return Err(Error::NotReducible {
            witness: irreducibility_witness(g, &idx),
        });
    }
    idx_or_unknown(g, v)?;
    idx_or_unknown(g, u)?;
    let mut w1 = w.clone();
    w1.insert(v.to_string());
    let mut w2 = w.clone();
    w2.insert(u.to_string());
    Ok(g.rank_between(&w1, &w2)? > g.rank_of(w)?)
}
