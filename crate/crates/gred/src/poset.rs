//! The reducibility poset, the pivotal poset, and graph reconstruction.
//!
//! The reducibility poset of `G` collects every reducible vertex subset
//! together with its nullity level; inclusions inside it only ever go to
//! higher levels. Level 0 — the subsets whose principal submatrix is
//! invertible — is the pivotal poset, and it determines `G` uniquely: the
//! diagonal entries are read off the singletons and each off-diagonal `b`
//! off the pair `{v, w}` via `det = ac + b` over GF(2).
//!
//! Enumeration walks all `2^n` subsets, so the vertex count is capped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{Graph, VertexSet};

/// Largest vertex count accepted by the exhaustive poset enumerations.
pub const MAX_POSET_VERTICES: usize = 20;

/// The family of reducible subsets of a graph, each with its nullity level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityPoset {
    ground: Vec<String>,
    members: BTreeMap<VertexSet, usize>,
}

impl ReducibilityPoset {
    /// Ground set, in the source graph's label order.
    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &VertexSet) -> bool {
        self.members.contains_key(w)
    }

    /// Nullity level of a member.
    pub fn level_of(&self, w: &VertexSet) -> Option<usize> {
        self.members.get(w).copied()
    }

    /// Members sorted by (level, size, lexicographic label order).
    pub fn members(&self) -> Vec<(VertexSet, usize)> {
        let mut out: Vec<(VertexSet, usize)> = self.members.iter().map(|(w, &l)| (w.clone(), l)).collect();
        out.sort_by(|(wa, la), (wb, lb)| (la, wa.len(), wa).cmp(&(lb, wb.len(), wb)));
        out
    }

    /// Members at one level, in the same order.
    pub fn members_at_level(&self, level: usize) -> Vec<VertexSet> {
        self.members().into_iter().filter(|(_, l)| *l == level).map(|(w, _)| w).collect()
    }

    /// Level 0 as a set family.
    pub fn pivotal(&self) -> BTreeSet<VertexSet> {
        self.members
            .iter()
            .filter(|(_, &l)| l == 0)
            .map(|(w, _)| w.clone())
            .collect()
    }
}

fn format_member(w: &VertexSet) -> String {
    let labels: Vec<&str> = w.iter().map(String::as_str).collect();
    format!("{{{}}}", labels.join(","))
}

impl fmt::Display for ReducibilityPoset {
    /// Poset text format: one member per line, `level <k>: {v1,v2,...}`,
    /// sorted by (level, size, lexicographic).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, level) in self.members() {
            writeln!(f, "level {level}: {}", format_member(&w))?;
        }
        Ok(())
    }
}

/// Parse the poset text format into `(member, level)` pairs.
pub fn parse_poset_file(s: &str) -> Result<Vec<(VertexSet, usize)>> {
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse { line: i + 1, message };
        let rest = line
            .strip_prefix("level ")
            .ok_or_else(|| bad(format!("expected `level <k>: {{...}}`, found `{line}`")))?;
        let (level_str, member_str) = rest
            .split_once(':')
            .ok_or_else(|| bad("missing `:` after the level".into()))?;
        let level: usize = level_str
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad level `{}`", level_str.trim())))?;
        let member_str = member_str.trim();
        let inner = member_str
            .strip_prefix('{')
            .and_then(|m| m.strip_suffix('}'))
            .ok_or_else(|| bad(format!("expected a braced vertex set, found `{member_str}`")))?;
        let mut member = VertexSet::new();
        if !inner.is_empty() {
            for label in inner.split(',') {
                if label.is_empty() || label.chars().any(char::is_whitespace) {
                    return Err(bad(format!("bad vertex label `{label}`")));
                }
                member.insert(label.to_string());
            }
        }
        out.push((member, level));
    }
    Ok(out)
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_POSET_VERTICES {
        Err(Error::TooManyVertices { n, cap: MAX_POSET_VERTICES })
    } else {
        Ok(())
    }
}

/// Enumerate all `2^n` subsets of the vertices and keep the reducible ones
/// with their nullities. A subset `W` is reducible iff
/// `rank(W, V) == rank(W)`, which is the image-containment criterion read
/// rank-wise; a unit test pins this against [`crate::reduction::is_reducible`].
pub fn reducibility_poset(g: &Graph) -> Result<ReducibilityPoset> {
    let n = g.n();
    check_cap(n)?;
    let adj = g.adjacency();
    let all: Vec<usize> = (0..n).collect();
    let mut members = BTreeMap::new();
    for mask in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let principal_rank = adj.submatrix(&idx, &idx).rank();
        if adj.submatrix(&idx, &all).rank() == principal_rank {
            let w: VertexSet = idx.iter().map(|&i| g.labels()[i].clone()).collect();
            members.insert(w, idx.len() - principal_rank);
        }
    }
    Ok(ReducibilityPoset {
        ground: g.labels().to_vec(),
        members,
    })
}

/// Level 0 of the reducibility poset: the subsets whose principal
/// submatrix is invertible.
pub fn pivotal_poset(g: &Graph) -> Result<BTreeSet<VertexSet>> {
    let n = g.n();
    check_cap(n)?;
    let adj = g.adjacency();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if adj.submatrix(&idx, &idx).rank() == idx.len() {
            out.insert(idx.iter().map(|&i| g.labels()[i].clone()).collect());
        }
    }
    Ok(out)
}

/// Rebuild the unique graph candidate with pivotal poset `r0`, then verify
/// it. Returns `None` when `r0` is not realizable by any graph on `labels`.
///
/// Diagonal: `a_vv = 1` iff `{v}` is a member. Off-diagonal for `{v, w}`
/// with diagonal entries `a, c`: the pair is a member iff `ac + b = 1`, so
/// `b = ac + [member]`.
pub fn graph_from_pivotal_poset(labels: &[String], r0: &BTreeSet<VertexSet>) -> Result<Option<Graph>> {
    check_cap(labels.len())?;
    let ground: VertexSet = labels.iter().cloned().collect();
    for member in r0 {
        if !member.is_subset(&ground) {
            return Err(Error::MemberNotInGroundSet {
                member: member.iter().cloned().collect::<Vec<_>>().join(","),
            });
        }
    }
    let n = labels.len();
    let singleton = |i: usize| VertexSet::from([labels[i].clone()]);
    let mut adj = BitMatrix::zeros(n, n);
    for i in 0..n {
        if r0.contains(&singleton(i)) {
            adj.set(i, i, true);
        }
    }
    for i in 0..n {
        for j in 0..i {
            let pair = VertexSet::from([labels[i].clone(), labels[j].clone()]);
            let b = (adj.get(i, i) && adj.get(j, j)) ^ r0.contains(&pair);
            adj.set(i, j, b);
            adj.set(j, i, b);
        }
    }
    let candidate = Graph::new(labels.to_vec(), adj)?;
    if pivotal_poset(&candidate)? == *r0 {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

/// Whether some graph on `labels` has pivotal poset `r0`.
pub fn is_realizable(labels: &[String], r0: &BTreeSet<VertexSet>) -> Result<bool> {
    Ok(graph_from_pivotal_poset(labels, r0)?.is_some())
}

/// The cover relations of the member family under inclusion: pairs
/// `(S, T)` with `S ⊂ T` and no member strictly between. Pairs are sorted
/// by the member sort key of `S`, then of `T`.
pub fn hasse_cover_pairs(poset: &ReducibilityPoset) -> Vec<(VertexSet, VertexSet)> {
    let members = poset.members();
    let mut pairs = Vec::new();
    for (s, _) in &members {
        for (t, _) in &members {
            if s == t || !s.is_subset(t) {
                continue;
            }
            let between = members
                .iter()
                .any(|(u, _)| u != s && u != t && s.is_subset(u) && u.is_subset(t));
            if !between {
                pairs.push((s.clone(), t.clone()));
            }
        }
    }
    pairs.sort_by(|(sa, ta), (sb, tb)| {
        ((sa.len(), sa), (ta.len(), ta)).cmp(&((sb.len(), sb), (tb.len(), tb)))
    });
    pairs
}
