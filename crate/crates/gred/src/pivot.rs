//! Matrix and graph pivots, pair-classes, retrographs, reverse reductions.
//!
//! For `A = [[P, Q], [R, S]]` blocked by an index set `X` with `P = A[X,X]`
//! invertible, the pivot is
//!
//! ```text
//! A * X = [[P⁻¹, P⁻¹Q], [RP⁻¹, S + RP⁻¹Q]]
//! ```
//!
//! (signs vanish over GF(2)). Pivoting a symmetric matrix stays symmetric,
//! so graphs pivot too: `P_W(G)` is defined exactly when `W` is in the
//! pivotal poset, and shifts that poset by symmetric difference with `W`.
//! The pair-class view makes this transparent: `[A, B]` is the orbit of the
//! pair under left multiplication by invertibles, canonicalized as the RREF
//! of the `n x 2n` block `[A | B]`, and the pivot by `X` just swaps the `X`
//! columns of the two sides.
//!
//! The retrograph `G^R` is the pivot by the whole vertex set — adjacency
//! `A⁻¹` — and reverses every reduction strategy of `G`. Reverse reductions
//! run the machinery backwards: all graphs that reduce onto a given one
//! arise as pivots of extensions whose residual vertices are loopless and
//! detached from the original graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{Graph, VertexSet};

/// The pivot `a * x`, defined iff the principal submatrix `a[x, x]` is
/// invertible. Pivoting by the empty set is the identity; a symmetric
/// input yields a symmetric output.
///
/// # Panics
///
/// Panics if `a` is not square or an index is out of range.
pub fn pivot_matrix(a: &BitMatrix, x: &BTreeSet<usize>) -> Option<BitMatrix> {
    assert!(a.is_square(), "pivot of a non-square matrix");
    let n = a.n_rows();
    let xs: Vec<usize> = x.iter().copied().collect();
    for &i in &xs {
        assert!(i < n, "pivot index {i} out of range");
    }
    let xc: Vec<usize> = (0..n).filter(|i| !x.contains(i)).collect();
    let p_inv = a.submatrix(&xs, &xs).inverse()?;
    let q = a.submatrix(&xs, &xc);
    let r = a.submatrix(&xc, &xs);
    let s = a.submatrix(&xc, &xc);
    let p_inv_q = p_inv.multiply(&q);
    let r_p_inv = r.multiply(&p_inv);
    let schur = s.xor(&r_p_inv.multiply(&q));

    let mut out = BitMatrix::zeros(n, n);
    let mut scatter = |rows: &[usize], cols: &[usize], block: &BitMatrix| {
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                out.set(i, j, block.get(bi, bj));
            }
        }
    };
    scatter(&xs, &xs, &p_inv);
    scatter(&xs, &xc, &p_inv_q);
    scatter(&xc, &xs, &r_p_inv);
    scatter(&xc, &xc, &schur);
    Some(out)
}

/// The equivalence class of a matrix pair `(A, B)` under left
/// multiplication by invertible matrices, stored as the RREF of `[A | B]`.
/// Two pair-classes are equal iff their canonical blocks are bit-identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairClass {
    n: usize,
    canonical: BitMatrix,
}

impl PairClass {
    /// Side dimension `n`; the canonical block is `n x 2n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn canonical(&self) -> &BitMatrix {
        &self.canonical
    }

    /// The `A` side of the canonical representative.
    pub fn side_a(&self) -> BitMatrix {
        let rows: Vec<usize> = (0..self.n).collect();
        let cols: Vec<usize> = (0..self.n).collect();
        self.canonical.submatrix(&rows, &cols)
    }

    /// The `B` side of the canonical representative.
    pub fn side_b(&self) -> BitMatrix {
        let rows: Vec<usize> = (0..self.n).collect();
        let cols: Vec<usize> = (self.n..2 * self.n).collect();
        self.canonical.submatrix(&rows, &cols)
    }

    /// A pair-class is proper iff its `A` side is invertible, which is the
    /// same as the empty set lying in its pivotal poset.
    pub fn is_proper(&self) -> bool {
        self.nullity(&BTreeSet::new(), &BTreeSet::new()) == 0
    }

    /// Pivot by `x`: exchange the `x` columns of the two sides and
    /// re-canonicalize. Always defined, and
    /// `pc.pivot(x).pivot(y) == pc.pivot(x ^ y)`.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn pivot(&self, x: &BTreeSet<usize>) -> PairClass {
        for &i in x {
            assert!(i < self.n, "pivot index {i} out of range");
        }
        let rows: Vec<usize> = (0..self.n).collect();
        let remap: Vec<usize> = (0..2 * self.n)
            .map(|c| {
                if c < self.n && x.contains(&c) {
                    c + self.n
                } else if c >= self.n && x.contains(&(c - self.n)) {
                    c - self.n
                } else {
                    c
                }
            })
            .collect();
        PairClass {
            n: self.n,
            canonical: self.canonical.submatrix(&rows, &remap).rref(),
        }
    }

    /// `N_{W1,W2}`: the nullity of the `n x n` matrix assembled from the
    /// `A`-side columns outside `w1` and the `B`-side columns in `w2`.
    /// Well-defined on the class — it does not depend on the representative.
    ///
    /// # Panics
    ///
    /// Panics if `|w1| != |w2|` or an index is out of range.
    pub fn nullity(&self, w1: &BTreeSet<usize>, w2: &BTreeSet<usize>) -> usize {
        assert_eq!(w1.len(), w2.len(), "nullity needs |w1| == |w2|");
        for &i in w1.iter().chain(w2) {
            assert!(i < self.n, "index {i} out of range");
        }
        let rows: Vec<usize> = (0..self.n).collect();
        let cols: Vec<usize> = (0..self.n)
            .filter(|i| !w1.contains(i))
            .chain(w2.iter().map(|&j| self.n + j))
            .collect();
        let assembled = self.canonical.submatrix(&rows, &cols);
        assembled.n_cols() - assembled.rank()
    }
}

/// The pair-class `[a, b]`. The block `[a | b]` must have full row rank.
///
/// # Panics
///
/// Panics unless `a` and `b` are square of equal size.
pub fn pairclass_of(a: &BitMatrix, b: &BitMatrix) -> Result<PairClass> {
    assert!(a.is_square() && b.is_square(), "pair-class sides must be square");
    assert_eq!(a.n_rows(), b.n_rows(), "pair-class sides must agree in size");
    let n = a.n_rows();
    let (canonical, pivots) = a.hstack(b).rref_with_pivots();
    if pivots.len() != n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            need: n,
        });
    }
    Ok(PairClass { n, canonical })
}

impl fmt::Display for PairClass {
    /// Pair-class text format: the canonical `n x 2n` block in the matrix
    /// text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

impl FromStr for PairClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<PairClass> {
        let block: BitMatrix = s.parse()?;
        if block.n_cols() != 2 * block.n_rows() {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "a pair-class block must be n x 2n, found {} x {}",
                    block.n_rows(),
                    block.n_cols()
                ),
            });
        }
        let n = block.n_rows();
        let (canonical, pivots) = block.rref_with_pivots();
        if pivots.len() != n {
            return Err(Error::RankDeficient { rank: pivots.len(), need: n });
        }
        Ok(PairClass { n, canonical })
    }
}

/// The graph pivot `P_W(G)`, defined iff `W` lies in the pivotal poset
/// (equivalently, `adj[W, W]` is invertible). Its pivotal poset is that of
/// `G` shifted by symmetric difference with `W`.
pub fn pivot_graph(g: &Graph, w: &VertexSet) -> Result<Option<Graph>> {
    let idx: BTreeSet<usize> = g.indices_of(w)?.into_iter().collect();
    Ok(pivot_matrix(g.adjacency(), &idx)
        .map(|adj| Graph::from_parts_unchecked(g.labels().to_vec(), adj)))
}

/// The retrograph `G^R`: the pivot by the entire vertex set, i.e. the graph
/// on the same labels whose adjacency is the inverse matrix. Exists iff the
/// adjacency is nonsingular; the error carries the graph's nullity.
pub fn retrograph(g: &Graph) -> Result<Graph> {
    match g.adjacency().inverse() {
        Some(inv) => Ok(Graph::from_parts_unchecked(g.labels().to_vec(), inv)),
        None => Err(Error::Singular { nullity: g.nullity() }),
    }
}

/// Self-test of the inverse-block identity: for invertible `a`,
/// `a[X, X]` is invertible iff `a⁻¹[V\X, V\X]` is, and then
/// `a⁻¹[V\X, V\X] == (S + R P⁻¹ Q)⁻¹` in the block form `[[P, Q], [R, S]]`
/// by `X`. Returns the verdict; `a` itself must be invertible.
///
/// # Panics
///
/// Panics if `a` is not square or an index is out of range.
pub fn schur_inverse_check(a: &BitMatrix, x: &BTreeSet<usize>) -> Result<bool> {
    assert!(a.is_square(), "schur check on a non-square matrix");
    let n = a.n_rows();
    for &i in x {
        assert!(i < n, "index {i} out of range");
    }
    let Some(a_inv) = a.inverse() else {
        return Err(Error::Singular { nullity: a.nullity() });
    };
    let xs: Vec<usize> = x.iter().copied().collect();
    let xc: Vec<usize> = (0..n).filter(|i| !x.contains(i)).collect();
    let p = a.submatrix(&xs, &xs);
    let complementary = a_inv.submatrix(&xc, &xc);
    match (p.inverse(), complementary.inverse()) {
        (None, None) => Ok(true),
        (Some(p_inv), Some(comp_inv)) => {
            let q = a.submatrix(&xs, &xc);
            let r = a.submatrix(&xc, &xs);
            let s = a.submatrix(&xc, &xc);
            let schur = s.xor(&r.multiply(&p_inv).multiply(&q));
            Ok(comp_inv == schur)
        }
        _ => Ok(false),
    }
}

/// All graphs `G'` on `labels(g) ∪ w_new` with `Γ_{w_new}(G') == g`.
///
/// Every such graph is `P_{W₁}(H)` for some `W₁ ⊆ w_new` and some `H` on
/// the union vertex set with `W₁` pivotal in `H` and the vertices of
/// `w_new \ W₁` loopless and non-adjacent to `labels(g)`; edges from
/// `w_new \ W₁` into the rest of `w_new` are enumerated freely. The output
/// is deduplicated by adjacency and sorted by packed adjacency bits.
///
/// The enumeration is exponential in the square of the combined vertex
/// count; it is meant for small instances.
pub fn reverse_reductions(g: &Graph, w_new: &[String]) -> Result<Vec<Graph>> {
    let mut all_labels = g.labels().to_vec();
    for label in w_new {
        if g.index_of(label).is_some() || w_new.iter().filter(|l| *l == label).count() > 1 {
            return Err(Error::LabelCollision(label.clone()));
        }
        all_labels.push(label.clone());
    }
    let n = g.n();
    let k = w_new.len();
    let m = n + k;

    let mut base = BitMatrix::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            if g.adjacency().get(i, j) {
                base.set(i, j, true);
            }
        }
    }

    let mut found: BTreeSet<BitMatrix> = BTreeSet::new();
    for w1_mask in 0u32..1 << k {
        let w1: BTreeSet<usize> = (0..k).filter(|i| w1_mask >> i & 1 == 1).map(|i| n + i).collect();
        // H must restrict to `g` on the original vertices. Free entries:
        // every pair meeting W₁ inside V ∪ W₁, plus pairs joining W \ W₁
        // to W. Loops on W \ W₁ and edges from W \ W₁ into V stay zero.
        let residual: Vec<usize> = (n..m).filter(|v| !w1.contains(v)).collect();
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for &j in &w1 {
            for i in (0..n).chain(w1.iter().copied().filter(|&i| i <= j)) {
                slots.push((i, j));
            }
        }
        for (a, &i) in residual.iter().enumerate() {
            for &j in w1.iter().chain(&residual[a + 1..]) {
                slots.push((i, j));
            }
        }
        assert!(slots.len() < 64, "reverse-reduction instance too large");
        for assignment in 0u64..1 << slots.len() {
            let mut h = base.clone();
            for (bit, &(i, j)) in slots.iter().enumerate() {
                if assignment >> bit & 1 == 1 {
                    h.set(i, j, true);
                    h.set(j, i, true);
                }
            }
            if let Some(adj) = pivot_matrix(&h, &w1) {
                found.insert(adj);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|adj| Graph::from_parts_unchecked(all_labels.clone(), adj))
        .collect())
}
