//! Orthogonality graphs on subspaces of `(F_q^n, λdot_n)`.
//!
//! In both graphs `x ~ y` iff `x ⊆ y⊥`. This relation is symmetric because the
//! bilinear form is.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::quadform::{QuadraticSpace, StandardForm};
use crate::subspace::cache::SubspaceCache;
use crate::subspace::{enumerate_subspaces, for_each_subspace, Subspace, SubspaceSet};

mod bitset;
pub mod clique;
pub mod export;
pub mod neighborhood;
pub mod orbit;

pub use bitset::BitSet;
pub use clique::{for_each_clique, max_clique, CliqueSearch, DEFAULT_NODE_BUDGET};
pub use neighborhood::{
    check_neighborhood, neighborhood_map, neighborhood_subgraph, NeighborhoodCheck, NeighborhoodMap,
};
pub use orbit::{orbit_check, reflection_generators, OrbitReport, ARC_CHECK_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    /// Vertices are the `dot_k`-subspaces.
    GammaSquare,
    /// Vertices are all `k`-subspaces.
    GammaBar,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::GammaSquare => "gamma-square",
            GraphKind::GammaBar => "gamma-bar",
        })
    }
}

/// Whether a totally isotropic vertex (`x ⊆ x⊥`) gets a loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopPolicy {
    #[default]
    Include,
    Exclude,
}

/// Symmetric 0/1 adjacency matrix stored as one bitset per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    rows: Vec<BitSet>,
}

impl Adjacency {
    pub fn empty(n: usize) -> Self {
        Adjacency {
            rows: vec![BitSet::new(n); n],
        }
    }

    /// Builds from a predicate evaluated on every ordered pair, in parallel.
    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let rows = (0..n)
            .into_par_iter()
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| adjacent(i, j))))
            .collect();
        Adjacency { rows }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut a = Self::empty(n);
        for (u, v) in edges {
            a.rows[u].insert(v);
            a.rows[v].insert(u);
        }
        a
    }

    pub fn complete(m: usize) -> Self {
        Self::from_fn(m, |i, j| i != j)
    }

    pub fn cycle(m: usize) -> Self {
        Self::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    /// Star with `m` vertices: one center joined to `m - 1` leaves.
    pub fn star(m: usize) -> Self {
        Self::from_edges(m, (1..m).map(|i| (0, i)))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i`, including `i` itself when it carries a loop.
    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.rows[i].contains(i)
    }

    /// Row sum of the adjacency matrix (a loop counts once).
    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.has_loop(i)).count()
    }

    /// Number of unordered pairs `{i, j}`, `i != j`, that are adjacent.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.rows.iter().map(BitSet::count).sum();
        (total - self.loop_count()) / 2
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len())
            .into_par_iter()
            .all(|i| self.rows[i].iter().all(|j| self.rows[j].contains(i)))
    }

    /// Common degree, if every row sum is the same.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map(BitSet::count)?;
        self.rows.iter().all(|r| r.count() == d).then_some(d)
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for r in &self.rows {
            *h.entry(r.count()).or_insert(0) += 1;
        }
        h
    }

    /// Induced subgraph on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Adjacency {
        Adjacency::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        })
    }

    /// Dense row-major `f64` copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.len();
        let mut m = vec![0.0; n * n];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter() {
                m[i * n + j] = 1.0;
            }
        }
        m
    }
}

/// `Γ□(n, k, q)` or `Γ̄(n, k, q)`.
#[derive(Clone, Debug)]
pub struct OrthGraph {
    kind: GraphKind,
    n: usize,
    k: usize,
    space: QuadraticSpace,
    vertices: SubspaceSet,
    adjacency: Adjacency,
    loops: LoopPolicy,
}

impl OrthGraph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    /// The ambient `λdot_n`.
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    pub fn vertices(&self) -> &SubspaceSet {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Subspace {
        self.vertices.get(i)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn loop_policy(&self) -> LoopPolicy {
        self.loops
    }

    /// A copy with the other loop policy applied to the diagonal.
    pub fn with_loop_policy(&self, loops: LoopPolicy) -> OrthGraph {
        let mut g = self.clone();
        if self.kind == GraphKind::GammaBar && loops != self.loops {
            let ortho = OrthogonalityTest::new(&self.space, &self.vertices);
            for i in 0..g.vertex_count() {
                g.adjacency.rows[i].remove(i);
                if loops == LoopPolicy::Include && ortho.adjacent(i, i) {
                    g.adjacency.rows[i].insert(i);
                }
            }
        }
        g.loops = loops;
        g
    }
}

/// Precomputed `x ⊆ y⊥` test: `X · G · Yᵀ = 0`.
struct OrthogonalityTest<'a> {
    field: &'a FieldSpec,
    k: usize,
    n: usize,
    /// Row-major bases, `k * n` entries per vertex.
    bases: Vec<Fq>,
    /// `basis · G`, same layout.
    gram_images: Vec<Fq>,
}

impl<'a> OrthogonalityTest<'a> {
    fn new(space: &'a QuadraticSpace, vertices: &SubspaceSet) -> Self {
        let field = space.field();
        let n = space.dim();
        let k = vertices.iter().next().map_or(0, Subspace::dim);
        let bases = vertices
            .iter()
            .flat_map(|s| s.basis().as_slice().iter().copied())
            .collect();
        let gram_images = vertices
            .iter()
            .flat_map(|s| {
                s.basis()
                    .mul(field, space.gram())
                    .expect("ambient dimensions agree")
                    .as_slice()
                    .to_vec()
            })
            .collect();
        OrthogonalityTest {
            field,
            k,
            n,
            bases,
            gram_images,
        }
    }

    #[inline]
    fn adjacent(&self, x: usize, y: usize) -> bool {
        let (n, k) = (self.n, self.k);
        let stride = k * n;
        let xb = &self.bases[x * stride..(x + 1) * stride];
        let yg = &self.gram_images[y * stride..(y + 1) * stride];
        (0..k).all(|a| {
            (0..k).all(|b| {
                self.field
                    .dot(&xb[a * n..(a + 1) * n], &yg[b * n..(b + 1) * n])
                    .is_zero()
            })
        })
    }
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k < n, got n = {n}, k = {k} (for k >= n the graph is empty)"
        )));
    }
    Ok(())
}

fn assemble(
    kind: GraphKind,
    n: usize,
    k: usize,
    space: QuadraticSpace,
    vertices: SubspaceSet,
    loops: LoopPolicy,
) -> OrthGraph {
    let ortho = OrthogonalityTest::new(&space, &vertices);
    let adjacency = Adjacency::from_fn(vertices.len(), |i, j| {
        (i != j || loops == LoopPolicy::Include) && ortho.adjacent(i, j)
    });
    assert!(adjacency.is_symmetric(), "orthogonality must be symmetric");
    if kind == GraphKind::GammaSquare {
        assert_eq!(
            adjacency.loop_count(),
            0,
            "a dot_k-subspace is never self-orthogonal"
        );
    }
    OrthGraph {
        kind,
        n,
        k,
        space,
        vertices,
        adjacency,
        loops,
    }
}

/// Builds graphs, optionally reading subspace lists from a cache directory.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    pub cache: Option<SubspaceCache>,
    pub loops: LoopPolicy,
}

impl GraphBuilder {
    fn subspaces(&self, n: usize, k: usize, field: &FieldSpec) -> Result<SubspaceSet> {
        match &self.cache {
            Some(c) => c.load_or_enumerate(n, k, field),
            None => Ok(enumerate_subspaces(n, k, field)),
        }
    }

    pub fn gamma_square(&self, n: usize, k: usize, field: &FieldSpec) -> Result<OrthGraph> {
        check_params(n, k)?;
        let space = QuadraticSpace::standard(StandardForm::LambdaDot, n, field);
        let vertices = self
            .subspaces(n, k, field)?
            .filter(|w| space.is_dotk_subspace(w));
        Ok(assemble(
            GraphKind::GammaSquare,
            n,
            k,
            space,
            vertices,
            LoopPolicy::Exclude,
        ))
    }

    pub fn gamma_bar(&self, n: usize, k: usize, field: &FieldSpec) -> Result<OrthGraph> {
        check_params(n, k)?;
        let space = QuadraticSpace::standard(StandardForm::LambdaDot, n, field);
        let vertices = self.subspaces(n, k, field)?;
        Ok(assemble(
            GraphKind::GammaBar,
            n,
            k,
            space,
            vertices,
            self.loops,
        ))
    }

    pub fn build(
        &self,
        kind: GraphKind,
        n: usize,
        k: usize,
        field: &FieldSpec,
    ) -> Result<OrthGraph> {
        match kind {
            GraphKind::GammaSquare => self.gamma_square(n, k, field),
            GraphKind::GammaBar => self.gamma_bar(n, k, field),
        }
    }
}

/// `Γ□(n, k, q)`: the `dot_k`-subspaces of `λdot_n`.
pub fn build_gamma_square(n: usize, k: usize, field: &FieldSpec) -> Result<OrthGraph> {
    GraphBuilder::default().gamma_square(n, k, field)
}

/// `Γ̄(n, k, q)`: all `k`-subspaces of `λdot_n`.
pub fn build_gamma_bar(
    n: usize,
    k: usize,
    field: &FieldSpec,
    loops: LoopPolicy,
) -> Result<OrthGraph> {
    GraphBuilder { cache: None, loops }.gamma_bar(n, k, field)
}

/// Vertex count and one vertex's degree of `Γ□(n, k, q)`, computed without
/// materializing the adjacency matrix. Works well beyond the sizes where the
/// dense graph fits in memory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub vertex_count: usize,
    /// Degree of the first vertex in enumeration order.
    pub first_degree: Option<usize>,
}

pub fn census_gamma_square(n: usize, k: usize, field: &FieldSpec) -> Result<Census> {
    check_params(n, k)?;
    let space = QuadraticSpace::standard(StandardForm::LambdaDot, n, field);
    let mut vertices = Vec::new();
    for_each_subspace(n, k, field, |w| {
        if space.is_dotk_subspace(w) {
            vertices.push(w.clone());
        }
    });
    let first_degree = vertices.first().map(|x| {
        let xg = x
            .basis()
            .mul(field, space.gram())
            .expect("dimensions agree");
        vertices
            .par_iter()
            .filter(|y| {
                y.basis()
                    .row_iter()
                    .all(|yr| xg.row_iter().all(|xr| field.dot(xr, yr).is_zero()))
            })
            .count()
    });
    Ok(Census {
        n,
        k,
        q: field.order(),
        vertex_count: vertices.len(),
        first_degree,
    })
}

/// Ratio of `count` to `q^exponent / divisor`.
pub fn asymptotic_ratio(count: usize, q: u32, exponent: i64, divisor: f64) -> f64 {
    count as f64 / ((q as f64).powi(exponent as i32) / divisor)
}

/// Counts, degrees and ratios against the leading-order sizes
/// `q^{k(n-k)}` (vertices) and `q^{k(n-2k)}` (degree), both halved for `Γ□`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub kind: GraphKind,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub loops: LoopPolicy,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub loop_count: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub regular_degree: Option<usize>,
    /// `None` when the clique search ran out of budget.
    pub clique_number: Option<usize>,
    pub vertex_ratio: f64,
    /// Only defined for `n > 2k`.
    pub degree_ratio: Option<f64>,
}

pub fn stats(g: &OrthGraph) -> GraphStats {
    let adj = g.adjacency();
    let divisor = if g.kind() == GraphKind::GammaSquare {
        2.0
    } else {
        1.0
    };
    let (n, k) = (g.n() as i64, g.k() as i64);
    let regular_degree = adj.regular_degree();
    let degree_ratio = if n > 2 * k {
        regular_degree.map(|d| asymptotic_ratio(d, g.q(), k * (n - 2 * k), divisor))
    } else {
        None
    };
    GraphStats {
        kind: g.kind(),
        n: g.n(),
        k: g.k(),
        q: g.q(),
        loops: g.loop_policy(),
        vertex_count: g.vertex_count(),
        edge_count: adj.edge_count(),
        loop_count: adj.loop_count(),
        degree_histogram: adj.degree_histogram(),
        regular_degree,
        clique_number: max_clique(adj, None, DEFAULT_NODE_BUDGET)
            .ok()
            .map(|c| c.size),
        vertex_ratio: asymptotic_ratio(g.vertex_count(), g.q(), k * (n - k), divisor),
        degree_ratio,
    }
}
