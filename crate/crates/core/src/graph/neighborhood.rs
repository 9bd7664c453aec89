//! The neighborhood of a vertex `x` of `Γ□(n, k, q)` and an explicit map onto
//! the vertices of `Γ□(n-k, k, q)`.
//!
//! Every neighbor lies in `x⊥`. An isometry `M` from `(x⊥, Q|x⊥)` (in the
//! coordinates of the RREF basis of `x⊥`) to the standard `λdot_{n-k}` carries
//! each neighbor to a subspace of `F_q^{n-k}`.

use serde::{Deserialize, Serialize};

use super::{Adjacency, GraphKind, OrthGraph};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadform::construct_isometry;
use crate::subspace::canonicalize;

/// Induced subgraph on `N(x)`; returns the neighbor indices (ascending) and
/// the induced adjacency in that order.
pub fn neighborhood_subgraph(g: &OrthGraph, x: usize) -> Result<(Vec<usize>, Adjacency)> {
    require_square_with_room(g)?;
    let neighbors: Vec<usize> = g.adjacency().row(x).iter().filter(|&y| y != x).collect();
    let induced = g.adjacency().induced(&neighbors);
    Ok((neighbors, induced))
}

fn require_square_with_room(g: &OrthGraph) -> Result<()> {
    if g.kind() != GraphKind::GammaSquare {
        return Err(Error::WrongGraphKind(
            "neighborhood map needs a gamma-square graph",
        ));
    }
    if 2 * g.k() >= g.n() {
        return Err(Error::InvalidParameters(format!(
            "neighborhoods are empty when k >= n/2 (n = {}, k = {})",
            g.n(),
            g.k()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodMap {
    pub vertex: usize,
    /// Neighbor indices in `g`, ascending.
    pub neighbors: Vec<usize>,
    /// `images[i]` is the index in the target graph of `neighbors[i]`'s image.
    pub images: Vec<usize>,
    /// Isometry from `x⊥` coordinates to `λdot_{n-k}` (acts on column vectors).
    pub isometry: Matrix,
}

/// Maps `N(x)` into the vertices of `target = Γ□(n-k, k, q)`.
pub fn neighborhood_map(g: &OrthGraph, x: usize, target: &OrthGraph) -> Result<NeighborhoodMap> {
    require_square_with_room(g)?;
    if target.kind() != GraphKind::GammaSquare
        || target.n() != g.n() - g.k()
        || target.k() != g.k()
        || target.q() != g.q()
    {
        return Err(Error::VertexSetMismatch);
    }
    let field = g.field();
    let space = g.space();
    let perp = space.orthogonal_complement(g.vertex(x))?;
    let restricted = space.restrict(&perp)?;
    let m = construct_isometry(&restricted, target.space())?.ok_or(Error::NotAnIsometry)?;
    let mt = m.transpose();
    let pivots = perp.pivots();

    let neighbors: Vec<usize> = g.adjacency().row(x).iter().filter(|&y| y != x).collect();
    let images = neighbors
        .iter()
        .map(|&y| {
            let basis = g.vertex(y).basis();
            let coords: Vec<Vec<_>> = basis
                .row_iter()
                .map(|r| pivots.iter().map(|&p| r[p]).collect())
                .collect();
            let a = Matrix::from_rows(pivots.len(), &coords)?;
            let image = canonicalize(field, &a.mul(field, &mt)?)?;
            target
                .vertices()
                .index_of(&image)
                .ok_or(Error::VertexSetMismatch)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NeighborhoodMap {
        vertex: x,
        neighbors,
        images,
        isometry: m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodCheck {
    pub vertex: usize,
    pub degree: usize,
    pub target_vertices: usize,
    /// The map is injective and onto the target vertex set.
    pub bijective: bool,
    /// Pairs `(u, v)` of neighbors whose adjacency differs from that of their images.
    pub mismatches: usize,
}

impl NeighborhoodCheck {
    pub fn passed(&self) -> bool {
        self.bijective && self.mismatches == 0
    }
}

/// Builds the map for `x` and checks it edge by edge against `target`.
pub fn check_neighborhood(
    g: &OrthGraph,
    x: usize,
    target: &OrthGraph,
) -> Result<NeighborhoodCheck> {
    let map = neighborhood_map(g, x, target)?;
    let mut hit = vec![false; target.vertex_count()];
    for &i in &map.images {
        hit[i] = true;
    }
    let distinct = hit.iter().filter(|&&h| h).count();
    let bijective = distinct == map.images.len() && distinct == target.vertex_count();
    let (ga, ta) = (g.adjacency(), target.adjacency());
    let mut mismatches = 0;
    for (a, &u) in map.neighbors.iter().enumerate() {
        for (b, &v) in map.neighbors.iter().enumerate() {
            if ga.has_edge(u, v) != ta.has_edge(map.images[a], map.images[b]) {
                mismatches += 1;
            }
        }
    }
    Ok(NeighborhoodCheck {
        vertex: x,
        degree: map.neighbors.len(),
        target_vertices: target.vertex_count(),
        bijective,
        mismatches,
    })
}
