//! Orbits of the isometry group (generated by reflections) on vertices and arcs.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::OrthGraph;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::matrix::Matrix;
use crate::quadform::QuadraticSpace;

/// Arc orbits are only computed when the graph has at most this many arcs.
pub const ARC_CHECK_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub generators: usize,
    pub vertex_count: usize,
    pub vertex_orbit_size: usize,
    pub vertex_transitive: bool,
    /// Ordered adjacent pairs of distinct vertices.
    pub arc_count: usize,
    /// `None` when the arc check was skipped for size.
    pub arc_orbit_size: Option<usize>,
    pub arc_transitive: Option<bool>,
}

/// Reflections in every anisotropic vector, one per projective point
/// (first nonzero coordinate equal to one).
pub fn reflection_generators(space: &QuadraticSpace) -> Vec<Matrix> {
    let f = space.field();
    let n = space.dim();
    let q = f.order() as usize;
    let mut out = Vec::new();
    let mut v = vec![Fq::ZERO; n];
    for lead in 0..n {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for code in 0..total {
            v.iter_mut().for_each(|x| *x = Fq::ZERO);
            v[lead] = Fq::ONE;
            let mut c = code;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = f.element(c % q).expect("index below q");
                c /= q;
            }
            if let Ok(r) = space.reflection(&v) {
                out.push(r);
            }
        }
    }
    out
}

/// Vertex permutation induced by each generator.
fn permutations(g: &OrthGraph, generators: &[Matrix]) -> Result<Vec<Vec<usize>>> {
    let field = g.field();
    generators
        .iter()
        .map(|m| {
            if !g.space().preserves(m) {
                return Err(Error::NotAnIsometry);
            }
            g.vertices()
                .iter()
                .map(|x| {
                    let y = x.image(field, m)?;
                    g.vertices().index_of(&y).ok_or(Error::NotAnIsometry)
                })
                .collect()
        })
        .collect()
}

/// Breadth-first closure of vertex 0 and of the first arc under the
/// generators. Single-threaded so the frontier order is deterministic.
pub fn orbit_check(g: &OrthGraph, generators: &[Matrix]) -> Result<OrbitReport> {
    let perms = permutations(g, generators)?;
    let nv = g.vertex_count();
    let adj = g.adjacency();

    let mut seen = vec![false; nv];
    let mut orbit = 0;
    if nv > 0 {
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            orbit += 1;
            for p in &perms {
                if !seen[p[u]] {
                    seen[p[u]] = true;
                    queue.push_back(p[u]);
                }
            }
        }
    }

    let arc_count = 2 * adj.edge_count();
    let (arc_orbit_size, arc_transitive) = if arc_count > ARC_CHECK_LIMIT {
        (None, None)
    } else {
        let first = (0..nv).find_map(|u| adj.row(u).iter().find(|&v| v != u).map(|v| (u, v)));
        let mut seen = HashSet::new();
        if let Some(a) = first {
            let mut queue = VecDeque::from([a]);
            seen.insert(a);
            while let Some((u, v)) = queue.pop_front() {
                for p in &perms {
                    let b = (p[u], p[v]);
                    if seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        (Some(seen.len()), Some(seen.len() == arc_count))
    };

    Ok(OrbitReport {
        generators: generators.len(),
        vertex_count: nv,
        vertex_orbit_size: orbit,
        vertex_transitive: orbit == nv,
        arc_count,
        arc_orbit_size,
        arc_transitive,
    })
}
