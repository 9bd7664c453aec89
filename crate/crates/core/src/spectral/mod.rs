//! Spectra of orthogonality graphs, the exact two-step walk identity, eigenvalue
//! interlacing, and the spectral-gap edge guarantee.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, BitSet, GraphKind, LoopPolicy, OrthGraph};
use crate::subspace::gaussian_binomial_u64;

pub mod eigen;

pub use eigen::{jacobi, Eigen, OFF_DIAGONAL_TOLERANCE};

/// Largest vertex count handed to the dense eigensolver by default.
pub const DEFAULT_EIGEN_CAP: usize = 5000;
/// Absolute tolerance for eigenvalue comparisons.
pub const EIGEN_TOLERANCE: f64 = 1e-6;

/// Rounds to 8 decimals (and clears the sign of zero) so reports are stable.
pub fn round8(x: f64) -> f64 {
    let r = (x * 1e8).round() / 1e8;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Spectrum of a bare adjacency matrix with solver diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Descending, unrounded.
    pub values: Vec<f64>,
    /// `max |A v - λ v|` over all computed pairs.
    pub residual: f64,
    pub sweeps: usize,
    /// `|Σλ - trace A|`.
    pub trace_error: f64,
    /// `|Σλ² - (number of ones in A)|`.
    pub square_sum_error: f64,
}

impl Spectrum {
    /// Trace and square-sum identities within `1e-6 · |V|`.
    pub fn validated(&self) -> bool {
        let tol = EIGEN_TOLERANCE * self.values.len().max(1) as f64;
        self.trace_error <= tol && self.square_sum_error <= tol
    }
}

pub fn spectrum(adj: &Adjacency, cap: usize) -> Result<Spectrum> {
    let n = adj.len();
    if n > cap {
        return Err(Error::EigenCapExceeded { count: n, cap });
    }
    if !adj.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let e = jacobi(&adj.to_dense(), n)?;
    let residual = e
        .values
        .iter()
        .zip(&e.vectors)
        .map(|(&l, v)| {
            (0..n)
                .map(|i| (adj.row(i).iter().map(|j| v[j]).sum::<f64>() - l * v[i]).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let trace = adj.loop_count() as f64;
    let ones: usize = (0..n).map(|i| adj.degree(i)).sum();
    Ok(Spectrum {
        trace_error: (e.values.iter().sum::<f64>() - trace).abs(),
        square_sum_error: (e.values.iter().map(|l| l * l).sum::<f64>() - ones as f64).abs(),
        values: e.values,
        residual,
        sweeps: e.sweeps,
    })
}

/// `max(|λ₂|, |λ_min|)`, or 0 for fewer than two eigenvalues.
pub fn second_largest_abs(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    values[1].abs().max(values[values.len() - 1].abs())
}

/// `d̄ = [n-k, k]_q`, `ā = [n-2k, k]_q` (zero when `n < 2k`).
pub fn bar_parameters(n: usize, k: usize, q: u32) -> (u64, u64) {
    let d = gaussian_binomial_u64(n.saturating_sub(k), k, q as u64);
    let a = if n >= 2 * k {
        gaussian_binomial_u64(n - 2 * k, k, q as u64)
    } else {
        0
    };
    (d, a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub kind: GraphKind,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub loops: LoopPolicy,
    pub vertex_count: usize,
    /// Descending, rounded to 1e-8.
    pub eigenvalues: Vec<f64>,
    /// Top eigenvalue.
    pub d: f64,
    pub second_largest_abs: f64,
    pub bar_d: u64,
    pub bar_a: u64,
    /// `√(d̄ - ā)`.
    pub bound: f64,
    /// `second_largest_abs ≤ bound + 1e-6`.
    pub within_bound: bool,
    pub solver_residual: f64,
    pub sweeps: usize,
    /// Trace and square-sum identities hold.
    pub validated: bool,
}

impl SpectralReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,eigenvalue\n");
        for (i, l) in self.eigenvalues.iter().enumerate() {
            s.push_str(&format!("{i},{l:.8}\n"));
        }
        s
    }
}

/// Full spectrum of `g` plus the comparison against `√(d̄ - ā)`.
pub fn eigenvalues(g: &OrthGraph, cap: usize) -> Result<SpectralReport> {
    let s = spectrum(g.adjacency(), cap)?;
    let (bar_d, bar_a) = bar_parameters(g.n(), g.k(), g.q());
    let bound = ((bar_d - bar_a.min(bar_d)) as f64).sqrt();
    let sla = second_largest_abs(&s.values);
    Ok(SpectralReport {
        kind: g.kind(),
        n: g.n(),
        k: g.k(),
        q: g.q(),
        loops: g.loop_policy(),
        vertex_count: g.vertex_count(),
        d: round8(s.values.first().copied().unwrap_or(0.0)),
        second_largest_abs: round8(sla),
        bar_d,
        bar_a,
        bound: round8(bound),
        within_bound: sla <= bound + EIGEN_TOLERANCE,
        solver_residual: s.residual,
        sweeps: s.sweeps,
        validated: s.validated(),
        eigenvalues: s.values.iter().map(|&x| round8(x)).collect(),
    })
}

/// Outcome of comparing a principal submatrix's spectrum with the full one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub big: usize,
    pub small: usize,
    /// Largest amount by which any inequality fails (0 when all hold exactly).
    pub max_violation: f64,
    pub holds: bool,
}

/// Checks `big[i] ≥ small[i] ≥ big[N - m + i]` (descending, 0-based) within `tol`.
pub fn interlaces(big: &[f64], small: &[f64], tol: f64) -> InterlacingReport {
    let (nb, ns) = (big.len(), small.len());
    let mut worst: f64 = 0.0;
    if ns > nb {
        worst = f64::INFINITY;
    } else {
        for (i, &l) in small.iter().enumerate() {
            worst = worst.max(l - big[i]).max(big[nb - ns + i] - l);
        }
    }
    InterlacingReport {
        big: nb,
        small: ns,
        max_violation: worst.max(0.0),
        holds: worst <= tol,
    }
}

/// Interlacing of `sub`'s spectrum inside `sup`'s. The vertices of `sub` must
/// be vertices of `sup` and its adjacency the induced one, so the matrix is a
/// principal submatrix.
pub fn interlacing_check(
    sub: &OrthGraph,
    sub_report: &SpectralReport,
    sup: &OrthGraph,
    sup_report: &SpectralReport,
) -> Result<InterlacingReport> {
    let index: Vec<usize> = sub
        .vertices()
        .iter()
        .map(|x| sup.vertices().index_of(x).ok_or(Error::VertexSetMismatch))
        .collect::<Result<_>>()?;
    if sup.adjacency().induced(&index) != *sub.adjacency() {
        return Err(Error::VertexSetMismatch);
    }
    Ok(interlaces(
        &sup_report.eigenvalues,
        &sub_report.eigenvalues,
        EIGEN_TOLERANCE,
    ))
}

/// `n_* = |V| · secondLargestAbs / d` for a regular graph of degree `d > 0`.
pub fn spectral_gap_threshold(adj: &Adjacency, second_largest_abs: f64) -> Result<f64> {
    match adj.regular_degree() {
        Some(d) if d > 0 => Ok(adj.len() as f64 * second_largest_abs / d as f64),
        _ => Err(Error::IrregularOrDegreeZero),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeGuarantee {
    /// `√(|X||Y|) > n_*`.
    pub guaranteed: bool,
    /// First `(x, y)` with `x ∈ X`, `y ∈ Y` adjacent, if any.
    pub witness: Option<(usize, usize)>,
}

impl EdgeGuarantee {
    /// A guaranteed edge must actually exist.
    pub fn consistent(&self) -> bool {
        !self.guaranteed || self.witness.is_some()
    }
}

/// Exhaustive crossing-edge search between `x` and `y`.
pub fn edge_guarantee(adj: &Adjacency, x: &[usize], y: &[usize], n_star: f64) -> EdgeGuarantee {
    let ymask = BitSet::from_indices(adj.len(), y.iter().copied());
    let mut xs = x.to_vec();
    xs.sort_unstable();
    let witness = xs.iter().find_map(|&u| {
        let mut r = adj.row(u).clone();
        r.intersect_with(&ymask);
        r.first().map(|v| (u, v))
    });
    EdgeGuarantee {
        guaranteed: ((x.len() * y.len()) as f64).sqrt() > n_star,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapTrial {
    pub x_size: usize,
    pub y_size: usize,
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapTestReport {
    pub seed: u64,
    pub vertex_count: usize,
    pub n_star: f64,
    pub trials_requested: usize,
    /// Zero when no pair of vertex subsets clears the threshold.
    pub trials_run: usize,
    pub failures: usize,
    pub trials: Vec<GapTrial>,
}

impl GapTestReport {
    pub fn admissible(&self) -> bool {
        ((self.vertex_count * self.vertex_count) as f64).sqrt() > self.n_star
    }
}

/// Draws `trials` random pairs `(X, Y)` with `√(|X||Y|) > n_*` and searches
/// each for a crossing edge. Sizes are drawn uniformly from the admissible
/// range, then the subsets uniformly of those sizes.
pub fn gap_test(adj: &Adjacency, n_star: f64, trials: usize, seed: u64) -> GapTestReport {
    let nv = adj.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = n_star * n_star;
    let above = |a: usize, b: usize| (a * b) as f64 > target;
    let mut report = GapTestReport {
        seed,
        vertex_count: nv,
        n_star: round8(n_star),
        trials_requested: trials,
        trials_run: 0,
        failures: 0,
        trials: Vec::new(),
    };
    if nv == 0 || !above(nv, nv) {
        return report;
    }
    let min_a = (1..=nv)
        .find(|&a| above(a, nv))
        .expect("nv itself qualifies");
    for _ in 0..trials {
        let a = rng.gen_range(min_a..=nv);
        let min_b = (1..=nv).find(|&b| above(a, b)).expect("b = nv qualifies");
        let b = rng.gen_range(min_b..=nv);
        let x = sample(&mut rng, nv, a).into_vec();
        let y = sample(&mut rng, nv, b).into_vec();
        let e = edge_guarantee(adj, &x, &y, n_star);
        if !e.consistent() {
            report.failures += 1;
        }
        report.trials.push(GapTrial {
            x_size: a,
            y_size: b,
            witness: e.witness,
        });
    }
    report.trials_run = report.trials.len();
    report
}

/// `dim(y ∩ z)` → (value of `(A²)_{y,z}` → number of pairs).
type Histogram = BTreeMap<usize, BTreeMap<u64, u64>>;

/// Two-step walk counts `(A²)_{y,z}` compared with `a·J + (d - a)·I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub loops: LoopPolicy,
    /// `[n-2k, k]_q`.
    pub a: u64,
    /// `[n-k, k]_q`.
    pub d: u64,
    /// `dim(y ∩ z)` → (value of `(A²)_{y,z}` → number of unordered pairs
    /// `{y, z}`). The diagonal pairs are the ones with `dim = k`.
    pub histogram: BTreeMap<usize, BTreeMap<u64, u64>>,
    pub max_abs_residual: u64,
    pub transverse_pairs: u64,
    /// Transverse pairs (`y ≠ z`, `y ∩ z = 0`) with `(A²)_{y,z} ≠ a`.
    pub transverse_failures: u64,
}

impl IdentityResidual {
    pub fn transverse_holds(&self) -> bool {
        self.transverse_failures == 0
    }
}

/// Exact integer `A²` for a `Γ̄` graph, bucketed by `dim(y ∩ z)`.
pub fn identity_residual(g: &OrthGraph) -> Result<IdentityResidual> {
    if g.kind() != GraphKind::GammaBar {
        return Err(Error::WrongGraphKind(
            "walk identity needs a gamma-bar graph",
        ));
    }
    let (n, k, q) = (g.n(), g.k(), g.q());
    let (d, a) = bar_parameters(n, k, q);
    let adj = g.adjacency();
    let field = g.field();
    let nv = g.vertex_count();
    let rows: Vec<(Histogram, u64, u64, u64)> = (0..nv)
        .into_par_iter()
        .map(|y| {
            let mut hist = Histogram::new();
            let (mut worst, mut transverse, mut failures) = (0u64, 0u64, 0u64);
            let yb = g.vertex(y).basis();
            for z in y..nv {
                let walks = adj.row(y).intersection_count(adj.row(z)) as u64;
                let dim = if y == z {
                    k
                } else {
                    let stacked = yb
                        .stack(g.vertex(z).basis())
                        .expect("same ambient dimension");
                    2 * k - stacked.rank(field)
                };
                *hist.entry(dim).or_default().entry(walks).or_insert(0) += 1;
                let expected = if y == z { d } else { a };
                worst = worst.max(walks.abs_diff(expected));
                if y != z && dim == 0 {
                    transverse += 1;
                    if walks != a {
                        failures += 1;
                    }
                }
            }
            (hist, worst, transverse, failures)
        })
        .collect();
    let mut histogram: BTreeMap<usize, BTreeMap<u64, u64>> = BTreeMap::new();
    let (mut max_abs_residual, mut transverse_pairs, mut transverse_failures) = (0, 0, 0);
    for (h, w, t, f) in rows {
        for (dim, values) in h {
            let slot = histogram.entry(dim).or_default();
            for (v, c) in values {
                *slot.entry(v).or_insert(0) += c;
            }
        }
        max_abs_residual = max_abs_residual.max(w);
        transverse_pairs += t;
        transverse_failures += f;
    }
    Ok(IdentityResidual {
        n,
        k,
        q,
        loops: g.loop_policy(),
        a,
        d,
        histogram,
        max_abs_residual,
        transverse_pairs,
        transverse_failures,
    })
}
