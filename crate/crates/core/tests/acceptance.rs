//! Acceptance suite: exact small-instance verification of every structural
//! and spectral claim, plus banded asymptotic ratios. Prints one
//! `criterion N: PASS|FAIL` line per criterion and exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use quadgraph::graph::{
    asymptotic_ratio, build_gamma_bar, build_gamma_square, census_gamma_square, check_neighborhood,
    for_each_clique, max_clique, orbit_check, reflection_generators, Adjacency,
    DEFAULT_NODE_BUDGET,
};
use quadgraph::spectral::{
    eigenvalues, gap_test, identity_residual, interlacing_check, spectral_gap_threshold, spectrum,
    DEFAULT_EIGEN_CAP,
};
use quadgraph::verify::{classification_table, clique_sum_is_euclidean, RATIO_BAND};
use quadgraph::{enumerate_subspaces, gaussian_binomial, FieldSpec, LoopPolicy};

type Outcome = Result<(), String>;

fn field(q: u32) -> FieldSpec {
    FieldSpec::from_order(q).expect("supported field")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn enumeration_exactness() -> Outcome {
    for q in [3u32, 5] {
        let f = field(q);
        for n in 0..=5 {
            for k in 0..=n {
                let count = enumerate_subspaces(n, k, &f).len();
                let expected = gaussian_binomial(n, k, q as u64);
                ensure(expected == count.into(), || {
                    format!("({n},{k},{q}): enumerated {count}, expected {expected}")
                })?;
            }
        }
    }
    let count = enumerate_subspaces(4, 2, &field(3)).len();
    ensure(count == 130, || format!("(4,2,3): {count} subspaces"))
}

fn classification() -> Outcome {
    for q in [3u32, 7, 11] {
        for row in classification_table(&field(q), &[3, 5, 7]) {
            ensure(row.expected == row.observed, || {
                format!(
                    "q = {q}, dim {} with tail {}: expected {}, observed {}",
                    row.dim, row.tail, row.expected, row.observed
                )
            })?;
        }
    }
    Ok(())
}

fn edgeless_when_k_at_least_half_n() -> Outcome {
    let f = field(3);
    for (n, k) in [(4, 2), (5, 3), (6, 3)] {
        let g = build_gamma_square(n, k, &f).map_err(|e| e.to_string())?;
        let edges = g.adjacency().edge_count();
        println!(
            "  gamma-square({n},{k},3): {} vertices, {edges} edges",
            g.vertex_count()
        );
        ensure(edges == 0, || format!("({n},{k},3) has {edges} edges"))?;
    }
    Ok(())
}

fn clique_numbers() -> Outcome {
    let f = field(3);
    for (n, k, expected) in [(4, 1, 3), (5, 2, 2), (7, 2, 3)] {
        let t = Instant::now();
        let g = build_gamma_square(n, k, &f).map_err(|e| e.to_string())?;
        let adj = g.adjacency();
        let search = match max_clique(adj, None, DEFAULT_NODE_BUDGET) {
            Ok(s) => s,
            Err(e) => {
                println!("  ({n},{k},3): skipped, {e}");
                continue;
            }
        };
        ensure(search.size == expected, || {
            format!(
                "({n},{k},3): clique number {}, expected {expected}",
                search.size
            )
        })?;
        let mut bad = 0u64;
        let count = for_each_clique(adj, search.size, DEFAULT_NODE_BUDGET, |c| {
            if !clique_sum_is_euclidean(&g, c) {
                bad += 1;
            }
        });
        match count {
            Ok(count) => {
                println!(
                    "  ({n},{k},3): clique number {}, {count} maximum cliques, {:.1?}",
                    search.size,
                    t.elapsed()
                );
                ensure(bad == 0, || {
                    format!("({n},{k},3): {bad} maximum cliques with a non-dot sum")
                })?;
            }
            Err(e) => println!("  ({n},{k},3): maximum-clique sums skipped, {e}"),
        }
    }
    Ok(())
}

fn regular_degree() -> Outcome {
    for (n, k, q) in [(5, 2, 3u32), (5, 1, 5)] {
        let f = field(q);
        let g = build_gamma_square(n, k, &f).map_err(|e| e.to_string())?;
        let expected = census_gamma_square(n - k, k, &f)
            .map_err(|e| e.to_string())?
            .vertex_count;
        let degree = g.adjacency().regular_degree();
        println!(
            "  ({n},{k},{q}): degree {degree:?}, |V(gamma-square({},{k},{q}))| = {expected}",
            n - k
        );
        ensure(degree == Some(expected), || {
            format!("({n},{k},{q}): degree {degree:?}, expected regular of degree {expected}")
        })?;
    }
    Ok(())
}

fn neighborhood_isomorphism() -> Outcome {
    let f = field(3);
    let g = build_gamma_square(5, 2, &f).map_err(|e| e.to_string())?;
    let target = build_gamma_square(3, 2, &f).map_err(|e| e.to_string())?;
    for x in 0..g.vertex_count() {
        let check = check_neighborhood(&g, x, &target).map_err(|e| e.to_string())?;
        ensure(check.passed(), || format!("vertex {x}: {check:?}"))?;
    }
    println!(
        "  {} neighborhoods mapped onto {} vertices",
        g.vertex_count(),
        target.vertex_count()
    );
    Ok(())
}

fn transitivity() -> Outcome {
    let f = field(3);
    for (n, k, arcs) in [(4, 1, true), (5, 2, false)] {
        let g = build_gamma_square(n, k, &f).map_err(|e| e.to_string())?;
        let r = orbit_check(&g, &reflection_generators(g.space())).map_err(|e| e.to_string())?;
        println!(
            "  ({n},{k},3): vertex orbit {}/{}, arc orbit {:?}/{}",
            r.vertex_orbit_size, r.vertex_count, r.arc_orbit_size, r.arc_count
        );
        ensure(r.vertex_transitive, || {
            format!("({n},{k},3) not vertex-transitive")
        })?;
        if arcs {
            ensure(r.arc_transitive == Some(true), || {
                format!("({n},{k},3) not arc-transitive")
            })?;
        }
    }
    Ok(())
}

fn walk_identity() -> Outcome {
    let f = field(3);
    for (n, k) in [(4, 1), (5, 2)] {
        let g = build_gamma_bar(n, k, &f, LoopPolicy::Include).map_err(|e| e.to_string())?;
        let r = identity_residual(&g).map_err(|e| e.to_string())?;
        println!(
            "  gamma-bar({n},{k},3): a = {}, d = {}, histogram {}",
            r.a,
            r.d,
            serde_json::to_string(&r.histogram).expect("serializable")
        );
        ensure(r.transverse_holds(), || {
            format!(
                "({n},{k},3): {} of {} transverse pairs differ",
                r.transverse_failures, r.transverse_pairs
            )
        })?;
    }
    Ok(())
}

fn second_eigenvalue_bound() -> Outcome {
    let f = field(3);
    let g = build_gamma_square(5, 2, &f).map_err(|e| e.to_string())?;
    let bar = build_gamma_bar(5, 2, &f, LoopPolicy::Include).map_err(|e| e.to_string())?;
    let r = eigenvalues(&g, DEFAULT_EIGEN_CAP).map_err(|e| e.to_string())?;
    let rb = eigenvalues(&bar, DEFAULT_EIGEN_CAP).map_err(|e| e.to_string())?;
    let bound = 13f64.sqrt() + 1e-6;
    println!(
        "  second largest |eigenvalue| {} vs bound {bound}",
        r.second_largest_abs
    );
    ensure(r.validated && rb.validated, || {
        "eigensolver validation failed".into()
    })?;
    ensure(r.second_largest_abs <= bound, || {
        format!("{} > {bound}", r.second_largest_abs)
    })?;
    let inter = interlacing_check(&g, &r, &bar, &rb).map_err(|e| e.to_string())?;
    println!(
        "  interlacing {} in {}: max violation {}",
        inter.small, inter.big, inter.max_violation
    );
    ensure(inter.holds, || {
        format!("interlacing violated by {}", inter.max_violation)
    })
}

fn spectral_gap_property() -> Outcome {
    let g = build_gamma_square(5, 2, &field(3)).map_err(|e| e.to_string())?;
    let r = eigenvalues(&g, DEFAULT_EIGEN_CAP).map_err(|e| e.to_string())?;
    let n_star =
        spectral_gap_threshold(g.adjacency(), r.second_largest_abs).map_err(|e| e.to_string())?;
    let report = gap_test(g.adjacency(), n_star, 200, 0);
    println!(
        "  n_* = {n_star:.6}, |V| = {}, admissible trials {}/200, failures {}",
        report.vertex_count, report.trials_run, report.failures
    );
    ensure(report.failures == 0, || {
        format!("{} trials without a crossing edge", report.failures)
    })?;
    ensure(report.trials_run == 200, || {
        format!(
            "only {} admissible pairs: sqrt(|X||Y|) <= |V| = {} <= n_* = {n_star:.6} for every X, Y",
            report.trials_run, report.vertex_count
        )
    })
}

fn asymptotic_bands() -> Outcome {
    let mut misses = Vec::new();
    for q in [3u32, 5, 7, 9] {
        let f = field(q);
        for (n, k) in [(4usize, 1usize), (5, 1), (5, 2)] {
            let c = census_gamma_square(n, k, &f).map_err(|e| e.to_string())?;
            let (ni, ki) = (n as i64, k as i64);
            let vr = asymptotic_ratio(c.vertex_count, q, ki * (ni - ki), 2.0);
            let degree = c.first_degree.unwrap_or(0);
            let dr = asymptotic_ratio(degree, q, ki * (ni - 2 * ki), 2.0);
            println!(
                "  ({n},{k},{q}): |V| = {}, ratio {vr:.4}; degree {degree}, ratio {dr:.4}",
                c.vertex_count
            );
            for (name, r) in [("vertex", vr), ("degree", dr)] {
                if !(RATIO_BAND.0..=RATIO_BAND.1).contains(&r) {
                    misses.push(format!("({n},{k},{q}) {name} ratio {r:.4}"));
                }
            }
        }
    }
    ensure(misses.is_empty(), || {
        format!("outside [0.8, 1.25]: {}", misses.join(", "))
    })
}

fn eigensolver_fixtures() -> Outcome {
    let check = |name: &str, adj: Adjacency, mut expected: Vec<f64>| -> Outcome {
        let s = spectrum(&adj, DEFAULT_EIGEN_CAP).map_err(|e| e.to_string())?;
        expected.sort_by(|a, b| b.total_cmp(a));
        let worst = s
            .values
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        ensure(s.values.len() == expected.len() && worst <= 1e-8, || {
            format!("{name}: error {worst:e}")
        })
    };
    for m in 1..=50usize {
        let mut k = vec![-1.0; m];
        k[0] = m as f64 - 1.0;
        check(&format!("K_{m}"), Adjacency::complete(m), k)?;
        if m >= 3 {
            let c = (0..m)
                .map(|j| 2.0 * (2.0 * PI * j as f64 / m as f64).cos())
                .collect();
            check(&format!("C_{m}"), Adjacency::cycle(m), c)?;
        }
        if m >= 2 {
            let r = ((m - 1) as f64).sqrt();
            let mut s = vec![0.0; m];
            s[0] = r;
            s[1] = -r;
            check(&format!("S_{m}"), Adjacency::star(m), s)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 12] = [
        (1, enumeration_exactness),
        (2, classification),
        (3, edgeless_when_k_at_least_half_n),
        (4, clique_numbers),
        (5, regular_degree),
        (6, neighborhood_isomorphism),
        (7, transitivity),
        (8, walk_identity),
        (9, second_eigenvalue_bound),
        (10, spectral_gap_property),
        (11, asymptotic_bands),
        (12, eigensolver_fixtures),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(()) => println!("criterion {id}: PASS ({:.1?})", t.elapsed()),
            Err(msg) => {
                println!("criterion {id}: FAIL ({:.1?}): {msg}", t.elapsed());
                failed.push(id);
            }
        }
    }
    println!(
        "acceptance: {} of 12 passed in {:.1?}",
        12 - failed.len(),
        start.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
