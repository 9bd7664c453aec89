//! `quadgraph`: build orthogonality graphs of quadratic spaces over finite
//! fields and check their combinatorial and spectral properties.
//!
//! Exit status: 0 when everything checked holds, 1 when a checked claim
//! fails, 2 for usage errors (bad flags, unsupported fields, invalid
//! parameters, exhausted budgets).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quadgraph::field::FieldConfig;
use quadgraph::graph::{
    export, max_clique, orbit_check, reflection_generators, stats, GraphBuilder, GraphKind,
    LoopPolicy,
};
use quadgraph::spectral::{
    eigenvalues, gap_test, identity_residual, spectral_gap_threshold, DEFAULT_EIGEN_CAP,
};
use quadgraph::subspace::cache::SubspaceCache;
use quadgraph::verify::{verify_all, VerifyConfig};
use quadgraph::{FieldSpec, OrthGraph};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "quadgraph",
    version,
    about = "Orthogonality graphs over (F_q^n, ldot_n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph, report its size, and optionally write it to a file.
    Build(Output),
    /// Counts, degrees, clique number and asymptotic ratios.
    Stats(Output),
    /// Exact clique number.
    Cliques {
        #[command(flatten)]
        out: Output,
        /// Stop as soon as a clique of this size is found.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Vertex and arc orbits under the reflection group.
    Orbits(Output),
    /// Full spectrum and the second-eigenvalue bound.
    Spectrum(Output),
    /// Exact two-step walk counts in gamma-bar under both loop policies; the
    /// exit status reflects the policy chosen with --loops.
    VerifyIdentity(Output),
    /// Random subset pairs above the spectral-gap threshold must share an edge.
    GapTest {
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Every registered claim for one (n, k, q).
    VerifyAll(Output),
    /// Write the graph as an edge list (plus vertex table), DOT, or JSON stats.
    Export(Output),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Field order, as `9` or `3^2`.
    #[arg(long)]
    q: String,
    /// Modulus for extension fields: comma-separated coefficients, constant term first.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Largest field order accepted.
    #[arg(long, default_value_t = quadgraph::field::DEFAULT_MAX_ORDER)]
    max_order: u32,
    /// Directory for cached subspace lists.
    #[arg(long, env = "QUADGRAPH_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Which graph: the dot_k-subspace graph or the all-subspace graph.
    #[arg(long, value_enum, default_value_t = GraphArg::Square)]
    graph: GraphArg,
    /// Loops at totally isotropic vertices of gamma-bar.
    #[arg(long, value_enum, default_value_t = LoopArg::Include)]
    loops: LoopArg,
    /// Largest vertex count handed to the eigensolver.
    #[arg(long, default_value_t = DEFAULT_EIGEN_CAP)]
    eigen_cap: usize,
    /// Node budget for exact clique search.
    #[arg(long, default_value_t = quadgraph::graph::DEFAULT_NODE_BUDGET)]
    clique_budget: u64,
    /// Seed for randomized property tests.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct Output {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output. Edge lists also get a
    /// `<file>.vertices` table.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphArg {
    Square,
    Bar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LoopArg {
    Include,
    Exclude,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Edgelist,
}

/// Failure of a checked claim (exit 1), as opposed to an error (exit 2).
struct ClaimFailure(String);

enum Outcome {
    Pass,
    Fail(ClaimFailure),
}

impl Common {
    fn field(&self) -> anyhow::Result<FieldSpec> {
        let config = FieldConfig {
            max_order: self.max_order,
            modulus: self.modulus.clone(),
        };
        let field = match self.q.split_once('^') {
            Some((p, e)) => {
                let p: u32 = p.trim().parse().context("bad --q")?;
                let e: u32 = e.trim().parse().context("bad --q")?;
                FieldSpec::with_config(p, e, &config)?
            }
            None => FieldSpec::from_order_with(self.q.trim().parse().context("bad --q")?, &config)?,
        };
        if self.k == 0 || self.k >= self.n {
            bail!("need n > k >= 1, got n = {}, k = {}", self.n, self.k);
        }
        Ok(field)
    }

    fn loops(&self) -> LoopPolicy {
        match self.loops {
            LoopArg::Include => LoopPolicy::Include,
            LoopArg::Exclude => LoopPolicy::Exclude,
        }
    }

    fn builder(&self) -> GraphBuilder {
        GraphBuilder {
            cache: self.cache_dir.as_ref().map(SubspaceCache::new),
            loops: self.loops(),
        }
    }

    fn kind(&self) -> GraphKind {
        match self.graph {
            GraphArg::Square => GraphKind::GammaSquare,
            GraphArg::Bar => GraphKind::GammaBar,
        }
    }

    fn build(&self) -> anyhow::Result<OrthGraph> {
        let field = self.field()?;
        Ok(self.builder().build(self.kind(), self.n, self.k, &field)?)
    }
}

impl Output {
    fn require(&self, allowed: &[Format]) -> anyhow::Result<()> {
        if !allowed.contains(&self.format) {
            bail!("this command does not support the requested --format");
        }
        Ok(())
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.output {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".vertices");
    PathBuf::from(s)
}

fn write_graph(out: &Output, g: &OrthGraph) -> anyhow::Result<()> {
    match out.format {
        Format::Edgelist => {
            out.emit(&export::edge_list(g))?;
            if let Some(path) = &out.output {
                let side = sidecar(path);
                fs::write(&side, export::vertex_table(g))
                    .with_context(|| format!("writing {}", side.display()))?;
            }
            Ok(())
        }
        Format::Dot => out.emit(&export::dot(g)),
        Format::Json => out.emit(&export::stats_json(g)),
        Format::Csv => bail!("graphs export as edgelist, dot or json"),
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Build(out) => {
            let g = out.common.build()?;
            let summary = json!({
                "kind": g.kind(),
                "n": g.n(),
                "k": g.k(),
                "q": g.q(),
                "loops": g.loop_policy(),
                "vertex_count": g.vertex_count(),
                "edge_count": g.adjacency().edge_count(),
                "loop_count": g.adjacency().loop_count(),
            });
            if out.output.is_some() || out.format != Format::Json {
                write_graph(&out, &g)?;
            }
            if out.output.is_some() || out.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            }
            Ok(Outcome::Pass)
        }
        Command::Stats(out) => {
            out.require(&[Format::Json, Format::Csv])?;
            let g = out.common.build()?;
            let s = stats(&g);
            if out.format == Format::Json {
                out.emit(&pretty(&s))?;
            } else {
                let mut csv = String::from("key,value\n");
                let value = serde_json::to_value(&s)?;
                for (key, v) in value.as_object().expect("struct") {
                    if !v.is_object() {
                        csv.push_str(&format!("{key},{v}\n"));
                    }
                }
                for (deg, count) in &s.degree_histogram {
                    csv.push_str(&format!("degree_{deg},{count}\n"));
                }
                out.emit(&csv)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Cliques { out, cap } => {
            out.require(&[Format::Json])?;
            let g = out.common.build()?;
            let c = max_clique(g.adjacency(), cap, out.common.clique_budget)?;
            let expected = (g.kind() == GraphKind::GammaSquare).then(|| (g.n() - 1) / g.k());
            out.emit(&pretty(&json!({
                "size": c.size,
                "clique": c.clique,
                "nodes": c.nodes,
                "capped": c.capped,
                "expected": expected,
            })))?;
            match expected {
                Some(l) if !c.capped && c.size != l => Ok(Outcome::Fail(ClaimFailure(format!(
                    "clique number {} differs from floor((n-1)/k) = {l}",
                    c.size
                )))),
                _ => Ok(Outcome::Pass),
            }
        }
        Command::Orbits(out) => {
            out.require(&[Format::Json])?;
            let g = out.common.build()?;
            let r = orbit_check(&g, &reflection_generators(g.space()))?;
            out.emit(&pretty(&r))?;
            if !r.vertex_transitive || r.arc_transitive == Some(false) {
                return Ok(Outcome::Fail(ClaimFailure("not transitive".into())));
            }
            Ok(Outcome::Pass)
        }
        Command::Spectrum(out) => {
            out.require(&[Format::Json, Format::Csv])?;
            let g = out.common.build()?;
            let r = eigenvalues(&g, out.common.eigen_cap)?;
            if out.format == Format::Json {
                out.emit(&pretty(&r))?;
            } else {
                out.emit(&r.to_csv())?;
            }
            if g.kind() == GraphKind::GammaSquare && !r.within_bound {
                return Ok(Outcome::Fail(ClaimFailure(format!(
                    "second largest absolute eigenvalue {} exceeds {}",
                    r.second_largest_abs, r.bound
                ))));
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyIdentity(out) => {
            out.require(&[Format::Json])?;
            let c = &out.common;
            let field = c.field()?;
            let bar = c.builder().gamma_bar(c.n, c.k, &field)?;
            let include = identity_residual(&bar.with_loop_policy(LoopPolicy::Include))?;
            let exclude = identity_residual(&bar.with_loop_policy(LoopPolicy::Exclude))?;
            out.emit(&pretty(&json!({ "include": include, "exclude": exclude })))?;
            // both policies are reported; the one selected by --loops is checked
            let checked = match c.loops() {
                LoopPolicy::Include => &include,
                LoopPolicy::Exclude => &exclude,
            };
            if !checked.transverse_holds() {
                return Ok(Outcome::Fail(ClaimFailure(format!(
                    "{} transverse pairs have a walk count other than a = {}",
                    checked.transverse_failures, checked.a
                ))));
            }
            Ok(Outcome::Pass)
        }
        Command::GapTest { out, trials } => {
            out.require(&[Format::Json])?;
            let g = out.common.build()?;
            let r = eigenvalues(&g, out.common.eigen_cap)?;
            let n_star = spectral_gap_threshold(g.adjacency(), r.second_largest_abs)?;
            let report = gap_test(g.adjacency(), n_star, trials, out.common.seed);
            out.emit(&pretty(&report))?;
            if report.trials_run == 0 {
                eprintln!(
                    "no vertex subsets satisfy sqrt(|X||Y|) > n_* = {} (|V| = {})",
                    report.n_star, report.vertex_count
                );
            }
            if report.failures > 0 {
                return Ok(Outcome::Fail(ClaimFailure(format!(
                    "{} trials found no crossing edge",
                    report.failures
                ))));
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyAll(out) => {
            out.require(&[Format::Json])?;
            let c = &out.common;
            let field = c.field()?;
            let cfg = VerifyConfig {
                loops: c.loops(),
                eigen_cap: c.eigen_cap,
                clique_budget: c.clique_budget,
                seed: c.seed,
                cache: c.cache_dir.as_ref().map(SubspaceCache::new),
                ..VerifyConfig::default()
            };
            let report = verify_all(c.n, c.k, &field, &cfg)?;
            out.emit(&report.to_json())?;
            let failing: Vec<String> = report
                .failures()
                .map(|f| {
                    format!(
                        "{}: expected {}, observed {}",
                        f.claim_id, f.expected, f.observed
                    )
                })
                .collect();
            if failing.is_empty() {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::Fail(ClaimFailure(failing.join("\n"))))
            }
        }
        Command::Export(out) => {
            let g = out.common.build()?;
            write_graph(&out, &g)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail(ClaimFailure(msg))) => {
            eprintln!("claim failed:\n{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
