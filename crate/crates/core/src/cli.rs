//! The `morsekit` command line.
//!
//! Exit codes: 0 on success (for predicates: the property holds), 1 when a
//! predicate fails or a solver gives up, 2 on unusable input. Malformed files are
//! reported as `path: line N: message`.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::collapse::{collapse_by_gradient, erase, erase_shuffled, is_erasable_subcomplex};
use crate::complex::{free_faces, PointedComplex, SimplicialComplex, VertexId};
use crate::graph::{DirectedGraph, Edge, EdgeOrder, OrientedDeg3Graph};
use crate::homology::betti_gf2;
use crate::io::{
    check_grad, parse_grad, read_dgr, read_grad, read_smax, write_atlas, write_dgr, write_grad, write_smax,
    FormatError,
};
use crate::morse::{critical_profile, DiscreteGradient};
use crate::reductions::{
    amplify, build_k, build_k_full, build_k_tilde, dunce_gradient, l_reduction_audit, mas_to_omas_f, mas_to_omas_g,
    modified_dunce_hat, solution_map_a, witness_gradient, GadgetAtlas,
};
use crate::solvers::{
    er_exact, is_collapsible_exact, min_fas_exact, optimal_matching_with, random_gradient, SolverConfig, SolverError,
};

#[derive(Debug, Parser)]
#[command(name = "morsekit", version, about = "Discrete Morse theory and Morse matching hardness instances")]
struct Cli {
    /// Worker threads for per-instance fan-out (output order is unaffected).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Builtin {
    Lex,
    Rev,
    Random,
}

#[derive(Debug, clap::Args)]
struct OrderArgs {
    /// Edge order for the gadget identifications: lex, rev, random, or a file
    /// listing every edge as `u v`, one per line.
    #[arg(long, default_value = "lex")]
    order: String,
    /// Seed for `--order random` and for fuzzing.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the modified dunce hat. Exit 0.
    Gadget {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write its gradient.
        #[arg(long)]
        gradient: Option<PathBuf>,
    },
    /// Build K(G), or K(G,H) with --subgraph. Exit 0, or 2 on bad input.
    BuildK {
        graph: PathBuf,
        #[arg(long)]
        subgraph: Option<PathBuf>,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        atlas: Option<PathBuf>,
    },
    /// Build the graph-shaped variant of K(G). Exit 0, or 2 on bad input.
    BuildKTilde {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        atlas: Option<PathBuf>,
    },
    /// Wedge n^(c-1) copies of a connected complex. Exit 0, or 2 on bad input.
    Amplify {
        complex: PathBuf,
        #[arg(long)]
        c: u32,
        /// Basepoint; defaults to the least vertex.
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Drop loops and antiparallel pairs. Exit 0.
    OmasF {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift an acyclic subgraph of f(G) back to G. Exit 0, or 2 if A is unusable.
    OmasG {
        graph: PathBuf,
        acyclic: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal Morse matching. Exit 0, or 1 if the budget runs out (the best
    /// gradient found is still written).
    SolveMax {
        complex: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search node budget.
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Erasability number of a 2-complex. Exit 0, or 1 if the budget runs out.
    ErExact {
        complex: PathBuf,
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Minimum feedback arc set. Exit 0, or 1 if the budget runs out.
    FasExact {
        graph: PathBuf,
        /// Write the removed edges as a graph.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Predicate: the 2-complex (or the subcomplex L inside it) is erasable.
    /// Exit 0/1/2.
    Erase {
        complex: PathBuf,
        #[arg(long)]
        subcomplex: Option<PathBuf>,
        /// Erase in a random order instead of the lexicographic one.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Predicate: the complex is collapsible, or with --gradient, collapses to a
    /// point along that gradient. Exit 0/1/2.
    Collapse {
        complex: PathBuf,
        #[arg(long)]
        gradient: Option<PathBuf>,
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Map a gradient on K(G) to an acyclic subgraph of G. Exit 0, or 2.
    MapSolution {
        graph: PathBuf,
        gradient: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gradient on K(G) built from a feedback arc set (default: a minimum one).
    /// Exit 0, or 2 if the set is not a feedback arc set.
    Witness {
        graph: PathBuf,
        #[arg(long)]
        fas: Option<PathBuf>,
        #[arg(long)]
        basepoint: Option<String>,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers over GF(2). Exit 0.
    Betti { complex: PathBuf },
    /// Predicate: the file is a valid gradient on the complex. Exit 0/1/2.
    VerifyGradient { complex: PathBuf, gradient: PathBuf },
    /// L-reduction inequalities for a gradient on K(G) (default: the witness),
    /// plus `--fuzz N` random gradients. Exit 0 if all hold, else 1.
    Audit {
        graph: PathBuf,
        #[arg(long)]
        gradient: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        fuzz: usize,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Size statistics. Exit 0.
    Stats { complex: PathBuf },
}

/// Exit code plus a message for stderr.
struct Failure(i32, String);

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure(2, msg.to_string())
}

fn fails(msg: impl std::fmt::Display) -> Failure {
    Failure(1, msg.to_string())
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn at(path: &Path) -> impl Fn(FormatError) -> Failure + '_ {
    move |e| input(format!("{}: {e}", path.display()))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    read_smax(&read(path)?).map_err(at(path))
}

fn load_graph(path: &Path) -> Result<DirectedGraph, Failure> {
    read_dgr(&read(path)?).map_err(at(path))
}

fn load_oriented(path: &Path) -> Result<OrientedDeg3Graph, Failure> {
    OrientedDeg3Graph::new(load_graph(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_gradient(k: &SimplicialComplex, path: &Path) -> Result<DiscreteGradient, Failure> {
    read_grad(k, &read(path)?).map_err(at(path))
}

fn edge_order(g: &DirectedGraph, args: &OrderArgs) -> Result<EdgeOrder, Failure> {
    match Builtin::from_str(&args.order, false) {
        Ok(Builtin::Lex) => Ok(EdgeOrder::lexicographic(g)),
        Ok(Builtin::Rev) => Ok(EdgeOrder::reverse_lexicographic(g)),
        Ok(Builtin::Random) => Ok(EdgeOrder::shuffled(g, &mut ChaCha8Rng::seed_from_u64(args.seed))),
        Err(_) => {
            let path = Path::new(&args.order);
            let mut seq = Vec::new();
            for (i, line) in read(path)?.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let e = match line.split_whitespace().collect::<Vec<_>>()[..] {
                    [u, v] => Edge::from_tokens(u, v).map_err(|e| e.to_string()),
                    _ => Err("expected 'source target'".to_string()),
                };
                seq.push(e.map_err(|m| input(format!("{}: line {}: {m}", path.display(), i + 1)))?);
            }
            EdgeOrder::from_sequence(g, seq).map_err(|e| input(format!("{}: {e}", path.display())))
        }
    }
}

fn config(nodes: Option<u64>) -> SolverConfig {
    nodes.map(SolverConfig::with_nodes).unwrap_or_default()
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| input(e)),
    }
}

fn vertex(token: &str) -> Result<VertexId, Failure> {
    VertexId::new(token).map_err(input)
}

fn build(g: &OrientedDeg3Graph, args: &OrderArgs) -> Result<(SimplicialComplex, GadgetAtlas), Failure> {
    let order = edge_order(g, args)?;
    build_k_full(g, &order).map_err(input)
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::BudgetExhausted { .. } => fails(e),
        other => input(other),
    }
}

/// Runs the command line `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return 2;
        }
    };
    match dispatch(cli.command, &pool, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn dispatch(command: Command, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Outcome {
    macro_rules! say {
        ($($arg:tt)*) => {
            writeln!(out, $($arg)*).map_err(input)?
        };
    }
    match command {
        Command::Gadget { out: path, gradient } => {
            let g = modified_dunce_hat();
            emit(out, path.as_deref(), &write_smax(g.complex()))?;
            if let Some(p) = gradient {
                emit(out, Some(&p), &write_grad(g.complex(), &dunce_gradient(&g)))?;
            }
            Ok(0)
        }
        Command::BuildK {
            graph,
            subgraph,
            order,
            out: path,
            atlas,
        } => {
            let g = load_oriented(&graph)?;
            let order = edge_order(&g, &order)?;
            let h = match subgraph {
                Some(p) => load_graph(&p)?,
                None => g.graph().clone(),
            };
            let (k, a) = build_k(&g, &h, &order).map_err(input)?;
            emit(out, path.as_deref(), &write_smax(&k))?;
            if let Some(p) = atlas {
                emit(out, Some(&p), &write_atlas(&a))?;
            }
            Ok(0)
        }
        Command::BuildKTilde { graph, out: path, atlas } => {
            let g = load_oriented(&graph)?;
            let (k, a) = build_k_tilde(&g).map_err(input)?;
            emit(out, path.as_deref(), &write_smax(&k))?;
            if let Some(p) = atlas {
                emit(out, Some(&p), &write_atlas(&a))?;
            }
            Ok(0)
        }
        Command::Amplify {
            complex,
            c,
            basepoint,
            out: path,
        } => {
            let k = load_complex(&complex)?;
            let pointed = match basepoint {
                Some(b) => PointedComplex::new(k, vertex(&b)?).map_err(input)?,
                None => PointedComplex::at_least_vertex(k).ok_or_else(|| input("complex is empty"))?,
            };
            let big = amplify(&pointed, c).map_err(input)?;
            emit(out, path.as_deref(), &write_smax(big.complex()))?;
            Ok(0)
        }
        Command::OmasF { graph, out: path } => {
            let o = mas_to_omas_f(&load_graph(&graph)?);
            let text = format!(
                "# antiparallel_pairs={}\n# loops={}\n{}",
                o.antiparallel_pairs,
                o.loops,
                write_dgr(&o.graph)
            );
            emit(out, path.as_deref(), &text)?;
            Ok(0)
        }
        Command::OmasG { graph, acyclic, out: path } => {
            let g = load_graph(&graph)?;
            let a = load_graph(&acyclic)?;
            let lifted = mas_to_omas_g(&g, &a).map_err(input)?;
            emit(out, path.as_deref(), &write_dgr(&lifted))?;
            Ok(0)
        }
        Command::SolveMax { complex, out: path, nodes } => {
            let k = load_complex(&complex)?;
            match optimal_matching_with(&k, &config(nodes)) {
                Ok(m) => {
                    say!("critical={}", m.critical);
                    say!("regular={}", k.len() - m.critical);
                    if let Some(p) = path {
                        emit(out, Some(&p), &write_grad(&k, &m.gradient))?;
                    }
                    Ok(0)
                }
                Err(SolverError::BudgetExhausted { nodes, best }) => {
                    if let (Some(p), Some(v)) = (path, best) {
                        emit(out, Some(&p), &write_grad(&k, &v))?;
                        say!("best_critical={}", k.len() - 2 * v.len());
                    }
                    Err(fails(format!("search budget exhausted after {nodes} nodes")))
                }
                Err(e) => Err(input(e)),
            }
        }
        Command::ErExact { complex, nodes } => {
            let k = load_complex(&complex)?;
            let (er, _) = er_exact(&k, &config(nodes)).map_err(solver_failure)?;
            say!("er={er}");
            Ok(0)
        }
        Command::FasExact { graph, out: path, nodes } => {
            let g = load_graph(&graph)?;
            let fas = min_fas_exact(&g, &config(nodes)).map_err(solver_failure)?;
            say!("minfas={}", fas.len());
            if let Some(p) = path {
                let removed = g.subgraph(&fas).map_err(input)?;
                emit(out, Some(&p), &write_dgr(&removed))?;
            }
            Ok(0)
        }
        Command::Erase { complex, subcomplex, seed } => {
            let k = load_complex(&complex)?;
            let target = match &subcomplex {
                Some(p) => {
                    let l = load_complex(p)?;
                    if let Some(s) = l.simplices().iter().find(|s| !k.contains(s)) {
                        return Err(input(format!("{}: {s} is not in {}", p.display(), complex.display())));
                    }
                    let held = is_erasable_subcomplex(&k, &l).map_err(input)?;
                    say!("erasable={held}");
                    return Ok(if held { 0 } else { 1 });
                }
                None => k,
            };
            let trace = match seed {
                Some(s) => erase_shuffled(&target, &mut ChaCha8Rng::seed_from_u64(s)),
                None => erase(&target),
            }
            .map_err(input)?;
            let left = trace.residue.of_dim(2).len();
            say!("erasable={}", left == 0);
            say!("residual_triangles={left}");
            Ok(if left == 0 { 0 } else { 1 })
        }
        Command::Collapse { complex, gradient, nodes } => {
            let k = load_complex(&complex)?;
            let held = match gradient {
                Some(p) => {
                    let v = load_gradient(&k, &p)?;
                    let trace = collapse_by_gradient(&k, &v).map_err(input)?;
                    say!("leftover_pairs={}", trace.leftover.len());
                    say!("residue_simplices={}", trace.residue.len());
                    trace.is_complete() && trace.residue.len() == 1
                }
                None => is_collapsible_exact(&k, &config(nodes)).map_err(solver_failure)?.collapsible,
            };
            say!("collapsible={held}");
            Ok(if held { 0 } else { 1 })
        }
        Command::MapSolution {
            graph,
            gradient,
            order,
            out: path,
        } => {
            let g = load_oriented(&graph)?;
            let (k, atlas) = build(&g, &order)?;
            let v = load_gradient(&k, &gradient)?;
            let a = solution_map_a(&g, &k, &atlas, &v).map_err(input)?;
            emit(out, path.as_deref(), &write_dgr(&a))?;
            Ok(0)
        }
        Command::Witness {
            graph,
            fas,
            basepoint,
            order,
            out: path,
        } => {
            let g = load_oriented(&graph)?;
            let (k, atlas) = build(&g, &order)?;
            let fas: BTreeSet<Edge> = match fas {
                Some(p) => load_graph(&p)?.edges().clone(),
                None => min_fas_exact(&g, &SolverConfig::default()).map_err(solver_failure)?,
            };
            let p = match basepoint {
                Some(b) => vertex(&b)?,
                None => k.vertices().next().cloned().ok_or_else(|| input("empty graph"))?,
            };
            let v = witness_gradient(&g, &k, &atlas, &fas, &p).map_err(input)?;
            emit(out, path.as_deref(), &write_grad(&k, &v))?;
            Ok(0)
        }
        Command::Betti { complex } => {
            let b = betti_gf2(&load_complex(&complex)?);
            say!("betti: {}", join(&b));
            Ok(0)
        }
        Command::VerifyGradient { complex, gradient } => {
            let k = load_complex(&complex)?;
            let file = parse_grad(&read(&gradient)?).map_err(at(&gradient))?;
            match check_grad(&k, &file) {
                Ok(v) => {
                    say!("valid: {} pairs, critical {}", v.len(), join(&critical_profile(&k, &v).per_dim));
                    Ok(0)
                }
                Err(e) => Err(fails(format!("{}: {e}", gradient.display()))),
            }
        }
        Command::Audit {
            graph,
            gradient,
            fuzz,
            order,
        } => {
            let seed = order.seed;
            let g = load_oriented(&graph)?;
            let (k, atlas) = build(&g, &order)?;
            let cfg = SolverConfig::default();
            let v = match gradient {
                Some(p) => load_gradient(&k, &p)?,
                None => {
                    let fas = min_fas_exact(&g, &cfg).map_err(solver_failure)?;
                    let p = k.vertices().next().cloned().ok_or_else(|| input("empty graph"))?;
                    witness_gradient(&g, &k, &atlas, &fas, &p).map_err(input)?
                }
            };
            let report = l_reduction_audit(&g, &k, &atlas, &v, &cfg).map_err(input)?;
            let mut text = report.to_key_value();
            let mut all = report.holds();
            if fuzz > 0 {
                let results: Vec<bool> = pool.install(|| {
                    (0..fuzz)
                        .into_par_iter()
                        .map(|i| {
                            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                            let v = random_gradient(&k, &mut rng);
                            l_reduction_audit(&g, &k, &atlas, &v, &cfg).map(|r| r.holds()).unwrap_or(false)
                        })
                        .collect()
                });
                let bad = results.iter().filter(|h| !**h).count();
                text.push_str(&format!("fuzzed={fuzz}\nfuzz_failures={bad}\n"));
                all &= bad == 0;
            }
            out.write_all(text.as_bytes()).map_err(input)?;
            Ok(if all { 0 } else { 1 })
        }
        Command::Stats { complex } => {
            let k = load_complex(&complex)?;
            say!("f-vector: {}", join(&k.f_vector()));
            say!("simplices: {}", k.len());
            say!("dimension: {}", k.dim());
            say!("euler: {}", k.euler_characteristic());
            say!("maximal: {}", k.maximal_simplices().len());
            say!("free faces: {}", free_faces(&k).len());
            say!("connected: {}", k.is_connected());
            Ok(0)
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("morsekit").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_bad_flags() {
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["stats", "x", "--bogus"]).0, 2);
        assert_eq!(call(&["no-such-command"]).0, 2);
    }

    #[test]
    fn gadget_to_stdout() {
        let (code, out, _) = call(&["gadget"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 13);
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let (code, _, err) = call(&["betti", "/nonexistent/k.smax"]);
        assert_eq!(code, 2);
        assert!(err.contains("k.smax"));
    }
}
