//! Command-line interface over the library.
//!
//! Exit codes: 0 on success, 1 when a verification or cross-check fails,
//! 2 on usage errors and unsatisfiable requests. All output is deterministic
//! for a given invocation; rationals print as `p/q` unless `--decimal` asks
//! for a fixed-point rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use revlex01::bits::BitVector01;
use revlex01::bounds::{self, PyramidPolytope, SWEEP_CSV_HEADER};
use revlex01::expansion;
use revlex01::facets::{self, IneqTag, LinearInequality};
use revlex01::graph;
use revlex01::oracle;
use revlex01::polytope::RevlexPolytope;
use revlex01::rat::{format_decimal, format_rational, parse_rational};
use revlex01::verify;
use revlex01::Error;

#[derive(Parser)]
#[command(
    name = "revlex01",
    version,
    about = "Revlex-initial 0/1-polytopes: descriptions, graphs, optimization, expansion certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a polytope: dimensions, signature, blocks, facet and edge counts
    Describe(DescribeArgs),
    /// Print a linear description
    Facets(FacetsArgs),
    /// Print the polytope graph
    Graph(GraphArgs),
    /// Maximize a rational objective over the polytope
    Maximize(MaximizeArgs),
    /// Certify an edge-expansion lower bound
    Expansion(ExpansionArgs),
    /// Describe the pyramid realization for a dimension and vertex count
    Pyramid(PyramidArgs),
    /// Write pyramid statistics for every admissible n at one dimension
    Sweep(SweepArgs),
    /// Run the oracle-equivalence verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DescribeArgs {
    /// Vertex count; implies the minimal ambient dimension
    #[arg(long, conflicts_with = "v", required_unless_present = "v")]
    n: Option<u64>,
    /// Spec vector as a bit string, coordinate x_0 first
    #[arg(long)]
    v: Option<String>,
    /// Emit a JSON object instead of text lines
    #[arg(long)]
    json: bool,
    /// Render rationals with this many decimal digits
    #[arg(long, value_name = "DIGITS")]
    decimal: Option<usize>,
}

#[derive(Args)]
struct FacetsArgs {
    /// Vertex count; implies the minimal ambient dimension
    #[arg(long)]
    n: u64,
    /// Print the full (possibly redundant) system
    #[arg(long, conflicts_with = "minimal")]
    full: bool,
    /// Print the minimal description (the default)
    #[arg(long)]
    minimal: bool,
    /// Project a non-full-dimensional polytope onto its affine hull first
    #[arg(long)]
    project: bool,
    #[arg(long, value_enum, default_value_t = FacetFormat::Text)]
    format: FacetFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum FacetFormat {
    Text,
    Json,
}

#[derive(Args)]
struct GraphArgs {
    /// Vertex count; implies the minimal ambient dimension
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Dot,
    Json,
}

#[derive(Args)]
struct MaximizeArgs {
    /// Vertex count; implies the minimal ambient dimension
    #[arg(long)]
    n: u64,
    /// Comma-separated rational coefficients "c0,c1,..."
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    /// Render rationals with this many decimal digits
    #[arg(long, value_name = "DIGITS")]
    decimal: Option<usize>,
}

#[derive(Args)]
struct ExpansionArgs {
    /// Vertex count
    #[arg(long)]
    n: u64,
    /// Also compute the exact expansion by exhaustive cuts (small n only)
    #[arg(long)]
    exact: bool,
    /// Audit the aggregated flow against per-pair reconstructions
    #[arg(long)]
    audit: bool,
    /// Render rationals with this many decimal digits
    #[arg(long, value_name = "DIGITS")]
    decimal: Option<usize>,
}

#[derive(Args)]
struct PyramidArgs {
    /// Ambient (pyramid) dimension
    #[arg(long)]
    d: usize,
    /// Total vertex count, d+1 <= n <= 2^d
    #[arg(long)]
    n: u64,
    /// Emit a JSON object instead of text lines
    #[arg(long)]
    json: bool,
    /// Render rationals with this many decimal digits
    #[arg(long, value_name = "DIGITS")]
    decimal: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Ambient dimension to sweep
    #[arg(long)]
    d: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Cross-check certificates against exhaustive expansion for n up to this
    #[arg(long, value_name = "M")]
    exact_expansion_max: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest ambient dimension the exhaustive checks sweep
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=62))]
    max_d: u64,
    /// Largest vertex count the per-n checks sweep
    #[arg(long, default_value_t = 128)]
    max_n: u64,
}

enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`revlex01 graph ... | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}", e);
            match e {
                Error::CheckFailed(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Describe(a) => describe(a),
        Command::Facets(a) => facets_cmd(a),
        Command::Graph(a) => graph_cmd(a),
        Command::Maximize(a) => maximize(a),
        Command::Expansion(a) => expansion_cmd(a),
        Command::Pyramid(a) => pyramid(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn render(r: &BigRational, decimal: Option<usize>) -> String {
    match decimal {
        Some(k) => format_decimal(r, k),
        None => format_rational(r),
    }
}

fn bracket_list(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn u128_json(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(x.to_string()),
    }
}

fn polytope_from(n: Option<u64>, v: Option<&str>) -> Result<RevlexPolytope, Error> {
    match (n, v) {
        (Some(n), None) => RevlexPolytope::from_vertex_count(n),
        (None, Some(s)) => RevlexPolytope::from_spec_vector(s.parse::<BitVector01>()?),
        _ => Err(Error::Parse("exactly one of --n and --v is required".into())),
    }
}

fn describe(a: DescribeArgs) -> Result<ExitCode, Failure> {
    let p = polytope_from(a.n, a.v.as_deref())?;
    let block_dims: Vec<usize> = p.blocks().iter().map(|b| b.cube_dim).collect();
    let num_facets = if p.is_full_dimensional() { Some(facets::facet_count(&p)?) } else { None };
    let num_edges = graph::edge_count_formula(&p);
    let avg = render(&graph::average_degree(&p), a.decimal);
    if a.json {
        let obj = json!({
            "n": p.n(),
            "d": p.d(),
            "v": p.spec_vector().to_string(),
            "dim": p.dim(),
            "signature": p.signature().ones(),
            "block_dims": block_dims,
            "full_dimensional": p.is_full_dimensional(),
            "num_facets": num_facets,
            "num_edges": u128_json(num_edges),
            "avg_degree": avg,
        });
        println!("{}", obj);
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", p.n());
        let _ = writeln!(out, "v: {}", p.spec_vector());
        let _ = writeln!(out, "d: {}", p.d());
        let _ = writeln!(out, "dim: {}", p.dim());
        let _ = writeln!(out, "full-dimensional: {}", if p.is_full_dimensional() { "yes" } else { "no" });
        let _ = writeln!(out, "signature: {}", bracket_list(p.signature().ones()));
        let _ = writeln!(out, "block-dims: {}", bracket_list(&block_dims));
        match num_facets {
            Some(f) => {
                let _ = writeln!(out, "num-facets: {}", f);
            }
            None => {
                let _ = writeln!(out, "num-facets: n/a (not full-dimensional)");
            }
        }
        let _ = writeln!(out, "num-edges: {}", num_edges);
        let _ = writeln!(out, "avg-degree: {}", avg);
        print!("{}", out);
    }
    Ok(ExitCode::SUCCESS)
}

/// Box rows of the unit cube in `k` coordinates, the projected description
/// of a polytope whose vertex set fills `{0,1}^k`.
fn cube_rows(k: usize) -> Vec<LinearInequality> {
    let mut rows = Vec::with_capacity(2 * k);
    for i in 0..k {
        let mut coeffs = vec![0i64; k];
        coeffs[i] = -1;
        rows.push(LinearInequality { coeffs, rhs: 0, tag: IneqTag::LowerBound(i) });
    }
    for i in 0..k {
        let mut coeffs = vec![0i64; k];
        coeffs[i] = 1;
        rows.push(LinearInequality { coeffs, rhs: 1, tag: IneqTag::UpperBound(i) });
    }
    rows
}

fn facets_cmd(a: FacetsArgs) -> Result<ExitCode, Failure> {
    let p = RevlexPolytope::from_vertex_count(a.n)?;
    let rows = if a.project && !p.is_full_dimensional() {
        // With --n the only degenerate case is n = 2^k: the projection onto
        // the affine hull is the unit cube in dim(P) coordinates.
        cube_rows(p.dim())
    } else if a.full {
        facets::full_description(&p)
    } else if p.is_full_dimensional() {
        facets::minimal_description(&p)?
    } else {
        eprintln!(
            "error: P({}) is not full-dimensional in ambient dimension {}; \
             use --full for the redundant system or --project to describe the projection",
            a.n,
            p.d()
        );
        return Ok(ExitCode::from(2));
    };
    match a.format {
        FacetFormat::Text => {
            let mut out = String::new();
            for row in &rows {
                let _ = writeln!(out, "{}", row);
            }
            print!("{}", out);
        }
        FacetFormat::Json => println!("{}", serde_json::to_string(&rows).expect("serialize")),
    }
    Ok(ExitCode::SUCCESS)
}

fn graph_cmd(a: GraphArgs) -> Result<ExitCode, Failure> {
    let p = RevlexPolytope::from_vertex_count(a.n)?;
    let g = graph::build_graph(&p)?;
    let edges = g.edges();
    let mut out = String::new();
    match a.format {
        GraphFormat::Edgelist => {
            for (u, v) in &edges {
                let _ = writeln!(out, "{} {}", u, v);
            }
        }
        GraphFormat::Dot => {
            let _ = writeln!(out, "graph G {{");
            for (u, v) in &edges {
                let _ = writeln!(out, "  {} -- {};", u, v);
            }
            let _ = writeln!(out, "}}");
        }
        GraphFormat::Json => {
            let pairs: Vec<[u64; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
            let obj = json!({
                "n": g.vertex_count(),
                "num_edges": u128_json(g.edge_count()),
                "edges": pairs,
            });
            let _ = writeln!(out, "{}", obj);
        }
    }
    print!("{}", out);
    Ok(ExitCode::SUCCESS)
}

fn maximize(a: MaximizeArgs) -> Result<ExitCode, Failure> {
    let p = RevlexPolytope::from_vertex_count(a.n)?;
    let c: Vec<BigRational> = a
        .c
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    let (value, arg) = p.maximize(&c)?;
    println!("value: {}", render(&value, a.decimal));
    println!("argmax: {}", arg);
    println!("index: {}", arg.to_index());
    Ok(ExitCode::SUCCESS)
}

fn expansion_cmd(a: ExpansionArgs) -> Result<ExitCode, Failure> {
    let cert = expansion::certify_expansion(a.n, a.audit)?;
    let exact = if a.exact {
        let p = RevlexPolytope::from_vertex_count(a.n)?;
        let g = graph::build_graph(&p)?;
        let (h, _) = oracle::brute_expansion(&g)?;
        if cert.lower_bound > h {
            return Err(Error::CheckFailed(format!(
                "certified bound {} exceeds the exact expansion {}",
                format_rational(&cert.lower_bound),
                format_rational(&h)
            ))
            .into());
        }
        Some(h)
    } else {
        None
    };
    let exact_field = match &exact {
        Some(h) => format!("\"{}\"", render(h, a.decimal)),
        None => "null".to_string(),
    };
    println!(
        "{{\"n\":{},\"phi_max\":\"{}\",\"lower_bound\":\"{}\",\"exact\":{},\"audited\":{}}}",
        cert.n,
        render(&cert.phi_max, a.decimal),
        render(&cert.lower_bound, a.decimal),
        exact_field,
        cert.audited
    );
    Ok(ExitCode::SUCCESS)
}

fn pyramid(a: PyramidArgs) -> Result<ExitCode, Failure> {
    let p = PyramidPolytope::new(a.d, a.n)?;
    let cert = p.expansion_certificate()?;
    let avg = render(&p.average_degree(), a.decimal);
    let lb = render(&cert.lower_bound, a.decimal);
    if a.json {
        let obj = json!({
            "d": p.dim(),
            "n": p.n(),
            "d_tilde": p.base_dim(),
            "n_tilde": p.base_vertex_count(),
            "apexes": p.apex_count(),
            "num_facets": p.facet_count(),
            "num_edges": u128_json(p.edge_count()),
            "avg_degree": avg,
            "expansion_lb": lb,
        });
        println!("{}", obj);
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "d: {}", p.dim());
        let _ = writeln!(out, "n: {}", p.n());
        let _ = writeln!(out, "d-tilde: {}", p.base_dim());
        let _ = writeln!(out, "n-tilde: {}", p.base_vertex_count());
        let _ = writeln!(out, "apexes: {}", p.apex_count());
        let _ = writeln!(out, "num-facets: {}", p.facet_count());
        let _ = writeln!(out, "num-edges: {}", p.edge_count());
        let _ = writeln!(out, "avg-degree: {}", avg);
        let _ = writeln!(out, "expansion-lb: {}", lb);
        print!("{}", out);
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_cmd(a: SweepArgs) -> Result<ExitCode, Failure> {
    let rows = bounds::sweep(a.d)?;
    let mut csv = String::with_capacity(64 * (rows.len() + 1));
    let _ = writeln!(csv, "{}", SWEEP_CSV_HEADER);
    for row in &rows {
        let _ = writeln!(csv, "{}", row.csv_line());
    }
    std::fs::write(&a.out, csv)?;
    if let Some(m) = a.exact_expansion_max {
        for row in &rows {
            if row.n > m {
                break;
            }
            let p = PyramidPolytope::new(a.d, row.n)?;
            let (h, _) = oracle::brute_expansion(&p.graph()?)?;
            if row.expansion_lb > h {
                return Err(Error::CheckFailed(format!(
                    "d={}, n={}: certified bound {} exceeds the exact expansion {}",
                    a.d,
                    row.n,
                    format_rational(&row.expansion_lb),
                    format_rational(&h)
                ))
                .into());
            }
        }
    }
    println!("wrote {} rows for d={} to {}", rows.len(), a.d, a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode, Failure> {
    let mut failed = false;
    for (name, result) in verify::run_suite(a.max_d as usize, a.max_n) {
        match result {
            Ok(detail) => println!("check {}: ok - {}", name, detail),
            Err(e) => {
                failed = true;
                println!("check {}: FAILED - {}", name, e);
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
