//! Command-line front end. `run` parses argv, executes one subcommand and
//! returns the exit code together with what should go to stdout and stderr.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::arith::{render, Q};
use crate::cw::{cw_multiplicities, cyclic_exponents, invert_cw, DatumOracle};
use crate::error::{Error, Result};
use crate::graphs::{
    antipodal_hexagon, boundary_components, comb, decomposition_inertia,
    discriminant_ramification, level_group, level_loop, level_structure_check, level_two_edge,
    loop_graph, quotient_and_genus, GGraph, Shape,
};
use crate::group::FiniteGroup;
use crate::hurwitz::{cyclic_generator, enumerate_data, genus_from_datum, HurwitzDatum};
use crate::nielsen::{nielsen_number, MoveSet, NielsenConfig};
use crate::taut::{
    classify, cornalba_harris, hodge_recursion, hyperelliptic_integral,
    hyperelliptic_integral_pipeline, lambda_relation, locus_forms, locus_from_marked,
    pic_normalize, psi_integral, root_exponents, stratum_dim, summed_relation, tau, viete,
    BinaryForm, CyclicContext, Normalization,
};

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact invariants of Hurwitz spaces of Galois covers",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for orbit search; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Describe what a subcommand computes and exit.
    #[arg(long, value_name = "SUBCOMMAND")]
    explain: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, classes and character table of a group.
    Group(GroupArgs),
    /// Genus and dimension for a datum, or enumeration of data.
    Datum(DatumArgs),
    /// Nielsen and Hurwitz numbers.
    Nielsen(NielsenArgs),
    /// Chevalley–Weil decomposition of H⁰(C, ω^⊗m).
    Cw(CwArgs),
    /// Recover a datum from Chevalley–Weil multiplicities.
    #[command(name = "cw-invert")]
    CwInvert(CwInvertArgs),
    /// G-graphs: quotients, exactness, level structures, builders.
    #[command(subcommand)]
    Graphs(GraphsCmd),
    /// Boundary divisors of spaces of Z/n covers.
    Boundary(BoundaryArgs),
    /// Tautological relations, Cornalba–Harris, binary forms.
    #[command(subcommand)]
    Taut(TautCmd),
    /// Hodge integrals.
    #[command(subcommand)]
    Hodge(HodgeCmd),
}

#[derive(Args, Debug)]
struct GroupSel {
    /// S4, A5, D5, C12, Ab[2,2], or a JSON file with {"gens": [...]}.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[command(flatten)]
    sel: GroupSel,
    /// Include the character table.
    #[arg(long)]
    table: bool,
}

#[derive(Args, Debug)]
struct DatumArgs {
    #[command(flatten)]
    sel: GroupSel,
    #[arg(long, default_value_t = 0)]
    genus_base: i64,
    #[arg(long)]
    datum: Option<PathBuf>,
    /// Enumerate the admissible data with this many branch points.
    #[arg(long, conflicts_with = "datum")]
    enumerate: Option<usize>,
    /// Identify data differing by an automorphism.
    #[arg(long)]
    modulo_out: bool,
}

#[derive(Args, Debug)]
struct NielsenArgs {
    #[command(flatten)]
    sel: GroupSel,
    #[arg(long, default_value_t = 0)]
    genus_base: usize,
    #[arg(long)]
    datum: PathBuf,
    /// Print the orbits.
    #[arg(long)]
    orbits: bool,
    /// Write the orbits to a file.
    #[arg(long)]
    tuples_out: Option<PathBuf>,
    /// Add handle moves; required for g' ≥ 1.
    #[arg(long)]
    extended: bool,
}

#[derive(Args, Debug)]
struct CwArgs {
    #[command(flatten)]
    sel: GroupSel,
    #[arg(long, default_value_t = 0)]
    genus_base: i64,
    #[arg(long)]
    datum: PathBuf,
    #[arg(long, default_value_t = 1)]
    twist: u32,
}

#[derive(Args, Debug)]
struct CwInvertArgs {
    #[command(flatten)]
    sel: GroupSel,
    #[arg(long, default_value_t = 0)]
    genus_base: i64,
    /// Datum generating the oracle; the recovered datum is compared with it.
    #[arg(long)]
    oracle_from: PathBuf,
}

#[derive(Args, Debug)]
struct GraphFile {
    #[command(flatten)]
    sel: GroupSel,
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand, Debug)]
enum GraphsCmd {
    /// Quotient graph and both genus computations.
    Quotient(GraphFile),
    /// Decomposition and inertia groups, exactness of the homology sequence.
    Exactness(GraphFile),
    /// Level-n rank shapes.
    Level {
        #[command(flatten)]
        file: GraphFile,
        #[arg(long)]
        n: u64,
    },
    /// Build a standard G-graph and report on it.
    Build(BuildArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum BuildKind {
    Comb,
    Hexagon,
    Circuit,
    LevelLoop,
    LevelTwoEdge,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: BuildKind,
    #[command(flatten)]
    sel: GroupSel,
    /// Tooth generators for a comb, separated by ';'.
    #[arg(long)]
    elements: Option<String>,
    /// Level for the level-* kinds.
    #[arg(long)]
    n: Option<usize>,
    /// Genus of the smooth curve for the level-* kinds.
    #[arg(long)]
    genus: Option<usize>,
    /// Genera of the two components for level-two-edge.
    #[arg(long, default_value_t = 1)]
    g1: usize,
    #[arg(long, default_value_t = 1)]
    g2: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ShapeArg {
    Segment,
    Loop,
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    genus_base: i64,
    /// Branch points as e:ν pairs, comma separated.
    #[arg(long)]
    points: String,
    #[arg(long, value_enum, default_value = "segment")]
    shape: ShapeArg,
}

#[derive(Args, Debug)]
struct CyclicInput {
    /// Order of the cyclic group; taken from the datum's group when omitted.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 0)]
    genus_base: i64,
    #[arg(long, conflicts_with = "points")]
    datum: Option<PathBuf>,
    /// Branch points as e:ν pairs, comma separated.
    #[arg(long)]
    points: Option<String>,
    #[command(flatten)]
    sel: GroupSel,
}

#[derive(Subcommand, Debug)]
enum TautCmd {
    /// Eigen relations for every unit j, normalized; the summed relation for prime n.
    Relations {
        #[command(flatten)]
        input: CyclicInput,
        /// Only this j.
        #[arg(long)]
        j: Option<u64>,
    },
    /// Boundary expression for λ on loci of Z/p covers of P^1.
    Ch {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: i64,
        /// Branch exponents ν_1, …, ν_b, comma separated.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Partition type of a binary form given by its coefficients.
    Classify {
        /// Coefficients of X^d, X^{d−1}Y, …, Y^d, comma separated.
        #[arg(long)]
        coeffs: String,
    },
    /// Expand Π (u_i X − v_i Y).
    Viete {
        /// Roots as u:v, comma separated.
        #[arg(long)]
        factors: String,
    },
    /// Exponents of the line bundles L_i.
    Roots {
        #[command(flatten)]
        input: CyclicInput,
        #[arg(long)]
        i: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum NormArg {
    Ordered,
    Unordered,
}

#[derive(Subcommand, Debug)]
enum HodgeCmd {
    /// τ_{a,n} = ∫ λ_1 ψ_1^{a}… on genus-0 moduli with n points.
    Tau {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        n: u32,
    },
    /// ∫ ψ_1^{α_1} ⋯ ψ_n^{α_n} in genus 0.
    Psi {
        /// Exponents, comma separated.
        #[arg(long)]
        exponents: String,
    },
    /// ∫ ψ_1^{2g−1−a} μ^a on the hyperelliptic locus, both routes.
    Hyperelliptic {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        a: i64,
    },
    /// B_{g,ξ} by the boundary recursion.
    Recursion {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: i64,
        #[arg(long, conflicts_with = "nu")]
        datum: Option<PathBuf>,
        /// Branch exponents ν_1, …, ν_b, comma separated.
        #[arg(long)]
        nu: Option<String>,
        #[command(flatten)]
        sel: GroupSel,
        #[arg(long, value_enum, default_value = "ordered")]
        normalization: NormArg,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (argv including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: format_output(&v, cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e),
        },
    }
}

struct StderrLogger;

impl log::Log for StderrLogger {
    fn enabled(&self, m: &log::Metadata) -> bool {
        m.level() <= log::Level::Warn
    }

    fn log(&self, r: &log::Record) {
        if self.enabled(r.metadata()) {
            eprintln!("{}: {}", r.level().as_str().to_lowercase(), r.args());
        }
    }

    fn flush(&self) {}
}

/// Sends warnings and errors from the library to stderr. Safe to call twice.
pub fn init_logging() {
    static LOGGER: StderrLogger = StderrLogger;
    if log::set_logger(&LOGGER).is_ok() {
        log::set_max_level(log::LevelFilter::Warn);
    }
}

fn format_output(v: &Value, f: Format) -> String {
    match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => table(v),
    }
}

fn table(v: &Value) -> String {
    let flat = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match v {
        Value::Object(m) => {
            let w = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| format!("{:w$}  {}\n", k, flat(x), w = w))
                .collect()
        }
        Value::Array(a) => a.iter().map(|x| format!("{}\n", flat(x))).collect(),
        other => format!("{}\n", flat(other)),
    }
}

fn explain(sub: &str) -> Result<Value> {
    let text = match sub {
        "group" => "Builds the permutation group, its conjugacy classes and, with --table, the character table over cyclotomic integers.",
        "datum" => "Applies Riemann–Hurwitz to a datum: genus of the cover, degree of the branch divisor and dimension of the Hurwitz space. With --enumerate, lists the admissible data of an abelian group.",
        "nielsen" => "Counts generating tuples satisfying the surface relation with the prescribed classes, up to conjugation, and splits them into braid orbits; the orbit count is the number of components.",
        "cw" => "Decomposes H⁰(C, ω^⊗m) into irreducible characters from the genus of the base and the local eigenvalues at the branch points.",
        "cw-invert" => "Queries multiplicities for increasing twists and recovers the datum, then compares it with the datum that generated the oracle.",
        "graphs" => "Quotients of G-graphs with both genus counts, decomposition and inertia subgroups with the exactness of the homology sequence, and level-n rank shapes.",
        "boundary" => "Lists the boundary divisors of the space of Z/n covers with the given branch points, with node type (R or NS) and the discriminant ramification.",
        "taut" => "Eigen relations between λ, ψ, μ, κ and boundary classes on spaces of cyclic covers, their prime sum, boundary expressions for λ on Z/p loci, and the classification of binary forms.",
        "hodge" => "Genus-0 ψ integrals by closed form, λ-integrals τ, hyperelliptic μ integrals by two routes, and the boundary recursion for λ^{b−3} on Z/p loci.",
        _ => return Err(Error::usage(format!("no subcommand named {}", sub))),
    };
    Ok(json!({"subcommand": sub, "explain": text}))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::usage(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_group(sel: &GroupSel, datum: Option<&Value>) -> Result<FiniteGroup> {
    if let Some(spec) = &sel.group {
        let p = Path::new(spec);
        if p.is_file() {
            return FiniteGroup::from_json(&read_json(p)?);
        }
        return FiniteGroup::parse(spec);
    }
    match datum.and_then(|d| d.get("group")) {
        Some(Value::String(s)) => FiniteGroup::parse(s),
        Some(v) => FiniteGroup::from_json(v),
        None => Err(Error::usage("--group is required")),
    }
}

fn load_datum(sel: &GroupSel, path: &Path) -> Result<(FiniteGroup, HurwitzDatum)> {
    let v = read_json(path)?;
    let g = load_group(sel, Some(&v))?;
    let xi = HurwitzDatum::from_json(&g, &v)?;
    Ok((g, xi))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::usage(format!("bad {}: {}", what, x))))
        .collect()
}

fn parse_pairs<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<(T, T)>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            let bad = || Error::usage(format!("bad {}: {}", what, x));
            let (a, b) = x.split_once(':').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// (n, g', points) from --points or from a datum file over a cyclic group.
fn cyclic_input(input: &CyclicInput) -> Result<(u64, i64, Vec<(u64, u64)>)> {
    match (&input.datum, &input.points) {
        (Some(path), _) => {
            let (g, xi) = load_datum(&input.sel, path)?;
            let n = g.order() as u64;
            if input.n.is_some_and(|m| m != n) {
                return Err(Error::usage(format!("--n disagrees with |G| = {}", n)));
            }
            Ok((n, input.genus_base, cyclic_exponents(&g, &xi)?))
        }
        (None, Some(p)) => {
            let n = input.n.ok_or_else(|| Error::usage("--n is required with --points"))?;
            Ok((n, input.genus_base, parse_pairs(p, "point")?))
        }
        (None, None) => Err(Error::usage("one of --datum or --points is required")),
    }
}

fn execute(cli: &Cli) -> Result<Value> {
    if let Some(sub) = &cli.explain {
        return explain(sub);
    }
    let Some(cmd) = &cli.command else {
        return Err(Error::usage("a subcommand is required; see --help"));
    };
    match cmd {
        Command::Group(a) => group_cmd(a),
        Command::Datum(a) => datum_cmd(a),
        Command::Nielsen(a) => nielsen_cmd(a, cli.jobs),
        Command::Cw(a) => {
            let (g, xi) = load_datum(&a.sel, &a.datum)?;
            let mut v = cw_multiplicities(&g, a.genus_base, &xi, a.twist)?.to_json(&g);
            v["group"] = json!(g.label());
            Ok(v)
        }
        Command::CwInvert(a) => cw_invert_cmd(a),
        Command::Graphs(c) => graphs_cmd(c),
        Command::Boundary(a) => boundary_cmd(a),
        Command::Taut(c) => taut_cmd(c),
        Command::Hodge(c) => hodge_cmd(c),
    }
}

fn group_cmd(a: &GroupArgs) -> Result<Value> {
    let g = load_group(&a.sel, None)?;
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| {
            json!({
                "representative": g.element_string(c.representative),
                "size": c.members.len(),
                "order": g.element_order(c.representative),
            })
        })
        .collect();
    let mut v = json!({
        "group": g.label(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "classes": classes,
    });
    if a.table {
        let t = g.character_table();
        let rows: Vec<Vec<String>> = t
            .rows
            .iter()
            .map(|r| r.values.iter().map(|x| x.to_string()).collect())
            .collect();
        v["character_table"] = json!({"degrees": t.degrees, "rows": rows});
    }
    Ok(v)
}

fn datum_cmd(a: &DatumArgs) -> Result<Value> {
    if let Some(b) = a.enumerate {
        let g = load_group(&a.sel, None)?;
        let data = enumerate_data(&g, b, a.modulo_out)?;
        return Ok(json!({
            "group": g.label(),
            "branch_points": b,
            "modulo_out": a.modulo_out,
            "count": data.len(),
            "data": data.iter().map(|d| d.to_json(&g)).collect::<Vec<_>>(),
        }));
    }
    let path = a
        .datum
        .as_ref()
        .ok_or_else(|| Error::usage("one of --datum or --enumerate is required"))?;
    let (g, xi) = load_datum(&a.sel, path)?;
    let r = genus_from_datum(&g, a.genus_base, &xi)?;
    Ok(json!({
        "group": g.label(),
        "datum": xi.to_json(&g),
        "genus": r.genus,
        "branch_degree": r.branch_degree,
        "dimension": r.dimension,
    }))
}

fn nielsen_cmd(a: &NielsenArgs, jobs: usize) -> Result<Value> {
    let (g, xi) = load_datum(&a.sel, &a.datum)?;
    let cfg = NielsenConfig {
        jobs: jobs.max(1),
        moves: if a.extended { MoveSet::Extended } else { MoveSet::Braid },
        ..NielsenConfig::default()
    };
    let r = nielsen_number(&g, a.genus_base, &xi, &cfg)?;
    if let Some(out) = &a.tuples_out {
        let mut s = serde_json::to_string_pretty(&r.to_json(&g, true)["orbits"])
            .expect("values serialize");
        s.push('\n');
        std::fs::write(out, s)
            .map_err(|e| Error::usage(format!("cannot write {}: {}", out.display(), e)))?;
    }
    Ok(r.to_json(&g, a.orbits))
}

fn cw_invert_cmd(a: &CwInvertArgs) -> Result<Value> {
    let (g, xi) = load_datum(&a.sel, &a.oracle_from)?;
    let mut oracle = DatumOracle::new(&g, a.genus_base, xi.clone());
    let inv = invert_cw(&g, &mut oracle)?;
    let expected = xi.truncated();
    Ok(json!({
        "group": g.label(),
        "base_genus": inv.base_genus,
        "datum": inv.datum.to_json(&g),
        "queries": inv.queries.len(),
        "round_trip": inv.base_genus == a.genus_base && inv.datum == expected,
    }))
}

fn graph_file(f: &GraphFile, run: impl Fn(&GGraph) -> Result<Value>) -> Result<Value> {
    let v = read_json(&f.graph)?;
    let g = load_group(&f.sel, Some(&v))?;
    let gg = GGraph::from_json(&g, &v)?;
    run(&gg)
}

fn graph_report(gg: &GGraph) -> Result<Value> {
    Ok(json!({
        "graph": gg.to_json(),
        "quotient": quotient_and_genus(gg)?.to_json(),
        "exactness": decomposition_inertia(gg)?.to_json(gg.group),
    }))
}

fn graphs_cmd(c: &GraphsCmd) -> Result<Value> {
    match c {
        GraphsCmd::Quotient(f) => graph_file(f, |gg| Ok(quotient_and_genus(gg)?.to_json())),
        GraphsCmd::Exactness(f) => {
            graph_file(f, |gg| Ok(decomposition_inertia(gg)?.to_json(gg.group)))
        }
        GraphsCmd::Level { file, n } => {
            graph_file(file, |gg| Ok(level_structure_check(gg, *n)?.to_json()))
        }
        GraphsCmd::Build(b) => build_cmd(b),
    }
}

fn build_cmd(b: &BuildArgs) -> Result<Value> {
    let need = |x: Option<usize>, flag: &str| {
        x.ok_or_else(|| Error::usage(format!("--{} is required for this kind", flag)))
    };
    match b.kind {
        BuildKind::Comb => {
            let g = load_group(&b.sel, None)?;
            let list = b.elements.as_deref().ok_or_else(|| Error::usage("--elements is required"))?;
            let hs = list
                .split(';')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| g.parse_element(x))
                .collect::<Result<Vec<_>>>()?;
            graph_report(&comb(&g, &hs)?)
        }
        BuildKind::Hexagon => {
            let g = load_group(&b.sel, None)?;
            graph_report(&antipodal_hexagon(&g)?)
        }
        BuildKind::Circuit => {
            let g = load_group(&b.sel, None)?;
            let sigma = cyclic_generator(&g)
                .ok_or_else(|| Error::domain("cyclic group", format!("{} is not cyclic", g.label())))?;
            graph_report(&loop_graph(&g, &[], g.identity(), sigma, 1, &[])?)
        }
        BuildKind::LevelLoop => {
            let (n, genus) = (need(b.n, "n")?, need(b.genus, "genus")?);
            let g = level_group(n, genus)?;
            let gg = level_loop(&g, genus)?;
            let mut v = graph_report(&gg)?;
            v["level"] = level_structure_check(&gg, n as u64)?.to_json();
            Ok(v)
        }
        BuildKind::LevelTwoEdge => {
            let n = need(b.n, "n")?;
            let g = level_group(n, b.g1 + b.g2 + 1)?;
            let gg = level_two_edge(&g, b.g1, b.g2)?;
            let mut v = graph_report(&gg)?;
            v["level"] = level_structure_check(&gg, n as u64)?.to_json();
            Ok(v)
        }
    }
}

fn boundary_cmd(a: &BoundaryArgs) -> Result<Value> {
    let points: Vec<(u64, u64)> = parse_pairs(&a.points, "point")?;
    let shape = match a.shape {
        ShapeArg::Segment => Shape::Segment,
        ShapeArg::Loop => Shape::Loop,
    };
    let list = boundary_components(a.n, a.genus_base, &points, shape)?;
    let ram: Vec<Value> = discriminant_ramification(&list)
        .into_iter()
        .map(|(l, k)| json!({"label": l, "coefficient": k}))
        .collect();
    Ok(json!({
        "n": a.n,
        "base_genus": a.genus_base,
        "count": list.len(),
        "components": list.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "discriminant_ramification": ram,
    }))
}

fn taut_cmd(c: &TautCmd) -> Result<Value> {
    match c {
        TautCmd::Relations { input, j } => {
            let (n, gb, points) = cyclic_input(input)?;
            let ctx = CyclicContext::new(n, gb, points)?;
            let js: Vec<u64> = match j {
                Some(j) => vec![*j],
                None => (1..n).filter(|&j| crate::arith::gcd(j, n) == 1).collect(),
            };
            let mut rel = Vec::new();
            for j in js {
                let r = lambda_relation(&ctx, j)?;
                let norm = pic_normalize(&r, &ctx)?;
                rel.push(json!({
                    "j": j,
                    "relation": r.to_json(),
                    "normalized": norm.to_json(),
                    "text": norm.to_string(),
                }));
            }
            let mut v = json!({
                "n": n,
                "base_genus": gb,
                "boundary": ctx.boundary.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "relations": rel,
            });
            if gb == 0 && j.is_none() {
                if let Ok(s) = summed_relation(&ctx) {
                    v["summed"] = json!({"relation": s.to_json(), "text": s.to_string()});
                }
            }
            Ok(v)
        }
        TautCmd::Ch { p, g, nu } => {
            let nu = nu.as_deref().map(|s| parse_list::<u64>(s, "exponent")).transpose()?;
            let ch = cornalba_harris(*p, *g, nu.as_deref())?;
            let mut v = ch.to_json();
            if *p == 2 {
                let (full, half) = locus_forms(*g);
                v["locus"] = json!({
                    "from_marked": locus_from_marked(&ch)?.to_json(),
                    "full": full.to_json(),
                    "half": half.to_json(),
                });
            }
            Ok(v)
        }
        TautCmd::Classify { coeffs } => {
            let mut c: Vec<Q> = parse_list(coeffs, "coefficient")?;
            // input runs from X^d down to Y^d; forms are stored by power of Y
            c.reverse();
            let f = BinaryForm::new(c)?;
            let mu = classify(&f);
            Ok(json!({
                "form": f.to_json(),
                "type": mu.to_json(),
                "stratum_dim": stratum_dim(&mu),
            }))
        }
        TautCmd::Viete { factors } => {
            let f = viete(&parse_pairs::<Q>(factors, "factor")?)?;
            let mu = classify(&f);
            Ok(json!({"form": f.to_json(), "type": mu.to_json()}))
        }
        TautCmd::Roots { input, i } => {
            let (n, _, points) = cyclic_input(input)?;
            Ok(root_exponents(n, &points, *i)?.to_json())
        }
    }
}

fn hodge_cmd(c: &HodgeCmd) -> Result<Value> {
    match c {
        HodgeCmd::Tau { a, n } => {
            if *n < 3 || *a + 3 > *n {
                return Err(Error::domain("a out of range", format!("need 0 ≤ a ≤ n − 3, got a = {}, n = {}", a, n)));
            }
            Ok(json!({"a": a, "n": n, "value": render(&tau(*a, *n))}))
        }
        HodgeCmd::Psi { exponents } => {
            let alpha: Vec<u32> = parse_list(exponents, "exponent")?;
            Ok(json!({"exponents": alpha, "value": render(&psi_integral(&alpha))}))
        }
        HodgeCmd::Hyperelliptic { g, a } => {
            let x = hyperelliptic_integral(*g, *a)?;
            let y = hyperelliptic_integral_pipeline(*g, *a)?;
            Ok(json!({
                "g": g,
                "a": a,
                "value": render(&x),
                "pipeline": render(&y),
                "agree": x == y,
            }))
        }
        HodgeCmd::Recursion { p, g, datum, nu, sel, normalization } => {
            let xi: Vec<u64> = match (datum, nu) {
                (Some(path), _) => {
                    let (grp, d) = load_datum(sel, path)?;
                    if grp.order() as u64 != *p {
                        return Err(Error::usage(format!("datum group has order {}, not p = {}", grp.order(), p)));
                    }
                    cyclic_exponents(&grp, &d)?.into_iter().map(|(_, v)| v).collect()
                }
                (None, Some(s)) => parse_list(s, "exponent")?,
                (None, None) => return Err(Error::usage("one of --datum or --nu is required")),
            };
            let norm = match normalization {
                NormArg::Ordered => Normalization::OrderedPairs,
                NormArg::Unordered => Normalization::UnorderedPairs,
            };
            let value = hodge_recursion(*p, *g, &xi, norm)?;
            let mut m = Map::new();
            m.insert("p".into(), json!(p));
            m.insert("g".into(), json!(g));
            m.insert("nu".into(), json!(xi));
            m.insert(
                "normalization".into(),
                json!(match norm {
                    Normalization::OrderedPairs => "ordered",
                    Normalization::UnorderedPairs => "unordered",
                }),
            );
            m.insert("value".into(), json!(render(&value)));
            Ok(Value::Object(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("hurwitz").chain(args.iter().copied()))
    }

    #[test]
    fn tau_value() {
        let o = go(&["hodge", "tau", "--a", "1", "--n", "6"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["value"], "6");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["nosuch"]).code, 2);
        assert_eq!(go(&["hodge", "tau", "--a", "1", "--n", "6", "--bogus"]).code, 2);
        assert_eq!(go(&["hodge", "tau", "--a", "5", "--n", "6"]).code, 1);
        assert_eq!(go(&["--version"]).code, 0);
        assert_eq!(go(&["--explain", "nielsen"]).code, 0);
    }

    #[test]
    fn table_mode() {
        let o = go(&["--format", "table", "hodge", "hyperelliptic", "--g", "1", "--a", "0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("1/24"));
    }
}
