//! The `qcut` command line. Every command reads its inputs, calls one library
//! entry point and prints the answer; the exit code carries the decision.
//!
//! Exit codes: 0 affirmative or success, 1 negative decision, 2 usage or
//! input error, 3 search budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::containment::{
    display_oracle_with_budget, serialize_trace, three_cuttable_tc, ContainError, TraceEvent,
    DEFAULT_ORACLE_BUDGET,
};
use crate::cuttable::{is_q_cuttable, max_cuttability, CutError};
use crate::gen::{default_labels, random_2balanced_cnf, random_q_cuttable, random_tree, sample_displayed_tree, GenConfig};
use crate::io::{
    parse_dimacs_cnf, parse_enewick, parse_newick_tree, parse_upn, serialize_dimacs_cnf, serialize_enewick,
    serialize_newick_tree, serialize_upn,
};
use crate::net::{blobs, labeled_isomorphism, level, maximal_chains, RootedNet, UndirectedNet};
use crate::orient::{
    brute_force_tree_child_orientation_with_budget, has_sibling_reticulations, has_stack, is_tree_child,
    tree_child_orient_2cuttable, underlying_unrooted, OrientError, DEFAULT_BRUTE_FORCE_BUDGET,
};
use crate::sat::{build_n_phi, build_u_phi, extract_assignment, parse_gmap, serialize_gmap, Assignment, SatError};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcut", version, about = "q-cuttable phylogenetic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a network is q-cuttable.
    Recognize {
        #[arg(long)]
        q: usize,
        net: PathBuf,
    },
    /// Blob, chain, reticulation and cuttability summary of a network.
    Stats { net: PathBuf },
    /// Find a tree-child orientation and write it as extended Newick.
    Orient {
        net: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Constructive)]
        method: Method,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Search nodes allowed for `--method brute`.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BUDGET)]
        budget: usize,
    },
    /// Decide whether a rooted network is tree-child.
    CheckTreeChild { rooted: PathBuf },
    /// Decide whether a 3-cuttable network displays a tree.
    Contain {
        tree: PathBuf,
        net: PathBuf,
        /// Use the exhaustive embedding search instead.
        #[arg(long)]
        oracle: bool,
        /// Write the TCTRACE/1 record of the run here.
        #[arg(long, conflicts_with = "oracle")]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: usize,
    },
    /// The 2-balanced 3-SAT reduction.
    Sat {
        #[command(subcommand)]
        command: SatCommand,
    },
    /// Seeded random inputs.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Constructive,
    Brute,
}

#[derive(Subcommand, Debug)]
enum SatCommand {
    /// Build the reduction network of a formula and its gadget map.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        gmap: PathBuf,
    },
    /// Orient the reduction network according to a satisfying assignment.
    Orient {
        cnf: PathBuf,
        /// One T or F per variable, e.g. `TFF`.
        #[arg(long)]
        assignment: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        gmap: PathBuf,
    },
    /// Read the assignment off a tree-child orientation.
    Extract {
        rooted: PathBuf,
        #[arg(long)]
        gmap: PathBuf,
        #[arg(long)]
        cnf: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Random binary tree, in Newick.
    Tree {
        #[arg(long, default_value_t = 8)]
        leaves: usize,
        /// Sample a tree displayed by this network instead; `--leaves` is ignored.
        #[arg(long)]
        displayed_by: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random q-cuttable network, in UPN/1.
    Net {
        #[arg(long, default_value_t = 8)]
        leaves: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Upper bound on the level; 0 means none.
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random 2-balanced 3-CNF, in DIMACS.
    Cnf {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Why a command stopped without a decision.
#[derive(Debug)]
enum Fail {
    Usage(String),
    Budget(String),
}

impl Fail {
    fn code(&self) -> i32 {
        match self {
            Fail::Usage(_) => EXIT_USAGE,
            Fail::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Usage(m) | Fail::Budget(m) => m,
        }
    }
}

impl From<OrientError> for Fail {
    fn from(e: OrientError) -> Self {
        match e {
            OrientError::TooLarge(_) | OrientError::BudgetExceeded(_) => Fail::Budget(e.to_string()),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<ContainError> for Fail {
    fn from(e: ContainError) -> Self {
        match e {
            ContainError::BudgetExceeded(_) => Fail::Budget(e.to_string()),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<CutError> for Fail {
    fn from(e: CutError) -> Self {
        match e {
            CutError::TooLarge { .. } => Fail::Budget(e.to_string()),
            other => Fail::Usage(other.to_string()),
        }
    }
}

impl From<SatError> for Fail {
    fn from(e: SatError) -> Self {
        Fail::Usage(e.to_string())
    }
}

/// Text for stdout and the exit code of a finished command.
struct Outcome {
    code: i32,
    text: String,
}

impl Outcome {
    fn new(code: i32) -> Self {
        Outcome { code, text: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

/// Runs the CLI on `args` (program name first) against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", path.display())))
}

fn parsed<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Fail> {
    r.map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn read_net(path: &Path) -> Result<UndirectedNet, Fail> {
    parsed(path, parse_upn(&read(path)?))
}

fn read_rooted(path: &Path) -> Result<RootedNet, Fail> {
    parsed(path, parse_enewick(&read(path)?))
}

fn read_cnf(path: &Path) -> Result<crate::sat::CnfInstance, Fail> {
    parsed(path, parse_dimacs_cnf(&read(path)?))
}

/// Writes `text` to `path`, or onto stdout when no path is given.
fn emit(o: &mut Outcome, path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => write(p, text),
        None => {
            o.text.push_str(text);
            if !text.ends_with('\n') {
                o.text.push('\n');
            }
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cmd: Command) -> Result<Outcome, Fail> {
    match cmd {
        Command::Recognize { q, net } => recognize(q, &net),
        Command::Stats { net } => stats(&net),
        Command::Orient { net, method, out, budget } => orient(&net, method, out.as_deref(), budget),
        Command::CheckTreeChild { rooted } => check_tree_child(&rooted),
        Command::Contain { tree, net, oracle, trace, budget } => contain(&tree, &net, oracle, trace.as_deref(), budget),
        Command::Sat { command } => match command {
            SatCommand::Reduce { cnf, out, gmap } => sat_reduce(&cnf, &out, &gmap),
            SatCommand::Orient { cnf, assignment, out, gmap } => sat_orient(&cnf, &assignment, &out, &gmap),
            SatCommand::Extract { rooted, gmap, cnf } => sat_extract(&rooted, &gmap, &cnf),
        },
        Command::Gen { command } => gen(command),
    }
}

fn recognize(q: usize, path: &Path) -> Result<Outcome, Fail> {
    let net = read_net(path)?;
    let report = is_q_cuttable(&net, q)?;
    let mut o = Outcome::new(if report.is_cuttable { EXIT_YES } else { EXIT_NO });
    o.line(format!("q-cuttable: {}", yes_no(report.is_cuttable)));
    if let Some(cycle) = report.witness_cycle {
        let ids: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
        o.line(format!("witness cycle: {}", ids.join(" ")));
    }
    Ok(o)
}

fn stats(path: &Path) -> Result<Outcome, Fail> {
    let net = read_net(path)?;
    let chains = maximal_chains(&net);
    let mut o = Outcome::new(EXIT_YES);
    o.line(format!("leaves: {}", net.leaf_count()));
    o.line(format!("vertices: {}", net.vertex_count()));
    o.line(format!("edges: {}", net.edge_count()));
    o.line(format!("reticulation number: {}", net.reticulation_number()));
    o.line(format!("blobs: {}", blobs(&net).len()));
    o.line(format!("chains: {}", chains.len()));
    o.line(format!("longest chain: {}", chains.iter().map(|c| c.len()).max().unwrap_or(0)));
    o.line(format!("level: {}", level(&net)));
    o.line(match max_cuttability(&net) {
        Some(q) => format!("max cuttability: {q}"),
        None => "max cuttability: unbounded (tree)".to_string(),
    });
    Ok(o)
}

fn orient(path: &Path, method: Method, out: Option<&Path>, budget: usize) -> Result<Outcome, Fail> {
    let net = read_net(path)?;
    let found = match method {
        Method::Constructive => match tree_child_orient_2cuttable(&net) {
            Ok(r) => Some(r),
            Err(OrientError::NotTwoCuttable) => {
                let mut o = Outcome::new(EXIT_NO);
                o.line("orientation: none (network is not 2-cuttable; try --method brute)");
                return Ok(o);
            }
            Err(e) => return Err(e.into()),
        },
        Method::Brute => brute_force_tree_child_orientation_with_budget(&net, budget)?,
    };
    let Some(rooted) = found else {
        let mut o = Outcome::new(EXIT_NO);
        o.line("orientation: none (no tree-child orientation exists)");
        return Ok(o);
    };
    let mut o = Outcome::new(EXIT_YES);
    emit(&mut o, out, &format!("{}\n", serialize_enewick(&rooted)))?;
    Ok(o)
}

fn check_tree_child(path: &Path) -> Result<Outcome, Fail> {
    let net = read_rooted(path)?;
    let tc = is_tree_child(&net);
    let mut o = Outcome::new(if tc { EXIT_YES } else { EXIT_NO });
    o.line(format!("tree-child: {}", yes_no(tc)));
    if !tc {
        o.line(format!("stack: {}", yes_no(has_stack(&net))));
        o.line(format!("sibling reticulations: {}", yes_no(has_sibling_reticulations(&net))));
    }
    Ok(o)
}

fn contain(tree_path: &Path, net_path: &Path, oracle: bool, trace: Option<&Path>, budget: usize) -> Result<Outcome, Fail> {
    let tree = parsed(tree_path, parse_newick_tree(&read(tree_path)?))?;
    let net = read_net(net_path)?;
    if oracle {
        let found = display_oracle_with_budget(&tree, &net, budget)?;
        let mut o = Outcome::new(if found.is_some() { EXIT_YES } else { EXIT_NO });
        o.line(format!("displays: {}", yes_no(found.is_some())));
        match found {
            Some(emb) => {
                o.line("embedding:");
                for (e, path) in &emb.edge_map {
                    let ids: Vec<String> = path.iter().map(|v| v.to_string()).collect();
                    o.line(format!("  {e}: {}", ids.join(" ")));
                }
            }
            None => o.line("certificate: exhaustive search found no embedding"),
        }
        return Ok(o);
    }
    let (yes, tr) = three_cuttable_tc(&tree, &net)?;
    if let Some(p) = trace {
        write(p, &serialize_trace(&tr))?;
    }
    let mut o = Outcome::new(if yes { EXIT_YES } else { EXIT_NO });
    o.line(format!("displays: {}", yes_no(yes)));
    if !yes {
        let decisive = tr
            .events
            .iter()
            .rev()
            .find(|e| matches!(e, TraceEvent::SplitConflict { .. } | TraceEvent::Rule { .. }));
        if let Some(ev) = decisive {
            o.line(format!("certificate: {ev}"));
        }
    }
    Ok(o)
}

fn sat_reduce(cnf_path: &Path, out: &Path, gmap_path: &Path) -> Result<Outcome, Fail> {
    let cnf = read_cnf(cnf_path)?;
    let (u, gmap) = build_u_phi(&cnf)?;
    write(out, &serialize_upn(&u))?;
    write(gmap_path, &serialize_gmap(&gmap))?;
    let mut o = Outcome::new(EXIT_YES);
    o.line(format!(
        "reduction network: {} leaves, {} vertices, reticulation number {}",
        u.leaf_count(),
        u.vertex_count(),
        u.reticulation_number()
    ));
    Ok(o)
}

fn sat_orient(cnf_path: &Path, assignment: &str, out: &Path, gmap_path: &Path) -> Result<Outcome, Fail> {
    let cnf = read_cnf(cnf_path)?;
    let beta: Assignment = assignment.parse().map_err(|m: String| Fail::Usage(format!("--assignment: {m}")))?;
    let rooted = match build_n_phi(&cnf, &beta) {
        Ok(r) => r,
        Err(SatError::UnsatisfiedAssignment) => {
            let mut o = Outcome::new(EXIT_NO);
            o.line(format!("assignment {beta} does not satisfy the formula"));
            return Ok(o);
        }
        Err(e) => return Err(e.into()),
    };
    let (_, gmap) = build_u_phi(&cnf)?;
    write(out, &format!("{}\n", serialize_enewick(&rooted)))?;
    write(gmap_path, &serialize_gmap(&gmap))?;
    let mut o = Outcome::new(EXIT_YES);
    o.line(format!("tree-child: {}", yes_no(is_tree_child(&rooted))));
    Ok(o)
}

/// Carries `rooted` over to the vertex ids of `u`, which it must orient.
/// Extended Newick does not keep ids, so they are recovered through a
/// label-preserving isomorphism; the root gets a fresh id.
fn align_ids(rooted: &RootedNet, u: &UndirectedNet) -> Result<Option<RootedNet>, Fail> {
    let und = underlying_unrooted(rooted).map_err(|e| Fail::Usage(e.to_string()))?;
    let map = match labeled_isomorphism(&und, u) {
        Ok(Some(m)) => m,
        Ok(None) | Err(_) => return Ok(None),
    };
    let fresh = u.next_id();
    let id = |v| map.get(&v).copied().unwrap_or(fresh);
    let mut out = RootedNet::new();
    let bad = |e: crate::net::NetError| Fail::Usage(e.to_string());
    for v in rooted.vertices() {
        out.insert_vertex(id(v));
    }
    for (t, h) in rooted.arcs() {
        out.add_arc(id(t), id(h)).map_err(bad)?;
    }
    for (v, l) in rooted.labels() {
        out.set_label(id(v), l).map_err(bad)?;
    }
    if let Some(r) = rooted.root() {
        out.set_root(id(r)).map_err(bad)?;
    }
    Ok(Some(out))
}

fn sat_extract(rooted_path: &Path, gmap_path: &Path, cnf_path: &Path) -> Result<Outcome, Fail> {
    let rooted = read_rooted(rooted_path)?;
    let gmap = parsed(gmap_path, parse_gmap(&read(gmap_path)?))?;
    let cnf = read_cnf(cnf_path)?;
    let (u, expected) = build_u_phi(&cnf)?;
    if expected != gmap {
        return Err(Fail::Usage(format!(
            "{} does not describe the reduction network of {}",
            gmap_path.display(),
            cnf_path.display()
        )));
    }
    let Some(aligned) = align_ids(&rooted, &u)? else {
        let mut o = Outcome::new(EXIT_NO);
        o.line("network is not an orientation of the reduction network");
        return Ok(o);
    };
    let beta = match extract_assignment(&aligned, &gmap) {
        Ok(b) => b,
        Err(SatError::NotTreeChild) => {
            let mut o = Outcome::new(EXIT_NO);
            o.line("network is not tree-child");
            return Ok(o);
        }
        Err(e) => return Err(e.into()),
    };
    let sat = cnf.is_satisfied_by(&beta);
    let mut o = Outcome::new(if sat { EXIT_YES } else { EXIT_NO });
    o.line(format!("assignment: {beta}"));
    o.line(format!("satisfies: {}", yes_no(sat)));
    Ok(o)
}

fn gen(cmd: GenCommand) -> Result<Outcome, Fail> {
    let usage = |e: crate::gen::GenError| Fail::Usage(e.to_string());
    let mut o = Outcome::new(EXIT_YES);
    match cmd {
        GenCommand::Tree { leaves, displayed_by, seed, out } => {
            let tree = match displayed_by {
                Some(p) => sample_displayed_tree(&read_net(&p)?, seed),
                None => random_tree(&default_labels(leaves), seed),
            }
            .map_err(usage)?;
            emit(&mut o, out.as_deref(), &format!("{}\n", serialize_newick_tree(&tree)))?;
        }
        GenCommand::Net { leaves, r, q, level, seed, out } => {
            let cfg = GenConfig { target_level: level, ..GenConfig::new(seed, leaves, r, q) };
            let net = random_q_cuttable(&cfg).map_err(usage)?;
            emit(&mut o, out.as_deref(), &serialize_upn(&net))?;
        }
        GenCommand::Cnf { n, seed, out } => {
            let cnf = random_2balanced_cnf(n, seed).map_err(usage)?;
            emit(&mut o, out.as_deref(), &serialize_dimacs_cnf(&cnf))?;
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["qcut", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run_with(["qcut", "stats", "--bogus", "x"], &mut out, &mut err), EXIT_USAGE);
        err.clear();
        assert_eq!(run_with(["qcut", "stats", "/nonexistent/net.upn"], &mut out, &mut err), EXIT_USAGE);
        assert!(String::from_utf8(err).unwrap().contains("/nonexistent/net.upn"));
    }

    #[test]
    fn help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["qcut", "--help"], &mut out, &mut err), EXIT_YES);
        assert!(String::from_utf8(out).unwrap().contains("recognize"));
    }
}
