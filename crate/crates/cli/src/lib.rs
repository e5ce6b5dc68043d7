//! The `orbitinv` command line. [`run`] returns the process exit code:
//! 0 on success, 1 when a verification fails or a table is invalid, 2 on
//! usage and parse errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use orbitinv::coxeter::parse_word;
use orbitinv::invariants::{
    hermitian_nu, unique_closed_orbit_case, verify_closed_pairs, verify_complete_invariant, verify_generation,
    verify_length_criterion, verify_monoidal_orbit, verify_triples, verify_unique_max, verify_wprime_min,
    CheckReport, InvariantContext, InvariantError,
};
use orbitinv::io::{emit, import_external, parse, ExternalTableAdapter, ImportError, ParseError};
use orbitinv::models::{find_orbit_by_status, ClanModel, DiagonalModel, StatusPattern};
use orbitinv::paths::{
    enumerate_paths, minimal_paths, shortest_paths, verify_path_theorems, verify_unique_subexpression,
    AdmissiblePath,
};
use orbitinv::{KgbGraph, OrbitId, OrbitPoset};

#[derive(Parser, Debug)]
#[command(name = "orbitinv", version, about = "Orbit invariants on K-orbit tables")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Diagonal,
    Clan,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Shortest,
    Minimal,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckName {
    All,
    CompleteInvariant,
    Hermitian,
    ClosedPairs,
    UniqueClosed,
    WprimeMin,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the orbit table of a model.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        /// Cartan type of W for the diagonal model, e.g. A2 or A1xB2.
        #[arg(long = "type", value_name = "TYPE")]
        cartan: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse and validate a table.
    Validate {
        file: PathBuf,
        /// Print the validation report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the covering relation of the closure order, one `u v` edge per line.
    Order { file: PathBuf },
    /// Print W, Y and Z for a pair of orbits.
    Invariants {
        /// Closed orbit: id, `@label` or status pattern such as `n,c,n`.
        #[arg(long)]
        v0: String,
        /// Orbit: id, `@label` or `m:<word>` for m(word).v0.
        #[arg(long)]
        v: String,
        file: PathBuf,
    },
    /// List admissible paths from v0 to v.
    Paths {
        #[arg(long)]
        v0: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "minimal")]
        mode: Mode,
        /// Longest path listed in `all` mode (default: length of the longest element).
        #[arg(long)]
        max_len: Option<usize>,
        file: PathBuf,
    },
    /// Run theorem checks and print one summary line per report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        check: CheckName,
        /// Restrict per-base checks to these closed orbits.
        #[arg(long)]
        v0: Option<String>,
        /// |W_K|, compared with the number of w with w.v0 = v0' for closed pairs.
        #[arg(long)]
        wk_order: Option<usize>,
        /// Print reports as JSON lines.
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Decide whether K(v) meets B(w), i.e. v <= m(w).v0.
    Intersect {
        #[arg(long)]
        v0: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        file: PathBuf,
    },
    /// Convert an external table using a JSON adapter and validate it.
    Import {
        #[arg(long)]
        adapter: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
}

/// A failure that ends the command with an exit code.
struct Exit {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Exit {
    Exit { code: 2, message: message.into() }
}

fn failed(message: impl Into<String>) -> Exit {
    Exit { code: 1, message: message.into() }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        usage(e.to_string())
    }
}

impl From<InvariantError> for Exit {
    fn from(e: InvariantError) -> Self {
        usage(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return 2;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    // output is buffered so the command can run inside the pool
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(Exit { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn dispatch(command: Command, out: Out) -> Result<i32, Exit> {
    match command {
        Command::Gen { model, cartan, p, q, output } => gen(model, cartan, p, q, output, out),
        Command::Validate { file, json } => validate(&file, json, out),
        Command::Order { file } => {
            let graph = load(&file)?;
            let poset = OrbitPoset::build(&graph);
            for (u, v) in poset.covers() {
                writeln!(out, "{u} {v}")?;
            }
            Ok(0)
        }
        Command::Invariants { v0, v, file } => invariants(&v0, &v, &file, out),
        Command::Paths { v0, v, mode, max_len, file } => paths(&v0, &v, mode, max_len, &file, out),
        Command::Verify { check, v0, wk_order, json, file } => verify(check, v0.as_deref(), wk_order, json, &file, out),
        Command::Intersect { v0, v, w, file } => intersect(&v0, &v, &w, &file, out),
        Command::Import { adapter, output, file } => import(&adapter, output, &file, out),
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<KgbGraph, Exit> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        ParseError::Invalid(report) => failed(format!("{}: invalid orbit table\n{report}", path.display())),
        other => usage(format!("{}: {other}", path.display())),
    })
}

fn write_table(graph: &KgbGraph, output: Option<PathBuf>, out: Out) -> Result<(), Exit> {
    let text = emit(graph);
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn gen(
    model: Model,
    cartan: Option<String>,
    p: Option<usize>,
    q: Option<usize>,
    output: Option<PathBuf>,
    out: Out,
) -> Result<i32, Exit> {
    let graph = match model {
        Model::Diagonal => {
            let t = cartan.ok_or_else(|| usage("--model diagonal needs --type"))?;
            DiagonalModel::from_type(&t).map_err(|e| usage(e.to_string()))?.into_graph()
        }
        Model::Clan => {
            let (Some(p), Some(q)) = (p, q) else {
                return Err(usage("--model clan needs --p and --q"));
            };
            ClanModel::new(p, q).map_err(|e| usage(e.to_string()))?.into_graph()
        }
    };
    write_table(&graph, output, out)?;
    Ok(0)
}

fn validate(path: &Path, json: bool, out: Out) -> Result<i32, Exit> {
    let text = read(path)?;
    match parse(&text) {
        Ok(graph) => {
            if json {
                writeln!(out, "{}", serde_json::json!({ "valid": true, "orbits": graph.len(), "failures": [] }))?;
            } else {
                writeln!(out, "ok: {} orbits, rank {}", graph.len(), graph.rank())?;
            }
            Ok(0)
        }
        Err(ParseError::Invalid(report)) => {
            if json {
                writeln!(out, "{}", serde_json::json!({ "valid": false, "failures": report.failures }))?;
            } else {
                write!(out, "{report}")?;
                writeln!(out, "invalid: {} failures", report.failures.len())?;
            }
            Ok(1)
        }
        Err(e) => Err(usage(format!("{}: {e}", path.display()))),
    }
}

fn by_label(graph: &KgbGraph, label: &str) -> Result<OrbitId, Exit> {
    graph
        .orbit_ids()
        .find(|&v| graph.label(v) == Some(label))
        .ok_or_else(|| usage(format!("no orbit labelled `{label}`")))
}

fn by_id(graph: &KgbGraph, text: &str) -> Result<Option<OrbitId>, Exit> {
    match text.parse::<u32>() {
        Ok(i) if (i as usize) < graph.len() => Ok(Some(OrbitId(i))),
        Ok(i) => Err(usage(format!("orbit {i} does not exist"))),
        Err(_) => Ok(None),
    }
}

/// Closed orbits named by an id, a label or a status pattern.
fn base_orbits(graph: &KgbGraph, spec: &str) -> Result<Vec<OrbitId>, Exit> {
    let found: Vec<OrbitId> = if let Some(v) = by_id(graph, spec)? {
        vec![v]
    } else if let Some(label) = spec.strip_prefix('@') {
        vec![by_label(graph, label)?]
    } else {
        let pattern: StatusPattern = spec.parse().map_err(|e: orbitinv::models::ModelError| usage(e.to_string()))?;
        if pattern.roots.len() != graph.rank() {
            return Err(usage(format!("pattern `{spec}` has {} entries, rank is {}", pattern.roots.len(), graph.rank())));
        }
        find_orbit_by_status(graph, &pattern.closed()).into_iter().collect()
    };
    if found.is_empty() {
        return Err(usage(format!("no closed orbit matches `{spec}`")));
    }
    if let Some(&v) = found.iter().find(|&&v| !graph.is_closed(v)) {
        return Err(usage(format!("orbit {v} is not closed")));
    }
    Ok(found)
}

/// An orbit named by an id, a label or `m:<word>` relative to `v0`.
fn target_orbit(graph: &KgbGraph, spec: &str, v0: OrbitId) -> Result<OrbitId, Exit> {
    if let Some(word) = spec.strip_prefix("m:") {
        let word = parse_word(word, graph.rank()).map_err(|e| usage(e.to_string()))?;
        return Ok(graph.monoidal_word(&word, v0));
    }
    if let Some(label) = spec.strip_prefix('@') {
        return by_label(graph, label);
    }
    by_id(graph, spec)?.ok_or_else(|| usage(format!("bad orbit `{spec}`")))
}

fn heading(bases: &[OrbitId], v0: OrbitId, v: OrbitId, out: Out) -> Result<(), Exit> {
    if bases.len() > 1 {
        writeln!(out, "# v0 {v0} v {v}")?;
    }
    Ok(())
}

fn invariants(v0: &str, v: &str, path: &Path, out: Out) -> Result<i32, Exit> {
    let graph = load(path)?;
    let poset = OrbitPoset::build(&graph);
    let bases = base_orbits(&graph, v0)?;
    for &base in &bases {
        let target = target_orbit(&graph, v, base)?;
        let ctx = InvariantContext::new(&graph, &poset, base)?;
        let sys = graph.system();
        let t = ctx.triple(target);
        heading(&bases, base, target, out)?;
        for (name, set) in [("W", &t.w_set), ("Y", &t.y_set), ("Z", &t.z_set)] {
            let words: Vec<String> = set.iter().map(|&w| sys.format(w)).collect();
            writeln!(out, "{name} {}: {}", set.len(), words.join(" "))?;
        }
    }
    Ok(0)
}

fn paths(v0: &str, v: &str, mode: Mode, max_len: Option<usize>, path: &Path, out: Out) -> Result<i32, Exit> {
    let graph = load(path)?;
    let poset = OrbitPoset::build(&graph);
    let sys = graph.system();
    let bases = base_orbits(&graph, v0)?;
    for &base in &bases {
        let target = target_orbit(&graph, v, base)?;
        let list: Vec<AdmissiblePath> = match mode {
            Mode::Shortest => shortest_paths(&graph, base, target).map_err(|e| failed(e.to_string()))?,
            Mode::Minimal => {
                let ctx = InvariantContext::new(&graph, &poset, base)?;
                minimal_paths(&ctx, target).map_err(|e| failed(e.to_string()))?
            }
            Mode::All => enumerate_paths(&graph, base, target, max_len.unwrap_or(sys.max_length()))
                .map_err(|e| failed(e.to_string()))?,
        };
        heading(&bases, base, target, out)?;
        for p in list {
            writeln!(out, "{p} | {}", sys.format(p.y(sys)))?;
        }
    }
    Ok(0)
}

fn intersect(v0: &str, v: &str, w: &str, path: &Path, out: Out) -> Result<i32, Exit> {
    let graph = load(path)?;
    let poset = OrbitPoset::build(&graph);
    let sys = graph.system();
    let word = parse_word(w, graph.rank()).map_err(|e| usage(e.to_string()))?;
    let w = sys.from_word(&word).map_err(|e| usage(e.to_string()))?;
    let bases = base_orbits(&graph, v0)?;
    for &base in &bases {
        let target = target_orbit(&graph, v, base)?;
        let ctx = InvariantContext::new(&graph, &poset, base)?;
        let answer = ctx.intersects_bruhat_cell(target, w);
        if bases.len() > 1 {
            writeln!(out, "v0 {base} v {target}: {answer}")?;
        } else {
            writeln!(out, "{answer}")?;
        }
    }
    Ok(0)
}

fn per_base_reports(ctx: &InvariantContext, check: CheckName) -> Vec<CheckReport> {
    match check {
        CheckName::CompleteInvariant => vec![verify_complete_invariant(ctx)],
        _ => vec![
            verify_triples(ctx),
            verify_complete_invariant(ctx),
            verify_length_criterion(ctx),
            verify_generation(ctx),
            verify_monoidal_orbit(ctx),
            verify_unique_max(ctx),
            verify_unique_subexpression(ctx),
            verify_path_theorems(ctx),
        ],
    }
}

fn verify(check: CheckName, v0: Option<&str>, wk_order: Option<usize>, json: bool, path: &Path, out: Out) -> Result<i32, Exit> {
    let graph = load(path)?;
    let poset = OrbitPoset::build(&graph);
    let bases = match v0 {
        Some(spec) => base_orbits(&graph, spec)?,
        None => graph.closed_orbits(),
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if matches!(check, CheckName::All | CheckName::CompleteInvariant) {
        for &base in &bases {
            let ctx = InvariantContext::new(&graph, &poset, base)?;
            reports.extend(per_base_reports(&ctx, check));
        }
    }
    if matches!(check, CheckName::All | CheckName::ClosedPairs) {
        let selected: BTreeSet<OrbitId> = bases.iter().copied().collect();
        reports.extend(
            verify_closed_pairs(&graph, &poset, wk_order)
                .into_iter()
                .filter(|r| r.base.is_some_and(|b| selected.contains(&b))),
        );
    }
    if matches!(check, CheckName::All | CheckName::Hermitian) {
        match hermitian_nu(&graph, &poset) {
            Ok(r) => reports.push(r),
            Err(e) if check == CheckName::All => skipped.push(format!("hermitian: skipped ({e})")),
            Err(e) => return Err(e.into()),
        }
    }
    if matches!(check, CheckName::All | CheckName::UniqueClosed) {
        match unique_closed_orbit_case(&graph, &poset) {
            Ok(r) => reports.push(r),
            Err(e) if check == CheckName::All => skipped.push(format!("unique-closed: skipped ({e})")),
            Err(e) => return Err(e.into()),
        }
    }
    if matches!(check, CheckName::All | CheckName::WprimeMin) {
        match DiagonalModel::recognize(&graph) {
            Some(model) => reports.push(verify_wprime_min(&model, &poset)),
            None if check == CheckName::All => {
                skipped.push(format!("wprime-min: skipped ({})", InvariantError::NotDiagonal))
            }
            None => return Err(InvariantError::NotDiagonal.into()),
        }
    }

    for r in &reports {
        if json {
            writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"))?;
            continue;
        }
        writeln!(out, "{}", r.summary())?;
        if let Some(note) = &r.note {
            writeln!(out, "  note: {note}")?;
        }
        for v in &r.violations {
            let orbits: Vec<String> = v.orbits.iter().map(|o| o.to_string()).collect();
            writeln!(out, "  orbits [{}] elements [{}]: {}", orbits.join(" "), v.elements.join(" "), v.message)?;
        }
    }
    if !json {
        for s in &skipped {
            writeln!(out, "{s}")?;
        }
    }
    let failures = reports.iter().filter(|r| !r.passed()).count();
    if failures > 0 {
        return Err(failed(format!("{failures} of {} reports failed", reports.len())));
    }
    Ok(0)
}

fn import(adapter: &Path, output: Option<PathBuf>, path: &Path, out: Out) -> Result<i32, Exit> {
    let config: ExternalTableAdapter =
        serde_json::from_str(&read(adapter)?).map_err(|e| usage(format!("{}: {e}", adapter.display())))?;
    let text = read(path)?;
    let graph = import_external(&text, &config).map_err(|e| match e {
        ImportError::Invalid(report) => failed(format!("{}: invalid orbit table\n{report}", path.display())),
        other => usage(format!("{}: {other}", path.display())),
    })?;
    write_table(&graph, output, out)?;
    Ok(0)
}
