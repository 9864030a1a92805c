//! The `frieze` command line: argument parsing, dispatch and text layout.

pub mod random;
pub mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use frieze_core::frieze::{parse_quiddity, FriezeError, FriezeTable, QuiddityCycle};
use frieze_core::matchings::{
    growth_via_annulus_weight, matching_sum, weight_table, MatchingError, Source, WeighMode, DEFAULT_BUDGET,
};
use frieze_core::realize::{classify, witness_nonuniqueness_probe, Classification, RealizeError, Witness};
use frieze_core::ring::RingElem;
use frieze_core::surface::{
    dissection_power, format_dissection, format_quotient, parse_surface_file, render_svg, Corner, SurfaceError,
    SurfaceFile,
};
use frieze_core::tpaths::{enumerate_tpaths, phi_bijection, tpath_weight, TPathError, TPathKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FriezeError> for CliError {
    fn from(e: FriezeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatchingError> for CliError {
    fn from(e: MatchingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TPathError> for CliError {
    fn from(e: TPathError) -> Self {
        match e {
            TPathError::Phi(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RealizeError> for CliError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::Precondition(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "frieze", version, about = "Frieze patterns of type Lambda and their dissected surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Local,
    #[value(alias = "traditional")]
    Trad,
    #[value(alias = "annulus")]
    Ann,
}

impl From<ModeArg> for WeighMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Local => WeighMode::Local,
            ModeArg::Trad => WeighMode::Traditional,
            ModeArg::Ann => WeighMode::Annulus,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Weak,
    Complete,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print frieze rows in staggered layout
    Gen {
        file: PathBuf,
        /// nontrivial rows below the row of ones
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// entries on the even rows (default 2n+2)
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Run the realization algorithm
    Classify {
        file: PathBuf,
        #[arg(long)]
        all_witnesses: bool,
        /// cap on witnesses listed by --all-witnesses
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Print only the witness, in dissection file format
    Realize { file: PathBuf },
    /// Growth coefficients s_1..s_k
    Growth {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// for dissection input, also sum annulus weights over powers
        #[arg(long)]
        matchings: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Weighted matching sums between two lifted outer vertices
    Matchings {
        file: PathBuf,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        #[arg(long, value_enum, default_value = "local")]
        mode: ModeArg,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// T-paths in a dissected polygon
    Tpaths {
        file: PathBuf,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindArg,
        #[arg(long)]
        check_phi: bool,
    },
    /// k-th power of an annulus or disc dissection
    Power {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Run a randomized property suite (or `all`)
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Schematic SVG of a dissection or quotient
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => Output { code: e.code(), stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

type Res = Result<(i32, String), CliError>;

fn dispatch(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Gen { file, depth, cols } => gen(&file, depth, cols),
        Cmd::Classify { file, all_witnesses, cap } => classify_cmd(&file, all_witnesses.then_some(cap), false),
        Cmd::Realize { file } => classify_cmd(&file, None, true),
        Cmd::Growth { file, k, matchings, budget } => growth(&file, k, matchings, budget),
        Cmd::Matchings { file, from, to, mode, list, budget } => matchings(&file, from, to, mode.into(), list, budget),
        Cmd::Tpaths { file, from, to, kind, check_phi } => tpaths(&file, from, to, kind, check_phi),
        Cmd::Power { file, k } => power(&file, k),
        Cmd::Verify { suite, seed, count } => verify(&suite, seed, count),
        Cmd::Render { file, out } => render(&file, out.as_deref()),
    }
}

enum Input {
    Cycles(Vec<QuiddityCycle>),
    Surface(SurfaceFile),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

/// One cycle per non-empty line.
pub fn parse_cycles(text: &str) -> Result<Vec<QuiddityCycle>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_quiddity(body).map_err(|e| CliError::Input(format!("line {}: {}", k + 1, e)))?);
    }
    if out.is_empty() {
        return Err(CliError::Input("no quiddity cycle found".into()));
    }
    Ok(out)
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with('[') => Ok(Input::Cycles(parse_cycles(&text)?)),
        Some(_) => Ok(Input::Surface(parse_surface_file(&text)?)),
        None => Err(CliError::Input(format!("{}: empty input", path.display()))),
    }
}

fn load_cycles(path: &Path) -> Result<Vec<QuiddityCycle>, CliError> {
    Ok(match load(path)? {
        Input::Cycles(c) => c,
        Input::Surface(SurfaceFile::Plain(d)) => vec![d.quiddity_outer()?],
        Input::Surface(SurfaceFile::Quotient(q)) => vec![q.quiddity_outer()?],
    })
}

fn load_surface(path: &Path) -> Result<SurfaceFile, CliError> {
    match load(path)? {
        Input::Surface(s) => Ok(s),
        Input::Cycles(_) => Err(CliError::Input(format!("{}: expected a dissection file", path.display()))),
    }
}

/// Rows `m_{i,i+g}` for `g = 0..=depth+1`, staggered so that entries with the
/// same `i+j` share a column. Rows with irrational entries get decimal hints
/// for one period after a `|`.
pub fn staggered(q: &QuiddityCycle, depth: usize, cols: Option<usize>) -> String {
    let n = q.len();
    let cols = cols.unwrap_or(2 * n + 2).max(1);
    let mut t = FriezeTable::new(q.clone());
    let mut rows: Vec<Vec<RingElem>> = Vec::new();
    for g in 0..=depth + 1 {
        let gi = g as i64;
        let start = (2 - gi + gi % 2) / 2;
        let len = if g % 2 == 0 { cols } else { cols.saturating_sub(1).max(1) };
        rows.push((0..len as i64).map(|c| t.entry(start + c, start + c + gi).expect("upper half")).collect());
    }
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1) + 2;
    let mut out = String::new();
    for (g, row) in cells.iter().enumerate() {
        let mut line = " ".repeat(if g % 2 == 1 { width / 2 } else { 0 });
        for c in row {
            let _ = write!(line, "{:>w$}", c, w = width);
        }
        let line = line.trim_end().to_string();
        let _ = write!(out, "{}", line);
        if rows[g].iter().any(|x| x.as_integer().is_none()) {
            let hints: Vec<String> = rows[g].iter().take(n).map(|x| format!("{:.4}", x.to_f64())).collect();
            let _ = write!(out, "  | {}", hints.join(" "));
        }
        out.push('\n');
    }
    out
}

fn gen(file: &Path, depth: usize, cols: Option<usize>) -> Res {
    let mut out = String::new();
    for (k, q) in load_cycles(file)?.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# {}", q);
        out.push_str(&staggered(q, depth, cols));
    }
    Ok((0, out))
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Dissection(d) => format_dissection(d),
        Witness::Quotient(q) => format_quotient(q),
    }
}

pub fn format_classification(q: &QuiddityCycle, c: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cycle: {}", q);
    let _ = writeln!(out, "verdict: {}", c.verdict);
    for step in &c.trace {
        let _ = writeln!(out, "trace: {}", step);
    }
    if !c.trace.is_empty() {
        let _ = writeln!(out, "core: {}", c.core);
    }
    if let Some(w) = &c.witness {
        out.push_str("witness:\n");
        out.push_str(&witness_text(w));
    }
    out
}

fn classify_cmd(file: &Path, probe: Option<usize>, witness_only: bool) -> Res {
    let mut out = String::new();
    let mut code = 0;
    for (k, q) in load_cycles(file)?.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let c = classify(q)?;
        if !c.verdict.is_realizable() {
            code = 1;
        }
        if witness_only {
            let _ = writeln!(out, "# {} : {}", q, c.verdict);
            if let Some(w) = &c.witness {
                out.push_str(&witness_text(w));
            }
            continue;
        }
        out.push_str(&format_classification(q, &c));
        if let Some(cap) = probe {
            match witness_nonuniqueness_probe(q, cap) {
                Ok(ws) => {
                    let _ = writeln!(out, "witnesses: {}", ws.len());
                    for d in ws {
                        out.push_str("--\n");
                        out.push_str(&format_dissection(&d));
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "witnesses: none probed ({})", e);
                }
            }
        }
    }
    Ok((code, out))
}

fn growth(file: &Path, k: usize, via: bool, budget: u64) -> Res {
    if k == 0 {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    let input = load(file)?;
    let (cycles, dissection) = match input {
        Input::Cycles(c) => (c, None),
        Input::Surface(SurfaceFile::Plain(d)) => (vec![d.quiddity_outer()?], Some(d)),
        Input::Surface(SurfaceFile::Quotient(q)) => (vec![q.quiddity_outer()?], None),
    };
    if via && dissection.is_none() {
        return Err(CliError::Input("--matchings needs an annulus or disc dissection file".into()));
    }
    let mut out = String::new();
    let mut code = 0;
    for q in &cycles {
        let _ = writeln!(out, "# {}", q);
        let mut t = FriezeTable::new(q.clone());
        for kk in 1..=k {
            match t.growth_coefficient(kk) {
                Ok(s) => {
                    let _ = writeln!(out, "s_{} = {}", kk, s.with_hint());
                    if let Some(d) = &dissection {
                        if via {
                            let w = growth_via_annulus_weight(d, kk as u32, budget)?;
                            if w != s {
                                return Err(CliError::Internal(format!("s_{} = {} but annulus weights give {}", kk, s, w)));
                            }
                            let _ = writeln!(out, "s_{} via wt_A = {}", kk, w);
                        }
                    }
                }
                Err(FriezeError::Finite { gap }) => {
                    let _ = writeln!(out, "finite frieze (zero row at gap {}): no growth coefficients", gap);
                    code = 1;
                    break;
                }
                Err(e) => return Err(CliError::Internal(e.to_string())),
            }
        }
    }
    Ok((code, out))
}

fn corner_label(src: Source, c: &Corner) -> String {
    match src {
        Source::Plain(_) if c.copy == 0 => format!("f{}", c.face),
        Source::Plain(_) => format!("f{}@{}", c.face, c.copy),
        Source::Quotient(_) => {
            let (root, res) = src.key(c);
            if res == 0 {
                format!("c{}", root)
            } else {
                format!("c{}@{}", root, res)
            }
        }
    }
}

fn opt(x: &Option<RingElem>) -> String {
    x.as_ref().map_or("-".to_string(), |v| v.to_string())
}

/// One row per matching, vertices listed from `to-1` down to `from+1`, then
/// the traditional, local and annulus weights.
pub fn matching_table(src: Source, i: i64, j: i64, budget: u64) -> Result<String, MatchingError> {
    let rows = weight_table(src, i, j, budget)?;
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut head = vec![String::new()];
    head.extend((i + 1..j).rev().map(|g| format!("v{}", g)));
    head.extend(["wt_T", "wt_L", "wt_A"].map(String::from));
    table.push(head);
    let mut tot: [Option<RingElem>; 3] = [None, None, None];
    for (k, (m, t, l, a)) in rows.iter().enumerate() {
        let mut row = vec![(k + 1).to_string()];
        row.extend(m.choice.iter().rev().map(|c| corner_label(src, c)));
        row.extend([opt(t), l.to_string(), opt(a)]);
        table.push(row);
        for (slot, v) in tot.iter_mut().zip([t.clone(), Some(l.clone()), a.clone()]) {
            if let Some(v) = v {
                *slot = Some(match slot.take() {
                    Some(s) => &s + &v,
                    None => v,
                });
            }
        }
    }
    let mut last = vec!["total".to_string()];
    last.extend(std::iter::repeat(String::new()).take(m_len(i, j)));
    last.extend(tot.iter().map(opt));
    table.push(last);
    let ncol = table.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncol).map(|c| table.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &table {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{:<w$}", s, w = widths[c])).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    Ok(out)
}

fn m_len(i: i64, j: i64) -> usize {
    (j - i - 1).max(0) as usize
}

fn matchings(file: &Path, from: i64, to: i64, mode: WeighMode, list: bool, budget: u64) -> Res {
    let sf = load_surface(file)?;
    let src = match &sf {
        SurfaceFile::Plain(d) => Source::Plain(d),
        SurfaceFile::Quotient(q) => Source::Quotient(q),
    };
    let mut out = String::new();
    let count = frieze_core::matchings::count_matchings(src, from, to)?;
    let sum = matching_sum(src, from, to, mode, budget)?;
    let _ = writeln!(out, "matchings {}..{}: {}", from, to, count);
    let _ = writeln!(out, "sum wt_{} = {}", mode_tag(mode), sum.with_hint());
    if list {
        out.push_str(&matching_table(src, from, to, budget)?);
    }
    Ok((0, out))
}

fn mode_tag(m: WeighMode) -> &'static str {
    match m {
        WeighMode::Local => "L",
        WeighMode::Traditional => "T",
        WeighMode::Annulus => "A",
    }
}

fn tpaths(file: &Path, from: u32, to: u32, kind: KindArg, check_phi: bool) -> Res {
    let d = match load_surface(file)? {
        SurfaceFile::Plain(d) => d,
        SurfaceFile::Quotient(_) => return Err(CliError::Input("T-paths need a plain polygon dissection".into())),
    };
    let kind = match kind {
        KindArg::Weak => TPathKind::Weak,
        KindArg::Complete => TPathKind::Complete,
    };
    let paths = enumerate_tpaths(&d, from, to, kind)?;
    let mut out = String::new();
    let mut total: Option<RingElem> = None;
    for p in &paths {
        let w = tpath_weight(&d, p)?;
        let _ = writeln!(out, "{} : {}", p, w);
        total = Some(match total {
            Some(t) => &t + &w,
            None => w,
        });
    }
    let _ = writeln!(out, "count = {}", paths.len());
    match total {
        Some(t) => {
            let _ = writeln!(out, "sum = {}", t.with_hint());
        }
        None => out.push_str("sum = 0\n"),
    }
    if check_phi {
        let pairs = phi_bijection(&d, from, to)?;
        let _ = writeln!(out, "phi: {} matchings onto {} weak T-paths, weights preserved", pairs.len(), pairs.len());
    }
    Ok((0, out))
}

fn power(file: &Path, k: u32) -> Res {
    match load_surface(file)? {
        SurfaceFile::Plain(d) => Ok((0, format_dissection(&dissection_power(&d, k)?))),
        SurfaceFile::Quotient(_) => Err(CliError::Input("powers of quotient dissections are not supported".into())),
    }
}

fn verify(name: &str, seed: u64, count: usize) -> Res {
    let names: Vec<&str> = if name == "all" { suites::NAMES.to_vec() } else { vec![name] };
    let mut out = String::new();
    let mut code = 0;
    for n in names {
        let rep = suites::run(n, seed, count).ok_or_else(|| {
            CliError::Input(format!("unknown suite '{}'; choose one of: all, {}", n, suites::NAMES.join(", ")))
        })?;
        if !rep.ok() {
            code = 3;
        }
        let _ = write!(out, "{}", rep);
    }
    Ok((code, out))
}

fn render(file: &Path, out: Option<&Path>) -> Res {
    let svg = match load_surface(file)? {
        SurfaceFile::Plain(d) => render_svg(&d, None),
        SurfaceFile::Quotient(q) => render_svg(q.base(), Some(&q)),
    };
    match out {
        Some(p) => {
            std::fs::write(p, &svg).map_err(|e| CliError::Input(format!("{}: {}", p.display(), e)))?;
            Ok((0, format!("wrote {}\n", p.display())))
        }
        None => Ok((0, svg)),
    }
}
