//! Table documents and the `semidet` command-line front end.
//!
//! A table document is a header line of element labels followed by one row
//! of tokens per label. `#` starts a comment and `.` stands for a zero
//! element that is not listed in the header.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::determinant::{self, DeterminantError, DEFAULT_MAX_DIM};
use crate::enumeration::{self, DEFAULT_SEED, EXHAUSTIVE_CAP};
use crate::mobius::{FormalSum, MobiusError, StarAlgebra};
use crate::order::{BasisMode, OrderError, OrderStructure};
use crate::semigroup::{CayleyTable, GreenKind, SemigroupError, IMPLICIT_ZERO_LABEL, ZERO_TOKEN};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDocument {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        // (line number, [(column, token)])
        let mut lines: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (col, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(col),
                    (true, Some(s)) => {
                        tokens.push((content[..s].chars().count() + 1, &content[s..col]));
                        start = None;
                    }
                    _ => {}
                }
            }
            if !tokens.is_empty() {
                lines.push((i + 1, tokens));
            }
        }
        let Some((header_line, header_tokens)) = lines.first() else {
            return Err(ParseError { line: 1, column: 1, message: "missing header line".into() });
        };
        let header: Vec<String> = header_tokens.iter().map(|&(_, t)| t.to_string()).collect();
        for (k, &(col, tok)) in header_tokens.iter().enumerate() {
            if tok == ZERO_TOKEN || header[..k].iter().any(|h| h == tok) {
                return Err(ParseError {
                    line: *header_line,
                    column: col,
                    message: format!("invalid or repeated label {tok:?}"),
                });
            }
        }
        let n = header.len();
        let body = &lines[1..];
        if body.len() != n {
            let (line, column) = match body.get(n) {
                Some((l, toks)) => (*l, toks[0].0),
                None => (text.lines().count() + 1, 1),
            };
            return Err(ParseError { line, column, message: format!("expected {n} rows, found {}", body.len()) });
        }
        let mut rows = Vec::with_capacity(n);
        for (line, tokens) in body {
            if tokens.len() != n {
                let column = tokens.get(n).map_or_else(|| tokens.last().map_or(1, |&(c, t)| c + t.len()), |&(c, _)| c);
                return Err(ParseError {
                    line: *line,
                    column,
                    message: format!("row has {} entries, expected {n}", tokens.len()),
                });
            }
            for &(col, tok) in tokens {
                if tok != ZERO_TOKEN && !header.iter().any(|h| h == tok) {
                    return Err(ParseError { line: *line, column: col, message: format!("unknown token {tok:?}") });
                }
            }
            rows.push(tokens.iter().map(|&(_, t)| t.to_string()).collect());
        }
        Ok(TableDocument { header, rows })
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(" ");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> Result<CayleyTable, SemigroupError> {
        CayleyTable::validate(&self.header, &self.rows)
    }

    /// The compact form (zero as `.`, omitted from the header) when the zero
    /// is the last element and labelled `0`; every element listed otherwise.
    pub fn from_table(table: &CayleyTable) -> Self {
        let n = table.len();
        let implicit = table.zero().filter(|&z| z == n - 1 && table.name(z) == IMPLICIT_ZERO_LABEL);
        let shown: Vec<usize> = table.elements().filter(|&s| Some(s) != implicit).collect();
        let token = |s: usize| {
            if Some(s) == implicit {
                ZERO_TOKEN.to_string()
            } else {
                table.name(s).to_string()
            }
        };
        TableDocument {
            header: shown.iter().map(|&s| table.name(s).to_string()).collect(),
            rows: shown.iter().map(|&a| shown.iter().map(|&b| token(table.mul(a, b))).collect()).collect(),
        }
    }
}

#[derive(Debug)]
pub enum InputError {
    Io(PathBuf, std::io::Error),
    Parse(ParseError),
    Table(SemigroupError),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            InputError::Parse(e) => write!(f, "parse error at {e}"),
            InputError::Table(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InputError {}

pub fn parse_table(text: &str) -> Result<CayleyTable, InputError> {
    TableDocument::parse(text).map_err(InputError::Parse)?.to_table().map_err(InputError::Table)
}

pub fn load_table(path: &Path) -> Result<CayleyTable, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io(path.to_path_buf(), e))?;
    parse_table(&text)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Layout of the printed tables.
    Paper,
    #[default]
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "semidet", version, about = "Analyze finite semigroups and factor their determinants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest matrix dimension for symbolic determinants.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a table is a semigroup.
    Validate { file: PathBuf },
    /// Idempotents, tilde classes, s* and s+, and standing assumptions.
    Analyze { file: PathBuf },
    /// The << relation, the covers of <<< and Z(s) for each element.
    Order { file: PathBuf },
    /// The table of the transported product *.
    StarTable { file: PathBuf },
    /// The (contracted) semigroup determinant.
    Det {
        file: PathBuf,
        /// Use the full determinant even when a zero is present.
        #[arg(long)]
        full: bool,
    },
    /// Factor the determinant into idempotent blocks.
    Factor {
        file: PathBuf,
        #[arg(long)]
        full: bool,
    },
    /// Pseudo <<-transitivity and the <<<-smoothness conditions.
    VerifySmooth { file: PathBuf },
    /// Pseudo <<-transitivity only.
    VerifyPseudo { file: PathBuf },
    /// A pair with s* != t+ and s * t != 0, and a minimal non-commuting idempotent pair.
    Witness { file: PathBuf },
    /// Check pseudo <<-transitivity over all semigroups of one order.
    VerifyConjecture {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random tables to check above the exhaustive cap.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Analyze { .. } => "analyze",
            Command::Order { .. } => "order",
            Command::StarTable { .. } => "star-table",
            Command::Det { .. } => "det",
            Command::Factor { .. } => "factor",
            Command::VerifySmooth { .. } => "verify-smooth",
            Command::VerifyPseudo { .. } => "verify-pseudo",
            Command::Witness { .. } => "witness",
            Command::VerifyConjecture { .. } => "verify-conjecture",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub exit_code: i32,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(command: &str, exit_code: i32, mut body: Value, text: String) -> Self {
        let mut json = json!({ "schema": SCHEMA_VERSION, "command": command });
        if let (Some(obj), Some(extra)) = (json.as_object_mut(), body.as_object_mut()) {
            obj.append(extra);
        }
        Report { exit_code, json, text }
    }

    fn failure(command: &str, exit_code: i32, message: String) -> Self {
        Report::new(command, exit_code, json!({ "error": message }), format!("error: {message}\n"))
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable report");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Exit code and message for an error raised while running a command.
trait Classify: fmt::Display {
    fn exit_code(&self) -> i32;
}

impl Classify for InputError {
    fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

impl Classify for OrderError {
    fn exit_code(&self) -> i32 {
        match self {
            OrderError::NoZeroElement => EXIT_INPUT,
            _ => EXIT_VIOLATION,
        }
    }
}

impl Classify for DeterminantError {
    fn exit_code(&self) -> i32 {
        match self {
            DeterminantError::Order(e) => e.exit_code(),
            DeterminantError::DimensionCap { .. } | DeterminantError::NoZeroElement => EXIT_INPUT,
            _ => EXIT_VIOLATION,
        }
    }
}

impl Classify for MobiusError {
    fn exit_code(&self) -> i32 {
        match self {
            MobiusError::Order(e) => e.exit_code(),
            _ => EXIT_VIOLATION,
        }
    }
}

type Outcome = Result<Report, Report>;

fn fail<E: Classify>(command: &'static str) -> impl Fn(E) -> Report {
    move |e| Report::failure(command, e.exit_code(), e.to_string())
}

pub fn run(cli: &Cli) -> Report {
    let work = || dispatch(cli).unwrap_or_else(|r| r);
    match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Report::failure(cli.command.name(), EXIT_INPUT, e.to_string()),
        },
        None => work(),
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// report to stdout and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let report = run(&cli);
    let out = report.render(cli.json);
    if report.exit_code == EXIT_INPUT && !cli.json {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    report.exit_code
}

fn dispatch(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    let load = |file: &PathBuf| load_table(file).map_err(fail(name));
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?),
        Command::Analyze { file } => analyze(&load(file)?),
        Command::Order { file } => order(&load(file)?),
        Command::StarTable { file } => star_table(&load(file)?, cli.format),
        Command::Det { file, full } => det(&load(file)?, *full, cli.max_dim),
        Command::Factor { file, full } => factor(&load(file)?, *full, cli.max_dim),
        Command::VerifySmooth { file } => verify_smooth(&load(file)?),
        Command::VerifyPseudo { file } => verify_pseudo(&load(file)?),
        Command::Witness { file } => witness(&load(file)?),
        Command::VerifyConjecture { order, seed, samples } => verify_conjecture(*order, *seed, *samples),
    }
}

fn names(table: &CayleyTable, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
    ids.into_iter().map(|s| table.name(s).to_string()).collect()
}

fn validate(table: &CayleyTable) -> Outcome {
    let zero = table.zero().map(|z| table.name(z).to_string());
    let identity = table.identity().map(|e| table.name(e).to_string());
    let text = format!(
        "semigroup of order {}\nzero: {}\nidentity: {}\n",
        table.len(),
        zero.as_deref().unwrap_or("none"),
        identity.as_deref().unwrap_or("none")
    );
    Ok(Report::new(
        "validate",
        EXIT_OK,
        json!({ "order": table.len(), "elements": table.names(), "zero": zero, "identity": identity }),
        text,
    ))
}

fn analyze(table: &CayleyTable) -> Outcome {
    let idempotents = names(table, table.idempotents());
    let classes = |k: GreenKind| -> Vec<Vec<String>> {
        table.green_partition(k).classes.into_iter().map(|c| names(table, c)).collect()
    };
    let (tl, tr) = (classes(GreenKind::TildeL), classes(GreenKind::TildeR));
    let singleton_rich = table.is_singleton_rich();
    let ecom = table.is_ecom();
    let unital = table.has_algebra_identity();
    let mut text = format!("idempotents: {}\n", idempotents.join(" "));
    let fmt_classes = |c: &[Vec<String>]| c.iter().map(|x| format!("{{{}}}", x.join(","))).collect::<Vec<_>>().join(" ");
    text += &format!("tilde-L classes: {}\ntilde-R classes: {}\n", fmt_classes(&tl), fmt_classes(&tr));
    text += &format!("singleton-rich: {singleton_rich}\nidempotents commute: {ecom}\nunital algebra: {unital}\n");
    let mut star_plus = Value::Null;
    if let Ok(sp) = table.star_plus() {
        let mut rows = Vec::new();
        text += "element s* s+\n";
        for s in table.elements() {
            text += &format!("{} {} {}\n", table.name(s), table.name(sp.star(s)), table.name(sp.plus(s)));
            rows.push(json!({ "element": table.name(s), "star": table.name(sp.star(s)), "plus": table.name(sp.plus(s)) }));
        }
        star_plus = Value::Array(rows);
    }
    Ok(Report::new(
        "analyze",
        EXIT_OK,
        json!({
            "idempotents": idempotents,
            "tilde_l": tl,
            "tilde_r": tr,
            "singleton_rich": singleton_rich,
            "ecom": ecom,
            "unital": unital,
            "star_plus": star_plus,
        }),
        text,
    ))
}

fn order_structure(table: &CayleyTable, name: &'static str, mode: BasisMode) -> Result<OrderStructure, Report> {
    OrderStructure::new(table, mode).map_err(fail(name))
}

fn order(table: &CayleyTable) -> Outcome {
    let o = order_structure(table, "order", BasisMode::Auto)?;
    let ll: Vec<[String; 2]> = table
        .elements()
        .flat_map(|a| table.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && o.is_ll(a, b))
        .map(|(a, b)| [table.name(a).to_string(), table.name(b).to_string()])
        .collect();
    let covers: Vec<[String; 2]> =
        o.poset().covers().iter().map(|&(a, b)| [table.name(a).to_string(), table.name(b).to_string()]).collect();
    let mut text = String::from("<<:");
    for [a, b] in &ll {
        text += &format!(" {a}<<{b}");
    }
    text += "\n<<< covers:";
    for [a, b] in &covers {
        text += &format!(" {a}<{b}");
    }
    text += "\n";
    let mut z = serde_json::Map::new();
    for &s in o.basis() {
        let support = names(table, o.down_set(s));
        text += &format!("Z({}) = {}\n", table.name(s), support.join("+"));
        z.insert(table.name(s).to_string(), json!(support));
    }
    Ok(Report::new("order", EXIT_OK, json!({ "ll": ll, "lll_covers": covers, "z": z }), text))
}

/// The `*` table laid out like a printed operation table.
pub fn render_star_table(alg: &StarAlgebra, format: Format) -> String {
    let table = alg.table();
    let all_names = table.names().to_vec();
    let basis = alg.basis();
    let cells: Vec<Vec<String>> = alg.star_table().iter().map(|r| r.iter().map(|x| x.render(&all_names)).collect()).collect();
    match format {
        Format::Plain => {
            let mut out = String::new();
            for (i, &s) in basis.iter().enumerate() {
                for (j, &t) in basis.iter().enumerate() {
                    if cells[i][j] != "." {
                        out += &format!("{} * {} = {}\n", table.name(s), table.name(t), cells[i][j]);
                    }
                }
            }
            out
        }
        Format::Paper => {
            let corner = "(S,*)".to_string();
            let first: Vec<&str> = std::iter::once(corner.as_str()).chain(basis.iter().map(|&s| table.name(s))).collect();
            let w0 = first.iter().map(|s| s.len()).max().unwrap_or(0);
            let widths: Vec<usize> = (0..basis.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([table.name(basis[j]).len()]).max().unwrap_or(1))
                .collect();
            let line = |label: &str, entries: Vec<&str>| {
                let body: Vec<String> = entries.iter().zip(&widths).map(|(e, &w)| format!("{e:>w$}")).collect();
                format!("{label:<w0$} | {}\n", body.join(" "))
            };
            let mut out = line(&corner, basis.iter().map(|&s| table.name(s)).collect());
            let rule_width = widths.iter().sum::<usize>() + widths.len().saturating_sub(1);
            out += &format!("{}-+-{}\n", "-".repeat(w0), "-".repeat(rule_width));
            for (i, &s) in basis.iter().enumerate() {
                out += &line(table.name(s), cells[i].iter().map(String::as_str).collect());
            }
            out
        }
    }
}

fn star_table(table: &CayleyTable, format: Format) -> Outcome {
    let o = order_structure(table, "star-table", BasisMode::Auto)?;
    let alg = StarAlgebra::new(o);
    let all_names = table.names().to_vec();
    let rows: Vec<Vec<String>> = alg.star_table().iter().map(|r| r.iter().map(|x| x.render(&all_names)).collect()).collect();
    let sc = alg.star_structure_constants();
    let mut constants = Vec::new();
    for &b in alg.basis() {
        for &b1 in alg.basis() {
            for &b2 in alg.basis() {
                let c = sc.get(b2, b, b1);
                if c != 0 {
                    constants.push(json!([table.name(b2), table.name(b), table.name(b1), c]));
                }
            }
        }
    }
    Ok(Report::new(
        "star-table",
        EXIT_OK,
        json!({ "basis": names(table, alg.basis().iter().copied()), "rows": rows, "structure_constants": constants }),
        render_star_table(&alg, format),
    ))
}

fn det(table: &CayleyTable, full: bool, max_dim: usize) -> Outcome {
    let fail = fail::<DeterminantError>("det");
    let contracted = !full && table.zero().is_some();
    let m = if contracted {
        determinant::contracted_cayley(table).map_err(&fail)?
    } else {
        determinant::semigroup_cayley(table)
    };
    let d = determinant::sym_det(&m, max_dim).map_err(&fail)?;
    let s = d.canonical_string(|v| determinant::variable_name(table.names(), v));
    Ok(Report::new(
        "det",
        EXIT_OK,
        json!({ "contracted": contracted, "determinant": s, "nonzero": !d.is_zero() }),
        format!("{}determinant: {s}\n", if contracted { "contracted " } else { "" }),
    ))
}

fn factor(table: &CayleyTable, full: bool, max_dim: usize) -> Outcome {
    let mode = if full { BasisMode::Full } else { BasisMode::Auto };
    let f = determinant::factor_determinant(table, mode, max_dim).map_err(fail("factor"))?;
    let record = f.record();
    let mut text = format!("sign: {}\n", f.sign);
    for factor in &record.factors {
        text += &format!("theta_{} = {}\n", factor.idempotent, factor.polynomial);
    }
    text += &format!("product: {}\ndirect: {}\nequal: {}\n", record.product, record.direct, record.equal);
    let mut body = serde_json::to_value(&record).expect("serializable");
    body["contracted"] = json!(f.contracted);
    let code = if f.equal { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Report::new("factor", code, body, text))
}

fn verify_smooth(table: &CayleyTable) -> Outcome {
    let fail = fail::<OrderError>("verify-smooth");
    let o = order_structure(table, "verify-smooth", BasisMode::Auto)?;
    let r = o.smoothness().map_err(fail)?;
    let pseudo_ce = r.pseudo_counterexample.map(|c| names(table, c));
    let violation = r.violation.as_ref().map(|v| json!({ "condition": v.condition, "witnesses": names(table, v.witnesses.iter().copied()) }));
    let mut text = format!("pseudo_ll_transitive: {}\nlll_smooth: {}\n", r.pseudo_ll_transitive, r.lll_smooth);
    if let Some(v) = &r.violation {
        text += &format!("violated condition {}: {}\n", v.condition, names(table, v.witnesses.iter().copied()).join(" "));
    }
    let code = if r.lll_smooth { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Report::new(
        "verify-smooth",
        code,
        json!({
            "pseudo_ll_transitive": r.pseudo_ll_transitive,
            "pseudo_counterexample": pseudo_ce,
            "lll_smooth": r.lll_smooth,
            "violation": violation,
        }),
        text,
    ))
}

fn verify_pseudo(table: &CayleyTable) -> Outcome {
    let o = order_structure(table, "verify-pseudo", BasisMode::Auto)?;
    let ce = o.pseudo_counterexample().map_err(fail::<OrderError>("verify-pseudo"))?;
    let mut text = format!("pseudo_ll_transitive: {}\n", ce.is_none());
    if let Some([u, s, t]) = ce {
        text += &format!(
            "counterexample (u, s, t) = ({}, {}, {}): no admissible chain from u to st\n",
            table.name(u),
            table.name(s),
            table.name(t)
        );
    }
    let code = if ce.is_none() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Report::new(
        "verify-pseudo",
        code,
        json!({ "pseudo_ll_transitive": ce.is_none(), "counterexample": ce.map(|c| names(table, c)) }),
        text,
    ))
}

fn witness(table: &CayleyTable) -> Outcome {
    let fail = fail::<MobiusError>("witness");
    let alg = StarAlgebra::new(order_structure(table, "witness", BasisMode::Auto)?);
    let all_names = table.names().to_vec();
    let (s, t, p) = alg.noncommuting_star_witness().map_err(&fail)?;
    let product: FormalSum = p;
    let mut text = format!("{} * {} = {}\n", table.name(s), table.name(t), product.render(&all_names));
    let mut body = json!({
        "witness": { "s": table.name(s), "t": table.name(t), "product": product.render(&all_names) },
        "minimal_pair": Value::Null,
    });
    match alg.minimal_pair_with_chain_property() {
        Ok((e, f)) => {
            text += &format!("minimal pair: ({}, {})\n", table.name(e), table.name(f));
            body["minimal_pair"] = json!([table.name(e), table.name(f)]);
        }
        Err(MobiusError::Precondition(why)) => text += &format!("minimal pair: not applicable ({why})\n"),
        Err(e) => return Err(fail(e)),
    }
    Ok(Report::new("witness", EXIT_OK, body, text))
}

fn verify_conjecture(n: usize, seed: u64, samples: usize) -> Outcome {
    let report = if n <= EXHAUSTIVE_CAP {
        enumeration::verify_conjecture(n).map_err(|e| Report::failure("verify-conjecture", EXIT_INPUT, e.to_string()))?
    } else {
        enumeration::verify_conjecture_sampled(n, samples, seed)
    };
    let mut text = format!(
        "order {} ({})\ntables scanned: {}\nunital and singleton-rich: {}\nwith <<< larger than <<: {}\npseudo <<-transitive: {}\ncounterexamples: {}\n",
        report.order,
        report.mode,
        report.tables_scanned,
        report.tables_passing_filters,
        report.tables_with_gaps,
        report.pseudo_ll_transitive_count,
        report.counterexamples.len()
    );
    text += &format!(
        "singleton-rich (any algebra): {} of which pseudo <<-transitive: {}\n",
        report.singleton_rich.tables, report.singleton_rich.pseudo_ll_transitive
    );
    for rows in &report.counterexamples {
        let table = CayleyTable::new((0..n).map(crate::semigroup::default_label).collect(), rows.clone())
            .expect("counterexamples come from valid tables");
        text += "\n";
        text += &TableDocument::from_table(&table).render();
    }
    let code = if report.holds() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Report::new("verify-conjecture", code, serde_json::to_value(&report).expect("serializable"), text))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S4: &str = "# four elements and a zero\ny z u t\n. . . y\n. . z .\ny . u .\n. z z t\n";

    #[test]
    fn parses_s4() {
        let t = parse_table(S4).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.zero(), Some(4));
        assert_eq!(t.name(4), "0");
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = TableDocument::parse("a b\na a\nb\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = TableDocument::parse("a b\na a b\nb b\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
    }

    #[test]
    fn unknown_token_reports_column() {
        let err = TableDocument::parse("a b\na x\nb b\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown"));
    }

    #[test]
    fn missing_rows() {
        let err = TableDocument::parse("# only a comment\na b\na a\n").unwrap_err();
        assert!(err.message.contains("expected 2 rows"));
        assert!(TableDocument::parse("").is_err());
    }

    #[test]
    fn render_round_trip() {
        let doc = TableDocument::parse(S4).unwrap();
        assert_eq!(TableDocument::parse(&doc.render()).unwrap(), doc);
        let t = doc.to_table().unwrap();
        assert_eq!(TableDocument::from_table(&t), doc);
        let c = CayleyTable::from_flat(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(TableDocument::from_table(&c).render(), "a b\na b\nb a\n");
    }

    #[test]
    fn missing_file_is_input_error() {
        let r = main_with_args(["semidet", "validate", "/nonexistent/file.tbl"]);
        assert_eq!(r, EXIT_INPUT);
    }
}
