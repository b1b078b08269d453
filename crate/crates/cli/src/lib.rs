//! The `wordrep` command line.
//!
//! stdout carries data, stderr carries diagnostics. Exit codes: 0 success,
//! 1 a checked property is false, 2 usage or input error, 3 search budget
//! exhausted without a certificate.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wordrep::analyze::{self, SplitDecomposition};
use wordrep::construct;
use wordrep::search::{self, SearchConfig, SearchOutcome};
use wordrep::{Graph, Letter, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wordrep", version, about = "Word-representable graph toolkit")]
pub struct Cli {
    /// Write results here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a labeled graph from a built-in family.
    GenGraph {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short)]
        n: usize,
        /// Second part size for complete-bipartite (defaults to n).
        #[arg(short)]
        m: Option<usize>,
        /// Emit DOT instead of an edge list.
        #[arg(long)]
        dot: bool,
    },
    /// Print a minimum-uniformity word for the crown graph H_{n,n}.
    RepresentCrown {
        #[arg(short)]
        n: usize,
        /// Print the classic fixture word for n <= 4 as published.
        #[arg(long)]
        fixture: bool,
        #[command(flatten)]
        fmt: WordFormat,
    },
    /// Print H_{n,n} as a concatenation of n permutations (n <= 4).
    Table1Word {
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        fmt: WordFormat,
    },
    /// Check that a word represents a graph.
    Verify {
        #[command(flatten)]
        word: WordInput,
        /// Edge-list file (`-` for stdin).
        #[arg(short, long)]
        graph: PathBuf,
        #[command(flatten)]
        out: OutputFormat,
    },
    /// Print the graph a word represents.
    Induce {
        #[command(flatten)]
        word: WordInput,
        #[arg(long)]
        dot: bool,
    },
    /// Compute the representation number by iterative deepening.
    Repnum {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long = "max-k")]
        max_k: usize,
    },
    /// Search for a k-uniform representing word at a single level.
    Exists {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short)]
        k: usize,
    },
    /// Splittability diagnostics on a concrete word.
    Analyze {
        #[arg(value_enum)]
        check: AnalyzeCheck,
        #[command(flatten)]
        word: WordInput,
        /// Edge-list file; required by neighborhood and lemma1.
        #[arg(short, long)]
        graph: Option<PathBuf>,
        /// Set of letters to split, e.g. "1 2 3 4".
        #[arg(long)]
        set: Option<String>,
        /// Split the neighbourhood of this vertex instead of --set.
        #[arg(long)]
        vertex: Option<String>,
        /// Letter counted by claim1.
        #[arg(long, default_value = "1")]
        letter: String,
        /// First block of the claim1 factor (1-based).
        #[arg(short, default_value_t = 1)]
        i: usize,
        /// Number of blocks in the claim1 factor.
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[command(flatten)]
        out: OutputFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Crown,
    Complete,
    CompleteBipartite,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum AnalyzeCheck {
    Split,
    Endpoints,
    Neighborhood,
    Lemma1,
    Claim1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Auto,
    Token,
    Compact,
}

#[derive(Args, Debug)]
struct WordFormat {
    /// Separator-free output (single-digit indices only).
    #[arg(long, conflicts_with = "token")]
    compact: bool,
    /// Whitespace-separated tokens (default).
    #[arg(long)]
    token: bool,
}

#[derive(Args, Debug)]
struct OutputFormat {
    #[arg(long, conflicts_with = "plain")]
    json: bool,
    #[arg(long)]
    plain: bool,
}

#[derive(Args, Debug)]
struct WordInput {
    /// Word file (`-` for stdin).
    #[arg(short, long = "word")]
    w: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    input_format: InputFormat,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Edge-list file (`-` for stdin).
    #[arg(short, long)]
    graph: PathBuf,
    /// Wall-clock budget per level, in seconds.
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long, env = "WORDREP_THREADS")]
    threads: Option<usize>,
    /// Single-threaded search with a reproducible witness.
    #[arg(long)]
    deterministic: bool,
    /// Disable automorphism pruning for recognized families.
    #[arg(long)]
    no_family_symmetry: bool,
    #[command(flatten)]
    out: OutputFormat,
}

/// A failure carrying its exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.to_string(),
        }
    }
}

impl From<wordrep::Error> for Failure {
    fn from(e: wordrep::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut sink = Output::default();
    let code = match dispatch(&cli.command, &mut sink) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("wordrep: {}", f.msg);
            return f.code;
        }
    };
    if let Err(e) = sink.flush(cli.out.as_deref()) {
        eprintln!("wordrep: {e}");
        return EXIT_USAGE;
    }
    code
}

#[derive(Default)]
struct Output {
    buf: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        if !self.buf.ends_with('\n') {
            self.buf.push('\n');
        }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).map_err(Failure::usage)?;
        self.line(text);
        Ok(())
    }

    fn flush(&self, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => fs::write(p, &self.buf),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(self.buf.as_bytes())?;
                out.flush()
            }
        }
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn read_word(input: &WordInput) -> Result<Word, Failure> {
    let text = read_source(&input.w)?;
    let word = match input.input_format {
        InputFormat::Auto => Word::parse(&text),
        InputFormat::Token => Word::parse_tokens(&text),
        InputFormat::Compact => Word::parse_compact(&text),
    }?;
    if word.is_empty() {
        return Err(Failure::usage("the word is empty"));
    }
    Ok(word)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_source(path)?;
    let (graph, warnings) = Graph::from_edge_list(&text)?;
    for w in warnings {
        eprintln!("wordrep: warning: {}: line {}: {}", path.display(), w.line, w.message);
    }
    Ok(graph)
}

fn format_word(word: &Word, fmt: &WordFormat) -> Result<String, Failure> {
    if fmt.compact {
        Ok(word.to_compact_string()?)
    } else {
        Ok(word.to_token_string())
    }
}

fn parse_set(text: &str) -> Result<BTreeSet<Letter>, Failure> {
    let word = Word::parse(text)?;
    Ok(word.alphabet_set())
}

fn dispatch(cmd: &Command, out: &mut Output) -> Result<i32, Failure> {
    match cmd {
        Command::GenGraph { family, n, m, dot } => {
            let g = match family {
                FamilyArg::Crown => Graph::crown(*n)?,
                FamilyArg::Complete => Graph::complete(*n)?,
                FamilyArg::CompleteBipartite => Graph::complete_bipartite(*n, m.unwrap_or(*n))?,
            };
            out.line(if *dot { g.to_dot() } else { g.to_edge_list() });
            Ok(EXIT_OK)
        }
        Command::RepresentCrown { n, fixture, fmt } => {
            let word = if *fixture {
                construct::fixed_crown_word(*n)?
            } else {
                construct::represent_crown(*n)?
            };
            out.line(format_word(&word, fmt)?);
            Ok(EXIT_OK)
        }
        Command::Table1Word { n, fmt } => {
            let word = construct::table1_word(*n)?;
            out.line(format_word(&word, fmt)?);
            Ok(EXIT_OK)
        }
        Command::Verify { word, graph, out: fmt } => verify(word, graph, fmt, out),
        Command::Induce { word, dot } => {
            let g = read_word(word)?.induced_graph()?;
            out.line(if *dot { g.to_dot() } else { g.to_edge_list() });
            Ok(EXIT_OK)
        }
        Command::Repnum { search: args, max_k } => {
            let g = read_graph(&args.graph)?;
            let outcome = search::repnum(&g, *max_k, &search_config(args)?)?;
            report_search(&g, &outcome, &args.out, out)
        }
        Command::Exists { search: args, k } => {
            let g = read_graph(&args.graph)?;
            let outcome = search::exists_k_word(&g, *k, &search_config(args)?)?;
            report_search(&g, &outcome, &args.out, out)
        }
        Command::Analyze {
            check,
            word,
            graph,
            set,
            vertex,
            letter,
            i,
            t,
            out: fmt,
        } => {
            let word = read_word(word)?;
            let graph = graph.as_deref().map(read_graph).transpose()?;
            let request = AnalyzeRequest {
                check: *check,
                set: set.as_deref(),
                vertex: vertex.as_deref(),
                letter,
                i: *i,
                t: *t,
            };
            run_analysis(&word, graph.as_ref(), &request, fmt, out)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    represents: bool,
    uniformity: Option<usize>,
    letters: usize,
    mismatch: Option<String>,
}

fn verify(word: &WordInput, graph: &Path, fmt: &OutputFormat, out: &mut Output) -> Result<i32, Failure> {
    let w = read_word(word)?;
    let g = read_graph(graph)?;
    let result = w.check_represents(&g);
    let report = VerifyReport {
        represents: result.is_ok(),
        uniformity: w.uniformity()?,
        letters: w.len(),
        mismatch: result.as_ref().err().map(ToString::to_string),
    };
    if fmt.json {
        out.json(&report)?;
    } else {
        let uniform = report
            .uniformity
            .map_or("non-uniform".to_string(), |k| format!("{k}-uniform"));
        out.line(format!(
            "{} ({uniform}, {} letters)",
            if report.represents { "represents" } else { "does not represent" },
            report.letters
        ));
    }
    if let Some(m) = &report.mismatch {
        eprintln!("wordrep: {m}");
        return Ok(EXIT_FALSE);
    }
    Ok(EXIT_OK)
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, Failure> {
    let budget = match args.budget_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(Failure::usage("--budget-seconds must be a nonnegative number"))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    if args.threads == Some(0) {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    Ok(SearchConfig {
        budget,
        threads: args.threads,
        deterministic: args.deterministic,
        family_symmetry: !args.no_family_symmetry,
    })
}

fn report_search(g: &Graph, outcome: &SearchOutcome, fmt: &OutputFormat, out: &mut Output) -> Result<i32, Failure> {
    if fmt.json {
        out.json(&outcome.certificate(g))?;
    } else {
        for level in &outcome.levels {
            let status = if level.witness_found {
                "witness"
            } else if level.refuted {
                "refuted"
            } else {
                "budget exhausted"
            };
            eprintln!(
                "k={}: {status} ({} nodes, {} ms)",
                level.k, level.nodes, level.elapsed_ms
            );
        }
        match &outcome.witness {
            Some(w) => out.line(format!(
                "k={} exhaustive={} witness={}",
                outcome.k,
                outcome.exhaustive,
                w.to_token_string()
            )),
            None => out.line(format!(
                "k={} exhaustive={} witness=none",
                outcome.k, outcome.exhaustive
            )),
        }
    }
    Ok(if outcome.witness.is_some() {
        EXIT_OK
    } else if outcome.budget_hit {
        EXIT_BUDGET
    } else {
        EXIT_FALSE
    })
}

struct AnalyzeRequest<'a> {
    check: AnalyzeCheck,
    set: Option<&'a str>,
    vertex: Option<&'a str>,
    letter: &'a str,
    i: usize,
    t: usize,
}

#[derive(Serialize)]
struct FactorReport {
    p: [usize; 2],
    i: [usize; 2],
}

#[derive(Serialize, Default)]
struct AnalysisReport {
    check: String,
    set: Vec<Letter>,
    splittable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    blocks: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    block_words: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    factors: Vec<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<Vec<analyze::Lemma1Violation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    covered: Option<BTreeSet<Letter>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered: Option<BTreeSet<Letter>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
}

impl AnalysisReport {
    fn with_split(mut self, sd: &SplitDecomposition) -> Self {
        self.splittable = true;
        self.shift = Some(sd.shift);
        self.k = Some(sd.k());
        for b in &sd.blocks {
            self.blocks.push(b.positions.clone());
            self.block_words.push(Word::new(b.letters.clone()).to_token_string());
            self.factors.push(FactorReport {
                p: [b.factor.start, b.factor.end],
                i: [b.gap.start, b.gap.end],
            });
        }
        self
    }

    fn plain(&self) -> String {
        let set = Word::new(self.set.clone()).to_token_string();
        if !self.splittable {
            return format!("{}: set {{{set}}} is not splittable", self.check);
        }
        let mut lines = vec![format!(
            "{}: set {{{set}}} splits at shift {} into {} blocks",
            self.check,
            self.shift.unwrap_or(0),
            self.k.unwrap_or(0)
        )];
        for (j, (b, f)) in self.block_words.iter().zip(&self.factors).enumerate() {
            lines.push(format!(
                "  P'_{}: {b}  P=[{},{})  I=[{},{})",
                j + 1,
                f.p[0],
                f.p[1],
                f.i[0],
                f.i[1]
            ));
        }
        if let Some(v) = &self.violations {
            lines.push(format!("violations: {}", v.len()));
            for x in v {
                lines.push(format!("  a={} b={} x={}", x.a, x.b, x.x));
            }
        }
        if let (Some(c), Some(u)) = (&self.covered, &self.uncovered) {
            let show = |s: &BTreeSet<Letter>| Word::new(s.iter().copied().collect()).to_token_string();
            lines.push(format!("covered: {{{}}}", show(c)));
            lines.push(format!("uncovered: {{{}}}", show(u)));
        }
        if let (Some(c), Some(b)) = (self.count, self.bound) {
            lines.push(format!("count: {c} (bound {b})"));
        }
        lines.join("\n")
    }
}

fn run_analysis(
    word: &Word,
    graph: Option<&Graph>,
    req: &AnalyzeRequest<'_>,
    fmt: &OutputFormat,
    out: &mut Output,
) -> Result<i32, Failure> {
    let need_graph = || graph.ok_or_else(|| Failure::usage("this check needs --graph"));
    let set = match (req.set, req.vertex) {
        (Some(_), Some(_)) => return Err(Failure::usage("give either --set or --vertex, not both")),
        (Some(s), None) => parse_set(s)?,
        (None, Some(v)) => need_graph()?.neighborhood(v.parse()?)?,
        (None, None) if req.check == AnalyzeCheck::Neighborhood => {
            return Err(Failure::usage("neighborhood needs --vertex"))
        }
        (None, None) => return Err(Failure::usage("give --set or --vertex")),
    };
    let name = format!("{:?}", req.check).to_lowercase();
    let mut report = AnalysisReport {
        check: name,
        set: set.iter().copied().collect(),
        ..AnalysisReport::default()
    };
    let mut code = EXIT_OK;

    let split = if req.check == AnalyzeCheck::Neighborhood {
        let g = need_graph()?;
        let v: Letter = req.vertex.expect("checked above").parse()?;
        match analyze::neighborhood_split(word, g, v) {
            Ok(sd) => Some(sd),
            Err(wordrep::Error::NotSplittable(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        analyze::find_split(word, &set)?
    };

    match split {
        None => code = EXIT_FALSE,
        Some(sd) => {
            report = report.with_split(&sd);
            match req.check {
                AnalyzeCheck::Split | AnalyzeCheck::Neighborhood => {}
                AnalyzeCheck::Endpoints => {
                    let cov = analyze::endpoint_coverage(&sd, &set);
                    if !cov.uncovered.is_empty() {
                        code = EXIT_FALSE;
                    }
                    report.covered = Some(cov.covered);
                    report.uncovered = Some(cov.uncovered);
                }
                AnalyzeCheck::Lemma1 => {
                    let v = analyze::check_lemma1(word, need_graph()?, &set, &sd)?;
                    if !v.is_empty() {
                        code = EXIT_FALSE;
                    }
                    report.violations = Some(v);
                }
                AnalyzeCheck::Claim1 => {
                    let x: Letter = req.letter.parse()?;
                    let count = analyze::claim1_count(word, &sd, x, req.i, req.t)?;
                    if count > req.t {
                        code = EXIT_FALSE;
                    }
                    report.count = Some(count);
                    report.bound = Some(req.t);
                }
            }
        }
    }
    if fmt.json {
        out.json(&report)?;
    } else {
        out.line(report.plain());
    }
    Ok(code)
}
