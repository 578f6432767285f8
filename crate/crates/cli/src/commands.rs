//! Argument handling, dispatch and reports.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use raag_core::cayley::{ball, ball_to_dot, BallBudget, GeometryError};
use raag_core::criterion::{check_certificate, classify, find_certificate, CriterionError};
use raag_core::graph::Graph;
use raag_core::rays::{
    verify_close_shadow, verify_close_shadow_mirrored, verify_lines, Enumeration, RayError,
    RaySpec, DEFAULT_N_MAX,
};
use raag_core::word::{canonical_form, diamond, equals, normalize, Word, WordError};
use raag_core::{Certificate, Classification, Variant};
use serde::Serialize;
use thiserror::Error;

use crate::format::{
    parse_certificate, parse_graph_file, parse_word, render_certificate, render_word, ParseError,
};

/// Stands in for a literal `--` between word arguments.
const SEPARATOR: &str = "\u{1f}";

#[derive(Parser, Debug)]
#[command(
    name = "raag",
    version,
    about = "Exact computation in right-angled Artin groups"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Strict,
    Weak,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Strict => Variant::StrictDisjoint,
            VariantArg::Weak => Variant::WeakEmpty,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the boundary of the standard cube complex.
    Classify { graph: PathBuf },
    /// Search for a certificate.
    Certify {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "strict")]
        variant: VariantArg,
    },
    /// Check a certificate file against a graph.
    CheckCert { graph: PathBuf, cert: PathBuf },
    /// Reduce a word to a geodesic and to canonical form.
    Normalize {
        graph: PathBuf,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Decide whether `w1 -- w2` name the same element.
    Equal {
        graph: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Decompose two geodesic bigons `a1 -- a2 -- b1 -- b2`.
    Diamond {
        graph: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Enumerate a Cayley ball.
    Ball {
        graph: PathBuf,
        radius: usize,
        /// Write the ball as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = BallBudget::default().max_elements)]
        max_elements: usize,
    },
    /// Check both line identities for every index up to `--nmax`.
    VerifyLines {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
        /// Certificate to build the rays from; searched for when absent.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check that geodesics to points past `v'_i` stay close to it.
    VerifyClose {
        graph: PathBuf,
        #[arg(long = "i")]
        index: usize,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 16)]
        enumerate_bound: usize,
        /// Follow `s` to `w'_i` with a path in `B` instead.
        #[arg(long)]
        mirror: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Ray(#[from] RayError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Criterion(CriterionError::PoolTooLarge(_))
            | CliError::Geometry(GeometryError::BudgetExceeded { .. })
            | CliError::Ray(RayError::BudgetExceeded { .. })
            | CliError::Word(WordError::LengthBound { .. }) => 3,
            _ => 2,
        }
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: u8,
    text: String,
    json: serde_json::Value,
}

impl Report {
    fn new(code: u8, text: String, json: impl Serialize) -> Report {
        Report {
            code,
            text,
            json: serde_json::to_value(json).expect("reports serialize"),
        }
    }
}

/// Runs one command line, `argv[0]` being the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv
        .into_iter()
        .map(Into::into)
        .map(|a| if a == "--" { SEPARATOR.to_string() } else { a })
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = e.code();
            let stdout = if cli.json {
                let obj = serde_json::json!({ "error": e.to_string(), "exit_code": code });
                format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    parse_graph_file(&read(path)?).map_err(|source| CliError::File {
        path: path.clone(),
        source,
    })
}

fn load_certificate(graph: &Graph, path: &PathBuf) -> Result<Certificate, CliError> {
    parse_certificate(graph, &read(path)?).map_err(|source| CliError::File {
        path: path.clone(),
        source,
    })
}

/// Splits positional tokens at `--` into exactly `n` words.
fn split_words(graph: &Graph, tokens: &[String], n: usize) -> Result<Vec<Word>, CliError> {
    let parts: Vec<&[String]> = tokens.split(|t| t == SEPARATOR).collect();
    if parts.len() != n {
        return Err(CliError::Usage(format!(
            "expected {n} words separated by `--`, got {}",
            parts.len()
        )));
    }
    parts
        .into_iter()
        .map(|p| Ok(parse_word(graph, &p.join(" "))?))
        .collect()
}

fn certificate_for(graph: &Graph, path: Option<&PathBuf>) -> Result<Option<Certificate>, CliError> {
    match path {
        Some(p) => load_certificate(graph, p).map(Some),
        None => Ok(find_certificate(graph, Variant::WeakEmpty)?),
    }
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    command: &'static str,
    classification: &'static str,
    sphere_dimension: Option<usize>,
    certificate: Option<String>,
    #[serde(rename = "B")]
    b_set: Option<String>,
    #[serde(rename = "C")]
    c_set: Option<String>,
    path: Option<Vec<&'a str>>,
}

#[derive(Serialize)]
struct CertifyJson {
    command: &'static str,
    variant: &'static str,
    found: bool,
    certificate: Option<String>,
}

#[derive(Serialize)]
struct CheckJson {
    command: &'static str,
    passed: bool,
    failures: Vec<&'static str>,
}

#[derive(Serialize)]
struct NormalizeJson {
    command: &'static str,
    input: String,
    geodesic: String,
    canonical: String,
    length: usize,
    deletions: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct EqualJson {
    command: &'static str,
    w1: String,
    w2: String,
    equal: bool,
}

#[derive(Serialize)]
struct DiamondJson {
    command: &'static str,
    gamma1: String,
    tau1: String,
    delta1: String,
    gamma2: String,
    tau2: String,
    delta2: String,
    violations: Vec<&'static str>,
}

#[derive(Serialize)]
struct BallJson {
    command: &'static str,
    radius: usize,
    elements: usize,
    sphere_sizes: Vec<usize>,
    dot: Option<String>,
}

#[derive(Serialize)]
struct LinesRowJson {
    n: usize,
    identity1: bool,
    identity2: bool,
    lengths: [usize; 4],
}

#[derive(Serialize)]
struct LinesJson {
    command: &'static str,
    n_max: usize,
    certificate: String,
    all_hold: bool,
    rows: Vec<LinesRowJson>,
}

#[derive(Serialize)]
struct CloseJson {
    command: &'static str,
    i: usize,
    path: String,
    mirrored: bool,
    geodesic: bool,
    result: &'static str,
    geodesics: Option<usize>,
    target: Option<String>,
    witness: Option<String>,
    length: Option<usize>,
    bound: Option<usize>,
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Classify { graph } => {
            let g = load_graph(&graph)?;
            let class = classify(&g)?;
            let mut json = ClassifyJson {
                command: "classify",
                classification: class.tag(),
                sphere_dimension: None,
                certificate: None,
                b_set: None,
                c_set: None,
                path: None,
            };
            let text = match &class {
                Classification::Sphere(n) => {
                    json.sphere_dimension = Some(*n);
                    format!("SPHERE({n})\n")
                }
                Classification::NonPathConnected(cert) => {
                    let (b, c) = (g.format_set(cert.b_set), g.format_set(cert.c_set));
                    let path: Vec<&str> = cert.path().iter().map(|&v| g.name(v)).collect();
                    let text = format!("{} B={b} C={c}\npath: {}\n", class.tag(), path.join(" "));
                    json.certificate = Some(render_certificate(&g, cert));
                    json.b_set = Some(b);
                    json.c_set = Some(c);
                    json.path = Some(path);
                    text
                }
                other => format!("{}\n", other.tag()),
            };
            let json = serde_json::to_value(json).expect("json");
            Ok(Report {
                code: 0,
                text,
                json,
            })
        }
        Command::Certify { graph, variant } => {
            let g = load_graph(&graph)?;
            let variant = Variant::from(variant);
            let found = find_certificate(&g, variant)?;
            let block = found.as_ref().map(|c| render_certificate(&g, c));
            let text = block.clone().unwrap_or_else(|| "NONE\n".into());
            let json = CertifyJson {
                command: "certify",
                variant: variant.tag(),
                found: found.is_some(),
                certificate: block,
            };
            Ok(Report::new(u8::from(found.is_none()), text, json))
        }
        Command::CheckCert { graph, cert } => {
            let g = load_graph(&graph)?;
            let cert = load_certificate(&g, &cert)?;
            let verdict = check_certificate(&g, &cert);
            let failures: Vec<&'static str> = verdict.failures.iter().map(|f| f.name()).collect();
            let text = if verdict.passed() {
                "PASS\n".to_string()
            } else {
                format!("FAIL: {}\n", failures.join(", "))
            };
            let json = CheckJson {
                command: "check-cert",
                passed: verdict.passed(),
                failures,
            };
            Ok(Report::new(u8::from(!verdict.passed()), text, json))
        }
        Command::Normalize { graph, word } => {
            let g = load_graph(&graph)?;
            let [w] = <[Word; 1]>::try_from(split_words(&g, &word, 1)?).expect("one word");
            let n = normalize(&g, &w)?;
            let canonical = canonical_form(&g, &w)?;
            let json = NormalizeJson {
                command: "normalize",
                input: render_word(&g, &w),
                geodesic: render_word(&g, &n.word),
                canonical: render_word(&g, &canonical),
                length: n.word.len(),
                deletions: n.trace.deletions.clone(),
            };
            let text = format!(
                "geodesic: {}\ncanonical: {}\nlength: {}\n",
                json.geodesic, json.canonical, json.length
            );
            Ok(Report::new(0, text, json))
        }
        Command::Equal { graph, words } => {
            let g = load_graph(&graph)?;
            let ws = split_words(&g, &words, 2)?;
            let same = equals(&g, &ws[0], &ws[1])?;
            let text = if same { "EQUAL\n" } else { "NOT_EQUAL\n" }.to_string();
            let json = EqualJson {
                command: "equal",
                w1: render_word(&g, &ws[0]),
                w2: render_word(&g, &ws[1]),
                equal: same,
            };
            Ok(Report::new(u8::from(!same), text, json))
        }
        Command::Diamond { graph, words } => {
            let g = load_graph(&graph)?;
            let ws = split_words(&g, &words, 4)?;
            let (a1, a2, b1, b2) = (&ws[0], &ws[1], &ws[2], &ws[3]);
            if !equals(&g, &a1.concat(a2), &b1.concat(b2))? {
                return Err(CliError::Usage(
                    "a1 a2 and b1 b2 must name the same element".into(),
                ));
            }
            let dd = diamond(&g, a1, a2, b1, b2)?;
            let violations = dd.violations(&g, a1, a2, b1, b2)?;
            let r = |w: &Word| render_word(&g, w);
            let json = DiamondJson {
                command: "diamond",
                gamma1: r(&dd.gamma1),
                tau1: r(&dd.tau1),
                delta1: r(&dd.delta1),
                gamma2: r(&dd.gamma2),
                tau2: r(&dd.tau2),
                delta2: r(&dd.delta2),
                violations,
            };
            let mut text = format!(
                "gamma1: {}\ntau1: {}\ndelta1: {}\ngamma2: {}\ntau2: {}\ndelta2: {}\n",
                json.gamma1, json.tau1, json.delta1, json.gamma2, json.tau2, json.delta2
            );
            if !json.violations.is_empty() {
                text.push_str(&format!("violations: {}\n", json.violations.join(", ")));
            }
            Ok(Report::new(
                u8::from(!json.violations.is_empty()),
                text,
                json,
            ))
        }
        Command::Ball {
            graph,
            radius,
            dot,
            max_elements,
        } => {
            let g = load_graph(&graph)?;
            let space = ball(&g, radius, BallBudget { max_elements })?;
            if let Some(path) = &dot {
                std::fs::write(path, ball_to_dot(&g, &space)).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            let sizes = space.sphere_sizes();
            let text = format!(
                "radius: {radius}\nelements: {}\nsphere sizes: {}\n",
                space.len(),
                sizes
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            let json = BallJson {
                command: "ball",
                radius,
                elements: space.len(),
                sphere_sizes: sizes,
                dot: dot.map(|p| p.display().to_string()),
            };
            Ok(Report::new(0, text, json))
        }
        Command::VerifyLines { graph, nmax, cert } => {
            let g = load_graph(&graph)?;
            let Some(cert) = certificate_for(&g, cert.as_ref())? else {
                return Ok(no_certificate("verify-lines"));
            };
            let block = render_certificate(&g, &cert);
            let report = verify_lines(&RaySpec::new(g, cert, nmax)?)?;
            let mut text = String::new();
            for row in &report.rows {
                text.push_str(&format!(
                    "n={} identity1={} identity2={} lengths={:?}\n",
                    row.n, row.identity1, row.identity2, row.lengths
                ));
            }
            text.push_str(if report.all_hold() {
                "HOLDS\n"
            } else {
                "FAILS\n"
            });
            let json = LinesJson {
                command: "verify-lines",
                n_max: nmax,
                certificate: block,
                all_hold: report.all_hold(),
                rows: report
                    .rows
                    .iter()
                    .map(|r| LinesRowJson {
                        n: r.n,
                        identity1: r.identity1,
                        identity2: r.identity2,
                        lengths: r.lengths,
                    })
                    .collect(),
            };
            Ok(Report::new(u8::from(!json.all_hold), text, json))
        }
        Command::VerifyClose {
            graph,
            index,
            gamma,
            enumerate_bound,
            mirror,
            cert,
        } => {
            let g = load_graph(&graph)?;
            let path = parse_word(&g, &gamma)?;
            let Some(cert) = certificate_for(&g, cert.as_ref())? else {
                return Ok(no_certificate("verify-close"));
            };
            let spec = RaySpec::new(g.clone(), cert, index.max(DEFAULT_N_MAX))?;
            let report = if mirror {
                verify_close_shadow_mirrored(&spec, index, &path, enumerate_bound)?
            } else {
                verify_close_shadow(&spec, index, &path, enumerate_bound)?
            };
            let mut json = CloseJson {
                command: "verify-close",
                i: index,
                path: render_word(&g, &path),
                mirrored: mirror,
                geodesic: report.geodesic,
                result: "",
                geodesics: None,
                target: None,
                witness: None,
                length: None,
                bound: None,
            };
            let (code, line) = match &report.enumeration {
                Enumeration::Passed { geodesics } => {
                    json.result = "PASSED";
                    json.geodesics = Some(*geodesics);
                    (0, format!("PASSED ({geodesics} geodesics checked)"))
                }
                Enumeration::Failed { target, geodesic } => {
                    json.result = "FAILED";
                    json.target = Some(render_word(&g, target));
                    json.witness = Some(render_word(&g, geodesic));
                    (
                        1,
                        format!(
                            "FAILED target {} geodesic {}",
                            render_word(&g, target),
                            render_word(&g, geodesic)
                        ),
                    )
                }
                Enumeration::Inconclusive { length, bound } => {
                    json.result = "INCONCLUSIVE";
                    json.length = Some(*length);
                    json.bound = Some(*bound);
                    (
                        3,
                        format!("INCONCLUSIVE length {length} exceeds bound {bound}"),
                    )
                }
            };
            let code = if report.geodesic { code } else { 1 };
            let text = format!("geodesic: {}\n{line}\n", report.geodesic);
            Ok(Report::new(code, text, json))
        }
    }
}

fn no_certificate(command: &'static str) -> Report {
    Report::new(
        1,
        "NONE\n".into(),
        serde_json::json!({ "command": command, "certificate": null }),
    )
}
