//! Command-line front end. `run` never prints; it returns the exit status and
//! the complete text for stdout and stderr, so a failing command emits
//! nothing on stdout.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bfun::{min_jumping_coefficient, BFunEngine, RationalJson, MAX_JUMP_N};
use crate::coxeter::{degrees, opdam_bg};
use crate::ratfactor::{format_rational, parse_rational};
use crate::sympoly::{parse_poly, verify_lemmas};
use crate::weyl::{find_bernstein, OracleBounds};
use crate::{Error, FactoredBPoly, Result};

pub const CACHE_VERSION: u32 = 1;
pub const DEFAULT_CACHE: &str = "bfun-cache.json";

/// Largest `n` accepted by the formula verbs.
pub const MAX_FORMULA_N: usize = 40;
/// Largest `n` accepted by `verify-lemmas`.
pub const MAX_LEMMA_N: usize = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bfun", version, about = "Exact b-functions of Vandermonde determinants and Coxeter arrangements")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Cache file for the recursive formula
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjectured b-function of the discriminant in n points
    Conj { n: usize },
    /// Local b-function at a point given by rational coordinates; the
    /// coordinates take every remaining argument, so put flags first
    Local {
        #[arg(required = true, allow_hyphen_values = true, value_name = "COORD")]
        coords: Vec<String>,
    },
    /// b-function after blowing up the diagonal
    Blowup { n: usize },
    /// Upper bound on the b-function
    Upper { n: usize },
    /// Product formula for a Coxeter type such as A3, G2 or I2(7)
    Opdam { label: String },
    /// Run every invariant check for 2 <= n <= N_MAX
    Check { n_max: usize },
    /// Verify the polynomial identities for n points
    VerifyLemmas { n: usize },
    /// Search for a functional equation of a polynomial
    Oracle {
        expr: String,
        #[arg(long, default_value_t = OracleBounds::default().order)]
        order: u32,
        #[arg(long, default_value_t = OracleBounds::default().s_degree)]
        sdeg: u32,
        #[arg(long, default_value_t = OracleBounds::default().coeff_degree)]
        cdeg: u32,
    },
    /// Smallest jumping coefficient of the braid arrangement
    Jump { n: usize },
}

/// Complete result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(message: String) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: message }
    }
}

/// On-disk memo of the recursive formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub entries: BTreeMap<usize, FactoredBPoly>,
}

impl CacheFile {
    pub fn new(entries: BTreeMap<usize, FactoredBPoly>) -> Self {
        Self { version: CACHE_VERSION, entries }
    }

    /// Missing file reads as empty.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::new(BTreeMap::new()));
        }
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            version: u32,
        }
        let header: Header = serde_json::from_str(text)?;
        if header.version != CACHE_VERSION {
            return Err(Error::CacheVersion(header.version));
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cache serializes")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, self.to_json())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if !(2..=max).contains(&n) {
        return Err(Error::OutOfRange(format!("n must be in 2..={max}, got {n}")));
    }
    Ok(())
}

fn show_b(b: &FactoredBPoly, json: bool) -> String {
    if json {
        serde_json::to_string(b).expect("b serializes") + "\n"
    } else {
        format!("{b}\n")
    }
}

struct Session {
    json: bool,
    cache_path: PathBuf,
    engine: Option<BFunEngine>,
    loaded: usize,
}

impl Session {
    fn engine(&mut self) -> Result<&BFunEngine> {
        if self.engine.is_none() {
            let cache = CacheFile::load(&self.cache_path)?;
            self.loaded = cache.entries.len();
            self.engine = Some(BFunEngine::with_entries(cache.entries));
        }
        Ok(self.engine.as_ref().unwrap())
    }

    fn persist(&self) -> Result<()> {
        if let Some(engine) = &self.engine {
            let entries = engine.entries();
            if entries.len() != self.loaded {
                CacheFile::new(entries).save(&self.cache_path)?;
            }
        }
        Ok(())
    }
}

/// Parse `argv` (program name first), execute and collect the output.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let mut session = Session {
        json: cli.json,
        cache_path: cli.cache.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE)),
        engine: None,
        loaded: 0,
    };
    match execute(&cli.command, &mut session).and_then(|out| session.persist().map(|_| out)) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn execute(command: &Command, session: &mut Session) -> Result<(i32, String)> {
    let json = session.json;
    match command {
        Command::Conj { n } => {
            check_n(*n, MAX_FORMULA_N)?;
            Ok((EXIT_OK, show_b(&session.engine()?.b_xi(*n), json)))
        }
        Command::Local { coords } => {
            if coords.len() > MAX_FORMULA_N {
                return Err(Error::OutOfRange(format!("at most {MAX_FORMULA_N} coordinates")));
            }
            let q = coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            Ok((EXIT_OK, show_b(&session.engine()?.local_b(&q), json)))
        }
        Command::Blowup { n } => {
            check_n(*n, MAX_FORMULA_N)?;
            Ok((EXIT_OK, show_b(&session.engine()?.blowup_b(*n)?, json)))
        }
        Command::Upper { n } => {
            check_n(*n, MAX_FORMULA_N)?;
            Ok((EXIT_OK, show_b(&session.engine()?.upper_bound_b(*n)?, json)))
        }
        Command::Opdam { label } => {
            let datum = degrees(label)?;
            Ok((EXIT_OK, show_b(&opdam_bg(&datum), json)))
        }
        Command::Check { n_max } => {
            check_n(*n_max, MAX_JUMP_N)?;
            let reports = session.engine()?.run_invariant_suite(*n_max)?;
            let passed = reports.iter().all(|r| r.all_passed());
            let out = if json {
                serde_json::to_string_pretty(&reports)? + "\n"
            } else {
                let mut out = String::new();
                for r in &reports {
                    let failed = r.failed_checks();
                    if failed.is_empty() {
                        writeln!(out, "n = {:2}  ok      {}", r.n, r.conjectured).unwrap();
                    } else {
                        writeln!(out, "n = {:2}  FAILED  {}", r.n, failed.join(", ")).unwrap();
                    }
                }
                let verdict = if passed { "all checks passed" } else { "some checks failed" };
                writeln!(out, "{verdict}").unwrap();
                out
            };
            Ok((if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, out))
        }
        Command::VerifyLemmas { n } => {
            check_n(*n, MAX_LEMMA_N)?;
            let checks = verify_lemmas(*n);
            let passed = checks.iter().all(|c| c.passed || c.informational);
            let out = if json {
                serde_json::to_string_pretty(&checks)? + "\n"
            } else {
                let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
                let mut out = String::new();
                for c in &checks {
                    let status = match (c.passed, c.informational) {
                        (true, _) => "pass",
                        (false, true) => "info",
                        (false, false) => "FAIL",
                    };
                    let line = format!("{:width$}  {status}  {}", c.name, c.detail);
                    writeln!(out, "{}", line.trim_end()).unwrap();
                }
                out
            };
            Ok((if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, out))
        }
        Command::Oracle { expr, order, sdeg, cdeg } => {
            let f = parse_poly(expr)?;
            let bounds = OracleBounds::new(*order, *sdeg, *cdeg);
            let found = find_bernstein(&f, bounds)?;
            Ok((EXIT_OK, render_oracle(found.as_ref(), bounds, json)))
        }
        Command::Jump { n } => {
            check_n(*n, MAX_JUMP_N)?;
            let c = min_jumping_coefficient(*n)?;
            let out = if json {
                serde_json::to_string(&RationalJson(c))? + "\n"
            } else {
                format_rational(&c) + "\n"
            };
            Ok((EXIT_OK, out))
        }
    }
}

fn render_oracle(found: Option<&crate::weyl::OracleResult>, bounds: OracleBounds, json: bool) -> String {
    let residual_text = |r: &[crate::Rational]| {
        r.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    };
    match (found, json) {
        (None, true) => json!({ "found": false, "bounds": bounds }).to_string() + "\n",
        (None, false) => format!(
            "inconclusive: no functional equation with order <= {}, s-degree <= {}, coefficient degree <= {}\n",
            bounds.order, bounds.s_degree, bounds.coeff_degree
        ),
        (Some(res), true) => {
            json!({
                "found": true,
                "b": res.b,
                "residual": res.residual.iter().map(format_rational).collect::<Vec<_>>(),
                "certificate": res.certificate.to_string(),
                "bounds": bounds,
            })
            .to_string()
                + "\n"
        }
        (Some(res), false) => {
            let mut out = String::new();
            if res.splits() {
                writeln!(out, "b(s) = {}", res.b).unwrap();
            } else {
                writeln!(out, "b(s) = {} * [{}]", res.b, residual_text(&res.residual)).unwrap();
            }
            writeln!(out, "L = {}", res.certificate).unwrap();
            out
        }
    }
}
