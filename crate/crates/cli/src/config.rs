use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qmodulus::modulus::{Grid, Suite, SuiteRun};
use qmodulus::Rational;
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    #[serde(alias = "markdown")]
    #[value(alias = "markdown")]
    Md,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Md => "md",
        })
    }
}

/// A rational written as `"p/q"` or a bare integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn parse(&self) -> Result<Rational, CliError> {
        match self {
            RationalText::Int(k) => Ok(Rational::from(*k)),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|e| CliError::Config(format!("bad rational {s:?}: {e}")))
}

/// Grid lists as they appear in a config file. Missing lists keep their
/// defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    a: Option<Vec<RationalText>>,
    b: Option<Vec<RationalText>>,
    q: Option<Vec<usize>>,
    p: Option<Vec<u64>>,
    n: Option<Vec<usize>>,
    trace_p: Option<Vec<u64>>,
    e: Option<Vec<u64>>,
}

/// The config file: TOML, or JSON when the extension is `.json`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    suite: Option<String>,
    seed: Option<u64>,
    samples: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
    #[serde(default)]
    grid: GridFile,
}

/// Command-line overrides; `None` leaves the file value or default.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suite: Option<String>,
    pub a: Option<Vec<String>>,
    pub b: Option<Vec<String>>,
    pub q: Option<Vec<usize>>,
    pub p: Option<Vec<u64>>,
    pub n: Option<Vec<usize>>,
    pub e: Option<Vec<u64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A validated suite invocation.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub run: SuiteRun,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn read_file(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|x| x == "json") {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn rationals(list: &[String]) -> Result<Vec<Rational>, CliError> {
    list.iter().map(|s| parse_rational(s)).collect()
}

impl SuiteConfig {
    pub fn resolve(file: Option<&Path>, cli: Overrides) -> Result<SuiteConfig, CliError> {
        let file = file.map(read_file).transpose()?.unwrap_or_default();
        let name = cli.suite.or(file.suite).ok_or_else(|| CliError::Config("no suite given".into()))?;
        let suite: Suite = name.parse().map_err(|e: qmodulus::Error| CliError::Config(e.to_string()))?;

        let mut grid = Grid::default();
        let g = file.grid;
        let from_file = |list: Option<Vec<RationalText>>| -> Result<Option<Vec<Rational>>, CliError> {
            list.map(|xs| xs.iter().map(RationalText::parse).collect()).transpose()
        };
        if let Some(a) = from_file(g.a)? {
            grid.a = a;
        }
        if let Some(b) = from_file(g.b)? {
            grid.b = b;
        }
        grid.q = g.q.unwrap_or(grid.q);
        grid.p = g.p.unwrap_or(grid.p);
        grid.n = g.n.unwrap_or(grid.n);
        grid.trace_p = g.trace_p.unwrap_or(grid.trace_p);
        grid.e = g.e.unwrap_or(grid.e);

        if let Some(a) = cli.a {
            grid.a = rationals(&a)?;
        }
        if let Some(b) = cli.b {
            grid.b = rationals(&b)?;
        }
        if let Some(q) = cli.q {
            grid.q = q;
        }
        if let Some(p) = cli.p {
            // the trace suites read their own prime list
            if matches!(suite, Suite::TracesOmega | Suite::TracesWitt) {
                grid.trace_p = p;
            } else {
                grid.p = p;
            }
        }
        if let Some(n) = cli.n {
            grid.n = n;
        }
        if let Some(e) = cli.e {
            grid.e = e;
        }
        grid.validate().map_err(|e| CliError::Config(e.to_string()))?;

        let run = SuiteRun { grid, samples: cli.samples.or(file.samples), seed: cli.seed.or(file.seed).unwrap_or(0) };
        if run.samples == Some(0) {
            return Err(CliError::Config("samples must be positive".into()));
        }
        Ok(SuiteConfig { suite, run, out: cli.out.or(file.out), format: cli.format.or(file.format).unwrap_or_default() })
    }
}
