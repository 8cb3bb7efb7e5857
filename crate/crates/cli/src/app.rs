//! Argument parsing and command dispatch.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use bvn_core::diagram::{check_local_confluence, normal_form, svg};
use bvn_core::generators::{decompose, Rewriting, Target};
use bvn_core::{Diagram, Element, GeneratorTable, SubgroupSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acceptance::{self, Scale};
use crate::error::CliError;
use crate::grammar::{builtin, format_element, parse_element, parse_subgroup, parse_word, Specs};

#[derive(Parser, Debug)]
#[command(name = "bvn", version, about = "Braided Higman-Thompson groups BV_{n,r}(H)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Subgroup H: `Id`, `B<n>` or a file of `name = <braid word>` lines
    #[arg(long = "H", global = true, value_name = "NAME|FILE")]
    pub h: Option<String>,
    /// Machine-readable output
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Product of two elements, first one on top, before reduction
    Compose { a: String, b: String },
    Inverse { a: String },
    Reduce { a: String },
    /// Prints true or false; exits 0 or 1
    Equal { a: String, b: String },
    /// Writes a single-rooted element as a word in the named generators
    Decompose {
        a: String,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = WordTarget::Raw)]
        target: WordTarget,
    },
    /// Multiplies out a generator word
    Evaluate {
        word: String,
        #[arg(long)]
        n: usize,
    },
    /// SVG of the braided diagram
    Render {
        a: String,
        #[arg(long)]
        out: Option<String>,
        /// Render the reduced diagram
        #[arg(long)]
        normal: bool,
    },
    /// Runs the acceptance suite
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Smaller sample sizes
        #[arg(long)]
        quick: bool,
    },
    /// Checks local confluence of the diagram moves on random diagrams
    Confluence {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_slices: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Random elements
    Random {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Carets per forest, at most
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordTarget {
    /// `e`, `h` and `g` generators as produced by the decomposition
    Raw,
    /// `x_i`, `h_1 … h_{n-1}`, `h_{m-1}` and the `g`
    Bv,
    /// `x_i`, `h_{m-1}` and the `g`
    Minimal,
}

/// JSON form of an element, one field per grammar field.
#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "H")]
    pub h: String,
    pub domain: String,
    pub braid: String,
    pub labels: Vec<String>,
    pub range: String,
}

impl From<&Element> for ElementJson {
    fn from(v: &Element) -> Self {
        ElementJson {
            n: v.arity(),
            r: v.roots(),
            h: v.spec().name().to_string(),
            domain: v.domain().to_string(),
            braid: v.braid().to_string(),
            labels: v.labels().iter().map(|l| l.display(v.spec()).to_string()).collect(),
            range: v.range().to_string(),
        }
    }
}

/// Runs `bvn` with `args` (including the program name) and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(path: &str) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(path.to_string(), e)
}

fn read_input(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with("bv") && arg.contains('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err("<stdin>"))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(io_err(arg))
}

fn specs(global: &Global) -> Result<Specs, CliError> {
    let mut s = Specs::new();
    if let Some(h) = &global.h {
        let path = Path::new(h);
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(io_err(h))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(h);
            s = s.with_file(stem, &text);
        }
    }
    Ok(s)
}

/// `H` for commands that build elements from scratch; `B<n>` by default.
fn subgroup(global: &Global, n: usize) -> Result<Arc<SubgroupSpec>, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    let Some(h) = &global.h else {
        return Ok(Arc::new(SubgroupSpec::braid_group(n)));
    };
    let path = Path::new(h);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(io_err(h))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(h);
        return Ok(Arc::new(parse_subgroup(&text, stem, n)?));
    }
    builtin(h, n).map_err(CliError::Usage)
}

fn load(arg: &str, global: &Global) -> Result<Element, CliError> {
    let text = read_input(arg)?;
    parse_element(&text, &specs(global)?)
}

fn emit(v: &Element, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if json {
        writeln!(out, "{}", serde_json::to_string(&ElementJson::from(v))?)
    } else {
        writeln!(out, "{}", format_element(v))
    }
    .map_err(io_err("<stdout>"))
}

fn say(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(io_err("<stdout>"))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Compose { a, b } => {
            let v = load(a, g)?.compose(&load(b, g)?)?;
            emit(&v, g.json, out)?;
        }
        Command::Inverse { a } => emit(&load(a, g)?.inverse(), g.json, out)?,
        Command::Reduce { a } => emit(&load(a, g)?.reduce(), g.json, out)?,
        Command::Equal { a, b } => {
            let (u, v) = (load(a, g)?, load(b, g)?);
            if u.arity() != v.arity() || u.roots() != v.roots() || u.spec() != v.spec() {
                return Err(CliError::Usage("elements live in different groups".into()));
            }
            let eq = u.equals(&v);
            if g.json {
                say(out, serde_json::json!({ "equal": eq }))?;
            } else {
                say(out, eq)?;
            }
            return Ok(if eq { 0 } else { 1 });
        }
        Command::Decompose { a, verify, target } => return run_decompose(&load(a, g)?, *verify, *target, g.json, out),
        Command::Evaluate { word, n } => {
            let table = GeneratorTable::standard(subgroup(g, *n)?);
            let w = parse_word(word, &table)?;
            emit(&table.evaluate(&w), g.json, out)?;
        }
        Command::Render { a, out: path, normal } => {
            let mut d = Diagram::from_element(&load(a, g)?);
            if *normal {
                d = normal_form(&d).map_err(|e| CliError::Invariant(e.to_string()))?;
            }
            let text = svg::render(&d);
            match path {
                Some(p) => std::fs::write(p, text).map_err(io_err(p))?,
                None => out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))?,
            }
        }
        Command::Selftest { seed, quick } => {
            let scale = if *quick { Scale::Quick } else { Scale::Full };
            let outcomes = acceptance::run_all(*seed, scale);
            if g.json {
                say(out, serde_json::to_string(&outcomes)?)?;
            } else {
                for o in &outcomes {
                    say(out, o)?;
                }
            }
            return Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 3 });
        }
        Command::Confluence { count, max_slices, seed } => {
            let r = check_local_confluence(*seed, *count, *max_slices);
            let k = r.counterexamples.len();
            if g.json {
                say(
                    out,
                    serde_json::json!({
                        "diagrams": r.diagrams, "moves": r.moves, "pairs": r.pairs, "counterexamples": k
                    }),
                )?;
            } else {
                say(out, format!("{} diagrams, {} moves, {} move pairs: {k} counterexamples", r.diagrams, r.moves, r.pairs))?;
                for c in &r.counterexamples {
                    say(out, format!("  {}: {}", c.diagram, c.detail))?;
                }
            }
            return Ok(if k == 0 { 0 } else { 3 });
        }
        Command::Random { n, r, seed, count, depth } => {
            if *r == 0 {
                return Err(CliError::Usage("--r must be at least 1".into()));
            }
            let spec = subgroup(g, *n)?;
            for k in 0..*count {
                let v = Element::random(spec.clone(), *r, *depth, seed.wrapping_add(k as u64));
                emit(&v, g.json, out)?;
            }
        }
    }
    Ok(0)
}

fn run_decompose(v: &Element, verify: bool, target: WordTarget, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let table = GeneratorTable::standard(v.spec().clone());
    let raw = decompose(&table, v)?;
    let (word, check) = match target {
        WordTarget::Raw => {
            let check = verify.then(|| table.evaluate(&raw));
            (raw, check)
        }
        WordTarget::Bv | WordTarget::Minimal => {
            let t = if target == WordTarget::Bv { Target::Bv } else { Target::Minimal };
            let r = Rewriting::new(&table, &raw, t)?;
            (r.expand(), verify.then(|| r.evaluate()))
        }
    };
    let verified = check.map(|e| e.equals(v));
    let text = table.display(&word).to_string();
    if json {
        say(out, serde_json::json!({ "word": text, "letters": word.len(), "verified": verified }))?;
    } else {
        say(out, text)?;
    }
    if verified == Some(false) {
        return Err(CliError::Invariant("the word does not evaluate to the input".into()));
    }
    Ok(0)
}
