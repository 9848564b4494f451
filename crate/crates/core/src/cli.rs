//! Command-line front end. Every command renders a deterministic report that
//! embeds the engine version and the job configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::{degree_range, enumerate_chains, euler_check, listing, ChainError};
use crate::coeff::CoeffError;
use crate::freealg::{parse_rational, AlgebraError, Presentation, PresentationFile};
use crate::groebner::{complete, normal_word_series, verify_diamond, GroebnerBasis, GroebnerError};
use crate::homology::{
    bar_oracle, betti, reduce_complex, render_reduced, BettiReport, HomologyError, Specialization,
};
use crate::resolution::{Resolution, ResolutionError};
use crate::tlmap::{braid_image, preset, tl, BraidWord, LoopParameter, PresetError, PresetId};

pub const ENGINE: &str = concat!("anick ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(name = "anick", version, about = "Noncommutative Groebner bases, Anick resolutions and Tor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete a presentation and check every ambiguity.
    Groebner(CommonArgs),
    /// Enumerate Anick chains level by level.
    Chains(LevelArgs),
    /// Build the differentials d_0 .. d_max of Anick's resolution.
    Resolution(LevelArgs),
    /// Tor dimensions from the reduced complex.
    Homology(HomologyArgs),
    /// Tor dimensions from the normalized bar complex.
    Oracle(HomologyArgs),
    /// Normal-word counts by length and the chain Euler identity.
    Hilbert(HilbertArgs),
    /// Kauffman skein image of a braid word in TL_n over A.
    BraidImage(BraidArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonArgs {
    /// Built-in presentation: tl3, tlN, b3-monoid.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub preset: Option<String>,
    /// JSON presentation file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Largest ambiguity degree examined during completion.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LevelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(0..=32))]
    pub max_level: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HomologyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub level: LevelArgs,
    /// `generic` or a rational value; repeatable. Defaults to generic only.
    #[arg(long = "tau")]
    pub tau: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HilbertArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    /// Longest word length counted.
    #[arg(long, default_value_t = 10)]
    pub length: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BraidArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    /// Braid word such as "s1 s2^-1 s1".
    #[arg(long)]
    pub word: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Limit,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Usage, message: message.into() }
    }

    fn limit(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Limit, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Internal, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => 1,
            ErrorKind::Limit => 2,
            ErrorKind::Internal => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::CapTooSmall { .. } => CliError::limit(e.to_string()),
            GroebnerError::Coeff(_) => CliError::usage(e.to_string()),
            GroebnerError::InvalidOverlap(_) => CliError::internal(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match e {
            ResolutionError::IncompleteBasis { .. } | ResolutionError::InfiniteDimensional(_) => {
                CliError::limit(e.to_string())
            }
            ResolutionError::Chain(c) => c.into(),
            ResolutionError::Coeff(_) => CliError::usage(e.to_string()),
            _ => CliError::internal(e.to_string()),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Resolution(r) => r.into(),
            HomologyError::Groebner(g) => g.into(),
            HomologyError::LevelsMissing { .. } => CliError::limit(e.to_string()),
            HomologyError::NotAugmented => CliError::internal(e.to_string()),
            HomologyError::Pole { .. } | HomologyError::Coeff(_) => CliError::usage(e.to_string()),
        }
    }
}

impl From<PresetError> for CliError {
    fn from(e: PresetError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Loads the presentation named by `--preset` or `--file`.
pub fn load_presentation(args: &CommonArgs) -> Result<Presentation, CliError> {
    match (&args.preset, &args.file) {
        (Some(name), None) => Ok(preset(name.parse::<PresetId>()?)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            presentation_from_json(&text).map_err(|m| CliError::usage(format!("{}:{m}", path.display())))
        }
        _ => Err(CliError::usage("exactly one of --preset and --file is required")),
    }
}

/// Parses a presentation file; errors are `line:column: message`.
pub fn presentation_from_json(text: &str) -> Result<Presentation, String> {
    let file: PresentationFile =
        serde_json::from_str(text).map_err(|e| format!("{}:{}: {e}", e.line(), e.column()))?;
    let relations = file.relations.clone();
    file.into_presentation().map_err(|e| match &e {
        AlgebraError::Parse { index, source } => {
            let (line, col) = locate_relation(text, &relations[*index]);
            format!("{line}:{}: relation {index}: {}", col + source.column, source.message)
        }
        _ => format!("1:1: {e}"),
    })
}

/// Line and column of the opening quote of a relation string in the file.
fn locate_relation(text: &str, relation: &str) -> (usize, usize) {
    let needle = serde_json::to_string(relation).unwrap_or_default();
    match text.find(&needle) {
        Some(pos) => {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, col)
        }
        None => (1, 0),
    }
}

fn parse_specializations(values: &[String]) -> Result<Vec<Specialization>, CliError> {
    if values.is_empty() {
        return Ok(vec![Specialization::Generic]);
    }
    let mut out = Vec::new();
    for v in values {
        let s = if v.eq_ignore_ascii_case("generic") {
            Specialization::Generic
        } else {
            Specialization::At(parse_rational(v).map_err(|e| CliError::usage(format!("--tau {v}: {}", e.message)))?)
        };
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

fn completed(args: &CommonArgs) -> Result<(Presentation, GroebnerBasis), CliError> {
    let p = load_presentation(args)?;
    let gb = complete(&p, args.degree_cap as usize)?;
    Ok((p, gb))
}

fn require_complete(gb: &GroebnerBasis) -> Result<(), CliError> {
    if gb.is_complete() {
        Ok(())
    } else {
        Err(ResolutionError::IncompleteBasis {
            cap: gb.degree_cap(),
            pending: gb.pending_degree().unwrap_or(0),
        }
        .into())
    }
}

/// A finished report: JSON value plus its text rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format, config: &Value) -> String {
        match format {
            Format::Json => {
                let doc = json!({ "engine": ENGINE, "config": config, "result": self.json });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable report");
                s.push('\n');
                s
            }
            Format::Text => format!("# {ENGINE}\n# config: {config}\n{}", self.text),
        }
    }
}

fn config_value(command: &str, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).expect("serializable config");
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), Value::String(command.into()));
        m.retain(|_, x| !x.is_null());
    }
    v
}

/// Runs a parsed command and returns the rendered report and output path.
pub fn run(cli: &Cli) -> Result<(String, Option<PathBuf>), CliError> {
    let (common, config, report) = match &cli.command {
        Command::Groebner(a) => (a, config_value("groebner", a), cmd_groebner(a)?),
        Command::Chains(a) => (&a.common, config_value("chains", a), cmd_chains(a)?),
        Command::Resolution(a) => (&a.common, config_value("resolution", a), cmd_resolution(a)?),
        Command::Homology(a) => (&a.level.common, config_value("homology", a), cmd_homology(a, false)?),
        Command::Oracle(a) => (&a.level.common, config_value("oracle", a), cmd_homology(a, true)?),
        Command::Hilbert(a) => (&a.common, config_value("hilbert", a), cmd_hilbert(a)?),
        Command::BraidImage(a) => (&a.common, config_value("braid-image", a), cmd_braid_image(a)?),
    };
    Ok((report.render(common.format, &config), common.output.clone()))
}

pub fn cmd_groebner(a: &CommonArgs) -> Result<Report, CliError> {
    let (p, gb) = completed(a)?;
    let alphabet = gb.alphabet();
    let basis: Vec<String> = gb.elements().iter().map(|e| e.display(alphabet).to_string()).collect();
    let diamond = verify_diamond(&gb)?;
    let mut text = String::new();
    let _ = writeln!(text, "generators: {} (smallest first)", alphabet.names().join(" < "));
    let _ = writeln!(text, "relations: {}", p.relations.len());
    let _ = writeln!(text, "degree cap: {}", gb.degree_cap());
    let _ = writeln!(text, "complete: {}", gb.is_complete());
    if let Some(d) = gb.pending_degree() {
        let _ = writeln!(text, "first unresolved ambiguity degree: {d}");
    }
    let _ = writeln!(text, "basis ({}):", basis.len());
    for b in &basis {
        let _ = writeln!(text, "  {b}");
    }
    let _ = writeln!(text, "ambiguities ({}):", diamond.entries.len());
    for e in &diamond.entries {
        let _ = writeln!(
            text,
            "  {:<12} {:<9} {} / {} @{}  ->  {}",
            e.word,
            format!("{:?}", e.kind).to_lowercase(),
            e.left,
            e.right,
            e.offset,
            if e.resolved { "0".to_string() } else { e.normal_form.clone() }
        );
    }
    let json = json!({
        "generators": alphabet.names(),
        "degree_cap": gb.degree_cap(),
        "complete": gb.is_complete(),
        "pending_degree": gb.pending_degree(),
        "basis": basis,
        "diamond": diamond,
    });
    Ok(Report { json, text })
}

pub fn cmd_chains(a: &LevelArgs) -> Result<Report, CliError> {
    let (_, gb) = completed(&a.common)?;
    require_complete(&gb)?;
    let chains = enumerate_chains(&gb, a.max_level as i32)?;
    let alphabet = gb.alphabet();
    let mut text = String::new();
    let mut levels = Vec::new();
    for cs in chains.levels() {
        let l = listing(cs, alphabet);
        let range = degree_range(cs);
        let _ = write!(text, "C_{} ({} chains", cs.level, cs.len());
        if let Some(r) = &range {
            let _ = write!(text, ", lengths {}..{}", r.min_length, r.max_length);
        }
        let _ = writeln!(text, "):");
        for c in &l.chains {
            let _ = writeln!(text, "  {}", c.word);
        }
        levels.push(json!({ "listing": l, "lengths": range, "histogram": cs.degree_histogram }));
    }
    Ok(Report { json: json!({ "counts": chains.counts(), "levels": levels }), text })
}

pub fn cmd_resolution(a: &LevelArgs) -> Result<Report, CliError> {
    let (_, gb) = completed(&a.common)?;
    let res = Resolution::build(&gb, a.max_level as i32)?;
    let check = res.check_complex(2)?;
    if !check.is_complex {
        return Err(CliError::internal(format!("d∘d ≠ 0: {check:?}")));
    }
    let export = res.export();
    let mut text = String::new();
    for t in &export {
        let _ = writeln!(text, "d_{}:", t.level);
        for e in &t.entries {
            let _ = writeln!(text, "  d{}({} ⊗ 1) = {}", t.level, e.chain, e.value);
        }
    }
    let _ = writeln!(text, "d∘d = 0 on all generators: {}", check.is_complex);
    Ok(Report { json: json!({ "differentials": export, "complex_check": check }), text })
}

pub fn cmd_homology(a: &HomologyArgs, oracle: bool) -> Result<Report, CliError> {
    let specs = parse_specializations(&a.tau)?;
    let (_, gb) = completed(&a.level.common)?;
    require_complete(&gb)?;
    if gb.field().param().is_none() && specs.iter().any(|s| matches!(s, Specialization::At(_))) {
        return Err(CliError::usage("--tau given but the presentation has no parameter"));
    }
    let max = a.level.max_level as usize;
    let mut tables = Vec::new();
    let mut text = String::new();
    let mut extra = Value::Null;
    if oracle {
        for s in &specs {
            tables.push(bar_oracle(&gb, max, s)?);
        }
    } else {
        let res = Resolution::build(&gb, max as i32)?;
        let reduced = reduce_complex(&res);
        for s in &specs {
            tables.push(betti(&reduced, max, s)?);
        }
        let mut dependence = Vec::new();
        let mut lines = Vec::new();
        for d in &reduced {
            if d.level >= 1 {
                dependence.push(json!({ "level": d.level, "parameter_entries": d.depends_on_parameter() }));
            }
            lines.extend(render_reduced(&res, d, gb.alphabet()));
        }
        for l in &lines {
            let _ = writeln!(text, "{l}");
        }
        for d in &dependence {
            let _ = writeln!(text, "d̄{} involves the parameter: {}", d["level"], d["parameter_entries"]);
        }
        extra = json!({ "reduced_differentials": lines, "parameter_dependence": dependence });
    }
    let report = BettiReport::new(tables);
    text.push_str(&report.render_text());
    Ok(Report { json: json!({ "betti": report, "reduced": extra }), text })
}

pub fn cmd_hilbert(a: &HilbertArgs) -> Result<Report, CliError> {
    let (p, gb) = completed(&a.common)?;
    let series = normal_word_series(&gb, a.length);
    // without completeness the counts are upper bounds, exact up to the cap
    // only when every relation is homogeneous
    let homogeneous = p.relations.iter().all(|r| r.terms().all(|(w, _)| w.len() == r.degree()));
    let obs = gb.obstructions();
    let euler = euler_check(gb.alphabet().len(), &obs, a.length)?;
    let mut text = String::new();
    let exact_through = match (gb.is_complete(), homogeneous) {
        (true, _) => Some(a.length),
        (false, true) => Some(a.length.min(gb.degree_cap())),
        (false, false) => None,
    };
    let _ = writeln!(text, "complete basis: {}", gb.is_complete());
    match exact_through {
        Some(n) => {
            let _ = writeln!(text, "counts exact through length {n}");
        }
        None => {
            let _ = writeln!(text, "counts are upper bounds");
        }
    }
    let _ = writeln!(text, "normal words by length: {:?}", series.coefficients);
    let _ = writeln!(text, "total through length {}: {}", a.length, series.total());
    let _ = writeln!(text, "chain Euler identity holds through length {}: {}", a.length, euler.holds);
    Ok(Report {
        json: json!({ "complete": gb.is_complete(), "exact_through": exact_through, "series": series, "total": series.total(), "euler": euler }),
        text,
    })
}

pub fn cmd_braid_image(a: &BraidArgs) -> Result<Report, CliError> {
    let n = match a.common.preset.as_deref().map(str::parse::<PresetId>) {
        Some(Ok(PresetId::Tl(n))) => n,
        Some(Err(e)) => return Err(e.into()),
        _ => return Err(CliError::usage("braid-image needs --preset tlN")),
    };
    let gb = complete(&tl(n, LoopParameter::Kauffman)?, a.common.degree_cap as usize)?;
    require_complete(&gb)?;
    let word = BraidWord::parse(&a.word, n)?;
    let image = braid_image(&word, &gb)?.display(gb.alphabet()).to_string();
    let text = format!("{} |-> {}\n", if word.letters.is_empty() { "1".into() } else { word.to_string() }, image);
    Ok(Report { json: json!({ "strands": n, "word": word.to_string(), "image": image }), text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("anick").chain(args.iter().copied()))
            .map_err(|e| CliError::usage(e.to_string()))?;
        run(&cli).map(|(s, _)| s)
    }

    #[test]
    fn groebner_tl3() {
        let out = run_args(&["groebner", "--preset", "tl3"]).unwrap();
        assert!(out.contains("complete: true"));
        assert!(out.contains("basis (4):"));
        let out = run_args(&["groebner", "--preset", "tl3", "--format", "json"]).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 4);
        assert_eq!(v["engine"], ENGINE);
        assert_eq!(v["config"]["preset"], "tl3");
    }

    #[test]
    fn exit_code_classes() {
        let e = run_args(&["chains", "--preset", "b3-monoid", "--degree-cap", "6"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.message.contains("cap 6"), "{}", e.message);
        assert_eq!(run_args(&["groebner", "--preset", "tl1"]).unwrap_err().exit_code(), 1);
        assert_eq!(run_args(&["homology", "--preset", "tl3", "--tau", "x"]).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn file_diagnostics() {
        let bad = "{\n  \"format\": 1,\n  \"generators\": [\"x\"],\n  \"relations\": [\"x*y\"]\n}";
        let e = presentation_from_json(bad).unwrap_err();
        assert!(e.starts_with("4:"), "{e}");
        let e = presentation_from_json("{ \"format\": 1,").unwrap_err();
        assert!(e.starts_with("1:"), "{e}");
    }

    #[test]
    fn braid_images_agree() {
        let a = run_args(&["braid-image", "--preset", "tl3", "--word", "s1 s2 s1"]).unwrap();
        let b = run_args(&["braid-image", "--preset", "tl3", "--word", "s2 s1 s2"]).unwrap();
        let tail = |s: &str| s.lines().last().unwrap().split("|->").nth(1).unwrap().to_string();
        assert_eq!(tail(&a), tail(&b));
    }
}
