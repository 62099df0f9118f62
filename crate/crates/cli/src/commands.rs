//! Argument parsing and command dispatch.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use finkat::corpus::{self, CorpusItem};
use finkat::envelopes::{
    verify_injective_envelopes, verify_projective_covers, verify_semilattice_example,
};
use finkat::essentials::{check_condition, is_essential_mono, is_pb_stable_essential_mono, ConditionTag};
use finkat::functors::{
    functor_properties, verify_essential_preservation, verify_iso_detection, verify_localization_remarks,
    verify_stable_preservation, LocalizationTriple,
};
use finkat::kernel::{retraction, section, FinCategory, Tier};
use finkat::report::TheoremReport;
use finkat::spectral::{
    span_cap_from_env, spec_build, verify_bimorphism_classes, verify_fraction_equivalence, verify_self_duality,
};
use finkat::Error;

use crate::fincat::{self, DocumentKind};
use crate::report::{
    BuilderInfo, Classification, ClassificationRow, CorpusEntry, CorpusListing, HomCount, Report, Section,
    SpecSummary,
};

#[derive(Debug, Parser)]
#[command(name = "finkat", version, about = "Exhaustive computations in finite categories")]
pub struct Cli {
    /// Corpus entry to run on, as `name[:params]`.
    #[arg(long, global = true, value_name = "NAME[:PARAMS]")]
    pub corpus: Option<String>,
    /// Also write the structured report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Core bound n for parametrized corpus entries.
    #[arg(long, global = true, value_name = "K")]
    pub core: Option<usize>,
    /// Ambient bound N for parametrized corpus entries (default n^2).
    #[arg(long, global = true, value_name = "K")]
    pub ambient: Option<usize>,
    /// Raw spans allowed per hom-set when building categories of fractions.
    #[arg(long = "span-cap", global = true, value_name = "M")]
    pub span_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every core morphism.
    Analyze { file: Option<PathBuf> },
    /// Evaluate a condition (pbse-iso, mono-split, balanced, their co- duals, or all).
    Check { condition: String, file: Option<PathBuf> },
    /// Build the category of fractions for the pullback-stable essential monos.
    Spec { file: Option<PathBuf> },
    /// Run a verifier by id: 2.5 3.2 4.2 4.9 5.1 6.3 6.5 6.6 7.1a 7.1b example-1.1.
    Verify { id: String, file: Option<PathBuf> },
    /// List the corpus, or describe one entry.
    Corpus { name: Option<String> },
    /// Print the input as a `.fincat` document (core objects only).
    Render { file: Option<PathBuf> },
}

/// Input or usage problem; exit status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError(e.to_string())
    }
}

type Outcome<T> = Result<T, CliError>;

pub const VERIFY_IDS: [&str; 11] = ["2.5", "3.2", "4.2", "4.9", "5.1", "6.3", "6.5", "6.6", "7.1a", "7.1b", "example-1.1"];

struct Subject {
    name: String,
    tier: Arc<Tier>,
    triple: Option<LocalizationTriple>,
    /// Corpus name and explicit parameters, when the input came from the corpus.
    key: Option<(String, Option<String>)>,
    /// The explicit table behind a whole-category tier.
    table: Option<Arc<FinCategory>>,
}

fn corpus_key(cli: &Cli, spec: &str) -> Outcome<String> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    match (cli.core, cli.ambient) {
        (None, None) => Ok(spec.to_string()),
        (None, Some(_)) => Err(CliError("--ambient needs --core".into())),
        (Some(n), ambient) => {
            if params.is_some() {
                return Err(CliError(format!("{spec} already has parameters; drop --core/--ambient")));
            }
            Ok(format!("{name}:{n},{}", ambient.unwrap_or(n * n)))
        }
    }
}

fn from_item(item: CorpusItem, key: &str) -> Subject {
    let (name, params) = match key.split_once(':') {
        Some((n, p)) => (n.to_string(), Some(p.to_string())),
        None => (key.to_string(), None),
    };
    let table = item.table.filter(|_| item.tier.is_whole());
    Subject {
        name: item.name,
        tier: item.tier,
        triple: item.triple,
        key: Some((name, params)),
        table,
    }
}

fn load(cli: &Cli, file: &Option<PathBuf>) -> Outcome<Subject> {
    match (file, &cli.corpus) {
        (Some(_), Some(_)) => Err(CliError("give either a file or --corpus, not both".into())),
        (None, None) => Err(CliError("no input: give a .fincat file or --corpus NAME".into())),
        (None, Some(spec)) => {
            let key = corpus_key(cli, spec)?;
            Ok(from_item(corpus::resolve(&key)?, &key))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let doc = fincat::parse(&text).map_err(|e| CliError(format!("{}:{e}", path.display())))?;
            match doc.kind {
                DocumentKind::Builder(key) => {
                    let key = corpus_key(cli, &key)?;
                    Ok(from_item(corpus::resolve(&key)?, &key))
                }
                DocumentKind::Explicit(c) => {
                    let table = Arc::new(c.rename(doc.name.clone()));
                    Ok(Subject {
                        name: doc.name,
                        tier: Tier::whole(table.clone()),
                        triple: None,
                        key: None,
                        table: Some(table),
                    })
                }
            }
        }
    }
}

fn span_cap(cli: &Cli) -> usize {
    cli.span_cap.unwrap_or_else(span_cap_from_env)
}

fn analyze(s: &Subject) -> Outcome<Section> {
    let (t, c) = (&s.tier, s.tier.cat());
    let mut rows = Vec::new();
    for m in t.core_morphisms() {
        let (mono, epi) = (t.is_mono(m), t.is_epi(m));
        let in_core = t.in_core(c.cod(m));
        let (essential, stable) = if in_core {
            let st = is_pb_stable_essential_mono(t, m)?;
            (Some(mono && is_essential_mono(t, m)?), Some(st))
        } else {
            (None, None)
        };
        rows.push(ClassificationRow {
            morphism: c.morphism_label(m),
            mono,
            epi,
            split_mono: mono && retraction(c, m).is_some(),
            split_epi: epi && section(c, m).is_some(),
            iso: t.is_iso(m),
            essential_mono: essential,
            pb_stable_essential_mono: stable.map(|v| v.holds),
            bounded: stable.is_some_and(|v| v.bounded),
        });
    }
    Ok(Section::Classification(Classification {
        subject: t.name().to_string(),
        rows,
    }))
}

fn check(s: &Subject, condition: &str) -> Outcome<Vec<Section>> {
    let tags = if condition == "all" {
        ConditionTag::ALL.to_vec()
    } else {
        vec![ConditionTag::from_str(condition)?]
    };
    tags.into_iter()
        .map(|t| Ok(Section::Condition(check_condition(&s.tier, t)?)))
        .collect()
}

fn not_applicable(subject: &str, e: Error) -> Outcome<Section> {
    match e {
        Error::Hypothesis(reason) => Ok(Section::NotApplicable {
            subject: subject.to_string(),
            reason,
        }),
        other => Err(other.into()),
    }
}

fn spec(s: &Subject, cap: usize) -> Outcome<Section> {
    let spec = match spec_build(&s.tier, cap) {
        Ok(spec) => spec,
        Err(e) => return not_applicable(&format!("category of fractions of {}", s.tier.name()), e),
    };
    let c = s.tier.cat();
    let core = s.tier.core();
    let mut homs = Vec::new();
    for &a in core {
        for &b in core {
            homs.push(HomCount {
                from: c.object_label(a),
                to: c.object_label(b),
                classes: spec.hom_classes(a, b).unwrap_or(0),
            });
        }
    }
    Ok(Section::Spec(SpecSummary {
        subject: s.tier.name().to_string(),
        class: spec.class().name().to_string(),
        objects: core.iter().map(|&a| c.object_label(a)).collect(),
        morphisms: spec.table().morphism_count(),
        raw_spans: spec.raw_spans(),
        homs,
    }))
}

fn needs_triple<'s>(s: &'s Subject, id: &str) -> Outcome<&'s LocalizationTriple> {
    s.triple.as_ref().ok_or_else(|| {
        CliError(format!(
            "verify {id} needs a localization, and {} has none; try --corpus finpreord or pointed-finpreord",
            s.name
        ))
    })
}

fn theorem(subject: &str, r: finkat::Result<TheoremReport>) -> Outcome<Section> {
    match r {
        Ok(r) => Ok(Section::Theorem(r)),
        Err(e) => not_applicable(subject, e),
    }
}

fn condition_matrix(s: &Subject) -> Outcome<Section> {
    let matching: Vec<_> = corpus::catalog()
        .into_iter()
        .filter(|spec| match &s.key {
            Some((name, params)) => spec.name == name && params.as_ref().is_none_or(|p| *p == spec.params),
            None => false,
        })
        .collect();
    if matching.is_empty() {
        return theorem(&s.name, corpus::verify_condition_implications(&s.tier));
    }
    let mut r = corpus::verify_condition_matrix(&matching)?;
    r.absorb(&corpus::verify_condition_implications(&s.tier)?);
    Ok(Section::Theorem(r))
}

fn verify(cli: &Cli, id: &str, file: &Option<PathBuf>) -> Outcome<Vec<Section>> {
    if !VERIFY_IDS.contains(&id) {
        return Err(CliError(format!("unknown theorem id {id}; known: {}", VERIFY_IDS.join(" "))));
    }
    if id == "6.3" && file.is_none() && cli.corpus.is_none() {
        return Ok(vec![Section::Theorem(corpus::verify_condition_matrix(&corpus::catalog())?)]);
    }
    let s = load(cli, file)?;
    let cap = span_cap(cli);
    let section = match id {
        "6.3" => condition_matrix(&s)?,
        "example-1.1" => theorem(&s.name, verify_semilattice_example(&s.tier, cap))?,
        _ => {
            let l = needs_triple(&s, id)?;
            let r = match id {
                "2.5" => functor_properties(l.f()).and_then(|p| verify_essential_preservation(l.f(), &p)),
                "3.2" => functor_properties(l.f()).and_then(|p| verify_stable_preservation(l.f(), &p)),
                "4.2" => verify_localization_remarks(l),
                "4.9" => verify_iso_detection(l),
                "5.1" => verify_fraction_equivalence(l, cap),
                "6.5" => verify_bimorphism_classes(l),
                "6.6" => verify_self_duality(l, cap),
                "7.1a" => verify_injective_envelopes(l, cap),
                "7.1b" => verify_projective_covers(l, cap),
                _ => unreachable!("ids checked above"),
            };
            theorem(&l.name, r)?
        }
    };
    Ok(vec![section])
}

fn corpus_listing(cli: &Cli, name: &Option<String>) -> Outcome<Section> {
    let Some(name) = name.as_ref().or(cli.corpus.as_ref()) else {
        return Ok(Section::Corpus(CorpusListing {
            builders: corpus::names()
                .into_iter()
                .map(|(n, p)| BuilderInfo {
                    name: n.to_string(),
                    params: p.to_string(),
                })
                .collect(),
            catalog: corpus::catalog(),
        }));
    };
    let key = corpus_key(cli, name)?;
    let item = corpus::resolve(&key)?;
    let (n, params) = key.split_once(':').map_or((key.as_str(), None), |(n, p)| (n, Some(p)));
    let expected = corpus::catalog()
        .into_iter()
        .find(|s| s.name == n && params.is_none_or(|p| p == s.params))
        .map(|s| s.expected)
        .unwrap_or_default();
    let t = &item.tier;
    let c = t.cat();
    Ok(Section::CorpusEntry(CorpusEntry {
        name: item.name.clone(),
        tier: t.name().to_string(),
        ambient_objects: c.object_count(),
        core: t.core().iter().map(|&a| c.object_label(a)).collect(),
        core_morphisms: t.core_morphisms().len(),
        pullback_closed: t.pullback_closed(),
        pushout_closed: t.pushout_closed(),
        localization: item.triple.as_ref().map(|l| l.name.clone()),
        expected,
    }))
}

fn render(cli: &Cli, file: &Option<PathBuf>) -> Outcome<String> {
    let s = load(cli, file)?;
    if let Some(table) = &s.table {
        return Ok(fincat::render(table));
    }
    let (table, _) = FinCategory::materialize(s.tier.cat(), s.tier.core(), s.tier.name());
    Ok(fincat::render(&table))
}

/// Parses `args` (program name first), runs the command, prints the text
/// report and writes JSON when asked. Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match run(&cli, echo) {
        Ok(None) => 0,
        Ok(Some(report)) => {
            print!("{}", report.render_text());
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs one command. `render` prints directly and returns `None`.
pub fn run(cli: &Cli, echo: Vec<String>) -> Outcome<Option<Report>> {
    let start = std::time::Instant::now();
    let mut report = Report::new(echo);
    match &cli.command {
        Command::Analyze { file } => report.results.push(analyze(&load(cli, file)?)?),
        Command::Check { condition, file } => report.results.extend(check(&load(cli, file)?, condition)?),
        Command::Spec { file } => report.results.push(spec(&load(cli, file)?, span_cap(cli))?),
        Command::Verify { id, file } => {
            report.results.extend(verify(cli, id, file)?);
            report.summarize();
        }
        Command::Corpus { name } => report.results.push(corpus_listing(cli, name)?),
        Command::Render { file } => {
            print!("{}", render(cli, file)?);
            return Ok(None);
        }
    }
    report.timing.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Some(report))
}
