//! The structured report behind every command.

use std::fmt::Write as _;

use finkat::corpus::Expectation;
use finkat::essentials::ConditionVerdict;
use finkat::report::{Outcome, TheoremReport};
use serde::Serialize;

pub const ENGINE: &str = concat!("finkat ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub engine: String,
    pub command: Vec<String>,
    /// Set for `verify`; other commands only compute.
    pub outcome: Option<Outcome>,
    pub results: Vec<Section>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Section {
    Theorem(TheoremReport),
    Condition(ConditionVerdict),
    Classification(Classification),
    Spec(SpecSummary),
    Corpus(CorpusListing),
    CorpusEntry(CorpusEntry),
    /// A construction whose hypotheses do not hold on the input.
    NotApplicable { subject: String, reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub subject: String,
    pub rows: Vec<ClassificationRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub morphism: String,
    pub mono: bool,
    pub epi: bool,
    pub split_mono: bool,
    pub split_epi: bool,
    pub iso: bool,
    /// `None` when the codomain is outside the core.
    pub essential_mono: Option<bool>,
    pub pb_stable_essential_mono: Option<bool>,
    pub bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSummary {
    pub subject: String,
    pub class: String,
    pub objects: Vec<String>,
    pub morphisms: usize,
    pub raw_spans: usize,
    pub homs: Vec<HomCount>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomCount {
    pub from: String,
    pub to: String,
    pub classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusListing {
    pub builders: Vec<BuilderInfo>,
    pub catalog: Vec<finkat::corpus::CorpusSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuilderInfo {
    pub name: String,
    pub params: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub tier: String,
    pub ambient_objects: usize,
    pub core: Vec<String>,
    pub core_morphisms: usize,
    pub pullback_closed: bool,
    pub pushout_closed: bool,
    pub localization: Option<String>,
    pub expected: Vec<Expectation>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            engine: ENGINE.to_string(),
            command,
            outcome: None,
            results: Vec::new(),
            timing: Timing::default(),
        }
    }

    /// Fail beats pass beats not applicable, over theorem sections.
    pub fn summarize(&mut self) {
        let outcomes: Vec<Outcome> = self
            .results
            .iter()
            .filter_map(|s| match s {
                Section::Theorem(t) => Some(t.outcome),
                Section::NotApplicable { .. } => Some(Outcome::NotApplicable),
                _ => None,
            })
            .collect();
        if outcomes.is_empty() {
            return;
        }
        self.outcome = Some(if outcomes.contains(&Outcome::Fail) {
            Outcome::Fail
        } else if outcomes.contains(&Outcome::Pass) {
            Outcome::Pass
        } else {
            Outcome::NotApplicable
        });
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Some(Outcome::Fail) => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.results {
            render_section(&mut out, s);
        }
        if let Some(o) = self.outcome {
            let _ = writeln!(out, "outcome: {o}");
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "-"
    }
}

fn maybe(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "-",
        None => "n/a",
    }
}

fn render_section(out: &mut String, s: &Section) {
    match s {
        Section::Theorem(t) => {
            let _ = write!(out, "{t}");
        }
        Section::Condition(v) => {
            let _ = write!(out, "{} on {}: {}", v.condition, v.tier, if v.holds { "holds" } else { "fails" });
            if v.bounded {
                out.push_str(" (bounded by a missing pullback)");
            }
            if let Some(w) = &v.witness {
                let _ = write!(out, ", witness {w}");
            }
            out.push('\n');
        }
        Section::Classification(c) => {
            let width = c.rows.iter().map(|r| r.morphism.chars().count()).max().unwrap_or(8).max(8);
            let _ = writeln!(out, "{}", c.subject);
            let _ = writeln!(out, "{:width$}  mono epi  smono sepi iso  ess  st-ess", "morphism");
            for r in &c.rows {
                let _ = writeln!(
                    out,
                    "{:width$}  {:4} {:4} {:5} {:4} {:4} {:4} {}{}",
                    r.morphism,
                    yes(r.mono),
                    yes(r.epi),
                    yes(r.split_mono),
                    yes(r.split_epi),
                    yes(r.iso),
                    maybe(r.essential_mono),
                    maybe(r.pb_stable_essential_mono),
                    if r.bounded { " (bounded)" } else { "" }
                );
            }
        }
        Section::Spec(s) => {
            let _ = writeln!(
                out,
                "category of fractions of {} for {}: {} objects, {} morphisms from {} raw spans",
                s.subject,
                s.class,
                s.objects.len(),
                s.morphisms,
                s.raw_spans
            );
            for h in &s.homs {
                let _ = writeln!(out, "  |Hom({}, {})| = {}", h.from, h.to, h.classes);
            }
        }
        Section::Corpus(l) => {
            out.push_str("builders:\n");
            for b in &l.builders {
                let _ = writeln!(out, "  {:18} {}", b.name, b.params);
            }
            out.push_str("catalog:\n");
            for spec in &l.catalog {
                let expected: Vec<String> = spec
                    .expected
                    .iter()
                    .map(|e| format!("{} {}", e.condition, if e.holds { "holds" } else { "fails" }))
                    .collect();
                let _ = writeln!(out, "  {:22} {}: {}", spec.key(), spec.description, expected.join(", "));
            }
        }
        Section::CorpusEntry(e) => {
            let _ = writeln!(out, "{} ({})", e.name, e.tier);
            let _ = writeln!(out, "  ambient objects: {}", e.ambient_objects);
            let _ = writeln!(out, "  core: {} objects, {} morphisms", e.core.len(), e.core_morphisms);
            let _ = writeln!(out, "  pullback-closed: {}", e.pullback_closed);
            let _ = writeln!(out, "  pushout-closed: {}", e.pushout_closed);
            if let Some(l) = &e.localization {
                let _ = writeln!(out, "  localization: {l}");
            }
            for x in &e.expected {
                let _ = writeln!(out, "  expected: {} {}", x.condition, if x.holds { "holds" } else { "fails" });
            }
        }
        Section::NotApplicable { subject, reason } => {
            let _ = writeln!(out, "{subject}: NOT APPLICABLE: {reason}");
        }
    }
}
