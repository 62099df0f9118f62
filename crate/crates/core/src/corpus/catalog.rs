use std::sync::Arc;

use serde::Serialize;

use super::abelian::{ab_fragment, default_fragment, CyclicSum};
use super::localizations::{finpreord_localization, identity_localization, pointed_finpreord_localization, thin_to_terminal};
use super::thin::{arrow, boolean_b2, chain, discrete, terminal_category};
use super::tiers::{finset_tier, pointed_finset_tier, pointed_finset_with_initial};
use crate::error::{Error, Result};
use crate::essentials::{check_condition, essential_non_iso, ConditionTag};
use crate::report::TheoremReport;
use crate::functors::LocalizationTriple;
use crate::kernel::{Category, FinCategory, Tier};

/// A resolved corpus entry: the tier checks run on, plus the localization
/// it belongs to when there is one.
#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub tier: Arc<Tier>,
    pub triple: Option<LocalizationTriple>,
    /// Set for explicitly tabulated categories.
    pub table: Option<Arc<FinCategory>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub condition: ConditionTag,
    pub holds: bool,
    /// Label of the expected witness when the condition fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub name: &'static str,
    pub params: String,
    pub description: &'static str,
    pub expected: Vec<Expectation>,
    /// Expected first non-iso essential mono with codomain in the core.
    pub essential_non_iso: Option<&'static str>,
}

fn expect(condition: ConditionTag, holds: bool, witness: Option<&str>) -> Expectation {
    Expectation {
        condition,
        holds,
        witness: witness.map(str::to_string),
    }
}

/// The tiers whose condition verdicts are known in advance.
pub fn catalog() -> Vec<CorpusSpec> {
    use ConditionTag::*;
    vec![
        CorpusSpec {
            name: "finset",
            params: "3,9".into(),
            description: "finite sets",
            expected: vec![
                expect(PbseIso, true, None),
                expect(Balanced, true, None),
                expect(MonoSplit, false, Some("0 -> 1 []")),
            ],
            essential_non_iso: None,
        },
        CorpusSpec {
            name: "pointed-initial",
            params: "2,4".into(),
            description: "pointed sets with a freely added initial object",
            expected: vec![
                expect(PbseIso, true, None),
                expect(Balanced, false, Some("I -> 1* []")),
                expect(MonoSplit, false, Some("I -> 1* []")),
            ],
            essential_non_iso: None,
        },
        CorpusSpec {
            name: "ab",
            params: String::new(),
            description: "finite abelian groups 0, Z/2, Z/4, Z/2^2, Z/2+Z/4",
            expected: vec![expect(Balanced, true, None)],
            essential_non_iso: Some("[(2)]: Z/2 -> Z/4"),
        },
        CorpusSpec {
            name: "pointed-finset",
            params: "2,4".into(),
            description: "pointed finite sets",
            expected: vec![
                expect(MonoSplit, true, None),
                expect(PbseIso, true, None),
                expect(Balanced, true, None),
            ],
            essential_non_iso: None,
        },
        CorpusSpec {
            name: "semilattice",
            params: "B2".into(),
            description: "Boolean lattice on two atoms",
            expected: vec![
                expect(PbseIso, false, Some("0<=a: 0 -> a")),
                expect(Balanced, false, Some("0<=a: 0 -> a")),
                expect(MonoSplit, false, Some("0<=a: 0 -> a")),
            ],
            essential_non_iso: None,
        },
    ]
}

fn pair(params: Option<&str>, default: (usize, usize)) -> Result<(usize, usize)> {
    let Some(p) = params.filter(|p| !p.is_empty()) else {
        return Ok(default);
    };
    let parts: Vec<&str> = p.split(',').map(str::trim).collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Invalid(format!("expected a number, found {s:?}")))
    };
    match parts.as_slice() {
        [n] => Ok((num(n)?, default.1.max(num(n)?.pow(2)))),
        [n, m] => Ok((num(n)?, num(m)?)),
        _ => Err(Error::Invalid(format!("expected n or n,N, found {p:?}"))),
    }
}

fn explicit(name: String, c: FinCategory, triple: bool) -> Result<CorpusItem> {
    let table = Arc::new(c);
    let tier = Tier::whole(table.clone());
    let triple = if triple { Some(thin_to_terminal(&tier)?) } else { None };
    Ok(CorpusItem {
        name,
        tier,
        triple,
        table: Some(table),
    })
}

fn from_triple(name: String, triple: LocalizationTriple) -> CorpusItem {
    CorpusItem {
        name,
        tier: triple.c().clone(),
        triple: Some(triple),
        table: None,
    }
}

/// Resolves `name[:params]`, for example `finset:3,9`, `semilattice:B2`,
/// `ab:Z/2,Z/4` or `finpreord:2,4`.
pub fn resolve(spec: &str) -> Result<CorpusItem> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (spec.trim(), None),
    };
    let label = spec.trim().to_string();
    match name {
        "semilattice" | "b2" | "B2" => {
            let which = if name == "semilattice" { params.unwrap_or("B2") } else { "B2" };
            let c = match which {
                "B2" | "b2" => boolean_b2(),
                other => {
                    let k = other
                        .strip_prefix("chain")
                        .and_then(|k| k.parse::<usize>().ok())
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| Error::Invalid(format!("unknown semilattice {other:?}")))?;
                    chain(k)
                }
            };
            explicit(label, c, true)
        }
        "finset" => {
            let (n, m) = pair(params, (3, 9))?;
            let tier = finset_tier(n, m)?;
            let triple = identity_localization(&tier)?;
            Ok(CorpusItem {
                name: label,
                tier,
                triple: Some(triple),
                table: None,
            })
        }
        "pointed-initial" | "finset-pointed-initial" => {
            let (n, m) = pair(params, (2, 4))?;
            Ok(CorpusItem {
                name: label,
                tier: pointed_finset_with_initial(n, m)?,
                triple: None,
                table: None,
            })
        }
        "pointed-finset" => {
            let (n, m) = pair(params, (2, 4))?;
            Ok(CorpusItem {
                name: label,
                tier: pointed_finset_tier(n, m)?,
                triple: None,
                table: None,
            })
        }
        "finpreord" | "finpreord-unpointed" => {
            let (n, m) = pair(params, (2, 4))?;
            Ok(from_triple(label, finpreord_localization(n, m)?))
        }
        "pointed-finpreord" | "finpreord-pointed" => {
            let (n, m) = pair(params, (2, 4))?;
            Ok(from_triple(label, pointed_finpreord_localization(n, m)?))
        }
        "ab" => {
            let groups = match params.filter(|p| !p.is_empty()) {
                None => default_fragment(),
                Some(p) => p.split(',').map(CyclicSum::parse).collect::<Result<Vec<_>>>()?,
            };
            explicit(label, ab_fragment(&groups)?, false)
        }
        "terminal" => explicit(label, terminal_category(), true),
        "arrow" => explicit(label, arrow(), true),
        "discrete" => {
            let k = params
                .unwrap_or("2")
                .parse::<usize>()
                .map_err(|_| Error::Invalid("discrete:k expects a number".into()))?;
            explicit(label, discrete(k), false)
        }
        other => Err(Error::Invalid(format!("unknown corpus entry {other:?}"))),
    }
}

/// Names accepted by [`resolve`], with their default parameters.
pub fn names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("semilattice", "B2 | chainK"),
        ("finset", "n,N (default 3,9)"),
        ("pointed-initial", "n,N (default 2,4)"),
        ("pointed-finset", "n,N (default 2,4)"),
        ("finpreord", "n,N (default 2,4)"),
        ("pointed-finpreord", "n,N (default 2,4)"),
        ("ab", "comma-separated groups such as Z/2,Z/2+Z/4"),
        ("terminal", ""),
        ("arrow", ""),
        ("discrete", "k (default 2)"),
    ]
}

impl CorpusItem {
    pub fn category(&self) -> &dyn Category {
        self.tier.cat()
    }
}

impl CorpusSpec {
    pub fn key(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            format!("{}:{}", self.name, self.params)
        }
    }
}

/// Computed condition verdicts against the expected table, plus: every
/// tier where mono-split holds also satisfies pbse-iso and balanced.
pub fn verify_condition_matrix(specs: &[CorpusSpec]) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("condition matrix", specs.iter().map(CorpusSpec::key).collect::<Vec<_>>().join(", "));
    for spec in specs {
        let key = spec.key();
        let item = resolve(&key)?;
        for e in &spec.expected {
            let v = check_condition(&item.tier, e.condition)?;
            let got = v.witness.as_ref().map(|w| w.labels.join(" ; "));
            let ok = v.holds == e.holds && (e.witness.is_none() || e.witness == got);
            r.assert(
                format!("{key}: {} {}", e.condition.as_str(), if e.holds { "holds" } else { "fails" }),
                ok,
                match (&got, ok) {
                    (Some(w), _) => format!("witness {w}"),
                    (None, true) => String::new(),
                    (None, false) => "holds".into(),
                },
            );
        }
        if let Some(expected) = spec.essential_non_iso {
            let got = essential_non_iso(&item.tier)?.map(|m| item.tier.cat().morphism_label(m));
            r.assert(
                format!("{key}: non-iso essential mono {expected}"),
                got.as_deref() == Some(expected),
                got.unwrap_or_else(|| "none".into()),
            );
        }
        let split = spec.expected.iter().find(|e| e.condition == ConditionTag::MonoSplit);
        if split.is_some_and(|e| e.holds) {
            let both = [ConditionTag::PbseIso, ConditionTag::Balanced]
                .into_iter()
                .map(|t| check_condition(&item.tier, t).map(|v| v.holds))
                .collect::<Result<Vec<_>>>()?;
            r.assert(
                format!("{key}: mono-split implies pbse-iso and balanced"),
                both.iter().all(|&b| b),
                "",
            );
        }
    }
    Ok(r)
}

/// The three conditions and their duals on one tier, with the one implication
/// that holds in general: mono-split implies pbse-iso and balanced (and
/// dually).
pub fn verify_condition_implications(tier: &Arc<Tier>) -> Result<TheoremReport> {
    let mut r = TheoremReport::new("condition implications", tier.name());
    let mut verdicts = Vec::new();
    for tag in ConditionTag::ALL {
        let v = check_condition(tier, tag)?;
        let detail = match (&v.witness, v.bounded) {
            (Some(w), _) => format!("witness {}", w.labels.join(" ; ")),
            (None, true) => "bounded by a missing pullback".into(),
            (None, false) => String::new(),
        };
        r.note(format!("{tag} {}{}", if v.holds { "holds" } else { "fails" }, if detail.is_empty() { String::new() } else { format!(": {detail}") }));
        verdicts.push(v);
    }
    let holds = |t: ConditionTag| verdicts.iter().any(|v| v.condition == t && v.holds);
    for (split, pbse, balanced) in [
        (ConditionTag::MonoSplit, ConditionTag::PbseIso, ConditionTag::Balanced),
        (ConditionTag::CoMonoSplit, ConditionTag::CoPbseIso, ConditionTag::CoBalanced),
    ] {
        if holds(split) {
            r.assert(format!("{split} implies {pbse} and {balanced}"), holds(pbse) && holds(balanced), "");
        }
    }
    Ok(r)
}
