//! The `.fincat` text format.
//!
//! Line oriented; `#` starts a comment. Names are whitespace-free tokens or
//! double-quoted strings.
//!
//! ```text
//! category Arrow
//! obj A
//! obj B
//! id A = 1A
//! id B = 1B
//! mor f : A -> B
//! comp f . 1A = f
//! ```
//!
//! Composites with an identity may be omitted. Every other composable pair
//! needs exactly one `comp` line. A document may instead name a corpus entry
//! with `builder finset:3,9`.

use std::collections::HashMap;
use std::fmt;

use finkat::kernel::{validate, Category, FinCategory, MorphismId, ObjectId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
pub enum DocumentKind {
    Explicit(FinCategory),
    /// A corpus key such as `finset:3,9`.
    Builder(String),
}

#[derive(Clone, Debug)]
pub struct FincatDocument {
    pub name: String,
    pub kind: DocumentKind,
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    column: usize,
}

#[derive(Clone, Debug)]
struct Line {
    number: usize,
    tokens: Vec<Token>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(number: usize, text: &str) -> Result<Line, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch == '#' {
            break;
        } else if ch == '"' {
            let start = i;
            let mut value = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(err(number, start + 1, "unterminated string")),
                    Some('"') => break,
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some(&c @ ('"' | '\\')) => value.push(c),
                            _ => return Err(err(number, i + 1, "unknown escape")),
                        }
                        i += 2;
                        continue;
                    }
                    Some(&c) => value.push(c),
                }
                i += 1;
            }
            i += 1;
            tokens.push(Token {
                text: value,
                column: start + 1,
            });
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            tokens.push(Token {
                text: chars[start..i].iter().collect(),
                column: start + 1,
            });
        }
    }
    Ok(Line { number, tokens })
}

/// Checks `tokens` against a pattern where `None` marks a name slot and
/// `Some(kw)` a literal.
fn shape<'t>(line: &'t Line, pattern: &[Option<&str>], usage: &str) -> Result<Vec<&'t Token>, ParseError> {
    let end_column = line.tokens.last().map(|t| t.column + t.text.chars().count()).unwrap_or(1);
    let mut names = Vec::new();
    for (i, p) in pattern.iter().enumerate() {
        let Some(tok) = line.tokens.get(i) else {
            return Err(err(line.number, end_column, format!("incomplete line, expected `{usage}`")));
        };
        match p {
            Some(kw) if tok.text != *kw => {
                return Err(err(line.number, tok.column, format!("expected `{kw}` in `{usage}`")));
            }
            Some(_) => {}
            None => names.push(tok),
        }
    }
    if let Some(extra) = line.tokens.get(pattern.len()) {
        return Err(err(line.number, extra.column, format!("unexpected `{}` after `{usage}`", extra.text)));
    }
    Ok(names)
}

struct MorphismDecl {
    line: usize,
    column: usize,
}

pub fn parse(text: &str) -> Result<FincatDocument, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = tokenize(i + 1, raw)?;
        if !line.tokens.is_empty() {
            lines.push(line);
        }
    }
    let mut name = String::from("unnamed");
    let mut builder: Option<(String, usize)> = None;
    let mut body = Vec::new();
    for line in &lines {
        let head = &line.tokens[0];
        match head.text.as_str() {
            "category" => {
                let t = shape(line, &[Some("category"), None], "category NAME")?;
                name = t[0].text.clone();
            }
            "builder" => {
                let t = shape(line, &[Some("builder"), None], "builder NAME[:PARAMS]")?;
                builder = Some((t[0].text.clone(), line.number));
            }
            "obj" | "mor" | "id" | "comp" => body.push(line),
            other => return Err(err(line.number, head.column, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some((key, number)) = builder {
        if let Some(line) = body.first() {
            return Err(err(
                line.number,
                line.tokens[0].column,
                format!("a builder document (line {number}) has no declarations"),
            ));
        }
        if name == "unnamed" {
            name = key.clone();
        }
        return Ok(FincatDocument {
            name,
            kind: DocumentKind::Builder(key),
        });
    }

    let mut b = FinCategory::builder(name.clone());
    let mut objects: HashMap<String, ObjectId> = HashMap::new();
    let mut object_lines: Vec<usize> = Vec::new();
    for line in body.iter().filter(|l| l.tokens[0].text == "obj") {
        let t = shape(line, &[Some("obj"), None], "obj NAME")?;
        if objects.contains_key(&t[0].text) {
            return Err(err(line.number, t[0].column, format!("object `{}` declared twice", t[0].text)));
        }
        objects.insert(t[0].text.clone(), b.add_object(t[0].text.clone()));
        object_lines.push(line.number);
    }
    let object = |tok: &Token, line: usize| {
        objects
            .get(&tok.text)
            .copied()
            .ok_or_else(|| err(line, tok.column, format!("unknown object `{}`", tok.text)))
    };
    let mut morphisms: HashMap<String, MorphismId> = HashMap::new();
    let mut decls: Vec<MorphismDecl> = Vec::new();
    let mut ends: Vec<(ObjectId, ObjectId)> = Vec::new();
    let mut identities: Vec<Option<MorphismId>> = vec![None; objects.len()];
    for line in body.iter().filter(|l| matches!(l.tokens[0].text.as_str(), "mor" | "id")) {
        let (tok, dom, cod, identity_of) = if line.tokens[0].text == "mor" {
            let t = shape(line, &[Some("mor"), None, Some(":"), None, Some("->"), None], "mor NAME : DOM -> COD")?;
            (t[0], object(t[1], line.number)?, object(t[2], line.number)?, None)
        } else {
            let t = shape(line, &[Some("id"), None, Some("="), None], "id OBJECT = NAME")?;
            let a = object(t[0], line.number)?;
            if identities[a.0 as usize].is_some() {
                return Err(err(line.number, t[0].column, format!("second identity for `{}`", t[0].text)));
            }
            (t[1], a, a, Some(a))
        };
        let m = match morphisms.get(&tok.text) {
            Some(&m) if identity_of.is_some() && ends[m.0 as usize] == (dom, cod) => m,
            Some(_) => {
                return Err(err(line.number, tok.column, format!("morphism `{}` declared twice", tok.text)));
            }
            None => {
                let m = b
                    .add_morphism(tok.text.clone(), dom, cod)
                    .map_err(|e| err(line.number, tok.column, e.to_string()))?;
                morphisms.insert(tok.text.clone(), m);
                decls.push(MorphismDecl {
                    line: line.number,
                    column: tok.column,
                });
                ends.push((dom, cod));
                m
            }
        };
        if let Some(a) = identity_of {
            identities[a.0 as usize] = Some(m);
            b.set_identity(a, m).map_err(|e| err(line.number, tok.column, e.to_string()))?;
        }
    }
    let mut names_by_object: Vec<&str> = vec![""; objects.len()];
    for (n, &o) in &objects {
        names_by_object[o.0 as usize] = n;
    }
    for (i, id) in identities.iter().enumerate() {
        if id.is_none() {
            return Err(err(object_lines[i], 1, format!("object `{}` has no `id` line", names_by_object[i])));
        }
    }
    let morphism = |tok: &Token, line: usize| {
        morphisms
            .get(&tok.text)
            .copied()
            .ok_or_else(|| err(line, tok.column, format!("unknown morphism `{}`", tok.text)))
    };
    let mut table: HashMap<(MorphismId, MorphismId), MorphismId> = HashMap::new();
    for line in body.iter().filter(|l| l.tokens[0].text == "comp") {
        let t = shape(line, &[Some("comp"), None, Some("."), None, Some("="), None], "comp G . F = H")?;
        let (g, f, h) = (morphism(t[0], line.number)?, morphism(t[1], line.number)?, morphism(t[2], line.number)?);
        let (fe, ge, he) = (ends[f.0 as usize], ends[g.0 as usize], ends[h.0 as usize]);
        if fe.1 != ge.0 {
            return Err(err(line.number, t[0].column, format!("`{}` does not start where `{}` ends", t[0].text, t[1].text)));
        }
        if he != (fe.0, ge.1) {
            return Err(err(line.number, t[2].column, format!("`{}` has the wrong domain or codomain for this composite", t[2].text)));
        }
        if table.insert((g, f), h).is_some() {
            return Err(err(line.number, line.tokens[0].column, format!("second entry for `{} . {}`", t[0].text, t[1].text)));
        }
        b.set_composite(g, f, h);
    }
    b.fill_identity_composites();
    let is_identity = |m: MorphismId| identities.contains(&Some(m));
    for f in 0..ends.len() {
        for g in 0..ends.len() {
            let (fm, gm) = (MorphismId(f as u64), MorphismId(g as u64));
            if ends[f].1 == ends[g].0 && !is_identity(fm) && !is_identity(gm) && !table.contains_key(&(gm, fm)) {
                let names: HashMap<MorphismId, &String> = morphisms.iter().map(|(n, &m)| (m, n)).collect();
                return Err(err(
                    decls[g].line,
                    decls[g].column,
                    format!("missing composition entry `comp {} . {} = ?`", names[&gm], names[&fm]),
                ));
            }
        }
    }
    let category = b.build().map_err(|e| err(1, 1, e.to_string()))?;
    let report = validate(&category);
    if let Some(v) = report.violations.first() {
        return Err(err(1, 1, format!("not a category: {v:?}")));
    }
    Ok(FincatDocument {
        name,
        kind: DocumentKind::Explicit(category),
    })
}

fn quote(name: &str) -> String {
    let plain = !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '"' || c == '#' || c == '\\');
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Text that parses back to the same category, ids included. Composites with
/// identities are left implicit.
pub fn render(c: &FinCategory) -> String {
    let mut out = format!("category {}\n", quote(c.name()));
    for a in c.objects() {
        out.push_str(&format!("obj {}\n", quote(c.object_name(a))));
    }
    let ids: Vec<MorphismId> = c.objects().map(|a| c.identity(a)).collect();
    for f in c.morphisms() {
        let (d, e) = (quote(c.object_name(c.dom(f))), quote(c.object_name(c.cod(f))));
        let name = quote(c.morphism_name(f));
        if c.identity(c.dom(f)) == f {
            out.push_str(&format!("id {d} = {name}\n"));
        } else {
            out.push_str(&format!("mor {name} : {d} -> {e}\n"));
        }
    }
    for f in c.morphisms().filter(|f| !ids.contains(f)) {
        for g in c.morphisms().filter(|g| !ids.contains(g) && c.dom(*g) == c.cod(f)) {
            if let Some(h) = c.try_compose(g, f) {
                out.push_str(&format!(
                    "comp {} . {} = {}\n",
                    quote(c.morphism_name(g)),
                    quote(c.morphism_name(f)),
                    quote(c.morphism_name(h))
                ));
            }
        }
    }
    out
}
