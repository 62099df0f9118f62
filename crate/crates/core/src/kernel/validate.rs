use serde::Serialize;

use super::category::{Category, MorphismId, ObjectId};

const LISTED_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdentityNotEndo { object: String },
    MissingComposite { g: String, f: String },
    CompositeTyping { g: String, f: String, composite: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub category: String,
    pub objects_checked: usize,
    pub morphisms_checked: usize,
    pub violation_count: usize,
    /// The first violations in enumeration order.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation_count == 0
    }

    fn push(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < LISTED_VIOLATIONS {
            self.violations.push(v);
        }
    }
}

/// Exhaustive axiom check over every object.
pub fn validate(c: &dyn Category) -> ValidationReport {
    let all: Vec<ObjectId> = c.objects().collect();
    validate_on(c, &all)
}

/// Axiom check for the full subcategory on `objects`: typing of identities
/// and composites, identity laws, associativity of every composable triple.
pub fn validate_on(c: &dyn Category, objects: &[ObjectId]) -> ValidationReport {
    let mut report = ValidationReport {
        category: c.name().to_string(),
        objects_checked: objects.len(),
        morphisms_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    let label = |f: MorphismId| c.morphism_label(f);

    for &a in objects {
        let id = c.identity(a);
        if c.dom(id) != a || c.cod(id) != a {
            report.push(Violation::IdentityNotEndo {
                object: c.object_label(a),
            });
        }
    }

    // Morphisms grouped by (source, target) index within `objects`.
    let n = objects.len();
    let homs: Vec<Vec<MorphismId>> = objects
        .iter()
        .flat_map(|&x| objects.iter().map(move |&y| c.hom(x, y).to_vec()))
        .collect();
    report.morphisms_checked = homs.iter().map(Vec::len).sum();

    let mut typed_ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for &f in &homs[i * n + j] {
                    for &g in &homs[j * n + k] {
                        match c.try_compose(g, f) {
                            None => {
                                typed_ok = false;
                                report.push(Violation::MissingComposite {
                                    g: label(g),
                                    f: label(f),
                                });
                            }
                            Some(h) => {
                                let landed = c.contains_morphism(h)
                                    && c.dom(h) == objects[i]
                                    && c.cod(h) == objects[k]
                                    && homs[i * n + k].binary_search(&h).is_ok();
                                if !landed {
                                    typed_ok = false;
                                    report.push(Violation::CompositeTyping {
                                        g: label(g),
                                        f: label(f),
                                        composite: if c.contains_morphism(h) {
                                            label(h)
                                        } else {
                                            format!("unknown {h}")
                                        },
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            for &f in &homs[i * n + j] {
                if c.try_compose(c.identity(objects[j]), f) != Some(f) {
                    report.push(Violation::LeftIdentity { f: label(f) });
                }
                if c.try_compose(f, c.identity(objects[i])) != Some(f) {
                    report.push(Violation::RightIdentity { f: label(f) });
                }
            }
        }
    }

    // Associativity is only meaningful once every composite is typed.
    if typed_ok {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for &f in &homs[i * n + j] {
                            for &g in &homs[j * n + k] {
                                let gf = c.compose(g, f);
                                for &h in &homs[k * n + l] {
                                    if c.compose(h, gf) != c.compose(c.compose(h, g), f) {
                                        report.push(Violation::Associativity {
                                            h: label(h),
                                            g: label(g),
                                            f: label(f),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::FinCategory;

    #[test]
    fn terminal_category_is_valid() {
        let mut b = FinCategory::builder("1");
        let a = b.add_object("A");
        let id = b.add_morphism("idA", a, a).unwrap();
        b.set_identity(a, id).unwrap();
        b.set_composite(id, id, id);
        assert!(validate(&b.build().unwrap()).is_valid());
    }

    #[test]
    fn wrongly_typed_composite_is_listed() {
        let mut b = FinCategory::builder("bad");
        let x = b.add_object("X");
        let y = b.add_object("Y");
        let idx = b.add_morphism("idX", x, x).unwrap();
        let idy = b.add_morphism("idY", y, y).unwrap();
        let f = b.add_morphism("f", x, y).unwrap();
        b.set_identity(x, idx).unwrap();
        b.set_identity(y, idy).unwrap();
        b.fill_identity_composites();
        // idY . f should be f: X -> Y, not idX.
        b.set_composite(idy, f, idx);
        let report = validate(&b.build().unwrap());
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CompositeTyping { .. })));
    }

    #[test]
    fn missing_entry_names_the_pair() {
        let mut b = FinCategory::builder("gap");
        let x = b.add_object("X");
        let idx = b.add_morphism("idX", x, x).unwrap();
        let e = b.add_morphism("e", x, x).unwrap();
        b.set_identity(x, idx).unwrap();
        b.fill_identity_composites();
        let report = validate(&b.build().unwrap());
        assert_eq!(
            report.violations,
            vec![Violation::MissingComposite {
                g: "e: X -> X".into(),
                f: "e: X -> X".into()
            }]
        );
        let _ = e;
    }
}
