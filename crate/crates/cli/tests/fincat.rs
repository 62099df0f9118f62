use finkat::corpus::resolve;
use finkat::kernel::{validate, Category, FinCategory, MorphismId, ObjectId};
use finkat_cli::{parse, render, DocumentKind, ParseError};
use proptest::prelude::*;

fn explicit(text: &str) -> FinCategory {
    match parse(text).expect("parses").kind {
        DocumentKind::Explicit(c) => c,
        DocumentKind::Builder(k) => panic!("unexpected builder {k}"),
    }
}

fn error(text: &str) -> ParseError {
    parse(text).expect_err("should not parse")
}

fn same_structure(a: &FinCategory, b: &FinCategory) -> bool {
    let objects = a.object_count() == b.object_count()
        && a.objects().all(|o| a.object_name(o) == b.object_name(o) && a.identity(o) == b.identity(o));
    let morphisms = a.morphism_count() == b.morphism_count()
        && a.morphisms().all(|f| a.morphism_name(f) == b.morphism_name(f) && a.dom(f) == b.dom(f) && a.cod(f) == b.cod(f));
    objects
        && morphisms
        && a.morphisms().all(|f| a.morphisms().all(|g| a.try_compose(g, f) == b.try_compose(g, f)))
}

#[test]
fn single_object_with_identity_is_terminal() {
    let c = explicit("obj A\nid A = idA\ncomp idA . idA = idA");
    assert_eq!(c.object_count(), 1);
    assert_eq!(c.morphism_count(), 1);
    assert!(validate(&c).is_valid());
}

#[test]
fn identity_composites_are_implicit() {
    let c = explicit("category Arrow\nobj A\nobj B\nid A = 1A\nid B = 1B\nmor f : A -> B\n");
    assert_eq!(c.name(), "Arrow");
    let f = c.morphism_by_name("f").unwrap();
    assert_eq!(c.try_compose(f, c.identity(ObjectId(0))), Some(f));
    assert_eq!(c.try_compose(c.identity(ObjectId(1)), f), Some(f));
}

#[test]
fn comments_and_quoted_names() {
    let c = explicit("obj \"the point\" # a comment\nid \"the point\" = \"1 \\\"x\\\"\"\n");
    assert_eq!(c.object_name(ObjectId(0)), "the point");
    assert_eq!(c.morphism_name(MorphismId(0)), "1 \"x\"");
}

#[test]
fn missing_composition_names_the_pair() {
    let e = error("obj A\nid A = 1A\nmor e : A -> A\n");
    assert_eq!((e.line, e.column), (3, 5));
    assert!(e.message.contains("comp e . e"), "{e}");
}

#[test]
fn diagnostics_carry_positions() {
    let cases = [
        ("obj A\nobj A\n", 2, 5, "declared twice"),
        ("obj A\nid A = 1A\nmor f : A -> B\n", 3, 14, "unknown object `B`"),
        ("obj A\nid A = 1A\ncomp g . 1A = 1A\n", 3, 6, "unknown morphism `g`"),
        ("obj A\nid A = 1A\nmor f : A => A\n", 3, 11, "expected `->`"),
        ("obj A\nid A = 1A\nmor f : A\n", 3, 10, "incomplete line"),
        ("obj A extra\n", 1, 7, "unexpected `extra`"),
        ("object A\n", 1, 1, "unknown keyword"),
        ("obj \"A\n", 1, 5, "unterminated string"),
        ("obj A\n", 1, 1, "has no `id` line"),
        ("obj A\nid A = 1A\nid A = 2A\n", 3, 4, "second identity"),
        ("obj A\nobj B\nid A = 1A\nid B = 1B\nmor f : A -> B\ncomp f . f = f\n", 6, 6, "does not start where"),
        ("obj A\nobj B\nid A = 1A\nid B = 1B\nmor f : A -> B\ncomp f . 1A = 1A\n", 6, 15, "wrong domain"),
        ("obj A\nid A = 1A\ncomp 1A . 1A = 1A\ncomp 1A . 1A = 1A\n", 4, 1, "second entry"),
        ("builder finset\nobj A\n", 2, 1, "builder document"),
    ];
    for (text, line, column, needle) in cases {
        let e = error(text);
        assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        assert!(e.message.contains(needle), "{text:?}: {e}");
    }
}

#[test]
fn non_associative_table_is_rejected() {
    let constant = "obj A\nid A = 1\nmor e : A -> A\nmor f : A -> A\n\
                    comp e . e = e\ncomp e . f = e\ncomp f . e = e\ncomp f . f = e\n";
    assert!(parse(constant).is_ok());
    // (e . e) . f = f but e . (e . f) = e.
    let bad = "obj A\nid A = 1\nmor e : A -> A\nmor f : A -> A\n\
               comp e . e = 1\ncomp e . f = 1\ncomp f . e = 1\ncomp f . f = 1\n";
    let e = error(bad);
    assert!(e.message.contains("not a category"), "{e}");
}

#[test]
fn builder_documents_name_a_corpus_entry() {
    let doc = parse("# generated\nbuilder finset:2,4\n").unwrap();
    match doc.kind {
        DocumentKind::Builder(key) => assert_eq!(key, "finset:2,4"),
        DocumentKind::Explicit(_) => panic!("expected a builder"),
    }
    assert_eq!(doc.name, "finset:2,4");
}

#[test]
fn corpus_tables_round_trip() {
    for key in ["semilattice:B2", "arrow", "ab", "finset:2,4", "pointed-finpreord:1,1"] {
        let item = resolve(key).unwrap();
        let (table, _) = FinCategory::materialize(item.category(), item.tier.core(), key);
        let text = render(&table);
        let back = match parse(&text) {
            Ok(doc) => match doc.kind {
                DocumentKind::Explicit(c) => c,
                DocumentKind::Builder(_) => unreachable!(),
            },
            Err(e) => panic!("{key}: {e}\n{text}"),
        };
        assert!(same_structure(&table, &back), "{key}");
    }
}

/// Thin category of the reflexive-transitive closure of `edges` on `n` points,
/// with names drawn from `names`.
fn preorder(n: usize, edges: &[(usize, usize)], names: &[String]) -> FinCategory {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        le[a % n][b % n] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut b = FinCategory::builder("random preorder");
    let objs: Vec<ObjectId> = (0..n).map(|i| b.add_object(format!("{}{i}", names[i % names.len()]))).collect();
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                arrow[i][j] = Some(b.add_morphism(format!("{i}<={j} {}", names[j % names.len()]), objs[i], objs[j]).unwrap());
            }
        }
    }
    for i in 0..n {
        b.set_identity(objs[i], arrow[i][i].unwrap()).unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                    b.set_composite(g, f, arrow[i][k].unwrap());
                }
            }
        }
    }
    b.build().unwrap()
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(
        n in 1usize..5,
        edges in prop::collection::vec((0usize..5, 0usize..5), 0..8),
        names in prop::collection::vec("[a-z#\" \\\\]{0,4}", 1..4),
    ) {
        let c = preorder(n, &edges, &names);
        prop_assume!(validate(&c).is_valid());
        let text = render(&c);
        let back = match parse(&text) {
            Ok(doc) => match doc.kind {
                DocumentKind::Explicit(c) => c,
                DocumentKind::Builder(_) => unreachable!(),
            },
            Err(e) => return Err(TestCaseError::fail(format!("{e}\n{text}"))),
        };
        prop_assert!(same_structure(&c, &back), "{}", text);
    }
}
