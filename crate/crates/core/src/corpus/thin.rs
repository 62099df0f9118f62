//! Thin categories: semilattices, chains, discrete and arrow categories.

use crate::error::{Error, Result};
use crate::kernel::{FinCategory, MorphismId};

/// Thin category on `elements` with a morphism `i -> j` iff `leq(i, j)`.
/// `leq` must be a preorder; this is not checked here.
pub fn thin_category(
    name: impl Into<String>,
    elements: &[&str],
    leq: impl Fn(usize, usize) -> bool,
) -> FinCategory {
    let n = elements.len();
    let mut b = FinCategory::builder(name);
    let objs: Vec<_> = elements.iter().map(|e| b.add_object(*e)).collect();
    let mut arrow: Vec<Option<MorphismId>> = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let m = b
                    .add_morphism(format!("{}<={}", elements[i], elements[j]), objs[i], objs[j])
                    .expect("objects exist");
                arrow[i * n + j] = Some(m);
            }
        }
    }
    for i in 0..n {
        let id = arrow[i * n + i].expect("leq is reflexive");
        b.set_identity(objs[i], id).expect("endomorphism");
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (arrow[i * n + j], arrow[j * n + k], arrow[i * n + k]) {
                    b.set_composite(g, f, h);
                }
            }
        }
    }
    b.build().expect("identities assigned")
}

/// The thin category of a meet-semilattice given by its meet table.
///
/// The table must be idempotent, commutative, associative and have a
/// largest element (a unit for the meet).
pub fn semilattice(name: impl Into<String>, elements: &[&str], meet: &[Vec<usize>]) -> Result<FinCategory> {
    let n = elements.len();
    if n == 0 {
        return Err(Error::Invalid("a semilattice needs a largest element".into()));
    }
    if meet.len() != n || meet.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
        return Err(Error::Invalid(format!("meet table must be {n}x{n} with entries below {n}")));
    }
    for a in 0..n {
        if meet[a][a] != a {
            return Err(Error::Invalid(format!("meet is not idempotent at {}", elements[a])));
        }
        for b in 0..n {
            if meet[a][b] != meet[b][a] {
                return Err(Error::Invalid(format!(
                    "meet is not commutative at {}, {}",
                    elements[a], elements[b]
                )));
            }
            for c in 0..n {
                if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                    return Err(Error::Invalid(format!(
                        "meet is not associative at {}, {}, {}",
                        elements[a], elements[b], elements[c]
                    )));
                }
            }
        }
    }
    if !(0..n).any(|t| (0..n).all(|x| meet[t][x] == x)) {
        return Err(Error::Invalid("meet table has no largest element".into()));
    }
    Ok(thin_category(name, elements, |i, j| meet[i][j] == i))
}

/// Boolean lattice on two atoms: `0 < a, b < 1`.
pub fn boolean_b2() -> FinCategory {
    let meet = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 0, 1],
        vec![0, 0, 2, 2],
        vec![0, 1, 2, 3],
    ];
    semilattice("B2", &["0", "a", "b", "1"], &meet).expect("valid table")
}

/// The chain `0 < 1 < .. < k-1`.
pub fn chain(k: usize) -> FinCategory {
    let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let meet: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| i.min(j)).collect()).collect();
    semilattice(format!("chain{k}"), &refs, &meet).expect("valid table")
}

pub fn terminal_category() -> FinCategory {
    thin_category("1", &["*"], |_, _| true)
}

pub fn discrete(k: usize) -> FinCategory {
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    thin_category(format!("discrete{k}"), &refs, |i, j| i == j)
}

/// `0 -> 1`.
pub fn arrow() -> FinCategory {
    thin_category("arrow", &["0", "1"], |i, j| i <= j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{validate, Category};

    #[test]
    fn morphism_counts() {
        assert_eq!(chain(2).morphism_count(), 3);
        assert_eq!(boolean_b2().morphism_count(), 9);
        assert_eq!(arrow().morphism_count(), 3);
        assert_eq!(discrete(2).morphism_count(), 2);
        assert!(validate(&boolean_b2()).is_valid());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // x∧y = y for all x, y: idempotent but not commutative.
        let right = vec![vec![0, 1], vec![0, 1]];
        assert!(semilattice("bad", &["p", "q"], &right).is_err());
        let ragged = vec![vec![0], vec![0, 1]];
        assert!(semilattice("bad", &["p", "q"], &ragged).is_err());
        assert!(semilattice("bad", &[], &[]).is_err());
    }

    #[test]
    fn b2_hom_sets() {
        let b2 = boolean_b2();
        let (a, b) = (b2.object_by_name("a").unwrap(), b2.object_by_name("b").unwrap());
        assert_eq!(b2.hom_size(a, b), 0);
        assert_eq!(b2.hom_size(b2.object_by_name("0").unwrap(), a), 1);
    }
}
