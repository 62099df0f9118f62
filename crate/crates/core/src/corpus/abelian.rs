//! Full subcategories of finite abelian groups given as sums of cyclic groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::{FinCategory, MorphismId, ObjectId};

/// Largest group order admitted in a fragment.
pub const MAX_GROUP_ORDER: u32 = 32;

/// `Z/n_1 + .. + Z/n_k`; the empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSum(pub Vec<u32>);

impl CyclicSum {
    pub fn order(&self) -> u32 {
        self.0.iter().product()
    }

    pub fn name(&self) -> String {
        if self.0.is_empty() {
            "0".into()
        } else {
            self.0.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join("+")
        }
    }

    /// Parses `0`, `Z/4`, `Z/2+Z/4` and `Z/2^2` (two copies of `Z/2`).
    pub fn parse(s: &str) -> Result<CyclicSum> {
        let s = s.trim();
        if s == "0" {
            return Ok(CyclicSum(Vec::new()));
        }
        let mut orders = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let body = term
                .strip_prefix("Z/")
                .ok_or_else(|| Error::Invalid(format!("expected Z/n in {term:?}")))?;
            let (n, copies) = match body.split_once('^') {
                Some((n, k)) => (n, k),
                None => (body, "1"),
            };
            let n: u32 = n.parse().map_err(|_| Error::Invalid(format!("bad order in {term:?}")))?;
            let copies: u32 = copies
                .parse()
                .map_err(|_| Error::Invalid(format!("bad exponent in {term:?}")))?;
            if n < 2 {
                return Err(Error::Invalid(format!("cyclic order must be at least 2 in {term:?}")));
            }
            orders.extend(std::iter::repeat_n(n, copies as usize));
        }
        Ok(CyclicSum(orders))
    }

    fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &n in &self.0 {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }

    fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.0).fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).zip(&self.0).map(|((&x, &y), &n)| (x + y) % n).collect()
    }

    fn scale(&self, k: u32, a: &[u32]) -> Vec<u32> {
        a.iter().zip(&self.0).map(|(&x, &n)| (k * x) % n).collect()
    }
}

/// All homomorphisms between the given groups, as an explicit category.
/// No pullbacks are claimed: kernels and fibre products generally leave the list.
pub fn ab_fragment(groups: &[CyclicSum]) -> Result<FinCategory> {
    for g in groups {
        if g.order() > MAX_GROUP_ORDER {
            return Err(Error::Invalid(format!(
                "{} has order {} above {MAX_GROUP_ORDER}",
                g.name(),
                g.order()
            )));
        }
    }
    let name = format!(
        "Ab{{{}}}",
        groups.iter().map(CyclicSum::name).collect::<Vec<_>>().join(", ")
    );
    let mut b = FinCategory::builder(name);
    let objs: Vec<ObjectId> = groups.iter().map(|g| b.add_object(g.name())).collect();
    let elements: Vec<Vec<Vec<u32>>> = groups.iter().map(CyclicSum::elements).collect();
    // Per morphism: (dom index, cod index, table of element images by index).
    let mut maps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut by_map: HashMap<(usize, usize, Vec<usize>), MorphismId> = HashMap::new();
    for (i, g) in groups.iter().enumerate() {
        for (j, h) in groups.iter().enumerate() {
            // Generator images must be killed by the generator's order.
            let candidates: Vec<Vec<&Vec<u32>>> = g
                .0
                .iter()
                .map(|&n| elements[j].iter().filter(|y| h.scale(n, y).iter().all(|&v| v == 0)).collect())
                .collect();
            let mut choice = vec![0usize; g.0.len()];
            loop {
                let images: Vec<&Vec<u32>> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
                let table: Vec<usize> = elements[i]
                    .iter()
                    .map(|x| {
                        let mut acc = vec![0; h.0.len()];
                        for (&k, img) in x.iter().zip(&images) {
                            acc = h.add(&acc, &h.scale(k, img));
                        }
                        h.index(&acc)
                    })
                    .collect();
                let label = format!(
                    "[{}]",
                    images
                        .iter()
                        .map(|y| format!("({})", y.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                        .collect::<Vec<_>>()
                        .join(";")
                );
                let m = b.add_morphism(label, objs[i], objs[j]).expect("objects exist");
                by_map.insert((i, j, table.clone()), m);
                maps.push((i, j, table));
                // Next generator-image assignment, odometer style.
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < candidates[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    for (i, g) in groups.iter().enumerate() {
        let id: Vec<usize> = (0..g.order() as usize).collect();
        b.set_identity(objs[i], by_map[&(i, i, id)]).expect("endomorphism");
    }
    for (fi, (a, bb, ft)) in maps.iter().enumerate() {
        for (gi, (b2, c, gt)) in maps.iter().enumerate() {
            if bb == b2 {
                let composite: Vec<usize> = ft.iter().map(|&x| gt[x]).collect();
                let h = by_map[&(*a, *c, composite)];
                b.set_composite(MorphismId(gi as u64), MorphismId(fi as u64), h);
            }
        }
    }
    Ok(b.build().expect("identities assigned"))
}

/// `{0, Z/2, Z/4, Z/2^2, Z/2+Z/4}`.
pub fn default_fragment() -> Vec<CyclicSum> {
    ["0", "Z/2", "Z/4", "Z/2^2", "Z/2+Z/4"]
        .iter()
        .map(|s| CyclicSum::parse(s).expect("fixed input"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{validate, Category};

    #[test]
    fn hom_z2_z4_has_two_elements() {
        let c = ab_fragment(&default_fragment()).unwrap();
        let (z2, z4) = (c.object_by_name("Z/2").unwrap(), c.object_by_name("Z/4").unwrap());
        assert_eq!(c.hom_size(z2, z4), 2);
        assert_eq!(c.hom_size(z4, z4), 4);
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(CyclicSum::parse("Z/2^2").unwrap(), CyclicSum(vec![2, 2]));
        assert_eq!(CyclicSum::parse("0").unwrap(), CyclicSum(vec![]));
        assert!(CyclicSum::parse("S3").is_err());
        assert!(CyclicSum::parse("Z/1").is_err());
    }
}
