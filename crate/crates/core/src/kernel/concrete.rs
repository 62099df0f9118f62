//! Categories of small structured sets whose morphisms are functions.
//!
//! Morphisms are never stored. A morphism id packs `(dom, cod, code)` where
//! `code` is the underlying function written little-endian in base `|cod|`.
//! Because the code only depends on the underlying function, forgetful and
//! free-structure functors between these categories keep the code and only
//! retag the endpoints.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::category::{Category, Hom, MorphismId, ObjectId};
use super::KernelError;

const CODE_BITS: u32 = 40;
const END_BITS: u32 = 12;
const MAX_POINTS: usize = 8;

/// Largest carrier the encoding admits for plain and pointed sets.
pub const MAX_SET_SIZE: usize = 11;
/// Largest carrier admitted for preorders (the object count explodes beyond).
pub const MAX_PREORDER_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    Sets,
    PointedSets,
    /// Pointed sets plus the empty algebra as a freely added initial object.
    PointedSetsWithInitial,
    Preorders,
    PointedPreorders,
}

impl Structure {
    fn pointed(self) -> bool {
        matches!(
            self,
            Structure::PointedSets | Structure::PointedSetsWithInitial | Structure::PointedPreorders
        )
    }

    fn ordered(self) -> bool {
        matches!(self, Structure::Preorders | Structure::PointedPreorders)
    }
}

/// Underlying set `{0, .., size-1}` with an optional preorder; bit `8*i + j`
/// of `order` is set iff `i <= j`. Carriers of set-like structures record no order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Carrier {
    pub size: u8,
    pub order: u64,
}

impl Carrier {
    /// Bare set of the given size (no order recorded).
    pub fn plain(size: usize) -> Carrier {
        Carrier {
            size: size as u8,
            order: 0,
        }
    }

    pub fn discrete(size: usize) -> Carrier {
        let mut order = 0;
        for i in 0..size {
            order |= bit(i, i);
        }
        Carrier { size: size as u8, order }
    }

    pub fn indiscrete(size: usize) -> Carrier {
        let mut order = 0;
        for i in 0..size {
            for j in 0..size {
                order |= bit(i, j);
            }
        }
        Carrier { size: size as u8, order }
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Carrier {
        let mut c = Carrier::discrete(size);
        for &(i, j) in pairs {
            c.order |= bit(i, j);
        }
        c
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order & bit(i, j) != 0
    }

    pub fn is_discrete(&self) -> bool {
        *self == Carrier::discrete(self.size as usize)
    }

    pub fn is_indiscrete(&self) -> bool {
        *self == Carrier::indiscrete(self.size as usize)
    }

    fn is_transitive(&self) -> bool {
        let n = self.size as usize;
        (0..n).all(|i| {
            (0..n).all(|j| !self.leq(i, j) || (0..n).all(|k| !self.leq(j, k) || self.leq(i, k)))
        })
    }
}

fn bit(i: usize, j: usize) -> u64 {
    1u64 << (i * MAX_POINTS + j)
}

/// Every preorder on `{0, .., size-1}`, sorted by bitmask.
pub fn preorders_on(size: usize) -> Vec<Carrier> {
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        let c = Carrier::from_pairs(size, &chosen);
        if c.is_transitive() {
            out.push(c);
        }
    }
    out.sort();
    out
}

pub fn encode(dom: ObjectId, cod: ObjectId, code: u64) -> MorphismId {
    MorphismId(((dom.0 as u64) << (CODE_BITS + END_BITS)) | ((cod.0 as u64) << CODE_BITS) | code)
}

pub fn decode(f: MorphismId) -> (ObjectId, ObjectId, u64) {
    let code = f.0 & ((1 << CODE_BITS) - 1);
    let cod = (f.0 >> CODE_BITS) & ((1 << END_BITS) - 1);
    let dom = f.0 >> (CODE_BITS + END_BITS);
    (ObjectId(dom as u32), ObjectId(cod as u32), code)
}

pub fn function_code(values: &[u8], cod_size: usize) -> u64 {
    values
        .iter()
        .rev()
        .fold(0u64, |acc, &v| acc * cod_size as u64 + v as u64)
}

fn digits(mut code: u64, len: usize, base: usize, out: &mut [u8; 16]) {
    for d in out.iter_mut().take(len) {
        *d = (code % base as u64) as u8;
        code /= base as u64;
    }
}

/// Finite structured sets of bounded size with all structure-preserving maps.
pub struct ConcreteCategory {
    name: String,
    structure: Structure,
    carriers: Vec<Carrier>,
    index: HashMap<Carrier, ObjectId>,
    homs: Vec<OnceLock<Hom>>,
}

impl ConcreteCategory {
    fn new(name: String, structure: Structure, carriers: Vec<Carrier>) -> ConcreteCategory {
        let index = carriers
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, ObjectId(i as u32)))
            .collect();
        let n = carriers.len();
        ConcreteCategory {
            name,
            structure,
            carriers,
            index,
            homs: (0..n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Skeleton of finite sets `0..=max`; object `k` has `k` elements.
    pub fn sets(max: usize) -> Result<ConcreteCategory, KernelError> {
        check_bound(max, MAX_SET_SIZE)?;
        let carriers = (0..=max).map(Carrier::plain).collect();
        Ok(Self::new(format!("FinSet<={max}"), Structure::Sets, carriers))
    }

    /// Pointed sets of size `1..=max`, basepoint 0; object `k-1` has `k` elements.
    pub fn pointed_sets(max: usize) -> Result<ConcreteCategory, KernelError> {
        check_bound(max, MAX_SET_SIZE)?;
        let carriers = (1..=max).map(Carrier::plain).collect();
        Ok(Self::new(format!("FinSet*<={max}"), Structure::PointedSets, carriers))
    }

    /// Object 0 is the free initial object `I`; object `k` is the pointed set with `k` elements.
    pub fn pointed_sets_with_initial(max: usize) -> Result<ConcreteCategory, KernelError> {
        check_bound(max, MAX_SET_SIZE)?;
        let carriers = (0..=max).map(Carrier::plain).collect();
        Ok(Self::new(
            format!("FinSet*+I<={max}"),
            Structure::PointedSetsWithInitial,
            carriers,
        ))
    }

    /// All preorders on `{0..k-1}` for `k <= max`, ordered by size then bitmask.
    pub fn preorders(max: usize) -> Result<ConcreteCategory, KernelError> {
        check_bound(max, MAX_PREORDER_SIZE)?;
        let carriers = (0..=max).flat_map(preorders_on).collect();
        Ok(Self::new(format!("FinPreord<={max}"), Structure::Preorders, carriers))
    }

    /// Pointed preorders (basepoint 0) on `1..=max` points.
    pub fn pointed_preorders(max: usize) -> Result<ConcreteCategory, KernelError> {
        check_bound(max, MAX_PREORDER_SIZE)?;
        let carriers = (1..=max).flat_map(preorders_on).collect();
        Ok(Self::new(
            format!("FinPreord*<={max}"),
            Structure::PointedPreorders,
            carriers,
        ))
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn carrier(&self, a: ObjectId) -> Carrier {
        self.carriers[a.0 as usize]
    }

    pub fn size(&self, a: ObjectId) -> usize {
        self.carriers[a.0 as usize].size as usize
    }

    pub fn object_of(&self, c: Carrier) -> Option<ObjectId> {
        self.index.get(&c).copied()
    }

    /// Object with the given size carrying the discrete (for sets: the only) structure.
    pub fn discrete_object(&self, size: usize) -> Option<ObjectId> {
        if self.structure.ordered() {
            self.object_of(Carrier::discrete(size))
        } else {
            self.object_of(Carrier::plain(size))
        }
    }

    pub fn indiscrete_object(&self, size: usize) -> Option<ObjectId> {
        self.object_of(Carrier::indiscrete(size))
    }

    /// Underlying function of a morphism.
    pub fn function(&self, f: MorphismId) -> Vec<u8> {
        let (d, c, code) = decode(f);
        let mut buf = [0u8; 16];
        digits(code, self.size(d), self.size(c), &mut buf);
        buf[..self.size(d)].to_vec()
    }

    /// The morphism `dom -> cod` with the given underlying function, if it is structure-preserving.
    pub fn morphism(&self, dom: ObjectId, cod: ObjectId, values: &[u8]) -> Option<MorphismId> {
        let (a, b) = (self.carrier(dom), self.carrier(cod));
        if values.len() != a.size as usize || values.iter().any(|&v| v >= b.size) {
            return None;
        }
        self.admits(a, b, values)
            .then(|| encode(dom, cod, function_code(values, b.size as usize)))
    }

    /// Morphism with the same underlying function but new endpoints.
    pub fn retag(&self, f: MorphismId, dom: ObjectId, cod: ObjectId) -> Option<MorphismId> {
        self.morphism(dom, cod, &self.function(f))
    }

    fn admits(&self, a: Carrier, b: Carrier, values: &[u8]) -> bool {
        if self.structure.pointed() && a.size > 0 && values[0] != 0 {
            return false;
        }
        if self.structure.ordered() {
            let n = a.size as usize;
            for i in 0..n {
                for j in 0..n {
                    if a.leq(i, j) && !b.leq(values[i] as usize, values[j] as usize) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn enumerate_hom(&self, x: ObjectId, y: ObjectId) -> Vec<MorphismId> {
        let (a, b) = (self.carrier(x), self.carrier(y));
        let (n, m) = (a.size as usize, b.size as usize);
        let total = (m as u64).pow(n as u32);
        let mut out = Vec::new();
        let mut buf = [0u8; 16];
        for code in 0..total {
            digits(code, n, m.max(1), &mut buf);
            if self.admits(a, b, &buf[..n]) {
                out.push(encode(x, y, code));
            }
        }
        out
    }

    fn carrier_label(&self, a: ObjectId) -> String {
        let c = self.carrier(a);
        let n = c.size as usize;
        match self.structure {
            Structure::Sets => format!("{n}"),
            Structure::PointedSets => format!("{n}*"),
            Structure::PointedSetsWithInitial if n == 0 => "I".to_string(),
            Structure::PointedSetsWithInitial => format!("{n}*"),
            Structure::Preorders | Structure::PointedPreorders => {
                let mut pairs = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j && c.leq(i, j) {
                            pairs.push(format!("{i}<={j}"));
                        }
                    }
                }
                let star = if self.structure == Structure::PointedPreorders { "*" } else { "" };
                format!("P{n}{star}{{{}}}", pairs.join(","))
            }
        }
    }
}

fn check_bound(max: usize, limit: usize) -> Result<(), KernelError> {
    if max > limit {
        Err(KernelError::TooLarge { requested: max, limit })
    } else {
        Ok(())
    }
}

impl Category for ConcreteCategory {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.carriers.len()
    }

    fn dom(&self, f: MorphismId) -> ObjectId {
        decode(f).0
    }

    fn cod(&self, f: MorphismId) -> ObjectId {
        decode(f).1
    }

    fn identity(&self, a: ObjectId) -> MorphismId {
        let n = self.size(a);
        let values: Vec<u8> = (0..n as u8).collect();
        encode(a, a, function_code(&values, n))
    }

    fn try_compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        let (fd, fc, fcode) = decode(f);
        let (gd, gc, gcode) = decode(g);
        if fc != gd {
            return None;
        }
        let (n, m, k) = (self.size(fd), self.size(fc), self.size(gc));
        let mut fv = [0u8; 16];
        let mut gv = [0u8; 16];
        digits(fcode, n, m.max(1), &mut fv);
        digits(gcode, m, k.max(1), &mut gv);
        let mut code = 0u64;
        for i in (0..n).rev() {
            code = code * k as u64 + gv[fv[i] as usize] as u64;
        }
        Some(encode(fd, gc, code))
    }

    fn hom(&self, a: ObjectId, b: ObjectId) -> Hom {
        let n = self.carriers.len();
        self.homs[a.0 as usize * n + b.0 as usize]
            .get_or_init(|| Arc::from(self.enumerate_hom(a, b)))
            .clone()
    }

    fn hom_size(&self, a: ObjectId, b: ObjectId) -> usize {
        let (n, m) = (self.size(a), self.size(b));
        match self.structure {
            Structure::Sets => m.pow(n as u32),
            Structure::PointedSets => m.pow(n as u32 - 1),
            Structure::PointedSetsWithInitial if n == 0 => 1,
            Structure::PointedSetsWithInitial if m == 0 => 0,
            Structure::PointedSetsWithInitial => m.pow(n as u32 - 1),
            _ => self.hom(a, b).len(),
        }
    }

    fn contains_morphism(&self, f: MorphismId) -> bool {
        let (d, c, code) = decode(f);
        let n = self.carriers.len() as u32;
        if d.0 >= n || c.0 >= n {
            return false;
        }
        let (a, b) = (self.carrier(d), self.carrier(c));
        if code >= (b.size as u64).pow(a.size as u32) {
            return false;
        }
        self.admits(a, b, &self.function(f))
    }

    fn object_label(&self, a: ObjectId) -> String {
        self.carrier_label(a)
    }

    fn morphism_label(&self, f: MorphismId) -> String {
        let (d, c, _) = decode(f);
        let values: Vec<String> = self.function(f).iter().map(|v| v.to_string()).collect();
        format!(
            "{} -> {} [{}]",
            self.carrier_label(d),
            self.carrier_label(c),
            values.join(",")
        )
    }

    fn cone_probes(&self) -> Option<Vec<ObjectId>> {
        // The one-point set is dense in finite sets: each set is a coproduct of points.
        match self.structure {
            Structure::Sets if self.carriers.len() > 1 => Some(vec![ObjectId(1)]),
            _ => None,
        }
    }

    fn separating_probes(&self) -> Option<Vec<ObjectId>> {
        // Free structures on one point.
        let free = match self.structure {
            Structure::Sets => self.object_of(Carrier::plain(1)),
            Structure::Preorders => self.object_of(Carrier::discrete(1)),
            Structure::PointedSets | Structure::PointedSetsWithInitial => self.object_of(Carrier::plain(2)),
            Structure::PointedPreorders => self.object_of(Carrier::discrete(2)),
        };
        free.map(|o| vec![o]).or_else(|| self.cone_probes())
    }

    fn coseparating_probes(&self) -> Option<Vec<ObjectId>> {
        // Two points with the chaotic structure receive every function.
        let two = match self.structure {
            Structure::Sets | Structure::PointedSets | Structure::PointedSetsWithInitial => {
                self.object_of(Carrier::plain(2))
            }
            Structure::Preorders | Structure::PointedPreorders => self.object_of(Carrier::indiscrete(2)),
        };
        two.map(|o| vec![o]).or_else(|| self.cocone_probes())
    }

    fn cocone_probes(&self) -> Option<Vec<ObjectId>> {
        if self.structure != Structure::Sets || self.carriers.len() <= 2 {
            return None;
        }
        // Every finite set reachable as a limit of copies of 2 inside the
        // ambient (powers of 2, their subsets as equalizers, products of
        // those) needs no probe of its own.
        let max = self.carriers.len() - 1;
        let mut reach = vec![false; max + 1];
        let mut p = 1;
        while p * 2 <= max {
            p *= 2;
        }
        for r in reach.iter_mut().take(p + 1) {
            *r = true;
        }
        loop {
            let mut changed = false;
            for a in 2..=max {
                for b in 2..=max / a {
                    if reach[a] && reach[b] && !reach[a * b] {
                        reach[a * b] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut probes = vec![ObjectId(2)];
        probes.extend((0..=max).filter(|&q| !reach[q]).map(|q| ObjectId(q as u32)));
        Some(probes)
    }
}
