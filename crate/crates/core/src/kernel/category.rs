use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// Index of an object inside one category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjectId(pub u32);

/// Opaque morphism handle. Only meaningful relative to the category that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MorphismId(pub u64);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// Shared hom-set listing, sorted by id.
pub type Hom = Arc<[MorphismId]>;

/// A finite category.
///
/// Implementations either store an explicit composition table or compute
/// composites on demand (concrete categories of finite structured sets). All
/// queries are pure; the trait is object safe so categories can be mixed
/// behind `Arc<dyn Category>`.
pub trait Category: Send + Sync {
    fn name(&self) -> &str;

    fn object_count(&self) -> usize;

    fn dom(&self, f: MorphismId) -> ObjectId;

    fn cod(&self, f: MorphismId) -> ObjectId;

    fn identity(&self, a: ObjectId) -> MorphismId;

    /// `g ∘ f`, or `None` when the pair is not composable or the table has no entry.
    fn try_compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId>;

    /// Morphisms `a -> b` in ascending id order.
    fn hom(&self, a: ObjectId, b: ObjectId) -> Hom;

    fn contains_morphism(&self, f: MorphismId) -> bool;

    fn object_label(&self, a: ObjectId) -> String;

    fn morphism_label(&self, f: MorphismId) -> String;

    fn compose(&self, g: MorphismId, f: MorphismId) -> MorphismId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "{}: cannot compose {} after {}",
                self.name(),
                self.morphism_label(g),
                self.morphism_label(f)
            )
        })
    }

    fn hom_size(&self, a: ObjectId, b: ObjectId) -> usize {
        self.hom(a, b).len()
    }

    /// Objects against which cone universality is tested. `None` means every
    /// object. A category may only return a family that is dense, so that a
    /// comparison of limit-preserving functors which is bijective on the family
    /// is bijective everywhere.
    fn cone_probes(&self) -> Option<Vec<ObjectId>> {
        None
    }

    /// Dual of [`Category::cone_probes`]: a codense family for cocone checks.
    fn cocone_probes(&self) -> Option<Vec<ObjectId>> {
        None
    }

    /// A generating family: objects whose hom-functors are jointly faithful.
    /// Enough to test monos. Defaults to the cone probes.
    fn separating_probes(&self) -> Option<Vec<ObjectId>> {
        self.cone_probes()
    }

    /// A cogenerating family, enough to test epis.
    fn coseparating_probes(&self) -> Option<Vec<ObjectId>> {
        self.cocone_probes()
    }

    /// For `D = C^op` built by [`crate::kernel::opposite`], returns `C`.
    fn opposite_of(&self) -> Option<Arc<dyn Category>> {
        None
    }

    fn objects(&self) -> Objects {
        Objects(0..self.object_count() as u32)
    }

    fn is_endo(&self, f: MorphismId) -> bool {
        self.dom(f) == self.cod(f)
    }
}

/// Iterator over all objects of a category in id order.
#[derive(Clone, Debug)]
pub struct Objects(std::ops::Range<u32>);

impl Iterator for Objects {
    type Item = ObjectId;

    fn next(&mut self) -> Option<ObjectId> {
        self.0.next().map(ObjectId)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.0.size_hint()
    }
}

impl ExactSizeIterator for Objects {}

impl fmt::Debug for dyn Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Category")
            .field("name", &self.name())
            .field("objects", &self.object_count())
            .finish()
    }
}

/// Finds the first morphism in `hom(a, b)` satisfying `pred`.
pub fn find_in_hom(
    c: &dyn Category,
    a: ObjectId,
    b: ObjectId,
    mut pred: impl FnMut(MorphismId) -> bool,
) -> Option<MorphismId> {
    c.hom(a, b).iter().copied().find(|&m| pred(m))
}

/// Two-sided inverse of `f`, if any.
pub fn inverse(c: &dyn Category, f: MorphismId) -> Option<MorphismId> {
    let (a, b) = (c.dom(f), c.cod(f));
    let id_a = c.identity(a);
    let id_b = c.identity(b);
    find_in_hom(c, b, a, |g| c.compose(g, f) == id_a && c.compose(f, g) == id_b)
}

/// First isomorphism `a -> b`, if any.
pub fn find_iso(c: &dyn Category, a: ObjectId, b: ObjectId) -> Option<MorphismId> {
    if c.hom_size(a, b) == 0 || c.hom_size(b, a) == 0 {
        return None;
    }
    find_in_hom(c, a, b, |f| inverse(c, f).is_some())
}
