use std::sync::Arc;

use super::category::{Category, Hom, MorphismId, ObjectId};

/// The opposite category. Objects and morphism ids are shared with the
/// underlying category; only dom/cod and the order of composition flip.
pub struct Opposite {
    inner: Arc<dyn Category>,
    name: String,
}

impl Opposite {
    pub fn inner(&self) -> &Arc<dyn Category> {
        &self.inner
    }
}

/// `C^op`. Taking the opposite twice hands back the original category.
pub fn opposite(c: &Arc<dyn Category>) -> Arc<dyn Category> {
    if let Some(inner) = c.opposite_of() {
        return inner;
    }
    Arc::new(Opposite {
        inner: c.clone(),
        name: format!("{}^op", c.name()),
    })
}

impl Category for Opposite {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.inner.object_count()
    }

    fn dom(&self, f: MorphismId) -> ObjectId {
        self.inner.cod(f)
    }

    fn cod(&self, f: MorphismId) -> ObjectId {
        self.inner.dom(f)
    }

    fn identity(&self, a: ObjectId) -> MorphismId {
        self.inner.identity(a)
    }

    fn try_compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.inner.try_compose(f, g)
    }

    fn hom(&self, a: ObjectId, b: ObjectId) -> Hom {
        self.inner.hom(b, a)
    }

    fn hom_size(&self, a: ObjectId, b: ObjectId) -> usize {
        self.inner.hom_size(b, a)
    }

    fn contains_morphism(&self, f: MorphismId) -> bool {
        self.inner.contains_morphism(f)
    }

    fn object_label(&self, a: ObjectId) -> String {
        self.inner.object_label(a)
    }

    fn morphism_label(&self, f: MorphismId) -> String {
        format!("op({})", self.inner.morphism_label(f))
    }

    fn opposite_of(&self) -> Option<Arc<dyn Category>> {
        Some(self.inner.clone())
    }

    fn cone_probes(&self) -> Option<Vec<ObjectId>> {
        self.inner.cocone_probes()
    }

    fn cocone_probes(&self) -> Option<Vec<ObjectId>> {
        self.inner.cone_probes()
    }

    fn separating_probes(&self) -> Option<Vec<ObjectId>> {
        self.inner.coseparating_probes()
    }

    fn coseparating_probes(&self) -> Option<Vec<ObjectId>> {
        self.inner.separating_probes()
    }
}
