use std::collections::HashMap;
use std::sync::Arc;

use super::category::{Category, Hom, MorphismId, ObjectId};
use super::KernelError;

/// Explicit finite category: named objects and morphisms with a stored
/// composition table.
///
/// The table may be incomplete or wrong; [`crate::kernel::validate`] reports
/// every defect. Identities are required at build time.
#[derive(Clone, Debug)]
pub struct FinCategory {
    name: String,
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    dom: Vec<ObjectId>,
    cod: Vec<ObjectId>,
    identities: Vec<MorphismId>,
    comp: HashMap<(MorphismId, MorphismId), MorphismId>,
    homs: Vec<Hom>,
}

impl FinCategory {
    pub fn builder(name: impl Into<String>) -> FinCategoryBuilder {
        FinCategoryBuilder {
            name: name.into(),
            object_names: Vec::new(),
            morphism_names: Vec::new(),
            dom: Vec::new(),
            cod: Vec::new(),
            identities: Vec::new(),
            comp: HashMap::new(),
        }
    }

    /// Copies an arbitrary category restricted to `objects` into an explicit
    /// table. Returns the table and, per new morphism, the original id.
    pub fn materialize(
        source: &dyn Category,
        objects: &[ObjectId],
        name: impl Into<String>,
    ) -> (FinCategory, Vec<MorphismId>) {
        let mut b = FinCategory::builder(name);
        let new_obj: Vec<ObjectId> = objects
            .iter()
            .map(|&o| b.add_object(source.object_label(o)))
            .collect();
        let mut origin = Vec::new();
        let mut back: HashMap<MorphismId, MorphismId> = HashMap::new();
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for &f in source.hom(x, y).iter() {
                    let nf = b
                        .add_morphism(source.morphism_label(f), new_obj[i], new_obj[j])
                        .expect("fresh objects");
                    back.insert(f, nf);
                    origin.push(f);
                }
            }
        }
        for (i, &x) in objects.iter().enumerate() {
            b.set_identity(new_obj[i], back[&source.identity(x)])
                .expect("identity lies in the restricted hom-set");
        }
        for &f in &origin {
            for &g in &origin {
                if source.cod(f) == source.dom(g) {
                    let h = source.compose(g, f);
                    b.set_composite(back[&g], back[&f], back[&h]);
                }
            }
        }
        (b.build().expect("identities assigned"), origin)
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> {
        (0..self.dom.len() as u64).map(MorphismId)
    }

    pub fn object_name(&self, a: ObjectId) -> &str {
        &self.object_names[a.0 as usize]
    }

    pub fn morphism_name(&self, f: MorphismId) -> &str {
        &self.morphism_names[f.0 as usize]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.object_names
            .iter()
            .position(|n| n == name)
            .map(|i| ObjectId(i as u32))
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphismId> {
        self.morphism_names
            .iter()
            .position(|n| n == name)
            .map(|i| MorphismId(i as u64))
    }

    /// Raw table entry, without the composability check.
    pub fn table_entry(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl Category for FinCategory {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.object_names.len()
    }

    fn dom(&self, f: MorphismId) -> ObjectId {
        self.dom[f.0 as usize]
    }

    fn cod(&self, f: MorphismId) -> ObjectId {
        self.cod[f.0 as usize]
    }

    fn identity(&self, a: ObjectId) -> MorphismId {
        self.identities[a.0 as usize]
    }

    fn try_compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        self.comp.get(&(g, f)).copied()
    }

    fn hom(&self, a: ObjectId, b: ObjectId) -> Hom {
        self.homs[a.0 as usize * self.object_count() + b.0 as usize].clone()
    }

    fn contains_morphism(&self, f: MorphismId) -> bool {
        (f.0 as usize) < self.dom.len()
    }

    fn object_label(&self, a: ObjectId) -> String {
        self.object_names[a.0 as usize].clone()
    }

    fn morphism_label(&self, f: MorphismId) -> String {
        let i = f.0 as usize;
        format!(
            "{}: {} -> {}",
            self.morphism_names[i], self.object_names[self.dom[i].0 as usize], self.object_names[self.cod[i].0 as usize]
        )
    }
}

pub struct FinCategoryBuilder {
    name: String,
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    dom: Vec<ObjectId>,
    cod: Vec<ObjectId>,
    identities: Vec<Option<MorphismId>>,
    comp: HashMap<(MorphismId, MorphismId), MorphismId>,
}

impl FinCategoryBuilder {
    pub fn add_object(&mut self, name: impl Into<String>) -> ObjectId {
        self.object_names.push(name.into());
        self.identities.push(None);
        ObjectId(self.object_names.len() as u32 - 1)
    }

    pub fn add_morphism(
        &mut self,
        name: impl Into<String>,
        dom: ObjectId,
        cod: ObjectId,
    ) -> Result<MorphismId, KernelError> {
        for o in [dom, cod] {
            if o.0 as usize >= self.object_names.len() {
                return Err(KernelError::UnknownObject(o));
            }
        }
        self.morphism_names.push(name.into());
        self.dom.push(dom);
        self.cod.push(cod);
        Ok(MorphismId(self.dom.len() as u64 - 1))
    }

    pub fn set_identity(&mut self, a: ObjectId, f: MorphismId) -> Result<(), KernelError> {
        let i = f.0 as usize;
        if i >= self.dom.len() {
            return Err(KernelError::UnknownMorphism(f));
        }
        if self.dom[i] != a || self.cod[i] != a {
            return Err(KernelError::NotAnEndomorphism(f));
        }
        self.identities[a.0 as usize] = Some(f);
        Ok(())
    }

    /// Records `g ∘ f = h`. Typing is not checked here; validation reports it.
    pub fn set_composite(&mut self, g: MorphismId, f: MorphismId, h: MorphismId) {
        self.comp.insert((g, f), h);
    }

    /// Fills every missing `id ∘ f` and `f ∘ id` entry with `f`.
    pub fn fill_identity_composites(&mut self) {
        for i in 0..self.dom.len() {
            let f = MorphismId(i as u64);
            if let Some(id) = self.identities[self.dom[i].0 as usize] {
                self.comp.entry((f, id)).or_insert(f);
            }
            if let Some(id) = self.identities[self.cod[i].0 as usize] {
                self.comp.entry((id, f)).or_insert(f);
            }
        }
    }

    pub fn build(self) -> Result<FinCategory, KernelError> {
        let mut identities = Vec::with_capacity(self.identities.len());
        for (i, id) in self.identities.iter().enumerate() {
            match id {
                Some(f) => identities.push(*f),
                None => return Err(KernelError::MissingIdentity(self.object_names[i].clone())),
            }
        }
        let n = self.object_names.len();
        let mut buckets: Vec<Vec<MorphismId>> = vec![Vec::new(); n * n];
        for (i, (d, c)) in self.dom.iter().zip(&self.cod).enumerate() {
            buckets[d.0 as usize * n + c.0 as usize].push(MorphismId(i as u64));
        }
        Ok(FinCategory {
            name: self.name,
            object_names: self.object_names,
            morphism_names: self.morphism_names,
            dom: self.dom,
            cod: self.cod,
            identities,
            comp: self.comp,
            homs: buckets.into_iter().map(Arc::from).collect(),
        })
    }
}
