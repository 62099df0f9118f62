use std::sync::Arc;

use serde::Serialize;

use super::functor::{Functor, NaturalTransformation};
use crate::error::Result;
use crate::kernel::Tier;

/// `F ⊣ G` with unit `η: 1 ⇒ GF` and counit `ε: FG ⇒ 1`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub name: String,
    pub left: Functor,
    pub right: Functor,
    pub unit: NaturalTransformation,
    pub counit: NaturalTransformation,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AdjunctionReport {
    pub adjunction: String,
    pub violations: Vec<String>,
}

impl AdjunctionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Adjunction {
    /// Builds an adjunction from component maps; the component functors are
    /// derived from `left` and `right`.
    pub fn new(
        name: impl Into<String>,
        left: Functor,
        right: Functor,
        unit: impl Fn(crate::kernel::ObjectId) -> Option<crate::kernel::MorphismId> + Send + Sync + 'static,
        counit: impl Fn(crate::kernel::ObjectId) -> Option<crate::kernel::MorphismId> + Send + Sync + 'static,
    ) -> Result<Adjunction> {
        let gf = Functor::compose(&right, &left)?;
        let fg = Functor::compose(&left, &right)?;
        let unit = NaturalTransformation::new("eta", Functor::identity(left.source()), gf, unit);
        let counit = NaturalTransformation::new("epsilon", fg, Functor::identity(right.source()), counit);
        Ok(Adjunction {
            name: name.into(),
            left,
            right,
            unit,
            counit,
        })
    }

    pub fn c(&self) -> &Arc<Tier> {
        self.left.source()
    }

    pub fn x(&self) -> &Arc<Tier> {
        self.left.target()
    }

    /// `G^op ⊣ F^op` with unit `ε^op` and counit `η^op`.
    pub fn opposite(&self) -> Adjunction {
        Adjunction {
            name: format!("{}^op", self.name),
            left: self.right.opposite(),
            right: self.left.opposite(),
            unit: self.counit.opposite(),
            counit: self.unit.opposite(),
        }
    }

    pub fn with_unit(mut self, unit: NaturalTransformation) -> Adjunction {
        self.unit = unit;
        self
    }
}

/// Functor laws, naturality of unit and counit, and both triangle identities
/// at every core object.
pub fn validate_adjunction(adj: &Adjunction) -> AdjunctionReport {
    let mut report = AdjunctionReport {
        adjunction: adj.name.clone(),
        violations: Vec::new(),
    };
    let v = &mut report.violations;
    v.extend(adj.left.violations());
    v.extend(adj.right.violations());
    v.extend(adj.unit.violations());
    v.extend(adj.counit.violations());
    if !v.is_empty() {
        return report;
    }
    let (c, x) = (adj.c().cat(), adj.x().cat());
    for &a in adj.c().core() {
        // ε_{F a} ∘ F(η_a) = 1_{F a}
        let fa = adj.left.obj(a).expect("validated");
        let lhs = adj
            .unit
            .component(a)
            .and_then(|eta| adj.left.mor(eta))
            .zip(adj.counit.component(fa))
            .and_then(|(f_eta, eps)| x.try_compose(eps, f_eta));
        if lhs != Some(x.identity(fa)) {
            v.push(format!("triangle identity fails at {}", c.object_label(a)));
        }
    }
    for &b in adj.x().core() {
        // G(ε_b) ∘ η_{G b} = 1_{G b}
        let gb = adj.right.obj(b).expect("validated");
        let lhs = adj
            .counit
            .component(b)
            .and_then(|eps| adj.right.mor(eps))
            .zip(adj.unit.component(gb))
            .and_then(|(g_eps, eta)| c.try_compose(g_eps, eta));
        if lhs != Some(c.identity(gb)) {
            v.push(format!("triangle identity fails at {}", x.object_label(b)));
        }
    }
    report
}

/// `H ⊣ F ⊣ G` with `(ζ, θ)` for the lower and `(η, ε)` for the upper adjunction.
#[derive(Clone, Debug)]
pub struct LocalizationTriple {
    pub name: String,
    /// `F ⊣ G`, unit `η`, counit `ε`.
    pub upper: Adjunction,
    /// `H ⊣ F`, unit `ζ`, counit `θ`.
    pub lower: Adjunction,
}

impl LocalizationTriple {
    pub fn c(&self) -> &Arc<Tier> {
        self.upper.c()
    }

    pub fn x(&self) -> &Arc<Tier> {
        self.upper.x()
    }

    pub fn f(&self) -> &Functor {
        &self.upper.left
    }

    pub fn g(&self) -> &Functor {
        &self.upper.right
    }

    pub fn h(&self) -> &Functor {
        &self.lower.left
    }

    pub fn eta(&self) -> &NaturalTransformation {
        &self.upper.unit
    }

    pub fn epsilon(&self) -> &NaturalTransformation {
        &self.upper.counit
    }

    pub fn zeta(&self) -> &NaturalTransformation {
        &self.lower.unit
    }

    pub fn theta(&self) -> &NaturalTransformation {
        &self.lower.counit
    }

    /// The triple of `F^op`: `G^op ⊣ F^op ⊣ H^op`.
    pub fn opposite(&self) -> LocalizationTriple {
        LocalizationTriple {
            name: format!("{}^op", self.name),
            upper: self.lower.opposite(),
            lower: self.upper.opposite(),
        }
    }

    /// The middle functors of both adjunctions must agree on the core.
    pub fn shared_middle_violations(&self) -> Vec<String> {
        let (f, f2) = (&self.upper.left, &self.lower.right);
        let c = self.c().cat();
        let mut out = Vec::new();
        for &a in self.c().core() {
            if f.obj(a) != f2.obj(a) {
                out.push(format!("middle functors differ on {}", c.object_label(a)));
            }
            for &b in self.c().core() {
                for &m in c.hom(a, b).iter() {
                    if f.mor(m) != f2.mor(m) {
                        out.push(format!("middle functors differ on {}", c.morphism_label(m)));
                    }
                }
            }
        }
        out
    }
}
