use serde::Serialize;

use super::functor::Functor;
use crate::kernel::MorphismId;
use crate::report::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FibrationKind {
    None,
    Weak,
    Special,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub functor: String,
    pub kind: FibrationKind,
    /// A `u` with no lifting at all (kind none), else one without an iso lifting.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OpfibrationReport {
    pub functor: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// For every core `C` and `u: X -> F(C)` with `X` in the target core, searches
/// `f: U -> C` over core `U` and an epi (iso for special) `φ: F(U) -> X` with
/// `F(f) = u φ`.
pub fn weak_fibration_kind(functor: &Functor) -> FibrationReport {
    let (ct, xt) = (functor.source(), functor.target());
    let (c, x) = (ct.cat(), xt.cat());
    let mut kind = FibrationKind::Special;
    let mut witness = None;
    for &obj in ct.core() {
        let Some(fc) = functor.obj(obj) else { continue };
        for &y in xt.core() {
            for &u in x.hom(y, fc).iter() {
                let mut weak = false;
                let mut special = false;
                'search: for &uo in ct.core() {
                    let Some(fu) = functor.obj(uo) else { continue };
                    for &phi in x.hom(fu, y).iter() {
                        if !xt.is_epi(phi) {
                            continue;
                        }
                        let target = x.compose(u, phi);
                        let lifts = c.hom(uo, obj).iter().any(|&f| functor.mor(f) == Some(target));
                        if lifts {
                            weak = true;
                            if xt.is_iso(phi) {
                                special = true;
                                break 'search;
                            }
                        }
                    }
                }
                if !weak {
                    return FibrationReport {
                        functor: functor.name().to_string(),
                        kind: FibrationKind::None,
                        witness: Some(Witness::new(x, &[u], "no lifting")),
                    };
                }
                if !special && kind == FibrationKind::Special {
                    kind = FibrationKind::Weak;
                    witness = Some(Witness::new(x, &[u], "no lifting with an iso comparison"));
                }
            }
        }
    }
    FibrationReport {
        functor: functor.name().to_string(),
        kind,
        witness,
    }
}

/// For every core `C` and `v: F(C) -> Y` with `Y` in the target core, searches
/// `g: C -> V` over core `V` and a mono `ψ: Y -> F(V)` with `F(g) = ψ v`.
pub fn weak_opfibration(functor: &Functor) -> OpfibrationReport {
    let (ct, xt) = (functor.source(), functor.target());
    let (c, x) = (ct.cat(), xt.cat());
    for &obj in ct.core() {
        let Some(fc) = functor.obj(obj) else { continue };
        for &y in xt.core() {
            for &v in x.hom(fc, y).iter() {
                let found = ct.core().iter().any(|&vo| {
                    let Some(fv) = functor.obj(vo) else { return false };
                    let images: Vec<MorphismId> =
                        c.hom(obj, vo).iter().filter_map(|&g| functor.mor(g)).collect();
                    x.hom(y, fv)
                        .iter()
                        .any(|&psi| xt.is_mono(psi) && images.contains(&x.compose(psi, v)))
                });
                if !found {
                    return OpfibrationReport {
                        functor: functor.name().to_string(),
                        holds: false,
                        witness: Some(Witness::new(x, &[v], "no lifting")),
                    };
                }
            }
        }
    }
    OpfibrationReport {
        functor: functor.name().to_string(),
        holds: true,
        witness: None,
    }
}
