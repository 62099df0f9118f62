use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{morphism} does not land in the core of {tier}")]
    OutsideCore { tier: String, morphism: String },
    #[error("functor {functor}: {reason}")]
    InvalidFunctor { functor: String, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hom-set {pair} needs {spans} raw spans, above the cap of {cap}")]
    SpanCap { pair: String, spans: usize, cap: usize },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
