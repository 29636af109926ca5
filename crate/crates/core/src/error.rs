use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic irreducible of degree at least 1")]
    InvalidModulus,
    #[error("field order exceeds the packed element range")]
    FieldTooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no canonical embedding between the given fields")]
    NoEmbedding,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("quiver has an oriented cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("not a morphism of representations: {0}")]
    NotAMorphism(String),
    #[error("d^{{i+1}} d^i != 0 at degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map at degree {0}")]
    NotAChainMap(i64),
    #[error("operation requires a hereditary base")]
    NotHereditary,
    #[error("enumeration needs a finite field or an explicit bound")]
    Unbounded,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("cannot factor {0} at desk scale")]
    Unfactorable(String),
    #[error("m must be positive for an orbit category")]
    ZeroPeriod,
    #[error("not an automorphism of the quiver")]
    NotAnAutomorphism,
    #[error("functor failed a tensor spot-check: {0}")]
    NotATensorFunctor(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
