use thiserror::Error;

use crate::extension::ExtensionViolation;
use crate::monoid::HomViolation;
use crate::violation::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("table entry at ({a}, {b}) is out of range")]
    OutOfRange { a: usize, b: usize },
    #[error("identity law fails at element {0}")]
    BadIdentity(usize),
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("not a homomorphism: {0}")]
    NotAHom(HomViolation),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("not an extension: {0}")]
    NotAnExtension(ExtensionViolation),
    #[error("extension is not Schreier split")]
    NotSchreierSplit,
    #[error("extension is not Schreier")]
    NotSchreier,
    #[error("extension is not weakly Schreier split")]
    NotWeaklySchreierSplit,
    #[error("extension is not weakly Schreier")]
    NotWeaklySchreier,
    #[error("extension is not special weakly Schreier")]
    NotSpecial,
    #[error("invalid generator chosen over quotient element {0}")]
    BadGeneratorChoice(usize),

    #[error("invalid action: {0}")]
    ActionInvalid(Violation),
    #[error("invalid factor system: {0}")]
    FactorSystemInvalid(Violation),
    #[error("invalid relaxation: {0}")]
    InvalidRelaxation(Violation),
    #[error("invalid relaxed action: {0}")]
    InvalidRelaxedAction(Violation),
    #[error("invalid weakly Schreier factor system: {0}")]
    InvalidWSFactorSystem(Violation),

    #[error("kernel is not an abelian group")]
    KernelNotAbelianGroup,
    #[error("extensions induce different actions")]
    ActionsDiffer,

    #[error("not a finite meet-semilattice")]
    NotASemilattice,
    #[error("map does not preserve the meet of {0} and {1}")]
    NotMeetPreserving(usize, usize),

    #[error("order {0} is beyond the enumeration limit")]
    OrderTooLarge(usize),
}
