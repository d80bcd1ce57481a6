use thiserror::Error;

use crate::duality::SpaceReport;
use crate::lm::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("order has a cycle through `{a}` and `{b}`")]
    Cycle { a: String, b: String },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive above `{a}` via `{b}`")]
    NotTransitive { a: String, b: String },
    #[error("carrier of {0} elements exceeds the supported maximum")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty poset is not a bounded lattice")]
    Empty,
    #[error("`{a}` and `{b}` have no least upper bound")]
    NoSupremum { a: String, b: String },
    #[error("`{a}` and `{b}` have no greatest lower bound")]
    NoInfimum { a: String, b: String },
    #[error("distributivity fails at (`{a}`, `{b}`, `{c}`)")]
    NotDistributive { a: String, b: String, c: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmError {
    #[error("n must be at least 2, got {0}")]
    InvalidN(usize),
    #[error("levels {levels:?} are not a subchain of the {n}-element chain")]
    InvalidLevels { n: usize, levels: Vec<usize> },
    #[error("one-element algebras are excluded")]
    Degenerate,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("product needs at least one factor")]
    EmptyProduct,
    #[error("algebra of {0} elements exceeds the supported maximum")]
    TooLarge(usize),
    #[error("axiom violations: {0}")]
    Axioms(ValidationReport),
    #[error("`{0}` is not a Boolean element")]
    NotBoolean(String),
    #[error("Boolean-element characterisations disagree at `{element}`: {verdicts:?}")]
    BooleanCharacterisation { element: String, verdicts: [bool; 4] },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("malformed space maps: {0}")]
    MapShape(String),
    #[error("space axioms fail: {0}")]
    InvalidSpace(SpaceReport),
    #[error("{0} increasing sets exceed the supported maximum")]
    TooLarge(usize),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("round trip failed: {0}")]
    RoundTripFailure(String),
    #[error("space is not a sum of chains at `{0}`")]
    NotAChainSum(String),
    #[error(transparent)]
    Lm(#[from] LmError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("congruences on algebras of different sizes ({left} and {right})")]
    AlgebraMismatch { left: usize, right: usize },
    #[error("subset {0} is not semimodal")]
    NotSemimodal(String),
    #[error("complement of {0} is not semimodal")]
    ComplementNotSemimodal(String),
    #[error("{0} is not a lattice filter")]
    NotAFilter(String),
    #[error("form `{form}` of the principal congruence of ({a}, {b}) disagrees with the oracle")]
    FormMismatch { form: &'static str, a: String, b: String },
    #[error("subset correspondence fails: {0}")]
    CorrespondenceFailure(String),
    #[error("space of {0} points is too large to scan")]
    TooLarge(usize),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BooleanError {
    #[error("`{0}` is not a Boolean element")]
    NotBoolean(String),
    #[error("modal subset {0} is not sigma of a Boolean element")]
    NoGenerator(String),
    #[error("Boolean criteria disagree: {0}")]
    CharacterisationMismatch(String),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Lm(#[from] LmError),
}
