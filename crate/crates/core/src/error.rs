use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("order overflow: closure exceeded {0} elements")]
    OrderOverflow(usize),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("foreign element: not a member of the group")]
    ForeignElement,
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("not in catalog: {0}")]
    NotInCatalog(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible conductors {0} and {1}")]
    Conductor(u32, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate spectrum: reseed")]
    DegenerateSpectrum,
    #[error("character recovery failed: {0}")]
    CharacterRecovery(String),
    #[error("indicator anomaly: {0}")]
    IndicatorAnomaly(f64),
    #[error("non-integral multiplicity (residual {0:e})")]
    NonIntegralMultiplicity(f64),
    #[error("modular data inconsistent: {0}")]
    ModularInconsistent(String),
    #[error("non-unitary T at irrep {0}")]
    NonUnitaryT(usize),
    #[error("Verlinde integrality failure: {0}")]
    VerlindeIntegrality(String),
    #[error("qdim inconsistency at irrep {0}")]
    QdimInconsistency(usize),
    #[error("unit-group anomaly: found {found} units, expected {expected}")]
    UnitGroupAnomaly { found: usize, expected: usize },
    #[error("indicator failure at irrep {0}: {1}")]
    IndicatorFailure(usize, String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("McKay failure: no affine ADE match")]
    McKayFailure,
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
