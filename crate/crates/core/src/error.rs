use alloc::string::String;

use crate::lattice::SubsetId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension n = {n} is outside 1..={cap}")]
    DimensionOutOfRange { n: u32, cap: u32 },
    #[error("enumerating B_{n} exceeds the enumeration cap n <= {cap}")]
    AboveEnumerationCap { n: u32, cap: u32 },
    #[error("subset {0} is not contained in the ground set")]
    SubsetOutOfRange(SubsetId),
    #[error("malformed subset literal `{0}`")]
    BadSubsetLiteral(String),
    #[error("malformed poset spec `{0}`")]
    BadPosetSpec(String),
    #[error("relation is cyclic: element {0} ends up below itself")]
    CyclicRelation(usize),
    #[error("poset element {index} out of range for size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("posets are limited to {max} elements, got {size}")]
    PosetTooLarge { size: usize, max: usize },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid chain family: {0}")]
    InvalidChainFamily(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("families {i} and {j} contain incomparable sets {a} and {b}")]
    NotCrossComparable { i: usize, j: usize, a: SubsetId, b: SubsetId },
    #[error("cannot certify the forbidden family: {0}")]
    Uncertifiable(String),
    #[error("search budget of {nodes} nodes exhausted before any witness was found")]
    BudgetExhausted { nodes: u64 },
    #[error("no valid coloring exists for these parameters")]
    Infeasible,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
