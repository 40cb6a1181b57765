use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus {0:?} is reducible over F_{1}")]
    Reducible(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {requested} exceeds the size cap {cap}")]
    SizeLimit { requested: u128, cap: u64 },
    #[error("division by zero")]
    DivideByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("{0} is not a valid element of a field of order {1}")]
    InvalidElement(u64, u32),
    #[error("polynomial is not a permutation polynomial")]
    NotPermutation,
    #[error("polynomial is constant; a degree of at least 1 is required")]
    DegreeZero,
    #[error("cycle of length {length} is divisible by the characteristic {p}")]
    PCharObstruction { length: usize, p: u32 },
    #[error("element {element} has tail length {tail} > 1 in the functional graph")]
    NotDiagonalizableInput { element: u32, tail: usize },
    #[error("linear map bx+a needs b != 0")]
    DegenerateLinearMap,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
