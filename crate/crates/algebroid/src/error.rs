use thiserror::Error;

/// Errors raised by constructors and operations.
///
/// Constructors verify every structural invariant eagerly; the variants
/// carry the first witnessing basis index so a failure can be traced back
/// to a concrete element.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime (or out of range 2 <= p < 2^31)")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("multiplication is not commutative at basis pair ({i}, {j})")]
    NonCommutative { i: usize, j: usize },
    #[error("multiplication is not associative at basis triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("declared unit fails the unit law at basis element {i}")]
    BadUnit { i: usize },
    #[error("map does not preserve the unit")]
    NotUnital,
    #[error("map is not multiplicative at basis pair ({i}, {j})")]
    NotMultiplicative { i: usize, j: usize },
    #[error("module action violates {0}")]
    BadAction(String),
    #[error("map does not commute with the action of basis element {i}")]
    NotActionLinear { i: usize },
    #[error("tensor factors are not twisted over the same base algebra")]
    BaseMismatch,
    #[error("induced map does not kill the balancing relation at (a={a}, x={x}, y={y})")]
    WellDefinednessViolation { a: usize, x: usize, y: usize },
    #[error("tensor space of full dimension {dim} exceeds the ceiling {ceiling}")]
    SizeExceeded { dim: usize, ceiling: usize },
    #[error("axiom ({axiom}) fails at basis element {witness}")]
    AxiomViolation { axiom: String, witness: usize },
    #[error("structure map eta_{side} is not faithfully flat")]
    NotFaithfullyFlat { side: char },
    #[error("algebroid homomorphism violates `{identity}` at basis element {witness}")]
    CompatibilityViolation { identity: String, witness: usize },
    #[error("structure map is not twisted A0-linear at basis element {witness}")]
    NotLinear { witness: usize },
    #[error("structure map is not coassociative at basis element {witness}")]
    NotCoassociative { witness: usize },
    #[error("structure map is not counitary at basis element {witness}")]
    NotCounital { witness: usize },
    #[error("descent map is not A1-linear at basis element {witness}")]
    NotA1Linear { witness: usize },
    #[error("descent map is not invertible")]
    NotInvertible,
    #[error("cocycle identity fails at basis element {witness}")]
    CocycleViolation { witness: usize },
    #[error("comodule structure does not restrict/descend: {0}")]
    StructureDoesNotRestrict(String),
    #[error("the zero vector generates nothing")]
    ZeroVector,
    #[error("source or target of the map was not constructed as an extended comodule")]
    NotExtendedSource,
    #[error("comodule does not live over a group-action algebroid")]
    NotGroupActionAlgebroid,
    #[error("group action is not a homomorphism at pair ({g}, {h})")]
    NotAHomomorphismAction { g: usize, h: usize },
    #[error("group element {g} does not act by an algebra automorphism")]
    NotAutomorphism { g: usize },
    #[error("search space of {size} candidate tuples exceeds the ceiling {ceiling}")]
    SearchSpaceTooLarge { size: u64, ceiling: u64 },
    #[error("restriction map is not semilinear at basis pair ({b}, {m})")]
    NotSemilinear { b: usize, m: usize },
    #[error("bad group table: {0}")]
    BadGroup(String),
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
