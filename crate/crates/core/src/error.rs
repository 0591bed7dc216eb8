use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image array is not a permutation of 0..{degree}")]
    NotABijection { degree: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("size limit exceeded: {what} exceeds cap {cap}")]
    SizeLimit { what: String, cap: u128 },

    #[error("set is not a union of double cosets of the subgroup: {0}")]
    NotBiInvariant(String),

    #[error("connection set is not closed under inverses")]
    NotInverseClosed,

    #[error("connection set intersects the subgroup (identity double coset would create loops)")]
    IdentityInConnection,

    #[error("valency is zero: connection set is empty")]
    ZeroValency,

    #[error("group does not act by automorphisms: generator {generator} maps edge {{{u}, {v}}} to a non-edge")]
    NotAnAutomorphism { generator: usize, u: usize, v: usize },

    #[error("action not vertex-transitive: orbit of {point} has size {orbit} of {degree}")]
    NotTransitive { point: usize, orbit: usize, degree: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate})")]
    NotConverged { iterations: usize, estimate: f64 },

    #[error("singular vectors were not retained")]
    VectorsAbsent,

    #[error("empty set where a non-empty one is required: {0}")]
    Empty(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("case `{case}`: {source}")]
    Case {
        case: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn size_limit(what: impl Into<String>, cap: impl Into<u128>) -> Self {
        Error::SizeLimit { what: what.into(), cap: cap.into() }
    }

    pub fn in_case(self, case: &str) -> Self {
        match self {
            e @ Error::Case { .. } => e,
            e => Error::Case { case: case.to_string(), source: Box::new(e) },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
