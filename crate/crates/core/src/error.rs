use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report. Each variant names the violated
/// invariant; [`Error::code`] returns that name for machine consumption.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slope count {got} is below the minimum {min}")]
    InvalidSlopeCount { got: usize, min: usize },
    #[error("slope {0} occurs more than once")]
    DuplicateSlope(String),
    #[error("quotient is not Artinian (missing a pure power of some variable)")]
    NotArtinian,
    #[error("ideal is the unit ideal; the quotient module vanishes")]
    TrivialIdeal,
    #[error("third-syzygy ordering failed: {0}")]
    NonMonotone(String),
    #[error("bottom-face regularity {closed_form} disagrees with socle route {socle}")]
    SocleMismatch { closed_form: u32, socle: u32 },
    #[error("bottom-face z-exponent {0} is outside {{1, 2}}")]
    ZetaOutOfRange(u32),
    #[error("Buchberger graph embedding has crossing edges: {0}")]
    NonPlanar(String),
    #[error("{0}")]
    Parse(String),
    #[error("triangle {0} is degenerate (collinear vertices)")]
    DegenerateTriangle(usize),
    #[error("edge ({0}, {1}) lies on more than two triangles")]
    NonManifoldEdge(usize, usize),
    #[error("complex is not connected")]
    NotConnected,
    #[error("Euler characteristic V - E + F = {0}, expected 1")]
    NonzeroGenus(i64),
    #[error(
        "vertex {vertex}: a partially interior edge shares a slope with a totally interior edge"
    )]
    SlopeClashAssumption { vertex: usize },
    #[error("vertex {vertex}: no partially interior edges, alpha is undefined")]
    AlphaUndefined { vertex: usize },
    #[error("vertex {vertex}: k(v) = {k} but k0b(v) + 1 = {k0b_plus_one}")]
    AlphaMismatch {
        vertex: usize,
        k: usize,
        k0b_plus_one: usize,
    },
    #[error("expected exactly one totally interior edge, found {0}")]
    NotOneEdge(usize),
    #[error("interior vertex {0} is not an endpoint of the totally interior edge")]
    ExtraInteriorVertex(usize),
    #[error("H0 is still nonzero in degree {degree} = 4r+2 (r = {r})")]
    CapExceeded { r: u32, degree: u32 },
    #[error("regularity routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("exact regularity {exact} outside [{lower}, {upper}]")]
    SandwichViolated { exact: u32, lower: i64, upper: i64 },
    #[error("interior vertex {0} has no partially interior edge")]
    HypothesisViolated(usize),
}

impl Error {
    /// Stable short name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSlopeCount { .. } => "InvalidSlopeCount",
            Error::DuplicateSlope(_) => "DuplicateSlope",
            Error::NotArtinian => "NotArtinian",
            Error::TrivialIdeal => "TrivialIdeal",
            Error::NonMonotone(_) => "NonMonotone",
            Error::SocleMismatch { .. } => "SocleMismatch",
            Error::ZetaOutOfRange(_) => "ZetaOutOfRange",
            Error::NonPlanar(_) => "NonPlanar",
            Error::Parse(_) => "ParseError",
            Error::DegenerateTriangle(_) => "DegenerateTriangle",
            Error::NonManifoldEdge(..) => "NonManifoldEdge",
            Error::NotConnected => "NotConnected",
            Error::NonzeroGenus(_) => "NonzeroGenus",
            Error::SlopeClashAssumption { .. } => "SlopeClashAssumption",
            Error::AlphaUndefined { .. } => "AlphaUndefined",
            Error::AlphaMismatch { .. } => "AlphaMismatch",
            Error::NotOneEdge(_) => "NotOneEdge",
            Error::ExtraInteriorVertex(_) => "ExtraInteriorVertex",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::RouteDisagreement(_) => "RouteDisagreement",
            Error::SandwichViolated { .. } => "SandwichViolated",
            Error::HypothesisViolated(_) => "HypothesisViolated",
        }
    }
}
