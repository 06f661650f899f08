use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("objects live on different surfaces: {0} vs {1}")]
    SurfaceMismatch(String, String),
    #[error("malformed coordinates: {0}")]
    MalformedCoordinates(String),
    #[error("empty multicurve where an essential curve is required")]
    EmptyMulticurve,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("genus {0} is not supported by the curve engine (only genus 2)")]
    UnsupportedGenus(u32),
    #[error("operation not available on the {0} model")]
    WrongModel(String),
    #[error("coordinates too large for the word engine")]
    CoordinateOverflow,
    #[error("expected {expected} curves, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("curves {first} and {second} intersect {count} times")]
    IntersectingCurves { first: usize, second: usize, count: u64 },
    #[error("curves {first} and {second} are isotopic")]
    DuplicateCurve { first: usize, second: usize },
    #[error("curve {0} is not a single essential curve")]
    NotACurve(usize),
    #[error("no path found within max_radius {radius} and max_twist {twist}")]
    NotFound { radius: u32, twist: u32 },
    #[error("cutoff values must be positive")]
    InvalidCutoff,
    #[error("no exact samples available")]
    InsufficientData,
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("line {line}: volume must be positive")]
    NonPositiveVolume { line: usize },
    #[error("line {line}: duplicate record name {name}")]
    DuplicateName { line: usize, name: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
