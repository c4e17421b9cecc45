use thiserror::Error;

use crate::hypercube::MAX_DIMENSION;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..={MAX_DIMENSION}")]
    DimensionOutOfRange(u32),
    #[error("{what} needs dimension at least {min}, got {n}")]
    DimensionTooSmall { n: u32, min: u32, what: &'static str },
    #[error("{what} supports dimension at most {max}, got {n}")]
    DimensionTooLarge { n: u32, max: u32, what: &'static str },
    #[error("dimension {0} is not divisible by 3")]
    NotDivisibleByThree(u32),
    #[error("vertex {vertex} is out of range for dimension {n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("direction {direction} is out of range for dimension {n}")]
    DirectionOutOfRange { direction: u32, n: u32 },
    #[error("vertex {vertex} has bit {direction} set, expected the endpoint with that bit clear")]
    NonCanonicalEndpoint { vertex: u32, direction: u32 },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(u32, u32),
    #[error("direction {0} appears twice in a geodesic")]
    RepeatedDirection(u32),
    #[error("vertices {v} and {w} are at distance {distance}, expected 3")]
    NotDistanceThree { v: u32, w: u32, distance: u32 },
    #[error("vertices {0} and {1} are not antipodal in Q3")]
    NotAntipodalInQ3(u32, u32),
    #[error("expected a colouring of Q3, got dimension {0}")]
    NotQ3(u32),
    #[error("Q3 colouring value {0} does not fit in 12 bits")]
    Q3OutOfRange(u32),
    #[error("Q3 colouring {bits:#05x} is {found}, the selector needs a {expected} colouring")]
    WrongClassification { bits: u16, found: &'static str, expected: &'static str },
    #[error("no one-change geodesic with the required end colours in Q3 colouring {0:#05x}")]
    NoQualifyingGeodesic(u16),
    #[error("invalid block decomposition: {0}")]
    InvalidBlocks(String),
    #[error("malformed header line {0:?}, expected `n=<decimal>`")]
    MalformedHeader(String),
    #[error("edge bit string has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid character {found:?} at position {position} of the edge bit string")]
    InvalidCharacter { found: char, position: usize },
    #[error("unexpected content after the edge bit string")]
    TrailingContent,
    #[error("sample count must be at least 1")]
    NoSamples,
}
