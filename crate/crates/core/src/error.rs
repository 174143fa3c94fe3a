use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix {rows}x{cols} needs {} entries, found {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("vector length {found} does not match generator count {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("duplicate generator label {0:?}")]
    DuplicateGenerator(String),
    #[error("homomorphism is not well defined: image of source relation {relation} is not a target relation")]
    NotWellDefined { relation: usize },
    #[error("maps are not composable: target of the first differs from source of the second")]
    NotComposable,
}
