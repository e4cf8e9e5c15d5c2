use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid deformation parameters: {0}")]
    Param(String),
    #[error("invalid dimension: {0}")]
    Dimension(String),
    #[error("window infeasible: max index {max_index} + guard {guard} exceeds top state {top} of a {dim}-dimensional factor")]
    Window {
        max_index: usize,
        guard: usize,
        dim: usize,
        top: usize,
    },
    #[error("degree cap {cap} exceeded (degree {degree})")]
    Overflow { degree: u32, cap: u32 },
    #[error("tensor dimension {dim} exceeds cap {cap}")]
    Cap { dim: usize, cap: usize },
    #[error("malformed matrix dump at line {line}: {msg}")]
    Dump { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
