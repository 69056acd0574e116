pub mod calculus;
pub mod cli;
pub mod engine;
pub mod error;
pub mod expr;
pub mod grading;
pub mod hopf;
pub mod operators;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use engine::{Element, FreeElement, Presentation};
pub use error::Error;
pub use grading::Degree;
pub use scalar::QScalar;
pub use tensor::TensorElement;
