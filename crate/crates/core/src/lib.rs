//! Exact algebra for the graded symmetries of the (1+1)-dimensional
//! Lévy-Leblond equation, with desk-scale numerical spectrum checks.

pub mod anchors;
pub mod clifford;
pub mod graded;
pub mod operator;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod spectrum;
pub mod suites;
pub mod wave;

pub use operator::{Blade, BladeTable, OperatorPoly};
pub use report::{Check, ReportDocument, Status, Summary};
pub use scalar::{ScalarMonomial, ScalarSum};
