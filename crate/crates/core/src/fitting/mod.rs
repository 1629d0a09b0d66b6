//! Target datasets, the MSE cost, Nelder-Mead, and fit metrics.

mod dataset;
mod fit;
mod optimizer;
mod targets;

pub use dataset::{make_dataset, LabeledDataset};
pub use fit::{accuracy, fit, initial_parameters, mse_cost, predict, FitResult};
pub use optimizer::{nelder_mead, nelder_mead_from, OptimizeResult, OptimizerConfig, TracePoint};
pub use targets::{builtin_target, BuiltinTarget, BUILTIN_NAMES};
