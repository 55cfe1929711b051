//! Independent checking machinery: lasso semantics, lasso membership,
//! intersection, emptiness and random inputs.

mod emptiness;
mod lasso;
mod product;
mod sample;

pub use emptiness::{is_empty, Emptiness};
pub use lasso::{accepts_lasso, enumerate_lassos, eval_lasso, lasso_count, LassoWord};
pub use product::{product, ProductState};
pub use sample::{proposition_names, sample_formulas, SampleWeights, Sampler};
