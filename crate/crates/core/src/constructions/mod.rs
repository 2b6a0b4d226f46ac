mod bistellar;
mod catalog;
mod kl;
mod movelog;
mod realize;
mod refit;
mod tree;

pub use bistellar::*;
pub use catalog::*;
pub use kl::*;
pub use movelog::*;
pub use realize::*;
pub use refit::*;
pub use tree::*;
