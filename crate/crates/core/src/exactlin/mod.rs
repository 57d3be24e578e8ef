//! Exact integer linear algebra for finitely presented abelian groups.

pub mod block;
pub mod field;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod snf;

pub use field::{rank_over_field, Field};
pub use int::Int;
pub use lattice::{column_basis, kernel_basis, lattice_eq, preimage_lattice, solve};
pub use matrix::IntMatrix;
pub use module::{
    binomial, cohomology_at, cohomology_dim_at, cokernel_class, combinations, exterior_map,
    exterior_matrix, exterior_minimized, exterior_power, minimize, FgaClass,
    Minimized, ModuleMap, PresentedModule,
};
pub use snf::{snf, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not well defined: relation column {relation} has nonzero image")]
    IllDefinedMap { relation: usize },
    #[error("composite of differentials is nonzero on generator {generator}")]
    NonzeroComposite { generator: usize, image: Vec<Int> },
}
