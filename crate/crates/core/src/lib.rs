pub mod asymptotic;
pub mod constructions;
pub mod error;
pub mod filtration;
pub mod forms;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod mixed;
pub mod report;
pub mod scalar;
pub mod search;
pub mod subspace;

pub use asymptotic::{Ivi, NilpotentCone, NilpotentOrbit, PolyMap};
pub use error::{Error, Result};
pub use filtration::{Bigrading, DecFiltration, HodgeStructure, IncFiltration};
pub use forms::BilForm;
pub use matrix::{Mat, Vector};
pub use mixed::{MixedHodge, PmhsData};
pub use report::Report;
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use constructions::{DimTable, SplitPmhs};
pub use search::{SearchConfig, SearchResult};
