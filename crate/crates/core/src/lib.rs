pub mod complexes;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod groebner;
pub mod jumploci;
pub mod lattice;
pub mod linear;
pub mod perversity;
pub mod laurent;
pub mod sampling;

pub use error::{Error, ResourceError, Result};
pub use ext::ExtInt;
