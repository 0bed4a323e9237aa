pub mod algebra;
pub mod cone;
pub mod curve;
pub mod error;
pub mod gen;
pub mod par;
pub mod psido;
pub mod quantize;
pub mod rankin_cohen;
pub mod verify;

pub use error::{Error, Result};
pub use par::Exec;
pub use psido::PsiDO;
