//! Exact signature invariants of torus links, lower and upper bounds for
//! their smooth cobordism distance, and explicit scissor-move cobordism
//! plans.

pub mod bounds;
pub mod error;
pub mod export;
pub mod planner;
pub mod signature;
pub mod stable;
pub mod theta;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use signature::{
    classical_signature, epsilon, glm_signature, profile, signature_at, LatticeSpectrum,
    ProfileCache, SignatureProfile,
};
pub use theta::Theta;
pub use torus::{chi, genus4, normalize, TorusLink};
