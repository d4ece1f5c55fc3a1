//! Closed-form transmission, reflection, resonance, and bound-state analysis
//! for a relativistic particle in one dimension crossing a smoothed
//! rectangular region, where the potential and an optional mass enhancement
//! share the same Woods-Saxon edge profile.
//!
//! The wave equation at each wall reduces to the hypergeometric equation;
//! matching the local solutions across the region gives reflection and
//! transmission amplitudes, transmission resonances, and the quantization
//! condition of the well, all in closed form ([`scattering`], [`bound`],
//! [`supercritical`]). A self-contained adaptive integrator ([`oracle`])
//! cross-checks every closed-form quantity by direct numerical solution.
//!
//! ```
//! use dirac_ws::{PhysicalConfig, ProblemKind, scattering::reflection_transmission};
//!
//! let cfg = PhysicalConfig::new(0.4, 0.0, 1.2, 5.0, 10.0).unwrap();
//! let rt = reflection_transmission(&cfg, ProblemKind::Barrier, 0.6).unwrap();
//! assert!((rt.t - 0.3661433474931919).abs() < 1e-12);
//! assert!(rt.unitarity_defect.abs() < 1e-10);
//! ```

pub mod bound;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scattering;
mod search;
pub mod special;
pub mod supercritical;

pub use error::{Error, Result};
pub use model::{
    exponents, exponents_with_branch, matching, MuBranch, PhysicalConfig, ProblemKind,
    ScatteringExponents,
};
pub use scattering::{reflection_transmission, ScatteringResult};
