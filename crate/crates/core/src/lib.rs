//! Random irreducible representations of wreath products G≀S_q: Young
//! diagram geometry, the partial-permutation algebra, exact characters,
//! brute-force oracles, asymptotic cumulants and a fluctuation sampler.

pub mod algebra;
pub mod asymptotics;
pub mod brute;
pub mod diagram;
pub mod error;
pub mod group;
pub mod linalg;
pub mod partition;
pub mod sampler;
pub mod scalar;
pub mod setpart;
pub mod wreath;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Transition measures with exact rational atoms and weights.
pub type ExactMeasure = diagram::TransitionMeasure<Rational>;
/// Transition measures in floating point, used by the sampler.
pub type FloatMeasure = diagram::TransitionMeasure<f64>;
pub type ExactFreeCumulants = diagram::FreeCumulantVector<Rational>;
pub type FloatFreeCumulants = diagram::FreeCumulantVector<f64>;
/// Limit data evaluated exactly, in floating point, or symbolically in √p.
pub type ExactFluctuations = asymptotics::FluctuationData<Rational>;
pub type FloatFluctuations = asymptotics::FluctuationData<f64>;
pub type SymbolicFluctuations = asymptotics::FluctuationData<asymptotics::SqrtLaurent>;
