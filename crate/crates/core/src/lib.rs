//! Validated numerics for a spurious period-4 sink of Heun's method on a
//! stiff planar system.
//!
//! * [`interval`]: outward-rounded interval arithmetic and boxes.
//! * [`dynamics`]: the vector field, its Heun map and the restricted 1D map.
//! * [`cap`]: the set-oriented proof that a cloud of boxes is absorbed.
//! * [`analysis`]: plain floating-point exploration (sink orbit, basin,
//!   cascade).
//! * [`report`]: configuration files, LaTeX and CSV emitters.

pub mod analysis;
pub mod cap;
pub mod dynamics;
pub mod interval;
pub mod report;
