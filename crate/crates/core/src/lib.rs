//! Abelian monopole gauge potentials as piecewise functions `A_φ(θ)` on
//! `[0, π]` with identified endpoints.
//!
//! * [`piecewise`]: exact piecewise-smooth fields, one-sided limits, jumps.
//! * [`gauges`]: the Schwinger, Dirac, Wu-Yang, anti-Wu-Yang and vacuum gauges.
//! * [`cartesian`]: the 3-vector potentials and their axis limits.
//! * [`measures`]: the invariant and additive singularity measures.
//! * [`fourier`]: trigonometric series, midpoint convergence, Gibbs overshoot.
//! * [`gaugeops`]: piecewise-constant gauge shifts and the quantization check.
//!
//! ```
//! use gauge_lab::gauges::{make_gauge, GaugeKind};
//! use gauge_lab::measures::{mu_addit, mu_inv};
//!
//! let anti = make_gauge(GaugeKind::AntiWuYang, 1.0);
//! assert!((mu_inv(&anti) - 1.0).abs() < 1e-12);
//! assert!((mu_addit(&anti) - 3.0).abs() < 1e-12);
//! ```

pub mod cartesian;
pub mod export;
pub mod fourier;
pub mod gaugeops;
pub mod gauges;
pub mod measures;
pub mod parallel;
pub mod piecewise;
pub mod quadrature;

pub use cartesian::{AxisProbeResult, CartesianGauge, CartesianKind, Vector3};
pub use fourier::{FourierSeries, Method};
pub use gaugeops::{apply_shift, GaugeShift};
pub use gauges::{make_gauge, GaugeKind};
pub use measures::{MeasureReport, RegularityVerdict};
pub use parallel::Execution;
pub use piecewise::{JumpRecord, Piece, PieceExpr, PiecewiseField, Side};
