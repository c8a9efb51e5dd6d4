//! Exact computer algebra for multiple divisor functions (MDFs) at level `N`.
//!
//! The crate works over the cyclotomic field `Q(eta_N)` with exact rational
//! coordinates throughout. It provides:
//!
//! * [`rational`], [`sequences`], [`poly`], [`cyclo`] — arbitrary-precision
//!   rationals, Bernoulli/Euler/Eulerian numbers, cyclotomic polynomials and
//!   canonical arithmetic in `Q(eta_N)`;
//! * [`omega`] — the expansion coefficients `omega_{n;alpha}` of
//!   `1/(eta^alpha e^x - 1)` and the `lambda` structure constants of the
//!   polylogarithm product;
//! * [`qseries`] — truncated q-series, the three independent constructions of
//!   an MDF `[s; alpha]`, the generators `g_beta`, the element `t_N` and the
//!   derivation `q d/dq`;
//! * [`words`] — the quasi-shuffle (stuffle) algebra on colored words, its
//!   diamond product and the evaluation homomorphism into q-series;
//! * [`derive`] — the closed formulas expressing `q d/dq [s; alpha]` back
//!   inside the algebra;
//! * [`reduce`] — the regularization matrices `M(N, m)` and the rewriting of
//!   any MDF as a polynomial in `t_N` over the subalgebra generated by
//!   convergent indices and the `g_beta`;
//! * [`numeric`], [`relations`] — numeric evaluation of multiple zeta values
//!   at level `N`, the weight-graded `Z` projection, regularized values as
//!   polynomials in `T`, and the relation miner with numeric certification;
//! * [`index`] — the `"[s1,..,sd;a1,..,ad]@N"` literal grammar used by the
//!   command-line front end.

pub mod cyclo;
pub mod derive;
pub mod index;
pub mod linalg;
pub mod numeric;
pub mod omega;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod reduce;
pub mod relations;
pub mod sequences;
pub mod words;

pub use cyclo::CycloNum;
pub use qseries::{MdfIndex, QSeries};
pub use rational::Rational;
pub use words::{FormalSum, Word};
