//! Exact verification of matrix factorizations of Landau–Ginzburg
//! potentials obtained from holomorphic strip counts.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`]: exact coefficients (`α`-quotient rings, rational `T`-powers)
//!   and sparse Laurent polynomials.
//! * [`mf`]: matrix factorizations, their verification and tensor products.
//! * [`toric`]: potentials and critical data of weighted projective lines,
//!   including the bulk-deformed teardrop.
//! * [`strips`]: strip classes and their Fourier assembly into
//!   factorization pairs.
//! * [`floer_torus`]: the Morse–Floer complex of a torus twisted by flat
//!   line bundles.
//! * [`fukaya_mini`]: the four-object `m₂` table and the equivalence check.
//! * [`strip_numeric`]: floating-point checks on degree-two Blaschke strips.
//! * [`serial`]: the JSON interchange formats.

pub mod field;
pub mod floer_torus;
pub mod fukaya_mini;
pub mod mf;
pub mod ring;
pub mod serial;
pub mod strip_numeric;
pub mod strips;
pub mod toric;
