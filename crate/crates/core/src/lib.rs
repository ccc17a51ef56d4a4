//! Exact Kloosterman sums over GF(2^n) and GF(3^n), together with the
//! machinery used to predict their residues modulo 8, 16, 48, 64 and 192:
//! traces and quadratic traces, Teichmüller lifts in the Galois ring
//! GR(2^k, n), Gauss sums, Stickelberger congruences and the 2-adic Gamma
//! function.

pub mod congruences;
pub mod error;
pub mod export;
pub mod galois_ring;
pub mod gauss;
pub mod gf2n;
pub mod kloosterman;
pub mod residue;
pub mod ternary;
pub mod verify;

mod gf2_linalg;
mod poly2;
mod spec_string;

pub use congruences::CongruenceClass;
pub use error::{Error, Result};
pub use galois_ring::{RingCtx, RingElement};
pub use gauss::GaussTable;
pub use gf2n::{FieldCtx, FieldElement};
pub use kloosterman::{ksum_all, ksum_naive, KSpectrum};
pub use residue::IntResidue;
pub use ternary::{ternary_ksum, ternary_ksum_all, TernaryElement, TernaryFieldCtx};
pub use verify::{run_verify, run_zeros, Theorem, VerifyOptions, VerifyReport};
