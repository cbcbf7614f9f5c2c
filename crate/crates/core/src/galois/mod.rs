//! Finite fields `F_q`, Galois rings `GR(p^2, beta)`, Teichmuller units,
//! Frobenius and trace, and the orbit representatives built from them.

mod paley;
mod reps;
mod ring;

pub use paley::{paley_gshds, trace_pairing};
pub use reps::{orbit_reps, plain_orbit_reps, OrbitReps, OrbitRepsSummary};
pub use ring::{make_field, make_ring, nth_primitive_spec, primitive_polynomials, GaloisRing, RingElement, RingSpec};
