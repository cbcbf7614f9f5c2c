//! The group ring `Z[G]`, exact cyclotomic integers, pairings and
//! character values.

mod cyclotomic;
mod element;
mod gshds;
mod pairing;

pub use cyclotomic::CyclotomicInt;
pub use element::{char_table_values, char_value, fourier_invert, project, restrict, AlgebraElement};
pub use gshds::{character_dichotomy, check_gshds, CharacterDichotomy, GshdsCertificate, GshdsKind};
pub use pairing::{Pairing, PairingKind};
