//! Quadratic-residue-like subsets encoded as sign vectors on unit orbits,
//! their difference coefficients, GSHDS verdicts, duals, difference
//! intersection numbers and the candidate search.

mod intersection;
mod search;
mod slice;

pub use intersection::{diff_intersection, diff_intersection_mod_power, NuReport, NuVector};
pub use search::{search, SearchConfig, SearchMode, SearchReport, DEFAULT_SAMPLES};
pub use slice::{
    certify, diff_coeffs, diff_coeffs_by_characters, dual, is_gshds, qrs_decode, qrs_encode, restrict_prune, DiffCoeffVector, GshdsVerdict, QrsCertificate,
    QrsContext, SignVector,
};
