//! Finite abelian p-groups: element arithmetic, unit-group orbits,
//! subgroups and quotients.

mod group;
mod orbits;
mod subgroup;

pub use group::{elem_order, make_group, scalar_mul, GroupElement, GroupSpec, MAX_ORDER, MAX_RANK};
pub use orbits::{orbit_tables, OrbitOrdering, OrbitTableSummary, UnitOrbitTable};
pub use subgroup::{kernel_image_mu, quotient_projection, QuotientMap, Subgroup};
