//! Necessary existence conditions: the lambda matrix and `L0` built from
//! `GR(p^2, 2 alpha + 1)`, the `A`/`B` conditions for
//! `(Z/p) x (Z/p^2)^{2 alpha + 1}`, the `alpha = 1` refinements, power
//! coefficients of a GSHDS and the exponent-bound report.

mod ab;
mod alpha1;
mod bounds;
mod lambda;
mod power;

pub use ab::{ab_conditions_check, ab_feasibility_search, ABWitness, AbInput, AbReport, FeasibilityReport, SearchBox};
pub use alpha1::{alpha1_checks, Alpha1Report};
pub use bounds::{exponent_bound_report, BoundDerivation, BoundReport, RuleOutcome};
pub use lambda::{build_L0, l0_artifact, lambda_matrix, lambda_matrix_for, L0Artifact, LZeroElement, LambdaMatrix};
pub use power::{power_closed_form, power_coeffs, PowerCoefficients, PowerReport, Valuation};
