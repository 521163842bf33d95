//! Surface builders: analytic fixtures, the quintic C² gluing and the
//! handle dumbbell.

mod axial;
pub mod dumbbell;
pub mod fixtures;
pub mod junction;
pub mod quintic;

pub use dumbbell::{auto_epsilon, build_dumbbell, Dumbbell, DumbbellReport, DumbbellSpec, JumpReport};
pub use fixtures::{build_bean, build_peanut, build_sphere, build_torus, BeanSpec, PeanutSpec};
pub use junction::{revolved_graph_h, tube_min_h, ArcGluing, BellJunction};
pub use quintic::{quintic_c2_coefficients, QuinticCoeffs};
