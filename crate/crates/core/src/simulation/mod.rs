pub mod oracle;
pub mod reference;
pub mod study;

pub use oracle::{true_map_oracle, z_kappa_sup_oracle};
pub use reference::{GammaParameter, ReferenceDistribution};
pub use study::{run_pointwise_study, run_study, run_uniform_study, CoverageReport, PointwiseCell, SimulationDesign, UniformCell};
