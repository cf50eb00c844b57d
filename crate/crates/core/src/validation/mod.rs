//! Independent numerical checks of the analytic models and samplers.

mod chi2;
mod export;
mod furnace;
mod quadrature;
mod rng;
mod stats;

pub use chi2::{chi2_sampler_test, chi2_test, Bins, Chi2Report, MIN_EXPECTED};
pub use export::{
    albedo_curve, linspace, stats_curve, write_albedo_csv, write_stats_csv, AlbedoRow, StatsRow, ALBEDO_HEADER,
    STATS_HEADER,
};
pub use furnace::furnace_test;
pub use quadrature::{
    albedo_numeric, average_albedo_numeric, gauss_legendre, hemisphere_nodes, integrate_pdf, AzimuthRule,
    QuadratureSpec,
};
pub use rng::SampleStream;
pub use stats::{sharded, weight_stats, Accumulator, WeightStats, MIN_WEIGHT_SAMPLES, SHARDS};
