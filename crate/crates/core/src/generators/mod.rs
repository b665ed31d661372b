//! Test-set construction: polar lattice neighborhoods, angle-separated
//! pieces, Cantor-type grid measures and samplable measures.

pub mod angle;
pub mod cantor;
pub mod lattice;
pub mod measures;

pub use angle::{angle_partition, angular_gap, choose_sectors, select_sectors, SectorChoice};
pub use cantor::{cantor_measure_grid, GridMeasure};
pub use lattice::{
    lattice_points, neighborhood_sample, neighborhood_sample_with_radius, polar_image, psi,
    sample_cell_point, LatticeSpec, SymbolicPoint,
};
pub use measures::{GridSampler, PlanarMeasure, ThickSegment, UniformAnnulus, WeightedCloud};
