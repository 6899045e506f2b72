pub mod circular_cover;
pub mod cli;
pub mod geom;
pub mod instance;
pub mod preprocess;
pub mod reduction;
pub mod solver;
