pub mod arrangement;
pub mod chromatic;
pub mod cli;
pub mod cohomology;
pub mod exactlin;
pub mod graph;
pub mod matroid;
pub mod poly;
pub mod quasirep;
pub mod subset;
pub mod verify;
