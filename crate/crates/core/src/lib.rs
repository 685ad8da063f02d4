pub mod cells;
pub mod fock;
pub mod genfun;
pub mod lattice;
pub mod poly;
pub mod series;
pub mod weights;
