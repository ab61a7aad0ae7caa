pub mod fock;
pub mod partitions;
pub mod quantumdim;
pub mod scalars;
pub mod symfun;
pub mod tau;
pub mod verify;
