pub mod bcmap;
pub mod cli;
pub mod freegroup;
pub mod grouprep;
pub mod intlin;
pub mod orbits;
pub mod telescope;
