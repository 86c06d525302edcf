//! Exact computation of Lê cycles, Lê numbers and Milnor fiber cohomology
//! constraints for hypersurfaces with a one-dimensional critical locus.

pub mod classify;
pub mod components;
pub mod corpus;
pub mod factor;
pub mod ideal;
pub mod le;
pub mod lemodule;
pub mod poly;
pub mod report;
pub mod seeds;
