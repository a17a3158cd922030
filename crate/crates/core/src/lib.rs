//! Exact equivariant cohomology of torus actions presented by their graph of
//! lowest-dimensional orbits and the face poset of the orbit space.

pub mod cm;
pub mod exact;
pub mod faces;
pub mod gkm;
pub mod io;
