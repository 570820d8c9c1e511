//! Tait colorings of trivalent webs, planar web reduction, dotted pre-foams
//! evaluated over GF(2), and the cube-complex algebra around them.

pub mod corpus;
pub mod foam;
pub mod homalg;
pub mod index;
pub mod jflat;
pub mod planar;
pub mod suites;
pub mod web;
