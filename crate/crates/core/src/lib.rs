pub mod bilinfrac;
pub mod cli;
pub mod codec;
pub mod linalg;
pub mod polyring;
pub mod projgeom;
pub mod rng;
pub mod scalar;
pub mod selftest;
pub mod surface;
pub mod topview;
