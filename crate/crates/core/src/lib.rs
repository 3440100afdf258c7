pub mod cli;
pub mod contfrac;
pub mod error;
pub mod exactnum;
pub mod packing;
pub mod par;
pub mod render;
pub mod replacement;
pub mod symmetry;
