#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod angle;
pub mod error;
pub mod families;
pub mod geom;
pub mod tiling;

pub use error::{Error, Result};
