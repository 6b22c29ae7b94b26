//! Exact workbench for equalizers of Möbius maps, Puiseux valuations,
//! ping-pong certificates and heights.

pub mod algebra;
pub mod config;
pub mod freeness;
pub mod heights;
pub mod numeric;
pub mod parse;
pub mod puiseux;
pub mod solver;
