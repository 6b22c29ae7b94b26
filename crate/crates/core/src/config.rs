//! Centralized defaults.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

pub const DEFAULT_PRECISION: u64 = 128;
pub const DEFAULT_DEGREE_BOUND: usize = 64;
pub const DEFAULT_RU_BOUND: u64 = 64;
pub const DEFAULT_MULT_BOUND: u32 = 20;
pub const DEFAULT_SERIES_ORDER: i64 = 8;

static START_PRECISION: AtomicU64 = AtomicU64::new(DEFAULT_PRECISION);
static DEGREE_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_BOUND);

/// Starting precision (bits) for ball computations.
pub fn start_precision() -> u64 {
    START_PRECISION.load(Ordering::Relaxed)
}

pub fn set_start_precision(bits: u64) {
    START_PRECISION.store(bits.max(16), Ordering::Relaxed);
}

/// Largest allowed degree of a merged field context.
pub fn degree_bound() -> usize {
    DEGREE_BOUND.load(Ordering::Relaxed)
}

pub fn set_degree_bound(d: usize) {
    DEGREE_BOUND.store(d.max(2), Ordering::Relaxed);
}
