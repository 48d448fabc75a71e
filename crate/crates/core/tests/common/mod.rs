#![allow(dead_code)]

pub mod oracle;

/// Honeycomb σ_n for n ≤ 25, from a separate brick-wall coordinate
/// enumeration that shares no code with the crate.
pub const HEX_SIGMA: [u64; 26] = [
    1, 3, 6, 12, 24, 48, 90, 174, 336, 648, 1218, 2328, 4416, 8388, 15780, 29892, 56268, 106200, 199350,
    375504, 704304, 1323996, 2479692, 4654464, 8710212, 16328220,
];
