//! Cantor pairing between tile indices `j ∈ ℕ₀` and pairs
//! `(k, n) ∈ ℕ×ℕ` of box size and channel number.
//!
//! The convention `decode(0) = (1, 1)` is frozen by golden tests; the
//! decode order walks the diagonals `(1,1), (2,1), (1,2), (3,1), ...`.

use num_integer::Roots;

/// Decode a tile index into `(k, n)`, both components at least 1.
pub fn decode(j: u64) -> (u64, u64) {
    let wide = 8u128 * j as u128 + 1;
    let w = ((wide.sqrt() - 1) / 2) as u64;
    let base = w * (w + 1) / 2;
    let n = j - base;
    let k = w - n;
    (k + 1, n + 1)
}

/// Inverse of [`decode`]. Panics if either component is zero.
pub fn encode(k: u64, n: u64) -> u64 {
    assert!(k >= 1 && n >= 1, "pairing components start at 1");
    let x = k - 1;
    let y = n - 1;
    let w = x + y;
    w * (w + 1) / 2 + y
}

/// Smallest box size `k` whose channel-`n` tile starts strictly after
/// `bound`, together with that tile index. Exists for every bound because
/// `encode(k, n)` is strictly increasing in `k`.
pub fn first_channel_tile_beyond(n: u64, bound: u64) -> (u64, u64) {
    let mut lo = 1u64;
    let mut hi = 2u64;
    while encode(hi, n) <= bound {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if encode(mid, n) <= bound {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    (lo, encode(lo, n))
}
