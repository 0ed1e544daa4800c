//! Digit-expansion support types shared by the curve state machines.

/// Classification of the parameter remainder after a fixed number of
/// digit groups has been extracted.
///
/// Writing `t = sum(w_l * B^-l, l = 1..depth) + r * B^-depth` with
/// `r in [0, 1]`:
///
/// * `Zero` — `r = 0`: `t` lies exactly on the depth grid;
/// * `Interior` — `0 < r < 1`: `t` lies strictly inside a depth cell;
/// * `Full` — `r = 1`: the non-terminating expansion (only reachable for
///   `t = 1` or when forming left limits at grid parameters).
///
/// The state machines map `Zero`/`Interior` to the entry corner of the
/// innermost cell and `Full` to its exit corner, which makes evaluation
/// exact for grid parameters on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Interior,
    Full,
}

/// An explicit digit-group expansion plus tail classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    pub digits: Vec<u8>,
    pub tail: Tail,
}
