//! Seeded pseudo-random numbers for reproducible fixture generation.
//!
//! All randomness in the crate flows through [`Lcg64`], a 64-bit linear
//! congruential generator with Knuth's MMIX constants:
//!
//! ```text
//! state' = state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! The output of `next_u64` is the updated state. `below(n)` draws by
//! rejection sampling (discarding draws above the largest multiple of `n`),
//! so the choice is uniform and bit-reproducible across implementations.

const MUL: u64 = 6364136223846793005;
const INC: u64 = 1442695040888963407;

/// Deterministic 64-bit linear congruential generator.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        self.state
    }

    /// Uniform draw in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is undefined");
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < limit {
                return v % n;
            }
        }
    }

    /// Uniform index into a nonempty slice length.
    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_is_reproducible() {
        let mut a = Lcg64::new(42);
        let mut b = Lcg64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn first_values_from_seed_zero() {
        // Frozen so any re-implementation of the generator is caught.
        let mut r = Lcg64::new(0);
        assert_eq!(r.next_u64(), 1442695040888963407);
        assert_eq!(r.next_u64(), 1876011003808476466);
    }

    #[test]
    fn below_stays_in_range_and_varies() {
        let mut r = Lcg64::new(7);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..200 {
            let v = r.below(13);
            assert!(v < 13);
            seen.insert(v);
        }
        assert!(seen.len() > 8);
    }
}
