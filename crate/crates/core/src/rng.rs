//! Seeded 64-bit linear congruential generator.
//!
//! All randomized checks draw from this generator so that reports are
//! reproducible bit for bit from a seed.

/// Knuth's MMIX multiplier/increment. Low bits of an LCG are weak, so
/// values are taken from the upper half of the state.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg {
            state: seed ^ 0x9e3779b97f4a7c15,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform-ish draw in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        (self.next_u64() >> 16) % n
    }

    /// Inclusive range draw.
    pub fn int_between(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = Lcg::new(43);
        assert_ne!(Lcg::new(42).next_u64(), c.next_u64());
    }

    #[test]
    fn ranges_respected() {
        let mut rng = Lcg::new(7);
        for _ in 0..200 {
            let v = rng.int_between(-10, 10);
            assert!((-10..=10).contains(&v));
        }
    }
}
