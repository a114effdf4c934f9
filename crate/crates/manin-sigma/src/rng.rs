//! Seeded pseudo-random sampling for reproducible scans.
//!
//! The generator is SplitMix64: state advances by the golden-ratio constant
//! 0x9E3779B97F4A7C15 and the output is the finalizer
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!  z *= 0x94D049BB133111EB; z ^= z >> 31`.
//! It is pinned here, rather than taken from a crate, so that identical
//! seeds reproduce identical scan reports across builds and platforms.

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform point in the closed Euclidean ball of the given radius,
    /// by rejection from the enclosing cube.
    pub fn next_in_ball(&mut self, dim: usize, radius: f64) -> Vec<f64> {
        loop {
            let p: Vec<f64> = (0..dim).map(|_| self.next_range(-radius, radius)).collect();
            if p.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_outputs_for_seed_zero() {
        // First three outputs of the published SplitMix64 finalizer at
        // seed 0; pins the generator against accidental edits.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(rng.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn same_seed_same_points() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_in_ball(3, 0.4), b.next_in_ball(3, 0.4));
        }
    }

    #[test]
    fn ball_points_stay_inside() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..500 {
            let p = rng.next_in_ball(3, 0.4);
            let r2: f64 = p.iter().map(|x| x * x).sum();
            assert!(r2 <= 0.4 * 0.4 + 1e-15);
        }
    }

    #[test]
    fn unit_interval_range() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..1000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }
}
