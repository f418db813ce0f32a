#![allow(dead_code)]

use chaotic_haar::chaos::ChaosParams;
use chaotic_haar::cipher::KeySchedule;
use chaotic_haar::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic photograph-like test card: smooth shading, a few soft
/// objects, edges and mild sensor noise.
pub fn natural_image(n: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blobs: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9), rng.gen_range(0.05..0.2), rng.gen_range(-70.0..70.0)))
        .collect();
    let s = n as f64;
    GrayImage::from_fn(n, n, |r, c| {
        let (y, x) = (r as f64 / s, c as f64 / s);
        let mut v = 90.0 + 50.0 * x + 25.0 * (6.0 * y).sin() * (4.0 * x).cos();
        for &(bx, by, w, a) in &blobs {
            let d2 = (x - bx).powi(2) + (y - by).powi(2);
            v += a * (-d2 / (2.0 * w * w)).exp();
        }
        if (x - 0.3).abs() < 0.12 && (y - 0.65).abs() < 0.08 {
            v += 40.0;
        }
        v += rng.gen_range(-11.0..11.0);
        v.round().clamp(0.0, 255.0) as u8
    })
}

pub fn random_image(n: usize, rng: &mut ChaCha8Rng) -> GrayImage {
    GrayImage::from_fn(n, n, |_, _| rng.gen())
}

/// Random parameters kept out of the escaping regime: for large `x` both maps
/// grow like `x / (N a)^2`, so `N a >= 1.25` keeps the orbit bounded.
pub fn random_params(rng: &mut ChaCha8Rng) -> ChaosParams<f64> {
    let n1 = rng.gen_range(2..=6);
    let n2 = rng.gen_range(2..=6);
    let a = |rng: &mut ChaCha8Rng, n: u32| rng.gen_range((1.25 / n as f64).max(0.3)..2.6);
    let (a1, a2) = (a(rng, n1), a(rng, n2));
    ChaosParams::new(rng.gen_range(0.05..0.95), n1, n2, a1, a2, rng.gen_range(0.05..0.95)).unwrap()
}

pub fn random_key(rng: &mut ChaCha8Rng) -> KeySchedule {
    KeySchedule::new([random_params(rng), random_params(rng), random_params(rng), random_params(rng)]).unwrap()
}

/// Stage 1 is the worked example from the reference parameter list; the
/// other stages use neighbouring values.
pub fn reference_key() -> KeySchedule {
    KeySchedule::new([
        ChaosParams::new(0.2, 3, 4, 2.0, 2.5, 0.4).unwrap(),
        ChaosParams::new(0.37, 5, 3, 1.5, 2.2, 0.25).unwrap(),
        ChaosParams::new(0.61, 4, 5, 2.4, 1.8, 0.55).unwrap(),
        ChaosParams::new(0.83, 3, 6, 1.7, 2.6, 0.7).unwrap(),
    ])
    .unwrap()
}
