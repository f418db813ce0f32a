mod common;

use chaotic_haar::metrics::{
    self, correlation_adjacent, entropy_normalized, histogram, key_space_bits, mean_intensity, npcr, uaci, Direction,
};
use chaotic_haar::{GrayImage, MetricsError};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn image(max_side: usize) -> impl Strategy<Value = GrayImage> {
    (1..=max_side, 1..=max_side)
        .prop_flat_map(|(w, h)| prop::collection::vec(any::<u8>(), w * h).prop_map(move |px| GrayImage::new(w, h, px)))
}

fn pair(side: usize) -> impl Strategy<Value = (GrayImage, GrayImage)> {
    let px = || prop::collection::vec(any::<u8>(), side * side);
    (px(), px()).prop_map(move |(a, b)| (GrayImage::new(side, side, a), GrayImage::new(side, side, b)))
}

proptest! {
    #[test]
    fn entropy_ignores_pixel_order(img in image(24), seed in any::<u64>()) {
        let mut px = img.pixels().to_vec();
        px.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = GrayImage::new(img.width(), img.height(), px);
        prop_assert_eq!(entropy_normalized(&img).unwrap(), entropy_normalized(&shuffled).unwrap());
    }

    #[test]
    fn differential_metrics_are_symmetric((a, b) in pair(12)) {
        prop_assert_eq!(npcr(&a, &b).unwrap(), npcr(&b, &a).unwrap());
        prop_assert_eq!(uaci(&a, &b).unwrap(), uaci(&b, &a).unwrap());
    }

    #[test]
    fn report_values_stay_in_range(img in image(24)) {
        let h = entropy_normalized(&img).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
        prop_assert_eq!(histogram(&img).iter().sum::<u64>(), img.len() as u64);
        for d in Direction::ALL {
            match correlation_adjacent(&img, d, 200, 1) {
                Ok(r) => prop_assert!((-1.0..=1.0).contains(&r)),
                Err(e) => prop_assert!(matches!(e, MetricsError::ZeroVariance | MetricsError::TooSmall)),
            }
        }
    }
}

#[test]
fn random_image_is_uncorrelated_on_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let img = common::random_image(256, &mut rng);
    for d in Direction::ALL {
        let mean: f64 = (0..30).map(|s| correlation_adjacent(&img, d, 2000, s).unwrap().abs()).sum::<f64>() / 30.0;
        assert!(mean < 0.05, "{} mean |r| = {mean}", d.name());
    }
}

#[test]
fn natural_fixture_is_strongly_correlated() {
    let img = common::natural_image(256, 1);
    let r = correlation_adjacent(&img, Direction::Horizontal, 2000, 1).unwrap();
    assert!((r - 0.9).abs() <= 0.05, "r = {r}");
}

#[test]
fn ramp_rows_are_perfectly_correlated_vertically() {
    let img = GrayImage::from_fn(32, 32, |_, c| (c * 8) as u8);
    let r = correlation_adjacent(&img, Direction::Vertical, 500, 3).unwrap();
    assert!((r - 1.0).abs() < 1e-12);
    assert_eq!(correlation_adjacent(&img, Direction::Horizontal, 500, 3).map(|r| r > 0.99), Ok(true));
    assert_eq!(correlation_adjacent(&GrayImage::filled(8, 8, 9), Direction::Diagonal, 50, 0), Err(MetricsError::ZeroVariance));
}

#[test]
fn worked_metric_values() {
    let two = GrayImage::from_fn(16, 16, |r, _| if r < 8 { 0 } else { 255 });
    assert_eq!(mean_intensity(&two).unwrap(), 127.5);
    assert!((entropy_normalized(&two).unwrap() - 0.125).abs() < 1e-15);
    let ramp = GrayImage::from_fn(256, 4, |_, c| c as u8);
    assert!((entropy_normalized(&ramp).unwrap() - 1.0).abs() < 1e-15);
    let a = GrayImage::filled(256, 256, 10);
    let mut b = a.clone();
    b.set(5, 5, 11);
    assert!((npcr(&a, &b).unwrap() - 100.0 / 65536.0).abs() < 1e-15);
    let (c, d) = (GrayImage::filled(4, 4, 100), GrayImage::filled(4, 4, 161));
    assert!((uaci(&c, &d).unwrap() - 6100.0 / 255.0).abs() < 1e-12);
    assert!((key_space_bits(0.5, 1).unwrap() - 1.0).abs() < 1e-15);
    assert!(key_space_bits(1.0, 24).is_err());
}

#[test]
fn analyze_is_deterministic_and_serialises() {
    let img = common::natural_image(64, 2);
    let a = metrics::analyze(&img, 2000, 9).unwrap();
    assert_eq!(a, metrics::analyze(&img, 2000, 9).unwrap());
    let text = a.to_key_value();
    assert!(text.contains("entropy_normalized = ") && text.contains("correlation_diagonal = "));
    let csv = a.histogram_csv();
    assert_eq!(csv.lines().count(), 257);
}
