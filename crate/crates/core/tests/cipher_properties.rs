mod common;

use chaotic_haar::chaos::ChaosParams;
use chaotic_haar::cipher::{self, quantize, xor_combine, CipherMode, KeySchedule};
use chaotic_haar::metrics::{entropy_normalized, npcr};
use chaotic_haar::{CipherError, GrayImage, Matrix64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stage 1 sits in a strongly mixing region of the map.
fn mixing_key() -> KeySchedule {
    let mut ks = common::reference_key();
    ks.stages[0] = ChaosParams::new(0.2, 3, 4, 0.3, 0.4, 0.4).unwrap();
    ks
}

#[test]
fn keystream_image_is_flat() {
    let k = cipher::keystream_image(&mixing_key(), 256).unwrap();
    let h = entropy_normalized(&k).unwrap();
    assert!(h > 0.99, "entropy {h}");
}

#[test]
fn keystream_images_from_close_seeds_differ() {
    let ks = mixing_key();
    let mut other = ks.clone();
    other.stages[0].x0 += 1e-10;
    let a = cipher::keystream_image(&ks, 256).unwrap();
    let b = cipher::keystream_image(&other, 256).unwrap();
    let v = npcr(&a, &b).unwrap();
    assert!(v > 98.0, "NPCR {v}");
}

fn wrong_key_npcr(stage: usize) -> f64 {
    let plain = common::natural_image(256, 3);
    let ks = mixing_key();
    let e = cipher::encrypt(&plain, &ks).unwrap();
    let mut wrong = ks.clone();
    wrong.stages[stage].x0 += 1e-10;
    npcr(&cipher::decrypt(&e, &wrong).unwrap(), &plain).unwrap()
}

fn assert_wrong_key_noise(stage: usize) {
    let v = wrong_key_npcr(stage);
    assert!(v > 98.0, "stage {} perturbed: NPCR {v}", stage + 1);
}

#[test]
fn wrong_stage1_key_decrypts_to_noise() {
    assert_wrong_key_noise(0);
}

#[test]
fn wrong_stage2_key_decrypts_to_noise() {
    assert_wrong_key_noise(1);
}

#[test]
fn wrong_stage3_key_decrypts_to_noise() {
    assert_wrong_key_noise(2);
}

#[test]
fn wrong_stage4_key_decrypts_to_noise() {
    assert_wrong_key_noise(3);
}

/// Stage 2 only feeds the level-2 forward transform. After the level-1 swap
/// every altered level-1 LL value sits in a detail band (a third in each),
/// and each output 2x2 block reads one cell per quadrant, so at most
/// `1 - (2/3)^3` of the pixels can change.
#[test]
fn wrong_stage2_key_change_is_bounded_by_swap_geometry() {
    let bound = 100.0 * (1.0 - (2.0f64 / 3.0).powi(3));
    let v = wrong_key_npcr(1);
    assert!(v <= bound + 0.5, "NPCR {v} above geometric bound {bound}");
}

#[test]
fn keystream_roundtrip_on_random_keys() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let ks = common::random_key(&mut rng);
        let img = common::random_image(64, &mut rng);
        let e = cipher::encrypt(&img, &ks).unwrap();
        assert_eq!(cipher::decrypt(&e, &ks).unwrap(), img);
    }
}

#[test]
fn literal_mode_verifies_but_refuses_decrypt() {
    let plain = common::natural_image(64, 4);
    let ks = common::reference_key().with_mode(CipherMode::Literal);
    let e = cipher::encrypt(&plain, &ks).unwrap();
    assert!(cipher::verify_roundtrip(&e, &plain, &ks).unwrap());
    let mut tampered = e.clone();
    tampered.set(3, 3, e.get(3, 3) ^ 0x40);
    assert!(!cipher::verify_roundtrip(&tampered, &plain, &ks).unwrap());
    assert_eq!(cipher::decrypt(&e, &ks), Err(CipherError::LiteralModeDecrypt));
}

#[test]
fn zero_image_has_zero_chaotic_image() {
    let f = cipher::chaotic_image(&Matrix64::zeros(32, 32), &common::reference_key()).unwrap();
    assert_eq!(f.max_abs(), 0.0);
}

#[test]
fn chaotic_image_is_deterministic() {
    let m = Matrix64::from_fn(32, 32, |r, c| ((r * 7 + c * 3) % 256) as f64);
    let ks = common::reference_key();
    let a = cipher::chaotic_image(&m, &ks).unwrap();
    let b = cipher::chaotic_image(&m, &ks).unwrap();
    assert!(a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn chaotic_image_flattens_the_level_two_layout() {
    // plain decomposition of a natural image piles energy in LL; the swapped,
    // re-synthesised image spreads it
    let plain = common::natural_image(64, 5);
    let f = cipher::chaotic_image(&Matrix64::from_fn(64, 64, |r, c| f64::from(plain.get(r, c))), &common::reference_key())
        .unwrap();
    let h = entropy_normalized(&quantize(&f).unwrap()).unwrap();
    assert!(h > entropy_normalized(&plain).unwrap(), "entropy {h}");
}

#[test]
fn quantize_and_xor_examples() {
    let f = Matrix64::from_rows(&[vec![0.4, 0.5, -0.5, 255.6], vec![7.0, 255.0, -1.0, 1000.0]]);
    let q = quantize(&f).unwrap();
    assert_eq!(q.pixels(), &[0, 1, 255, 0, 7, 255, 255, 232]);
    let a = GrayImage::new(1, 1, vec![0xAC]);
    let b = GrayImage::new(1, 1, vec![0x53]);
    assert_eq!(xor_combine(&a, &b).unwrap().pixels(), &[0xFF]);
    let nan = Matrix64::from_rows(&[vec![0.0, f64::NAN]]);
    assert!(matches!(quantize(&nan), Err(CipherError::NonFinite { row: 0, col: 1 })));
}

#[test]
fn sides_must_be_multiples_of_four() {
    let ks = common::reference_key();
    assert!(cipher::encrypt(&GrayImage::filled(6, 6, 1), &ks).is_err());
    assert!(cipher::encrypt(&GrayImage::filled(8, 4, 1), &ks).is_err());
}
