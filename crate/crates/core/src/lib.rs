//! Chaotic trigonometric Haar wavelet transform and the image cipher built on it.
//!
//! - [`chaos`]: coupled tan^2/cot^2 maps and the slope stream.
//! - [`wavelet`]: sloped Haar functions, transform matrices, 2-D and multilevel transforms.
//! - [`cipher`]: spiral swapping, the encryption pipeline and its keystream variant.
//! - [`metrics`]: histogram, entropy, adjacent-pixel correlation, NPCR/UACI, key space.
//! - [`io`]: binary PGM and the key-file format.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the cipher and the
//! aliases below fix `f64`.

pub mod chaos;
pub mod cipher;
pub mod error;
pub mod image;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod scalar;
pub mod wavelet;

pub use error::{ChaosError, CipherError, IoError, MetricsError, WaveletError};
pub use image::GrayImage;
pub use scalar::Real;

pub type Matrix64 = matrix::Matrix<f64>;
pub type Matrix32 = matrix::Matrix<f32>;
pub type ChaosParams64 = chaos::ChaosParams<f64>;
pub type ChaosParams32 = chaos::ChaosParams<f32>;
pub type LambdaStream64 = chaos::LambdaStream<f64>;
pub type LambdaStream32 = chaos::LambdaStream<f32>;
pub type HaarMatrix64 = wavelet::HaarMatrix<f64>;
pub type HaarMatrix32 = wavelet::HaarMatrix<f32>;
pub type SubBands64 = wavelet::SubBands<f64>;
pub type Decomposition64 = wavelet::Decomposition<f64>;
