//! Statistical audit battery for plain and encrypted images.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::MetricsError;
use crate::image::GrayImage;

/// Default number of sampled adjacent pairs.
pub const DEFAULT_PAIRS: usize = 2000;

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &p in img.pixels() {
        h[p as usize] += 1;
    }
    h
}

pub fn mean_intensity(img: &GrayImage) -> Result<f64, MetricsError> {
    if img.is_empty() {
        return Err(MetricsError::Empty);
    }
    let sum: u64 = img.pixels().iter().map(|&p| p as u64).sum();
    Ok(sum as f64 / img.len() as f64)
}

/// Shannon entropy of a histogram divided by `log2(levels)`. Empty bins add nothing.
pub fn entropy_from_histogram(hist: &[u64], levels: usize) -> Result<f64, MetricsError> {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return Err(MetricsError::Empty);
    }
    assert!(levels >= 2, "need at least two grey levels");
    let n = total as f64;
    let h: f64 = hist
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * (n / c as f64).log2()
        })
        .sum();
    Ok(h / (levels as f64).log2())
}

/// Normalised entropy over 256 grey levels.
pub fn entropy_normalized(img: &GrayImage) -> Result<f64, MetricsError> {
    entropy_from_histogram(&histogram(img), 256)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Horizontal, Direction::Vertical, Direction::Diagonal];

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }
}

/// Pearson correlation with population (1/N) moments.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, MetricsError> {
    assert_eq!(x.len(), y.len());
    if x.is_empty() {
        return Err(MetricsError::Empty);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    let (dx, dy, cov) = (sxx / n, syy / n, sxy / n);
    if dx == 0.0 || dy == 0.0 {
        return Err(MetricsError::ZeroVariance);
    }
    Ok((cov / (dx.sqrt() * dy.sqrt())).clamp(-1.0, 1.0))
}

/// Samples `n_pairs` anchors uniformly with replacement and correlates each
/// pixel with its neighbour in `direction`.
pub fn correlation_adjacent(img: &GrayImage, direction: Direction, n_pairs: usize, seed: u64) -> Result<f64, MetricsError> {
    let (dr, dc) = direction.offset();
    if img.height() <= dr || img.width() <= dc || n_pairs == 0 {
        return Err(MetricsError::TooSmall);
    }
    let rows = u32::try_from(img.height() - dr).map_err(|_| MetricsError::TooSmall)?;
    let cols = u32::try_from(img.width() - dc).map_err(|_| MetricsError::TooSmall)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(n_pairs);
    let mut y = Vec::with_capacity(n_pairs);
    for _ in 0..n_pairs {
        let r = rng.gen_range(0..rows) as usize;
        let c = rng.gen_range(0..cols) as usize;
        x.push(img.get(r, c) as f64);
        y.push(img.get(r + dr, c + dc) as f64);
    }
    pearson(&x, &y)
}

fn same_size(a: &GrayImage, b: &GrayImage) -> Result<(), MetricsError> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(MetricsError::SizeMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    if a.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(())
}

/// Percentage of positions where the two images differ.
pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64, MetricsError> {
    same_size(c1, c2)?;
    let diff = c1.pixels().iter().zip(c2.pixels()).filter(|(a, b)| a != b).count();
    Ok(diff as f64 / c1.len() as f64 * 100.0)
}

/// Mean absolute difference scaled by 255, in percent.
pub fn uaci(c1: &GrayImage, c2: &GrayImage) -> Result<f64, MetricsError> {
    same_size(c1, c2)?;
    let sum: u64 = c1.pixels().iter().zip(c2.pixels()).map(|(&a, &b)| a.abs_diff(b) as u64).sum();
    Ok(sum as f64 / 255.0 / c1.len() as f64 * 100.0)
}

/// `n_param_instances * log2(1 / precision)` bits.
pub fn key_space_bits(precision: f64, n_param_instances: usize) -> Result<f64, MetricsError> {
    if !(precision > 0.0 && precision < 1.0) {
        return Err(MetricsError::Precision(precision));
    }
    Ok(n_param_instances as f64 * -precision.log2())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub width: usize,
    pub height: usize,
    pub histogram: [u64; 256],
    pub mean_intensity: f64,
    pub entropy_normalized: f64,
    /// Horizontal, vertical, diagonal; `None` when a marginal is constant.
    pub correlations: [Option<f64>; 3],
    pub npcr_percent: Option<f64>,
    pub uaci_percent: Option<f64>,
    pub key_space_bits: Option<f64>,
}

/// Single-image statistics; the pairwise and key-space fields stay empty.
pub fn analyze(img: &GrayImage, n_pairs: usize, seed: u64) -> Result<MetricsReport, MetricsError> {
    let mut correlations = [None; 3];
    for (slot, dir) in correlations.iter_mut().zip(Direction::ALL) {
        *slot = match correlation_adjacent(img, dir, n_pairs, seed) {
            Ok(r) => Some(r),
            Err(MetricsError::ZeroVariance) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(MetricsReport {
        width: img.width(),
        height: img.height(),
        histogram: histogram(img),
        mean_intensity: mean_intensity(img)?,
        entropy_normalized: entropy_normalized(img)?,
        correlations,
        npcr_percent: None,
        uaci_percent: None,
        key_space_bits: None,
    })
}

impl MetricsReport {
    /// `key = value` lines; absent fields are omitted, undefined correlations print `undefined`.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "width = {}", self.width);
        let _ = writeln!(s, "height = {}", self.height);
        let _ = writeln!(s, "mean_intensity = {:.6}", self.mean_intensity);
        let _ = writeln!(s, "entropy_normalized = {:.6}", self.entropy_normalized);
        for (dir, r) in Direction::ALL.iter().zip(&self.correlations) {
            match r {
                Some(v) => {
                    let _ = writeln!(s, "correlation_{} = {:.6}", dir.name(), v);
                }
                None => {
                    let _ = writeln!(s, "correlation_{} = undefined", dir.name());
                }
            }
        }
        if let Some(v) = self.npcr_percent {
            let _ = writeln!(s, "npcr_percent = {v:.6}");
        }
        if let Some(v) = self.uaci_percent {
            let _ = writeln!(s, "uaci_percent = {v:.6}");
        }
        if let Some(v) = self.key_space_bits {
            let _ = writeln!(s, "key_space_bits = {v:.6}");
        }
        s
    }

    pub fn histogram_csv(&self) -> String {
        let mut s = String::from("level,count\n");
        for (i, c) in self.histogram.iter().enumerate() {
            let _ = writeln!(s, "{i},{c}");
        }
        s
    }
}
