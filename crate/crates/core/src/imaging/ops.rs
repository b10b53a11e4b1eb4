use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{to_u8, ImagingError, RasterImage};

/// Augmentation noise level in 8-bit sample units.
pub const DEFAULT_NOISE_SIGMA: f64 = 10.0;

/// Mirrors columns.
pub fn hflip(img: &RasterImage) -> RasterImage {
    let w = img.width();
    RasterImage::from_fn(w, img.height(), img.channels(), |x, y, c| img.get(w - 1 - x, y, c))
        .expect("same shape as a valid image")
}

/// Adds independent zero-mean Gaussian noise to every sample, drawn from a
/// ChaCha8 stream seeded with `seed`, then rounds and clamps.
pub fn add_gaussian_noise(img: &RasterImage, sigma: f64, seed: u64) -> Result<RasterImage, ImagingError> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(ImagingError::InvalidSigma(sigma.to_string()));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| ImagingError::InvalidSigma(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = img
        .pixels()
        .iter()
        .map(|&v| to_u8(f64::from(v) + normal.sample(&mut rng)))
        .collect();
    RasterImage::new(img.width(), img.height(), img.channels(), pixels)
}
