//! 8-bit raster images, the resolution transform and a binary PNM codec.
//!
//! Every rounding step in this module rounds half away from zero.

mod ops;
mod pnm;
mod resample;

use thiserror::Error;

pub use ops::{add_gaussian_noise, hflip, DEFAULT_NOISE_SIGMA};
pub use pnm::{read_pnm, write_pnm};
pub use resample::{downsample_box, standardize, upscale_bicubic, upscale_nearest, MODEL_INPUT_SIDE};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImagingError {
    #[error("image dimensions must be positive, got {width}x{height}")]
    InvalidDimensions { width: u32, height: u32 },
    #[error("channels must be 1 or 3, got {0}")]
    InvalidChannels(u8),
    #[error("expected {expected} samples, got {actual}")]
    SampleCountMismatch { expected: usize, actual: usize },
    #[error("resolution must be at least 1, got {0}")]
    InvalidResolution(u32),
    #[error("upscale factor must be at least 2, got {0}")]
    InvalidFactor(u32),
    #[error("target {target_w}x{target_h} is smaller than source {width}x{height}")]
    ShrinkNotAllowed {
        width: u32,
        height: u32,
        target_w: u32,
        target_h: u32,
    },
    #[error("noise sigma must be finite and non-negative, got {0}")]
    InvalidSigma(String),
    #[error("malformed PNM header: {0}")]
    MalformedHeader(String),
    #[error("PNM pixel data truncated: expected {expected} bytes, found {actual}")]
    TruncatedPixelData { expected: usize, actual: usize },
    #[error("unsupported PNM maxval {0} (only 255)")]
    UnsupportedMaxval(u32),
}

/// Row-major interleaved 8-bit samples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RasterImage {
    width: u32,
    height: u32,
    channels: u8,
    pixels: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, channels: u8, pixels: Vec<u8>) -> Result<Self, ImagingError> {
        if width == 0 || height == 0 {
            return Err(ImagingError::InvalidDimensions { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(ImagingError::InvalidChannels(channels));
        }
        let expected = width as usize * height as usize * channels as usize;
        if pixels.len() != expected {
            return Err(ImagingError::SampleCountMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            pixels,
        })
    }

    pub fn filled(width: u32, height: u32, channels: u8, value: u8) -> Result<Self, ImagingError> {
        let n = width as usize * height as usize * channels as usize;
        Self::new(width, height, channels, vec![value; n])
    }

    /// Builds an image by evaluating `f(x, y, channel)` for every sample.
    pub fn from_fn(
        width: u32,
        height: u32,
        channels: u8,
        mut f: impl FnMut(u32, u32, u8) -> u8,
    ) -> Result<Self, ImagingError> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize * channels as usize);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    pixels.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: u32, y: u32, c: u8) -> u8 {
        self.pixels[self.index(x, y, c)]
    }

    fn index(&self, x: u32, y: u32, c: u8) -> usize {
        (y as usize * self.width as usize + x as usize) * self.channels as usize + c as usize
    }

    /// Mean sample value of channel `c`.
    pub fn channel_mean(&self, c: u8) -> f64 {
        let sum: u64 = self
            .pixels
            .iter()
            .skip(c as usize)
            .step_by(self.channels as usize)
            .map(|&v| u64::from(v))
            .sum();
        sum as f64 / (self.width as f64 * self.height as f64)
    }
}

/// Rounds half away from zero and clamps to the 8-bit range.
pub(crate) fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}
