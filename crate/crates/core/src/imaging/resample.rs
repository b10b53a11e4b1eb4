use super::{to_u8, ImagingError, RasterImage};

/// Side length recognizers expect their input scaled to.
pub const MODEL_INPUT_SIDE: u32 = 512;

/// Integer coverage weights of source cells for each of `dst` output cells
/// when `src` cells are mapped onto them. Weights are in units of
/// `1 / dst` source cells, so each output's weights sum to `src`.
fn coverage(src: u32, dst: u32) -> Vec<Vec<(usize, u64)>> {
    let (src, dst) = (u64::from(src), u64::from(dst));
    (0..dst)
        .map(|o| {
            let (lo, hi) = (o * src, (o + 1) * src);
            (lo / dst..hi.div_ceil(dst))
                .filter_map(|s| {
                    let w = hi.min((s + 1) * dst).saturating_sub(lo.max(s * dst));
                    (w > 0).then_some((s as usize, w))
                })
                .collect()
        })
        .collect()
}

/// Area-averages `img` to an `r`×`r` image.
///
/// Each output pixel is the exact coverage-weighted mean of the source
/// region it spans, computed in integers and rounded half away from zero.
/// Non-square sources are averaged straight to a square.
pub fn downsample_box(img: &RasterImage, r: u32) -> Result<RasterImage, ImagingError> {
    if r < 1 {
        return Err(ImagingError::InvalidResolution(r));
    }
    let (w, h, ch) = (img.width(), img.height(), img.channels() as usize);
    let cols = coverage(w, r);
    let rows = coverage(h, r);
    let src = img.pixels();
    // horizontal pass: h rows x r columns of weighted sums
    let mut tmp = vec![0u64; h as usize * r as usize * ch];
    for y in 0..h as usize {
        for (ox, taps) in cols.iter().enumerate() {
            for c in 0..ch {
                let sum: u64 = taps
                    .iter()
                    .map(|&(sx, wt)| wt * u64::from(src[(y * w as usize + sx) * ch + c]))
                    .sum();
                tmp[(y * r as usize + ox) * ch + c] = sum;
            }
        }
    }
    let area = u64::from(w) * u64::from(h);
    let mut out = Vec::with_capacity(r as usize * r as usize * ch);
    for taps in &rows {
        for ox in 0..r as usize {
            for c in 0..ch {
                let sum: u64 = taps
                    .iter()
                    .map(|&(sy, wt)| wt * tmp[(sy * r as usize + ox) * ch + c])
                    .sum();
                out.push(((2 * sum + area) / (2 * area)) as u8);
            }
        }
    }
    RasterImage::new(r, r, img.channels(), out)
}

/// Copies the source pixel at `floor(i * src / target)` for every target
/// coordinate.
pub fn upscale_nearest(img: &RasterImage, target_w: u32, target_h: u32) -> Result<RasterImage, ImagingError> {
    let (w, h) = (img.width(), img.height());
    if target_w < w || target_h < h {
        return Err(ImagingError::ShrinkNotAllowed {
            width: w,
            height: h,
            target_w,
            target_h,
        });
    }
    let map = |i: u32, src: u32, dst: u32| (u64::from(i) * u64::from(src) / u64::from(dst)) as u32;
    RasterImage::from_fn(target_w, target_h, img.channels(), |x, y, c| {
        img.get(map(x, w, target_w), map(y, h, target_h), c)
    })
}

/// Nearest-neighbour upscale to the recognizer input size.
pub fn standardize(img: &RasterImage) -> Result<RasterImage, ImagingError> {
    upscale_nearest(img, MODEL_INPUT_SIDE, MODEL_INPUT_SIDE)
}

const CUBIC_A: f64 = -0.5;

fn cubic(t: f64) -> f64 {
    let t = t.abs();
    if t <= 1.0 {
        ((CUBIC_A + 2.0) * t - (CUBIC_A + 3.0)) * t * t + 1.0
    } else if t < 2.0 {
        ((CUBIC_A * t - 5.0 * CUBIC_A) * t + 8.0 * CUBIC_A) * t - 4.0 * CUBIC_A
    } else {
        0.0
    }
}

/// Four (clamped source index, weight) taps per output coordinate.
fn cubic_taps(src: u32, factor: u32) -> Vec<[(usize, f64); 4]> {
    let last = i64::from(src) - 1;
    (0..src * factor)
        .map(|o| {
            let x = (f64::from(o) + 0.5) / f64::from(factor) - 0.5;
            let base = x.floor();
            let frac = x - base;
            let mut taps = [(0usize, 0.0); 4];
            for (k, tap) in taps.iter_mut().enumerate() {
                let offset = k as i64 - 1;
                let idx = (base as i64 + offset).clamp(0, last) as usize;
                *tap = (idx, cubic(frac - offset as f64));
            }
            taps
        })
        .collect()
}

/// Separable cubic-convolution upscale by an integer factor with
/// center-aligned sampling and edge clamping.
pub fn upscale_bicubic(img: &RasterImage, factor: u32) -> Result<RasterImage, ImagingError> {
    if factor < 2 {
        return Err(ImagingError::InvalidFactor(factor));
    }
    let (w, h, ch) = (img.width(), img.height(), img.channels() as usize);
    let (ow, oh) = (w * factor, h * factor);
    let xt = cubic_taps(w, factor);
    let yt = cubic_taps(h, factor);
    let src = img.pixels();
    let mut tmp = vec![0f64; h as usize * ow as usize * ch];
    for y in 0..h as usize {
        for (ox, taps) in xt.iter().enumerate() {
            for c in 0..ch {
                tmp[(y * ow as usize + ox) * ch + c] = taps
                    .iter()
                    .map(|&(sx, wt)| wt * f64::from(src[(y * w as usize + sx) * ch + c]))
                    .sum();
            }
        }
    }
    let mut out = Vec::with_capacity(ow as usize * oh as usize * ch);
    for taps in &yt {
        for ox in 0..ow as usize {
            for c in 0..ch {
                let v: f64 = taps
                    .iter()
                    .map(|&(sy, wt)| wt * tmp[(sy * ow as usize + ox) * ch + c])
                    .sum();
                out.push(to_u8(v));
            }
        }
    }
    RasterImage::new(ow, oh, img.channels(), out)
}
