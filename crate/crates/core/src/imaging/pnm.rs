//! Binary PGM (P5) and PPM (P6) with maxval 255.

use super::{ImagingError, RasterImage};

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    /// Skips whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, ImagingError> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImagingError::MalformedHeader(format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse()
            .map_err(|_| ImagingError::MalformedHeader(format!("{what} `{text}` out of range")))
    }
}

pub fn read_pnm(bytes: &[u8]) -> Result<RasterImage, ImagingError> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1u8,
        Some(b"P6") => 3u8,
        _ => return Err(ImagingError::MalformedHeader("magic must be P5 or P6".into())),
    };
    let mut h = Header { bytes, pos: 2 };
    if !h.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(ImagingError::MalformedHeader("missing separator after magic".into()));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(ImagingError::MalformedHeader(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(ImagingError::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte ends the header
    match bytes.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => h.pos += 1,
        _ => return Err(ImagingError::MalformedHeader("missing whitespace after maxval".into())),
    }
    let expected = width as usize * height as usize * channels as usize;
    let data = &bytes[h.pos..];
    if data.len() < expected {
        return Err(ImagingError::TruncatedPixelData {
            expected,
            actual: data.len(),
        });
    }
    RasterImage::new(width, height, channels, data[..expected].to_vec())
}

pub fn write_pnm(img: &RasterImage) -> Vec<u8> {
    let magic = if img.channels() == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}
