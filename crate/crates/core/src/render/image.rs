//! Linear RGB images and their 8-bit PPM encoding.
//!
//! PPM byte layout: the ASCII header `P6\n<width> <height>\n255\n` followed
//! by `width * height` RGB triples, row-major from the top-left pixel. Each
//! channel is clamped to `[0, 1]`, raised to `1/2.2` and rounded to 8 bits.
//! A 1x1 image is therefore an 11-byte header plus 3 pixel bytes.

use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use crate::atomic::write_atomic;
use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

pub const GAMMA: f64 = 2.2;

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<Spectrum>,
}

impl Image {
    pub fn new(width: usize, height: usize) -> Self {
        Image { width, height, pixels: vec![Spectrum::ZERO; width * height] }
    }

    /// Wraps a row-major buffer. Pixels must be finite and non-negative.
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Spectrum>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        if let Some(p) = pixels.iter().find(|p| !p.is_finite() || p.min_channel() < 0.0) {
            return Err(Error::InvalidParameter(format!("invalid pixel value {p:?}")));
        }
        Ok(Image { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Spectrum] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Spectrum {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: Spectrum) {
        assert!(v.is_finite() && v.min_channel() >= 0.0, "invalid pixel value {v:?}");
        self.pixels[y * self.width + x] = v;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageFormat {
    #[default]
    Ppm,
}

impl FromStr for ImageFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ppm" => Ok(ImageFormat::Ppm),
            _ => Err(Error::InvalidParameter(format!("unsupported image format '{s}'"))),
        }
    }
}

#[inline]
pub fn encode_channel(v: f64) -> u8 {
    (v.clamp(0.0, 1.0).powf(1.0 / GAMMA) * 255.0).round() as u8
}

#[inline]
pub fn decode_channel(b: u8) -> f64 {
    (f64::from(b) / 255.0).powf(GAMMA)
}

pub fn encode_ppm<W: Write + ?Sized>(image: &Image, out: &mut W) -> Result<()> {
    write!(out, "P6\n{} {}\n255\n", image.width, image.height)?;
    let mut bytes = Vec::with_capacity(3 * image.pixels.len());
    for p in &image.pixels {
        bytes.extend(p.channels().map(encode_channel));
    }
    out.write_all(&bytes)?;
    Ok(())
}

/// Reads the layout written by [`encode_ppm`] (single-space and newline
/// separators, no comments, maxval 255).
pub fn decode_ppm<R: BufRead>(mut input: R) -> Result<Image> {
    let mut header = Vec::new();
    let mut newlines = 0;
    while newlines < 3 {
        let mut byte = [0u8];
        input.read_exact(&mut byte)?;
        header.push(byte[0]);
        if byte[0] == b'\n' {
            newlines += 1;
        }
    }
    let header = String::from_utf8(header).map_err(|_| Error::InvalidParameter("bad PPM header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad = || Error::InvalidParameter(format!("bad PPM header {header:?}"));
    if fields.len() != 4 || fields[0] != "P6" || fields[3] != "255" {
        return Err(bad());
    }
    let width: usize = fields[1].parse().map_err(|_| bad())?;
    let height: usize = fields[2].parse().map_err(|_| bad())?;
    let mut bytes = vec![0u8; 3 * width * height];
    input.read_exact(&mut bytes)?;
    let pixels = bytes
        .chunks_exact(3)
        .map(|c| Spectrum::new(decode_channel(c[0]), decode_channel(c[1]), decode_channel(c[2])))
        .collect();
    Image::from_pixels(width, height, pixels)
}

pub fn write_image(image: &Image, path: &Path, format: ImageFormat) -> Result<()> {
    match format {
        ImageFormat::Ppm => write_atomic(path, |w| encode_ppm(image, w)),
    }
}
