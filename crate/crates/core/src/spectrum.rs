use std::ops::{Add, AddAssign, Div, Mul};

use crate::error::{Error, Result};

/// Linear RGB triple. Used both for the albedo parameter `rho` (where each
/// channel must lie in `[0, 1]`) and for BRDF values and radiance.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spectrum {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Spectrum {
    pub const ZERO: Spectrum = Spectrum::splat(0.0);
    pub const ONE: Spectrum = Spectrum::splat(1.0);

    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Spectrum { r, g, b }
    }

    pub const fn splat(v: f64) -> Self {
        Spectrum { r: v, g: v, b: v }
    }

    /// Single-scattering albedo with every channel checked against `[0, 1]`.
    pub fn albedo(r: f64, g: f64, b: f64) -> Result<Self> {
        let s = Spectrum::new(r, g, b);
        s.check_albedo()?;
        Ok(s)
    }

    pub(crate) fn check_albedo(self) -> Result<()> {
        for c in self.channels() {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::AlbedoOutOfRange(c));
            }
        }
        Ok(())
    }

    pub fn channels(self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Spectrum {
        Spectrum::new(f(self.r), f(self.g), f(self.b))
    }

    pub fn average(self) -> f64 {
        (self.r + self.g + self.b) / 3.0
    }

    pub fn max_channel(self) -> f64 {
        self.r.max(self.g).max(self.b)
    }

    pub fn min_channel(self) -> f64 {
        self.r.min(self.g).min(self.b)
    }

    pub fn is_finite(self) -> bool {
        self.channels().iter().all(|c| c.is_finite())
    }
}

impl Add for Spectrum {
    type Output = Spectrum;
    #[inline]
    fn add(self, o: Spectrum) -> Spectrum {
        Spectrum::new(self.r + o.r, self.g + o.g, self.b + o.b)
    }
}

impl AddAssign for Spectrum {
    #[inline]
    fn add_assign(&mut self, o: Spectrum) {
        *self = *self + o;
    }
}

impl Mul for Spectrum {
    type Output = Spectrum;
    #[inline]
    fn mul(self, o: Spectrum) -> Spectrum {
        Spectrum::new(self.r * o.r, self.g * o.g, self.b * o.b)
    }
}

impl Mul<f64> for Spectrum {
    type Output = Spectrum;
    #[inline]
    fn mul(self, s: f64) -> Spectrum {
        Spectrum::new(self.r * s, self.g * s, self.b * s)
    }
}

impl Div<f64> for Spectrum {
    type Output = Spectrum;
    #[inline]
    fn div(self, s: f64) -> Spectrum {
        Spectrum::new(self.r / s, self.g / s, self.b / s)
    }
}
