//! Small vector types for the local shading frame and the sphere renderer.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance on `|v| - 1` accepted by [`Direction::new`].
pub const UNIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.length())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A unit vector in the local shading frame, where `z` is the cosine against
/// the surface normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vec3);

impl Direction {
    pub const NORMAL: Direction = Direction(Vec3::new(0.0, 0.0, 1.0));

    /// Checks that `(x, y, z)` is a unit vector within [`UNIT_TOLERANCE`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let len = v.length();
        if !len.is_finite() || (len - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit { length: len });
        }
        Ok(Direction(v))
    }

    /// Normalizes an arbitrary non-zero finite vector.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let len = v.length();
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::NotUnit { length: len });
        }
        Ok(Direction(v * (1.0 / len)))
    }

    /// Direction at polar angle `theta` and azimuth `phi` (radians).
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Direction(Vec3::new(st * cp, st * sp, ct))
    }

    /// Direction with cosine `mu` against the normal and azimuth `phi`.
    pub fn from_cos_theta(mu: f64, phi: f64) -> Self {
        let st = (1.0 - mu * mu).max(0.0).sqrt();
        let (sp, cp) = phi.sin_cos();
        Direction(Vec3::new(st * cp, st * sp, mu))
    }

    pub(crate) fn from_unit_unchecked(v: Vec3) -> Self {
        debug_assert!((v.length() - 1.0).abs() < 1e-9, "not unit: {v:?}");
        Direction(v)
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.0.x
    }
    #[inline]
    pub fn y(self) -> f64 {
        self.0.y
    }
    #[inline]
    pub fn z(self) -> f64 {
        self.0.z
    }
    #[inline]
    pub fn vec(self) -> Vec3 {
        self.0
    }
    #[inline]
    pub fn dot(self, o: Direction) -> f64 {
        self.0.dot(o.0)
    }
}

/// Orthonormal shading frame around a world-space normal.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub s: Vec3,
    pub t: Vec3,
    pub n: Vec3,
}

impl Frame {
    /// Branchless basis construction of Duff et al. for a unit normal.
    pub fn from_normal(n: Vec3) -> Self {
        let sign = 1f64.copysign(n.z);
        let a = -1.0 / (sign + n.z);
        let b = n.x * n.y * a;
        let s = Vec3::new(1.0 + sign * n.x * n.x * a, sign * b, -sign * n.x);
        let t = Vec3::new(b, sign + n.y * n.y * a, -n.y);
        Frame { s, t, n }
    }

    #[inline]
    pub fn to_local(&self, v: Vec3) -> Vec3 {
        Vec3::new(v.dot(self.s), v.dot(self.t), v.dot(self.n))
    }

    #[inline]
    pub fn to_world(&self, v: Vec3) -> Vec3 {
        self.s * v.x + self.t * v.y + self.n * v.z
    }
}
