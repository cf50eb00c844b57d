use crate::brdf::FonRoughness;

/// Entries of the isotropic LTC matrix
///
/// ```text
///     | a 0 b |
/// M = | 0 c 0 |
///     | d 0 1 |
/// ```
///
/// expressed in the frame where the outgoing direction has zero azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LtcCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LtcCoeffs {
    pub const IDENTITY: LtcCoeffs = LtcCoeffs { a: 1.0, b: 0.0, c: 1.0, d: 0.0 };

    /// `|M| = c (a - b d)`.
    #[inline]
    pub fn det(&self) -> f64 {
        self.c * (self.a - self.b * self.d)
    }

    /// `M v`.
    #[inline]
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        [self.a * v[0] + self.b * v[2], self.c * v[1], self.d * v[0] + v[2]]
    }

    /// `adj(M) v = |M| M^-1 v`.
    #[inline]
    pub fn apply_adjugate(&self, v: [f64; 3]) -> [f64; 3] {
        let LtcCoeffs { a, b, c, d } = *self;
        [c * (v[0] - b * v[2]), (a - b * d) * v[1], -c * (d * v[0] - a * v[2])]
    }

    /// `cos` of the angle between the clipping plane and the `x-y` plane,
    /// `1 / sqrt(1 + d^2)`.
    #[inline]
    pub fn clip_cosine(&self) -> f64 {
        1.0 / (self.d * self.d + 1.0).sqrt()
    }
}

/// Fitted LTC coefficients for the cosine-weighted EON lobe at outgoing
/// cosine `mu` and roughness `r`. Every roughness-dependent term vanishes at
/// `r = 0`, giving the identity.
pub fn ltc_coeffs(mu: f64, r: FonRoughness) -> LtcCoeffs {
    let r = r.value();
    let a = 1.0 + r * (0.303392 + (-0.518982 + 0.111709 * mu) * mu + (-0.276266 + 0.335918 * mu) * r);
    let b = r * (-1.16407 + 1.15859 * mu + (0.150815 - 0.150105 * mu) * r) / (mu * mu * mu - 1.43545);
    let c = 1.0 + (0.20013 + (-0.506373 + 0.261777 * mu) * mu) * r;
    let d = ((0.540852 + (-1.01625 + 0.475392 * mu) * mu) * r) / (-1.0743 + mu * (0.0725628 + mu));
    LtcCoeffs { a, b, c, d }
}
