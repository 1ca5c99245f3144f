//! Desired standoff paths in polar form, `d = r(γ)`, centred on the origin.

use libm::{cos, fabs, pow, sin, sqrt};

use crate::error::positive;
use crate::GuidanceError;

/// A closed, origin-centred standoff curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StandoffCurve {
    Circle { radius: f64 },
    Ellipse { semi_major: f64, semi_minor: f64 },
    /// Superellipse `|x/a|^p + |y/b|^p = 1`.
    Lame { a: f64, b: f64, exponent: f64 },
}

impl StandoffCurve {
    pub fn circle(radius: f64) -> Result<Self, GuidanceError> {
        Ok(Self::Circle {
            radius: positive("radius", radius)?,
        })
    }

    /// `semi_major` lies along the x axis, `semi_minor` along y. Neither is
    /// required to be the larger one.
    pub fn ellipse(semi_major: f64, semi_minor: f64) -> Result<Self, GuidanceError> {
        Ok(Self::Ellipse {
            semi_major: positive("semi_major", semi_major)?,
            semi_minor: positive("semi_minor", semi_minor)?,
        })
    }

    pub fn lame(a: f64, b: f64, exponent: f64) -> Result<Self, GuidanceError> {
        if !(exponent >= 2.0 && exponent.is_finite()) {
            return Err(GuidanceError::InvalidParameter {
                name: "exponent",
                value: exponent,
                reason: "Lamé exponent must be >= 2",
            });
        }
        Ok(Self::Lame {
            a: positive("semi_major", a)?,
            b: positive("semi_minor", b)?,
            exponent,
        })
    }

    /// Re-checks the invariants of a value built without the constructors.
    pub fn validate(&self) -> Result<(), GuidanceError> {
        match *self {
            Self::Circle { radius } => Self::circle(radius).map(drop),
            Self::Ellipse {
                semi_major,
                semi_minor,
            } => Self::ellipse(semi_major, semi_minor).map(drop),
            Self::Lame { a, b, exponent } => Self::lame(a, b, exponent).map(drop),
        }
    }

    /// Desired range `r(γ)`.
    pub fn radius_at(&self, gamma: f64) -> f64 {
        match *self {
            Self::Circle { radius } => radius,
            Self::Ellipse {
                semi_major: a,
                semi_minor: b,
            } => {
                let (s, c) = (sin(gamma), cos(gamma));
                a * b / sqrt((b * c) * (b * c) + (a * s) * (a * s))
            }
            Self::Lame { a, b, exponent: p } => pow(lame_sum(a, b, p, gamma), -1.0 / p),
        }
    }

    /// Analytic `dr/dγ`.
    pub fn radius_slope_at(&self, gamma: f64) -> f64 {
        match *self {
            Self::Circle { .. } => 0.0,
            Self::Ellipse {
                semi_major: a,
                semi_minor: b,
            } => {
                let (s, c) = (sin(gamma), cos(gamma));
                let q = (b * c) * (b * c) + (a * s) * (a * s);
                -a * b * (a * a - b * b) * s * c / (q * sqrt(q))
            }
            Self::Lame { a, b, exponent: p } => {
                let (s, c) = (sin(gamma), cos(gamma));
                let sum = lame_sum(a, b, p, gamma);
                // d/dγ |cos γ|^p = -p |cos γ|^(p-1) sgn(cos γ) sin γ, similarly for sin.
                let dsum = p
                    * (-pow(fabs(c), p - 1.0) * signum(c) * s / pow(a, p)
                        + pow(fabs(s), p - 1.0) * signum(s) * c / pow(b, p));
                let r = pow(sum, -1.0 / p);
                -r * dsum / (p * sum)
            }
        }
    }

    /// Geometry coupling `a(γ, d) = r'(γ) / d`.
    pub fn coupling(&self, gamma: f64, range: f64) -> Result<f64, GuidanceError> {
        if !(range > 0.0) {
            return Err(GuidanceError::NonPositiveRange(range));
        }
        Ok(self.radius_slope_at(gamma) / range)
    }
}

fn lame_sum(a: f64, b: f64, p: f64, gamma: f64) -> f64 {
    pow(fabs(cos(gamma) / a), p) + pow(fabs(sin(gamma) / b), p)
}

fn signum(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
