use serde::{Deserialize, Serialize};

use super::{normalize_angle, Point2, Scalar};

/// A rigid motion of the plane, optionally orientation-reversing.
///
/// Acts as `p ↦ R(rotation) · M · p + translation`, where `M` mirrors across
/// the x axis when `reflected` is set and is the identity otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry<T> {
    pub rotation: T,
    pub translation: Point2<T>,
    pub reflected: bool,
}

impl<T: Scalar> Default for Isometry<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Scalar> Isometry<T> {
    pub fn new(rotation: T, translation: Point2<T>, reflected: bool) -> Self {
        Self {
            rotation: normalize_angle(rotation),
            translation,
            reflected,
        }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), Point2::origin(), false)
    }

    pub fn translation(t: Point2<T>) -> Self {
        Self::new(T::zero(), t, false)
    }

    pub fn rotation(theta: T) -> Self {
        Self::new(theta, Point2::origin(), false)
    }

    /// Linear part only (no translation).
    pub fn apply_vector(&self, v: Point2<T>) -> Point2<T> {
        let v = if self.reflected { v.mirror_x() } else { v };
        v.rotate(self.rotation)
    }

    pub fn apply(&self, p: Point2<T>) -> Point2<T> {
        self.apply_vector(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        // M R(θ) = R(-θ) M, so the mirror of `self` flips the sign of `other`'s rotation.
        let inner = if self.reflected {
            -other.rotation
        } else {
            other.rotation
        };
        Self::new(
            self.rotation + inner,
            self.apply(other.translation),
            self.reflected ^ other.reflected,
        )
    }

    pub fn inverse(&self) -> Self {
        // (R M)^-1 = M R(-θ) = R(θ) M when reflected, R(-θ) otherwise.
        let rotation = if self.reflected {
            self.rotation
        } else {
            -self.rotation
        };
        let linear = Self::new(rotation, Point2::origin(), self.reflected);
        let translation = -linear.apply_vector(self.translation);
        Self::new(rotation, translation, self.reflected)
    }

    pub fn is_finite(&self) -> bool {
        self.rotation.is_finite() && self.translation.is_finite()
    }
}
