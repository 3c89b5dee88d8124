// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, RealField};
use num_traits::ToPrimitive;

/// Real scalar the toolkit is generic over (`f32` or `f64`).
pub trait Real: RealField + Copy + ToPrimitive {
    /// Converts an `f64` constant into this scalar type.
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn cplx(self) -> Complex<Self> {
        Complex::new(self, Self::zero())
    }
}

impl<T: RealField + Copy + ToPrimitive> Real for T {}
