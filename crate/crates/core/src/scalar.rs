//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// A real floating point scalar (`f32` or `f64`) together with the
/// tolerances that make sense at its precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Allowed deviation of a state norm (and of unitarity residuals) from exact.
    const NORM_TOL: f64;
    /// Measurement branches below this probability are dropped.
    const PRUNE: f64;
    /// Amplitudes with modulus below this are treated as absent.
    const AMP_CUTOFF: f64;
    /// Eigenvalues below this are treated as zero (entropy, matrix square roots).
    const EIG_CUTOFF: f64;
    /// Phase-normalized branch states closer than this are one table row.
    const MERGE_TOL: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn norm_tol() -> Self {
        Self::lit(Self::NORM_TOL)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("real scalar converts to f64")
    }
}

impl Real for f64 {
    const NORM_TOL: f64 = 1e-12;
    const PRUNE: f64 = 1e-14;
    const AMP_CUTOFF: f64 = 1e-12;
    const EIG_CUTOFF: f64 = 1e-12;
    const MERGE_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const NORM_TOL: f64 = 1e-5;
    const PRUNE: f64 = 1e-10;
    const AMP_CUTOFF: f64 = 1e-6;
    const EIG_CUTOFF: f64 = 1e-6;
    const MERGE_TOL: f64 = 1e-4;
}

/// Complex amplitude over a [`Real`] scalar.
pub type Amp<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
