use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the eigensolvers and spectral bounds are generic over.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Residual tolerance a Perron pair must meet in this precision.
    fn default_tolerance() -> Self;

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable as float")
    }
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }
}
