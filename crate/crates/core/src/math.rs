//! Real elementary functions routed through `libm` so the crate builds
//! without `std`.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// `-x ln x` with the `0 ln 0 = 0` convention.
#[inline]
pub fn xlnx_neg(x: f64) -> f64 {
    if x > 0.0 {
        -x * ln(x)
    } else {
        0.0
    }
}

/// `x^a` for `x >= 0`, `a > 0`, with `0^a = 0`.
#[inline]
pub fn pow_pos(x: f64, a: f64) -> f64 {
    if x > 0.0 {
        powf(x, a)
    } else {
        0.0
    }
}
