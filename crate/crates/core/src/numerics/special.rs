/// Complementary error function.
///
/// Backed by the musl-derived implementation in `libm`, accurate to about
/// one ulp on the whole real line.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}
