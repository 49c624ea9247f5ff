//! Dense complex products built from real GEMMs.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

pub fn split(a: &CMatrix) -> (RMatrix, RMatrix) {
    (a.map(|z| z.re), a.map(|z| z.im))
}

pub fn join(re: &RMatrix, im: &RMatrix) -> CMatrix {
    CMatrix::from_fn(re.nrows(), re.ncols(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

/// Product of split matrices: (ar + i ai)(br + i bi).
pub fn mul_split(ar: &RMatrix, ai: &RMatrix, br: &RMatrix, bi: &RMatrix) -> (RMatrix, RMatrix) {
    let re = ar * br - ai * bi;
    let im = ar * bi + ai * br;
    (re, im)
}

pub fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let (re, im) = mul_split(&ar, &ai, &br, &bi);
    join(&re, &im)
}

/// max |a_ij - b_ij|.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn scale_columns(a: &CMatrix, d: &[Complex64]) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * d[j])
}
