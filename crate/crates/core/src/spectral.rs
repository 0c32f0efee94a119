//! Trigonometric interpolation of uniformly sampled periodic functions.
//!
//! Samples `f_j = f(2πj/N)`, `j = 0..N`, define the unique trigonometric
//! polynomial of degree `N/2` (the Nyquist mode carried as a pure cosine).
//! Differentiation, shifting, integration and resampling all act on that
//! polynomial, so they are exact on band-limited data and spectrally accurate
//! on smooth periodic data.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn inverse_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// The `N` uniform grid points `2πj/N` on `[0, 2π)`.
pub fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

/// Fourier representation of a real, `2π`-periodic, uniformly sampled function.
#[derive(Clone, Debug)]
pub struct TrigSeries {
    /// Normalized DFT coefficients `c_j = (1/N) Σ f_m e^{-2πi jm/N}`.
    coeffs: Vec<Complex64>,
}

impl TrigSeries {
    /// Build from `N` samples. `N` must be even and at least 4.
    pub fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        assert!(n >= 4 && n.is_multiple_of(2), "trigonometric series needs an even sample count >= 4");
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        forward_plan(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        for c in &mut buf {
            *c *= scale;
        }
        TrigSeries { coeffs: buf }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Mean value over one period.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    fn half(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// Coefficient of `e^{ikx}` for `0 < k < N/2`.
    pub fn coefficient(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// Signed wavenumber of DFT slot `j` (the Nyquist slot reports `+N/2`).
    fn wavenumber(&self, j: usize) -> f64 {
        let n = self.coeffs.len();
        if j <= n / 2 {
            j as f64
        } else {
            j as f64 - n as f64
        }
    }

    fn nyquist(&self) -> f64 {
        self.coeffs[self.half()].re
    }

    /// Evaluate the interpolant at an arbitrary `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_derivative(x, 0)
    }

    /// Evaluate the `order`-th derivative of the interpolant at `x`.
    pub fn eval_derivative(&self, x: f64, order: u32) -> f64 {
        let m = self.half();
        let step = Complex64::from_polar(1.0, x);
        let mut z = step;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..m {
            let kf = k as f64;
            let factor = Complex64::new(0.0, kf).powu(order);
            acc += self.coeffs[k] * factor * z;
            z *= step;
        }
        let mut value = 2.0 * acc.re;
        if order == 0 {
            value += self.coeffs[0].re;
        }
        value + self.nyquist() * cos_derivative(m as f64, x, order)
    }

    /// `∫_0^x f`, including the linear contribution of the mean.
    pub fn eval_integral(&self, x: f64) -> f64 {
        let m = self.half();
        let step = Complex64::from_polar(1.0, x);
        let mut z = step;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..m {
            let kf = k as f64;
            acc += self.coeffs[k] * (z - 1.0) / Complex64::new(0.0, kf);
            z *= step;
        }
        let mf = m as f64;
        self.coeffs[0].re * x + 2.0 * acc.re + self.nyquist() * (mf * x).sin() / mf
    }

    fn synthesize(&self, mut spectrum: Vec<Complex64>) -> Vec<f64> {
        let n = spectrum.len();
        inverse_plan(n).process(&mut spectrum);
        spectrum.into_iter().map(|c| c.re).collect()
    }

    /// Samples of the `order`-th derivative on the original grid.
    pub fn derivative_samples(&self, order: u32) -> Vec<f64> {
        let n = self.coeffs.len();
        let m = self.half();
        let spectrum: Vec<Complex64> = (0..n)
            .map(|j| {
                if j == m {
                    if order % 2 == 1 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        let sign = if (order / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                        Complex64::new(self.nyquist() * sign * (m as f64).powi(order as i32), 0.0)
                    }
                } else {
                    self.coeffs[j] * Complex64::new(0.0, self.wavenumber(j)).powu(order)
                }
            })
            .collect();
        self.synthesize(spectrum)
    }

    /// Samples of `f(x_j + shift)` on the original grid.
    pub fn shifted_samples(&self, shift: f64) -> Vec<f64> {
        let n = self.coeffs.len();
        let m = self.half();
        let spectrum: Vec<Complex64> = (0..n)
            .map(|j| {
                if j == m {
                    Complex64::new(self.nyquist() * (m as f64 * shift).cos(), 0.0)
                } else {
                    self.coeffs[j] * Complex64::from_polar(1.0, self.wavenumber(j) * shift)
                }
            })
            .collect();
        self.synthesize(spectrum)
    }

    /// Samples of the interpolant on a finer uniform grid of `target` points.
    pub fn upsampled(&self, target: usize) -> Vec<f64> {
        let n = self.coeffs.len();
        assert!(target >= n, "upsampling target must not be smaller than the source");
        let m = self.half();
        let mut spectrum = vec![Complex64::new(0.0, 0.0); target];
        spectrum[..m].copy_from_slice(&self.coeffs[..m]);
        for j in (m + 1)..n {
            spectrum[target - (n - j)] = self.coeffs[j];
        }
        if target == n {
            spectrum[m] = Complex64::new(self.nyquist(), 0.0);
        } else {
            let half_nyq = Complex64::new(0.5 * self.nyquist(), 0.0);
            spectrum[m] += half_nyq;
            spectrum[target - m] += half_nyq;
        }
        self.synthesize(spectrum)
    }
}

/// `d^order/dx^order cos(m x)`.
fn cos_derivative(m: f64, x: f64, order: u32) -> f64 {
    let (s, c) = (m * x).sin_cos();
    let mag = m.powi(order as i32);
    match order % 4 {
        0 => mag * c,
        1 => -mag * s,
        2 => -mag * c,
        _ => mag * s,
    }
}

/// Spectral derivative of uniformly sampled periodic data.
pub fn derivative(values: &[f64], order: u32) -> Vec<f64> {
    TrigSeries::from_samples(values).derivative_samples(order)
}

/// Values `f(x_j + shift)` of the trigonometric interpolant.
pub fn shift(values: &[f64], shift: f64) -> Vec<f64> {
    TrigSeries::from_samples(values).shifted_samples(shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        grid(n).into_iter().map(f).collect()
    }

    #[test]
    fn derivative_exact_on_harmonics() {
        let n = 128;
        for m in 1..(n / 4) {
            let mf = m as f64;
            let c = sampled(n, |x| (mf * x).cos());
            let s = sampled(n, |x| (mf * x).sin());
            let dc = derivative(&c, 1);
            let ds = derivative(&s, 1);
            let d2c = derivative(&c, 2);
            for (j, x) in grid(n).into_iter().enumerate() {
                assert!((dc[j] + mf * (mf * x).sin()).abs() < 1e-9);
                assert!((ds[j] - mf * (mf * x).cos()).abs() < 1e-9);
                assert!((d2c[j] + mf * mf * (mf * x).cos()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn nyquist_mode_handling() {
        let n = 16;
        let v = sampled(n, |x| (8.0 * x).cos());
        let series = TrigSeries::from_samples(&v);
        let d1 = series.derivative_samples(1);
        assert!(d1.iter().all(|d| d.abs() < 1e-12));
        let d2 = series.derivative_samples(2);
        for (j, x) in grid(n).into_iter().enumerate() {
            assert!((d2[j] + 64.0 * (8.0 * x).cos()).abs() < 1e-9);
        }
        assert!((series.eval(0.1) - (0.8f64).cos()).abs() < 1e-12);
    }

    #[test]
    fn pointwise_evaluation_and_shift_agree() {
        let n = 64;
        let f = |x: f64| (x.sin()).exp() + 0.3 * (3.0 * x).cos();
        let v = sampled(n, f);
        let series = TrigSeries::from_samples(&v);
        for &x in &[0.0, 0.37, 1.9, 4.4, 6.1] {
            assert!((series.eval(x) - f(x)).abs() < 1e-12);
        }
        let shifted = series.shifted_samples(0.7);
        for (j, x) in grid(n).into_iter().enumerate() {
            assert!((shifted[j] - f(x + 0.7)).abs() < 1e-12);
            assert!((series.eval(x + 0.7) - shifted[j]).abs() < 1e-12);
        }
        let d = series.eval_derivative(1.3, 1);
        let exact = 1.3f64.cos() * 1.3f64.sin().exp() - 0.9 * (3.9f64).sin();
        assert!((d - exact).abs() < 1e-11);
    }

    #[test]
    fn integral_matches_closed_form() {
        let n = 64;
        let v = sampled(n, |x| 2.0 + x.cos() + 0.5 * (4.0 * x).sin());
        let series = TrigSeries::from_samples(&v);
        for &x in &[0.0, 1.0, 3.0, 2.0 * PI] {
            let exact = 2.0 * x + x.sin() + 0.125 * (1.0 - (4.0 * x).cos());
            assert!((series.eval_integral(x) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn upsampling_interpolates() {
        let n = 64;
        let f = |x: f64| (x.cos()).exp();
        let series = TrigSeries::from_samples(&sampled(n, f));
        let fine = series.upsampled(4 * n);
        for (j, x) in grid(4 * n).into_iter().enumerate() {
            assert!((fine[j] - f(x)).abs() < 1e-12);
        }
    }
}
