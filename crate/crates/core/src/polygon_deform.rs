//! First-order deformations of the regular `n`-gon as a bicycle `(n, k)`-gon.
//!
//! Write the displacement of vertex `i` as `U_i` with
//! `U_{i+1} − U_i = t_i W_i`, `W_i = (cos(2i+1)φ, sin(2i+1)φ)`, `φ = π/n`,
//! which keeps every side length to first order. The `k`-diagonals stay
//! equal to first order iff `Σ_{j<k} a_j t_{i+j} = 0` for all `i`, with
//! `a_j = sin((2j+1−k)φ)`. That system is circulant with eigenvalues
//! `θ_r = Σ_{j<k} a_j ξ^{jr}`, `ξ = e^{2iφ}`, and eigenvectors `t_q = ξ^{rq}`.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::polygons::{regular, Polygon};

/// `|θ_r|` below this counts as zero. Nonzero values on the integer grid
/// stay far above it.
pub const ZERO_TOL: f64 = 1e-9;

type C64 = Complex<f64>;

fn check(n: usize, k: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::arg("n", format!("need n >= 4, got {n}")));
    }
    if k < 2 || 2 * k > n {
        return Err(Error::arg("k", format!("need 2 <= k <= n/2 = {}, got {k}", n / 2)));
    }
    Ok(())
}

fn phi(n: usize) -> f64 {
    PI / n as f64
}

/// `a_j = sin((2j+1−k)φ)` for `j < k`.
pub fn coefficients(n: usize, k: usize) -> Vec<f64> {
    let p = phi(n);
    (0..k).map(|j| ((2 * j + 1) as f64 - k as f64) * p).map(f64::sin).collect()
}

/// `ξ^m = e^{2imφ}`, with the exponent reduced mod `n` first.
fn xi_pow(n: usize, m: usize) -> C64 {
    Complex::from_polar(1.0, 2.0 * phi(n) * (m % n) as f64)
}

/// `θ_r` by direct summation.
pub fn theta_direct(n: usize, k: usize, r: usize) -> Result<C64> {
    check(n, k)?;
    if r >= n {
        return Err(Error::arg("r", format!("need r < n = {n}, got {r}")));
    }
    Ok(coefficients(n, k).iter().enumerate().map(|(j, &a)| xi_pow(n, j * r) * a).sum())
}

/// `sin(kx)/sin x`, continued by its limit `k(−1)^{m(k−1)}` at `x = mπ`.
fn sine_ratio(k: usize, m_num: i64, n: usize) -> f64 {
    // x = m_num·π/n
    if m_num.rem_euclid(n as i64) == 0 {
        let m = m_num / n as i64;
        let sign = if (m * (k as i64 - 1)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return k as f64 * sign;
    }
    let x = m_num as f64 * phi(n);
    (k as f64 * x).sin() / x.sin()
}

/// `θ_r` in closed form:
/// `2θ_r = (sin(k(r+1)φ)/sin((r+1)φ) − sin(k(r−1)φ)/sin((r−1)φ)) e^{i((k−1)rφ − π/2)}`.
/// At `r = 1` the second ratio is `k`; at `r = n − 1` the first is.
pub fn theta_closed(n: usize, k: usize, r: usize) -> Result<C64> {
    check(n, k)?;
    if r >= n {
        return Err(Error::arg("r", format!("need r < n = {n}, got {r}")));
    }
    let ri = r as i64;
    let magnitude = sine_ratio(k, ri + 1, n) - sine_ratio(k, ri - 1, n);
    let phase = (k as f64 - 1.0) * r as f64 * phi(n) - 0.5 * PI;
    Ok(Complex::from_polar(0.5 * magnitude, phase))
}

/// Circulant data for one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonSpectrum {
    pub n: usize,
    pub k: usize,
    pub phi: f64,
    /// `a_j` for `j < n` (zero for `j >= k`).
    pub a: Vec<f64>,
    /// `θ_r` by direct summation, stored as `[re, im]`.
    pub theta: Vec<[f64; 2]>,
    /// `max_r |θ_r(closed) − θ_r(direct)|`.
    pub closed_form_error: f64,
    /// Which `θ_r` vanish.
    pub zero: Vec<bool>,
}

impl PolygonSpectrum {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check(n, k)?;
        let mut a = coefficients(n, k);
        a.resize(n, 0.0);
        let mut theta = Vec::with_capacity(n);
        let mut err: f64 = 0.0;
        for r in 0..n {
            let d = theta_direct(n, k, r)?;
            err = err.max((theta_closed(n, k, r)? - d).norm());
            theta.push([d.re, d.im]);
        }
        let zero = theta.iter().map(|t| t[0].hypot(t[1]) < ZERO_TOL).collect();
        Ok(PolygonSpectrum { n, k, phi: phi(n), a, theta, closed_form_error: err, zero })
    }

    pub fn theta(&self, r: usize) -> C64 {
        let [re, im] = self.theta[r % self.n];
        Complex::new(re, im)
    }
}

/// `sin(k(r+1)φ) sin((r−1)φ) − sin(k(r−1)φ) sin((r+1)φ)`: the pole-free form
/// of the mode condition (no tangents, so no poles at `rφ = π/2`).
/// Symmetric under `k ↔ r`.
pub fn mode_sine_form(n: usize, k: usize, r: usize) -> f64 {
    let p = phi(n);
    let (kf, rf) = (k as f64, r as f64);
    (kf * (rf + 1.0) * p).sin() * ((rf - 1.0) * p).sin() - (kf * (rf - 1.0) * p).sin() * ((rf + 1.0) * p).sin()
}

/// Whether mode `r` is a first-order deformation direction, decided from the
/// sine form. At `r = 1` (where the form vanishes identically) the condition
/// is `sin 2kφ = k sin 2φ`.
pub fn mode_condition_holds(n: usize, k: usize, r: usize) -> bool {
    let p = phi(n);
    if r == 1 || r == n - 1 {
        return ((2.0 * k as f64 * p).sin() - k as f64 * (2.0 * p).sin()).abs() < ZERO_TOL;
    }
    mode_sine_form(n, k, r).abs() < ZERO_TOL
}

/// Dimension of the first-order deformation space, counted twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    /// `#{r ∈ [1, n−2] : |θ_r| < 10⁻⁹}`.
    pub from_theta: usize,
    /// Same range, decided by the sine form.
    pub from_sine_form: usize,
}

impl Dimension {
    pub fn agree(&self) -> bool {
        self.from_theta == self.from_sine_form
    }
}

pub fn dimension(n: usize, k: usize) -> Result<Dimension> {
    let spectrum = PolygonSpectrum::new(n, k)?;
    Ok(Dimension {
        from_theta: (1..n - 1).filter(|&r| spectrum.zero[r]).count(),
        from_sine_form: (1..n - 1).filter(|&r| mode_condition_holds(n, k, r)).count(),
    })
}

/// The circulant `A` with `A[i][(i+j) mod n] = a_j`.
pub fn constraint_matrix(n: usize, k: usize) -> Result<DMatrix<f64>> {
    check(n, k)?;
    let a = coefficients(n, k);
    Ok(DMatrix::from_fn(n, n, |i, c| {
        let j = (c + n - i) % n;
        if j < k {
            a[j]
        } else {
            0.0
        }
    }))
}

/// `max_i Σ_j |A − B⁻¹DB|_{ij}` with `B[p][q] = ξ^{(p+1)q}`,
/// `D = diag(θ_{n−1−p})` and `B⁻¹ = B^H/n`.
pub fn factorization_residual(n: usize, k: usize) -> Result<f64> {
    let a = constraint_matrix(n, k)?;
    let b = DMatrix::from_fn(n, n, |p, q| xi_pow(n, (p + 1) * q));
    let mut d = DMatrix::<C64>::zeros(n, n);
    for p in 0..n {
        d[(p, p)] = theta_direct(n, k, n - 1 - p)?;
    }
    let binv = b.adjoint() / Complex::new(n as f64, 0.0);
    let rebuilt = binv * d * b;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| (rebuilt[(i, j)] - a[(i, j)]).norm()).sum();
        worst = worst.max(row);
    }
    Ok(worst)
}

/// A real first-order deformation of the regular `n`-gon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationField {
    pub n: usize,
    pub k: usize,
    /// Fourier index of the mode.
    pub r: usize,
    /// Real (`false`) or imaginary (`true`) part of `ξ^{rq}`.
    pub imaginary: bool,
    /// Unit-norm coefficients `t_q`.
    pub t: Vec<f64>,
    /// `U_i = Σ_{j<i} t_j W_j`.
    pub u: Vec<Vec2>,
    pub w: Vec<Vec2>,
}

/// Residuals of the constraints satisfied by a field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldResiduals {
    /// `max_i |Σ_j a_j t_{i+j}|`.
    pub diagonal: f64,
    /// `|Σ t_i W_i|`.
    pub closure: f64,
    /// `|Σ t_i|`.
    pub rotation: f64,
    /// `max_i |(V_{i+k} − V_i)·(U_{i+k} − U_i)|`.
    pub first_order_constant: f64,
}

impl DeformationField {
    fn from_t(n: usize, k: usize, r: usize, imaginary: bool, mut t: Vec<f64>) -> Self {
        let norm = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut t {
            *x /= norm;
        }
        let w: Vec<Vec2> = (0..n).map(|i| Vec2::from_angle((2 * i + 1) as f64 * phi(n))).collect();
        let mut u = Vec::with_capacity(n);
        let mut acc = Vec2::ZERO;
        for i in 0..n {
            u.push(acc);
            acc += w[i] * t[i];
        }
        DeformationField { n, k, r, imaginary, t, u, w }
    }

    pub fn residuals(&self) -> FieldResiduals {
        let (n, k) = (self.n, self.k);
        let a = coefficients(n, k);
        let diagonal =
            (0..n).map(|i| (0..k).map(|j| a[j] * self.t[(i + j) % n]).sum::<f64>().abs()).fold(0.0, f64::max);
        let closure = self.t.iter().zip(&self.w).fold(Vec2::ZERO, |s, (&t, &w)| s + w * t).norm();
        let rotation = self.t.iter().sum::<f64>().abs();
        let v = |i: usize| Vec2::from_angle(2.0 * phi(n) * (i % n) as f64);
        let first_order_constant =
            (0..n).map(|i| ((v(i + k) - v(i)).dot(self.u[(i + k) % n] - self.u[i])).abs()).fold(0.0, f64::max);
        FieldResiduals { diagonal, closure, rotation, first_order_constant }
    }
}

/// Real basis of first-order deformations: real and imaginary parts of
/// `ξ^{rq}` for each vanishing `θ_r` with `2 ≤ r < n/2`, and `(−1)^q` when
/// `θ_{n/2}` vanishes.
pub fn kernel(n: usize, k: usize) -> Result<Vec<DeformationField>> {
    let spectrum = PolygonSpectrum::new(n, k)?;
    let mut out = Vec::new();
    for r in 2..=n / 2 {
        if !spectrum.zero[r] {
            continue;
        }
        let mode: Vec<C64> = (0..n).map(|q| xi_pow(n, r * q)).collect();
        out.push(DeformationField::from_t(n, k, r, false, mode.iter().map(|z| z.re).collect()));
        if 2 * r != n {
            out.push(DeformationField::from_t(n, k, r, true, mode.iter().map(|z| z.im).collect()));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyKernel { n, k });
    }
    Ok(out)
}

/// Vertices `V_i + εU_i` of the deformed regular `n`-gon (circumradius 1).
pub fn deform(field: &DeformationField, epsilon: f64) -> Result<Polygon> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::arg("epsilon", format!("must be finite and >= 0, got {epsilon}")));
    }
    let base = regular(field.n, 1.0)?;
    Polygon::new(base.vertices().iter().zip(&field.u).map(|(&v, &u)| v + u * epsilon).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygons::{shape_distance, verify, VERIFY_TOL};

    #[test]
    fn conjugate_symmetry() {
        for n in 4..=30 {
            for k in 2..=n / 2 {
                let s = PolygonSpectrum::new(n, k).unwrap();
                for r in 1..n {
                    assert!((s.theta(n - r) - s.theta(r).conj()).norm() < 1e-13);
                    assert_eq!(s.zero[r], s.zero[n - r]);
                }
                assert!(s.theta(0).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn closed_form_matches_direct() {
        for n in 4..=30 {
            for k in 2..=n / 2 {
                assert!(PolygonSpectrum::new(n, k).unwrap().closed_form_error < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_phase() {
        // arg 2θ_r ≡ (k−1)rφ − π/2 (mod π)
        for (n, k) in [(9, 4), (11, 3), (12, 5)] {
            for r in 1..n {
                let t = theta_direct(n, k, r).unwrap();
                if t.norm() < 1e-9 {
                    continue;
                }
                let expected = (k as f64 - 1.0) * r as f64 * phi(n) - 0.5 * PI;
                let diff = (t.arg() - expected).rem_euclid(PI);
                assert!(diff.min(PI - diff) < 1e-12);
            }
        }
    }

    #[test]
    fn examples() {
        assert!(theta_direct(8, 3, 4).unwrap().norm() < 1e-12);
        for r in 1..=5 {
            assert!(theta_direct(7, 3, r).unwrap().norm() > 1e-3);
        }
        for n in 4..=64 {
            for k in 2..=n / 2 {
                assert!(theta_closed(n, k, 1).unwrap().norm() > 1e-6);
            }
        }
    }

    #[test]
    fn dimension_table() {
        for (n, k) in [(5, 2), (6, 2), (7, 2), (7, 3), (9, 3), (11, 5), (12, 4)] {
            let d = dimension(n, k).unwrap();
            assert!(d.agree());
            assert_eq!(d.from_theta, 0, "({n},{k})");
        }
        for (n, k) in [(8, 3), (10, 3), (10, 5), (12, 5), (6, 3)] {
            let d = dimension(n, k).unwrap();
            assert!(d.agree());
            assert!(d.from_theta >= 1, "({n},{k})");
        }
    }

    #[test]
    fn half_n_is_zero_for_odd_k() {
        for n in (4..=64).step_by(2) {
            for k in (3..=n / 2).step_by(2) {
                assert!(theta_direct(n, k, n / 2).unwrap().norm() < ZERO_TOL);
            }
        }
    }

    #[test]
    fn n_equals_2k_odd_r() {
        let k = 3;
        let n = 2 * k;
        for r in (1..n - 1).filter(|r| r % 2 == 1 && *r > 1) {
            assert!(mode_condition_holds(n, k, r));
        }
    }

    #[test]
    fn sine_form_duality() {
        for n in 5..=30 {
            for k in 2..n - 1 {
                for r in 2..n - 1 {
                    assert!((mode_sine_form(n, k, r) - mode_sine_form(n, r, k)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn circulant_factorization() {
        for n in 4..=30 {
            for k in 2..=n / 2 {
                assert!(factorization_residual(n, k).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn rigid_families_have_no_modes() {
        for n in 4..=30 {
            for k in 2..=n / 2 {
                let rigid = k == 2 || (n % 2 == 1 && k == 3) || n == 2 * k + 1 || n == 3 * k;
                if rigid {
                    assert_eq!(dimension(n, k).unwrap().from_theta, 0, "({n},{k})");
                    assert!(matches!(kernel(n, k), Err(Error::EmptyKernel { .. })));
                }
                if n % 2 == 0 && k % 2 == 1 {
                    assert!(dimension(n, k).unwrap().from_theta >= 1);
                }
            }
        }
    }

    #[test]
    fn kernel_83() {
        let modes = kernel(8, 3).unwrap();
        assert_eq!(modes.len(), 1);
        let m = &modes[0];
        assert_eq!(m.r, 4);
        let res = m.residuals();
        assert!(res.diagonal < 1e-12 && res.closure < 1e-12 && res.rotation < 1e-12);
        assert!(res.first_order_constant < 1e-12);
        assert_eq!(m.u[0], Vec2::ZERO);
        let mean = m.t.iter().sum::<f64>() / 8.0;
        assert!(m.t.iter().any(|t| (t - mean).abs() > 0.1));
    }

    #[test]
    fn kernel_dimension_matches_count() {
        for n in 4..=30 {
            for k in 2..=n / 2 {
                let d = dimension(n, k).unwrap();
                assert!(d.agree(), "({n},{k})");
                match kernel(n, k) {
                    Ok(modes) => {
                        assert_eq!(modes.len(), d.from_theta);
                        for m in &modes {
                            let r = m.residuals();
                            assert!(r.diagonal < 1e-12 && r.closure < 1e-12 && r.rotation < 1e-12);
                        }
                    }
                    Err(_) => assert_eq!(d.from_theta, 0),
                }
            }
        }
    }

    fn spreads(mode: &DeformationField, eps: f64) -> (f64, f64) {
        let r = verify(&deform(mode, eps).unwrap(), mode.k, VERIFY_TOL).unwrap();
        (r.side_spread, r.diag_spread)
    }

    #[test]
    fn half_n_mode_is_exact() {
        // along r = n/2 the deformed polygon stays a bicycle polygon at every ε
        let mode = &kernel(8, 3).unwrap()[0];
        assert_eq!(deform(mode, 0.0).unwrap(), regular(8, 1.0).unwrap());
        for eps in [1e-4, 1e-3, 1e-2, 1e-1] {
            let (s, d) = spreads(mode, eps);
            assert!(s < 1e-13 && d < 1e-13, "{eps}: {s} {d}");
        }
        let p = deform(mode, 1e-3).unwrap();
        assert!(shape_distance(&p, &regular(8, 1.0).unwrap()) > 1e-4);
    }

    #[test]
    fn generic_mode_defect_is_quadratic() {
        let modes = kernel(10, 5).unwrap();
        let mode = modes.iter().find(|m| m.r == 3).unwrap();
        let (s3, _) = spreads(mode, 1e-3);
        let (s4, _) = spreads(mode, 1e-4);
        assert!((80.0..=120.0).contains(&(s3 / s4)), "{}", s3 / s4);
    }
}
