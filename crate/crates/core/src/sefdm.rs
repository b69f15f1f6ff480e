//! Non-orthogonal multicarrier modulation and matched-filter demodulation.
//!
//! Subcarriers and time samples are both numbered `1..=N`:
//!
//! ```text
//! x_n = (1/√N) Σ_k s_k exp(j2π α k n / N)
//! ```
//!
//! The matched filter output is `R = Φ^H Y`, and for a noise-free input
//! `R = C S` with `C = Φ^H Φ`. With this numbering the geometric series gives
//!
//! ```text
//! C_{k,n} = (1/N) · e^{jθd} (1 - e^{j2π α d}) / (1 - e^{jθd}),  d = n - k, θ = 2π α / N
//! ```
//!
//! and `C_{k,k} = 1`.

use crate::error::{config, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{Cplx, Real};
use num_traits::{One, Zero};

/// Below this denominator modulus the closed form is replaced by the direct sum.
const SINGULAR_DENOMINATOR: f64 = 1e-9;

fn check_params(n: usize, alpha: f64) -> Result<()> {
    if n == 0 {
        return config("number of subcarriers must be at least 1");
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return config(format!("compression factor must lie in (0, 1], got {alpha}"));
    }
    Ok(())
}

/// `Φ`, with `Φ_{n,k} = (1/√N) e^{j2π α k n / N}` (row = time sample).
#[derive(Debug, Clone, PartialEq)]
pub struct CarrierMatrix<T> {
    alpha: f64,
    phi: ComplexMatrix<T>,
}

pub fn carrier_matrix<T: Real>(n: usize, alpha: f64) -> Result<CarrierMatrix<T>> {
    check_params(n, alpha)?;
    Ok(CarrierMatrix { alpha, phi: sampled_carriers(n, alpha, 1) })
}

/// Carrier matrix sampled `oversample` times per symbol interval: rows are the
/// time instants `m / oversample` for `m = 1..=N·oversample`.
fn sampled_carriers<T: Real>(n: usize, alpha: f64, oversample: usize) -> ComplexMatrix<T> {
    let norm = 1.0 / (n as f64).sqrt();
    let rows = n * oversample;
    ComplexMatrix::from_fn(rows, n, |r, c| {
        let t = (r + 1) as f64 / oversample as f64;
        let k = (c + 1) as f64;
        // reduce the phase modulo one turn in f64 before converting
        let turns = (alpha * k * t / n as f64).fract();
        let (s, co) = (2.0 * std::f64::consts::PI * turns).sin_cos();
        Cplx::new(T::of(co * norm), T::of(s * norm))
    })
}

impl<T: Real> CarrierMatrix<T> {
    pub fn n(&self) -> usize {
        self.phi.cols()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.phi
    }

    /// `X = Φ S`.
    pub fn modulate(&self, s: &[Cplx<T>]) -> Vec<Cplx<T>> {
        self.phi.mul_vec(s)
    }

    /// `R = Φ^H Y`.
    pub fn demodulate(&self, y: &[Cplx<T>]) -> Vec<Cplx<T>> {
        self.phi.adjoint_mul_vec(y)
    }

    /// `Φ^H Φ` by explicit inner products.
    pub fn gram(&self) -> ComplexMatrix<T> {
        self.phi.adjoint().matmul(&self.phi)
    }
}

pub fn modulate<T: Real>(s: &[Cplx<T>], cm: &CarrierMatrix<T>) -> Result<Vec<Cplx<T>>> {
    if s.len() != cm.n() {
        return crate::error::usage(format!("expected {} symbols, got {}", cm.n(), s.len()));
    }
    Ok(cm.modulate(s))
}

pub fn demodulate<T: Real>(y: &[Cplx<T>], cm: &CarrierMatrix<T>) -> Result<Vec<Cplx<T>>> {
    if y.len() != cm.n() {
        return crate::error::usage(format!("expected {} samples, got {}", cm.n(), y.len()));
    }
    Ok(cm.demodulate(y))
}

/// Time waveform evaluated on a grid `oversample` times finer than the
/// symbol-rate samples; `oversample = 1` reproduces [`modulate`].
pub fn modulate_oversampled<T: Real>(s: &[Cplx<T>], alpha: f64, oversample: usize) -> Result<Vec<Cplx<T>>> {
    check_params(s.len(), alpha)?;
    if oversample == 0 {
        return config("oversampling factor must be at least 1");
    }
    Ok(sampled_carriers::<T>(s.len(), alpha, oversample).mul_vec(s))
}

/// Closed-form `C = Φ^H Φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T> {
    alpha: f64,
    c: ComplexMatrix<T>,
}

/// Closed-form correlation between subcarriers `k` and `n` (any numbering,
/// only `n - k` matters).
pub fn correlation_entry(n_sub: usize, alpha: f64, k: usize, n: usize) -> Cplx<f64> {
    if k == n {
        return Cplx::<f64>::one();
    }
    let d = n as f64 - k as f64;
    let big_n = n_sub as f64;
    let theta = 2.0 * std::f64::consts::PI * alpha / big_n;
    let denom: Cplx<f64> = Cplx::<f64>::one() - Cplx::from_polar(1.0, theta * d);
    if denom.norm() > SINGULAR_DENOMINATOR {
        let num = Cplx::<f64>::one() - Cplx::from_polar(1.0, 2.0 * std::f64::consts::PI * (alpha * d).fract());
        Cplx::from_polar(1.0 / big_n, theta * d) * num / denom
    } else {
        (1..=n_sub)
            .map(|m| Cplx::from_polar(1.0, 2.0 * std::f64::consts::PI * (alpha * d * m as f64 / big_n).fract()))
            .fold(Cplx::zero(), |a, b| a + b)
            / big_n
    }
}

pub fn correlation_matrix<T: Real>(n: usize, alpha: f64) -> Result<CorrelationMatrix<T>> {
    check_params(n, alpha)?;
    let c = ComplexMatrix::from_fn(n, n, |r, col| {
        let z = correlation_entry(n, alpha, r, col);
        Cplx::new(T::of(z.re), T::of(z.im))
    });
    Ok(CorrelationMatrix { alpha, c })
}

impl<T: Real> CorrelationMatrix<T> {
    pub fn n(&self) -> usize {
        self.c.rows()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.c
    }

    /// `g`-th `K×K` diagonal block (0-based `g`).
    pub fn subblock(&self, g: usize, k: usize) -> ComplexMatrix<T> {
        self.c.diagonal_block(g * k, k)
    }

    /// Largest off-diagonal modulus.
    pub fn max_off_diagonal(&self) -> T {
        self.c
            .iter_entries()
            .filter(|(r, c, _)| r != c)
            .map(|(_, _, z)| z.norm())
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::norm_sqr;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Cplx<f64>> {
        (0..n).map(|_| Cplx::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
    }

    #[test]
    fn orthogonal_case_is_unitary() {
        let cm = carrier_matrix::<f64>(4, 1.0).unwrap();
        assert!(cm.gram().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        for k in 0..4 {
            let mut e = vec![Cplx::zero(); 4];
            e[k] = Cplx::one();
            assert!((norm_sqr(&cm.modulate(&e)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_modulus_entries() {
        let cm = carrier_matrix::<f64>(12, 0.67).unwrap();
        for (_, _, z) in cm.matrix().iter_entries() {
            assert!((z.norm() - 1.0 / 12f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn single_subcarrier_is_complex_exponential() {
        let (n, alpha) = (12, 0.8);
        let cm = carrier_matrix::<f64>(n, alpha).unwrap();
        let mut s = vec![Cplx::zero(); n];
        s[0] = Cplx::one();
        let x = cm.modulate(&s);
        for (i, xi) in x.iter().enumerate() {
            let t = (i + 1) as f64;
            let want = Cplx::from_polar(1.0 / (n as f64).sqrt(), 2.0 * std::f64::consts::PI * alpha * t / n as f64);
            assert!((xi - want).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_compression_outside_unit_interval() {
        assert!(carrier_matrix::<f64>(12, 1.1).is_err());
        assert!(carrier_matrix::<f64>(12, 0.0).is_err());
        assert!(correlation_matrix::<f64>(0, 0.8).is_err());
    }

    #[test]
    fn modulate_zero_and_length_checks() {
        let cm = carrier_matrix::<f64>(8, 0.7).unwrap();
        let x = modulate(&vec![Cplx::zero(); 8], &cm).unwrap();
        assert!(x.iter().all(|z| z.norm() == 0.0));
        assert!(modulate(&vec![Cplx::zero(); 7], &cm).is_err());
        assert!(demodulate(&vec![Cplx::zero(); 9], &cm).is_err());
    }

    #[test]
    fn closed_form_matches_gram() {
        for &n in &[4usize, 12, 16] {
            for &alpha in &[0.5, 0.67, 0.8, 1.0] {
                let cm = carrier_matrix::<f64>(n, alpha).unwrap();
                let c = correlation_matrix::<f64>(n, alpha).unwrap();
                assert!(c.matrix().max_abs_diff(&cm.gram()) < 1e-12, "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn integer_lag_zeros() {
        let c = correlation_matrix::<f64>(4, 0.5).unwrap();
        assert!(c.matrix()[(0, 2)].norm() < 1e-15);
        assert!(c.matrix()[(3, 1)].norm() < 1e-15);
        let id = correlation_matrix::<f64>(12, 1.0).unwrap();
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(12)) < 1e-12);
        assert!(id.max_off_diagonal() < 1e-12);
    }

    #[test]
    fn adjacent_entry_matches_inner_product() {
        let cm = carrier_matrix::<f64>(12, 0.8).unwrap();
        let phi = cm.matrix();
        let c = correlation_matrix::<f64>(12, 0.8).unwrap();
        for k in 0..11 {
            let direct: Cplx<f64> = (0..12).map(|m| phi[(m, k)].conj() * phi[(m, k + 1)]).sum();
            assert!((direct - c.matrix()[(k, k + 1)]).norm() < 1e-13);
        }
    }

    #[test]
    fn demodulate_modulate_is_correlation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &alpha in &[1.0, 0.8, 0.625] {
            let cm = carrier_matrix::<f64>(12, alpha).unwrap();
            let c = correlation_matrix::<f64>(12, alpha).unwrap();
            for _ in 0..20 {
                let s = random_vec(&mut rng, 12);
                let r = cm.demodulate(&cm.modulate(&s));
                let cs = c.matrix().mul_vec(&s);
                let err: f64 = r.iter().zip(&cs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                assert!(err < 1e-12);
                if alpha == 1.0 {
                    assert!(r.iter().zip(&s).all(|(a, b)| (a - b).norm() < 1e-12));
                }
            }
        }
    }

    #[test]
    fn expected_energy_is_n_for_independent_unit_symbols() {
        // E||X||² = tr(C) for i.i.d. zero-mean unit symbols, and diag(C) = 1
        let c = correlation_matrix::<f64>(12, 0.67).unwrap();
        let trace: f64 = (0..12).map(|i| c.matrix()[(i, i)].re).sum();
        assert!((trace - 12.0).abs() < 1e-12);

        let cm = carrier_matrix::<f64>(12, 0.67).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let qpsk = crate::constellation::build_alphabet::<f64>(4, 1.0).unwrap();
        let trials = 20_000;
        let mean: f64 = (0..trials)
            .map(|_| {
                let s: Vec<_> = (0..12).map(|_| qpsk.point(rng.random_range(0..4))).collect();
                norm_sqr(&cm.modulate(&s))
            })
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 12.0).abs() < 0.1, "mean energy {mean}");
    }

    #[test]
    fn noise_covariance_after_matched_filter() {
        use rand_distr::{Distribution, StandardNormal};
        let (n, alpha, n0) = (12, 0.8, 0.5);
        let cm = carrier_matrix::<f64>(n, alpha).unwrap();
        let c = correlation_matrix::<f64>(n, alpha).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let draws = 20_000;
        let sigma = (n0 / 2.0f64).sqrt();
        let mut cov = ComplexMatrix::<f64>::zeros(n, n);
        for _ in 0..draws {
            let w: Vec<Cplx<f64>> = (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    Cplx::new(re * sigma, im * sigma)
                })
                .collect();
            let r = cm.demodulate(&w);
            for i in 0..n {
                for j in 0..n {
                    cov[(i, j)] += r[i] * r[j].conj() / draws as f64;
                }
            }
        }
        // E[R R^H] = N0 · C
        for i in 0..n {
            assert!((cov[(i, i)].re - n0).abs() < 0.05 * n0);
            for j in 0..n {
                let want = c.matrix()[(i, j)] * n0;
                assert!((cov[(i, j)] - want).norm() < 0.05 * n0);
            }
        }
    }

    #[test]
    fn oversampled_grid_contains_symbol_rate_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_vec(&mut rng, 12);
        let cm = carrier_matrix::<f64>(12, 0.75).unwrap();
        let x = cm.modulate(&s);
        let xo = modulate_oversampled(&s, 0.75, 4).unwrap();
        assert_eq!(xo.len(), 48);
        for (i, xi) in x.iter().enumerate() {
            assert!((xo[4 * i + 3] - xi).norm() < 1e-12);
        }
    }

    #[test]
    fn f32_matrices() {
        let c = correlation_matrix::<f32>(12, 0.8).unwrap();
        let g = carrier_matrix::<f32>(12, 0.8).unwrap().gram();
        assert!(c.matrix().max_abs_diff(&g) < 1e-5);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn hermitian_and_unit_diagonal(n in 1usize..40, alpha in 0.3f64..=1.0) {
                let c = correlation_matrix::<f64>(n, alpha).unwrap();
                let m = c.matrix();
                prop_assert!(m.max_abs_diff(&m.adjoint()) < 1e-12);
                for i in 0..n {
                    prop_assert!((m[(i, i)] - Cplx::one()).norm() < 1e-12);
                }
            }

            #[test]
            fn off_diagonal_nonzero_unless_integer_lag(n in 2usize..24, alpha in 0.3f64..0.999) {
                let c = correlation_matrix::<f64>(n, alpha).unwrap();
                for d in 1..n {
                    let frac = (alpha * d as f64).fract();
                    if frac > 1e-6 && frac < 1.0 - 1e-6 {
                        prop_assert!(c.matrix()[(0, d)].norm() > 0.0);
                    }
                }
            }
        }
    }
}
