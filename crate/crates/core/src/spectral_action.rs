//! Cutoff spectral action `Tr φ(D²/Λ²)` on explicit and flat-torus Dirac
//! spectra, Weyl-law fits, the Einstein-Hilbert constant and a Dixmier-trace
//! estimator.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // f64 math in no_std
use num_traits::Float;

use crate::error::{Error, Result};

/// Minimum number of Λ samples for a Weyl fit.
pub const MIN_FIT_POINTS: usize = 5;

/// Eigenvalues of the flat torus `ℝⁿ/(Lℤ)ⁿ` with periodic spin structure.
///
/// Each lattice point `k ∈ ℤⁿ` carries `2^⌊n/2⌋` modes. For `k ≠ 0` half of
/// them have eigenvalue `+(2π/L)|k|` and half `−(2π/L)|k|`; when there is only
/// one mode per point the sign follows the lexicographic sign of `k`, so the
/// pair `±k` gives one of each. The zero mode is counted once with full
/// multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSpectrum {
    n: usize,
    l: f64,
    k: u64,
    /// `histogram[m]` = number of `k` with `|k|∞ ≤ K` and `|k|² = m`.
    histogram: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumModel {
    /// `(eigenvalue, multiplicity)` pairs.
    Explicit(Vec<(f64, u64)>),
    Torus(TorusSpectrum),
}

impl TorusSpectrum {
    pub fn new(n: usize, l: f64, k: u64) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::DimensionOutOfRange { n, min: 1, max: 16 });
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "side length must be positive, got {l}"
            )));
        }
        if k > 1 << 16 {
            return Err(Error::InvalidInput(format!("lattice cutoff {k} is too large")));
        }
        let k2 = (k * k) as usize;
        let mut one = alloc::vec![0u128; k2 + 1];
        one[0] = 1;
        for j in 1..=k as usize {
            one[j * j] += 2;
        }
        let mut hist = one.clone();
        for _ in 1..n {
            let mut next = alloc::vec![0u128; hist.len() + k2];
            for (m, &c) in hist.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, &d) in one.iter().enumerate() {
                    if d != 0 {
                        next[m + j] += c * d;
                    }
                }
            }
            hist = next;
        }
        Ok(Self {
            n,
            l,
            k,
            histogram: hist,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> f64 {
        self.l
    }

    pub fn cutoff(&self) -> u64 {
        self.k
    }

    /// `2π/L`
    pub fn scale(&self) -> f64 {
        core::f64::consts::TAU / self.l
    }

    /// Spinor modes per lattice point, `2^⌊n/2⌋`.
    pub fn modes(&self) -> u128 {
        1 << (self.n / 2)
    }

    /// Total number of eigenvalues generated, `2^⌊n/2⌋ (2K+1)ⁿ`.
    pub fn total(&self) -> u128 {
        self.modes() * self.histogram.iter().sum::<u128>()
    }

    fn ensure_covers(&self, lambda: f64) -> Result<()> {
        if self.scale() * self.k as f64 >= lambda {
            return Ok(());
        }
        Err(Error::Truncation {
            required_k: (lambda / self.scale()).ceil() as u64,
            have_k: self.k,
        })
    }

    /// `(λ, multiplicity)` with `|λ| ≤ max_abs`, ascending in `|λ|`, negative first.
    pub fn signed_eigenvalues(&self, max_abs: f64) -> Vec<(f64, u128)> {
        let s = self.modes();
        let mut out = Vec::new();
        for (m, &c) in self.histogram.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let lam = self.scale() * (m as f64).sqrt();
            if lam > max_abs {
                continue;
            }
            if m == 0 {
                out.push((0.0, s * c));
            } else {
                // c is even for m > 0 (k ↔ −k), so the split is exact for any s
                out.push((-lam, s * c / 2));
                out.push((lam, s * c / 2));
            }
        }
        out
    }
}

/// Cutoff profile `φ` applied to `u = λ²/Λ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutoffFunction {
    /// Characteristic function of `[0, 1]`.
    Hard,
    /// `1` on `[0, 1−δ]`, `0` on `[1+δ, ∞)`, cubic smoothstep in between.
    Smooth { delta: f64 },
}

impl CutoffFunction {
    pub fn smooth(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidInput(format!(
                "smooth margin must be in (0, 1), got {delta}"
            )));
        }
        Ok(CutoffFunction::Smooth { delta })
    }

    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            CutoffFunction::Hard => {
                if u <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            CutoffFunction::Smooth { delta } => {
                if u <= 1.0 - delta {
                    1.0
                } else if u >= 1.0 + delta {
                    0.0
                } else {
                    let t = (u - (1.0 - delta)) / (2.0 * delta);
                    1.0 - t * t * (3.0 - 2.0 * t)
                }
            }
        }
    }

    /// Largest `u` with `φ(u) > 0`.
    pub fn support(&self) -> f64 {
        match *self {
            CutoffFunction::Hard => 1.0,
            CutoffFunction::Smooth { delta } => 1.0 + delta,
        }
    }

    /// Moments over `[0, ∞)`: `f₀ = ∫φ(u)u du`, `f₂ = ∫φ(u) du`, `f₄ = φ(0)`.
    pub fn moments(&self) -> AsymptoticCoefficients {
        match *self {
            CutoffFunction::Hard => AsymptoticCoefficients {
                f0: 0.5,
                f2: 1.0,
                f4: 1.0,
            },
            CutoffFunction::Smooth { delta } => AsymptoticCoefficients {
                f0: 0.5 + delta * delta / 10.0,
                f2: 1.0,
                f4: 1.0,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticCoefficients {
    pub f0: f64,
    pub f2: f64,
    pub f4: f64,
}

/// Leading heat coefficient of `D²` on the flat torus:
/// `a₀ = (4π)^{−n/2} · 2^⌊n/2⌋ · Lⁿ`.
pub fn torus_a0(n: usize, l: f64) -> f64 {
    let s = (1u64 << (n / 2)) as f64;
    s * l.powi(n as i32) / (4.0 * core::f64::consts::PI).powf(n as f64 / 2.0)
}

/// `2^⌊n/2⌋ · Vol(Bⁿ) · (L/2π)ⁿ`, the Weyl constant in `N(Λ) ~ C Λⁿ`.
pub fn ball_volume_oracle(n: usize, l: f64) -> f64 {
    let s = (1u64 << (n / 2)) as f64;
    let vol = core::f64::consts::PI.powf(n as f64 / 2.0) / libm::tgamma(n as f64 / 2.0 + 1.0);
    s * vol * (l / core::f64::consts::TAU).powi(n as i32)
}

impl SpectrumModel {
    pub fn explicit(pairs: Vec<(f64, u64)>) -> Result<Self> {
        for &(lam, m) in &pairs {
            if !lam.is_finite() {
                return Err(Error::InvalidInput("eigenvalues must be finite".into()));
            }
            if m == 0 {
                return Err(Error::InvalidInput("multiplicities must be positive".into()));
            }
        }
        Ok(SpectrumModel::Explicit(pairs))
    }

    pub fn torus(n: usize, l: f64, k: u64) -> Result<Self> {
        TorusSpectrum::new(n, l, k).map(SpectrumModel::Torus)
    }

    /// `Σ mult · φ(λ²/Λ²)` as a generic sum over the spectrum.
    fn sum(&self, lambda: f64, weight: impl Fn(f64) -> f64) -> Result<f64> {
        match self {
            SpectrumModel::Explicit(p) => Ok(p.iter().map(|&(l, m)| m as f64 * weight(l)).sum()),
            SpectrumModel::Torus(t) => {
                let s = t.modes() as f64;
                let scale = t.scale();
                let _ = lambda;
                Ok(t.histogram
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(m, &c)| s * c as f64 * weight(scale * (m as f64).sqrt()))
                    .sum())
            }
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidInput(format!("Λ must be positive, got {lambda}")));
    }
    Ok(())
}

/// `N(Λ) = Σ { mult : |λ| ≤ Λ }`.
pub fn counting(sm: &SpectrumModel, lambda: f64) -> Result<u128> {
    check_lambda(lambda)?;
    match sm {
        SpectrumModel::Explicit(p) => Ok(p
            .iter()
            .filter(|(l, _)| l.abs() <= lambda)
            .map(|&(_, m)| m as u128)
            .sum()),
        SpectrumModel::Torus(t) => {
            t.ensure_covers(lambda)?;
            let scale = t.scale();
            let c: u128 = t
                .histogram
                .iter()
                .enumerate()
                .filter(|(m, _)| scale * (*m as f64).sqrt() <= lambda)
                .map(|(_, &c)| c)
                .sum();
            Ok(c * t.modes())
        }
    }
}

/// `Tr φ(D²/Λ²)`. With the hard cutoff this equals [`counting`] exactly.
pub fn spectral_action(sm: &SpectrumModel, phi: CutoffFunction, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if phi == CutoffFunction::Hard {
        return Ok(counting(sm, lambda)? as f64);
    }
    if let SpectrumModel::Torus(t) = sm {
        t.ensure_covers(lambda * phi.support().sqrt())?;
    }
    sm.sum(lambda, |l| phi.eval(l * l / (lambda * lambda)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylFit {
    /// Slope of the least-squares line through `(ln Λ, ln N)`.
    pub power: f64,
    /// `exp` of the intercept of that line.
    pub fitted_constant: f64,
    /// `N(Λ_max) / Λ_maxⁿ`
    pub constant_at_max: f64,
    /// [`ball_volume_oracle`] for the torus.
    pub oracle_constant: f64,
    /// `|constant_at_max / oracle_constant − 1|`
    pub relative_error: f64,
    /// `(Λ, N(Λ), N(Λ) − fitted_constant·Λ^power)`: the oscillating remainder.
    pub samples: Vec<(f64, u128, f64)>,
}

/// Fits `N(Λ) ≈ C Λᵖ` over the given grid.
pub fn weyl_fit(t: &TorusSpectrum, lambdas: &[f64]) -> Result<WeylFit> {
    if lambdas.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!(
            "need at least {MIN_FIT_POINTS} Λ values, got {}",
            lambdas.len()
        )));
    }
    let sm = SpectrumModel::Torus(t.clone());
    let mut pts = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let n = counting(&sm, l)?;
        if n == 0 {
            return Err(Error::Fit(format!("N({l}) = 0, cannot take logarithms")));
        }
        pts.push((l, n));
    }
    let k = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|(l, _)| l.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("Λ values must not all coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let power = sxy / sxx;
    let fitted_constant = (my - power * mx).exp();
    let (lmax, nmax) = pts
        .iter()
        .copied()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("nonempty");
    let constant_at_max = nmax as f64 / lmax.powi(t.n as i32);
    let oracle_constant = ball_volume_oracle(t.n, t.l);
    let samples = pts
        .iter()
        .map(|&(l, n)| (l, n, n as f64 - fitted_constant * l.powf(power)))
        .collect();
    Ok(WeylFit {
        power,
        fitted_constant,
        constant_at_max,
        oracle_constant,
        relative_error: (constant_at_max / oracle_constant - 1.0).abs(),
        samples,
    })
}

/// `cₙ = (n−2)/12 · (4π)^{−n/2} · Γ(n/2+1)^{−1} · 2^⌊n/2⌋` for even `n ≥ 2`.
pub fn einstein_hilbert_constant(n: usize) -> Result<f64> {
    if n < 2 || n % 2 == 1 || n > 40 {
        return Err(Error::InvalidInput(format!(
            "the Einstein-Hilbert constant is evaluated for even 2 ≤ n ≤ 40, got {n}"
        )));
    }
    let h = n / 2;
    // Γ(h+1) = h! exactly for integer h
    let fact: f64 = (1..=h).map(|i| i as f64).product();
    let rational = (n - 2) as f64 * (1u64 << h) as f64 / (12.0 * fact);
    Ok(rational / (4.0 * core::f64::consts::PI).powi(h as i32))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DixmierEstimate {
    pub n: u64,
    /// `(1/ln N) Σ_{k<N} μₖ`
    pub value: f64,
    /// Set when `N·μ_{N−1} > ln N`: the terms are not those of an infinitesimal of order 1.
    pub divergent: bool,
}

/// Logarithmic mean of a nonincreasing positive sequence.
pub fn dixmier_estimate(mu: impl Fn(u64) -> f64, n: u64) -> Result<DixmierEstimate> {
    if n < 10 {
        return Err(Error::InvalidInput(format!("N must be at least 10, got {n}")));
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for k in 0..n {
        let x = mu(k);
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "μ_{k} = {x} is not a positive number"
            )));
        }
        if x > prev {
            return Err(Error::InvalidInput(format!(
                "sequence increases at index {k}: {prev} < {x}"
            )));
        }
        prev = x;
        last = x;
        // Neumaier summation
        let t = sum + x;
        if sum.abs() >= x {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    let ln = (n as f64).ln();
    Ok(DixmierEstimate {
        n,
        value: (sum + comp) / ln,
        divergent: n as f64 * last > ln,
    })
}

/// Estimates along a ladder of `N` values, for judging convergence.
pub fn dixmier_ladder(mu: impl Fn(u64) -> f64, ns: &[u64]) -> Result<Vec<DixmierEstimate>> {
    ns.iter().map(|&n| dixmier_estimate(&mu, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    /// Brute-force lattice enumeration for the count.
    fn enumerate(n: usize, l: f64, k: i64, lambda: f64) -> u128 {
        let scale = 2.0 * PI / l;
        let mut count = 0u128;
        let mut idx = alloc::vec![-k; n];
        loop {
            let m: i64 = idx.iter().map(|x| x * x).sum();
            if scale * (m as f64).sqrt() <= lambda {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count << (n / 2);
                }
                idx[i] += 1;
                if idx[i] > k {
                    idx[i] = -k;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn explicit_counting() {
        let sm = SpectrumModel::explicit(alloc::vec![(-1.0, 1), (1.0, 1)]).unwrap();
        assert_eq!(counting(&sm, 0.5).unwrap(), 0);
        assert_eq!(counting(&sm, 2.0).unwrap(), 2);
        assert!(SpectrumModel::explicit(alloc::vec![(1.0, 0)]).is_err());
    }

    #[test]
    fn circle_counting() {
        let sm = SpectrumModel::torus(1, 2.0 * PI, 5).unwrap();
        assert_eq!(counting(&sm, 2.5).unwrap(), 5);
    }

    #[test]
    fn counting_matches_enumeration() {
        for (n, l, k, lam) in [(2, 3.0, 6, 9.0), (3, 2.0 * PI, 4, 3.7), (4, 5.0, 3, 3.5)] {
            let sm = SpectrumModel::torus(n, l, k).unwrap();
            assert_eq!(
                counting(&sm, lam).unwrap(),
                enumerate(n, l, k as i64, lam),
                "n = {n}"
            );
        }
    }

    #[test]
    fn truncation_is_reported() {
        let sm = SpectrumModel::torus(2, 2.0 * PI, 3).unwrap();
        assert_eq!(
            counting(&sm, 4.5),
            Err(Error::Truncation {
                required_k: 5,
                have_k: 3
            })
        );
    }

    #[test]
    fn smooth_midpoint() {
        let sm = SpectrumModel::explicit(alloc::vec![(-1.0, 1), (1.0, 1)]).unwrap();
        let phi = CutoffFunction::smooth(0.1).unwrap();
        assert!((spectral_action(&sm, phi, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn torus_spectrum_is_symmetric_and_complete() {
        let t = TorusSpectrum::new(3, 2.0, 4).unwrap();
        let ev = t.signed_eigenvalues(f64::INFINITY);
        let total: u128 = ev.iter().map(|e| e.1).sum();
        assert_eq!(total, t.total());
        assert_eq!(total, 2 * 9u128.pow(3));
        let pos: u128 = ev.iter().filter(|e| e.0 > 0.0).map(|e| e.1).sum();
        let neg: u128 = ev.iter().filter(|e| e.0 < 0.0).map(|e| e.1).sum();
        assert_eq!(pos, neg);
    }

    #[test]
    fn hard_moments_and_leading_term() {
        let m = CutoffFunction::Hard.moments();
        assert_eq!((m.f0, m.f2, m.f4), (0.5, 1.0, 1.0));
        // f₀ a₀ is the Weyl constant in dimension 4
        let l = 3.3;
        assert!((m.f0 * torus_a0(4, l) / ball_volume_oracle(4, l) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_moments_by_quadrature() {
        let delta = 0.3;
        let phi = CutoffFunction::smooth(delta).unwrap();
        let steps = 200_000;
        let h = 2.0 / steps as f64;
        let (mut f0, mut f2) = (0.0, 0.0);
        for i in 0..steps {
            let u = (i as f64 + 0.5) * h;
            f0 += phi.eval(u) * u * h;
            f2 += phi.eval(u) * h;
        }
        let m = phi.moments();
        assert!((m.f0 - f0).abs() < 1e-9);
        assert!((m.f2 - f2).abs() < 1e-9);
    }

    #[test]
    fn einstein_hilbert_values() {
        let c4 = einstein_hilbert_constant(4).unwrap();
        assert!((c4 * 48.0 * PI * PI - 1.0).abs() < 4e-16);
        assert_eq!(einstein_hilbert_constant(2).unwrap(), 0.0);
        let c6 = (4.0 / 12.0) * (4.0 * PI).powi(-3) / 6.0 * 8.0;
        assert!((einstein_hilbert_constant(6).unwrap() / c6 - 1.0).abs() < 1e-15);
        assert!(einstein_hilbert_constant(5).is_err());
    }

    #[test]
    fn dixmier_examples() {
        let e = dixmier_estimate(|k| 1.0 / (k + 1) as f64, 1_000_000).unwrap();
        assert!((e.value - 1.0).abs() < 0.05);
        assert!(!e.divergent);
        let c = dixmier_estimate(|_| 1.0, 1_000_000).unwrap();
        assert!(c.divergent);
        assert!((c.value - 1e6 / 1e6f64.ln()).abs() < 1e-6);
        assert!(dixmier_estimate(|k| k as f64 + 1.0, 100).is_err());
        assert!(dixmier_estimate(|_| 1.0, 5).is_err());
    }

    #[test]
    fn weyl_fit_needs_points() {
        let t = TorusSpectrum::new(2, 2.0 * PI, 10).unwrap();
        assert!(matches!(weyl_fit(&t, &[2.0, 3.0, 4.0]), Err(Error::Fit(_))));
    }

    #[test]
    fn weyl_fit_in_two_dimensions() {
        let t = TorusSpectrum::new(2, 2.0 * PI, 70).unwrap();
        let grid: Vec<f64> = (0..21).map(|i| 20.0 + 2.0 * i as f64).collect();
        let fit = weyl_fit(&t, &grid).unwrap();
        assert!((fit.power - 2.0).abs() < 0.05);
        assert!(fit.relative_error < 0.02);
    }
}
