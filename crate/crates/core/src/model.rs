//! Physical parameter types and unit conventions shared by every other module.
//!
//! Unit conventions, asserted at every module boundary:
//!
//! - Rates (`gamma_rad`, `gamma_deph`, Rabi frequencies) are in ns⁻¹.
//! - Detunings and the spectral-diffusion width `sigma` are dimensionless,
//!   in units of the radiative decay rate Γ.
//! - Times (correlation delays, detector jitter) are in ns.
//! - Photon fluxes are quoted per emitter lifetime, `n = Φ/Γ`, with Φ the
//!   flux in photons/ns. The conversion is exact.
//!
//! Γ in ns⁻¹ is the single dimensional anchor; everything else is either
//! dimensionless or tied to it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Planck constant times speed of light, in J·m.
pub const HC_JOULE_METER: f64 = 6.626_070_15e-34 * 2.997_924_58e8;

/// Default emission wavelength in nm used for energy conversions.
///
/// Typical for InAs quantum dots; configurable wherever it enters.
pub const DEFAULT_WAVELENGTH_NM: f64 = 940.0;

/// Validation failure for a parameter object.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A field violates its documented bound.
    #[error("{field} = {value} out of range ({bound})")]
    OutOfRange {
        field: &'static str,
        value: f64,
        bound: &'static str,
    },
    /// A field is NaN or infinite.
    #[error("{field} is not finite")]
    NonFinite { field: &'static str },
}

fn check_finite(field: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::NonFinite { field })
    }
}

fn check_range(
    field: &'static str,
    value: f64,
    ok: bool,
    bound: &'static str,
) -> Result<(), ModelError> {
    check_finite(field, value)?;
    if ok {
        Ok(())
    } else {
        Err(ModelError::OutOfRange {
            field,
            value,
            bound,
        })
    }
}

/// The coherent two-level emitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterParams {
    /// Total spontaneous decay rate Γ in ns⁻¹.
    pub gamma_rad: f64,
    /// Fraction of Γ emitted into the guided waveguide mode, in [0, 1].
    pub beta: f64,
    /// Pure dephasing rate γ₀ in ns⁻¹.
    pub gamma_deph: f64,
}

impl EmitterParams {
    pub fn new(gamma_rad: f64, beta: f64, gamma_deph: f64) -> Result<Self, ModelError> {
        let p = Self {
            gamma_rad,
            beta,
            gamma_deph,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_range("gamma_rad", self.gamma_rad, self.gamma_rad > 0.0, "> 0")?;
        check_range(
            "beta",
            self.beta,
            (0.0..=1.0).contains(&self.beta),
            "in [0, 1]",
        )?;
        check_range("gamma_deph", self.gamma_deph, self.gamma_deph >= 0.0, ">= 0")?;
        // gamma_rad > 0 already implies gamma_total > 0.
        Ok(())
    }

    /// Total coherence decay rate γ_tot = Γ/2 + γ₀ in ns⁻¹.
    pub fn gamma_total(&self) -> f64 {
        0.5 * self.gamma_rad + self.gamma_deph
    }

    /// Coherence width in units of Γ: γ̃ = 1/2 + γ₀/Γ.
    pub fn coherence_width(&self) -> f64 {
        0.5 + self.gamma_deph / self.gamma_rad
    }

    /// Pure dephasing in units of Γ.
    pub fn deph_ratio(&self) -> f64 {
        self.gamma_deph / self.gamma_rad
    }
}

/// Slow classical noise ensemble: Gaussian spectral diffusion plus binary
/// blinking into a dark, non-interacting state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Standard deviation of the Gaussian detuning diffusion, in units of Γ.
    pub sigma: f64,
    /// Probability that the emitter is in the dark state, in [0, 1].
    pub alpha: f64,
}

impl NoiseModel {
    pub fn new(sigma: f64, alpha: f64) -> Result<Self, ModelError> {
        let n = Self { sigma, alpha };
        n.validate()?;
        Ok(n)
    }

    /// The "deconvolved" configuration: no diffusion, no blinking.
    pub fn none() -> Self {
        Self {
            sigma: 0.0,
            alpha: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_range("sigma", self.sigma, self.sigma >= 0.0, ">= 0")?;
        check_range(
            "alpha",
            self.alpha,
            (0.0..=1.0).contains(&self.alpha),
            "in [0, 1]",
        )
    }

    /// True when averaging over this model is the identity.
    pub fn is_deconvolved(&self) -> bool {
        self.sigma == 0.0 && self.alpha == 0.0
    }
}

/// Residual reflections at the waveguide terminations, forming the weak
/// Fabry-Perot background responsible for the Fano line shape.
///
/// Phases are round-trip offsets between each termination and the emitter at
/// the probe frequency; `phase_dispersion` is the rate of change of the full
/// round-trip phase with detuning (radians per Γ), linearized across the
/// emitter line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityBackground {
    pub r_left: f64,
    pub r_right: f64,
    pub phi_left: f64,
    pub phi_right: f64,
    pub phase_dispersion: f64,
}

impl CavityBackground {
    pub fn new(
        r_left: f64,
        r_right: f64,
        phi_left: f64,
        phi_right: f64,
        phase_dispersion: f64,
    ) -> Result<Self, ModelError> {
        let c = Self {
            r_left,
            r_right,
            phi_left,
            phi_right,
            phase_dispersion,
        };
        c.validate()?;
        Ok(c)
    }

    /// No background at all: bare-emitter spectra.
    pub fn none() -> Self {
        Self {
            r_left: 0.0,
            r_right: 0.0,
            phi_left: 0.0,
            phi_right: 0.0,
            phase_dispersion: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_range(
            "r_left",
            self.r_left,
            (0.0..1.0).contains(&self.r_left),
            "in [0, 1)",
        )?;
        check_range(
            "r_right",
            self.r_right,
            (0.0..1.0).contains(&self.r_right),
            "in [0, 1)",
        )?;
        check_finite("phi_left", self.phi_left)?;
        check_finite("phi_right", self.phi_right)?;
        check_finite("phase_dispersion", self.phase_dispersion)
    }

    pub fn is_none(&self) -> bool {
        self.r_left == 0.0 && self.r_right == 0.0
    }
}

/// Laser drive: detuning from the emitter line and input photon flux.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveSpec {
    /// Laser-emitter detuning δ in units of Γ.
    pub detuning: f64,
    /// Mean input photons per emitter lifetime, n = Φ/Γ.
    pub flux_per_lifetime: f64,
}

impl DriveSpec {
    pub fn new(detuning: f64, flux_per_lifetime: f64) -> Result<Self, ModelError> {
        let d = Self {
            detuning,
            flux_per_lifetime,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_finite("detuning", self.detuning)?;
        check_range(
            "flux_per_lifetime",
            self.flux_per_lifetime,
            self.flux_per_lifetime >= 0.0,
            ">= 0",
        )
    }

    /// Input flux Φ in photons/ns. Exact: Φ = n·Γ.
    pub fn flux_per_ns(&self, emitter: &EmitterParams) -> f64 {
        self.flux_per_lifetime * emitter.gamma_rad
    }
}

/// Detector timing response: Gaussian jitter per detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    /// Single-detector timing-jitter standard deviation in ns. Zero is the
    /// identity response.
    pub jitter_sigma: f64,
}

impl DetectorModel {
    pub fn new(jitter_sigma: f64) -> Result<Self, ModelError> {
        let d = Self { jitter_sigma };
        d.validate()?;
        Ok(d)
    }

    pub fn ideal() -> Self {
        Self { jitter_sigma: 0.0 }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_range(
            "jitter_sigma",
            self.jitter_sigma,
            self.jitter_sigma >= 0.0,
            ">= 0",
        )
    }
}

/// A sampled g²(τ) trace on a delay grid symmetric about zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTrace {
    /// Delays in ns, strictly increasing, symmetric about 0.
    pub tau_grid: Vec<f64>,
    /// g² values, same length as `tau_grid`, all ≥ 0.
    pub values: Vec<f64>,
    /// Input flux per lifetime at which the trace was computed.
    pub flux_per_lifetime: f64,
}

impl CorrelationTrace {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.tau_grid.len() != self.values.len() {
            return Err(ModelError::OutOfRange {
                field: "values",
                value: self.values.len() as f64,
                bound: "same length as tau_grid",
            });
        }
        for &t in &self.tau_grid {
            check_finite("tau_grid", t)?;
        }
        if !self.tau_grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(ModelError::OutOfRange {
                field: "tau_grid",
                value: f64::NAN,
                bound: "strictly increasing",
            });
        }
        let n = self.tau_grid.len();
        let span = self.tau_grid[n - 1] - self.tau_grid[0];
        for k in 0..n {
            let sym = self.tau_grid[k] + self.tau_grid[n - 1 - k];
            if sym.abs() > 1e-9 * span.max(1.0) {
                return Err(ModelError::OutOfRange {
                    field: "tau_grid",
                    value: self.tau_grid[k],
                    bound: "symmetric about 0",
                });
            }
        }
        for &v in &self.values {
            check_range("values", v, v >= 0.0, ">= 0")?;
        }
        check_finite("flux_per_lifetime", self.flux_per_lifetime)
    }

    /// Value at τ = 0 (the grid is symmetric, so the midpoint).
    pub fn at_zero(&self) -> f64 {
        self.values[self.tau_grid.len() / 2]
    }

    /// Largest value on the trace.
    pub fn peak(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Grid spacing; the grid must be uniform for convolution operations.
    pub fn spacing(&self) -> f64 {
        self.tau_grid[1] - self.tau_grid[0]
    }

    /// Build the symmetric grid `-tau_max ..= tau_max` with `2*half + 1` points.
    pub fn symmetric_grid(tau_max: f64, half: usize) -> Vec<f64> {
        let m = half as i64;
        (-m..=m).map(|k| tau_max * k as f64 / m as f64).collect()
    }
}

/// Photon energy hc/λ in J for a wavelength in nm.
pub fn photon_energy_joule(wavelength_nm: f64) -> f64 {
    HC_JOULE_METER / (wavelength_nm * 1e-9)
}

/// Switching energy in attojoule for a critical flux of `n_c` photons per
/// lifetime: n_c photons at hc/λ each.
pub fn switching_energy_attojoule(n_c: f64, wavelength_nm: f64) -> f64 {
    n_c * photon_energy_joule(wavelength_nm) * 1e18
}

/// Convert an applied optical power in nW to photons per lifetime inside the
/// waveguide: n = P·coupling / (hc/λ) / Γ.
pub fn flux_per_lifetime_from_power_nw(
    power_nw: f64,
    coupling_fraction: f64,
    wavelength_nm: f64,
    gamma_rad: f64,
) -> f64 {
    let photons_per_second = power_nw * 1e-9 * coupling_fraction / photon_energy_joule(wavelength_nm);
    photons_per_second / (gamma_rad * 1e9)
}

/// Inverse of [`flux_per_lifetime_from_power_nw`].
pub fn power_nw_from_flux_per_lifetime(
    n: f64,
    coupling_fraction: f64,
    wavelength_nm: f64,
    gamma_rad: f64,
) -> f64 {
    n * gamma_rad * 1e9 * photon_energy_joule(wavelength_nm) / coupling_fraction * 1e9
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn paper_emitter() -> EmitterParams {
        EmitterParams::new(2.5, 0.85, 0.79 * 2.5).unwrap()
    }

    #[test]
    fn paper_parameters_validate() {
        let e = paper_emitter();
        assert_relative_eq!(e.coherence_width(), 1.29, epsilon = 1e-12);
        assert_relative_eq!(e.gamma_total(), 1.25 + 1.975, epsilon = 1e-12);
    }

    #[test]
    fn beta_out_of_range_rejected() {
        let err = EmitterParams::new(1.0, 1.2, 0.0).unwrap_err();
        match err {
            ModelError::OutOfRange { field, .. } => assert_eq!(field, "beta"),
            other => panic!("expected OutOfRange(beta), got {other:?}"),
        }
    }

    #[test]
    fn nan_rejected() {
        assert!(matches!(
            EmitterParams::new(f64::NAN, 0.5, 0.0),
            Err(ModelError::NonFinite { .. })
        ));
        assert!(matches!(
            NoiseModel::new(1.0, f64::INFINITY),
            Err(ModelError::NonFinite { .. })
        ));
    }

    #[test]
    fn identity_noise_flagged_deconvolved() {
        let n = NoiseModel::new(0.0, 0.0).unwrap();
        assert!(n.is_deconvolved());
        assert!(!NoiseModel::new(3.6, 0.43).unwrap().is_deconvolved());
    }

    #[test]
    fn flux_power_roundtrip_exact() {
        let n = 0.81;
        let p = power_nw_from_flux_per_lifetime(n, 0.23, 940.0, 2.5);
        let back = flux_per_lifetime_from_power_nw(p, 0.23, 940.0, 2.5);
        assert_relative_eq!(back, n, max_relative = 1e-15);
        // critical power quoted for this parameter set is about 1.9 nW applied
        assert!((p - 1.9).abs() < 0.1, "power = {p}");
    }

    #[test]
    fn flux_per_lifetime_per_second_exact() {
        let e = paper_emitter();
        let d = DriveSpec::new(0.0, 0.81).unwrap();
        assert_relative_eq!(d.flux_per_ns(&e), 0.81 * 2.5, max_relative = 1e-15);
    }

    #[test]
    fn switching_energy_at_940nm() {
        // 0.81 photons/lifetime at 940 nm
        assert_relative_eq!(
            switching_energy_attojoule(0.81, 940.0),
            0.171172,
            max_relative = 1e-4
        );
    }

    #[test]
    fn correlation_trace_validation() {
        let grid = CorrelationTrace::symmetric_grid(4.0, 100);
        assert_eq!(grid.len(), 201);
        assert_eq!(grid[100], 0.0);
        let trace = CorrelationTrace {
            values: vec![1.0; grid.len()],
            tau_grid: grid,
            flux_per_lifetime: 0.1,
        };
        trace.validate().unwrap();

        let mut bad = trace.clone();
        bad.values[3] = -0.1;
        assert!(bad.validate().is_err());

        let mut asym = trace;
        asym.tau_grid[0] = -5.0;
        assert!(asym.validate().is_err());
    }
}
