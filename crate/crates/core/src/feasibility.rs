//! Order-of-magnitude laboratory estimates in SI units.

use std::f64::consts::PI;
use std::fmt;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::mirror::{photon_growth, GainLossPair, PulseTrain};

/// Photon count above which a microwave signal counts as detectable.
pub const DETECTION_THRESHOLD: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    RadPerSecond,
    Metre,
    MetrePerSecond,
    Pascal,
    JoulePerSquareMetre,
    PerSecond,
    Dimensionless,
    Count,
}

impl Unit {
    pub fn symbol(&self) -> &'static str {
        match self {
            Unit::RadPerSecond => "rad/s",
            Unit::Metre => "m",
            Unit::MetrePerSecond => "m/s",
            Unit::Pascal => "Pa",
            Unit::JoulePerSquareMetre => "J/m^2",
            Unit::PerSecond => "1/s",
            Unit::Dimensionless => "1",
            Unit::Count => "count",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit.symbol())
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, "must be finite and > 0"))
    }
}

/// Laser-driven plate in a cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorDriveInput {
    /// Modulated laser intensity, W/m².
    pub intensity: f64,
    /// Plate density, kg/m³.
    pub density: f64,
    /// Plate thickness, m.
    pub thickness: f64,
    /// Cavity mode wavelength, m.
    pub wavelength: f64,
    /// Cavity length, m.
    pub length: f64,
    /// Geometry factor, 1 for a Fabry–Pérot cavity.
    pub xi: f64,
}

impl MirrorDriveInput {
    pub fn validate(&self) -> Result<()> {
        positive("intensity", self.intensity)?;
        positive("density", self.density)?;
        positive("thickness", self.thickness)?;
        positive("wavelength", self.wavelength)?;
        positive("length", self.length)?;
        positive("xi", self.xi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiationPressureDrive {
    pub pressure_amplitude: Quantity,
    pub delta_l: Quantity,
    pub delta_omega: Quantity,
    /// Fluence I/Δω needed for Δω·t ≥ 1.
    pub required_fluence: Quantity,
}

pub fn radiation_pressure_drive(input: &MirrorDriveInput) -> Result<RadiationPressureDrive> {
    input.validate()?;
    let c = SPEED_OF_LIGHT;
    let areal_mass = input.density * input.thickness;
    let omega0 = 2.0 * PI * c / input.wavelength;
    let delta_omega = input.xi * (input.wavelength / input.length) * input.intensity / (4.0 * PI * c * c * areal_mass);
    Ok(RadiationPressureDrive {
        pressure_amplitude: Quantity::new(2.0 * input.intensity / c, Unit::Pascal),
        delta_l: Quantity::new(input.intensity / (2.0 * c * areal_mass * omega0 * omega0), Unit::Metre),
        delta_omega: Quantity::new(delta_omega, Unit::RadPerSecond),
        required_fluence: Quantity::new(input.intensity / delta_omega, Unit::JoulePerSquareMetre),
    })
}

/// Wall vibration excited through the piezoelectric effect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiezoInput {
    /// Sound velocity, m/s.
    pub sound_speed: f64,
    /// Largest relative deformation.
    pub max_strain: f64,
    /// Cavity length, m.
    pub length: f64,
    pub xi: f64,
}

impl PiezoInput {
    pub fn with_length(length: f64) -> Self {
        Self { sound_speed: 5e3, max_strain: 1e-2, length, xi: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        positive("sound_speed", self.sound_speed)?;
        positive("max_strain", self.max_strain)?;
        positive("length", self.length)?;
        positive("xi", self.xi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiezoLimits {
    pub v_max: Quantity,
    pub delta_omega: Quantity,
    /// Q_min divided by L/λ.
    pub q_min_per_length_ratio: Quantity,
}

impl PiezoLimits {
    pub fn q_min(&self, length: f64, wavelength: f64) -> Quantity {
        Quantity::new(self.q_min_per_length_ratio.value * length / wavelength, Unit::Dimensionless)
    }
}

pub fn piezo_limits(input: &PiezoInput) -> Result<PiezoLimits> {
    input.validate()?;
    let v_max = input.max_strain * input.sound_speed;
    Ok(PiezoLimits {
        v_max: Quantity::new(v_max, Unit::MetrePerSecond),
        delta_omega: Quantity::new(input.xi * v_max / (2.0 * input.length), Unit::RadPerSecond),
        q_min_per_length_ratio: Quantity::new(4.0 * PI * SPEED_OF_LIGHT / v_max, Unit::Dimensionless),
    })
}

/// Cavity whose effective length is modulated by a pumped nonlinear crystal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FabryPerotInput {
    pub finesse: f64,
    /// Pump angular frequency, rad/s.
    pub pump_omega: f64,
    /// Boundary velocity over c.
    pub beta: f64,
}

impl FabryPerotInput {
    pub fn validate(&self) -> Result<()> {
        positive("finesse", self.finesse)?;
        positive("pump_omega", self.pump_omega)?;
        if !(self.beta.is_finite() && (0.0..1.0).contains(&self.beta)) {
            return Err(Error::invalid("beta", "must lie in [0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FabryPerotFlux {
    pub rate: Quantity,
    pub n_inside: Quantity,
}

/// Outflow β²FΩ/(3π) and stationary occupation 2(βF)²/(3π²).
pub fn fabry_perot_flux(input: &FabryPerotInput) -> Result<FabryPerotFlux> {
    input.validate()?;
    let (b, f) = (input.beta, input.finesse);
    Ok(FabryPerotFlux {
        rate: Quantity::new(b * b * f * input.pump_omega / (3.0 * PI), Unit::PerSecond),
        n_inside: Quantity::new(2.0 * (b * f).powi(2) / (3.0 * PI * PI), Unit::Count),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirExpectation {
    pub photons: Quantity,
    pub detectable: bool,
}

pub fn detectable(photons: f64, net_gain: f64) -> bool {
    net_gain > 0.0 && photons >= DETECTION_THRESHOLD
}

/// Expected photon count after the pulses of `train`, and whether it clears
/// the detection threshold.
pub fn mir_expectation(train: &PulseTrain, pair: &GainLossPair) -> Result<MirExpectation> {
    let growth = photon_growth(train, pair)?;
    Ok(MirExpectation {
        photons: Quantity::new(growth.n, Unit::Count),
        detectable: detectable(growth.n, pair.net()),
    })
}
