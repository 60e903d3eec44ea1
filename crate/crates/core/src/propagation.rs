//! Scalar propagation-gain models for a single-antenna transmitter and a
//! receiving element or square planar array in free space.
//!
//! All gains are dimensionless power ratios `P_rx / P_tx`. The models are:
//!
//! * free-space gain of one element, `A / (4 pi d^2)`;
//! * spherical-array gain `N * beta`, which is only physical while `N * beta <= 1`;
//! * exact gain of a broadside `sqrt(N) x sqrt(N)` planar array,
//!   `atan(N A / (4 d sqrt(N A + d^2))) / pi`, bounded by 1/2;
//! * the far-field linearisation of the planar gain, again `N * beta`.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PropagationError {
    #[error("invalid {what}: {value} (must be finite and > 0)")]
    NonPositive { what: &'static str, value: f64 },
    #[error("element area {area} m^2 exceeds the sphere area 4*pi*d^2 at d = {distance} m")]
    GainAboveUnity { area: f64, distance: f64 },
    #[error("gain {0} outside [0, 1]")]
    GainOutOfRange(f64),
    #[error("array size must be at least 1")]
    EmptyArray,
    #[error("N*beta exceeds 1: at most {n_max} elements fit on the sphere")]
    Saturated { n_max: u64 },
}

fn positive(what: &'static str, value: f64) -> Result<f64, PropagationError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(PropagationError::NonPositive { what, value })
    }
}

/// Wavelength and per-element aperture of an antenna or reflecting element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementGeometry {
    wavelength: f64,
    area: f64,
}

impl ElementGeometry {
    pub fn new(wavelength: f64, area: f64) -> Result<Self, PropagationError> {
        Ok(Self {
            wavelength: positive("wavelength", wavelength)?,
            area: positive("element area", area)?,
        })
    }

    /// Lossless isotropic element, `A = lambda^2 / (4 pi)`.
    pub fn isotropic(wavelength: f64) -> Result<Self, PropagationError> {
        let wavelength = positive("wavelength", wavelength)?;
        Self::new(wavelength, isotropic_area(wavelength))
    }

    pub fn from_frequency(frequency_hz: f64) -> Result<Self, PropagationError> {
        let f = positive("frequency", frequency_hz)?;
        Self::isotropic(SPEED_OF_LIGHT / f)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn area(&self) -> f64 {
        self.area
    }
}

pub fn isotropic_area(wavelength: f64) -> f64 {
    wavelength * wavelength / (4.0 * PI)
}

/// Perpendicular distance from the transmitter to the array centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationPath {
    distance: f64,
}

impl PropagationPath {
    pub fn new(distance: f64) -> Result<Self, PropagationError> {
        Ok(Self {
            distance: positive("distance", distance)?,
        })
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainModel {
    Spherical,
    PlanarExact,
    FarField,
}

impl fmt::Display for GainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GainModel::Spherical => "spherical",
            GainModel::PlanarExact => "planar-exact",
            GainModel::FarField => "far-field",
        })
    }
}

/// Total channel gain of an array (the fraction of transmit power collected).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalGain {
    pub value: f64,
    pub model: GainModel,
    /// For the spherical model: `N beta <= 1`. Otherwise: `N` is within the
    /// rule-of-thumb limit returned by [`rule_of_thumb_max`].
    pub far_field_valid: bool,
}

/// Free-space gain `beta = A / (4 pi d^2)` of one element.
pub fn free_space_gain(
    geom: &ElementGeometry,
    path: &PropagationPath,
) -> Result<f64, PropagationError> {
    let d = path.distance();
    let sphere = 4.0 * PI * d * d;
    if geom.area() > sphere {
        return Err(PropagationError::GainAboveUnity {
            area: geom.area(),
            distance: d,
        });
    }
    Ok(geom.area() / sphere)
}

/// Largest `N` with `N * beta <= 1` as evaluated in floating point, so that
/// the cap agrees exactly with the acceptance test in [`spherical_total_gain`].
pub fn spherical_capacity(beta: f64) -> u64 {
    if beta <= 0.0 {
        return u64::MAX;
    }
    let mut n = (1.0 / beta).floor().min(u64::MAX as f64) as u64;
    while n > 0 && n as f64 * beta > 1.0 {
        n -= 1;
    }
    while n < u64::MAX && (n + 1) as f64 * beta <= 1.0 {
        n += 1;
    }
    n
}

/// `N` antennas placed on the sphere around the transmitter each collect
/// `beta`. Errors instead of clamping once the sphere would be over-covered.
pub fn spherical_total_gain(n: u64, beta: f64) -> Result<TotalGain, PropagationError> {
    if n == 0 {
        return Err(PropagationError::EmptyArray);
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(PropagationError::GainOutOfRange(beta));
    }
    let value = n as f64 * beta;
    if value > 1.0 {
        return Err(PropagationError::Saturated {
            n_max: spherical_capacity(beta),
        });
    }
    Ok(TotalGain {
        value,
        model: GainModel::Spherical,
        far_field_valid: true,
    })
}

/// Exact gain of a broadside square planar array of `n` elements whose centre
/// is the closest point to the transmitter. Accurate in double precision for
/// `n * A` up to roughly 1e15 d^2.
pub fn planar_exact_gain(
    n: u64,
    geom: &ElementGeometry,
    path: &PropagationPath,
) -> Result<TotalGain, PropagationError> {
    if n == 0 {
        return Err(PropagationError::EmptyArray);
    }
    let d = path.distance();
    let total_area = n as f64 * geom.area();
    let arg = total_area / (4.0 * d * (total_area + d * d).sqrt());
    Ok(TotalGain {
        value: arg.atan() / PI,
        model: GainModel::PlanarExact,
        far_field_valid: n <= rule_of_thumb_max(geom, path),
    })
}

/// First-order (far-field) approximation of the planar gain, `N * beta`.
/// Never fails past the validity limit; the flag reports it instead.
pub fn far_field_gain(
    n: u64,
    geom: &ElementGeometry,
    path: &PropagationPath,
) -> Result<TotalGain, PropagationError> {
    if n == 0 {
        return Err(PropagationError::EmptyArray);
    }
    let beta = free_space_gain(geom, path)?;
    Ok(TotalGain {
        value: n as f64 * beta,
        model: GainModel::FarField,
        far_field_valid: n <= rule_of_thumb_max(geom, path),
    })
}

/// `floor(10 d^2 / A)`: the largest `N` satisfying `N A / 10 < d^2`.
pub fn rule_of_thumb_max(geom: &ElementGeometry, path: &PropagationPath) -> u64 {
    let d = path.distance();
    (10.0 * d * d / geom.area()).floor().min(u64::MAX as f64) as u64
}

/// `|N beta - alpha| / alpha`.
pub fn far_field_relative_error(
    n: u64,
    geom: &ElementGeometry,
    path: &PropagationPath,
) -> Result<f64, PropagationError> {
    let exact = planar_exact_gain(n, geom, path)?.value;
    let approx = far_field_gain(n, geom, path)?.value;
    Ok((approx - exact).abs() / exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda_01() -> ElementGeometry {
        ElementGeometry::isotropic(0.1).unwrap()
    }

    fn path(d: f64) -> PropagationPath {
        PropagationPath::new(d).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn isotropic_area_matches_lambda_squared_over_4pi() {
        let g = ElementGeometry::from_frequency(3e9).unwrap();
        let lambda = SPEED_OF_LIGHT / 3e9;
        assert!(rel(g.area(), lambda * lambda / (4.0 * PI)) < 1e-12);
    }

    #[test]
    fn rejects_non_positive_inputs() {
        assert!(ElementGeometry::new(0.0, 1.0).is_err());
        assert!(ElementGeometry::new(0.1, -1.0).is_err());
        assert!(ElementGeometry::new(f64::NAN, 1.0).is_err());
        assert!(PropagationPath::new(0.0).is_err());
        assert!(PropagationPath::new(f64::INFINITY).is_err());
    }

    #[test]
    fn free_space_gain_at_3ghz() {
        // A/(4 pi d^2) with A = lambda^2/(4 pi): lambda^2 / (16 pi^2 d^2)
        let lambda = 0.09993;
        let g = ElementGeometry::isotropic(lambda).unwrap();
        let beta = free_space_gain(&g, &path(2.5)).unwrap();
        let oracle = lambda * lambda / (16.0 * PI * PI * 6.25);
        assert!(rel(beta, oracle) < 1e-14);
        assert!(rel(beta, 1.0118e-5) < 1e-3);
        assert!((10.0 * beta.log10() - (-49.95)).abs() < 0.01);
    }

    #[test]
    fn free_space_gain_inverse_square() {
        let g = lambda_01();
        let near = free_space_gain(&g, &path(2.5)).unwrap();
        let far = free_space_gain(&g, &path(25.0)).unwrap();
        assert!(rel(near / far, 100.0) < 1e-14);
    }

    #[test]
    fn free_space_gain_vanishes_with_aperture() {
        let g = ElementGeometry::new(0.1, 1e-300).unwrap();
        assert!(free_space_gain(&g, &path(1.0)).unwrap() < 1e-299);
    }

    #[test]
    fn free_space_gain_rejects_oversized_element() {
        let g = ElementGeometry::new(0.1, 100.0).unwrap();
        assert!(matches!(
            free_space_gain(&g, &path(1.0)),
            Err(PropagationError::GainAboveUnity { .. })
        ));
        // Exactly 4 pi d^2 is the full sphere and still allowed.
        let g = ElementGeometry::new(0.1, 4.0 * PI).unwrap();
        assert_eq!(free_space_gain(&g, &path(1.0)).unwrap(), 1.0);
    }

    #[test]
    fn spherical_single_element_and_full_cover() {
        assert_eq!(spherical_total_gain(1, 1e-5).unwrap().value, 1e-5);
        let full = spherical_total_gain(100_000, 1e-5).unwrap();
        assert_eq!(full.value, 1.0);
        assert!(full.far_field_valid);
    }

    #[test]
    fn spherical_saturates_past_cap() {
        assert_eq!(
            spherical_total_gain(100_001, 1e-5),
            Err(PropagationError::Saturated { n_max: 100_000 })
        );
        assert_eq!(spherical_total_gain(0, 1e-5), Err(PropagationError::EmptyArray));
        assert!(spherical_total_gain(1, 1.5).is_err());
    }

    #[test]
    fn spherical_capacity_agrees_with_floor_of_inverse() {
        for beta in [0.3, 1e-3, 0.125, 1.0 / 3.0, 7.9e-6] {
            let cap = spherical_capacity(beta);
            assert!(cap as f64 * beta <= 1.0);
            assert!((cap + 1) as f64 * beta > 1.0);
            assert!((cap as f64 - (1.0 / beta).floor()).abs() <= 1.0);
        }
    }

    #[test]
    fn planar_reduces_to_free_space_in_far_field() {
        let g = ElementGeometry::new(0.1, 7.95e-4).unwrap();
        let p = path(25.0);
        let alpha = planar_exact_gain(1, &g, &p).unwrap().value;
        let beta = free_space_gain(&g, &p).unwrap();
        assert!(rel(alpha, beta) < 1e-3);
    }

    #[test]
    fn planar_gain_at_1e8_elements_near_half() {
        let alpha = planar_exact_gain(100_000_000, &lambda_01(), &path(2.5))
            .unwrap()
            .value;
        // Frozen from direct evaluation with atan2 (see oracle test below).
        assert!((alpha - 0.488_720_488_763_495).abs() < 1e-12);
        assert!((0.45..0.5).contains(&alpha));
    }

    #[test]
    fn planar_gain_matches_atan2_oracle() {
        let g = lambda_01();
        for &(n, d) in &[(1u64, 2.5), (802, 2.5), (78_539, 2.5), (10u64.pow(12), 25.0)] {
            let t = n as f64 * g.area();
            let oracle = t.atan2(4.0 * d * (t + d * d).sqrt()) / PI;
            let got = planar_exact_gain(n, &g, &path(d)).unwrap().value;
            assert!(rel(got, oracle) < 1e-14, "n={n} d={d}");
        }
    }

    #[test]
    fn planar_gain_limit() {
        let g = lambda_01();
        let p = path(2.5);
        let n = (1e9 * 6.25 / g.area()) as u64;
        let alpha = planar_exact_gain(n, &g, &p).unwrap().value;
        assert!(alpha > 0.49 && alpha < 0.5);
    }

    #[test]
    fn far_field_gain_is_linear() {
        let g = lambda_01();
        let p = path(2.5);
        let beta = free_space_gain(&g, &p).unwrap();
        assert_eq!(far_field_gain(1, &g, &p).unwrap().value, beta);
        assert_eq!(far_field_gain(100, &g, &p).unwrap().value, 100.0 * beta);
        assert!(!far_field_gain(10_000_000, &g, &p).unwrap().far_field_valid);
    }

    #[test]
    fn rule_of_thumb_counts() {
        // 10 d^2 / A with A = 0.01/(4 pi): 25000 pi and 2500000 pi.
        let g = lambda_01();
        assert_eq!(rule_of_thumb_max(&g, &path(2.5)), 78_539);
        assert_eq!(rule_of_thumb_max(&g, &path(25.0)), 7_853_981);
        let a = rule_of_thumb_max(&g, &path(5.0));
        let b = rule_of_thumb_max(&g, &path(10.0));
        assert!((b as i64 - 4 * a as i64).abs() <= 4);
    }

    #[test]
    fn relative_error_deep_far_field() {
        let e = far_field_relative_error(1, &lambda_01(), &path(25.0)).unwrap();
        assert!(e < 1e-6);
    }

    /// Linear scan with an independently written error expression.
    fn first_exceeding(d: f64, threshold: f64) -> u64 {
        let a = 0.01 / (4.0 * PI);
        let mut n = 1u64;
        loop {
            let t = n as f64 * a;
            let exact = t.atan2(4.0 * d * (t + d * d).sqrt()) / PI;
            let approx = t / (4.0 * PI * d * d);
            if (approx / exact - 1.0).abs() > threshold {
                return n;
            }
            n += 1;
        }
    }

    #[test]
    fn five_percent_crossing_matches_scan() {
        let g = lambda_01();
        for d in [2.5, 25.0] {
            let p = path(d);
            let n = first_exceeding(d, 0.05);
            assert!(far_field_relative_error(n, &g, &p).unwrap() > 0.05);
            assert!(far_field_relative_error(n - 1, &g, &p).unwrap() <= 0.05);
        }
        // Frozen: the crossing sits near N A / d^2 = 0.1.
        assert_eq!(first_exceeding(2.5, 0.05), 802);
        assert_eq!(first_exceeding(25.0, 0.05), 80_163);
    }

    #[test]
    fn error_at_rule_of_thumb_point() {
        // N A / d^2 = 10 at the rule-of-thumb point, independent of d.
        let g = lambda_01();
        let p = path(2.5);
        let n = rule_of_thumb_max(&g, &p);
        let e = far_field_relative_error(n, &g, &p).unwrap();
        assert!((e - 2.870_455_146).abs() < 1e-6, "{e}");
    }
}
