#pragma once

#include <complex>
#include <span>

#include "thzchan/dielectrics.hpp"

namespace thzchan {

/// Gaussian beam width of the transmit nano-antenna, radians in [0, pi].
struct BeamSpec {
  double delta_theta = 0.0;
};

/// Line-of-sight channel geometry; just the path length for now.
struct ChannelGeometry {
  double distance = 0.0;  // m
};

enum class ParticleSizeClass { small, large };

/// A monodisperse scatterer population suspended in the medium.
struct ParticlePopulation {
  double radius = 0.0;           // particle radius r, m
  double volume_fraction = 0.0;  // k in (0, 1)
  double sigma_abs = 0.0;        // molecular absorption cross section, m^2
  ParticleSizeClass size_class = ParticleSizeClass::small;

  /// Number density rho_v = k / ((4/3) pi r^3), 1/m^3.
  double number_density() const;
  /// Geometric cross section sigma_g = pi r^2, m^2.
  double geometric_cross_section() const;

  void validate() const;
};

/// Per-population scattering diagnostics: size parameter, phase delay, the
/// two efficiency factors and the resulting scattering coefficients.
struct ScatteringDetail {
  double psi = 0.0;       // size parameter 2 pi r / lambda_g
  double p = 0.0;         // phase delay 4 pi r (n' - 1) / lambda_0
  double q_small = 0.0;   // Rayleigh efficiency (small size class)
  double q_large = 0.0;   // anomalous-diffraction efficiency (large size class)
  double mu_small = 0.0;  // 1/m
  double mu_large = 0.0;  // 1/m
  bool clamped = false;   // set when a negative efficiency was clamped to 0
};

/// The three loss components and their sum, all in dB. total_db is always
/// the exact floating-point sum of the three components.
struct LossBreakdown {
  double spreading_db = 0.0;
  double absorption_db = 0.0;
  double scattering_db = 0.0;
  double total_db = 0.0;
};

/// Directivity of a Gaussian-beam source of width delta_theta:
/// D = 24 / (8 - 3c - 3c^2 - c^3) with c = cos(delta_theta).
/// D(0) = 24, D(pi) = 8/3, non-increasing in between.
double directivity(const BeamSpec& beam);

/// Spherical spreading loss -10 log10 [ D (lambda_g / (4 pi d))^2 ].
/// May go negative for d within a guided wavelength of the source; the
/// formula targets d >> lambda_g and is left unclamped.
double spreading_loss(double d_directivity, double lambda_g,
                      const ChannelGeometry& geom);

/// Beer-Lambert molecular absorption, -10 log10(exp(-mu_abs d)), evaluated
/// as 10 log10(e) mu_abs d.
double absorption_loss(double mu_abs, const ChannelGeometry& geom);

/// Rayleigh extinction efficiency for particles small against the
/// wavelength: (8/3) psi^4 [Re((n^2-1)/(n^2+2))]^2.
double rayleigh_efficiency(double psi, std::complex<double> n);

/// Anomalous-diffraction extinction efficiency for large optically soft
/// particles: 2 - (4/p) sin p + (4/p^2)(1 - cos p) - sigma_abs/sigma_g,
/// with the series limit p^2/2 - sigma_abs/sigma_g used for p <= 1e-4.
double adt_efficiency(double p, double sigma_abs, double sigma_g);

/// Size parameter, phase delay, the efficiency for the population's size
/// class and the scattering coefficients mu = rho_v Q sigma_g. A negative
/// efficiency is clamped to zero with the `clamped` flag set.
ScatteringDetail scattering_coefficients(const ParticlePopulation& pop,
                                         const OpticalState& optical);

/// -10 log10(exp(-(sum mu) d)) over all populations.
double scattering_loss(std::span<const ScatteringDetail> details,
                       const ChannelGeometry& geom);

/// Full pipeline for one (medium, frequency, distance, beam) tuple:
/// Debye -> index -> guided wavelength -> directivity -> the three loss
/// components. Populations may be empty.
LossBreakdown total_path_loss(
    const DebyeParameters& medium, const FrequencyPoint& freq,
    const ChannelGeometry& geom, const BeamSpec& beam,
    std::span<const ParticlePopulation> populations = {},
    AbsorptionWavelength convention = AbsorptionWavelength::guided);

}  // namespace thzchan
