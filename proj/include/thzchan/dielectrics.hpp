#pragma once

#include <complex>

namespace thzchan {

/// Exact SI speed of light, m/s.
inline constexpr double speed_of_light = 299792458.0;

/// 10*log10(e), the dB-per-neper conversion used by the exponential loss
/// terms. Derived from the platform log, not a decimal literal.
double decibels_per_neper();

/// Double-Debye relaxation constants describing a dispersive medium.
///
/// The model is a sum of two first-order relaxations: a slow process with
/// strength (eps_1 - eps_2) and time constant tau_1, and a fast process with
/// strength (eps_2 - eps_inf) and time constant tau_2.
struct DebyeParameters {
  double eps_inf = 1.0;  // high-frequency permittivity limit
  double eps_1 = 1.0;    // static (low-frequency) permittivity
  double eps_2 = 1.0;    // intermediate permittivity between the relaxations
  double tau_1 = 0.0;    // slow relaxation time, s
  double tau_2 = 0.0;    // fast relaxation time, s

  /// Throws std::invalid_argument unless tau_1, tau_2 > 0, eps_inf >= 1 and
  /// eps_1 >= eps_2 >= eps_inf (non-negative relaxation strengths).
  void validate() const;
};

/// A single operating frequency with its derived angular frequency and
/// free-space wavelength. Construct through the factories so the three
/// representations stay consistent.
struct FrequencyPoint {
  double f = 0.0;         // Hz
  double omega = 0.0;     // rad/s
  double lambda_0 = 0.0;  // m

  static FrequencyPoint from_frequency(double f_hz);
  static FrequencyPoint from_wavelength(double lambda0_m);
};

/// Relative permittivity eps = eps_real - j*eps_imag. Both fields are stored
/// as non-negative magnitudes; the sign convention lives in value().
struct ComplexPermittivity {
  double eps_real = 1.0;
  double eps_imag = 0.0;

  std::complex<double> value() const { return {eps_real, -eps_imag}; }
};

/// Complex refractive index n = n_real - j*n_imag, same magnitude-storage
/// convention as ComplexPermittivity.
struct RefractiveIndex {
  double n_real = 1.0;
  double n_imag = 0.0;

  std::complex<double> value() const { return {n_real, -n_imag}; }
};

/// Which wavelength enters the denominator of the absorption coefficient.
/// `guided` uses the in-medium wavelength lambda_g; `free_space` uses the
/// vacuum wavelength lambda_0 (the convention most published attenuation
/// figures assume).
enum class AbsorptionWavelength { guided, free_space };

/// Everything derived from (medium, frequency): permittivity, refractive
/// index, guided wavelength and molecular absorption coefficient.
struct OpticalState {
  FrequencyPoint frequency;
  ComplexPermittivity permittivity;
  RefractiveIndex index;
  double lambda_g = 0.0;  // guided wavelength, m
  double mu_abs = 0.0;    // molecular absorption coefficient, 1/m
};

/// Evaluates the double-Debye model at one frequency.
ComplexPermittivity complex_permittivity(const DebyeParameters& params,
                                         const FrequencyPoint& freq);

/// Extracts n = n' - j n'' from eps = eps' - j eps'' on the branch with
/// n', n'' >= 0, i.e. n' = sqrt((|eps| + eps')/2) and
/// n'' = sqrt((|eps| - eps')/2). Rejects eps_real < 0.
RefractiveIndex refractive_index(const ComplexPermittivity& eps);

/// Wavelength inside the medium, lambda_0 / n'.
double guided_wavelength(const FrequencyPoint& freq, const RefractiveIndex& index);

/// Molecular absorption coefficient 4*pi*n'' / wavelength. The caller picks
/// the wavelength convention (guided or free-space).
double absorption_coefficient(const RefractiveIndex& index, double wavelength_m);

/// Full per-frequency pipeline: permittivity -> index -> guided wavelength ->
/// absorption coefficient under the requested wavelength convention.
OpticalState evaluate_optical_state(
    const DebyeParameters& params, const FrequencyPoint& freq,
    AbsorptionWavelength convention = AbsorptionWavelength::guided);

}  // namespace thzchan
