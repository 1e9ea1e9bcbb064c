#include "thzchan/dielectrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thzchan {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace

double decibels_per_neper() { return 10.0 / std::log(10.0); }

void DebyeParameters::validate() const {
  require_finite(eps_inf, "eps_inf");
  require_finite(eps_1, "eps_1");
  require_finite(eps_2, "eps_2");
  require_finite(tau_1, "tau_1");
  require_finite(tau_2, "tau_2");
  if (tau_1 <= 0.0) throw std::invalid_argument("tau_1 must be > 0");
  if (tau_2 <= 0.0) throw std::invalid_argument("tau_2 must be > 0");
  if (eps_inf < 1.0) throw std::invalid_argument("eps_inf must be >= 1");
  if (eps_1 < eps_2 || eps_2 < eps_inf) {
    throw std::invalid_argument(
        "relaxation strengths must be non-negative (eps_1 >= eps_2 >= eps_inf)");
  }
}

FrequencyPoint FrequencyPoint::from_frequency(double f_hz) {
  require_finite(f_hz, "frequency");
  if (f_hz <= 0.0) throw std::invalid_argument("frequency must be > 0");
  return {f_hz, 2.0 * std::numbers::pi * f_hz, speed_of_light / f_hz};
}

FrequencyPoint FrequencyPoint::from_wavelength(double lambda0_m) {
  require_finite(lambda0_m, "wavelength");
  if (lambda0_m <= 0.0) throw std::invalid_argument("wavelength must be > 0");
  double f = speed_of_light / lambda0_m;
  return {f, 2.0 * std::numbers::pi * f, lambda0_m};
}

ComplexPermittivity complex_permittivity(const DebyeParameters& params,
                                         const FrequencyPoint& freq) {
  params.validate();
  require_finite(freq.omega, "omega");
  if (freq.f <= 0.0) throw std::invalid_argument("frequency must be > 0");

  const double wt1 = freq.omega * params.tau_1;
  const double wt2 = freq.omega * params.tau_2;
  const double d1 = 1.0 + wt1 * wt1;
  const double d2 = 1.0 + wt2 * wt2;
  const double s1 = params.eps_1 - params.eps_2;    // slow relaxation strength
  const double s2 = params.eps_2 - params.eps_inf;  // fast relaxation strength

  return {params.eps_inf + s1 / d1 + s2 / d2, s1 * wt1 / d1 + s2 * wt2 / d2};
}

RefractiveIndex refractive_index(const ComplexPermittivity& eps) {
  require_finite(eps.eps_real, "eps_real");
  require_finite(eps.eps_imag, "eps_imag");
  if (eps.eps_imag < 0.0) {
    throw std::invalid_argument("eps_imag must be >= 0 for a passive medium");
  }
  if (eps.eps_real < 0.0) {
    throw std::invalid_argument("eps_real must be >= 0 (outside model validity)");
  }
  const double mag = std::hypot(eps.eps_real, eps.eps_imag);
  return {std::sqrt((mag + eps.eps_real) / 2.0),
          std::sqrt((mag - eps.eps_real) / 2.0)};
}

double guided_wavelength(const FrequencyPoint& freq, const RefractiveIndex& index) {
  if (index.n_real <= 0.0) throw std::invalid_argument("n_real must be > 0");
  return freq.lambda_0 / index.n_real;
}

double absorption_coefficient(const RefractiveIndex& index, double wavelength_m) {
  if (wavelength_m <= 0.0) throw std::invalid_argument("wavelength must be > 0");
  if (index.n_imag < 0.0) throw std::invalid_argument("n_imag must be >= 0");
  return 4.0 * std::numbers::pi * index.n_imag / wavelength_m;
}

OpticalState evaluate_optical_state(const DebyeParameters& params,
                                    const FrequencyPoint& freq,
                                    AbsorptionWavelength convention) {
  OpticalState state;
  state.frequency = freq;
  state.permittivity = complex_permittivity(params, freq);
  state.index = refractive_index(state.permittivity);
  state.lambda_g = guided_wavelength(freq, state.index);
  const double wavelength = convention == AbsorptionWavelength::guided
                                ? state.lambda_g
                                : freq.lambda_0;
  state.mu_abs = absorption_coefficient(state.index, wavelength);
  return state;
}

}  // namespace thzchan
