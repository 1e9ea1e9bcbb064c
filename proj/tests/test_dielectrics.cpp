#include "thzchan/dielectrics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "thzchan/mediadb.hpp"

using namespace thzchan;

namespace {

const DebyeParameters water{3.48, 78.36, 4.93, 8.24e-12, 0.18e-12};

std::vector<double> band_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
  }
  return grid;
}

}  // namespace

TEST_CASE("frequency point factories keep f, omega and lambda_0 consistent") {
  const FrequencyPoint fp = FrequencyPoint::from_frequency(1e12);
  CHECK(fp.f == 1e12);
  CHECK(fp.omega == doctest::Approx(2.0 * std::numbers::pi * 1e12).epsilon(1e-15));
  CHECK(fp.lambda_0 * fp.f == doctest::Approx(speed_of_light).epsilon(1e-15));

  const FrequencyPoint fw = FrequencyPoint::from_wavelength(3e-4);
  CHECK(fw.lambda_0 == 3e-4);
  CHECK(fw.f * fw.lambda_0 == doctest::Approx(speed_of_light).epsilon(1e-15));

  CHECK_THROWS_AS(FrequencyPoint::from_frequency(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FrequencyPoint::from_frequency(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FrequencyPoint::from_wavelength(0.0), std::invalid_argument);
}

TEST_CASE("water permittivity at 1 THz matches the high-precision oracle") {
  const auto eps = complex_permittivity(water, FrequencyPoint::from_frequency(1e12));
  // Frozen from the 50-digit evaluation of the double-Debye model.
  CHECK(eps.eps_real == doctest::Approx(4.1435998773059531).epsilon(1e-12));
  CHECK(eps.eps_imag == doctest::Approx(2.1373088460371745).epsilon(1e-12));

  const auto big_eps = testoracle::permittivity(3.48, 78.36, 4.93, 8.24e-12, 0.18e-12, 1e12);
  CHECK(testoracle::rel_error(eps.eps_real, big_eps.real) <= 1e-12);
  CHECK(testoracle::rel_error(eps.eps_imag, big_eps.imag) <= 1e-12);
}

TEST_CASE("low-frequency limit recovers the static permittivity") {
  const auto eps = complex_permittivity(water, FrequencyPoint::from_frequency(1.0));
  CHECK(eps.eps_real == doctest::Approx(78.36).epsilon(1e-6));
  CHECK(std::abs(eps.eps_imag) <= 1e-6);
}

TEST_CASE("zero relaxation strengths give a constant lossless permittivity") {
  const DebyeParameters flat{3.0, 3.0, 3.0, 1e-12, 1e-13};
  const auto eps = complex_permittivity(flat, FrequencyPoint::from_frequency(5e11));
  CHECK(eps.eps_real == 3.0);
  CHECK(eps.eps_imag == 0.0);
}

TEST_CASE("high-frequency limit recovers eps_inf") {
  const auto eps = complex_permittivity(water, FrequencyPoint::from_frequency(1e18));
  CHECK(eps.eps_real == doctest::Approx(3.48).epsilon(1e-6));
}

TEST_CASE("debye parameter validation") {
  CHECK_THROWS_AS((DebyeParameters{3.48, 78.36, 4.93, 0.0, 1e-13}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((DebyeParameters{3.48, 78.36, 4.93, 1e-12, -1e-13}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((DebyeParameters{0.9, 78.36, 4.93, 1e-12, 1e-13}.validate()),
                  std::invalid_argument);
  // eps_1 >= eps_2 >= eps_inf
  CHECK_THROWS_AS((DebyeParameters{3.48, 4.0, 5.0, 1e-12, 1e-13}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((DebyeParameters{3.48, 78.36, 2.0, 1e-12, 1e-13}.validate()),
                  std::invalid_argument);
  DebyeParameters nan_params = water;
  nan_params.eps_1 = std::nan("");
  CHECK_THROWS_AS(nan_params.validate(), std::invalid_argument);
}

TEST_CASE("refractive index extraction") {
  SUBCASE("derived pair") {
    const auto n = refractive_index({4.155, 2.127});
    CHECK(n.n_real == doctest::Approx(2.1003307206686506).epsilon(1e-12));
    CHECK(n.n_imag == doctest::Approx(0.50634882856040383).epsilon(1e-12));
  }
  SUBCASE("lossless medium") {
    const auto n = refractive_index({4.0, 0.0});
    CHECK(n.n_real == 2.0);
    CHECK(n.n_imag == 0.0);
  }
  SUBCASE("pure imaginary permittivity has n' = n''") {
    const auto n = refractive_index({0.0, 4.5});
    CHECK(n.n_real == doctest::Approx(std::sqrt(2.25)).epsilon(1e-15));
    CHECK(n.n_imag == doctest::Approx(std::sqrt(2.25)).epsilon(1e-15));
  }
  SUBCASE("rejects negative real part and negative loss") {
    CHECK_THROWS_AS(refractive_index({-0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(refractive_index({1.0, -0.1}), std::invalid_argument);
  }
}

TEST_CASE("index round-trip reconstructs the permittivity") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> real_dist(0.0, 100.0);
  std::uniform_real_distribution<double> imag_dist(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const ComplexPermittivity eps{real_dist(rng), imag_dist(rng)};
    const auto n = refractive_index(eps);
    const std::complex<double> square = n.value() * n.value();
    const double scale = std::max(std::hypot(eps.eps_real, eps.eps_imag), 1e-300);
    CHECK(std::abs(square.real() - eps.eps_real) / scale <= 1e-12);
    CHECK(std::abs(-square.imag() - eps.eps_imag) / scale <= 1e-12);
  }
}

TEST_CASE("guided wavelength") {
  const FrequencyPoint fp = FrequencyPoint::from_wavelength(300e-6);
  CHECK(guided_wavelength(fp, {2.100, 0.0}) ==
        doctest::Approx(142.857142857e-6).epsilon(1e-9));
  CHECK(guided_wavelength(fp, {1.0, 0.0}) == fp.lambda_0);
  CHECK(guided_wavelength(fp, {3.0, 0.0}) == doctest::Approx(100e-6).epsilon(1e-15));
  CHECK_THROWS_AS(guided_wavelength(fp, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("absorption coefficient and the wavelength convention switch") {
  const RefractiveIndex n{2.100, 0.5064};
  // 4 pi n'' / wavelength, frozen from the 50-digit evaluation
  CHECK(absorption_coefficient(n, 142.86e-6) ==
        doctest::Approx(44544.379666187073).epsilon(1e-12));
  CHECK(absorption_coefficient(n, 300e-6) ==
        doctest::Approx(21212.033597038284).epsilon(1e-12));
  CHECK(absorption_coefficient({2.1, 0.0}, 142.86e-6) == 0.0);
  CHECK_THROWS_AS(absorption_coefficient(n, 0.0), std::invalid_argument);
}

TEST_CASE("optical state ties the pieces together") {
  const FrequencyPoint fp = FrequencyPoint::from_frequency(1e12);
  const OpticalState guided = evaluate_optical_state(water, fp);
  CHECK(guided.lambda_g == fp.lambda_0 / guided.index.n_real);
  CHECK(guided.mu_abs >= 0.0);

  const OpticalState free_space =
      evaluate_optical_state(water, fp, AbsorptionWavelength::free_space);
  // The two conventions differ by exactly the factor n'.
  CHECK(free_space.mu_abs * guided.index.n_real ==
        doctest::Approx(guided.mu_abs).epsilon(1e-12));
}

TEST_CASE("bundled media stay dispersive and monotone over the band") {
  const MediumDatabase db = MediumDatabase::bundled();
  for (const std::string& id : db.medium_ids()) {
    const MediumRecord& rec = db.medium(id);
    double prev_real = 0.0;
    bool first = true;
    for (double f : band_grid(rec.valid_band.f_min, rec.valid_band.f_max, 64)) {
      const auto eps = complex_permittivity(rec.debye, FrequencyPoint::from_frequency(f));
      CHECK(eps.eps_imag > 0.0);
      if (!first) CHECK(eps.eps_real < prev_real);
      prev_real = eps.eps_real;
      first = false;

      const auto n = refractive_index(eps);
      CHECK(n.n_real >= 1.0);
      CHECK(n.n_imag >= 0.0);
    }
  }
}

TEST_CASE("implementation tracks the arbitrary-precision oracle on a dense grid") {
  const MediumDatabase db = MediumDatabase::bundled();
  for (const std::string& id : db.medium_ids()) {
    const MediumRecord& rec = db.medium(id);
    for (double f : band_grid(rec.valid_band.f_min, rec.valid_band.f_max, 100)) {
      const auto eps = complex_permittivity(rec.debye, FrequencyPoint::from_frequency(f));
      const auto n = refractive_index(eps);
      const auto big_eps = testoracle::permittivity(
          rec.debye.eps_inf, rec.debye.eps_1, rec.debye.eps_2, rec.debye.tau_1,
          rec.debye.tau_2, f);
      const auto big_n = testoracle::refractive_index(big_eps);
      CHECK(testoracle::rel_error(eps.eps_real, big_eps.real) <= 1e-12);
      CHECK(testoracle::rel_error(eps.eps_imag, big_eps.imag) <= 1e-12);
      CHECK(testoracle::rel_error(n.n_real, big_n.real) <= 1e-12);
      CHECK(testoracle::rel_error(n.n_imag, big_n.imag) <= 1e-12);
    }
  }
}
