#include "thzchan/pathloss.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "thzchan/mediadb.hpp"

using namespace thzchan;

namespace {

constexpr double pi = std::numbers::pi;

const DebyeParameters water{3.48, 78.36, 4.93, 8.24e-12, 0.18e-12};

OpticalState water_state_at(double lambda0) {
  return evaluate_optical_state(water, FrequencyPoint::from_wavelength(lambda0));
}

}  // namespace

TEST_CASE("directivity endpoints and the 0.5 rad operating point") {
  CHECK(std::abs(directivity({0.0}) - 24.0) <= 1e-9);
  CHECK(std::abs(directivity({pi}) - 8.0 / 3.0) <= 1e-9);
  // Frozen from the 50-digit evaluation; the displayed 10.080 rounds it.
  CHECK(directivity({0.5}) == doctest::Approx(10.080104771090663).epsilon(1e-12));
  CHECK(std::abs(directivity({0.5}) - 10.080) <= 2e-4);
}

TEST_CASE("directivity is positive and non-increasing over [0, pi]") {
  double prev = directivity({0.0});
  for (int i = 1; i <= 100; ++i) {
    const double theta = pi * static_cast<double>(i) / 100.0;
    const double d = directivity({theta});
    CHECK(d > 0.0);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
}

TEST_CASE("directivity tracks the oracle and rejects out-of-range widths") {
  for (double theta : {0.01, 0.3, 0.5, 1.0, 1.5, 2.5, 3.0}) {
    CHECK(testoracle::rel_error(directivity({theta}), testoracle::directivity(theta)) <=
          1e-12);
  }
  CHECK_THROWS_AS(directivity({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(directivity({pi + 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(directivity({std::nan("")}), std::invalid_argument);
}

TEST_CASE("beam-width plateau between 1.5 and 3 rad is under 1 dB") {
  CHECK(10.0 * std::log10(directivity({1.5}) / directivity({3.0})) <= 1.0);
}

TEST_CASE("spreading loss") {
  SUBCASE("unit argument gives zero dB") {
    const double lambda_g = 150e-6;
    CHECK(std::abs(spreading_loss(1.0, lambda_g, {lambda_g / (4.0 * pi)})) <= 1e-12);
  }
  SUBCASE("derived operating point") {
    CHECK(spreading_loss(10.080, 150e-6, {1e-3}) ==
          doctest::Approx(28.427766778233235).epsilon(1e-12));
  }
  SUBCASE("doubling directivity buys exactly 10 log10(2)") {
    const double base = spreading_loss(5.0, 150e-6, {1e-3});
    const double doubled = spreading_loss(10.0, 150e-6, {1e-3});
    CHECK(std::abs((base - doubled) - 10.0 * std::log10(2.0)) <= 1e-12);
  }
  SUBCASE("near-field values go negative, unclamped") {
    const double lambda_g = 150e-6;
    CHECK(spreading_loss(1.0, lambda_g, {lambda_g / (8.0 * pi)}) < 0.0);
  }
  SUBCASE("rejects non-positive inputs") {
    CHECK_THROWS_AS(spreading_loss(0.0, 150e-6, {1e-3}), std::invalid_argument);
    CHECK_THROWS_AS(spreading_loss(1.0, 0.0, {1e-3}), std::invalid_argument);
    CHECK_THROWS_AS(spreading_loss(1.0, 150e-6, {0.0}), std::invalid_argument);
  }
}

TEST_CASE("absorption loss") {
  CHECK(absorption_loss(0.0, {1e-3}) == 0.0);
  CHECK(absorption_loss(1.0, {1.0}) == doctest::Approx(4.3429448190325175).epsilon(1e-12));
  CHECK(absorption_loss(4.455e4, {1e-3}) == doctest::Approx(193.5).epsilon(2e-4));

  SUBCASE("linear in both arguments") {
    const double one = absorption_loss(123.0, {1e-3});
    CHECK(absorption_loss(246.0, {1e-3}) == doctest::Approx(2.0 * one).epsilon(1e-12));
    CHECK(absorption_loss(123.0, {2e-3}) == doctest::Approx(2.0 * one).epsilon(1e-12));
  }
  SUBCASE("matches the independent transmittance route") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_dist(1e-2, 1e5);
    std::uniform_real_distribution<double> d_dist(1e-5, 5e-3);
    for (int i = 0; i < 1000; ++i) {
      const double mu = mu_dist(rng);
      const double d = d_dist(rng);
      const double direct = -10.0 * std::log10(std::exp(-mu * d));
      CHECK(absorption_loss(mu, {d}) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("rayleigh efficiency") {
  CHECK(rayleigh_efficiency(0.0, {2.0, 0.0}) == 0.0);
  CHECK(rayleigh_efficiency(1.0, {2.0, 0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rayleigh_efficiency(2.0, {2.0, 0.0}) == doctest::Approx(32.0 / 3.0).epsilon(1e-12));

  SUBCASE("scales as the fourth power of the size parameter") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> psi_dist(0.01, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double psi = psi_dist(rng);
      const std::complex<double> n{2.1, -0.5};
      CHECK(rayleigh_efficiency(2.0 * psi, n) ==
            doctest::Approx(16.0 * rayleigh_efficiency(psi, n)).epsilon(1e-12));
    }
  }
  SUBCASE("rejects the n^2 = -2 pole") {
    CHECK_THROWS_AS(rayleigh_efficiency(1.0, {0.0, std::sqrt(2.0)}),
                    std::invalid_argument);
  }
}

TEST_CASE("anomalous diffraction efficiency") {
  const double sigma_g = pi * 1e-12;
  CHECK(adt_efficiency(1e-9, 0.0, sigma_g) == doctest::Approx(5e-19).epsilon(1e-9));
  CHECK(adt_efficiency(pi, 0.0, sigma_g) ==
        doctest::Approx(2.8105694691387022).epsilon(1e-12));
  CHECK(std::abs(adt_efficiency(2.0 * pi, 0.0, sigma_g) - 2.0) <= 1e-12);

  SUBCASE("series branch agrees with the closed form in 50-digit arithmetic") {
    for (double p : {1e-6, 1e-5, 1e-4}) {
      const double series = adt_efficiency(p, 0.0, sigma_g);
      const double closed = testoracle::to_double(testoracle::adt_closed(p, 0.0, sigma_g));
      CHECK(std::abs(series - closed) <= 1e-9);
    }
  }
  SUBCASE("closed-form branch agrees with the oracle") {
    for (double p : {1e-3, 0.1, 1.0, 2.0, 5.0, 10.0}) {
      CHECK(testoracle::rel_error(adt_efficiency(p, 0.0, sigma_g),
                                  testoracle::adt_closed(p, 0.0, sigma_g)) <= 1e-12);
    }
  }
}

TEST_CASE("scattering coefficients for a red-blood-cell-like population") {
  const ParticlePopulation rbc{4e-6, 0.45, 0.0, ParticleSizeClass::small};
  CHECK(rbc.number_density() == doctest::Approx(1.6786e15).epsilon(1e-4));
  CHECK(rbc.geometric_cross_section() == doctest::Approx(5.0265e-11).epsilon(1e-4));

  const OpticalState optical = water_state_at(3e-4);
  const ScatteringDetail detail = scattering_coefficients(rbc, optical);
  CHECK(detail.psi == doctest::Approx(2.0 * pi * 4e-6 / optical.lambda_g).epsilon(1e-15));
  CHECK(detail.psi == doctest::Approx(0.1759).epsilon(1e-3));
  CHECK(detail.q_large == 0.0);
  CHECK(detail.mu_large == 0.0);
  CHECK(detail.mu_small > 0.0);
  CHECK_FALSE(detail.clamped);

  SUBCASE("vanishing volume fraction removes the scatterers") {
    ParticlePopulation sparse = rbc;
    sparse.volume_fraction = 1e-12;
    const ScatteringDetail thin = scattering_coefficients(sparse, optical);
    CHECK(thin.mu_small ==
          doctest::Approx(detail.mu_small * 1e-12 / 0.45).epsilon(1e-12));
    CHECK(thin.mu_small < 1e-9);
  }
  SUBCASE("oversized scatterers are a configuration error") {
    ParticlePopulation huge = rbc;
    huge.radius = 2e-3;
    CHECK_THROWS_AS(scattering_coefficients(huge, optical), std::invalid_argument);
  }
}

TEST_CASE("negative large-particle efficiency is clamped and flagged") {
  // Small phase delay with a absorption cross section near the geometric
  // bound drives the closed form negative.
  ParticlePopulation pop{1e-6, 0.1, 0.0, ParticleSizeClass::large};
  pop.sigma_abs = pop.geometric_cross_section();
  const OpticalState optical =
      evaluate_optical_state(water, FrequencyPoint::from_frequency(1e11));
  const ScatteringDetail detail = scattering_coefficients(pop, optical);
  CHECK(detail.q_large == 0.0);
  CHECK(detail.mu_large == 0.0);
  CHECK(detail.clamped);

  pop.sigma_abs = 3.0 * pop.geometric_cross_section();
  CHECK_THROWS_AS(pop.validate(), std::invalid_argument);
}

TEST_CASE("scattering loss") {
  CHECK(scattering_loss({}, {1e-3}) == 0.0);

  ScatteringDetail unit;
  unit.mu_small = 1e3;
  CHECK(scattering_loss(std::vector{unit}, {1e-3}) ==
        doctest::Approx(4.3429448190325175).epsilon(1e-12));

  const std::vector<ScatteringDetail> twice{unit, unit};
  CHECK(scattering_loss(twice, {1e-3}) ==
        2.0 * scattering_loss(std::vector{unit}, {1e-3}));
}

TEST_CASE("total path loss composition") {
  const FrequencyPoint freq = FrequencyPoint::from_wavelength(3e-4);
  const ChannelGeometry geom{1e-3};
  const BeamSpec beam{0.5};

  SUBCASE("lossless medium leaves only spreading") {
    const DebyeParameters lossless{3.0, 3.0, 3.0, 1e-12, 1e-13};
    const LossBreakdown loss = total_path_loss(lossless, freq, geom, beam);
    CHECK(loss.absorption_db == 0.0);
    CHECK(loss.scattering_db == 0.0);
    CHECK(loss.total_db == loss.spreading_db);
  }

  SUBCASE("pipeline is bit-identical to composing the operations") {
    const std::vector<ParticlePopulation> pops{
        {4e-6, 0.45, 0.0, ParticleSizeClass::small}};
    const LossBreakdown loss = total_path_loss(water, freq, geom, beam, pops);

    const OpticalState optical = evaluate_optical_state(water, freq);
    const double spr = spreading_loss(directivity(beam), optical.lambda_g, geom);
    const double abs_db = absorption_loss(optical.mu_abs, geom);
    const std::vector<ScatteringDetail> details{
        scattering_coefficients(pops[0], optical)};
    const double sca = scattering_loss(details, geom);

    CHECK(loss.spreading_db == spr);
    CHECK(loss.absorption_db == abs_db);
    CHECK(loss.scattering_db == sca);
    CHECK(loss.total_db == spr + abs_db + sca);
  }

  SUBCASE("distance doubling follows the closed-form delta") {
    const OpticalState optical = evaluate_optical_state(water, freq);
    const LossBreakdown at_1mm = total_path_loss(water, freq, {1e-3}, beam);
    const LossBreakdown at_2mm = total_path_loss(water, freq, {2e-3}, beam);
    const double expected =
        20.0 * std::log10(2.0) + decibels_per_neper() * optical.mu_abs * 1e-3;
    CHECK(std::abs((at_2mm.total_db - at_1mm.total_db) - expected) <= 1e-9);
  }

  SUBCASE("breakdown stays additive for random inputs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> f_dist(1e11, 1e12);
    std::uniform_real_distribution<double> d_dist(1e-4, 2e-3);
    std::uniform_real_distribution<double> beam_dist(0.0, pi);
    for (int i = 0; i < 1000; ++i) {
      const LossBreakdown loss =
          total_path_loss(water, FrequencyPoint::from_frequency(f_dist(rng)),
                          {d_dist(rng)}, {beam_dist(rng)});
      CHECK(loss.total_db ==
            loss.spreading_db + loss.absorption_db + loss.scattering_db);
      CHECK(loss.absorption_db >= 0.0);
      CHECK(loss.scattering_db >= 0.0);
    }
  }
}

TEST_CASE("total loss increases strictly with distance for bundled media") {
  const MediumDatabase db = MediumDatabase::bundled();
  const FrequencyPoint freq = FrequencyPoint::from_wavelength(3e-4);
  const BeamSpec beam{0.5};
  for (const std::string& id : db.medium_ids()) {
    const MediumRecord& rec = db.medium(id);
    double prev = -1e300;
    for (int i = 0; i < 50; ++i) {
      const double d = 1e-4 + (2e-3 - 1e-4) * static_cast<double>(i) / 49.0;
      const double total = total_path_loss(rec, freq, {d}, beam).total_db;
      CHECK(total > prev);
      prev = total;
    }
  }
}
