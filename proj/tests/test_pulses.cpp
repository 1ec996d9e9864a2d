#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "seholo/errors.hpp"
#include "seholo/pulses.hpp"
#include "support.hpp"

using namespace seholo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("default pulse shape") {
  const auto p = GaussianPulse::with_area(25.0);
  CHECK(p.std_dev() == doctest::Approx(25.0 / 8.0));
  CHECK(p.envelope(-1.0) == 0.0);
  CHECK(p.envelope(25.0 + 1e-9) == 0.0);
  CHECK(p.envelope(1e6) == 0.0);
  CHECK(p.envelope(12.5) == doctest::Approx(p.amplitude()));
  // 2 sqrt(2 ln 2) sigma for sigma = T/8 is about 0.3 T.
  CHECK(p.fwhm() == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0)) * 25.0 / 8.0));
  CHECK(p.fwhm() / 25.0 == doctest::Approx(0.294).epsilon(1e-2));
  CHECK(p.envelope(12.5 + 0.5 * p.fwhm()) == doctest::Approx(0.5 * p.amplitude()));
}

TEST_CASE("truncated area matches quadrature") {
  const auto p = GaussianPulse::with_area(25.0);
  const auto f = [&](double t) { return p.envelope(t); };
  CHECK(testing::simpson(f, 0.0, 25.0) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(std::abs(p.total_area() - kPi) <= 1e-10 * kPi);
  CHECK(p.area(-3.0) == 0.0);
  CHECK(p.area(0.0) == 0.0);
  CHECK(p.area(12.5) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(p.area(100.0) == doctest::Approx(kPi).epsilon(1e-12));

  // Peak amplitude of the truncated Gaussian normalized to pi.
  const double sigma = 25.0 / 8.0;
  const double truncated = std::erf(12.5 / (sigma * std::numbers::sqrt2));
  CHECK(p.amplitude() ==
        doctest::Approx(kPi / (sigma * std::sqrt(2.0 * kPi) * truncated)).epsilon(1e-12));

  auto g = testing::rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const double duration = testing::uniform(g, 5.0, 60.0);
    const double sd = duration * testing::uniform(g, 0.08, 0.3);
    const double start = testing::uniform(g, -10.0, 10.0);
    const auto q = GaussianPulse::with_area(duration, sd, kPi, start);
    const double t = start + testing::uniform(g, 0.0, duration);
    const double ref = testing::simpson([&](double x) { return q.envelope(x); }, start, t);
    CHECK(std::abs(q.area(t) - ref) <= 1e-10 * kPi);
  }
}

TEST_CASE("normalization") {
  const GaussianPulse raw(25.0, 25.0 / 8.0, 1.0);
  const auto p = normalize_area(raw);
  CHECK(has_area(p));
  CHECK(std::abs(p.total_area() - kPi) <= 1e-10 * kPi);
  const auto again = normalize_area(p);
  CHECK(std::abs(again.amplitude() - p.amplitude()) <= 1e-12 * p.amplitude());
  CHECK_FALSE(has_area(raw));
  CHECK_THROWS_AS(normalize_area(raw, 0.0), InvalidArgument);
  CHECK(normalize_area(raw, 2.0 * kPi).amplitude() == doctest::Approx(2.0 * p.amplitude()));

  // Doubling sigma roughly halves the peak; truncation makes it slightly more than half.
  const auto wide = GaussianPulse::with_area(25.0, 25.0 / 4.0);
  const double ratio = wide.amplitude() / p.amplitude();
  CHECK(ratio > 0.5);
  CHECK(ratio < 0.56);
}

TEST_CASE("invalid pulses are rejected") {
  CHECK_THROWS_AS(GaussianPulse(0.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(GaussianPulse(10.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(GaussianPulse(10.0, 1.0, std::nan("")), InvalidArgument);
}

TEST_CASE("properties: symmetry, monotone area, shifts") {
  auto g = testing::rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const double duration = testing::uniform(g, 1.0, 100.0);
    const double start = testing::uniform(g, -50.0, 50.0);
    const auto p = GaussianPulse::with_area(duration, 0.0, kPi, start);
    const double x = testing::uniform(g, 0.0, 0.6 * duration);
    CHECK(p.envelope(p.center() + x) == doctest::Approx(p.envelope(p.center() - x)).epsilon(1e-12));
    const double t1 = start + testing::uniform(g, -5.0, duration + 5.0);
    const double t2 = t1 + testing::uniform(g, 0.0, duration);
    CHECK(p.area(t2) >= p.area(t1) - 1e-15);
    CHECK(std::abs(normalize_area(normalize_area(p)).amplitude() - p.amplitude()) <=
          1e-12 * p.amplitude());
    const double dt = testing::uniform(g, -10.0, 10.0);
    const auto s = p.shifted(dt);
    CHECK(s.envelope(t1 + dt) == doctest::Approx(p.envelope(t1)).epsilon(1e-12));
    CHECK(has_area(s));
  }
}
