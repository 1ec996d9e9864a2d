#include "seholo/pulses.hpp"

#include <cmath>

#include "seholo/errors.hpp"

namespace seholo {

GaussianPulse::GaussianPulse(double duration, double std_dev, double amplitude, double start)
    : duration_(duration), std_dev_(std_dev), amplitude_(amplitude), start_(start) {
  if (!(duration > 0.0) || !(std_dev > 0.0) || !std::isfinite(amplitude) ||
      !std::isfinite(start)) {
    throw InvalidArgument("GaussianPulse requires duration > 0, std_dev > 0 and finite values");
  }
}

GaussianPulse GaussianPulse::with_area(double duration, double std_dev, double area,
                                       double start) {
  if (std_dev <= 0.0) std_dev = duration / 8.0;
  return normalize_area(GaussianPulse(duration, std_dev, 1.0, start), area);
}

double GaussianPulse::envelope(double t) const {
  if (t < start_ || t > end()) return 0.0;
  const double x = (t - center()) / std_dev_;
  return amplitude_ * std::exp(-0.5 * x * x);
}

double GaussianPulse::area(double t) const {
  if (t <= start_) return 0.0;
  const double upper = std::min(t, end());
  const double scale = std_dev_ * std::numbers::sqrt2;
  return amplitude_ * std_dev_ * std::sqrt(std::numbers::pi / 2.0) *
         (std::erf((upper - center()) / scale) - std::erf((start_ - center()) / scale));
}

double GaussianPulse::fwhm() const {
  // Truncation does not matter here as long as the half-maximum points lie inside
  // the window, which holds for std_dev < duration / (2 sqrt(2 ln 2)).
  return 2.0 * std::sqrt(2.0 * std::log(2.0)) * std_dev_;
}

GaussianPulse GaussianPulse::shifted(double dt) const {
  return GaussianPulse(duration_, std_dev_, amplitude_, start_ + dt);
}

GaussianPulse normalize_area(const GaussianPulse& p, double target) {
  if (!(target > 0.0)) throw InvalidArgument("normalize_area: target must be positive");
  const double unit = GaussianPulse(p.duration(), p.std_dev(), 1.0, p.start()).total_area();
  return GaussianPulse(p.duration(), p.std_dev(), target / unit, p.start());
}

bool has_area(const GaussianPulse& p, double target, double rel_tol) {
  return std::abs(p.total_area() - target) <= rel_tol * std::abs(target);
}

}  // namespace seholo
