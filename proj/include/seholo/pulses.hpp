#pragma once

#include <numbers>

namespace seholo {

/// Gaussian Rabi envelope truncated to [start, start + duration].
/// Units: time in ns, amplitude in rad/ns, area in rad.
class GaussianPulse {
 public:
  /// Throws InvalidArgument unless duration > 0 and std_dev > 0.
  GaussianPulse(double duration, double std_dev, double amplitude, double start = 0.0);

  /// Pulse whose truncated area equals `area` (default: a pi pulse), with
  /// std_dev = duration / 8 when `std_dev` <= 0.
  static GaussianPulse with_area(double duration, double std_dev = 0.0,
                                 double area = std::numbers::pi, double start = 0.0);

  double duration() const { return duration_; }
  double std_dev() const { return std_dev_; }
  double amplitude() const { return amplitude_; }
  double start() const { return start_; }
  double end() const { return start_ + duration_; }
  double center() const { return start_ + 0.5 * duration_; }

  double envelope(double t) const;
  /// Running area from `start` to `t` (closed form via erf).
  double area(double t) const;
  double total_area() const { return area(end()); }
  double fwhm() const;

  GaussianPulse shifted(double dt) const;

 private:
  double duration_;
  double std_dev_;
  double amplitude_;
  double start_;
};

GaussianPulse normalize_area(const GaussianPulse& p, double target = std::numbers::pi);

/// True when the truncated area matches `target` within `rel_tol`.
bool has_area(const GaussianPulse& p, double target = std::numbers::pi, double rel_tol = 1e-9);

}  // namespace seholo
