#pragma once

// Shared helpers for the test suites: seeded random inputs and a few
// reference implementations that do not go through the library.

#include <cmath>
#include <functional>
#include <random>

#include "seholo/quantum_core.hpp"

namespace testing {

using seholo::Complex;
using seholo::Ket;
using seholo::Operator;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Complex gaussian_complex(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(g), n(g)};
}

inline Operator random_matrix(std::mt19937_64& g, int dim) {
  Operator m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = gaussian_complex(g);
  }
  return m;
}

inline Operator random_hermitian(std::mt19937_64& g, int dim) {
  const Operator a = random_matrix(g, dim);
  return 0.5 * (a + a.adjoint());
}

inline Ket random_ket(std::mt19937_64& g, int dim) {
  Ket v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gaussian_complex(g);
  return v / v.norm();
}

/// A full-rank mixed state A A^dag / Tr(A A^dag).
inline Operator random_density(std::mt19937_64& g, int dim) {
  const Operator a = random_matrix(g, dim);
  const Operator rho = a * a.adjoint();
  const Operator out = rho / rho.trace().real();
  return 0.5 * (out + out.adjoint());
}

/// Kronecker product by explicit index expansion.
inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Adaptive Simpson quadrature over `panels` equal panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-13, int panels = 64) {
  const std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= std::max(15.0 * eps, 1e-15 * std::abs(whole))) return left + right + diff / 15.0;
    return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, depth - 1) +
           rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth - 1);
  };
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels;
    const double hi = a + (b - a) * (k + 1) / panels;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    sum += rec(lo, hi, flo, fm, fhi, (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi), tol / panels, 30);
  }
  return sum;
}

/// exp(-i t H) for a 2x2 Hermitian H in closed form.
inline Operator exp_2x2(const Operator& h, double t) {
  const Complex tr_half = 0.5 * (h(0, 0) + h(1, 1));
  const Operator traceless = h - tr_half * Operator::Identity(2, 2);
  const double r = std::sqrt(std::max(0.0, -traceless.determinant().real()));
  const Complex i{0.0, 1.0};
  Operator out = std::cos(r * t) * Operator::Identity(2, 2);
  if (r > 0.0) out -= i * (std::sin(r * t) / r) * traceless;
  return std::exp(-i * t * tr_half) * out;
}

}  // namespace testing
