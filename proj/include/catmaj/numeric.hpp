#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "catmaj/error.hpp"

namespace catmaj {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(e^a + e^b), safe against overflow; -inf is the additive identity.
inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

inline double logsumexp(const std::vector<double>& ln_terms) {
  double m = -kInf;
  for (double v : ln_terms)
    if (v > m) m = v;
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double v : ln_terms) s += std::exp(v - m);
  return m + std::log(s);
}

// Regularized lower incomplete gamma P(a, L) for integer a >= 1. Series for
// the P side when L < a + 1, Lentz continued fraction for Q otherwise; the
// split keeps both expansions in their fast-converging regime.
inline double gamma_p(int a, double L) {
  if (L <= 0.0) return 0.0;
  double ln_prefix = a * std::log(L) - L - std::lgamma(static_cast<double>(a));
  if (L < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= L / (a + k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum * std::exp(ln_prefix);
  }
  double b = L + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  double q = std::exp(ln_prefix) * h;
  return 1.0 - q;
}

// Truncated exponential e_k(u) = sum_{i<=k} u^i / i!.
inline double exp_trunc(int k, double u) {
  double term = 1.0, sum = 1.0;
  for (int i = 1; i <= k; ++i) {
    term *= u / i;
    sum += term;
  }
  return sum;
}

struct MinResult {
  double arg = 0.0;
  double value = kInf;
};

// Golden-section minimization on [lo, hi], run until the bracket is narrower
// than tol. Unimodality is not assumed; callers seed it from a grid minimum
// so it only polishes a local dip.
inline MinResult golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  MinResult res;
  res.arg = 0.5 * (a + b);
  res.value = f(res.arg);
  return res;
}

// n + 1 equally spaced points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) fail(Err::InvalidParams, "linspace needs at least one interval");
  std::vector<double> pts(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) pts[static_cast<size_t>(k)] = lo + (hi - lo) * k / n;
  return pts;
}

// n + 1 log-spaced points from lo to hi inclusive; requires 0 < lo < hi.
inline std::vector<double> logspace(double lo, double hi, int n) {
  if (n < 1 || lo <= 0.0 || hi <= lo) fail(Err::InvalidParams, "logspace needs 0 < lo < hi");
  double lr = std::log(hi / lo);
  std::vector<double> pts(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) pts[static_cast<size_t>(k)] = lo * std::exp(lr * k / n);
  return pts;
}

}  // namespace catmaj
