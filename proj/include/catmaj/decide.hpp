#pragma once

#include <cmath>
#include <future>
#include <optional>
#include <vector>

#include "catmaj/error.hpp"
#include "catmaj/majorize.hpp"
#include "catmaj/numeric.hpp"
#include "catmaj/renyi.hpp"
#include "catmaj/vec.hpp"

namespace catmaj {

// Scans never leave [-kRCap, kRCap]: beyond the analytic window the endpoint
// comparisons already fix every inequality's sign, and beyond the cap a
// too-flat window (y1/x1 barely above 1) would only waste samples.
inline constexpr double kRCap = 1e4;

struct RWindow {
  double r_lo = 0.0;
  double r_hi = 0.0;
  bool lo_open_at_zero = false;  // y has zeros: every r <= 0 holds for free
  const char* lo_rationale = "";
  const char* hi_rationale = "";
};

// Finite window outside which the f_r inequalities hold automatically.
// Upper side: for r > r_hi, y1^r > d x1^r >= sum x_i^r, so f_r(x) < f_r(y).
// Lower side mirrors it on the smallest components; with zeros in y the whole
// r <= 0 half-line is free because f_r(y) = +inf there. Expects an already
// reduced pair, where equal sums force r_hi >= 1.
inline RWindow window_bounds(const ProbVec& x, const ProbVec& y) {
  double x1 = to_double(x.top()), y1 = to_double(y.top());
  double xd = to_double(x.bottom()), yd = to_double(y.bottom());
  double d = static_cast<double>(x.dim());
  if (!(x1 < y1))
    fail(Err::EndpointViolation, "require x1 < y1: the r -> +inf tail fails otherwise");
  RWindow w;
  w.r_hi = std::log(d) / std::log(y1 / x1);
  w.hi_rationale = "r > r_hi gives y1^r > d x1^r >= sum x_i^r";
  if (yd > 0.0) {
    if (!(xd > yd))
      fail(Err::EndpointViolation, "require x_d > y_d: the r -> -inf tail fails otherwise");
    w.r_lo = -std::log(d) / std::log(xd / yd);
    w.lo_rationale = "r < r_lo gives y_d^r > d x_d^r >= sum x_i^r";
  } else {
    w.lo_open_at_zero = true;
    w.lo_rationale = "y has zeros, f_r(y) = +inf for r <= 0";
  }
  return w;
}

enum class VerdictKind { Trumped, NotTrumped, Equal, Boundary };

struct Verdict {
  VerdictKind kind = VerdictKind::Boundary;
  // An r with f_r(x) >= f_r(y) - tol; +-inf encode the endpoint tails.
  // Present for NotTrumped and Boundary.
  std::optional<double> witness_r;
  std::optional<double> argmin_r;  // where the scanned minimum occurred
  double min_margin = 0.0;         // infimum of g over the scan, -inf if analytic failure
  RWindow window;                  // the range actually scanned
};

namespace detail {

// Minimum tracker with deterministic ties (smallest r wins).
struct ScanAccum {
  double min_g = kInf;
  double arg_r = 0.0;

  void feed(double r, double g) {
    if (!std::isfinite(g)) return;  // +inf samples are never candidate minima
    if (g < min_g || (g == min_g && r < arg_r)) {
      min_g = g;
      arg_r = r;
    }
  }

  void merge(const ScanAccum& o) {
    if (o.min_g < min_g || (o.min_g == min_g && o.arg_r < arg_r)) {
      min_g = o.min_g;
      arg_r = o.arg_r;
    }
  }
};

// g evaluated for the scan. Direct evaluation within ~1e-7 of the limit
// points cancels catastrophically, so those r are snapped to the stable limit
// formulas (the y-with-zeros branch never scans r <= 0, so snapping toward 0
// from above keeps the sample inside the open window).
inline double g_scan_value(const VecD& x, const VecD& y, double r, bool y_has_zero) {
  if (std::fabs(r) < 1e-7) {
    if (!y_has_zero) return g_sample(x, y, 0.0).g;
    r = r < 0.0 ? -1e-7 : 1e-7;
  } else if (std::fabs(r - 1.0) < 1e-7) {
    return g_sample(x, y, 1.0).g;
  }
  return g_sample(x, y, r).g;
}

// One full pass: uniform grid over [lo, hi], extra log-spaced samples hugging
// 0+ when the window is open there, exact limit samples, then golden-section
// polish around every local grid minimum.
inline ScanAccum scan_window(const VecD& x, const VecD& y, double lo, double hi, bool y_has_zero,
                             int per_unit, int min_samples, int threads) {
  int n = std::max(min_samples, static_cast<int>(std::ceil((hi - lo) * per_unit)));
  std::vector<double> rs(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) rs[static_cast<size_t>(k)] = lo + (hi - lo) * k / n;
  if (y_has_zero) {
    // Open at 0: the grid starts at lo = 0, replace that sample and approach
    // the endpoint geometrically from above.
    rs[0] = 1e-8;
    for (double r : logspace(1e-8, rs[1], 64)) rs.push_back(r);
  } else {
    rs.push_back(0.0);
  }
  rs.push_back(1.0);

  auto eval = [&](double r) { return g_scan_value(x, y, r, y_has_zero); };

  size_t grid_count = static_cast<size_t>(n) + 1;
  std::vector<double> gv(rs.size());
  ScanAccum acc;
  if (threads > 1) {
    size_t chunk = (rs.size() + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    std::vector<std::future<ScanAccum>> futs;
    for (size_t start = 0; start < rs.size(); start += chunk) {
      size_t end = std::min(start + chunk, rs.size());
      futs.push_back(std::async(std::launch::async, [&, start, end] {
        ScanAccum local;
        for (size_t i = start; i < end; ++i) {
          gv[i] = eval(rs[i]);
          local.feed(rs[i], gv[i]);
        }
        return local;
      }));
    }
    for (auto& f : futs) acc.merge(f.get());  // merge order is fixed, result deterministic
  } else {
    for (size_t i = 0; i < rs.size(); ++i) {
      gv[i] = eval(rs[i]);
      acc.feed(rs[i], gv[i]);
    }
  }

  // Polish every local minimum of the uniform grid (g may dip between points).
  auto refine = [&](double a, double b) {
    MinResult m = golden_min(eval, a, b, 1e-6);
    acc.feed(m.arg, m.value);
  };
  for (size_t i = 1; i + 1 < grid_count; ++i)
    if (gv[i] <= gv[i - 1] && gv[i] <= gv[i + 1]) refine(rs[i - 1], rs[i + 1]);
  if (grid_count >= 2) {
    if (gv[0] <= gv[1]) refine(rs[0], rs[1]);
    if (gv[grid_count - 1] <= gv[grid_count - 2]) refine(rs[grid_count - 2], rs[grid_count - 1]);
  }
  return acc;
}

}  // namespace detail

// Theorem gate: x is trumped by y iff f_r(x) < f_r(y) for every real r.
// Pipeline: exact reduction, zero-component case analysis, endpoint tests,
// then a minimization of g over the finite window that the endpoints leave
// undecided. Verdicts with |margin| <= tol are reported as Boundary instead
// of guessed; tol is absolute because g itself carries the decision margin.
inline Verdict decide(const ProbVec& x, const ProbVec& y, double tol = 1e-9, int threads = 1) {
  if (tol <= 0.0) fail(Err::InvalidParams, "tolerance must be positive");
  if (!x.normalized || !y.normalized)
    fail(Err::InvalidInput, "decide expects normalized probability vectors");

  Verdict v;
  ReducedPair red;
  try {
    red = reduce_pair(x, y);
  } catch (const Error& e) {
    if (e.kind() == Err::BothEmptyAfterReduction) {
      v.kind = VerdictKind::Equal;
      return v;
    }
    throw;
  }

  // After reduction at most one side retains zeros. A zero on the x side
  // makes f_r(x) = +inf for r <= 0 while f_r(y) stays finite.
  bool y_has_zero = !red.y.strictly_positive();
  if (!red.x.strictly_positive() && !y_has_zero) {
    v.kind = VerdictKind::NotTrumped;
    v.witness_r = 0.0;
    v.min_margin = -kInf;
    return v;
  }

  double x1 = to_double(red.x.top()), y1 = to_double(red.y.top());
  double xd = to_double(red.x.bottom()), yd = to_double(red.y.bottom());
  if (!(x1 < y1)) {
    v.kind = VerdictKind::NotTrumped;
    v.witness_r = kInf;
    v.min_margin = -kInf;
    return v;
  }
  if (!y_has_zero && !(xd > yd)) {
    v.kind = VerdictKind::NotTrumped;
    v.witness_r = -kInf;
    v.min_margin = -kInf;
    return v;
  }

  RWindow w = window_bounds(red.x, red.y);
  double lo = y_has_zero ? 0.0 : std::max(w.r_lo, -kRCap);
  double hi = std::min(w.r_hi, kRCap);
  v.window = w;
  v.window.r_lo = lo;
  v.window.r_hi = hi;

  VecD vx(red.x), vy(red.y);
  detail::ScanAccum acc = detail::scan_window(vx, vy, lo, hi, y_has_zero, 32, 512, threads);
  auto classify = [&](const detail::ScanAccum& a) {
    if (a.min_g > tol) return VerdictKind::Trumped;
    if (a.min_g < -tol) return VerdictKind::NotTrumped;
    return VerdictKind::Boundary;
  };

  VerdictKind kind = classify(acc);
  if (kind != VerdictKind::Boundary) {
    // Guard against a dip the base grid stepped over before committing.
    detail::ScanAccum dense = detail::scan_window(vx, vy, lo, hi, y_has_zero, 128, 2048, threads);
    acc.merge(dense);
    kind = classify(acc);
  }

  v.kind = kind;
  v.min_margin = acc.min_g;
  v.argmin_r = acc.arg_r;
  if (kind != VerdictKind::Trumped) v.witness_r = acc.arg_r;
  return v;
}

// n equally spaced samples of g on [r_min, r_max], endpoints included. Grid
// points within 1e-12 of the limit points snap onto them so the stable limit
// formulas are used and flagged. Identical inputs short-circuit to the zero
// curve, which is the continuous extension even when zeros block the r = 0
// limit formula.
inline std::vector<CurveSample> sample_curve(const ProbVec& x, const ProbVec& y, double r_min,
                                             double r_max, int n) {
  if (!(r_min < r_max) || n < 2) fail(Err::InvalidParams, "need r_min < r_max and n >= 2");
  if (x.dim() != y.dim()) fail(Err::DimensionMismatch, "curve compares equal-dimension vectors");
  bool same = x == y;
  VecD vx(x), vy(y);
  std::vector<CurveSample> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double r = i == n - 1 ? r_max : r_min + (r_max - r_min) * i / (n - 1);
    if (std::fabs(r) < 1e-12)
      r = 0.0;
    else if (std::fabs(r - 1.0) < 1e-12)
      r = 1.0;
    CurveSample s;
    if (same) {
      s.r = r;
      s.g = 0.0;
      s.flag = r == 0.0 ? CurveFlag::LimitR0 : r == 1.0 ? CurveFlag::LimitR1 : CurveFlag::Ok;
    } else {
      s = g_sample(vx, vy, r);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace catmaj
