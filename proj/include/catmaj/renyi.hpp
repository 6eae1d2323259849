#pragma once

#include <cmath>
#include <vector>

#include "catmaj/error.hpp"
#include "catmaj/numeric.hpp"
#include "catmaj/vec.hpp"

namespace catmaj {

// Float mirror of a ProbVec: components and their logs precomputed once so a
// curve scan over thousands of r values never touches GMP.
struct VecD {
  std::vector<double> v;        // all components, decreasing
  std::vector<double> ln_pos;   // logs of the positive components only
  double sum = 0.0;
  bool strictly_positive = true;

  explicit VecD(const ProbVec& p) {
    v.reserve(static_cast<size_t>(p.dim()));
    for (const Rat& c : p.c) {
      double d = to_double(c);
      v.push_back(d);
      sum += d;
      if (d > 0.0)
        ln_pos.push_back(std::log(d));
      else
        strictly_positive = false;
    }
  }

  int dim() const { return static_cast<int>(v.size()); }

  // ln sum_i v_i^r over the positive components, anchored at the largest
  // component for r >= 0 and the smallest positive one for r < 0 so every
  // exponentiated term is <= 1. +inf when r < 0 and a zero is present.
  double ln_pow_sum(double r) const {
    if (r < 0.0 && !strictly_positive) return kInf;
    double anchor = r >= 0.0 ? ln_pos.front() : ln_pos.back();
    double s = 0.0;
    for (double l : ln_pos) s += std::exp(r * (l - anchor));
    return r * anchor + std::log(s);
  }

  // sum_i v_i ln v_i with the 0 ln 0 = 0 convention.
  double xlnx_sum() const {
    double s = 0.0;
    for (double l : ln_pos) s += std::exp(l) * l;
    return s;
  }

  double ln_sum() const {
    double s = 0.0;
    for (double l : ln_pos) s += l;
    return s;
  }
};

// The five-case family. Strict inequalities f_r(x) < f_r(y) for every real r
// characterize trumping; the zero rule makes f_r = +inf for r <= 0 whenever a
// component vanishes.
inline double f_r(const ProbVec& x, double r) {
  VecD v(x);
  if (r > 1.0) return v.ln_pow_sum(r);
  if (r == 1.0) return v.xlnx_sum();
  if (r > 0.0) return -v.ln_pow_sum(r);
  if (!v.strictly_positive) return kInf;
  if (r == 0.0) return -v.ln_sum();
  return v.ln_pow_sum(r);
}

enum class CurveFlag {
  Ok,             // plain formula value
  LimitR0,        // limiting value substituted at r = 0
  LimitR1,        // limiting value substituted at r = 1
  Infinite,       // g is +inf or -inf (zeros at r < 0)
  Indeterminate,  // r = 0 with zeros, or zeros on both sides at r < 0
};

struct CurveSample {
  double r = 0.0;
  double g = 0.0;
  CurveFlag flag = CurveFlag::Ok;
};

// g(r) = f~_r(y) - f~_r(x) with the exact limits at r in {0, 1}. The r = 1
// limit carries a 1/S factor (S the common total), which makes g invariant
// under scaling both vectors; decisions can then run on unnormalized reduced
// pairs directly.
inline CurveSample g_sample(const VecD& x, const VecD& y, double r) {
  CurveSample s;
  s.r = r;
  if (r == 1.0) {
    s.g = (y.xlnx_sum() - x.xlnx_sum()) / y.sum;
    s.flag = CurveFlag::LimitR1;
    return s;
  }
  if (r == 0.0) {
    if (!x.strictly_positive || !y.strictly_positive) {
      s.g = std::numeric_limits<double>::quiet_NaN();
      s.flag = CurveFlag::Indeterminate;
      return s;
    }
    s.g = (x.ln_sum() - y.ln_sum()) / x.dim();
    s.flag = CurveFlag::LimitR0;
    return s;
  }
  double ly = y.ln_pow_sum(r);
  double lx = x.ln_pow_sum(r);
  if (lx == kInf && ly == kInf) {
    s.g = std::numeric_limits<double>::quiet_NaN();
    s.flag = CurveFlag::Indeterminate;
    return s;
  }
  if (ly == kInf || lx == kInf) {
    s.g = ly == kInf ? kInf : -kInf;
    s.flag = CurveFlag::Infinite;
    return s;
  }
  s.g = (ly - lx) / (r * (r - 1.0));
  s.flag = CurveFlag::Ok;
  return s;
}

inline CurveSample g_curve(const ProbVec& x, const ProbVec& y, double r) {
  if (x.dim() != y.dim())
    fail(Err::DimensionMismatch, "g compares equal-dimension vectors");
  CurveSample s = g_sample(VecD(x), VecD(y), r);
  if (s.flag == CurveFlag::Indeterminate)
    fail(Err::IndeterminateAtZero, "limit at r = 0 undefined when a component vanishes");
  return s;
}

// Same quantity on the direct three-case display, naive power sums with no
// anchoring. Kept as an independent route so the stabilized g_sample has an
// in-tree cross-check; requires x strictly positive to be meaningful.
inline double F_appendix(const ProbVec& x, const ProbVec& y, double r) {
  VecD xd(x), yd(y);
  int d = xd.dim();
  if (r == 0.0) {
    double sy = 0.0, sx = 0.0;
    for (double v : yd.v) sy += std::log(v);
    for (double v : xd.v) sx += std::log(v);
    return -(sy - sx) / d;
  }
  if (r == 1.0) {
    double sy = 0.0, sx = 0.0;
    for (double v : yd.v)
      if (v > 0.0) sy += v * std::log(v);
    for (double v : xd.v)
      if (v > 0.0) sx += v * std::log(v);
    return sy - sx;
  }
  double py = 0.0, px = 0.0;
  for (double v : yd.v) py += std::pow(v, r);
  for (double v : xd.v) px += std::pow(v, r);
  return (std::log(py) - std::log(px)) / (r * (r - 1.0));
}

struct Extras {
  double ln_top = 0.0;          // ln x_1, decreasing in the majorization order
  double neg_ln_bottom = 0.0;   // -ln x_d, +inf at a zero component
  double neg_ln_support = 0.0;  // -ln |supp x|
};

// The three additive Schur-convex functionals outside the f_r family; each
// must also be dominated whenever all f_r inequalities hold.
inline Extras extras(const ProbVec& x) {
  Extras e;
  e.ln_top = std::log(to_double(x.top()));
  double bot = to_double(x.bottom());
  e.neg_ln_bottom = bot > 0.0 ? -std::log(bot) : kInf;
  e.neg_ln_support = -std::log(static_cast<double>(x.support()));
  return e;
}

}  // namespace catmaj
