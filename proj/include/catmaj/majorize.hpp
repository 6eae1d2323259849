#pragma once

#include <optional>
#include <vector>

#include "catmaj/error.hpp"
#include "catmaj/vec.hpp"

namespace catmaj {

struct MajorizationReport {
  bool holds = false;
  // Prefix form: first k whose partial sum violates. Order-free forms: number
  // of x components strictly above the violating threshold t.
  std::optional<int> first_violation_index;
  bool sums_equal = false;
};

// x ≺ y: every prefix sum of x is at most y's, totals exactly equal. Both
// vectors are already sorted decreasing, so this is a single exact pass.
inline MajorizationReport majorizes(const ProbVec& x, const ProbVec& y) {
  if (x.dim() != y.dim())
    fail(Err::DimensionMismatch, "majorization compares equal-dimension vectors; pad with zeros first");
  MajorizationReport rep;
  rep.sums_equal = x.sum() == y.sum();
  Rat px = 0, py = 0;
  for (int k = 0; k < x.dim(); ++k) {
    px += x[k];
    py += y[k];
    if (px > py) {
      rep.first_violation_index = k + 1;
      rep.holds = false;
      return rep;
    }
  }
  rep.holds = rep.sums_equal;
  return rep;
}

enum class OrderFreeForm {
  Sub,    // sum_i (x_i - t)+ <= sum_i (y_i - t)+ for all t
  Super,  // sum_i (t - x_i)+ <= sum_i (t - y_i)+ for all t
};

// Both order-free sums are piecewise linear in t with kinks only at component
// values, and they agree with the prefix form at t -> 0 and t -> max. So
// checking every component value plus t = 0 decides the whole real line.
inline MajorizationReport majorizes_orderfree(const ProbVec& x, const ProbVec& y, OrderFreeForm form) {
  if (x.dim() != y.dim())
    fail(Err::DimensionMismatch, "majorization compares equal-dimension vectors; pad with zeros first");
  MajorizationReport rep;
  rep.sums_equal = x.sum() == y.sum();
  if (!rep.sums_equal) {
    rep.holds = false;
    return rep;
  }

  std::vector<Rat> breakpoints;
  breakpoints.reserve(static_cast<size_t>(x.dim() + y.dim()) + 1);
  breakpoints.push_back(0);
  for (const Rat& v : x.c) breakpoints.push_back(v);
  for (const Rat& v : y.c) breakpoints.push_back(v);

  for (const Rat& t : breakpoints) {
    Rat lhs = 0, rhs = 0;
    if (form == OrderFreeForm::Sub) {
      for (const Rat& v : x.c)
        if (v > t) lhs += v - t;
      for (const Rat& v : y.c)
        if (v > t) rhs += v - t;
    } else {
      for (const Rat& v : x.c)
        if (t > v) lhs += t - v;
      for (const Rat& v : y.c)
        if (t > v) rhs += t - v;
    }
    if (lhs > rhs) {
      int above = 0;
      for (const Rat& v : x.c)
        if (v > t) ++above;
      rep.first_violation_index = above;
      rep.holds = false;
      return rep;
    }
  }
  rep.holds = true;
  return rep;
}

// x ⊗ z ≺ y ⊗ z, checked exactly. z is any nonzero nonnegative vector; scale
// cancels because both tensor sums carry the same factor.
inline MajorizationReport catalyzed_majorizes(const ProbVec& x, const ProbVec& y, const ProbVec& z) {
  if (x.dim() != y.dim())
    fail(Err::DimensionMismatch, "majorization compares equal-dimension vectors; pad with zeros first");
  return majorizes(tensor(x, z), tensor(y, z));
}

}  // namespace catmaj
