#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "catmaj/error.hpp"
#include "catmaj/rational.hpp"

namespace catmaj {

// Finite nonnegative vector, components sorted decreasing. `normalized` is set
// iff the component sum is exactly 1. Unnormalized vectors are legal: reduced
// pairs and catalysts carry their own scale.
struct ProbVec {
  std::vector<Rat> c;
  bool normalized = false;

  int dim() const { return static_cast<int>(c.size()); }
  const Rat& operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Rat sum() const {
    Rat s = 0;
    for (const Rat& v : c) s += v;
    return s;
  }

  const Rat& top() const { return c.front(); }
  const Rat& bottom() const { return c.back(); }

  int support() const {
    int n = 0;
    for (const Rat& v : c)
      if (v > 0) ++n;
    return n;
  }

  bool strictly_positive() const { return dim() > 0 && bottom() > 0; }

  bool operator==(const ProbVec& o) const { return c == o.c; }
};

inline ProbVec canonicalize(std::vector<Rat> comps) {
  if (comps.empty()) fail(Err::EmptyVector, "vector has no components");
  bool any_positive = false;
  for (const Rat& v : comps) {
    if (v < 0) fail(Err::NegativeComponent, "component " + to_string(v) + " is negative");
    if (v > 0) any_positive = true;
  }
  if (!any_positive) fail(Err::InvalidInput, "vector has no positive component");
  std::sort(comps.begin(), comps.end(), std::greater<Rat>());
  ProbVec p;
  p.c = std::move(comps);
  p.normalized = p.sum() == 1;
  return p;
}

inline ProbVec scale(const ProbVec& p, const Rat& lambda) {
  if (lambda <= 0) fail(Err::InvalidInput, "scale factor must be positive");
  std::vector<Rat> comps = p.c;
  for (Rat& v : comps) v *= lambda;
  return canonicalize(std::move(comps));
}

// Componentwise products, re-sorted. The sum of the result is the exact
// product of the operand sums, which tests rely on.
inline ProbVec tensor(const ProbVec& a, const ProbVec& b) {
  std::vector<Rat> prod;
  prod.reserve(static_cast<size_t>(a.dim()) * static_cast<size_t>(b.dim()));
  for (const Rat& u : a.c)
    for (const Rat& v : b.c) prod.push_back(u * v);
  std::sort(prod.begin(), prod.end(), std::greater<Rat>());
  ProbVec p;
  p.c = std::move(prod);
  p.normalized = a.normalized && b.normalized;
  return p;
}

// Zero-pad the shorter vector so both share a dimension. Appending zeros to
// a decreasing nonnegative vector keeps it canonical and denotes the same
// distribution.
inline void pad_pair(ProbVec& a, ProbVec& b) {
  while (a.c.size() < b.c.size()) a.c.push_back(0);
  while (b.c.size() < a.c.size()) b.c.push_back(0);
}

// Outcome of cancelling everything two vectors share: common zeros first,
// then every component value present in both (multiset intersection, largest
// values first). The reduced pair keeps equal dimensions and is left
// unnormalized; `removed_mass` is what each side lost.
struct ReducedPair {
  ProbVec x, y;
  Rat removed_mass;
  std::vector<Rat> removed;  // matched positive values, largest first
  int zeros_stripped = 0;
};

inline ReducedPair reduce_pair(const ProbVec& x_in, const ProbVec& y_in) {
  std::vector<Rat> xs = x_in.c, ys = y_in.c;
  // Pad the shorter side with zeros; majorization only compares mass, and a
  // zero-padded vector denotes the same distribution.
  while (xs.size() < ys.size()) xs.push_back(0);
  while (ys.size() < xs.size()) ys.push_back(0);

  ReducedPair out;
  out.removed_mass = 0;

  // Both inputs are sorted decreasing, so shared values line up in one merge
  // pass. Zeros cancel like any other shared value; count them separately.
  std::vector<Rat> xr, yr;
  size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i] == ys[j]) {
      if (xs[i] == 0) {
        ++out.zeros_stripped;
      } else {
        out.removed.push_back(xs[i]);
        out.removed_mass += xs[i];
      }
      ++i;
      ++j;
    } else if (xs[i] > ys[j]) {
      xr.push_back(xs[i++]);
    } else {
      yr.push_back(ys[j++]);
    }
  }
  while (i < xs.size()) xr.push_back(xs[i++]);
  while (j < ys.size()) yr.push_back(ys[j++]);

  if (xr.empty() && yr.empty())
    fail(Err::BothEmptyAfterReduction, "vectors are identical; nothing left after reduction");

  // The merge drops the same count from both sides, so dimensions stay equal.
  out.x.c = std::move(xr);
  out.y.c = std::move(yr);
  out.x.normalized = out.x.sum() == 1;
  out.y.normalized = out.y.sum() == 1;
  return out;
}

inline ProbVec parse_vector(const std::string& text) {
  std::vector<Rat> comps;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    comps.push_back(parse_scalar(std::string_view(text).substr(pos, comma - pos)));
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return canonicalize(std::move(comps));
}

inline std::string format_vector(const ProbVec& v) {
  std::string out;
  for (int i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out;
}

}  // namespace catmaj
