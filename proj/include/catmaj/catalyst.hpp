#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "catmaj/decide.hpp"
#include "catmaj/error.hpp"
#include "catmaj/majorize.hpp"
#include "catmaj/numeric.hpp"
#include "catmaj/renyi.hpp"
#include "catmaj/vec.hpp"

namespace catmaj {

// ---------------------------------------------------------------------------
// Closed-form integrals of the decaying and growing profiles.
//
//   alpha(c,t,n) = int_0^inf (c e^{-s^{1/n}} - t)+ ds = c n! P(n+1, ln(c/t))
//   beta (c,t,n) = int_0^inf (t - c e^{s^{1/n}})+ ds
//                = c sum_{k>=1} M^{n+k} k / (k! (n+k)),  M = ln(t/c)
//
// alpha's n! is kept out of the working value so the step checks never
// overflow; beta's series is term-positive, so its log-sum is cancellation
// free at any magnitude.
// ---------------------------------------------------------------------------

inline double alpha_scaled(double c, double t, int n) {
  if (n < 1) fail(Err::InvalidParams, "alpha needs n >= 1");
  if (!(c > t)) return 0.0;
  return c * gamma_p(n + 1, std::log(c / t));
}

inline double alpha(double c, double t, int n) {
  return alpha_scaled(c, t, n) * std::tgamma(static_cast<double>(n) + 1.0);
}

inline double beta_ln(double c, double t, int n) {
  if (n < 1) fail(Err::InvalidParams, "beta needs n >= 1");
  if (!(t > c)) return -kInf;
  double m = std::log(t / c);
  double ln_m = std::log(m);
  double ln_c = std::log(c);
  std::vector<double> terms;
  double mx = -kInf;
  int cap = std::max(20000, static_cast<int>(2.0 * m) + 1000);  // series peaks near k = m
  for (int k = 1; k < cap; ++k) {
    double lt = ln_c + (n + k) * ln_m + std::log(static_cast<double>(k)) -
                std::lgamma(static_cast<double>(k) + 1.0) - std::log(static_cast<double>(n + k));
    terms.push_back(lt);
    if (lt > mx) mx = lt;
    if (k > m && lt < mx - 45.0) break;
  }
  return logsumexp(terms);
}

inline double beta(double c, double t, int n) {
  double l = beta_ln(c, t, n);
  return l == -kInf ? 0.0 : std::exp(l);
}

// ---------------------------------------------------------------------------
// Step gates. Each asks whether one profile family separates the pair:
// sum_i alpha(x_i,t,n) < sum_i alpha(y_i,t,n) for all t in (0, x1] (step 1,
// decaying side), and the beta mirror on (y_d, inf) (step 2, growing side).
//
// Both splits t into a direct zone, sampled on a log grid, and a deep tail
// where every component sits on the same branch of the closed form. On that
// tail the alpha difference collapses to the finite power-sum series
//
//   D(t) = -t n! sum_{m=1..n} (Delta_m / m!) e_{n-m}(u),   u = -ln t,
//   Delta_m = sum (ln y_i)^m - sum (ln x_i)^m,
//
// whose leading term has the sign of -Delta_1; the beta tail obeys the same
// gate with u = ln t. So Delta_1 < 0 is necessary for both, and the tail is
// certified by the series sign at geometric probe points instead of an
// unbounded t sweep. These gates only steer the search; the discretized
// catalyst is always re-verified exactly.
// ---------------------------------------------------------------------------

namespace detail {

// Relative margin of the Delta-series at one tail point: series-sum over the
// sum of absolute terms, positive when the y side strictly dominates.
inline double tail_series_margin(const std::vector<double>& delta_m, int n, double u) {
  double num = 0.0, den = 0.0;
  double mfact = 1.0;
  for (int m = 1; m <= n; ++m) {
    mfact *= m;
    double term = (delta_m[static_cast<size_t>(m)] / mfact) * exp_trunc(n - m, u);
    num -= term;
    den += std::fabs(term);
  }
  return den > 0.0 ? num / den : 0.0;
}

// Shared preconditions of both step gates, including the endpoint
// inequalities; a violated endpoint forces a wrong-signed margin somewhere,
// so returning false early gives the same answer as the grid would.
inline bool step_pre(const ProbVec& x, const ProbVec& y) {
  return x.dim() == y.dim() && x.strictly_positive() && y.strictly_positive() &&
         x.top() < y.top() && x.bottom() > y.bottom();
}

inline std::vector<double> delta_powers(const VecD& x, const VecD& y, int n) {
  std::vector<double> d(static_cast<size_t>(n) + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double s = 0.0;
    for (double l : y.ln_pos) s += std::pow(l, m);
    for (double l : x.ln_pos) s -= std::pow(l, m);
    d[static_cast<size_t>(m)] = s;
  }
  return d;
}

}  // namespace detail

inline bool check_step1(const ProbVec& x, const ProbVec& y, int n) {
  if (n < 1) fail(Err::InvalidParams, "profile steepness n must be >= 1");
  if (!detail::step_pre(x, y)) return false;
  VecD vx(x), vy(y);
  double delta1 = vy.ln_sum() - vx.ln_sum();
  if (delta1 >= -1e-12) return false;

  // Direct zone: t from below the last y kink up to the top x kink.
  double x1 = vx.v.front(), yd = vy.v.back();
  constexpr int kPts = 512;
  for (double t : logspace(yd / std::exp(1.0), x1, kPts)) {
    double ay = 0.0, ax = 0.0;
    for (double v : vy.v) ay += alpha_scaled(v, t, n);
    for (double v : vx.v) ax += alpha_scaled(v, t, n);
    if (ay + ax <= 0.0) continue;
    if ((ay - ax) / (ay + ax) <= 1e-12) return false;
  }

  // Tail zone t < y_d/e: all alphas on the positive branch, series applies.
  std::vector<double> dm = detail::delta_powers(vx, vy, n);
  double u0 = -std::log(yd) + 1.0;
  for (double mult : {1.0, 2.0, 4.0, 8.0})
    if (detail::tail_series_margin(dm, n, u0 * mult) <= 1e-12) return false;
  return true;
}

inline bool check_step2(const ProbVec& x, const ProbVec& y, int n) {
  if (n < 1) fail(Err::InvalidParams, "profile steepness n must be >= 1");
  if (!detail::step_pre(x, y)) return false;
  VecD vx(x), vy(y);
  double delta1 = vy.ln_sum() - vx.ln_sum();
  if (delta1 >= -1e-12) return false;

  double max_ln = 0.0;
  for (double l : vx.ln_pos) max_ln = std::max(max_ln, std::fabs(l));
  for (double l : vy.ln_pos) max_ln = std::max(max_ln, std::fabs(l));
  double vmax = 2.0 * (n + 1) * (1.0 + max_ln);

  // Margin of sum beta(x_i,t,n) < sum beta(y_i,t,n) at one t, in log space.
  auto rel_margin = [&](double ln_t) {
    double t = std::exp(ln_t);
    std::vector<double> lx, ly;
    for (double v : vx.v) lx.push_back(beta_ln(v, t, n));
    for (double v : vy.v) ly.push_back(beta_ln(v, t, n));
    double bx = logsumexp(lx), by = logsumexp(ly);
    if (bx == -kInf) return by == -kInf ? kInf : 1.0;  // x side empty: free
    return 1.0 - std::exp(bx - by);
  };

  // Direct zone: ln t from just below the first x kink up to vmax.
  double ln_lo = std::log(vx.v.back() / 2.0);
  constexpr int kPts = 512;
  for (double ln_t : linspace(ln_lo, vmax, kPts)) {
    double m = rel_margin(ln_t);
    if (m != kInf && m <= 1e-12) return false;
  }
  // Tail probes beyond vmax; Delta_1 < 0 already fixes the asymptotic sign.
  for (double mult : {2.0, 4.0, 8.0}) {
    double m = rel_margin(vmax * mult);
    if (m != kInf && m <= 1e-12) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Stitched profile z*: decaying e^{-s^{1/n+}} until s_plus, pure exponential
// through the middle, growing mirror C e^{(a-s)^{1/n-}} for the last s_minus,
// with C = (y_d/y_1) z_+(s_plus)/z_-(s_minus). The overlap identity making
// both definitional branches agree on [s_plus, a-s_minus] is equivalent to
// a = s_plus + s_minus + ln(y_1/y_d).
// ---------------------------------------------------------------------------

struct StitchParams {
  int n_plus = 1;
  int n_minus = 1;
  double s_plus = 0.0;
  double s_minus = 0.0;
  double a = 0.0;
  long long ell = 0;
  double delta = 0.0;  // t-relative margin backing the choice of ell
};

// s_plus = s_minus = (ln(sf y1/yd))^n places both stitch points past the kink
// influence of every component ratio, with safety factor sf.
inline StitchParams make_params(int n, double y1, double yd, double sf) {
  if (n < 1 || !(y1 > yd) || !(yd > 0.0) || !(sf > 1.0))
    fail(Err::InvalidParams, "stitch parameters need n >= 1, y1 > yd > 0, sf > 1");
  StitchParams p;
  p.n_plus = n;
  p.n_minus = n;
  p.s_plus = std::pow(std::log(sf * y1 / yd), n);
  p.s_minus = p.s_plus;
  p.a = p.s_plus + p.s_minus + std::log(y1 / yd);
  return p;
}

// int_0^s e^{-u^{1/n}} du = n! P(n, s^{1/n}).
inline double trunc_exp_int(int n, double s) {
  if (s <= 0.0) return 0.0;
  return std::tgamma(static_cast<double>(n) + 1.0) * gamma_p(n, std::pow(s, 1.0 / n));
}

// int_0^s e^{u^{1/n}} du = n s sum_{k>=0} v^k / (k! (k+n)), v = s^{1/n}.
inline double grow_exp_int(int n, double s) {
  if (s <= 0.0) return 0.0;
  double v = std::pow(s, 1.0 / n);
  double vk = 1.0;  // v^k / k!
  double sum = 1.0 / n;
  for (int k = 1; k < 2000; ++k) {
    vk *= v / k;
    double term = vk / (k + n);
    sum += term;
    if (k > v && term < sum * 1e-18) break;
  }
  return n * s * sum;
}

class Profile {
 public:
  StitchParams p;
  double y1 = 0.0, yd = 0.0;
  double z_sp = 1.0;     // z_+(s_plus)
  double zm_sm = 1.0;    // z_-(s_minus)
  double c_scale = 0.0;  // C above; also z*(a)
  double z_right = 0.0;  // z*(a - s_minus)
  double za = 0.0;       // int_0^a z*

  double zstar(double s) const {
    if (s <= p.s_plus) return s <= 0.0 ? 1.0 : std::exp(-std::pow(s, 1.0 / p.n_plus));
    if (s <= p.a - p.s_minus) return z_sp * std::exp(-(s - p.s_plus));
    double u = p.a - s;
    return u > 0.0 ? c_scale * std::exp(std::pow(u, 1.0 / p.n_minus)) : c_scale;
  }

  // int_0^s z*, piecewise closed form.
  double integral(double s) const {
    if (s <= 0.0) return 0.0;
    if (s > p.a) s = p.a;
    double v = trunc_exp_int(p.n_plus, std::min(s, p.s_plus));
    if (s > p.s_plus) {
      double s2 = std::min(s, p.a - p.s_minus);
      v += z_sp * (1.0 - std::exp(-(s2 - p.s_plus)));
      if (s > p.a - p.s_minus)
        v += c_scale * (grow_exp_int(p.n_minus, p.s_minus) - grow_exp_int(p.n_minus, p.a - s));
    }
    return v;
  }

  // Inverse of z* on [z*(a), 1].
  double inv(double w) const {
    if (w >= 1.0) return 0.0;
    if (w >= z_sp) return std::pow(-std::log(w), p.n_plus);
    if (w >= z_right) return p.s_plus - std::log(w / z_sp);
    if (w <= c_scale) return p.a;
    return p.a - std::pow(std::log(w / c_scale), p.n_minus);
  }

  // int_0^a (c z*(s) - t)+ ds.
  double one_side(double c, double t) const {
    if (!(t < c)) return 0.0;
    if (t <= c * c_scale) return c * za - t * p.a;
    double sc = inv(t / c);
    return c * integral(sc) - t * sc;
  }
};

inline Profile stitch_zstar(const StitchParams& p, double y1, double yd) {
  if (p.n_plus < 1 || p.n_minus < 1 || p.s_plus < 0.0 || p.s_minus < 0.0 || !(y1 > yd) ||
      !(yd > 0.0))
    fail(Err::InvalidParams, "stitch needs n >= 1, s >= 0, y1 > yd > 0");
  double len = std::log(y1 / yd);
  double a_canon = p.s_plus + p.s_minus + len;
  if (!(std::fabs(p.a - a_canon) <= 1e-9 * std::max(1.0, a_canon)))
    fail(Err::InvalidParams, "interval length must equal s_plus + s_minus + ln(y1/yd)");

  Profile pr;
  pr.p = p;
  pr.p.a = a_canon;
  pr.y1 = y1;
  pr.yd = yd;
  pr.z_sp = std::exp(-std::pow(p.s_plus, 1.0 / p.n_plus));
  pr.zm_sm = std::exp(std::pow(p.s_minus, 1.0 / p.n_minus));
  pr.c_scale = (yd / y1) * pr.z_sp / pr.zm_sm;
  pr.z_right = pr.c_scale * pr.zm_sm;

  // Sample the overlap: the z_+ continuation against the z_- form. Failure
  // means the parameters cannot be faithfully represented (e.g. s_plus so
  // large that the middle segment falls below floating-point resolution).
  double overlap = a_canon - p.s_minus - p.s_plus;
  if (!(overlap > 0.0)) fail(Err::InvalidParams, "stitch overlap segment is empty");
  for (int k = 0; k <= 16; ++k) {
    double s = p.s_plus + overlap * k / 16;
    double z_a = pr.z_sp * std::exp(-(s - p.s_plus));
    double z_b = pr.c_scale * pr.zm_sm * std::exp((a_canon - s) - p.s_minus);
    if (!(std::fabs(z_a - z_b) <= 1e-12 * z_a))
      fail(Err::InvalidParams, "profile branches disagree on the overlap segment");
  }
  pr.za = pr.integral(a_canon);
  return pr;
}

// Minimum over a log t-grid of the sum-integral margin, relative to t:
//   min_t [ sum_i one_side(y_i,t) - sum_i one_side(x_i,t) ] / t
// on t in [x_d z*(a), x_1], the range where the difference is not identically
// forced by the endpoints. Positive means the continuous profile separates
// the pair with room for discretization error proportional to t.
inline double margin_rel(const Profile& prof, const VecD& x, const VecD& y, int grid_n = 4096) {
  double t_lo = x.v.back() * prof.c_scale;
  double t_hi = x.v.front();
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) return -1.0;
  double worst = kInf;
  for (double t : logspace(t_lo, t_hi, grid_n)) {
    double m = 0.0;
    for (double v : y.v) m += prof.one_side(v, t);
    for (double v : x.v) m -= prof.one_side(v, t);
    worst = std::min(worst, m / t);
  }
  return worst;
}

// Midpoint sampling of z* in ell equal cells, frozen to exact rationals. The
// doubles are taken as exact dyadic values; all later checking is exact.
inline ProbVec discretize(const Profile& prof, long long ell) {
  if (ell < 1) fail(Err::InvalidParams, "discretize needs ell >= 1");
  std::vector<Rat> comps;
  comps.reserve(static_cast<size_t>(ell));
  for (long long j = 1; j <= ell; ++j) {
    double s = (static_cast<double>(j) - 0.5) * prof.p.a / static_cast<double>(ell);
    comps.push_back(rat_from_double(prof.zstar(s)));
  }
  return canonicalize(std::move(comps));
}

inline ProbVec discretize(const Profile& prof, const StitchParams& params) {
  return discretize(prof, params.ell);
}

// ---------------------------------------------------------------------------
// Desingularization: y with k zeros is replaced by the strictly positive
//   y^(n) = ((n-1)/n) y on the support, S/(nk) in place of each zero,
// which preserves the sum and satisfies y^(n) ≺ y for every n. A candidate n
// qualifies when the filled vector stays decreasing, keeps both endpoint
// inequalities against x, and keeps the curve margin positive across the
// finite window. All conditions relax as n grows, so the smallest qualifying
// n is found by doubling plus binary search.
// ---------------------------------------------------------------------------

inline ProbVec desing_candidate(const ProbVec& y, long long n) {
  if (n < 2) fail(Err::InvalidParams, "desingularization needs n >= 2");
  int k = y.dim() - y.support();
  if (k == 0) return y;
  mpz_class nz(static_cast<long>(n));  // gmpxx has no long long constructor
  Rat nn(nz);
  Rat scale_f = Rat(nz - 1) / nn;
  Rat fill = y.sum() / Rat(nz * mpz_class(k));
  std::vector<Rat> comps;
  comps.reserve(static_cast<size_t>(y.dim()));
  for (int i = 0; i < y.support(); ++i) comps.push_back(scale_f * y[i]);
  for (int i = 0; i < k; ++i) comps.push_back(fill);
  return canonicalize(std::move(comps));
}

struct DesingResult {
  ProbVec y;
  long long n = 0;  // 0 when y was already strictly positive
};

namespace detail {

inline bool desing_qualifies(const ProbVec& x, const ProbVec& y, long long n) {
  int k = y.dim() - y.support();
  mpz_class nz(static_cast<long>(n));
  Rat nn(nz);
  Rat fill = y.sum() / Rat(nz * mpz_class(k));
  Rat min_pos = y[y.support() - 1];
  Rat scale_f = Rat(nz - 1) / nn;
  if (fill > scale_f * min_pos) return false;   // constructed order not decreasing
  if (!(fill < x.bottom())) return false;       // x_d > y'_d
  if (!(scale_f * y.top() > x.top())) return false;  // x_1 < y'_1

  ProbVec yn = desing_candidate(y, n);
  try {
    // The exact checks above hold, but the double-rounded endpoints may still
    // tie; such a razor-thin candidate is useless for the float construction.
    RWindow w = window_bounds(x, yn);
    double lo = std::max(w.r_lo, -kRCap), hi = std::min(w.r_hi, kRCap);
    if (!(hi > lo)) return false;
    for (double r : linspace(lo, hi, 255)) {
      double f = F_appendix(x, yn, r);
      if (!(f > 1e-12)) return false;  // non-finite rejects as well
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace detail

inline DesingResult desingularize_full(const ProbVec& x, const ProbVec& y, long long max_n) {
  if (!x.strictly_positive())
    fail(Err::InvalidInput, "desingularization needs strictly positive x");
  if (x.dim() != y.dim())
    fail(Err::DimensionMismatch, "desingularization expects an equal-dimension pair");
  if (y.strictly_positive()) return {y, 0};

  long long hi = 2;
  while (hi <= max_n && !detail::desing_qualifies(x, y, hi)) {
    if (hi > max_n / 2) {
      hi = -1;
      break;
    }
    hi *= 2;
  }
  if (hi < 0 || hi > max_n)
    fail(Err::BudgetExceeded, "no qualifying desingularization depth within budget");

  long long lo = hi / 2;  // lo < 2 or already tested non-qualifying above
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (detail::desing_qualifies(x, y, mid))
      hi = mid;
    else
      lo = mid;
  }
  // The qualifying predicate is monotone by the mixing lemma; walk a few
  // steps down in case grid evaluation wobbled at the boundary.
  for (int i = 0; i < 8 && hi > 2 && detail::desing_qualifies(x, y, hi - 1); ++i) --hi;

  DesingResult res{desing_candidate(y, hi), hi};
  if (!majorizes(res.y, y).holds)
    fail(Err::BudgetExceeded, "desingularized vector failed its exact majorization check");
  return res;
}

inline ProbVec desingularize(const ProbVec& x, const ProbVec& y) {
  return desingularize_full(x, y, 1LL << 60).y;
}

// ---------------------------------------------------------------------------
// Brute-force catalyst search: decreasing lattice vectors with z_1 = 1, all
// other components in {1/grid, ..., grid/grid}. Dimensions ascending, tuples
// in ascending lexicographic order, first exact hit wins; the outcome is a
// deterministic canonical witness.
// ---------------------------------------------------------------------------

inline std::optional<ProbVec> brute_force_search(const ProbVec& x_in, const ProbVec& y_in,
                                                 int max_dim, int grid) {
  if (max_dim < 1 || grid < 1) return std::nullopt;
  ProbVec x = x_in, y = y_in;
  pad_pair(x, y);
  for (int dim = 1; dim <= max_dim; ++dim) {
    if (dim == 1) {
      if (majorizes(x, y).holds) return canonicalize({Rat(1)});
      continue;
    }
    std::vector<int> digits(static_cast<size_t>(dim) - 1, 1);
    while (true) {
      std::vector<Rat> comps{Rat(1)};
      for (int d : digits) comps.push_back(make_rat(d, grid));
      ProbVec z = canonicalize(std::move(comps));
      if (catalyzed_majorizes(x, y, z).holds) return z;
      int j = dim - 2;
      while (j >= 0 && digits[static_cast<size_t>(j)] >=
                           (j == 0 ? grid : digits[static_cast<size_t>(j) - 1]))
        --j;
      if (j < 0) break;
      ++digits[static_cast<size_t>(j)];
      for (int m = j + 1; m <= dim - 2; ++m) digits[static_cast<size_t>(m)] = 1;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// certify: produce a verified catalyst for a Trumped pair.
// ---------------------------------------------------------------------------

struct SearchBudget {
  long long max_ell = 4096;
  int max_n = 64;
  int brute_max_dim = 3;  // 0 disables the brute-force phase
  int brute_grid = 64;
  long long budget_ms = 30000;  // <= 0 removes the wall-clock limit
  long long max_desing_n = 1LL << 60;
};

enum class Method { BruteForce, Constructed };

struct CatalystCertificate {
  ProbVec z;
  Method method = Method::BruteForce;
  std::optional<StitchParams> params;
  MajorizationReport verification;  // holds = true on every returned certificate
  long long desing_n = 0;           // desingularization depth used, 0 if none
};

// Pipeline: plain majorization short-circuit, decision gate, brute force on
// the original pair, then the constructive ladder on the reduced pair. Each
// rung desingularizes deeper (bringing the filled components further below
// x_d); each rung sweeps profile steepness n, stitch safety factor sf, and a
// doubling catalyst dimension ell. A candidate only becomes a certificate by
// passing the exact tensor-majorization check against the original pair; the
// desingularized target only steers the construction, since z catalyzing
// (x', y^(n)) with y^(n) ≺ y' catalyzes (x', y') by tensor monotonicity and
// shared components cancel on both sides.
inline CatalystCertificate certify(const ProbVec& x_in, const ProbVec& y_in,
                                   const SearchBudget& budget = {}) {
  ProbVec x = x_in, y = y_in;
  pad_pair(x, y);
  auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (budget.budget_ms <= 0) return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    return ms >= budget.budget_ms;
  };

  if (majorizes(x, y).holds) {
    ProbVec z = canonicalize({Rat(1)});
    return {z, Method::BruteForce, std::nullopt, catalyzed_majorizes(x, y, z), 0};
  }
  if (decide(x, y).kind != VerdictKind::Trumped)
    fail(Err::NotApplicable, "certify needs a Trumped pair");

  if (budget.brute_max_dim > 0) {
    if (auto z = brute_force_search(x, y, budget.brute_max_dim, budget.brute_grid)) {
      MajorizationReport rep = catalyzed_majorizes(x, y, *z);
      if (rep.holds) return {*z, Method::BruteForce, std::nullopt, rep, 0};
    }
  }

  ReducedPair red = reduce_pair(x, y);
  if (!red.x.strictly_positive())
    fail(Err::NotApplicable, "reduced x keeps a zero; the pair cannot be Trumped");

  std::vector<long long> rungs;
  if (red.y.strictly_positive()) {
    rungs.push_back(0);
  } else {
    long long n0 = desingularize_full(red.x, red.y, budget.max_desing_n).n;
    for (long long nd = n0; nd <= budget.max_desing_n; nd *= 2) {
      rungs.push_back(nd);
      if (nd > budget.max_desing_n / 2) break;
    }
  }

  int dim = red.x.dim();
  for (long long nd : rungs) {
    ProbVec target = nd == 0 ? red.y : desing_candidate(red.y, nd);
    if (nd != 0) {
      if (!(target.bottom() < red.x.bottom() && target.top() > red.x.top())) continue;
      if (!majorizes(target, red.y).holds) continue;
    }
    VecD vx(red.x), vy(target);
    double y1 = vy.v.front(), yd = vy.v.back();
    for (int n = 1; n <= budget.max_n; n *= 2) {
      if (out_of_time()) fail(Err::BudgetExceeded, "certify ran out of wall-clock budget");
      if (!check_step1(red.x, target, n) || !check_step2(red.x, target, n)) continue;
      for (double sf : {2.0, 4.0, 8.0}) {
        Profile prof;
        try {
          prof = stitch_zstar(make_params(n, y1, yd, sf), y1, yd);
        } catch (const Error&) {
          continue;  // parameters not representable at this steepness
        }
        double drel = margin_rel(prof, vx, vy);
        if (!(drel > 1e-15)) continue;
        double suggested = std::ceil(prof.p.a * dim / drel);
        long long ell0 = 64;
        if (suggested > 64.0)
          ell0 = suggested > static_cast<double>(budget.max_ell)
                     ? budget.max_ell
                     : static_cast<long long>(suggested);
        for (long long ell = ell0; ell <= budget.max_ell; ell *= 2) {
          if (out_of_time()) fail(Err::BudgetExceeded, "certify ran out of wall-clock budget");
          ProbVec z = discretize(prof, ell);
          MajorizationReport rep = catalyzed_majorizes(x, y, z);
          if (rep.holds) {
            StitchParams done = prof.p;
            done.ell = ell;
            done.delta = drel;
            return {z, Method::Constructed, done, rep, nd};
          }
        }
      }
    }
  }
  fail(Err::BudgetExceeded, "construction ladder exhausted without a verified catalyst");
}

}  // namespace catmaj
