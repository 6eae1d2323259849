// catmaj: decide catalytic majorization, build catalysts, export g(r) curves.
//
// Exit codes
//   decide   0 Trumped, 1 NotTrumped, 2 Equal or Boundary
//   certify  0 certificate written, 1 not applicable, 3 budget exceeded
//   verify   0 holds, 1 violated
//   curve    0 written, 74 I/O failure
//   rand     0
//   64 on any usage or input error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "catmaj/catmaj.hpp"

using namespace catmaj;
using nlohmann::json;

namespace {

// Shortest decimal that round-trips; never more than 17 significant digits.
std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// JSON has no literals for non-finite values; encode them as strings.
json json_double(double v) { return std::isfinite(v) ? json(v) : json(fmt_double(v)); }

const char* kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Trumped: return "Trumped";
    case VerdictKind::NotTrumped: return "NotTrumped";
    case VerdictKind::Equal: return "Equal";
    default: return "Boundary";
  }
}

// FNV-1a over the exact canonical transcript of a verification.
std::string transcript_digest(const ProbVec& x, const ProbVec& y, const ProbVec& z,
                              bool holds) {
  std::string t = "x=" + format_vector(x) + "|y=" + format_vector(y) +
                  "|z=" + format_vector(z) + "|holds=" + (holds ? "1" : "0");
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : t) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

ProbVec parse_normalized(const std::string& spec, const char* name) {
  ProbVec v = parse_vector(spec);
  if (!v.normalized) fail(Err::InvalidInput, std::string(name) + " must sum to exactly 1");
  return v;
}

int run_decide(const std::string& xs, const std::string& ys, double tol, int threads,
               const std::string& format) {
  ProbVec x = parse_normalized(xs, "--x");
  ProbVec y = parse_normalized(ys, "--y");
  Verdict v = decide(x, y, tol, threads);

  if (format == "json") {
    json j;
    j["kind"] = kind_name(v.kind);
    j["min_margin"] = json_double(v.min_margin);
    j["argmin_r"] = v.argmin_r ? json_double(*v.argmin_r) : json(nullptr);
    j["witness_r"] = v.witness_r ? json_double(*v.witness_r) : json(nullptr);
    j["window"] = {{"r_lo", json_double(v.window.r_lo)},
                   {"r_hi", json_double(v.window.r_hi)},
                   {"lo_open_at_zero", v.window.lo_open_at_zero}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "kind: " << kind_name(v.kind) << "\n";
    std::cout << "min_margin: " << fmt_double(v.min_margin) << "\n";
    if (v.argmin_r) std::cout << "argmin_r: " << fmt_double(*v.argmin_r) << "\n";
    if (v.witness_r) std::cout << "witness_r: " << fmt_double(*v.witness_r) << "\n";
    if (v.window.r_hi > v.window.r_lo)  // degenerate means no scan happened
      std::cout << "window: " << (v.window.lo_open_at_zero ? "(" : "[")
                << fmt_double(v.window.r_lo) << ", " << fmt_double(v.window.r_hi) << "]\n";
  }

  switch (v.kind) {
    case VerdictKind::Trumped: return 0;
    case VerdictKind::NotTrumped: return 1;
    default: return 2;
  }
}

int run_certify(const std::string& xs, const std::string& ys, const SearchBudget& budget,
                const std::string& format) {
  ProbVec x = parse_normalized(xs, "--x");
  ProbVec y = parse_normalized(ys, "--y");
  CatalystCertificate cert = certify(x, y, budget);
  // Digest the pair as verified, i.e. after zero padding to a common length.
  ProbVec px = x, py = y;
  pad_pair(px, py);
  std::string digest = transcript_digest(px, py, cert.z, cert.verification.holds);

  if (format == "json") {
    json j;
    j["method"] = cert.method == Method::Constructed ? "Constructed" : "BruteForce";
    json zc = json::array();
    for (int i = 0; i < cert.z.dim(); ++i) zc.push_back(to_string(cert.z[i]));
    j["z"] = zc;
    j["desing_n"] = cert.desing_n;
    if (cert.params) {
      j["ell"] = cert.params->ell;
      j["params"] = {{"n_plus", cert.params->n_plus},
                     {"n_minus", cert.params->n_minus},
                     {"s_plus", json_double(cert.params->s_plus)},
                     {"s_minus", json_double(cert.params->s_minus)},
                     {"a", json_double(cert.params->a)},
                     {"delta", json_double(cert.params->delta)}};
    } else {
      j["ell"] = nullptr;
      j["params"] = nullptr;
    }
    j["verification"] = {{"holds", cert.verification.holds},
                         {"sums_equal", cert.verification.sums_equal},
                         {"digest", digest}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "method: "
              << (cert.method == Method::Constructed ? "Constructed" : "BruteForce") << "\n";
    std::cout << "desing_n: " << cert.desing_n << "\n";
    if (cert.params) {
      std::cout << "ell: " << cert.params->ell << "\n";
      std::cout << "delta: " << fmt_double(cert.params->delta) << "\n";
    }
    std::cout << "z: " << format_vector(cert.z) << "\n";
    std::cout << "verification: " << (cert.verification.holds ? "holds" : "violated") << "\n";
    std::cout << "digest: " << digest << "\n";
  }
  return cert.verification.holds ? 0 : 3;
}

int run_verify(const std::string& xs, const std::string& ys, const std::string& zs,
               const std::string& format) {
  ProbVec x = parse_normalized(xs, "--x");
  ProbVec y = parse_normalized(ys, "--y");
  ProbVec z = parse_vector(zs);
  pad_pair(x, y);
  MajorizationReport rep = catalyzed_majorizes(x, y, z);

  if (format == "json") {
    json j;
    j["holds"] = rep.holds;
    j["first_violation_index"] =
        rep.first_violation_index ? json(*rep.first_violation_index) : json(nullptr);
    std::cout << j.dump() << "\n";
  } else if (rep.holds) {
    std::cout << "holds\n";
  } else {
    std::cout << "violated at prefix k=" << *rep.first_violation_index << "\n";
  }
  return rep.holds ? 0 : 1;
}

int run_curve(const std::string& xs, const std::string& ys, double r_min, double r_max,
              int samples, const std::string& out) {
  ProbVec x = parse_normalized(xs, "--x");
  ProbVec y = parse_normalized(ys, "--y");
  pad_pair(x, y);
  std::vector<CurveSample> curve = sample_curve(x, y, r_min, r_max, samples);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (out != "-") {
    file.open(out, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open " << out << " for writing\n";
      return 74;
    }
    os = &file;
  }

  (*os) << "r,g,flag\n";
  for (const CurveSample& s : curve) {
    (*os) << fmt_double(s.r) << ',';
    switch (s.flag) {
      case CurveFlag::Ok:
        (*os) << fmt_double(s.g) << ",ok";
        break;
      case CurveFlag::LimitR0:
        (*os) << fmt_double(s.g) << ",limit_r0";
        break;
      case CurveFlag::LimitR1:
        (*os) << fmt_double(s.g) << ",limit_r1";
        break;
      case CurveFlag::Infinite:
        (*os) << ",infinite";  // CSV has no infinity literal
        break;
      case CurveFlag::Indeterminate:
        (*os) << ",limit_r0";  // the r = 0 slot, value unavailable with zeros
        break;
    }
    (*os) << '\n';
  }
  os->flush();
  if (!*os) {
    std::cerr << "error: write failed\n";
    return 74;
  }
  return 0;
}

int run_rand(int d, long long count, unsigned long long seed) {
  // Uniform direction on the simplex from normalized exponentials, rounded
  // onto the lattice k / 2^20 by largest remainder so sums stay exactly 1.
  constexpr long kDenom = 1L << 20;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(std::nextafter(0.0, 1.0), 1.0);
  for (long long line = 0; line < count; ++line) {
    std::vector<double> e(static_cast<size_t>(d));
    double total = 0;
    for (double& v : e) {
      v = -std::log(uni(rng));
      total += v;
    }
    std::vector<long> k(e.size());
    std::vector<std::pair<double, size_t>> frac(e.size());
    long assigned = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      double target = e[i] / total * kDenom;
      k[i] = static_cast<long>(target);
      assigned += k[i];
      frac[i] = {target - static_cast<double>(k[i]), i};
    }
    std::stable_sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
      return a.first > b.first;
    });
    for (long r = 0; r < kDenom - assigned; ++r) ++k[frac[static_cast<size_t>(r)].second];

    std::vector<Rat> comps;
    comps.reserve(e.size());
    for (long v : k) comps.push_back(make_rat(v, kDenom));
    std::cout << format_vector(canonicalize(std::move(comps))) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalytic majorization toolkit"};
  app.require_subcommand(1);

  double tol = 1e-9;
  long long budget_ms = 30000;
  int max_dim = 3;
  std::string format = "text";
  int threads = 0;
  unsigned long long seed = 0;

  app.add_option("--tol", tol, "decision tolerance (> 0)")->check(CLI::PositiveNumber);
  app.add_option("--budget-ms", budget_ms, "wall-clock budget for certify, in ms (> 0)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-dim", max_dim, "max brute-force catalyst dimension (0 disables)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", threads, "worker threads (default: CATMAJ_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "seed for randomized subcommands");

  std::string xs, ys, zs, out = "-";
  double r_min = 0, r_max = 0;
  int samples = 0, d = 0;
  long long count = 1;

  CLI::App* cmd_decide = app.add_subcommand("decide", "decide whether x is trumped by y");
  cmd_decide->fallthrough();
  cmd_decide->add_option("--x", xs, "x vector, scalar(,scalar)*")->required();
  cmd_decide->add_option("--y", ys, "y vector")->required();

  CLI::App* cmd_certify =
      app.add_subcommand("certify", "construct and exactly verify a catalyst");
  cmd_certify->fallthrough();
  cmd_certify->add_option("--x", xs, "x vector")->required();
  cmd_certify->add_option("--y", ys, "y vector")->required();

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "exactly check x(x)z < y(x)z in the majorization order");
  cmd_verify->fallthrough();
  cmd_verify->add_option("--x", xs, "x vector")->required();
  cmd_verify->add_option("--y", ys, "y vector")->required();
  cmd_verify->add_option("--z", zs, "candidate catalyst")->required();

  CLI::App* cmd_curve = app.add_subcommand("curve", "export g(r) samples as CSV");
  cmd_curve->fallthrough();
  cmd_curve->add_option("--x", xs, "x vector")->required();
  cmd_curve->add_option("--y", ys, "y vector")->required();
  cmd_curve->add_option("--r-min", r_min, "left end of the r grid")->required();
  cmd_curve->add_option("--r-max", r_max, "right end of the r grid")->required();
  cmd_curve->add_option("--samples", samples, "grid size (>= 2)")->required();
  cmd_curve->add_option("--out", out, "output path, - for stdout");

  CLI::App* cmd_rand = app.add_subcommand("rand", "emit random normalized exact vectors");
  cmd_rand->fallthrough();
  cmd_rand->add_option("--d", d, "dimension (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
  cmd_rand->add_option("--count", count, "number of vectors")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  if (threads <= 0) {
    threads = 1;
    if (const char* env = std::getenv("CATMAJ_THREADS")) {
      int parsed = std::atoi(env);
      if (parsed > 0) threads = parsed;
    }
  }

  try {
    if (cmd_decide->parsed()) return run_decide(xs, ys, tol, threads, format);
    if (cmd_certify->parsed()) {
      SearchBudget budget;
      budget.budget_ms = budget_ms;
      budget.brute_max_dim = max_dim;
      return run_certify(xs, ys, budget, format);
    }
    if (cmd_verify->parsed()) return run_verify(xs, ys, zs, format);
    if (cmd_curve->parsed()) return run_curve(xs, ys, r_min, r_max, samples, out);
    if (cmd_rand->parsed()) return run_rand(d, count, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case Err::NotApplicable: return 1;
      case Err::BudgetExceeded: return 3;
      default: return 64;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 64;
}
