#include "wpvol/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace wpvol {

BigRational normalized_ratio(int g, int n, const BigRational& v) {
  ModuliPoint p{g, n};
  require_stable(p);
  if (sgn(v) < 0) throw DomainError("volume must be non-negative, got " + to_string(v));
  return v / BigRational(factorial(static_cast<unsigned long>(p.dim())));
}

double log_profile(int g, int n, const BigRational& v) {
  if (g <= 1) throw DomainError("log profile needs g >= 2 (ln g > 0), got g = " + std::to_string(g));
  if (sgn(v) <= 0) throw DomainError("log profile needs a positive volume");
  return log_rational(normalized_ratio(g, n, v)) / (g * std::log(static_cast<double>(g)));
}

double root_value(int g, int n, const BigRational& v) {
  if (g < 1) throw DomainError("root normalization needs g >= 1");
  if (sgn(v) <= 0) throw DomainError("root normalization needs a positive volume");
  BigRational scaled = normalized_ratio(g, n, v) / BigRational(factorial(2 * static_cast<unsigned long>(g)));
  return std::exp(log_rational(scaled) / g);
}

RatioPoint make_ratio_point(int g, int n, const BigRational& v, Provenance kind) {
  RatioPoint pt;
  pt.g = g;
  pt.n = n;
  pt.value_kind = kind;
  pt.r = normalized_ratio(g, n, v);
  if (g >= 1 && sgn(v) > 0) pt.root = root_value(g, n, v);
  if (g >= 2 && sgn(v) > 0) pt.logprof = log_profile(g, n, v);
  return pt;
}

RootWindow root_window(std::span<const RatioPoint> points) {
  if (points.empty()) throw DomainError("root window of an empty point list");
  RootWindow w{points.front().root, points.front().root};
  for (const auto& pt : points) {
    if (pt.g < 1) throw DomainError("root window needs g >= 1 for every point");
    w.c_est = std::min(w.c_est, pt.root);
    w.C_est = std::max(w.C_est, pt.root);
  }
  return w;
}

}  // namespace wpvol
