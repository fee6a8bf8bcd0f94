#pragma once

#include <span>
#include <vector>

#include "wpvol/bounds.hpp"
#include "wpvol/rational.hpp"

namespace wpvol {

/// Normalized volume V/(3g-3+n)! and its two log-scale profiles.
struct RatioPoint {
  int g = 0;
  int n = 0;
  Provenance value_kind = Provenance::Exact;
  BigRational r;
  double root = 0.0;                    // (r/(2g)!)^(1/g), g >= 1
  std::optional<double> logprof;        // ln(r)/(g ln g), g >= 2
};

/// v / (3g-3+n)!, exact.
BigRational normalized_ratio(int g, int n, const BigRational& v);

/// ln(v/(3g-3+n)!) / (g ln g). Requires g >= 2 and v > 0.
double log_profile(int g, int n, const BigRational& v);

/// (v/(3g-3+n)! / (2g)!)^(1/g). Requires g >= 1 and v > 0.
double root_value(int g, int n, const BigRational& v);

RatioPoint make_ratio_point(int g, int n, const BigRational& v, Provenance kind = Provenance::Exact);

struct RootWindow {
  double c_est = 0.0;
  double C_est = 0.0;
};

/// min and max of the root values over the points.
RootWindow root_window(std::span<const RatioPoint> points);

}  // namespace wpvol
