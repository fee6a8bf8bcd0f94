#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wpvol/asymptotics.hpp"
#include "wpvol/bounds.hpp"
#include "wpvol/cache.hpp"
#include "wpvol/cli.hpp"
#include "wpvol/intersection.hpp"
#include "wpvol/verify.hpp"

using namespace wpvol;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (outcome.ok && secs >= limit_seconds) outcome = {false, "time limit exceeded"};
  if (!outcome.ok) ++failures;
  std::printf("[%s] AC%d %s (%.3f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              outcome.ok ? "" : ": ", outcome.detail.c_str());
}

Outcome from_report(const VerificationReport& report) {
  Outcome out;
  out.require(!report.rows.empty(), report.name + ": no checks ran");
  if (const CheckRow* bad = report.first_failure())
    out.require(false, bad->check + " " + bad->subject + ": " + bad->lhs + " " + bad->relation + " " + bad->rhs);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wpvol_acceptance";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

Outcome base_values() {
  IntersectionEngine e;
  Outcome out;
  out.require(e.wp_volume({0, 4}) == 1, "V_{0,4}");
  out.require(e.wp_volume({0, 5}) == 5, "V_{0,5}");
  out.require(e.wp_volume({1, 1}) == BigRational(1, 24), "V_{1,1}");
  out.require(e.wp_volume({1, 2}) == BigRational(1, 8), "V_{1,2}");
  return out;
}

Outcome psi_anchors() {
  IntersectionEngine e;
  VerificationReport report = verify_anchors(e, 16);
  Outcome out = from_report(report);
  auto count = std::count_if(report.rows.begin(), report.rows.end(),
                             [](const CheckRow& r) { return r.check != "base-volume"; });
  out.require(count == 13, "expected 6 psi-top and 7 genus-0 rows");
  return out;
}

Outcome preset_identities() {
  Outcome out;
  MuVector ample = divisor_mu({BigRational(56, 5), {1, 1, 1, 1}});
  for (const auto& m : ample.mu) out.require(m == BigRational(1, 14), "ample mu_j != 1/14");
  out.require(ample.mu[0] / 2 == BigRational(1, 28), "ample delta_0 coefficient");
  out.require(ample.mu[1] / 48 == BigRational(1, 672), "ample delta_1 coefficient");

  MuVector canon = divisor_mu({13, {2, 3, 2, 3, 2}});
  out.require(canon.mu[0] == BigRational(11, 13), "mu_0");
  out.require(canon.mu[1] == BigRational(23, 13), "mu_1");
  out.require(canon.mu[2] == BigRational(11, 13), "mu_2");
  out.require(canon.mu[0] / 2 == BigRational(11, 26), "delta_0 coefficient");
  out.require(canon.mu[1] / 48 == BigRational(23, 624), "delta_1 coefficient");
  out.require(canon.mu[2] == BigRational(11, 13), "delta_j coefficient");
  return out;
}

Outcome property_suite() {
  Outcome out;
  std::mt19937 rng(7);
  IntersectionEngine smallest(RemovalOrder::SmallestIndexFirst);
  IntersectionEngine largest(RemovalOrder::LargestIndexFirst);
  int keys = 0;
  while (keys < 200) {
    int g = static_cast<int>(rng() % 4);
    int n = static_cast<int>(rng() % 6);
    ModuliPoint p{g, n};
    if (!p.stable() || p.dim() > 7) continue;
    ++keys;
    int dim = p.dim();
    int kappa_deg = n == 0 ? dim : static_cast<int>(rng() % static_cast<unsigned>(dim + 1));
    std::vector<int> psi(static_cast<size_t>(n), 0);
    for (int left = dim - kappa_deg; left > 0; --left) ++psi[rng() % static_cast<unsigned>(n)];
    std::vector<int> kappa;
    for (int left = kappa_deg; left > 0;) {
      int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(left));
      kappa.push_back(j);
      left -= j;
    }
    if (rng() % 4 == 0) kappa.push_back(0);
    IntersectionKey key{g, PsiExponents(psi), KappaExponents::from_factors(kappa)};
    BigRational a = smallest.mixed_intersection(key);
    out.require(a == largest.mixed_intersection(key), "removal order disagrees at " + to_string(key));
    std::shuffle(psi.begin(), psi.end(), rng);
    IntersectionKey shuffled{g, PsiExponents(psi), KappaExponents::from_factors(kappa)};
    out.require(a == smallest.mixed_intersection(shuffled), "permutation changes " + to_string(key));
  }
  return out;
}

Outcome chain_soundness() {
  Outcome out;
  IntersectionEngine e;
  VolumeTable table = build_chain(50, 2, 9, e);
  if (auto problem = table.check()) out.require(false, *problem);
  int compared = 0;
  for (const auto& [point, entry] : table.entries()) {
    if (entry.lower) {
      out.require(replay(*entry.lower) == entry.lower->value, "lower replay mismatch");
      if (entry.exact) {
        out.require(entry.lower->value <= *entry.exact, "lower exceeds exact");
        ++compared;
      }
    }
    if (entry.upper) out.require(replay(*entry.upper) == entry.upper->value, "upper replay mismatch");
  }
  out.require(compared > 0, "no cell carries both exact and lower");
  out.require(table.find({50, 0}) && table.find({50, 0})->lower, "chain does not reach g = 50");
  return out;
}

Outcome asymptotics() {
  Outcome out;
  IntersectionEngine e;
  VolumeTable table = build_chain(6, 2, 9, e);
  int compared = 0;
  for (const auto& [point, entry] : table.entries()) {
    if (point.g < 2 || !entry.lower || !entry.exact || sgn(entry.lower->value) <= 0) continue;
    out.require(log_profile(point.g, point.n, entry.lower->value) <= log_profile(point.g, point.n, *entry.exact),
                "log profile of a lower bound exceeds the exact one");
    ++compared;
  }
  out.require(compared > 0, "no comparable cells");

  std::vector<RatioPoint> pts;
  for (int g = 2; g <= 4; ++g) pts.push_back(make_ratio_point(g, 0, e.wp_volume({g, 0})));
  RootWindow w = root_window(pts);
  out.require(w.c_est > 0 && w.c_est <= w.C_est, "root window is not ordered");

  auto start = std::chrono::steady_clock::now();
  VolumeTable deep = build_chain(200, 1, 6, e);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(deep.find({200, 0}) && deep.find({200, 0})->lower, "chain does not reach g = 200");
  out.require(secs < 60, "chain to g = 200 took too long");
  return out;
}

Outcome cache_roundtrip() {
  Outcome out;
  IntersectionEngine e;
  for (int g = 0; g <= 4; ++g)
    for (int n = 0; 3 * g - 3 + n <= 9; ++n)
      if (ModuliPoint{g, n}.stable()) e.wp_volume({g, n});
  CacheFile source{kCacheVersion, e.snapshot()};
  std::mt19937_64 rng(11);
  for (int i = 0; source.entries.size() < 1200; ++i) {
    BigRational v(static_cast<long>(rng() >> 1) - (1L << 61), static_cast<unsigned long>(rng() | 1));
    v.canonicalize();
    v *= BigRational(BigInteger(rng()) * BigInteger(rng()) + 1);
    source.entries["g=" + std::to_string(1000 + i) + ";psi=" + std::to_string(i % 7) + ";kappa="] = v;
  }

  auto active = scratch("active.json");
  auto exported = scratch("exported.json");
  std::map<std::string, std::string> env{{"WPVOL_CACHE", active.string()}};
  store_cache(active, source);
  out.require(run_command({"cache", "export", "--path", exported.string()}, env).exit_code == kExitOk, "export");
  out.require(load_cache(exported) == source, "export is not bit-exact");
  out.require(run_command({"cache", "clear"}, env).exit_code == kExitOk, "clear");
  out.require(load_cache(active).entries.empty(), "clear left entries");
  out.require(run_command({"cache", "import", "--path", exported.string()}, env).exit_code == kExitOk, "import");
  out.require(load_cache(active) == source, "import is not bit-exact");

  auto broken = scratch("broken.json");
  const char* bad_files[] = {
      "{\n  \"version\": 1,\n  \"entries\": {\n    \"g=2;psi=4;kappa=\": \"2/2304\"\n  }\n}\n",
      "{\n  \"version\": 1,\n  \"entries\": {\n    \"g=2;psi=0,4;kappa=\": \"1/1152\"\n  }\n}\n",
      "{\n  \"version\": 1,\n  \"entries\": {\n    \"g=2;psi=4;kappa=\": \"1/0\"\n  }\n}\n",
      "{\n  \"version\": 2,\n  \"entries\": {}\n}\n",
  };
  for (const char* text : bad_files) {
    std::ofstream(broken, std::ios::trunc) << text;
    out.require(run_command({"cache", "import", "--path", broken.string()}, env).exit_code == kExitDomain,
                "malformed cache accepted");
  }
  out.require(load_cache(active) == source, "rejected import modified the cache");
  return out;
}

}  // namespace

int main() {
  criterion(1, "base volumes exact", 1, base_values);
  criterion(2, "psi anchors exact", 10, psi_anchors);
  criterion(3, "kappa monomials non-negative for dim <= 6", 300, [] {
    IntersectionEngine e;
    return from_report(verify_lemma1(e, 6));
  });
  criterion(4, "first recursive bound for 3g-2+n <= 9", 600, [] {
    IntersectionEngine e;
    return from_report(verify_thm1(e, 9));
  });
  criterion(5, "ample divisor bound for g = 2..4", 600, [] {
    IntersectionEngine e;
    return from_report(verify_thm2(e, 9));
  });
  criterion(6, "preset coefficient identities", 1, preset_identities);
  criterion(7, "permutation and removal-order properties", 600, property_suite);
  criterion(8, "chain soundness to g = 50", 300, chain_soundness);
  criterion(9, "asymptotic profiles at desk scale", 60, asymptotics);
  criterion(10, "cache round trip", 10, cache_roundtrip);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
