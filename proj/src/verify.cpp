#include "wpvol/verify.hpp"

#include <functional>

#include "wpvol/bounds.hpp"

namespace wpvol {

bool VerificationReport::ok() const { return first_failure() == nullptr; }

const CheckRow* VerificationReport::first_failure() const {
  for (const auto& row : rows)
    if (!row.ok) return &row;
  return nullptr;
}

namespace {

std::string vol(int g, int n) { return "V_{" + std::to_string(g) + "," + std::to_string(n) + "}"; }

CheckRow relation(std::string check, std::string subject, const BigRational& lhs, const std::string& rel,
                  const BigRational& rhs) {
  bool ok = rel == "=" ? lhs == rhs : rel == ">=" ? lhs >= rhs : lhs <= rhs;
  return {std::move(check), std::move(subject), to_string(lhs), rel, to_string(rhs), ok};
}

/// V_{g,n} with the V_{0,3} = 0 convention.
BigRational volume_with_convention(IntersectionEngine& engine, int g, int n) {
  if (g == 0 && n == 3) return 0;
  return engine.wp_volume({g, n});
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(total, total);
  return out;
}

VerificationReport verify_anchors(IntersectionEngine& engine, int max_dim) {
  VerificationReport report{"anchors", {}};
  for (int g = 1; g <= 6 && 3 * g - 2 <= max_dim; ++g) {
    BigInteger denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 24, static_cast<unsigned long>(g));
    denom *= factorial(static_cast<unsigned long>(g));
    std::vector<int> a{3 * g - 2};
    report.rows.push_back(relation("psi-top", "<tau_" + std::to_string(3 * g - 2) + ">_" + std::to_string(g),
                                   engine.psi_intersection(g, a), "=", BigRational(1) / BigRational(denom)));
  }
  for (int n = 3; n <= 9 && n - 2 <= max_dim; ++n) {
    std::vector<int> a(static_cast<size_t>(n + 1), 0);
    a[0] = n - 2;
    report.rows.push_back(relation("genus-0-chain", "int_{0," + std::to_string(n + 1) + "} psi^" + std::to_string(n - 2),
                                   engine.psi_intersection(0, a), "=", 1));
  }
  const struct {
    int g, n;
    BigRational v;
  } base[] = {{0, 4, 1}, {0, 5, 5}, {1, 1, BigRational(1, 24)}, {1, 2, BigRational(1, 8)}};
  for (const auto& b : base)
    if (ModuliPoint{b.g, b.n}.dim() <= max_dim)
      report.rows.push_back(relation("base-volume", vol(b.g, b.n), engine.wp_volume({b.g, b.n}), "=", b.v));
  return report;
}

VerificationReport verify_thm1(IntersectionEngine& engine, int max_dim) {
  VerificationReport report{"thm1", {}};
  for (int g = 0; 3 * g - 2 <= max_dim; ++g) {
    for (int n = 0; 3 * g - 2 + n <= max_dim; ++n) {
      ModuliPoint p{g, n};
      if (!p.stable() || thm1_excluded(p)) continue;
      BigRational v = volume_with_convention(engine, g, n);
      BoundCertificate cert = thm1_step(g, n, v);
      BigRational next = engine.wp_volume({g, n + 1});
      report.rows.push_back(relation("thm1", vol(g, n + 1), next, ">=", cert.value));
      if ((g == 0 && n == 3) || (g == 0 && n == 5))
        report.rows.push_back(relation("thm1-equality", vol(g, n + 1), next, "=", cert.value));
    }
  }
  return report;
}

VerificationReport verify_thm2(IntersectionEngine& engine, int max_dim) {
  VerificationReport report{"thm2", {}};
  int g_max = 1;
  while (3 * (g_max + 1) - 3 <= max_dim) ++g_max;
  if (g_max < 2) return report;
  VolumeTable table = build_chain(g_max - 1, 2, max_dim, engine);
  for (int g = 2; g <= g_max; ++g) {
    BigRational exact = engine.wp_volume({g, 0});
    for (MiddleMode mode : {MiddleMode::Thm2Consistent, MiddleMode::AsPrinted}) {
      BoundCertificate cert = thm2_bound(g, table, mode);
      report.rows.push_back(relation("thm2 " + to_string(mode), vol(g, 0), exact, ">=", cert.value));
      if (g == 2 && mode == MiddleMode::Thm2Consistent)
        report.rows.push_back(relation("thm2-g2-rhs", "rhs(g=2)", cert.value, "=", BigRational(1, 224)));
    }
  }
  return report;
}

VerificationReport verify_lemma1(IntersectionEngine& engine, int max_dim) {
  VerificationReport report{"lemma1", {}};
  for (int g = 0; 3 * g - 3 <= max_dim; ++g) {
    for (int n = 0; 3 * g - 3 + n <= max_dim; ++n) {
      ModuliPoint p{g, n};
      if (!p.stable()) continue;
      for (const auto& parts : integer_partitions(p.dim())) {
        IntersectionKey key{g, PsiExponents(std::vector<int>(static_cast<size_t>(n), 0)),
                            KappaExponents::from_factors(parts)};
        report.rows.push_back(relation("lemma1", "int_{" + std::to_string(g) + "," + std::to_string(n) + "} " +
                                                     to_string(key),
                                       engine.mixed_intersection(key), ">=", 0));
      }
    }
  }
  return report;
}

}  // namespace wpvol
