#pragma once

#include <string>
#include <vector>

#include "wpvol/intersection.hpp"

namespace wpvol {

/// One checked relation `lhs relation rhs`.
struct CheckRow {
  std::string check;
  std::string subject;
  std::string lhs;
  std::string relation;  // "=", ">=", "<="
  std::string rhs;
  bool ok = false;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckRow> rows;

  bool ok() const;
  const CheckRow* first_failure() const;
};

/// psi-top identities int psi^{3g-2} = 1/(24^g g!) on Mbar_{g,1} for g >= 1
/// with 3g-2 <= max_dim (g <= 6), int psi^{n-2} = 1 on Mbar_{0,n+1} for
/// n = 3..9, and the four base volumes.
VerificationReport verify_anchors(IntersectionEngine& engine, int max_dim = 16);

/// Exact V_{g,n+1} >= thm1_step(g, n, V_{g,n}) for stable, non-excluded
/// (g, n) with 3g-2+n <= max_dim, plus the equality cases (0,3) and (0,5).
VerificationReport verify_thm1(IntersectionEngine& engine, int max_dim = 9);

/// Exact V_{g,0} >= thm2_bound in both middle modes for 2 <= g, 3g-3 <= max_dim,
/// and the g = 2 right-hand side 1/224.
VerificationReport verify_thm2(IntersectionEngine& engine, int max_dim = 9);

/// Every pure kappa monomial (indices >= 1) of top degree is >= 0 on every
/// stable (g, n) with 3g-3+n <= max_dim.
VerificationReport verify_lemma1(IntersectionEngine& engine, int max_dim = 6);

/// Partitions of `total` into positive parts, parts descending.
std::vector<std::vector<int>> integer_partitions(int total);

}  // namespace wpvol
