#pragma once

#include <cstddef>
#include <map>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wpvol/moduli.hpp"
#include "wpvol/rational.hpp"

namespace wpvol {

/// Which kappa factor the push-pull reduction removes first. Both orders give
/// identical values; the choice only changes the recursion path.
enum class RemovalOrder { SmallestIndexFirst, LargestIndexFirst };

/// Exact psi/kappa intersection numbers on the compactified moduli space of
/// stable curves.
///
/// Pure psi integrals <tau_{a_1} ... tau_{a_n}>_g are reduced with the string
/// and dilaton equations until every exponent is at least 2, then evaluated
/// with the DVV form of the Virasoro constraints, seeded by <tau_0^3>_0 = 1 and
/// <tau_1>_1 = 1/24. Kappa factors are removed one at a time:
///
///   int_{g,n} psi^a kappa_b prod kappa_c
///     = int_{g,n+1} psi^a psi_{n+1}^{b+1} prod (kappa_c - psi_{n+1}^c)
///
/// and kappa_0 contributes the scalar 2g-2+n.
///
/// Results are memoized per key. The memo is guarded by a shared mutex, so one
/// engine may be queried from several threads; two threads computing the same
/// key concurrently both publish the same value.
class IntersectionEngine {
 public:
  explicit IntersectionEngine(RemovalOrder order = RemovalOrder::SmallestIndexFirst);

  IntersectionEngine(const IntersectionEngine&) = delete;
  IntersectionEngine& operator=(const IntersectionEngine&) = delete;

  /// int psi_1^{a_1} ... psi_n^{a_n} over Mbar_{g,n}, n = a.size().
  /// Zero when sum(a) != 3g-3+n. Throws DomainError for unstable (g, n).
  BigRational psi_intersection(int g, std::span<const int> a);

  /// Mixed psi/kappa monomial integral. Throws DomainError for unstable points.
  BigRational mixed_intersection(const IntersectionKey& key);

  /// V_{g,n} = int kappa_1^{3g-3+n}. The V_{0,3} = 0 convention is not applied
  /// here: (0,3) yields int kappa_1^0 = 1.
  BigRational wp_volume(const ModuliPoint& point);

  RemovalOrder removal_order() const { return order_; }

  /// Memo contents as canonical key string -> value, sorted by key string.
  std::map<std::string, BigRational> snapshot() const;

  /// Inserts externally stored values (e.g. a cache file). Existing entries
  /// are kept.
  void seed(const std::map<std::string, BigRational>& entries);

  std::size_t memo_size() const;
  void clear();

 private:
  BigRational psi_sorted(int g, std::vector<int> a);
  BigRational psi_reduced(int g, const std::vector<int>& a);
  BigRational mixed_canonical(const IntersectionKey& key);

  bool lookup(const IntersectionKey& key, BigRational& out) const;
  void publish(const IntersectionKey& key, const BigRational& value);

  const BigInteger& dfact(int m) const;

  RemovalOrder order_;
  mutable std::shared_mutex memo_mutex_;
  std::unordered_map<IntersectionKey, BigRational, IntersectionKeyHash> memo_;
  std::vector<BigInteger> dfact_;  // dfact_[m] = (2m-1)!!, immutable after construction
};

/// Process-wide engine used by the free functions below.
IntersectionEngine& default_engine();

BigRational psi_intersection(int g, std::span<const int> a);
BigRational mixed_intersection(const IntersectionKey& key);
BigRational wp_volume(const ModuliPoint& point);

}  // namespace wpvol
