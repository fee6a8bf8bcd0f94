#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wpvol {

/// A moduli space of genus-g curves with n marked points.
struct ModuliPoint {
  int g = 0;
  int n = 0;

  constexpr bool stable() const { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }
  constexpr int dim() const { return 3 * g - 3 + n; }
  /// Euler characteristic term 2g-2+n; also the value of kappa_0.
  constexpr int euler() const { return 2 * g - 2 + n; }

  friend constexpr auto operator<=>(const ModuliPoint&, const ModuliPoint&) = default;
};

std::string to_string(const ModuliPoint& p);

/// Throws DomainError naming the point when 2g-2+n <= 0.
void require_stable(const ModuliPoint& p);

/// psi exponents, one per marked point, kept sorted descending.
class PsiExponents {
 public:
  PsiExponents() = default;
  explicit PsiExponents(std::vector<int> exponents);

  std::span<const int> values() const { return exps_; }
  std::size_t size() const { return exps_.size(); }
  int degree() const;

  friend auto operator<=>(const PsiExponents&, const PsiExponents&) = default;

 private:
  std::vector<int> exps_;
};

/// kappa multiplicities: class index j >= 0 -> multiplicity m_j >= 1,
/// ascending in j.
class KappaExponents {
 public:
  KappaExponents() = default;
  explicit KappaExponents(const std::map<int, int>& multiplicities);
  /// One factor kappa_j per list element.
  static KappaExponents from_factors(std::span<const int> indices);

  std::span<const std::pair<int, int>> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;
  int factor_count() const;
  int multiplicity(int index) const;

  friend auto operator<=>(const KappaExponents&, const KappaExponents&) = default;

 private:
  std::vector<std::pair<int, int>> terms_;
};

/// Canonical identity of a psi/kappa monomial integral; the number of marked
/// points is the length of the psi list.
struct IntersectionKey {
  int g = 0;
  PsiExponents psi;
  KappaExponents kappa;

  ModuliPoint point() const { return {g, static_cast<int>(psi.size())}; }
  int degree() const { return psi.degree() + kappa.degree(); }

  friend auto operator<=>(const IntersectionKey&, const IntersectionKey&) = default;
};

/// "g=<int>;psi=<desc ints>;kappa=<j:m ascending>", e.g.
/// "g=1;psi=0,0;kappa=0:1,1:1".
std::string to_string(const IntersectionKey& key);

/// Inverse of to_string(IntersectionKey); only canonical spellings parse.
IntersectionKey parse_key(std::string_view text);

struct IntersectionKeyHash {
  std::size_t operator()(const IntersectionKey& key) const noexcept;
};

/// Comma-separated non-negative integers ("" gives an empty list).
std::vector<int> parse_int_list(std::string_view text);

/// Comma-separated "j:m" pairs; repeated indices accumulate.
std::map<int, int> parse_kappa_list(std::string_view text);

}  // namespace wpvol
