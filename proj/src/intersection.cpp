#include "wpvol/intersection.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace wpvol {

namespace {

constexpr int kPrecomputedDoubleFactorials = 256;

/// (value, multiplicity) runs of a descending exponent list.
std::vector<std::pair<int, int>> runs(std::span<const int> sorted) {
  std::vector<std::pair<int, int>> out;
  for (int a : sorted) {
    if (!out.empty() && out.back().first == a)
      ++out.back().second;
    else
      out.emplace_back(a, 1);
  }
  return out;
}

std::vector<int> with_replaced(std::span<const int> sorted, int old_value, int new_value) {
  std::vector<int> out(sorted.begin(), sorted.end());
  auto it = std::find(out.begin(), out.end(), old_value);
  *it = new_value;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<int> with_added(std::span<const int> sorted, std::initializer_list<int> extra) {
  std::vector<int> out(sorted.begin(), sorted.end());
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

BigInteger binomial(int n, int k) {
  BigInteger r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

IntersectionEngine::IntersectionEngine(RemovalOrder order) : order_(order) {
  dfact_.reserve(kPrecomputedDoubleFactorials);
  for (int m = 0; m < kPrecomputedDoubleFactorials; ++m) dfact_.push_back(double_factorial(2 * m - 1));
}

const BigInteger& IntersectionEngine::dfact(int m) const {
  if (m < 0 || m >= static_cast<int>(dfact_.size()))
    throw DomainError("psi exponent beyond the supported range (" + std::to_string(m) + ")");
  return dfact_[static_cast<size_t>(m)];
}

bool IntersectionEngine::lookup(const IntersectionKey& key, BigRational& out) const {
  std::shared_lock lock(memo_mutex_);
  auto it = memo_.find(key);
  if (it == memo_.end()) return false;
  out = it->second;
  return true;
}

void IntersectionEngine::publish(const IntersectionKey& key, const BigRational& value) {
  std::unique_lock lock(memo_mutex_);
  memo_.try_emplace(key, value);
}

BigRational IntersectionEngine::psi_intersection(int g, std::span<const int> a) {
  require_stable({g, static_cast<int>(a.size())});
  for (int e : a)
    if (e < 0) throw DomainError("negative psi exponent " + std::to_string(e));
  std::vector<int> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return psi_sorted(g, std::move(sorted));
}

BigRational IntersectionEngine::psi_sorted(int g, std::vector<int> a) {
  ModuliPoint point{g, static_cast<int>(a.size())};
  if (!point.stable()) return 0;
  int degree = 0;
  for (int e : a) degree += e;
  if (degree != point.dim()) return 0;

  IntersectionKey key{g, PsiExponents(std::move(a)), {}};
  BigRational value;
  if (lookup(key, value)) return value;
  std::vector<int> exps(key.psi.values().begin(), key.psi.values().end());
  value = psi_reduced(g, exps);
  publish(key, value);
  return value;
}

// `a` is sorted descending, stable, and of the right degree.
BigRational IntersectionEngine::psi_reduced(int g, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  if (g == 0 && n == 3) return 1;
  if (g == 1 && n == 1) return BigRational(1, 24);

  std::span<const int> rest(a.data(), a.size() - 1);

  if (a.back() == 0) {
    // string equation: drop a tau_0, lower one other exponent
    BigRational sum = 0;
    for (auto [v, mult] : runs(rest)) {
      if (v == 0) continue;
      sum += mult * psi_sorted(g, with_replaced(rest, v, v - 1));
    }
    return sum;
  }

  if (a.back() == 1) {
    // dilaton equation
    return (2 * g - 2 + (n - 1)) * psi_sorted(g, std::vector<int>(rest.begin(), rest.end()));
  }

  // DVV with tau_{k+1} the largest insertion; every exponent is >= 2 here.
  const int k = a.front() - 1;
  std::span<const int> others(a.data() + 1, a.size() - 1);
  const auto other_runs = runs(others);

  BigRational first = 0;
  for (auto [v, mult] : other_runs) {
    // (2k+2v+1)!! / (2v-1)!!
    BigInteger ratio = dfact(k + v + 1) / dfact(v);
    first += BigRational(mult * ratio) * psi_sorted(g, with_replaced(others, v, v + k));
  }

  BigRational second = 0;
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    BigRational inner = 0;
    if (g >= 1) inner += psi_sorted(g - 1, with_added(others, {r, s}));

    // splittings of the remaining insertions between the two components;
    // multiset subsets, weighted by the number of labelled subsets they stand for
    std::vector<int> take(other_runs.size(), 0);
    std::function<void(std::size_t)> visit = [&](std::size_t idx) {
      if (idx < other_runs.size()) {
        for (int c = 0; c <= other_runs[idx].second; ++c) {
          take[idx] = c;
          visit(idx + 1);
        }
        return;
      }
      std::vector<int> left{r}, right{s};
      BigInteger weight = 1;
      int left_sum = r, left_count = 1;
      for (std::size_t i = 0; i < other_runs.size(); ++i) {
        auto [v, mult] = other_runs[i];
        left.insert(left.end(), static_cast<size_t>(take[i]), v);
        right.insert(right.end(), static_cast<size_t>(mult - take[i]), v);
        left_sum += take[i] * v;
        left_count += take[i];
        if (take[i] != 0 && take[i] != mult) weight *= binomial(mult, take[i]);
      }
      // left degree fixes the left genus: sum = 3 g1 - 3 + count
      int shifted = left_sum - left_count + 3;
      if (shifted % 3 != 0) return;
      int g1 = shifted / 3;
      if (g1 < 0 || g1 > g) return;
      if (!ModuliPoint{g1, left_count}.stable()) return;
      if (!ModuliPoint{g - g1, static_cast<int>(right.size())}.stable()) return;
      std::sort(left.begin(), left.end(), std::greater<>());
      std::sort(right.begin(), right.end(), std::greater<>());
      BigRational lv = psi_sorted(g1, std::move(left));
      if (sgn(lv) == 0) return;
      inner += BigRational(weight) * lv * psi_sorted(g - g1, std::move(right));
    };
    visit(0);

    second += BigRational(dfact(r + 1) * dfact(s + 1)) * inner;
  }

  BigRational result = (first + second / 2) / BigRational(dfact(k + 2));
  return result;
}

BigRational IntersectionEngine::mixed_intersection(const IntersectionKey& key) {
  require_stable(key.point());
  return mixed_canonical(key);
}

BigRational IntersectionEngine::mixed_canonical(const IntersectionKey& key) {
  const ModuliPoint point = key.point();
  if (key.degree() != point.dim()) return 0;
  if (key.kappa.empty()) {
    return psi_sorted(key.g, std::vector<int>(key.psi.values().begin(), key.psi.values().end()));
  }

  BigRational value;
  if (lookup(key, value)) return value;

  auto terms = key.kappa.terms();
  if (terms.front().first == 0) {
    // kappa_0 = 2g-2+n
    std::map<int, int> rest;
    for (auto [j, m] : terms.subspan(1)) rest[j] = m;
    BigInteger scale;
    mpz_pow_ui(scale.get_mpz_t(), BigInteger(point.euler()).get_mpz_t(), static_cast<unsigned long>(terms.front().second));
    value = BigRational(scale) * mixed_canonical({key.g, key.psi, KappaExponents(rest)});
    publish(key, value);
    return value;
  }

  const int removed = order_ == RemovalOrder::SmallestIndexFirst ? terms.front().first : terms.back().first;
  std::vector<std::pair<int, int>> remaining;
  for (auto [j, m] : terms) {
    int left = j == removed ? m - 1 : m;
    if (left > 0) remaining.emplace_back(j, left);
  }

  // prod over remaining factors of (kappa_c - psi_{n+1}^c), grouped by index:
  // choose i_c of the m_c copies to contribute -psi_{n+1}^c.
  std::vector<int> chosen(remaining.size(), 0);
  BigRational sum = 0;
  std::function<void(std::size_t)> expand = [&](std::size_t idx) {
    if (idx < remaining.size()) {
      for (int c = 0; c <= remaining[idx].second; ++c) {
        chosen[idx] = c;
        expand(idx + 1);
      }
      return;
    }
    int new_exponent = removed + 1;
    int flips = 0;
    BigInteger weight = 1;
    std::map<int, int> kappa;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      auto [j, m] = remaining[i];
      new_exponent += chosen[i] * j;
      flips += chosen[i];
      if (chosen[i] != 0 && chosen[i] != m) weight *= binomial(m, chosen[i]);
      if (m - chosen[i] > 0) kappa[j] = m - chosen[i];
    }
    std::vector<int> psi(key.psi.values().begin(), key.psi.values().end());
    psi.push_back(new_exponent);
    BigRational term = mixed_canonical({key.g, PsiExponents(std::move(psi)), KappaExponents(kappa)});
    if (flips % 2) weight = -weight;
    sum += BigRational(weight) * term;
  };
  expand(0);

  publish(key, sum);
  return sum;
}

BigRational IntersectionEngine::wp_volume(const ModuliPoint& point) {
  require_stable(point);
  std::map<int, int> kappa;
  if (point.dim() > 0) kappa[1] = point.dim();
  return mixed_canonical({point.g, PsiExponents(std::vector<int>(static_cast<size_t>(point.n), 0)), KappaExponents(kappa)});
}

std::map<std::string, BigRational> IntersectionEngine::snapshot() const {
  std::shared_lock lock(memo_mutex_);
  std::map<std::string, BigRational> out;
  for (const auto& [key, value] : memo_) out.emplace(to_string(key), value);
  return out;
}

void IntersectionEngine::seed(const std::map<std::string, BigRational>& entries) {
  std::vector<std::pair<IntersectionKey, BigRational>> parsed;
  parsed.reserve(entries.size());
  for (const auto& [text, value] : entries) parsed.emplace_back(parse_key(text), value);
  std::unique_lock lock(memo_mutex_);
  for (auto& [key, value] : parsed) memo_.try_emplace(std::move(key), value);
}

std::size_t IntersectionEngine::memo_size() const {
  std::shared_lock lock(memo_mutex_);
  return memo_.size();
}

void IntersectionEngine::clear() {
  std::unique_lock lock(memo_mutex_);
  memo_.clear();
}

IntersectionEngine& default_engine() {
  static IntersectionEngine engine;
  return engine;
}

BigRational psi_intersection(int g, std::span<const int> a) { return default_engine().psi_intersection(g, a); }

BigRational mixed_intersection(const IntersectionKey& key) { return default_engine().mixed_intersection(key); }

BigRational wp_volume(const ModuliPoint& point) { return default_engine().wp_volume(point); }

}  // namespace wpvol
