#include "wpvol/moduli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "wpvol/rational.hpp"

namespace wpvol {

std::string to_string(const ModuliPoint& p) {
  return "(g=" + std::to_string(p.g) + ", n=" + std::to_string(p.n) + ")";
}

void require_stable(const ModuliPoint& p) {
  if (p.g < 0 || p.n < 0)
    throw DomainError("negative genus or point count " + to_string(p));
  if (!p.stable())
    throw DomainError("unstable point " + to_string(p) + ": requires 2g-2+n > 0");
}

PsiExponents::PsiExponents(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int a : exps_)
    if (a < 0) throw DomainError("negative psi exponent " + std::to_string(a));
  std::sort(exps_.begin(), exps_.end(), std::greater<>());
}

int PsiExponents::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

KappaExponents::KappaExponents(const std::map<int, int>& multiplicities) {
  for (auto [j, m] : multiplicities) {
    if (j < 0) throw DomainError("negative kappa index " + std::to_string(j));
    if (m < 0) throw DomainError("negative kappa multiplicity " + std::to_string(m));
    if (m > 0) terms_.emplace_back(j, m);
  }
}

KappaExponents KappaExponents::from_factors(std::span<const int> indices) {
  std::map<int, int> m;
  for (int j : indices) ++m[j];
  return KappaExponents(m);
}

int KappaExponents::degree() const {
  int d = 0;
  for (auto [j, m] : terms_) d += j * m;
  return d;
}

int KappaExponents::factor_count() const {
  int c = 0;
  for (auto [j, m] : terms_) c += m;
  return c;
}

int KappaExponents::multiplicity(int index) const {
  for (auto [j, m] : terms_)
    if (j == index) return m;
  return 0;
}

std::string to_string(const IntersectionKey& key) {
  std::string s = "g=" + std::to_string(key.g) + ";psi=";
  bool first = true;
  for (int a : key.psi.values()) {
    if (!first) s += ',';
    s += std::to_string(a);
    first = false;
  }
  s += ";kappa=";
  first = true;
  for (auto [j, m] : key.kappa.terms()) {
    if (!first) s += ',';
    s += std::to_string(j) + ':' + std::to_string(m);
    first = false;
  }
  return s;
}

namespace {

int parse_nonneg(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0 ||
      (s.size() > 1 && s.front() == '0'))
    throw FormatError("malformed integer '" + std::string(s) + "' in '" + std::string(context) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip_prefix(std::string_view field, std::string_view prefix, std::string_view context) {
  if (field.substr(0, prefix.size()) != prefix)
    throw FormatError("expected '" + std::string(prefix) + "' in key '" + std::string(context) + "'");
  return field.substr(prefix.size());
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) out.push_back(parse_nonneg(part, text));
  return out;
}

std::map<int, int> parse_kappa_list(std::string_view text) {
  std::map<int, int> out;
  for (auto part : split(text, ',')) {
    auto colon = part.find(':');
    if (colon == std::string_view::npos)
      throw FormatError("kappa term '" + std::string(part) + "' is not of the form j:m");
    out[parse_nonneg(part.substr(0, colon), text)] += parse_nonneg(part.substr(colon + 1), text);
  }
  return out;
}

IntersectionKey parse_key(std::string_view text) {
  auto fields = split(text, ';');
  if (fields.size() != 3) throw FormatError("key '" + std::string(text) + "' must have three fields");
  IntersectionKey key;
  key.g = parse_nonneg(strip_prefix(fields[0], "g=", text), text);
  key.psi = PsiExponents(parse_int_list(strip_prefix(fields[1], "psi=", text)));

  std::map<int, int> kappa;
  int prev = -1;
  for (auto part : split(strip_prefix(fields[2], "kappa=", text), ',')) {
    auto colon = part.find(':');
    if (colon == std::string_view::npos)
      throw FormatError("kappa term '" + std::string(part) + "' is not of the form j:m");
    int j = parse_nonneg(part.substr(0, colon), text);
    int m = parse_nonneg(part.substr(colon + 1), text);
    if (j <= prev || m == 0) throw FormatError("kappa terms not canonical in key '" + std::string(text) + "'");
    kappa[j] = m;
    prev = j;
  }
  key.kappa = KappaExponents(kappa);
  if (to_string(key) != text) throw FormatError("key '" + std::string(text) + "' is not in canonical order");
  return key;
}

std::size_t IntersectionKeyHash::operator()(const IntersectionKey& key) const noexcept {
  std::size_t h = std::hash<int>{}(key.g);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int a : key.psi.values()) mix(static_cast<std::size_t>(a));
  mix(0xffff);
  for (auto [j, m] : key.kappa.terms()) mix(static_cast<std::size_t>(j) * 131 + static_cast<std::size_t>(m));
  return h;
}

}  // namespace wpvol
