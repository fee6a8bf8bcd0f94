#include "wpvol/bounds.hpp"

#include <algorithm>

namespace wpvol {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::Lower: return "lower";
    case Provenance::Upper: return "upper";
  }
  return "?";
}

std::string to_string(BoundKind k) { return k == BoundKind::Lower ? "lower" : "upper"; }

std::string to_string(MiddleMode m) { return m == MiddleMode::AsPrinted ? "as-printed" : "thm2-consistent"; }

MiddleMode parse_middle_mode(const std::string& text) {
  if (text == "as-printed") return MiddleMode::AsPrinted;
  if (text == "thm2-consistent") return MiddleMode::Thm2Consistent;
  throw DomainError("unknown middle-correction mode '" + text + "'");
}

namespace {

std::string label(const ModuliPoint& p) { return "V_{" + std::to_string(p.g) + "," + std::to_string(p.n) + "}"; }

/// int psi^{3g-2} over Mbar_{g,1}, and 1 for g = 0.
BigRational psi_top(int g) {
  BigInteger pow24;
  mpz_ui_pow_ui(pow24.get_mpz_t(), 24, static_cast<unsigned long>(g));
  return BigRational(1) / BigRational(pow24 * factorial(static_cast<unsigned long>(g)));
}

BigRational term_value(const TraceTerm& term) {
  BigRational v = term.coefficient;
  for (const auto& f : term.factors) v *= f.value;
  return v;
}

void check_thm1_domain(int g, int n, bool override_exclusions) {
  ModuliPoint point{g, n};
  require_stable(point);
  if (thm1_excluded(point) && !override_exclusions)
    throw DomainError("one-point recursion excludes " + to_string(point) +
                      ": (g,n) must differ from (0,4) and (1,1); pass the override flag to evaluate anyway");
}

}  // namespace

BigRational replay(const BoundCertificate& cert) {
  BigRational sum = 0;
  for (const auto& term : cert.trace) sum += term_value(term);
  return sum;
}

void validate_certificate(const BoundCertificate& cert) {
  for (const auto& term : cert.trace) {
    const int sign = sgn(term.coefficient);
    if (sign == 0 || term.factors.empty()) continue;
    // for a lower bound, positive weight wants lower inputs; for an upper
    // bound, positive weight wants upper inputs
    const bool wants_lower = (cert.kind == BoundKind::Lower) == (sign > 0);
    const Provenance allowed = wants_lower ? Provenance::Lower : Provenance::Upper;
    for (const auto& f : term.factors) {
      if (f.provenance != Provenance::Exact && f.provenance != allowed)
        throw DomainError("certificate for " + label(cert.target) + ": term '" + term.rule + "' uses a " +
                          to_string(f.provenance) + " bound for " + label(f.point) + " where " +
                          to_string(allowed) + " or exact is required");
      if (term.factors.size() > 1 && sgn(f.value) < 0)
        throw DomainError("certificate for " + label(cert.target) + ": product term '" + term.rule +
                          "' has a negative factor");
    }
  }
  if (replay(cert) != cert.value)
    throw DomainError("certificate for " + label(cert.target) + " does not replay to its value");
}

DivisorSpec DivisorSpec::ample_preset(int g) {
  if (g < 0) throw DomainError("negative genus");
  return {BigRational(56, 5), std::vector<BigRational>(static_cast<size_t>(g / 2 + 1), BigRational(1))};
}

DivisorSpec DivisorSpec::kodaira_preset(int g) {
  if (g < 0) throw DomainError("negative genus");
  std::vector<BigRational> q(static_cast<size_t>(g / 2 + 1), BigRational(2));
  if (q.size() > 1) q[1] = 3;
  return {BigRational(13), q};
}

MuVector divisor_mu(const DivisorSpec& spec) {
  if (sgn(spec.p) <= 0) throw DomainError("divisor coefficient p must be positive, got " + to_string(spec.p));
  if (spec.q.empty()) throw DomainError("divisor needs at least one boundary coefficient q_0");
  MuVector out;
  out.form.alpha = spec.p / 12;
  for (std::size_t j = 0; j < spec.q.size(); ++j) {
    const BigRational& q = spec.q[j];
    if (sgn(q) <= 0) throw DomainError("divisor coefficient q_" + std::to_string(j) + " must be positive");
    BigRational mu = (12 * q - spec.p) / spec.p;
    if (sgn(mu) <= 0)
      throw DomainError("hypothesis mu_j > 0 violated at j = " + std::to_string(j) + ": mu_" + std::to_string(j) +
                        " = " + to_string(mu));
    out.mu.push_back(mu);
    out.form.beta.push_back(q - spec.p / 12);
  }
  return out;
}

VolumeTable::VolumeTable() { set_exact({0, 3}, 0, "convention"); }

void VolumeTable::set_exact(const ModuliPoint& point, const BigRational& value, std::string source) {
  auto& e = entries_[point];
  e.exact = value;
  e.exact_source = std::move(source);
}

void VolumeTable::offer_lower(BoundCertificate cert) {
  auto& e = entries_[cert.target];
  if (!e.lower || cert.value > e.lower->value) e.lower = std::move(cert);
}

void VolumeTable::offer_upper(BoundCertificate cert) {
  auto& e = entries_[cert.target];
  if (!e.upper || cert.value < e.upper->value) e.upper = std::move(cert);
}

const VolumeEntry* VolumeTable::find(const ModuliPoint& point) const {
  auto it = entries_.find(point);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<VolumeInput> VolumeTable::lower_input(const ModuliPoint& point) const {
  const auto* e = find(point);
  if (!e) return std::nullopt;
  if (e->exact) return VolumeInput{point, Provenance::Exact, *e->exact};
  if (e->lower) return VolumeInput{point, Provenance::Lower, e->lower->value};
  return std::nullopt;
}

std::optional<VolumeInput> VolumeTable::upper_input(const ModuliPoint& point) const {
  const auto* e = find(point);
  if (!e) return std::nullopt;
  if (e->exact) return VolumeInput{point, Provenance::Exact, *e->exact};
  if (e->upper) return VolumeInput{point, Provenance::Upper, e->upper->value};
  return std::nullopt;
}

std::optional<std::string> VolumeTable::check() const {
  const auto* conv = find({0, 3});
  if (!conv || !conv->exact || *conv->exact != 0) return "missing convention entry V_{0,3} = 0";
  for (const auto& [point, e] : entries_) {
    for (const auto* cert : {e.lower ? &*e.lower : nullptr, e.upper ? &*e.upper : nullptr}) {
      if (!cert) continue;
      try {
        validate_certificate(*cert);
      } catch (const DomainError& err) {
        return std::string(err.what());
      }
    }
    if (e.exact && e.lower && e.lower->value > *e.exact)
      return "lower bound exceeds exact value at " + label(point);
    if (e.exact && e.upper && e.upper->value < *e.exact)
      return "upper bound below exact value at " + label(point);
    if (e.lower && e.upper && e.lower->value > e.upper->value)
      return "lower bound exceeds upper bound at " + label(point);
  }
  return std::nullopt;
}

bool thm1_excluded(const ModuliPoint& point) {
  return (point.g == 0 && point.n == 4) || (point.g == 1 && point.n == 1);
}

BoundCertificate thm1_step(int g, int n, const VolumeInput& v, bool override_exclusions) {
  check_thm1_domain(g, n, override_exclusions);
  if (v.provenance == Provenance::Upper)
    throw DomainError("one-point recursion needs an exact value or lower bound for " + label({g, n}));
  BoundCertificate cert;
  cert.target = {g, n + 1};
  cert.kind = BoundKind::Lower;
  cert.strict = false;
  BigRational coefficient = BigRational((3 * g - 2 + n) * (7 * g - 7 + 3 * n)) / 2;
  VolumeInput input = v;
  input.point = {g, n};
  cert.trace.push_back({"thm1:kappa-expansion", coefficient, {input}});
  cert.trace.push_back({"thm1:psi-top", psi_top(g), {}});
  if (thm1_excluded({g, n})) cert.notes.push_back("warning: evaluated at an excluded pair by override");
  cert.value = replay(cert);
  return cert;
}

BoundCertificate thm1_step(int g, int n, const BigRational& v, bool override_exclusions) {
  return thm1_step(g, n, VolumeInput{{g, n}, Provenance::Exact, v}, override_exclusions);
}

BoundCertificate thm1_upper_prev(int g, int n, const VolumeInput& v_next, bool override_exclusions) {
  check_thm1_domain(g, n, override_exclusions);
  const int factor = (3 * g - 2 + n) * (7 * g - 7 + 3 * n);
  if (factor <= 0)
    throw DomainError("degenerate recursion factor (3g-2+n)(7g-7+3n) = " + std::to_string(factor) + " at " +
                      to_string(ModuliPoint{g, n}));
  if (v_next.provenance == Provenance::Lower)
    throw DomainError("upper rearrangement needs an exact value or upper bound for " + label({g, n + 1}));
  BoundCertificate cert;
  cert.target = {g, n};
  cert.kind = BoundKind::Upper;
  // the tight rearrangement is attained, e.g. V_{0,5} = 5 from V_{0,6} = 61
  cert.strict = false;
  VolumeInput input = v_next;
  input.point = {g, n + 1};
  cert.trace.push_back({"thm1-upper:volume", make_rational(2, factor), {input}});
  cert.trace.push_back({"thm1-upper:psi-top", -2 * psi_top(g) / factor, {}});
  BigRational loose = 2 * v_next.value / factor;
  cert.notes.push_back("looser form 2*" + label({g, n + 1}) + "/((3g-2+n)(7g-7+3n)) = " + to_string(loose) +
                       " (strict)");
  if (thm1_excluded({g, n})) cert.notes.push_back("warning: evaluated at an excluded pair by override");
  cert.value = replay(cert);
  return cert;
}

BoundCertificate thm1_upper_prev(int g, int n, const BigRational& v_next, bool override_exclusions) {
  return thm1_upper_prev(g, n, VolumeInput{{g, n + 1}, Provenance::Exact, v_next}, override_exclusions);
}

namespace {

VolumeInput need_lower(const VolumeTable& table, const ModuliPoint& p) {
  auto v = table.lower_input(p);
  if (!v) throw DomainError("missing table entry " + label(p) + " (exact value or lower bound required)");
  return *v;
}

VolumeInput need_upper(const VolumeTable& table, const ModuliPoint& p) {
  auto v = table.upper_input(p);
  if (!v) throw DomainError("missing table entry " + label(p) + " (exact value or upper bound required)");
  return *v;
}

}  // namespace

BoundCertificate thm3_bound(int g, const MuVector& mu, const VolumeTable& table, MiddleMode mode) {
  if (g <= 1) throw DomainError("effective-divisor bound requires g > 1, got g = " + std::to_string(g));
  const int half = g / 2;
  if (mu.mu.size() != static_cast<std::size_t>(half + 1))
    throw DomainError("mu vector for g = " + std::to_string(g) + " must have " + std::to_string(half + 1) +
                      " entries, got " + std::to_string(mu.mu.size()));
  for (std::size_t j = 0; j < mu.mu.size(); ++j)
    if (sgn(mu.mu[j]) <= 0) throw DomainError("hypothesis mu_j > 0 violated at j = " + std::to_string(j));

  BoundCertificate cert;
  cert.target = {g, 0};
  cert.kind = BoundKind::Lower;
  cert.strict = true;
  cert.notes.push_back("middle-correction mode: " + to_string(mode));

  cert.trace.push_back({"thm3:delta_0", mu.mu[0] / 2, {need_lower(table, {g - 1, 2})}});
  cert.trace.push_back({"thm3:delta_1", mu.mu[1] / 48, {need_lower(table, {g - 1, 1})}});
  for (int j = 2; j <= half; ++j) {
    if (g % 2 == 0 && j == half) continue;
    cert.trace.push_back({"thm3:delta_" + std::to_string(j), mu.mu[static_cast<size_t>(j)],
                          {need_lower(table, {j, 1}), need_lower(table, {g - j, 1})}});
  }
  if (g % 2 == 0) {
    const BigRational& mid = mu.mu[static_cast<size_t>(half)];
    BigRational correction = mode == MiddleMode::AsPrinted ? mid : mid / 2;
    if (half >= 2) {
      auto v = need_lower(table, {half, 1});
      cert.trace.push_back({"thm3:delta_" + std::to_string(half) + "-net-middle", mid - correction, {v, v}});
    } else {
      // g = 2: the middle divisor is delta_1, already weighted by mu_1/48
      auto v = need_upper(table, {1, 1});
      cert.trace.push_back({"thm3:middle-correction", -correction, {v, v}});
      cert.notes.push_back("g = 2: middle boundary divisor coincides with delta_1");
    }
  }
  cert.value = replay(cert);
  return cert;
}

BoundCertificate thm2_bound(int g, const VolumeTable& table, MiddleMode mode) {
  if (g <= 1) throw DomainError("ample-divisor bound requires g > 1, got g = " + std::to_string(g));
  BoundCertificate cert = thm3_bound(g, divisor_mu(DivisorSpec::ample_preset(g)), table, mode);
  for (auto& term : cert.trace) term.rule.replace(0, 4, "thm2");
  cert.strict = false;
  cert.notes.insert(cert.notes.begin(), "divisor (56/5) lambda - delta, mu_j = 1/14");
  return cert;
}

BoundCertificate kodaira_bound(int g, const VolumeTable& table, MiddleMode mode, bool override_genus) {
  if (g < 23 && !override_genus)
    throw DomainError("canonical-class bound requires g >= 23 (positive Kodaira dimension), got g = " +
                      std::to_string(g));
  if (g <= 1) throw DomainError("canonical-class bound requires g > 1, got g = " + std::to_string(g));
  BoundCertificate cert = thm3_bound(g, divisor_mu(DivisorSpec::kodaira_preset(g)), table, mode);
  for (auto& term : cert.trace) term.rule.replace(0, 4, "kodaira");
  cert.notes.insert(cert.notes.begin(), "divisor 13 lambda - 2 delta_0 - 3 delta_1 - 2 sum delta_j");
  if (g < 23)
    cert.notes.push_back("warning: g < 23 evaluated by override; effectiveness of the canonical class is not known");
  return cert;
}

VolumeTable build_chain(int g_max, int n_max, int exact_dim_budget, IntersectionEngine& engine,
                        const ChainOptions& options) {
  if (g_max < 0 || n_max < 0) throw DomainError("g_max and n_max must be non-negative");
  VolumeTable table;
  for (int g = 0; g <= g_max; ++g) {
    for (int n = 0; 3 * g - 3 + n <= exact_dim_budget; ++n) {
      ModuliPoint p{g, n};
      if (!p.stable() || (g == 0 && n == 3)) continue;
      table.set_exact(p, engine.wp_volume(p));
    }
  }

  const int rows = std::max(n_max, 2);
  auto attempt = [&table](auto&& make) {
    try {
      make();
    } catch (const DomainError& err) {
      table.add_gap(err.what());
    }
  };

  for (int g = 0; g <= g_max; ++g) {
    if (g >= 2) {
      attempt([&] { table.offer_lower(thm2_bound(g, table, options.mode)); });
      if (options.use_kodaira && g >= 23)
        attempt([&] { table.offer_lower(kodaira_bound(g, table, options.mode)); });
    }
    const int first_stable = g == 0 ? 3 : g == 1 ? 1 : 0;
    const int last = std::max(rows, first_stable + 2);
    for (int n = 1; n <= last; ++n) {
      ModuliPoint prev{g, n - 1};
      if (!prev.stable() || thm1_excluded(prev)) continue;
      auto v = table.lower_input(prev);
      if (!v) {
        table.add_gap("no value for " + label(prev) + "; " + label({g, n}) + " not propagated");
        continue;
      }
      table.offer_lower(thm1_step(g, n - 1, *v));
    }
    // upper bounds walk downward so each one can feed the next
    int top = last;
    while (table.find({g, top + 1}) && table.find({g, top + 1})->exact) ++top;
    for (int n = top; n >= 0; --n) {
      ModuliPoint p{g, n};
      if (!p.stable() || thm1_excluded(p) || (3 * g - 2 + n) * (7 * g - 7 + 3 * n) <= 0) continue;
      if (auto next = table.upper_input({g, n + 1})) table.offer_upper(thm1_upper_prev(g, n, *next));
    }
  }
  return table;
}

VolumeTable build_chain(int g_max, int n_max, int exact_dim_budget) {
  return build_chain(g_max, n_max, exact_dim_budget, default_engine());
}

}  // namespace wpvol
