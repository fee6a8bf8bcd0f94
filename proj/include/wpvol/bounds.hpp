#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpvol/intersection.hpp"
#include "wpvol/moduli.hpp"
#include "wpvol/rational.hpp"

namespace wpvol {

enum class Provenance { Exact, Lower, Upper };
enum class BoundKind { Lower, Upper };

/// How the even-genus correction -(V_{g/2,1})^2 is weighted in the
/// effective-divisor bound: mu_{g/2} as printed, or mu_{g/2}/2, which is the
/// weight the ample-divisor preset (1/28 = (1/14)/2) and the Kodaira display
/// (11/26 = (11/13)/2) use.
enum class MiddleMode { AsPrinted, Thm2Consistent };

std::string to_string(Provenance p);
std::string to_string(BoundKind k);
std::string to_string(MiddleMode m);
MiddleMode parse_middle_mode(const std::string& text);

struct VolumeInput {
  ModuliPoint point;
  Provenance provenance = Provenance::Exact;
  BigRational value;
};

/// One additive term of a bound: coefficient * prod(factor values). A term
/// without factors is a constant.
struct TraceTerm {
  std::string rule;
  BigRational coefficient;
  std::vector<VolumeInput> factors;
};

struct BoundCertificate {
  ModuliPoint target;
  BoundKind kind = BoundKind::Lower;
  BigRational value;
  bool strict = false;
  std::vector<TraceTerm> trace;
  std::vector<std::string> notes;
};

/// Re-evaluates the trace from its recorded inputs.
BigRational replay(const BoundCertificate& cert);

/// Checks that every input enters with the right direction: in a lower bound,
/// positively weighted factors are exact or lower bounds (and non-negative)
/// and negatively weighted ones exact or upper bounds; dually for upper
/// bounds. Also checks replay(cert) == cert.value. Throws DomainError.
void validate_certificate(const BoundCertificate& cert);

/// D = p*lambda - sum_j q_j*delta_j, j = 0..floor(g/2).
struct DivisorSpec {
  BigRational p;
  std::vector<BigRational> q;

  /// (56/5) lambda - delta, the epsilon -> 0 limit of the ample class.
  static DivisorSpec ample_preset(int g);
  /// Canonical class 13 lambda - 2 delta_0 - 3 delta_1 - 2 sum_{j>=2} delta_j.
  static DivisorSpec kodaira_preset(int g);
};

/// D rewritten as alpha*kappa_1 - sum beta_j delta_j using
/// kappa_1 = 12 lambda - sum delta_j.
struct KappaForm {
  BigRational alpha;
  std::vector<BigRational> beta;
};

struct MuVector {
  std::vector<BigRational> mu;
  KappaForm form;
};

/// mu_j = (12 q_j - p) / p, all required positive. Throws DomainError naming
/// the first index with mu_j <= 0, or when p or a q_j is not positive.
MuVector divisor_mu(const DivisorSpec& spec);

/// Cell of a VolumeTable.
struct VolumeEntry {
  std::optional<BigRational> exact;
  std::string exact_source;  // "engine" or "convention"
  std::optional<BoundCertificate> lower;
  std::optional<BoundCertificate> upper;
};

/// (g, n) -> exact values and certified bounds.
class VolumeTable {
 public:
  VolumeTable();

  void set_exact(const ModuliPoint& point, const BigRational& value, std::string source = "engine");
  /// Keeps the larger of the stored and offered lower bounds.
  void offer_lower(BoundCertificate cert);
  /// Keeps the smaller of the stored and offered upper bounds.
  void offer_upper(BoundCertificate cert);

  const VolumeEntry* find(const ModuliPoint& point) const;
  const std::map<ModuliPoint, VolumeEntry>& entries() const { return entries_; }

  /// Exact value if known, else the lower bound; nullopt if neither.
  std::optional<VolumeInput> lower_input(const ModuliPoint& point) const;
  /// Exact value if known, else the upper bound; nullopt if neither.
  std::optional<VolumeInput> upper_input(const ModuliPoint& point) const;

  void add_gap(std::string message) { gaps_.push_back(std::move(message)); }
  const std::vector<std::string>& gaps() const { return gaps_; }

  /// Table invariants: lower <= exact <= upper, certificates replay and obey
  /// provenance rules, (0,3) holds the convention value 0. Returns the first
  /// violation, or nullopt.
  std::optional<std::string> check() const;

 private:
  std::map<ModuliPoint, VolumeEntry> entries_;
  std::vector<std::string> gaps_;
};

/// Excluded pairs for the one-point recursion step: (0,4) and (1,1).
bool thm1_excluded(const ModuliPoint& point);

/// Lower bound for V_{g,n+1}:
///   (1/2)(3g-2+n)(7g-7+3n) * V_{g,n} + 1/(24^g g!).
/// `v` must be exact or a lower bound for V_{g,n}.
BoundCertificate thm1_step(int g, int n, const VolumeInput& v, bool override_exclusions = false);
BoundCertificate thm1_step(int g, int n, const BigRational& v, bool override_exclusions = false);

/// Upper bound for V_{g,n} from exact or upper V_{g,n+1}:
///   2 (V_{g,n+1} - 1/(24^g g!)) / ((3g-2+n)(7g-7+3n)).
/// The looser form 2 V_{g,n+1} / (...) is recorded in the notes.
BoundCertificate thm1_upper_prev(int g, int n, const VolumeInput& v_next, bool override_exclusions = false);
BoundCertificate thm1_upper_prev(int g, int n, const BigRational& v_next, bool override_exclusions = false);

/// Lower bound for V_{g,0} from an effective divisor with the given mu:
///   mu_0/2 V_{g-1,2} + mu_1/48 V_{g-1,1} + sum_{j=2}^{[g/2]} mu_j V_{j,1} V_{g-j,1}
///   - C_mid,  C_mid = 0 (g odd), mu_{g/2} (V_{g/2,1})^2 or half of that.
/// For even g >= 4 the j = g/2 summand and the correction share the input
/// V_{g/2,1}; they are recorded as a single term with the net weight, which
/// is never negative, so a lower bound for V_{g/2,1} suffices.
BoundCertificate thm3_bound(int g, const MuVector& mu, const VolumeTable& table, MiddleMode mode = MiddleMode::Thm2Consistent);

/// thm3_bound with mu_j = 1/14 for every j.
BoundCertificate thm2_bound(int g, const VolumeTable& table, MiddleMode mode = MiddleMode::Thm2Consistent);

/// thm3_bound with the canonical-class divisor; requires g >= 23 unless
/// `override_genus` is set, in which case the trace carries a warning.
BoundCertificate kodaira_bound(int g, const VolumeTable& table, MiddleMode mode = MiddleMode::Thm2Consistent,
                               bool override_genus = false);

struct ChainOptions {
  MiddleMode mode = MiddleMode::Thm2Consistent;
  bool use_kodaira = true;
};

/// Exact volumes for every stable (g, n), g <= g_max, with 3g-3+n <= budget,
/// the (0,3) -> 0 convention, then lower bounds propagated in n by thm1_step
/// (n <= max(n_max, 2)) and in g by thm2_bound / kodaira_bound, plus upper
/// bounds from thm1_upper_prev wherever V_{g,n+1} is exact or bounded above.
VolumeTable build_chain(int g_max, int n_max, int exact_dim_budget, IntersectionEngine& engine,
                        const ChainOptions& options = {});
VolumeTable build_chain(int g_max, int n_max, int exact_dim_budget);

}  // namespace wpvol
