#include "wpvol/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpvol/asymptotics.hpp"
#include "wpvol/bounds.hpp"
#include "wpvol/cache.hpp"
#include "wpvol/intersection.hpp"
#include "wpvol/verify.hpp"

namespace wpvol {

namespace {

enum class Format { Text, Csv, Json };

/// Tabular command output. Integer columns are emitted as JSON numbers,
/// everything else as strings, so rationals read the same in every format.
struct Report {
  std::vector<std::string> columns;
  std::vector<bool> numeric;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> text;  // replaces the table in text mode when set

  void add_column(std::string name, bool is_numeric = false) {
    columns.push_back(std::move(name));
    numeric.push_back(is_numeric);
  }
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Report& report, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Text: {
      if (!report.text.empty()) {
        for (const auto& line : report.text) os << line << '\n';
        break;
      }
      if (report.columns.size() == 1 && report.rows.size() == 1) {
        os << report.rows[0][0] << '\n';
        break;
      }
      std::vector<std::size_t> width(report.columns.size());
      for (std::size_t c = 0; c < width.size(); ++c) {
        width[c] = report.columns[c].size();
        for (const auto& row : report.rows) width[c] = std::max(width[c], row[c].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) s += "  ";
          s += cells[c];
          if (c + 1 < cells.size()) s.append(width[c] - cells[c].size(), ' ');
        }
        os << s << '\n';
      };
      line(report.columns);
      for (const auto& row : report.rows) line(row);
      break;
    }
    case Format::Csv: {
      for (std::size_t c = 0; c < report.columns.size(); ++c) os << (c ? "," : "") << csv_cell(report.columns[c]);
      os << '\n';
      for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << '\n';
      }
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (report.numeric[c] && !row[c].empty())
            obj[report.columns[c]] = std::stoll(row[c]);
          else
            obj[report.columns[c]] = row[c];
        }
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

std::string vol_label(const ModuliPoint& p) { return "V_{" + std::to_string(p.g) + "," + std::to_string(p.n) + "}"; }

std::string describe_factors(const TraceTerm& term) {
  std::string s;
  for (const auto& f : term.factors) {
    if (!s.empty()) s += " * ";
    s += vol_label(f.point) + "[" + to_string(f.provenance) + "]=" + to_string(f.value);
  }
  return s;
}

Report certificate_report(const BoundCertificate& cert) {
  Report r;
  for (auto name : {"target", "kind", "value", "strict", "rule", "coefficient", "inputs"}) r.add_column(name);
  for (const auto& term : cert.trace)
    r.rows.push_back({vol_label(cert.target), to_string(cert.kind), to_string(cert.value), cert.strict ? "yes" : "no",
                      term.rule, to_string(term.coefficient), describe_factors(term)});

  r.text.push_back(to_string(cert.value));
  r.text.push_back("bound: " + to_string(cert.kind) + " for " + vol_label(cert.target) +
                   (cert.strict ? " (strict)" : ""));
  r.text.push_back("trace:");
  for (const auto& term : cert.trace) {
    std::string line = "  " + term.rule + ": " + to_string(term.coefficient);
    if (!term.factors.empty()) line += " * " + describe_factors(term);
    r.text.push_back(line);
  }
  for (const auto& note : cert.notes) r.text.push_back("note: " + note);
  return r;
}

struct VerificationFailure {
  std::string message;
};

Report verification_report(const VerificationReport& v) {
  Report r;
  for (auto name : {"check", "subject", "lhs", "relation", "rhs", "status"}) r.add_column(name);
  for (const auto& row : v.rows)
    r.rows.push_back({row.check, row.subject, row.lhs, row.relation, row.rhs, row.ok ? "ok" : "FAILED"});
  if (const auto* bad = v.first_failure()) {
    throw VerificationFailure{"verify " + v.name + " failed: " + bad->check + " " + bad->subject + ": " + bad->lhs +
                              " " + bad->relation + " " + bad->rhs + " does not hold"};
  }
  r.text.push_back("verify " + v.name + ": " + std::to_string(v.rows.size()) + " checks passed");
  return r;
}

/// Rational CLI argument; accepts "p/q" with any sign/reduction, or a decimal
/// like 11.2.
BigRational parse_rational_arg(const std::string& text) {
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInteger scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(text.size() - dot - 1));
    return make_rational(BigInteger(parse_rational(digits.empty() ? "0" : digits).get_num()), scale);
  }
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_rational(text);
  BigInteger num(text.substr(0, slash), 10), den(text.substr(slash + 1), 10);
  return make_rational(num, den);
}

struct Options {
  std::string format = "text";
  int digits = 12;
  std::string cache_path;

  int g = -1, n = -1;
  std::string exps, psi, kappa, v, p, q;
  std::string mode = "thm2-consistent";
  int g_max = -1, n_max = 0, budget = 6;
  int max_dim = -1;
  bool override_exclusions = false;
  std::string source = "exact";
  std::string path;
};

class Runner {
 public:
  Runner(Options opts, std::optional<std::string> cache_path) : opts_(std::move(opts)), cache_path_(std::move(cache_path)) {}

  void load_cache_into_engine() {
    if (!cache_path_) return;
    loaded_ = load_cache(*cache_path_);
    engine_.seed(loaded_.entries);
  }

  void save_engine_cache() {
    if (!cache_path_) return;
    CacheFile merged = loaded_;
    for (auto& [k, v] : engine_.snapshot()) merged.entries.emplace(k, v);
    if (merged != loaded_) store_cache(*cache_path_, merged);
  }

  IntersectionEngine& engine() { return engine_; }
  const Options& opts() const { return opts_; }
  const std::optional<std::string>& cache_path() const { return cache_path_; }

  int require_int(int value, const char* flag) const {
    if (value < 0) throw CLI::RequiredError(flag);
    return value;
  }

  Report single_value(const BigRational& value, std::initializer_list<std::pair<std::string, std::string>> context) {
    Report r;
    std::vector<std::string> row;
    for (const auto& [name, cell] : context) {
      r.add_column(name, true);
      row.push_back(cell);
    }
    r.add_column("value");
    row.push_back(to_string(value));
    r.rows.push_back(row);
    r.text.push_back(to_string(value));
    return r;
  }

  Report volume() {
    int g = require_int(opts_.g, "--g"), n = require_int(opts_.n, "--n");
    return single_value(engine_.wp_volume({g, n}), {{"g", std::to_string(g)}, {"n", std::to_string(n)}});
  }

  Report psi() {
    int g = require_int(opts_.g, "--g");
    auto a = parse_int_list(opts_.exps);
    return single_value(engine_.psi_intersection(g, a), {{"g", std::to_string(g)}, {"n", std::to_string(a.size())}});
  }

  Report mixed() {
    int g = require_int(opts_.g, "--g"), n = require_int(opts_.n, "--n");
    std::vector<int> psi = opts_.psi.empty() ? std::vector<int>(static_cast<size_t>(n), 0) : parse_int_list(opts_.psi);
    if (static_cast<int>(psi.size()) != n)
      throw DomainError("--psi lists " + std::to_string(psi.size()) + " exponents but --n is " + std::to_string(n));
    IntersectionKey key{g, PsiExponents(psi), KappaExponents(parse_kappa_list(opts_.kappa))};
    Report r = single_value(engine_.mixed_intersection(key), {{"g", std::to_string(g)}, {"n", std::to_string(n)}});
    r.columns.insert(r.columns.begin() + 2, "key");
    r.numeric.insert(r.numeric.begin() + 2, false);
    r.rows[0].insert(r.rows[0].begin() + 2, to_string(key));
    return r;
  }

  VolumeTable table_for(int g) {
    return build_chain(std::max(g - 1, 0), 2, opts_.budget, engine_,
                       ChainOptions{parse_middle_mode(opts_.mode), true});
  }

  Report bound(const std::string& which) {
    if (which == "thm1") {
      int g = require_int(opts_.g, "--g"), n = require_int(opts_.n, "--n");
      require_stable({g, n});
      BigRational v;
      if (!opts_.v.empty())
        v = parse_rational_arg(opts_.v);
      else if (!(g == 0 && n == 3))
        v = engine_.wp_volume({g, n});
      return certificate_report(thm1_step(g, n, v, opts_.override_exclusions));
    }
    if (which == "thm1-upper") {
      int g = require_int(opts_.g, "--g"), n = require_int(opts_.n, "--n");
      require_stable({g, n});
      BigRational v = opts_.v.empty() ? engine_.wp_volume({g, n + 1}) : parse_rational_arg(opts_.v);
      return certificate_report(thm1_upper_prev(g, n, v, opts_.override_exclusions));
    }
    const MiddleMode mode = parse_middle_mode(opts_.mode);
    if (which == "thm2") {
      int g = require_int(opts_.g, "--g");
      if (g <= 1) throw DomainError("ample-divisor bound requires g > 1, got g = " + std::to_string(g));
      return certificate_report(thm2_bound(g, table_for(g), mode));
    }
    if (which == "thm3") {
      int g = require_int(opts_.g, "--g");
      if (opts_.p.empty() || opts_.q.empty()) throw CLI::RequiredError("--p and --q");
      DivisorSpec spec{parse_rational_arg(opts_.p), {}};
      for (const auto& item : CLI::detail::split(opts_.q, ',')) spec.q.push_back(parse_rational_arg(item));
      MuVector mu = divisor_mu(spec);
      if (g <= 1) throw DomainError("effective-divisor bound requires g > 1, got g = " + std::to_string(g));
      return certificate_report(thm3_bound(g, mu, table_for(g), mode));
    }
    if (which == "kodaira") {
      int g = require_int(opts_.g, "--g");
      if (g < 23 && !opts_.override_exclusions)
        throw DomainError("canonical-class bound requires g >= 23, got g = " + std::to_string(g));
      return certificate_report(kodaira_bound(g, table_for(g), mode, opts_.override_exclusions));
    }
    // chain
    int g_max = require_int(opts_.g_max, "--g-max");
    VolumeTable table = build_chain(g_max, opts_.n_max, opts_.budget, engine_, ChainOptions{mode, true});
    Report r;
    r.add_column("g", true);
    r.add_column("n", true);
    for (auto name : {"exact", "lower", "lower_rule", "upper"}) r.add_column(name);
    for (const auto& [p, e] : table.entries()) {
      if (p.n > std::max(opts_.n_max, 2) && !e.exact) continue;
      std::string rule;
      if (e.lower && !e.lower->trace.empty()) rule = e.lower->trace.front().rule.substr(0, e.lower->trace.front().rule.find(':'));
      r.rows.push_back({std::to_string(p.g), std::to_string(p.n), e.exact ? to_string(*e.exact) : "",
                        e.lower ? to_string(e.lower->value) : "", rule, e.upper ? to_string(e.upper->value) : ""});
    }
    if (auto bad = table.check()) throw VerificationFailure{"chain table invariant violated: " + *bad};
    return r;
  }

  Report verify(const std::string& which) {
    // fresh engine: the cache is never an oracle for the values under test
    IntersectionEngine fresh;
    int d = opts_.max_dim;
    if (which == "anchors") return verification_report(verify_anchors(fresh, d < 0 ? 16 : d));
    if (which == "thm1") return verification_report(verify_thm1(fresh, d < 0 ? 9 : d));
    if (which == "thm2") return verification_report(verify_thm2(fresh, d < 0 ? 9 : d));
    return verification_report(verify_lemma1(fresh, d < 0 ? 6 : d));
  }

  Report asym() {
    int g_max = require_int(opts_.g_max, "--g-max");
    int n = opts_.n < 0 ? 0 : opts_.n;
    std::vector<RatioPoint> points;
    if (opts_.source == "exact") {
      for (int g = 1; g <= g_max; ++g) {
        if (!ModuliPoint{g, n}.stable()) continue;
        points.push_back(make_ratio_point(g, n, engine_.wp_volume({g, n}), Provenance::Exact));
      }
    } else {
      VolumeTable table = build_chain(g_max, n, opts_.budget, engine_, ChainOptions{parse_middle_mode(opts_.mode), true});
      for (int g = 1; g <= g_max; ++g) {
        const auto* e = table.find({g, n});
        if (!e) continue;
        if (e->lower && sgn(e->lower->value) > 0)
          points.push_back(make_ratio_point(g, n, e->lower->value, Provenance::Lower));
        else if (e->exact && sgn(*e->exact) > 0)
          points.push_back(make_ratio_point(g, n, *e->exact, Provenance::Exact));
      }
    }
    Report r;
    r.add_column("g", true);
    r.add_column("n", true);
    for (auto name : {"kind", "ratio", "root", "log_profile"}) r.add_column(name);
    for (const auto& pt : points)
      r.rows.push_back({std::to_string(pt.g), std::to_string(pt.n), to_string(pt.value_kind), to_string(pt.r),
                        format_float(pt.root, opts_.digits), pt.logprof ? format_float(*pt.logprof, opts_.digits) : ""});
    if (!points.empty()) {
      RootWindow w = root_window(points);
      Report text_table = r;
      std::string body = render(text_table, Format::Text);
      std::istringstream lines(body);
      for (std::string line; std::getline(lines, line);) r.text.push_back(line);
      r.text.push_back("root window: c_est=" + format_float(w.c_est, opts_.digits) +
                       " C_est=" + format_float(w.C_est, opts_.digits));
    }
    return r;
  }

  Report cache(const std::string& which) {
    Report r;
    r.add_column("status");
    if (which == "export") {
      if (opts_.path.empty()) throw CLI::RequiredError("--path");
      CacheFile active = cache_path_ ? load_cache(*cache_path_) : CacheFile{};
      store_cache(opts_.path, active);
      r.rows.push_back({"exported " + std::to_string(active.entries.size()) + " entries to " + opts_.path});
    } else if (which == "import") {
      if (opts_.path.empty()) throw CLI::RequiredError("--path");
      if (!cache_path_) throw DomainError("cache import needs --cache-path or WPVOL_CACHE");
      CacheFile incoming = load_cache(opts_.path);
      CacheFile active = load_cache(*cache_path_);
      std::size_t added = 0;
      for (auto& [k, v] : incoming.entries) added += active.entries.emplace(k, v).second ? 1 : 0;
      store_cache(*cache_path_, active);
      r.rows.push_back({"imported " + std::to_string(added) + " new entries from " + opts_.path});
    } else {
      std::string target = !opts_.path.empty() ? opts_.path : cache_path_.value_or("");
      if (target.empty()) throw DomainError("cache clear needs --path, --cache-path or WPVOL_CACHE");
      store_cache(target, CacheFile{});
      r.rows.push_back({"cleared " + target});
    }
    return r;
  }

 private:
  Options opts_;
  std::optional<std::string> cache_path_;
  IntersectionEngine engine_;
  CacheFile loaded_;
};

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, const std::map<std::string, std::string>& env) {
  CommandResult result;
  std::ostringstream out, err;
  Options opts;

  CLI::App app{"Exact psi/kappa intersection numbers and Weil-Petersson volume bounds", "wpvol"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--digits", opts.digits, "significant digits for floats")->check(CLI::Range(1, 17));
  app.add_option("--cache-path", opts.cache_path, "memo cache file (overrides WPVOL_CACHE)");

  auto* volume = app.add_subcommand("volume", "V_{g,n} = int kappa_1^{3g-3+n}");
  volume->add_option("--g", opts.g)->required();
  volume->add_option("--n", opts.n)->required();

  auto* psi = app.add_subcommand("psi", "pure psi intersection number");
  psi->add_option("--g", opts.g)->required();
  psi->add_option("--exp", opts.exps, "comma-separated exponents")->required();

  auto* mixed = app.add_subcommand("mixed", "mixed psi/kappa intersection number");
  mixed->add_option("--g", opts.g)->required();
  mixed->add_option("--n", opts.n)->required();
  mixed->add_option("--psi", opts.psi, "comma-separated psi exponents (default all zero)");
  mixed->add_option("--kappa", opts.kappa, "comma-separated j:m pairs");

  auto* bound = app.add_subcommand("bound", "volume bounds with replayable certificates");
  bound->require_subcommand(1);
  std::string bound_kind;
  for (const char* name : {"thm1", "thm1-upper", "thm2", "thm3", "kodaira", "chain"}) {
    auto* sub = bound->add_subcommand(name);
    sub->add_option("--g", opts.g);
    sub->add_option("--n", opts.n);
    sub->add_option("--v", opts.v, "input volume (default: exact value)");
    sub->add_option("--p", opts.p, "lambda coefficient");
    sub->add_option("--q", opts.q, "comma-separated delta coefficients");
    sub->add_option("--mode", opts.mode)->check(CLI::IsMember({"as-printed", "thm2-consistent"}));
    sub->add_option("--g-max", opts.g_max);
    sub->add_option("--n-max", opts.n_max)->check(CLI::NonNegativeNumber);
    sub->add_option("--budget", opts.budget, "exact-value dimension budget");
    sub->add_flag("--override-exclusions", opts.override_exclusions);
    sub->callback([&bound_kind, name] { bound_kind = name; });
  }

  auto* verify = app.add_subcommand("verify", "recompute and check identities and inequalities");
  verify->require_subcommand(1);
  std::string verify_kind;
  for (const char* name : {"anchors", "thm1", "thm2", "lemma1"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("--max-dim", opts.max_dim)->check(CLI::NonNegativeNumber);
    sub->callback([&verify_kind, name] { verify_kind = name; });
  }

  auto* asym = app.add_subcommand("asym", "normalized ratios and log profiles");
  asym->add_option("--g-max", opts.g_max)->required();
  asym->add_option("--n", opts.n);
  asym->add_option("--source", opts.source)->check(CLI::IsMember({"exact", "chain"}));
  asym->add_option("--budget", opts.budget, "exact-value dimension budget for the chain");
  asym->add_option("--mode", opts.mode)->check(CLI::IsMember({"as-printed", "thm2-consistent"}));

  auto* cache = app.add_subcommand("cache", "export, import or clear the memo cache");
  cache->require_subcommand(1);
  std::string cache_kind;
  for (const char* name : {"export", "import", "clear"}) {
    auto* sub = cache->add_subcommand(name);
    sub->add_option("--path", opts.path);
    sub->callback([&cache_kind, name] { cache_kind = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  std::optional<std::string> cache_path;
  if (!opts.cache_path.empty())
    cache_path = opts.cache_path;
  else if (auto it = env.find("WPVOL_CACHE"); it != env.end() && !it->second.empty())
    cache_path = it->second;

  const Format format = opts.format == "csv" ? Format::Csv : opts.format == "json" ? Format::Json : Format::Text;

  try {
    Runner runner(opts, cache_path);
    Report report;
    if (*volume || *psi || *mixed || *bound || *asym) runner.load_cache_into_engine();
    if (*volume)
      report = runner.volume();
    else if (*psi)
      report = runner.psi();
    else if (*mixed)
      report = runner.mixed();
    else if (*bound)
      report = runner.bound(bound_kind);
    else if (*verify)
      report = runner.verify(verify_kind);
    else if (*asym)
      report = runner.asym();
    else
      report = runner.cache(cache_kind);
    if (*volume || *psi || *mixed || *bound || *asym) runner.save_engine_cache();
    result.out = render(report, format);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    result.exit_code = kExitUsage;
    result.err = err.str();
  } catch (const VerificationFailure& f) {
    result.exit_code = kExitVerificationFailed;
    result.err = f.message + "\n";
  } catch (const DomainError& e) {
    result.exit_code = kExitDomain;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const FormatError& e) {
    result.exit_code = kExitDomain;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kExitDomain;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace wpvol
