#include "primebound/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "primebound/bounds.hpp"
#include "primebound/errors.hpp"
#include "primebound/exact_compare.hpp"
#include "primebound/prime_table.hpp"
#include "primebound/verify.hpp"

namespace primebound::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kMaxTableRebuilds = 4;

std::string_view command_name(Command c) {
  switch (c) {
    case Command::check: return "check";
    case Command::scan: return "scan";
    case Command::threshold: return "threshold";
    case Command::root: return "root";
    case Command::constants: return "constants";
  }
  return "constants";
}

/// Rounds to 12 significant digits so reports are stable and compact.
json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

json big_integer(const mpz_class& v) {
  if (v >= 0 && mpz_fits_ulong_p(v.get_mpz_t())) {
    return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
  }
  return v.get_str();
}

json optional_u64(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

struct Report {
  json params = json::object();
  json result = json::object();
  json diagnostics = json::array();
  /// Per-n rows for CSV scan output.
  std::vector<std::pair<std::uint64_t, CheckVerdict>> rows;
};

InequalityParams make_params(InequalityId id, const RunConfig& cfg, const PrecisionPolicy& policy) {
  if (!takes_parameters(id)) return InequalityParams::none();
  return InequalityParams::with(parse_admissible_constant(*cfg.c, policy), *cfg.k);
}

/// Builds a table for the requested coverage, doubling it when a range error escapes.
template <typename Fn>
void with_table(const RunConfig& cfg, std::uint64_t index, std::uint64_t min_x, Report& report,
                Fn&& body) {
  std::uint64_t limit = cfg.sieve_limit ? *cfg.sieve_limit : suggested_limit(index, min_x);
  for (int attempt = 0;; ++attempt) {
    const PrimeTable table = PrimeTable::build(limit);
    try {
      report.params["sieve_limit"] = table.limit();
      body(table);
      return;
    } catch (const RangeError&) {
      if (attempt >= kMaxTableRebuilds) throw;
      if (limit > std::numeric_limits<std::uint64_t>::max() / 2) throw;
      limit *= 2;
    }
  }
}

json verdict_json(std::uint64_t n, const CheckVerdict& v) {
  json out;
  out["n"] = n;
  out["status"] = std::string(to_string(v.status));
  out["precision_used"] = v.precision_used;
  out["margin"] = real(v.margin);
  return out;
}

void validate(const RunConfig& cfg, const PrecisionPolicy& policy) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
  };
  need(cfg.precision_bits >= 2 && cfg.precision_bits <= policy.cap_bits,
       "--precision must be in [2, " + std::to_string(policy.cap_bits) + "]");
  need(cfg.tolerance > 0 && std::isfinite(cfg.tolerance), "--tol must be positive");
  if (cfg.sieve_limit) need(*cfg.sieve_limit >= 2, "--sieve-limit must be at least 2");

  const auto check_ineq_params = [&](InequalityId id) {
    if (takes_parameters(id)) {
      need(cfg.c.has_value() && cfg.k.has_value(), std::string(to_string(id)) + " requires --c and --k");
    } else {
      need(!cfg.c && !cfg.k, std::string(to_string(id)) + " does not take --c or --k");
    }
  };

  switch (cfg.command) {
    case Command::check: {
      need(cfg.inequality.has_value(), "check requires --ineq");
      need(cfg.n.has_value(), "check requires --n");
      const InequalityId id = parse_inequality(*cfg.inequality);
      check_ineq_params(id);
      need(*cfg.n >= first_meaningful_n(id), "--n must be at least " + std::to_string(first_meaningful_n(id)));
      break;
    }
    case Command::scan: {
      need(cfg.inequality.has_value(), "scan requires --ineq");
      need(cfg.n_lo && cfg.n_hi, "scan requires --n-lo and --n-hi");
      const InequalityId id = parse_inequality(*cfg.inequality);
      check_ineq_params(id);
      need(*cfg.n_lo <= *cfg.n_hi, "--n-lo must not exceed --n-hi");
      need(*cfg.n_lo >= first_meaningful_n(id),
           "--n-lo must be at least " + std::to_string(first_meaningful_n(id)));
      break;
    }
    case Command::threshold: {
      need(cfg.inequality.has_value(), "threshold requires --ineq");
      const InequalityId id = parse_inequality(*cfg.inequality);
      check_ineq_params(id);
      need(cfg.scan_cap.has_value() || takes_parameters(id),
           std::string(to_string(id)) + " threshold requires --cap");
      if (cfg.scan_cap) need(*cfg.scan_cap >= first_meaningful_n(id), "--cap is below the first meaningful n");
      break;
    }
    case Command::root:
      need(cfg.function == "fk" || cfg.function == "appendix", "--fn must be fk or appendix");
      if (cfg.function == "fk") {
        need(cfg.c && cfg.k, "root --fn fk requires --c and --k");
      } else {
        need(!cfg.c && !cfg.k, "root --fn appendix does not take --c or --k");
      }
      break;
    case Command::constants:
      break;
  }
}

void run_check(const RunConfig& cfg, const PrecisionPolicy& policy, Report& report) {
  const InequalityId id = parse_inequality(*cfg.inequality);
  const InequalityParams params = make_params(id, cfg, policy);
  const std::uint64_t n = *cfg.n;
  report.params["n"] = n;
  const VerifyOptions opt{policy, cfg.threads};
  with_table(cfg, prime_index_needed(id, n, cfg.k.value_or(0)), n, report, [&](const PrimeTable& t) {
    report.result = verdict_json(n, check_inequality(id, n, params, t, opt));
  });
}

void run_scan(const RunConfig& cfg, const PrecisionPolicy& policy, Report& report) {
  const InequalityId id = parse_inequality(*cfg.inequality);
  const InequalityParams params = make_params(id, cfg, policy);
  report.params["n_lo"] = *cfg.n_lo;
  report.params["n_hi"] = *cfg.n_hi;
  const VerifyOptions opt{policy, cfg.threads};
  const bool rows = cfg.format == Format::csv;
  with_table(cfg, prime_index_needed(id, *cfg.n_hi, cfg.k.value_or(0)), *cfg.n_hi, report,
             [&](const PrimeTable& t) {
               ScanSummary s = scan_range(id, *cfg.n_lo, *cfg.n_hi, params, t, opt, rows);
               json& r = report.result;
               r = json::object();
               r["n_lo"] = s.n_lo;
               r["n_hi"] = s.n_hi;
               r["holds"] = s.holds;
               r["fails"] = s.fails;
               r["undecided"] = s.undecided;
               r["failures"] = s.failures;
               r["undecided_n"] = s.undecided_at;
               report.rows.clear();
               for (std::size_t i = 0; i < s.verdicts.size(); ++i) {
                 report.rows.emplace_back(s.n_lo + i, s.verdicts[i]);
               }
             });
}

json root_json(const RootResult& r) {
  json out;
  out["root"] = real(r.root.to_double());
  out["root_width"] = real(r.bracket_width());
  out["bracket"] = json::array({real(r.lo.to_double(MPFR_RNDD)), real(r.hi.to_double(MPFR_RNDU))});
  out["iterations"] = r.iterations;
  out["tolerance"] = real(r.tolerance);
  out["analytic_threshold"] = big_integer(r.analytic_threshold);
  out["monotonicity_violated"] = r.monotonicity_violated;
  return out;
}

void run_threshold(const RunConfig& cfg, const PrecisionPolicy& policy, Report& report) {
  const InequalityId id = parse_inequality(*cfg.inequality);
  const InequalityParams params = make_params(id, cfg, policy);
  const VerifyOptions opt{policy, cfg.threads};
  RootOptions ropt;
  ropt.tolerance = cfg.tolerance;
  ropt.precision = policy;

  std::uint64_t cap = 0;
  if (cfg.scan_cap) {
    cap = *cfg.scan_cap;
  } else {
    // Scan exactly up to ceil(x_k), the point where the analytic guarantee takes over.
    const RootResult root = find_root(ThresholdFunction::fk(*params.c, *params.k, policy), ropt);
    const mpz_class ceil_root = root.analytic_threshold + 1;
    if (!mpz_fits_ulong_p(ceil_root.get_mpz_t())) {
      throw ResourceError("ceil(x_k) = " + ceil_root.get_str() + " is beyond any scannable range");
    }
    cap = mpz_get_ui(ceil_root.get_mpz_t());
    report.diagnostics.push_back("scan_cap defaulted to ceil(x_k) = " + std::to_string(cap));
  }
  report.params["scan_cap"] = cap;

  std::uint64_t index = prime_index_needed(id, cap, cfg.k.value_or(0));
  if (id == InequalityId::corollary1) index = std::max(index, cap + 1);
  if (id == InequalityId::rosser_pn || takes_parameters(id)) index = std::max<std::uint64_t>(index, 1000);
  with_table(cfg, index, cap, report, [&](const PrimeTable& t) {
    const ThresholdReport tr = minimal_threshold(id, params, cap, t, opt, ropt);
    json& r = report.result;
    r = json::object();
    r["minimal_n"] = tr.minimal_n;
    r["certified"] = tr.certified;
    r["scan_cap"] = tr.scan_cap;
    r["failures_below"] = tr.failures_below;
    r["undecided"] = tr.undecided;
    if (tr.analytic_root) {
      r["analytic_root"] = real(tr.analytic_root->root.to_double());
      r["analytic_root_width"] = real(tr.analytic_root->bracket_width());
      r["analytic_threshold"] = big_integer(tr.analytic_root->analytic_threshold);
      r["guaranteed_from"] = big_integer(*tr.guaranteed_from);
      r["monotonicity_violated"] = tr.analytic_root->monotonicity_violated;
    } else {
      r["analytic_root"] = nullptr;
      r["analytic_root_width"] = nullptr;
      r["analytic_threshold"] = nullptr;
      r["guaranteed_from"] = nullptr;
      r["monotonicity_violated"] = nullptr;
    }
    r["rosser_pn_region_ok"] = tr.rosser_pn_region_ok ? json(*tr.rosser_pn_region_ok) : json(nullptr);
    for (const auto& d : tr.diagnostics) report.diagnostics.push_back(d);
  });
}

void run_root(const RunConfig& cfg, const PrecisionPolicy& policy, Report& report) {
  report.params["fn"] = cfg.function;
  report.params["tolerance"] = real(cfg.tolerance);
  const ThresholdFunction fn = cfg.function == "appendix"
                                   ? ThresholdFunction::appendix()
                                   : ThresholdFunction::fk(parse_constant(*cfg.c), *cfg.k, policy);
  RootOptions ropt;
  ropt.tolerance = cfg.tolerance;
  ropt.precision = policy;
  const RootResult r = find_root(fn, ropt);
  report.result = root_json(r);
  report.result["function"] = fn.name();
  for (const auto& d : r.diagnostics) report.diagnostics.push_back(d);
}

void run_constants(const PrecisionPolicy& policy, Report& report) {
  const AuditReport audit = audit_constants(std::max(policy.start_bits, 128));
  json findings = json::array();
  for (const auto& f : audit.findings) {
    json j;
    j["name"] = f.name;
    j["description"] = f.description;
    j["passed"] = f.passed;
    j["value"] = real(f.value);
    j["value_width"] = real(f.value_width);
    j["bound"] = real(f.bound);
    findings.push_back(std::move(j));
    if (!f.passed) report.diagnostics.push_back("audit finding failed: " + f.name);
  }
  report.result["all_passed"] = audit.all_passed();
  report.result["findings"] = std::move(findings);
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_report(const RunConfig& cfg, const Report& report, std::ostream& out) {
  json doc;
  doc["command"] = std::string(command_name(cfg.command));
  doc["params"] = report.params;
  doc["result"] = report.result;
  doc["diagnostics"] = report.diagnostics;
  doc["versions"] = {{"spec", "1"}};

  switch (cfg.format) {
    case Format::json:
      out << doc.dump(2) << '\n';
      return;
    case Format::csv:
      if (cfg.command == Command::scan) {
        out << "n,verdict,margin\n";
        for (const auto& [n, v] : report.rows) {
          out << n << ',' << to_string(v.status) << ',';
          if (v.margin && std::isfinite(*v.margin)) out << real(*v.margin).dump();
          out << '\n';
        }
      } else {
        std::vector<std::pair<std::string, std::string>> kv;
        flatten(doc, "", kv);
        out << "key,value\n";
        for (const auto& [k, v] : kv) out << csv_field(k) << ',' << csv_field(v) << '\n';
      }
      return;
    case Format::text: {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(doc, "", kv);
      for (const auto& [k, v] : kv) out << k << ": " << v << '\n';
      return;
    }
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args, std::optional<std::string>* help) {
  CLI::App app{"Exact verification of prime-power inequalities", "primebound"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::string c, ineq;
  std::uint64_t k = 0, n = 0, n_lo = 0, n_hi = 0, cap = 0, sieve = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision_bits, "Starting precision in bits (default 64)");
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--sieve-limit", sieve, "Override the automatic prime table size");
    sub->add_option("--threads", cfg.threads, "Scan worker threads (0 = all cores)");
  };
  auto ineq_opts = [&](CLI::App* sub) {
    sub->add_option("--ineq", ineq, "theorem1, corollary1, zhang, panaitopol, rosser_pi, rosser_pn, appendix_a");
    sub->add_option("--c", c, "Constant c with 1 < c < e (integer, p/q or decimal)");
    sub->add_option("--k", k, "Shift k >= 0");
  };

  CLI::App* check = app.add_subcommand("check", "Decide one inequality at one n");
  ineq_opts(check);
  check->add_option("--n", n, "Index n");
  common(check);

  CLI::App* scan = app.add_subcommand("scan", "Decide an inequality for every n in a range");
  ineq_opts(scan);
  scan->add_option("--n-lo,--lo", n_lo, "First n");
  scan->add_option("--n-hi,--hi", n_hi, "Last n");
  common(scan);

  CLI::App* threshold = app.add_subcommand("threshold", "Minimal threshold by exhaustive scan");
  ineq_opts(threshold);
  threshold->add_option("--cap,--scan-cap", cap, "Largest n scanned (default ceil(x_k) for theorem1/corollary1)");
  threshold->add_option("--tol", cfg.tolerance, "Root tolerance (default 1e-9)");
  common(threshold);

  CLI::App* root = app.add_subcommand("root", "Zero of a threshold function");
  root->add_option("--fn", cfg.function, "fk or appendix");
  root->add_option("--c", c, "Constant c with 1 < c < e");
  root->add_option("--k", k, "Shift k >= 0");
  root->add_option("--tol", cfg.tolerance, "Root tolerance (default 1e-9)");
  common(root);

  CLI::App* constants = app.add_subcommand("constants", "Audit the explicit constants");
  common(constants);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    if (help) *help = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    if (what.empty()) what = "invalid command line";
    throw ParseError(what);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "check") cfg.command = Command::check;
  else if (name == "scan") cfg.command = Command::scan;
  else if (name == "threshold") cfg.command = Command::threshold;
  else if (name == "root") cfg.command = Command::root;
  else cfg.command = Command::constants;

  auto given = [&](const char* opt) { return chosen->count(opt) > 0; };
  if (chosen->get_option_no_throw("--c") && given("--c")) cfg.c = c;
  if (chosen->get_option_no_throw("--k") && given("--k")) cfg.k = k;
  if (chosen->get_option_no_throw("--ineq") && given("--ineq")) cfg.inequality = ineq;
  if (chosen->get_option_no_throw("--n") && given("--n")) cfg.n = n;
  if (chosen->get_option_no_throw("--n-lo") && given("--n-lo")) cfg.n_lo = n_lo;
  if (chosen->get_option_no_throw("--n-hi") && given("--n-hi")) cfg.n_hi = n_hi;
  if (chosen->get_option_no_throw("--cap") && given("--cap")) cfg.scan_cap = cap;
  if (given("--sieve-limit")) cfg.sieve_limit = sieve;
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  PrecisionPolicy policy;
  try {
    policy = PrecisionPolicy::from_environment();
    validate(cfg, policy);
    if (cfg.inequality) parse_inequality(*cfg.inequality);
    if (cfg.c) parse_constant(*cfg.c);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  policy.start_bits = cfg.precision_bits;

  Report report;
  report.params["inequality"] = cfg.inequality ? json(*cfg.inequality) : json(nullptr);
  report.params["c"] = cfg.c ? json(parse_constant(*cfg.c).to_string()) : json(nullptr);
  report.params["k"] = optional_u64(cfg.k);
  report.params["precision_bits"] = cfg.precision_bits;
  report.params["precision_cap"] = policy.cap_bits;

  try {
    switch (cfg.command) {
      case Command::check: run_check(cfg, policy, report); break;
      case Command::scan: run_scan(cfg, policy, report); break;
      case Command::threshold: run_threshold(cfg, policy, report); break;
      case Command::root: run_root(cfg, policy, report); break;
      case Command::constants: run_constants(policy, report); break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitOperational;
  }
  write_report(cfg, report, out);
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::optional<std::string> help;
  try {
    cfg = parse_args(args, &help);
  } catch (const ParseError& e) {
    std::string line = e.what();
    for (char& ch : line) {
      if (ch == '\n') ch = ' ';
    }
    err << "error: " << line << '\n';
    return kExitUsage;
  }
  if (help) {
    out << *help;
    return kExitOk;
  }
  return run(cfg, out, err);
}

}  // namespace primebound::cli
