#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fisph/coeff.hpp"
#include "fisph/harmonics.hpp"
#include "fisph/kernels.hpp"
#include "fisph/kloosterman.hpp"
#include "fisph/series.hpp"
#include "fisph/verify.hpp"

using json = nlohmann::ordered_json;
using namespace fisph;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::string out;
  std::string only;
  int threads = 0;
  std::string profile;
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw UsageError(where + ": unknown key '" + it.key() + "'");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("bad value for '") + key + "'");
  }
}

double positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string("'") + key + "' must be > 0");
  return v;
}

std::vector<int> int_list(const json& j, const char* key, std::vector<int> def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_array()) {
    std::vector<int> out;
    for (const json& e : v) {
      if (!e.is_number_integer()) throw UsageError(std::string("'") + key + "' must hold integers");
      out.push_back(e.get<int>());
    }
    if (out.empty()) throw UsageError(std::string("'") + key + "' is empty");
    return out;
  }
  throw UsageError(std::string("bad value for '") + key + "'");
}

std::vector<double> real_list(const json& j, const char* key, std::vector<double> def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  std::vector<double> out;
  if (v.is_number()) out.push_back(v.get<double>());
  else if (v.is_array())
    for (const json& e : v) {
      if (!e.is_number()) throw UsageError(std::string("'") + key + "' must hold numbers");
      out.push_back(e.get<double>());
    }
  else throw UsageError(std::string("bad value for '") + key + "'");
  if (out.empty()) throw UsageError(std::string("'") + key + "' is empty");
  return out;
}

int threads_of(const json& cfg, const Flags& f) {
  const int t = f.threads > 0 ? f.threads : get<int>(cfg, "threads", 1);
  if (t < 1) throw UsageError("'threads' must be >= 1");
  return t;
}

std::string out_of(const json& cfg, const Flags& f) { return f.out.empty() ? get<std::string>(cfg, "out", "") : f.out; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  os << text;
}

json row_json(const CoefficientResult& c) {
  json j;
  j["p"] = c.p;
  j["n"] = c.n;
  j["r"] = c.r;
  j["method"] = std::string(method_name(c.method)) + (c.tilde ? "_tilde" : "");
  j["flagged"] = c.flagged;
  j["note"] = c.note;
  return j;
}

// flags and notes go to a sidecar next to the CSV, or to stderr
void emit_diagnostics(const std::string& out, const std::vector<CoefficientResult>& rows) {
  json errors = json::array(), notes = json::array();
  for (const CoefficientResult& c : rows) {
    if (c.flagged) errors.push_back(row_json(c));
    if (!c.note.empty()) notes.push_back(row_json(c));
  }
  json j;
  j["flagged"] = errors.size();
  j["errors"] = errors;
  j["notes"] = notes;
  if (out.empty()) {
    if (!errors.empty()) std::cerr << j.dump(2) << '\n';
  } else {
    emit(out + ".json", j.dump(2) + "\n");
  }
}

struct CoeffPlan {
  std::vector<int> ps;
  std::vector<int> ns;
  std::vector<double> rs;
  std::vector<bool> kinds;
  std::vector<Method> methods;
  ClosedFormOptions closed;
  ContourOptions contour;
};

std::vector<bool> parse_kinds(const json& cfg) {
  std::vector<bool> kinds;
  if (!cfg.contains("kinds")) return {false};
  for (const json& k : cfg.at("kinds")) {
    const std::string s = k.is_string() ? k.get<std::string>() : "";
    if (s == "P") kinds.push_back(false);
    else if (s == "Ptilde") kinds.push_back(true);
    else throw UsageError("'kinds' entries must be \"P\" or \"Ptilde\"");
  }
  if (kinds.empty()) throw UsageError("'kinds' is empty");
  return kinds;
}

std::vector<Method> parse_methods(const json& cfg) {
  if (!cfg.contains("methods")) return {Method::contour, Method::closed_form};
  std::vector<Method> ms;
  for (const json& k : cfg.at("methods")) {
    const std::string s = k.is_string() ? k.get<std::string>() : "";
    if (s == "contour") ms.push_back(Method::contour);
    else if (s == "closed_form") ms.push_back(Method::closed_form);
    else throw UsageError("'methods' entries must be \"contour\" or \"closed_form\"");
  }
  if (ms.empty()) throw UsageError("'methods' is empty");
  return ms;
}

void parse_truncation(const json& cfg, CoeffPlan& plan, int threads) {
  plan.closed.threads = threads;
  plan.closed.tol = positive(get<double>(cfg, "tol", 1e-6), "tol");
  plan.closed.c_max = get<std::int64_t>(cfg, "c_max", 0);
  plan.closed.c_max_scale = positive(get<double>(cfg, "c_max_scale", 1.0), "c_max_scale");
  plan.closed.accelerate = get<bool>(cfg, "accelerate", true);
  plan.contour.c_max = get<std::int64_t>(cfg, "contour_c_max", 32);
  plan.contour.tol = positive(get<double>(cfg, "contour_tol", 1e-9), "contour_tol");
  if (plan.closed.c_max < 0 || plan.contour.c_max < 1) throw UsageError("truncation must be positive");
}

std::vector<CoefficientResult> run_coeffs(const CoeffPlan& plan) {
  std::vector<CoefficientResult> rows;
  std::vector<int> pos_ns;
  int n_hi = 0;
  for (int n : plan.ns)
    if (n >= 1) n_hi = std::max(n_hi, n);
  for (int p : plan.ps) {
    if (p < 5) throw UsageError("p must be >= 5");
    for (double r : plan.rs) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("r must be >= 0");
      for (bool tilde : plan.kinds)
        for (Method m : plan.methods) {
          std::vector<CoefficientResult> got;
          if (m == Method::contour) {
            got = coeff_contour_batch(p, plan.ns, r, tilde, plan.contour);
          } else {
            std::vector<CoefficientResult> full;
            if (n_hi >= 1) full = coeff_closed_batch({{p, tilde, r, n_hi}}, plan.closed);
            for (int n : plan.ns) {
              if (n >= 1) {
                got.push_back(full[n - 1]);
              } else {
                CoefficientResult z;
                z.p = p;
                z.n = n;
                z.r = r;
                z.tilde = tilde;
                z.value = 0.0;
                z.method = Method::closed_form;
                z.note = "vanishing";
                got.push_back(z);
              }
            }
          }
          for (CoefficientResult& c : got) {
            c.method = m;
            rows.push_back(c);
          }
        }
    }
  }
  return rows;
}

int cmd_coeffs(const Flags& f) {
  const json cfg = load_config(f.config);
  check_keys(cfg,
             {"p", "n_min", "n_max", "n", "r", "kinds", "methods", "tol", "c_max", "c_max_scale", "accelerate",
              "contour_c_max", "contour_tol", "threads", "out"},
             "coeffs config");
  CoeffPlan plan;
  plan.ps = int_list(cfg, "p", {8});
  if (cfg.contains("n")) {
    plan.ns = int_list(cfg, "n", {});
  } else {
    const int lo = get<int>(cfg, "n_min", 1), hi = get<int>(cfg, "n_max", 5);
    if (hi < lo) throw UsageError("empty n-range");
    for (int n = lo; n <= hi; ++n) plan.ns.push_back(n);
  }
  plan.rs = real_list(cfg, "r", {0.0});
  plan.kinds = parse_kinds(cfg);
  plan.methods = parse_methods(cfg);
  parse_truncation(cfg, plan, threads_of(cfg, f));
  const std::vector<CoefficientResult> rows = run_coeffs(plan);
  std::ostringstream os;
  write_coeff_csv_header(os);
  bool flagged = false;
  for (const CoefficientResult& c : rows) {
    write_coeff_csv_row(os, c);
    flagged = flagged || c.flagged;
  }
  const std::string out = out_of(cfg, f);
  emit(out, os.str());
  emit_diagnostics(out, rows);
  return flagged ? 1 : 0;
}

json suite_json(const SuiteResult& s) {
  json j;
  j["name"] = s.name;
  j["criterion"] = s.criterion;
  j["pass"] = s.pass;
  j["value"] = s.value;
  j["threshold"] = s.threshold;
  j["runtime_s"] = s.runtime_s;
  j["time_limit_s"] = s.time_limit_s;
  json checks = json::array();
  for (const CheckResult& c : s.checks) {
    json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["notes"] = s.notes;
  return j;
}

int cmd_verify(const Flags& f) {
  const json cfg = load_config(f.config);
  check_keys(cfg, {"profile", "threads", "thresholds", "only", "out"}, "verify config");
  VerifyConfig vc;
  vc.profile = f.profile.empty() ? get<std::string>(cfg, "profile", "desk") : f.profile;
  if (vc.profile != "desk" && vc.profile != "deep") throw UsageError("profile must be desk or deep");
  vc.threads = threads_of(cfg, f);
  if (cfg.contains("thresholds")) {
    const json& t = cfg.at("thresholds");
    if (!t.is_object()) throw UsageError("'thresholds' must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!is_suite(it.key())) throw UsageError("unknown suite in thresholds: " + it.key());
      if (!it.value().is_number()) throw UsageError("threshold for " + it.key() + " must be a number");
      const double v = it.value().get<double>();
      if (!std::isfinite(v) || (v < 0.0 && it.key() != "growth")) throw UsageError("bad threshold for " + it.key());
      vc.thresholds[it.key()] = v;
    }
  }
  std::string only = f.only.empty() ? get<std::string>(cfg, "only", "") : f.only;
  std::vector<std::string> names;
  if (only.empty()) {
    names = suite_names();
  } else {
    std::stringstream ss(only);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) {
        if (!is_suite(item)) throw UsageError("unknown suite: " + item);
        names.push_back(item);
      }
    if (names.empty()) throw UsageError("--only lists no suite");
  }
  json report;
  report["profile"] = vc.profile;
  report["threads"] = vc.threads;
  json suites = json::array();
  json failures = json::array();
  bool pass = true;
  for (const std::string& n : names) {
    const SuiteResult s = run_suite(n, vc);
    std::cerr << (s.pass ? "PASS " : "FAIL ") << s.name << " value=" << fmt17(s.value) << " t=" << s.runtime_s
              << "s\n";
    pass = pass && s.pass;
    if (!s.pass)
      for (const CheckResult& c : s.checks)
        if (!c.pass) failures.push_back({{"suite", s.name}, {"check", c.name}, {"value", c.value}, {"threshold", c.threshold}});
    suites.push_back(suite_json(s));
  }
  report["pass"] = pass;
  report["failures"] = failures;
  report["suites"] = suites;
  emit(out_of(cfg, f), report.dump(2) + "\n");
  return pass ? 0 : 1;
}

int cmd_plotdata(const Flags& f) {
  const json cfg = load_config(f.config);
  check_keys(cfg,
             {"p", "n", "r_min", "r_max", "r_step", "kinds", "method", "tol", "c_max", "c_max_scale", "accelerate",
              "contour_c_max", "contour_tol", "kernel", "threads", "out"},
             "plotdata config");
  const int p = get<int>(cfg, "p", 6);
  const int n = get<int>(cfg, "n", 1);
  const double r0 = get<double>(cfg, "r_min", 0.0), r1 = get<double>(cfg, "r_max", 4.0);
  const double step = positive(get<double>(cfg, "r_step", 0.05), "r_step");
  if (r0 < 0.0 || r1 < r0) throw UsageError("empty or negative r-range");
  const long count = std::lround(std::floor((r1 - r0) / step + 1e-9)) + 1;
  CoeffPlan plan;
  plan.ps = {p};
  plan.ns = {n};
  for (long i = 0; i < count; ++i) plan.rs.push_back(r0 + step * double(i));
  plan.kinds = parse_kinds(cfg);
  const std::string method = get<std::string>(cfg, "method", "closed_form");
  if (method == "closed_form") plan.methods = {Method::closed_form};
  else if (method == "contour") plan.methods = {Method::contour};
  else throw UsageError("'method' must be contour or closed_form");
  const int threads = threads_of(cfg, f);
  parse_truncation(cfg, plan, threads);
  const std::vector<CoefficientResult> rows = run_coeffs(plan);
  std::ostringstream os;
  write_coeff_csv_header(os);
  bool flagged = false;
  for (const CoefficientResult& c : rows) {
    write_coeff_csv_row(os, c);
    flagged = flagged || c.flagged;
  }
  const std::string out = out_of(cfg, f);
  emit(out, os.str());
  emit_diagnostics(out, rows);
  if (cfg.contains("kernel")) {
    const json& k = cfg.at("kernel");
    check_keys(k, {"d", "n", "x_norm", "m_max", "cosines", "tol"}, "kernel config");
    const int d = get<int>(k, "d", 5), kn = get<int>(k, "n", 1);
    const double xn = get<double>(k, "x_norm", 1.0);
    const int m_max = get<int>(k, "m_max", -1);
    const int cosines = get<int>(k, "cosines", 41);
    const double tol = positive(get<double>(k, "tol", 1e-13), "kernel.tol");
    if (cosines < 2) throw UsageError("kernel.cosines must be >= 2");
    CoefficientCache cache(plan.closed);
    KernelEngine engine(d, cache, kn);
    std::ostringstream ks;
    ks << "d,n,x_norm,t,kernel,m_max,m_used,re,im,flagged\n";
    for (int tl = 0; tl < 2; ++tl)
      for (int i = 0; i < cosines; ++i) {
        const double t = -1.0 + 2.0 * i / (cosines - 1);
        const KernelValue v = engine.kernel_radial(kn, xn, t, tl == 1, m_max, tol, false);
        ks << d << ',' << kn << ',' << fmt17(xn) << ',' << fmt17(t) << ',' << (tl ? "A_tilde" : "A") << ','
           << (m_max < 0 ? v.m_policy : m_max) << ',' << v.m_used << ',' << fmt17(v.value.real()) << ','
           << fmt17(v.value.imag()) << ',' << (v.flagged ? 1 : 0) << '\n';
        flagged = flagged || v.flagged;
      }
    emit(out.empty() ? "" : out + ".kernel.csv", ks.str());
  }
  return flagged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier interpolation on spheres: coefficients, kernels and identity checks"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--profile", flags.profile, "desk or deep")->check(CLI::IsMember({"desk", "deep"}));
  };
  CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient table as CSV");
  CLI::App* verify = app.add_subcommand("verify", "run verification suites, JSON report");
  CLI::App* plot = app.add_subcommand("plotdata", "r-grid of coefficients and kernel slices");
  for (CLI::App* s : {coeffs, verify, plot}) add_common(s);
  verify->add_option("--only", flags.only, "comma-separated suite names");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*coeffs) return cmd_coeffs(flags);
    if (*verify) return cmd_verify(flags);
    return cmd_plotdata(flags);
  } catch (const UsageError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}
