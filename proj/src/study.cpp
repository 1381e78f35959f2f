#include "hpfrac/study.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <tuple>

#include "hpfrac/errors.hpp"
#include "hpfrac/oracle.hpp"

namespace hpfrac {

Method parse_method(const std::string& s) {
  if (s == "extension") return Method::extension;
  if (s == "sinc") return Method::sinc;
  throw ParameterError("unknown method '" + s + "' (expected extension or sinc)");
}

std::string method_name(Method m) { return m == Method::extension ? "extension" : "sinc"; }

namespace {

HpParams hp_params(const Steering& st, bool keep) {
  HpParams hp;
  hp.sigma_x = st.sigma_x;
  hp.lambda = st.lambda;
  hp.kappa0 = st.kappa0;
  hp.c1 = st.c1;
  hp.solve_mode = st.solve_mode;
  hp.solve_tol = st.solve_tol;
  hp.policy = st.policy;
  hp.keep_fields = keep;
  return hp;
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExtensionParams extension_params(const Steering& st, bool keep_fields) {
  ExtensionParams p;
  p.y.y_factor = st.y_factor;
  p.y.m_factor = st.m_factor;
  p.y.sigma = st.sigma_y;
  p.y.slope = st.slope;
  p.hp = hp_params(st, keep_fields);
  return p;
}

SincParams sinc_params(const Steering& st, bool keep_fields) {
  SincParams p;
  p.k = st.k;
  p.variant = st.sinc_variant;
  p.hp = hp_params(st, keep_fields);
  return p;
}

MethodRun run_method(const PolygonDomain& domain, Method method, MeshCase mesh_case, double s, int p,
                     const Steering& st) {
  const Function2D one = [](Point) { return 1.0; };
  MethodRun run;
  if (method == Method::extension) {
    const ExtensionSolution sol = solve_extension(domain, one, s, p, mesh_case, extension_params(st));
    run.J = sol.stored_functional();
    run.n_dof = sol.n_dof_total;
    run.n_ls = sol.num_linear_systems();
    run.warnings = sol.warnings;
  } else {
    const SincSolution sol = solve_sinc(domain, one, s, p, mesh_case, sinc_params(st));
    run.J = sol.stored_functional();
    run.n_dof = sol.n_dof_total;
    run.n_ls = sol.num_linear_systems();
    run.warnings = sol.warnings;
  }
  return run;
}

double error_functional(double J_ref, double J) { return std::sqrt(std::abs(J_ref - J)); }

StudyConfig parse_study_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  StudyConfig c;
  try {
    static const std::vector<std::string> known = {
        "domains", "s", "p", "p_min", "p_max", "methods", "cases", "reference", "p_ref", "oracle_trunc",
        "check_reference_increment", "deterministic", "sigma_x", "sigma_y", "y_factor", "m_factor", "slope",
        "lambda", "kappa0", "c1", "k", "sinc_variant", "solve_mode", "solve_tol"};
    for (auto it = j.begin(); it != j.end(); ++it)
      if (std::find(known.begin(), known.end(), it.key()) == known.end())
        throw ConfigError("config: unknown key '" + it.key() + "'");
    if (j.contains("domains")) c.domains = j["domains"].get<std::vector<std::string>>();
    if (j.contains("s")) c.s_values = j["s"].get<std::vector<double>>();
    if (j.contains("p")) c.p_values = j["p"].get<std::vector<int>>();
    if (j.contains("p_min") || j.contains("p_max")) {
      if (!j.contains("p_min") || !j.contains("p_max")) throw ConfigError("config: p_min and p_max go together");
      const int a = j["p_min"].get<int>(), b = j["p_max"].get<int>();
      c.p_values.clear();
      for (int p = a; p <= b; ++p) c.p_values.push_back(p);
    }
    if (j.contains("methods")) {
      c.methods.clear();
      for (const auto& m : j["methods"]) c.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("cases")) {
      c.cases.clear();
      for (const auto& m : j["cases"]) c.cases.push_back(parse_case(m.get<std::string>()));
    }
    if (j.contains("reference")) {
      const auto r = j["reference"].get<std::string>();
      if (r == "oracle")
        c.reference = ReferencePolicy::oracle;
      else if (r == "fine")
        c.reference = ReferencePolicy::fine;
      else
        throw ConfigError("config: reference must be oracle or fine");
    }
    if (j.contains("p_ref")) c.p_ref = j["p_ref"].get<int>();
    if (j.contains("oracle_trunc")) c.oracle_trunc = j["oracle_trunc"].get<int>();
    if (j.contains("check_reference_increment"))
      c.check_reference_increment = j["check_reference_increment"].get<bool>();
    if (j.contains("deterministic")) c.deterministic = j["deterministic"].get<bool>();
    Steering& st = c.steering;
    if (j.contains("sigma_x")) st.sigma_x = j["sigma_x"].get<double>();
    if (j.contains("sigma_y")) st.sigma_y = j["sigma_y"].get<double>();
    if (j.contains("y_factor")) st.y_factor = j["y_factor"].get<double>();
    if (j.contains("m_factor")) st.m_factor = j["m_factor"].get<double>();
    if (j.contains("slope") && !j["slope"].is_null()) st.slope = j["slope"].get<double>();
    if (j.contains("lambda")) st.lambda = j["lambda"].get<double>();
    if (j.contains("kappa0") && !j["kappa0"].is_null()) st.kappa0 = j["kappa0"].get<double>();
    if (j.contains("c1")) st.c1 = j["c1"].get<double>();
    if (j.contains("k") && !j["k"].is_null()) st.k = j["k"].get<double>();
    if (j.contains("sinc_variant")) st.sinc_variant = parse_sinc_variant(j["sinc_variant"].get<std::string>());
    if (j.contains("solve_mode")) {
      const auto m = j["solve_mode"].get<std::string>();
      if (m == "direct")
        st.solve_mode = SolveMode::direct;
      else if (m == "cg")
        st.solve_mode = SolveMode::cg;
      else
        throw ConfigError("config: solve_mode must be direct or cg");
    }
    if (j.contains("solve_tol")) st.solve_tol = j["solve_tol"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.p_values.empty()) throw ConfigError("config: p-range is empty");
  for (int p : c.p_values)
    if (p < 1) throw ConfigError("config: p values must be >= 1");
  if (c.s_values.empty()) throw ConfigError("config: no s values");
  for (double s : c.s_values)
    if (!(s > 0 && s < 1)) throw ConfigError("config: s values must lie in (0,1)");
  if (c.domains.empty() || c.methods.empty() || c.cases.empty())
    throw ConfigError("config: domains, methods and cases must be nonempty");
  for (const auto& d : c.domains) {
    try {
      parse_builtin(d);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (c.oracle_trunc < 1 || c.oracle_trunc % 2 == 0) throw ConfigError("config: oracle_trunc must be odd");
  return c;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_study_config(ss.str());
}

std::vector<ConvergenceRecord> run_study(const StudyConfig& cfg, const StudyProgress& progress) {
  if (cfg.p_values.empty()) throw ConfigError("config: p-range is empty");
  const int p_max = *std::max_element(cfg.p_values.begin(), cfg.p_values.end());
  const int p_ref = cfg.p_ref.value_or(p_max + 2);
  std::vector<ConvergenceRecord> rows;

  struct Ref {
    double J = 0.0;
    std::optional<double> J_prev;
    std::string error;
  };
  std::map<std::tuple<std::string, int, int, double>, Ref> refs;
  std::map<double, double> oracle_J;

  for (const auto& dname : cfg.domains) {
    const PolygonDomain domain = make_builtin_domain(parse_builtin(dname));
    const bool use_oracle = cfg.reference == ReferencePolicy::oracle && dname == "square";
    for (Method method : cfg.methods)
      for (MeshCase mc : cfg.cases)
        for (double s : cfg.s_values) {
          Ref ref;
          if (use_oracle) {
            auto it = oracle_J.find(s);
            if (it == oracle_J.end()) it = oracle_J.emplace(s, series_oracle_square(s, cfg.oracle_trunc).J_ref).first;
            ref.J = it->second;
          } else {
            try {
              ref.J = run_method(domain, method, mc, s, p_ref, cfg.steering).J;
              if (cfg.check_reference_increment)
                ref.J_prev = run_method(domain, method, mc, s, p_ref - 1, cfg.steering).J;
            } catch (const std::exception& e) {
              ref.error = std::string("reference failed: ") + e.what();
            }
          }
          std::vector<size_t> group;
          for (int p : cfg.p_values) {
            ConvergenceRecord r;
            r.domain = dname;
            r.method = method;
            r.mesh_case = mc;
            r.s = s;
            r.p = p;
            r.J_ref = ref.J;
            if (!ref.error.empty()) {
              r.failed = true;
              r.notes.push_back(ref.error);
            } else {
              const auto t0 = std::chrono::steady_clock::now();
              try {
                const MethodRun run = run_method(domain, method, mc, s, p, cfg.steering);
                r.J = run.J;
                r.n_dof = run.n_dof;
                r.n_ls = run.n_ls;
                r.error = error_functional(ref.J, run.J);
                r.notes = run.warnings;
              } catch (const std::exception& e) {
                r.failed = true;
                r.notes.push_back(std::string("error: ") + e.what());
              }
              const auto t1 = std::chrono::steady_clock::now();
              r.seconds = cfg.deterministic ? 0.0 : std::chrono::duration<double>(t1 - t0).count();
            }
            group.push_back(rows.size());
            rows.push_back(std::move(r));
            if (progress) progress(rows.back());
          }
          if (ref.J_prev) {
            double e_min = INFINITY;
            for (size_t i : group)
              if (!rows[i].failed) e_min = std::min(e_min, rows[i].error);
            const double inc = error_functional(ref.J, *ref.J_prev);
            if (inc > 1e-2 * e_min) {
              std::ostringstream os;
              os << "reference increment " << inc << " exceeds 1e-2 of the smallest error " << e_min;
              for (size_t i : group) rows[i].notes.push_back(os.str());
            }
          }
        }
  }
  return rows;
}

std::string csv_header() { return "domain,method,case,s,p,N_dof,N_ls,error,seconds"; }

void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) {
    os << r.domain << ',' << method_name(r.method) << ',' << case_name(r.mesh_case) << ',' << fmt(r.s) << ','
       << r.p << ',' << r.n_dof << ',' << r.n_ls << ',' << (r.failed ? std::string("nan") : fmt(r.error)) << ','
       << (r.failed ? std::string("nan") : fmt(r.seconds)) << '\n';
  }
}

void write_notes(std::ostream& os, const std::vector<ConvergenceRecord>& rows) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& n : rows[i].notes) os << "row " << (i + 1) << ": " << n << '\n';
}

}  // namespace hpfrac
