#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hpfrac/extension.hpp"
#include "hpfrac/linsolve.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/shifted.hpp"
#include "hpfrac/sinc.hpp"

namespace hpfrac {

enum class Method { extension, sinc };

Method parse_method(const std::string& s);
std::string method_name(Method m);

struct Steering {
  double sigma_x = 0.25;
  double sigma_y = 0.25;
  double y_factor = 0.5;
  double m_factor = 0.79;
  std::optional<double> slope;
  double lambda = 1.0;
  std::optional<double> kappa0;
  double c1 = 1.0;
  std::optional<double> k;
  SincVariant sinc_variant = SincVariant::practical;
  SolveMode solve_mode = SolveMode::direct;
  double solve_tol = 1e-12;
  ExecPolicy policy = ExecPolicy::parallel;
};

ExtensionParams extension_params(const Steering& st, bool keep_fields = false);
SincParams sinc_params(const Steering& st, bool keep_fields = false);

struct MethodRun {
  double J = 0.0;  // d_s * int f u
  long long n_dof = 0;
  int n_ls = 0;
  std::vector<std::string> warnings;
};

/// One solve of the given method with f = 1 and the functional J = d_s int f u.
MethodRun run_method(const PolygonDomain& domain, Method method, MeshCase mesh_case, double s, int p,
                     const Steering& st);

/// e = |J_ref - J|^{1/2}.
double error_functional(double J_ref, double J);

enum class ReferencePolicy { oracle, fine };

struct StudyConfig {
  std::vector<std::string> domains{"square"};
  std::vector<double> s_values{0.5};
  std::vector<int> p_values;
  std::vector<Method> methods{Method::extension, Method::sinc};
  std::vector<MeshCase> cases{MeshCase::B};
  ReferencePolicy reference = ReferencePolicy::oracle;
  std::optional<int> p_ref;  // fine policy; defaults to max(p) + 2
  int oracle_trunc = 2001;
  bool check_reference_increment = false;
  bool deterministic = false;
  Steering steering;
};

StudyConfig parse_study_config(const std::string& json_text);
StudyConfig load_study_config(const std::string& path);

struct ConvergenceRecord {
  std::string domain;
  Method method = Method::extension;
  MeshCase mesh_case = MeshCase::B;
  double s = 0.5;
  int p = 1;
  long long n_dof = 0;
  int n_ls = 0;
  double error = 0.0;
  double seconds = 0.0;
  double J = 0.0;
  double J_ref = 0.0;
  std::vector<std::string> notes;  // warnings and error tags
  bool failed = false;
};

using StudyProgress = std::function<void(const ConvergenceRecord&)>;

/// One record per (domain, method, case, s, p) in config order.
std::vector<ConvergenceRecord> run_study(const StudyConfig& config, const StudyProgress& progress = {});

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& rows);
/// Warnings and error tags, one line per note, keyed by row number.
void write_notes(std::ostream& os, const std::vector<ConvergenceRecord>& rows);

}  // namespace hpfrac
