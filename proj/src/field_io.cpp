#include <iomanip>
#include <json.hpp>
#include <ostream>

#include "hpfrac/io.hpp"

namespace hpfrac {

void write_field(std::ostream& os, const Field& field) {
  os << std::setprecision(17) << "hpfrac-field 1\n";
  os << "degree " << field.space->max_degree() << '\n';
  os << "coefficients " << field.coeffs.size() << '\n';
  for (Eigen::Index i = 0; i < field.coeffs.size(); ++i) os << field.coeffs[i] << '\n';
}

namespace {

nlohmann::json stats_json(const SolveStats& st) {
  return {{"iterations", st.iterations}, {"relative_residual", st.relative_residual}};
}

}  // namespace

std::string extension_summary_json(const ExtensionSolution& sol, const std::string& domain) {
  nlohmann::json j;
  j["method"] = "extension";
  j["domain"] = domain;
  j["case"] = case_name(sol.mesh_case);
  j["s"] = sol.diag.setup.s;
  j["d_s"] = sol.diag.setup.d_s;
  j["Y"] = sol.diag.setup.Y;
  j["M"] = sol.diag.setup.mesh.num_elements();
  j["y_dim"] = sol.diag.setup.dim();
  j["cond_estimate"] = sol.diag.cond_estimate;
  j["N_ls"] = sol.num_linear_systems();
  j["N_dof"] = sol.n_dof_total;
  j["functional"] = sol.stored_functional();
  j["warnings"] = sol.warnings;
  auto& modes = j["modes"] = nlohmann::json::array();
  for (const auto& m : sol.modes)
    modes.push_back({{"mu", m.mu}, {"v0", m.v0}, {"N_dof", m.n_dof}, {"stats", stats_json(m.stats)}});
  return j.dump(2);
}

std::string sinc_summary_json(const SincSolution& sol, const std::string& domain) {
  nlohmann::json j;
  j["method"] = "sinc";
  j["domain"] = domain;
  j["case"] = case_name(sol.mesh_case);
  j["s"] = sol.rule.s;
  j["d_s"] = sol.d_s;
  j["k"] = sol.rule.k;
  j["variant"] = sinc_variant_name(sol.rule.variant);
  j["K1"] = sol.rule.K1;
  j["K2"] = sol.rule.K2;
  j["N_ls"] = sol.num_linear_systems();
  j["N_dof"] = sol.n_dof_total;
  j["functional"] = sol.stored_functional();
  j["warnings"] = sol.warnings;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const auto& n : sol.nodes)
    nodes.push_back({{"y", n.y}, {"weight", n.weight}, {"eps2", n.eps2}, {"N_dof", n.n_dof},
                     {"stats", stats_json(n.stats)}});
  return j.dump(2);
}

}  // namespace hpfrac
