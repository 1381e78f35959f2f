#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "hpfrac/io.hpp"
#include "hpfrac/mms.hpp"
#include "hpfrac/oracle.hpp"
#include "hpfrac/study.hpp"

namespace hpfrac::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    auto os = open_out(path);
    os << text;
  }
}

}  // namespace

int run_mesh(const MeshArgs& a) {
  PolygonDomain domain;
  if (!a.domain_file.empty()) {
    std::ifstream in(a.domain_file);
    if (!in) throw std::runtime_error("cannot open " + a.domain_file);
    domain = read_domain(in);
  } else {
    domain = make_builtin_domain(parse_builtin(a.domain));
  }
  Mesh2D mesh = a.type == "geo"
                    ? build_geometric_bl_mesh(domain, a.L, a.n.value_or(a.L), a.sigma)
                    : build_minimal_mesh(domain, a.L, a.q, a.lambda, a.eps,
                                         a.kappa0.value_or(0.25 * domain.shortest_edge()), a.sigma);
  const ConformityReport rep = check_conformity(mesh);
  std::cerr << "elements " << mesh.num_elements() << ", vertices " << mesh.num_vertices() << ", edges "
            << mesh.num_edges() << '\n';
  if (mesh.strip_width) std::cerr << "strip width " << *mesh.strip_width << '\n';
  std::cerr << "conformity: " << rep.summary() << '\n';
  std::ostringstream os;
  write_mesh(os, mesh);
  emit(a.out, os.str());
  return rep.pass ? 0 : 1;
}

int run_solve(const SolveArgs& a) {
  Steering st;
  st.slope = a.slope;
  st.lambda = a.lambda;
  st.k = a.k;
  st.sinc_variant = parse_sinc_variant(a.variant);
  st.sigma_x = a.sigma_x;
  st.c1 = a.c1;
  st.solve_mode = a.solve_mode == "cg" ? SolveMode::cg : SolveMode::direct;
  st.policy = a.serial ? ExecPolicy::serial : ExecPolicy::parallel;
  const PolygonDomain domain = make_builtin_domain(parse_builtin(a.domain));
  const MeshCase mc = parse_case(a.mesh_case);
  const Function2D one = [](Point) { return 1.0; };
  std::string text;
  std::vector<std::string> warnings;
  if (parse_method(a.method) == Method::extension) {
    const ExtensionSolution sol = solve_extension(domain, one, a.s, a.p, mc, extension_params(st));
    text = extension_summary_json(sol, a.domain);
    warnings = sol.warnings;
  } else {
    const SincSolution sol = solve_sinc(domain, one, a.s, a.p, mc, sinc_params(st));
    text = sinc_summary_json(sol, a.domain);
    warnings = sol.warnings;
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  emit(a.out, text + "\n");
  return 0;
}

int run_converge(const ConvergeArgs& a) {
  const StudyConfig cfg = load_study_config(a.config);
  StudyProgress progress;
  if (!a.quiet)
    progress = [](const ConvergenceRecord& r) {
      std::cerr << r.domain << ' ' << method_name(r.method) << ' ' << case_name(r.mesh_case) << " s=" << r.s
                << " p=" << r.p << (r.failed ? " failed" : " e=") << std::setprecision(4);
      if (!r.failed) std::cerr << r.error;
      std::cerr << '\n';
    };
  const auto rows = run_study(cfg, progress);
  std::ostringstream csv;
  write_csv(csv, rows);
  emit(a.out, csv.str());
  const std::string notes_path = !a.notes.empty() ? a.notes : (a.out.empty() ? "" : a.out + ".notes");
  std::ostringstream notes;
  write_notes(notes, rows);
  if (!notes_path.empty()) {
    auto os = open_out(notes_path);
    os << notes.str();
  } else {
    std::cerr << notes.str();
  }
  return 0;
}

int run_oracle(const OracleArgs& a) {
  OracleOptions opt;
  opt.tail_correction = !a.no_tail;
  const SquareSeriesOracle o = series_oracle_square(a.s, a.trunc, opt);
  std::cout << std::setprecision(17) << "s " << o.s << "\ntrunc " << o.N_tr << "\nd_s " << o.d_s
            << "\nJ_truncated " << o.J_truncated << "\nJ_tail " << o.J_tail << "\nJ_ref " << o.J_ref << '\n';
  return 0;
}

int run_mms(const MmsArgs& a) {
  const PolygonDomain square = make_builtin_domain(BuiltinDomain::square);
  std::shared_ptr<const Mesh2D> mesh;
  std::vector<int> qs;
  for (int q = a.q_min; q <= a.q_max; ++q) qs.push_back(q);
  if (a.mesh == "trivial") {
    mesh = std::make_shared<const Mesh2D>(build_geometric_bl_mesh(square, 0, 0, 0.25));
    const MmsReport rep = mms_check(a.eps, qs, mesh, a.kind == "sine" ? MmsSolution::sine : MmsSolution::boundary_layer);
    std::cout << "q,N_dof,l2_error,h1_error\n" << std::setprecision(6);
    for (const auto& r : rep.rows) std::cout << r.q << ',' << r.n_dof << ',' << r.l2_error << ',' << r.h1_error << '\n';
    return 0;
  }
  std::cout << "q,N_dof,l2_error,h1_error\n" << std::setprecision(6);
  for (int q : qs) {
    mesh = std::make_shared<const Mesh2D>(build_minimal_mesh(square, a.L, q, a.lambda, a.eps, 0.25, 0.25));
    const MmsReport rep =
        mms_check(a.eps, {q}, mesh, a.kind == "sine" ? MmsSolution::sine : MmsSolution::boundary_layer);
    const auto& r = rep.rows.front();
    std::cout << r.q << ',' << r.n_dof << ',' << r.l2_error << ',' << r.h1_error << '\n';
  }
  return 0;
}

}  // namespace hpfrac::cli
