#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "hpfrac/errors.hpp"

int main(int argc, char** argv) {
  using namespace hpfrac::cli;
  CLI::App app{"hp-FEM solvers for the spectral fractional Laplacian on polygons"};
  app.require_subcommand(1);

  MeshArgs mesh;
  auto* mc = app.add_subcommand("mesh", "build a geometric or minimal mesh and write it as text");
  mc->add_option("--domain", mesh.domain, "square, lshape or slit")->check(CLI::IsMember({"square", "lshape", "slit"}));
  mc->add_option("--domain-file", mesh.domain_file, "polygon with macro layout (overrides --domain)");
  mc->add_option("--type", mesh.type, "geo or min")->check(CLI::IsMember({"geo", "min"}));
  mc->add_option("--L", mesh.L, "refinement layers")->check(CLI::NonNegativeNumber);
  mc->add_option("--n", mesh.n, "corner layers (geo, defaults to L)");
  mc->add_option("--sigma", mesh.sigma, "grading factor");
  mc->add_option("--eps", mesh.eps, "length scale (min)");
  mc->add_option("--lambda", mesh.lambda, "strip factor (min)");
  mc->add_option("--q", mesh.q, "polynomial degree entering the strip width (min)");
  mc->add_option("--kappa0", mesh.kappa0, "strip width cap (min)");
  mc->add_option("--out", mesh.out, "output path (stdout when omitted)");

  SolveArgs solve;
  auto* sc = app.add_subcommand("solve", "solve L^s u = 1 and report the functional");
  sc->add_option("--method", solve.method, "extension or sinc")->check(CLI::IsMember({"extension", "sinc"}));
  sc->add_option("--case", solve.mesh_case, "mesh case")->check(CLI::IsMember({"A", "B"}));
  sc->add_option("--domain", solve.domain, "builtin domain")->check(CLI::IsMember({"square", "lshape", "slit"}));
  sc->add_option("--s", solve.s, "fractional order in (0,1)")->required();
  sc->add_option("--p", solve.p, "discretization parameter")->required()->check(CLI::PositiveNumber);
  sc->add_option("--slope", solve.slope, "linear degree vector slope in y");
  sc->add_option("--lambda", solve.lambda, "strip factor of minimal meshes");
  sc->add_option("--k", solve.k, "sinc step (defaults to 4/(3p))");
  sc->add_option("--variant", solve.variant, "sinc rule")->check(CLI::IsMember({"practical", "symmetric"}));
  sc->add_option("--sigma", solve.sigma_x, "grading factor in the domain");
  sc->add_option("--c1", solve.c1, "constant of the scale resolution check");
  sc->add_option("--solver", solve.solve_mode, "direct or cg")->check(CLI::IsMember({"direct", "cg"}));
  sc->add_flag("--serial", solve.serial, "run the shifted solves serially");
  sc->add_option("--out", solve.out, "JSON summary path (stdout when omitted)");

  ConvergeArgs conv;
  auto* cc = app.add_subcommand("converge", "run a convergence study and write CSV");
  cc->add_option("--config", conv.config, "JSON study configuration")->required();
  cc->add_option("--out", conv.out, "CSV path (stdout when omitted)");
  cc->add_option("--notes", conv.notes, "warnings file (defaults to <out>.notes)");
  cc->add_flag("--quiet", conv.quiet, "no progress lines on stderr");

  OracleArgs orc;
  auto* oc = app.add_subcommand("oracle", "series reference for f = 1 on the unit square");
  oc->add_option("--s", orc.s, "fractional order in (0,1)")->required();
  oc->add_option("--trunc", orc.trunc, "largest odd index");
  oc->add_flag("--no-tail", orc.no_tail, "omit the tail estimate");

  MmsArgs mms;
  auto* mm = app.add_subcommand("mms", "manufactured solution check of the reaction-diffusion solver");
  mm->add_option("--eps", mms.eps, "diffusion length scale");
  mm->add_option("--qmin", mms.q_min, "lowest polynomial degree");
  mm->add_option("--qmax", mms.q_max, "highest polynomial degree");
  mm->add_option("--kind", mms.kind, "exact solution")->check(CLI::IsMember({"sine", "layer"}));
  mm->add_option("--mesh", mms.mesh, "3x3 macro mesh or minimal mesh")->check(CLI::IsMember({"trivial", "min"}));
  mm->add_option("--L", mms.L, "corner layers of the minimal mesh");
  mm->add_option("--lambda", mms.lambda, "strip factor of the minimal mesh");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mc->parsed()) return run_mesh(mesh);
    if (sc->parsed()) return run_solve(solve);
    if (cc->parsed()) return run_converge(conv);
    if (oc->parsed()) return run_oracle(orc);
    if (mm->parsed()) return run_mms(mms);
  } catch (const hpfrac::ParameterError& e) {
    std::cerr << "hpfrac: " << e.what() << '\n';
    return 2;
  } catch (const hpfrac::ConfigError& e) {
    std::cerr << "hpfrac: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hpfrac: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
