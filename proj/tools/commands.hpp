#pragma once

#include <optional>
#include <string>

namespace hpfrac::cli {

struct MeshArgs {
  std::string domain = "square";
  std::string domain_file;
  std::string type = "geo";
  int L = 1;
  std::optional<int> n;
  double sigma = 0.25;
  double eps = 1.0;
  double lambda = 1.0;
  int q = 1;
  std::optional<double> kappa0;
  std::string out;
};

struct SolveArgs {
  std::string method = "extension";
  std::string mesh_case = "B";
  std::string domain = "square";
  double s = 0.5;
  int p = 1;
  std::optional<double> slope;
  double lambda = 1.0;
  std::optional<double> k;
  std::string variant = "practical";
  double sigma_x = 0.25;
  double c1 = 1.0;
  std::string solve_mode = "direct";
  bool serial = false;
  std::string out;
};

struct ConvergeArgs {
  std::string config;
  std::string out;
  std::string notes;
  bool quiet = false;
};

struct OracleArgs {
  double s = 0.5;
  int trunc = 2001;
  bool no_tail = false;
};

struct MmsArgs {
  double eps = 1.0;
  int q_min = 1;
  int q_max = 6;
  std::string kind = "sine";
  std::string mesh = "trivial";
  int L = 4;
  double lambda = 1.0;
};

int run_mesh(const MeshArgs& a);
int run_solve(const SolveArgs& a);
int run_converge(const ConvergeArgs& a);
int run_oracle(const OracleArgs& a);
int run_mms(const MmsArgs& a);

}  // namespace hpfrac::cli
