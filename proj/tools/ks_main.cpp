// ks — command-line front end: classify | feasible | simulate | sweep
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ks/cli.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void add_param_flags(CLI::App* cmd, ks::ModelParams& p) {
  cmd->add_option("-n,--dim", p.n, "spatial dimension")->required();
  cmd->add_option("--alpha", p.alpha, "diffusion exponent")->required();
  cmd->add_option("--beta", p.beta, "sensitivity exponent")->required();
  cmd->add_option("--gamma", p.gamma, "damping exponent (>= 1)")->required();
  cmd->add_option("--a", p.a, "source offset");
  cmd->add_option("--mu", p.mu, "damping coefficient");
  cmd->add_option("--m1", p.m1, "diffusion envelope constant");
  cmd->add_option("--m2", p.m2, "sensitivity envelope constant");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a quasilinear chemotaxis system with logistic source"};
  app.require_subcommand(1);

  ks::ModelParams params;
  std::string case_name = "auto";
  bool with_oracle = false;
  std::string config_path, out_dir = ".";

  auto* classify = app.add_subcommand("classify", "coverage test for a parameter tuple");
  add_param_flags(classify, params);

  auto* feasible = app.add_subcommand("feasible", "(p, q) feasibility witness and checks");
  add_param_flags(feasible, params);
  feasible->add_option("--case", case_name, "quadratic | subquadratic | auto (by gamma)")
      ->check(CLI::IsMember({"quadratic", "subquadratic", "auto"}));
  feasible->add_flag("--oracle", with_oracle, "also run the brute-force lattice oracle");

  auto* simulate = app.add_subcommand("simulate", "integrate one configuration");
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "phase diagram over a parameter lattice");
  sweep->add_option("--config", config_path, "config file (with a [sweep] section)");
  sweep->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed()) return ks::cmd_classify(params, std::cout);
    if (feasible->parsed()) {
      const auto kind = case_name == "auto"
                            ? (params.gamma >= 2.0 ? ks::FeasibilityCase::Quadratic
                                                   : ks::FeasibilityCase::SubQuadratic)
                            : (case_name == "quadratic" ? ks::FeasibilityCase::Quadratic
                                                        : ks::FeasibilityCase::SubQuadratic);
      return ks::cmd_feasible(params, kind, with_oracle, std::cout);
    }
    if (simulate->parsed())
      return ks::cmd_simulate(ks::parse_sim_config(slurp(config_path)), out_dir, std::cout);
    if (sweep->parsed()) {
      auto parsed = ks::parse_config(slurp(config_path));
      auto* sw = std::get_if<ks::SweepConfig>(&parsed);
      if (!sw) throw ks::ConfigError("sweep requires a [sweep] section in the config");
      return ks::cmd_sweep(*sw, out_dir, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
