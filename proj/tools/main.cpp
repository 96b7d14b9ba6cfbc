#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "statdist/defaults.hpp"
#include "statdist/equidiag.hpp"
#include "statdist/errors.hpp"
#include "statdist/io.hpp"
#include "statdist/locc.hpp"
#include "statdist/measure.hpp"
#include "statdist/mixed.hpp"
#include "statdist/pure_state.hpp"
#include "statdist/report.hpp"
#include "statdist/search.hpp"
#include "statdist/selftest.hpp"

using namespace statdist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantViolation = 1;
constexpr int kExitBadInput = 2;

// Runs `body` against stdout or the requested file.
void with_output(const std::string& out_path,
                 const std::function<void(std::ostream&)>& body) {
  if (out_path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream file(out_path);
  if (!file) {
    throw UsageError("cannot open " + out_path + " for writing");
  }
  body(file);
  if (!file) {
    throw UsageError("failed writing " + out_path);
  }
}

std::pair<PureState, PureState> load_pair(const std::string& path) {
  std::vector<PureState> states = parse_state_file(path);
  if (states.size() != 2) {
    throw UsageError("need a state pair: " + path + " holds one block");
  }
  return {std::move(states[0]), std::move(states[1])};
}

std::vector<int> parse_order(const std::string& text) {
  std::istringstream iss(text);
  std::vector<int> order;
  int index = 0;
  while (iss >> index) order.push_back(index);
  if (!iss.eof()) {
    throw UsageError("order must be a space-separated list of party indices");
  }
  return order;
}

std::string layout_string(const PartyLayout& layout) {
  std::string s;
  for (int p = 0; p < layout.parties(); ++p) {
    if (p > 0) s += " ";
    s += std::to_string(layout.dim(p));
  }
  return s;
}

// The centralized defaults table; every report carries it (with effective
// values where a flag overrode one).
void echo_defaults(Report& r, double tol_equidiag, double tol_protocol,
                   int restarts, int steps) {
  r.add_config("tol_equidiag", format_double(tol_equidiag));
  r.add_config("tol_protocol", format_double(tol_protocol));
  r.add_config("leaf_cap", std::to_string(kLeafCap));
  r.add_config("restarts", std::to_string(restarts));
  r.add_config("steps", std::to_string(steps));
}

struct Options {
  std::string states_path;
  std::string matrix_path;
  std::string rho1_path;
  std::string rho2_path;
  std::string order_text;
  std::string out_path;
  std::uint64_t seed = 0;
  int restarts = kDefaultRestarts;
  int steps = kDefaultSteps;
  int trials = 1000;
  int dim = 2;
  double tol = 0.0;  // 0 = not set; commands substitute their default
};

int run_pure(const Options& opt) {
  const auto [s1, s2] = load_pair(opt.states_path);
  const Complex overlap = inner_product(s1, s2);
  Report r;
  r.add_config("subcommand", "pure");
  r.add_config("states", opt.states_path);
  echo_defaults(r, kTolEquidiagRel, kTolProtocol, kDefaultRestarts,
                kDefaultSteps);
  r.add_config("layout", layout_string(s1.layout()));
  r.add_value("overlap_re", overlap.real());
  r.add_value("overlap_im", overlap.imag());
  r.add_value("overlap_abs", std::abs(overlap));
  r.add_angle("d_global", global_distance(s1, s2));
  with_output(opt.out_path, [&](std::ostream& os) { emit_report(r, os); });
  return kExitOk;
}

int run_locc_cmd(const Options& opt) {
  const double tol = opt.tol > 0.0 ? opt.tol : kTolProtocol;
  const auto [s1, s2] = load_pair(opt.states_path);
  if (s1.dim() > kLeafCap) {
    throw UsageError("layout dimension " + std::to_string(s1.dim()) +
                     " exceeds the leaf cap " + std::to_string(kLeafCap));
  }
  std::vector<int> order;
  if (opt.order_text.empty()) {
    order.resize(static_cast<std::size_t>(s1.layout().parties()));
    std::iota(order.begin(), order.end(), 0);
  } else {
    order = parse_order(opt.order_text);
  }

  const Transcript t = run_locc(s1, s2, order);
  const double d_locc = locc_distance(t);
  const double d_global = global_distance(s1, s2);
  const CascadeReport cascade = check_stage_cascade(t);
  const double completeness = leaf_completeness_defect(t);
  double leaf_sum = 0.0;
  for (const LeafRecord& leaf : t.leaves) leaf_sum += std::abs(leaf.amplitude);

  Report r;
  r.add_config("subcommand", "locc");
  r.add_config("states", opt.states_path);
  echo_defaults(r, kTolEquidiagRel, tol, kDefaultRestarts, kDefaultSteps);
  r.add_config("layout", layout_string(s1.layout()));
  {
    std::string order_echo;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k > 0) order_echo += " ";
      order_echo += std::to_string(order[k]);
    }
    r.add_config("order", order_echo);
  }
  r.add_value("overlap_re", t.overlap.real());
  r.add_value("overlap_im", t.overlap.imag());
  r.add_value("overlap_abs", std::abs(t.overlap));
  r.add_value("leaf_sum_abs", leaf_sum);
  r.add_angle("d_global", d_global);
  r.add_angle("d_locc", d_locc);
  r.add_value("cascade_sibling_max", cascade.sibling_max);
  r.add_value("cascade_parent_max", cascade.parent_max);
  r.add_value("cascade_telescope_max", cascade.telescope_max);
  r.add_value("leaf_completeness_defect", completeness);
  r.leaves = t.leaves;
  with_output(opt.out_path, [&](std::ostream& os) { emit_report(r, os); });

  std::vector<std::string> violations;
  if (std::abs(d_locc - d_global) > tol) {
    violations.push_back(
        "distance equality violated: |d_locc - d_global| = " +
        format_double(std::abs(d_locc - d_global)));
  }
  if (std::abs(leaf_sum - std::abs(t.overlap)) > tol) {
    violations.push_back(
        "leaf amplitude sum identity violated: |sum_i |B_i| - |<s1|s2>|| = " +
        format_double(std::abs(leaf_sum - std::abs(t.overlap))));
  }
  const double cascade_max =
      std::max({cascade.sibling_max, cascade.parent_max,
                cascade.telescope_max});
  if (cascade_max > tol) {
    violations.push_back("stage cascade identity violated: max deviation = " +
                         format_double(cascade_max));
  }
  if (completeness > tol) {
    violations.push_back(
        "leaf completeness violated: sum_i |phi_i><phi_i| misses identity "
        "by " +
        format_double(completeness));
  }
  for (const std::string& v : violations) std::cerr << v << "\n";
  return violations.empty() ? kExitOk : kExitInvariantViolation;
}

int run_equidiag(const Options& opt) {
  const Eigen::MatrixXcd m = parse_matrix_file(opt.matrix_path);
  const EquiDiagResult eq =
      opt.tol > 0.0 ? equi_diagonalize(m, opt.tol) : equi_diagonalize(m);
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  const double unitarity =
      (eq.basis.adjoint() * eq.basis - id).cwiseAbs().maxCoeff();

  Report r;
  r.add_config("subcommand", "equidiag");
  r.add_config("matrix", opt.matrix_path);
  echo_defaults(r, opt.tol > 0.0 ? opt.tol : kTolEquidiagRel, kTolProtocol,
                kDefaultRestarts, kDefaultSteps);
  r.add_value("tau_re", eq.tau.real());
  r.add_value("tau_im", eq.tau.imag());
  r.add_value("residual", eq.residual);
  r.add_value("unitarity_defect", unitarity);
  with_output(opt.out_path, [&](std::ostream& os) {
    emit_report(r, os);
    write_matrix(os, eq.basis);  // the basis, columns = measurement vectors
  });

  if (unitarity > 1e-12) {
    std::cerr << "basis unitarity violated: defect = "
              << format_double(unitarity) << "\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int run_oracle(const Options& opt) {
  Report r;
  r.add_config("subcommand", "oracle");
  std::string violation;

  if (!opt.states_path.empty()) {
    const auto [s1, s2] = load_pair(opt.states_path);
    SearchConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.steps = opt.steps;
    cfg.seed = opt.seed;
    const SearchResult best = optimize_global_measurement(s1, s2, cfg);
    const double d_global = global_distance(s1, s2);
    r.add_config("states", opt.states_path);
    echo_defaults(r, kTolEquidiagRel, kTolProtocol, cfg.restarts, cfg.steps);
    r.add_config("seed", std::to_string(opt.seed));
    r.add_config("generator", kGeneratorId);
    r.add_value("overlap_abs", std::abs(inner_product(s1, s2)));
    r.add_angle("d_global", d_global);
    r.add_angle("best_found", best.distance);
    r.add_value("optimizer_gap", d_global - best.distance);
    if (best.distance > d_global + 1e-12) {
      violation =
          "measurement distance exceeded the overlap bound (cos d_M >= "
          "|<s1|s2>|): excess = " +
          format_double(best.distance - d_global);
    }
  } else {
    const double worst = sample_bound_check(opt.dim, opt.trials, opt.seed);
    echo_defaults(r, kTolEquidiagRel, kTolProtocol, opt.restarts, opt.steps);
    r.add_config("dim", std::to_string(opt.dim));
    r.add_config("trials", std::to_string(opt.trials));
    r.add_config("seed", std::to_string(opt.seed));
    r.add_config("generator", kGeneratorId);
    r.add_value("max_violation", worst);
    if (worst > 1e-12) {
      violation =
          "measurement distance exceeded the overlap bound (cos d_M >= "
          "|<s1|s2>|): max violation = " +
          format_double(worst);
    }
  }

  with_output(opt.out_path, [&](std::ostream& os) { emit_report(r, os); });
  if (!violation.empty()) {
    std::cerr << violation << "\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int run_mixed(const Options& opt) {
  const double tol = opt.tol > 0.0 ? opt.tol : kTolProtocol;
  const MixedState r1 = parse_density_file(opt.rho1_path);
  const MixedState r2 = parse_density_file(opt.rho2_path);
  const double bures = bures_angle(r1, r2);

  Report r;
  r.add_config("subcommand", "mixed");
  r.add_config("rho1", opt.rho1_path);
  r.add_config("rho2", opt.rho2_path);
  echo_defaults(r, kTolEquidiagRel, tol, kDefaultRestarts, kDefaultSteps);
  r.add_angle("bures", bures);

  std::string violation;
  if (r1.dim() <= 16) {
    const TransitionGap gap = transition_equidiag_gap(r1, r2);
    r.add_angle("d_equidiag", gap.d_equidiag);
    r.add_value("transition_gap", gap.gap);
    if (gap.gap < -tol) {
      violation =
          "measured distance exceeded the Bures angle (global mixed-state "
          "optimum): excess = " +
          format_double(-gap.gap);
    }
  }
  with_output(opt.out_path, [&](std::ostream& os) { emit_report(r, os); });
  if (!violation.empty()) {
    std::cerr << violation << "\n";
    return kExitInvariantViolation;
  }
  return kExitOk;
}

int run_selftest_cmd(const Options& opt) {
  int failures = 0;
  with_output(opt.out_path, [&](std::ostream& os) {
    os << "# statdist " << kVersion << "\n";
    os << "# subcommand selftest\n";
    os << "# seed " << opt.seed << "\n";
    os << "# generator " << kGeneratorId << "\n";
    failures = run_selftest(os, opt.seed);
  });
  return failures == 0 ? kExitOk : kExitInvariantViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Statistical distance between pure multipartite quantum states under "
      "global and LOCC-restricted measurements"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* pure = app.add_subcommand(
      "pure", "Overlap and global statistical distance of a state pair");
  pure->add_option("--states", opt.states_path, "state-pair file")->required();
  pure->add_option("--out", opt.out_path, "write the report to this path");

  CLI::App* locc = app.add_subcommand(
      "locc", "Run the sequential local protocol and verify its identities");
  locc->add_option("--states", opt.states_path, "state-pair file")->required();
  locc->add_option("--order", opt.order_text,
                   "party measurement order, e.g. \"2 0 1\"");
  locc->add_option("--tol", opt.tol, "protocol identity tolerance");
  locc->add_option("--out", opt.out_path, "write the report to this path");

  CLI::App* equidiag = app.add_subcommand(
      "equidiag", "Equi-diagonalize a complex matrix and print the basis");
  equidiag->add_option("--matrix", opt.matrix_path, "matrix file")->required();
  equidiag->add_option("--tol", opt.tol, "absolute diagonal residual bound");
  equidiag->add_option("--out", opt.out_path, "write the report to this path");

  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "Brute-force checks: bound sampling, or (with --states) hill-climb "
      "search for the most discriminating measurement");
  oracle->add_option("--states", opt.states_path,
                     "state-pair file (enables optimizer mode)");
  oracle->add_option("--seed", opt.seed, "random seed");
  oracle->add_option("--restarts", opt.restarts, "independent climbs");
  oracle->add_option("--steps", opt.steps, "objective evaluations per climb");
  oracle->add_option("--trials", opt.trials, "bound-sampling trial count");
  oracle->add_option("--dim", opt.dim, "bound-sampling dimension");
  oracle->add_option("--out", opt.out_path, "write the report to this path");

  CLI::App* mixed = app.add_subcommand(
      "mixed",
      "Bures angle of two density matrices and the transition-operator "
      "equi-diagonalization gap");
  mixed->add_option("--rho1", opt.rho1_path, "density matrix file")
      ->required();
  mixed->add_option("--rho2", opt.rho2_path, "density matrix file")
      ->required();
  mixed->add_option("--tol", opt.tol, "optimality tolerance");
  mixed->add_option("--out", opt.out_path, "write the report to this path");

  CLI::App* selftest =
      app.add_subcommand("selftest", "Run the built-in invariant suite");
  selftest->add_option("--seed", opt.seed, "random seed");
  selftest->add_option("--out", opt.out_path, "write the table to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (pure->parsed()) return run_pure(opt);
    if (locc->parsed()) return run_locc_cmd(opt);
    if (equidiag->parsed()) return run_equidiag(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (mixed->parsed()) return run_mixed(opt);
    if (selftest->parsed()) return run_selftest_cmd(opt);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const UsageError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return kExitInvariantViolation;
  }
  return kExitBadInput;  // unreachable: a subcommand is required
}
