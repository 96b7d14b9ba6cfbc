#include "statdist/selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "statdist/equidiag.hpp"
#include "statdist/io.hpp"
#include "statdist/locc.hpp"
#include "statdist/measure.hpp"
#include "statdist/mixed.hpp"
#include "statdist/pure_state.hpp"
#include "statdist/report.hpp"
#include "statdist/rng.hpp"
#include "statdist/search.hpp"

namespace statdist {

namespace {

// One named check; `detail` is printed only on failure.
struct Check {
  std::string name;
  std::function<bool(std::string& detail)> run;
};

std::string fmt(double x) { return format_double(x); }

Eigen::MatrixXcd random_matrix(Eigen::Index n, CounterRng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = rng.next_complex_normal();
    }
  }
  return m;
}

}  // namespace

int run_selftest(std::ostream& out, std::uint64_t seed) {
  std::vector<Check> checks;

  checks.push_back({"random-state-normalization", [&](std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const PureState s = random_pure_state(PartyLayout({3, 4}), seed + k);
      worst = std::max(worst, std::abs(s.amps().norm() - 1.0));
    }
    detail = "max norm defect " + fmt(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"rng-reproducibility", [&](std::string& detail) {
    CounterRng a(seed);
    CounterRng b(seed);
    for (int k = 0; k < 100; ++k) {
      if (a.next_u64() != b.next_u64()) {
        detail = "streams diverged at draw " + std::to_string(k);
        return false;
      }
    }
    return true;
  }});

  checks.push_back({"partial-trace-trace-identity", [&](std::string& detail) {
    const PartyLayout layout({2, 3, 2});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 10; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 100 + k);
      const PureState s2 = random_pure_state(layout, seed + 200 + k);
      const Dyad d = dyad_from_pair(s1, s2);
      for (const auto& keep :
           {std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
        const Complex traced = partial_trace_dyad(d, keep).trace();
        worst = std::max(worst, std::abs(traced - inner_product(s1, s2)));
      }
    }
    detail = "max trace deviation " + fmt(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"equidiag-residual", [&](std::string& detail) {
    CounterRng rng(seed + 300);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(k);
      const Eigen::MatrixXcd m = random_matrix(n, rng);
      const EquiDiagResult r = equi_diagonalize(m);
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      worst = std::max(worst, r.residual / scale);
    }
    detail = "max relative residual " + fmt(worst);
    return worst <= 1e-10;
  }});

  checks.push_back({"equidiag-unitarity", [&](std::string& detail) {
    CounterRng rng(seed + 400);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Eigen::MatrixXcd m = random_matrix(5, rng);
      const EquiDiagResult r = equi_diagonalize(m);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(5, 5);
      worst = std::max(
          worst, (r.basis.adjoint() * r.basis - id).cwiseAbs().maxCoeff());
    }
    detail = "max unitarity defect " + fmt(worst);
    return worst <= 1e-12;
  }});

  checks.push_back({"measurement-bound", [&](std::string& detail) {
    const double violation = sample_bound_check(3, 200, seed + 500);
    detail = "max violation " + fmt(violation);
    return violation <= 1e-12;
  }});

  checks.push_back({"equidiag-measurement-tightness", [&](std::string& detail) {
    const PartyLayout layout({5});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 10; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 600 + k);
      const PureState s2 = random_pure_state(layout, seed + 700 + k);
      const EquiDiagResult eq = equi_diagonalize(dyad_matrix(s1, s2));
      const double d = measurement_distance(s1, s2, Povm::from_basis(eq.basis));
      worst = std::max(
          worst, std::abs(std::cos(d) - std::abs(inner_product(s1, s2))));
    }
    detail = "max tightness defect " + fmt(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"protocol-leaf-sum", [&](std::string& detail) {
    const PartyLayout layout({2, 3});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 800 + k);
      const PureState s2 = random_pure_state(layout, seed + 900 + k);
      const Transcript t = run_locc(s1, s2);
      double sum = 0.0;
      for (const LeafRecord& leaf : t.leaves) sum += std::abs(leaf.amplitude);
      worst = std::max(worst, std::abs(sum - std::abs(t.overlap)));
    }
    detail = "max leaf-sum deviation " + fmt(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"protocol-cascade", [&](std::string& detail) {
    const PartyLayout layout({2, 2, 2});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 1000 + k);
      const PureState s2 = random_pure_state(layout, seed + 1100 + k);
      const CascadeReport c = check_stage_cascade(run_locc(s1, s2));
      worst = std::max({worst, c.sibling_max, c.parent_max, c.telescope_max});
    }
    detail = "max cascade violation " + fmt(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"locc-equals-global", [&](std::string& detail) {
    const PartyLayout layout({3, 3});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 1200 + k);
      const PureState s2 = random_pure_state(layout, seed + 1300 + k);
      worst = std::max(worst, std::abs(locc_distance(run_locc(s1, s2)) -
                                       global_distance(s1, s2)));
    }
    detail = "max distance gap " + fmt(worst);
    return worst <= 1e-9;
  }});

  checks.push_back({"bures-pure-consistency", [&](std::string& detail) {
    const PartyLayout layout({4});
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      const PureState s1 = random_pure_state(layout, seed + 1400 + k);
      const PureState s2 = random_pure_state(layout, seed + 1500 + k);
      const double angle =
          bures_angle(MixedState::from_pure(s1), MixedState::from_pure(s2));
      worst = std::max(worst, std::abs(angle - global_distance(s1, s2)));
    }
    detail = "max angle gap " + fmt(worst);
    return worst <= 1e-10;
  }});

  checks.push_back({"state-io-round-trip", [&](std::string& detail) {
    const std::vector<PureState> out = {
        random_pure_state(PartyLayout({2, 2}), seed + 1600),
        random_pure_state(PartyLayout({2, 2}), seed + 1700)};
    std::stringstream buffer;
    write_states(buffer, out);
    const std::vector<PureState> in = parse_states(buffer);
    if (in.size() != 2 || in[0].amps() != out[0].amps() ||
        in[1].amps() != out[1].amps()) {
      detail = "reparsed amplitudes differ";
      return false;
    }
    return true;
  }});

  checks.push_back({"report-determinism", [&](std::string& detail) {
    Report r;
    r.add_config("seed", std::to_string(seed));
    r.add_angle("d_global", 0.7853981633974483);
    std::ostringstream a, b;
    emit_report(r, a);
    emit_report(r, b);
    if (a.str() != b.str()) {
      detail = "repeated emissions differ";
      return false;
    }
    return true;
  }});

  int failures = 0;
  for (const Check& check : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (ok) {
      out << "PASS " << check.name << "\n";
    } else {
      ++failures;
      out << "FAIL " << check.name;
      if (!detail.empty()) out << " " << detail;
      out << "\n";
    }
  }
  return failures;
}

}  // namespace statdist
