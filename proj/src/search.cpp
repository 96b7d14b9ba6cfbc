#include "statdist/search.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "statdist/errors.hpp"
#include "statdist/measure.hpp"
#include "statdist/rng.hpp"

namespace statdist {

namespace {

// Step sizes below this produce objective changes lost to roundoff.
constexpr double kStepFloor = 1e-9;

void validate_config(const SearchConfig& cfg) {
  if (cfg.restarts < 1) {
    throw UsageError("restart count must be at least 1");
  }
  if (cfg.steps < 1) {
    throw UsageError("step budget must be at least 1");
  }
  if (!(cfg.initial_step > 0.0) || cfg.initial_step > 1.0) {
    throw UsageError("initial step size must lie in (0, 1]");
  }
  if (cfg.dim_cap < 1) {
    throw UsageError("dimension cap must be at least 1");
  }
}

Eigen::MatrixXcd random_skew(Eigen::Index n, CounterRng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      g(r, c) = rng.next_complex_normal();
    }
  }
  return (g - g.adjoint()) / 2.0;
}

// One restart of the climb; returns the best basis and objective value it
// reached. The objective must be bounded and deterministic.
std::pair<double, Eigen::MatrixXcd> climb_once(
    Eigen::Index n, const std::function<double(const Eigen::MatrixXcd&)>& f,
    const SearchConfig& cfg, int restart) {
  CounterRng rng(cfg.seed + static_cast<std::uint64_t>(restart));
  Eigen::MatrixXcd basis = random_unitary(static_cast<int>(n), rng);
  double value = f(basis);

  double step = cfg.initial_step;
  Eigen::MatrixXcd direction;
  bool have_direction = false;
  bool tried_inverse = false;

  for (int budget = cfg.steps; budget > 0; --budget) {
    if (!have_direction) {
      direction = random_skew(n, rng);
      have_direction = true;
      tried_inverse = false;
    }
    const Eigen::MatrixXcd candidate = basis * expm_taylor(direction * step);
    const double candidate_value = f(candidate);
    if (candidate_value > value) {
      basis = candidate;
      value = candidate_value;
      step = std::min(step * 2.0, cfg.initial_step);
      tried_inverse = false;  // ride the direction while it pays
    } else if (!tried_inverse) {
      direction = -direction;
      tried_inverse = true;
    } else {
      step = std::max(step / 2.0, kStepFloor);
      have_direction = false;
    }
  }
  return {value, basis};
}

SearchResult best_of_restarts(
    Eigen::Index n, const std::function<double(const Eigen::MatrixXcd&)>& f,
    const SearchConfig& cfg) {
  SearchResult best{-1.0, Eigen::MatrixXcd()};
  // Strict improvement with ascending restart index realizes the max with
  // the lowest-index tie-break; the reduction commutes, so restarts could
  // run in any order (or concurrently) without changing the result.
  for (int r = 0; r < cfg.restarts; ++r) {
    auto [value, basis] = climb_once(n, f, cfg, r);
    if (value > best.distance) {
      best.distance = value;
      best.basis = std::move(basis);
    }
  }
  return best;
}

}  // namespace

Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& k) {
  if (k.rows() != k.cols()) {
    throw DimensionError("matrix exponential needs a square matrix");
  }
  const Eigen::Index n = k.rows();
  // Scale until the infinity norm is at most 1/2, run the series, square
  // back. At norm 1/2 the truncation error is ||A||^13/13! < 2e-14.
  const double norm = k.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale /= 2.0;
    ++squarings;
  }
  const Eigen::MatrixXcd a = k * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int order = 1; order <= 12; ++order) {
    term = (term * a) / static_cast<double>(order);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) {
    sum = (sum * sum).eval();
  }
  return sum;
}

SearchResult optimize_global_measurement(const PureState& s1,
                                         const PureState& s2,
                                         const SearchConfig& cfg) {
  validate_config(cfg);
  if (s1.layout() != s2.layout()) {
    throw DimensionError("states live on different layouts");
  }
  if (s1.dim() > cfg.dim_cap) {
    throw UsageError("search dimension " + std::to_string(s1.dim()) +
                     " exceeds the cap " + std::to_string(cfg.dim_cap));
  }
  const auto objective = [&](const Eigen::MatrixXcd& basis) {
    return measurement_distance(s1, s2, Povm::from_basis(basis));
  };
  return best_of_restarts(s1.dim(), objective, cfg);
}

SearchResult optimize_mixed_measurement(const MixedState& r1,
                                        const MixedState& r2,
                                        const SearchConfig& cfg) {
  validate_config(cfg);
  if (r1.dim() != r2.dim()) {
    throw DimensionError("density matrices have different dimensions");
  }
  if (r1.dim() > cfg.dim_cap) {
    throw UsageError("search dimension " + std::to_string(r1.dim()) +
                     " exceeds the cap " + std::to_string(cfg.dim_cap));
  }
  const auto objective = [&](const Eigen::MatrixXcd& basis) {
    return mixed_measurement_distance(r1, r2, Povm::from_basis(basis));
  };
  return best_of_restarts(r1.dim(), objective, cfg);
}

double sample_bound_check(int dim, int trials, std::uint64_t seed) {
  if (dim < 1) {
    throw DimensionError("sample dimension must be positive");
  }
  if (dim > 16) {
    throw UsageError("bound sampling is capped at dimension 16");
  }
  if (trials < 1) {
    throw UsageError("need at least one trial");
  }
  const PartyLayout layout({dim});
  CounterRng rng(seed);
  double worst = -1.0;
  for (int trial = 0; trial < trials; ++trial) {
    const PureState s1 = random_pure_state(layout, rng.next_u64());
    const PureState s2 = random_pure_state(layout, rng.next_u64());
    const int n_elements = (trial % 2 == 0) ? dim : 2 * dim;
    const Povm povm = random_povm(dim, n_elements, rng);
    const double d = measurement_distance(s1, s2, povm);
    const double violation =
        std::abs(inner_product(s1, s2)) - std::cos(d);
    worst = std::max(worst, violation);
  }
  return worst;
}

}  // namespace statdist
