#include "dualthresh/duality.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dualthresh/errors.h"

namespace dualthresh {

std::array<double, 2> dual_edge_factor_single(const std::array<double, 2>& x) {
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  return {(x[0] + x[1]) * kInvSqrt2, (x[0] - x[1]) * kInvSqrt2};
}

std::array<double, 4> dual_edge_factor_twolayer(const std::array<double, 4>& x) {
  const double s00 = x[0] + x[1];
  const double d00 = x[0] - x[1];
  const double s10 = x[2] + x[3];
  const double d10 = x[2] - x[3];
  return {0.5 * (s00 + s10), 0.5 * (d00 + d10), 0.5 * (s00 - s10), 0.5 * (d00 - d10)};
}

std::array<double, 4> dual_slot_weights(const EdgeDisorder& disorder, int layers, Coupling k) {
  const std::array<double, 4> log_w = primal_slot_log_weights(disorder, layers, k);
  if (layers == 1) {
    const auto d = dual_edge_factor_single({std::exp(log_w[0]), std::exp(log_w[1])});
    return {d[0], d[1], 0.0, 0.0};
  }
  return dual_edge_factor_twolayer(
      {std::exp(log_w[0]), std::exp(log_w[1]), std::exp(log_w[2]), std::exp(log_w[3])});
}

ClusterFactor dual_cluster_partition(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder,
                                     Coupling k) {
  if (disorder.size() != cluster.slot_count()) {
    throw ShapeMismatch("cluster '" + cluster.name() + "' has " + std::to_string(cluster.slot_count()) +
                        " slots but the assignment has " + std::to_string(disorder.size()));
  }
  const std::size_t slots = cluster.slot_count();
  std::vector<std::array<double, 4>> log_mag(slots);
  std::vector<std::array<int, 4>> sign(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    const auto w = dual_slot_weights(disorder[s], cluster.layers(), k);
    for (int i = 0; i < 4; ++i) {
      sign[s][i] = w[i] > 0 ? 1 : (w[i] < 0 ? -1 : 0);
      log_mag[s][i] = sign[s][i] == 0 ? 0.0 : std::log(std::abs(w[i]));
    }
  }

  // A term is (sign, log magnitude); sign 0 marks a vanishing product.
  auto term = [&](std::uint32_t c) {
    int sgn = 1;
    double lm = 0.0;
    for (std::size_t s = 0; s < slots && sgn != 0; ++s) {
      const int par = cluster.slot_parity(c, s);
      sgn *= sign[s][par];
      lm += log_mag[s][par];
    }
    return std::pair<int, double>{sgn, lm};
  };

  const std::uint64_t configs = cluster.config_count();
  double peak = -std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < configs; ++c) {
    const auto [sgn, lm] = term(static_cast<std::uint32_t>(c));
    if (sgn != 0) {
      peak = std::max(peak, lm);
    }
  }
  double sum = 0.0;
  if (std::isfinite(peak)) {
    for (std::uint64_t c = 0; c < configs; ++c) {
      const auto [sgn, lm] = term(static_cast<std::uint32_t>(c));
      if (sgn != 0) {
        sum += sgn * std::exp(lm - peak);
      }
    }
  }
  if (!(sum > 0.0)) {
    throw NonPositiveDual("cluster '" + cluster.name() + "': dual factor is not positive at K=" +
                          std::to_string(k.value));
  }
  const double log_value = peak + std::log(sum);
  if (!std::isfinite(log_value)) {
    throw NonFinite("cluster '" + cluster.name() + "': dual factor is not finite");
  }
  return ClusterFactor{log_value, 1};
}

Coupling pure_self_dual_point() {
  // exp(-2K) - tanh K is strictly decreasing and changes sign on [0.1, 1].
  double lo = 0.1;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (std::exp(-2.0 * mid) - std::tanh(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Coupling{0.5 * (lo + hi)};
}

}  // namespace dualthresh
