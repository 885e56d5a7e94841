#include "dualthresh/cluster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "dualthresh/errors.h"

namespace dualthresh {

ClusterSpec::ClusterSpec(std::string name, int layers, std::vector<Vertex> vertices,
                         std::vector<Slot> slots)
    : name_(std::move(name)), layers_(layers), vertices_(std::move(vertices)), slots_(std::move(slots)) {
  if (name_.empty()) {
    throw InvalidCluster("cluster name must not be empty");
  }
  if (layers_ != 1 && layers_ != 2) {
    throw InvalidCluster("cluster '" + name_ + "': layers must be 1 or 2");
  }
  if (slots_.empty()) {
    throw InvalidCluster("cluster '" + name_ + "': needs at least one slot");
  }

  std::unordered_map<int, std::size_t> index_of;
  std::unordered_map<int, int> var_of;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex& v = vertices_[i];
    if (!index_of.emplace(v.id, i).second) {
      throw InvalidCluster("cluster '" + name_ + "': duplicate vertex id " + std::to_string(v.id));
    }
    if (layers_ == 1 && v.layer == Sublattice::kDual) {
      throw InvalidCluster("cluster '" + name_ + "': single-layer cluster has a dual vertex");
    }
    if (v.role == VertexRole::kInternal) {
      var_of.emplace(v.id, internal_count_++);
      internal_ids_.push_back(v.id);
    }
  }
  if (internal_count_ > kMaxInternalSpins) {
    throw InvalidCluster("cluster '" + name_ + "': more than 24 internal spins");
  }

  auto resolve = [&](const std::array<int, 2>& edge, Sublattice layer, const char* what) {
    std::array<int, 2> out{-1, -1};
    if (edge[0] == edge[1]) {
      throw InvalidCluster("cluster '" + name_ + "': " + what + " edge is a self loop");
    }
    for (int e = 0; e < 2; ++e) {
      auto it = index_of.find(edge[e]);
      if (it == index_of.end()) {
        throw InvalidCluster("cluster '" + name_ + "': " + what + " edge references unknown vertex " +
                             std::to_string(edge[e]));
      }
      if (vertices_[it->second].layer != layer) {
        throw InvalidCluster("cluster '" + name_ + "': " + what + " edge endpoint " +
                             std::to_string(edge[e]) + " is on the wrong sublattice");
      }
      auto var = var_of.find(edge[e]);
      out[e] = var == var_of.end() ? -1 : var->second;
    }
    return out;
  };

  resolved_.reserve(slots_.size());
  for (const Slot& slot : slots_) {
    Resolved r;
    r.primal = resolve(slot.primal_edge, Sublattice::kPrimal, "primal");
    if (layers_ == 2) {
      if (!slot.dual_edge) {
        throw InvalidCluster("cluster '" + name_ + "': two-layer slot lacks a dual edge");
      }
      r.dual = resolve(*slot.dual_edge, Sublattice::kDual, "dual");
    } else if (slot.dual_edge) {
      throw InvalidCluster("cluster '" + name_ + "': single-layer slot has a dual edge");
    }
    resolved_.push_back(r);
  }
}

std::vector<std::size_t> ClusterSpec::primal_slots_at(int internal_index) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < resolved_.size(); ++s) {
    if (resolved_[s].primal[0] == internal_index || resolved_[s].primal[1] == internal_index) {
      out.push_back(s);
    }
  }
  return out;
}

ClusterSpec ClusterSpec::permuted(std::span<const std::size_t> order) const {
  if (order.size() != slots_.size()) {
    throw ShapeMismatch("slot permutation has the wrong length");
  }
  std::vector<Slot> reordered;
  reordered.reserve(order.size());
  for (std::size_t i : order) {
    reordered.push_back(slots_.at(i));
  }
  return ClusterSpec(name_, layers_, vertices_, std::move(reordered));
}

std::array<double, 4> primal_slot_log_weights(const EdgeDisorder& disorder, int layers, Coupling k) {
  std::array<double, 4> out{};
  const int tau = disorder.primal;
  if (layers == 1) {
    out[0] = k.value * tau;
    out[1] = -k.value * tau;
    return out;
  }
  const int tau_dual = disorder.dual;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const int eta = a ? -1 : 1;
      const int eta_dual = b ? -1 : 1;
      const int exponent = tau * eta + tau_dual * eta_dual + tau * tau_dual * eta * eta_dual;
      out[2 * a + b] = k.value * exponent;
    }
  }
  return out;
}

namespace {

void check_shape(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder) {
  if (disorder.size() != cluster.slot_count()) {
    throw ShapeMismatch("cluster '" + cluster.name() + "' has " + std::to_string(cluster.slot_count()) +
                        " slots but the assignment has " + std::to_string(disorder.size()));
  }
}

}  // namespace

ClusterFactor cluster_partition(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder,
                                Coupling k) {
  check_shape(cluster, disorder);
  const std::size_t slots = cluster.slot_count();
  std::vector<std::array<double, 4>> weights(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    weights[s] = primal_slot_log_weights(disorder[s], cluster.layers(), k);
  }

  const std::uint64_t configs = cluster.config_count();
  auto exponent = [&](std::uint32_t c) {
    double e = 0.0;
    for (std::size_t s = 0; s < slots; ++s) {
      e += weights[s][cluster.slot_parity(c, s)];
    }
    return e;
  };

  double peak = -std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < configs; ++c) {
    peak = std::max(peak, exponent(static_cast<std::uint32_t>(c)));
  }
  double sum = 0.0;
  for (std::uint64_t c = 0; c < configs; ++c) {
    sum += std::exp(exponent(static_cast<std::uint32_t>(c)) - peak);
  }
  const double log_value = peak + std::log(sum);
  if (!std::isfinite(log_value)) {
    throw NonFinite("cluster '" + cluster.name() + "': primal factor is not finite");
  }
  return ClusterFactor{log_value, 1};
}

bool gauge_orbit_check(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder, Coupling k) {
  check_shape(cluster, disorder);
  if (cluster.layers() != 1 || cluster.internal_count() == 0) {
    return true;
  }
  const double base = cluster_partition(cluster, disorder, k).log_value;
  for (int v = 0; v < cluster.internal_count(); ++v) {
    DisorderAssignment flipped(disorder.begin(), disorder.end());
    for (std::size_t s : cluster.primal_slots_at(v)) {
      flipped[s].primal = static_cast<std::int8_t>(-flipped[s].primal);
    }
    if (std::abs(cluster_partition(cluster, flipped, k).log_value - base) > 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace dualthresh
