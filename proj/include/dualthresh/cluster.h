#ifndef DUALTHRESH_CLUSTER_H
#define DUALTHRESH_CLUSTER_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualthresh/model.h"

namespace dualthresh {

enum class VertexRole { kInternal, kBoundary };
enum class Sublattice { kPrimal, kDual };

struct Vertex {
  int id = 0;
  VertexRole role = VertexRole::kBoundary;
  Sublattice layer = Sublattice::kPrimal;
};

// One disorder slot.  Two-layer clusters bind a primal edge to the dual
// edge crossing it; single-layer clusters leave dual_edge empty.
struct Slot {
  std::array<int, 2> primal_edge{};
  std::optional<std::array<int, 2>> dual_edge;
};

// Finite cluster of spins.  Boundary spins are fixed to +1; internal spins
// are summed over.  Immutable once constructed.
class ClusterSpec {
 public:
  static constexpr int kMaxInternalSpins = 24;

  // Throws InvalidCluster on dangling references, layer mismatches,
  // duplicate ids, self loops, or more than kMaxInternalSpins internal spins.
  ClusterSpec(std::string name, int layers, std::vector<Vertex> vertices, std::vector<Slot> slots);

  const std::string& name() const { return name_; }
  int layers() const { return layers_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t slot_count() const { return slots_.size(); }
  int internal_count() const { return internal_count_; }
  std::uint64_t config_count() const { return std::uint64_t{1} << internal_count_; }

  // Vertex ids of the internal spins, in summation-variable order.
  const std::vector<int>& internal_ids() const { return internal_ids_; }

  // Parity index of a slot under an internal spin configuration, where bit
  // k of `config` set means internal spin k is -1.  Single layer: 0 for a
  // parallel pair, 1 for antiparallel.  Two layers: 2 * primal + dual.
  int slot_parity(std::uint32_t config, std::size_t slot) const {
    const Resolved& r = resolved_[slot];
    int primal = bit(config, r.primal[0]) ^ bit(config, r.primal[1]);
    if (layers_ == 1) {
      return primal;
    }
    return 2 * primal + (bit(config, r.dual[0]) ^ bit(config, r.dual[1]));
  }

  // Slot indices touching the given internal spin variable on the primal layer.
  std::vector<std::size_t> primal_slots_at(int internal_index) const;

  // Same cluster with slots reordered: result slot i is this slot order[i].
  ClusterSpec permuted(std::span<const std::size_t> order) const;

 private:
  struct Resolved {
    std::array<int, 2> primal{-1, -1};
    std::array<int, 2> dual{-1, -1};
  };

  static int bit(std::uint32_t config, int var) { return var < 0 ? 0 : (config >> var) & 1U; }

  std::string name_;
  int layers_;
  std::vector<Vertex> vertices_;
  std::vector<Slot> slots_;
  int internal_count_ = 0;
  std::vector<int> internal_ids_;
  std::vector<Resolved> resolved_;
};

using DisorderAssignment = std::vector<EdgeDisorder>;

// Natural log of a (possibly signed) cluster Boltzmann factor.
struct ClusterFactor {
  double log_value = 0.0;
  int sign = 1;
};

// Log of the local Boltzmann weight of one slot, indexed by parity.
// Single layer uses entries 0..1, two layers 0..3.  Diluted slots give 0.
std::array<double, 4> primal_slot_log_weights(const EdgeDisorder& disorder, int layers, Coupling k);

// Principal Boltzmann factor x_0 of the cluster: all boundary spins up,
// internal spins summed, evaluated with log-sum-exp.
// Throws ShapeMismatch for a wrong assignment length and NonFinite on overflow.
ClusterFactor cluster_partition(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder,
                                Coupling k);

// True when flipping every non-diluted primal sign around any single internal
// vertex leaves cluster_partition unchanged to 1e-12.  Vacuously true without
// internal spins.  Single-layer clusters only.
bool gauge_orbit_check(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder, Coupling k);

}  // namespace dualthresh

#endif  // DUALTHRESH_CLUSTER_H
