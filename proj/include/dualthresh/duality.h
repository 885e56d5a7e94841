#ifndef DUALTHRESH_DUALITY_H
#define DUALTHRESH_DUALITY_H

#include <array>
#include <span>

#include "dualthresh/cluster.h"
#include "dualthresh/model.h"

namespace dualthresh {

// (x_0, x_1) -> ((x_0 + x_1)/sqrt2, (x_0 - x_1)/sqrt2).  An involution.
std::array<double, 2> dual_edge_factor_single(const std::array<double, 2>& x);

// Two-layer components indexed 2a + b (a: primal parity, b: dual parity).
// x*_ab = 1/2 sum_{a',b'} (-1)^(a a' + b b') x_a'b'.  An involution.
std::array<double, 4> dual_edge_factor_twolayer(const std::array<double, 4>& x);

// Dualized weights of one slot indexed by parity; entries may be negative.
std::array<double, 4> dual_slot_weights(const EdgeDisorder& disorder, int layers, Coupling k);

// Dual principal factor x_0^*: the same cluster graph and spin sum as
// cluster_partition, with every slot weight replaced by its dual components.
// Accumulates in sign-magnitude log domain.  Throws NonPositiveDual when the
// sum is not strictly positive, ShapeMismatch for a wrong assignment length.
ClusterFactor dual_cluster_partition(const ClusterSpec& cluster, std::span<const EdgeDisorder> disorder,
                                     Coupling k);

// Self-dual coupling of the pure model, exp(-2K) = tanh K, by bisection.
Coupling pure_self_dual_point();

}  // namespace dualthresh

#endif  // DUALTHRESH_DUALITY_H
