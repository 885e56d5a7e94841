// Brute-force reference evaluators used only by tests.  They work from the
// raw vertex/slot lists in long double and never touch the library's parity
// indexing, weight tables, or enumeration order.
#ifndef DUALTHRESH_TESTS_ORACLES_H
#define DUALTHRESH_TESTS_ORACLES_H

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "dualthresh/cluster.h"
#include "dualthresh/model.h"

namespace dualthresh::oracle {

// Calls visit(spin) for every configuration of internal spins; boundary +1.
inline void for_each_spin_config(const ClusterSpec& cluster,
                                 const std::function<void(const std::map<int, int>&)>& visit) {
  std::vector<int> internal;
  std::map<int, int> spin;
  for (const Vertex& v : cluster.vertices()) {
    spin[v.id] = 1;
    if (v.role == VertexRole::kInternal) internal.push_back(v.id);
  }
  const std::size_t n = internal.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) spin[internal[i]] = (mask >> i) & 1 ? -1 : 1;
    visit(spin);
  }
}

// Local Boltzmann weight of a slot given the bond products eta, eta_dual.
inline long double slot_weight(const EdgeDisorder& d, int layers, double k, int eta, int eta_dual) {
  if (layers == 1) return std::exp(static_cast<long double>(k) * d.primal * eta);
  return std::exp(static_cast<long double>(k) *
                  (d.primal * eta + d.dual * eta_dual + d.primal * d.dual * eta * eta_dual));
}

// Dual weight: normalized character sum of the slot weight.
inline long double dual_slot_weight(const EdgeDisorder& d, int layers, double k, int eta, int eta_dual) {
  long double total = 0.0L;
  if (layers == 1) {
    for (int e : {1, -1}) total += (eta == 1 ? 1 : e) * slot_weight(d, 1, k, e, 1);
    return total / std::sqrt(2.0L);
  }
  for (int e : {1, -1})
    for (int f : {1, -1}) total += (eta == 1 ? 1 : e) * (eta_dual == 1 ? 1 : f) * slot_weight(d, 2, k, e, f);
  return total / 2.0L;
}

inline long double partition_sum(const ClusterSpec& cluster, const std::vector<EdgeDisorder>& a, double k, bool dual) {
  long double z = 0.0L;
  for_each_spin_config(cluster, [&](const std::map<int, int>& spin) {
    long double term = 1.0L;
    for (std::size_t s = 0; s < cluster.slot_count(); ++s) {
      const Slot& slot = cluster.slots()[s];
      const int eta = spin.at(slot.primal_edge[0]) * spin.at(slot.primal_edge[1]);
      const int eta_dual = slot.dual_edge ? spin.at((*slot.dual_edge)[0]) * spin.at((*slot.dual_edge)[1]) : 1;
      term *= dual ? dual_slot_weight(a[s], cluster.layers(), k, eta, eta_dual)
                   : slot_weight(a[s], cluster.layers(), k, eta, eta_dual);
    }
    z += term;
  });
  return z;
}

inline double log_partition(const ClusterSpec& cluster, const std::vector<EdgeDisorder>& a, double k) {
  return static_cast<double>(std::log(partition_sum(cluster, a, k, false)));
}

inline double log_dual_partition(const ClusterSpec& cluster, const std::vector<EdgeDisorder>& a, double k) {
  return static_cast<double>(std::log(partition_sum(cluster, a, k, true)));
}

// Every assignment over the distribution's full support, with probabilities.
inline void for_each_assignment(const DisorderDistribution& dist, std::size_t slots,
                                 const std::function<void(const std::vector<EdgeDisorder>&, double)>& visit) {
  std::vector<std::size_t> digit(slots, 0);
  std::vector<EdgeDisorder> a(slots);
  while (true) {
    double prob = 1.0;
    for (std::size_t s = 0; s < slots; ++s) {
      a[s] = dist.support()[digit[s]];
      prob *= dist.probs()[digit[s]];
    }
    visit(a, prob);
    std::size_t s = 0;
    while (s < slots && ++digit[s] == dist.size()) digit[s++] = 0;
    if (s == slots) return;
  }
}

// Straight 3^S / 5^S quenched average of ln x_0 - ln x_0*.
inline double gap(const Channel& channel, const ClusterSpec& cluster) {
  const DisorderDistribution dist = disorder_distribution(channel);
  const double k = nishimori_coupling(channel).value;
  long double total = 0.0L;
  for_each_assignment(dist, cluster.slot_count(), [&](const std::vector<EdgeDisorder>& a, double prob) {
    if (prob == 0.0) return;
    total += prob * (std::log(partition_sum(cluster, a, k, false)) - std::log(partition_sum(cluster, a, k, true)));
  });
  return static_cast<double>(total);
}

// Root of the binary-entropy condition H2(p) = 1 - 1/(2(1-q)) by bisection.
inline double entropy_root(double q) {
  const double target = 1.0 - 0.5 / (1.0 - q);
  auto h2 = [](double p) { return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p)); };
  double lo = 1e-15, hi = 0.5;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h2(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dualthresh::oracle

#endif  // DUALTHRESH_TESTS_ORACLES_H
