#include "dualthresh/duality.h"

#include <cmath>
#include <random>

#include "dualthresh/catalog.h"
#include "dualthresh/cluster.h"
#include "dualthresh/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

using namespace dualthresh;

namespace {

// Log of the sum of |term| over spin configurations; bounds the cancellation.
double log_dual_magnitude(const ClusterSpec& c, const std::vector<EdgeDisorder>& a, double k) {
  long double z = 0.0L;
  oracle::for_each_spin_config(c, [&](const std::map<int, int>& spin) {
    long double term = 1.0L;
    for (std::size_t s = 0; s < c.slot_count(); ++s) {
      const Slot& slot = c.slots()[s];
      const int eta = spin.at(slot.primal_edge[0]) * spin.at(slot.primal_edge[1]);
      const int eta_dual = slot.dual_edge ? spin.at((*slot.dual_edge)[0]) * spin.at((*slot.dual_edge)[1]) : 1;
      term *= std::abs(oracle::dual_slot_weight(a[s], c.layers(), k, eta, eta_dual));
    }
    z += term;
  });
  return static_cast<double>(std::log(z));
}

}  // namespace

TEST(DualEdgeFactor, single_layer_examples) {
  const auto y = dual_edge_factor_single({std::exp(0.6), std::exp(-0.6)});
  EXPECT_NEAR(y[0], std::sqrt(2.0) * std::cosh(0.6), 1e-15);
  EXPECT_NEAR(y[1], std::sqrt(2.0) * std::sinh(0.6), 1e-15);
}

TEST(DualEdgeFactor, two_layer_examples) {
  const std::array<double, 4> x{1.0, 2.0, 3.0, 4.0};
  const auto y = dual_edge_factor_twolayer(x);
  EXPECT_DOUBLE_EQ(y[0], 5.0);
  EXPECT_DOUBLE_EQ(y[1], -1.0);
  EXPECT_DOUBLE_EQ(y[2], -2.0);
  EXPECT_DOUBLE_EQ(y[3], 0.0);
}

TEST(DualEdgeFactor, involution) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 10000; ++t) {
    const std::array<double, 2> x2{u(rng), u(rng)};
    const auto y2 = dual_edge_factor_single(dual_edge_factor_single(x2));
    const double n2 = std::max(x2[0], x2[1]);
    for (int i = 0; i < 2; ++i) EXPECT_LE(std::abs(y2[i] - x2[i]) / n2, 1e-14);

    const std::array<double, 4> x4{u(rng), u(rng), u(rng), u(rng)};
    const auto y4 = dual_edge_factor_twolayer(dual_edge_factor_twolayer(x4));
    const double n4 = *std::max_element(x4.begin(), x4.end());
    for (int i = 0; i < 4; ++i) EXPECT_LE(std::abs(y4[i] - x4[i]) / n4, 1e-14);
  }
}

TEST(DualClusterPartition, single_edge) {
  const auto single = builtin_cluster("single");
  const double k = 0.73;
  EXPECT_NEAR(dual_cluster_partition(single, std::vector{EdgeDisorder::single(1)}, Coupling{k}).log_value,
              std::log(std::sqrt(2.0) * std::cosh(k)), 1e-15);
  EXPECT_NEAR(dual_cluster_partition(single, std::vector{EdgeDisorder::single(-1)}, Coupling{k}).log_value,
              std::log(std::sqrt(2.0) * std::cosh(k)), 1e-15);
  EXPECT_NEAR(dual_cluster_partition(single, std::vector{EdgeDisorder::single(0)}, Coupling{k}).log_value,
              0.5 * std::log(2.0), 1e-15);
}

TEST(DualClusterPartition, star_all_plus) {
  const auto a = builtin_cluster("A");
  const std::vector<EdgeDisorder> plus(4, EdgeDisorder::single(1));
  for (double k : {0.1, 0.44, 1.3, 5.0}) {
    const double c = std::cosh(k), s = std::sinh(k);
    EXPECT_NEAR(dual_cluster_partition(a, plus, Coupling{k}).log_value,
                std::log(4.0 * (std::pow(c, 4) + std::pow(s, 4))), 1e-12);
  }
}

TEST(DualClusterPartition, crossing_slot) {
  const auto c = builtin_cluster("C");
  const double k = 0.52;
  EXPECT_NEAR(dual_cluster_partition(c, std::vector{EdgeDisorder::pair(1, 1)}, Coupling{k}).log_value,
              std::log(0.5 * (std::exp(3.0 * k) + 3.0 * std::exp(-k))), 1e-14);
  EXPECT_NEAR(dual_cluster_partition(c, std::vector{EdgeDisorder::pair(0, 0)}, Coupling{k}).log_value,
              std::log(2.0), 1e-15);
}

TEST(DualSlotWeights, components_are_character_sums) {
  const auto dist = disorder_distribution({ChannelKind::kDepolarizing, 0.2, 0.1});
  for (const EdgeDisorder& d : dist.support()) {
    for (double k : {0.1, 0.8, 2.5}) {
      const auto w = dual_slot_weights(d, 2, Coupling{k});
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double expected =
              static_cast<double>(oracle::dual_slot_weight(d, 2, k, a ? -1 : 1, b ? -1 : 1));
          EXPECT_NEAR(w[2 * a + b], expected, 1e-13 * std::exp(3.0 * k));
        }
      }
    }
  }
}

TEST(DualClusterPartition, depends_on_disorder_only_through_parity) {
  // With no internal spins, the single edge dual weight ignores the sign of tau.
  const auto a = builtin_cluster("A");
  const auto dist = disorder_distribution({ChannelKind::kUncorrelated, 0.2, 0.3});
  const Coupling k{0.9};
  int count = 0;
  oracle::for_each_assignment(dist, a.slot_count(), [&](const std::vector<EdgeDisorder>& d, double) {
    std::vector<EdgeDisorder> flipped = d;
    for (auto& e : flipped) e.primal = static_cast<std::int8_t>(-e.primal);
    // Flipping every sign preserves the parity of each Z2 character.
    EXPECT_NEAR(dual_cluster_partition(a, d, k).log_value, dual_cluster_partition(a, flipped, k).log_value, 1e-12);
    EXPECT_NEAR(dual_cluster_partition(a, d, k).log_value, oracle::log_dual_partition(a, d, k.value), 1e-12);
    ++count;
  });
  EXPECT_EQ(count, 81);
}

TEST(DualClusterPartition, matches_brute_force_and_is_positive) {
  std::mt19937_64 rng(5);
  for (const CatalogEntry& entry : builtin_catalog()) {
    const auto& c = entry.cluster;
    const auto dist = disorder_distribution({entry.channel, 0.25, 0.15});
    std::uniform_int_distribution<std::size_t> pick(0, dist.size() - 1);
    for (int t = 0; t < 30; ++t) {
      std::vector<EdgeDisorder> a;
      for (std::size_t s = 0; s < c.slot_count(); ++s) a.push_back(dist.support()[pick(rng)]);
      const double k = 0.05 + 0.12 * t;
      const ClusterFactor f = dual_cluster_partition(c, a, Coupling{k});
      EXPECT_EQ(f.sign, 1) << c.name();
      const double exact = oracle::log_dual_partition(c, a, k);
      const double condition = std::exp(log_dual_magnitude(c, a, k) - exact);
      EXPECT_NEAR(f.log_value, exact, 1e-12 + 64.0 * 2.2e-16 * condition) << c.name() << " K=" << k;
    }
  }
}

TEST(PureSelfDualPoint, value) {
  const double k = pure_self_dual_point().value;
  EXPECT_NEAR(k, 0.440687, 1e-6);
  EXPECT_NEAR(std::exp(-2.0 * k), std::tanh(k), 1e-10);
  EXPECT_NEAR(k, 0.5 * std::log(1.0 + std::sqrt(2.0)), 1e-12);
}
