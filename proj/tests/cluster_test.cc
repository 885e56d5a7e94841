#include "dualthresh/cluster.h"

#include <cmath>
#include <random>

#include "dualthresh/catalog.h"
#include "dualthresh/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

using namespace dualthresh;

namespace {

std::vector<EdgeDisorder> all_plus(const ClusterSpec& c) {
  return std::vector<EdgeDisorder>(c.slot_count(), c.layers() == 1 ? EdgeDisorder::single(1) : EdgeDisorder::pair(1, 1));
}

std::vector<EdgeDisorder> random_assignment(const ClusterSpec& c, std::mt19937_64& rng) {
  const auto dist = disorder_distribution({c.layers() == 1 ? ChannelKind::kUncorrelated : ChannelKind::kDepolarizing,
                                           0.3, 0.2});
  std::uniform_int_distribution<std::size_t> pick(0, dist.size() - 1);
  std::vector<EdgeDisorder> a;
  for (std::size_t s = 0; s < c.slot_count(); ++s) a.push_back(dist.support()[pick(rng)]);
  return a;
}

}  // namespace

TEST(BuiltinCluster, shapes) {
  const auto single = builtin_cluster("SINGLE");
  EXPECT_EQ(single.slot_count(), 1u);
  EXPECT_EQ(single.internal_count(), 0);
  EXPECT_EQ(single.layers(), 1);

  const auto a = builtin_cluster("A");
  EXPECT_EQ(a.slot_count(), 4u);
  EXPECT_EQ(a.internal_count(), 1);

  const auto c = builtin_cluster("c");
  EXPECT_EQ(c.slot_count(), 1u);
  EXPECT_EQ(c.internal_count(), 0);
  EXPECT_EQ(c.layers(), 2);

  EXPECT_EQ(builtin_cluster("B").slot_count(), 12u);
  EXPECT_EQ(builtin_cluster("D").slot_count(), 4u);
  EXPECT_EQ(builtin_cluster("E").slot_count(), 8u);
  EXPECT_THROW(builtin_cluster("F"), UnknownCluster);
}

TEST(ClusterPartition, single_edge) {
  const auto single = builtin_cluster("single");
  const Coupling k{0.83};
  EXPECT_NEAR(cluster_partition(single, std::vector{EdgeDisorder::single(1)}, k).log_value, 0.83, 1e-15);
  EXPECT_NEAR(cluster_partition(single, std::vector{EdgeDisorder::single(-1)}, k).log_value, -0.83, 1e-15);
  EXPECT_EQ(cluster_partition(single, std::vector{EdgeDisorder::single(0)}, k).log_value, 0.0);
}

TEST(ClusterPartition, star_all_plus) {
  const auto a = builtin_cluster("A");
  for (double k : {0.0, 0.3, 1.1, 4.0}) {
    // One internal spin: e^{4K} + e^{-4K}.
    EXPECT_NEAR(cluster_partition(a, all_plus(a), Coupling{k}).log_value, std::log(2.0 * std::cosh(4.0 * k)), 1e-13);
  }
}

TEST(ClusterPartition, crossing_slot) {
  const auto c = builtin_cluster("C");
  EXPECT_NEAR(cluster_partition(c, std::vector{EdgeDisorder::pair(1, 1)}, Coupling{0.7}).log_value, 2.1, 1e-15);
  EXPECT_NEAR(cluster_partition(c, std::vector{EdgeDisorder::pair(-1, 1)}, Coupling{0.7}).log_value, -0.7, 1e-15);
  EXPECT_EQ(cluster_partition(c, std::vector{EdgeDisorder::pair(0, 0)}, Coupling{0.7}).log_value, 0.0);
}

TEST(ClusterPartition, counts_states_at_zero_coupling) {
  std::mt19937_64 rng(1);
  for (const CatalogEntry& entry : builtin_catalog()) {
    const auto& c = entry.cluster;
    EXPECT_NEAR(cluster_partition(c, random_assignment(c, rng), Coupling{0.0}).log_value,
                c.internal_count() * std::log(2.0), 1e-13)
        << c.name();
  }
}

TEST(ClusterPartition, matches_brute_force) {
  std::mt19937_64 rng(2);
  for (const CatalogEntry& entry : builtin_catalog()) {
    const auto& c = entry.cluster;
    for (int t = 0; t < 40; ++t) {
      const auto a = random_assignment(c, rng);
      const double k = 0.05 + 0.1 * t;
      EXPECT_NEAR(cluster_partition(c, a, Coupling{k}).log_value, oracle::log_partition(c, a, k), 1e-12)
          << c.name();
    }
  }
}

TEST(ClusterPartition, finite_and_positive_up_to_k12) {
  std::mt19937_64 rng(3);
  for (const CatalogEntry& entry : builtin_catalog()) {
    const auto& c = entry.cluster;
    for (int t = 0; t < 200; ++t) {
      const auto a = random_assignment(c, rng);
      for (double k : {0.0, 0.5, 3.0, 7.5, 12.0}) {
        const ClusterFactor f = cluster_partition(c, a, Coupling{k});
        EXPECT_TRUE(std::isfinite(f.log_value));
        EXPECT_EQ(f.sign, 1);
      }
    }
  }
}

TEST(ClusterPartition, increasing_in_coupling_when_unfrustrated) {
  for (const CatalogEntry& entry : builtin_catalog()) {
    double previous = -INFINITY;
    for (double k = 0.0; k <= 12.0; k += 0.25) {
      const double v = cluster_partition(entry.cluster, all_plus(entry.cluster), Coupling{k}).log_value;
      EXPECT_GT(v, previous) << entry.cluster.name() << " K=" << k;
      previous = v;
    }
  }
}

TEST(ClusterPartition, shape_mismatch) {
  const auto a = builtin_cluster("A");
  EXPECT_THROW(cluster_partition(a, std::vector{EdgeDisorder::single(1)}, Coupling{1.0}), ShapeMismatch);
}

TEST(GaugeOrbit, star_examples) {
  const auto a = builtin_cluster("A");
  const Coupling k{0.9};
  const std::vector<EdgeDisorder> plus(4, EdgeDisorder::single(1));
  const std::vector<EdgeDisorder> minus(4, EdgeDisorder::single(-1));
  EXPECT_NEAR(cluster_partition(a, plus, k).log_value, cluster_partition(a, minus, k).log_value, 1e-12);
  EXPECT_TRUE(gauge_orbit_check(a, plus, k));
  const std::vector<EdgeDisorder> diluted{EdgeDisorder::single(1), EdgeDisorder::single(0), EdgeDisorder::single(-1),
                                          EdgeDisorder::single(1)};
  EXPECT_TRUE(gauge_orbit_check(a, diluted, k));
  EXPECT_TRUE(gauge_orbit_check(builtin_cluster("single"), std::vector{EdgeDisorder::single(-1)}, k));
}

TEST(GaugeOrbit, holds_for_all_single_layer_assignments) {
  const auto a = builtin_cluster("A");
  const auto dist = disorder_distribution({ChannelKind::kUncorrelated, 0.2, 0.2});
  oracle::for_each_assignment(dist, a.slot_count(), [&](const std::vector<EdgeDisorder>& d, double) {
    for (double k : {0.2, 1.0, 6.0, 12.0}) {
      EXPECT_TRUE(gauge_orbit_check(a, d, Coupling{k}));
    }
  });
  std::mt19937_64 rng(4);
  const auto b = builtin_cluster("B");
  for (int t = 0; t < 200; ++t) {
    EXPECT_TRUE(gauge_orbit_check(b, random_assignment(b, rng), Coupling{0.1 + 0.05 * t}));
  }
}

TEST(ClusterSpec, rejects_malformed_geometry) {
  const Vertex p0{0, VertexRole::kBoundary, Sublattice::kPrimal};
  const Vertex p1{1, VertexRole::kInternal, Sublattice::kPrimal};
  const Vertex d2{2, VertexRole::kBoundary, Sublattice::kDual};
  const Vertex d3{3, VertexRole::kBoundary, Sublattice::kDual};
  EXPECT_NO_THROW(ClusterSpec("ok", 1, {p0, p1}, {Slot{{0, 1}, std::nullopt}}));
  EXPECT_THROW(ClusterSpec("dangling", 1, {p0, p1}, {Slot{{0, 7}, std::nullopt}}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("loop", 1, {p0, p1}, {Slot{{1, 1}, std::nullopt}}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("dup", 1, {p0, p0}, {Slot{{0, 0}, std::nullopt}}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("dual-in-1", 1, {p0, p1, d2}, {Slot{{0, 1}, std::nullopt}}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("no-dual", 2, {p0, p1, d2, d3}, {Slot{{0, 1}, std::nullopt}}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("crossed", 2, {p0, p1, d2, d3}, {Slot{{0, 2}, std::array<int, 2>{1, 3}}}),
               InvalidCluster);
  EXPECT_THROW(ClusterSpec("empty", 1, {p0, p1}, {}), InvalidCluster);
  EXPECT_THROW(ClusterSpec("layers", 3, {p0, p1}, {Slot{{0, 1}, std::nullopt}}), InvalidCluster);

  std::vector<Vertex> many{p0};
  std::vector<Slot> slots;
  for (int i = 1; i <= 25; ++i) {
    many.push_back(Vertex{i, VertexRole::kInternal, Sublattice::kPrimal});
    slots.push_back(Slot{{0, i}, std::nullopt});
  }
  EXPECT_THROW(ClusterSpec("big", 1, many, slots), InvalidCluster);
}
