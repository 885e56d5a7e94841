#include "dualthresh/replica.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dualthresh/duality.h"
#include "dualthresh/errors.h"
#include "dualthresh/parallel.h"

namespace dualthresh {
namespace {

// Leaf sums below this are re-evaluated in log domain.
constexpr double kTinySum = 1e-250;
constexpr std::uint64_t kMinChunks = 64;
constexpr std::uint64_t kBlockSamples = 1024;

struct ScaledWeights {
  std::array<double, 4> w{};
  double log_scale = 0.0;
};

// Per-slot, per-state weight tables normalized so the largest reachable
// magnitude is 1.
struct Prepared {
  const ClusterSpec* cluster = nullptr;
  Coupling k;
  std::vector<EdgeDisorder> support;
  std::vector<double> probs;
  std::vector<std::size_t> live;  // support indices with nonzero probability
  std::vector<std::vector<ScaledWeights>> primal;
  std::vector<std::vector<ScaledWeights>> dual;
};

ScaledWeights scale(const std::array<double, 4>& w, const std::array<bool, 4>& reachable) {
  double peak = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (reachable[i]) {
      peak = std::max(peak, std::abs(w[i]));
    }
  }
  ScaledWeights out;
  if (peak == 0.0) {
    out.log_scale = -std::numeric_limits<double>::infinity();
    return out;
  }
  for (int i = 0; i < 4; ++i) {
    out.w[i] = reachable[i] ? w[i] / peak : 0.0;
  }
  out.log_scale = std::log(peak);
  return out;
}

std::array<bool, 4> reachable_parities(const ClusterSpec& cluster, std::size_t slot) {
  // Parities are XORs of two spins, so a single flipped spin exposes each
  // layer's odd parity; the two layers use disjoint spins.
  bool primal_odd = false;
  bool dual_odd = false;
  for (int v = 0; v < cluster.internal_count(); ++v) {
    const int par = cluster.slot_parity(std::uint32_t{1} << v, slot);
    if (cluster.layers() == 1) {
      primal_odd = primal_odd || par == 1;
    } else {
      primal_odd = primal_odd || (par >> 1) == 1;
      dual_odd = dual_odd || (par & 1) == 1;
    }
  }
  std::array<bool, 4> out{};
  if (cluster.layers() == 1) {
    out[0] = true;
    out[1] = primal_odd;
    return out;
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out[2 * a + b] = (a == 0 || primal_odd) && (b == 0 || dual_odd);
    }
  }
  return out;
}

Prepared prepare(const Channel& channel, const ClusterSpec& cluster, const GapOptions& options) {
  if (layer_count(channel.kind) != cluster.layers()) {
    throw ShapeMismatch("channel " + std::string(to_string(channel.kind)) + " needs a " +
                        std::to_string(layer_count(channel.kind)) + "-layer cluster, '" + cluster.name() +
                        "' has " + std::to_string(cluster.layers()));
  }
  const DisorderDistribution dist = disorder_distribution(channel);
  Prepared prep;
  prep.cluster = &cluster;
  prep.k = options.coupling ? options.coupling(channel) : nishimori_coupling(channel);
  if (!std::isfinite(prep.k.value)) {
    throw NonFinite("coupling is not finite");
  }
  prep.support = dist.support();
  prep.probs = dist.probs();
  for (std::size_t i = 0; i < prep.probs.size(); ++i) {
    if (prep.probs[i] > 0.0) {
      prep.live.push_back(i);
    }
  }

  const int layers = cluster.layers();
  const std::size_t m = prep.support.size();
  std::vector<std::array<double, 4>> dual_raw(m);
  for (std::size_t i = 0; i < m; ++i) {
    dual_raw[i] = dual_slot_weights(prep.support[i], layers, prep.k);
  }

  prep.primal.resize(cluster.slot_count());
  prep.dual.resize(cluster.slot_count());
  for (std::size_t s = 0; s < cluster.slot_count(); ++s) {
    const auto reachable = reachable_parities(cluster, s);
    for (std::size_t i = 0; i < m; ++i) {
      // Primal weights are rescaled from the log domain to avoid overflow.
      const auto log_w = primal_slot_log_weights(prep.support[i], layers, prep.k);
      double peak = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < 4; ++j) {
        if (reachable[j]) {
          peak = std::max(peak, log_w[j]);
        }
      }
      ScaledWeights sw;
      for (int j = 0; j < 4; ++j) {
        sw.w[j] = reachable[j] ? std::exp(log_w[j] - peak) : 0.0;
      }
      sw.log_scale = peak;
      prep.primal[s].push_back(sw);
      prep.dual[s].push_back(scale(dual_raw[i], reachable));
    }
  }
  return prep;
}

// ln x_0 - ln x_0* for one assignment (support indices per slot), evaluated
// from the scaled tables with a log-domain fallback.
double leaf_value(const Prepared& prep, double sum_primal, double log_primal, double sum_dual,
                  double log_dual, const std::vector<std::size_t>& path) {
  const ClusterSpec& cluster = *prep.cluster;
  const bool primal_ok = sum_primal > kTinySum && std::isfinite(sum_primal);
  const bool dual_ok = sum_dual > kTinySum && std::isfinite(sum_dual);
  if (primal_ok && dual_ok && std::isfinite(log_primal) && std::isfinite(log_dual)) {
    return (std::log(sum_primal) + log_primal) - (std::log(sum_dual) + log_dual);
  }
  DisorderAssignment assignment;
  assignment.reserve(path.size());
  for (std::size_t i : path) {
    assignment.push_back(prep.support[i]);
  }
  const double lp = primal_ok ? std::log(sum_primal) + log_primal
                              : cluster_partition(cluster, assignment, prep.k).log_value;
  const double ld = dual_ok ? std::log(sum_dual) + log_dual
                            : dual_cluster_partition(cluster, assignment, prep.k).log_value;
  return lp - ld;
}

class ChunkEnumerator {
 public:
  ChunkEnumerator(const Prepared& prep, std::size_t prefix_depth)
      : prep_(prep),
        cluster_(*prep.cluster),
        slots_(cluster_.slot_count()),
        configs_(cluster_.config_count()),
        prefix_depth_(prefix_depth),
        primal_(slots_ - prefix_depth + 1, std::vector<double>(configs_)),
        dual_(slots_ - prefix_depth + 1, std::vector<double>(configs_)),
        path_(slots_) {}

  // Sum over all completions of the prefix encoded by `chunk` of
  // P(assignment) * (ln x_0 - ln x_0*).
  double run(std::uint64_t chunk) {
    const std::size_t m = prep_.live.size();
    double prob = 1.0;
    double log_p = 0.0;
    double log_d = 0.0;
    for (std::size_t s = prefix_depth_; s-- > 0;) {
      path_[s] = prep_.live[chunk % m];
      chunk /= m;
    }
    for (std::uint64_t c = 0; c < configs_; ++c) {
      double tp = 1.0;
      double td = 1.0;
      for (std::size_t s = 0; s < prefix_depth_; ++s) {
        const int par = cluster_.slot_parity(static_cast<std::uint32_t>(c), s);
        tp *= prep_.primal[s][path_[s]].w[par];
        td *= prep_.dual[s][path_[s]].w[par];
      }
      primal_[0][c] = tp;
      dual_[0][c] = td;
    }
    for (std::size_t s = 0; s < prefix_depth_; ++s) {
      prob *= prep_.probs[path_[s]];
      log_p += prep_.primal[s][path_[s]].log_scale;
      log_d += prep_.dual[s][path_[s]].log_scale;
    }
    acc_ = CompensatedSum();
    descend(prefix_depth_, prob, log_p, log_d);
    return acc_.value();
  }

  std::uint64_t leaves() const { return leaves_; }

 private:
  void descend(std::size_t depth, double prob, double log_p, double log_d) {
    const std::size_t level = depth - prefix_depth_;
    if (depth == slots_) {
      double zp = 0.0;
      double zd = 0.0;
      for (std::uint64_t c = 0; c < configs_; ++c) {
        zp += primal_[level][c];
        zd += dual_[level][c];
      }
      acc_.add(prob * leaf_value(prep_, zp, log_p, zd, log_d, path_));
      ++leaves_;
      return;
    }
    for (std::size_t state : prep_.live) {
      const ScaledWeights& wp = prep_.primal[depth][state];
      const ScaledWeights& wd = prep_.dual[depth][state];
      const auto& in_p = primal_[level];
      const auto& in_d = dual_[level];
      auto& out_p = primal_[level + 1];
      auto& out_d = dual_[level + 1];
      for (std::uint64_t c = 0; c < configs_; ++c) {
        const int par = cluster_.slot_parity(static_cast<std::uint32_t>(c), depth);
        out_p[c] = in_p[c] * wp.w[par];
        out_d[c] = in_d[c] * wd.w[par];
      }
      path_[depth] = state;
      descend(depth + 1, prob * prep_.probs[state], log_p + wp.log_scale, log_d + wd.log_scale);
    }
  }

  const Prepared& prep_;
  const ClusterSpec& cluster_;
  std::size_t slots_;
  std::uint64_t configs_;
  std::size_t prefix_depth_;
  std::vector<std::vector<double>> primal_;
  std::vector<std::vector<double>> dual_;
  std::vector<std::size_t> path_;
  CompensatedSum acc_;
  std::uint64_t leaves_ = 0;
};

std::uint64_t saturating_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

GapEvaluation exact_gap(const Prepared& prep, unsigned workers) {
  const std::size_t slots = prep.cluster->slot_count();
  const std::uint64_t m = prep.live.size();
  // Chunking depends only on the problem, never on the worker count.
  std::size_t depth = 0;
  std::uint64_t chunks = 1;
  while (depth < slots && chunks < kMinChunks) {
    chunks *= m;
    ++depth;
  }
  std::vector<double> partial(chunks);
  std::vector<std::uint64_t> leaves(chunks);
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    ChunkEnumerator enumerator(prep, depth);
    partial[chunk] = enumerator.run(chunk);
    leaves[chunk] = enumerator.leaves();
  });
  GapEvaluation out;
  out.delta = ordered_sum(partial);
  out.method = GapMethod::kExact;
  out.std_error = 0.0;
  for (std::uint64_t n : leaves) {
    out.terms += n;
  }
  return out;
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct BlockStats {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

BlockStats merge(const BlockStats& a, const BlockStats& b) {
  if (a.count == 0.0) {
    return b;
  }
  if (b.count == 0.0) {
    return a;
  }
  BlockStats out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * (b.count / out.count);
  out.m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / out.count);
  return out;
}

GapEvaluation sampled_gap(const Prepared& prep, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (samples < 1000) {
    throw DomainError("Monte Carlo gap needs at least 1000 samples");
  }
  const ClusterSpec& cluster = *prep.cluster;
  const std::size_t slots = cluster.slot_count();
  const std::uint64_t configs = cluster.config_count();

  std::vector<double> cdf(prep.probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < prep.probs.size(); ++i) {
    running += prep.probs[i];
    cdf[i] = running;
  }
  const std::size_t last_live = prep.live.back();
  auto draw = [&](double u) {
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      if (u < cdf[i] && prep.probs[i] > 0.0) {
        return i;
      }
    }
    return last_live;
  };

  const std::uint64_t blocks = (samples + kBlockSamples - 1) / kBlockSamples;
  std::vector<BlockStats> stats(blocks);
  parallel_for(blocks, workers, [&](std::size_t block) {
    std::vector<std::size_t> path(slots);
    BlockStats local;
    const std::uint64_t begin = block * kBlockSamples;
    const std::uint64_t end = std::min(samples, begin + kBlockSamples);
    for (std::uint64_t n = begin; n < end; ++n) {
      double log_p = 0.0;
      double log_d = 0.0;
      for (std::size_t s = 0; s < slots; ++s) {
        path[s] = draw(counter_uniform(seed, n, s));
        log_p += prep.primal[s][path[s]].log_scale;
        log_d += prep.dual[s][path[s]].log_scale;
      }
      double zp = 0.0;
      double zd = 0.0;
      for (std::uint64_t c = 0; c < configs; ++c) {
        double tp = 1.0;
        double td = 1.0;
        for (std::size_t s = 0; s < slots; ++s) {
          const int par = cluster.slot_parity(static_cast<std::uint32_t>(c), s);
          tp *= prep.primal[s][path[s]].w[par];
          td *= prep.dual[s][path[s]].w[par];
        }
        zp += tp;
        zd += td;
      }
      const double x = leaf_value(prep, zp, log_p, zd, log_d, path);
      local.count += 1.0;
      const double delta = x - local.mean;
      local.mean += delta / local.count;
      local.m2 += delta * (x - local.mean);
    }
    stats[block] = local;
  });

  BlockStats total;
  for (const BlockStats& b : stats) {
    total = merge(total, b);
  }
  GapEvaluation out;
  out.delta = total.mean;
  out.method = GapMethod::kMonteCarlo;
  out.std_error = std::sqrt(total.m2 / (total.count - 1.0) / total.count);
  out.terms = samples;
  return out;
}

}  // namespace

std::string_view to_string(GapMethod method) {
  return method == GapMethod::kExact ? "exact" : "montecarlo";
}

std::uint64_t exact_term_count(const Channel& channel, const ClusterSpec& cluster) {
  return saturating_power(layer_count(channel.kind) == 1 ? 3 : 5, cluster.slot_count());
}

GapEvaluation gap(const Channel& channel, const ClusterSpec& cluster, const GapOptions& options) {
  const Prepared prep = prepare(channel, cluster, options);
  const unsigned workers = options.workers == 0 ? default_worker_count() : options.workers;
  if (options.policy == ExactnessPolicy::kMonteCarlo) {
    return sampled_gap(prep, options.mc_samples, options.seed, workers);
  }
  const std::uint64_t terms = exact_term_count(channel, cluster);
  if (terms > options.term_budget) {
    if (options.policy == ExactnessPolicy::kAuto) {
      return sampled_gap(prep, options.mc_samples, options.seed, workers);
    }
    throw TooManyTerms("cluster '" + cluster.name() + "' needs " + std::to_string(terms) +
                       " disorder assignments, budget is " + std::to_string(options.term_budget));
  }
  return exact_gap(prep, workers);
}

GapEvaluation gap_monte_carlo(const Channel& channel, const ClusterSpec& cluster, std::uint64_t samples,
                              std::uint64_t seed, const GapOptions& options) {
  const Prepared prep = prepare(channel, cluster, options);
  return sampled_gap(prep, samples, seed, options.workers == 0 ? default_worker_count() : options.workers);
}

double gap_closed_form_single(ChannelKind kind, double p, double q) {
  const Channel channel = make_channel(kind, p, q);
  const double k = nishimori_coupling(channel).value;
  const double ln2 = std::numbers::ln2;
  if (kind == ChannelKind::kUncorrelated) {
    const double log_cosh = k + std::log1p(std::exp(-2.0 * k)) - ln2;
    return (1.0 - q) * (1.0 - 2.0 * p) * k - 0.5 * ln2 - (1.0 - q) * log_cosh;
  }
  const double log_dual = 3.0 * k + std::log1p(3.0 * std::exp(-4.0 * k)) - ln2;
  return (1.0 - q) * (3.0 - 4.0 * p) * k - q * ln2 - (1.0 - q) * log_dual;
}

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ sample) ^ (slot * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace dualthresh
