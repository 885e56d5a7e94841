#ifndef DUALTHRESH_REPLICA_H
#define DUALTHRESH_REPLICA_H

#include <cstdint>
#include <functional>
#include <string_view>

#include "dualthresh/cluster.h"
#include "dualthresh/model.h"

namespace dualthresh {

enum class GapMethod { kExact, kMonteCarlo };
std::string_view to_string(GapMethod method);

enum class ExactnessPolicy {
  kExact,       // enumerate; TooManyTerms beyond the budget
  kMonteCarlo,  // always sample
  kAuto,        // enumerate within the budget, otherwise sample
};

using CouplingFn = std::function<Coupling(const Channel&)>;

struct GapOptions {
  ExactnessPolicy policy = ExactnessPolicy::kExact;
  std::uint64_t term_budget = 100'000'000;
  std::uint64_t mc_samples = 100'000;
  std::uint64_t seed = 0;
  // 0 means default_worker_count().
  unsigned workers = 0;
  // Coupling used for the channel; nishimori_coupling when empty.
  CouplingFn coupling;
};

// Delta(p, q) = E[ln x_0^cl] - E[ln x_0^cl*] over quenched disorder.
struct GapEvaluation {
  double delta = 0.0;
  GapMethod method = GapMethod::kExact;
  double std_error = 0.0;
  std::uint64_t terms = 0;
};

// Number of joint slot assignments for exact enumeration: |support|^slots,
// saturating at UINT64_MAX.
std::uint64_t exact_term_count(const Channel& channel, const ClusterSpec& cluster);

// Quenched log-gap of the cluster duality condition.  Slots are independent
// and distributed as disorder_distribution(channel).  Exact results do not
// depend on the worker count.
GapEvaluation gap(const Channel& channel, const ClusterSpec& cluster, const GapOptions& options = {});

// Sampled gap using common random numbers: the uniform for (seed, sample,
// slot) is fixed, so estimates at different p reuse the same draws.
// Requires samples >= 1000.  Bit-identical for identical arguments.
GapEvaluation gap_monte_carlo(const Channel& channel, const ClusterSpec& cluster, std::uint64_t samples,
                              std::uint64_t seed, const GapOptions& options = {});

// Analytic gap of the single edge (uncorrelated) or single crossing slot
// (depolarizing).
double gap_closed_form_single(ChannelKind kind, double p, double q);

// Counter-based uniform in [0, 1) keyed by (seed, sample, slot).
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t slot);

}  // namespace dualthresh

#endif  // DUALTHRESH_REPLICA_H
