#ifndef DUALTHRESH_SOLVER_H
#define DUALTHRESH_SOLVER_H

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualthresh/cluster.h"
#include "dualthresh/model.h"
#include "dualthresh/replica.h"

namespace dualthresh {

struct ThresholdResult {
  ChannelKind channel = ChannelKind::kUncorrelated;
  std::string cluster;
  double q = 0.0;
  double p_c = 0.0;
  // |Delta(p_c)|.
  double residual = 0.0;
  double p_lo = 0.0;
  double p_hi = 0.0;
  // Number of gap evaluations.
  int iterations = 0;
  GapMethod method = GapMethod::kExact;
  double std_error = 0.0;
  // Monte Carlo refinement stopped once |Delta| fell below 2 standard errors.
  bool statistically_limited = false;
};

struct SolveOptions {
  double tol = 1e-7;
  GapOptions gap;
};

// Lower and upper ends of the root search for a channel.
double search_floor();
double search_ceiling(ChannelKind kind);

// Root of Delta(p) at fixed q on [1e-6, p_max - 1e-6], p_max = 1/2 or 3/4.
// Exact gaps are refined with Brent's method to a bracket of width <= tol;
// sampled gaps by bisection.  Throws NoThreshold when the single-edge
// entropy condition has no positive root (q >= 1/2), NoSignChange when Delta
// keeps one sign over the search interval, DomainError for tol < 1e-10.
ThresholdResult solve_threshold(ChannelKind kind, const ClusterSpec& cluster, double q,
                                const SolveOptions& options = {});

enum class SweepStatus { kOk, kNoSignChange, kNoThreshold, kFailed };
std::string_view to_string(SweepStatus status);

struct SweepRow {
  double q = 0.0;
  SweepStatus status = SweepStatus::kOk;
  // For failed rows p_c is 0 and only channel, cluster and q are meaningful.
  ThresholdResult result;
  std::string message;
};

// One row per loss rate; per-row failures never abort the sweep.
std::vector<SweepRow> sweep(ChannelKind kind, const ClusterSpec& cluster, std::span<const double> losses,
                            const SolveOptions& options = {});

// Published comparison values, embedded verbatim.
struct ReferenceThresholds {
  std::vector<double> losses;
  // Matching-decoder (ground state) thresholds for the uncorrelated channel.
  std::vector<double> matching;
  // Improved matching threshold without loss.
  double matching_improved_lossless = 0.0;
  // Constructive depolarizing decoder without loss.
  double depolarizing_decoder_lossless = 0.0;
};

const ReferenceThresholds& reference_thresholds();

// Comparison value for a tabulated loss rate, if any: the matching threshold
// for the uncorrelated channel, the decoder value at q = 0 for depolarizing.
std::optional<double> reference_value(ChannelKind kind, double q);

}  // namespace dualthresh

#endif  // DUALTHRESH_SOLVER_H
