#ifndef DUALTHRESH_CLI_H
#define DUALTHRESH_CLI_H

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dualthresh/replica.h"
#include "dualthresh/solver.h"

namespace dualthresh {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoThreshold = 2,
  kExitBadCluster = 3,
  kExitVerifyFailed = 4,
};

enum class OutputFormat { kTable, kCsv, kJson };

// One output row per (channel, cluster, q).
struct OutputRecord {
  std::string channel;
  std::string cluster;
  double q = 0.0;
  double p_c = 0.0;
  double residual = 0.0;
  // "exact" / "montecarlo", or the failure status for rows without a root.
  std::string method;
  std::optional<double> reference_p_c0;
  std::string status = "ok";
};

inline constexpr std::string_view kCsvHeader = "channel,cluster,q,p_c,residual,method,reference_p_c0";

OutputRecord to_record(const SweepRow& row, bool with_reference);
std::string format_records(const std::vector<OutputRecord>& records, OutputFormat format);

// Shortest decimal string that round-trips to the same double.
std::string shortest_repr(double value);

// Fixed 5-decimal rendering; exact binary ties round half to even.
std::string fixed5(double value);

// Resolves a builtin cluster name or "file:<path>[#name]".  Throws
// UnknownCluster or InvalidCluster.
ClusterSpec resolve_cluster(std::string_view spec);

// Evenly spaced loss rates from..to inclusive, snapped to 1e-12.
std::vector<double> loss_grid(double from, double to, double step);

struct VerifyHooks {
  // Replaces the Nishimori coupling in every threshold solve.
  CouplingFn coupling;
};

// Runs the basic or full self-check suite and prints one line per check.
// Returns kExitOk when every check passes, kExitVerifyFailed otherwise.
int run_verify(std::string_view suite, std::ostream& out, const VerifyHooks& hooks = {});

// Entry point for the `dualthresh` command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualthresh

#endif  // DUALTHRESH_CLI_H
