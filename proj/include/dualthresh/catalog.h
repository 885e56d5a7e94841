#ifndef DUALTHRESH_CATALOG_H
#define DUALTHRESH_CATALOG_H

#include <string>
#include <string_view>
#include <vector>

#include "dualthresh/cluster.h"
#include "dualthresh/model.h"

namespace dualthresh {

// Cluster catalog text format (JSON).  A file holds one cluster object or an
// array of them:
//
//   {
//     "name": "A",
//     "layers": 1,
//     "vertices": [{"id": 0, "role": "internal", "layer": "primal"}, ...],
//     "slots": [{"primal_edge": [0, 1], "dual_edge": null}, ...]
//   }
//
// `role` is "internal" or "boundary"; `layer` is "primal" or "dual".
// `dual_edge` is required (a pair of dual vertex ids) when layers == 2 and
// must be null or absent when layers == 1.  Unknown keys are rejected.
std::vector<ClusterSpec> parse_catalog(std::string_view text);
std::vector<ClusterSpec> load_catalog_file(const std::string& path);

// Canonical JSON for one cluster; parse_catalog(serialize_cluster(c)) == c.
std::string serialize_cluster(const ClusterSpec& cluster);

enum class CalibrationStatus { kVerified, kUnverified };

std::string_view to_string(CalibrationStatus status);

struct CatalogEntry {
  ClusterSpec cluster;
  ChannelKind channel;
  CalibrationStatus status;
  // Published thresholds this geometry is calibrated against, one per
  // entry of calibration_losses().
  std::vector<double> calibration_target;
  std::string description;
};

// Loss rates at which the published cluster thresholds are tabulated.
const std::vector<double>& calibration_losses();

// Registered clusters in display order: single, A, B, C, D, E.
const std::vector<CatalogEntry>& builtin_catalog();

// Case-insensitive lookup.  Throws UnknownCluster.
const CatalogEntry& builtin_entry(std::string_view name);
ClusterSpec builtin_cluster(std::string_view name);

}  // namespace dualthresh

#endif  // DUALTHRESH_CATALOG_H
