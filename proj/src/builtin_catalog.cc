#include <algorithm>
#include <cctype>

#include "dualthresh/catalog.h"
#include "dualthresh/errors.h"

namespace dualthresh {
namespace {

// Square-lattice clusters.  Primal vertices sit on integer coordinates, dual
// vertices on half-integer ones; a two-layer slot pairs a primal edge with
// the dual edge that crosses it.
constexpr std::string_view kBundledCatalog = R"json([
  {
    "name": "single",
    "layers": 1,
    "vertices": [
      {"id": 0, "role": "boundary", "layer": "primal"},
      {"id": 1, "role": "boundary", "layer": "primal"}
    ],
    "slots": [{"primal_edge": [0, 1], "dual_edge": null}]
  },
  {
    "name": "A",
    "layers": 1,
    "vertices": [
      {"id": 0, "role": "internal", "layer": "primal"},
      {"id": 1, "role": "boundary", "layer": "primal"},
      {"id": 2, "role": "boundary", "layer": "primal"},
      {"id": 3, "role": "boundary", "layer": "primal"},
      {"id": 4, "role": "boundary", "layer": "primal"}
    ],
    "slots": [
      {"primal_edge": [0, 1], "dual_edge": null},
      {"primal_edge": [0, 2], "dual_edge": null},
      {"primal_edge": [0, 3], "dual_edge": null},
      {"primal_edge": [0, 4], "dual_edge": null}
    ]
  },
  {
    "name": "B",
    "layers": 1,
    "vertices": [
      {"id": 0, "role": "internal", "layer": "primal"},
      {"id": 1, "role": "internal", "layer": "primal"},
      {"id": 2, "role": "internal", "layer": "primal"},
      {"id": 3, "role": "internal", "layer": "primal"},
      {"id": 4, "role": "boundary", "layer": "primal"},
      {"id": 5, "role": "boundary", "layer": "primal"},
      {"id": 6, "role": "boundary", "layer": "primal"},
      {"id": 7, "role": "boundary", "layer": "primal"},
      {"id": 8, "role": "boundary", "layer": "primal"},
      {"id": 9, "role": "boundary", "layer": "primal"},
      {"id": 10, "role": "boundary", "layer": "primal"},
      {"id": 11, "role": "boundary", "layer": "primal"}
    ],
    "slots": [
      {"primal_edge": [0, 1], "dual_edge": null},
      {"primal_edge": [1, 2], "dual_edge": null},
      {"primal_edge": [2, 3], "dual_edge": null},
      {"primal_edge": [3, 0], "dual_edge": null},
      {"primal_edge": [0, 4], "dual_edge": null},
      {"primal_edge": [0, 5], "dual_edge": null},
      {"primal_edge": [1, 6], "dual_edge": null},
      {"primal_edge": [1, 7], "dual_edge": null},
      {"primal_edge": [2, 8], "dual_edge": null},
      {"primal_edge": [2, 9], "dual_edge": null},
      {"primal_edge": [3, 10], "dual_edge": null},
      {"primal_edge": [3, 11], "dual_edge": null}
    ]
  },
  {
    "name": "C",
    "layers": 2,
    "vertices": [
      {"id": 0, "role": "boundary", "layer": "primal"},
      {"id": 1, "role": "boundary", "layer": "primal"},
      {"id": 2, "role": "boundary", "layer": "dual"},
      {"id": 3, "role": "boundary", "layer": "dual"}
    ],
    "slots": [{"primal_edge": [0, 1], "dual_edge": [2, 3]}]
  },
  {
    "name": "D",
    "layers": 2,
    "vertices": [
      {"id": 0, "role": "internal", "layer": "primal"},
      {"id": 1, "role": "boundary", "layer": "primal"},
      {"id": 2, "role": "boundary", "layer": "primal"},
      {"id": 3, "role": "boundary", "layer": "primal"},
      {"id": 4, "role": "boundary", "layer": "primal"},
      {"id": 5, "role": "boundary", "layer": "dual"},
      {"id": 6, "role": "boundary", "layer": "dual"},
      {"id": 7, "role": "boundary", "layer": "dual"},
      {"id": 8, "role": "boundary", "layer": "dual"}
    ],
    "slots": [
      {"primal_edge": [0, 1], "dual_edge": [8, 5]},
      {"primal_edge": [0, 2], "dual_edge": [6, 5]},
      {"primal_edge": [0, 3], "dual_edge": [7, 6]},
      {"primal_edge": [0, 4], "dual_edge": [7, 8]}
    ]
  },
  {
    "name": "E",
    "layers": 2,
    "vertices": [
      {"id": 0, "role": "internal", "layer": "primal"},
      {"id": 1, "role": "boundary", "layer": "primal"},
      {"id": 2, "role": "boundary", "layer": "primal"},
      {"id": 3, "role": "boundary", "layer": "primal"},
      {"id": 4, "role": "boundary", "layer": "primal"},
      {"id": 5, "role": "internal", "layer": "dual"},
      {"id": 6, "role": "boundary", "layer": "dual"},
      {"id": 7, "role": "internal", "layer": "dual"},
      {"id": 8, "role": "boundary", "layer": "dual"},
      {"id": 9, "role": "boundary", "layer": "primal"},
      {"id": 10, "role": "boundary", "layer": "primal"},
      {"id": 11, "role": "boundary", "layer": "dual"},
      {"id": 12, "role": "boundary", "layer": "dual"},
      {"id": 13, "role": "boundary", "layer": "dual"},
      {"id": 14, "role": "boundary", "layer": "dual"}
    ],
    "slots": [
      {"primal_edge": [0, 1], "dual_edge": [8, 5]},
      {"primal_edge": [0, 2], "dual_edge": [6, 5]},
      {"primal_edge": [0, 3], "dual_edge": [7, 6]},
      {"primal_edge": [0, 4], "dual_edge": [7, 8]},
      {"primal_edge": [1, 9], "dual_edge": [5, 11]},
      {"primal_edge": [2, 9], "dual_edge": [5, 12]},
      {"primal_edge": [3, 10], "dual_edge": [7, 13]},
      {"primal_edge": [4, 10], "dual_edge": [7, 14]}
    ]
  }
])json";

struct Registration {
  std::string_view name;
  ChannelKind channel;
  CalibrationStatus status;
  std::vector<double> target;
  std::string_view description;
};

std::vector<CatalogEntry> build_catalog() {
  const std::vector<Registration> registrations = {
      {"single", ChannelKind::kUncorrelated, CalibrationStatus::kVerified,
       {0.11003, 0.09240, 0.07245, 0.04984, 0.02462, 0.01155}, "one edge between two fixed spins"},
      {"A", ChannelKind::kUncorrelated, CalibrationStatus::kVerified,
       {0.10928, 0.09196, 0.07235, 0.05004, 0.02492, 0.01174}, "star: four edges around one summed spin"},
      {"B", ChannelKind::kUncorrelated, CalibrationStatus::kVerified,
       {0.10918, 0.09189, 0.07233, 0.05009, 0.02500, 0.01179},
       "2x2 block of summed spins with eight boundary legs"},
      {"C", ChannelKind::kDepolarizing, CalibrationStatus::kVerified,
       {0.18929, 0.16025, 0.12690, 0.08844, 0.04454, 0.02121}, "one primal edge crossing one dual edge"},
      {"D", ChannelKind::kDepolarizing, CalibrationStatus::kVerified,
       {0.18886, 0.15985, 0.12656, 0.08819, 0.04440, 0.02114},
       "primal star crossed by a fixed dual plaquette"},
      {"E", ChannelKind::kDepolarizing, CalibrationStatus::kVerified,
       {0.18852, 0.15960, 0.12641, 0.08815, 0.04443, 0.02117},
       "primal star plus two diagonal dual stars"},
  };

  std::vector<ClusterSpec> clusters = parse_catalog(kBundledCatalog);
  std::vector<CatalogEntry> out;
  for (const Registration& r : registrations) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const ClusterSpec& c) { return c.name() == r.name; });
    out.push_back(CatalogEntry{*it, r.channel, r.status, r.target, std::string(r.description)});
  }
  return out;
}

bool equal_ignore_case(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

const std::vector<double>& calibration_losses() {
  static const std::vector<double> losses = {0.0, 0.1, 0.2, 0.3, 0.4, 0.45};
  return losses;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& builtin_entry(std::string_view name) {
  for (const CatalogEntry& entry : builtin_catalog()) {
    if (equal_ignore_case(entry.cluster.name(), name)) {
      return entry;
    }
  }
  throw UnknownCluster("unknown cluster '" + std::string(name) + "'");
}

ClusterSpec builtin_cluster(std::string_view name) { return builtin_entry(name).cluster; }

}  // namespace dualthresh
