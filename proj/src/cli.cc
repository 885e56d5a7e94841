#include "dualthresh/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dualthresh/catalog.h"
#include "dualthresh/duality.h"
#include "dualthresh/errors.h"
#include "dualthresh/parallel.h"
#include "json.hpp"

namespace dualthresh {

std::string shortest_repr(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string fixed5(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", value);
  return buf;
}

OutputRecord to_record(const SweepRow& row, bool with_reference) {
  OutputRecord rec;
  rec.channel = std::string(to_string(row.result.channel));
  rec.cluster = row.result.cluster;
  rec.q = row.q;
  if (row.status == SweepStatus::kOk) {
    rec.p_c = row.result.p_c;
    rec.residual = row.result.residual;
    rec.method = std::string(to_string(row.result.method));
  } else {
    rec.method = std::string(to_string(row.status));
  }
  rec.status = std::string(to_string(row.status));
  if (with_reference) {
    rec.reference_p_c0 = reference_value(row.result.channel, row.q);
  }
  return rec;
}

std::string format_records(const std::vector<OutputRecord>& records, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::kCsv: {
      out << kCsvHeader << '\n';
      for (const OutputRecord& r : records) {
        out << r.channel << ',' << r.cluster << ',' << shortest_repr(r.q) << ',' << shortest_repr(r.p_c) << ','
            << shortest_repr(r.residual) << ',' << r.method << ','
            << (r.reference_p_c0 ? shortest_repr(*r.reference_p_c0) : "") << '\n';
      }
      break;
    }
    case OutputFormat::kJson: {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const OutputRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["channel"] = r.channel;
        obj["cluster"] = r.cluster;
        obj["q"] = r.q;
        obj["p_c"] = r.p_c;
        obj["residual"] = r.residual;
        obj["method"] = r.method;
        obj["reference_p_c0"] = r.reference_p_c0 ? nlohmann::ordered_json(*r.reference_p_c0) : nullptr;
        obj["status"] = r.status;
        doc.push_back(std::move(obj));
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::kTable: {
      char line[256];
      std::snprintf(line, sizeof(line), "%-13s %-8s %-6s %-8s %-10s %-14s %s\n", "channel", "cluster", "q", "p_c",
                    "residual", "method", "reference_p_c0");
      out << line;
      for (const OutputRecord& r : records) {
        char residual[32];
        std::snprintf(residual, sizeof(residual), "%.2e", r.residual);
        std::snprintf(line, sizeof(line), "%-13s %-8s %-6s %-8s %-10s %-14s %s\n", r.channel.c_str(),
                      r.cluster.c_str(), shortest_repr(r.q).c_str(), fixed5(r.p_c).c_str(), residual,
                      r.method.c_str(), r.reference_p_c0 ? fixed5(*r.reference_p_c0).c_str() : "-");
        out << line;
      }
      break;
    }
  }
  return out.str();
}

ClusterSpec resolve_cluster(std::string_view spec) {
  constexpr std::string_view kFilePrefix = "file:";
  if (spec.substr(0, kFilePrefix.size()) != kFilePrefix) {
    return builtin_cluster(spec);
  }
  std::string path(spec.substr(kFilePrefix.size()));
  std::string wanted;
  if (const auto hash = path.rfind('#'); hash != std::string::npos) {
    wanted = path.substr(hash + 1);
    path.resize(hash);
  }
  std::vector<ClusterSpec> clusters = load_catalog_file(path);
  if (wanted.empty()) {
    if (clusters.size() != 1) {
      throw InvalidCluster("'" + path + "' holds several clusters; select one with #name");
    }
    return clusters.front();
  }
  for (const ClusterSpec& c : clusters) {
    if (c.name() == wanted) {
      return c;
    }
  }
  throw UnknownCluster("no cluster '" + wanted + "' in '" + path + "'");
}

std::vector<double> loss_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) {
    throw DomainError("loss grid needs step > 0 and to >= from");
  }
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify

namespace {

double binary_entropy_bits(double p) {
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

// Root of H2(p) = 1 - 1/(2(1-q)) on (0, 1/2).
double entropy_condition_root(double q) {
  const double target = 1.0 - 0.5 / (1.0 - q);
  double lo = 1e-12;
  double hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (binary_entropy_bits(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

class CheckList {
 public:
  explicit CheckList(std::ostream& out) : out_(out) {}

  void report(const std::string& name, bool pass, const std::string& detail) {
    out_ << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
    failures_ += pass ? 0 : 1;
    ++count_;
  }

  // Runs a check, turning exceptions into failures.
  template <typename F>
  void run(const std::string& name, F&& body) {
    try {
      std::string detail;
      const bool pass = body(detail);
      report(name, pass, detail);
    } catch (const std::exception& e) {
      report(name, false, std::string("exception: ") + e.what());
    }
  }

  int failures() const { return failures_; }
  int count() const { return count_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
  int count_ = 0;
};

std::string fmt_e(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// Max |p_c - target| over the calibration grid; NaN when a root is missing.
double column_error(ChannelKind kind, const ClusterSpec& cluster, const std::vector<double>& target,
                    const SolveOptions& options) {
  const auto rows = sweep(kind, cluster, calibration_losses(), options);
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].status != SweepStatus::kOk) {
      return std::nan("");
    }
    worst = std::max(worst, std::abs(rows[i].result.p_c - target[i]));
  }
  return worst;
}

}  // namespace

int run_verify(std::string_view suite, std::ostream& out, const VerifyHooks& hooks) {
  const bool full = suite == "full";
  if (!full && suite != "basic") {
    out << "unknown suite '" << suite << "'\n";
    return kExitUsage;
  }
  CheckList checks(out);
  SolveOptions options;
  options.tol = 1e-10;
  options.gap.coupling = hooks.coupling;

  checks.run("hadamard involution", [](std::string& detail) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const std::array<double, 2> x2{u(rng), u(rng)};
      const auto y2 = dual_edge_factor_single(dual_edge_factor_single(x2));
      const std::array<double, 4> x4{u(rng), u(rng), u(rng), u(rng)};
      const auto y4 = dual_edge_factor_twolayer(dual_edge_factor_twolayer(x4));
      // Relative to the largest component; cancellation makes per-entry ratios meaningless.
      const double n2 = std::max(x2[0], x2[1]);
      const double n4 = *std::max_element(x4.begin(), x4.end());
      for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(y2[i] - x2[i]) / n2);
      for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(y4[i] - x4[i]) / n4);
    }
    detail = "max relative error " + fmt_e(worst);
    return worst <= 1e-14;
  });

  checks.run("pure self-dual point", [](std::string& detail) {
    const double k = pure_self_dual_point().value;
    detail = "K_c = " + shortest_repr(k);
    return std::abs(k - 0.440687) <= 1e-6 && std::abs(std::exp(-2.0 * k) - std::tanh(k)) <= 1e-10;
  });

  const ClusterSpec single = builtin_cluster("single");
  checks.run("single-edge entropy oracle", [&](std::string& detail) {
    double worst = 0.0;
    for (int i = 0; i <= 9; ++i) {
      const double q = 0.05 * i;
      const double p = solve_threshold(ChannelKind::kUncorrelated, single, q, options).p_c;
      worst = std::max(worst, std::abs(p - entropy_condition_root(q)));
    }
    detail = "max deviation " + fmt_e(worst);
    return worst <= 1e-9;
  });

  auto column = [&](const std::string& name, double tol) {
    const CatalogEntry& entry = builtin_entry(name);
    checks.run("cluster " + entry.cluster.name() + " column", [&](std::string& detail) {
      const double err = column_error(entry.channel, entry.cluster, entry.calibration_target, options);
      detail = "max deviation " + fmt_e(err) + " (tolerance " + fmt_e(tol) + ")";
      return err <= tol;
    });
  };
  column("single", 1e-4);
  column("C", 1e-4);

  if (full) {
    column("A", 2e-4);
    for (const char* name : {"B", "D", "E"}) {
      const CatalogEntry& entry = builtin_entry(name);
      if (entry.status == CalibrationStatus::kVerified) {
        column(name, 5e-4);
      } else {
        checks.report(std::string("cluster ") + name + " column", true, "skipped (unverified geometry)");
      }
    }
    checks.run("parallel determinism", [&](std::string& detail) {
      const ClusterSpec a = builtin_cluster("A");
      std::vector<std::vector<double>> runs;
      for (unsigned w : {1U, 2U, std::max(1U, default_worker_count())}) {
        SolveOptions opt = options;
        opt.gap.workers = w;
        std::vector<double> values;
        for (const SweepRow& row : sweep(ChannelKind::kUncorrelated, a, calibration_losses(), opt)) {
          values.push_back(row.result.p_c);
        }
        runs.push_back(values);
      }
      const bool same = runs[0] == runs[1] && runs[0] == runs[2];
      detail = same ? "identical across 1, 2 and max workers" : "results differ across worker counts";
      return same;
    });
  }

  out << (checks.failures() == 0 ? "all " : "") << checks.count() - checks.failures() << "/" << checks.count()
      << " checks passed\n";
  return checks.failures() == 0 ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// command line

namespace {

struct SolveFlags {
  std::string channel;
  std::string cluster;
  double loss = 0.0;
  double tol = 1e-7;
  std::optional<std::uint64_t> mc_samples;
  std::uint64_t seed = 0;
  std::string format = "table";
  bool with_reference = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags, bool with_loss) {
  cmd->add_option("--channel", flags.channel, "noise channel (default: from the cluster's layer count)")
      ->check(CLI::IsMember({"uncorrelated", "depolarizing"}));
  cmd->add_option("--cluster", flags.cluster, "single|A|B|C|D|E|file:<path>[#name]")->required();
  if (with_loss) {
    cmd->add_option("--loss", flags.loss, "qubit loss rate q")->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--tol", flags.tol, "bracket width tolerance on p")->check(CLI::Range(1e-10, 1.0));
  cmd->add_option("--mc-samples", flags.mc_samples, "force Monte Carlo gaps with N samples")
      ->check(CLI::Range(std::uint64_t{1000}, std::numeric_limits<std::uint64_t>::max()));
  cmd->add_option("--seed", flags.seed, "Monte Carlo seed");
  cmd->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_flag("--with-reference", flags.with_reference, "attach published comparison thresholds");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  return OutputFormat::kTable;
}

SolveOptions solve_options(const SolveFlags& flags) {
  SolveOptions opt;
  opt.tol = flags.tol;
  opt.gap.seed = flags.seed;
  if (flags.mc_samples) {
    opt.gap.policy = ExactnessPolicy::kMonteCarlo;
    opt.gap.mc_samples = *flags.mc_samples;
  } else {
    opt.gap.policy = ExactnessPolicy::kAuto;
  }
  return opt;
}

int solve_rows(const SolveFlags& flags, const std::vector<double>& losses, std::ostream& out, std::ostream& err) {
  const ClusterSpec cluster = resolve_cluster(flags.cluster);
  const ChannelKind kind = flags.channel.empty()
                               ? (cluster.layers() == 1 ? ChannelKind::kUncorrelated : ChannelKind::kDepolarizing)
                               : *parse_channel_kind(flags.channel);
  if (cluster.layers() != layer_count(kind)) {
    err << "error: cluster '" << cluster.name() << "' has " << cluster.layers() << " layer(s); channel "
        << to_string(kind) << " needs " << layer_count(kind) << "\n";
    return kExitBadCluster;
  }
  const auto rows = sweep(kind, cluster, losses, solve_options(flags));
  std::vector<OutputRecord> records;
  int code = kExitOk;
  for (const SweepRow& row : rows) {
    records.push_back(to_record(row, flags.with_reference));
    if (row.status != SweepStatus::kOk) {
      err << "q=" << shortest_repr(row.q) << ": " << row.message << "\n";
      code = kExitNoThreshold;
    }
  }
  out << format_records(records, parse_format(flags.format));
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal surface-code thresholds under qubit loss from cluster duality"};
  app.name("dualthresh");
  app.require_subcommand(1);

  SolveFlags threshold_flags;
  CLI::App* threshold = app.add_subcommand("threshold", "solve p_c at one loss rate");
  add_solve_flags(threshold, threshold_flags, true);

  SolveFlags sweep_flags;
  double q_from = 0.0;
  double q_to = 0.45;
  double q_step = 0.05;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "solve p_c over a grid of loss rates");
  add_solve_flags(sweep_cmd, sweep_flags, false);
  sweep_cmd->add_option("--q-from", q_from, "first loss rate");
  sweep_cmd->add_option("--q-to", q_to, "last loss rate (inclusive)");
  sweep_cmd->add_option("--q-step", q_step, "loss rate step");

  std::string suite = "basic";
  CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_option("--suite", suite, "basic|full")->check(CLI::IsMember({"basic", "full"}));

  CLI::App* clusters = app.add_subcommand("clusters", "inspect registered clusters");
  clusters->require_subcommand(1);
  clusters->add_subcommand("list", "list registered clusters");
  std::string show_name;
  CLI::App* show = clusters->add_subcommand("show", "print one cluster in catalog format");
  show->add_option("name", show_name, "cluster name or file:<path>")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (threshold->parsed()) {
      return solve_rows(threshold_flags, {threshold_flags.loss}, out, err);
    }
    if (sweep_cmd->parsed()) {
      return solve_rows(sweep_flags, loss_grid(q_from, q_to, q_step), out, err);
    }
    if (verify->parsed()) {
      return run_verify(suite, out);
    }
    if (clusters->parsed()) {
      if (show->parsed()) {
        out << serialize_cluster(resolve_cluster(show_name)) << "\n";
        return kExitOk;
      }
      char line[256];
      std::snprintf(line, sizeof(line), "%-8s %-13s %6s %6s %9s  %s\n", "name", "channel", "layers", "slots",
                    "internal", "status");
      out << line;
      for (const CatalogEntry& entry : builtin_catalog()) {
        std::snprintf(line, sizeof(line), "%-8s %-13s %6d %6zu %9d  %s\n", entry.cluster.name().c_str(),
                      std::string(to_string(entry.channel)).c_str(), entry.cluster.layers(),
                      entry.cluster.slot_count(), entry.cluster.internal_count(),
                      std::string(to_string(entry.status)).c_str());
        out << line;
      }
      return kExitOk;
    }
  } catch (const UnknownCluster& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadCluster;
  } catch (const InvalidCluster& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadCluster;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dualthresh
