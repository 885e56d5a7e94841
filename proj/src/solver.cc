#include "dualthresh/solver.h"

#include <cmath>
#include <limits>
#include <string>

#include "dualthresh/errors.h"

namespace dualthresh {
namespace {

bool is_single_edge(const ClusterSpec& cluster) {
  return cluster.layers() == 1 && cluster.slot_count() == 1 && cluster.internal_count() == 0;
}

class GapFunction {
 public:
  GapFunction(ChannelKind kind, const ClusterSpec& cluster, double q, const GapOptions& options)
      : kind_(kind), cluster_(cluster), q_(q), options_(options) {}

  GapEvaluation operator()(double p) {
    ++calls_;
    return gap(make_channel(kind_, p, q_), cluster_, options_);
  }

  int calls() const { return calls_; }

 private:
  ChannelKind kind_;
  const ClusterSpec& cluster_;
  double q_;
  const GapOptions& options_;
  int calls_ = 0;
};

bool opposite(double a, double b) { return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0); }

// Brent's method on a sign-changing bracket; stops at bracket width <= tol.
void refine_brent(GapFunction& f, double tol, double lo, double flo, double hi, double fhi, ThresholdResult& out) {
  double a = lo, b = hi, c = hi;
  double fa = flo, fb = fhi, fc = fhi;
  double d = b - a, e = d;
  constexpr int kMaxIterations = 200;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (!opposite(fb, fc) && fb != 0.0) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0 || std::abs(xm) <= tol1) {
      break;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      }
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b).delta;
  }

  if (fb == 0.0) {
    out.p_c = b;
    out.p_lo = b - 0.5 * tol;
    out.p_hi = b + 0.5 * tol;
    out.residual = 0.0;
    return;
  }
  out.p_lo = std::min(b, c);
  out.p_hi = std::max(b, c);
  double root = b - fb * (c - b) / (fc - fb);
  if (!(root > out.p_lo && root < out.p_hi)) {
    root = 0.5 * (out.p_lo + out.p_hi);
  }
  out.p_c = root;
  out.residual = std::abs(f(root).delta);
}

void refine_bisection(GapFunction& f, double tol, double lo, double flo, double hi, ThresholdResult& out) {
  while (true) {
    const double mid = 0.5 * (lo + hi);
    const GapEvaluation ev = f(mid);
    out.std_error = ev.std_error;
    if (std::abs(ev.delta) < 2.0 * ev.std_error || ev.delta == 0.0 || hi - lo <= tol) {
      out.p_c = mid;
      out.p_lo = lo;
      out.p_hi = hi;
      out.residual = std::abs(ev.delta);
      out.statistically_limited = std::abs(ev.delta) < 2.0 * ev.std_error && hi - lo > tol;
      return;
    }
    if (opposite(ev.delta, flo)) {
      hi = mid;
    } else {
      lo = mid;
      flo = ev.delta;
    }
  }
}

}  // namespace

double search_floor() { return 1e-6; }

double search_ceiling(ChannelKind kind) {
  return (kind == ChannelKind::kUncorrelated ? 0.5 : 0.75) - 1e-6;
}

ThresholdResult solve_threshold(ChannelKind kind, const ClusterSpec& cluster, double q,
                                const SolveOptions& options) {
  if (!(options.tol >= 1e-10)) {
    throw DomainError("solver tolerance must be at least 1e-10");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("loss rate q must lie in [0, 1]");
  }
  if (kind == ChannelKind::kUncorrelated && is_single_edge(cluster) && 1.0 - 0.5 / (1.0 - q) <= 0.0) {
    throw NoThreshold("no threshold: single-edge entropy target 1 - 1/(2(1-q)) <= 0 at q=" + std::to_string(q));
  }

  ThresholdResult out;
  out.channel = kind;
  out.cluster = cluster.name();
  out.q = q;

  GapFunction f(kind, cluster, q, options.gap);
  const double lo = search_floor();
  const double hi = search_ceiling(kind);
  const GapEvaluation at_lo = f(lo);
  const GapEvaluation at_hi = f(hi);
  out.method = at_lo.method;
  out.std_error = std::max(at_lo.std_error, at_hi.std_error);

  if (at_lo.delta == 0.0 || at_hi.delta == 0.0) {
    const double root = at_lo.delta == 0.0 ? lo : hi;
    out.p_c = root;
    out.p_lo = root - 0.5 * options.tol;
    out.p_hi = root + 0.5 * options.tol;
    out.iterations = f.calls();
    return out;
  }
  if (!opposite(at_lo.delta, at_hi.delta)) {
    throw NoSignChange("gap keeps one sign on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] for cluster '" + cluster.name() + "' at q=" + std::to_string(q));
  }

  if (out.method == GapMethod::kExact) {
    refine_brent(f, options.tol, lo, at_lo.delta, hi, at_hi.delta, out);
  } else {
    refine_bisection(f, options.tol, lo, at_lo.delta, hi, out);
  }
  out.iterations = f.calls();
  return out;
}

std::string_view to_string(SweepStatus status) {
  switch (status) {
    case SweepStatus::kOk:
      return "ok";
    case SweepStatus::kNoSignChange:
      return "no-sign-change";
    case SweepStatus::kNoThreshold:
      return "no-threshold";
    case SweepStatus::kFailed:
      return "failed";
  }
  return "failed";
}

std::vector<SweepRow> sweep(ChannelKind kind, const ClusterSpec& cluster, std::span<const double> losses,
                            const SolveOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(losses.size());
  for (double q : losses) {
    SweepRow row;
    row.q = q;
    row.result.channel = kind;
    row.result.cluster = cluster.name();
    row.result.q = q;
    try {
      row.result = solve_threshold(kind, cluster, q, options);
    } catch (const NoThreshold& e) {
      row.status = SweepStatus::kNoThreshold;
      row.message = e.what();
    } catch (const NoSignChange& e) {
      row.status = SweepStatus::kNoSignChange;
      row.message = e.what();
    } catch (const std::runtime_error& e) {
      row.status = SweepStatus::kFailed;
      row.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const ReferenceThresholds& reference_thresholds() {
  static const ReferenceThresholds table{
      {0.0, 0.1, 0.2, 0.3, 0.4, 0.45},
      {0.10486, 0.08816, 0.06997, 0.04836, 0.02561, 0.00757},
      0.1065,
      0.164,
  };
  return table;
}

std::optional<double> reference_value(ChannelKind kind, double q) {
  const ReferenceThresholds& ref = reference_thresholds();
  if (kind == ChannelKind::kDepolarizing) {
    if (std::abs(q) < 1e-12) {
      return ref.depolarizing_decoder_lossless;
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < ref.losses.size(); ++i) {
    if (std::abs(ref.losses[i] - q) < 1e-9) {
      return ref.matching[i];
    }
  }
  return std::nullopt;
}

}  // namespace dualthresh
