#include "dualthresh/model.h"

#include <cmath>
#include <string>

#include "dualthresh/errors.h"

namespace dualthresh {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kUncorrelated:
      return "uncorrelated";
    case ChannelKind::kDepolarizing:
      return "depolarizing";
  }
  return "unknown";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
  if (text == "uncorrelated") {
    return ChannelKind::kUncorrelated;
  }
  if (text == "depolarizing") {
    return ChannelKind::kDepolarizing;
  }
  return std::nullopt;
}

int layer_count(ChannelKind kind) { return kind == ChannelKind::kUncorrelated ? 1 : 2; }

Channel make_channel(ChannelKind kind, double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("error rate p must lie in [0, 1], got " + std::to_string(p));
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("loss rate q must lie in [0, 1], got " + std::to_string(q));
  }
  return Channel{kind, p, q};
}

Coupling nishimori_coupling(const Channel& channel) {
  const double p = channel.p;
  if (channel.kind == ChannelKind::kUncorrelated) {
    if (!(p >= kMinErrorRate && p <= 0.5)) {
      throw DomainError("uncorrelated Nishimori coupling needs p in [1e-9, 1/2], got " +
                        std::to_string(p));
    }
    return Coupling{0.5 * std::log((1.0 - p) / p)};
  }
  if (!(p >= kMinErrorRate && p <= 0.75)) {
    throw DomainError("depolarizing Nishimori coupling needs p in [1e-9, 3/4], got " +
                      std::to_string(p));
  }
  return Coupling{0.25 * std::log(3.0 * (1.0 - p) / p)};
}

EdgeDisorder EdgeDisorder::single(int tau) {
  if (tau < -1 || tau > 1) {
    throw DomainError("edge sign must be -1, 0 or +1");
  }
  return EdgeDisorder{static_cast<std::int8_t>(tau), 0};
}

EdgeDisorder EdgeDisorder::pair(int tau, int tau_dual) {
  if (tau < -1 || tau > 1 || tau_dual < -1 || tau_dual > 1) {
    throw DomainError("edge signs must be -1, 0 or +1");
  }
  if ((tau == 0) != (tau_dual == 0)) {
    throw DomainError("a lost qubit dilutes both layers at once");
  }
  return EdgeDisorder{static_cast<std::int8_t>(tau), static_cast<std::int8_t>(tau_dual)};
}

DisorderDistribution::DisorderDistribution(int layers, std::vector<EdgeDisorder> support,
                                           std::vector<double> probs)
    : layers_(layers), support_(std::move(support)), probs_(std::move(probs)) {
  if (layers_ != 1 && layers_ != 2) {
    throw DomainError("disorder distribution must have 1 or 2 layers");
  }
  if (support_.size() != probs_.size() || support_.empty()) {
    throw DomainError("support and probabilities must be nonempty and of equal length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!(probs_[i] >= 0.0)) {
      throw DomainError("probabilities must be nonnegative");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (support_[j] == support_[i]) {
        throw DomainError("support entries must be distinct");
      }
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-15) {
    throw DomainError("probabilities must sum to 1");
  }
}

double DisorderDistribution::probability(const EdgeDisorder& value) const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] == value) {
      return probs_[i];
    }
  }
  return 0.0;
}

DisorderDistribution disorder_distribution(const Channel& channel) {
  const Channel c = make_channel(channel.kind, channel.p, channel.q);
  const double kept = 1.0 - c.q;
  if (c.kind == ChannelKind::kUncorrelated) {
    return DisorderDistribution(
        1, {EdgeDisorder::single(1), EdgeDisorder::single(-1), EdgeDisorder::single(0)},
        {kept * (1.0 - c.p), kept * c.p, c.q});
  }
  const double flip = kept * c.p / 3.0;
  return DisorderDistribution(2,
                              {EdgeDisorder::pair(1, 1), EdgeDisorder::pair(1, -1),
                               EdgeDisorder::pair(-1, 1), EdgeDisorder::pair(-1, -1),
                               EdgeDisorder::pair(0, 0)},
                              {kept * (1.0 - c.p), flip, flip, flip, c.q});
}

double superedge_error_rate(double p, int n) {
  if (n < 1) {
    throw DomainError("superedge must fuse at least one edge");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("error rate p must lie in [0, 1]");
  }
  double bias = 1.0;
  for (int i = 0; i < n; ++i) {
    bias *= 1.0 - 2.0 * p;
  }
  return 0.5 * (1.0 - bias);
}

}  // namespace dualthresh
