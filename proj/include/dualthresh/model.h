#ifndef DUALTHRESH_MODEL_H
#define DUALTHRESH_MODEL_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace dualthresh {

enum class ChannelKind { kUncorrelated, kDepolarizing };

std::string_view to_string(ChannelKind kind);
std::optional<ChannelKind> parse_channel_kind(std::string_view text);

// Number of coupled Ising layers in the spin-glass image of the channel.
int layer_count(ChannelKind kind);

// Noise channel with physical error rate p and qubit loss rate q.
struct Channel {
  ChannelKind kind = ChannelKind::kUncorrelated;
  double p = 0.0;
  double q = 0.0;
};

// Throws DomainError unless 0 <= p, q <= 1.
Channel make_channel(ChannelKind kind, double p, double q);

// Dimensionless coupling K on the Nishimori line.
struct Coupling {
  double value = 0.0;
};

inline constexpr double kMinErrorRate = 1e-9;

// Uncorrelated: exp(2K) = (1-p)/p.  Depolarizing: exp(4K) = 3(1-p)/p.
// Throws DomainError for p outside [1e-9, 1/2] or [1e-9, 3/4] respectively.
Coupling nishimori_coupling(const Channel& channel);

// Quenched sign(s) of one edge or crossing slot.  Zero encodes a lost qubit.
// Single-layer disorder keeps dual == 0 and is distinguished by context.
struct EdgeDisorder {
  std::int8_t primal = 1;
  std::int8_t dual = 0;

  static EdgeDisorder single(int tau);
  // Rejects half-diluted pairs such as (0, 1).
  static EdgeDisorder pair(int tau, int tau_dual);

  friend bool operator==(const EdgeDisorder&, const EdgeDisorder&) = default;
};

class DisorderDistribution {
 public:
  // Validates nonnegativity, distinct support, and unit total mass (1e-15).
  DisorderDistribution(int layers, std::vector<EdgeDisorder> support, std::vector<double> probs);

  int layers() const { return layers_; }
  const std::vector<EdgeDisorder>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return support_.size(); }

  // Probability of a support entry; 0 when absent.
  double probability(const EdgeDisorder& value) const;

 private:
  int layers_;
  std::vector<EdgeDisorder> support_;
  std::vector<double> probs_;
};

// Diluted single-edge (uncorrelated) or crossing-slot (depolarizing)
// distribution.  Support order is fixed: unflipped, flipped variant(s), lost.
DisorderDistribution disorder_distribution(const Channel& channel);

// Effective flip rate of a fused edge made of n independent edges:
// 1 - 2 p_n = (1 - 2p)^n.
double superedge_error_rate(double p, int n);

}  // namespace dualthresh

#endif  // DUALTHRESH_MODEL_H
