#ifndef DUALTHRESH_PARALLEL_H
#define DUALTHRESH_PARALLEL_H

#include <cstddef>
#include <functional>
#include <span>

namespace dualthresh {

// THRESHOLD_WORKERS when set to a positive integer, else the hardware
// concurrency (at least 1).
unsigned default_worker_count();

// Runs body(i) for i in [0, n) on up to `workers` threads (0 = default).
// Exceptions are rethrown on the caller; the one from the lowest index wins.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

// Compensated sum in index order; the result depends only on the inputs.
double ordered_sum(std::span<const double> values);

}  // namespace dualthresh

#endif  // DUALTHRESH_PARALLEL_H
