#ifndef DUALTHRESH_ERRORS_H
#define DUALTHRESH_ERRORS_H

#include <stdexcept>

namespace dualthresh {

// Rate or coupling outside the physically admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnknownCluster : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed cluster geometry or catalog text.
class InvalidCluster : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveDual : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooManyTerms : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoThreshold : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dualthresh

#endif  // DUALTHRESH_ERRORS_H
