#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace glopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Bad caller input: dimension mismatches, non-finite values, invalid
// configuration, violated preconditions.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The objective cannot answer the request (e.g. component gradients of a
// non-finite-sum function).
struct UnsupportedCapability : std::logic_error {
  using std::logic_error::logic_error;
};

// A line search exhausted its trial budget without meeting its acceptance
// condition.
struct SearchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bracketing line optimization never closed its bracket: the objective
// keeps decreasing along the ray.
struct UnboundedDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

inline bool all_finite(const Vec& v) {
  return v.allFinite();
}

inline void require_finite(const Vec& v, const char* name) {
  if (!all_finite(v)) throw InputError(std::string(name) + " has non-finite entries");
}

inline void require_dim(const Vec& v, Eigen::Index d, const char* name) {
  if (v.size() != d)
    throw InputError(std::string(name) + " has length " + std::to_string(v.size()) +
                     ", expected " + std::to_string(d));
}

}  // namespace glopt
