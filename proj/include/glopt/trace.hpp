#pragma once

#include "glopt/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glopt {

enum class StopReason {
  GapTarget,
  GradTarget,
  DistTarget,
  MaxIters,
  SearchFailure,
  UnboundedDirection,
};

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::GapTarget: return "gap-target";
    case StopReason::GradTarget: return "grad-target";
    case StopReason::DistTarget: return "dist-target";
    case StopReason::MaxIters: return "max-iters";
    case StopReason::SearchFailure: return "search-failure";
    case StopReason::UnboundedDirection: return "unbounded-direction";
  }
  return "unknown";
}

struct StopRule {
  std::optional<double> gap_target;      // f(w) - f* <= target; needs known f*
  std::optional<double> dist_sq_target;  // ||w - w*||^2 <= target; needs known w*
  std::optional<double> grad_target;     // ||grad f(w)|| <= target
  int max_iters = 1000;

  void validate() const {
    if (max_iters < 0) throw InputError("StopRule: max_iters must be >= 0");
    for (const auto& t : {gap_target, dist_sq_target, grad_target})
      if (t && !(*t > 0.0)) throw InputError("StopRule: targets must be > 0");
  }
};

// One row per visited iterate. `step` is the step size that produced this
// iterate (absent at t = 0 and on iterations that executed no step);
// feval/geval are cumulative counts including all line-search trials spent
// reaching this iterate.
struct TraceRecord {
  int iter = 0;
  double f = 0.0;
  std::optional<double> gap;
  double grad_norm = 0.0;
  std::optional<double> step;
  std::optional<double> dist_sq;
  long feval = 0;
  long geval = 0;
};

struct Trace {
  std::vector<TraceRecord> records;
  Vec final_w;
  StopReason reason = StopReason::MaxIters;

  int iterations() const { return records.empty() ? 0 : records.back().iter; }

  double final_gap() const {
    if (records.empty() || !records.back().gap) return std::nan("");
    return *records.back().gap;
  }

  // First iterate whose optimality gap is at or below eps.
  std::optional<int> first_gap_below(double eps) const {
    for (const auto& r : records)
      if (r.gap && *r.gap <= eps) return r.iter;
    return std::nullopt;
  }
};

}  // namespace glopt
