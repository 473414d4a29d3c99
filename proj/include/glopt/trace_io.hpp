#pragma once

#include "glopt/trace.hpp"

#include <charconv>
#include <optional>
#include <string>

namespace glopt {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_opt(const std::optional<double>& v) {
  return v ? format_shortest(*v) : std::string();
}

// CSV schema: iter,f,gap,grad_norm,step_size,dist_sq,feval,geval with empty
// fields where f*/w* are unknown or no step was executed.
inline std::string trace_csv(const Trace& tr) {
  std::string out = "iter,f,gap,grad_norm,step_size,dist_sq,feval,geval\n";
  for (const auto& r : tr.records) {
    out += std::to_string(r.iter);
    out += ',';
    out += format_shortest(r.f);
    out += ',';
    out += format_opt(r.gap);
    out += ',';
    out += format_shortest(r.grad_norm);
    out += ',';
    out += format_opt(r.step);
    out += ',';
    out += format_opt(r.dist_sq);
    out += ',';
    out += std::to_string(r.feval);
    out += ',';
    out += std::to_string(r.geval);
    out += '\n';
  }
  return out;
}

}  // namespace glopt
