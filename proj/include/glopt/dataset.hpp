#pragma once

#include "glopt/core.hpp"
#include "glopt/problems.hpp"
#include "glopt/rng.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glopt {

// Sparse row-major dataset. Indices are 0-based and strictly increasing
// within a row; labels are kept verbatim (targets for regression, +-1 for
// classification after coercion in to_logistic).
struct Dataset {
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> labels;
  int dim = 0;

  std::size_t size() const { return rows.size(); }

  Mat dense() const {
    Mat x = Mat::Zero(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, v] : rows[i]) x(static_cast<Eigen::Index>(i), j) = v;
    return x;
  }

  Vec label_vec() const {
    Vec y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
    return y;
  }
};

namespace detail {

inline double parse_number(std::string_view tok, int line, const char* what) {
  std::string_view body = tok;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);  // from_chars takes no '+'
  double v = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || res.ec != std::errc{} || res.ptr != body.data() + body.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

inline int parse_index(std::string_view tok, int line) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError(line, "bad feature index '" + std::string(tok) + "'");
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// LIBSVM text: one row per non-empty line, "label idx:val idx:val ...",
// 1-based strictly increasing indices. Dimension defaults to the largest
// index seen.
inline Dataset parse_libsvm(std::string_view text, std::optional<int> dim_override = std::nullopt) {
  Dataset ds;
  int max_index = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;

    ds.labels.push_back(detail::parse_number(toks[0], line_no, "label"));
    std::vector<std::pair<int, double>> row;
    int prev_index = 0;
    for (std::size_t k = 1; k < toks.size(); ++k) {
      const auto colon = toks[k].find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "expected idx:val, got '" + std::string(toks[k]) + "'");
      const int idx = detail::parse_index(toks[k].substr(0, colon), line_no);
      const double val = detail::parse_number(toks[k].substr(colon + 1), line_no, "feature value");
      if (idx < 1) throw ParseError(line_no, "feature index must be >= 1");
      if (idx <= prev_index) throw ParseError(line_no, "feature indices must be increasing");
      prev_index = idx;
      row.emplace_back(idx - 1, val);
    }
    max_index = std::max(max_index, prev_index);
    ds.rows.push_back(std::move(row));
  }

  ds.dim = dim_override.value_or(max_index);
  if (max_index > ds.dim)
    throw ParseError(0, "feature index exceeds declared dimension");
  return ds;
}

inline std::string write_libsvm(const Dataset& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    out += detail::format_double(ds.labels[i]);
    for (const auto& [j, v] : ds.rows[i]) {
      out += ' ';
      out += std::to_string(j + 1);
      out += ':';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

// Labels are coerced to {-1,+1} by sign; a zero label is rejected.
inline LogisticProblem to_logistic(const Dataset& ds, double lambda = 0.0) {
  Vec y(static_cast<Eigen::Index>(ds.labels.size()));
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (ds.labels[i] == 0.0) throw InputError("to_logistic: zero label has no sign");
    y[static_cast<Eigen::Index>(i)] = ds.labels[i] > 0.0 ? 1.0 : -1.0;
  }
  return LogisticProblem(ds.dense(), std::move(y), lambda);
}

inline LeastSquaresProblem to_least_squares(const Dataset& ds) {
  return LeastSquaresProblem(ds.dense(), ds.label_vec());
}

// Linearly separable binary data: plants a unit direction u and shifts any
// sample violating y <x, u> >= margin back onto the margin.
inline Dataset gen_separable_logistic(int n, int d, double margin, std::uint64_t seed) {
  if (n < 1 || d < 1) throw InputError("gen_separable_logistic: need n, d >= 1");
  if (!(margin > 0.0)) throw InputError("gen_separable_logistic: margin must be > 0");
  SplitMix64 rng(seed);

  Vec u(d);
  for (int j = 0; j < d; ++j) u[j] = rng.normal();
  u.normalize();

  Dataset ds;
  ds.dim = d;
  for (int i = 0; i < n; ++i) {
    const double y = rng.below(2) == 0 ? 1.0 : -1.0;
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    const double p = y * x.dot(u);
    if (p < margin) x += (margin - p) * y * u;
    std::vector<std::pair<int, double>> row;
    row.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) row.emplace_back(j, x[j]);
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(y);
  }
  return ds;
}

// Planted direction of the most recent gen_separable_logistic draw is
// reproducible from the seed alone.
inline Vec separable_plant_direction(int d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vec u(d);
  for (int j = 0; j < d; ++j) u[j] = rng.normal();
  u.normalize();
  return u;
}

// Realizable least squares: t = X w_true exactly, X resampled until
// lambda_min(X^T X) > 1e-6.
inline std::pair<Dataset, Vec> gen_realizable_ls(int n, int d, std::uint64_t seed) {
  if (d < 1 || n < d) throw InputError("gen_realizable_ls: need n >= d >= 1");
  SplitMix64 rng(seed);

  Vec w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = rng.normal();

  Mat x(n, d);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
    if (sym_eig_range(gram(x)).first > 1e-6) break;
    if (attempt == 999) throw SearchFailure("gen_realizable_ls: could not draw full-rank X");
  }

  const Vec t = x * w_true;
  Dataset ds;
  ds.dim = d;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> row;
    row.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) row.emplace_back(j, x(i, j));
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(t[i]);
  }
  return {std::move(ds), w_true};
}

}  // namespace glopt
