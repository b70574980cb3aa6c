#pragma once

#include "adares/design_matrix.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adares {

/// A design matrix with one target (or label) per row.
struct Dataset {
  std::shared_ptr<const DesignMatrix> A;
  Vector b;

  Index sample_count() const { return A ? A->rows() : 0; }
  Index feature_count() const { return A ? A->cols() : 0; }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

// Reads lines through zlib so ".gz" files and plain text share one path.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw std::runtime_error("cannot open " + path);
  }
  ~LineReader() {
    if (file_ != nullptr) gzclose(file_);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line) {
    line.clear();
    char buf[1 << 16];
    while (gzgets(file_, buf, sizeof buf) != nullptr) {
      line.append(buf);
      if (!line.empty() && line.back() == '\n') return true;
    }
    int err = 0;
    gzerror(file_, &err);
    if (err != Z_OK && err != Z_STREAM_END) throw std::runtime_error("read error while decompressing");
    return !line.empty();
  }

 private:
  gzFile file_;
};

}  // namespace detail

/// Loads "<label> <idx>:<val> ..." text with 1-based ascending indices.
/// n = max(largest index seen, n_hint). Blank lines and '#' comments are skipped.
inline Dataset load_libsvm(const std::string& path, std::optional<Index> n_hint = std::nullopt) {
  detail::LineReader reader(path);
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> labels;
  Index max_index = 0;
  std::string raw;
  std::size_t lineno = 0;
  while (reader.next(raw)) {
    ++lineno;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto row = static_cast<Index>(labels.size());

    std::size_t pos = line.find_first_of(" \t");
    double label = 0.0;
    if (!detail::parse_double(line.substr(0, pos), label))
      throw ParseError(lineno, "bad label '" + std::string(line.substr(0, pos)) + "'");
    labels.push_back(label);

    Index prev = 0;
    while (pos != std::string_view::npos) {
      const std::size_t start = line.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      pos = line.find_first_of(" \t", start);
      const std::string_view tok = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
      const std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos) throw ParseError(lineno, "expected idx:val, got '" + std::string(tok) + "'");
      long long idx = 0;
      const auto [iptr, iec] = std::from_chars(tok.data(), tok.data() + colon, idx);
      if (iec != std::errc() || iptr != tok.data() + colon || idx < 1)
        throw ParseError(lineno, "bad feature index in '" + std::string(tok) + "'");
      if (idx == prev) throw ParseError(lineno, "duplicate feature index " + std::to_string(idx));
      if (idx < prev) throw ParseError(lineno, "feature indices not ascending at " + std::to_string(idx));
      double val = 0.0;
      if (!detail::parse_double(tok.substr(colon + 1), val))
        throw ParseError(lineno, "bad feature value in '" + std::string(tok) + "'");
      prev = static_cast<Index>(idx);
      max_index = std::max(max_index, prev);
      triplets.emplace_back(row, prev - 1, val);
    }
  }
  const Index n = std::max(max_index, n_hint.value_or(0));
  SparseRowMatrix a(static_cast<Index>(labels.size()), n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Dataset ds;
  ds.A = std::make_shared<const DesignMatrix>(std::move(a));
  ds.b = Eigen::Map<const Vector>(labels.data(), static_cast<Index>(labels.size()));
  return ds;
}

/// Writes a dataset in LIBSVM text form with round-trip exact values.
/// Stored zeros of a sparse matrix are written; zeros of a dense matrix are not.
inline void write_libsvm(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  auto put = [&](double v) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
  };
  const SparseRowMatrix a = ds.A->is_sparse() ? *ds.A->sparse() : ds.A->dense()->sparseView();
  for (Index j = 0; j < a.rows(); ++j) {
    put(ds.b[j]);
    for (SparseRowMatrix::InnerIterator it(a, j); it; ++it) {
      out << ' ' << (it.index() + 1) << ':';
      put(it.value());
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace adares
