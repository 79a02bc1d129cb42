#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lqcs/matrix.hpp"

namespace lqcs {
namespace csv {

/// Full-precision decimal rendering: 17 significant digits round-trip
/// any double exactly.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Matrix file layout: a header line "m,n" followed by m lines of n
/// comma-separated decimal floats.
inline void write_matrix(std::ostream& os, const Matrix& A) {
  os << A.rows << ',' << A.cols << '\n';
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) {
      if (j) os << ',';
      os << fmt(A(i, j));
    }
    os << '\n';
  }
}

inline void write_matrix(const std::string& path, const Matrix& A) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open for writing: " + path);
  write_matrix(f, A);
}

namespace detail {
inline std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  const char* p = line.c_str();
  char* end = nullptr;
  while (*p) {
    const double v = std::strtod(p, &end);
    if (end == p) throw DomainError("CSV parse error in line: " + line);
    out.push_back(v);
    p = end;
    while (*p == ',' || *p == ' ' || *p == '\t' || *p == '\r') ++p;
  }
  return out;
}
}  // namespace detail

inline Matrix read_matrix(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("CSV: empty input");
  const std::vector<double> dims = detail::parse_row(line);
  if (dims.size() != 2) throw DomainError("CSV: header must be 'm,n'");
  const int m = static_cast<int>(dims[0]), n = static_cast<int>(dims[1]);
  if (m < 1 || n < 1 || dims[0] != m || dims[1] != n)
    throw DomainError("CSV: bad dimensions in header");
  Matrix A(m, n);
  for (int i = 0; i < m; ++i) {
    if (!std::getline(is, line)) throw DomainError("CSV: fewer rows than header says");
    const std::vector<double> row = detail::parse_row(line);
    if (static_cast<int>(row.size()) != n)
      throw DomainError("CSV: row length disagrees with header");
    for (int j = 0; j < n; ++j) A(i, j) = row[j];
  }
  return A;
}

inline Matrix read_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open: " + path);
  return read_matrix(f);
}

/// Vectors are stored as single-column matrices.
inline void write_vector(const std::string& path, const Vector& x) {
  Matrix M(static_cast<int>(x.size()), 1);
  for (size_t i = 0; i < x.size(); ++i) M(static_cast<int>(i), 0) = x[i];
  write_matrix(path, M);
}

/// Reads a vector from a matrix file of any shape, flattened row-major.
inline Vector read_vector(const std::string& path) {
  const Matrix M = read_matrix(path);
  return M.data;
}

}  // namespace csv
}  // namespace lqcs
