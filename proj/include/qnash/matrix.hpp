// Copyright 2026 The qnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/scalar.hpp"

namespace qnash {

// Indices are 0-based everywhere inside the library. The matrix file format,
// CLI output and documentation are 1-based; `to_external`/`from_external`
// are the only conversion points.
using Index = std::size_t;

inline std::size_t to_external(Index i) { return i + 1; }
inline Index from_external(std::size_t i) {
  if (i == 0) throw UsageError("1-based index must be positive");
  return i - 1;
}

struct Cell {
  Index row = 0;
  Index col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Dense row-major payoff matrix for the row (maximizing) player.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw UsageError("matrix dimensions must be positive");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw UsageError("matrix dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw UsageError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const T& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(Index i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix submatrix(std::span<const Index> row_ids, std::span<const Index> col_ids) const {
    Matrix out(row_ids.size(), col_ids.size());
    for (std::size_t a = 0; a < row_ids.size(); ++a)
      for (std::size_t b = 0; b < col_ids.size(); ++b) out(a, b) = (*this)(row_ids[a], col_ids[b]);
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& v : out.data_) v = -v;
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& in) {
  Matrix<To> out(in.rows(), in.cols());
  for (Index i = 0; i < in.rows(); ++i)
    for (Index j = 0; j < in.cols(); ++j) {
      if constexpr (std::is_same_v<To, From>) {
        out(i, j) = in(i, j);
      } else if constexpr (std::is_same_v<From, Rational>) {
        out(i, j) = ScalarOps<To>::from_rational(in(i, j));
      } else {
        out(i, j) = To(in(i, j));
      }
    }
  return out;
}

// Text format: first line "rows cols", then one line per row of
// whitespace-separated entries ("p/q" or decimal). Every entry is parsed
// exactly; float mode converts afterwards.
inline Matrix<Rational> read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty matrix file");
  std::istringstream header(line);
  long long rows = 0, cols = 0;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows <= 0 || cols <= 0)
    throw ParseError("line " + std::to_string(line_no) + ": expected positive \"n_rows n_cols\"");
  Matrix<Rational> m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (Index i = 0; i < m.rows(); ++i) {
    if (!next_line())
      throw ParseError("expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
    std::istringstream row(line);
    std::string token;
    Index j = 0;
    while (row >> token) {
      if (j >= m.cols())
        throw ParseError("line " + std::to_string(line_no) + ": too many entries");
      try {
        m(i, j) = parse_rational(token);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
      ++j;
    }
    if (j != m.cols())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " entries, got " + std::to_string(j));
  }
  if (next_line()) throw ParseError("line " + std::to_string(line_no) + ": trailing content");
  return m;
}

inline Matrix<Rational> parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

template <class T>
void write_matrix(std::ostream& out, const Matrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << ScalarOps<T>::format(m(i, j));
    }
    out << '\n';
  }
}

template <class T>
std::string format_matrix(const Matrix<T>& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

}  // namespace qnash
