#pragma once

#include <optional>
#include <vector>

#include "fpnf/rational.hpp"

namespace fpnf {

using Vector = std::vector<Rational>;

// Dense rational matrix, row-major. Small sizes only (a few hundred unknowns).
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector apply(const Vector& v) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);

// Basis of {v : m v = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& m);

// Some solution of m v = b, or nullopt when the system is inconsistent.
// Free unknowns are set to zero.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

}  // namespace fpnf
