#pragma once

#include <span>
#include <vector>

namespace rtcode {

/// Dense square row-major matrix. Problem sizes never exceed N(N-1) <= 56,
/// so everything here is plain O(n^3) dense arithmetic.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int n() const { return n_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<double> row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Max absolute row sum.
double norm_inf(const Matrix& a);

Matrix transpose(const Matrix& a);

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws SolverError when a pivot falls below `rank_tol`.
std::vector<double> solve_dense(Matrix a, std::vector<double> b,
                                double rank_tol = 1e-12);

}  // namespace rtcode
