#pragma once

// Dense row-major matrices over a pluggable scalar.  Two instantiations are
// used throughout: double for numerical work and tpk::Rat (GMP rationals)
// for exact identity checks.  Determinants use fraction-free Bareiss
// elimination in exact mode and partial-pivot LU in float mode; inverses use
// Gauss-Jordan with partial pivoting.  Sizes here are small (a few hundred at
// most), so O(n^3) dense algorithms are the right tool.

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tpk/errors.hpp"
#include "tpk/scalar.hpp"
#include "tpk/tolerances.hpp"

namespace tpk {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(checkedExtent(rows)),
        cols_(checkedExtent(cols)),
        e_(static_cast<size_t>(rows_) * static_cast<size_t>(cols_),
           ScalarTraits<S>::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
    return m;
  }

  static Matrix fromRows(std::initializer_list<std::initializer_list<S>> rows) {
    const int nr = static_cast<int>(rows.size());
    const int nc = nr == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Matrix m(nr, nc);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != nc)
        throw DimensionError("ragged row list");
      int j = 0;
      for (const S& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(int i, int j) {
    checkIndex(i, j);
    return e_[static_cast<size_t>(i) * cols_ + j];
  }
  const S& operator()(int i, int j) const {
    checkIndex(i, j);
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    if (nr < 0 || nc < 0 || r0 < 0 || c0 < 0 || r0 + nr > rows_ ||
        c0 + nc > cols_)
      throw IndexError("block out of range");
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void setBlock(int r0, int c0, const Matrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw IndexError("block out of range");
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void swapRows(int a, int b) {
    checkIndex(a, 0);
    checkIndex(b, 0);
    if (a == b) return;
    for (int j = 0; j < cols_; ++j)
      std::swap(e_[static_cast<size_t>(a) * cols_ + j],
                e_[static_cast<size_t>(b) * cols_ + j]);
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  void checkIndex(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw IndexError("matrix index (" + std::to_string(i) + "," +
                       std::to_string(j) + ") outside " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  static int checkedExtent(int n) {
    if (n < 0) throw DimensionError("negative matrix extent");
    return n;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> e_;
};

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix sum shape mismatch");
  Matrix<S> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference shape mismatch");
  Matrix<S> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matrix product shape mismatch: " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  Matrix<S> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class S>
Matrix<S> operator*(const S& s, const Matrix<S>& a) {
  Matrix<S> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <class S>
S trace(const Matrix<S>& a) {
  if (!a.square()) throw DimensionError("trace of a non-square matrix");
  S t = ScalarTraits<S>::zero();
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// Largest entry magnitude, reported as a double in both modes.
template <class S>
double maxAbs(const Matrix<S>& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m,
                   ScalarTraits<S>::toDouble(ScalarTraits<S>::abs(a(i, j))));
  return m;
}

template <class S>
double maxAbsDiff(const Matrix<S>& a, const Matrix<S>& b) {
  return maxAbs(a - b);
}

// Max row sum of |entries| (the infinity norm).
template <class S>
double infNorm(const Matrix<S>& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.cols(); ++j)
      row += ScalarTraits<S>::toDouble(ScalarTraits<S>::abs(a(i, j)));
    best = std::max(best, row);
  }
  return best;
}

inline Matrix<double> toDouble(const Matrix<Rat>& a) {
  Matrix<double> d(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) d(i, j) = a(i, j).get_d();
  return d;
}

namespace detail {

// Fraction-free Bareiss elimination; works in the matrix's own ring, exact
// for rationals, and returns the determinant as the last pivot.
template <class S>
S bareissDeterminant(Matrix<S> m) {
  const int n = m.rows();
  S prev = ScalarTraits<S>::one();
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != ScalarTraits<S>::zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return ScalarTraits<S>::zero();
    if (piv != k) {
      m.swapRows(piv, k);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  S det = m(n - 1, n - 1);
  return sign < 0 ? S(-det) : det;
}

// Partial-pivot LU determinant for floats.  An exactly zero pivot column
// short-circuits to zero; tiny pivots are kept (the product is still the
// honest determinant value).
inline double luDeterminant(Matrix<double> m) {
  const int n = m.rows();
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      m.swapRows(piv, k);
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

}  // namespace detail

template <class S>
S determinant(const Matrix<S>& a) {
  if (!a.square()) throw DimensionError("determinant of a non-square matrix");
  if (a.rows() == 0) return ScalarTraits<S>::one();
  if constexpr (isExactScalar<S>)
    return detail::bareissDeterminant(a);
  else
    return detail::luDeterminant(a);
}

// Gauss-Jordan inverse with partial pivoting.  Exact mode pivots on the
// first nonzero entry; float mode pivots on the largest and declares the
// matrix numerically singular when the pivot falls below
// tol::kSingularPivotFactor times the max row norm of the input.
template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const int n = a.rows();
  Matrix<S> work = a;
  Matrix<S> inv = Matrix<S>::identity(n);
  [[maybe_unused]] double pivotFloor = 0.0;
  if constexpr (!isExactScalar<S>) pivotFloor = tol::kSingularPivotFactor * infNorm(a);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    if constexpr (isExactScalar<S>) {
      for (int i = k; i < n; ++i)
        if (work(i, k) != ScalarTraits<S>::zero()) {
          piv = i;
          break;
        }
      if (piv < 0) throw SingularMatrixError("matrix is singular");
    } else {
      double best = 0.0;
      for (int i = k; i < n; ++i) {
        const double v = std::fabs(ScalarTraits<S>::toDouble(work(i, k)));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0 || best <= pivotFloor)
        throw SingularMatrixError(
            "matrix is numerically singular (pivot " + std::to_string(best) +
                " at step " + std::to_string(k) + ")",
            best > 0.0 ? infNorm(a) / best : 0.0);
    }
    work.swapRows(piv, k);
    inv.swapRows(piv, k);
    const S d = work(k, k);
    for (int j = 0; j < n; ++j) {
      work(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const S f = work(i, k);
      if (f == ScalarTraits<S>::zero()) continue;
      for (int j = 0; j < n; ++j) {
        work(i, j) -= f * work(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Determinant of the submatrix picked out by the given row and column index
// lists.  Lists must be strictly increasing, in range, and of equal length;
// empty lists give the empty minor, which is 1.
template <class S>
S minorDet(const Matrix<S>& a, const std::vector<int>& rows,
           const std::vector<int>& cols) {
  if (rows.size() != cols.size())
    throw DimensionError("minor needs equally many rows and columns");
  auto checkList = [](const std::vector<int>& idx, int bound,
                      const char* what) {
    for (size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] < 0 || idx[t] >= bound)
        throw IndexError(std::string(what) + " index out of range");
      if (t > 0 && idx[t] <= idx[t - 1])
        throw IndexError(std::string(what) +
                         " indices must be strictly increasing");
    }
  };
  checkList(rows, a.rows(), "row");
  checkList(cols, a.cols(), "column");
  const int k = static_cast<int>(rows.size());
  Matrix<S> sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
  return determinant(sub);
}

}  // namespace tpk
