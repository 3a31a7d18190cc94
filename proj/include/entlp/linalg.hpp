#pragma once

// Dense vectors and matrices, Cholesky factorization of Gram matrices
// A*A^T, and orthogonal projection onto the null space of A.  Everything
// is double precision, row-major, and sized for desk-scale problems.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace entlp {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec scaled(const Vec& x, double alpha) {
  Vec y(x);
  for (double& v : y) v *= alpha;
  return y;
}

// Kahan-compensated sum; delta and the Delta moments go to zero at
// convergence, so plain accumulation loses the digits the step logic needs.
struct CompensatedSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  Vec data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  Vec multiply(const Vec& x) const {
    Vec y(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* row = data.data() + i * cols;
      double acc = 0.0;
      for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  Vec multiply_transpose(const Vec& x) const {
    Vec y(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* row = data.data() + i * cols;
      for (std::size_t j = 0; j < cols; ++j) y[j] += row[j] * x[i];
    }
    return y;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  // max absolute row sum
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cols; ++j) acc += std::fabs(at(i, j));
      m = std::max(m, acc);
    }
    return m;
  }
};

// Gram matrix A*A^T of an m x n matrix, exploiting symmetry.
inline DenseMatrix gram(const DenseMatrix& a) {
  DenseMatrix g(a.rows, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* ri = a.data.data() + i * a.cols;
    for (std::size_t k = i; k < a.rows; ++k) {
      const double* rk = a.data.data() + k * a.cols;
      double acc = 0.0;
      for (std::size_t j = 0; j < a.cols; ++j) acc += ri[j] * rk[j];
      g.at(i, k) = acc;
      g.at(k, i) = acc;
    }
  }
  return g;
}

// Cholesky factor of M + shift*I where M is a Gram matrix A*A^T.  The shift
// is escalated in factors of ten from 1e-12*||M||_inf until the pivots stay
// positive; the Gram matrix itself is retained so solves can do one pass of
// iterative refinement against the unshifted M.
struct CholeskyFactor {
  std::size_t dim = 0;
  Vec lower;         // row-major, lower triangle populated
  double shift = 0.0;
  DenseMatrix m;     // the (unshifted) Gram matrix

  // forward/back substitution with L L^T
  Vec solve_raw(const Vec& rhs) const {
    Vec x(rhs);
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = x[i];
      const double* row = lower.data() + i * dim;
      for (std::size_t j = 0; j < i; ++j) acc -= row[j] * x[j];
      x[i] = acc / row[i];
    }
    for (std::size_t ii = dim; ii-- > 0;) {
      double acc = x[ii];
      for (std::size_t j = ii + 1; j < dim; ++j) acc -= lower[j * dim + ii] * x[j];
      x[ii] = acc / lower[ii * dim + ii];
    }
    return x;
  }

  // solve against M with one refinement pass; the 1e-9 stopping tolerance
  // downstream needs better than raw Cholesky accuracy near convergence
  Vec solve(const Vec& rhs) const {
    if (dim == 0) return Vec();
    Vec x = solve_raw(rhs);
    Vec r = m.multiply(x);
    for (std::size_t i = 0; i < dim; ++i) r[i] = rhs[i] - r[i];
    Vec dx = solve_raw(r);
    axpy(1.0, dx, x);
    return x;
  }
};

namespace detail {

// in-place attempt; returns false on a nonpositive or nonfinite pivot
inline bool try_cholesky(const DenseMatrix& m, double shift, Vec& lower) {
  const std::size_t n = m.rows;
  lower.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = m.at(i, j) + (i == j ? shift : 0.0);
      for (std::size_t k = 0; k < j; ++k) acc -= lower[i * n + k] * lower[j * n + k];
      if (i == j) {
        if (!(acc > 0.0) || !std::isfinite(acc)) return false;
        lower[i * n + i] = std::sqrt(acc);
      } else {
        lower[i * n + j] = acc / lower[j * n + j];
      }
    }
  }
  return true;
}

}  // namespace detail

inline CholeskyFactor factor_normal_equations(const DenseMatrix& a) {
  CholeskyFactor f;
  f.dim = a.rows;
  f.m = gram(a);
  if (f.dim == 0) return f;
  const double base = f.m.norm_inf();
  double shift = 0.0;
  while (true) {
    if (detail::try_cholesky(f.m, shift, f.lower)) {
      f.shift = shift;
      return f;
    }
    shift = (shift == 0.0) ? 1e-12 * base : 10.0 * shift;
    if (!(shift > 0.0) || shift > 1e-4 * base)
      throw std::runtime_error("factor_normal_equations: numerically rank deficient");
  }
}

// Split w into w_p + w_q with A*w_p = 0 and w_q = A^T (A A^T)^{-1} A w.
inline std::pair<Vec, Vec> project_null(const DenseMatrix& a, const CholeskyFactor& f,
                                        const Vec& w) {
  Vec lambda = f.solve(a.multiply(w));
  Vec wq = a.multiply_transpose(lambda);
  Vec wp(w);
  for (std::size_t i = 0; i < w.size(); ++i) wp[i] -= wq[i];
  return {wp, wq};
}

}  // namespace entlp
