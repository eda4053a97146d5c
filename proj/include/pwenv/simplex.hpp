#pragma once

// Dense dual simplex for  min c.x  s.t.  A x <= b, x >= 0  with c >= 0, on a condensed
// (Tucker) tableau. The all-slack basis is dual feasible because c >= 0, so no phase one
// is needed. Ties are broken by lowest index.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "pwenv/error.hpp"

namespace pwenv::lp {

enum class Status { optimal, infeasible, iteration_limit };

struct Solution {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

class DualSimplex {
 public:
  /// A is row-major with `cols` columns.
  DualSimplex(const std::vector<double>& A, const std::vector<double>& b, const std::vector<double>& c)
      : m_(b.size()), n_(c.size()) {
    if (A.size() != m_ * n_) fail(ErrorKind::invalid_argument, "simplex: matrix shape mismatch");
    for (double v : c)
      if (v < 0.0) fail(ErrorKind::invalid_argument, "simplex: costs must be nonnegative");
    w_ = n_ + 1;
    t_.assign((m_ + 1) * w_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = A[i * n_ + j];
      at(i, n_) = b[i];
    }
    // Objective row: z = z0 - sum_j (-c_j) x_j.
    for (std::size_t j = 0; j < n_; ++j) at(m_, j) = -c[j];
    basic_.resize(m_);
    nonbasic_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = j;
    for (std::size_t i = 0; i < m_; ++i) basic_[i] = n_ + i;
  }

  Solution solve(int max_iterations = 50000, double tol = 1e-12) {
    Solution out;
    double scale = 0.0;
    for (double v : t_) scale = std::max(scale, std::abs(v));
    const double ptol = tol * std::max(scale, 1.0);
    for (int it = 0; it < max_iterations; ++it) {
      std::size_t r = m_;
      double worst = -ptol;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, n_) < worst) {
          worst = at(i, n_);
          r = i;
        }
      }
      if (r == m_) {
        out.status = Status::optimal;
        out.iterations = it;
        finish(out);
        return out;
      }
      std::size_t s = n_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n_; ++j) {
        const double a = at(r, j);
        if (a < -ptol) {
          const double ratio = -at(m_, j) / -a;  // d_j / |a_rj|
          if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && s < n_ && nonbasic_[j] < nonbasic_[s])) {
            best = ratio;
            s = j;
          }
        }
      }
      if (s == n_) {
        out.status = Status::infeasible;
        out.iterations = it;
        return out;
      }
      pivot(r, s);
    }
    out.status = Status::iteration_limit;
    out.iterations = max_iterations;
    return out;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * w_ + j]; }

  // Exchange basic row r with nonbasic column s.
  void pivot(std::size_t r, std::size_t s) {
    const double p = at(r, s);
    double* row_r = &t_[r * w_];
    for (std::size_t j = 0; j < w_; ++j)
      if (j != s) row_r[j] /= p;
    row_r[s] = 1.0 / p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * w_];
      const double f = row[s];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w_; ++j)
        if (j != s) row[j] -= f * row_r[j];
      row[s] = -f / p;
    }
    std::swap(basic_[r], nonbasic_[s]);
  }

  void finish(Solution& out) {
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] < n_) out.x[basic_[i]] = std::max(at(i, n_), 0.0);
    out.objective = at(m_, n_);
  }

  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<std::size_t> basic_, nonbasic_;
};

}  // namespace pwenv::lp
