#include "linalg.hpp"

#include <stdexcept>

namespace flagcount {

FqMatrix mat_mul(const Field& f, const FqMatrix& x, const FqMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  FqMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      const std::uint32_t xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        r.at(i, j) = f.add(r.at(i, j), f.mul(xik, y.at(k, j)));
      }
    }
  }
  return r;
}

std::vector<std::uint32_t> mat_vec(const Field& f, const FqMatrix& m,
                                   const std::vector<std::uint32_t>& v) {
  if (m.cols != v.size()) throw std::invalid_argument("matrix shape mismatch");
  std::vector<std::uint32_t> r(m.rows, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      acc = f.add(acc, f.mul(m.at(i, j), v[j]));
    }
    r[i] = acc;
  }
  return r;
}

namespace {

// In-place reduced row echelon form; returns the pivot column of each pivot
// row, in order.  Augmented columns (if any) are reduced along.
std::vector<std::size_t> rref(const Field& f, FqMatrix& m,
                              std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(sel, j), m.at(row, j));
    }
    const std::uint32_t pivinv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols; ++j)
      m.at(row, j) = f.mul(m.at(row, j), pivinv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const std::uint32_t factor = m.at(i, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < m.cols; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t mat_rank(const Field& f, FqMatrix m) {
  return rref(f, m, m.cols).size();
}

bool is_invertible(const Field& f, const FqMatrix& m) {
  return m.rows == m.cols && mat_rank(f, m) == m.rows;
}

std::vector<std::vector<std::uint32_t>> kernel_basis(const Field& f,
                                                     const FqMatrix& m) {
  FqMatrix r = m;
  const std::vector<std::size_t> pivots = rref(f, r, r.cols);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(m.cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = f.neg(r.at(i, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve_linear(const Field& f, const FqMatrix& m,
                            const std::vector<std::uint32_t>& b) {
  if (m.rows != b.size()) throw std::invalid_argument("matrix shape mismatch");
  FqMatrix aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  const std::vector<std::size_t> pivots = rref(f, aug, m.cols);

  LinearSolution sol;
  for (std::size_t i = pivots.size(); i < m.rows; ++i) {
    if (aug.at(i, m.cols) != 0) return sol;  // inconsistent
  }
  sol.consistent = true;
  sol.particular.assign(m.cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    sol.particular[pivots[i]] = aug.at(i, m.cols);
  }
  sol.kernel = kernel_basis(f, m);
  return sol;
}

}  // namespace flagcount
