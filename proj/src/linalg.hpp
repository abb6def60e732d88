#pragma once

#include <cstdint>
#include <vector>

#include "gf.hpp"

namespace flagcount {

// Dense row-major matrix over a finite field.  Entries are element indices of
// the Field passed to each operation; the matrix itself carries no context.
struct FqMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  FqMatrix() = default;
  FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  static FqMatrix identity(std::size_t n) {
    FqMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const FqMatrix&) const = default;
};

FqMatrix mat_mul(const Field& f, const FqMatrix& x, const FqMatrix& y);
std::vector<std::uint32_t> mat_vec(const Field& f, const FqMatrix& m,
                                   const std::vector<std::uint32_t>& v);
std::size_t mat_rank(const Field& f, FqMatrix m);
bool is_invertible(const Field& f, const FqMatrix& m);

// Basis of the right kernel {v : m v = 0}, one vector per free column of the
// reduced row echelon form, in ascending free-column order.
std::vector<std::vector<std::uint32_t>> kernel_basis(const Field& f,
                                                     const FqMatrix& m);

struct LinearSolution {
  bool consistent = false;
  std::vector<std::uint32_t> particular;               // one solution of Ax=b
  std::vector<std::vector<std::uint32_t>> kernel;      // basis of Ax=0
};

LinearSolution solve_linear(const Field& f, const FqMatrix& m,
                            const std::vector<std::uint32_t>& b);

}  // namespace flagcount
