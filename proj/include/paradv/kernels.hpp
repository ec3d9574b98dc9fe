#pragma once

// Hot loops of the workbench, each in two builds: a plain serial reference
// (kernels::serial) and an OpenMP version (kernels::omp). Both return
// bit-identical results; the OpenMP versions only distribute independent work
// items and leave every reduction to a fixed-order serial pass.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "paradv/layout.hpp"
#include "paradv/numerics.hpp"

namespace paradv::kernels {

/// One (x, y) edge of a bipartite relation, with the endpoints' bit masks.
struct Edge {
  std::uint32_t row;
  std::uint32_t col;
  std::uint64_t x_mask;
  std::uint64_t y_mask;
};

/// Largest row and column degree of a relation after filtering by one index
/// subset. Ties resolve to the smallest row / column.
struct DegreeMaxima {
  std::uint64_t max_row = 0;
  std::uint32_t row = 0;
  std::uint64_t max_col = 0;
  std::uint32_t col = 0;
};

/// Copy of gamma keeping entry (a, b) only if masks[a] ^ masks[b] meets subset.
SymMatrix filter_by_subset(const SymMatrix& gamma, std::span<const std::uint64_t> masks,
                           std::uint64_t subset);

DegreeMaxima filtered_degrees(std::span<const Edge> edges, std::size_t rows, std::size_t cols,
                              std::uint64_t subset);

namespace serial {

/// spectral_norm(filter_by_subset(gamma, masks, s)) for every s in subsets.
std::vector<double> filtered_norms(const SymMatrix& gamma, std::span<const std::uint64_t> masks,
                                   std::span<const std::uint64_t> subsets);

std::vector<DegreeMaxima> filtered_degree_sweep(std::span<const Edge> edges, std::size_t rows,
                                                std::size_t cols, std::span<const std::uint64_t> subsets);

/// out[k'] = in[k] where k' flips output bit r by x_{i_r}.
void parallel_oracle(const RegisterLayout& layout, std::uint64_t x_mask, std::span<const Complex> in,
                     std::span<Complex> out);

/// out = U in
void dense_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out);

}  // namespace serial

namespace omp {

std::vector<double> filtered_norms(const SymMatrix& gamma, std::span<const std::uint64_t> masks,
                                   std::span<const std::uint64_t> subsets);

std::vector<DegreeMaxima> filtered_degree_sweep(std::span<const Edge> edges, std::size_t rows,
                                                std::size_t cols, std::span<const std::uint64_t> subsets);

void parallel_oracle(const RegisterLayout& layout, std::uint64_t x_mask, std::span<const Complex> in,
                     std::span<Complex> out);

void dense_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out);

}  // namespace omp

/// Worker count used by the OpenMP kernels (1 when built without OpenMP).
int worker_count();
void set_worker_count(int workers);

}  // namespace paradv::kernels
