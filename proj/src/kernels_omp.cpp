#include <omp.h>

#include <cstdint>

#include "paradv/kernels.hpp"

namespace paradv::kernels {

namespace omp {

std::vector<double> filtered_norms(const SymMatrix& gamma, std::span<const std::uint64_t> masks,
                                   std::span<const std::uint64_t> subsets) {
  std::vector<double> out(subsets.size());
  const auto count = static_cast<std::int64_t>(subsets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < count; ++s) out[s] = spectral_norm(filter_by_subset(gamma, masks, subsets[s]));
  return out;
}

std::vector<DegreeMaxima> filtered_degree_sweep(std::span<const Edge> edges, std::size_t rows, std::size_t cols,
                                                std::span<const std::uint64_t> subsets) {
  std::vector<DegreeMaxima> out(subsets.size());
  const auto count = static_cast<std::int64_t>(subsets.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < count; ++s) out[s] = filtered_degrees(edges, rows, cols, subsets[s]);
  return out;
}

void parallel_oracle(const RegisterLayout& layout, std::uint64_t x_mask, std::span<const Complex> in,
                     std::span<Complex> out) {
  const auto dim = static_cast<std::int64_t>(layout.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < dim; ++k) {
    auto target = static_cast<std::size_t>(k);
    for (unsigned r = 0; r < layout.p; ++r) {
      if ((x_mask >> layout.index_digit(static_cast<std::size_t>(k), r)) & 1U) target ^= layout.bit_stride(r);
    }
    out[target] = in[k];
  }
}

void dense_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out) {
  const auto dim = static_cast<std::int64_t>(u.dim());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) {
    Complex s = 0.0;
    for (std::int64_t j = 0; j < dim; ++j) s += u(i, j) * in[j];
    out[i] = s;
  }
}

}  // namespace omp

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

}  // namespace paradv::kernels
