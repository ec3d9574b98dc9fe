// Serial reference kernels. The OpenMP kernels are tested against these.

#include "paradv/kernels.hpp"

namespace paradv::kernels::serial {

std::vector<double> filtered_norms(const SymMatrix& gamma, std::span<const std::uint64_t> masks,
                                   std::span<const std::uint64_t> subsets) {
  std::vector<double> out(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) out[s] = spectral_norm(filter_by_subset(gamma, masks, subsets[s]));
  return out;
}

std::vector<DegreeMaxima> filtered_degree_sweep(std::span<const Edge> edges, std::size_t rows, std::size_t cols,
                                                std::span<const std::uint64_t> subsets) {
  std::vector<DegreeMaxima> out(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) out[s] = filtered_degrees(edges, rows, cols, subsets[s]);
  return out;
}

void parallel_oracle(const RegisterLayout& layout, std::uint64_t x_mask, std::span<const Complex> in,
                     std::span<Complex> out) {
  const std::size_t dim = layout.dim();
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t target = k;
    for (unsigned r = 0; r < layout.p; ++r) {
      if ((x_mask >> layout.index_digit(k, r)) & 1U) target ^= layout.bit_stride(r);
    }
    out[target] = in[k];
  }
}

void dense_apply(const ComplexMatrix& u, std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t dim = u.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += u(i, j) * in[j];
    out[i] = s;
  }
}

}  // namespace paradv::kernels::serial
