#include <cstddef>
#include <cstdint>

#include "paradv/kernels.hpp"

namespace paradv::kernels {

SymMatrix filter_by_subset(const SymMatrix& gamma, std::span<const std::uint64_t> masks, std::uint64_t subset) {
  const std::size_t n = gamma.dim();
  SymMatrix out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double g = gamma(a, b);
      if (g != 0.0 && ((masks[a] ^ masks[b]) & subset) != 0) out.set(a, b, g);
    }
  }
  // Diagonal never survives: masks[a] ^ masks[a] == 0.
  return out;
}

DegreeMaxima filtered_degrees(std::span<const Edge> edges, std::size_t rows, std::size_t cols,
                              std::uint64_t subset) {
  std::vector<std::uint64_t> row_deg(rows, 0), col_deg(cols, 0);
  for (const Edge& e : edges) {
    if (((e.x_mask ^ e.y_mask) & subset) == 0) continue;
    ++row_deg[e.row];
    ++col_deg[e.col];
  }
  DegreeMaxima m;
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_deg[r] > m.max_row) {
      m.max_row = row_deg[r];
      m.row = static_cast<std::uint32_t>(r);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_deg[c] > m.max_col) {
      m.max_col = col_deg[c];
      m.col = static_cast<std::uint32_t>(c);
    }
  }
  return m;
}

}  // namespace paradv::kernels
